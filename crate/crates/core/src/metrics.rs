//! Cell association policies and aggregation of SINR samples into coverage,
//! area spectral efficiency, optimal-beamwidth search and the trade-off
//! frontier.

use core::fmt;
use core::str::FromStr;

use crate::channel::LinkState;
use crate::deployment::Deployment;
use crate::engine::Scenario;
use crate::float::db_to_linear;
use crate::{Error, Result};

/// Serving-AP selection rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AssociationPolicy {
    /// Shortest 3-D Euclidean distance to the AP.
    MinDistance3d,
    /// Strongest received power, gain and blockage included.
    MaxReceivedPower,
}

impl fmt::Display for AssociationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MinDistance3d => "min-dist",
            Self::MaxReceivedPower => "max-power",
        })
    }
}

impl FromStr for AssociationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-dist" => Ok(Self::MinDistance3d),
            "max-power" => Ok(Self::MaxReceivedPower),
            other => Err(Error::domain(format!(
                "unknown association policy `{other}` (expected min-dist or max-power)"
            ))),
        }
    }
}

/// Monte Carlo SINR samples for one sweep cell, ordered by realization index.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub sinr_values: Vec<f64>,
    pub seed: u64,
}

impl SampleSet {
    pub fn realization_count(&self) -> usize {
        self.sinr_values.len()
    }

    /// Associative merge of partitions.
    pub fn merge(mut self, other: SampleSet) -> SampleSet {
        self.sinr_values.extend(other.sinr_values);
        self
    }
}

/// One row of a parameter sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub d_s_m: f64,
    pub theta_bw_deg: f64,
    pub threshold_db: f64,
    pub scenario: Scenario,
    pub policy: AssociationPolicy,
    pub coverage: f64,
    pub ase_bps_hz_m2: f64,
    pub realizations: usize,
    pub seed: u64,
}

/// Sweep output, rows ordered lexicographically in
/// (d_s_m, theta_bw_deg, threshold_db, scenario, association).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// A point of the coverage/ASE trade-off frontier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    pub d_s_m: f64,
    pub theta_bw_deg: f64,
    pub coverage: f64,
    pub ase_bps_hz_m2: f64,
}

/// Picks the serving AP. Ties break to the lowest AP index.
pub fn associate(
    links: &[LinkState<f64>],
    deployment: &Deployment,
    policy: AssociationPolicy,
) -> Result<usize> {
    if links.is_empty() {
        return Err(Error::domain("associate requires a non-empty link list"));
    }
    let h = deployment.ap_height_m;
    match policy {
        AssociationPolicy::MinDistance3d => {
            let by_3d = argbest(links, |l| {
                -(l.ground_distance_m * l.ground_distance_m + h * h).sqrt()
            });
            let by_ground = argbest(links, |l| -l.ground_distance_m);
            // with a common AP height the 2-D and 3-D argmins coincide
            assert_eq!(by_3d, by_ground);
            Ok(links[by_3d].ap_index)
        }
        AssociationPolicy::MaxReceivedPower => {
            Ok(links[argbest(links, |l| l.received_power_w)].ap_index)
        }
    }
}

fn argbest<F: Fn(&LinkState<f64>) -> f64>(links: &[LinkState<f64>], score: F) -> usize {
    let mut best = 0;
    let mut best_score = f64::NEG_INFINITY;
    for (i, l) in links.iter().enumerate() {
        let s = score(l);
        if s > best_score {
            best_score = s;
            best = i;
        }
    }
    best
}

/// Coverage P[SINR > T]: fraction of samples strictly above the linear
/// threshold.
pub fn coverage(samples: &SampleSet, threshold_db: f64) -> Result<f64> {
    if samples.sinr_values.is_empty() {
        return Err(Error::domain("coverage requires a non-empty sample set"));
    }
    let t = db_to_linear(threshold_db);
    let hits = samples.sinr_values.iter().filter(|&&s| s > t).count();
    Ok(hits as f64 / samples.sinr_values.len() as f64)
}

/// Area spectral efficiency: mean log2(1 + SINR) divided by the cell area,
/// bits/s/Hz/m².
pub fn ase(samples: &SampleSet, cell_area_m2: f64) -> Result<f64> {
    if samples.sinr_values.is_empty() {
        return Err(Error::domain("ase requires a non-empty sample set"));
    }
    if !(cell_area_m2 > 0.0) {
        return Err(Error::domain("cell_area_m2 must be positive"));
    }
    let se: Vec<f64> = samples
        .sinr_values
        .iter()
        .map(|s| (1.0 + s).log2())
        .collect();
    let mean = pairwise_sum(&se) / se.len() as f64;
    Ok(mean / cell_area_m2)
}

/// Pairwise summation; stable under associative merging of partitions.
fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Beamwidth (degrees) with maximum coverage for the given inter-site
/// distance, threshold and policy; ties go to the smaller beamwidth.
pub fn peak_coverage_beamwidth(
    sweep: &SweepResult,
    d_s_m: f64,
    threshold_db: f64,
    policy: AssociationPolicy,
) -> Result<(f64, f64)> {
    let mut rows: Vec<&SweepRow> = sweep
        .rows
        .iter()
        .filter(|r| r.d_s_m == d_s_m && r.threshold_db == threshold_db && r.policy == policy)
        .collect();
    if rows.is_empty() {
        return Err(Error::domain(format!(
            "no sweep rows for d_s = {d_s_m}, T = {threshold_db} dB, policy = {policy}"
        )));
    }
    rows.sort_by(|a, b| a.theta_bw_deg.partial_cmp(&b.theta_bw_deg).unwrap());
    let mut best = rows[0];
    for r in &rows[1..] {
        if r.coverage > best.coverage {
            best = r;
        }
    }
    Ok((best.theta_bw_deg, best.coverage))
}

/// For each swept inter-site distance: the peak-coverage beamwidth and the
/// ASE achieved at that same configuration.
pub fn tradeoff_curve(
    sweep: &SweepResult,
    threshold_db: f64,
    policy: AssociationPolicy,
) -> Result<Vec<TradeoffPoint>> {
    let mut d_values: Vec<f64> = Vec::new();
    for r in &sweep.rows {
        if r.threshold_db == threshold_db && r.policy == policy && !d_values.contains(&r.d_s_m) {
            d_values.push(r.d_s_m);
        }
    }
    d_values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut points = Vec::with_capacity(d_values.len());
    for d in d_values {
        let (theta, cov) = peak_coverage_beamwidth(sweep, d, threshold_db, policy)?;
        let row = sweep
            .rows
            .iter()
            .find(|r| {
                r.d_s_m == d
                    && r.theta_bw_deg == theta
                    && r.threshold_db == threshold_db
                    && r.policy == policy
            })
            .expect("peak row present");
        points.push(TradeoffPoint {
            d_s_m: d,
            theta_bw_deg: theta,
            coverage: cov,
            ase_bps_hz_m2: row.ase_bps_hz_m2,
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antenna::main_lobe_gain;
    use crate::channel::RadioConfig;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn samples(values: &[f64]) -> SampleSet {
        SampleSet {
            sinr_values: values.to_vec(),
            seed: 0,
        }
    }

    #[test]
    fn coverage_basics() {
        let s = samples(&[10.0, 10.0, 10.0]); // 10 dB
        assert_relative_eq!(coverage(&s, 0.0).unwrap(), 1.0);
        assert_relative_eq!(coverage(&s, 10.0).unwrap(), 0.0); // strict >
        assert_relative_eq!(coverage(&s, -300.0).unwrap(), 1.0);
        assert!(coverage(&samples(&[]), 0.0).is_err());
    }

    #[test]
    fn ase_basics() {
        let s = samples(&[1.0]);
        assert_relative_eq!(ase(&s, 40.05).unwrap(), 1.0 / 40.05, max_relative = 1e-12);
        assert_relative_eq!(ase(&samples(&[0.0, 0.0]), 40.05).unwrap(), 0.0);
        let v = samples(&[3.0, 1.0, 0.5]);
        assert_relative_eq!(
            ase(&v, 20.0).unwrap(),
            2.0 * ase(&v, 40.0).unwrap(),
            max_relative = 1e-12
        );
        assert!(ase(&samples(&[]), 40.0).is_err());
        assert!(ase(&s, 0.0).is_err());
    }

    #[test]
    fn min_distance_association_picks_central_ap() {
        let dep = Deployment::hex_grid(6.8, 10.0, 100.0).unwrap();
        let cfg = RadioConfig::new(0.1, 60e9, 100e6, 9.0, 2.0).unwrap();
        let ue = (1.0, 0.5); // inside the central cell
        let links: Vec<LinkState<f64>> = dep
            .ap_positions
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let d = ((p.0 - ue.0).powi(2) + (p.1 - ue.1).powi(2)).sqrt();
                LinkState::evaluate(i, d, 10.0, 0.1, 1.0, &cfg)
            })
            .collect();
        let idx = associate(&links, &dep, AssociationPolicy::MinDistance3d).unwrap();
        assert_eq!(idx, dep.central_ap_index);
        // equal gains everywhere: both policies agree
        let idx2 = associate(&links, &dep, AssociationPolicy::MaxReceivedPower).unwrap();
        assert_eq!(idx2, idx);
    }

    #[test]
    fn max_power_escapes_blocked_main_lobe() {
        // UE under the central AP (main lobe) but blocked; the unblocked
        // side-lobe neighbour at 6.8 m is ~24x stronger.
        let dep = Deployment::hex_grid(6.8, 10.0, 100.0).unwrap();
        let cfg = RadioConfig::new(0.1, 60e9, 100e6, 9.0, 2.0).unwrap();
        let m_gain = main_lobe_gain(41f64.to_radians(), 0.1).unwrap();
        let central = dep.central_ap_index;
        let links: Vec<LinkState<f64>> = dep
            .ap_positions
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let d = (p.0 * p.0 + p.1 * p.1).sqrt();
                if i == central {
                    LinkState::evaluate(i, d, 10.0, m_gain, 1e-4, &cfg)
                } else {
                    LinkState::evaluate(i, d, 10.0, 0.1, 1.0, &cfg)
                }
            })
            .collect();
        let serving = associate(&links, &dep, AssociationPolicy::MaxReceivedPower).unwrap();
        assert_ne!(serving, central);
        let p_central = links.iter().find(|l| l.ap_index == central).unwrap();
        let p_serving = links.iter().find(|l| l.ap_index == serving).unwrap();
        let ratio = p_serving.received_power_w / p_central.received_power_w;
        assert_relative_eq!(ratio, 23.973, max_relative = 1e-3);
        // min-distance sticks with the blocked central AP
        assert_eq!(
            associate(&links, &dep, AssociationPolicy::MinDistance3d).unwrap(),
            central
        );
    }

    fn toy_sweep() -> SweepResult {
        let mk = |d, t, cov, ase| SweepRow {
            d_s_m: d,
            theta_bw_deg: t,
            threshold_db: 0.0,
            scenario: Scenario::Hand,
            policy: AssociationPolicy::MinDistance3d,
            coverage: cov,
            ase_bps_hz_m2: ase,
            realizations: 100,
            seed: 1,
        };
        SweepResult {
            rows: vec![
                mk(6.8, 30.0, 0.60, 0.5),
                mk(6.8, 41.0, 0.80, 0.4),
                mk(6.8, 60.0, 0.80, 0.9),
                mk(20.0, 41.0, 0.30, 0.02),
                mk(20.0, 60.0, 0.50, 0.03),
            ],
        }
    }

    #[test]
    fn peak_beamwidth_with_tie_break() {
        let s = toy_sweep();
        let (theta, cov) =
            peak_coverage_beamwidth(&s, 6.8, 0.0, AssociationPolicy::MinDistance3d).unwrap();
        assert_eq!(theta, 41.0); // tie with 60° goes to the smaller beamwidth
        assert_relative_eq!(cov, 0.80);
        assert!(peak_coverage_beamwidth(&s, 9.9, 0.0, AssociationPolicy::MinDistance3d).is_err());
        // single-beamwidth family returns that beamwidth
        let single = SweepResult {
            rows: vec![s.rows[3].clone()],
        };
        let (theta, _) =
            peak_coverage_beamwidth(&single, 20.0, 0.0, AssociationPolicy::MinDistance3d).unwrap();
        assert_eq!(theta, 41.0);
    }

    #[test]
    fn tradeoff_pairs_peak_coverage_with_its_ase() {
        let s = toy_sweep();
        let curve = tradeoff_curve(&s, 0.0, AssociationPolicy::MinDistance3d).unwrap();
        assert_eq!(curve.len(), 2);
        assert_eq!(curve[0].theta_bw_deg, 41.0);
        assert_relative_eq!(curve[0].ase_bps_hz_m2, 0.4);
        assert_eq!(curve[1].theta_bw_deg, 60.0);
        assert_relative_eq!(curve[1].ase_bps_hz_m2, 0.03);
    }

    proptest! {
        #[test]
        fn coverage_non_increasing_in_threshold(
            mut values in proptest::collection::vec(0.0f64..1e4, 1..200),
            t1 in -30.0f64..30.0,
            dt in 0.0f64..20.0,
        ) {
            let s = SampleSet { sinr_values: std::mem::take(&mut values), seed: 0 };
            let c1 = coverage(&s, t1).unwrap();
            let c2 = coverage(&s, t1 + dt).unwrap();
            prop_assert!(c2 <= c1);
        }

        #[test]
        fn ase_invariant_under_permutation(
            values in proptest::collection::vec(0.0f64..1e4, 2..100),
            rot in 1usize..50,
        ) {
            let a = SampleSet { sinr_values: values.clone(), seed: 0 };
            let mut shuffled = values.clone();
            shuffled.rotate_left(rot % values.len());
            let b = SampleSet { sinr_values: shuffled, seed: 0 };
            let ea = ase(&a, 10.0).unwrap();
            let eb = ase(&b, 10.0).unwrap();
            prop_assert!((ea - eb).abs() <= 1e-12 * ea.abs().max(1.0));
        }
    }
}
