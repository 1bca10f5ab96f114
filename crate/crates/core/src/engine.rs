//! Seeded Monte Carlo driver and parameter sweeps.
//!
//! Every realization draws from a random stream derived from
//! (stream seed, realization index) with a counter-based hash, so results are
//! independent of worker count and execution order.

use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::antenna::AntennaPattern;
use crate::blockage::{block_free_radius, BodyModel};
use crate::channel::RadioConfig;
use crate::deployment::{cell_area, Deployment};
use crate::float::{db_to_linear, dbm_to_watts};
use crate::metrics::{ase, coverage, AssociationPolicy, SampleSet, SweepResult, SweepRow};
use crate::{Error, Result};

/// Body shadowing scenario: where the user carries the device.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scenario {
    /// Device held in hand, d_toBody = 0.30 m.
    Hand,
    /// Device in pocket or worn against the body, d_toBody = 0.
    Pocket,
}

impl Scenario {
    pub fn default_dist_to_body_m(self) -> f64 {
        match self {
            Scenario::Hand => 0.30,
            Scenario::Pocket => 0.0,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Hand => "hand",
            Scenario::Pocket => "pocket",
        })
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hand" => Ok(Scenario::Hand),
            "pocket" => Ok(Scenario::Pocket),
            other => Err(Error::domain(format!(
                "unknown scenario `{other}` (expected hand or pocket)"
            ))),
        }
    }
}

/// Physical configuration of one simulated scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub body_width_m: f64,
    /// Device-to-body distance; `None` takes the scenario default.
    pub dist_to_body_m: Option<f64>,
    pub dist_top_head_m: f64,
    pub body_attenuation_db: f64,
    pub tx_power_dbm: f64,
    pub carrier_freq_hz: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub pathloss_exponent: f64,
    pub side_lobe_gain_db: f64,
    pub ap_height_m: f64,
    pub area_side_m: f64,
    pub min_beamwidth_deg: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::Hand,
            body_width_m: 0.40,
            dist_to_body_m: None,
            dist_top_head_m: 0.40,
            body_attenuation_db: -40.0,
            tx_power_dbm: 20.0,
            carrier_freq_hz: 60e9,
            bandwidth_hz: 100e6,
            noise_figure_db: 9.0,
            pathloss_exponent: 2.0,
            side_lobe_gain_db: -10.0,
            ap_height_m: 10.0,
            area_side_m: 400.0,
            min_beamwidth_deg: 1.0,
        }
    }
}

impl ScenarioConfig {
    pub fn for_scenario(scenario: Scenario) -> Self {
        Self {
            scenario,
            ..Self::default()
        }
    }

    pub fn dist_to_body_m(&self) -> f64 {
        self.dist_to_body_m
            .unwrap_or_else(|| self.scenario.default_dist_to_body_m())
    }

    pub fn body_model(&self) -> Result<BodyModel<f64>> {
        BodyModel::new(
            self.body_width_m,
            self.dist_to_body_m(),
            self.dist_top_head_m,
            db_to_linear(self.body_attenuation_db),
        )
    }

    pub fn radio(&self) -> Result<RadioConfig<f64>> {
        RadioConfig::new(
            dbm_to_watts(self.tx_power_dbm),
            self.carrier_freq_hz,
            self.bandwidth_hz,
            self.noise_figure_db,
            self.pathloss_exponent,
        )
    }

    pub fn deployment(&self, inter_site_distance_m: f64) -> Result<Deployment> {
        Deployment::hex_grid(inter_site_distance_m, self.ap_height_m, self.area_side_m)
    }

    pub fn pattern(&self, beamwidth_deg: f64) -> Result<AntennaPattern<f64>> {
        AntennaPattern::with_min_beamwidth(
            beamwidth_deg.to_radians(),
            db_to_linear(self.side_lobe_gain_db),
            self.ap_height_m,
            self.min_beamwidth_deg.to_radians(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.body_model()?;
        self.radio()?;
        if !(self.ap_height_m > 0.0) {
            return Err(Error::domain("ap_height_m must be positive"));
        }
        if !(self.area_side_m > 0.0) {
            return Err(Error::domain("area_side_m must be positive"));
        }
        if !(self.min_beamwidth_deg > 0.0) {
            return Err(Error::domain("min_beamwidth_deg must be positive"));
        }
        Ok(())
    }
}

/// Parameter grid of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub d_s_m: Vec<f64>,
    pub theta_bw_deg: Vec<f64>,
    pub threshold_db: Vec<f64>,
    pub policies: Vec<AssociationPolicy>,
    pub realizations: usize,
    pub master_seed: u64,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            d_s_m: vec![6.8],
            theta_bw_deg: vec![41.0],
            threshold_db: vec![-5.0],
            policies: vec![AssociationPolicy::MinDistance3d],
            realizations: 20_000,
            master_seed: 1,
        }
    }
}

impl RunSpec {
    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::domain("realizations must be at least 1"));
        }
        for (name, list) in [
            ("d_s", &self.d_s_m),
            ("theta_bw_deg", &self.theta_bw_deg),
            ("threshold_db", &self.threshold_db),
        ] {
            if list.is_empty() {
                return Err(Error::domain(format!("`{name}` list must be non-empty")));
            }
        }
        if self.policies.is_empty() {
            return Err(Error::domain("`association` list must be non-empty"));
        }
        Ok(())
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based child-seed derivation from a master seed and structured
/// indices; stateless, so work can be partitioned in any order.
pub fn derive_seed(master_seed: u64, indices: &[u64]) -> u64 {
    let mut state = mix64(master_seed ^ GOLDEN_GAMMA);
    for &i in indices {
        state = mix64(state.wrapping_add(GOLDEN_GAMMA) ^ mix64(i.wrapping_add(GOLDEN_GAMMA)));
    }
    state
}

/// Precomputed per-cell quantities for the realization loop.
struct CellParams {
    main_gain: f64,
    side_gain: f64,
    r_main2: f64,
    r_free2: f64,
    cos_half_bb: f64,
    body_attenuation: f64,
    h2: f64,
    ref_loss: f64,
    neg_half_alpha: f64,
    alpha_is_two: bool,
    tx_power_w: f64,
    noise_power_w: f64,
}

impl CellParams {
    fn new(
        deployment: &Deployment,
        pattern: &AntennaPattern<f64>,
        body: &BodyModel<f64>,
        radio: &RadioConfig<f64>,
    ) -> Result<Self> {
        let r_free = block_free_radius(deployment.ap_height_m, body)?;
        let h = deployment.ap_height_m;
        Ok(Self {
            main_gain: pattern.main_lobe_gain,
            side_gain: pattern.side_lobe_gain,
            r_main2: pattern.illumination_radius_m * pattern.illumination_radius_m,
            r_free2: r_free * r_free,
            cos_half_bb: (body.blockage_angle_rad / 2.0).cos(),
            body_attenuation: body.body_attenuation,
            h2: h * h,
            ref_loss: radio.ref_loss_1m,
            neg_half_alpha: -radio.pathloss_exponent / 2.0,
            alpha_is_two: radio.pathloss_exponent == 2.0,
            tx_power_w: radio.tx_power_w,
            noise_power_w: radio.noise_power_w,
        })
    }
}

/// One Monte Carlo snapshot: UE position and body orientation drawn from the
/// given stream, per-AP link states, association, SINR.
///
/// The per-AP blockage test is the dot-product form of
/// [`crate::blockage::is_blocked`]: an AP at offset v from the UE is inside
/// the blocked sector iff v·u ≥ cos(θ_BB/2)·|v|, with u the body direction.
fn simulate_one(
    deployment: &Deployment,
    cell: &CellParams,
    policy: AssociationPolicy,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let (ux, uy) = deployment.sample_ue_position(rng);
    let orientation: f64 = rng.random_range(0.0..core::f64::consts::TAU);
    let (bx, by) = (orientation.cos(), orientation.sin());

    let mut total = 0.0;
    let mut min_d2 = f64::INFINITY;
    let mut power_at_min_d2 = 0.0;
    let mut max_power = f64::NEG_INFINITY;

    for &(ax, ay) in &deployment.ap_positions {
        let dx = ax - ux;
        let dy = ay - uy;
        let d2 = dx * dx + dy * dy;
        let gain = if d2 <= cell.r_main2 {
            cell.main_gain
        } else {
            cell.side_gain
        };
        let mut factor = 1.0;
        if d2 > cell.r_free2 {
            let dot = dx * bx + dy * by;
            if dot >= cell.cos_half_bb * d2.sqrt() {
                factor = cell.body_attenuation;
            }
        }
        let r2 = d2 + cell.h2;
        let loss = if cell.alpha_is_two {
            cell.ref_loss / r2
        } else {
            cell.ref_loss * r2.powf(cell.neg_half_alpha)
        };
        let power = cell.tx_power_w * gain * loss * factor;
        total += power;
        if d2 < min_d2 {
            min_d2 = d2;
            power_at_min_d2 = power;
        }
        if power > max_power {
            max_power = power;
        }
    }

    let serving = match policy {
        AssociationPolicy::MinDistance3d => power_at_min_d2,
        AssociationPolicy::MaxReceivedPower => max_power,
    };
    serving / (cell.noise_power_w + (total - serving))
}

/// Runs `realizations` Monte Carlo snapshots for one sweep cell.
///
/// The output is a pure function of the arguments; workers partition the
/// realization index range, each index deriving its own child stream.
pub fn run_cell(
    deployment: &Deployment,
    pattern: &AntennaPattern<f64>,
    body: &BodyModel<f64>,
    radio: &RadioConfig<f64>,
    policy: AssociationPolicy,
    realizations: usize,
    stream_seed: u64,
) -> Result<SampleSet> {
    if realizations == 0 {
        return Err(Error::domain("realizations must be at least 1"));
    }
    let cell = CellParams::new(deployment, pattern, body, radio)?;
    let sinr_values: Vec<f64> = (0..realizations)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(stream_seed, &[i as u64]));
            simulate_one(deployment, &cell, policy, &mut rng)
        })
        .collect();
    Ok(SampleSet {
        sinr_values,
        seed: stream_seed,
    })
}

/// Runs the Cartesian product of (d_S, θ_BW, policy) cells and aggregates
/// coverage per threshold. Child seeds derive from the master seed and the
/// grid indices, so the result is reproducible under any parallel schedule.
pub fn run_sweep(spec: &RunSpec, scenario: &ScenarioConfig) -> Result<SweepResult> {
    spec.validate()?;
    scenario.validate()?;
    let body = scenario.body_model()?;
    let radio = scenario.radio()?;
    let mut rows = Vec::new();
    for (di, &d_s) in spec.d_s_m.iter().enumerate() {
        let deployment = scenario
            .deployment(d_s)
            .map_err(|e| Error::domain(format!("d_s = {d_s}: {e}")))?;
        let area = cell_area(d_s);
        for (ti, &theta_deg) in spec.theta_bw_deg.iter().enumerate() {
            let pattern = scenario
                .pattern(theta_deg)
                .map_err(|e| Error::domain(format!("theta_bw_deg = {theta_deg}: {e}")))?;
            for (pi, &policy) in spec.policies.iter().enumerate() {
                let seed = derive_seed(spec.master_seed, &[di as u64, ti as u64, pi as u64]);
                let samples = run_cell(
                    &deployment,
                    &pattern,
                    &body,
                    &radio,
                    policy,
                    spec.realizations,
                    seed,
                )?;
                let cell_ase = ase(&samples, area)?;
                for &threshold in &spec.threshold_db {
                    rows.push(SweepRow {
                        d_s_m: d_s,
                        theta_bw_deg: theta_deg,
                        threshold_db: threshold,
                        scenario: scenario.scenario,
                        policy,
                        coverage: coverage(&samples, threshold)?,
                        ase_bps_hz_m2: cell_ase,
                        realizations: spec.realizations,
                        seed,
                    });
                }
            }
        }
    }
    rows.sort_by(|a, b| {
        a.d_s_m
            .partial_cmp(&b.d_s_m)
            .unwrap()
            .then(a.theta_bw_deg.partial_cmp(&b.theta_bw_deg).unwrap())
            .then(a.threshold_db.partial_cmp(&b.threshold_db).unwrap())
            .then(a.scenario.cmp(&b.scenario))
            .then(a.policy.cmp(&b.policy))
    });
    Ok(SweepResult { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antenna::directivity_gain;
    use crate::blockage::{attenuation_factor, is_blocked, BodyOrientation};
    use crate::channel::{sinr, LinkState};
    use crate::metrics::associate;
    use approx::assert_relative_eq;

    fn setup(
        scenario: Scenario,
        d_s: f64,
        area: f64,
        theta_deg: f64,
    ) -> (
        Deployment,
        AntennaPattern<f64>,
        BodyModel<f64>,
        RadioConfig<f64>,
    ) {
        let mut cfg = ScenarioConfig::for_scenario(scenario);
        cfg.area_side_m = area;
        (
            cfg.deployment(d_s).unwrap(),
            cfg.pattern(theta_deg).unwrap(),
            cfg.body_model().unwrap(),
            cfg.radio().unwrap(),
        )
    }

    #[test]
    fn zero_realizations_is_an_error() {
        let (dep, pat, body, radio) = setup(Scenario::Hand, 6.8, 50.0, 41.0);
        assert!(run_cell(
            &dep,
            &pat,
            &body,
            &radio,
            AssociationPolicy::MinDistance3d,
            0,
            1
        )
        .is_err());
    }

    #[test]
    fn fixed_seed_is_bit_identical() {
        let (dep, pat, body, radio) = setup(Scenario::Hand, 6.8, 50.0, 41.0);
        let a = run_cell(
            &dep,
            &pat,
            &body,
            &radio,
            AssociationPolicy::MaxReceivedPower,
            500,
            42,
        )
        .unwrap();
        let b = run_cell(
            &dep,
            &pat,
            &body,
            &radio,
            AssociationPolicy::MaxReceivedPower,
            500,
            42,
        )
        .unwrap();
        assert_eq!(a, b);
        let c = run_cell(
            &dep,
            &pat,
            &body,
            &radio,
            AssociationPolicy::MaxReceivedPower,
            500,
            43,
        )
        .unwrap();
        assert_ne!(a, c);
    }

    /// Replays the same streams through the public per-link operations and
    /// checks the optimized realization loop against them.
    #[test]
    fn hot_loop_matches_composed_operations() {
        for scenario in [Scenario::Hand, Scenario::Pocket] {
            for policy in [
                AssociationPolicy::MinDistance3d,
                AssociationPolicy::MaxReceivedPower,
            ] {
                let (dep, pat, body, radio) = setup(scenario, 6.8, 40.0, 41.0);
                let fast = run_cell(&dep, &pat, &body, &radio, policy, 300, 9).unwrap();
                for (i, &fast_sinr) in fast.sinr_values.iter().enumerate() {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(9, &[i as u64]));
                    let ue = dep.sample_ue_position(&mut rng);
                    let orientation =
                        BodyOrientation::new(rng.random_range(0.0..core::f64::consts::TAU));
                    let links: Vec<LinkState<f64>> = dep
                        .ap_positions
                        .iter()
                        .enumerate()
                        .map(|(j, p)| {
                            let dx = p.0 - ue.0;
                            let dy = p.1 - ue.1;
                            let d = (dx * dx + dy * dy).sqrt();
                            let azimuth = dy.atan2(dx);
                            let blocked =
                                is_blocked(d, azimuth, orientation, &body, dep.ap_height_m)
                                    .unwrap();
                            LinkState::evaluate(
                                j,
                                d,
                                dep.ap_height_m,
                                directivity_gain(d, &pat),
                                attenuation_factor(blocked, &body),
                                &radio,
                            )
                        })
                        .collect();
                    let serving = associate(&links, &dep, policy).unwrap();
                    let reference = sinr(serving, &links, &radio).unwrap();
                    assert_relative_eq!(fast_sinr, reference, max_relative = 1e-9);
                }
            }
        }
    }

    #[test]
    fn pocket_blocked_fraction_matches_eq5() {
        // single isolated AP; in the pocket scenario every UE is outside the
        // (empty) block-free zone, so P[blocked] = 1/2.
        let (dep, pat, body, radio) = setup(Scenario::Pocket, 20.0, 20.0, 41.0);
        assert_eq!(dep.ap_count(), 1);
        let n = 1_000_000;
        let set = run_cell(
            &dep,
            &pat,
            &body,
            &radio,
            AssociationPolicy::MinDistance3d,
            n,
            5,
        )
        .unwrap();
        // blocked and unblocked SNR populations are separated by the 40 dB
        // body loss; 0.5 linear sits cleanly between them.
        let blocked = set.sinr_values.iter().filter(|&&s| s < 0.5).count();
        let frac = blocked as f64 / n as f64;
        let se = (0.25f64 / n as f64).sqrt();
        assert!((frac - 0.5).abs() < 3.0 * se, "blocked fraction {frac}");
    }

    #[test]
    fn sweep_row_count_and_determinism() {
        let spec = RunSpec {
            d_s_m: vec![10.0, 20.0],
            theta_bw_deg: vec![30.0, 60.0, 90.0],
            threshold_db: vec![-5.0, 0.0],
            policies: vec![AssociationPolicy::MinDistance3d],
            realizations: 200,
            master_seed: 11,
        };
        let cfg = ScenarioConfig {
            area_side_m: 60.0,
            ..ScenarioConfig::default()
        };
        let a = run_sweep(&spec, &cfg).unwrap();
        assert_eq!(a.rows.len(), 2 * 3 * 2);
        let b = run_sweep(&spec, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_names_offending_parameter() {
        let spec = RunSpec {
            theta_bw_deg: vec![41.0, 200.0],
            ..RunSpec::default()
        };
        let cfg = ScenarioConfig {
            area_side_m: 40.0,
            ..ScenarioConfig::default()
        };
        let err = run_sweep(&spec, &cfg).unwrap_err().to_string();
        assert!(err.contains("200"), "{err}");
    }

    #[test]
    fn derive_seed_spreads_indices() {
        let a = derive_seed(1, &[0, 0, 0]);
        let b = derive_seed(1, &[0, 0, 1]);
        let c = derive_seed(1, &[0, 1, 0]);
        let d = derive_seed(2, &[0, 0, 0]);
        assert!(a != b && a != c && a != d && b != c);
    }
}
