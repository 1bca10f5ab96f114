//! Static SVG rendering of sweep curves.

use core::str::FromStr;
use std::io::Write;
use std::path::Path;

use crate::metrics::{tradeoff_curve, AssociationPolicy, SweepResult};
use crate::report::fmt_sig;
use crate::{Error, Result};

/// Which figure family to render.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotMode {
    /// Coverage vs inter-site distance, one polyline per beamwidth.
    CoverageVsDs,
    /// ASE vs inter-site distance (log ASE axis), one polyline per beamwidth.
    AseVsDs,
    /// Peak coverage vs achieved ASE (log ASE axis), one curve per
    /// scenario/policy/threshold family.
    Tradeoff,
}

impl FromStr for PlotMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coverage-vs-ds" => Ok(Self::CoverageVsDs),
            "ase-vs-ds" => Ok(Self::AseVsDs),
            "tradeoff" => Ok(Self::Tradeoff),
            other => Err(Error::domain(format!(
                "unknown plot mode `{other}` (expected coverage-vs-ds, ase-vs-ds or tradeoff)"
            ))),
        }
    }
}

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 180.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 56.0;

/// Renders the requested figure as a standalone SVG string.
pub fn svg_string(result: &SweepResult, mode: PlotMode) -> Result<String> {
    let (series, x_label, y_label, x_log, y_log) = match mode {
        PlotMode::CoverageVsDs => (
            ds_series(result, |r| r.coverage),
            "inter-site distance d_S (m)",
            "coverage P[SINR > T]",
            false,
            false,
        ),
        PlotMode::AseVsDs => (
            ds_series(result, |r| r.ase_bps_hz_m2),
            "inter-site distance d_S (m)",
            "ASE (bits/s/Hz/m^2)",
            false,
            true,
        ),
        PlotMode::Tradeoff => (
            tradeoff_series(result)?,
            "ASE (bits/s/Hz/m^2)",
            "peak coverage",
            true,
            false,
        ),
    };
    let series: Vec<Series> = series
        .into_iter()
        .map(|mut s| {
            if x_log {
                s.points.retain(|p| p.0 > 0.0);
            }
            if y_log {
                s.points.retain(|p| p.1 > 0.0);
            }
            s.points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            s
        })
        .filter(|s| !s.points.is_empty())
        .collect();
    if series.is_empty() {
        return Err(Error::domain("no data selected for the requested plot"));
    }
    Ok(render(&series, x_label, y_label, x_log, y_log))
}

/// Writes the figure to a writer.
pub fn render_svg<W: Write>(result: &SweepResult, mode: PlotMode, writer: &mut W) -> Result<()> {
    let text = svg_string(result, mode)?;
    writer
        .write_all(text.as_bytes())
        .map_err(|source| Error::Io {
            path: "<writer>".to_string(),
            source,
        })
}

/// Writes the figure to a file path.
pub fn render_svg_path(result: &SweepResult, mode: PlotMode, path: &Path) -> Result<()> {
    let text = svg_string(result, mode)?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// One series per (beamwidth, threshold, scenario, policy) family, points
/// indexed by inter-site distance; first-appearance order.
fn ds_series(result: &SweepResult, value: fn(&crate::metrics::SweepRow) -> f64) -> Vec<Series> {
    let mut keys: Vec<(f64, f64, crate::engine::Scenario, AssociationPolicy)> = Vec::new();
    for r in &result.rows {
        let k = (r.theta_bw_deg, r.threshold_db, r.scenario, r.policy);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.iter()
        .map(|&(theta, threshold, scenario, policy)| Series {
            label: format!("bw={theta} deg, T={threshold} dB, {scenario}, {policy}"),
            points: result
                .rows
                .iter()
                .filter(|r| {
                    r.theta_bw_deg == theta
                        && r.threshold_db == threshold
                        && r.scenario == scenario
                        && r.policy == policy
                })
                .map(|r| (r.d_s_m, value(r)))
                .collect(),
        })
        .collect()
}

/// One trade-off frontier per (scenario, policy, threshold) family.
fn tradeoff_series(result: &SweepResult) -> Result<Vec<Series>> {
    let mut keys: Vec<(crate::engine::Scenario, AssociationPolicy, f64)> = Vec::new();
    for r in &result.rows {
        let k = (r.scenario, r.policy, r.threshold_db);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    let mut out = Vec::new();
    for (scenario, policy, threshold) in keys {
        let sub = SweepResult {
            rows: result
                .rows
                .iter()
                .filter(|r| r.scenario == scenario && r.policy == policy)
                .cloned()
                .collect(),
        };
        let curve = tradeoff_curve(&sub, threshold, policy)?;
        out.push(Series {
            label: format!("{scenario}, {policy}, T={threshold} dB"),
            points: curve
                .iter()
                .map(|p| (p.ase_bps_hz_m2, p.coverage))
                .collect(),
        });
    }
    Ok(out)
}

fn axis_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    if min == max {
        min -= 0.5;
        max += 0.5;
    }
    (min, max)
}

fn render(series: &[Series], x_label: &str, y_label: &str, x_log: bool, y_log: bool) -> String {
    let tx = |v: f64| if x_log { v.log10() } else { v };
    let ty = |v: f64| if y_log { v.log10() } else { v };
    let (x_min, x_max) = axis_range(series.iter().flat_map(|s| s.points.iter().map(|p| tx(p.0))));
    let (y_min, y_max) = axis_range(series.iter().flat_map(|s| s.points.iter().map(|p| ty(p.1))));
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = move |v: f64| MARGIN_LEFT + (tx(v) - x_min) / (x_max - x_min) * plot_w;
    let sy = move |v: f64| MARGIN_TOP + plot_h - (ty(v) - y_min) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" font-family="monospace" font-size="12">"#
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="white" stroke="black"/>"#,
        MARGIN_LEFT, MARGIN_TOP, plot_w, plot_h
    ));
    svg.push('\n');

    // ticks
    let x_ticks = tick_values(x_min, x_max, x_log);
    for t in &x_ticks {
        let px = MARGIN_LEFT + (t - x_min) / (x_max - x_min) * plot_w;
        let label = tick_label(*t, x_log);
        svg.push_str(&format!(
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 5.0
        ));
        svg.push_str(&format!(
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            MARGIN_TOP + plot_h + 20.0
        ));
        svg.push('\n');
    }
    let y_ticks = tick_values(y_min, y_max, y_log);
    for t in &y_ticks {
        let py = MARGIN_TOP + plot_h - (t - y_min) / (y_max - y_min) * plot_h;
        let label = tick_label(*t, y_log);
        svg.push_str(&format!(
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="black"/>"#,
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#,
            MARGIN_LEFT - 8.0,
            py + 4.0
        ));
        svg.push('\n');
    }

    // axis labels
    svg.push_str(&format!(
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    ));
    svg.push('\n');
    svg.push_str(&format!(
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{y_label}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    ));
    svg.push('\n');

    // series polylines and legend
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|p| format!("{:.2},{:.2}", sx(p.0), sy(p.1)))
            .collect();
        svg.push_str(&format!(
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            pts.join(" ")
        ));
        svg.push('\n');
        let ly = MARGIN_TOP + 16.0 + 18.0 * i as f64;
        svg.push_str(&format!(
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"/>"#,
            WIDTH - MARGIN_RIGHT + 8.0,
            WIDTH - MARGIN_RIGHT + 28.0
        ));
        svg.push_str(&format!(
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            WIDTH - MARGIN_RIGHT + 34.0,
            ly + 4.0,
            s.label
        ));
        svg.push('\n');
    }
    svg.push_str("</svg>\n");
    svg
}

fn tick_values(min: f64, max: f64, log: bool) -> Vec<f64> {
    if log {
        let lo = min.floor() as i64;
        let hi = max.ceil() as i64;
        (lo..=hi)
            .map(|k| k as f64)
            .filter(|&k| k >= min - 1e-9 && k <= max + 1e-9)
            .collect()
    } else {
        (0..=5)
            .map(|i| min + (max - min) * i as f64 / 5.0)
            .collect()
    }
}

fn tick_label(t: f64, log: bool) -> String {
    if log {
        format!("1e{}", t.round() as i64)
    } else {
        fmt_sig(t, 3)
    }
}
