//! Plain-text `key = value` configuration for sweeps.
//!
//! One pair per line, `#` comments, comma-separated lists, `start:step:stop`
//! inclusive ranges. Unknown keys are rejected; missing keys take the
//! defaults of [`ScenarioConfig`] and [`RunSpec`].

use std::path::Path;

use crate::engine::{RunSpec, Scenario, ScenarioConfig};
use crate::metrics::AssociationPolicy;
use crate::{Error, Result};

/// All recognized configuration keys, each also available as a CLI flag.
pub const CONFIG_KEYS: &[&str] = &[
    "d_s",
    "theta_bw_deg",
    "threshold_db",
    "scenario",
    "association",
    "realizations",
    "seed",
    "ap_height_m",
    "area_side_m",
    "tx_power_dbm",
    "carrier_freq_ghz",
    "bandwidth_mhz",
    "noise_figure_db",
    "pathloss_exponent",
    "side_lobe_gain_db",
    "body_width_m",
    "d_to_body_m",
    "d_top_head_m",
    "body_attenuation_db",
    "min_beamwidth_deg",
];

/// Parses a config file into a scenario configuration and a run spec.
pub fn parse_config(path: &Path) -> Result<(ScenarioConfig, RunSpec)> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

/// Parses config text; see module docs for the format.
pub fn parse_config_str(text: &str) -> Result<(ScenarioConfig, RunSpec)> {
    let mut scenario = ScenarioConfig::default();
    let mut spec = RunSpec::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        apply_key(&mut scenario, &mut spec, key.trim(), value.trim()).map_err(|e| match e {
            Error::Validation { .. } => e,
            other => Error::Parse {
                line: line_no,
                msg: other.to_string(),
            },
        })?;
    }
    scenario.validate()?;
    spec.validate()?;
    Ok((scenario, spec))
}

/// Applies one key/value pair; shared by the file parser and CLI overrides.
pub fn apply_key(
    scenario: &mut ScenarioConfig,
    spec: &mut RunSpec,
    key: &str,
    value: &str,
) -> Result<()> {
    let invalid = |msg: String| Error::Validation {
        key: key.to_string(),
        msg,
    };
    match key {
        "d_s" => spec.d_s_m = parse_list(value)?,
        "theta_bw_deg" => spec.theta_bw_deg = parse_list(value)?,
        "threshold_db" => spec.threshold_db = parse_list(value)?,
        "scenario" => scenario.scenario = value.parse::<Scenario>()?,
        "association" => {
            spec.policies = value
                .split(',')
                .map(|s| s.trim().parse::<AssociationPolicy>())
                .collect::<Result<Vec<_>>>()?
        }
        "realizations" => {
            spec.realizations = value.parse::<usize>().map_err(|e| invalid(e.to_string()))?
        }
        "seed" => spec.master_seed = value.parse::<u64>().map_err(|e| invalid(e.to_string()))?,
        "ap_height_m" => scenario.ap_height_m = parse_scalar(key, value)?,
        "area_side_m" => scenario.area_side_m = parse_scalar(key, value)?,
        "tx_power_dbm" => scenario.tx_power_dbm = parse_scalar(key, value)?,
        "carrier_freq_ghz" => scenario.carrier_freq_hz = parse_scalar(key, value)? * 1e9,
        "bandwidth_mhz" => scenario.bandwidth_hz = parse_scalar(key, value)? * 1e6,
        "noise_figure_db" => scenario.noise_figure_db = parse_scalar(key, value)?,
        "pathloss_exponent" => scenario.pathloss_exponent = parse_scalar(key, value)?,
        "side_lobe_gain_db" => scenario.side_lobe_gain_db = parse_scalar(key, value)?,
        "body_width_m" => scenario.body_width_m = parse_scalar(key, value)?,
        "d_to_body_m" => scenario.dist_to_body_m = Some(parse_scalar(key, value)?),
        "d_top_head_m" => scenario.dist_top_head_m = parse_scalar(key, value)?,
        "body_attenuation_db" => scenario.body_attenuation_db = parse_scalar(key, value)?,
        "min_beamwidth_deg" => scenario.min_beamwidth_deg = parse_scalar(key, value)?,
        other => {
            return Err(Error::domain(format!("unknown key `{other}`")));
        }
    }
    Ok(())
}

fn parse_scalar(key: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|e| Error::Validation {
        key: key.to_string(),
        msg: e.to_string(),
    })
}

/// Comma-separated values; each item may be a `start:step:stop` inclusive range.
pub fn parse_list(value: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in value.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(Error::domain("empty list item"));
        }
        if item.contains(':') {
            let parts: Vec<&str> = item.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::domain(format!(
                    "range `{item}` must be start:step:stop"
                )));
            }
            let start: f64 = parts[0]
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad range start in `{item}`")))?;
            let step: f64 = parts[1]
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad range step in `{item}`")))?;
            let stop: f64 = parts[2]
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad range stop in `{item}`")))?;
            if step <= 0.0 || stop < start {
                return Err(Error::domain(format!(
                    "range `{item}` requires step > 0 and stop >= start"
                )));
            }
            let mut k = 0u64;
            loop {
                let v = start + step * k as f64;
                if v > stop + step * 1e-9 {
                    break;
                }
                out.push(v);
                k += 1;
            }
        } else {
            out.push(
                item.parse::<f64>()
                    .map_err(|_| Error::domain(format!("bad number `{item}`")))?,
            );
        }
    }
    Ok(out)
}
