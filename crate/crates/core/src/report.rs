//! CSV emission of sweep results.

use std::io::Write;
use std::path::Path;

use crate::metrics::{SweepResult, SweepRow};
use crate::{Error, Result};

/// CSV header; column order is part of the schema.
pub const CSV_HEADER: &str =
    "d_s_m,theta_bw_deg,threshold_db,scenario,association,coverage,ase_bps_hz_m2,realizations,seed";

/// Formats a float with the given number of significant digits, plain decimal.
pub fn fmt_sig(value: f64, sig_digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{:.*}", sig_digits - 1, value);
    }
    let exp = value.abs().log10().floor() as i32;
    let decimals = sig_digits as i32 - 1 - exp;
    if decimals <= 0 {
        let scale = 10f64.powi(-decimals);
        format!("{:.0}", (value / scale).round() * scale)
    } else {
        format!("{:.*}", decimals as usize, value)
    }
}

fn format_row(row: &SweepRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        fmt_sig(row.d_s_m, 6),
        fmt_sig(row.theta_bw_deg, 6),
        fmt_sig(row.threshold_db, 6),
        row.scenario,
        row.policy,
        fmt_sig(row.coverage, 6),
        fmt_sig(row.ase_bps_hz_m2, 6),
        row.realizations,
        row.seed,
    )
}

/// Serializes the sweep as CSV, rows ordered lexicographically in
/// (d_s_m, theta_bw_deg, threshold_db, scenario, association).
pub fn csv_string(result: &SweepResult) -> String {
    let mut rows: Vec<&SweepRow> = result.rows.iter().collect();
    rows.sort_by(|a, b| {
        a.d_s_m
            .partial_cmp(&b.d_s_m)
            .unwrap()
            .then(a.theta_bw_deg.partial_cmp(&b.theta_bw_deg).unwrap())
            .then(a.threshold_db.partial_cmp(&b.threshold_db).unwrap())
            .then(a.scenario.cmp(&b.scenario))
            .then(a.policy.cmp(&b.policy))
    });
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format_row(row));
        out.push('\n');
    }
    out
}

/// Writes the CSV to a writer.
pub fn emit_csv<W: Write>(result: &SweepResult, writer: &mut W) -> std::io::Result<()> {
    writer.write_all(csv_string(result).as_bytes())
}

/// Writes the CSV to a file path.
pub fn emit_csv_path(result: &SweepResult, path: &Path) -> Result<()> {
    std::fs::write(path, csv_string(result)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
