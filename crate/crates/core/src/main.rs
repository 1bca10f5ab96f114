//! Command-line front end: sweep configuration, CSV emission, SVG plots.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use mmwave_sim::config::{apply_key, parse_config};
use mmwave_sim::engine::{run_sweep, RunSpec, ScenarioConfig};
use mmwave_sim::plot::{render_svg_path, PlotMode};
use mmwave_sim::report::{csv_string, emit_csv_path};

/// Indoor mmWave network Monte Carlo simulator.
///
/// Runs a sweep over inter-site distances, beamwidths, SINR thresholds and
/// association policies, then writes coverage/ASE results as CSV and
/// optionally renders an SVG figure. Flag overrides beat config-file values.
/// The environment variable MMWAVE_SIM_THREADS caps the worker count
/// (0 or absent = auto).
#[derive(Debug, Parser)]
#[command(name = "mmwave-sim", version)]
struct Args {
    /// Config file in `key = value` format.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output CSV path; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Plot mode: coverage-vs-ds, ase-vs-ds or tradeoff.
    #[arg(long, value_name = "MODE", requires = "plot_out")]
    plot: Option<String>,

    /// Output SVG path for --plot.
    #[arg(long, value_name = "PATH")]
    plot_out: Option<PathBuf>,

    /// Master seed for the Monte Carlo streams.
    #[arg(long, value_name = "N")]
    seed: Option<String>,

    /// Realizations per sweep cell.
    #[arg(long, value_name = "N")]
    realizations: Option<String>,

    /// Body shadowing scenario: hand or pocket.
    #[arg(long, value_name = "NAME")]
    scenario: Option<String>,

    /// Association policies, comma separated: min-dist and/or max-power.
    #[arg(long, value_name = "LIST")]
    association: Option<String>,

    /// Inter-site distances in metres (list or start:step:stop range).
    #[arg(allow_hyphen_values = true, long = "d_s", value_name = "LIST")]
    d_s: Option<String>,

    /// Beamwidths in degrees (list or range).
    #[arg(allow_hyphen_values = true, long = "theta_bw_deg", value_name = "LIST")]
    theta_bw_deg: Option<String>,

    /// SINR thresholds in dB (list or range).
    #[arg(allow_hyphen_values = true, long = "threshold_db", value_name = "LIST")]
    threshold_db: Option<String>,

    /// AP height above UE level, metres.
    #[arg(allow_hyphen_values = true, long = "ap_height_m", value_name = "M")]
    ap_height_m: Option<String>,

    /// Square venue side, metres.
    #[arg(allow_hyphen_values = true, long = "area_side_m", value_name = "M")]
    area_side_m: Option<String>,

    /// Transmit power, dBm.
    #[arg(allow_hyphen_values = true, long = "tx_power_dbm", value_name = "DBM")]
    tx_power_dbm: Option<String>,

    /// Carrier frequency, GHz.
    #[arg(
        allow_hyphen_values = true,
        long = "carrier_freq_ghz",
        value_name = "GHZ"
    )]
    carrier_freq_ghz: Option<String>,

    /// Bandwidth, MHz.
    #[arg(allow_hyphen_values = true, long = "bandwidth_mhz", value_name = "MHZ")]
    bandwidth_mhz: Option<String>,

    /// Receiver noise figure, dB.
    #[arg(
        allow_hyphen_values = true,
        long = "noise_figure_db",
        value_name = "DB"
    )]
    noise_figure_db: Option<String>,

    /// Path loss attenuation exponent.
    #[arg(
        allow_hyphen_values = true,
        long = "pathloss_exponent",
        value_name = "A"
    )]
    pathloss_exponent: Option<String>,

    /// Side-lobe gain, dB.
    #[arg(
        allow_hyphen_values = true,
        long = "side_lobe_gain_db",
        value_name = "DB"
    )]
    side_lobe_gain_db: Option<String>,

    /// Body width, metres.
    #[arg(allow_hyphen_values = true, long = "body_width_m", value_name = "M")]
    body_width_m: Option<String>,

    /// Device-to-body distance, metres (overrides the scenario default).
    #[arg(allow_hyphen_values = true, long = "d_to_body_m", value_name = "M")]
    d_to_body_m: Option<String>,

    /// Device-to-head-top distance, metres.
    #[arg(allow_hyphen_values = true, long = "d_top_head_m", value_name = "M")]
    d_top_head_m: Option<String>,

    /// Body attenuation, dB.
    #[arg(
        allow_hyphen_values = true,
        long = "body_attenuation_db",
        value_name = "DB"
    )]
    body_attenuation_db: Option<String>,

    /// Minimum beamwidth guard, degrees.
    #[arg(
        allow_hyphen_values = true,
        long = "min_beamwidth_deg",
        value_name = "DEG"
    )]
    min_beamwidth_deg: Option<String>,
}

fn run() -> mmwave_sim::Result<()> {
    let args = Args::parse();

    if let Ok(threads) = std::env::var("MMWAVE_SIM_THREADS") {
        let n: usize = threads.parse().map_err(|_| mmwave_sim::Error::Validation {
            key: "MMWAVE_SIM_THREADS".to_string(),
            msg: format!("`{threads}` is not a worker count"),
        })?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .expect("global thread pool not yet initialized");
        }
    }

    let (mut scenario, mut spec) = match &args.config {
        Some(path) => parse_config(path)?,
        None => (ScenarioConfig::default(), RunSpec::default()),
    };

    let overrides: [(&str, &Option<String>); 18] = [
        ("seed", &args.seed),
        ("realizations", &args.realizations),
        ("scenario", &args.scenario),
        ("association", &args.association),
        ("d_s", &args.d_s),
        ("theta_bw_deg", &args.theta_bw_deg),
        ("threshold_db", &args.threshold_db),
        ("ap_height_m", &args.ap_height_m),
        ("area_side_m", &args.area_side_m),
        ("tx_power_dbm", &args.tx_power_dbm),
        ("carrier_freq_ghz", &args.carrier_freq_ghz),
        ("bandwidth_mhz", &args.bandwidth_mhz),
        ("noise_figure_db", &args.noise_figure_db),
        ("pathloss_exponent", &args.pathloss_exponent),
        ("side_lobe_gain_db", &args.side_lobe_gain_db),
        ("body_width_m", &args.body_width_m),
        ("d_to_body_m", &args.d_to_body_m),
        ("d_top_head_m", &args.d_top_head_m),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            apply_key(&mut scenario, &mut spec, key, v)?;
        }
    }
    if let Some(v) = &args.body_attenuation_db {
        apply_key(&mut scenario, &mut spec, "body_attenuation_db", v)?;
    }
    if let Some(v) = &args.min_beamwidth_deg {
        apply_key(&mut scenario, &mut spec, "min_beamwidth_deg", v)?;
    }

    let result = run_sweep(&spec, &scenario)?;

    match &args.out {
        Some(path) => emit_csv_path(&result, path)?,
        None => print!("{}", csv_string(&result)),
    }

    if let Some(mode) = &args.plot {
        let mode: PlotMode = mode.parse()?;
        let path = args.plot_out.as_ref().expect("clap enforces --plot-out");
        render_svg_path(&result, mode, path)?;
    }

    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
