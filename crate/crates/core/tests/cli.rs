//! End-to-end checks of the command-line binary: flag surface, config-file
//! handling, CSV/SVG emission and reproducibility of the emitted bytes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmwave-sim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

const SMALL_RUN: &[&str] = &[
    "--d_s",
    "12",
    "--theta_bw_deg",
    "66",
    "--threshold_db",
    "-5",
    "--realizations",
    "200",
    "--seed",
    "7",
];

#[test]
fn help_lists_every_config_key_as_a_flag() {
    let output = run(&["--help"]);
    assert!(output.status.success());
    let text = stdout(&output);
    for flag in [
        "--config",
        "--out",
        "--plot",
        "--plot-out",
        "--seed",
        "--realizations",
        "--scenario",
        "--association",
        "--d_s",
        "--theta_bw_deg",
        "--threshold_db",
        "--ap_height_m",
        "--area_side_m",
        "--tx_power_dbm",
        "--carrier_freq_ghz",
        "--bandwidth_mhz",
        "--noise_figure_db",
        "--pathloss_exponent",
        "--side_lobe_gain_db",
        "--body_width_m",
        "--d_to_body_m",
        "--d_top_head_m",
        "--body_attenuation_db",
        "--min_beamwidth_deg",
    ] {
        assert!(text.contains(flag), "--help is missing {flag}");
    }
}

#[test]
fn default_run_emits_header_and_one_row() {
    let output = run(&["--realizations", "200"]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 2, "expected header plus a single row");
    assert_eq!(
        lines[0],
        "d_s_m,theta_bw_deg,threshold_db,scenario,association,coverage,ase_bps_hz_m2,realizations,seed"
    );
    assert!(lines[1].starts_with("6.80000,41.0000,-5.00000,hand,min-dist,"));
}

#[test]
fn reruns_are_byte_identical() {
    let a = run(SMALL_RUN);
    let b = run(SMALL_RUN);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_changes_the_samples() {
    let a = run(SMALL_RUN);
    let mut changed: Vec<&str> = SMALL_RUN.to_vec();
    let n = changed.len();
    changed[n - 1] = "8";
    let b = run(&changed);
    assert!(a.status.success() && b.status.success());
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn config_file_drives_the_sweep_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(
        &path,
        "# sparse sanity sweep\n\
         d_s = 12, 16\n\
         theta_bw_deg = 66\n\
         threshold_db = -5\n\
         scenario = pocket\n\
         association = max-power\n\
         realizations = 200\n\
         seed = 7\n",
    )
    .unwrap();
    let base = run(&["--config", path.to_str().unwrap()]);
    assert!(base.status.success(), "stderr: {}", stderr(&base));
    let text = stdout(&base);
    assert_eq!(text.trim_end().lines().count(), 3, "two rows expected");
    assert!(text.contains("pocket,max-power"));

    let overridden = run(&["--config", path.to_str().unwrap(), "--d_s", "12"]);
    assert!(overridden.status.success());
    assert_eq!(stdout(&overridden).trim_end().lines().count(), 2);
}

#[test]
fn range_syntax_expands_inclusively() {
    let output = run(&[
        "--d_s",
        "10:5:20",
        "--theta_bw_deg",
        "66",
        "--realizations",
        "100",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    for prefix in ["10.0000,", "15.0000,", "20.0000,"] {
        assert!(text.contains(prefix), "missing row for {prefix}");
    }
}

#[test]
fn csv_file_output_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let mut args: Vec<&str> = SMALL_RUN.to_vec();
    let path_str = path.to_str().unwrap().to_owned();
    args.extend(["--out", &path_str]);
    let to_file = run(&args);
    assert!(to_file.status.success());
    let on_stdout = run(SMALL_RUN);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&on_stdout));
}

#[test]
fn plot_renders_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coverage.svg");
    let path_str = path.to_str().unwrap().to_owned();
    let mut args: Vec<&str> = SMALL_RUN.to_vec();
    args.extend(["--plot", "coverage-vs-ds", "--plot-out", &path_str]);
    let output = run(&args);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"), "not an SVG document");
    assert!(svg.contains("polyline"), "no data series rendered");
}

#[test]
fn plot_without_output_path_is_rejected() {
    let output = run(&["--plot", "coverage-vs-ds"]);
    assert!(!output.status.success());
    assert!(stderr(&output).contains("--plot-out"));
}

#[test]
fn unknown_config_key_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "d_s = 12\nbogus_key = 1\n").unwrap();
    let output = run(&["--config", path.to_str().unwrap()]);
    assert!(!output.status.success());
    let err = stderr(&output);
    assert!(err.contains("bogus_key"), "stderr: {err}");
    assert!(err.contains('2'), "line number missing: {err}");
}

#[test]
fn invalid_parameter_is_reported_with_its_name() {
    let output = run(&["--theta_bw_deg", "200", "--realizations", "100"]);
    assert!(!output.status.success());
    let err = stderr(&output);
    assert!(err.contains("theta_bw_deg"), "stderr: {err}");
}

#[test]
fn zero_realizations_is_rejected() {
    let output = run(&["--realizations", "0"]);
    assert!(!output.status.success());
    assert!(stderr(&output).contains("realizations"));
}
