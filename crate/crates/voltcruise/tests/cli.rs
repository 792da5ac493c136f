//! End-to-end tests of the `voltcruise` binary: output formats, exit
//! codes, and the trajectory/sweep CSV contracts.

mod common;

use std::path::PathBuf;
use std::process::Command;

struct CliOutput {
    status: Option<i32>,
    stdout: String,
    stderr: String,
}

fn run_cli(args: &[&str]) -> CliOutput {
    let output = Command::new(env!("CARGO_BIN_EXE_voltcruise"))
        .args(args)
        .output()
        .expect("binary runs");
    CliOutput {
        status: output.status.code(),
        stdout: String::from_utf8(output.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf-8 stderr"),
    }
}

fn scenario_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

/// Writes a patched copy of the golden scenario to a unique temp file
/// and returns its path.
fn patched_scenario(tag: &str, patch: impl FnOnce(&mut serde_json::Value)) -> String {
    let text = std::fs::read_to_string(scenario_path("cx300_montreal_ottawa.json")).unwrap();
    let mut config: serde_json::Value = serde_json::from_str(&text).unwrap();
    patch(&mut config);
    let path = std::env::temp_dir().join(format!("voltcruise_cli_{tag}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(&config).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn atmosphere_prints_six_significant_digits() {
    let out = run_cli(&["atmosphere", "--altitude", "1500"]);
    assert_eq!(out.status, Some(0));
    assert_eq!(out.stdout.trim(), "1.05969");

    let out = run_cli(&["atmosphere", "--altitude", "0"]);
    assert_eq!(out.stdout.trim(), "1.22661");
}

#[test]
fn atmosphere_rejects_out_of_range_altitude() {
    let out = run_cli(&["atmosphere", "--altitude", "12000"]);
    assert_eq!(out.status, Some(1));
    assert!(out.stderr.contains("[0, 11000)"), "stderr: {}", out.stderr);
}

#[test]
fn plan_json_mirrors_struct_field_names() {
    let out = run_cli(&[
        "plan",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status, Some(0));
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in [
        "v_opt_mps",
        "tf_s",
        "drag_n",
        "energy_j",
        "qf_c",
        "feasibility",
    ] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    let feasibility = &value["feasibility"];
    for key in [
        "speed_lower_margin",
        "speed_upper_margin",
        "q0_margin",
        "qf_margin",
        "z_tf",
        "feasible",
    ] {
        assert!(feasibility.get(key).is_some(), "missing feasibility.{key}");
    }
    assert_eq!(feasibility["feasible"], serde_json::json!(true));
}

#[test]
fn plan_json_omits_z_tf_for_constant_voltage() {
    let config = patched_scenario("a_zero_json", |c| {
        c["battery"]["a_v_per_c"] = serde_json::json!(0.0);
    });
    let out = run_cli(&["plan", "--config", &config, "--format", "json"]);
    assert_eq!(out.status, Some(0));
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(value["feasibility"].get("z_tf").is_none());
}

#[test]
fn plan_csv_is_single_row() {
    let out = run_cli(&[
        "plan",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status, Some(0));
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("v_opt_mps,tf_s,drag_n,energy_j,energy_kwh,qf_c"));
    assert!(lines[1].ends_with(",true"));
}

#[test]
fn model_density_variant_plans_feasibly() {
    let out = run_cli(&[
        "plan",
        "--config",
        &scenario_path("cx300_montreal_ottawa_model_density.json"),
    ]);
    assert_eq!(out.status, Some(0));
    assert!(out
        .stdout
        .contains("density_kg_m3: 1.0596942259887956 (altitude model)"));
    assert!(out.stdout.contains("feasible: true"));
}

#[test]
fn zero_length_mission_plan() {
    let config = patched_scenario("zero_length", |c| {
        c["mission"]["xf_m"] = serde_json::json!(0.0);
    });
    let out = run_cli(&["plan", "--config", &config]);
    assert_eq!(out.status, Some(0), "stdout: {}", out.stdout);
    assert!(out.stdout.contains("tf_s: 0\n"));
    assert!(out.stdout.contains("energy_j: 0\n"));
    assert!(out.stdout.contains("qf_c: 700000\n"));
}

#[test]
fn invalid_configs_exit_one() {
    // Inverted charge window.
    let inverted = patched_scenario("inverted_window", |c| {
        c["battery"]["q_min_c"] = serde_json::json!(900_000.0);
    });
    let out = run_cli(&["plan", "--config", &inverted]);
    assert_eq!(out.status, Some(1));
    assert!(out.stderr.contains("q_min_c"), "stderr: {}", out.stderr);

    // Negative wing area, named in the message.
    let negative = patched_scenario("negative_area", |c| {
        c["aircraft"]["wing_area_m2"] = serde_json::json!(-30.0);
    });
    let out = run_cli(&["plan", "--config", &negative]);
    assert_eq!(out.status, Some(1));
    assert!(
        out.stderr.contains("wing_area_m2"),
        "stderr: {}",
        out.stderr
    );

    // Unknown key.
    let unknown = patched_scenario("unknown_key", |c| {
        c["aircraft"]["winglets"] = serde_json::json!(true);
    });
    let out = run_cli(&["plan", "--config", &unknown]);
    assert_eq!(out.status, Some(1));
    assert!(out.stderr.contains("winglets"), "stderr: {}", out.stderr);
}

#[test]
fn usage_errors_exit_one() {
    let out = run_cli(&["plan"]);
    assert_eq!(out.status, Some(1));
    let out = run_cli(&["frobnicate"]);
    assert_eq!(out.status, Some(1));
}

#[test]
fn simulate_summary_reports_tiny_closed_form_mismatch() {
    let traj_path = std::env::temp_dir().join("voltcruise_cli_traj.csv");
    let out = run_cli(&[
        "simulate",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
        "--step",
        "0.1",
        "--out",
        traj_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status, Some(0));
    let rel = parse_relative_error(&out.stdout);
    assert!(rel < 1e-6, "summary relative error {rel}");

    let csv = std::fs::read_to_string(&traj_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t_s,x_m,Q_C,U_V,i_A,P_W"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[2], "700000");
    let last = csv.lines().last().unwrap();
    let last_fields: Vec<&str> = last.split(',').collect();
    assert_eq!(last_fields[1], "150000");
}

fn parse_relative_error(stdout: &str) -> f64 {
    stdout
        .split("relative error")
        .nth(1)
        .expect("summary line present")
        .trim()
        .parse()
        .expect("parseable relative error")
}

#[test]
fn simulate_mismatch_grows_with_step_in_truncation_regime() {
    let golden = scenario_path("cx300_montreal_ottawa.json");
    let coarse_path = std::env::temp_dir().join("voltcruise_cli_coarse.csv");
    let fine_path = std::env::temp_dir().join("voltcruise_cli_fine.csv");
    let coarse = run_cli(&[
        "simulate",
        "--config",
        &golden,
        "--step",
        "256",
        "--out",
        coarse_path.to_str().unwrap(),
    ]);
    let fine = run_cli(&[
        "simulate",
        "--config",
        &golden,
        "--step",
        "16",
        "--out",
        fine_path.to_str().unwrap(),
    ]);
    let rel_coarse = parse_relative_error(&coarse.stdout);
    let rel_fine = parse_relative_error(&fine.stdout);
    assert!(
        rel_coarse > rel_fine,
        "coarse step error {rel_coarse} should exceed fine step error {rel_fine}"
    );
}

#[test]
fn simulate_constant_voltage_charge_is_affine_in_time() {
    let config = patched_scenario("a_zero_sim", |c| {
        c["battery"]["a_v_per_c"] = serde_json::json!(0.0);
    });
    let out_path = std::env::temp_dir().join("voltcruise_cli_affine.csv");
    let out = run_cli(&[
        "simulate",
        "--config",
        &config,
        "--step",
        "10",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status, Some(0));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let charges: Vec<f64> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    // Skip the shortened final step; all full-step second differences
    // vanish for a constant-voltage battery.
    for window in charges[..charges.len() - 1].windows(3) {
        let second_diff = window[2] - 2.0 * window[1] + window[0];
        assert!(second_diff.abs() < 1e-6, "second difference {second_diff}");
    }
}

#[test]
fn simulate_depletion_flags_row_and_exits_two() {
    let config = patched_scenario("deplete", |c| {
        c["mission"]["xf_m"] = serde_json::json!(400_000.0);
    });
    let out_path = std::env::temp_dir().join("voltcruise_cli_deplete.csv");
    let out = run_cli(&[
        "simulate",
        "--config",
        &config,
        "--step",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status, Some(2));
    assert!(out.stdout.contains("depleted"), "stdout: {}", out.stdout);
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let last = csv.lines().last().unwrap();
    assert!(last.starts_with("# depleted,"), "last line: {last}");
}

#[test]
fn sweep_fig2_has_49_rows_in_grid_order() {
    let out = run_cli(&[
        "sweep",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
        "--experiment",
        "fig2",
    ]);
    assert_eq!(out.status, Some(0));
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 50);
    assert_eq!(lines[0], "weight_n,altitude_m,v_opt_mps,within_envelope");
    assert!(lines[1].starts_with("22500,1000,"));
    assert!(lines[49].starts_with("28500,4000,"));
}

#[test]
fn sweep_fig3_flags_unreachable_cells() {
    let out = run_cli(&[
        "sweep",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
        "--experiment",
        "fig3",
        "--q0",
        "100000",
        "--q0",
        "700000",
    ]);
    assert_eq!(out.status, Some(0));
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "weight_n,q0_c,eta_min,feasible_at_any_eta");
    // q0 below the lower charge bound: empty value, flagged false.
    assert!(lines[1].starts_with("22500,100000,,false"), "{}", lines[1]);
    assert!(lines[2].starts_with("22500,700000,0."), "{}", lines[2]);
}

#[test]
fn single_cell_sweep_matches_plan() {
    let config = scenario_path("cx300_montreal_ottawa_model_density.json");
    let sweep = run_cli(&[
        "sweep",
        "--config",
        &config,
        "--experiment",
        "fig2",
        "--weight",
        "28000",
        "--altitude",
        "1500",
    ]);
    assert_eq!(sweep.status, Some(0));
    let row = sweep.stdout.lines().nth(1).unwrap();
    let v_sweep: f64 = row.split(',').nth(2).unwrap().parse().unwrap();

    let plan = run_cli(&["plan", "--config", &config, "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&plan.stdout).unwrap();
    let v_plan = value["v_opt_mps"].as_f64().unwrap();
    assert_eq!(v_sweep, v_plan);
}

#[test]
fn sweep_json_carries_metadata_envelope() {
    let out = run_cli(&[
        "sweep",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
        "--experiment",
        "fig3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status, Some(0));
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(value["metadata"]["experiment"], "min_eta_vs_weight");
    assert!(value["metadata"]["tool_version"].is_string());
    assert_eq!(value["rows"].as_array().unwrap().len(), 28);
}

#[test]
fn sweep_rejects_invalid_grid() {
    let out = run_cli(&[
        "sweep",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
        "--experiment",
        "fig2",
        "--altitude",
        "4000",
        "--altitude",
        "1000",
    ]);
    assert_eq!(out.status, Some(1));
    assert!(out.stderr.contains("strictly increasing"), "{}", out.stderr);
}

#[test]
fn sweep_output_identical_across_runs() {
    let args = [
        "sweep",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
        "--experiment",
        "fig2",
    ];
    let first = run_cli(&args);
    let second = run_cli(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn check_passes_on_golden_scenario() {
    let out = run_cli(&[
        "check",
        "--config",
        &scenario_path("cx300_montreal_ottawa.json"),
    ]);
    assert_eq!(out.status, Some(0), "stdout: {}", out.stdout);
    let passes = out.stdout.matches(": PASS").count();
    assert_eq!(passes, 5, "stdout: {}", out.stdout);
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn check_exits_two_for_infeasible_scenario() {
    let config = patched_scenario("check_infeasible", |c| {
        c["mission"]["q0_c"] = serde_json::json!(196_000.0);
    });
    let out = run_cli(&["check", "--config", &config]);
    assert_eq!(out.status, Some(2));
    assert!(out.stdout.contains("infeasible"));
}
