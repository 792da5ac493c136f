use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use voltcruise::oracle::{self, ChargeTrajectory};
use voltcruise::planner::{self, CruisePlan};
use voltcruise::scenario::{self, ScenarioConfig};
use voltcruise::sweeps::{self, SweepGrid};
use voltcruise::{atmosphere, battery};

/// Exit status for a mission that violates a model-level condition
/// (infeasible plan, depleted battery, failed cross-check). Input and
/// usage errors exit 1 instead.
const EXIT_INFEASIBLE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "voltcruise",
    version,
    about = "Energy-optimal steady-cruise planning for all-electric aircraft"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the energy-optimal cruise plan for a scenario.
    Plan {
        /// Scenario file (JSON).
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = PlanFormat::Text)]
        format: PlanFormat,
    },
    /// Integrate the discharge trajectory numerically; emit CSV.
    Simulate {
        /// Scenario file (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Integration step, seconds.
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a stock parameter sweep; emit CSV or JSON.
    Sweep {
        /// Scenario file (JSON) providing the parameter templates.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        experiment: Experiment,
        /// Write the output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        /// Override the weight axis (repeatable), newtons.
        #[arg(long = "weight")]
        weights: Vec<f64>,
        /// Override the altitude axis (repeatable), meters.
        #[arg(long = "altitude")]
        altitudes: Vec<f64>,
        /// Override the initial-charge axis (repeatable), coulombs.
        #[arg(long = "q0")]
        q0_values: Vec<f64>,
    },
    /// Print air density at an altitude, kg/m^3, to 6 significant digits.
    Atmosphere {
        /// Geometric altitude, meters.
        #[arg(long)]
        altitude: f64,
    },
    /// Cross-check the closed forms against the numerical oracles.
    Check {
        /// Scenario file (JSON).
        #[arg(long)]
        config: PathBuf,
        /// RK4 integration step, seconds.
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum PlanFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Experiment {
    /// Optimal airspeed over the stock weight x altitude grid.
    Fig2,
    /// Minimum efficiency over the stock weight x initial-charge grid.
    Fig3,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap would exit 2; usage problems are exit 1 here.
            let _ = err.print();
            std::process::exit(1);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Box<dyn Error>> {
    match cli.command {
        Command::Plan { config, format } => cmd_plan(&config, format),
        Command::Simulate { config, step, out } => cmd_simulate(&config, step, out.as_deref()),
        Command::Sweep {
            config,
            experiment,
            out,
            format,
            weights,
            altitudes,
            q0_values,
        } => cmd_sweep(
            &config,
            experiment,
            out.as_deref(),
            format,
            weights,
            altitudes,
            q0_values,
        ),
        Command::Atmosphere { altitude } => cmd_atmosphere(altitude),
        Command::Check { config, step } => cmd_check(&config, step),
    }
}

fn cmd_plan(config: &Path, format: PlanFormat) -> Result<i32, Box<dyn Error>> {
    let scenario = scenario::load_scenario(config)?;
    let plan = scenario.plan()?;
    match format {
        PlanFormat::Text => print!("{}", render_plan_text(config, &scenario, &plan)),
        PlanFormat::Csv => print!("{}", render_plan_csv(&plan)),
        PlanFormat::Json => println!("{}", serde_json::to_string_pretty(&plan)?),
    }
    Ok(if plan.feasibility.feasible {
        0
    } else {
        EXIT_INFEASIBLE
    })
}

fn render_plan_text(config: &Path, scenario: &ScenarioConfig, plan: &CruisePlan) -> String {
    let mut out = String::new();
    out.push_str(&format!("scenario: {}\n", config.display()));
    let density = scenario
        .density()
        .expect("density validated during planning");
    let source = if scenario.density_override().is_some() {
        "override"
    } else {
        "altitude model"
    };
    out.push_str(&format!("density_kg_m3: {density} ({source})\n"));
    out.push_str(&format!("v_opt_mps: {}\n", plan.v_opt_mps));
    out.push_str(&format!("tf_s: {}\n", plan.tf_s));
    out.push_str(&format!("drag_n: {}\n", plan.drag_n));
    out.push_str(&format!("energy_j: {}\n", plan.energy_j));
    out.push_str(&format!("energy_kwh: {}\n", plan.energy_j / 3.6e6));
    out.push_str(&format!("qf_c: {}\n", plan.qf_c));
    let f = &plan.feasibility;
    out.push_str(&format!("speed_lower_margin: {}\n", f.speed_lower_margin));
    out.push_str(&format!("speed_upper_margin: {}\n", f.speed_upper_margin));
    out.push_str(&format!("q0_margin: {}\n", f.q0_margin));
    out.push_str(&format!("qf_margin: {}\n", f.qf_margin));
    match f.z_tf {
        Some(z) => out.push_str(&format!("z_tf: {z}\n")),
        None => out.push_str("z_tf: n/a (constant-voltage battery)\n"),
    }
    out.push_str(&format!("feasible: {}\n", f.feasible));
    out
}

fn render_plan_csv(plan: &CruisePlan) -> String {
    let f = &plan.feasibility;
    let z = f.z_tf.map_or(String::new(), |z| z.to_string());
    format!(
        "v_opt_mps,tf_s,drag_n,energy_j,energy_kwh,qf_c,\
         speed_lower_margin,speed_upper_margin,q0_margin,qf_margin,z_tf,feasible\n\
         {},{},{},{},{},{},{},{},{},{},{},{}\n",
        plan.v_opt_mps,
        plan.tf_s,
        plan.drag_n,
        plan.energy_j,
        plan.energy_j / 3.6e6,
        plan.qf_c,
        f.speed_lower_margin,
        f.speed_upper_margin,
        f.q0_margin,
        f.qf_margin,
        z,
        f.feasible
    )
}

fn cmd_simulate(config: &Path, step: f64, out: Option<&Path>) -> Result<i32, Box<dyn Error>> {
    let scenario = scenario::load_scenario(config)?;
    let density = scenario.density()?;
    let v_opt = planner::optimal_airspeed(&scenario.aircraft, density);
    let trajectory = oracle::integrate_charge(
        &scenario.mission,
        &scenario.aircraft,
        &scenario.battery,
        density,
        v_opt,
        step,
    )?;

    let csv = render_trajectory_csv(&trajectory, scenario.mission.x0_m);
    let summary = if trajectory.reached_target() {
        let q_closed = planner::final_charge(
            &scenario.mission,
            &scenario.aircraft,
            &scenario.battery,
            density,
        )?;
        let q_rk4 = trajectory.final_state().charge_c;
        let rel = (q_rk4 - q_closed).abs() / scenario.mission.q0_c;
        format!("final charge: closed-form {q_closed} C, rk4 {q_rk4} C, relative error {rel:e}")
    } else {
        let dep = trajectory
            .depletion
            .expect("depleted trajectory has a location");
        format!(
            "battery depleted at t = {} s, x = {} m (target {} m)",
            dep.time_s,
            scenario.mission.x0_m + dep.distance_m,
            scenario.mission.xf_m
        )
    };

    match out {
        Some(path) => {
            fs::write(path, csv)?;
            println!("{summary}");
        }
        None => {
            print!("{csv}");
            eprintln!("{summary}");
        }
    }
    Ok(if trajectory.reached_target() {
        0
    } else {
        EXIT_INFEASIBLE
    })
}

fn render_trajectory_csv(trajectory: &ChargeTrajectory, x0_m: f64) -> String {
    let mut out = String::from("t_s,x_m,Q_C,U_V,i_A,P_W\n");
    for (state, distance) in trajectory.samples.iter().zip(&trajectory.distance_m) {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            state.time_s,
            x0_m + distance,
            state.charge_c,
            state.voltage_v,
            state.current_a,
            state.voltage_v * state.current_a
        ));
    }
    if let Some(dep) = &trajectory.depletion {
        out.push_str(&format!(
            "# depleted,t_s={},x_m={}\n",
            dep.time_s,
            x0_m + dep.distance_m
        ));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    config: &Path,
    experiment: Experiment,
    out: Option<&Path>,
    format: SweepFormat,
    weights: Vec<f64>,
    altitudes: Vec<f64>,
    q0_values: Vec<f64>,
) -> Result<i32, Box<dyn Error>> {
    let scenario = scenario::load_scenario(config)?;
    let mut grid = match experiment {
        Experiment::Fig2 => SweepGrid::airspeed_experiment(),
        Experiment::Fig3 => SweepGrid::min_efficiency_experiment(),
    };
    if !weights.is_empty() {
        grid.weights_n = weights;
    }
    if !altitudes.is_empty() {
        grid.altitudes_m = altitudes;
    }
    if !q0_values.is_empty() {
        grid.q0_values_c = q0_values;
    }

    let result = match experiment {
        Experiment::Fig2 => {
            sweeps::sweep_airspeed_vs_altitude(&grid, &scenario.aircraft, &scenario.battery)?
        }
        Experiment::Fig3 => sweeps::sweep_min_eta_vs_weight(
            &grid,
            &scenario.mission,
            &scenario.aircraft,
            &scenario.battery,
        )?,
    };

    let rendered = match format {
        SweepFormat::Csv => result.to_csv(),
        SweepFormat::Json => {
            let mut text = result.to_json();
            text.push('\n');
            text
        }
    };
    match out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(0)
}

fn cmd_atmosphere(altitude: f64) -> Result<i32, Box<dyn Error>> {
    let density = atmosphere::air_density(altitude)?;
    println!("{}", format_significant(density, 6));
    Ok(0)
}

fn format_significant(value: f64, digits: i32) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

fn cmd_check(config: &Path, step: f64) -> Result<i32, Box<dyn Error>> {
    let scenario = scenario::load_scenario(config)?;
    let density = scenario.density()?;
    let plan = scenario.plan()?;

    if !plan.feasibility.feasible {
        println!("plan is infeasible; nothing to cross-check");
        return Ok(EXIT_INFEASIBLE);
    }

    let mut all_ok = true;
    let mut report = |name: &str, ok: bool, detail: String| {
        all_ok &= ok;
        println!("{}: {} ({detail})", name, if ok { "PASS" } else { "FAIL" });
    };

    // Closed-form optimal airspeed vs brute-force energy minimization.
    let grid = oracle::grid_search_optimal_speed(
        &scenario.mission,
        &scenario.aircraft,
        &scenario.battery,
        density,
        1e-3,
    )?;
    let dv = (grid.v_best_mps - plan.v_opt_mps).abs();
    report(
        "optimal airspeed vs grid search",
        dv <= 1e-3,
        format!("|dv| = {dv:e} m/s"),
    );

    // Closed-form final charge vs RK4 integration.
    let trajectory = oracle::integrate_charge(
        &scenario.mission,
        &scenario.aircraft,
        &scenario.battery,
        density,
        plan.v_opt_mps,
        step,
    )?;
    let rel_q = (trajectory.final_state().charge_c - plan.qf_c).abs() / scenario.mission.q0_c;
    report(
        "final charge vs rk4",
        trajectory.reached_target() && rel_q < 1e-6,
        format!("relative error = {rel_q:e}"),
    );

    // Closed-form energy vs integrated electrical power.
    let rel_e =
        (trajectory.energy_j() - plan.energy_j).abs() / plan.energy_j.max(f64::MIN_POSITIVE);
    report(
        "energy vs integrated power",
        rel_e < 1e-6,
        format!("relative error = {rel_e:e}"),
    );

    // First-order optimality residuals.
    let diagnostics = oracle::pontryagin_residuals(
        &plan,
        &scenario.mission,
        &scenario.aircraft,
        &scenario.battery,
        density,
    );
    let power_scale = plan.drag_n * plan.v_opt_mps / scenario.battery.eta;
    let rel_h = diagnostics.hamiltonian_residual / power_scale;
    let rel_s = diagnostics.stationarity_residual / power_scale;
    report(
        "optimality residuals",
        rel_h < 1e-9 && rel_s < 1e-9,
        format!("hamiltonian = {rel_h:e}, stationarity = {rel_s:e}"),
    );

    // Closed-form charge sampled along the rk4 trajectory.
    let mut max_rel = 0.0f64;
    for state in &trajectory.samples {
        let q_closed = battery::charge_at(
            state.time_s,
            scenario.mission.t0_s,
            scenario.mission.q0_c,
            plan.drag_n,
            plan.v_opt_mps,
            &scenario.battery,
        )?;
        max_rel = max_rel.max((q_closed - state.charge_c).abs() / scenario.mission.q0_c);
    }
    report(
        "charge trajectory vs rk4",
        max_rel < 1e-6,
        format!("max relative error = {max_rel:e}"),
    );

    Ok(if all_ok { 0 } else { EXIT_INFEASIBLE })
}

#[cfg(test)]
mod tests {
    use super::format_significant;

    #[test]
    fn six_significant_digits_across_magnitudes() {
        assert_eq!(format_significant(1.0596942259887956, 6), "1.05969");
        assert_eq!(format_significant(0.820719682839049, 6), "0.820720");
        assert_eq!(format_significant(1.226_613_787_4, 6), "1.22661");
        assert_eq!(format_significant(0.0, 6), "0");
        assert_eq!(format_significant(123456.789, 6), "123457");
    }
}
