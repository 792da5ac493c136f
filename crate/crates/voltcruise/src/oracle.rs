//! Independent numerical cross-checks for the closed-form planner.
//!
//! Every closed form in this crate has a numerical counterpart here that
//! shares none of its algebra:
//!
//! * [`integrate_charge`] — fixed-step classical Runge-Kutta integration
//!   of the discharge equation, against the closed-form charge;
//! * [`grid_search_optimal_speed`] — brute-force energy minimization
//!   over the speed envelope, against the closed-form optimal airspeed;
//! * [`pontryagin_residuals`] — first-order optimality residuals
//!   evaluated along a candidate plan.
//!
//! A fixed integration step is used rather than adaptive control: the
//! dynamics are smooth, scalar, and slow, and fixed steps make runs
//! bit-reproducible.

use crate::airframe::{self, AircraftParams};
use crate::battery::{self, BatteryParams, BatteryState};
use crate::error::ParamError;
use crate::planner::{CruisePlan, MissionSpec};

/// Bisection window for locating a depletion event inside one
/// integration step, seconds.
const DEPLETION_TIME_TOLERANCE_S: f64 = 1e-6;

/// Sample count for residual evaluation along a plan.
const RESIDUAL_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("speed envelope is empty: v_stall {v_stall_mps} m/s >= v_max {v_max_mps} m/s")]
    EmptyEnvelope { v_stall_mps: f64, v_max_mps: f64 },
}

/// Point at which the battery ran out during integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepletionPoint {
    pub time_s: f64,
    pub distance_m: f64,
}

/// Time-sampled discharge trajectory from numerical integration.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeTrajectory {
    /// Battery state at each sample; times strictly increasing, charge
    /// strictly decreasing, first sample exactly at (t0, Q0).
    pub samples: Vec<BatteryState>,
    /// Cumulative distance flown at each sample, meters.
    pub distance_m: Vec<f64>,
    /// Nominal integration step, seconds (the final step is shortened to
    /// land exactly on the target distance).
    pub step_s: f64,
    /// Set when the battery emptied before the target distance.
    pub depletion: Option<DepletionPoint>,
}

impl ChargeTrajectory {
    pub fn final_state(&self) -> &BatteryState {
        self.samples
            .last()
            .expect("trajectory has at least one sample")
    }

    pub fn reached_target(&self) -> bool {
        self.depletion.is_none()
    }

    /// Electrical energy drawn over the trajectory, as the trapezoid sum
    /// of `U(t) i(t)` over the samples, joules.
    pub fn energy_j(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|pair| {
                let p0 = pair[0].voltage_v * pair[0].current_a;
                let p1 = pair[1].voltage_v * pair[1].current_a;
                0.5 * (p0 + p1) * (pair[1].time_s - pair[0].time_s)
            })
            .sum()
    }
}

/// Result of the brute-force energy minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSearchResult {
    pub v_best_mps: f64,
    pub energy_best_j: f64,
}

/// First-order optimality residuals along a candidate plan.
///
/// The Hamiltonian is evaluated with the costates of the optimal
/// solution: the position costate is the constant `-D(v*) / eta` and the
/// charge costate is identically zero by transversality. A plan flying
/// the optimal airspeed drives the Hamiltonian to zero; any other speed
/// leaves a strictly positive residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PontryaginDiagnostics {
    /// max |H(t)| over the sampled plan, watts.
    pub hamiltonian_residual: f64,
    /// |charge costate at t_f|; zero by construction, recorded for
    /// completeness.
    pub costate_q_residual: f64,
    /// |dD/dv| v^2 / eta at the plan's airspeed, watts. Vanishes exactly
    /// at the minimum-drag airspeed.
    pub stationarity_residual: f64,
}

/// Integrates the discharge equation with classical fourth-order
/// Runge-Kutta at fixed step, flying `airspeed_mps` from the mission
/// start until the target distance is covered or the battery empties.
///
/// The last step is shortened so the final sample lands exactly on the
/// target. If charge or voltage reaches zero inside a step, the crossing
/// is located by bisection to 1e-6 s and reported via
/// [`ChargeTrajectory::depletion`].
pub fn integrate_charge(
    mission: &MissionSpec,
    aircraft: &AircraftParams,
    battery: &BatteryParams,
    density_kg_m3: f64,
    airspeed_mps: f64,
    step_s: f64,
) -> Result<ChargeTrajectory, OracleError> {
    ParamError::require_positive("step_s", step_s)?;
    ParamError::require_positive("airspeed_mps", airspeed_mps)?;
    ParamError::require_positive("density_kg_m3", density_kg_m3)?;
    aircraft.validate()?;
    battery.validate()?;
    mission.validate()?;

    let drag_n = airframe::drag(airspeed_mps, aircraft, density_kg_m3)?.drag_n;
    let rate = |q: f64| -drag_n * airspeed_mps / (battery.eta * battery::voltage(q, battery));
    let t_end = mission.t0_s + mission.distance_m() / airspeed_mps;

    let make_state = |t: f64, q: f64| BatteryState {
        time_s: t,
        charge_c: q,
        voltage_v: battery::voltage(q, battery),
        current_a: drag_n * airspeed_mps / (battery.eta * battery::voltage(q, battery)),
    };

    let mut samples = vec![make_state(mission.t0_s, mission.q0_c)];
    let mut distance_m = vec![0.0];
    let mut depletion = None;

    let mut t = mission.t0_s;
    let mut q = mission.q0_c;
    while t < t_end {
        let h = step_s.min(t_end - t);
        let q_next = rk4_step(q, h, &rate);
        if q_next <= 0.0 || battery::voltage(q_next, battery) <= 0.0 {
            let crossing = locate_depletion(q, h, &rate, battery);
            let t_dep = t + crossing;
            samples.push(make_state(t_dep, 0.0));
            distance_m.push(airspeed_mps * (t_dep - mission.t0_s));
            depletion = Some(DepletionPoint {
                time_s: t_dep,
                distance_m: airspeed_mps * (t_dep - mission.t0_s),
            });
            break;
        }
        t += h;
        q = q_next;
        samples.push(make_state(t, q));
        distance_m.push(airspeed_mps * (t - mission.t0_s));
    }

    Ok(ChargeTrajectory {
        samples,
        distance_m,
        step_s,
        depletion,
    })
}

/// Brute-force minimizer of the segment energy `D(v) dx / eta` over the
/// open speed envelope, on a uniform grid of spacing `grid_step_mps`.
pub fn grid_search_optimal_speed(
    mission: &MissionSpec,
    aircraft: &AircraftParams,
    battery: &BatteryParams,
    density_kg_m3: f64,
    grid_step_mps: f64,
) -> Result<GridSearchResult, OracleError> {
    ParamError::require_positive("grid_step_mps", grid_step_mps)?;
    let envelope = airframe::speed_envelope(aircraft, density_kg_m3)?;
    if envelope.is_empty() {
        return Err(OracleError::EmptyEnvelope {
            v_stall_mps: envelope.v_stall_mps,
            v_max_mps: envelope.v_max_mps,
        });
    }

    let dx = mission.distance_m();
    let mut best: Option<GridSearchResult> = None;
    let mut k = 1u64;
    loop {
        let v = envelope.v_stall_mps + grid_step_mps * k as f64;
        if v >= envelope.v_max_mps {
            break;
        }
        let energy = drag_force(v, aircraft, density_kg_m3) * dx / battery.eta;
        if best.is_none_or(|b| energy < b.energy_best_j) {
            best = Some(GridSearchResult {
                v_best_mps: v,
                energy_best_j: energy,
            });
        }
        k += 1;
    }

    best.ok_or(OracleError::EmptyEnvelope {
        v_stall_mps: envelope.v_stall_mps,
        v_max_mps: envelope.v_max_mps,
    })
}

/// Evaluates the optimality residuals of a plan at `RESIDUAL_SAMPLES`
/// uniformly spaced times.
///
/// The charge-costate term of the Hamiltonian is identically zero but is
/// still evaluated, so that a change in the transversality condition of
/// a future model extension would surface here.
pub fn pontryagin_residuals(
    plan: &CruisePlan,
    mission: &MissionSpec,
    aircraft: &AircraftParams,
    battery: &BatteryParams,
    density_kg_m3: f64,
) -> PontryaginDiagnostics {
    let v_plan = plan.v_opt_mps;
    let drag_plan = drag_force(v_plan, aircraft, density_kg_m3);
    let drag_dv = airframe::drag(v_plan, aircraft, density_kg_m3)
        .map(|p| p.drag_dv)
        .unwrap_or(f64::NAN);

    // Optimal costates: position costate from the optimal speed, charge
    // costate zero by transversality.
    let v_star = airframe::min_drag_speed(aircraft, density_kg_m3);
    let costate_x = -drag_force(v_star, aircraft, density_kg_m3) / battery.eta;
    let costate_q = 0.0;

    let duration = plan.tf_s - mission.t0_s;
    let n = if duration > 0.0 { RESIDUAL_SAMPLES } else { 1 };
    let mut hamiltonian_residual: f64 = 0.0;
    for i in 0..n {
        let t = mission.t0_s + duration * i as f64 / (n.max(2) - 1) as f64;
        let q = battery::charge_at(t, mission.t0_s, mission.q0_c, drag_plan, v_plan, battery)
            .unwrap_or(0.0);
        let u = battery::voltage(q, battery);
        let hamiltonian = costate_x * v_plan + drag_plan * v_plan / battery.eta
            - costate_q * drag_plan * v_plan / (battery.eta * u);
        hamiltonian_residual = hamiltonian_residual.max(hamiltonian.abs());
    }

    PontryaginDiagnostics {
        hamiltonian_residual,
        costate_q_residual: costate_q.abs(),
        stationarity_residual: (drag_dv * v_plan * v_plan / battery.eta).abs(),
    }
}

fn drag_force(airspeed_mps: f64, aircraft: &AircraftParams, density_kg_m3: f64) -> f64 {
    let v2 = airspeed_mps * airspeed_mps;
    let rho_s = density_kg_m3 * aircraft.wing_area_m2;
    0.5 * aircraft.cd0 * rho_s * v2
        + 2.0 * aircraft.cd2 * aircraft.weight_n * aircraft.weight_n / (rho_s * v2)
}

fn rk4_step(q: f64, h: f64, rate: &impl Fn(f64) -> f64) -> f64 {
    let k1 = rate(q);
    let k2 = rate(q + 0.5 * h * k1);
    let k3 = rate(q + 0.5 * h * k2);
    let k4 = rate(q + h * k3);
    q + h / 6.0 * (k1 + 2.0 * (k2 + k3) + k4)
}

/// Bisects the offset within `(0, h]` at which a single RK4 sub-step
/// from charge `q` first produces a non-positive charge or voltage.
fn locate_depletion(q: f64, h: f64, rate: &impl Fn(f64) -> f64, battery: &BatteryParams) -> f64 {
    let depleted = |dt: f64| {
        let q_next = rk4_step(q, dt, rate);
        q_next <= 0.0 || battery::voltage(q_next, battery) <= 0.0
    };
    let mut lo = 0.0;
    let mut hi = h;
    while hi - lo > DEPLETION_TIME_TOLERANCE_S {
        let mid = 0.5 * (lo + hi);
        if depleted(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
