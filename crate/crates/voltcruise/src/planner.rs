//! Closed-form energy-optimal cruise planning.
//!
//! For steady cruise of an all-electric aircraft with affine battery
//! voltage, minimizing total electrical energy over airspeed and final
//! time has a closed-form solution:
//!
//! * the optimal airspeed is the minimum-drag airspeed, constant over
//!   the segment;
//! * the optimal final time follows from flying the segment at that
//!   speed;
//! * the final charge follows from the closed-form discharge solution in
//!   [`crate::battery`];
//! * all-electric operation is feasible exactly when the speed sits
//!   strictly inside the envelope, the initial charge is strictly below
//!   the upper bound, the final charge strictly above the lower bound,
//!   and (for charge-dependent voltage) the depletion function stays
//!   negative.
//!
//! Infeasibility is data, not an exception: every condition is reported
//! as a signed margin so that sweeps and callers can rank near-misses.
//! Margins are compared strictly against zero with no epsilon; callers
//! wanting operational reserves impose them on top.

use serde::{Deserialize, Serialize};

use crate::airframe::{self, AircraftParams};
use crate::atmosphere::{self, AltitudeOutOfRange};
use crate::battery::{self, BatteryParams};
use crate::error::ParamError;

/// One cruise segment: where it starts, where it ends, and the battery
/// charge available at the start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MissionSpec {
    /// Cruise altitude, meters.
    pub altitude_m: f64,
    /// Initial horizontal position, meters.
    pub x0_m: f64,
    /// Final horizontal position, meters.
    pub xf_m: f64,
    /// Initial time, seconds.
    pub t0_s: f64,
    /// Initial charge, coulombs. Its position inside the battery's
    /// charge window is checked at plan time, not here.
    pub q0_c: f64,
}

impl MissionSpec {
    pub fn validate(&self) -> Result<(), ParamError> {
        ParamError::require_finite("mission.altitude_m", self.altitude_m)?;
        ParamError::require_finite("mission.x0_m", self.x0_m)?;
        ParamError::require_finite("mission.xf_m", self.xf_m)?;
        ParamError::require_finite("mission.t0_s", self.t0_s)?;
        ParamError::require_non_negative("mission.q0_c", self.q0_c)?;
        if self.xf_m < self.x0_m {
            return Err(ParamError::new(
                "mission.xf_m",
                "at least mission.x0_m (forward cruise)",
                self.xf_m,
            ));
        }
        Ok(())
    }

    /// Segment length in meters.
    pub fn distance_m(&self) -> f64 {
        self.xf_m - self.x0_m
    }
}

/// Signed distances of each feasibility condition from its boundary.
///
/// `feasible` is exactly the conjunction of all margins being strictly
/// positive, plus `z_tf < 0` when the voltage is charge-dependent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// v* - v_stall, m/s.
    pub speed_lower_margin: f64,
    /// v_max - v*, m/s.
    pub speed_upper_margin: f64,
    /// Q_max - Q_0, coulombs.
    pub q0_margin: f64,
    /// Q(t_f) - Q_min, coulombs.
    pub qf_margin: f64,
    /// Depletion function at the final time; present only for
    /// charge-dependent voltage (a > 0), where it must be negative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_tf: Option<f64>,
    pub feasible: bool,
}

/// An energy-optimal cruise plan with its feasibility verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CruisePlan {
    /// Optimal airspeed, m/s.
    pub v_opt_mps: f64,
    /// Optimal final time, seconds.
    pub tf_s: f64,
    /// Drag at the optimal airspeed, newtons.
    pub drag_n: f64,
    /// Total electrical energy drawn over the segment, joules.
    pub energy_j: f64,
    /// Charge remaining at the final time, coulombs.
    pub qf_c: f64,
    pub feasibility: FeasibilityReport,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlanError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Altitude(#[from] AltitudeOutOfRange),
    #[error(transparent)]
    Battery(#[from] battery::BatteryError),
    /// No usable charge above the lower bound.
    #[error("initial charge {q0_c} C does not exceed the charge lower bound {q_min_c} C")]
    NoUsableCharge { q0_c: f64, q_min_c: f64 },
}

/// Energy-optimal cruise airspeed: the minimum-drag airspeed. Constant
/// over the segment. Whether it sits inside the speed envelope is the
/// planner's job to report, not this function's.
pub fn optimal_airspeed(aircraft: &AircraftParams, density_kg_m3: f64) -> f64 {
    airframe::min_drag_speed(aircraft, density_kg_m3)
}

/// Final time when the segment is flown at `v_opt`:
/// `t0 + (xf - x0) / v_opt`.
pub fn optimal_final_time(mission: &MissionSpec, v_opt_mps: f64) -> f64 {
    mission.t0_s + mission.distance_m() / v_opt_mps
}

/// Total electrical energy over the segment at the optimal airspeed:
/// `D(v*) (xf - x0) / eta` in joules.
///
/// Independent of the voltage coefficients `a` and `b`: they shape the
/// charge trajectory but cancel out of the electrical power `U i`.
pub fn total_energy(
    mission: &MissionSpec,
    aircraft: &AircraftParams,
    battery: &BatteryParams,
    density_kg_m3: f64,
) -> f64 {
    let v_opt = optimal_airspeed(aircraft, density_kg_m3);
    let drag_n = drag_at(v_opt, aircraft, density_kg_m3);
    drag_n * mission.distance_m() / battery.eta
}

/// Charge remaining at the optimal final time, via the closed-form
/// branch matching the battery's voltage coefficient.
pub fn final_charge(
    mission: &MissionSpec,
    aircraft: &AircraftParams,
    battery: &BatteryParams,
    density_kg_m3: f64,
) -> Result<f64, PlanError> {
    let v_opt = optimal_airspeed(aircraft, density_kg_m3);
    let tf_s = optimal_final_time(mission, v_opt);
    let drag_n = drag_at(v_opt, aircraft, density_kg_m3);
    Ok(battery::charge_at(
        tf_s,
        mission.t0_s,
        mission.q0_c,
        drag_n,
        v_opt,
        battery,
    )?)
}

/// Plans the segment, deriving air density from the mission altitude.
pub fn plan_cruise(
    mission: &MissionSpec,
    aircraft: &AircraftParams,
    battery: &BatteryParams,
) -> Result<CruisePlan, PlanError> {
    let density = atmosphere::air_density(mission.altitude_m)?;
    plan_cruise_with_density(mission, aircraft, battery, density)
}

/// Plans the segment at an explicitly supplied air density (e.g. a
/// measured value overriding the altitude model).
///
/// Returns an error only for invalid parameter records; an infeasible
/// mission still yields a plan, with `feasibility.feasible == false` and
/// every margin populated.
pub fn plan_cruise_with_density(
    mission: &MissionSpec,
    aircraft: &AircraftParams,
    battery: &BatteryParams,
    density_kg_m3: f64,
) -> Result<CruisePlan, PlanError> {
    aircraft.validate()?;
    battery.validate()?;
    mission.validate()?;
    ParamError::require_positive("density_kg_m3", density_kg_m3)?;

    let envelope = airframe::speed_envelope(aircraft, density_kg_m3)?;
    let v_opt = optimal_airspeed(aircraft, density_kg_m3);
    let tf_s = optimal_final_time(mission, v_opt);
    let drag_n = drag_at(v_opt, aircraft, density_kg_m3);
    let energy_j = drag_n * mission.distance_m() / battery.eta;

    let z_tf = (!battery.is_constant_voltage()).then(|| {
        battery::depletion_function_z(tf_s, mission.t0_s, mission.q0_c, drag_n, v_opt, battery)
    });
    let qf_c = extended_final_charge(tf_s, mission, drag_n, v_opt, battery, z_tf);

    let speed_lower_margin = v_opt - envelope.v_stall_mps;
    let speed_upper_margin = envelope.v_max_mps - v_opt;
    let q0_margin = battery.q_max_c - mission.q0_c;
    let qf_margin = qf_c - battery.q_min_c;
    let feasible = speed_lower_margin > 0.0
        && speed_upper_margin > 0.0
        && q0_margin > 0.0
        && qf_margin > 0.0
        && z_tf.is_none_or(|z| z < 0.0);

    Ok(CruisePlan {
        v_opt_mps: v_opt,
        tf_s,
        drag_n,
        energy_j,
        qf_c,
        feasibility: FeasibilityReport {
            speed_lower_margin,
            speed_upper_margin,
            q0_margin,
            qf_margin,
            z_tf,
            feasible,
        },
    })
}

/// Smallest electrical system efficiency for which the final charge
/// still reaches the lower bound, i.e. the `eta` solving
/// `Q(t_f; eta) = Q_min`:
///
/// ```text
/// eta_min = D (xf - x0) / ((a/2)(Q0^2 - Qmin^2) + b (Q0 - Qmin))
/// ```
///
/// with `D = 2 W sqrt(C_D0 C_D2)`, the drag at the optimal airspeed.
/// That drag value is independent of air density, so `eta_min` is too.
/// The `eta` stored in `battery` is ignored. Values above 1 mean the
/// mission is infeasible at any efficiency.
pub fn min_required_efficiency(
    mission: &MissionSpec,
    aircraft: &AircraftParams,
    battery: &BatteryParams,
) -> Result<f64, PlanError> {
    if mission.q0_c <= battery.q_min_c {
        return Err(PlanError::NoUsableCharge {
            q0_c: mission.q0_c,
            q_min_c: battery.q_min_c,
        });
    }
    let drag_n = 2.0 * aircraft.weight_n * (aircraft.cd0 * aircraft.cd2).sqrt();
    let q0 = mission.q0_c;
    let q_min = battery.q_min_c;
    let denom = battery.a_v_per_c / 2.0 * (q0 * q0 - q_min * q_min) + battery.b_v * (q0 - q_min);
    Ok(drag_n * mission.distance_m() / denom)
}

/// Longest segment for which the final charge still reaches the lower
/// bound, at the battery's configured efficiency:
///
/// ```text
/// range = eta ((a/2)(q0^2 - Qmin^2) + b (q0 - Qmin)) / D
/// ```
///
/// An initial charge exactly at the lower bound has zero usable range;
/// below it there is none at all.
pub fn max_feasible_range(
    aircraft: &AircraftParams,
    battery: &BatteryParams,
    q0_c: f64,
    density_kg_m3: f64,
) -> Result<f64, PlanError> {
    if q0_c < battery.q_min_c {
        return Err(PlanError::NoUsableCharge {
            q0_c,
            q_min_c: battery.q_min_c,
        });
    }
    let v_opt = optimal_airspeed(aircraft, density_kg_m3);
    let drag_n = drag_at(v_opt, aircraft, density_kg_m3);
    let q_min = battery.q_min_c;
    let capacity =
        battery.a_v_per_c / 2.0 * (q0_c * q0_c - q_min * q_min) + battery.b_v * (q0_c - q_min);
    Ok(battery.eta * capacity / drag_n)
}

/// Drag force at a given airspeed; the airspeed is known positive here.
fn drag_at(airspeed_mps: f64, aircraft: &AircraftParams, density_kg_m3: f64) -> f64 {
    let v2 = airspeed_mps * airspeed_mps;
    let rho_s = density_kg_m3 * aircraft.wing_area_m2;
    0.5 * aircraft.cd0 * rho_s * v2
        + 2.0 * aircraft.cd2 * aircraft.weight_n * aircraft.weight_n / (rho_s * v2)
}

/// Final charge as a total function, for populating margins.
///
/// While the depletion condition holds this is the closed-form charge.
/// Once it fails (z_tf >= 0, battery empty before arrival) the value
/// continues the charge root algebraically into negative territory so
/// the qf margin stays finite and monotone, clamping at `-b/a` where the
/// root stops being real.
fn extended_final_charge(
    tf_s: f64,
    mission: &MissionSpec,
    drag_n: f64,
    v_opt: f64,
    battery: &BatteryParams,
    z_tf: Option<f64>,
) -> f64 {
    match z_tf {
        None => {
            let slope = drag_n * v_opt / (battery.eta * battery.b_v);
            mission.q0_c - slope * (tf_s - mission.t0_s)
        }
        Some(z) => {
            let discriminant = battery.b_v * battery.b_v - 2.0 * battery.a_v_per_c * z;
            if discriminant >= 0.0 {
                battery::positive_root(z, battery)
            } else {
                -battery.b_v / battery.a_v_per_c
            }
        }
    }
}
