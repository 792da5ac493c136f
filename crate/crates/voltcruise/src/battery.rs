//! Affine-voltage battery model and closed-form charge trajectories.
//!
//! The supply voltage is affine in the stored charge, `U = a Q + b`, and
//! the discharge dynamics in steady cruise are
//!
//! ```text
//! dQ/dt = -D v / (eta (a Q + b))
//! ```
//!
//! With drag and airspeed constant over a segment this equation is
//! separable and has a closed-form solution in both the constant-voltage
//! case (`a = 0`, linear decay) and the charge-dependent case (`a > 0`,
//! the positive root of a quadratic). [`charge_at`] evaluates whichever
//! branch applies.

use serde::{Deserialize, Serialize};

use crate::error::ParamError;

/// Below this value of the linear voltage coefficient `a` (V/C) the
/// constant-voltage branch is selected. The rationalized form used for
/// `a > 0` is continuous across this threshold.
pub const CONSTANT_VOLTAGE_THRESHOLD_V_PER_C: f64 = 1e-15;

/// Battery-system parameters. All values SI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatteryParams {
    /// Linear voltage coefficient a, volts per coulomb. Zero selects a
    /// constant-voltage battery.
    pub a_v_per_c: f64,
    /// Affine voltage coefficient b, volts.
    pub b_v: f64,
    /// Rated maximum charge of the battery system, coulombs.
    pub q_full_c: f64,
    /// Operational lower charge bound, coulombs.
    pub q_min_c: f64,
    /// Operational upper charge bound, coulombs.
    pub q_max_c: f64,
    /// Electrical system efficiency, in (0, 1].
    pub eta: f64,
}

impl BatteryParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        ParamError::require_non_negative("battery.a_v_per_c", self.a_v_per_c)?;
        ParamError::require_positive("battery.b_v", self.b_v)?;
        ParamError::require_positive("battery.q_full_c", self.q_full_c)?;
        ParamError::require_non_negative("battery.q_min_c", self.q_min_c)?;
        ParamError::require_positive("battery.q_max_c", self.q_max_c)?;
        // Window fields are finite by the checks above, so plain
        // comparisons are safe here.
        if self.q_min_c >= self.q_max_c {
            return Err(ParamError::new(
                "battery.q_min_c",
                "strictly less than battery.q_max_c",
                self.q_min_c,
            ));
        }
        if self.q_max_c > self.q_full_c {
            return Err(ParamError::new(
                "battery.q_max_c",
                "at most battery.q_full_c",
                self.q_max_c,
            ));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(ParamError::new("battery.eta", "in (0, 1]", self.eta));
        }
        Ok(())
    }

    /// True when the linear coefficient is small enough that the
    /// constant-voltage closed form is used.
    pub fn is_constant_voltage(&self) -> bool {
        self.a_v_per_c < CONSTANT_VOLTAGE_THRESHOLD_V_PER_C
    }
}

/// Instantaneous electrical state of the battery system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryState {
    /// Time, seconds.
    pub time_s: f64,
    /// Stored charge Q, coulombs.
    pub charge_c: f64,
    /// Supply voltage U = a Q + b, volts.
    pub voltage_v: f64,
    /// Current drawn from the battery, amperes (non-negative in cruise).
    pub current_a: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BatteryError {
    #[error(transparent)]
    Param(#[from] ParamError),
    /// The affine voltage model left its validity region.
    #[error("supply voltage {voltage_v} V is not positive at charge {charge_c} C")]
    NonPositiveVoltage { charge_c: f64, voltage_v: f64 },
    /// The battery empties before the requested time: the quadratic for
    /// Q(t) has no admissible positive root once Z(t) >= 0.
    #[error("battery depletes before the requested time (Z = {z} >= 0)")]
    ChargeDepleted { z: f64 },
}

/// Supply voltage `a Q + b` in volts.
pub fn voltage(charge_c: f64, battery: &BatteryParams) -> f64 {
    battery.a_v_per_c * charge_c + battery.b_v
}

/// Rate of change of charge, coulombs/second. Strictly negative in
/// cruise: current flows out of the battery.
pub fn charge_rate(
    charge_c: f64,
    drag_n: f64,
    airspeed_mps: f64,
    battery: &BatteryParams,
) -> Result<f64, BatteryError> {
    let u = voltage(charge_c, battery);
    if u <= 0.0 || u.is_nan() {
        return Err(BatteryError::NonPositiveVoltage {
            charge_c,
            voltage_v: u,
        });
    }
    Ok(-(drag_n * airspeed_mps) / (battery.eta * u))
}

/// Depletion function
/// `Z(t) = (D v / eta)(t - t0) - a Q0^2 / 2 - b Q0`.
///
/// Affine and increasing in `t`; the charge-dependent closed form admits
/// a positive charge root exactly while `Z(t) < 0`. The identity
/// `Z(t) = -(a Q(t)^2 / 2 + b Q(t))` means `Z` reaches zero exactly when
/// the battery empties.
pub fn depletion_function_z(
    t_s: f64,
    t0_s: f64,
    q0_c: f64,
    drag_n: f64,
    airspeed_mps: f64,
    battery: &BatteryParams,
) -> f64 {
    (drag_n * airspeed_mps / battery.eta) * (t_s - t0_s)
        - battery.a_v_per_c * q0_c * q0_c / 2.0
        - battery.b_v * q0_c
}

/// Closed-form charge at time `t`, assuming drag and airspeed are
/// constant over `[t0, t]`.
///
/// Constant-voltage branch (`a = 0`):
/// `Q(t) = Q0 - (D v / (eta b)) (t - t0)`.
///
/// Charge-dependent branch (`a > 0`): the positive root
/// `Q(t) = (-b + sqrt(b^2 - 2 a Z(t))) / a`, evaluated in the
/// rationalized form `-2 Z(t) / (b + sqrt(b^2 - 2 a Z(t)))`, which is
/// algebraically identical but free of cancellation as `a -> 0`.
pub fn charge_at(
    t_s: f64,
    t0_s: f64,
    q0_c: f64,
    drag_n: f64,
    airspeed_mps: f64,
    battery: &BatteryParams,
) -> Result<f64, BatteryError> {
    if battery.is_constant_voltage() {
        let slope = drag_n * airspeed_mps / (battery.eta * battery.b_v);
        return Ok(q0_c - slope * (t_s - t0_s));
    }
    let z = depletion_function_z(t_s, t0_s, q0_c, drag_n, airspeed_mps, battery);
    if z >= 0.0 {
        return Err(BatteryError::ChargeDepleted { z });
    }
    Ok(positive_root(z, battery))
}

/// Positive root of `a Q^2 / 2 + b Q = -Z` for `Z < 0`.
pub(crate) fn positive_root(z: f64, battery: &BatteryParams) -> f64 {
    let b = battery.b_v;
    let discriminant = b * b - 2.0 * battery.a_v_per_c * z;
    -2.0 * z / (b + discriminant.sqrt())
}
