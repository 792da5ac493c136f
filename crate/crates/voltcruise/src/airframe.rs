//! Drag polar, speed envelope, and minimum-drag airspeed for steady
//! level cruise.
//!
//! In steady cruise lift balances weight and thrust balances drag, so the
//! the drag polar `C_D = C_D0 + C_D2 * C_L^2` yields a drag force with a
//! parasitic term growing as `v^2` and an induced term shrinking as
//! `1/v^2`:
//!
//! ```text
//! D(v) = 1/2 C_D0 rho S v^2 + 2 C_D2 W^2 / (rho S v^2)
//! ```
//!
//! The speed that minimizes `D` (the root of `dD/dv = 0`) plays a central
//! role in cruise planning; see [`min_drag_speed`].

use serde::{Deserialize, Serialize};

use crate::error::ParamError;

/// Airframe constants for steady cruise. All values SI.
///
/// Weight is a field here because an all-electric aircraft does not burn
/// mass in cruise; it is constant over a segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AircraftParams {
    /// Wing surface area S, m^2.
    pub wing_area_m2: f64,
    /// Profile drag coefficient C_D0, dimensionless.
    pub cd0: f64,
    /// Induced drag coefficient C_D2, dimensionless.
    pub cd2: f64,
    /// Maximum lift coefficient C_Lmax, dimensionless.
    pub cl_max: f64,
    /// Rated maximum operating airspeed, m/s.
    pub v_max_rated_mps: f64,
    /// Drag-divergence airspeed, m/s.
    pub v_div_mps: f64,
    /// Aircraft weight magnitude W, newtons.
    pub weight_n: f64,
}

impl AircraftParams {
    /// Checks that every field is strictly positive. Both drag terms must
    /// be present for a minimum-drag airspeed to exist.
    pub fn validate(&self) -> Result<(), ParamError> {
        ParamError::require_positive("aircraft.wing_area_m2", self.wing_area_m2)?;
        ParamError::require_positive("aircraft.cd0", self.cd0)?;
        ParamError::require_positive("aircraft.cd2", self.cd2)?;
        ParamError::require_positive("aircraft.cl_max", self.cl_max)?;
        ParamError::require_positive("aircraft.v_max_rated_mps", self.v_max_rated_mps)?;
        ParamError::require_positive("aircraft.v_div_mps", self.v_div_mps)?;
        ParamError::require_positive("aircraft.weight_n", self.weight_n)?;
        Ok(())
    }
}

/// Admissible airspeed interval `(v_stall, v_max)` for steady cruise.
///
/// The envelope may be empty (`v_stall >= v_max`); that is a reportable
/// condition, not an error, and the planner turns it into negative
/// feasibility margins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedEnvelope {
    /// Stall speed, m/s.
    pub v_stall_mps: f64,
    /// min(drag-divergence speed, rated maximum speed), m/s.
    pub v_max_mps: f64,
}

impl SpeedEnvelope {
    /// NaN bounds count as empty.
    pub fn is_empty(&self) -> bool {
        self.v_stall_mps.partial_cmp(&self.v_max_mps) != Some(std::cmp::Ordering::Less)
    }

    /// Strict interior membership, matching the open constraint
    /// `v_stall < v < v_max`.
    pub fn contains(&self, airspeed_mps: f64) -> bool {
        self.v_stall_mps < airspeed_mps && airspeed_mps < self.v_max_mps
    }
}

/// Aerodynamic state at one airspeed: coefficients, drag, and the first
/// two drag derivatives with respect to airspeed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AeroPoint {
    /// Airspeed v, m/s.
    pub airspeed_mps: f64,
    /// Lift coefficient C_L.
    pub cl: f64,
    /// Drag coefficient C_D.
    pub cd: f64,
    /// Drag force D, newtons.
    pub drag_n: f64,
    /// dD/dv, N·s/m.
    pub drag_dv: f64,
    /// d^2D/dv^2, N·s^2/m^2.
    pub drag_dvv: f64,
}

/// Stall speed `sqrt(2 W / (rho S C_Lmax))` in m/s.
pub fn stall_speed(
    weight_n: f64,
    density_kg_m3: f64,
    wing_area_m2: f64,
    cl_max: f64,
) -> Result<f64, ParamError> {
    ParamError::require_positive("weight_n", weight_n)?;
    ParamError::require_positive("density_kg_m3", density_kg_m3)?;
    ParamError::require_positive("wing_area_m2", wing_area_m2)?;
    ParamError::require_positive("cl_max", cl_max)?;
    Ok((2.0 * weight_n / (density_kg_m3 * wing_area_m2 * cl_max)).sqrt())
}

/// Upper speed bound: the lower of the drag-divergence speed and the
/// rated maximum operating speed.
pub fn max_speed(v_div_mps: f64, v_max_rated_mps: f64) -> f64 {
    v_div_mps.min(v_max_rated_mps)
}

/// Lift coefficient `2 W / (rho S v^2)` required for level flight at
/// airspeed `v`.
pub fn lift_coefficient(
    airspeed_mps: f64,
    weight_n: f64,
    density_kg_m3: f64,
    wing_area_m2: f64,
) -> Result<f64, ParamError> {
    ParamError::require_positive("airspeed_mps", airspeed_mps)?;
    Ok(2.0 * weight_n / (density_kg_m3 * wing_area_m2 * airspeed_mps * airspeed_mps))
}

/// Evaluates the drag polar at `airspeed_mps`.
pub fn drag(
    airspeed_mps: f64,
    aircraft: &AircraftParams,
    density_kg_m3: f64,
) -> Result<AeroPoint, ParamError> {
    ParamError::require_positive("airspeed_mps", airspeed_mps)?;
    let v2 = airspeed_mps * airspeed_mps;
    let rho_s = density_kg_m3 * aircraft.wing_area_m2;
    let w2 = aircraft.weight_n * aircraft.weight_n;

    let cl = 2.0 * aircraft.weight_n / (rho_s * v2);
    let cd = aircraft.cd0 + aircraft.cd2 * cl * cl;
    let drag_n = 0.5 * aircraft.cd0 * rho_s * v2 + 2.0 * aircraft.cd2 * w2 / (rho_s * v2);
    let drag_dv =
        aircraft.cd0 * rho_s * airspeed_mps - 4.0 * aircraft.cd2 * w2 / (rho_s * v2 * airspeed_mps);
    let drag_dvv = aircraft.cd0 * rho_s + 12.0 * aircraft.cd2 * w2 / (rho_s * v2 * v2);

    Ok(AeroPoint {
        airspeed_mps,
        cl,
        cd,
        drag_n,
        drag_dv,
        drag_dvv,
    })
}

/// Airspeed that minimizes drag:
/// `sqrt((2 W / (rho S)) * sqrt(C_D2 / C_D0))`.
///
/// Constant over a cruise segment; independent of the speed envelope.
pub fn min_drag_speed(aircraft: &AircraftParams, density_kg_m3: f64) -> f64 {
    let rho_s = density_kg_m3 * aircraft.wing_area_m2;
    (2.0 * aircraft.weight_n / rho_s * (aircraft.cd2 / aircraft.cd0).sqrt()).sqrt()
}

/// Speed envelope for an aircraft at a given air density.
pub fn speed_envelope(
    aircraft: &AircraftParams,
    density_kg_m3: f64,
) -> Result<SpeedEnvelope, ParamError> {
    Ok(SpeedEnvelope {
        v_stall_mps: stall_speed(
            aircraft.weight_n,
            density_kg_m3,
            aircraft.wing_area_m2,
            aircraft.cl_max,
        )?,
        v_max_mps: max_speed(aircraft.v_div_mps, aircraft.v_max_rated_mps),
    })
}
