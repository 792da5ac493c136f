//! Tropospheric air-density model.
//!
//! Converts geometric altitude to air density with the NASA tropospheric
//! model: a linear temperature lapse combined with the corresponding
//! pressure law, collapsed into a single closed form,
//!
//! ```text
//! rho(h) = 101.29 * (288.14 - 0.00649 h)^4.256 / (0.2869 * 288.08^5.256)
//! ```
//!
//! The constants are stored to exactly the digits above; they are not
//! re-derived from a standard atmosphere. The model is valid for the
//! troposphere only, so altitudes are restricted to `[0, 11000)` meters.

use crate::error::ParamError;

/// Lowest supported altitude, meters.
pub const MIN_ALTITUDE_M: f64 = 0.0;
/// Altitude ceiling (exclusive), meters. The linear lapse rate underlying
/// the model only holds in the troposphere.
pub const MAX_ALTITUDE_M: f64 = 11_000.0;

const PRESSURE_COEFF_KPA: f64 = 101.29;
const SEA_LEVEL_TEMP_K: f64 = 288.14;
const LAPSE_RATE_K_PER_M: f64 = 0.00649;
const NUMERATOR_EXPONENT: f64 = 4.256;
const GAS_CONSTANT_KPA_M3_PER_KG_K: f64 = 0.2869;
const REFERENCE_TEMP_K: f64 = 288.08;
const DENOMINATOR_EXPONENT: f64 = 5.256;

/// Altitude fell outside the supported tropospheric range.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("altitude {altitude_m} m is outside the valid range [0, 11000) m")]
pub struct AltitudeOutOfRange {
    pub altitude_m: f64,
}

/// Air density at a given altitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereSample {
    /// Geometric altitude, meters.
    pub altitude_m: f64,
    /// Air density, kg/m^3.
    pub density_kg_m3: f64,
}

impl AtmosphereSample {
    pub fn at(altitude_m: f64) -> Result<Self, AltitudeOutOfRange> {
        Ok(Self {
            altitude_m,
            density_kg_m3: air_density(altitude_m)?,
        })
    }
}

/// Air density in kg/m^3 at a geometric altitude in meters.
///
/// Strictly positive and strictly decreasing over the valid range.
pub fn air_density(altitude_m: f64) -> Result<f64, AltitudeOutOfRange> {
    if !(MIN_ALTITUDE_M..MAX_ALTITUDE_M).contains(&altitude_m) {
        return Err(AltitudeOutOfRange { altitude_m });
    }
    let temperature_k = SEA_LEVEL_TEMP_K - LAPSE_RATE_K_PER_M * altitude_m;
    Ok(PRESSURE_COEFF_KPA * temperature_k.powf(NUMERATOR_EXPONENT)
        / (GAS_CONSTANT_KPA_M3_PER_KG_K * REFERENCE_TEMP_K.powf(DENOMINATOR_EXPONENT)))
}

/// Density for a mission: an explicit override when configured, otherwise
/// the altitude-derived model value.
pub fn density_or_override(
    altitude_m: f64,
    override_kg_m3: Option<f64>,
) -> Result<f64, DensityError> {
    match override_kg_m3 {
        Some(rho) => {
            ParamError::require_positive("overrides.density_kg_m3", rho)?;
            Ok(rho)
        }
        None => Ok(air_density(altitude_m)?),
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DensityError {
    #[error(transparent)]
    Altitude(#[from] AltitudeOutOfRange),
    #[error(transparent)]
    Param(#[from] ParamError),
}
