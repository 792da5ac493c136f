//! Scenario configuration files.
//!
//! A scenario is a single JSON document with three sections — `aircraft`,
//! `battery`, `mission` — and an optional `overrides` section. Unknown
//! keys are rejected so typos surface as parse errors rather than
//! silently ignored settings.
//!
//! ```json
//! {
//!   "aircraft": { "wing_area_m2": 30.0, "...": 0 },
//!   "battery":  { "a_v_per_c": 0.00028, "...": 0 },
//!   "mission":  { "altitude_m": 1500.0, "...": 0 },
//!   "overrides": { "density_kg_m3": 1.058 }
//! }
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::airframe::AircraftParams;
use crate::atmosphere::{self, DensityError};
use crate::battery::BatteryParams;
use crate::error::ParamError;
use crate::planner::{self, CruisePlan, MissionSpec, PlanError};

/// Optional values that supersede derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    /// Air density to use instead of the altitude-derived model value,
    /// kg/m^3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density_kg_m3: Option<f64>,
}

/// A full scenario: airframe, battery, and mission, plus overrides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub aircraft: AircraftParams,
    pub battery: BatteryParams,
    pub mission: MissionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overrides: Option<Overrides>,
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Invalid(#[from] ParamError),
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        self.aircraft.validate()?;
        self.battery.validate()?;
        self.mission.validate()?;
        if let Some(rho) = self.overrides.and_then(|o| o.density_kg_m3) {
            ParamError::require_positive("overrides.density_kg_m3", rho)?;
        }
        Ok(())
    }

    /// Density override if configured, otherwise None.
    pub fn density_override(&self) -> Option<f64> {
        self.overrides.and_then(|o| o.density_kg_m3)
    }

    /// The air density the scenario runs at: the override when present,
    /// the altitude model otherwise.
    pub fn density(&self) -> Result<f64, DensityError> {
        atmosphere::density_or_override(self.mission.altitude_m, self.density_override())
    }

    /// Plans the scenario's cruise segment at the scenario's density.
    pub fn plan(&self) -> Result<CruisePlan, PlanError> {
        let density = match self.density() {
            Ok(rho) => rho,
            Err(DensityError::Altitude(e)) => return Err(PlanError::Altitude(e)),
            Err(DensityError::Param(e)) => return Err(PlanError::Param(e)),
        };
        planner::plan_cruise_with_density(&self.mission, &self.aircraft, &self.battery, density)
    }
}

/// Loads and validates a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioConfig, ScenarioError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let config = ScenarioConfig::from_json(&text).map_err(|source| ScenarioError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    config.validate()?;
    Ok(config)
}
