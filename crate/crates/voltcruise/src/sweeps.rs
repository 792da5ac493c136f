//! Deterministic parameter sweeps over weight, altitude, and initial
//! charge.
//!
//! Two stock experiments ship with the crate:
//!
//! * **airspeed sweep** — optimal cruise airspeed over a weight x
//!   altitude grid;
//! * **minimum-efficiency sweep** — smallest electrical system
//!   efficiency that completes the segment, over a weight x
//!   initial-charge grid.
//!
//! Cells are evaluated independently and assembled in lexicographic grid
//! order, so output is bit-identical across runs. Every cell is
//! reproducible by a single planner call with the same inputs.

use serde::{Deserialize, Serialize};

use crate::airframe::{self, AircraftParams};
use crate::atmosphere::{self, AltitudeOutOfRange};
use crate::battery::BatteryParams;
use crate::error::ParamError;
use crate::planner::{self, MissionSpec};

/// Axis values for the sweep experiments. Each operation uses the axes
/// it needs and ignores the rest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    /// Aircraft weights, newtons.
    pub weights_n: Vec<f64>,
    /// Cruise altitudes, meters.
    pub altitudes_m: Vec<f64>,
    /// Initial charges, coulombs.
    pub q0_values_c: Vec<f64>,
}

impl SweepGrid {
    /// Stock airspeed experiment: 7 weights over [22500, 28500] N by
    /// 7 altitudes over [1000, 4000] m.
    pub fn airspeed_experiment() -> Self {
        Self {
            weights_n: linspace(22_500.0, 28_500.0, 7),
            altitudes_m: linspace(1_000.0, 4_000.0, 7),
            q0_values_c: Vec::new(),
        }
    }

    /// Stock minimum-efficiency experiment: the same 7 weights by four
    /// initial charges spanning the admissible window.
    pub fn min_efficiency_experiment() -> Self {
        Self {
            weights_n: linspace(22_500.0, 28_500.0, 7),
            altitudes_m: Vec::new(),
            q0_values_c: vec![500_000.0, 600_000.0, 700_000.0, 781_000.0],
        }
    }
}

fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
        .collect()
}

fn validate_axis(name: &'static str, values: &[f64]) -> Result<(), ParamError> {
    if values.is_empty() {
        return Err(ParamError::new(name, "non-empty", f64::NAN));
    }
    for &value in values {
        ParamError::require_finite(name, value)?;
    }
    for pair in values.windows(2) {
        if pair[0] >= pair[1] {
            return Err(ParamError::new(name, "strictly increasing", pair[1]));
        }
    }
    Ok(())
}

/// One cell of the airspeed sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirspeedCell {
    pub weight_n: f64,
    pub altitude_m: f64,
    /// Optimal cruise airspeed, m/s.
    pub v_opt_mps: f64,
    /// Whether the optimal airspeed sits strictly inside the speed
    /// envelope at this weight and altitude.
    pub within_envelope: bool,
}

/// One cell of the minimum-efficiency sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinEfficiencyCell {
    pub weight_n: f64,
    pub q0_c: f64,
    /// Smallest efficiency completing the segment; absent when the
    /// initial charge does not exceed the lower charge bound.
    pub eta_min: Option<f64>,
    /// True when some physical efficiency (eta_min <= 1) completes the
    /// segment.
    pub feasible_at_any_eta: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub experiment: String,
    pub description: String,
    pub tool_version: String,
    pub aircraft: AircraftParams,
    pub battery: BatteryParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mission: Option<MissionSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepRows {
    Airspeed(Vec<AirspeedCell>),
    MinEfficiency(Vec<MinEfficiencyCell>),
}

impl SweepRows {
    pub fn len(&self) -> usize {
        match self {
            SweepRows::Airspeed(rows) => rows.len(),
            SweepRows::MinEfficiency(rows) => rows.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A completed sweep: metadata envelope plus rows in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub metadata: SweepMetadata,
    pub rows: SweepRows,
}

impl SweepResult {
    /// CSV rendering: header row, then one row per cell, independent
    /// variables first, computed value next, flags last. Full-precision
    /// (shortest round-trip) decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.rows {
            SweepRows::Airspeed(rows) => {
                out.push_str("weight_n,altitude_m,v_opt_mps,within_envelope\n");
                for r in rows {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        r.weight_n, r.altitude_m, r.v_opt_mps, r.within_envelope
                    ));
                }
            }
            SweepRows::MinEfficiency(rows) => {
                out.push_str("weight_n,q0_c,eta_min,feasible_at_any_eta\n");
                for r in rows {
                    let eta = r.eta_min.map_or(String::new(), |e| e.to_string());
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        r.weight_n, r.q0_c, eta, r.feasible_at_any_eta
                    ));
                }
            }
        }
        out
    }

    /// JSON rendering with the metadata envelope.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep result serializes")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Altitude(#[from] AltitudeOutOfRange),
}

/// Optimal cruise airspeed over the weight x altitude grid. Density per
/// cell comes from the altitude model.
pub fn sweep_airspeed_vs_altitude(
    grid: &SweepGrid,
    aircraft_template: &AircraftParams,
    battery: &BatteryParams,
) -> Result<SweepResult, SweepError> {
    validate_axis("grid.weights_n", &grid.weights_n)?;
    validate_axis("grid.altitudes_m", &grid.altitudes_m)?;
    aircraft_template.validate()?;
    battery.validate()?;

    let mut rows = Vec::with_capacity(grid.weights_n.len() * grid.altitudes_m.len());
    for &weight_n in &grid.weights_n {
        let aircraft = AircraftParams {
            weight_n,
            ..*aircraft_template
        };
        for &altitude_m in &grid.altitudes_m {
            let density = atmosphere::air_density(altitude_m)?;
            let v_opt_mps = planner::optimal_airspeed(&aircraft, density);
            let envelope = airframe::speed_envelope(&aircraft, density)?;
            rows.push(AirspeedCell {
                weight_n,
                altitude_m,
                v_opt_mps,
                within_envelope: envelope.contains(v_opt_mps),
            });
        }
    }

    Ok(SweepResult {
        metadata: SweepMetadata {
            experiment: "airspeed_vs_altitude".into(),
            description: "optimal cruise airspeed over a weight x altitude grid".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            aircraft: *aircraft_template,
            battery: *battery,
            mission: None,
        },
        rows: SweepRows::Airspeed(rows),
    })
}

/// Minimum required electrical efficiency over the weight x
/// initial-charge grid. Cells whose initial charge does not exceed the
/// lower bound are flagged, not aborted.
pub fn sweep_min_eta_vs_weight(
    grid: &SweepGrid,
    mission_template: &MissionSpec,
    aircraft_template: &AircraftParams,
    battery_template: &BatteryParams,
) -> Result<SweepResult, SweepError> {
    validate_axis("grid.weights_n", &grid.weights_n)?;
    validate_axis("grid.q0_values_c", &grid.q0_values_c)?;
    aircraft_template.validate()?;
    battery_template.validate()?;
    mission_template.validate()?;

    let mut rows = Vec::with_capacity(grid.weights_n.len() * grid.q0_values_c.len());
    for &weight_n in &grid.weights_n {
        let aircraft = AircraftParams {
            weight_n,
            ..*aircraft_template
        };
        for &q0_c in &grid.q0_values_c {
            let mission = MissionSpec {
                q0_c,
                ..*mission_template
            };
            let eta_min =
                planner::min_required_efficiency(&mission, &aircraft, battery_template).ok();
            rows.push(MinEfficiencyCell {
                weight_n,
                q0_c,
                eta_min,
                feasible_at_any_eta: eta_min.is_some_and(|eta| eta <= 1.0),
            });
        }
    }

    Ok(SweepResult {
        metadata: SweepMetadata {
            experiment: "min_eta_vs_weight".into(),
            description: "minimum electrical efficiency over a weight x initial-charge grid".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            aircraft: *aircraft_template,
            battery: *battery_template,
            mission: Some(*mission_template),
        },
        rows: SweepRows::MinEfficiency(rows),
    })
}
