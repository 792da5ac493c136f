//! Energy-optimal steady-cruise planning for all-electric aircraft.
//!
//! Given an airframe, a battery system with affine voltage, and a cruise
//! segment, this crate computes the airspeed and final time that
//! minimize total electrical energy, the resulting charge trajectory,
//! and analytical feasibility verdicts — all in closed form, each
//! cross-checked by an independent numerical oracle.
//!
//! The main entry point is [`planner::plan_cruise`] (or
//! [`scenario::load_scenario`] plus [`scenario::ScenarioConfig::plan`]
//! when starting from a config file):
//!
//! ```
//! use voltcruise::airframe::AircraftParams;
//! use voltcruise::battery::BatteryParams;
//! use voltcruise::planner::{self, MissionSpec};
//!
//! let aircraft = AircraftParams {
//!     wing_area_m2: 30.0,
//!     cd0: 0.02,
//!     cd2: 0.05,
//!     cl_max: 1.8,
//!     v_max_rated_mps: 78.6,
//!     v_div_mps: 205.8,
//!     weight_n: 28_000.0,
//! };
//! let battery = BatteryParams {
//!     a_v_per_c: 0.00028,
//!     b_v: 682.0,
//!     q_full_c: 979_200.0,
//!     q_min_c: 196_000.0,
//!     q_max_c: 781_000.0,
//!     eta: 0.85,
//! };
//! let mission = MissionSpec {
//!     altitude_m: 1_500.0,
//!     x0_m: 0.0,
//!     xf_m: 150_000.0,
//!     t0_s: 0.0,
//!     q0_c: 700_000.0,
//! };
//!
//! let plan = planner::plan_cruise(&mission, &aircraft, &battery).unwrap();
//! assert!(plan.feasibility.feasible);
//! assert!((plan.v_opt_mps - 52.8).abs() < 0.1);
//! ```
//!
//! The [`guide`] module embeds the narrative book from `book/` so its
//! examples run as doc-tests.

pub mod airframe;
pub mod atmosphere;
pub mod battery;
pub mod error;
pub mod guide;
pub mod oracle;
pub mod planner;
pub mod scenario;
pub mod sweeps;

pub use error::ParamError;
