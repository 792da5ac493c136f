//! Shared fixtures for the integration suites: the golden scenario,
//! a deterministic RNG, and randomized-scenario generation.

#![allow(dead_code)]

use voltcruise::airframe::AircraftParams;
use voltcruise::atmosphere;
use voltcruise::battery::BatteryParams;
use voltcruise::planner::MissionSpec;

/// Air density pinned by the golden scenario's override, kg/m^3.
pub const REFERENCE_DENSITY: f64 = 1.058;

pub fn cx300() -> AircraftParams {
    AircraftParams {
        wing_area_m2: 30.0,
        cd0: 0.02,
        cd2: 0.05,
        cl_max: 1.8,
        v_max_rated_mps: 78.6,
        v_div_mps: 205.8,
        weight_n: 28_000.0,
    }
}

pub fn cx300_battery() -> BatteryParams {
    BatteryParams {
        a_v_per_c: 0.00028,
        b_v: 682.0,
        q_full_c: 979_200.0,
        q_min_c: 196_000.0,
        q_max_c: 781_000.0,
        eta: 0.85,
    }
}

pub fn montreal_ottawa() -> MissionSpec {
    MissionSpec {
        altitude_m: 1_500.0,
        x0_m: 0.0,
        xf_m: 150_000.0,
        t0_s: 0.0,
        q0_c: 700_000.0,
    }
}

/// SplitMix64: tiny, deterministic, seedable; keeps the randomized
/// acceptance scenarios reproducible without an RNG dependency.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + (hi - lo) * unit
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.uniform(0.0, 1.0) < p
    }
}

/// One randomized cruise scenario drawn from the acceptance ranges:
/// weight in [22500, 28500] N, altitude in [1000, 4000] m, efficiency in
/// [0.7, 0.95], voltage slope either 0 or in [1e-5, 1e-3] V/C.
pub struct RandomScenario {
    pub aircraft: AircraftParams,
    pub battery: BatteryParams,
    pub mission: MissionSpec,
    pub density: f64,
}

pub fn random_scenarios(count: usize, seed: u64) -> Vec<RandomScenario> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|i| {
            let weight_n = rng.uniform(22_500.0, 28_500.0);
            let altitude_m = rng.uniform(1_000.0, 4_000.0);
            let eta = rng.uniform(0.7, 0.95);
            // Alternate deterministically so both voltage branches get
            // equal coverage regardless of the draw.
            let a_v_per_c = if i % 2 == 0 {
                0.0
            } else {
                rng.uniform(1e-5, 1e-3)
            };
            let aircraft = AircraftParams {
                weight_n,
                ..cx300()
            };
            let battery = BatteryParams {
                a_v_per_c,
                eta,
                ..cx300_battery()
            };
            let mission = MissionSpec {
                altitude_m,
                ..montreal_ottawa()
            };
            let density = atmosphere::air_density(altitude_m).unwrap();
            RandomScenario {
                aircraft,
                battery,
                mission,
                density,
            }
        })
        .collect()
}
