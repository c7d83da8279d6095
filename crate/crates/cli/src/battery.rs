//! Parameter sets exercised by `validate`.

use std::f64::consts::PI;

use nonstatic_phase::oracle::run_validation;
use nonstatic_phase::wavefunction::Chirp;
use nonstatic_phase::{CSign, OracleSettings, Params, Times, ValidationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{states_of, LADDER};
use crate::config::{RunConfig, Suite};

/// Size of the shift applied to `C` by the corrupted-C negative control.
pub const C_CORRUPTION: f64 = 0.1;

pub const RANDOM_CASES: usize = 20;

/// Time steps of the window used for the built-in sets.
const WINDOW_STEPS: usize = 600;

#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub label: String,
    pub params: Params,
    pub n: Vec<u32>,
    pub window: Times,
}

impl Case {
    /// Two envelope periods starting at `t₀`.
    fn new(label: impl Into<String>, params: Params, n: Vec<u32>) -> Self {
        let window = Times::new(params.t0(), params.t0() + 2.0 * params.period(), WINDOW_STEPS).expect("window");
        Self { label: label.into(), params, n, window }
    }
}

fn figure(label: &str, a: f64, b: f64, n: u32, omega: f64) -> Case {
    Case::new(label, Params::dimensionless(a, b, omega).expect("figure parameters are valid"), vec![n])
}

pub fn static_cases() -> Vec<Case> {
    vec![figure("fig1a", 1.0, 1.0, 5, 1.0), figure("fig2a", 1.0, 1.0, 0, 0.5)]
}

pub fn figure_cases() -> Vec<Case> {
    let mut cases = vec![
        figure("fig1a", 1.0, 1.0, 5, 1.0),
        figure("fig1b", 2.5, 0.5, 5, 1.0),
        figure("fig2a", 1.0, 1.0, 0, 0.5),
        figure("fig2b", 0.5, 2.5, 5, 0.5),
        figure("fig2c", 0.1, 10.0, 10, 1.0),
    ];
    for a in LADDER {
        cases.push(figure(&format!("fig4a-A{a}"), a, 1.0, 5, 1.0));
    }
    for b in LADDER {
        cases.push(figure(&format!("fig4b-B{b}"), 1.0, b, 5, 1.0));
    }
    cases
}

/// Random valid parameter sets drawn from a seeded ChaCha stream.
pub fn random_cases(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let a = 10f64.powf(rng.gen_range(-1.0..1.0));
            // log-uniform B in [1/A, 10] keeps AB ≥ 1
            let b = (1.0 / a) * (10.0 * a).powf(rng.gen_range(0.0..1.0));
            let sign = if rng.gen_bool(0.5) { CSign::Positive } else { CSign::Negative };
            let omega = rng.gen_range(0.3..2.0);
            let t0 = rng.gen_range(-1.0..1.0);
            let phi = rng.gen_range(-0.5 * PI..0.5 * PI);
            let n = rng.gen_range(0..=6);
            let params = Params::new(a, b, sign, omega, t0, phi, 1.0, 1.0).expect("draws are valid");
            Case::new(format!("random-{k}"), params, vec![0, n])
        })
        .collect()
}

pub fn cases(config: &RunConfig) -> anyhow::Result<Vec<Case>> {
    Ok(match config.suite {
        Suite::Default => {
            let mut all = figure_cases();
            all.extend(random_cases(config.seed, RANDOM_CASES));
            all
        }
        Suite::Static => static_cases(),
        Suite::Custom => vec![Case {
            label: "custom".into(),
            params: config.params()?,
            n: config.n.clone(),
            window: config.time_grid()?,
        }],
    })
}

/// Moves `C` by [`C_CORRUPTION`] off the auxiliary condition, leaving
/// everything else in place. The shift points towards zero when `|C|` allows
/// it, so `AB − C²` stays positive and `f` stays defined.
pub fn corrupt(params: &Params) -> nonstatic_phase::Result<Params> {
    let c = params.c();
    let shifted = if c.abs() > C_CORRUPTION { c - C_CORRUPTION * c.signum() } else { c + C_CORRUPTION };
    Params::with_explicit_c(
        params.a(),
        params.b(),
        shifted,
        params.omega(),
        params.t0(),
        params.phi(),
        params.eps(),
        params.hbar(),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct Run {
    pub label: String,
    pub n: Vec<u32>,
    pub passed: bool,
    pub report: ValidationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatteryReport {
    pub passed: bool,
    pub suite: Suite,
    pub seed: u64,
    pub corrupt_c: bool,
    pub flip_chirp: bool,
    pub settings: OracleSettings,
    pub runs: Vec<Run>,
}

pub fn run(config: &RunConfig) -> anyhow::Result<BatteryReport> {
    let mut cases = cases(config)?;
    if config.corrupt_c {
        for case in &mut cases {
            case.params = corrupt(&case.params)?;
        }
    }
    let settings = OracleSettings {
        chirp: if config.flip_chirp { Chirp::Flipped } else { Chirp::Physical },
        ..OracleSettings::default()
    };
    let runs = cases
        .par_iter()
        .map(|case| {
            let states = states_of(&case.n)?;
            let report = run_validation(&case.params, &states, &case.window, None, &settings);
            Ok(Run { label: case.label.clone(), n: case.n.clone(), passed: report.passed(), report })
        })
        .collect::<nonstatic_phase::Result<Vec<_>>>()?;
    Ok(BatteryReport {
        passed: runs.iter().all(|r| r.passed),
        suite: config.suite,
        seed: config.seed,
        corrupt_c: config.corrupt_c,
        flip_chirp: config.flip_chirp,
        settings,
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_draws_are_valid_and_reproducible() {
        let a = random_cases(7, 50);
        assert_eq!(a, random_cases(7, 50));
        assert_ne!(a, random_cases(8, 50));
        for case in &a {
            assert!(case.params.satisfies_constraint());
        }
    }

    #[test]
    fn corruption_breaks_constraint() {
        for case in figure_cases().into_iter().chain(random_cases(3, 50)) {
            let bad = corrupt(&case.params).unwrap();
            assert!(!bad.satisfies_constraint(), "{}", case.label);
        }
    }
}
