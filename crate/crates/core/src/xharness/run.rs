use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::distr::{Open01, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use super::{BoundRecord, Experiment, ExperimentConfig, Scheme};
use crate::bounds::{
    thm1_lower, thm1_upper, thm2_bounds, thm3_lower, thm3_upper, BoundResult, Diagnostics,
    NotApplicable,
};
use crate::error::{Error, Result};
use crate::measures::{c_l1_pure, c_r_pure, c_tsallis_pure, check_lambda};
use crate::qstate::{
    dilation_state, qubit_povm, ry_state, superpose, two_qubit_povm, Povm, PureState, PHI1_THETA,
    PSI1_THETA, PSI2_THETA, QUBIT_PHI_ANGLE, QUBIT_PSI_ANGLE,
};

/// Serial or data-parallel trial evaluation. Both give identical records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// POVM and constituent states of one experiment.
#[derive(Debug, Clone)]
pub struct Setup {
    pub experiment: Experiment,
    pub povm: Povm,
    pub phi: PureState,
    pub psi: PureState,
}

impl Setup {
    pub fn new(experiment: Experiment) -> Self {
        match experiment {
            Experiment::L1OneQubit => Setup {
                experiment,
                povm: qubit_povm(),
                phi: ry_state(QUBIT_PHI_ANGLE),
                psi: ry_state(QUBIT_PSI_ANGLE),
            },
            Experiment::RelEntTwoQubit => Setup {
                experiment,
                povm: two_qubit_povm(),
                phi: dilation_state(PHI1_THETA),
                psi: dilation_state(PSI1_THETA),
            },
            Experiment::TsallisTwoQubit => Setup {
                experiment,
                povm: two_qubit_povm(),
                phi: dilation_state(PHI1_THETA),
                psi: dilation_state(PSI2_THETA),
            },
        }
    }

    /// Exact value and both bounds for `αφ + βψ`.
    pub fn evaluate(
        &self,
        alpha: Complex64,
        beta: Complex64,
        lambda: Option<f64>,
    ) -> Result<BoundEvaluation> {
        let spec = superpose(&[alpha, beta], &[self.phi.clone(), self.psi.clone()])?;
        let omega = spec.normalized();
        let e = &self.povm;
        let (exact, upper, lower) = match self.experiment {
            Experiment::L1OneQubit => {
                let b = thm2_bounds(&spec, e)?;
                (
                    c_l1_pure(omega, e)?,
                    BoundResult::value(b.upper, b.diagnostics.clone()),
                    BoundResult::value(b.lower, b.diagnostics),
                )
            }
            Experiment::RelEntTwoQubit => (
                c_r_pure(omega, e)?,
                thm1_upper(&spec, e)?,
                thm1_lower(&spec, e)?,
            ),
            Experiment::TsallisTwoQubit => {
                let l = lambda.ok_or_else(|| Error::Config("tsallis-2q needs lambda".into()))?;
                check_lambda(l)?;
                let lower = if l > 1.0 {
                    thm3_lower(&spec, e, l)?
                } else {
                    BoundResult::not_applicable(NotApplicable::LambdaDomain, Diagnostics::default())
                };
                (
                    c_tsallis_pure(omega, e, l)?,
                    thm3_upper(&spec, e, l)?,
                    lower,
                )
            }
        };
        Ok(BoundEvaluation {
            norm_sq: spec.norm_sq(),
            exact,
            imag_discarded_max: upper
                .diagnostics
                .imag_discarded
                .max(lower.diagnostics.imag_discarded),
            upper,
            lower,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEvaluation {
    pub norm_sq: f64,
    pub exact: f64,
    pub upper: BoundResult,
    pub lower: BoundResult,
    pub imag_discarded_max: f64,
}

/// Single-shot evaluation used by the `bounds` subcommand.
pub fn evaluate_bounds(
    experiment: Experiment,
    alpha: Complex64,
    beta: Complex64,
    lambda: Option<f64>,
) -> Result<BoundEvaluation> {
    Setup::new(experiment).evaluate(alpha, beta, lambda)
}

/// `(|α|, |β|, φ)` for one trial.
pub fn sample_coefficients(seed: u64, trial: usize, scheme: Scheme) -> (f64, f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let mut a: f64 = rng.sample(Open01);
    let mut b: f64 = rng.sample(Open01);
    let mut phase = 0.0;
    match scheme {
        Scheme::Uniform01 => {}
        Scheme::Uniform01Rescaled => {
            let s = a + b;
            if s > 1.0 {
                a /= s;
                b /= s;
            }
        }
        Scheme::Uniform01Phase => {
            let d = Uniform::new(0.0, TAU).expect("valid range");
            phase = rng.sample(d);
        }
    }
    (a, b, phase)
}

fn run_trial(setup: &Setup, cfg: &ExperimentConfig, trial: usize) -> Result<BoundRecord> {
    let (a, b, phase) = sample_coefficients(cfg.seed, trial, cfg.scheme);
    let ev = setup.evaluate(
        Complex64::new(a, 0.0),
        Complex64::from_polar(b, phase),
        cfg.lambda,
    )?;
    let upper = ev.upper.get();
    let lower = ev.lower.get();
    Ok(BoundRecord {
        experiment: cfg.experiment,
        trial,
        seed: cfg.seed,
        alpha: a,
        beta: b,
        beta_phase: phase,
        norm_sq: ev.norm_sq,
        exact: ev.exact,
        upper,
        lower,
        upper_applicable: upper.is_some(),
        lower_applicable: lower.is_some(),
        violation: BoundRecord::violates(ev.exact, upper, lower),
        imag_discarded_max: ev.imag_discarded_max,
    })
}

/// Runs every trial of `cfg`, ordered by trial index.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<BoundRecord>> {
    run_experiment_with(cfg, Execution::default())
}

pub fn run_experiment_with(cfg: &ExperimentConfig, exec: Execution) -> Result<Vec<BoundRecord>> {
    cfg.validate()?;
    let setup = Setup::new(cfg.experiment);
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(&setup, cfg, t))
            .collect(),
        _ => (0..cfg.trials).map(|t| run_trial(&setup, cfg, t)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_mean_near_half() {
        let n = 100_000;
        let mean = (0..n)
            .map(|t| sample_coefficients(2024, t, Scheme::Uniform01).0)
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn streams_are_independent_of_order() {
        let a = sample_coefficients(9, 37, Scheme::Uniform01);
        let _ = sample_coefficients(9, 36, Scheme::Uniform01);
        assert_eq!(a, sample_coefficients(9, 37, Scheme::Uniform01));
        assert_ne!(a, sample_coefficients(9, 38, Scheme::Uniform01));
        assert_ne!(a, sample_coefficients(10, 37, Scheme::Uniform01));
    }

    #[test]
    fn rescaled_amplitudes_admit_a_root() {
        for t in 0..200 {
            let (a, b, _) = sample_coefficients(3, t, Scheme::Uniform01Rescaled);
            assert!(a + b <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn phase_scheme_keeps_magnitudes() {
        for t in 0..20 {
            let (a, b, p) = sample_coefficients(5, t, Scheme::Uniform01Phase);
            let (a0, b0, _) = sample_coefficients(5, t, Scheme::Uniform01);
            assert_eq!((a, b), (a0, b0));
            assert!((0.0..TAU).contains(&p));
        }
    }

    #[test]
    fn l1_run_has_no_violations() {
        let cfg = ExperimentConfig::new(Experiment::L1OneQubit, 42);
        let recs = run_experiment(&cfg).unwrap();
        assert_eq!(recs.len(), 10);
        assert!(recs
            .iter()
            .all(|r| !r.violation && r.upper_applicable && r.lower_applicable));
        assert!(recs.iter().enumerate().all(|(i, r)| r.trial == i));
    }

    #[test]
    fn tsallis_small_lambda_has_upper_only() {
        let cfg = ExperimentConfig::new(Experiment::TsallisTwoQubit, 1).lambda(0.3);
        for r in run_experiment(&cfg).unwrap() {
            assert!(r.upper_applicable && !r.lower_applicable);
            assert!(r.lower.is_none());
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let cfg = ExperimentConfig::new(Experiment::TsallisTwoQubit, 11)
            .lambda(1.5)
            .trials(40);
        let a = run_experiment_with(&cfg, Execution::Sequential).unwrap();
        let b = run_experiment_with(&cfg, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
