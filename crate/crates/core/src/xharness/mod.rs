//! Seeded randomized experiments over the paper configurations, with CSV and
//! JSON output.
//!
//! Each trial draws its coefficients from its own ChaCha8 stream
//! (`seed_from_u64(seed)` then `set_stream(trial)`), so results do not depend
//! on evaluation order and parallel runs are byte-identical to serial ones.

mod output;
mod run;

pub use output::{emit_csv, format_g, write_csv, ViolationReport, CSV_HEADER};
pub use run::{
    evaluate_bounds, run_experiment, run_experiment_with, sample_coefficients, BoundEvaluation,
    Execution, Setup,
};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::check_lambda;

/// One of the three reproduced experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Experiment {
    /// l1 bounds, single-qubit states and 4-outcome POVM.
    #[serde(rename = "l1-1q")]
    L1OneQubit,
    /// Relative-entropy bounds, two-qubit states and 16-outcome POVM.
    #[serde(rename = "relent-2q")]
    RelEntTwoQubit,
    /// Tsallis bounds, two-qubit states and 16-outcome POVM.
    #[serde(rename = "tsallis-2q")]
    TsallisTwoQubit,
}

impl Experiment {
    pub const ALL: [Experiment; 3] = [
        Experiment::L1OneQubit,
        Experiment::RelEntTwoQubit,
        Experiment::TsallisTwoQubit,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Experiment::L1OneQubit => "l1-1q",
            Experiment::RelEntTwoQubit => "relent-2q",
            Experiment::TsallisTwoQubit => "tsallis-2q",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment '{s}'")))
    }
}

/// How `(α, β)` are drawn for a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Scheme {
    /// `α, β` i.i.d. uniform on `(0,1)`.
    #[default]
    #[serde(rename = "uniform01")]
    Uniform01,
    /// As `Uniform01`, then both divided by `α + β` whenever `α + β > 1`.
    #[serde(rename = "uniform01-rescaled")]
    Uniform01Rescaled,
    /// As `Uniform01`, with a uniform relative phase `e^{iφ}` on `β`.
    #[serde(rename = "uniform01-phase")]
    Uniform01Phase,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [
        Scheme::Uniform01,
        Scheme::Uniform01Rescaled,
        Scheme::Uniform01Phase,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Scheme::Uniform01 => "uniform01",
            Scheme::Uniform01Rescaled => "uniform01-rescaled",
            Scheme::Uniform01Phase => "uniform01-phase",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown coefficient scheme '{s}'")))
    }
}

pub const DEFAULT_TRIALS: usize = 10;

/// Sandwich tolerance used for the violation flag.
pub const VIOLATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub trials: usize,
    pub seed: u64,
    pub lambda: Option<f64>,
    pub scheme: Scheme,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, seed: u64) -> Self {
        Self {
            experiment,
            trials: DEFAULT_TRIALS,
            seed,
            lambda: None,
            scheme: Scheme::default(),
            output: None,
        }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output = Some(path.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        match (self.experiment, self.lambda) {
            (Experiment::TsallisTwoQubit, None) => {
                Err(Error::Config("tsallis-2q needs --lambda".into()))
            }
            (Experiment::TsallisTwoQubit, Some(l)) => check_lambda(l),
            (e, Some(_)) => Err(Error::Config(format!("--lambda does not apply to {e}"))),
            (_, None) => Ok(()),
        }
    }
}

/// One trial: the exact measure of the normalized superposition and its bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRecord {
    pub experiment: Experiment,
    pub trial: usize,
    pub seed: u64,
    /// `|α|` as used after any rescaling.
    pub alpha: f64,
    /// `|β|` as used after any rescaling.
    pub beta: f64,
    /// Relative phase of `β`; zero except under `uniform01-phase`.
    pub beta_phase: f64,
    pub norm_sq: f64,
    pub exact: f64,
    pub upper: Option<f64>,
    pub lower: Option<f64>,
    pub upper_applicable: bool,
    pub lower_applicable: bool,
    pub violation: bool,
    pub imag_discarded_max: f64,
}

impl BoundRecord {
    /// `exact > upper + tol` or `exact < lower − tol`, each side checked only
    /// where that bound exists.
    pub fn violates(exact: f64, upper: Option<f64>, lower: Option<f64>) -> bool {
        upper.is_some_and(|u| exact > u + VIOLATION_TOL)
            || lower.is_some_and(|l| exact < l - VIOLATION_TOL)
    }
}
