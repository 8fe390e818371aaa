use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use povm_coherence::bounds::BoundResult;
use povm_coherence::measures::Measure;
use povm_coherence::qstate::{
    dilation_state, dilation_unitary_1q, dilation_unitary_2q, povm_from_dilation, qubit_povm,
    ry_state, two_qubit_povm, validate_povm, Povm, PureState, PHI1_THETA, PSI1_THETA, PSI2_THETA,
    QUBIT_PHI_ANGLE, QUBIT_PSI_ANGLE,
};
use povm_coherence::xharness::{
    emit_csv, evaluate_bounds, format_g, run_experiment, Experiment, ExperimentConfig, Scheme,
    ViolationReport, DEFAULT_TRIALS,
};
use povm_coherence::Error;

/// POVM-based coherence measures and superposition bounds.
#[derive(Parser)]
#[command(name = "povmcoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and check dilation-circuit POVMs.
    Povm {
        #[command(subcommand)]
        action: PovmAction,
    },
    /// Coherence of one pure state.
    Measure {
        /// Preset (zero, plus, phi, psi, phi1, psi1, psi2) or comma-separated
        /// complex amplitudes such as `1,0+1i`; amplitudes are normalized.
        #[arg(long)]
        state: String,
        /// qubit, two-qubit, projective:N or a POVM JSON file.
        #[arg(long)]
        povm: String,
        /// r, l1, rob or tsallis.
        #[arg(long)]
        measure: String,
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Exact value and bounds for one coefficient pair.
    Bounds {
        #[arg(long)]
        experiment: Experiment,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Complex64,
        #[arg(long, allow_hyphen_values = true)]
        beta: Complex64,
        #[arg(long)]
        lambda: Option<f64>,
        /// Print the full evaluation as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Seeded trial sweep written as CSV.
    Experiment {
        #[arg(long)]
        experiment: Experiment,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = Scheme::Uniform01)]
        scheme: Scheme,
        #[arg(long)]
        out: PathBuf,
        /// Also write a JSON violation report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PovmAction {
    /// Print PSD margins and the completeness residual.
    Validate {
        /// Two angles (one-qubit circuit) or four (two-qubit circuit).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<f64>,
    },
    /// Write the POVM built from `params` as JSON.
    Export {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Validation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotHermitian { .. }
            | Error::NotPsd { .. }
            | Error::NotUnitary { .. }
            | Error::NotNormalized { .. }
            | Error::InvalidPovm(_)
            | Error::InvalidDensity(_) => Failure::Validation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("validation failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Povm { action } => match action {
            PovmAction::Validate { params } => {
                let report = validate_povm(&povm_from_params(&params)?);
                println!("effects: {}", report.psd_margins.len());
                println!("min_psd_margin: {:.3e}", report.min_psd_margin());
                println!(
                    "max_hermitian_defect: {:.3e}",
                    report.hermitian_defects.iter().copied().fold(0.0, f64::max)
                );
                println!(
                    "completeness_residual: {:.3e} at ({}, {})",
                    report.completeness_residual, report.worst_entry.0, report.worst_entry.1
                );
                if report.passed {
                    println!("status: pass");
                    Ok(())
                } else {
                    Err(Failure::Validation(report.summary()))
                }
            }
            PovmAction::Export { params, out } => {
                povm_from_params(&params)?.write_json(&out)?;
                Ok(())
            }
        },
        Command::Measure {
            state,
            povm,
            measure,
            lambda,
        } => {
            let phi = parse_state(&state)?;
            let e = parse_povm(&povm)?;
            let m = parse_measure(&measure, lambda)?;
            println!("{}", format_g(m.of_pure(&phi, &e)?));
            Ok(())
        }
        Command::Bounds {
            experiment,
            alpha,
            beta,
            lambda,
            json,
        } => {
            let lambda = lambda_for(experiment, lambda)?;
            let ev = evaluate_bounds(experiment, alpha, beta, lambda)?;
            if json {
                let text = serde_json::to_string_pretty(&ev).map_err(Error::from)?;
                println!("{text}");
            } else {
                println!("norm_sq: {}", format_g(ev.norm_sq));
                println!("exact: {}", format_g(ev.exact));
                println!("upper: {}", show(&ev.upper));
                println!("lower: {}", show(&ev.lower));
            }
            Ok(())
        }
        Command::Experiment {
            experiment,
            trials,
            seed,
            lambda,
            scheme,
            out,
            report,
        } => {
            let mut cfg = ExperimentConfig::new(experiment, seed)
                .trials(trials)
                .scheme(scheme)
                .output(&out);
            cfg.lambda = lambda;
            let records = run_experiment(&cfg)?;
            emit_csv(&records, &out)?;
            let summary = ViolationReport::from_records(&cfg, &records);
            if let Some(path) = report {
                summary.write_json(path)?;
            }
            eprintln!(
                "{experiment}: {} trials, upper applicable {}, lower applicable {}, violations {}",
                summary.trials,
                summary.upper_applicable,
                summary.lower_applicable,
                summary.violation_count
            );
            Ok(())
        }
    }
}

fn show(b: &BoundResult) -> String {
    match (b.get(), b.reason()) {
        (Some(v), _) => format_g(v),
        (None, Some(r)) => format!("not applicable ({})", r.code()),
        (None, None) => unreachable!("a bound is either a value or a reason"),
    }
}

fn lambda_for(experiment: Experiment, lambda: Option<f64>) -> Result<Option<f64>, Failure> {
    match (experiment, lambda) {
        (Experiment::TsallisTwoQubit, None) => {
            Err(Failure::Usage("tsallis-2q needs --lambda".into()))
        }
        (Experiment::TsallisTwoQubit, l) => Ok(l),
        (e, Some(_)) => Err(Failure::Usage(format!("--lambda does not apply to {e}"))),
        (_, None) => Ok(None),
    }
}

fn povm_from_params(params: &[f64]) -> Result<Povm, Failure> {
    match *params {
        [a, b] => Ok(povm_from_dilation(&dilation_unitary_1q([a, b]), 1, 1)?),
        [a, b, c, d] => Ok(povm_from_dilation(
            &dilation_unitary_2q([a, b, c, d]),
            2,
            2,
        )?),
        _ => Err(Failure::Usage(format!(
            "--params takes 2 or 4 angles, got {}",
            params.len()
        ))),
    }
}

fn parse_state(s: &str) -> Result<PureState, Failure> {
    let preset = match s {
        "zero" => Some(PureState::basis(2, 0)),
        "plus" => Some(PureState::plus()),
        "phi" => Some(ry_state(QUBIT_PHI_ANGLE)),
        "psi" => Some(ry_state(QUBIT_PSI_ANGLE)),
        "phi1" => Some(dilation_state(PHI1_THETA)),
        "psi1" => Some(dilation_state(PSI1_THETA)),
        "psi2" => Some(dilation_state(PSI2_THETA)),
        _ => None,
    };
    if let Some(p) = preset {
        return Ok(p);
    }
    let amplitudes = s
        .split(',')
        .map(|t| t.trim().parse::<Complex64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse state '{s}'")))?;
    Ok(PureState::normalized(amplitudes)?)
}

fn parse_povm(s: &str) -> Result<Povm, Failure> {
    match s {
        "qubit" => Ok(qubit_povm()),
        "two-qubit" => Ok(two_qubit_povm()),
        _ => {
            if let Some(n) = s.strip_prefix("projective:") {
                let n: usize = n
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad projective dimension '{n}'")))?;
                if n == 0 {
                    return Err(Failure::Usage(
                        "projective dimension must be positive".into(),
                    ));
                }
                Ok(Povm::computational(n))
            } else {
                let p = Povm::read_json(s)?;
                let report = validate_povm(&p);
                if !report.passed {
                    return Err(Failure::Validation(format!("{s}: {}", report.summary())));
                }
                Ok(p)
            }
        }
    }
}

fn parse_measure(s: &str, lambda: Option<f64>) -> Result<Measure, Failure> {
    let m = match (s, lambda) {
        ("r", None) => Measure::RelativeEntropy,
        ("l1", None) => Measure::L1,
        ("rob", None) => Measure::Robustness,
        ("tsallis", Some(l)) => {
            povm_coherence::measures::check_lambda(l)?;
            Measure::Tsallis(l)
        }
        ("tsallis", None) => return Err(Failure::Usage("tsallis needs --lambda".into())),
        ("r" | "l1" | "rob", Some(_)) => {
            return Err(Failure::Usage(format!("--lambda does not apply to '{s}'")))
        }
        _ => return Err(Failure::Usage(format!("unknown measure '{s}'"))),
    };
    Ok(m)
}
