use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::DensityMatrix;
use crate::cmatrix::{hermitian_eig, ComplexMatrix, DEFAULT_CLAMP_EPS};
use crate::error::{Error, Result};

/// Completeness tolerance `‖Σ_j E_j − I‖_max`.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Unitarity tolerance for dilation unitaries.
pub const UNITARY_TOL: f64 = 1e-10;

/// Ordered list of PSD effects summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    effects: Vec<ComplexMatrix>,
    dim: usize,
}

impl Povm {
    /// Validated construction; fails if [`validate_povm`] does not pass.
    pub fn new(effects: Vec<ComplexMatrix>) -> Result<Self> {
        let povm = Self::from_effects_unchecked(effects)?;
        let report = validate_povm(&povm);
        if report.passed {
            Ok(povm)
        } else {
            Err(Error::InvalidPovm(report.summary()))
        }
    }

    /// Shape-checked but otherwise unvalidated, for inspecting broken inputs.
    pub fn from_effects_unchecked(effects: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = effects.first() else {
            return Err(Error::InvalidPovm("no effects".into()));
        };
        let dim = first.require_square()?;
        for e in &effects {
            let d = e.require_square()?;
            if d != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: d,
                });
            }
        }
        Ok(Self { effects, dim })
    }

    /// Rank-1 projective measurement in the computational basis.
    pub fn computational(dim: usize) -> Self {
        let effects = (0..dim)
            .map(|i| {
                let mut diag = vec![0.0; dim];
                diag[i] = 1.0;
                ComplexMatrix::diag(&diag)
            })
            .collect();
        Self { effects, dim }
    }

    /// The single-outcome POVM `{I}`.
    pub fn trivial(dim: usize) -> Self {
        Self {
            effects: vec![ComplexMatrix::identity(dim)],
            dim,
        }
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    /// Hilbert-space dimension of the measured system.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of outcomes.
    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn reordered(&self, order: &[usize]) -> Self {
        Self {
            effects: order.iter().map(|&i| self.effects[i].clone()).collect(),
            dim: self.dim,
        }
    }

    /// `‖Σ_j E_j − I‖_max` and the entry where it is attained.
    pub fn completeness_residual(&self) -> (f64, (usize, usize)) {
        let mut total = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.effects {
            total = &total + e;
        }
        let diff = &total - &ComplexMatrix::identity(self.dim);
        let mut worst = (0.0, (0, 0));
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = diff[(i, j)].norm();
                if v > worst.0 {
                    worst = (v, (i, j));
                }
            }
        }
        worst
    }

    pub fn to_json(&self) -> PovmJson {
        PovmJson {
            dim: self.dim,
            effects: self
                .effects
                .iter()
                .map(|e| e.as_slice().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    /// Builds from the JSON layout; the result is not yet validated.
    pub fn from_json(json: &PovmJson) -> Result<Self> {
        let d = json.dim;
        let effects = json
            .effects
            .iter()
            .map(|entries| {
                if entries.len() != d * d {
                    return Err(Error::DimensionMismatch {
                        expected: d * d,
                        found: entries.len(),
                    });
                }
                Ok(ComplexMatrix::from_vec(
                    d,
                    d,
                    entries
                        .iter()
                        .map(|&[re, im]| Complex64::new(re, im))
                        .collect(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_effects_unchecked(effects)
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let json: PovmJson = serde_json::from_str(&text)?;
        Self::from_json(&json)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json())?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

/// On-disk POVM layout: `{"dim": d, "effects": [[[re, im], …], …]}` with each
/// effect flattened row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PovmJson {
    pub dim: usize,
    pub effects: Vec<Vec<[f64; 2]>>,
}

/// Outcome of [`validate_povm`].
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    /// Smallest eigenvalue of each effect.
    pub psd_margins: Vec<f64>,
    /// Hermiticity defect of each effect.
    pub hermitian_defects: Vec<f64>,
    pub completeness_residual: f64,
    /// Entry `(i, j)` of `Σ E − I` with the largest modulus.
    pub worst_entry: (usize, usize),
    pub passed: bool,
}

impl ValidationReport {
    pub fn min_psd_margin(&self) -> f64 {
        self.psd_margins
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} effects, min PSD margin {:.3e}, completeness residual {:.3e} at ({}, {}): {}",
            self.psd_margins.len(),
            self.min_psd_margin(),
            self.completeness_residual,
            self.worst_entry.0,
            self.worst_entry.1,
            if self.passed { "pass" } else { "FAIL" }
        )
    }
}

/// Checks positivity of every effect and completeness of the set.
pub fn validate_povm(p: &Povm) -> ValidationReport {
    let mut psd_margins = Vec::with_capacity(p.len());
    let mut hermitian_defects = Vec::with_capacity(p.len());
    let mut ok = true;
    for e in p.effects() {
        let defect = e.hermitian_asymmetry();
        hermitian_defects.push(defect);
        match hermitian_eig(e) {
            Ok(eig) => {
                let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
                ok &= min >= -DEFAULT_CLAMP_EPS;
                psd_margins.push(min);
            }
            Err(_) => {
                ok = false;
                psd_margins.push(f64::NEG_INFINITY);
            }
        }
    }
    let (completeness_residual, worst_entry) = p.completeness_residual();
    ok &= completeness_residual <= COMPLETENESS_TOL;
    ValidationReport {
        psd_margins,
        hermitian_defects,
        completeness_residual,
        worst_entry,
        passed: ok,
    }
}

fn check_dilation(u: &ComplexMatrix, sys_qubits: usize, anc_qubits: usize) -> Result<()> {
    let total = 1usize << (sys_qubits + anc_qubits);
    if u.rows() != total || u.cols() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: u.rows(),
        });
    }
    let residual = u.unitarity_residual();
    if residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// Effect vectors `|E_i⟩` with `(E_i)_k = conj(U[i, k·2^m])`, i.e. the
/// system-input block of row `i` with the ancilla prepared in `|0…0⟩`.
pub fn dilation_effect_vectors(
    u: &ComplexMatrix,
    sys_qubits: usize,
    anc_qubits: usize,
) -> Result<Vec<Vec<Complex64>>> {
    check_dilation(u, sys_qubits, anc_qubits)?;
    let sys_dim = 1usize << sys_qubits;
    let stride = 1usize << anc_qubits;
    Ok((0..u.rows())
        .map(|i| (0..sys_dim).map(|k| u[(i, k * stride)].conj()).collect())
        .collect())
}

/// POVM realized by applying `U` to `ρ ⊗ |0…0⟩⟨0…0|` and measuring every
/// qubit in the computational basis. Outcome `i` is the measured bit string
/// read as a binary number, system qubits first.
pub fn povm_from_dilation(u: &ComplexMatrix, sys_qubits: usize, anc_qubits: usize) -> Result<Povm> {
    let vectors = dilation_effect_vectors(u, sys_qubits, anc_qubits)?;
    let effects = vectors.iter().map(|v| ComplexMatrix::outer(v, v)).collect();
    Povm::from_effects_unchecked(effects)
}

/// Probability of reading basis string `outcome` after `U(ρ ⊗ |0…0⟩⟨0…0|)U†`,
/// computed on the full register. The ancilla size is whatever makes the
/// dimensions match.
pub fn naimark_outcome_prob(
    u: &ComplexMatrix,
    state: &DensityMatrix,
    outcome: usize,
) -> Result<f64> {
    let total = u.rows();
    let anc_dim = total / state.dim();
    if !u.is_square() || anc_dim * state.dim() != total || !anc_dim.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: u.rows(),
        });
    }
    if outcome >= total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: outcome,
        });
    }
    let residual = u.unitarity_residual();
    if residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let mut ancilla = ComplexMatrix::zeros(anc_dim, anc_dim);
    ancilla[(0, 0)] = Complex64::new(1.0, 0.0);
    let joint = state.matrix().kron(&ancilla);
    let evolved = u.matmul(&joint).matmul(&u.adjoint());
    Ok(evolved[(outcome, outcome)].re)
}
