use num_complex::Complex64;

use crate::cmatrix::{hermitian_eig, inner, norm, ComplexMatrix, DEFAULT_CLAMP_EPS};
use crate::error::{Error, Result};

/// Tolerance on state normalization and unit trace.
pub const NORM_TOL: f64 = 1e-10;

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that are already normalized within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if amplitudes.is_empty() || (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if amplitudes.is_empty() || n.is_nan() || n <= NORM_TOL || !n.is_finite() {
            return Err(Error::NotNormalized { norm: n });
        }
        amplitudes.iter_mut().for_each(|z| *z /= n);
        Ok(Self { amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// `(|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: vec![Complex64::new(h, 0.0); 2],
        }
    }

    /// Applies a unitary and keeps the result normalized.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.cols(),
                found: self.dim(),
            });
        }
        Self::normalized(u.apply(&self.amplitudes))
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: self.projector(),
        }
    }

    pub fn scaled(&self, phase: Complex64) -> Vec<Complex64> {
        self.amplitudes.iter().map(|&z| z * phase).collect()
    }
}

/// Hermitian, PSD, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let asymmetry = matrix.hermitian_asymmetry();
        if asymmetry > NORM_TOL {
            return Err(Error::NotHermitian { asymmetry });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDensity(format!(
                "trace {trace} differs from 1"
            )));
        }
        let min = hermitian_eig(&matrix)?
            .eigenvalues
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -DEFAULT_CLAMP_EPS {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix })
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(state: &PureState) -> Self {
        state.to_density()
    }
}

/// `|Ω⟩ = Σ_k α_k |φ_k⟩` together with its norm and normalized form `Ω′`.
#[derive(Debug, Clone)]
pub struct SuperpositionSpec {
    coefficients: Vec<Complex64>,
    states: Vec<PureState>,
    norm: f64,
    normalized: PureState,
}

impl SuperpositionSpec {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    /// `‖Ω‖ = √⟨Ω|Ω⟩`.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm * self.norm
    }

    /// `Ω′ = Ω/‖Ω‖`.
    pub fn normalized(&self) -> &PureState {
        &self.normalized
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `Σ_k |α_k|² + Σ_{k≠k′} |α_k α_k′|`, i.e. `(Σ_k |α_k|)²`.
    pub fn magnitude_mass(&self) -> f64 {
        let s: f64 = self.coefficients.iter().map(|a| a.norm()).sum();
        s * s
    }

    /// Copy without the terms whose coefficient is exactly zero.
    pub fn without_null_terms(&self) -> SuperpositionSpec {
        let (coefficients, states): (Vec<_>, Vec<_>) = self
            .coefficients
            .iter()
            .zip(&self.states)
            .filter(|(a, _)| a.norm() > 0.0)
            .map(|(a, s)| (*a, s.clone()))
            .unzip();
        SuperpositionSpec {
            coefficients,
            states,
            norm: self.norm,
            normalized: self.normalized.clone(),
        }
    }
}

/// Builds `Ω = Σ_k α_k φ_k` and its normalization.
pub fn superpose(coeffs: &[Complex64], states: &[PureState]) -> Result<SuperpositionSpec> {
    if coeffs.len() != states.len() {
        return Err(Error::DimensionMismatch {
            expected: states.len(),
            found: coeffs.len(),
        });
    }
    let Some(first) = states.first() else {
        return Err(Error::NullSuperposition { norm: 0.0 });
    };
    let dim = first.dim();
    if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let mut omega = vec![Complex64::new(0.0, 0.0); dim];
    for (a, s) in coeffs.iter().zip(states) {
        for (o, &z) in omega.iter_mut().zip(s.amplitudes()) {
            *o += a * z;
        }
    }
    let n = norm(&omega);
    if n.is_nan() || n <= NORM_TOL {
        return Err(Error::NullSuperposition { norm: n });
    }
    omega.iter_mut().for_each(|z| *z /= n);
    Ok(SuperpositionSpec {
        coefficients: coeffs.to_vec(),
        states: states.to_vec(),
        norm: n,
        normalized: PureState { amplitudes: omega },
    })
}
