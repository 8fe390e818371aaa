use num_complex::Complex64;

use super::{hermitian_eig, ComplexMatrix};
use crate::error::{Error, Result};

/// Eigenvalues in `[-DEFAULT_CLAMP_EPS, 0)` are treated as zero by the PSD
/// matrix functions; anything more negative is rejected.
pub const DEFAULT_CLAMP_EPS: f64 = 1e-12;

/// Applies `f` to the spectrum of a PSD matrix with the default clamp window.
pub fn psd_func(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    psd_func_with(m, f, DEFAULT_CLAMP_EPS)
}

/// Returns `V f(Λ) V†`, clamping eigenvalues in `[-clamp_eps, 0)` to zero.
pub fn psd_func_with(
    m: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    clamp_eps: f64,
) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let spectrum = clamped_spectrum(&eig.eigenvalues, clamp_eps)?;
    let values: Vec<f64> = spectrum.iter().map(|&l| f(l)).collect();
    let v = &eig.eigenvectors;
    let n = v.rows();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        values
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(k, &w)| v[(i, k)] * v[(j, k)].conj() * w)
            .sum()
    }))
}

/// Eigenvalues of a PSD matrix after the same clamping as [`psd_func`].
pub(crate) fn psd_spectrum(m: &ComplexMatrix) -> Result<Vec<f64>> {
    clamped_spectrum(&hermitian_eig(m)?.eigenvalues, DEFAULT_CLAMP_EPS)
}

/// Clamps small negative eigenvalues and zeroes those at rounding level
/// relative to the spectral radius. Fractional powers below one would
/// otherwise inflate rounding noise on a null space (`(1e-16)^0.3 ≈ 2e-5`).
fn clamped_spectrum(eigenvalues: &[f64], clamp_eps: f64) -> Result<Vec<f64>> {
    let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -clamp_eps {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let radius = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let noise = 16.0 * eigenvalues.len() as f64 * f64::EPSILON * radius;
    Ok(eigenvalues
        .iter()
        .map(|&l| if l <= noise { 0.0 } else { l })
        .collect())
}

/// Sum of singular values.
///
/// Singular values come from one-sided Jacobi orthogonalization of the
/// columns, which keeps small singular values accurate to rounding level.
/// Square roots of the eigenvalues of `m†m` would turn rounding noise on zero
/// eigenvalues into errors of order `√ε`.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

/// Singular values in no particular order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    const MAX_SWEEPS: usize = 100;
    // Orthogonalize along the shorter side.
    let a = if m.rows() < m.cols() {
        m.adjoint()
    } else {
        m.clone()
    };
    let n = a.cols();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.col(j)).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let down = -phase.conj() * s;
                let up = phase * s;
                let (lo, hi) = cols.split_at_mut(q);
                for (a, b) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = x * c + y * down;
                    *b = x * up + y * c;
                }
            }
        }
        if !rotated {
            return Ok(cols
                .iter()
                .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
                .collect());
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// `−Σ p log₂ p` over strictly positive entries.
pub fn shannon_entropy(weights: &[f64]) -> f64 {
    -weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// `S(X) = −Tr X log₂ X` for PSD `X`, trace not required to be one.
pub fn von_neumann_entropy(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(m)?;
    let spectrum = clamped_spectrum(&eig.eigenvalues, DEFAULT_CLAMP_EPS)?;
    Ok(shannon_entropy(&spectrum))
}

/// Base-2 binary entropy `h₂(x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange {
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(shannon_entropy(&[x, 1.0 - x]))
}

/// Tsallis logarithm `(x^{1−λ} − 1)/(1 − λ)`.
pub fn ln_lambda(x: f64, lambda: f64) -> Result<f64> {
    if (lambda - 1.0).abs() < 1e-6 {
        return Err(Error::LambdaNearOne(lambda));
    }
    if x.is_nan() || x <= 0.0 {
        return Err(Error::NonpositiveArgument(x));
    }
    Ok((x.powf(1.0 - lambda) - 1.0) / (1.0 - lambda))
}
