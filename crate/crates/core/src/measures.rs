//! POVM-based coherence quantifiers.
//!
//! Every measure has a general path working on a density matrix through
//! `√E_j ρ √E_j` and a pure-state fast path that only needs the outcome
//! weights `p_j = ⟨φ|E_j|φ⟩`: for `ρ = |φ⟩⟨φ|` each `√E_j ρ √E_j` is rank-1
//! with sole eigenvalue `p_j`, and `‖√E_i|φ⟩⟨φ|√E_j‖_tr = √(p_i p_j)`.
//! The two paths are kept independent so each can check the other.
//!
//! Entropies use base-2 logarithms.

use num_complex::Complex64;
use serde::Serialize;

use crate::cmatrix::{
    psd_func, psd_spectrum, shannon_entropy, trace_norm, von_neumann_entropy, ComplexMatrix,
};
use crate::error::{Error, Result};
use crate::qstate::{DensityMatrix, Povm, PureState};

/// Guard distance from the excluded value `λ = 1`.
pub const LAMBDA_GUARD: f64 = 1e-6;

/// Checks `λ ∈ (0,1) ∪ (1,2]`.
pub fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda <= 2.0) || (lambda - 1.0).abs() < LAMBDA_GUARD {
        return Err(Error::LambdaOutOfRange(lambda, "(0,1)∪(1,2]"));
    }
    Ok(())
}

/// Which real number to keep from a complex trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ComplexPart {
    #[default]
    Real,
    Modulus,
}

impl ComplexPart {
    /// Selected value and the imaginary magnitude it discards.
    pub fn take(self, z: Complex64) -> (f64, f64) {
        match self {
            ComplexPart::Real => (z.re, z.im.abs()),
            ComplexPart::Modulus => (z.norm(), z.im.abs()),
        }
    }
}

/// Outcome distribution `p_j = ⟨φ|E_j|φ⟩` (or `Tr E_j ρ`).
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeWeights {
    pub p: Vec<f64>,
}

impl OutcomeWeights {
    pub fn of_pure(phi: &PureState, e: &Povm) -> Result<Self> {
        check_dim(phi.dim(), e)?;
        let p = e
            .effects()
            .iter()
            .map(|ej| ej.sandwich(phi.amplitudes(), phi.amplitudes()).re)
            .collect();
        Ok(Self { p })
    }

    pub fn of_density(rho: &DensityMatrix, e: &Povm) -> Result<Self> {
        check_dim(rho.dim(), e)?;
        let p = e
            .effects()
            .iter()
            .map(|ej| ej.matmul(rho.matrix()).trace().re)
            .collect();
        Ok(Self { p })
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// Weights with rounding-level negatives set to zero.
    fn clamped(&self) -> impl Iterator<Item = f64> + '_ {
        self.p.iter().map(|&x| x.max(0.0))
    }
}

fn check_dim(dim: usize, e: &Povm) -> Result<()> {
    if dim != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: dim,
        });
    }
    Ok(())
}

fn effect_roots(e: &Povm) -> Result<Vec<ComplexMatrix>> {
    e.effects()
        .iter()
        .map(|ej| psd_func(ej, f64::sqrt))
        .collect()
}

/// `C_r(ρ,E) = Σ_j S(√E_j ρ √E_j) − S(ρ)`.
pub fn c_r(rho: &DensityMatrix, e: &Povm) -> Result<f64> {
    check_dim(rho.dim(), e)?;
    let mut total = 0.0;
    for root in effect_roots(e)? {
        let block = root.matmul(rho.matrix()).matmul(&root);
        total += von_neumann_entropy(&block)?;
    }
    Ok(total - von_neumann_entropy(rho.matrix())?)
}

/// `C_r(φ,E) = −Σ_j p_j log₂ p_j`.
pub fn c_r_pure(phi: &PureState, e: &Povm) -> Result<f64> {
    let w = OutcomeWeights::of_pure(phi, e)?;
    Ok(shannon_entropy(&w.clamped().collect::<Vec<_>>()))
}

/// `C_l1(ρ,E) = Σ_{i≠j} ‖√E_i ρ √E_j‖_tr` over ordered pairs.
pub fn c_l1(rho: &DensityMatrix, e: &Povm) -> Result<f64> {
    check_dim(rho.dim(), e)?;
    let roots = effect_roots(e)?;
    let left: Vec<ComplexMatrix> = roots.iter().map(|r| r.matmul(rho.matrix())).collect();
    let mut total = 0.0;
    for (i, l) in left.iter().enumerate() {
        for (j, r) in roots.iter().enumerate() {
            if i != j {
                total += trace_norm(&l.matmul(r))?;
            }
        }
    }
    Ok(total)
}

/// `C_l1(φ,E) = (Σ_i √p_i)² − Σ_i p_i`.
pub fn c_l1_pure(phi: &PureState, e: &Povm) -> Result<f64> {
    let w = OutcomeWeights::of_pure(phi, e)?;
    let root_sum: f64 = w.clamped().map(f64::sqrt).sum();
    Ok(root_sum * root_sum - w.clamped().sum::<f64>())
}

/// Robustness of coherence of a pure state, which coincides with `C_l1`.
pub fn c_rob_pure(phi: &PureState, e: &Povm) -> Result<f64> {
    c_l1_pure(phi, e)
}

/// `C_{T,λ}(ρ,E) = (Σ_j Tr[(√E_j ρ^λ √E_j)^{1/λ}] − 1)/(λ − 1)`.
pub fn c_tsallis(rho: &DensityMatrix, e: &Povm, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_dim(rho.dim(), e)?;
    let rho_pow = psd_func(rho.matrix(), |x| x.powf(lambda))?;
    let mut sum = 0.0;
    for root in effect_roots(e)? {
        let block = root.matmul(&rho_pow).matmul(&root);
        sum += psd_spectrum(&block)?
            .iter()
            .map(|&l| l.powf(1.0 / lambda))
            .sum::<f64>();
    }
    Ok((sum - 1.0) / (lambda - 1.0))
}

/// `C_{T,λ}(φ,E) = (Σ_j p_j^{1/λ} − 1)/(λ − 1)`.
pub fn c_tsallis_pure(phi: &PureState, e: &Povm, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let w = OutcomeWeights::of_pure(phi, e)?;
    let sum: f64 = w.clamped().map(|p| p.powf(1.0 / lambda)).sum();
    Ok((sum - 1.0) / (lambda - 1.0))
}

fn check_pair(phi: &PureState, psi: &PureState, e: &Povm) -> Result<()> {
    check_dim(phi.dim(), e)?;
    check_dim(psi.dim(), e)
}

/// `Σ_{i≠j} ‖√E_i|φ⟩⟨ψ|√E_j‖_tr = Σ_{i≠j} ‖√E_i φ‖·‖√E_j ψ‖`.
pub fn cross_l1(phi: &PureState, psi: &PureState, e: &Povm) -> Result<f64> {
    check_pair(phi, psi, e)?;
    let a: Vec<f64> = OutcomeWeights::of_pure(phi, e)?
        .clamped()
        .map(f64::sqrt)
        .collect();
    let b: Vec<f64> = OutcomeWeights::of_pure(psi, e)?
        .clamped()
        .map(f64::sqrt)
        .collect();
    let diag: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    Ok(a.iter().sum::<f64>() * b.iter().sum::<f64>() - diag)
}

/// [`cross_l1`] evaluated with explicit trace norms.
pub fn cross_l1_general(phi: &PureState, psi: &PureState, e: &Povm) -> Result<f64> {
    check_pair(phi, psi, e)?;
    let roots = effect_roots(e)?;
    let op = ComplexMatrix::outer(phi.amplitudes(), psi.amplitudes());
    let mut total = 0.0;
    for (i, ri) in roots.iter().enumerate() {
        let left = ri.matmul(&op);
        for (j, rj) in roots.iter().enumerate() {
            if i != j {
                total += trace_norm(&left.matmul(rj))?;
            }
        }
    }
    Ok(total)
}

/// Complex trace sum behind the two-state Tsallis quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexTraceReport {
    pub trace_re: f64,
    pub trace_im: f64,
    /// `(Re Σ − 1)/(λ − 1)`.
    pub value: f64,
    pub imag_magnitude: f64,
}

/// Two-state Tsallis quantity under the rank-1 power convention
/// `(c|a⟩⟨b|)^μ := (c⟨b|a⟩)^{μ−1} c|a⟩⟨b|` with principal-branch powers, so
/// that `Tr[(√E_j(|φ⟩⟨ψ|)^λ√E_j)^{1/λ}] = (⟨ψ|φ⟩^{λ−1}⟨ψ|E_j|φ⟩)^{1/λ}`.
///
/// Diagnostic only; no bound consumes it.
pub fn cross_tsallis_diag(
    phi: &PureState,
    psi: &PureState,
    e: &Povm,
    lambda: f64,
) -> Result<ComplexTraceReport> {
    check_lambda(lambda)?;
    check_pair(phi, psi, e)?;
    let overlap = psi.overlap(phi);
    if overlap.norm() <= 1e-12 && lambda < 1.0 {
        return Err(Error::ZeroOverlap);
    }
    let prefactor = cpow(overlap, lambda - 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for ej in e.effects() {
        let t = prefactor * ej.sandwich(psi.amplitudes(), phi.amplitudes());
        sum += cpow(t, 1.0 / lambda);
    }
    let value = (sum.re - 1.0) / (lambda - 1.0);
    Ok(ComplexTraceReport {
        trace_re: sum.re,
        trace_im: sum.im,
        value,
        imag_magnitude: sum.im.abs(),
    })
}

/// Principal-branch `z^p` with `0^p = 0` for `p > 0`.
fn cpow(z: Complex64, p: f64) -> Complex64 {
    if z.norm() == 0.0 {
        if p > 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
    }
    z.powf(p)
}

/// Selects one of the four measures by name.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    RelativeEntropy,
    L1,
    Robustness,
    Tsallis(f64),
}

impl Measure {
    /// Pure-state value.
    pub fn of_pure(self, phi: &PureState, e: &Povm) -> Result<f64> {
        match self {
            Measure::RelativeEntropy => c_r_pure(phi, e),
            Measure::L1 => c_l1_pure(phi, e),
            Measure::Robustness => c_rob_pure(phi, e),
            Measure::Tsallis(l) => c_tsallis_pure(phi, e, l),
        }
    }

    /// Mixed-state value; robustness is only defined here for pure input.
    pub fn of_density(self, rho: &DensityMatrix, e: &Povm) -> Result<f64> {
        match self {
            Measure::RelativeEntropy => c_r(rho, e),
            Measure::L1 => c_l1(rho, e),
            Measure::Robustness => Err(Error::Config(
                "robustness is only available for pure states".into(),
            )),
            Measure::Tsallis(l) => c_tsallis(rho, e, l),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{qubit_povm, ry_state, two_qubit_povm};
    use crate::random::{random_density, random_pure_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn plus() -> PureState {
        PureState::plus()
    }

    #[test]
    fn relative_entropy_closed_forms() {
        let proj = Povm::computational(2);
        assert!((c_r(&plus().to_density(), &proj).unwrap() - 1.0).abs() < 1e-12);
        assert!((c_r_pure(&plus(), &proj).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(c_r_pure(&PureState::basis(2, 0), &proj).unwrap(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random_density(&mut rng, 2);
        assert!(c_r(&rho, &Povm::trivial(2)).unwrap().abs() < 1e-9);
    }

    #[test]
    fn relative_entropy_paths_agree_on_qubit_povm() {
        let e = qubit_povm();
        let phi = ry_state(0.432);
        let w = OutcomeWeights::of_pure(&phi, &e).unwrap();
        let oracle =
            -w.p.iter()
                .filter(|&&p| p > 0.0)
                .map(|p| p * p.log2())
                .sum::<f64>();
        assert!((c_r(&phi.to_density(), &e).unwrap() - oracle).abs() <= 1e-9);
        assert!((c_r_pure(&phi, &e).unwrap() - oracle).abs() <= 1e-12);
    }

    #[test]
    fn l1_closed_forms() {
        let proj = Povm::computational(2);
        assert!((c_l1(&plus().to_density(), &proj).unwrap() - 1.0).abs() < 1e-12);
        assert!((c_l1_pure(&plus(), &proj).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(c_l1_pure(&PureState::basis(2, 1), &proj).unwrap(), 0.0);
        assert_eq!(
            c_l1(&DensityMatrix::maximally_mixed(2), &Povm::trivial(2)).unwrap(),
            0.0
        );
        let phi = ry_state(0.432);
        let e = qubit_povm();
        let w = OutcomeWeights::of_pure(&phi, &e).unwrap();
        let s: f64 = w.p.iter().map(|p| p.sqrt()).sum();
        assert!((c_l1(&phi.to_density(), &e).unwrap() - (s * s - 1.0)).abs() <= 1e-9);
    }

    #[test]
    fn robustness_delegates() {
        let e = qubit_povm();
        let phi = ry_state(0.432);
        assert_eq!(c_rob_pure(&phi, &e).unwrap(), c_l1_pure(&phi, &e).unwrap());
        assert!((c_rob_pure(&plus(), &Povm::computational(2)).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(
            c_rob_pure(&PureState::basis(2, 0), &Povm::computational(2)).unwrap(),
            0.0
        );
        assert!(Measure::Robustness
            .of_density(&phi.to_density(), &e)
            .is_err());
    }

    #[test]
    fn tsallis_closed_forms() {
        let proj = Povm::computational(2);
        let v = c_tsallis_pure(&plus(), &proj, 2.0).unwrap();
        assert!((v - (2f64.sqrt() - 1.0)).abs() < 1e-10);
        assert!((c_tsallis(&plus().to_density(), &proj, 2.0).unwrap() - v).abs() < 1e-10);
        assert_eq!(
            c_tsallis_pure(&PureState::basis(2, 0), &proj, 1.5).unwrap(),
            0.0
        );
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!(c_tsallis(&mixed, &proj, 2.0).unwrap().abs() < 1e-12);
        let diag = DensityMatrix::new(ComplexMatrix::diag(&[0.2, 0.8])).unwrap();
        for l in [0.3, 0.7, 1.5, 2.0] {
            assert!(c_tsallis(&diag, &proj, l).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn lambda_domain() {
        let proj = Povm::computational(2);
        for bad in [1.0, 1.0 + 1e-7, 0.0, -0.5, 2.5] {
            assert!(matches!(
                c_tsallis_pure(&plus(), &proj, bad),
                Err(Error::LambdaOutOfRange(..))
            ));
        }
        assert!(c_tsallis_pure(&plus(), &proj, 2.0).is_ok());
        assert!(c_tsallis_pure(&plus(), &proj, 1.0 + 2e-6).is_ok());
    }

    #[test]
    fn fast_paths_match_general_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let povms = [qubit_povm(), two_qubit_povm()];
        for e in &povms {
            for _ in 0..5 {
                let phi = random_pure_state(&mut rng, e.dim());
                let rho = phi.to_density();
                assert!((c_r_pure(&phi, e).unwrap() - c_r(&rho, e).unwrap()).abs() <= 1e-9);
                assert!((c_l1_pure(&phi, e).unwrap() - c_l1(&rho, e).unwrap()).abs() <= 1e-9);
                for l in [0.3, 1.5] {
                    let a = c_tsallis_pure(&phi, e, l).unwrap();
                    let b = c_tsallis(&rho, e, l).unwrap();
                    assert!((a - b).abs() <= 1e-9, "λ={l}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn cross_l1_cases() {
        let e = qubit_povm();
        let phi = ry_state(0.432);
        let psi = ry_state(0.618);
        assert!((cross_l1(&phi, &phi, &e).unwrap() - c_l1_pure(&phi, &e).unwrap()).abs() < 1e-12);
        assert_eq!(cross_l1(&phi, &psi, &Povm::trivial(2)).unwrap(), 0.0);
        let zero = PureState::basis(2, 0);
        let one = PureState::basis(2, 1);
        assert!((cross_l1(&zero, &one, &Povm::computational(2)).unwrap() - 1.0).abs() < 1e-15);
        let general = cross_l1_general(&phi, &psi, &e).unwrap();
        assert!((cross_l1(&phi, &psi, &e).unwrap() - general).abs() <= 1e-9);
    }

    #[test]
    fn cross_tsallis_cases() {
        let e = two_qubit_povm();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi = random_pure_state(&mut rng, 4);
        let r = cross_tsallis_diag(&phi, &phi, &e, 1.5).unwrap();
        assert!(r.imag_magnitude < 1e-12);
        assert!((r.value - c_tsallis_pure(&phi, &e, 1.5).unwrap()).abs() < 1e-12);

        let zero = PureState::basis(2, 0);
        let one = PureState::basis(2, 1);
        let proj = Povm::computational(2);
        let r = cross_tsallis_diag(&zero, &one, &proj, 2.0).unwrap();
        assert_eq!((r.trace_re, r.trace_im), (0.0, 0.0));
        assert_eq!(r.value, -1.0);
        assert!(matches!(
            cross_tsallis_diag(&zero, &one, &proj, 0.5),
            Err(Error::ZeroOverlap)
        ));

        // λ = 2: Σ_j (⟨ψ|φ⟩⟨ψ|E_j|φ⟩)^{1/2}
        let psi = random_pure_state(&mut rng, 4);
        let ov = psi.overlap(&phi);
        let direct: Complex64 = e
            .effects()
            .iter()
            .map(|ej| (ov * ej.sandwich(psi.amplitudes(), phi.amplitudes())).sqrt())
            .sum();
        let r = cross_tsallis_diag(&phi, &psi, &e, 2.0).unwrap();
        assert!((r.trace_re - direct.re).abs() < 1e-12 && (r.trace_im - direct.im).abs() < 1e-12);
        assert!((r.imag_magnitude - direct.im.abs()).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let e = two_qubit_povm();
        assert!(matches!(
            c_r_pure(&plus(), &e),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(c_l1(&plus().to_density(), &e).is_err());
    }

    #[test]
    fn weights_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let e = two_qubit_povm();
        for _ in 0..20 {
            let rho = random_density(&mut rng, 4);
            let w = OutcomeWeights::of_density(&rho, &e).unwrap();
            assert!((w.total() - 1.0).abs() <= 1e-10);
            assert!(w.p.iter().all(|&p| p >= -1e-12));
        }
    }
}
