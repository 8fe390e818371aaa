//! Tsallis relative-entropy bounds and the Jensen-type single-state bound.

use num_complex::Complex64;
use serde::Serialize;

use super::{weighted_terms, BoundResult, Diagnostics, NotApplicable, PairConstant};
use crate::cmatrix::{ln_lambda, psd_func};
use crate::error::{Error, Result};
use crate::measures::{c_tsallis_pure, check_lambda, ComplexPart};
use crate::qstate::{DensityMatrix, Povm, PureState, SuperpositionSpec};

/// Overlaps at or below this modulus are treated as orthogonal.
const OVERLAP_TOL: f64 = 1e-12;

/// `C_{T,λ}(ρ,E) ≤ −ln_λ((d·T)^{−1/λ})` with `T = Σ_j Tr(√E_j ρ² √E_j) = Tr ρ²`
/// and `d` the number of effects.
///
/// Dominance holds for pure states and for rank-1 effects. Mixed states under
/// higher-rank effects can exceed it: `ρ = I/2`, `E = {I/2, I/2}`, `λ = 2`
/// gives `C_T = √2 − 1` against a bound of 0.
pub fn lemma1_bound(rho: &DensityMatrix, e: &Povm, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if rho.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: rho.dim(),
        });
    }
    let rho2 = rho.matrix().matmul(rho.matrix());
    let t: f64 = e
        .effects()
        .iter()
        .map(|ej| ej.matmul(&rho2).trace().re)
        .sum();
    let d = e.len() as f64;
    Ok(-ln_lambda((d * t).powf(-1.0 / lambda), lambda)?)
}

/// Real pairwise constant plus the imaginary magnitude dropped to get it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairValue {
    pub value: f64,
    pub imag_discarded: f64,
}

fn check_pair(phi: &PureState, psi: &PureState, e: &Povm) -> Result<()> {
    for s in [phi, psi] {
        if s.dim() != e.dim() {
            return Err(Error::DimensionMismatch {
                expected: e.dim(),
                found: s.dim(),
            });
        }
    }
    Ok(())
}

/// `X = (d·|⟨ψ|φ⟩²|)^{−1/λ}`; `Σ_j Tr[√E_j(|φ⟩⟨ψ|)²√E_j]` reduces to `⟨ψ|φ⟩²`.
pub fn x_pair(phi: &PureState, psi: &PureState, e: &Povm, lambda: f64) -> Result<PairValue> {
    check_lambda(lambda)?;
    check_pair(phi, psi, e)?;
    let overlap = psi.overlap(phi);
    if overlap.norm() <= OVERLAP_TOL {
        return Err(Error::ZeroOverlap);
    }
    let sq = overlap * overlap;
    let (m, imag) = ComplexPart::Modulus.take(sq);
    Ok(PairValue {
        value: (e.len() as f64 * m).powf(-1.0 / lambda),
        imag_discarded: imag,
    })
}

/// `N = (Σ_j ⟨ψ|E_j^{1/λ}|φ⟩ − 1)/(λ − 1)` with the real part of the sum.
pub fn n_pair(phi: &PureState, psi: &PureState, e: &Povm, lambda: f64) -> Result<PairValue> {
    n_pair_with(phi, psi, e, lambda, ComplexPart::Real)
}

/// [`n_pair`] with an explicit choice of real part or modulus.
pub fn n_pair_with(
    phi: &PureState,
    psi: &PureState,
    e: &Povm,
    lambda: f64,
    part: ComplexPart,
) -> Result<PairValue> {
    check_upper_regime(lambda)?;
    check_pair(phi, psi, e)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for ej in e.effects() {
        let p = psd_func(ej, |x| x.powf(1.0 / lambda))?;
        sum += p.sandwich(psi.amplitudes(), phi.amplitudes());
    }
    let (v, imag) = part.take(sum);
    Ok(PairValue {
        value: (v - 1.0) / (lambda - 1.0),
        imag_discarded: imag,
    })
}

fn check_upper_regime(lambda: f64) -> Result<()> {
    check_lambda(lambda)?;
    if lambda <= 1.0 {
        return Err(Error::LambdaOutOfRange(lambda, "(1,2]"));
    }
    Ok(())
}

/// `Σ|α_k|² C_{T,λ}(φ_k)` and the `(Σ|α_k|)² − ‖Ω‖²` correction.
fn diagonal_and_excess(
    terms: &[(f64, &PureState)],
    spec: &SuperpositionSpec,
    e: &Povm,
    lambda: f64,
) -> Result<(f64, f64)> {
    let mut diag = 0.0;
    let mut mass = 0.0;
    for (a, s) in terms {
        diag += a * a * c_tsallis_pure(s, e, lambda)?;
        mass += a;
    }
    Ok((diag, mass * mass - spec.norm_sq()))
}

/// `‖Ω‖⁻²(Σ|α_k|² C_{T,λ}(φ_k) − Σ_{k≠k′}|α_kα_k′| ln_λ X_kk′)
/// + ((Σ|α_k|)² − ‖Ω‖²)/(‖Ω‖²(λ − 1))`.
pub fn thm3_upper(spec: &SuperpositionSpec, e: &Povm, lambda: f64) -> Result<BoundResult> {
    check_lambda(lambda)?;
    let terms = weighted_terms(spec);
    let norm_sq = spec.norm_sq();
    let (diagonal, excess) = diagonal_and_excess(&terms, spec, e, lambda)?;
    let mut diag = Diagnostics::default();
    let mut cross = 0.0;
    for (k, (ak, sk)) in terms.iter().enumerate() {
        for (kp, (akp, skp)) in terms.iter().enumerate() {
            if k == kp {
                continue;
            }
            let x = match x_pair(sk, skp, e, lambda) {
                Ok(x) => x,
                Err(Error::ZeroOverlap) => {
                    return Ok(BoundResult::not_applicable(
                        NotApplicable::ZeroOverlap,
                        diag,
                    ))
                }
                Err(err) => return Err(err),
            };
            diag.imag_discarded = diag.imag_discarded.max(x.imag_discarded);
            diag.pair_constants.push(PairConstant {
                k,
                k_prime: kp,
                value: x.value,
            });
            cross += ak * akp * ln_lambda(x.value, lambda)?;
        }
    }
    let v = (diagonal - cross) / norm_sq + excess / (norm_sq * (lambda - 1.0));
    Ok(BoundResult::value(v, diag))
}

/// `max{0, ‖Ω‖⁻²(Σ|α_k|² C_{T,λ}(φ_k) + Σ_{k≠k′}|α_kα_k′| N_kk′
/// + ((Σ|α_k|)² − ‖Ω‖²)/(λ − 1))}` for `λ ∈ (1,2]`.
pub fn thm3_lower(spec: &SuperpositionSpec, e: &Povm, lambda: f64) -> Result<BoundResult> {
    thm3_lower_with(spec, e, lambda, ComplexPart::Real)
}

/// [`thm3_lower`] with an explicit convention for the complex trace in `N`.
pub fn thm3_lower_with(
    spec: &SuperpositionSpec,
    e: &Povm,
    lambda: f64,
    part: ComplexPart,
) -> Result<BoundResult> {
    check_upper_regime(lambda)?;
    let terms = weighted_terms(spec);
    let norm_sq = spec.norm_sq();
    let (diagonal, excess) = diagonal_and_excess(&terms, spec, e, lambda)?;
    let mut diag = Diagnostics::default();
    let mut cross = 0.0;
    for (k, (ak, sk)) in terms.iter().enumerate() {
        for (kp, (akp, skp)) in terms.iter().enumerate() {
            if k == kp {
                continue;
            }
            let n = n_pair_with(sk, skp, e, lambda, part)?;
            diag.imag_discarded = diag.imag_discarded.max(n.imag_discarded);
            diag.pair_constants.push(PairConstant {
                k,
                k_prime: kp,
                value: n.value,
            });
            cross += ak * akp * n.value;
        }
    }
    let v = (diagonal + cross + excess / (lambda - 1.0)) / norm_sq;
    Ok(BoundResult::value(v.max(0.0), diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::ComplexMatrix;
    use crate::measures::c_tsallis;
    use crate::qstate::{
        dilation_state, qubit_povm, ry_state, superpose, two_qubit_povm, PHI1_THETA, PSI2_THETA,
    };
    use crate::random::{random_density, random_dilation_povm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn lemma1_pure_state_closed_form() {
        let e = two_qubit_povm();
        let phi = dilation_state(PHI1_THETA);
        // 16 effects here; the 4-outcome closed form is checked separately
        let d = e.len() as f64;
        let v = lemma1_bound(&phi.to_density(), &e, 1.5).unwrap();
        assert!((v - (d.powf(0.5 / 1.5) - 1.0) / 0.5).abs() < 1e-10);
        let e4 = Povm::computational(4);
        let v4 = lemma1_bound(&PureState::basis(4, 2).to_density(), &e4, 1.5).unwrap();
        assert!((v4 - (4f64.powf(1.0 / 3.0) - 1.0) / 0.5).abs() < 1e-12);
        assert!((v4 - 1.1748).abs() < 1e-4);
    }

    #[test]
    fn lemma1_tight_at_maximally_mixed() {
        let e = Povm::computational(3);
        let rho = DensityMatrix::maximally_mixed(3);
        for l in [0.3, 1.5, 2.0] {
            assert!(lemma1_bound(&rho, &e, l).unwrap().abs() < 1e-12);
            assert!(c_tsallis(&rho, &e, l).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn lemma1_rejects_lambda_one() {
        let e = Povm::computational(2);
        assert!(lemma1_bound(&DensityMatrix::maximally_mixed(2), &e, 1.0).is_err());
    }

    #[test]
    fn lemma1_fails_for_higher_rank_effects() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let e = Povm::new(vec![half.clone(), half]).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        let bound = lemma1_bound(&rho, &e, 2.0).unwrap();
        let exact = c_tsallis(&rho, &e, 2.0).unwrap();
        assert!(bound.abs() < 1e-12);
        assert!((exact - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn lemma1_dominates_under_rank_one_effects() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for t in 0..40 {
            let l = [0.3, 0.7, 1.5, 2.0][t % 4];
            let (sys, anc) = if t % 2 == 0 { (1, 1) } else { (2, 1) };
            let e = random_dilation_povm(&mut rng, sys, anc);
            let rho = random_density(&mut rng, 1 << sys);
            let gap = lemma1_bound(&rho, &e, l).unwrap() - c_tsallis(&rho, &e, l).unwrap();
            assert!(gap >= -1e-9, "λ={l}: gap {gap}");
        }
    }

    #[test]
    fn x_pair_closed_forms() {
        let e = qubit_povm();
        let phi = ry_state(0.432);
        let x = x_pair(&phi, &phi, &e, 0.3).unwrap();
        assert!((x.value - 4f64.powf(-1.0 / 0.3)).abs() < 1e-12);
        // |⟨ψ|φ⟩|² = 1/d with d = 2 ⇒ X = 1
        let e2 = Povm::computational(2);
        let x = x_pair(&PureState::basis(2, 0), &PureState::plus(), &e2, 1.5).unwrap();
        assert!((x.value - 1.0).abs() < 1e-12);
        assert!(ln_lambda(x.value, 1.5).unwrap().abs() < 1e-12);
    }

    #[test]
    fn x_pair_orthogonal_is_error() {
        let e = Povm::computational(2);
        let r = x_pair(&PureState::basis(2, 0), &PureState::basis(2, 1), &e, 0.3);
        assert!(matches!(r, Err(Error::ZeroOverlap)));
    }

    #[test]
    fn n_pair_projective_self_is_zero() {
        let e = Povm::computational(3);
        let phi = PureState::normalized(vec![re(1.0), re(2.0), Complex64::new(0.0, 1.0)]).unwrap();
        assert!(n_pair(&phi, &phi, &e, 2.0).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn n_pair_identity_povm() {
        let e = Povm::trivial(2);
        let phi = ry_state(0.4);
        let psi = PureState::normalized(vec![re(1.0), Complex64::new(0.0, 1.0)]).unwrap();
        let n = n_pair(&phi, &psi, &e, 1.5).unwrap();
        let ov = psi.overlap(&phi);
        assert!((n.value - (ov.re - 1.0) / 0.5).abs() < 1e-12);
        assert!((n.imag_discarded - ov.im.abs()).abs() < 1e-12);
    }

    #[test]
    fn n_pair_requires_lambda_above_one() {
        let e = Povm::computational(2);
        let s = PureState::basis(2, 0);
        assert!(matches!(
            n_pair(&s, &s, &e, 0.5),
            Err(Error::LambdaOutOfRange(..))
        ));
    }

    #[test]
    fn n_pair_paper_configuration_finite() {
        let e = two_qubit_povm();
        let n = n_pair(
            &dilation_state(PHI1_THETA),
            &dilation_state(PSI2_THETA),
            &e,
            1.5,
        )
        .unwrap();
        assert!(n.value.is_finite() && n.imag_discarded.is_finite());
    }

    #[test]
    fn single_term_collapses() {
        let e = two_qubit_povm();
        let phi = dilation_state(PHI1_THETA);
        let spec = superpose(&[re(0.7)], std::slice::from_ref(&phi)).unwrap();
        for l in [0.3, 1.5] {
            let exact = c_tsallis_pure(&phi, &e, l).unwrap();
            let up = thm3_upper(&spec, &e, l).unwrap().get().unwrap();
            assert!((up - exact).abs() <= 1e-12);
        }
        let lo = thm3_lower(&spec, &e, 1.5).unwrap().get().unwrap();
        assert!((lo - c_tsallis_pure(&phi, &e, 1.5).unwrap().max(0.0)).abs() <= 1e-12);
    }

    #[test]
    fn orthogonal_pair_upper_not_applicable() {
        let e = Povm::computational(2);
        let spec = superpose(
            &[re(0.6), re(0.8)],
            &[PureState::basis(2, 0), PureState::basis(2, 1)],
        )
        .unwrap();
        let r = thm3_upper(&spec, &e, 1.5).unwrap();
        assert_eq!(r.reason(), Some(NotApplicable::ZeroOverlap));
    }

    #[test]
    fn orthogonal_superposition_lower_holds() {
        let e = Povm::computational(2);
        let spec = superpose(
            &[re(0.6), re(0.8)],
            &[PureState::basis(2, 0), PureState::basis(2, 1)],
        )
        .unwrap();
        let exact = c_tsallis_pure(spec.normalized(), &e, 2.0).unwrap();
        let lo = thm3_lower(&spec, &e, 2.0).unwrap().get().unwrap();
        assert!(lo <= exact + 1e-9, "{lo} > {exact}");
    }

    #[test]
    fn lower_rejects_small_lambda() {
        let e = qubit_povm();
        let spec = superpose(&[re(0.6), re(0.8)], &[ry_state(0.432), ry_state(0.618)]).unwrap();
        assert!(thm3_lower(&spec, &e, 0.3).is_err());
    }

    #[test]
    fn paper_configuration_sandwich() {
        let e = two_qubit_povm();
        let states = [dilation_state(PHI1_THETA), dilation_state(PSI2_THETA)];
        for (a, b) in [(0.2, 0.9), (0.5, 0.5), (0.95, 0.1)] {
            let spec = superpose(&[re(a), re(b)], &states).unwrap();
            for l in [0.3, 1.5] {
                let exact = c_tsallis_pure(spec.normalized(), &e, l).unwrap();
                let up = thm3_upper(&spec, &e, l).unwrap().get().unwrap();
                assert!(exact <= up + 1e-9, "λ={l}: {exact} > {up}");
            }
            let exact = c_tsallis_pure(spec.normalized(), &e, 1.5).unwrap();
            let lo = thm3_lower(&spec, &e, 1.5).unwrap().get().unwrap();
            assert!(lo <= exact + 1e-9);
        }
    }
}
