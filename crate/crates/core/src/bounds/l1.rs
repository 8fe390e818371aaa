//! l1-norm (and, for pure states, robustness) bounds for `Σ_k α_k φ_k`.

use serde::Serialize;

use super::{weighted_terms, Diagnostics, PairConstant};
use crate::error::Result;
use crate::measures::{c_l1_pure, OutcomeWeights};
use crate::qstate::{Povm, PureState, SuperpositionSpec};

/// `M = (d − 1) Σ_i ‖√E_i|φ_k⟩⟨φ_k′|‖_tr = (d − 1) Σ_i √⟨φ_k|E_i|φ_k⟩`,
/// where `d` is the number of outcomes. The value depends on the ordered pair
/// only through `φ_k` because `‖φ_k′‖ = 1`.
pub fn m_pair(phi_k: &PureState, _phi_k_prime: &PureState, e: &Povm) -> Result<f64> {
    let w = OutcomeWeights::of_pure(phi_k, e)?;
    let d = e.len() as f64;
    Ok((d - 1.0) * w.p.iter().map(|p| p.max(0.0).sqrt()).sum::<f64>())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct L1Bounds {
    pub upper: f64,
    pub lower: f64,
    pub diagnostics: Diagnostics,
}

/// Upper `‖Ω‖⁻²(Σ|α_k|² C_l1(φ_k) + Σ_{k≠k′}|α_kα_k′| M_kk′)` and lower
/// `max{0, ‖Ω‖⁻²(Σ|α_k|² C_l1(φ_k) − Σ_{k≠k′}|α_kα_k′| M_kk′)}`.
pub fn thm2_bounds(spec: &SuperpositionSpec, e: &Povm) -> Result<L1Bounds> {
    let terms = weighted_terms(spec);
    let norm_sq = spec.norm_sq();
    let mut diagonal = 0.0;
    for (a, s) in &terms {
        diagonal += a * a * c_l1_pure(s, e)?;
    }
    let mut cross = 0.0;
    let mut pair_constants = Vec::new();
    for (k, (ak, sk)) in terms.iter().enumerate() {
        for (kp, (akp, skp)) in terms.iter().enumerate() {
            if k == kp {
                continue;
            }
            let m = m_pair(sk, skp, e)?;
            pair_constants.push(PairConstant {
                k,
                k_prime: kp,
                value: m,
            });
            cross += ak * akp * m;
        }
    }
    Ok(L1Bounds {
        upper: (diagonal + cross) / norm_sq,
        lower: ((diagonal - cross) / norm_sq).max(0.0),
        diagnostics: Diagnostics {
            pair_constants,
            ..Default::default()
        },
    })
}
