//! Upper and lower bounds on the coherence of a normalized superposition
//! `Ω′ = Σ_k α_k φ_k / ‖Ω‖` in terms of the coherence of the constituents.
//!
//! All bounds consume only `|α_k|`, `‖Ω‖` and quantities of the constituent
//! states, so they are invariant under a global phase on the coefficients.
//! Terms with `α_k = 0` are dropped before evaluation.

mod l1;
mod relent;
mod tsallis;

pub use l1::{m_pair, thm2_bounds, L1Bounds};
pub use relent::{
    eq13_identity_check, solve_theta_constraint, theorem1_params, thm1_lower, thm1_upper,
    Theorem1Params, DISCRIMINANT_TOL,
};
pub use tsallis::{
    lemma1_bound, n_pair, n_pair_with, thm3_lower, thm3_lower_with, thm3_upper, x_pair, PairValue,
};

use serde::Serialize;

/// Why a bound has no value for a given input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotApplicable {
    /// The coupling between `|α|², |β|²` and `cos²θ` has no admissible root.
    NoConstraintRoot,
    /// Two constituents are orthogonal, so a pairwise constant diverges.
    ZeroOverlap,
    /// `λ` lies outside the range where the bound is stated.
    LambdaDomain,
}

impl NotApplicable {
    pub fn code(self) -> &'static str {
        match self {
            NotApplicable::NoConstraintRoot => "no_constraint_root",
            NotApplicable::ZeroOverlap => "zero_overlap",
            NotApplicable::LambdaDomain => "lambda_domain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundValue {
    Value(f64),
    NotApplicable(NotApplicable),
}

/// Constant attached to an ordered pair `(k, k′)` of constituents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairConstant {
    pub k: usize,
    pub k_prime: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Admissible `cos²θ` roots that were evaluated.
    pub roots: Vec<f64>,
    /// Root at which the reported value was attained.
    pub chosen_root: Option<f64>,
    /// Largest imaginary magnitude dropped when taking a real part or modulus.
    pub imag_discarded: f64,
    pub pair_constants: Vec<PairConstant>,
    /// Set when the value came from a fallback or a degenerate shortcut.
    pub note: Option<&'static str>,
}

/// A bound value together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    pub value: BoundValue,
    pub diagnostics: Diagnostics,
}

impl BoundResult {
    pub fn value(value: f64, diagnostics: Diagnostics) -> Self {
        Self {
            value: BoundValue::Value(value),
            diagnostics,
        }
    }

    pub fn not_applicable(reason: NotApplicable, diagnostics: Diagnostics) -> Self {
        Self {
            value: BoundValue::NotApplicable(reason),
            diagnostics,
        }
    }

    pub fn get(&self) -> Option<f64> {
        match self.value {
            BoundValue::Value(v) => Some(v),
            BoundValue::NotApplicable(_) => None,
        }
    }

    pub fn is_applicable(&self) -> bool {
        self.get().is_some()
    }

    pub fn reason(&self) -> Option<NotApplicable> {
        match self.value {
            BoundValue::Value(_) => None,
            BoundValue::NotApplicable(r) => Some(r),
        }
    }
}

/// `(|α_k|, φ_k)` for the nonzero terms of a superposition.
pub(crate) fn weighted_terms(
    spec: &crate::qstate::SuperpositionSpec,
) -> Vec<(f64, &crate::qstate::PureState)> {
    spec.coefficients()
        .iter()
        .zip(spec.states())
        .map(|(a, s)| (a.norm(), s))
        .filter(|(a, _)| *a > 0.0)
        .collect()
}
