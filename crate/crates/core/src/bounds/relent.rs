//! Relative-entropy bounds for a two-term superposition `αφ + βψ`.
//!
//! The bounds are stated jointly with the coupling
//! `|α|²/cos²θ + |β|²/sin²θ = 1`. Writing `c = cos²θ` turns the coupling into
//! `c² − c(1 + a − b) + a = 0` with `a = |α|²`, `b = |β|²`; every admissible
//! root is evaluated and the tightest value is reported.

use serde::Serialize;

use super::{weighted_terms, BoundResult, Diagnostics, NotApplicable};
use crate::cmatrix::binary_entropy;
use crate::error::{Error, Result};
use crate::measures::c_r_pure;
use crate::qstate::{Povm, SuperpositionSpec};

/// Discriminants within `±DISCRIMINANT_TOL` of zero count as a double root.
/// Rescaled coefficients with `|α| + |β| = 1` sit exactly on the boundary.
pub const DISCRIMINANT_TOL: f64 = 1e-12;

/// Quantities derived from one constraint root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem1Params {
    pub cos2theta: f64,
    pub mu: f64,
    pub nu: f64,
    pub xi: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl Theorem1Params {
    /// `|α|²/c + |β|²/(1 − c) − 1`.
    pub fn constraint_residual(&self, a: f64, b: f64) -> f64 {
        a / self.cos2theta + b / (1.0 - self.cos2theta) - 1.0
    }

    fn in_open_unit(&self) -> bool {
        [self.mu, self.nu, self.xi]
            .iter()
            .all(|&x| x > 0.0 && x < 1.0)
    }
}

/// Roots `c ∈ (0,1)` of `c² − c(1 + a − b) + a = 0` with `μ = a/c ∈ (0,1)`.
///
/// Empty when the discriminant is negative, which happens exactly when
/// `√a + √b > 1`.
pub fn solve_theta_constraint(a: f64, b: f64) -> Vec<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Vec::new();
    }
    let s = 1.0 + a - b;
    let mut disc = s * s - 4.0 * a;
    if disc < -DISCRIMINANT_TOL {
        return Vec::new();
    }
    if disc.abs() <= DISCRIMINANT_TOL {
        disc = 0.0;
    }
    let root = disc.sqrt();
    let mut roots = if root == 0.0 {
        vec![s / 2.0]
    } else {
        // stable pairing: large root directly, small one from the product a
        let big = (s + root) / 2.0;
        vec![a / big, big]
    };
    roots.retain(|&c| {
        c > 0.0 && c < 1.0 && {
            let mu = a / c;
            mu > 0.0 && mu < 1.0
        }
    });
    roots
}

/// Evaluates `μ, ν, ξ, p₁, p₂, p₃` at a root `c = cos²θ`.
pub fn theorem1_params(a: f64, b: f64, norm_sq: f64, cos2theta: f64) -> Theorem1Params {
    let c = cos2theta;
    let s = 1.0 - c;
    let mu = a / c;
    let nu = s * norm_sq / (s * norm_sq + b * c);
    let xi = s * norm_sq / (s * norm_sq + a * c);
    let p1 = ((1.0 - mu) * a + mu * b) / (mu * (1.0 - mu) * norm_sq);
    let p2 = (1.0 - nu) * a / ((1.0 - nu) * norm_sq + nu * b);
    let p3 = (1.0 - xi) * b / ((1.0 - xi) * norm_sq + xi * a);
    Theorem1Params {
        cos2theta,
        mu,
        nu,
        xi,
        p1,
        p2,
        p3,
    }
}

/// Collapse probability `p = ‖Ω‖²μ(1−μ)/((1−μ)a + μb)` divided by `‖Ω‖²`.
///
/// Under the constraint `μ = a/c` and `1 − μ = b/(1 − c)`, so the ratio is 1.
pub fn eq13_identity_check(a: f64, b: f64, root: f64) -> f64 {
    let mu = a / root;
    mu * (1.0 - mu) / ((1.0 - mu) * a + mu * b)
}

struct TwoTerm {
    a: f64,
    b: f64,
    c_phi: f64,
    c_psi: f64,
}

/// Either the two-term data or the exact value of a single-term spec.
fn prepare(spec: &SuperpositionSpec, e: &Povm) -> Result<std::result::Result<TwoTerm, f64>> {
    if spec.len() != 2 {
        return Err(Error::Config(format!(
            "relative-entropy bounds need exactly 2 constituents, got {}",
            spec.len()
        )));
    }
    let terms = weighted_terms(spec);
    if terms.len() == 1 {
        return Ok(Err(c_r_pure(terms[0].1, e)?));
    }
    let states = spec.states();
    let coeffs = spec.coefficients();
    Ok(Ok(TwoTerm {
        a: coeffs[0].norm_sqr(),
        b: coeffs[1].norm_sqr(),
        c_phi: c_r_pure(&states[0], e)?,
        c_psi: c_r_pure(&states[1], e)?,
    }))
}

fn degenerate(value: f64) -> BoundResult {
    BoundResult::value(
        value,
        Diagnostics {
            note: Some("single nonzero coefficient; exact value"),
            ..Default::default()
        },
    )
}

/// `p₁[μ C_r(φ) + (1 − μ) C_r(ψ) + h₂(μ)]`, minimized over admissible roots.
pub fn thm1_upper(spec: &SuperpositionSpec, e: &Povm) -> Result<BoundResult> {
    let t = match prepare(spec, e)? {
        Ok(t) => t,
        Err(exact) => return Ok(degenerate(exact)),
    };
    let norm_sq = spec.norm_sq();
    let mut diag = Diagnostics::default();
    let mut best: Option<(f64, f64)> = None;
    for c in solve_theta_constraint(t.a, t.b) {
        let p = theorem1_params(t.a, t.b, norm_sq, c);
        if !p.in_open_unit() {
            continue;
        }
        diag.roots.push(c);
        let v = p.p1 * (p.mu * t.c_phi + (1.0 - p.mu) * t.c_psi + binary_entropy(p.mu)?);
        if best.is_none_or(|(bv, _)| v < bv) {
            best = Some((v, c));
        }
    }
    Ok(match best {
        Some((v, c)) => {
            diag.chosen_root = Some(c);
            BoundResult::value(v, diag)
        }
        None => BoundResult::not_applicable(NotApplicable::NoConstraintRoot, diag),
    })
}

/// `max{L₁, L₂, 0}`, maximized over admissible roots; 0 without a root.
pub fn thm1_lower(spec: &SuperpositionSpec, e: &Povm) -> Result<BoundResult> {
    let t = match prepare(spec, e)? {
        Ok(t) => t,
        Err(exact) => return Ok(degenerate(exact)),
    };
    let norm_sq = spec.norm_sq();
    let mut diag = Diagnostics::default();
    let mut best = 0.0;
    for c in solve_theta_constraint(t.a, t.b) {
        let p = theorem1_params(t.a, t.b, norm_sq, c);
        if !p.in_open_unit() {
            continue;
        }
        diag.roots.push(c);
        let l1 = p.p2 * t.c_phi - (1.0 - p.nu) / p.nu * t.c_psi - binary_entropy(p.nu)? / p.nu;
        let l2 = p.p3 * t.c_psi - (1.0 - p.xi) / p.xi * t.c_phi - binary_entropy(p.xi)? / p.xi;
        let v = l1.max(l2);
        if v > best {
            best = v;
            diag.chosen_root = Some(c);
        }
    }
    if diag.roots.is_empty() {
        diag.note = Some("no constraint root; trivial lower bound");
    }
    Ok(BoundResult::value(best, diag))
}
