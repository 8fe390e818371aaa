//! Seeded generators for random states, unitaries and POVMs used by the
//! property checks and the experiment harness.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::cmatrix::{norm, psd_func, ComplexMatrix};
use crate::qstate::{povm_from_dilation, DensityMatrix, Povm, PureState};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Ginibre matrix with i.i.d. standard normal entries.
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, dim);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Haar-distributed unitary from Gram–Schmidt on a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v = g.col(j);
        // two passes keep the columns orthonormal to rounding
        for _ in 0..2 {
            for u in &cols {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let n = norm(&v);
        v.iter_mut().for_each(|z| *z /= n);
        cols.push(v);
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

pub fn random_pure_state(rng: &mut impl Rng, dim: usize) -> PureState {
    let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
    PureState::normalized(v).expect("gaussian vector is nonzero almost surely")
}

/// Full-rank density matrix `GG†/Tr(GG†)` (Hilbert–Schmidt measure).
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let g = ginibre(rng, dim, dim);
    let w = g.matmul(&g.adjoint());
    let t = w.trace().re;
    DensityMatrix::new(w.scale_real(1.0 / t)).expect("Wishart matrix is a valid state")
}

/// Rank-1 POVM with `2^(sys + anc)` effects read off a Haar-random dilation
/// unitary, the same construction as the fixed circuit POVMs.
pub fn random_dilation_povm(rng: &mut impl Rng, sys_qubits: usize, anc_qubits: usize) -> Povm {
    let u = random_unitary(rng, 1 << (sys_qubits + anc_qubits));
    povm_from_dilation(&u, sys_qubits, anc_qubits).expect("Haar unitary is a valid dilation")
}

/// Random `outcomes`-effect POVM of mixed rank: `E_j = S^{-1/2} G_j S^{-1/2}`
/// with `G_j` Wishart and `S = Σ G_j`.
pub fn random_povm(rng: &mut impl Rng, dim: usize, outcomes: usize) -> Povm {
    let raw: Vec<ComplexMatrix> = (0..outcomes)
        .map(|_| {
            let g = ginibre(rng, dim, dim);
            g.matmul(&g.adjoint())
        })
        .collect();
    let total = raw.iter().skip(1).fold(raw[0].clone(), |acc, e| &acc + e);
    let inv_sqrt = psd_func(&total, |l| if l > 0.0 { 1.0 / l.sqrt() } else { 0.0 })
        .expect("sum of Wishart matrices is PSD");
    let effects = raw
        .iter()
        .map(|g| {
            let e = inv_sqrt.matmul(g).matmul(&inv_sqrt);
            // symmetrize away rounding asymmetry
            (&e + &e.adjoint()).scale_real(0.5)
        })
        .collect();
    Povm::new(effects).expect("normalized Wishart effects form a POVM")
}
