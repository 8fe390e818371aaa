//! Single-qubit rotations, CNOT and the two-layer dilation circuits.
//!
//! Qubit 0 is the most significant bit of a computational basis label, so on
//! two qubits `|q0 q1⟩` has index `2·q0 + q1`.

use num_complex::Complex64;

use crate::cmatrix::{ComplexMatrix, ONE};
use crate::error::{Error, Result};

/// `R_y(θ) = exp(−iθσ_y/2) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`.
pub fn ry(angle: f64) -> ComplexMatrix {
    let (s, c) = (angle / 2.0).sin_cos();
    ComplexMatrix::from_real(2, 2, &[c, -s, s, c])
}

/// CNOT on an `n`-qubit register as a permutation matrix.
pub fn cnot(control: usize, target: usize, n: usize) -> Result<ComplexMatrix> {
    for index in [control, target] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, qubits: n });
        }
    }
    if control == target {
        return Err(Error::SameQubit(control));
    }
    let dim = 1usize << n;
    let control_bit = 1usize << (n - 1 - control);
    let target_bit = 1usize << (n - 1 - target);
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let row = if col & control_bit != 0 {
            col ^ target_bit
        } else {
            col
        };
        m[(row, col)] = ONE;
    }
    Ok(m)
}

/// Left-to-right tensor product `g₀ ⊗ g₁ ⊗ …`; the empty chain is `[1]`.
pub fn kron_chain(gates: &[ComplexMatrix]) -> ComplexMatrix {
    gates
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, g| acc.kron(g))
}

/// `U(θ) = CNOT · (R_y(θ₁) ⊗ R_y(θ₂))` on system ⊗ ancilla.
pub fn dilation_unitary_1q(theta: [f64; 2]) -> ComplexMatrix {
    let layer = kron_chain(&[ry(theta[0]), ry(theta[1])]);
    cnot(0, 1, 2).expect("valid qubit indices").matmul(&layer)
}

/// `V(γ)`: an `R_y` layer on four qubits followed by `CNOT₀₁`, `CNOT₁₂`,
/// `CNOT₂₃` in that order.
pub fn dilation_unitary_2q(gamma: [f64; 4]) -> ComplexMatrix {
    let layer = kron_chain(&gamma.map(ry));
    (0..3).fold(layer, |acc, i| {
        cnot(i, i + 1, 4).expect("valid qubit indices").matmul(&acc)
    })
}

/// Two-qubit state `U(θ)|00⟩`, the constituent states of the two-qubit
/// experiments.
pub fn dilation_state_1q(theta: [f64; 2]) -> Vec<Complex64> {
    dilation_unitary_1q(theta).col(0)
}
