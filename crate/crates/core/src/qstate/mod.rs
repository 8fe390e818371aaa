//! States, gates and POVMs, including the dilation-circuit POVMs and the
//! fixed states used by the numerical experiments.

pub mod gates;
mod povm;
mod state;

pub use gates::{
    cnot, dilation_state_1q, dilation_unitary_1q, dilation_unitary_2q, kron_chain, ry,
};
pub use povm::{
    dilation_effect_vectors, naimark_outcome_prob, povm_from_dilation, validate_povm, Povm,
    PovmJson, ValidationReport, COMPLETENESS_TOL, UNITARY_TOL,
};
pub use state::{superpose, DensityMatrix, PureState, SuperpositionSpec, NORM_TOL};

/// Circuit angles of the single-qubit 4-outcome POVM.
pub const QUBIT_POVM_THETA: [f64; 2] = [0.301723, 0.011681];

/// Printed parameter vector of the two-qubit 16-outcome POVM. Only the first
/// four entries feed the four rotation slots.
pub const TWO_QUBIT_POVM_GAMMA_PRINTED: [f64; 5] = [0.30173, 0.01168, 0.53991, 0.09537, 0.14651];

pub const TWO_QUBIT_POVM_GAMMA: [f64; 4] = [
    TWO_QUBIT_POVM_GAMMA_PRINTED[0],
    TWO_QUBIT_POVM_GAMMA_PRINTED[1],
    TWO_QUBIT_POVM_GAMMA_PRINTED[2],
    TWO_QUBIT_POVM_GAMMA_PRINTED[3],
];

/// Rotation angles of the single-qubit constituents `R_y(θ)|0⟩`.
pub const QUBIT_PHI_ANGLE: f64 = 0.432;
pub const QUBIT_PSI_ANGLE: f64 = 0.618;

/// Circuit angles of the two-qubit constituents `U(θ)|00⟩`.
pub const PHI1_THETA: [f64; 2] = [0.4827, 0.3760];
pub const PSI1_THETA: [f64; 2] = [0.9394, 0.2212];
pub const PSI2_THETA: [f64; 2] = [0.1557, 0.8190];

/// The 4-effect single-qubit POVM from `U(θ)`.
pub fn qubit_povm() -> Povm {
    povm_from_dilation(&dilation_unitary_1q(QUBIT_POVM_THETA), 1, 1)
        .expect("fixed dilation circuit is unitary")
}

/// The 16-effect two-qubit POVM from `V(γ)`.
pub fn two_qubit_povm() -> Povm {
    povm_from_dilation(&dilation_unitary_2q(TWO_QUBIT_POVM_GAMMA), 2, 2)
        .expect("fixed dilation circuit is unitary")
}

/// `R_y(angle)|0⟩`.
pub fn ry_state(angle: f64) -> PureState {
    PureState::basis(2, 0)
        .evolve(&ry(angle))
        .expect("rotation preserves dimension")
}

/// `U(θ)|00⟩`.
pub fn dilation_state(theta: [f64; 2]) -> PureState {
    PureState::new(dilation_state_1q(theta)).expect("unitary column is normalized")
}
