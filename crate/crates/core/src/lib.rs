//! Coherence of quantum states relative to a POVM, the Naimark dilation
//! circuits that realize such POVMs, and upper/lower bounds on the coherence
//! of superposed pure states in terms of the coherence of the constituents.
//!
//! The crate is organized bottom-up:
//!
//! - [`cmatrix`]: dense complex matrices, Hermitian eigendecomposition, PSD
//!   matrix functions, trace norm and entropies.
//! - [`qstate`]: pure states, density matrices, gates, dilation POVMs.
//! - [`measures`]: relative-entropy, l1, robustness and Tsallis coherence.
//! - [`bounds`]: superposition bounds for each measure.
//! - [`xharness`]: seeded randomized experiments, CSV output and the CLI.

pub mod bounds;
pub mod cmatrix;
pub mod error;
pub mod measures;
pub mod qstate;
pub mod random;
pub mod xharness;

pub use error::{Error, Result};
pub use num_complex::Complex64;
