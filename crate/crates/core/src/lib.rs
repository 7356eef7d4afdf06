//! Deutsch-Jozsa on macroscopic spin ensembles.
//!
//! Every logical qubit of the textbook circuit is replaced by an ensemble of
//! `N` two-level particles that is only ever touched through its collective
//! spin. The crate builds the whole pipeline on the symmetric (two-mode Fock)
//! subspace:
//!
//! * [`fock`]: Fock-basis states, spin coherent states, collective spin
//!   operators and rotations, density matrices.
//! * [`oracle`]: truth tables, the qubit oracle unitary and its Hamiltonian
//!   family parameterised by free integers `j_x`.
//! * [`qubit`]: the plain qubit circuit, used as ground truth.
//! * [`method1`]: parity encoding (`σ^Z → S^Z + N + 1`), exact for any oracle.
//! * [`method2`]: coherent-state encoding (`σ^Z → -S^Z/N`), exponentially
//!   accurate in `N` with the `j_x = -x_1` implementation.
//! * [`analysis`]: closed-form overlap curves, error levels and scaling fits.
//! * [`decoherence`]: collective dephasing and the readout signal.
//!
//! Conventions used throughout: Fock label `k` counts particles in mode `a`,
//! so `k = 0` is `|0,1⟩⟩` (logical 0) and `k = N` is `|1,0⟩⟩` (logical 1).
//! Input bit `x_1` is the least significant bit of `x`; the y-ensemble is
//! ensemble 0 and the x-register ensembles are numbered `1..=M`.

pub mod analysis;
pub mod decoherence;
mod error;
pub mod fock;
mod logreal;
pub mod method1;
pub mod method2;
pub mod numeric;
pub mod oracle;
pub mod qubit;

pub use error::{EqcError, Result};
pub use logreal::{LogReal, LogSum};

pub use fock::{
    Axis, Caps, DensityMatrix, EnsembleDims, FockIndex, Shape, StateVector,
};
pub use oracle::{BooleanOracle, OracleClass, OracleCoefficients, OracleParams};

/// Outcome of a single Deutsch-Jozsa run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Constant,
    Balanced,
}

impl Decision {
    /// Whether this decision matches the oracle's true class.
    pub fn is_correct_for(self, class: OracleClass) -> bool {
        matches!(
            (self, class),
            (Decision::Constant, OracleClass::Constant) | (Decision::Balanced, OracleClass::Balanced)
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Constant => "constant",
            Decision::Balanced => "balanced",
        }
    }
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
