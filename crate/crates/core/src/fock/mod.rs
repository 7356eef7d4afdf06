//! Two-mode Fock (symmetric-subspace) representation of spin ensembles.
//!
//! A single ensemble of `N` particles lives in `span{|k⟩ : k = 0..=N}` where
//! `k` is the occupation of mode `a`. Products of ensembles are stored
//! row-major with the last ensemble varying fastest.

mod binomial;
mod density;
mod dims;
mod spin;
mod state;

pub use binomial::{ln_choose, log_binomial};
pub use density::DensityMatrix;
pub use dims::{Caps, EnsembleDims, FockIndex, Shape, DEFAULT_DENSITY_CAP, DEFAULT_STATE_CAP};
pub use spin::{
    commutator, expm_hermitian, hadamard, hadamard_inverse, rotation, spin_operator,
    unitarity_residual, Axis,
};
pub use state::{apply_local, coherent_state, overlap, StateVector};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Max-abs entrywise difference of two equally sized matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "matrix shapes differ");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Kronecker product of a list of matrices, leftmost factor slowest.
pub fn kron_all(factors: &[CMatrix]) -> CMatrix {
    let mut acc = CMatrix::identity(1, 1);
    for f in factors {
        acc = acc.kronecker(f);
    }
    acc
}
