use nalgebra::linalg::SymmetricEigen;
use num_complex::Complex64;

use super::CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Collective spin operator `S^axis` on the `(N+1)`-dimensional Fock space.
///
/// `S^Z = diag(2k - N)`; the ladder element `√((k+1)(N-k))` links `k` and
/// `k+1` (real for X, `-i` below the diagonal for Y).
pub fn spin_operator(axis: Axis, n: usize) -> CMatrix {
    assert!(n >= 1, "spin_operator needs N >= 1");
    let d = n + 1;
    let mut s = CMatrix::zeros(d, d);
    match axis {
        Axis::Z => {
            for k in 0..d {
                s[(k, k)] = Complex64::new(2.0 * k as f64 - n as f64, 0.0);
            }
        }
        Axis::X | Axis::Y => {
            for k in 0..n {
                let c = (((k + 1) * (n - k)) as f64).sqrt();
                let (lo, hi) = match axis {
                    Axis::X => (Complex64::new(c, 0.0), Complex64::new(c, 0.0)),
                    _ => (Complex64::new(0.0, -c), Complex64::new(0.0, c)),
                };
                s[(k + 1, k)] = lo;
                s[(k, k + 1)] = hi;
            }
        }
    }
    s
}

/// `exp(-i t H)` for Hermitian `H`, via eigendecomposition.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    assert!(h.is_square(), "expm_hermitian needs a square matrix");
    let eig = SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -t * l)));
    v * phases * v.adjoint()
}

/// `exp(-i θ S^axis)`.
pub fn rotation(axis: Axis, angle: f64, n: usize) -> CMatrix {
    if axis == Axis::Z {
        let d = n + 1;
        let mut u = CMatrix::zeros(d, d);
        for k in 0..d {
            u[(k, k)] = Complex64::from_polar(1.0, -angle * (2.0 * k as f64 - n as f64));
        }
        return u;
    }
    if angle == 0.0 {
        return CMatrix::identity(n + 1, n + 1);
    }
    expm_hermitian(&spin_operator(axis, n), angle)
}

/// Ensemble Hadamard: the mode map `b → (a+b)/√2`, `a → (a-b)/√2`.
///
/// Sends `|0,1⟩⟩` to `|1/√2,1/√2⟩⟩` and `|1,0⟩⟩` to `|1/√2,-1/√2⟩⟩`.
/// In the `k`-ordered basis this is `exp(+i(π/4)S^Y)`.
pub fn hadamard(n: usize) -> CMatrix {
    rotation(Axis::Y, -std::f64::consts::FRAC_PI_4, n)
}

/// Inverse of [`hadamard`]; closes the circuit so that `|1/√2,1/√2⟩⟩`
/// returns to `|0,1⟩⟩`.
pub fn hadamard_inverse(n: usize) -> CMatrix {
    rotation(Axis::Y, std::f64::consts::FRAC_PI_4, n)
}

/// `‖U†U - I‖_max`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    let d = u.nrows();
    super::max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(d, d))
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}
