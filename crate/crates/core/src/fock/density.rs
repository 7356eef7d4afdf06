use nalgebra::linalg::SymmetricEigen;
use num_complex::Complex64;

use super::state::apply_local_in_place;
use super::{CMatrix, Shape, StateVector};
use crate::error::validation;
use crate::Result;

/// Mixed state on a product of Fock spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    shape: Shape,
    rho: CMatrix,
}

impl DensityMatrix {
    /// `|ψ⟩⟨ψ|`, subject to the density-matrix dimension cap.
    pub fn from_pure(psi: &StateVector, cap: usize) -> Result<Self> {
        psi.shape().ensure_within(cap, "density matrix")?;
        let v = nalgebra::DVector::from_column_slice(psi.amps());
        Ok(DensityMatrix { shape: psi.shape().clone(), rho: &v * v.adjoint() })
    }

    /// Validates Hermiticity, unit trace and a non-negative diagonal.
    pub fn from_matrix(shape: Shape, rho: CMatrix) -> Result<Self> {
        let d = shape.dim();
        if rho.nrows() != d || rho.ncols() != d {
            return validation(format!("density matrix must be {d}x{d}"));
        }
        let dm = DensityMatrix { shape, rho };
        let h = dm.hermiticity_residual();
        if h > 1e-10 {
            return validation(format!("density matrix not Hermitian (residual {h:e})"));
        }
        let t = dm.trace();
        if (t.re - 1.0).abs() > 1e-10 || t.im.abs() > 1e-10 {
            return validation(format!("density matrix trace is {t}"));
        }
        if let Some(k) = (0..d).find(|&k| dm.rho[(k, k)].re < -1e-12) {
            return validation(format!("negative population at index {k}"));
        }
        Ok(dm)
    }

    pub fn maximally_mixed(shape: Shape) -> Self {
        let d = shape.dim();
        DensityMatrix { rho: CMatrix::identity(d, d) / Complex64::new(d as f64, 0.0), shape }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        super::max_abs_diff(&self.rho, &self.rho.adjoint())
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.rho + self.rho.adjoint()) * Complex64::new(0.5, 0.0);
        SymmetricEigen::new(herm).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `ρ → (u⊗I) ρ (u⊗I)†` on ensemble `idx`.
    pub fn apply_local(&self, u: &CMatrix, idx: usize) -> Result<Self> {
        let d = self.shape.dim();
        let mut a = self.rho.clone();
        for col in a.as_mut_slice().chunks_mut(d) {
            apply_local_in_place(&self.shape, u, idx, col)?;
        }
        let mut b = a.adjoint();
        for col in b.as_mut_slice().chunks_mut(d) {
            apply_local_in_place(&self.shape, u, idx, col)?;
        }
        Ok(DensityMatrix { shape: self.shape.clone(), rho: b.adjoint() })
    }

    /// `ρ_{kk'} → d(k) ρ_{kk'} conj(d(k'))` for a diagonal unitary `d`.
    pub fn apply_diagonal(&self, mut phase: impl FnMut(&[usize]) -> Complex64) -> Self {
        let mut p = Vec::with_capacity(self.shape.dim());
        self.shape.for_each(|_, k| p.push(phase(k)));
        self.scale_by(|i, j| p[i] * p[j].conj())
    }

    /// `ρ_{kk'} → w(k, k') ρ_{kk'}` with Fock labels supplied for both sides.
    pub fn scale_entries(&self, mut w: impl FnMut(&[usize], &[usize]) -> f64) -> Self {
        let mut labels = Vec::with_capacity(self.shape.dim());
        self.shape.for_each(|_, k| labels.push(k.to_vec()));
        self.scale_by(|i, j| Complex64::new(w(&labels[i], &labels[j]), 0.0))
    }

    fn scale_by(&self, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut rho = self.rho.clone();
        let d = self.shape.dim();
        for j in 0..d {
            for i in 0..d {
                rho[(i, j)] *= f(i, j);
            }
        }
        DensityMatrix { shape: self.shape.clone(), rho }
    }

    /// `Σ_k ρ_kk f(k)`.
    pub fn diagonal_expectation(&self, mut f: impl FnMut(&[usize]) -> f64) -> f64 {
        let mut acc = 0.0;
        self.shape.for_each(|i, k| acc += self.rho[(i, i)].re * f(k));
        acc
    }

    /// `⟨S^Z⟩` of ensemble `idx`.
    pub fn expectation_sz(&self, idx: usize) -> f64 {
        let n = self.shape.counts()[idx] as f64;
        self.diagonal_expectation(|k| 2.0 * k[idx] as f64 - n)
    }
}
