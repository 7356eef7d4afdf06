use num_complex::Complex64;

use super::{ln_choose, CMatrix, Shape};
use crate::error::validation;
use crate::{EqcError, Result};

/// Pure state on a product of Fock spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    shape: Shape,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(shape: Shape, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != shape.dim() {
            return validation(format!(
                "{} amplitudes for a space of dimension {}",
                amps.len(),
                shape.dim()
            ));
        }
        Ok(StateVector { shape, amps })
    }

    /// Fock basis state `|k⟩`.
    pub fn basis(shape: Shape, k: &[usize]) -> Result<Self> {
        let idx = shape.index(k)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); shape.dim()];
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(StateVector { shape, amps })
    }

    /// Tensor product; the first factor becomes the slowest index.
    pub fn product(factors: &[StateVector], cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return validation("product of zero states");
        }
        let counts: Vec<usize> = factors.iter().flat_map(|f| f.shape.counts().to_vec()).collect();
        let shape = Shape::new(counts)?;
        shape.ensure_within(cap, "product state")?;
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for f in factors {
            let mut next = Vec::with_capacity(amps.len() * f.amps.len());
            for a in &amps {
                next.extend(f.amps.iter().map(|b| a * b));
            }
            amps = next;
        }
        Ok(StateVector { shape, amps })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, k: &[usize]) -> Result<Complex64> {
        Ok(self.amps[self.shape.index(k)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Returns `u ⊗ I` applied on ensemble `idx`.
    pub fn apply_local(&self, u: &CMatrix, idx: usize) -> Result<StateVector> {
        let mut out = self.clone();
        apply_local_in_place(&self.shape, u, idx, &mut out.amps)?;
        Ok(out)
    }

    /// Multiplies every amplitude by `phase(k)`.
    pub fn apply_diagonal(&self, mut phase: impl FnMut(&[usize]) -> Complex64) -> StateVector {
        let mut out = self.clone();
        self.shape.for_each(|i, k| out.amps[i] *= phase(k));
        out
    }

    /// Copy rotated by a global phase so the largest-magnitude amplitude is
    /// real positive. Ties (within 1e-9) go to the lowest index.
    pub fn canonical_phase(&self) -> StateVector {
        let max = self.amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return self.clone();
        }
        let pivot = self.amps.iter().find(|a| a.norm() >= max - 1e-9).copied().unwrap();
        let rot = pivot.conj() / pivot.norm();
        StateVector { shape: self.shape.clone(), amps: self.amps.iter().map(|a| a * rot).collect() }
    }

    /// Max-abs amplitude difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        same_shape(self, other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Max-abs amplitude difference after removing the relative global
    /// phase, taken from the phase of `⟨self|other⟩`.
    pub fn diff_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let ov = overlap(self, other)?;
        let rot = if ov.norm() > 0.0 { ov.conj() / ov.norm() } else { Complex64::new(1.0, 0.0) };
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b * rot).norm())
            .fold(0.0, f64::max))
    }
}

fn same_shape(a: &StateVector, b: &StateVector) -> Result<()> {
    if a.shape != b.shape {
        return validation(format!(
            "shape mismatch: {:?} vs {:?}",
            a.shape.counts(),
            b.shape.counts()
        ));
    }
    Ok(())
}

/// Applies `u` to ensemble `idx` of a buffer laid out as `shape`.
pub(crate) fn apply_local_in_place(
    shape: &Shape,
    u: &CMatrix,
    idx: usize,
    buf: &mut [Complex64],
) -> Result<()> {
    if idx >= shape.len() {
        return validation(format!("ensemble {idx} out of range for {} ensembles", shape.len()));
    }
    let d = shape.local_dim(idx);
    if u.nrows() != d || u.ncols() != d {
        return validation(format!(
            "local operator is {}x{}, ensemble {idx} has dimension {d}",
            u.nrows(),
            u.ncols()
        ));
    }
    debug_assert_eq!(buf.len(), shape.dim());
    let s = shape.stride(idx);
    let block = d * s;
    let mut tmp = vec![Complex64::new(0.0, 0.0); d];
    for base in (0..buf.len()).step_by(block) {
        for inner in 0..s {
            for (j, t) in tmp.iter_mut().enumerate() {
                *t = buf[base + j * s + inner];
            }
            for r in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, t) in tmp.iter().enumerate() {
                    acc += u[(r, j)] * t;
                }
                buf[base + r * s + inner] = acc;
            }
        }
    }
    Ok(())
}

/// Spin coherent state `|α,β⟩⟩ = Σ_k √C(N,k) α^k β^{N-k} |k⟩`.
pub fn coherent_state(alpha: Complex64, beta: Complex64, n: usize) -> Result<StateVector> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-10 {
        return validation(format!("|alpha|^2 + |beta|^2 = {norm}, expected 1"));
    }
    let shape = Shape::single(n)?;
    let (la, lb) = (alpha.norm().ln(), beta.norm().ln());
    let (pa, pb) = (alpha.arg(), beta.arg());
    let amps = (0..=n)
        .map(|k| {
            let (kf, rf) = (k as f64, (n - k) as f64);
            let ln_mag = 0.5 * ln_choose(n as u64, k as u64)
                + if k == 0 { 0.0 } else { kf * la }
                + if k == n { 0.0 } else { rf * lb };
            if ln_mag == f64::NEG_INFINITY {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar(ln_mag.exp(), kf * pa + rf * pb)
            }
        })
        .collect();
    Ok(StateVector { shape, amps })
}

/// `u ⊗ I` on ensemble `idx` of `psi`.
pub fn apply_local(u: &CMatrix, idx: usize, psi: &StateVector) -> Result<StateVector> {
    psi.apply_local(u, idx)
}

/// `⟨a|b⟩`.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    same_shape(a, b).map_err(|e| match e {
        EqcError::Validation(m) => EqcError::Validation(format!("overlap: {m}")),
        other => other,
    })?;
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}
