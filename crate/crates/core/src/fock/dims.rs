use crate::error::validation;
use crate::{EqcError, Result};

/// Default cap on the dimension of any dense state vector.
pub const DEFAULT_STATE_CAP: usize = 1 << 24;
/// Default cap on `∏(Nₙ+1)` for density-matrix simulations.
pub const DEFAULT_DENSITY_CAP: usize = 512;

/// Size limits for the dense paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest state-vector dimension.
    pub state_dim: usize,
    /// Largest `∏(Nₙ+1)` for a density matrix.
    pub density_dim: usize,
    /// Largest matrix side that may be built densely and exponentiated.
    pub dense_matrix_dim: usize,
    /// Method 2 dense path: maximum M.
    pub m2_dense_max_m: usize,
    /// Method 2 dense path: maximum particles per ensemble.
    pub m2_dense_max_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            state_dim: DEFAULT_STATE_CAP,
            density_dim: DEFAULT_DENSITY_CAP,
            dense_matrix_dim: 4096,
            m2_dense_max_m: 3,
            m2_dense_max_n: 12,
        }
    }
}

impl Caps {
    /// Default caps with the state-dimension cap replaced.
    pub fn with_state_cap(state_dim: usize) -> Self {
        Caps { state_dim, ..Caps::default() }
    }
}

/// Particle counts per ensemble of a product space plus its total dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    counts: Vec<usize>,
    strides: Vec<usize>,
    dim: usize,
}

impl Shape {
    /// Fails on an empty list, a zero count, or a dimension that overflows.
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return validation("a shape needs at least one ensemble");
        }
        if counts.contains(&0) {
            return validation(format!("particle counts must be >= 1, got {counts:?}"));
        }
        let mut strides = vec![0; counts.len()];
        let mut dim: usize = 1;
        for i in (0..counts.len()).rev() {
            strides[i] = dim;
            dim = counts[i]
                .checked_add(1)
                .and_then(|d| dim.checked_mul(d))
                .ok_or(EqcError::CapExceeded {
                    what: "product Fock space",
                    required: usize::MAX,
                    cap: usize::MAX,
                })?;
        }
        Ok(Shape { counts, strides, dim })
    }

    pub fn single(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn local_dim(&self, i: usize) -> usize {
        self.counts[i] + 1
    }

    pub fn stride(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn ensure_within(&self, cap: usize, what: &'static str) -> Result<()> {
        if self.dim > cap {
            Err(EqcError::CapExceeded { what, required: self.dim, cap })
        } else {
            Ok(())
        }
    }

    /// Flat row-major index of a Fock label.
    pub fn index(&self, k: &[usize]) -> Result<usize> {
        FockIndex::new(k.to_vec(), self)?;
        Ok(k.iter().zip(&self.strides).map(|(a, s)| a * s).sum())
    }

    pub fn fock_index(&self, mut flat: usize) -> FockIndex {
        assert!(flat < self.dim, "flat index out of range");
        let mut k = vec![0; self.counts.len()];
        for i in 0..k.len() {
            k[i] = flat / self.strides[i];
            flat %= self.strides[i];
        }
        FockIndex(k)
    }

    /// Calls `f(flat, k)` for every basis label in storage order.
    pub fn for_each(&self, mut f: impl FnMut(usize, &[usize])) {
        let mut k = vec![0usize; self.counts.len()];
        for flat in 0..self.dim {
            f(flat, &k);
            for i in (0..k.len()).rev() {
                if k[i] < self.counts[i] {
                    k[i] += 1;
                    break;
                }
                k[i] = 0;
            }
        }
    }

    /// Sub-shape made of the selected ensembles.
    pub fn select(&self, which: &[usize]) -> Result<Shape> {
        Shape::new(which.iter().map(|&i| self.counts[i]).collect())
    }
}

/// Fock labels, one per ensemble.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockIndex(pub Vec<usize>);

impl FockIndex {
    pub fn new(k: Vec<usize>, shape: &Shape) -> Result<Self> {
        if k.len() != shape.len() {
            return validation(format!(
                "Fock label has {} entries, shape has {} ensembles",
                k.len(),
                shape.len()
            ));
        }
        if let Some((i, (&ki, &n))) =
            k.iter().zip(shape.counts()).enumerate().find(|(_, (ki, n))| ki > n)
        {
            return validation(format!("k[{i}] = {ki} exceeds N = {n}"));
        }
        Ok(FockIndex(k))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Particle counts of the y-ensemble (`N₀`) and the x-register (`N₁..N_M`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnsembleDims {
    n_y: usize,
    n_x: Vec<usize>,
}

impl EnsembleDims {
    pub fn new(n_y: usize, n_x: Vec<usize>) -> Result<Self> {
        if n_y == 0 || n_x.is_empty() || n_x.contains(&0) {
            return validation(format!(
                "need N0 >= 1 and at least one x ensemble with N >= 1, got N0={n_y}, N={n_x:?}"
            ));
        }
        Ok(EnsembleDims { n_y, n_x })
    }

    /// `M` x-ensembles of `n` particles and a y-ensemble of `n` particles.
    pub fn uniform(m: usize, n: usize) -> Result<Self> {
        Self::new(n, vec![n; m])
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn n_x(&self) -> &[usize] {
        &self.n_x
    }

    pub fn m(&self) -> usize {
        self.n_x.len()
    }

    /// Shape of the x-register alone, ensembles `[x_1, .., x_M]`.
    pub fn x_shape(&self) -> Result<Shape> {
        Shape::new(self.n_x.clone())
    }

    /// Shape of the whole system, ensembles `[y, x_1, .., x_M]`.
    pub fn full_shape(&self) -> Result<Shape> {
        let mut c = Vec::with_capacity(self.n_x.len() + 1);
        c.push(self.n_y);
        c.extend_from_slice(&self.n_x);
        Shape::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_row_major_last_fastest() {
        let s = Shape::new(vec![1, 2]).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.index(&[0, 2]).unwrap(), 2);
        assert_eq!(s.index(&[1, 0]).unwrap(), 3);
        let mut seen = Vec::new();
        s.for_each(|flat, k| {
            assert_eq!(s.fock_index(flat).0, k);
            seen.push(flat);
        });
        assert_eq!(seen, (0..6).collect::<Vec<_>>());
        assert!(s.index(&[0, 3]).is_err());
    }

    #[test]
    fn overflow_and_cap_are_reported() {
        let big = Shape::new(vec![usize::MAX / 2; 3]);
        assert!(matches!(big, Err(EqcError::CapExceeded { .. })));
        let s = Shape::new(vec![12; 4]).unwrap();
        assert_eq!(s.dim(), 13usize.pow(4));
        assert!(s.ensure_within(1000, "test").is_err());
        assert!(s.ensure_within(DEFAULT_STATE_CAP, "test").is_ok());
    }

    #[test]
    fn rejects_empty_and_zero_counts() {
        assert!(EnsembleDims::new(0, vec![1]).is_err());
        assert!(EnsembleDims::new(1, vec![]).is_err());
        assert!(EnsembleDims::new(1, vec![2, 0]).is_err());
        let d = EnsembleDims::new(3, vec![4, 5]).unwrap();
        assert_eq!(d.full_shape().unwrap().counts(), &[3, 4, 5]);
        assert_eq!(d.m(), 2);
    }
}
