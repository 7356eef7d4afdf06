//! Parity encoding: logical `x_n = k_n mod 2`, with `σ^Z → S^Z + N + 1`.
//!
//! Under this mapping the projector `|0⟩⟨0|` becomes `Σ_k (k+1)|k⟩⟨k|` and
//! `|1⟩⟨1|` becomes `Σ_k k|k⟩⟨k|` (a sign absorbed into `j_x`), so the oracle
//! generator on the x-register is the integer-valued diagonal
//! `P(k) = Σ_{x'∈F} (2j_{x'}+1) Π_n (k_n + 1 - x'_n)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::validation;
use crate::fock::{
    coherent_state, expm_hermitian, hadamard_inverse, ln_choose, rotation, spin_operator, Axis, CMatrix,
    Caps, EnsembleDims, FockIndex, Shape, StateVector,
};
use crate::oracle::{bit, BooleanOracle, OracleParams};
use crate::{Decision, EqcError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: u64) -> Parity {
        if k % 2 == 0 { Parity::Even } else { Parity::Odd }
    }
}

/// Logical bits of an x-register Fock label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityState {
    pub bits: Vec<bool>,
}

impl ParityState {
    pub fn decode(k: &FockIndex) -> Self {
        ParityState { bits: k.as_slice().iter().map(|&kn| kn % 2 == 1).collect() }
    }

    /// Logical input `x = Σ_n bit_n 2^{n-1}`.
    pub fn x(&self) -> usize {
        self.bits.iter().enumerate().map(|(i, &b)| usize::from(b) << i).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YOutcome {
    Flipped,
    Unchanged,
}

fn check_register(oracle: &BooleanOracle, k: &[usize]) -> Result<()> {
    if k.len() != oracle.m() {
        return validation(format!(
            "Fock label has {} entries, oracle has M = {}",
            k.len(),
            oracle.m()
        ));
    }
    Ok(())
}

/// Parity of `P(k)`, computed term by term modulo 2.
pub fn parity_px(oracle: &BooleanOracle, params: &OracleParams, k: &FockIndex) -> Result<Parity> {
    oracle.require_valid()?;
    check_register(oracle, k.as_slice())?;
    let mut acc = 0u64;
    for &xp in oracle.f_set() {
        let w = params.weight(oracle, xp).rem_euclid(2) as u64;
        let prod = k
            .as_slice()
            .iter()
            .enumerate()
            .fold(1u64, |p, (i, &kn)| p * ((kn as u64 + 1 - bit(xp, i + 1) as u64) % 2));
        acc ^= w & prod;
    }
    Ok(Parity::of(acc))
}

/// Exact `P(k)`, or `None` if it does not fit in an `i128`.
pub fn parity_sum(oracle: &BooleanOracle, params: &OracleParams, k: &FockIndex) -> Option<i128> {
    let mut acc: i128 = 0;
    for &xp in oracle.f_set() {
        let mut term = i128::from(params.weight(oracle, xp));
        for (i, &kn) in k.as_slice().iter().enumerate() {
            let f = kn as i128 + 1 - bit(xp, i + 1) as i128;
            term = term.checked_mul(f)?;
        }
        acc = acc.checked_add(term)?;
    }
    Some(acc)
}

/// Classical mode: y starts at `|0,1⟩⟩` and evolves under
/// `exp(-i(π/2)(S^X₀ + N₀)P(k))`; reports whether it ends at `|1,0⟩⟩`.
pub fn classical_mode_m1(
    oracle: &BooleanOracle,
    params: &OracleParams,
    k: &FockIndex,
    dims: &EnsembleDims,
    caps: &Caps,
) -> Result<YOutcome> {
    oracle.require_valid()?;
    params.validate_for(oracle)?;
    check_register(oracle, k.as_slice())?;
    FockIndex::new(k.0.clone(), &dims.x_shape()?)?;
    let n0 = dims.n_y();
    if n0 + 1 > caps.dense_matrix_dim {
        return Err(EqcError::CapExceeded { what: "y-ensemble generator", required: n0 + 1, cap: caps.dense_matrix_dim });
    }
    let p = match parity_sum(oracle, params, k) {
        // (S^X + N₀)/2 has integer spectrum, so only P mod 2 matters.
        Some(p) => p.rem_euclid(2) as f64,
        None => match parity_px(oracle, params, k)? {
            Parity::Odd => 1.0,
            Parity::Even => 0.0,
        },
    };
    let gen = (spin_operator(Axis::X, n0) + CMatrix::identity(n0 + 1, n0 + 1) * Complex64::new(n0 as f64, 0.0))
        * Complex64::new(0.5 * PI * p, 0.0);
    let u = expm_hermitian(&gen, 1.0);
    let p_flip = u[(n0, 0)].norm_sqr();
    Ok(if p_flip > 0.5 { YOutcome::Flipped } else { YOutcome::Unchanged })
}

/// Normalised cat state: the binomial-weighted sum over Fock labels of one
/// parity, equal to `(|1/√2,1/√2⟩⟩ ± |-1/√2,1/√2⟩⟩)/√2`.
pub fn cat_state(n: usize, parity: Parity) -> Result<StateVector> {
    let shape = Shape::single(n)?;
    let ln_norm = (n as f64 - 1.0) * std::f64::consts::LN_2;
    let amps = (0..=n)
        .map(|k| {
            if Parity::of(k as u64) == parity {
                Complex64::new((0.5 * (ln_choose(n as u64, k as u64) - ln_norm)).exp(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    StateVector::new(shape, amps)
}

/// y-ensemble Fock state `|k₀⟩` of the `S^X` basis (eigenvalue `2k₀ - N₀`).
pub fn x_basis_fock(k0: usize, n0: usize) -> Result<StateVector> {
    let v = StateVector::basis(Shape::single(n0)?, &[k0])?;
    v.apply_local(&rotation(Axis::Y, std::f64::consts::FRAC_PI_4, n0), 0)
}

#[derive(Clone, Debug)]
pub struct Method1Run {
    pub dims: EnsembleDims,
    pub k0: usize,
    /// x-register right after the oracle.
    pub post_oracle: StateVector,
    /// x-register after the closing Hadamards.
    pub final_state: StateVector,
    /// `|⟨0,1|⊗M final⟩|²`.
    pub overlap_zero: f64,
    pub decision: Decision,
}

/// Initial x-register `⊗_n |1/√2,1/√2⟩⟩`.
pub(crate) fn plus_register(dims: &EnsembleDims, cap: usize) -> Result<StateVector> {
    let shape = dims.x_shape()?;
    shape.ensure_within(cap, "x-register state")?;
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let factors = dims.n_x().iter().map(|&n| coherent_state(s, s, n)).collect::<Result<Vec<_>>>()?;
    StateVector::product(&factors, cap)
}

pub(crate) fn close_register(psi: &StateVector) -> Result<StateVector> {
    let mut out = psi.clone();
    for (i, &n) in psi.shape().counts().iter().enumerate() {
        out = out.apply_local(&hadamard_inverse(n), i)?;
    }
    Ok(out)
}

/// Sign `(-1)^{k₀ P(k)}` picked up by x-register state `|k⟩`.
pub fn oracle_sign_m1(oracle: &BooleanOracle, params: &OracleParams, k0: usize, k: &[usize]) -> f64 {
    let odd = parity_px(oracle, params, &FockIndex(k.to_vec())).expect("validated register")
        == Parity::Odd;
    if odd && k0 % 2 == 1 { -1.0 } else { 1.0 }
}

pub(crate) fn check_k0(k0: usize, n0: usize) -> Result<()> {
    if k0 % 2 == 0 {
        return validation(format!("k0 must be odd, got {k0}"));
    }
    if k0 > n0 {
        return validation(format!("k0 = {k0} exceeds N0 = {n0}"));
    }
    Ok(())
}

/// Quantum mode with the y-ensemble in `|k₀⟩` of the `S^X` basis.
pub fn quantum_mode_m1(
    oracle: &BooleanOracle,
    params: &OracleParams,
    dims: &EnsembleDims,
    k0: usize,
    caps: &Caps,
) -> Result<Method1Run> {
    oracle.require_valid()?;
    params.validate_for(oracle)?;
    if dims.m() != oracle.m() {
        return validation(format!("dims have M = {}, oracle has M = {}", dims.m(), oracle.m()));
    }
    check_k0(k0, dims.n_y())?;
    let start = plus_register(dims, caps.state_dim)?;
    let post_oracle =
        start.apply_diagonal(|k| Complex64::new(oracle_sign_m1(oracle, params, k0, k), 0.0));
    let final_state = close_register(&post_oracle)?;
    let overlap_zero = final_state.amps()[0].norm_sqr();
    let decision = if overlap_zero > 0.5 { Decision::Constant } else { Decision::Balanced };
    Ok(Method1Run { dims: dims.clone(), k0, post_oracle, final_state, overlap_zero, decision })
}

/// Dense `H_f = (π/2)(S^X₀ + N₀) ⊗ Σ_{x'∈F}(2j_{x'}+1) Π_n ((S^Z_n + N_n)/2 + 1 - x'_n)`
/// on `[y, x_1..x_M]`.
pub fn mapped_hamiltonian_m1(
    oracle: &BooleanOracle,
    params: &OracleParams,
    dims: &EnsembleDims,
    caps: &Caps,
) -> Result<CMatrix> {
    oracle.require_valid()?;
    params.validate_for(oracle)?;
    let full = dims.full_shape()?;
    full.ensure_within(caps.dense_matrix_dim, "dense mapped Hamiltonian")?;
    let xs = dims.x_shape()?;
    let mut diag = CMatrix::zeros(xs.dim(), xs.dim());
    xs.for_each(|i, k| {
        let v: f64 = oracle
            .f_set()
            .iter()
            .map(|&xp| {
                let prod: f64 = k
                    .iter()
                    .enumerate()
                    .map(|(n, &kn)| kn as f64 + 1.0 - bit(xp, n + 1) as f64)
                    .product();
                params.weight(oracle, xp) as f64 * prod
            })
            .sum();
        diag[(i, i)] = Complex64::new(v, 0.0);
    });
    let n0 = dims.n_y();
    let y = (spin_operator(Axis::X, n0) + CMatrix::identity(n0 + 1, n0 + 1) * Complex64::new(n0 as f64, 0.0))
        * Complex64::new(0.5 * PI, 0.0);
    Ok(y.kronecker(&diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::overlap;

    fn f4() -> BooleanOracle {
        BooleanOracle::preset("f4").unwrap()
    }

    #[test]
    fn parity_examples() {
        let p = OracleParams::zero();
        assert_eq!(parity_px(&f4(), &p, &FockIndex(vec![0, 0])).unwrap(), Parity::Odd);
        assert_eq!(parity_px(&f4(), &p, &FockIndex(vec![1, 0])).unwrap(), Parity::Even);
        assert_eq!(parity_px(&f4(), &p, &FockIndex(vec![3, 5])).unwrap(), Parity::Odd);
        // (3+1)(5+1) + 3·5 = 39
        assert_eq!(parity_sum(&f4(), &p, &FockIndex(vec![3, 5])), Some(39));
    }

    #[test]
    fn classical_mode_examples() {
        let dims = EnsembleDims::uniform(2, 3).unwrap();
        let caps = Caps::default();
        let p = OracleParams::zero();
        assert_eq!(classical_mode_m1(&f4(), &p, &FockIndex(vec![0, 0]), &dims, &caps).unwrap(), YOutcome::Flipped);
        assert_eq!(classical_mode_m1(&f4(), &p, &FockIndex(vec![1, 0]), &dims, &caps).unwrap(), YOutcome::Unchanged);
    }

    #[test]
    fn cat_examples() {
        assert_eq!(cat_state(1, Parity::Even).unwrap().amps()[0], Complex64::new(1.0, 0.0));
        let c = cat_state(2, Parity::Even).unwrap();
        for (a, e) in c.amps().iter().zip([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]) {
            assert!((a.re - e).abs() < 1e-15 && a.im == 0.0);
        }
        for n in 1..=20 {
            let (e, o) = (cat_state(n, Parity::Even).unwrap(), cat_state(n, Parity::Odd).unwrap());
            assert_eq!(overlap(&e, &o).unwrap(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn x_basis_fock_is_sx_eigenstate() {
        for (k0, n0) in [(1, 1), (1, 4), (3, 5)] {
            let v = x_basis_fock(k0, n0).unwrap();
            let sx = spin_operator(Axis::X, n0);
            let w = &sx * nalgebra::DVector::from_column_slice(v.amps());
            let lam = 2.0 * k0 as f64 - n0 as f64;
            for (a, b) in w.iter().zip(v.amps()) {
                assert!((a - b * lam).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn quantum_mode_f4_and_constant() {
        let dims = EnsembleDims::uniform(2, 4).unwrap();
        let caps = Caps::default();
        let run = quantum_mode_m1(&f4(), &OracleParams::zero(), &dims, 1, &caps).unwrap();
        assert!(run.overlap_zero < 1e-10);
        let zero = BooleanOracle::constant(2, false).unwrap();
        let run = quantum_mode_m1(&zero, &OracleParams::zero(), &dims, 1, &caps).unwrap();
        assert!((run.overlap_zero - 1.0).abs() < 1e-10);
        assert!(quantum_mode_m1(&zero, &OracleParams::zero(), &dims, 2, &caps).is_err());
    }
}
