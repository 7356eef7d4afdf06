//! Coherent-state encoding: logical `x_n` is the pole `|x_n, 1-x_n⟩⟩`.
//!
//! Pauli Z maps to `-S^Z/N`, which is `+1` on `|0,1⟩⟩` (k = 0) and `-1` on
//! `|1,0⟩⟩` (k = N), matching `σ^Z|0⟩ = |0⟩`. In quantum mode the
//! y-ensemble sits in the `S^X` eigenstate of eigenvalue `-N₀`, so the
//! x-register picks up `exp(iφ(k))` with
//! `φ(k) = πN₀ Σ_z α_z Π_n s_n^{z_n}`, `s_n = (N_n - 2k_n)/N_n`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::validation;
use crate::fock::{
    expm_hermitian, spin_operator, Axis, CMatrix, Caps, EnsembleDims, FockIndex, StateVector,
};
use crate::method1::{close_register, plus_register};
use crate::numeric::cos_pi;
use crate::oracle::{alpha_coefficients, bit, BooleanOracle, OracleClass, OracleCoefficients, OracleParams};
use crate::{Decision, EqcError, LogReal, Result};

/// Eigenvalue `(N - 2k)/N` of the mapped Pauli Z on `|k⟩`.
pub fn logical_z(k: usize, n: usize) -> f64 {
    (n as f64 - 2.0 * k as f64) / n as f64
}

/// `Σ_z α_z Π_n s_n^{z_n}` for x-register label `k`.
fn z_polynomial(coeffs: &OracleCoefficients, n_x: &[usize], k: &[usize]) -> f64 {
    let s: Vec<f64> = k.iter().zip(n_x).map(|(&kn, &n)| logical_z(kn, n)).collect();
    coeffs
        .alpha()
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != 0.0)
        .map(|(z, a)| {
            (0..s.len()).filter(|i| z >> i & 1 == 1).fold(*a, |acc, i| acc * s[i])
        })
        .sum()
}

/// Phase `φ(k)` acquired by x-register label `k` in quantum mode.
pub fn phase_function_m2(coeffs: &OracleCoefficients, dims: &EnsembleDims, k: &FockIndex) -> Result<f64> {
    if coeffs.m() != dims.m() {
        return validation(format!("coefficients have M = {}, dims have M = {}", coeffs.m(), dims.m()));
    }
    FockIndex::new(k.0.clone(), &dims.x_shape()?)?;
    Ok(PI * dims.n_y() as f64 * z_polynomial(coeffs, dims.n_x(), k.as_slice()))
}

/// `j_x = -x_1` for every `x ∈ F`.
pub fn recommended_params(oracle: &BooleanOracle) -> Result<OracleParams> {
    if oracle.class() != OracleClass::Balanced {
        return validation(format!(
            "recommended parameters are defined for balanced oracles, {} is {}",
            oracle.to_table_string(),
            oracle.class()
        ));
    }
    let mut p = OracleParams::zero();
    for &x in oracle.f_set() {
        p.j_map.insert(x, -((x & 1) as i64));
    }
    Ok(p)
}

fn f1_multiplier(params: &OracleParams, n0: usize) -> i64 {
    params.f1_multiplier.unwrap_or(n0 as i64)
}

fn check_m(oracle: &BooleanOracle, dims: &EnsembleDims) -> Result<()> {
    if dims.m() != oracle.m() {
        return validation(format!("dims have M = {}, oracle has M = {}", dims.m(), oracle.m()));
    }
    Ok(())
}

/// y-ensemble generator `π c (S^X₀ - N₀)/2`.
fn y_generator(n0: usize, c: f64) -> CMatrix {
    let d = n0 + 1;
    (spin_operator(Axis::X, n0) - CMatrix::identity(d, d) * Complex64::new(n0 as f64, 0.0))
        * Complex64::new(0.5 * PI * c, 0.0)
}

/// Coefficient `c(k)` multiplying `π(S^X₀ - N₀)/2` in the x-label sector `k`.
fn sector_coefficient(
    oracle: &BooleanOracle,
    params: &OracleParams,
    dims: &EnsembleDims,
    coeffs: Option<&OracleCoefficients>,
    k: &[usize],
) -> f64 {
    match oracle.constant_value() {
        Some(false) => 0.0,
        Some(true) => f1_multiplier(params, dims.n_y()) as f64 / dims.n_y() as f64,
        None => z_polynomial(coeffs.expect("balanced oracle has coefficients"), dims.n_x(), k),
    }
}

/// Dense mapped Hamiltonian on `[y, x_1..x_M]`:
/// `π((S^X₀ - N₀)/2) ⊗ Σ_z α_z Π_n (-S^Z_n/N_n)^{z_n}` for balanced oracles,
/// `πm(S^X₀ - N₀)/(2N₀)` for f = 1 and `0` for f = 0.
pub fn mapped_hamiltonian_m2(
    oracle: &BooleanOracle,
    params: &OracleParams,
    dims: &EnsembleDims,
    caps: &Caps,
) -> Result<CMatrix> {
    oracle.require_valid()?;
    check_m(oracle, dims)?;
    let full = dims.full_shape()?;
    full.ensure_within(caps.dense_matrix_dim, "dense mapped Hamiltonian")?;
    let coeffs = match oracle.class() {
        OracleClass::Balanced => Some(alpha_coefficients(oracle, params)?),
        _ => None,
    };
    let xs = dims.x_shape()?;
    let mut diag = CMatrix::zeros(xs.dim(), xs.dim());
    xs.for_each(|i, k| {
        diag[(i, i)] = Complex64::new(sector_coefficient(oracle, params, dims, coeffs.as_ref(), k), 0.0);
    });
    Ok(y_generator(dims.n_y(), 1.0).kronecker(&diag))
}

/// Classical mode on pole inputs `|y⟩⟩|x⟩⟩`; returns the y pole read out.
///
/// The mapped Hamiltonian is diagonal in the x-register Fock basis, so the
/// evolution is carried out exactly in the sector of the input label.
pub fn classical_mode_m2(
    oracle: &BooleanOracle,
    params: &OracleParams,
    x: usize,
    y: bool,
    dims: &EnsembleDims,
    caps: &Caps,
) -> Result<bool> {
    oracle.require_valid()?;
    params.validate_for(oracle)?;
    check_m(oracle, dims)?;
    let m = oracle.m();
    if x >= 1 << m {
        return validation(format!("x = {x} outside [0, 2^{m})"));
    }
    let n0 = dims.n_y();
    if n0 + 1 > caps.dense_matrix_dim {
        return Err(EqcError::CapExceeded { what: "y-ensemble generator", required: n0 + 1, cap: caps.dense_matrix_dim });
    }
    let coeffs = match oracle.class() {
        OracleClass::Balanced => Some(alpha_coefficients(oracle, params)?),
        _ => None,
    };
    let k: Vec<usize> = (1..=m).map(|n| bit(x, n) * dims.n_x()[n - 1]).collect();
    let c = sector_coefficient(oracle, params, dims, coeffs.as_ref(), &k);
    let u = expm_hermitian(&y_generator(n0, c), 1.0);
    let k_in = if y { n0 } else { 0 };
    let p_one = u[(n0, k_in)].norm_sqr();
    Ok(p_one > 0.5)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalPath {
    /// Product of per-ensemble cosine powers (linear Hamiltonians and constants).
    ClosedForm,
    /// Dense phase application on the full x-register.
    Dense,
}

#[derive(Clone, Debug)]
pub struct Method2Run {
    pub dims: EnsembleDims,
    pub params: OracleParams,
    /// `α_z`; all zero for constant oracles, whose action is a global phase.
    pub coeffs: OracleCoefficients,
    /// x-register after the closing Hadamards, when within the dense caps.
    pub final_state: Option<StateVector>,
    /// Probability of reading every x-ensemble at `|0,1⟩⟩`.
    pub p_init: LogReal,
    /// Global phase of the oracle on the initial state (`(-1)^m` for f = 1).
    pub global_phase: Complex64,
    pub path: EvalPath,
    pub decision: Decision,
}

fn dense_allowed(dims: &EnsembleDims, caps: &Caps) -> bool {
    dims.m() <= caps.m2_dense_max_m
        && dims.n_x().iter().all(|&n| n <= caps.m2_dense_max_n)
        && dims.x_shape().map(|s| s.dim() <= caps.state_dim).unwrap_or(false)
}

/// `Π_n cos^{2N_n}(πN₀α_n/N_n)` for a Hamiltonian linear in every `S^Z_n`.
fn linear_p_init(coeffs: &OracleCoefficients, dims: &EnsembleDims) -> LogReal {
    let n0 = dims.n_y() as f64;
    dims.n_x().iter().enumerate().fold(LogReal::ONE, |acc, (i, &n)| {
        let c = cos_pi(n0 * coeffs.linear(i + 1) / n as f64);
        acc * LogReal::from_f64(c).abs().powi(2 * n as u64)
    })
}

/// Diagonal action of the oracle on the x-register in quantum mode.
#[derive(Clone, Debug)]
pub struct XRegisterPhase {
    coeffs: OracleCoefficients,
    global_phase: Complex64,
    n0: f64,
    n_x: Vec<usize>,
}

impl XRegisterPhase {
    pub fn new(oracle: &BooleanOracle, params: &OracleParams, dims: &EnsembleDims) -> Result<Self> {
        oracle.require_valid()?;
        params.validate_for(oracle)?;
        check_m(oracle, dims)?;
        let (coeffs, global_phase) = match oracle.constant_value() {
            Some(false) => (OracleCoefficients::zero(oracle.m()), Complex64::new(1.0, 0.0)),
            Some(true) => {
                let m = f1_multiplier(params, dims.n_y());
                let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                (OracleCoefficients::zero(oracle.m()), Complex64::new(sign, 0.0))
            }
            None => (alpha_coefficients(oracle, params)?, Complex64::new(1.0, 0.0)),
        };
        Ok(XRegisterPhase { coeffs, global_phase, n0: dims.n_y() as f64, n_x: dims.n_x().to_vec() })
    }

    /// `e^{iφ(k)}` times the global phase of constant oracles.
    pub fn at(&self, k: &[usize]) -> Complex64 {
        self.global_phase * Complex64::from_polar(1.0, PI * self.n0 * z_polynomial(&self.coeffs, &self.n_x, k))
    }

    pub fn coeffs(&self) -> &OracleCoefficients {
        &self.coeffs
    }

    pub fn global_phase(&self) -> Complex64 {
        self.global_phase
    }
}

/// Quantum mode: phases on `⊗|1/√2,1/√2⟩⟩`, closing Hadamards, readout.
pub fn quantum_mode_m2(
    oracle: &BooleanOracle,
    params: &OracleParams,
    dims: &EnsembleDims,
    caps: &Caps,
) -> Result<Method2Run> {
    let phase = XRegisterPhase::new(oracle, params, dims)?;
    let final_state = if dense_allowed(dims, caps) {
        let start = plus_register(dims, caps.state_dim)?;
        Some(close_register(&start.apply_diagonal(|k| phase.at(k)))?)
    } else {
        None
    };
    let (p_init, path) = if phase.coeffs.is_linear() {
        (linear_p_init(&phase.coeffs, dims), EvalPath::ClosedForm)
    } else if let Some(f) = &final_state {
        (LogReal::from_f64(f.amps()[0].norm_sqr()), EvalPath::Dense)
    } else {
        let shape = dims.x_shape()?;
        return Err(EqcError::CapExceeded {
            what: "Method 2 dense path (oracle has higher-order terms)",
            required: shape.dim(),
            cap: caps.state_dim.min(
                (caps.m2_dense_max_n + 1).saturating_pow(caps.m2_dense_max_m as u32),
            ),
        });
    };
    let decision = if p_init > LogReal::from_f64(0.5) { Decision::Constant } else { Decision::Balanced };
    Ok(Method2Run {
        dims: dims.clone(),
        params: params.clone(),
        global_phase: phase.global_phase,
        coeffs: phase.coeffs,
        final_state,
        p_init,
        path,
        decision,
    })
}

/// Deutsch (M = 1) success probability `cos^{2N₁}(πN₀(2j+1)/(2N₁))`.
pub fn deutsch_probability(n0: u64, n1: u64, j: i64) -> Result<LogReal> {
    if n0 == 0 || n1 == 0 {
        return validation("deutsch_probability needs N0, N1 >= 1");
    }
    // angle/π = a/(2N₁); reducing a modulo 4N₁ keeps the quotient exact
    let a = i128::from(n0) * (2 * i128::from(j) + 1);
    let den = 2 * i128::from(n1);
    let c = cos_pi(a.rem_euclid(2 * den) as f64 / den as f64);
    Ok(LogReal::from_f64(c).abs().powi(2 * n1))
}
