//! Collective dephasing of the x-register during the oracle and the
//! readout signal `S = Π_n (1 - ⟨S^Z_n⟩/N_n)/2`.
//!
//! With `k = 0` as logical 0, the ideal constant outcome `⊗|0,1⟩⟩` has
//! `⟨S^Z_n⟩ = -N_n`, hence the minus sign: it gives `S = 1`.

use std::fmt;

use num_complex::Complex64;

use crate::error::validation;
use crate::fock::{CMatrix, Caps, DensityMatrix, EnsembleDims, hadamard_inverse, spin_operator, Axis};
use crate::method1::{check_k0, oracle_sign_m1, plus_register};
use crate::method2::XRegisterPhase;
use crate::oracle::{BooleanOracle, OracleParams};
use crate::{Decision, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DephasingSpec {
    pub gamma: f64,
    pub t: f64,
    /// 1-based x-register labels; the y-ensemble is never dephased.
    pub targets: Vec<usize>,
}

impl DephasingSpec {
    pub fn new(gamma: f64, t: f64, targets: Vec<usize>) -> Result<Self> {
        if !(gamma >= 0.0 && t >= 0.0) || !(gamma * t).is_finite() {
            return validation(format!("need finite gamma >= 0 and t >= 0, got gamma={gamma}, t={t}"));
        }
        if targets.contains(&0) {
            return validation("dephasing targets are 1-based x-register labels");
        }
        Ok(DephasingSpec { gamma, t, targets })
    }

    /// Dephasing on every ensemble `1..=m`.
    pub fn all_x(gamma: f64, t: f64, m: usize) -> Result<Self> {
        Self::new(gamma, t, (1..=m).collect())
    }

    pub fn gamma_t(&self) -> f64 {
        self.gamma * self.t
    }
}

/// `ρ_{kk'} → ρ_{kk'} exp(-2Γt Σ_{n∈targets}(k_n - k'_n)²)`.
pub fn dephase(rho: &DensityMatrix, spec: &DephasingSpec) -> Result<DensityMatrix> {
    let m = rho.shape().len();
    if let Some(t) = spec.targets.iter().find(|&&t| t > m) {
        return validation(format!("dephasing target {t} outside 1..={m}"));
    }
    let rate = 2.0 * spec.gamma_t();
    let idx: Vec<usize> = spec.targets.iter().map(|t| t - 1).collect();
    Ok(rho.scale_entries(|k, kp| {
        let d: f64 = idx.iter().map(|&i| (k[i] as f64 - kp[i] as f64).powi(2)).sum();
        if d == 0.0 { 1.0 } else { (-rate * d).exp() }
    }))
}

/// `Π_n (1 - ⟨S^Z_n⟩/N_n)/2` on the state at the end of the circuit.
pub fn signal(rho: &DensityMatrix) -> f64 {
    (0..rho.shape().len())
        .map(|i| 0.5 * (1.0 - rho.expectation_sz(i) / rho.shape().counts()[i] as f64))
        .product()
}

/// Same signal read from the state right after the oracle,
/// `Π_n (1 + ⟨S^X_n⟩/N_n)/2`.
pub fn signal_post_oracle(rho: &DensityMatrix) -> f64 {
    let shape = rho.shape();
    (0..shape.len())
        .map(|i| {
            let n = shape.counts()[i];
            let sx = local_expectation(rho, &spin_operator(Axis::X, n), i);
            0.5 * (1.0 + sx / n as f64)
        })
        .product()
}

/// `Re tr(ρ (op ⊗ I))` for an operator on ensemble `idx`.
fn local_expectation(rho: &DensityMatrix, op: &CMatrix, idx: usize) -> f64 {
    let shape = rho.shape();
    let stride = shape.stride(idx);
    let d = shape.local_dim(idx);
    let m = rho.matrix();
    let mut acc = Complex64::new(0.0, 0.0);
    shape.for_each(|col, k| {
        // (op ⊗ I)|k⟩ only changes the idx-th label
        for r in 0..d {
            let o = op[(r, k[idx])];
            if o.norm() != 0.0 {
                let row = col + r * stride - k[idx] * stride;
                acc += m[(col, row)] * o;
            }
        }
    });
    acc.re
}

/// `[(1 + e^{-2Γt})/2]^M`.
pub fn constant_signal(gamma: f64, t: f64, m: usize) -> f64 {
    (0.5 * (1.0 + (-2.0 * gamma * t).exp())).powi(m as i32)
}

/// First-order form `1 - ΓMt`.
pub fn constant_signal_first_order(gamma: f64, t: f64, m: usize) -> f64 {
    1.0 - gamma * m as f64 * t
}

/// Midpoint `(1 + 2^{-M})/2` between the ideal constant signal and the fully
/// mixed value.
pub fn decision_threshold(m: usize) -> f64 {
    0.5 * (1.0 + 0.5f64.powi(m as i32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Parity encoding, y-ensemble in `|k₀ = 1⟩` of the `S^X` basis.
    One,
    /// Coherent-state encoding.
    Two,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::One => "1",
            Method::Two => "2",
        })
    }
}

#[derive(Clone, Debug)]
pub struct DephasedRun {
    pub signal: f64,
    /// The signal evaluated on the post-oracle state through `⟨S^X⟩`.
    pub signal_post_oracle: f64,
    pub decision: Decision,
    pub final_rho: DensityMatrix,
}

/// Oracle phases, dephasing, closing Hadamards, signal.
pub fn run_dj_with_dephasing(
    method: Method,
    oracle: &BooleanOracle,
    params: &OracleParams,
    dims: &EnsembleDims,
    spec: &DephasingSpec,
    caps: &Caps,
) -> Result<DephasedRun> {
    oracle.require_valid()?;
    params.validate_for(oracle)?;
    if dims.m() != oracle.m() {
        return validation(format!("dims have M = {}, oracle has M = {}", dims.m(), oracle.m()));
    }
    let psi = plus_register(dims, caps.state_dim)?;
    let rho0 = DensityMatrix::from_pure(&psi, caps.density_dim)?;
    let after_oracle = match method {
        Method::One => {
            check_k0(1, dims.n_y())?;
            rho0.apply_diagonal(|k| Complex64::new(oracle_sign_m1(oracle, params, 1, k), 0.0))
        }
        Method::Two => {
            let phase = XRegisterPhase::new(oracle, params, dims)?;
            rho0.apply_diagonal(|k| phase.at(k))
        }
    };
    let dephased = dephase(&after_oracle, spec)?;
    let mut rho = dephased.clone();
    for (i, &n) in dims.n_x().iter().enumerate() {
        rho = rho.apply_local(&hadamard_inverse(n), i)?;
    }
    let s = signal(&rho);
    let decision = if s > decision_threshold(dims.m()) { Decision::Constant } else { Decision::Balanced };
    Ok(DephasedRun { signal: s, signal_post_oracle: signal_post_oracle(&dephased), decision, final_rho: rho })
}
