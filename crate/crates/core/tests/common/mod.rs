//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use eqcdj::fock::CMatrix;
use nalgebra::DVector;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(-i t H)` by scaling and squaring of a truncated Taylor series.
pub fn expm_taylor(h: &CMatrix, t: f64) -> CMatrix {
    let d = h.nrows();
    let a = h * c(0.0, -t);
    let norm: f64 = a.iter().map(|x| x.norm()).fold(0.0, f64::max) * d as f64;
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let a = &a / c(2f64.powi(s), 0.0);
    let mut term = CMatrix::identity(d, d);
    let mut sum = CMatrix::identity(d, d);
    for k in 1..=30 {
        term = &term * &a / c(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Exact `C(n, k)` as a big integer.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// `ln` of a big integer from its top 64 bits and its bit length.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln n!` by compensated summation of `ln i`.
pub fn ln_factorial_sum(n: u64) -> f64 {
    let (mut s, mut comp) = (0.0f64, 0.0f64);
    for i in 2..=n {
        let y = (i as f64).ln() - comp;
        let t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    s
}

/// Dense Kronecker product of column vectors, first factor slowest.
pub fn kron_vec(factors: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut acc = vec![c(1.0, 0.0)];
    for f in factors {
        acc = acc.iter().flat_map(|a| f.iter().map(move |b| a * b)).collect();
    }
    acc
}

/// `I ⊗ .. ⊗ u ⊗ .. ⊗ I` with `u` at position `idx` among `dims`.
pub fn embed(u: &CMatrix, idx: usize, dims: &[usize]) -> CMatrix {
    let mut acc = CMatrix::identity(1, 1);
    for (i, &d) in dims.iter().enumerate() {
        let f = if i == idx { u.clone() } else { CMatrix::identity(d, d) };
        acc = acc.kronecker(&f);
    }
    acc
}

pub fn mat_vec(m: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (m * DVector::from_column_slice(v)).as_slice().to_vec()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Max difference after aligning global phase via `⟨a|b⟩`.
pub fn max_diff_up_to_phase(a: &[Complex64], b: &[Complex64]) -> f64 {
    let ov: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let rot = if ov.norm() > 0.0 { ov.conj() / ov.norm() } else { c(1.0, 0.0) };
    a.iter().zip(b).map(|(x, y)| (x - y * rot).norm()).fold(0.0, f64::max)
}

/// Coherent-state amplitudes by direct evaluation of the binomial expansion
/// (no log domain), usable for N ≤ 60.
pub fn coherent_direct(alpha: Complex64, beta: Complex64, n: usize) -> Vec<Complex64> {
    (0..=n)
        .map(|k| {
            let binom = binomial_big(n as u64, k as u64).to_f64().unwrap();
            alpha.powu(k as u32) * beta.powu((n - k) as u32) * binom.sqrt()
        })
        .collect()
}

/// Dense overlap `|⟨ψ|exp(iπτ Π S^Z_n) [exp(iπS^Z_1/2)]|ψ⟩|²` on the product
/// of `|1/√2,1/√2⟩⟩` states.
pub fn dense_overlap(tau: f64, dims: &[usize], with_half_turn: bool) -> f64 {
    let s = FRAC_1_SQRT_2;
    let psi = kron_vec(&dims.iter().map(|&n| coherent_direct(c(s, 0.0), c(s, 0.0), n)).collect::<Vec<_>>());
    let sz: Vec<Vec<f64>> = dims.iter().map(|&n| (0..=n).map(|k| 2.0 * k as f64 - n as f64).collect()).collect();
    let mut evolved = Vec::with_capacity(psi.len());
    let mut k = vec![0usize; dims.len()];
    for a in &psi {
        let prod: f64 = k.iter().enumerate().map(|(i, &ki)| sz[i][ki]).product();
        let mut phase = PI * tau * prod;
        if with_half_turn {
            phase += 0.5 * PI * sz[0][k[0]];
        }
        evolved.push(a * Complex64::from_polar(1.0, phase));
        // last factor fastest
        let mut i = dims.len();
        while i > 0 {
            i -= 1;
            if k[i] < dims[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
        }
    }
    psi.iter().zip(&evolved).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr()
}

/// Qubit x-register amplitudes `√2 ⟨-|_y ⟨k| final⟩` in Fock order.
pub fn qubit_x_register(oracle: &eqcdj::BooleanOracle) -> Vec<Complex64> {
    let m = oracle.m();
    let r = eqcdj::qubit::run_dj_qubits(oracle).unwrap();
    let xs = eqcdj::fock::Shape::new(vec![1; m]).unwrap();
    let mut out = vec![c(0.0, 0.0); xs.dim()];
    xs.for_each(|i, k| {
        let mut full = vec![0];
        full.extend_from_slice(k);
        let mut full1 = vec![1];
        full1.extend_from_slice(k);
        out[i] = (r.final_state.amp(&full).unwrap() - r.final_state.amp(&full1).unwrap()) * FRAC_1_SQRT_2;
    });
    out
}
