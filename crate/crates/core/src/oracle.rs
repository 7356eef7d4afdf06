//! Deutsch-Jozsa functions and their Hamiltonian realisations.
//!
//! Bit convention: `x_n` (n = 1..=M) is bit `n-1` of `x`, so `x_1` is the
//! least significant bit. Qubit registers are stored as `[y, x_1, .., x_M]`
//! with the last factor fastest, so `x_M` has unit stride.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::validation;
use crate::fock::{expm_hermitian, CMatrix};
use crate::{EqcError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleClass {
    Constant,
    Balanced,
    Invalid,
}

impl OracleClass {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleClass::Constant => "constant",
            OracleClass::Balanced => "balanced",
            OracleClass::Invalid => "invalid",
        }
    }
}

impl std::fmt::Display for OracleClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Value of bit `x_n` (1-based) of `x`.
pub fn bit(x: usize, n: usize) -> usize {
    (x >> (n - 1)) & 1
}

/// Storage offset of input `x` in an M-bit register laid out `[x_1..x_M]`.
pub fn register_offset(x: usize, m: usize) -> usize {
    (1..=m).fold(0, |acc, n| (acc << 1) | bit(x, n))
}

/// Classifies a truth table whose length is a power of two.
pub fn classify(table: &[bool]) -> Result<OracleClass> {
    if table.len() < 2 || !table.len().is_power_of_two() {
        return validation(format!(
            "truth table length {} is not a power of two >= 2",
            table.len()
        ));
    }
    let ones = table.iter().filter(|&&b| b).count();
    Ok(if ones == 0 || ones == table.len() {
        OracleClass::Constant
    } else if 2 * ones == table.len() {
        OracleClass::Balanced
    } else {
        OracleClass::Invalid
    })
}

/// Truth table of `f : [0, 2^M) → {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanOracle {
    m: usize,
    table: Vec<bool>,
    f_set: Vec<usize>,
    class: OracleClass,
}

pub const PRESETS: [&str; 7] = ["f1", "f2", "f3", "f4", "f5", "f6", "m3-entangled"];

impl BooleanOracle {
    pub fn from_table(table: Vec<bool>) -> Result<Self> {
        let class = classify(&table)?;
        let m = table.len().trailing_zeros() as usize;
        let f_set = table.iter().enumerate().filter(|(_, &b)| b).map(|(x, _)| x).collect();
        Ok(BooleanOracle { m, table, f_set, class })
    }

    pub fn from_set(m: usize, f_set: &[usize]) -> Result<Self> {
        if m == 0 || m >= usize::BITS as usize - 1 {
            return validation(format!("M = {m} out of range"));
        }
        let mut table = vec![false; 1 << m];
        for &x in f_set {
            if x >= table.len() {
                return validation(format!("x = {x} outside [0, 2^{m})"));
            }
            table[x] = true;
        }
        Self::from_table(table)
    }

    pub fn constant(m: usize, value: bool) -> Result<Self> {
        if m == 0 || m > 24 {
            return validation(format!("M = {m} out of range"));
        }
        Self::from_table(vec![value; 1 << m])
    }

    /// Parses one line of `0`/`1` characters, `f(0)` first.
    pub fn parse(text: &str) -> Result<Self> {
        let line = text.trim();
        if line.is_empty() {
            return validation("empty truth table");
        }
        let table = line
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(EqcError::Validation(format!("invalid truth-table character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(table)
    }

    /// Named oracles: `f1`..`f6` (the six balanced M=2 functions in
    /// lexicographic order) and `m3-entangled` (F = {0,1,2,4}).
    pub fn preset(name: &str) -> Result<Self> {
        let table = match name {
            "f1" => "0011",
            "f2" => "0101",
            "f3" => "0110",
            "f4" => "1001",
            "f5" => "1010",
            "f6" => "1100",
            "m3-entangled" => "11101000",
            _ => return validation(format!("unknown preset {name:?}; known: {}", PRESETS.join(", "))),
        };
        Self::parse(table)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// Sorted `F = {x : f(x) = 1}`.
    pub fn f_set(&self) -> &[usize] {
        &self.f_set
    }

    pub fn eval(&self, x: usize) -> bool {
        self.table[x]
    }

    pub fn class(&self) -> OracleClass {
        self.class
    }

    /// `Some(value)` for a constant oracle.
    pub fn constant_value(&self) -> Option<bool> {
        match self.class {
            OracleClass::Constant => Some(self.table[0]),
            _ => None,
        }
    }

    pub fn to_table_string(&self) -> String {
        self.table.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        if self.class == OracleClass::Invalid {
            validation(format!(
                "oracle {} is neither constant nor balanced",
                self.to_table_string()
            ))
        } else {
            Ok(())
        }
    }
}

/// Free integers of the oracle Hamiltonian family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleParams {
    /// `j_x` for `x ∈ F`; missing entries are 0.
    pub j_map: BTreeMap<usize, i64>,
    /// Constant oracles: `j` of `H = 2πj` (f = 0) or `j'` of the odd
    /// multiplier `2j'+1` (f = 1).
    pub j_const: i64,
    /// Method 2 only: multiplier `m` of `H = πm(S^X - N₀)/(2N₀)` for f = 1.
    /// `None` means `m = N₀`.
    pub f1_multiplier: Option<i64>,
}

impl OracleParams {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn with_j(mut self, x: usize, j: i64) -> Self {
        self.j_map.insert(x, j);
        self
    }

    pub fn validate_for(&self, oracle: &BooleanOracle) -> Result<()> {
        if let Some(x) = self.j_map.keys().find(|x| !oracle.eval_checked(**x)) {
            return validation(format!("j given for x = {x}, which is not in F"));
        }
        Ok(())
    }

    /// Odd weight `2j_x + 1` of input `x ∈ F`.
    pub fn weight(&self, oracle: &BooleanOracle, x: usize) -> i64 {
        let j = match oracle.constant_value() {
            Some(true) => *self.j_map.get(&x).unwrap_or(&self.j_const),
            _ => *self.j_map.get(&x).unwrap_or(&0),
        };
        2 * j + 1
    }
}

impl BooleanOracle {
    fn eval_checked(&self, x: usize) -> bool {
        x < self.table.len() && self.table[x]
    }
}

/// Coefficients `α_z` of the Pauli-Z expansion of `Σ_{x∈F}(2j_x+1)|x⟩⟨x|`.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleCoefficients {
    m: usize,
    alpha: Vec<f64>,
}

impl OracleCoefficients {
    /// All-zero coefficients (the `f = 0` oracle).
    pub fn zero(m: usize) -> Self {
        OracleCoefficients { m, alpha: vec![0.0; 1 << m] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn get(&self, z: usize) -> f64 {
        self.alpha[z]
    }

    /// `α_z` for the single-bit mask `z = 2^{n-1}`.
    pub fn linear(&self, n: usize) -> f64 {
        self.alpha[1 << (n - 1)]
    }

    /// True when every coefficient with two or more set bits vanishes.
    pub fn is_linear(&self) -> bool {
        self.alpha.iter().enumerate().all(|(z, a)| z.count_ones() < 2 || *a == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.alpha.iter().fold(0.0, |m, a| m.max(a.abs()))
    }
}

/// `α_z = 2^{-M} Σ_{x∈F} (2j_x+1)(-1)^{z·x}`.
pub fn alpha_coefficients(oracle: &BooleanOracle, params: &OracleParams) -> Result<OracleCoefficients> {
    oracle.require_valid()?;
    params.validate_for(oracle)?;
    if oracle.f_set().is_empty() {
        return validation("alpha coefficients need a non-empty F; f = 0 has H = 2πj");
    }
    let size = 1usize << oracle.m();
    let alpha = (0..size)
        .map(|z| {
            let s: i64 = oracle
                .f_set()
                .iter()
                .map(|&x| {
                    let w = params.weight(oracle, x);
                    if (z & x).count_ones() % 2 == 0 { w } else { -w }
                })
                .sum();
            s as f64 / size as f64
        })
        .collect();
    Ok(OracleCoefficients { m: oracle.m(), alpha })
}

fn cplx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Permutation `|y⟩|x⟩ → |y ⊕ f(x)⟩|x⟩`.
pub fn qubit_oracle_unitary(oracle: &BooleanOracle) -> CMatrix {
    let m = oracle.m();
    let dx = 1usize << m;
    let mut u = CMatrix::zeros(2 * dx, 2 * dx);
    for x in 0..dx {
        let r = register_offset(x, m);
        let f = usize::from(oracle.eval(x));
        for y in 0..2 {
            u[((y ^ f) * dx + r, y * dx + r)] = cplx(1.0);
        }
    }
    u
}

/// `π(σ^X - I)/2` on the y-qubit.
fn y_flip_generator() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[cplx(-0.5 * PI), cplx(0.5 * PI), cplx(0.5 * PI), cplx(-0.5 * PI)])
}

/// `H_f = π((σ^X₀ - I)/2) ⊗ Σ_{x∈F}(2j_x+1)|x⟩⟨x|`; `H = 2πj·I` for f = 0.
pub fn qubit_oracle_hamiltonian(oracle: &BooleanOracle, params: &OracleParams) -> Result<CMatrix> {
    oracle.require_valid()?;
    params.validate_for(oracle)?;
    let m = oracle.m();
    let dx = 1usize << m;
    if oracle.constant_value() == Some(false) {
        return Ok(CMatrix::identity(2 * dx, 2 * dx) * cplx(2.0 * PI * params.j_const as f64));
    }
    let mut diag = CMatrix::zeros(dx, dx);
    for &x in oracle.f_set() {
        let r = register_offset(x, m);
        diag[(r, r)] = cplx(params.weight(oracle, x) as f64);
    }
    Ok(y_flip_generator().kronecker(&diag))
}

/// `Σ_z α_z Π_n (σ^Z_n)^{z_n}` on the x-register, as a diagonal matrix.
pub fn z_expansion(coeffs: &OracleCoefficients) -> CMatrix {
    let m = coeffs.m();
    let dx = 1usize << m;
    let mut d = CMatrix::zeros(dx, dx);
    for x in 0..dx {
        let v: f64 = coeffs
            .alpha()
            .iter()
            .enumerate()
            .map(|(z, a)| if (z & x).count_ones() % 2 == 0 { *a } else { -*a })
            .sum();
        let r = register_offset(x, m);
        d[(r, r)] = cplx(v);
    }
    d
}

/// The expanded Hamiltonian `π((σ^X₀ - I)/2) ⊗ Σ_z α_z Π(σ^Z)^{z_n}`.
pub fn expanded_hamiltonian(coeffs: &OracleCoefficients) -> CMatrix {
    y_flip_generator().kronecker(&z_expansion(coeffs))
}

/// `‖e^{iθ} exp(-iH) - U_f‖_max` with the best single global phase θ.
pub fn verify_oracle(h: &CMatrix, oracle: &BooleanOracle) -> Result<f64> {
    let uf = qubit_oracle_unitary(oracle);
    if h.shape() != uf.shape() {
        return validation(format!(
            "Hamiltonian is {:?}, oracle unitary is {:?}",
            h.shape(),
            uf.shape()
        ));
    }
    let u = expm_hermitian(h, 1.0);
    let tr = (uf.adjoint() * &u).trace();
    let rot = if tr.norm() > 0.0 { tr.conj() / tr.norm() } else { cplx(1.0) };
    Ok(crate::fock::max_abs_diff(&(u * rot), &uf))
}

/// Iterator over every balanced M-bit oracle, lexicographic in the table
/// string (`f(0)` is the most significant character).
#[derive(Clone, Debug)]
pub struct BalancedIter {
    m: usize,
    next: u32,
    end: u32,
}

impl Iterator for BalancedIter {
    type Item = BooleanOracle;

    fn next(&mut self) -> Option<BooleanOracle> {
        let size = 1usize << self.m;
        while self.next < self.end {
            let v = self.next;
            self.next += 1;
            if v.count_ones() as usize * 2 == size {
                let table = (0..size).map(|i| (v >> (size - 1 - i)) & 1 == 1).collect();
                return Some(BooleanOracle::from_table(table).expect("balanced by construction"));
            }
        }
        None
    }
}

pub fn enumerate_balanced(m: usize) -> Result<BalancedIter> {
    if m == 0 {
        return validation("M must be >= 1");
    }
    if m > 4 {
        return Err(EqcError::Capability(format!(
            "enumerating balanced oracles is limited to M <= 4, got {m}"
        )));
    }
    Ok(BalancedIter { m, next: 0, end: 1u32 << (1 << m) })
}
