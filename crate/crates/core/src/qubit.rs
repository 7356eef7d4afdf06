//! Textbook qubit Deutsch-Jozsa circuit, the reference for both ensemble
//! encodings.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::validation;
use crate::fock::{CMatrix, Shape, StateVector, DEFAULT_STATE_CAP};
use crate::oracle::{qubit_oracle_unitary, register_offset, BooleanOracle};
use crate::{Decision, Result};

#[derive(Clone, Debug)]
pub struct CircuitResult {
    /// State on `[y, x_1..x_M]` just after the oracle call.
    pub post_oracle: StateVector,
    /// State after the closing Hadamards on the x-register.
    pub final_state: StateVector,
    /// Probability that every x qubit reads 0.
    pub p_x0: f64,
    pub decision: Decision,
}

/// `[[1, 1], [1, -1]]/√2`.
pub fn qubit_hadamard() -> CMatrix {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    CMatrix::from_row_slice(2, 2, &[s, s, s, -s])
}

fn apply_matrix(u: &CMatrix, psi: &StateVector) -> StateVector {
    let v = u * DVector::from_column_slice(psi.amps());
    StateVector::new(psi.shape().clone(), v.as_slice().to_vec()).expect("same dimension")
}

/// Runs `|1⟩|0..0⟩ → H^{⊗(M+1)} → U_f → H^{⊗M}` and reads `x = 0`.
pub fn run_dj_qubits(oracle: &BooleanOracle) -> Result<CircuitResult> {
    oracle.require_valid()?;
    let m = oracle.m();
    let shape = Shape::new(vec![1; m + 1])?;
    shape.ensure_within(DEFAULT_STATE_CAP, "qubit register")?;
    let mut start = vec![0; m + 1];
    start[0] = 1;
    let h = qubit_hadamard();
    let mut psi = StateVector::basis(shape, &start)?;
    for q in 0..=m {
        psi = psi.apply_local(&h, q)?;
    }
    let post_oracle = apply_matrix(&qubit_oracle_unitary(oracle), &psi);
    let mut final_state = post_oracle.clone();
    for q in 1..=m {
        final_state = final_state.apply_local(&h, q)?;
    }
    let dx = 1usize << m;
    let p_x0 = final_state.amps()[0].norm_sqr() + final_state.amps()[dx].norm_sqr();
    let decision = if p_x0 > 0.5 { Decision::Constant } else { Decision::Balanced };
    Ok(CircuitResult { post_oracle, final_state, p_x0, decision })
}

/// Applies `U_f` to `|y⟩|x⟩` and reads back the y qubit.
pub fn classical_mode_qubits(oracle: &BooleanOracle, y: bool, x: usize) -> Result<bool> {
    let m = oracle.m();
    let dx = 1usize << m;
    if x >= dx {
        return validation(format!("x = {x} outside [0, 2^{m})"));
    }
    let mut k = vec![0; m + 1];
    k[0] = usize::from(y);
    for (n, kn) in k.iter_mut().enumerate().skip(1) {
        *kn = crate::oracle::bit(x, n);
    }
    let psi = StateVector::basis(Shape::new(vec![1; m + 1])?, &k)?;
    let out = apply_matrix(&qubit_oracle_unitary(oracle), &psi);
    let idx = out.amps().iter().position(|a| a.norm() > 0.5).expect("permutation output");
    debug_assert_eq!(idx % dx, register_offset(x, m));
    Ok(idx / dx == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_mode_examples() {
        let zero = BooleanOracle::constant(2, false).unwrap();
        assert!(classical_mode_qubits(&zero, true, 2).unwrap());
        let f4 = BooleanOracle::preset("f4").unwrap();
        assert!(classical_mode_qubits(&f4, false, 3).unwrap());
        assert!(!classical_mode_qubits(&f4, false, 1).unwrap());
        assert!(classical_mode_qubits(&f4, false, 4).is_err());
    }

    #[test]
    fn constants_and_f4() {
        for v in [false, true] {
            let r = run_dj_qubits(&BooleanOracle::constant(3, v).unwrap()).unwrap();
            assert!((r.p_x0 - 1.0).abs() < 1e-12);
        }
        let r = run_dj_qubits(&BooleanOracle::preset("f4").unwrap()).unwrap();
        assert!(r.p_x0 < 1e-12);
        assert_eq!(r.decision, Decision::Balanced);
        assert!(run_dj_qubits(&BooleanOracle::parse("0111").unwrap()).is_err());
    }
}
