mod common;

use common::*;
use eqcdj::oracle::{bit, enumerate_balanced};
use eqcdj::qubit::{classical_mode_qubits, run_dj_qubits};
use eqcdj::{BooleanOracle, Decision};
use std::f64::consts::FRAC_1_SQRT_2;

fn all_oracles(m: usize) -> Vec<BooleanOracle> {
    let mut v = vec![BooleanOracle::constant(m, false).unwrap(), BooleanOracle::constant(m, true).unwrap()];
    v.extend(enumerate_balanced(m).unwrap());
    v
}

#[test]
fn one_call_decides_every_oracle() {
    for m in 1..=3 {
        for oracle in all_oracles(m) {
            let r = run_dj_qubits(&oracle).unwrap();
            let ideal = if r.decision == Decision::Constant { 1.0 } else { 0.0 };
            assert!((r.p_x0 - ideal).abs() < 1e-12);
            assert!(r.decision.is_correct_for(oracle.class()));
        }
    }
}

#[test]
fn phase_kickback_state() {
    let s = FRAC_1_SQRT_2;
    let minus = vec![c(s, 0.0), c(-s, 0.0)];
    for m in 1..=3 {
        for oracle in enumerate_balanced(m).unwrap() {
            let mut want = vec![c(0.0, 0.0); 1 << (m + 1)];
            for x in 0..1usize << m {
                let mut factors = vec![minus.clone()];
                for n in 1..=m {
                    let mut q = vec![c(0.0, 0.0); 2];
                    q[bit(x, n)] = c(1.0, 0.0);
                    factors.push(q);
                }
                let sign = if oracle.eval(x) { -1.0 } else { 1.0 };
                let amp = sign / ((1usize << m) as f64).sqrt();
                for (w, v) in want.iter_mut().zip(kron_vec(&factors)) {
                    *w += v * amp;
                }
            }
            let got = run_dj_qubits(&oracle).unwrap().post_oracle;
            assert!(max_diff(got.amps(), &want) < 1e-12);
        }
    }
}

#[test]
fn classical_truth_tables() {
    let f4 = BooleanOracle::preset("f4").unwrap();
    assert!(classical_mode_qubits(&f4, false, 3).unwrap());
    assert!(!classical_mode_qubits(&f4, false, 1).unwrap());
    assert!(classical_mode_qubits(&BooleanOracle::constant(2, false).unwrap(), true, 2).unwrap());
    for m in 1..=3 {
        for oracle in all_oracles(m) {
            for x in 0..1usize << m {
                for y in [false, true] {
                    assert_eq!(classical_mode_qubits(&oracle, y, x).unwrap(), y ^ oracle.eval(x));
                }
            }
        }
    }
}
