//! Acceptance criteria 1-10; one PASS/FAIL line per criterion.

mod common;

use common::*;
use eqcdj::analysis::{default_fit_grid, epsilon_m, epsilon_max, fit_epsilon_scaling, p_m, PartnerSizes};
use eqcdj::decoherence::{constant_signal, run_dj_with_dephasing, DephasingSpec, Method};
use eqcdj::fock::{
    coherent_state, commutator, max_abs_diff, rotation, spin_operator, unitarity_residual, Axis, Caps,
    DensityMatrix, EnsembleDims, Shape, StateVector,
};
use eqcdj::method1::quantum_mode_m1;
use eqcdj::method2::{deutsch_probability, quantum_mode_m2, recommended_params};
use eqcdj::oracle::{enumerate_balanced, qubit_oracle_hamiltonian, qubit_oracle_unitary};
use eqcdj::qubit::run_dj_qubits;
use eqcdj::{BooleanOracle, OracleClass, OracleParams};
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn all_oracles(m: usize) -> Vec<BooleanOracle> {
    let mut v = vec![BooleanOracle::constant(m, false).unwrap(), BooleanOracle::constant(m, true).unwrap()];
    v.extend(enumerate_balanced(m).unwrap());
    v
}

fn is_constant(o: &BooleanOracle) -> bool {
    o.class() == OracleClass::Constant
}

fn c1_qubit_correctness() -> Outcome {
    let mut runs = 0;
    let mut worst = 0.0f64;
    for m in 1..=3 {
        let oracles = all_oracles(m);
        ensure!(oracles.len() == 2 + [2, 6, 70][m - 1], "M={m}: {} oracles", oracles.len());
        for o in oracles {
            let r = run_dj_qubits(&o).map_err(|e| e.to_string())?;
            let ideal = if is_constant(&o) { 1.0 } else { 0.0 };
            worst = worst.max((r.p_x0 - ideal).abs());
            ensure!(r.decision.is_correct_for(o.class()), "wrong decision for {}", o.to_table_string());
            runs += 1;
        }
    }
    ensure!(worst < 1e-12, "max |p_x0 - ideal| = {worst:.3e}");
    Ok(format!("{runs} oracles, max |p_x0 - ideal| = {worst:.1e}"))
}

fn c2_oracle_synthesis() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut count = 0;
    for m in 1..=3 {
        for o in enumerate_balanced(m).unwrap() {
            let u = qubit_oracle_unitary(&o);
            for draw in 0..=50 {
                let params = if draw == 0 {
                    OracleParams::zero()
                } else {
                    o.f_set().iter().fold(OracleParams::zero(), |p, &x| p.with_j(x, rng.gen_range(-10..=10)))
                };
                let h = qubit_oracle_hamiltonian(&o, &params).map_err(|e| e.to_string())?;
                let d = max_abs_diff(&eqcdj::fock::expm_hermitian(&h, 1.0), &u);
                worst = worst.max(d);
                count += 1;
            }
        }
    }
    ensure!(worst < 1e-9, "max ‖exp(-iH) - U‖ = {worst:.3e}");
    Ok(format!("{count} Hamiltonians, max ‖exp(-iH) - U‖ = {worst:.1e}"))
}

fn c3_method1_exactness() -> Outcome {
    let caps = Caps::default();
    let (mut bal, mut con) = (0.0f64, 0.0f64);
    for n1 in 2..=4 {
        for n2 in 2..=4 {
            for n0 in [1, 3] {
                let dims = EnsembleDims::new(n0, vec![n1, n2]).unwrap();
                for o in all_oracles(2) {
                    let r = quantum_mode_m1(&o, &OracleParams::zero(), &dims, 1, &caps).map_err(|e| e.to_string())?;
                    if is_constant(&o) {
                        con = con.max((r.overlap_zero - 1.0).abs());
                    } else {
                        bal = bal.max(r.overlap_zero);
                    }
                }
            }
        }
    }
    ensure!(bal < 1e-10 && con < 1e-10, "balanced max {bal:.3e}, constant dev {con:.3e}");
    Ok(format!("balanced max overlap {bal:.1e}, constant max |1 - overlap| {con:.1e}"))
}

fn c4_deutsch_closed_form() -> Outcome {
    let p = deutsch_probability(1000, 1100, 0).map_err(|e| e.to_string())?;
    let lg = p.log10();
    ensure!((lg + 1863.0).abs() <= 1.0, "log10 p = {lg}");
    for n in [1, 10, 1000] {
        for j in [0, 1] {
            let q = deutsch_probability(n, n, j).map_err(|e| e.to_string())?;
            ensure!(q.is_zero(), "N0 = N1 = {n}, j = {j}: {q}");
        }
    }
    Ok(format!("log10 p(1000, 1100, 0) = {lg:.3}, equal-N cases exactly 0"))
}

fn c5_curves() -> Outcome {
    for n in [1, 5, 20, 100] {
        let p = p_m(0.5, 1, &[n]).map_err(|e| e.to_string())?;
        ensure!(p.is_zero(), "p1(1/2, {n}) = {p}");
    }
    for n in 1..=12 {
        let p = p_m(0.5, 2, &[n, n]).map_err(|e| e.to_string())?.to_f64();
        let want = if n % 2 == 0 { 1.0 } else { 0.0 };
        ensure!((p - want).abs() < 1e-12, "p2(1/2; {n},{n}) = {p}");
    }
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for m in 1..=3 {
        for _ in 0..20 {
            let dims: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=6)).collect();
            let tau = rng.gen_range(0.0..1.0);
            let p = p_m(tau, m, &dims).unwrap().to_f64();
            let e = epsilon_m(tau, m, &dims).unwrap().to_f64();
            worst = worst.max((p - dense_overlap(tau, &dims, false)).abs());
            worst = worst.max((e - dense_overlap(tau, &dims, true)).abs());
        }
    }
    ensure!(worst < 1e-9, "closed form vs dense {worst:.3e}");
    Ok(format!("zeros and even/odd dichotomy exact, closed form vs dense {worst:.1e}"))
}

fn grid_max(m: usize, dims: &[usize], t: f64) -> f64 {
    (0..=4000).map(|i| epsilon_m(-t + 2.0 * t * i as f64 / 4000.0, m, dims).unwrap().to_f64()).fold(0.0, f64::max)
}

fn c6_error_levels() -> Outcome {
    let e2 = epsilon_max(2, 20, PartnerSizes::Equal).map_err(|e| e.to_string())?.ln_eps_max.exp();
    let e3 = epsilon_max(3, 20, PartnerSizes::Equal).map_err(|e| e.to_string())?.ln_eps_max.exp();
    let g2 = grid_max(2, &[20, 20], 1.0 / 40.0);
    let g3 = grid_max(3, &[20, 20, 20], 1.0 / 800.0);
    let (m2, m3) = (e2.max(g2), e3.max(g3));
    ensure!(m2 <= 1e-6 && m3 <= 1e-13, "max ε2 = {m2:.3e}, max ε3 = {m3:.3e}");
    Ok(format!("max ε2 = {m2:.3e}, max ε3 = {m3:.3e}"))
}

fn c7_scaling_fits() -> Outcome {
    let grid = default_fit_grid();
    let f2 = fit_epsilon_scaling(2, &grid, PartnerSizes::Envelope).map_err(|e| e.to_string())?;
    let f3 = fit_epsilon_scaling(3, &grid, PartnerSizes::Envelope).map_err(|e| e.to_string())?;
    let summary = format!(
        "ε2 slope {:.4} intercept {:.3}; ε3 slope {:.4} intercept {:.3}",
        f2.slope, f2.intercept, f3.slope, f3.intercept
    );
    ensure!((f2.slope + 0.77).abs() <= 0.15 && (f2.intercept - 0.81).abs() <= 0.5, "{summary}");
    ensure!((f3.slope + 1.78).abs() <= 0.15 && (f3.intercept - 2.62).abs() <= 0.5, "{summary}");
    Ok(summary)
}

fn c8_decoherence() -> Outcome {
    let n = 8;
    let dims = EnsembleDims::uniform(2, n).unwrap();
    let caps = Caps::default();
    let grid = [0.0, 0.01, 0.1, 1.0];
    let mut worst = 0.0f64;
    for value in [false, true] {
        let o = BooleanOracle::constant(2, value).unwrap();
        for gt in grid {
            let spec = DephasingSpec::all_x(1.0, gt, 2).unwrap();
            let r = run_dj_with_dephasing(Method::One, &o, &OracleParams::zero(), &dims, &spec, &caps)
                .map_err(|e| e.to_string())?;
            worst = worst.max((r.signal - constant_signal(1.0, gt, 2)).abs());
        }
    }
    ensure!(worst < 1e-9, "constant signal deviation {worst:.3e}");
    let f4 = BooleanOracle::preset("f4").unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    for gt in grid {
        let spec = DephasingSpec::all_x(1.0, gt, 2).unwrap();
        let s = run_dj_with_dephasing(Method::One, &f4, &OracleParams::zero(), &dims, &spec, &caps)
            .map_err(|e| e.to_string())?
            .signal;
        if gt == 0.0 {
            ok &= s < 1e-10;
            notes.push(format!("S(0) = {s:.1e}"));
        } else if 2.0 * (n * n) as f64 * gt > 5.0 {
            ok &= (0.23..=0.35).contains(&s);
            notes.push(format!("S({gt}) = {s:.4}"));
        }
    }
    let summary = format!("constant deviation {worst:.1e}; balanced f4 {}", notes.join(", "));
    ensure!(ok, "{summary}; band [0.23, 0.35]");
    Ok(summary)
}

fn c9_qubit_limit() -> Outcome {
    let caps = Caps::default();
    let dims = EnsembleDims::uniform(2, 1).unwrap();
    let mut worst = 0.0f64;
    for o in all_oracles(2) {
        let want = qubit_x_register(&o);
        let m1 = quantum_mode_m1(&o, &OracleParams::zero(), &dims, 1, &caps).map_err(|e| e.to_string())?;
        worst = worst.max(max_diff_up_to_phase(m1.final_state.amps(), &want));
        let params = if is_constant(&o) { OracleParams::zero() } else { recommended_params(&o).unwrap() };
        let m2 = quantum_mode_m2(&o, &params, &dims, &caps).map_err(|e| e.to_string())?;
        let fin = m2.final_state.ok_or("Method 2 dense path unavailable")?;
        worst = worst.max(max_diff_up_to_phase(fin.amps(), &want));
    }
    ensure!(worst < 1e-10, "max amplitude difference {worst:.3e}");
    Ok(format!("8 oracles, both methods, max amplitude difference {worst:.1e}"))
}

/// Compact re-run of the invariants covered in depth by the property targets.
fn c10_property_invariants() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    for n in [1, 2, 7, 31, 64] {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let r = unitarity_residual(&rotation(axis, rng.gen_range(-6.0..6.0), n));
            ensure!(r < 1e-10, "unitarity N={n}: {r:.3e}");
        }
    }
    for n in 1..=20 {
        let (x, y, z) = (spin_operator(Axis::X, n), spin_operator(Axis::Y, n), spin_operator(Axis::Z, n));
        let d = max_abs_diff(&commutator(&x, &y), &(z * Complex64::new(0.0, 2.0)));
        ensure!(d < 1e-12, "commutator N={n}: {d:.3e}");
    }
    for _ in 0..100 {
        let n = rng.gen_range(1..=200);
        let th = rng.gen_range(0.0..std::f64::consts::PI);
        let psi = coherent_state(
            Complex64::from_polar((th / 2.0).cos(), rng.gen_range(-3.0..3.0)),
            Complex64::from_polar((th / 2.0).sin(), rng.gen_range(-3.0..3.0)),
            n,
        )
        .map_err(|e| e.to_string())?;
        ensure!((psi.norm_sqr() - 1.0).abs() < 1e-12, "normalization N={n}");
    }
    for _ in 0..20 {
        let shape = Shape::new(vec![rng.gen_range(1..=8), rng.gen_range(1..=8)]).unwrap();
        let amps: Vec<Complex64> =
            (0..shape.dim()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let psi = StateVector::new(shape, amps.iter().map(|a| a / norm).collect()).unwrap();
        let rho = DensityMatrix::from_pure(&psi, 512).unwrap();
        let spec = DephasingSpec::all_x(1.0, rng.gen_range(0.0..1.0), 2).unwrap();
        let out = eqcdj::decoherence::dephase(&rho, &spec).unwrap();
        ensure!(out.trace() == rho.trace(), "dephasing changed the trace");
        ensure!(out.min_eigenvalue() >= -1e-10, "dephasing broke positivity");
        let a = rng.gen_range(-2.0..2.0);
        let phase = |k: &[usize]| Complex64::from_polar(1.0, a * (k[0] * k[1]) as f64);
        let lhs = eqcdj::decoherence::dephase(&rho.apply_diagonal(phase), &spec).unwrap();
        let rhs = out.apply_diagonal(phase);
        let d = lhs.matrix().iter().zip(rhs.matrix().iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        ensure!(d < 1e-12, "dephasing/phase commutation {d:.3e}");
    }
    let f = BooleanOracle::preset("m3-entangled").unwrap();
    let dims = EnsembleDims::uniform(3, 5).unwrap();
    let params = recommended_params(&f).unwrap();
    let a = quantum_mode_m2(&f, &params, &dims, &Caps::default()).unwrap();
    let b = quantum_mode_m2(&f, &params, &dims, &Caps::default()).unwrap();
    ensure!(a.p_init == b.p_init && a.final_state == b.final_state, "repeat runs differ");
    let fit_a = fit_epsilon_scaling(2, &[6, 8, 10, 12], PartnerSizes::Envelope).unwrap();
    let fit_b = fit_epsilon_scaling(2, &[6, 8, 10, 12], PartnerSizes::Envelope).unwrap();
    ensure!(fit_a == fit_b, "repeat fits differ");
    Ok("unitarity, normalization, commutators, dephasing channel, commutation, determinism".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("C1 qubit correctness", c1_qubit_correctness, Duration::from_secs(10)),
        ("C2 oracle synthesis", c2_oracle_synthesis, Duration::from_secs(30)),
        ("C3 Method 1 exactness", c3_method1_exactness, Duration::from_secs(30)),
        ("C4 Deutsch closed form", c4_deutsch_closed_form, Duration::from_secs(1)),
        ("C5 curve reproduction", c5_curves, Duration::from_secs(60)),
        ("C6 error levels", c6_error_levels, Duration::from_secs(60)),
        ("C7 scaling fits", c7_scaling_fits, Duration::from_secs(300)),
        ("C8 decoherence signals", c8_decoherence, Duration::from_secs(60)),
        ("C9 qubit-limit reduction", c9_qubit_limit, Duration::from_secs(5)),
        ("C10 property invariants", c10_property_invariants, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > budget => Err(format!("{msg}; over budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("[PASS] {name} ({:.2} s): {msg}", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name} ({:.2} s): {msg}", took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
