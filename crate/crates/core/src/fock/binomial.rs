use crate::{EqcError, LogReal, Result};

/// `ln(n!)` for n ≤ 15; beyond that the Stirling-with-correction form is used.
const SMALL: usize = 16;

fn ln_factorial_small(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Stirling remainder `ln n! - (n ln n - n + ½ ln 2πn)`.
fn stirlerr(n: u64) -> f64 {
    if (n as usize) < SMALL {
        let x = n as f64;
        return ln_factorial_small(n as usize)
            - (x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln());
    }
    let x = n as f64;
    let x2 = x * x;
    (1.0 / 12.0
        - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * x2)) / x2) / x2) / x2)
        / x
}

/// Exact `C(n,k)` when it fits in 64 bits (always true for n ≤ 60).
fn exact_choose(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// `ln C(n, k)` for `0 ≤ k ≤ n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    assert!(k <= n, "ln_choose: k={k} > n={n}");
    if k == 0 || k == n {
        return 0.0;
    }
    if n <= 60 {
        if let Some(c) = exact_choose(n, k) {
            return (c as f64).ln();
        }
    }
    let (k, m) = if k <= n - k { (k, n - k) } else { (n - k, k) };
    let (kf, mf, nf) = (k as f64, m as f64, n as f64);
    kf * (mf / kf).ln_1p() + mf * (kf / mf).ln_1p()
        + 0.5 * (nf / (2.0 * std::f64::consts::PI * kf * mf)).ln()
        + stirlerr(n)
        - stirlerr(k)
        - stirlerr(m)
}

/// `C(n, k)` as a [`LogReal`].
pub fn log_binomial(n: i64, k: i64) -> Result<LogReal> {
    if n < 0 || k < 0 || k > n {
        return Err(EqcError::Domain(format!("binomial C({n},{k}) needs 0 <= k <= n")));
    }
    Ok(LogReal::from_ln(ln_choose(n as u64, k as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(log_binomial(0, 0).unwrap().ln_mag(), 0.0);
        assert!((log_binomial(4, 2).unwrap().ln_mag() - 6f64.ln()).abs() < 1e-15);
        assert!(matches!(log_binomial(3, 4), Err(EqcError::Domain(_))));
        assert!(matches!(log_binomial(3, -1), Err(EqcError::Domain(_))));
    }

    #[test]
    fn stirling_branch_agrees_with_exact_near_the_switch() {
        for n in 40..=60u64 {
            for k in 1..n {
                let exact = (exact_choose(n, k).unwrap() as f64).ln();
                let (kk, m) = if k <= n - k { (k, n - k) } else { (n - k, k) };
                let (kf, mf, nf) = (kk as f64, m as f64, n as f64);
                let approx = kf * (mf / kf).ln_1p() + mf * (kf / mf).ln_1p()
                    + 0.5 * (nf / (2.0 * std::f64::consts::PI * kf * mf)).ln()
                    + stirlerr(n)
                    - stirlerr(kk)
                    - stirlerr(m);
                assert!((approx - exact).abs() <= 1e-13 * exact.max(1.0), "n={n} k={k}");
            }
        }
    }
}
