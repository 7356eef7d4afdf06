//! Closed-form overlap curves `p^(m)`, error levels `ε^(m)` and their
//! exponential scaling fits.
//!
//! `p^(m)(τ) = |⟨ψ|exp(iπτ Π_{n≤m} S^Z_n)|ψ⟩|²` and
//! `ε^(m)(τ) = |⟨ψ|exp(iπτ Π_{n≤m} S^Z_n) exp(iπS^Z_1/2)|ψ⟩|²`
//! with `ψ = ⊗|1/√2,1/√2⟩⟩`. All sums run in the log domain.

use std::f64::consts::{LN_2, PI};

use crate::error::validation;
use crate::fock::ln_choose;
use crate::numeric::{cos_pi, golden_section_max, sin_pi};
use crate::{EqcError, LogReal, LogSum, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    /// Overlap probability `p^(m)`.
    Overlap,
    /// Error probability `ε^(m)`.
    Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSample {
    pub tau: f64,
    pub value: LogReal,
    pub m: usize,
    pub dims: Vec<usize>,
}

fn check_order(m: usize, dims: &[usize]) -> Result<()> {
    if !(1..=3).contains(&m) {
        return Err(EqcError::Capability(format!("closed forms exist for m in 1..=3, got {m}")));
    }
    if dims.len() < m {
        return validation(format!("order {m} needs {m} particle counts, got {}", dims.len()));
    }
    if dims[..m].contains(&0) {
        return validation("particle counts must be >= 1");
    }
    Ok(())
}

/// `Σ_{k} Π_i C(N_i,k_i)2^{-N_i} · trig(τ Π_i (2k_i - N_i))^power` over the
/// ensembles in `ns`.
fn binomial_trig_sum(ns: &[usize], tau: f64, power: u64, trig: fn(f64) -> f64) -> LogReal {
    let mut acc = LogSum::new();
    let mut k = vec![0usize; ns.len()];
    loop {
        let mut ln_w = 0.0;
        let mut s = 1.0;
        for (&kn, &n) in k.iter().zip(ns) {
            ln_w += ln_choose(n as u64, kn as u64) - n as f64 * LN_2;
            s *= 2.0 * kn as f64 - n as f64;
        }
        let t = LogReal::from_f64(trig(tau * s)).powi(power);
        acc.push(LogReal::from_ln(ln_w) * t);
        let mut i = ns.len();
        loop {
            if i == 0 {
                return acc.total();
            }
            i -= 1;
            if k[i] < ns[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
        }
    }
}

/// `p^(m)(τ)` for `dims = [N_1, .., N_m, ..]`.
pub fn p_m(tau: f64, m: usize, dims: &[usize]) -> Result<LogReal> {
    check_order(m, dims)?;
    if !tau.is_finite() {
        return Err(EqcError::Domain("tau must be finite".into()));
    }
    let n1 = dims[0] as u64;
    Ok(match m {
        1 => LogReal::from_f64(cos_pi(tau)).abs().powi(2 * n1),
        _ => {
            let a = binomial_trig_sum(&dims[..m - 1], tau, dims[m - 1] as u64, cos_pi);
            a * a
        }
    })
}

/// `ε^(m)(τ)`; exactly zero for `m ≥ 2` when `N_1` is odd.
pub fn epsilon_m(tau: f64, m: usize, dims: &[usize]) -> Result<LogReal> {
    check_order(m, dims)?;
    if !tau.is_finite() {
        return Err(EqcError::Domain("tau must be finite".into()));
    }
    let n1 = dims[0] as u64;
    Ok(match m {
        1 => LogReal::from_f64(sin_pi(tau)).abs().powi(2 * n1),
        _ if n1 % 2 == 1 => LogReal::ZERO,
        _ => {
            let a = binomial_trig_sum(&dims[1..m], tau, n1, sin_pi);
            a * a
        }
    })
}

/// Gaussian approximation `Σ_{|j|≤3} exp(-N₁π²(τ+j)²)` of `p^(1)`.
pub fn p1_gaussian(tau: f64, n1: usize) -> f64 {
    (-3..=3)
        .map(|j| {
            let d = tau + j as f64;
            (-(n1 as f64) * PI * PI * d * d).exp()
        })
        .sum()
}

pub fn sample_curve(kind: CurveKind, m: usize, dims: &[usize], taus: &[f64]) -> Result<Vec<CurveSample>> {
    taus.iter()
        .map(|&tau| {
            let value = match kind {
                CurveKind::Overlap => p_m(tau, m, dims)?,
                CurveKind::Error => epsilon_m(tau, m, dims)?,
            };
            Ok(CurveSample { tau, value, m, dims: dims[..m].to_vec() })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Epsilon1Estimate {
    /// `sin^{2N₁}(πτ)`.
    pub exact: LogReal,
    /// `(πτ)^{2N₁}`.
    pub approx: LogReal,
    /// `2 ln(π|τ|)`, the exponent per particle of the approximation.
    pub rate_per_particle: f64,
}

/// Exact and small-angle forms of the imperfect-rotation error `ε^(1)`.
pub fn epsilon1_estimate(tau: f64, n1: usize) -> Result<Epsilon1Estimate> {
    if !(tau.abs() < 0.5) {
        return Err(EqcError::Domain(format!("|tau| must be below 1/2, got {tau}")));
    }
    if n1 == 0 {
        return validation("N1 must be >= 1");
    }
    let exact = epsilon_m(tau, 1, &[n1])?;
    if tau == 0.0 {
        return Ok(Epsilon1Estimate { exact, approx: LogReal::ZERO, rate_per_particle: f64::NEG_INFINITY });
    }
    let rate = 2.0 * (PI * tau.abs()).ln();
    Ok(Epsilon1Estimate { exact, approx: LogReal::from_ln(rate * n1 as f64), rate_per_particle: rate })
}

/// Particle counts used for the partner ensembles `N_2, N_3` in a fit at
/// `N_1 = N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartnerSizes {
    /// `N_2 = N_3 = N`.
    Equal,
    /// `N_2 = N_3 = N + 1`.
    OddNeighbour,
    /// Largest error over every partner choice in `{N, N+1}`.
    Envelope,
}

impl PartnerSizes {
    fn offsets(self) -> &'static [usize] {
        match self {
            PartnerSizes::Equal => &[0],
            PartnerSizes::OddNeighbour => &[1],
            PartnerSizes::Envelope => &[0, 1],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitPoint {
    pub n: usize,
    /// `|τ|` and partner counts at which the maximum was found.
    pub tau_at_max: f64,
    pub partners: Vec<usize>,
    pub ln_eps_max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    pub m: usize,
    pub partners: PartnerSizes,
    pub n_grid: Vec<usize>,
    pub points: Vec<FitPoint>,
    pub slope: f64,
    pub intercept: f64,
    /// RMS of the residuals of `ln ε_max` about the line.
    pub residual: f64,
}

/// Default fit grid `{6, 8, .., 40}`.
pub fn default_fit_grid() -> Vec<usize> {
    (6..=40).step_by(2).collect()
}

fn check_grid(n_grid: &[usize]) -> Result<()> {
    if n_grid.len() < 4 {
        return Err(EqcError::Precondition(format!(
            "fit grid needs at least 4 points, got {}",
            n_grid.len()
        )));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EqcError::Precondition("fit grid must be strictly increasing".into()));
    }
    if let Some(n) = n_grid.iter().find(|&&n| n % 2 == 1 || n < 6) {
        return Err(EqcError::Precondition(format!(
            "fit grid entries must be even and >= 6 (odd N gives an exact zero), got {n}"
        )));
    }
    Ok(())
}

/// Maximum of `ε^(m)` over `|τ| ≤ 1/(2N^{m-1})` at `N_1 = N`.
pub fn epsilon_max(m: usize, n: usize, partners: PartnerSizes) -> Result<FitPoint> {
    let t_max = 0.5 / (n as f64).powi(m as i32 - 1);
    let mut best: Option<FitPoint> = None;
    let offs = partners.offsets();
    let combos: Vec<Vec<usize>> = match m {
        2 => offs.iter().map(|&a| vec![n + a]).collect(),
        3 => offs.iter().flat_map(|&a| offs.iter().map(move |&b| vec![n + a, n + b])).collect(),
        _ => return Err(EqcError::Capability(format!("fits are defined for m in {{2, 3}}, got {m}"))),
    };
    for p in combos {
        let mut dims = vec![n];
        dims.extend_from_slice(&p);
        // ε is even in τ, so the search runs on [0, T]
        let (tau, v) = golden_section_max(
            |t| epsilon_m(t, m, &dims).expect("validated dims"),
            0.0,
            t_max,
            1e-4 * t_max,
        );
        if v.is_zero() {
            return Err(EqcError::Precondition(format!("ε^({m}) vanishes for N = {n}, partners {p:?}")));
        }
        if best.as_ref().map_or(true, |b| v.ln_mag() > b.ln_eps_max) {
            best = Some(FitPoint { n, tau_at_max: tau, partners: p, ln_eps_max: v.ln_mag() });
        }
    }
    Ok(best.expect("at least one partner choice"))
}

/// Least-squares line through `(N, ln max ε^(m))` over `n_grid`.
pub fn fit_epsilon_scaling(m: usize, n_grid: &[usize], partners: PartnerSizes) -> Result<ScalingFit> {
    if !(2..=3).contains(&m) {
        return Err(EqcError::Capability(format!("fits are defined for m in {{2, 3}}, got {m}")));
    }
    check_grid(n_grid)?;
    let points = n_grid.iter().map(|&n| epsilon_max(m, n, partners)).collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.ln_eps_max).collect();
    let len = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / len, ys.iter().sum::<f64>() / len);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / len)
        .sqrt();
    Ok(ScalingFit { m, partners, n_grid: n_grid.to_vec(), points, slope, intercept, residual })
}
