//! Small numeric helpers shared by the closed forms.

/// Reduces `x` to `[-1, 1)` modulo 2; exact in floating point.
fn reduce_mod2(x: f64) -> f64 {
    let r = x % 2.0;
    if r >= 1.0 {
        r - 2.0
    } else if r < -1.0 {
        r + 2.0
    } else {
        r
    }
}

/// `cos(πx)`, exactly zero at half-integers and exactly ±1 at integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = reduce_mod2(x);
    let a = r.abs();
    if a == 0.5 {
        0.0
    } else if a == 0.0 {
        1.0
    } else if a == 1.0 {
        -1.0
    } else {
        (std::f64::consts::PI * r).cos()
    }
}

/// `sin(πx)`, exactly zero at integers and exactly ±1 at half-integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = reduce_mod2(x);
    if r == 0.0 || r == -1.0 {
        0.0
    } else if r == 0.5 {
        1.0
    } else if r == -0.5 {
        -1.0
    } else {
        (std::f64::consts::PI * r).sin()
    }
}

/// Locates the maximum of a unimodal `f` on `[a, b]` by golden-section
/// search until the bracket is narrower than `tol`. Endpoints are compared
/// too, so a monotone `f` returns the larger endpoint.
pub fn golden_section_max<T, F>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, T)
where
    T: PartialOrd + Copy,
    F: FnMut(f64) -> T,
{
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    let mut best = if f1 < f2 { (x2, f2) } else { (x1, f1) };
    for x in [a, b] {
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}
