use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Signed real stored as `sign · exp(ln_mag)`.
///
/// Used wherever probabilities fall far below `f64::MIN_POSITIVE`
/// (e.g. `cos^{2200}` of an angle near π/2). Zero is `sign == 0` and its
/// `ln_mag` is always `-inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogReal {
    sign: i8,
    ln_mag: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal { sign: 0, ln_mag: f64::NEG_INFINITY };
    pub const ONE: LogReal = LogReal { sign: 1, ln_mag: 0.0 };

    /// Builds `sign · e^{ln_mag}`. Any sign other than ±1, or a magnitude of
    /// `-inf`, yields zero.
    pub fn new(sign: i8, ln_mag: f64) -> Self {
        if sign == 0 || ln_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        debug_assert!(!ln_mag.is_nan(), "LogReal magnitude is NaN");
        LogReal { sign: sign.signum(), ln_mag }
    }

    /// Positive value `e^{ln_mag}`.
    pub fn from_ln(ln_mag: f64) -> Self {
        Self::new(1, ln_mag)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    /// Plain value; underflows to ±0 and overflows to ±inf.
    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.ln_mag.exp(),
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln_mag(self) -> f64 {
        self.ln_mag
    }

    /// Base-10 log of the magnitude; `-inf` for zero.
    pub fn log10(self) -> f64 {
        self.ln_mag / std::f64::consts::LN_10
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        LogReal { sign: self.sign.abs(), ln_mag: self.ln_mag }
    }

    /// Integer power; `x^0 = 1` including `0^0`.
    pub fn powi(self, e: u64) -> Self {
        if e == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && e % 2 == 1 { -1 } else { 1 };
        Self::new(sign, self.ln_mag * e as f64)
    }
}

impl Default for LogReal {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        LogReal::new(self.sign * rhs.sign, self.ln_mag + rhs.ln_mag)
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.ln_mag >= rhs.ln_mag { (self, rhs) } else { (rhs, self) };
        let r = (small.ln_mag - big.ln_mag).exp();
        if big.sign == small.sign {
            LogReal::new(big.sign, big.ln_mag + r.ln_1p())
        } else if r == 1.0 {
            Self::ZERO
        } else {
            LogReal::new(big.sign, big.ln_mag + (-r).ln_1p())
        }
    }
}

impl Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal { sign: -self.sign, ln_mag: self.ln_mag }
    }
}

impl Sub for LogReal {
    type Output = LogReal;
    fn sub(self, rhs: LogReal) -> LogReal {
        self + (-rhs)
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.ln_mag.partial_cmp(&other.ln_mag),
                _ => other.ln_mag.partial_cmp(&self.ln_mag),
            },
            ord => Some(ord),
        }
    }
}

impl std::iter::Sum for LogReal {
    fn sum<I: Iterator<Item = LogReal>>(iter: I) -> LogReal {
        let mut acc = LogSum::new();
        for x in iter {
            acc.push(x);
        }
        acc.total()
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => {
                let l10 = self.log10();
                let e = l10.floor();
                let m = 10f64.powf(l10 - e);
                write!(f, "{}{}e{}", if s < 0 { "-" } else { "" }, m, e as i64)
            }
        }
    }
}

/// Accumulates many `LogReal` terms, then sums them in the linear domain
/// after rescaling by the largest magnitude, with Neumaier compensation.
#[derive(Clone, Debug, Default)]
pub struct LogSum {
    terms: Vec<LogReal>,
}

impl LogSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: LogReal) {
        if !x.is_zero() {
            self.terms.push(x);
        }
    }

    /// Adds `sign · exp(ln_mag)`.
    pub fn push_ln(&mut self, sign: i8, ln_mag: f64) {
        self.push(LogReal::new(sign, ln_mag));
    }

    pub fn total(&self) -> LogReal {
        let max = self
            .terms
            .iter()
            .map(|t| t.ln_mag)
            .fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            return LogReal::ZERO;
        }
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for t in &self.terms {
            let v = f64::from(t.sign) * (t.ln_mag - max).exp();
            let s = sum + v;
            if sum.abs() >= v.abs() {
                comp += (sum - s) + v;
            } else {
                comp += (v - s) + sum;
            }
            sum = s;
        }
        let mut r = LogReal::from_f64(sum + comp);
        r.ln_mag += max;
        r
    }
}
