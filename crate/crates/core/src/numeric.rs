//! Exact rational helpers for parameters and geometric grids.

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Non-negative exact rational used for δ, ε and ε*.
pub type Rational = Ratio<u64>;

/// Parses `"0.25"`, `"1/4"`, `"3"` or `"1e-1"` into an exact rational.
/// Decimal notation is read digit by digit, so `"0.1"` is exactly 1/10.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a non-negative rational: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: u64 = digits.parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let mut den: u64 = 1;
    if scale >= 0 {
        num = num
            .checked_mul(10u64.checked_pow(scale as u32).ok_or_else(bad)?)
            .ok_or_else(bad)?;
    } else {
        den = 10u64.checked_pow((-scale) as u32).ok_or_else(bad)?;
    }
    Ok(Ratio::new(num, den))
}

/// Nearest-rational conversion for values that arrive as floats.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Parse(format!("not a non-negative finite number: {x}")));
    }
    parse_rational(&format!("{x}"))
}

pub fn to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// `⌈n^q⌉` computed exactly: the least integer `t` with `t^den ≥ n^num`.
pub fn ceil_pow(n: usize, q: &Rational) -> usize {
    if n <= 1 || q.is_zero() {
        return 1;
    }
    let (a, b) = (*q.numer(), *q.denom());
    let target = BigUint::from(n).pow(a as u32);
    let reaches = |t: usize| BigUint::from(t).pow(b as u32) >= target;
    let guess = (n as f64).powf(a as f64 / b as f64).ceil() as usize;
    let mut t = guess.max(1);
    while t > 1 && reaches(t - 1) {
        t -= 1;
    }
    while !reaches(t) {
        t += 1;
    }
    t
}

/// `⌈1/q⌉` for positive `q`.
pub fn ceil_recip(q: &Rational) -> u64 {
    let (a, b) = (*q.numer(), *q.denom());
    b.div_ceil(a)
}

/// Iterator over `⌊(1+q)^k⌋` for `k = 0, 1, 2, …`, exact.
#[derive(Clone, Debug)]
pub struct GeometricFloors {
    step_num: BigUint,
    step_den: BigUint,
    num: BigUint,
    den: BigUint,
}

impl GeometricFloors {
    pub fn new(q: &Rational) -> Self {
        let (a, b) = (BigUint::from(*q.numer()), BigUint::from(*q.denom()));
        GeometricFloors {
            step_num: &a + &b,
            step_den: b,
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    /// Saturates at `u64::MAX` for values beyond 64 bits.
    fn floor(&self) -> u64 {
        (&self.num / &self.den).to_u64().unwrap_or(u64::MAX)
    }
}

impl Iterator for GeometricFloors {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let value = self.floor();
        self.num *= &self.step_num;
        self.den *= &self.step_den;
        // Keep the pair small when the step reduces.
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
        Some(value)
    }
}

/// `⌊(1+q)^k⌋` by repeated exact multiplication, clamped to `cap`.
pub fn pow_floor(q: &Rational, k: u32, cap: u64) -> u64 {
    let (a, b) = (BigUint::from(*q.numer()), BigUint::from(*q.denom()));
    let step = &a + &b;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for _ in 0..k {
        num *= &step;
        den *= &b;
        if &num / &den > BigUint::from(cap) {
            return cap;
        }
    }
    (num / den).to_u64().unwrap_or(u64::MAX).min(cap)
}
