//! Working-precision context threaded through every computation.

use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Complex, Float};

/// Bits per decimal digit, rounded up a little.
const LOG2_10: f64 = 3.321928094887363;

/// Immutable handle carrying the decimal working precision.
///
/// All operations receiving the same context and the same inputs produce
/// identical digit strings: the underlying MPFR/MPC arithmetic is correctly
/// rounded at a fixed bit precision derived from `digits + guard_digits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ctx {
    digits: u32,
    guard_digits: u32,
}

impl Ctx {
    pub const MIN_DIGITS: u32 = 30;
    pub const DEFAULT_DIGITS: u32 = 120;
    pub const DEFAULT_GUARD: u32 = 15;

    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard_digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidDigits(digits));
        }
        Ok(Ctx { digits, guard_digits })
    }

    pub fn default_ctx() -> Self {
        Ctx { digits: Self::DEFAULT_DIGITS, guard_digits: Self::DEFAULT_GUARD }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Bit precision used for all scalars created through this context.
    pub fn prec(&self) -> u32 {
        ((self.digits + self.guard_digits) as f64 * LOG2_10).ceil() as u32 + 8
    }

    /// Context with `digits` scaled by `factor` (used by the 1.5x
    /// self-validation retry rule).
    pub fn scaled(&self, factor: f64) -> Ctx {
        let digits = ((self.digits as f64) * factor).ceil() as u32;
        Ctx { digits: digits.max(Self::MIN_DIGITS), guard_digits: self.guard_digits }
    }

    /// Context with at least `digits` decimal digits.
    pub fn at_least(&self, digits: u32) -> Ctx {
        Ctx { digits: self.digits.max(digits), guard_digits: self.guard_digits }
    }

    // ---- constructors ----

    pub fn f(&self, v: impl Into<f64>) -> Float {
        Float::with_val(self.prec(), v.into())
    }

    pub fn f_u(&self, v: u64) -> Float {
        Float::with_val(self.prec(), v)
    }

    pub fn f_i(&self, v: i64) -> Float {
        Float::with_val(self.prec(), v)
    }

    pub fn zero(&self) -> Float {
        Float::with_val(self.prec(), 0)
    }

    pub fn c(&self, re: impl Into<f64>, im: impl Into<f64>) -> Complex {
        Complex::with_val(self.prec(), (re.into(), im.into()))
    }

    pub fn c_zero(&self) -> Complex {
        Complex::with_val(self.prec(), (0, 0))
    }

    pub fn c_from(&self, re: &Float, im: &Float) -> Complex {
        Complex::with_val(self.prec(), (re, im))
    }

    pub fn c_re(&self, re: &Float) -> Complex {
        Complex::with_val(self.prec(), (re, &self.zero()))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec(), rug::float::Constant::Pi)
    }

    /// i, at context precision.
    pub fn i(&self) -> Complex {
        Complex::with_val(self.prec(), (0, 1))
    }

    /// 2*pi*i, at context precision.
    pub fn two_pi_i(&self) -> Complex {
        let tp = self.pi() * 2u32;
        Complex::with_val(self.prec(), (&Float::with_val(self.prec(), 0), &tp))
    }

    /// Parse a decimal string at context precision.
    pub fn parse_f(&self, s: &str) -> Result<Float> {
        let parsed = Float::parse(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(Float::with_val(self.prec(), parsed))
    }

    // ---- tolerances ----

    /// 10^(-digits).
    pub fn eps(&self) -> Float {
        self.pow10(-(self.digits as i64))
    }

    /// 10^(-digits-5): the convergence target for solvers, tight enough
    /// that exported quantities satisfy the 1.5x-digits self-validation
    /// rule.
    pub fn solve_tol(&self) -> Float {
        self.pow10(-(self.digits as i64) - 5)
    }

    /// 10^(-(digits + guard) + 5): the target for quadrature error estimates.
    pub fn quad_tol(&self) -> Float {
        self.pow10(-((self.digits + self.guard_digits) as i64) + 5)
    }

    /// 10^e at context precision.
    pub fn pow10(&self, e: i64) -> Float {
        Float::with_val(self.prec(), 10).pow(e) // exact base, correctly rounded power
    }
}

impl Default for Ctx {
    fn default() -> Self {
        Self::default_ctx()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_digits() {
        assert_eq!(Ctx::new(10), Err(Error::InvalidDigits(10)));
        assert!(Ctx::new(30).is_ok());
    }

    #[test]
    fn determinism_same_digit_strings() {
        let ctx = Ctx::new(50).unwrap();
        let a = ctx.f(1) / ctx.f(3);
        let b = ctx.f(1) / ctx.f(3);
        assert_eq!(a.to_string_radix(10, None), b.to_string_radix(10, None));
    }

    #[test]
    fn pow10_scaling() {
        let ctx = Ctx::new(40).unwrap();
        let e = ctx.eps();
        assert!(e < ctx.f(1e-39) && e > ctx.f(1e-41));
    }
}
