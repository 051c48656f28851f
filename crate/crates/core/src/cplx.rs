//! Complex scalar type and small helpers.
//!
//! `BigComplex` is `rug::Complex` (MPC): correctly rounded arbitrary-precision
//! complex arithmetic with principal-branch elementary functions. Branch
//! control beyond the principal cut lives in [`crate::branch`].

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use rug::{Complex, Float};

pub type BigComplex = Complex;

/// Both parts finite; rejects NaN/infinity escaping an operation.
pub fn ensure_finite(z: &Complex, what: &'static str) -> Result<()> {
    if z.real().is_finite() && z.imag().is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// |z|^2 as a Float (no square root).
pub fn abs_sq(z: &Complex) -> Float {
    let mut re = z.real().clone().square();
    re += z.imag().clone().square();
    re
}

/// |z|.
pub fn abs(z: &Complex) -> Float {
    z.clone().abs().into_real_imag().0
}

/// Euclidean distance between two points.
pub fn dist(a: &Complex, b: &Complex) -> Float {
    abs(&Complex::with_val(a.prec().0.max(b.prec().0), a - b))
}

/// z / |z|; caller guarantees z != 0.
pub fn unit(z: &Complex, ctx: &Ctx) -> Complex {
    let a = abs(z);
    Complex::with_val(ctx.prec(), z / &a)
}

/// Deterministic splitmix64 stream, used for reproducible perturbations.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Distance from point `p` to the straight segment [a, b].
pub fn dist_point_segment(p: &Complex, a: &Complex, b: &Complex, ctx: &Ctx) -> Float {
    let ab = Complex::with_val(ctx.prec(), b - a);
    let ap = Complex::with_val(ctx.prec(), p - a);
    let denom = abs_sq(&ab);
    if denom.is_zero() {
        return abs(&ap);
    }
    // t = <ap, ab> / |ab|^2, clamped to [0,1]
    let mut t = Float::with_val(ctx.prec(), ap.real() * ab.real());
    t += Float::with_val(ctx.prec(), ap.imag() * ab.imag());
    t /= &denom;
    let zero = ctx.zero();
    let one = ctx.f(1);
    if t < zero {
        t = zero;
    } else if t > one {
        t = one;
    }
    let proj = Complex::with_val(ctx.prec(), a + ab * &t);
    dist(p, &proj)
}

/// True if segments [a,b] and [c,d] intersect (straight, closed endpoints),
/// computed in f64 with a small safety margin; used for contour validation.
pub fn segments_intersect_f64(a: &Complex, b: &Complex, c: &Complex, d: &Complex) -> bool {
    let to = |z: &Complex| (z.real().to_f64(), z.imag().to_f64());
    let (ax, ay) = to(a);
    let (bx, by) = to(b);
    let (cx, cy) = to(c);
    let (dx, dy) = to(d);
    let cross = |ox: f64, oy: f64, px: f64, py: f64, qx: f64, qy: f64| {
        (px - ox) * (qy - oy) - (py - oy) * (qx - ox)
    };
    let d1 = cross(cx, cy, dx, dy, ax, ay);
    let d2 = cross(cx, cy, dx, dy, bx, by);
    let d3 = cross(ax, ay, bx, by, cx, cy);
    let d4 = cross(ax, ay, bx, by, dx, dy);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    false
}
