//! Genus-0 modified external field, saddle values, the critical parameter
//! t_c, breaking-curve tracing and s-plane region classification.
//!
//! The genus-0 field is h(z;s) = 2 log(z + (z^2-1)^(1/2)) - s (z^2-1)^(1/2)
//! with the root cut on [-1,1] and branch ~ z at infinity; its saddle sits
//! at z = 2/s and the breaking curves are the zero level set of
//! Re h(2/s; s). Signs are a fixed convention of this crate: Re h_cr > 0 in
//! the one-cut region (as s -> 0, h_cr ~ 2 log(4/s) - 2 -> +infinity) and
//! Re h_cr < 0 in the two-cut regions.

use crate::branch::sqrt_z2m1;
use crate::cplx::{dist, unit};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::fmt::float_str;
use crate::path::Path;
use crate::solve::newton_real;
use rug::{Complex, Float};

/// Region of the s-plane per the global phase portrait.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionLabel {
    /// One-cut region (between the breaking curves).
    G0,
    /// Two-cut region, upper half plane.
    G1Plus,
    /// Two-cut region, lower half plane.
    G1Minus,
    /// On the breaking curve in the upper half plane.
    BreakPlus,
    /// On the breaking curve in the lower half plane.
    BreakMinus,
    /// On the real ray (2, infinity).
    BreakRayPos,
    /// On the real ray (-infinity, -2).
    BreakRayNeg,
    /// At the critical point s = 2.
    CriticalPoint2,
    /// At the critical point s = -2.
    CriticalPointMinus2,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::G0 => "G0",
            RegionLabel::G1Plus => "G1Plus",
            RegionLabel::G1Minus => "G1Minus",
            RegionLabel::BreakPlus => "BreakPlus",
            RegionLabel::BreakMinus => "BreakMinus",
            RegionLabel::BreakRayPos => "BreakRayPos",
            RegionLabel::BreakRayNeg => "BreakRayNeg",
            RegionLabel::CriticalPoint2 => "CriticalPoint2",
            RegionLabel::CriticalPointMinus2 => "CriticalPointMinus2",
        }
    }
}

/// Genus-0 h-function for a fixed parameter s, evaluation cut on [-1, 1].
#[derive(Clone, Debug)]
pub struct HGenus0 {
    pub s: Complex,
}

impl HGenus0 {
    pub fn new(s: Complex) -> Self {
        HGenus0 { s }
    }

    /// Additive constant: h = -s z - ell + 2 log z + O(1/z), ell = -2 log 2.
    pub fn ell0(ctx: &Ctx) -> Float {
        let l = ctx.f(2).ln();
        Float::with_val(ctx.prec(), -2 * &l)
    }

    /// h(z; s) = 2 log(z + w) - s w with w = (z^2-1)^(1/2).
    pub fn eval(&self, z: &Complex, ctx: &Ctx) -> Complex {
        let prec = ctx.prec();
        let w = sqrt_z2m1(z, ctx);
        let lg = Complex::with_val(prec, z + &w).ln();
        Complex::with_val(prec, lg * 2u32) - Complex::with_val(prec, &self.s * &w)
    }

    /// h'(z; s) = (2 - s z) / (z^2-1)^(1/2).
    pub fn prime(&self, z: &Complex, ctx: &Ctx) -> Complex {
        let prec = ctx.prec();
        let w = sqrt_z2m1(z, ctx);
        let num = Complex::with_val(prec, 2u32 - Complex::with_val(prec, &self.s * z));
        Complex::with_val(prec, num / w)
    }

    /// Saddle point z_0 = 2/s.
    pub fn saddle(&self, ctx: &Ctx) -> Result<Complex> {
        if self.s.real().is_zero() && self.s.imag().is_zero() {
            return Err(Error::SingularParameter("saddle at infinity for s = 0"));
        }
        Ok(Complex::with_val(ctx.prec(), 2u32 / &self.s))
    }

    /// Saddle value h(2/s; s).
    pub fn saddle_value(&self, ctx: &Ctx) -> Result<Complex> {
        let z0 = self.saddle(ctx)?;
        Ok(self.eval(&z0, ctx))
    }
}

/// h(2/s; s) for arbitrary s != 0.
pub fn h0_saddle_value(s: &Complex, ctx: &Ctx) -> Result<Complex> {
    HGenus0::new(Complex::with_val(ctx.prec(), s)).saddle_value(ctx)
}

/// d/ds of the saddle value. By the saddle condition the z-dependence drops
/// out, leaving -(4/s^2 - 1)^(1/2).
pub fn h0_saddle_value_prime(s: &Complex, ctx: &Ctx) -> Result<Complex> {
    let h = HGenus0::new(Complex::with_val(ctx.prec(), s));
    let z0 = h.saddle(ctx)?;
    let w = sqrt_z2m1(&z0, ctx);
    Ok(Complex::with_val(ctx.prec(), w * ctx.f(-1)))
}

/// Unique positive root of 2 log((2 + sqrt(t^2+4))/t) - sqrt(t^2+4) = 0,
/// by bracketed Newton started at the midpoint of (0.5, 3).
pub fn solve_tc(ctx: &Ctx) -> Float {
    let prec = ctx.prec();
    let f = |t: &Float| -> Float {
        let r = Float::with_val(prec, t * t) + 4u32;
        let r = r.sqrt();
        let lg = (Float::with_val(prec, &r + 2u32) / t).ln();
        Float::with_val(prec, 2 * &lg) - &r
    };
    let df = |t: &Float| -> Float {
        // d/dt [2 log(2 + r) - 2 log t - r], r = sqrt(t^2+4), r' = t/r
        let r = (Float::with_val(prec, t * t) + 4u32).sqrt();
        let rp = Float::with_val(prec, t / &r);
        let term1 = Float::with_val(prec, 2 * &rp) / Float::with_val(prec, &r + 2u32);
        let term2 = Float::with_val(prec, 2u32 / t);
        term1 - term2 - rp
    };
    // the bracket (0.5, 3) contains the root; Newton from 1.3 stays inside
    newton_real(f, df, &ctx.f(1.3), ctx).expect("t_c newton converges from the standard seed")
}

/// Residual of the defining equation at t (for diagnostics/tests).
pub fn tc_residual(t: &Float, ctx: &Ctx) -> Float {
    let prec = ctx.prec();
    let r = (Float::with_val(prec, t * t) + 4u32).sqrt();
    let lg = (Float::with_val(prec, &r + 2u32) / t).ln();
    Float::with_val(prec, 2 * &lg) - &r
}

/// Region classification at tolerance `tol` on |Re h_cr|.
///
/// Points with tol <= |Re h_cr| < 10 tol sit in the ambiguity band and are
/// reported as [`Error::AmbiguousNearBoundary`] carrying the computed value.
pub fn classify(s: &Complex, tol: &Float, ctx: &Ctx) -> Result<RegionLabel> {
    let prec = ctx.prec();
    let two = ctx.c(2, 0);
    let minus_two = ctx.c(-2, 0);
    if dist(s, &two) < *tol {
        return Ok(RegionLabel::CriticalPoint2);
    }
    if dist(s, &minus_two) < *tol {
        return Ok(RegionLabel::CriticalPointMinus2);
    }
    if s.imag().is_zero() {
        if *s.real() > 2 {
            return Ok(RegionLabel::BreakRayPos);
        }
        if *s.real() < -2 {
            return Ok(RegionLabel::BreakRayNeg);
        }
    }
    let h_cr = h0_saddle_value(s, ctx)?;
    let re = Float::with_val(prec, h_cr.real());
    let re_abs = re.clone().abs();
    if re_abs < *tol {
        if s.imag().is_zero() {
            // inside (-2, 2) on the real axis Re h_cr > 0; reaching here
            // means tol is enormous - treat as G0
            return Ok(RegionLabel::G0);
        }
        return Ok(if s.imag().is_sign_positive() {
            RegionLabel::BreakPlus
        } else {
            RegionLabel::BreakMinus
        });
    }
    if re_abs < Float::with_val(prec, tol * 10u32) {
        return Err(Error::AmbiguousNearBoundary(float_str(&re, ctx)));
    }
    if re.is_sign_positive() {
        Ok(RegionLabel::G0)
    } else if s.imag().is_sign_positive() {
        Ok(RegionLabel::G1Plus)
    } else {
        Ok(RegionLabel::G1Minus)
    }
}

/// Derivative of the one-cut field on the real rays |s| > 2, where the
/// support detaches from one hard edge: for s > 2 the cut is [-1, a] with
/// a = 4/s - 1 and h'(z) = -s ((z - a)/(z + 1))^(1/2); for s < -2 it is
/// [b, 1] with b = 1 + 4/s and h'(z) = -s ((z - b)/(z - 1))^(1/2). Both
/// normalize to -s + 2/z + O(1/z^2) and carry no saddle point; they are
/// exposed read-only (no recurrence asymptotics are attached to them).
pub fn h0_real_ray_prime(z: &Complex, s: &Complex, ctx: &Ctx) -> Result<Complex> {
    let prec = ctx.prec();
    if !s.imag().is_zero() {
        return Err(Error::WrongRegion("real-ray field needs real s"));
    }
    let re = s.real();
    if *re > 2 {
        let a = ctx.c_re(&Float::with_val(prec, Float::with_val(prec, 4u32 / re) - 1u32));
        let g = crate::branch::sqrt_ratio_seg(z, &a, &ctx.c(-1, 0), ctx);
        Ok(Complex::with_val(prec, g * s) * ctx.f(-1))
    } else if *re < -2 {
        let b = ctx.c_re(&Float::with_val(prec, Float::with_val(prec, 4u32 / re) + 1u32));
        let g = crate::branch::sqrt_ratio_seg(z, &b, &ctx.c(1, 0), ctx);
        Ok(Complex::with_val(prec, g * s) * ctx.f(-1))
    } else {
        Err(Error::WrongRegion("real-ray field needs |s| > 2"))
    }
}

/// Critical graph of the one-cut quadratic differential at s: one
/// trajectory from each hard edge, four from the saddle at 2/s.
pub fn critical_graph_genus0(
    s: &Complex,
    opts: Option<crate::trajectory::TracerOptions>,
    ctx: &Ctx,
) -> Result<Vec<crate::error::Result<crate::trajectory::TrajectoryPolyline>>> {
    let prec = ctx.prec();
    let h = HGenus0::new(Complex::with_val(prec, s));
    let saddle = h.saddle(ctx)?;
    let q = {
        let c = ctx.clone();
        move |z: &Complex| {
            let hp = h.prime(z, &c);
            Complex::with_val(c.prec(), hp.square())
        }
    };
    let sources = vec![(ctx.c(-1, 0), -1), (ctx.c(1, 0), -1), (saddle.clone(), 2)];
    let opts = opts.unwrap_or_else(|| {
        crate::trajectory::TracerOptions::new(sources.iter().map(|(p, _)| p.clone()).collect())
    });
    Ok(crate::trajectory::critical_graph(&q, &sources, &opts, ctx))
}

/// Branch selector for [`trace_breaking_curve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BreakingBranch {
    /// Arc from 2 to -2 through the upper half plane.
    Plus,
    /// Arc from 2 to -2 through the lower half plane.
    Minus,
    /// The real ray (2, infinity); returned analytically.
    RayPos,
    /// The real ray (-infinity, -2); returned analytically.
    RayNeg,
}

/// Extent used when emitting the analytic rays as polylines.
pub const RAY_EXTENT: f64 = 10.0;

/// Newton corrector transverse to the level set Re h_cr = 0.
fn correct_onto_curve(s: &Complex, ctx: &Ctx) -> Result<Complex> {
    let prec = ctx.prec();
    let tol = ctx.pow10(-(ctx.digits() as i64) / 2);
    let mut cur = Complex::with_val(prec, s);
    for _ in 0..60 {
        let f = Float::with_val(prec, h0_saddle_value(&cur, ctx)?.real());
        if f.clone().abs() < tol {
            return Ok(cur);
        }
        let hp = h0_saddle_value_prime(&cur, ctx)?;
        let g2 = crate::cplx::abs_sq(&hp);
        if g2.is_zero() {
            return Err(Error::LostCurve);
        }
        // delta = -f conj(H')/|H'|^2 makes Re(H' delta) = -f
        let conj = ctx.c_from(&Float::with_val(prec, hp.real()), &Float::with_val(prec, -hp.imag().clone()));
        let delta = Complex::with_val(prec, conj * &f) / &g2;
        cur -= delta;
    }
    Err(Error::LostCurve)
}

/// Predictor-corrector trace of a breaking curve.
///
/// `Plus`/`Minus` start near s = 2 (local three-fold structure: directions
/// at angles 0, +/- 2 pi/3) and terminate on reaching s = -2; the rays are
/// returned analytically.
pub fn trace_breaking_curve(branch: BreakingBranch, arclength_step: &Float, ctx: &Ctx) -> Result<Path> {
    let prec = ctx.prec();
    match branch {
        BreakingBranch::RayPos => {
            return Path::new(vec![ctx.c(2, 0), ctx.c(RAY_EXTENT, 0.0)], false);
        }
        BreakingBranch::RayNeg => {
            return Path::new(vec![ctx.c(-RAY_EXTENT, 0.0), ctx.c(-2, 0)], false);
        }
        _ => {}
    }
    if !(*arclength_step > 0) {
        return Err(Error::Parse("arclength step must be positive".into()));
    }
    let sign = if branch == BreakingBranch::Plus { 1 } else { -1 };
    // seed just off s = 2 along the e^{+/- 2 pi i/3} breaking direction
    let seed_r = ctx.f(1e-3).max(&Float::with_val(prec, arclength_step / 2u32));
    let ang = Float::with_val(prec, ctx.pi() * 2u32) / 3u32 * sign;
    let dir = Complex::with_val(prec, (ctx.zero(), ang)).exp();
    let mut cur = Complex::with_val(prec, ctx.c(2, 0) + Complex::with_val(prec, &dir * &seed_r));
    cur = correct_onto_curve(&cur, ctx)?;
    let target = ctx.c(-2, 0);
    let mut pts = vec![cur.clone()];
    let mut prev_tan: Option<Complex> = None;
    let max_steps = 200_000usize;
    for _ in 0..max_steps {
        if dist(&cur, &target) < *arclength_step {
            break;
        }
        // tangent: i * conj(H') normalized, oriented consistently
        let hp = h0_saddle_value_prime(&cur, ctx)?;
        let conj = ctx.c_from(&Float::with_val(prec, hp.real()), &Float::with_val(prec, -hp.imag().clone()));
        let mut tan = unit(&Complex::with_val(prec, conj * ctx.i()), ctx);
        match &prev_tan {
            Some(pt) => {
                let dot = Float::with_val(prec, tan.real() * pt.real()) + Float::with_val(prec, tan.imag() * pt.imag());
                if dot < 0 {
                    tan = Complex::with_val(prec, &tan * ctx.f(-1));
                }
            }
            None => {
                // initial orientation: away from s = 2
                let away = Complex::with_val(prec, &cur - &ctx.c(2, 0));
                let dot = Float::with_val(prec, tan.real() * away.real()) + Float::with_val(prec, tan.imag() * away.imag());
                if dot < 0 {
                    tan = Complex::with_val(prec, &tan * ctx.f(-1));
                }
            }
        }
        let mut step = arclength_step.clone();
        let mut next = None;
        for _ in 0..30 {
            let pred = Complex::with_val(prec, &cur + Complex::with_val(prec, &tan * &step));
            match correct_onto_curve(&pred, ctx) {
                Ok(c) => {
                    // reject correctors that jumped to another sheet of the level set
                    if dist(&c, &pred) < Float::with_val(prec, &step * 2u32) {
                        next = Some(c);
                        break;
                    }
                    step = Float::with_val(prec, &step / 2u32);
                }
                Err(_) => {
                    step = Float::with_val(prec, &step / 2u32);
                }
            }
            if step < ctx.pow10(-30) {
                break;
            }
        }
        let next = next.ok_or(Error::LostCurve)?;
        prev_tan = Some(unit(&Complex::with_val(prec, &next - &cur), ctx));
        cur = next;
        pts.push(cur.clone());
        if pts.len() >= max_steps {
            break;
        }
    }
    Path::new(pts, false)
}

/// On-curve point where the branch crosses the imaginary axis, refined by
/// bisection along the curve (used to compare against -i t_c).
pub fn breaking_curve_axis_crossing(curve: &Path, ctx: &Ctx) -> Result<Complex> {
    let prec = ctx.prec();
    let mut bracket: Option<(Complex, Complex)> = None;
    for w in curve.points().windows(2) {
        if w[0].real().is_sign_positive() != w[1].real().is_sign_positive() {
            bracket = Some((w[0].clone(), w[1].clone()));
            break;
        }
    }
    let (mut a, mut b) = bracket.ok_or(Error::NotOnBreakingCurve)?;
    for _ in 0..(ctx.prec() as usize) {
        let mid = Complex::with_val(prec, &a + &b) / 2u32;
        let mid = correct_onto_curve(&mid, ctx)?;
        if mid.real().is_zero() {
            return Ok(mid);
        }
        if mid.real().is_sign_positive() == a.real().is_sign_positive() {
            a = mid;
        } else {
            b = mid;
        }
        let gap = dist(&a, &b);
        if gap < ctx.pow10(-(ctx.digits() as i64) / 2) {
            break;
        }
    }
    correct_onto_curve(&(Complex::with_val(prec, &a + &b) / 2u32), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx::abs;

    fn ctx() -> Ctx {
        Ctx::new(60).unwrap()
    }

    #[test]
    fn h_vanishes_at_one() {
        let ctx = ctx();
        let h = HGenus0::new(ctx.c(1, 1));
        let v = h.eval(&ctx.c(1, 0), &ctx);
        assert!(abs(&v) < ctx.pow10(-50), "h(1) = {v}");
    }

    #[test]
    fn saddle_value_vanishes_at_critical_points() {
        let ctx = ctx();
        for s in [ctx.c(2, 0), ctx.c(-2, 0)] {
            let v = h0_saddle_value(&s, &ctx).unwrap();
            assert!(Float::with_val(ctx.prec(), v.real()).abs() < ctx.pow10(-45), "Re h_cr({s}) = {v}");
        }
    }

    #[test]
    fn tc_value_and_residual() {
        let ctx = ctx();
        let tc = solve_tc(&ctx);
        // published six digits
        assert!((tc.clone() - ctx.f(1.32549)).abs() < ctx.f(1e-5), "t_c = {tc}");
        assert!(tc_residual(&tc, &ctx).abs() < ctx.pow10(-50));
        // the two characterizations agree: Re h_cr(-i t_c) = 0
        let s = ctx.c_from(&ctx.zero(), &Float::with_val(ctx.prec(), -&tc));
        let v = h0_saddle_value(&s, &ctx).unwrap();
        assert!(Float::with_val(ctx.prec(), v.real()).abs() < ctx.pow10(-30));
    }

    #[test]
    fn classification_reference_points() {
        let ctx = ctx();
        let tol = ctx.f(1e-8);
        assert_eq!(classify(&ctx.c(0, -1), &tol, &ctx).unwrap(), RegionLabel::G0);
        assert_eq!(classify(&ctx.c(0, -2), &tol, &ctx).unwrap(), RegionLabel::G1Minus);
        assert_eq!(classify(&ctx.c(0, 2), &tol, &ctx).unwrap(), RegionLabel::G1Plus);
        assert_eq!(classify(&ctx.c(3, 0), &tol, &ctx).unwrap(), RegionLabel::BreakRayPos);
        assert_eq!(classify(&ctx.c(-3, 0), &tol, &ctx).unwrap(), RegionLabel::BreakRayNeg);
        assert_eq!(classify(&ctx.c(2, 0), &tol, &ctx).unwrap(), RegionLabel::CriticalPoint2);
        assert_eq!(classify(&ctx.c(1, 0), &tol, &ctx).unwrap(), RegionLabel::G0);
    }

    #[test]
    fn infinity_normalization_of_h() {
        // h(z) + s z - 2 log 2 - 2 log z -> 0 along a ray off the cuts
        let ctx = ctx();
        let h = HGenus0::new(ctx.c(0.6, -0.8));
        let prec = ctx.prec();
        let check = |r: f64| -> Float {
            let z = ctx.c(r * 0.6, r * 0.8);
            let v = h.eval(&z, &ctx);
            let logz = z.clone().ln();
            let lead = Complex::with_val(prec, &h.s * &z) - Complex::with_val(prec, logz * 2u32);
            let tail = Complex::with_val(prec, v + lead) - Float::with_val(prec, ctx.f(2).ln() * 2u32);
            abs(&tail)
        };
        let t1 = check(1e6);
        let t2 = check(1e7);
        assert!(t1 < ctx.f(1e-5) && t2 < ctx.f(1e-6), "tail {t1}, {t2}");
        // and ell0 is -2 log 2
        let ell0 = HGenus0::ell0(&ctx);
        let expect = ctx.f(2).ln() * ctx.f(-2);
        assert!((ell0 - expect).abs() < ctx.pow10(-55));
    }

    #[test]
    fn real_ray_fields_have_no_saddle_and_right_tail() {
        let ctx = ctx();
        let prec = ctx.prec();
        for sval in [3.0f64, -2.5] {
            let s = ctx.c(sval, 0.0);
            // normalization: h' + s - 2/z = O(1/z^2) at large z
            let z = ctx.c(2e5, 1e5);
            let hp = h0_real_ray_prime(&z, &s, &ctx).unwrap();
            let tail = Complex::with_val(prec, Complex::with_val(prec, &hp + &s) - Complex::with_val(prec, 2u32 / &z));
            assert!(abs(&tail) < ctx.f(1e-9), "tail {} at s = {sval}", abs(&tail));
            // no saddle: |h'| stays away from zero on a probe grid off the cut
            for (re, im) in [(0.5, 0.8), (-0.5, 1.2), (2.5, -0.7), (0.0, -1.5)] {
                let hp = h0_real_ray_prime(&ctx.c(re, im), &s, &ctx).unwrap();
                assert!(abs(&hp) > ctx.f(0.3), "unexpected small |h'| at ({re},{im})");
            }
        }
        assert!(h0_real_ray_prime(&ctx.c(0, 1), &ctx.c(1, 0), &ctx).is_err());
    }

    #[test]
    fn conjugation_symmetry_of_saddle_value() {
        let ctx = ctx();
        let s = ctx.c(0.7, 0.9);
        let sc = ctx.c(0.7, -0.9);
        let a = h0_saddle_value(&s, &ctx).unwrap();
        let b = h0_saddle_value(&sc, &ctx).unwrap();
        let err = (Float::with_val(ctx.prec(), a.real()) - Float::with_val(ctx.prec(), b.real())).abs();
        assert!(err < ctx.pow10(-50), "Re parts differ: {a} vs {b}");
    }

}
