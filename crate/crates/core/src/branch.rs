//! Branch-controlled square roots.
//!
//! Two layers:
//!
//! * exact closed forms for the recurring algebraic functions - a square
//!   root with cut on [-1,1] behaving like `z` at infinity, and the ratio
//!   root `((z-p)/(z-q))^(1/2)` whose cut is exactly the straight segment
//!   [q, p] (the Moebius image of that segment is the negative real axis,
//!   so the principal branch does the bookkeeping);
//! * a generic continuation-based `csqrt_cut` for arbitrary radicands and
//!   polyline cuts, tracking continuity from a normalization anchor with
//!   step-halving when the argument jumps by more than pi/2.

use crate::cplx::{abs, dist, segments_intersect_f64};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::path::Path;
use rug::{Complex, Float};

/// (z^2 - 1)^(1/2) with cut on [-1, 1], behaving like z at infinity.
///
/// Implemented as z (1 - 1/z^2)^(1/2): the principal square root's cut is
/// reached only for z in (-1, 1), so the function is analytic elsewhere and
/// has the right normalization. Exactly real z in (-1, 1) evaluates to the
/// limit from above, +i (1 - z^2)^(1/2).
pub fn sqrt_z2m1(z: &Complex, ctx: &Ctx) -> Complex {
    let prec = ctx.prec();
    if z.real().is_zero() && z.imag().is_zero() {
        return ctx.i(); // limit from above at 0
    }
    let inv2 = Complex::with_val(prec, z.clone().square().recip());
    let rad = Complex::with_val(prec, 1u32 - inv2);
    Complex::with_val(prec, z * rad.sqrt())
}

/// ((z - p)/(z - q))^(1/2) with cut exactly on the straight segment [q, p],
/// tending to 1 at infinity.
pub fn sqrt_ratio_seg(z: &Complex, p: &Complex, q: &Complex, ctx: &Ctx) -> Complex {
    let prec = ctx.prec();
    let num = Complex::with_val(prec, z - p);
    let den = Complex::with_val(prec, z - q);
    Complex::with_val(prec, num / den).sqrt()
}

/// Like [`sqrt_ratio_seg`] but with `z - p` and `z - q` supplied directly
/// (used by quadrature integrands near singular endpoints).
pub fn sqrt_ratio_parts(zmp: &Complex, zmq: &Complex, ctx: &Ctx) -> Complex {
    Complex::with_val(ctx.prec(), zmp / zmq).sqrt()
}

/// Square-root normalization for [`csqrt_cut`].
pub enum SqrtNorm {
    /// Branch behaving like +z as z -> infinity (for radicands ~ z^2).
    LikeZAtInfinity,
    /// Branch taking the given value at the given anchor point.
    PrincipalAtPoint { anchor: Complex, value: Complex },
}

/// Relative clearance from the cut below which evaluation is refused.
const CUT_CLEARANCE: f64 = 1e-12;

/// Branch of `radicand(z)^(1/2)` continuous off the polyline `cut` and
/// matching `norm`, by analytic continuation from the anchor along a
/// cut-avoiding route.
pub fn csqrt_cut<F>(radicand: F, z: &Complex, cut: &Path, norm: &SqrtNorm, ctx: &Ctx) -> Result<Complex>
where
    F: Fn(&Complex) -> Complex,
{
    let prec = ctx.prec();
    let clearance = ctx.f(CUT_CLEARANCE);
    if cut.distance_to(z, ctx) < clearance {
        return Err(Error::PointOnCut);
    }
    // anchor and its root value
    let (anchor, mut value) = match norm {
        SqrtNorm::PrincipalAtPoint { anchor, value } => (anchor.clone(), value.clone()),
        SqrtNorm::LikeZAtInfinity => {
            // far anchor on a ray away from the cut's bounding box
            let mut r = ctx.f(1);
            for pt in cut.points() {
                let m = abs(pt);
                if m > r {
                    r = m;
                }
            }
            let far = Complex::with_val(prec, ctx.c_re(&Float::with_val(prec, &r * 1000u32)));
            let root = radicand(&far).sqrt();
            // pick the sign closest to +z
            let d_plus = dist(&root, &far);
            let neg = Complex::with_val(prec, &root * ctx.f(-1));
            let d_minus = dist(&neg, &far);
            let v = if d_plus <= d_minus { root } else { neg };
            (far, v)
        }
    };
    // continuation route: straight anchor -> z, detoured around the cut's
    // bounding box if the straight leg crosses it
    let route = build_route(&anchor, z, cut, ctx)?;
    let mut current = anchor;
    for target in route.into_iter().skip(1) {
        value = continue_along(&radicand, &current, &target, value, ctx)?;
        current = target;
    }
    Ok(value)
}

/// Analytic continuation of the root along the straight segment
/// [from, to], halving steps when the relative argument jumps by > pi/2.
fn continue_along<F>(radicand: &F, from: &Complex, to: &Complex, start: Complex, ctx: &Ctx) -> Result<Complex>
where
    F: Fn(&Complex) -> Complex,
{
    let prec = ctx.prec();
    let mut value = start;
    let mut t0 = ctx.f(0);
    let one = ctx.f(1);
    let base_dt = ctx.f(1.0 / 64.0);
    let mut dt = base_dt.clone();
    let min_dt = ctx.f(1e-12);
    let diff = Complex::with_val(prec, to - from);
    while t0 < one {
        let t1 = Float::with_val(prec, &t0 + &dt).min(&one);
        let znew = Complex::with_val(prec, from + Complex::with_val(prec, &diff * &Float::with_val(prec, &t1)));
        let root = radicand(&znew).sqrt();
        let neg = Complex::with_val(prec, &root * ctx.f(-1));
        // continuity: pick sign nearest the previous value
        let dp = dist(&root, &value);
        let dm = dist(&neg, &value);
        let (next, dmin) = if dp <= dm { (root, dp) } else { (neg, dm) };
        // two branches are 2|root| apart; require the chosen one to be much
        // closer than the other, else refine the step
        let separation = abs(&next);
        if dmin > Float::with_val(prec, &separation * &ctx.f(0.25)) && separation > ctx.f(1e-40) {
            dt = Float::with_val(prec, &dt / 2u32);
            if dt < min_dt {
                return Err(Error::BranchJump);
            }
            continue;
        }
        value = next;
        t0 = t1;
        dt = Float::with_val(prec, &dt * 2u32).min(&base_dt);
    }
    Ok(value)
}

/// Minimum clearance a continuation leg keeps from the cut, as a fraction
/// of the cut's diameter.
fn leg_clearance(cut: &Path, ctx: &Ctx) -> Float {
    let prec = ctx.prec();
    let mut diam = ctx.f(0);
    let pts = cut.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist(&pts[i], &pts[j]);
            if d > diam {
                diam = d;
            }
        }
    }
    Float::with_val(prec, diam.max(&ctx.f(1)) * &ctx.f(0.05))
}

/// True if the leg [a, b] crosses the cut or comes closer than `clear`.
fn leg_blocked(a: &Complex, b: &Complex, cut: &Path, clear: &Float, ctx: &Ctx) -> bool {
    for (c, d) in cut.segments() {
        if segments_intersect_f64(a, b, &c, &d) {
            return true;
        }
    }
    // proximity check: samples along the leg plus cut vertices against the leg
    let prec = ctx.prec();
    for pt in cut.points() {
        if crate::cplx::dist_point_segment(pt, a, b, ctx) < *clear {
            return true;
        }
    }
    let n = 16u32;
    let diff = Complex::with_val(prec, b - a);
    for k in 1..n {
        let t = ctx.f_u(k as u64) / ctx.f_u(n as u64);
        let z = Complex::with_val(prec, a + Complex::with_val(prec, &diff * &t));
        if cut.distance_to(&z, ctx) < *clear {
            return true;
        }
    }
    false
}

/// Route from a to b keeping clear of the cut: straight if possible, else
/// through visible corners of the cut's padded bounding box.
fn build_route(a: &Complex, b: &Complex, cut: &Path, ctx: &Ctx) -> Result<Vec<Complex>> {
    let clear = leg_clearance(cut, ctx);
    if !leg_blocked(a, b, cut, &clear, ctx) {
        return Ok(vec![a.clone(), b.clone()]);
    }
    let prec = ctx.prec();
    let mut re_lo = cut.points()[0].real().clone();
    let mut re_hi = re_lo.clone();
    let mut im_lo = cut.points()[0].imag().clone();
    let mut im_hi = im_lo.clone();
    for p in cut.points() {
        if *p.real() < re_lo {
            re_lo = p.real().clone();
        }
        if *p.real() > re_hi {
            re_hi = p.real().clone();
        }
        if *p.imag() < im_lo {
            im_lo = p.imag().clone();
        }
        if *p.imag() > im_hi {
            im_hi = p.imag().clone();
        }
    }
    let pad = Float::with_val(prec, &re_hi - &re_lo)
        .max(&Float::with_val(prec, &im_hi - &im_lo))
        .max(&ctx.f(1))
        * ctx.f(0.75);
    let corners = [
        ctx.c_from(&Float::with_val(prec, &re_lo - &pad), &Float::with_val(prec, &im_lo - &pad)),
        ctx.c_from(&Float::with_val(prec, &re_hi + &pad), &Float::with_val(prec, &im_lo - &pad)),
        ctx.c_from(&Float::with_val(prec, &re_hi + &pad), &Float::with_val(prec, &im_hi + &pad)),
        ctx.c_from(&Float::with_val(prec, &re_lo - &pad), &Float::with_val(prec, &im_hi + &pad)),
    ];
    // tiny visibility graph over [a, corners..., b]
    let mut nodes: Vec<Complex> = vec![a.clone()];
    nodes.extend(corners.iter().cloned());
    nodes.push(b.clone());
    let n = nodes.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if nodes[i] == nodes[j] {
                continue;
            }
            let open = !leg_blocked(&nodes[i], &nodes[j], cut, &clear, ctx);
            adj[i][j] = open;
            adj[j][i] = open;
        }
    }
    // BFS a -> b
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0usize);
    prev[0] = 0;
    while let Some(u) = queue.pop_front() {
        if u == n - 1 {
            break;
        }
        for v in 0..n {
            if adj[u][v] && prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if prev[n - 1] == usize::MAX {
        return Err(Error::BranchJump);
    }
    let mut route = vec![nodes[n - 1].clone()];
    let mut cur = n - 1;
    while cur != 0 {
        cur = prev[cur];
        route.push(nodes[cur].clone());
    }
    route.reverse();
    Ok(route)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::new(50).unwrap()
    }

    #[test]
    fn sqrt_z2m1_reference_points() {
        let ctx = ctx();
        // z = 2 -> sqrt(3)
        let v = sqrt_z2m1(&ctx.c(2, 0), &ctx);
        let expect = ctx.f(3).sqrt();
        let err = (Float::with_val(ctx.prec(), v.real()) - expect).abs();
        assert!(err < ctx.f(1e-45));
        assert!(Float::with_val(ctx.prec(), v.imag()).abs() < ctx.f(1e-45));
        // z = i -> i sqrt(2): continuity from the large-|z| normalization
        let v = sqrt_z2m1(&ctx.i(), &ctx);
        let expect = ctx.f(2).sqrt();
        assert!(Float::with_val(ctx.prec(), v.real()).abs() < ctx.f(1e-45));
        let err = (Float::with_val(ctx.prec(), v.imag()) - expect).abs();
        assert!(err < ctx.f(1e-45));
    }

    #[test]
    fn sqrt_z2m1_one_sided_limits() {
        // f+(x) f-(x) = -(1 - x^2) on the cut; at 0: f+ = i, f- = -i
        let ctx = ctx();
        let e = ctx.f(1e-30);
        let above = sqrt_z2m1(&ctx.c_from(&ctx.zero(), &e), &ctx);
        let below = sqrt_z2m1(&ctx.c_from(&ctx.zero(), &Float::with_val(ctx.prec(), -&e)), &ctx);
        // f+ = -f- on the cut, so f+ f- = -(x^2 - 1) = 1 - x^2 = 1 at x = 0
        let prod = Complex::with_val(ctx.prec(), &above * &below);
        let err = abs(&Complex::with_val(ctx.prec(), &prod - 1u32));
        assert!(err < ctx.f(1e-28), "product {prod}");
        assert!(Float::with_val(ctx.prec(), above.imag()) > ctx.f(0.9));
        assert!(Float::with_val(ctx.prec(), below.imag()) < ctx.f(-0.9));
    }

    #[test]
    fn ratio_root_cut_is_segment() {
        let ctx = ctx();
        let p = ctx.c(-0.3, 1.0);
        let q = ctx.c(-1, 0);
        // near the segment midpoint, values on the two sides differ in sign
        let mid = Complex::with_val(ctx.prec(), &p + &q) / 2u32;
        let t = Complex::with_val(ctx.prec(), &p - &q);
        let n = crate::cplx::unit(&Complex::with_val(ctx.prec(), &t * ctx.i()), &ctx);
        let e = ctx.f(1e-20);
        let above = sqrt_ratio_seg(&Complex::with_val(ctx.prec(), &mid + Complex::with_val(ctx.prec(), &n * &e)), &p, &q, &ctx);
        let below = sqrt_ratio_seg(&Complex::with_val(ctx.prec(), &mid - Complex::with_val(ctx.prec(), &n * &e)), &p, &q, &ctx);
        let sum = abs(&Complex::with_val(ctx.prec(), &above + &below));
        assert!(sum < ctx.f(1e-18), "no sign flip across cut: {above} vs {below}");
        // far away it tends to 1
        let far = sqrt_ratio_seg(&ctx.c(1e8, 0), &p, &q, &ctx);
        let err = abs(&Complex::with_val(ctx.prec(), &far - 1u32));
        assert!(err < ctx.f(1e-7));
    }

    #[test]
    fn csqrt_cut_matches_closed_form() {
        let ctx = ctx();
        let cut = Path::from_f64(&[(-1.0, 0.0), (1.0, 0.0)], false, &ctx).unwrap();
        let rad = |z: &Complex| Complex::with_val(z.prec().0, z.clone().square() - 1u32);
        for (re, im) in [(2.0, 0.0), (0.0, 1.0), (-1.5, 0.7), (0.3, -2.0), (-3.0, -0.2)] {
            let z = ctx.c(re, im);
            let got = csqrt_cut(&rad, &z, &cut, &SqrtNorm::LikeZAtInfinity, &ctx).unwrap();
            let expect = sqrt_z2m1(&z, &ctx);
            let err = dist(&got, &expect);
            assert!(err < ctx.f(1e-40), "mismatch at {z}: {got} vs {expect}");
        }
    }

    #[test]
    fn csqrt_cut_rejects_on_cut_points() {
        let ctx = ctx();
        let cut = Path::from_f64(&[(-1.0, 0.0), (1.0, 0.0)], false, &ctx).unwrap();
        let rad = |z: &Complex| Complex::with_val(z.prec().0, z.clone().square() - 1u32);
        let r = csqrt_cut(&rad, &ctx.c(0.25, 0.0), &cut, &SqrtNorm::LikeZAtInfinity, &ctx);
        assert_eq!(r, Err(Error::PointOnCut));
    }

    #[test]
    fn csqrt_squared_reproduces_radicand() {
        let ctx = ctx();
        let cut = Path::from_f64(&[(-1.0, 0.0), (1.0, 0.0)], false, &ctx).unwrap();
        let rad = |z: &Complex| Complex::with_val(z.prec().0, z.clone().square() - 1u32);
        let mut rng = crate::cplx::SplitMix64::new(42);
        let mut checked = 0;
        while checked < 100 {
            let re = rng.next_f64() * 8.0 - 4.0;
            let im = rng.next_f64() * 8.0 - 4.0;
            let z = ctx.c(re, im);
            if cut.distance_to(&z, &ctx) < ctx.f(1e-3) {
                continue;
            }
            let root = csqrt_cut(&rad, &z, &cut, &SqrtNorm::LikeZAtInfinity, &ctx).unwrap();
            let sq = Complex::with_val(ctx.prec(), root.square());
            let want = rad(&z);
            let err = dist(&sq, &want);
            let scale = abs(&want).max(&ctx.f(1e-30));
            assert!(Float::with_val(ctx.prec(), &err / &scale) < ctx.pow10(-(ctx.digits() as i64) + 3));
            checked += 1;
        }
    }
}

