//! Adaptive tanh-sinh quadrature over straight segments and polylines.
//!
//! tanh-sinh handles integrable endpoint singularities (square-root type)
//! natively: the double-exponential variable change pushes nodes toward the
//! endpoints faster than the singularity grows. Integrands that blow up at a
//! declared endpoint should read the exact endpoint offsets from
//! [`QuadPoint`] instead of recomputing `z - endpoint` (which loses all
//! precision once the offset drops below one ulp of `z`).

use crate::cplx::abs;
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::path::Path;
use rug::ops::Pow;
use rug::{Complex, Float};
use std::cell::RefCell;
use std::collections::HashMap;

/// Maximum level doublings of the tanh-sinh ladder.
const MAX_LEVEL: usize = 12;

/// Evaluation point on a straight segment [a, b].
pub struct QuadPoint {
    /// The point itself.
    pub z: Complex,
    /// z - a in stable double-exponential form (never rounds to 0 or b - a).
    pub from_a: Complex,
    /// b - z in stable double-exponential form.
    pub to_b: Complex,
}

#[derive(Clone)]
struct Node {
    /// 1 + x in (0, 2], where x = tanh((pi/2) sinh(t))
    onep: Float,
    /// 1 - x in (0, 2]
    onem: Float,
    /// weight (pi/2) cosh(t) / cosh^2((pi/2) sinh(t))
    w: Float,
}

// Nodes depend only on (precision, level); cache them across integrals.
thread_local! {
    static NODE_CACHE: RefCell<HashMap<u32, Vec<Vec<Node>>>> = RefCell::new(HashMap::new());
}

/// Nodes for t = k*h >= 0 (level 0: all integers; level m: odd k, h = 2^-m).
fn make_level(prec: u32, level: usize) -> Vec<Node> {
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let half_pi = Float::with_val(prec, &pi / 2u32);
    // t range generous enough that weights decay below any useful tolerance,
    // including integrands with inverse-square-root endpoint blowup
    let t_limit = (Float::with_val(prec, prec as f64 * 3.0 * 2.0_f64.ln()) / &half_pi).asinh();
    let w_floor = Float::with_val(prec, 10).pow(-3 * (prec as i64));
    let mut nodes = Vec::new();
    let mut k = if level == 0 { 0u64 } else { 1u64 };
    let step = if level == 0 { 1u64 } else { 2u64 };
    loop {
        let t = Float::with_val(prec, k) >> (level as u32);
        if t > t_limit {
            break;
        }
        let (sh, ch) = t.sinh_cosh(Float::new(prec));
        let u = Float::with_val(prec, &half_pi * &sh);
        // 1 - tanh(u) = 2/(e^{2u}+1), 1 + tanh(u) = 2 e^{2u}/(e^{2u}+1)
        let e2u = Float::with_val(prec, 2 * &u).exp();
        let denom = Float::with_val(prec, &e2u + 1u32);
        let onem = Float::with_val(prec, 2u32 / &denom);
        let onep = Float::with_val(prec, 2 * &e2u) / &denom;
        // cosh(u) without cancellation
        let eu = u.exp();
        let ch_u = Float::with_val(prec, &eu + Float::with_val(prec, 1u32 / &eu)) / 2u32;
        let w = Float::with_val(prec, &half_pi * &ch) / ch_u.square();
        if w < w_floor {
            break;
        }
        nodes.push(Node { onep, onem, w });
        k += step;
    }
    nodes
}

fn with_nodes<R>(prec: u32, level: usize, body: impl FnOnce(&[Node]) -> R) -> R {
    NODE_CACHE.with(|cache| {
        let mut cache = cache.borrow_mut();
        let levels = cache.entry(prec).or_default();
        while levels.len() <= level {
            let l = levels.len();
            levels.push(make_level(prec, l));
        }
        body(&levels[level])
    })
}

/// tanh-sinh integral of `f` over the straight segment [a, b].
///
/// The `sing_a` / `sing_b` flags declare integrable (at most square-root)
/// endpoint singularities; the node ladder is deep enough for either case,
/// so the flags only suppress the early tail cutoff near that endpoint.
pub fn integrate_segment<F>(
    f: &F,
    a: &Complex,
    b: &Complex,
    sing_a: bool,
    sing_b: bool,
    ctx: &Ctx,
) -> Result<Complex>
where
    F: Fn(&QuadPoint) -> Complex,
{
    let prec = ctx.prec();
    let half = Complex::with_val(prec, b - a) / 2u32;
    let tol = ctx.quad_tol();
    let half_abs = abs(&half);
    // largest single |w * f| seen; sets the ambient magnitude for the
    // convergence floor and the tail cutoff
    let mut scale = Float::with_val(prec, 0);
    let mut nonfinite = false;

    let mut eval_at = |onep: &Float, onem: &Float, w: &Float, sum: &mut Complex, scale: &mut Float| -> Float {
        let from_a = Complex::with_val(prec, &half * onep);
        let to_b = Complex::with_val(prec, &half * onem);
        let z = Complex::with_val(prec, a + &from_a);
        let v = f(&QuadPoint { z, from_a, to_b });
        if !(v.real().is_finite() && v.imag().is_finite()) {
            nonfinite = true;
            return Float::with_val(prec, 0);
        }
        let term = Complex::with_val(prec, v * w);
        let mag = abs(&term);
        if mag > *scale {
            *scale = mag.clone();
        }
        *sum += term;
        mag
    };

    let mut sum = Complex::with_val(prec, (0, 0));
    let level_pass = |level: usize, sum: &mut Complex, scale: &mut Float, eval_at: &mut dyn FnMut(&Float, &Float, &Float, &mut Complex, &mut Float) -> Float| {
        with_nodes(prec, level, |nodes| {
            let mut consecutive_tiny = 0usize;
            for (i, node) in nodes.iter().enumerate() {
                if level == 0 && i == 0 {
                    // center node t = 0: single evaluation
                    eval_at(&node.onep, &node.onem, &node.w, sum, scale);
                    continue;
                }
                let m1 = eval_at(&node.onep, &node.onem, &node.w, sum, scale); // +t side (toward b)
                let m2 = eval_at(&node.onem, &node.onep, &node.w, sum, scale); // -t side (toward a)
                let tiny = Float::with_val(prec, &tol * &*scale) * 1e-6;
                let sing_tail = sing_a || sing_b;
                if m1 < tiny && m2 < tiny && !sing_tail {
                    consecutive_tiny += 1;
                    if consecutive_tiny >= 3 {
                        break;
                    }
                } else {
                    consecutive_tiny = 0;
                }
            }
        });
    };

    level_pass(0, &mut sum, &mut scale, &mut eval_at);
    let mut h = Float::with_val(prec, 1);
    let mut prev = Complex::with_val(prec, Complex::with_val(prec, &sum * &h) * &half);
    let mut result = prev.clone();
    let mut converged = false;
    for level in 1..=MAX_LEVEL {
        level_pass(level, &mut sum, &mut scale, &mut eval_at);
        h >>= 1;
        result = Complex::with_val(prec, Complex::with_val(prec, &sum * &h) * &half);
        let err = abs(&Complex::with_val(prec, &result - &prev));
        let ambient = abs(&result).max(&Float::with_val(prec, &scale * &half_abs));
        let floor = Float::with_val(prec, &tol * ambient);
        if level >= 3 && err <= floor {
            converged = true;
            break;
        }
        prev = result.clone();
    }
    if nonfinite {
        return Err(Error::NonFinite("integrand evaluation"));
    }
    if converged {
        Ok(result)
    } else {
        Err(Error::NoConvergence("tanh-sinh level cap reached"))
    }
}

/// Integral of `f` along a polyline.
///
/// For open paths, `sing_start` / `sing_end` declare square-root endpoint
/// singularities at the first and last waypoints.
pub fn integrate_path<F>(
    f: &F,
    path: &Path,
    sing_start: bool,
    sing_end: bool,
    ctx: &Ctx,
) -> Result<Complex>
where
    F: Fn(&QuadPoint) -> Complex,
{
    let segs = path.segments();
    let n = segs.len();
    let mut total = ctx.c_zero();
    for (i, (a, b)) in segs.iter().enumerate() {
        let sa = !path.is_closed() && i == 0 && sing_start;
        let sb = !path.is_closed() && i + 1 == n && sing_end;
        total += integrate_segment(f, a, b, sa, sb, ctx)?;
    }
    Ok(total)
}

/// Adapter for integrands that only need the point itself.
pub fn integrate_path_plain<F>(f: &F, path: &Path, ctx: &Ctx) -> Result<Complex>
where
    F: Fn(&Complex) -> Complex,
{
    integrate_path(&|qp: &QuadPoint| f(&qp.z), path, false, false, ctx)
}
