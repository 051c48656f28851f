//! Trajectories of quadratic differentials -Q(z) dz^2 and critical graphs.
//!
//! A trajectory keeps Re of the primitive of sqrt(Q) dz constant. The tracer
//! integrates dz/dt = i / sqrt(Q) normalized to unit speed, tracks the root
//! branch by continuity, accumulates the primitive with per-step quadrature,
//! and applies a transverse Newton correction each step so the drift of the
//! primitive's real part never accumulates.

use crate::cplx::{abs, dist, unit};
use crate::ctx::Ctx;
use crate::error::Result;
use crate::path::Path;
use rug::{Complex, Float};

/// Why a trace stopped.
#[derive(Clone, Debug, PartialEq)]
pub enum Termination {
    /// Entered the stop radius of a listed critical point.
    HitCriticalPoint(Complex),
    /// Left the bounding box.
    LeftDomain,
    /// Exhausted the step budget.
    StepLimit,
}

#[derive(Clone, Debug)]
pub struct TrajectoryPolyline {
    pub points: Vec<Complex>,
    pub source: Complex,
    pub termination: Termination,
    /// Largest |Re primitive| seen along the trace (drift diagnostic).
    pub max_drift: Float,
}

impl TrajectoryPolyline {
    pub fn as_path(&self) -> Result<Path> {
        Path::open(self.points.clone())
    }

    /// Minimum distance from p to the polyline.
    pub fn distance_to(&self, p: &Complex, ctx: &Ctx) -> Float {
        let mut best = dist(p, &self.points[0]);
        for w in self.points.windows(2) {
            let d = crate::cplx::dist_point_segment(p, &w[0], &w[1], ctx);
            if d < best {
                best = d;
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
pub struct TracerOptions {
    /// Stop radius around critical points.
    pub r_stop: f64,
    /// Half-width of the bounding box around the origin.
    pub box_half: f64,
    /// Step budget.
    pub max_steps: usize,
    /// Base arclength step.
    pub base_step: f64,
    /// Offset at which critical-point trajectories are launched. Near a
    /// simple zero a transverse offset delta spreads like delta^(2/3), so
    /// this must sit well below r_stop^(3/2) for clean terminations.
    pub launch: f64,
    /// Critical points checked for termination.
    pub critical_points: Vec<Complex>,
}

impl TracerOptions {
    pub fn new(critical_points: Vec<Complex>) -> Self {
        TracerOptions {
            r_stop: 1e-4,
            box_half: 8.0,
            max_steps: 100_000,
            base_step: 5e-3,
            launch: 1e-6,
            critical_points,
        }
    }
}

/// Trace the trajectory of -Q dz^2 through `seed` in the given direction.
///
/// `seed` must be a regular point of Q, or a point displaced off a critical
/// point along a chosen emanation direction (see [`emanation_directions`]).
pub fn trace_trajectory<F>(
    q: &F,
    seed: &Complex,
    direction: &Complex,
    opts: &TracerOptions,
    ctx: &Ctx,
) -> Result<TrajectoryPolyline>
where
    F: Fn(&Complex) -> Complex,
{
    let prec = ctx.prec();
    let mut z = Complex::with_val(prec, seed);
    let dir = unit(direction, ctx);
    // initial branch of sqrt(Q): choose the sign for which the velocity
    // i/sqrt(Q) points along the requested direction
    let mut root = q(&z).sqrt();
    {
        let v = velocity(&root, ctx);
        let dot = Float::with_val(prec, v.real() * dir.real()) + Float::with_val(prec, v.imag() * dir.imag());
        if dot < 0 {
            root = Complex::with_val(prec, &root * ctx.f(-1));
        }
    }
    let mut points = vec![z.clone()];
    // accumulated primitive of sqrt(Q) dz (should stay purely imaginary)
    let mut upsilon = ctx.c_zero();
    let mut max_drift = ctx.f(0);
    let mut termination = Termination::StepLimit;
    let box_half = ctx.f(opts.box_half);
    let r_stop = ctx.f(opts.r_stop);

    'outer: for _ in 0..opts.max_steps {
        // distance-aware step size
        let mut step = ctx.f(opts.base_step);
        for cp in &opts.critical_points {
            let d = dist(&z, cp);
            let cap = Float::with_val(prec, &d * &ctx.f(0.25)).max(&Float::with_val(prec, &r_stop / 2u32));
            if cap < step {
                step = cap;
            }
        }
        // RK4 on dz/dt = i / sqrt(Q) / |...|, branch tracked per stage
        let k1 = velocity(&root, ctx);
        let r2 = tracked_root(q, &offset(&z, &k1, &Float::with_val(prec, &step / 2u32), ctx), &root, ctx)?;
        let k2 = velocity(&r2, ctx);
        let r3 = tracked_root(q, &offset(&z, &k2, &Float::with_val(prec, &step / 2u32), ctx), &root, ctx)?;
        let k3 = velocity(&r3, ctx);
        let r4 = tracked_root(q, &offset(&z, &k3, &step, ctx), &root, ctx)?;
        let k4 = velocity(&r4, ctx);
        let mut incr = Complex::with_val(prec, &k1 + Complex::with_val(prec, &k2 * 2u32));
        incr += Complex::with_val(prec, &k3 * 2u32);
        incr += &k4;
        let dz = Complex::with_val(prec, incr * &step) / 6u32;
        let z_next = Complex::with_val(prec, &z + &dz);
        let root_next = tracked_root(q, &z_next, &root, ctx)?;

        // primitive increment by 3-point Gauss-Legendre on the chord
        let dups = chord_primitive(q, &z, &z_next, &root, ctx)?;
        upsilon += dups;

        // transverse correction: delta z = -Re(upsilon) / sqrt(Q), capped so
        // the vanishing root at a critical point cannot eject the tracer
        let re_u = Float::with_val(prec, upsilon.real());
        let drift = re_u.clone().abs();
        if drift > max_drift {
            max_drift = drift;
        }
        let corr = Complex::with_val(prec, &re_u / &root_next);
        let (z_corr, root_corr) = if abs(&corr) < Float::with_val(prec, &step / 2u32) {
            let zc = Complex::with_val(prec, &z_next - &corr);
            let rc = tracked_root(q, &zc, &root_next, ctx)?;
            upsilon = ctx.c_from(&ctx.zero(), &Float::with_val(prec, upsilon.imag()));
            (zc, rc)
        } else {
            (z_next, root_next)
        };

        z = z_corr;
        root = root_corr;
        points.push(z.clone());

        if Float::with_val(prec, z.real()).abs() > box_half || Float::with_val(prec, z.imag()).abs() > box_half {
            termination = Termination::LeftDomain;
            break 'outer;
        }
        for cp in &opts.critical_points {
            // skip the immediate neighborhood of the source for the first steps
            if points.len() > 4 || dist(cp, seed) > ctx.f(opts.r_stop * 20.0) {
                if dist(&z, cp) < r_stop {
                    termination = Termination::HitCriticalPoint(cp.clone());
                    break 'outer;
                }
            }
        }
    }
    Ok(TrajectoryPolyline {
        points,
        source: seed.clone(),
        termination,
        max_drift,
    })
}

/// Unit-speed velocity i / sqrt(Q) / |1/sqrt(Q)|.
fn velocity(root: &Complex, ctx: &Ctx) -> Complex {
    let prec = ctx.prec();
    let inv = Complex::with_val(prec, root.clone().recip());
    let u = unit(&inv, ctx);
    Complex::with_val(prec, u * ctx.i())
}

fn offset(z: &Complex, v: &Complex, h: &Float, ctx: &Ctx) -> Complex {
    Complex::with_val(ctx.prec(), z + Complex::with_val(ctx.prec(), v * h))
}

/// sqrt(Q) at z with the sign chosen by continuity against `prev`.
fn tracked_root<F>(q: &F, z: &Complex, prev: &Complex, ctx: &Ctx) -> Result<Complex>
where
    F: Fn(&Complex) -> Complex,
{
    let prec = ctx.prec();
    let r = q(z).sqrt();
    let neg = Complex::with_val(prec, &r * ctx.f(-1));
    let dp = dist(&r, prev);
    let dm = dist(&neg, prev);
    Ok(if dp <= dm { r } else { neg })
}

/// 3-point Gauss-Legendre of sqrt(Q) dz along the chord [a, b].
fn chord_primitive<F>(q: &F, a: &Complex, b: &Complex, root_a: &Complex, ctx: &Ctx) -> Result<Complex>
where
    F: Fn(&Complex) -> Complex,
{
    let prec = ctx.prec();
    let d = Complex::with_val(prec, b - a);
    // nodes at (1 +/- sqrt(3/5))/2 and 1/2; weights 5/18, 8/18, 5/18
    let r35 = (ctx.f(3) / 5u32).sqrt();
    let t1 = Float::with_val(prec, 1 - &r35) / 2u32;
    let t2 = ctx.f(0.5);
    let t3 = Float::with_val(prec, 1 + &r35) / 2u32;
    let w1 = ctx.f(5) / 18u32;
    let w2 = ctx.f(8) / 18u32;
    let mut acc = ctx.c_zero();
    let mut prev_root = root_a.clone();
    for (t, w) in [(t1, w1.clone()), (t2, w2), (t3, w1)] {
        let zt = Complex::with_val(prec, a + Complex::with_val(prec, &d * &t));
        let rt = tracked_root(q, &zt, &prev_root, ctx)?;
        acc += Complex::with_val(prec, &rt * &w);
        prev_root = rt;
    }
    Ok(Complex::with_val(prec, acc * &d))
}

/// Emanation directions at a critical point of -Q dz^2 of order m
/// (m = -1 simple pole: 1 direction; m = 1 simple zero: 3; m = 2 double
/// zero: 4), from the leading local coefficient of Q.
pub fn emanation_directions<F>(q: &F, p: &Complex, order: i32, ctx: &Ctx) -> Vec<Complex>
where
    F: Fn(&Complex) -> Complex,
{
    let prec = ctx.prec();
    let two_pi = Float::with_val(prec, ctx.pi() * 2u32);
    let wrap = |mut a: Float| -> Float {
        while a > ctx.pi() {
            a -= &two_pi;
        }
        while a < -ctx.pi() {
            a += &two_pi;
        }
        a
    };
    // arg of the leading coefficient c ~ Q(z)/(z-p)^order from a probe at
    // radius r, Richardson-extrapolated over r and r/2 (the linear-in-r
    // contamination from the next series term cancels)
    let probe = |r: &Float| -> Float {
        let probes = 4u32;
        let mut args = Vec::new();
        for k in 0..probes {
            let ang = Float::with_val(prec, &two_pi * &ctx.f_u(k as u64)) / ctx.f_u(probes as u64);
            let dirp = Complex::with_val(prec, (ctx.zero(), ang.clone())).exp();
            let zp = Complex::with_val(prec, p + Complex::with_val(prec, &dirp * r));
            let qv = q(&zp);
            let denom_arg = Float::with_val(prec, &ang * order);
            args.push(wrap(qv.arg().into_real_imag().0 - &denom_arg));
        }
        args.sort_by(|a, b| a.partial_cmp(b).unwrap());
        args.swap_remove(args.len() / 2)
    };
    let r1 = ctx.f(1e-5);
    let r2 = ctx.f(5e-6);
    let a1 = probe(&r1);
    let a2 = probe(&r2);
    let diff = wrap(Float::with_val(prec, &a2 - &a1));
    let c_arg = wrap(Float::with_val(prec, &a2 + &diff));
    // trajectory directions theta solve Re[c^(1/2) (z-p)^((m+2)/2)] = 0:
    // (m+2)/2 theta + c_arg/2 = pi/2 + k pi
    let count = (order + 2).max(1) as usize;
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let theta = Float::with_val(prec, ctx.pi() * ctx.f_u((1 + 2 * k as u64) as u64) - &c_arg)
            / ctx.f_u((order + 2) as u64);
        let d = Complex::with_val(prec, (ctx.zero(), theta)).exp();
        out.push(d);
    }
    out
}

/// All critical trajectories from the listed (point, order) pairs.
pub fn critical_graph<F>(
    q: &F,
    sources: &[(Complex, i32)],
    opts: &TracerOptions,
    ctx: &Ctx,
) -> Vec<Result<TrajectoryPolyline>>
where
    F: Fn(&Complex) -> Complex,
{
    let prec = ctx.prec();
    let mut out = Vec::new();
    let launch = ctx.f(opts.launch);
    for (p, order) in sources {
        for dir in emanation_directions(q, p, *order, ctx) {
            let seed = Complex::with_val(prec, p + Complex::with_val(prec, &dir * &launch));
            out.push(trace_trajectory(q, &seed, &dir, opts, ctx));
        }
    }
    out
}
