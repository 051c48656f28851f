//! Nonlinear solvers: damped Newton (1-d real, k-d real, complex),
//! bracketed bisection, and the Aberth-Ehrlich simultaneous root finder.

use crate::cplx::{abs, SplitMix64};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use rug::{Complex, Float};

pub const NEWTON_MAX_ITER: usize = 200;
pub const NEWTON_MAX_HALVINGS: usize = 40;

/// Damped Newton for F: R^k -> R^k.
///
/// `jac` returns the Jacobian row-major; pass `None` for a forward-difference
/// fallback. Stops when the residual infinity-norm drops below the context
/// solve tolerance; steps are halved (up to 40 times) while the residual
/// would increase.
pub fn newton_solve<F, J>(f: F, jac: Option<J>, x0: &[Float], ctx: &Ctx) -> Result<Vec<Float>>
where
    F: Fn(&[Float]) -> Result<Vec<Float>>,
    J: Fn(&[Float]) -> Result<Vec<Vec<Float>>>,
{
    let prec = ctx.prec();
    let tol = ctx.solve_tol();
    let mut x: Vec<Float> = x0.to_vec();
    let mut fx = f(&x)?;
    let mut rnorm = inf_norm(&fx);
    for _ in 0..NEWTON_MAX_ITER {
        if rnorm < tol {
            return Ok(x);
        }
        let j = match &jac {
            Some(jf) => jf(&x)?,
            None => fd_jacobian(&f, &x, &fx, ctx)?,
        };
        let step = lin_solve(&j, &fx, ctx)?;
        // damped update
        let mut lambda = ctx.f(1);
        let mut accepted = false;
        for _ in 0..=NEWTON_MAX_HALVINGS {
            let trial: Vec<Float> = x
                .iter()
                .zip(step.iter())
                .map(|(xi, si)| Float::with_val(prec, xi - Float::with_val(prec, si * &lambda)))
                .collect();
            match f(&trial) {
                Ok(ft) => {
                    let rt = inf_norm(&ft);
                    if rt < rnorm || rt < tol {
                        x = trial;
                        fx = ft;
                        rnorm = rt;
                        accepted = true;
                        break;
                    }
                }
                Err(_) => {} // stepped out of the domain; damp further
            }
            lambda = Float::with_val(prec, &lambda / 2u32);
        }
        if !accepted {
            return Err(Error::Diverged("newton damping exhausted"));
        }
    }
    if rnorm < tol {
        Ok(x)
    } else {
        Err(Error::Diverged("newton iteration limit"))
    }
}

fn inf_norm(v: &[Float]) -> Float {
    let mut m = v[0].clone().abs();
    for x in &v[1..] {
        let a = x.clone().abs();
        if a > m {
            m = a;
        }
    }
    m
}

fn fd_jacobian<F>(f: &F, x: &[Float], fx: &[Float], ctx: &Ctx) -> Result<Vec<Vec<Float>>>
where
    F: Fn(&[Float]) -> Result<Vec<Float>>,
{
    let prec = ctx.prec();
    let k = x.len();
    let h_base = ctx.pow10(-(ctx.digits() as i64) / 2);
    let mut jac = vec![vec![ctx.zero(); k]; k];
    for col in 0..k {
        let h = Float::with_val(prec, &h_base * Float::with_val(prec, x[col].clone().abs().max(&ctx.f(1))));
        let mut xp = x.to_vec();
        xp[col] = Float::with_val(prec, &x[col] + &h);
        let fp = f(&xp)?;
        for row in 0..k {
            jac[row][col] = Float::with_val(prec, &fp[row] - &fx[row]) / &h;
        }
    }
    Ok(jac)
}

/// Gaussian elimination with partial pivoting (k is small here).
fn lin_solve(a: &[Vec<Float>], b: &[Float], ctx: &Ctx) -> Result<Vec<Float>> {
    let prec = ctx.prec();
    let k = b.len();
    let mut m: Vec<Vec<Float>> = a.iter().map(|row| row.clone()).collect();
    let mut rhs: Vec<Float> = b.to_vec();
    for col in 0..k {
        let mut piv = col;
        let mut best = m[col][col].clone().abs();
        for r in col + 1..k {
            let v = m[r][col].clone().abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best.is_zero() {
            return Err(Error::Diverged("singular jacobian"));
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..k {
            let factor = Float::with_val(prec, &m[r][col] / &m[col][col]);
            for c in col..k {
                let sub = Float::with_val(prec, &factor * &m[col][c]);
                m[r][c] -= sub;
            }
            let sub = Float::with_val(prec, &factor * &rhs[col]);
            rhs[r] -= sub;
        }
    }
    let mut x = vec![ctx.zero(); k];
    for row in (0..k).rev() {
        let mut acc = rhs[row].clone();
        for c in row + 1..k {
            acc -= Float::with_val(prec, &m[row][c] * &x[c]);
        }
        x[row] = acc / &m[row][row];
    }
    Ok(x)
}

/// Newton in one real variable with derivative supplied.
pub fn newton_real<F, D>(f: F, df: D, x0: &Float, ctx: &Ctx) -> Result<Float>
where
    F: Fn(&Float) -> Float,
    D: Fn(&Float) -> Float,
{
    let prec = ctx.prec();
    let tol = ctx.solve_tol();
    let mut x = x0.clone();
    let mut fx = f(&x);
    for _ in 0..NEWTON_MAX_ITER {
        if fx.clone().abs() < tol {
            return Ok(x);
        }
        let d = df(&x);
        if d.is_zero() {
            return Err(Error::Diverged("zero derivative"));
        }
        let step = Float::with_val(prec, &fx / &d);
        let mut lambda = ctx.f(1);
        let r0 = fx.clone().abs();
        let mut accepted = false;
        for _ in 0..=NEWTON_MAX_HALVINGS {
            let trial = Float::with_val(prec, &x - Float::with_val(prec, &step * &lambda));
            let ft = f(&trial);
            if ft.clone().abs() < r0 || ft.clone().abs() < tol {
                x = trial;
                fx = ft;
                accepted = true;
                break;
            }
            lambda /= 2u32;
        }
        if !accepted {
            return Err(Error::Diverged("newton damping exhausted"));
        }
    }
    if fx.abs() < tol {
        Ok(x)
    } else {
        Err(Error::Diverged("newton iteration limit"))
    }
}

/// Bracketed bisection; `f(lo)` and `f(hi)` must have opposite signs.
pub fn bisect<F>(f: F, lo: &Float, hi: &Float, ctx: &Ctx) -> Result<Float>
where
    F: Fn(&Float) -> Result<Float>,
{
    let prec = ctx.prec();
    let mut a = lo.clone();
    let mut b = hi.clone();
    let mut fa = f(&a)?;
    let fb = f(&b)?;
    if (fa.is_sign_positive() && fb.is_sign_positive()) || (fa.is_sign_negative() && fb.is_sign_negative()) {
        return Err(Error::Diverged("bisection bracket does not straddle a root"));
    }
    // bit precision bounds useful iterations
    let max_iter = (ctx.prec() as usize) + 16;
    for _ in 0..max_iter {
        let mid = Float::with_val(prec, &a + &b) / 2u32;
        if mid == a || mid == b {
            return Ok(mid);
        }
        let fm = f(&mid)?;
        if fm.is_zero() {
            return Ok(mid);
        }
        if fa.is_sign_positive() == fm.is_sign_positive() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(Float::with_val(prec, &a + &b) / 2u32)
}

/// All roots of a degree-n polynomial by simultaneous Aberth-Ehrlich
/// iteration. `p_eval` returns (p(z), p'(z)).
///
/// Seeds default to a deterministically perturbed circle of radius 2.
pub fn aberth_roots<F>(
    p_eval: F,
    degree: usize,
    seeds: Option<Vec<Complex>>,
    ctx: &Ctx,
) -> Result<Vec<Complex>>
where
    F: Fn(&Complex) -> (Complex, Complex),
{
    if degree == 0 {
        return Ok(Vec::new());
    }
    let prec = ctx.prec();
    let mut z: Vec<Complex> = match seeds {
        Some(s) => s,
        None => default_seeds(degree, ctx),
    };
    if z.len() != degree {
        return Err(Error::Parse("seed count must equal degree".into()));
    }
    let tol = ctx.pow10(-(ctx.digits() as i64) - 10);
    let max_iter = 2000usize;
    let mut max_step = ctx.f(1);
    for _ in 0..max_iter {
        max_step = ctx.f(0);
        for i in 0..degree {
            let (p, dp) = p_eval(&z[i]);
            if p.real().is_zero() && p.imag().is_zero() {
                continue;
            }
            if dp.real().is_zero() && dp.imag().is_zero() && degree == 1 {
                return Err(Error::DegenerateDegree);
            }
            let newton = Complex::with_val(prec, &p / &dp);
            // repulsion sum over the other iterates
            let mut rep = ctx.c_zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = Complex::with_val(prec, &z[i] - zj);
                    if d.real().is_zero() && d.imag().is_zero() {
                        continue;
                    }
                    rep += Complex::with_val(prec, d.recip());
                }
            }
            let denom = Complex::with_val(prec, 1u32 - Complex::with_val(prec, &newton * &rep));
            let w = if denom.real().is_zero() && denom.imag().is_zero() {
                newton
            } else {
                Complex::with_val(prec, &newton / &denom)
            };
            let mag = abs(&w);
            let rel = Float::with_val(prec, &mag / &Float::with_val(prec, abs(&z[i]).max(&ctx.f(1))));
            if rel > max_step {
                max_step = rel;
            }
            z[i] -= w;
        }
        if max_step < tol {
            break;
        }
    }
    if max_step >= ctx.f(1e-8) {
        return Err(Error::NoConvergence("aberth iteration stalled"));
    }
    // sort by (Re, Im) for reproducible output
    z.sort_by(|a, b| {
        a.real()
            .partial_cmp(b.real())
            .unwrap()
            .then(a.imag().partial_cmp(b.imag()).unwrap())
    });
    Ok(z)
}

fn default_seeds(degree: usize, ctx: &Ctx) -> Vec<Complex> {
    // perturbed circle of radius 2: all target zeros live near [-1, 1]
    let mut rng = SplitMix64::new(0x6b69_7373_u64);
    let prec = ctx.prec();
    let two_pi = ctx.pi() * 2u32;
    (0..degree)
        .map(|k| {
            let jitter = 0.2 * (rng.next_f64() - 0.5);
            let frac = (k as f64 + 0.31 + jitter) / degree as f64;
            let ang = Float::with_val(prec, &two_pi * &ctx.f(frac));
            let r = ctx.f(2.0 + 0.05 * rng.next_f64());
            let (s, c) = ang.sin_cos(Float::new(prec));
            ctx.c_from(&Float::with_val(prec, &r * &c), &Float::with_val(prec, &r * &s))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx::dist;

    fn ctx() -> Ctx {
        Ctx::new(50).unwrap()
    }

    #[test]
    fn newton_sqrt2() {
        let ctx = ctx();
        let r = newton_real(
            |x| Float::with_val(ctx.prec(), x * x) - 2u32,
            |x| Float::with_val(ctx.prec(), 2 * x),
            &ctx.f(1),
            &ctx,
        )
        .unwrap();
        let err = (r - ctx.f(2).sqrt()).abs();
        assert!(err < ctx.pow10(-45));
    }

    #[test]
    fn newton_2d_linear() {
        let ctx = ctx();
        // x + y - 1 = 0, x - y = 0 -> (1/2, 1/2)
        let f = |v: &[Float]| -> Result<Vec<Float>> {
            Ok(vec![
                Float::with_val(ctx.prec(), &v[0] + &v[1]) - 1u32,
                Float::with_val(ctx.prec(), &v[0] - &v[1]),
            ])
        };
        let sol = newton_solve(f, None::<fn(&[Float]) -> Result<Vec<Vec<Float>>>>, &[ctx.f(0.3), ctx.f(0.9)], &ctx).unwrap();
        assert!((sol[0].clone() - ctx.f(0.5)).abs() < ctx.pow10(-35));
        assert!((sol[1].clone() - ctx.f(0.5)).abs() < ctx.pow10(-35));
    }

    #[test]
    fn bisect_cbrt() {
        let ctx = ctx();
        let r = bisect(|x| Ok(Float::with_val(ctx.prec(), x * x) * x - 5u32), &ctx.f(1), &ctx.f(2), &ctx).unwrap();
        let err = (r - ctx.f(5).root(3)).abs();
        assert!(err < ctx.pow10(-45));
    }

    #[test]
    fn aberth_quadratic() {
        let ctx = ctx();
        // z^2 - 1
        let p = |z: &Complex| {
            let v = Complex::with_val(ctx.prec(), z.clone().square() - 1u32);
            let d = Complex::with_val(ctx.prec(), 2 * z);
            (v, d)
        };
        let roots = aberth_roots(p, 2, None, &ctx).unwrap();
        assert!(dist(&roots[0], &ctx.c(-1, 0)) < ctx.pow10(-40));
        assert!(dist(&roots[1], &ctx.c(1, 0)) < ctx.pow10(-40));
    }

    #[test]
    fn aberth_triple_root_clusters() {
        let ctx = ctx();
        // z^3: cluster around 0 within 10^(-digits/6)
        let p = |z: &Complex| {
            let z2 = z.clone().square();
            let v = Complex::with_val(ctx.prec(), &z2 * z);
            let d = Complex::with_val(ctx.prec(), 3 * &z2);
            (v, d)
        };
        let roots = aberth_roots(p, 3, None, &ctx).unwrap();
        let cluster_tol = ctx.pow10(-(ctx.digits() as i64) / 6);
        for r in roots {
            assert!(abs(&r) < cluster_tol, "root {r} outside cluster tolerance");
        }
    }
}
