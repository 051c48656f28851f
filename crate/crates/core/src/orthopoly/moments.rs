//! Closed-form moments of the weight exp(-c z) on [-1, 1], c = N s.

use crate::ctx::Ctx;
use rug::{Complex, Float};

/// The varying weight exp(-N s z) on [-1, 1].
#[derive(Clone, Debug)]
pub struct Weight {
    pub s: Complex,
    pub big_n: u32,
}

impl Weight {
    pub fn new(s: Complex, big_n: u32) -> Self {
        Weight { s, big_n }
    }

    /// c = N s, the combined exponent scale.
    pub fn c(&self, ctx: &Ctx) -> Complex {
        Complex::with_val(ctx.prec(), &self.s * self.big_n)
    }
}

/// m[k] = integral over [-1,1] of z^k exp(-c z) dz, k = 0..=k_max.
#[derive(Clone, Debug)]
pub struct MomentTable {
    pub c: Complex,
    pub m: Vec<Complex>,
}

impl MomentTable {
    pub fn k_max(&self) -> usize {
        self.m.len() - 1
    }
}

/// Closed-form moment table.
///
/// The integration-by-parts recurrence
/// m_k = ((-1)^k e^c - e^{-c})/c + (k/c) m_{k-1}
/// is run forward while it is stable (k < 0.9 |c|) and backward from a
/// termwise-Taylor seed at k_max above that, which keeps every entry
/// accurate for any exponent scale. The extra working digits cover the
/// ~0.434 |c| digits of cancellation in the series seed.
pub fn compute_moments(weight: &Weight, k_max: usize, ctx: &Ctx) -> MomentTable {
    let c0 = weight.c(ctx);
    let c_abs = crate::cplx::abs(&c0).to_f64();
    let work = ctx.at_least(ctx.digits() + (0.45 * c_abs) as u32 + 10);
    let c = Complex::with_val(work.prec(), &c0);
    let m_work = if c.real().is_zero() && c.imag().is_zero() {
        legendre_moments(k_max, &work)
    } else {
        let split = ((0.9 * c_abs) as usize).min(k_max);
        let mut m = forward_moments(&c, split, &work);
        if split < k_max {
            let tail = backward_moments(&c, split, k_max, &work);
            m.extend(tail);
        }
        m
    };
    let m = m_work
        .into_iter()
        .map(|v| Complex::with_val(ctx.prec(), v))
        .collect();
    MomentTable { c: c0, m }
}

/// Exact c = 0 values: 2/(k+1) for even k, 0 for odd.
fn legendre_moments(k_max: usize, ctx: &Ctx) -> Vec<Complex> {
    (0..=k_max)
        .map(|k| {
            if k % 2 == 0 {
                Complex::with_val(ctx.prec(), ctx.f(2) / ctx.f_u((k + 1) as u64))
            } else {
                ctx.c_zero()
            }
        })
        .collect()
}

/// ((-1)^k e^c - e^{-c})/c, the inhomogeneous term of the recurrence.
fn lead_term(k: usize, c: &Complex, e_plus: &Complex, e_minus: &Complex, ctx: &Ctx) -> Complex {
    let prec = ctx.prec();
    let lead = if k % 2 == 0 {
        Complex::with_val(prec, e_plus - e_minus)
    } else {
        Complex::with_val(prec, e_plus + e_minus) * ctx.f(-1)
    };
    Complex::with_val(prec, lead / c)
}

fn forward_moments(c: &Complex, k_hi: usize, ctx: &Ctx) -> Vec<Complex> {
    let prec = ctx.prec();
    let e_plus = c.clone().exp();
    let e_minus = Complex::with_val(prec, c * ctx.f(-1)).exp();
    let mut m = Vec::with_capacity(k_hi + 1);
    let mut prev = lead_term(0, c, &e_plus, &e_minus, ctx);
    m.push(prev.clone());
    for k in 1..=k_hi {
        let mut next = lead_term(k, c, &e_plus, &e_minus, ctx);
        next += Complex::with_val(prec, &prev * ctx.f_u(k as u64)) / c;
        m.push(next.clone());
        prev = next;
    }
    m
}

/// m_{k-1} = (m_k - lead_k) c / k downward from a series seed at k_max;
/// returns m_{split+1} ..= m_{k_max}.
fn backward_moments(c: &Complex, split: usize, k_max: usize, ctx: &Ctx) -> Vec<Complex> {
    let prec = ctx.prec();
    let e_plus = c.clone().exp();
    let e_minus = Complex::with_val(prec, c * ctx.f(-1)).exp();
    let mut rev = Vec::with_capacity(k_max - split);
    let mut cur = series_moment(c, k_max, ctx);
    rev.push(cur.clone());
    for k in (split + 2..=k_max).rev() {
        let diff = Complex::with_val(prec, &cur - lead_term(k, c, &e_plus, &e_minus, ctx));
        cur = Complex::with_val(prec, diff * c) / ctx.f_u(k as u64);
        rev.push(cur.clone());
    }
    rev.reverse();
    rev
}

/// Termwise Taylor series m_k = 2 sum over j = k mod 2 of (-c)^j/(j!(k+j+1)).
fn series_moment(c: &Complex, k: usize, ctx: &Ctx) -> Complex {
    let prec = ctx.prec();
    let tiny = ctx.pow10(-((ctx.digits() + ctx.guard_digits()) as i64) - 10);
    let minus_c = Complex::with_val(prec, c * ctx.f(-1));
    let mut sum = ctx.c_zero();
    let mut pow = ctx.c(1, 0); // (-c)^j
    let mut fact = ctx.f(1); // j!
    let mut peak = ctx.f(1);
    let mut j = 0usize;
    loop {
        if (j + k) % 2 == 0 {
            let term = Complex::with_val(prec, &pow / &Float::with_val(prec, &fact * ctx.f_u((k + j + 1) as u64)));
            let mag = crate::cplx::abs(&term);
            if mag > peak {
                peak = mag.clone();
            }
            sum += &term;
            if j > 2 && mag < Float::with_val(prec, &tiny * &peak).min(&tiny) {
                break;
            }
        }
        j += 1;
        pow = Complex::with_val(prec, pow * &minus_c);
        fact *= ctx.f_u(j as u64);
        if j > 200_000 {
            break;
        }
    }
    Complex::with_val(prec, sum * 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx::abs;

    fn ctx() -> Ctx {
        Ctx::new(60).unwrap()
    }

    #[test]
    fn legendre_moments_at_zero() {
        let ctx = ctx();
        let w = Weight::new(ctx.c_zero(), 1);
        let t = compute_moments(&w, 6, &ctx);
        // [2, 0, 2/3, 0, 2/5, 0, 2/7]
        for (k, mk) in t.m.iter().enumerate() {
            if k % 2 == 1 {
                assert!(abs(mk).is_zero(), "odd moment {k} = {mk}");
            } else {
                let expect = ctx.f(2) / ctx.f_u((k + 1) as u64);
                let err = (Float::with_val(ctx.prec(), mk.real()) - expect).abs();
                assert!(err < ctx.pow10(-55), "moment {k}");
            }
        }
    }

    #[test]
    fn sinh_closed_forms() {
        let ctx = ctx();
        // c = 2: m_0 = sinh(2)
        let w = Weight::new(ctx.c(2, 0), 1);
        let t = compute_moments(&w, 0, &ctx);
        let expect = ctx.f(2).sinh();
        let err = (Float::with_val(ctx.prec(), t.m[0].real()) - expect).abs();
        assert!(err < ctx.pow10(-55));
        // c = -i: m_0 = 2 sin(1)
        let w = Weight::new(ctx.c(0, -1), 1);
        let t = compute_moments(&w, 0, &ctx);
        let expect = ctx.f(1).sin() * 2u32;
        let err = (Float::with_val(ctx.prec(), t.m[0].real()) - expect).abs();
        assert!(err < ctx.pow10(-55));
        assert!(Float::with_val(ctx.prec(), t.m[0].imag()).abs() < ctx.pow10(-55));
    }

    #[test]
    fn moment_recurrence_identity_holds() {
        // ((-1)^k e^c - e^{-c})/c + (k/c) m_{k-1} - m_k = 0 exactly as stored
        let ctx = ctx();
        let w = Weight::new(ctx.c(0.7, -1.3), 3);
        let t = compute_moments(&w, 12, &ctx);
        let c = &t.c;
        let prec = ctx.prec();
        let e_plus = c.clone().exp();
        let e_minus = Complex::with_val(prec, c * ctx.f(-1)).exp();
        for k in 1..=12usize {
            let lead = if k % 2 == 0 {
                Complex::with_val(prec, &e_plus - &e_minus)
            } else {
                Complex::with_val(prec, &e_plus + &e_minus) * ctx.f(-1)
            };
            let mut rhs = Complex::with_val(prec, lead / c);
            rhs += Complex::with_val(prec, &t.m[k - 1] * ctx.f_u(k as u64)) / c;
            let err = abs(&Complex::with_val(prec, &rhs - &t.m[k]));
            assert!(err < ctx.pow10(-50), "identity fails at k = {k}: {err}");
        }
    }

    #[test]
    fn series_matches_forward_in_stable_range() {
        let ctx = ctx();
        let c = ctx.c(25.0, -10.0);
        let fwd = forward_moments(&c, 12, &ctx);
        for k in 0..=12 {
            let ser = series_moment(&c, k, &ctx);
            let err = abs(&Complex::with_val(ctx.prec(), &fwd[k] - &ser));
            let scale = abs(&fwd[k]);
            let rel = Float::with_val(ctx.prec(), &err / &scale);
            assert!(rel < ctx.pow10(-40), "k = {k} rel {rel}");
        }
    }

    #[test]
    fn small_c_moments_stay_accurate_at_high_k() {
        // the regime that breaks a pure forward recurrence
        let ctx = ctx();
        let w = Weight::new(ctx.c(0.05, 0.02), 1);
        let t = compute_moments(&w, 31, &ctx);
        for k in [7usize, 16, 31] {
            let ser = series_moment(&t.c, k, &ctx);
            let err = abs(&Complex::with_val(ctx.prec(), &t.m[k] - &ser));
            let scale = abs(&ser);
            let rel = Float::with_val(ctx.prec(), &err / &scale);
            assert!(rel < ctx.pow10(-50), "k = {k} rel {rel}");
        }
    }
}
