//! Three-term recurrence coefficients from moments (Chebyshev algorithm),
//! polynomial evaluation, and zeros.
//!
//! The moment map is exponentially ill-conditioned in the degree; the
//! working precision absorbs it via [`required_digits`], and callers can
//! cross-check any exported value by recomputing at 1.5x digits.

use super::moments::{compute_moments, MomentTable, Weight};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::solve::aberth_roots;
use rug::{Complex, Float};

/// One table row: z p_n = p_{n+1} + alpha_n p_n + beta_n p_{n-1}, with
/// h_n the squared norm <p_n, p_n> (beta_0 is set to h_0 by convention).
#[derive(Clone, Debug)]
pub struct RecurrenceRow {
    pub n: u32,
    pub alpha: Complex,
    pub beta: Complex,
    pub norm: Complex,
    pub exists: bool,
}

#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    pub weight: Weight,
    pub rows: Vec<RecurrenceRow>,
    pub digits_used: u32,
}

impl RecurrenceTable {
    /// Row n, provided the polynomial chain exists that far.
    pub fn row(&self, n: u32) -> Result<&RecurrenceRow> {
        match self.rows.get(n as usize) {
            Some(r) if r.exists => Ok(r),
            _ => Err(Error::DegenerateMoment { n, big_n: self.weight.big_n }),
        }
    }

    pub fn last_existing(&self) -> u32 {
        self.rows.iter().take_while(|r| r.exists).count() as u32
    }
}

/// Working-precision heuristic for degree-n computations with weight scale
/// c = N s (calibrated so exported values carry ~digits-15 correct digits).
pub fn required_digits(n: u32, s: &Complex, big_n: u32) -> u32 {
    let im_c = s.imag().to_f64().abs() * big_n as f64;
    let re_c = s.real().to_f64().abs() * big_n as f64;
    let est = 40.0 + 2.2 * n as f64 + 0.9 * im_c + 0.5 * re_c;
    est.ceil() as u32
}

/// Chebyshev algorithm on raw moments.
///
/// sigma_{-1,l} = 0, sigma_{0,l} = m_l,
/// sigma_{k,l} = sigma_{k-1,l+1} - alpha_{k-1} sigma_{k-1,l} - beta_{k-1} sigma_{k-2,l},
/// alpha_k = sigma_{k,k+1}/sigma_{k,k} - sigma_{k-1,k}/sigma_{k-1,k-1},
/// beta_k = sigma_{k,k}/sigma_{k-1,k-1}, h_k = sigma_{k,k}.
///
/// The table is truncated at the first sigma_{k,k} that vanishes to working
/// precision; later rows are flagged nonexistent.
pub fn recurrence_from_moments(weight: &Weight, moments: &MomentTable, n_max: u32, ctx: &Ctx) -> Result<RecurrenceTable> {
    let n_max = n_max as usize;
    if moments.k_max() < 2 * n_max + 1 {
        return Err(Error::Parse(format!(
            "need moments up to k = {}, got {}",
            2 * n_max + 1,
            moments.k_max()
        )));
    }
    let prec = ctx.prec();
    // relative degeneracy threshold against the terms that formed sigma_{k,k}
    let degen = ctx.pow10(-(ctx.digits() as i64) + 10);

    let mut rows: Vec<RecurrenceRow> = Vec::with_capacity(n_max + 1);
    // row 0
    let h0 = moments.m[0].clone();
    let scale0 = crate::cplx::abs(&h0);
    if scale0.is_zero() {
        return Ok(RecurrenceTable { weight: weight.clone(), rows: degenerate_fill(0, n_max, ctx), digits_used: ctx.digits() });
    }
    let alpha0 = Complex::with_val(prec, &moments.m[1] / &h0);
    rows.push(RecurrenceRow { n: 0, alpha: alpha0, beta: h0.clone(), norm: h0.clone(), exists: true });

    let mut sigma_prev2: Vec<Complex> = Vec::new(); // row k-2, starting at l = k-2
    let mut sigma_prev: Vec<Complex> = moments.m.clone(); // row k-1, starting at l = k-1
    let mut truncated_at: Option<usize> = None;

    for k in 1..=n_max {
        let l_hi = 2 * n_max + 1 - k;
        let mut sigma_k: Vec<Complex> = Vec::with_capacity(l_hi - k + 1);
        let prev_row = rows[k - 1].clone();
        let mut max_term = ctx.f(0);
        for l in k..=l_hi {
            // index into sigma_prev: row k-1 starts at l = k-1
            let a = &sigma_prev[l + 1 - (k - 1)];
            let b = &sigma_prev[l - (k - 1)];
            let mut v = Complex::with_val(prec, a - Complex::with_val(prec, &prev_row.alpha * b));
            let tb = crate::cplx::abs(&Complex::with_val(prec, &prev_row.alpha * b));
            let ta = crate::cplx::abs(a);
            let mut tc = ctx.f(0);
            if k >= 2 {
                let c0 = &sigma_prev2[l - (k - 2)];
                let sub = Complex::with_val(prec, &prev_row.beta * c0);
                tc = crate::cplx::abs(&sub);
                v -= sub;
            }
            if l == k {
                max_term = ta.max(&tb).max(&tc).max(&ctx.pow10(-(3 * ctx.prec() as i64)));
            }
            sigma_k.push(v);
        }
        let h_k = sigma_k[0].clone();
        let h_prev = prev_row.norm.clone();
        let tiny = Float::with_val(prec, &degen * &max_term);
        if crate::cplx::abs(&h_k) <= tiny {
            truncated_at = Some(k);
            break;
        }
        let beta_k = Complex::with_val(prec, &h_k / &h_prev);
        // alpha_k = sigma_{k,k+1}/sigma_{k,k} - sigma_{k-1,k}/sigma_{k-1,k-1}
        let first = Complex::with_val(prec, &sigma_k[1] / &h_k);
        let second = Complex::with_val(prec, &sigma_prev[1] / &h_prev);
        let alpha_k = Complex::with_val(prec, first - second);
        rows.push(RecurrenceRow { n: k as u32, alpha: alpha_k, beta: beta_k, norm: h_k, exists: true });
        sigma_prev2 = std::mem::replace(&mut sigma_prev, sigma_k);
    }
    if let Some(k) = truncated_at {
        rows.extend(degenerate_fill(k, n_max, ctx));
    }
    Ok(RecurrenceTable { weight: weight.clone(), rows, digits_used: ctx.digits() })
}

fn degenerate_fill(from: usize, n_max: usize, ctx: &Ctx) -> Vec<RecurrenceRow> {
    (from..=n_max)
        .map(|n| RecurrenceRow {
            n: n as u32,
            alpha: ctx.c_zero(),
            beta: ctx.c_zero(),
            norm: ctx.c_zero(),
            exists: false,
        })
        .collect()
}

/// Full table for the weight exp(-N s z) up to row n_max, at the caller's
/// precision.
pub fn table_for(s: &Complex, big_n: u32, n_max: u32, ctx: &Ctx) -> Result<RecurrenceTable> {
    let weight = Weight::new(Complex::with_val(ctx.prec(), s), big_n);
    let moments = compute_moments(&weight, 2 * n_max as usize + 1, ctx);
    recurrence_from_moments(&weight, &moments, n_max, ctx)
}

/// Diagonal N = n row: builds the full table for Weight{s, N = n} at the
/// heuristic working precision and extracts row n. Rows for different N are
/// never mixed.
pub fn diagonal_recurrence_row(s: &Complex, n: u32, ctx: &Ctx) -> Result<(Complex, Complex)> {
    if n < 1 {
        return Err(Error::Parse("diagonal rows start at n = 1".into()));
    }
    let work = ctx.at_least(required_digits(n, s, n));
    let s_work = Complex::with_val(work.prec(), s);
    let table = table_for(&s_work, n, n, &work)?;
    let row = table.row(n)?;
    // round down to the caller's context
    Ok((
        Complex::with_val(ctx.prec(), &row.alpha),
        Complex::with_val(ctx.prec(), &row.beta),
    ))
}

/// One diagonal row with its norm; `None` when the chain degenerates at or
/// before n.
pub fn diagonal_row_full(s: &Complex, n: u32, ctx: &Ctx) -> Result<Option<(Complex, Complex, Complex)>> {
    if n < 1 {
        return Err(Error::Parse("diagonal rows start at n = 1".into()));
    }
    let work = ctx.at_least(required_digits(n, s, n));
    let s_work = Complex::with_val(work.prec(), s);
    let table = table_for(&s_work, n, n, &work)?;
    match table.row(n) {
        Ok(row) => Ok(Some((
            Complex::with_val(ctx.prec(), &row.alpha),
            Complex::with_val(ctx.prec(), &row.beta),
            Complex::with_val(ctx.prec(), &row.norm),
        ))),
        Err(Error::DegenerateMoment { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Diagonal rows for a list of n values.
pub fn diagonal_recurrence(s: &Complex, n_list: &[u32], ctx: &Ctx) -> Result<Vec<(u32, Complex, Complex)>> {
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let (a, b) = diagonal_recurrence_row(s, n, ctx)?;
        out.push((n, a, b));
    }
    Ok(out)
}

/// Monic p_n^N and its derivative at z via the forward recurrence over a
/// prepared table.
pub fn eval_with_table(table: &RecurrenceTable, n: u32, z: &Complex, ctx: &Ctx) -> Result<(Complex, Complex)> {
    let prec = ctx.prec();
    if n == 0 {
        return Ok((ctx.c(1, 0), ctx.c_zero()));
    }
    // rows 0..n-1 must exist
    for k in 0..n {
        table.row(k)?;
    }
    let mut p_prev = ctx.c(1, 0); // p_0
    let mut dp_prev = ctx.c_zero();
    let row0 = table.row(0)?;
    let mut p = Complex::with_val(prec, z - &row0.alpha); // p_1
    let mut dp = ctx.c(1, 0);
    for k in 1..n {
        let row = table.row(k)?;
        // p_{k+1} = (z - alpha_k) p_k - beta_k p_{k-1}
        let zm = Complex::with_val(prec, z - &row.alpha);
        let p_next = Complex::with_val(prec, &zm * &p) - Complex::with_val(prec, &row.beta * &p_prev);
        let dp_next = Complex::with_val(prec, &zm * &dp) + &p - Complex::with_val(prec, &row.beta * &dp_prev);
        p_prev = std::mem::replace(&mut p, p_next);
        dp_prev = std::mem::replace(&mut dp, dp_next);
    }
    Ok((p, dp))
}

/// Monic diagonal polynomial p_n^n(z) and derivative.
pub fn eval_poly(s: &Complex, n: u32, z: &Complex, ctx: &Ctx) -> Result<(Complex, Complex)> {
    let work = ctx.at_least(required_digits(n, s, n));
    let table = table_for(&Complex::with_val(work.prec(), s), n, n, &work)?;
    let zz = Complex::with_val(work.prec(), z);
    let (p, dp) = eval_with_table(&table, n, &zz, &work)?;
    Ok((Complex::with_val(ctx.prec(), p), Complex::with_val(ctx.prec(), dp)))
}

/// Zeros of the diagonal polynomial p_n^n, sorted by (Re, Im).
pub fn zeros(s: &Complex, n: u32, ctx: &Ctx) -> Result<Vec<Complex>> {
    let work = ctx.at_least(required_digits(n, s, n));
    let table = table_for(&Complex::with_val(work.prec(), s), n, n, &work)?;
    zeros_with_table(&table, n, &work).map(|v| {
        v.into_iter()
            .map(|z| Complex::with_val(ctx.prec(), z))
            .collect()
    })
}

pub(crate) fn zeros_with_table(table: &RecurrenceTable, n: u32, work: &Ctx) -> Result<Vec<Complex>> {
    let eval = |z: &Complex| eval_with_table(table, n, z, work).expect("rows checked");
    for k in 0..n {
        table.row(k)?;
    }
    aberth_roots(|z| eval(z), n as usize, None, work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx::{abs, dist};

    fn ctx() -> Ctx {
        Ctx::new(60).unwrap()
    }

    #[test]
    fn legendre_alpha_zero_beta_classic() {
        let ctx = ctx();
        let table = table_for(&ctx.c_zero(), 1, 4, &ctx).unwrap();
        for row in &table.rows {
            assert!(abs(&row.alpha) < ctx.pow10(-50), "alpha_{} = {}", row.n, row.alpha);
        }
        // beta_n = n^2/(4n^2-1)
        for n in 1..=4u32 {
            let expect = ctx.f_u((n * n) as u64) / ctx.f_u((4 * n * n - 1) as u64);
            let row = table.row(n).unwrap();
            let err = (Float::with_val(ctx.prec(), row.beta.real()) - expect).abs();
            assert!(err < ctx.pow10(-45), "beta_{n}");
        }
    }

    #[test]
    fn alpha0_closed_form_s2() {
        // alpha_0 = m_1/m_0 = 1/2 - coth(2) at s = 2, N = 1
        let ctx = ctx();
        let table = table_for(&ctx.c(2, 0), 1, 1, &ctx).unwrap();
        let expect = ctx.f(0.5) - ctx.f(2).coth();
        let a0 = &table.row(0).unwrap().alpha;
        let err = (Float::with_val(ctx.prec(), a0.real()) - expect).abs();
        assert!(err < ctx.pow10(-50));
    }

    #[test]
    fn monic_p1_and_p2() {
        let ctx = ctx();
        // p_1(z) = z - alpha_0
        let (p1, dp1) = eval_poly(&ctx.c(2, 0), 1, &ctx.c(0.7, 0.1), &ctx).unwrap();
        let table = table_for(&ctx.c(2, 0), 1, 1, &ctx).unwrap();
        let expect = Complex::with_val(ctx.prec(), ctx.c(0.7, 0.1) - &table.row(0).unwrap().alpha);
        assert!(dist(&p1, &expect) < ctx.pow10(-50));
        assert!(dist(&dp1, &ctx.c(1, 0)) < ctx.pow10(-50));
        // s = 0, n = 2: p_2 = z^2 - 1/3
        let z = ctx.c(0.3, -0.2);
        let (p2, _) = eval_poly(&ctx.c_zero(), 2, &z, &ctx).unwrap();
        let expect = Complex::with_val(ctx.prec(), z.clone().square()) - ctx.f(1) / 3u32;
        assert!(dist(&p2, &expect) < ctx.pow10(-50));
    }

    #[test]
    fn zeros_legendre_two() {
        let ctx = ctx();
        let zs = zeros(&ctx.c_zero(), 2, &ctx).unwrap();
        let root = (ctx.f(1) / 3u32).sqrt();
        assert!(dist(&zs[0], &ctx.c_re(&Float::with_val(ctx.prec(), -&root))) < ctx.pow10(-40));
        assert!(dist(&zs[1], &ctx.c_re(&root)) < ctx.pow10(-40));
    }

    #[test]
    fn single_root_closed_form() {
        // p_1 at s = 2 has its zero at alpha_0 = 1/2 - coth 2
        let ctx = ctx();
        let zs = zeros(&ctx.c(2, 0), 1, &ctx).unwrap();
        let expect = ctx.f(0.5) - ctx.f(2).coth();
        let err = (Float::with_val(ctx.prec(), zs[0].real()) - expect).abs();
        assert!(err < ctx.pow10(-40), "root {} vs closed form", zs[0]);
        assert!(Float::with_val(ctx.prec(), zs[0].imag()).abs() < ctx.pow10(-40));
    }

    #[test]
    fn zero_residuals_small() {
        let ctx = Ctx::new(40).unwrap();
        let s = ctx.c(0, -1);
        let n = 8u32;
        let work = ctx.at_least(required_digits(n, &s, n));
        let table = table_for(&Complex::with_val(work.prec(), &s), n, n, &work).unwrap();
        let zs = zeros_with_table(&table, n, &work).unwrap();
        for z in &zs {
            let (p, _) = eval_with_table(&table, n, z, &work).unwrap();
            assert!(abs(&p) < work.pow10(-(work.digits() as i64) / 2), "residual {}", abs(&p));
        }
    }

    #[test]
    fn reflection_and_conjugation_symmetries() {
        let ctx = ctx();
        let s = ctx.c(0.37, 0.81);
        let minus_s = Complex::with_val(ctx.prec(), &s * ctx.f(-1));
        let conj_s = ctx.c_from(&Float::with_val(ctx.prec(), s.real()), &Float::with_val(ctx.prec(), -s.imag().clone()));
        for n in [1u32, 3, 7] {
            let (a, b) = diagonal_recurrence_row(&s, n, &ctx).unwrap();
            let (ar, br) = diagonal_recurrence_row(&minus_s, n, &ctx).unwrap();
            let (ac, bc) = diagonal_recurrence_row(&conj_s, n, &ctx).unwrap();
            // alpha_n(-s) = -alpha_n(s), beta_n(-s) = beta_n(s)
            assert!(dist(&ar, &Complex::with_val(ctx.prec(), &a * ctx.f(-1))) < ctx.pow10(-30));
            assert!(dist(&br, &b) < ctx.pow10(-30));
            // alpha_n(conj s) = conj alpha_n(s)
            let a_conj = ctx.c_from(&Float::with_val(ctx.prec(), a.real()), &Float::with_val(ctx.prec(), -a.imag().clone()));
            let b_conj = ctx.c_from(&Float::with_val(ctx.prec(), b.real()), &Float::with_val(ctx.prec(), -b.imag().clone()));
            assert!(dist(&ac, &a_conj) < ctx.pow10(-30));
            assert!(dist(&bc, &b_conj) < ctx.pow10(-30));
        }
    }

    #[test]
    fn imaginary_axis_structure() {
        // s in iR: alpha purely imaginary, beta real
        let ctx = ctx();
        let s = ctx.c(0, 1);
        for n in [2u32, 5, 9] {
            let (a, b) = diagonal_recurrence_row(&s, n, &ctx).unwrap();
            assert!(Float::with_val(ctx.prec(), a.real()).abs() < ctx.pow10(-(ctx.digits() as i64) / 2));
            assert!(Float::with_val(ctx.prec(), b.imag()).abs() < ctx.pow10(-(ctx.digits() as i64) / 2));
        }
    }
}
