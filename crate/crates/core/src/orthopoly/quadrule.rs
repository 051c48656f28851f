//! Complex Gaussian quadrature: nodes at the zeros of p_n^N, weights from
//! the Christoffel formula.

use super::moments::Weight;
use super::recurrence::{eval_with_table, required_digits, table_for, zeros_with_table};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use rug::Complex;

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub weight: Weight,
    pub n: u32,
    pub nodes: Vec<Complex>,
    pub weights: Vec<Complex>,
}

/// n-point rule for the weight exp(-N s z) on [-1, 1]:
/// nodes z_j = zeros of p_n^N, weights w_j = h_{n-1} / (p_n'(z_j) p_{n-1}(z_j)).
pub fn gauss_rule(s: &Complex, big_n: u32, n: u32, ctx: &Ctx) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Parse("rule needs n >= 1".into()));
    }
    let work = ctx.at_least(required_digits(n, s, big_n));
    let s_work = Complex::with_val(work.prec(), s);
    let table = table_for(&s_work, big_n, n, &work)?;
    table.row(n)?; // h_n must exist for a well-defined rule
    let nodes_work = zeros_with_table(&table, n, &work)?;
    let h_prev = table.row(n - 1)?.norm.clone();
    let mut nodes = Vec::with_capacity(n as usize);
    let mut weights = Vec::with_capacity(n as usize);
    for z in &nodes_work {
        let (_, dp_n) = eval_with_table(&table, n, z, &work)?;
        let (p_prev, _) = eval_with_table(&table, n - 1, z, &work)?;
        if dp_n.real().is_zero() && dp_n.imag().is_zero() {
            return Err(Error::ZeroDerivative);
        }
        let denom = Complex::with_val(work.prec(), &dp_n * &p_prev);
        let w = Complex::with_val(work.prec(), &h_prev / &denom);
        nodes.push(Complex::with_val(ctx.prec(), z));
        weights.push(Complex::with_val(ctx.prec(), w));
    }
    Ok(QuadratureRule { weight: Weight::new(Complex::with_val(ctx.prec(), s), big_n), n, nodes, weights })
}

/// sum over j of w_j f(z_j): approximates the integral over [-1,1] of
/// f(z) exp(-N s z) dz.
pub fn oscillatory_integral<F>(rule: &QuadratureRule, f: F, ctx: &Ctx) -> Complex
where
    F: Fn(&Complex) -> Complex,
{
    let mut acc = ctx.c_zero();
    for (z, w) in rule.nodes.iter().zip(rule.weights.iter()) {
        acc += Complex::with_val(ctx.prec(), w * f(z));
    }
    acc
}
