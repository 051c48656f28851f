//! Command implementations building the emitted payloads.

use kisslab_core::cplx::abs;
use kisslab_core::fmt::{complex_parts, float_str, json_kv, parse_complex, parse_float};
use kisslab_core::orthopoly::{self, Weight};
use kisslab_core::phase::{self, BreakingBranch};
use kisslab_core::trajectory::Termination;
use kisslab_core::{dscale, genus1, quad as pquad, Ctx, Error, Path, Result};
use rug::{Complex, Float};

pub fn recurrence(s: &str, n_max: u32, ctx: &Ctx) -> Result<String> {
    let s = parse_complex(s, ctx)?;
    let mut out = String::from("n,re_alpha,im_alpha,re_beta,im_beta,re_h,im_h,exists\n");
    for n in 1..=n_max {
        match orthopoly::diagonal_row_full(&s, n, ctx)? {
            Some((a, b, h)) => {
                let (ar, ai) = complex_parts(&a, ctx);
                let (br, bi) = complex_parts(&b, ctx);
                let (hr, hi) = complex_parts(&h, ctx);
                out.push_str(&format!("{n},{ar},{ai},{br},{bi},{hr},{hi},1\n"));
            }
            None => {
                out.push_str(&format!("{n},0,0,0,0,0,0,0\n"));
            }
        }
    }
    Ok(out)
}

pub fn zeros(s: &str, n: u32, ctx: &Ctx) -> Result<String> {
    let s = parse_complex(s, ctx)?;
    let zs = orthopoly::zeros(&s, n, ctx)?;
    let mut out = String::from("idx,re_z,im_z\n");
    for (i, z) in zs.iter().enumerate() {
        let (re, im) = complex_parts(z, ctx);
        out.push_str(&format!("{i},{re},{im}\n"));
    }
    Ok(out)
}

pub fn tc(ctx: &Ctx) -> Result<String> {
    let t = phase::solve_tc(ctx);
    Ok(format!("{}\n", float_str(&t, ctx)))
}

pub fn classify(s: &str, tol: &str, ctx: &Ctx) -> Result<String> {
    let sv = parse_complex(s, ctx)?;
    let tolv = parse_float(tol, ctx)?;
    let label = phase::classify(&sv, &tolv, ctx)?;
    let h_cr = phase::h0_saddle_value(&sv, ctx)
        .map(|v| float_str(&Float::with_val(ctx.prec(), v.real()), ctx))
        .unwrap_or_else(|_| "singular".to_string());
    let (re, im) = complex_parts(&sv, ctx);
    Ok(format!(
        "{{{}, {}, {}, {}}}\n",
        json_kv("re_s", &re),
        json_kv("im_s", &im),
        json_kv("label", label.as_str()),
        json_kv("re_h_cr", &h_cr),
    ))
}

pub fn breaking_curve(branch: &str, step: &str, ctx: &Ctx) -> Result<String> {
    let branch = match branch {
        "plus" => BreakingBranch::Plus,
        "minus" => BreakingBranch::Minus,
        "ray-pos" => BreakingBranch::RayPos,
        "ray-neg" => BreakingBranch::RayNeg,
        other => return Err(Error::Parse(format!("unknown branch {other:?}"))),
    };
    let stepv = parse_float(step, ctx)?;
    let curve = phase::trace_breaking_curve(branch, &stepv, ctx)?;
    let mut out = String::from("idx,re_s,im_s\n");
    for (i, p) in curve.points().iter().enumerate() {
        let (re, im) = complex_parts(p, ctx);
        out.push_str(&format!("{i},{re},{im}\n"));
    }
    Ok(out)
}

fn terminator_str(t: &Termination, ctx: &Ctx) -> String {
    match t {
        Termination::HitCriticalPoint(p) => {
            let (re, im) = complex_parts(p, ctx);
            format!("hit({re};{im})")
        }
        Termination::LeftDomain => "left_domain".to_string(),
        Termination::StepLimit => "step_limit".to_string(),
    }
}

pub fn trajectories(s: &str, ctx: &Ctx) -> Result<String> {
    let sv = parse_complex(s, ctx)?;
    let label = phase::classify(&sv, &ctx.f(1e-8), ctx)?;
    // trace at a moderate precision: geometry, not constants
    let tctx = Ctx::new(40)?;
    let sv_t = Complex::with_val(tctx.prec(), &sv);
    let results = match label {
        phase::RegionLabel::G1Plus | phase::RegionLabel::G1Minus => {
            let e = genus1::solve_endpoints(&sv_t, &tctx)?;
            genus1::critical_graph_genus1(&e, None, &tctx)
        }
        _ => phase::critical_graph_genus0(&sv_t, None, &tctx)?,
    };
    let mut out = String::from("idx,re_z,im_z,terminator\n");
    for tr in results.into_iter().flatten() {
        let term = terminator_str(&tr.termination, &tctx);
        for (i, p) in tr.points.iter().enumerate() {
            let (re, im) = complex_parts(p, &tctx);
            out.push_str(&format!("{i},{re},{im},{term}\n"));
        }
    }
    Ok(out)
}

pub fn endpoints(s: &str, ctx: &Ctx) -> Result<String> {
    let sv = parse_complex(s, ctx)?;
    let label = phase::classify(&sv, &ctx.f(1e-8), ctx)?;
    let data = match label {
        phase::RegionLabel::G1Minus => genus1::genus1_data(&sv, ctx)?,
        phase::RegionLabel::G1Plus => {
            return Err(Error::WrongRegion(
                "surface data is computed for Im s < 0; conjugate the parameter",
            ))
        }
        _ => return Err(Error::WrongRegion("parameter is not in a two-cut region")),
    };
    let c = |z: &Complex| -> (String, String) { complex_parts(z, ctx) };
    let (l0r, l0i) = c(&data.lambda0);
    let (l1r, l1i) = c(&data.lambda1);
    let (br, bi) = c(&data.b);
    let (tr, ti) = c(&data.tau);
    let (d0r, d0i) = c(&data.delta0);
    let (dr, di) = c(&data.d_const);
    let (er, ei) = c(&data.ell);
    let (ur, ui) = c(&data.u_inf);
    let (u1r, u1i) = c(&data.u1);
    let (sr, si) = c(&data.s);
    let arc = |p: &Path| -> String {
        let pts: Vec<String> = p
            .points()
            .iter()
            .map(|z| {
                let (re, im) = complex_parts(z, ctx);
                format!("[\"{re}\", \"{im}\"]")
            })
            .collect();
        format!("[{}]", pts.join(", "))
    };
    let mut out = String::from("{\n");
    out.push_str(&format!("  {}, {},\n", json_kv("re_s", &sr), json_kv("im_s", &si)));
    out.push_str(&format!("  {}, {},\n", json_kv("re_lambda0", &l0r), json_kv("im_lambda0", &l0i)));
    out.push_str(&format!("  {}, {},\n", json_kv("re_lambda1", &l1r), json_kv("im_lambda1", &l1i)));
    out.push_str(&format!("  {}, {},\n", json_kv("re_b", &br), json_kv("im_b", &bi)));
    out.push_str(&format!("  {}, {},\n", json_kv("re_tau", &tr), json_kv("im_tau", &ti)));
    out.push_str(&format!("  {},\n", json_kv("eta1", &float_str(&data.eta1, ctx))));
    out.push_str(&format!("  {},\n", json_kv("omega0", &float_str(&data.omega0, ctx))));
    out.push_str(&format!("  {}, {},\n", json_kv("re_delta0", &d0r), json_kv("im_delta0", &d0i)));
    out.push_str(&format!("  {}, {},\n", json_kv("re_d", &dr), json_kv("im_d", &di)));
    out.push_str(&format!("  {}, {},\n", json_kv("re_ell", &er), json_kv("im_ell", &ei)));
    out.push_str(&format!("  {}, {},\n", json_kv("re_u_inf", &ur), json_kv("im_u_inf", &ui)));
    out.push_str(&format!("  {}, {},\n", json_kv("re_u1", &u1r), json_kv("im_u1", &u1i)));
    out.push_str(&format!("  \"gamma_m0\": {},\n", arc(&data.gamma_m0)));
    out.push_str(&format!("  \"gamma_c1\": {},\n", arc(&data.gamma_c1)));
    out.push_str(&format!("  \"gamma_m1\": {}\n", arc(&data.gamma_m1)));
    out.push_str("}\n");
    Ok(out)
}

/// Predictor table: every n up to n_max with its admissibility flag;
/// rows whose theta arguments sit too close to the lattice zero carry
/// zeros and flag 0.
pub fn genus1_predict_table(s: &str, n_max: u32, ctx: &Ctx) -> Result<String> {
    let sv = parse_complex(s, ctx)?;
    let conj_side = sv.imag().is_sign_positive() && !sv.imag().is_zero();
    let s_data = if conj_side { genus1::conj(&sv, ctx) } else { sv.clone() };
    let data = genus1::genus1_data(&s_data, ctx)?;
    let eps = genus1::default_eps(ctx);
    let admissible: std::collections::HashSet<u32> =
        genus1::admissible_indices(&data, &eps, n_max, ctx).into_iter().collect();
    let mut out = String::from("n,re_alpha_hat,im_alpha_hat,re_beta_hat,im_beta_hat,admissible
");
    for n in 1..=n_max {
        let flag = if admissible.contains(&n) { 1 } else { 0 };
        match genus1::genus1_predict(&data, n, ctx) {
            Ok((mut a, mut b)) => {
                if conj_side {
                    a = genus1::conj(&a, ctx);
                    b = genus1::conj(&b, ctx);
                }
                let (ar, ai) = complex_parts(&a, ctx);
                let (br, bi) = complex_parts(&b, ctx);
                out.push_str(&format!("{n},{ar},{ai},{br},{bi},{flag}
"));
            }
            Err(Error::NearDegenerate) => {
                out.push_str(&format!("{n},0,0,0,0,0
"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn parse_n_list(n_list: Option<&str>) -> Result<Vec<u32>> {
    let raw = n_list.ok_or_else(|| Error::Parse("--n-list is required for this regime".into()))?;
    raw.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("n list entry {t:?}: {e}")))
        })
        .collect()
}

struct CompareRow {
    n: u32,
    exact_a: Complex,
    exact_b: Complex,
    pred_a: Complex,
    pred_b: Complex,
}

/// Round every stored value to emission precision first, then derive the
/// error columns from the rounded values, so a re-parse reproduces the
/// errors bit-exactly.
fn compare_csv(rows: &[CompareRow], regime: &str, ctx: &Ctx) -> Result<String> {
    let mut out = String::from(
        "n,re_alpha,im_alpha,re_beta,im_beta,re_alpha_hat,im_alpha_hat,re_beta_hat,im_beta_hat,abs_err_alpha,rel_err_alpha,abs_err_beta,rel_err_beta,regime\n",
    );
    for row in rows {
        let reparse = |z: &Complex| -> Result<Complex> {
            let (re, im) = complex_parts(z, ctx);
            Ok(ctx.c_from(&parse_float(&re, ctx)?, &parse_float(&im, ctx)?))
        };
        let ea = reparse(&row.exact_a)?;
        let eb = reparse(&row.exact_b)?;
        let pa = reparse(&row.pred_a)?;
        let pb = reparse(&row.pred_b)?;
        let prec = ctx.prec();
        let abs_a = abs(&Complex::with_val(prec, &pa - &ea));
        let abs_b = abs(&Complex::with_val(prec, &pb - &eb));
        let denom_a = abs(&ea).max(&ctx.pow10(-(ctx.digits() as i64)));
        let denom_b = abs(&eb).max(&ctx.pow10(-(ctx.digits() as i64)));
        let rel_a = Float::with_val(prec, &abs_a / &denom_a);
        let rel_b = Float::with_val(prec, &abs_b / &denom_b);
        let (ar, ai) = complex_parts(&ea, ctx);
        let (br, bi) = complex_parts(&eb, ctx);
        let (par, pai) = complex_parts(&pa, ctx);
        let (pbr, pbi) = complex_parts(&pb, ctx);
        out.push_str(&format!(
            "{},{ar},{ai},{br},{bi},{par},{pai},{pbr},{pbi},{},{},{},{},{regime}\n",
            row.n,
            float_str(&abs_a, ctx),
            float_str(&rel_a, ctx),
            float_str(&abs_b, ctx),
            float_str(&rel_b, ctx),
        ));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn compare(
    regime: &str,
    s: Option<&str>,
    n_list: Option<&str>,
    n_max: Option<u32>,
    s_star: Option<&str>,
    l1: Option<&str>,
    theorem_form: bool,
    l2: Option<&str>,
    ctx: &Ctx,
) -> Result<String> {
    let prec = ctx.prec();
    match regime {
        "genus0" => {
            let sv = parse_complex(s.ok_or_else(|| Error::Parse("--s required".into()))?, ctx)?;
            let ns = parse_n_list(n_list)?;
            // leading asymptotics: alpha ~ 2s/(s^2-4)^2 n^-2,
            // beta ~ 1/4 + (s^2+4)/(4(s^2-4)^2) n^-2
            let s2m4 = Complex::with_val(prec, sv.clone().square() - 4u32);
            let denom = Complex::with_val(prec, s2m4.clone().square());
            let ca = Complex::with_val(prec, Complex::with_val(prec, &sv * 2u32) / &denom);
            let cb = Complex::with_val(
                prec,
                Complex::with_val(prec, sv.clone().square() + 4u32) / Complex::with_val(prec, &denom * 4u32),
            );
            let mut rows = Vec::new();
            for n in ns {
                let (ea, eb) = orthopoly::diagonal_recurrence_row(&sv, n, ctx)?;
                let n2 = ctx.f_u(n as u64 * n as u64);
                let pa = Complex::with_val(prec, &ca / &n2);
                let pb = Complex::with_val(prec, Complex::with_val(prec, &cb / &n2) + ctx.f(0.25));
                rows.push(CompareRow { n, exact_a: ea, exact_b: eb, pred_a: pa, pred_b: pb });
            }
            compare_csv(&rows, "genus0", ctx)
        }
        "genus1" => {
            let sv = parse_complex(s.ok_or_else(|| Error::Parse("--s required".into()))?, ctx)?;
            let conj_side = sv.imag().is_sign_positive() && !sv.imag().is_zero();
            let s_data = if conj_side { genus1::conj(&sv, ctx) } else { sv.clone() };
            let data = genus1::genus1_data(&s_data, ctx)?;
            let ns: Vec<u32> = match n_list {
                Some(_) => parse_n_list(n_list)?,
                None => {
                    let cap = n_max.ok_or_else(|| Error::Parse("--n-list or --n-max required".into()))?;
                    genus1::admissible_indices(&data, &genus1::default_eps(ctx), cap, ctx)
                }
            };
            let mut rows = Vec::new();
            for n in ns {
                let (mut pa, mut pb) = genus1::genus1_predict(&data, n, ctx)?;
                if conj_side {
                    pa = genus1::conj(&pa, ctx);
                    pb = genus1::conj(&pb, ctx);
                }
                let (ea, eb) = orthopoly::diagonal_recurrence_row(&sv, n, ctx)?;
                rows.push(CompareRow { n, exact_a: ea, exact_b: eb, pred_a: pa, pred_b: pb });
            }
            compare_csv(&rows, "genus1", ctx)
        }
        "regular" => {
            let ssv = parse_complex(s_star.ok_or_else(|| Error::Parse("--s-star required".into()))?, ctx)?;
            let l1v = parse_complex(l1.ok_or_else(|| Error::Parse("--l1 required".into()))?, ctx)?;
            let ns = parse_n_list(n_list)?;
            let variant = if theorem_form {
                dscale::RegularVariant::TheoremStatement
            } else {
                dscale::RegularVariant::Derivation
            };
            let mut rows = Vec::new();
            for n in ns {
                let (pa, pb) = dscale::regular_ds_predict(&ssv, &l1v, n, variant, ctx)?;
                let s_n = Complex::with_val(prec, &ssv + Complex::with_val(prec, &l1v / ctx.f_u(n as u64)));
                let (ea, eb) = orthopoly::diagonal_recurrence_row(&s_n, n, ctx)?;
                rows.push(CompareRow { n, exact_a: ea, exact_b: eb, pred_a: pa, pred_b: pb });
            }
            compare_csv(&rows, "regular", ctx)
        }
        "critical" => {
            let l2v = parse_float(l2.ok_or_else(|| Error::Parse("--l2 required".into()))?, ctx)?;
            let ns = parse_n_list(n_list)?;
            let sol = dscale::solve_pii_hm(25.0, 25.0, 4000)?;
            let mut rows = Vec::new();
            for n in ns {
                let (pa, pb) = dscale::critical_ds_predict(&Float::with_val(sol.ctx().prec(), &l2v), n, &sol)?;
                // s = 2 + L2 n^(-2/3)
                let n23 = {
                    use rug::ops::Pow;
                    ctx.f_u(n as u64).pow(Float::with_val(prec, 2) / 3u32)
                };
                let s_n = ctx.c_re(&Float::with_val(prec, ctx.f(2) + Float::with_val(prec, &l2v / &n23)));
                let (ea, eb) = orthopoly::diagonal_recurrence_row(&s_n, n, ctx)?;
                rows.push(CompareRow {
                    n,
                    exact_a: ea,
                    exact_b: eb,
                    pred_a: ctx.c_re(&Float::with_val(prec, &pa)),
                    pred_b: ctx.c_re(&Float::with_val(prec, &pb)),
                });
            }
            compare_csv(&rows, "critical", ctx)
        }
        other => Err(Error::Parse(format!("unknown regime {other:?}"))),
    }
}

pub fn quad(omega: &str, n: u32, f_id: &str, ctx: &Ctx) -> Result<String> {
    if n == 0 {
        return Err(Error::Parse("rule needs n >= 1".into()));
    }
    let omega_v = parse_float(omega, ctx)?;
    let prec = ctx.prec();
    // weight e^{i omega z} = e^{-N s z} with N = 1, s = -i omega
    let s = ctx.c_from(&ctx.zero(), &Float::with_val(prec, -&omega_v));
    let rule = orthopoly::gauss_rule(&s, 1, 2 * n, ctx)?;
    let f: Box<dyn Fn(&Complex) -> Complex> = match f_id {
        "one" => Box::new({
            let c = ctx.clone();
            move |_: &Complex| c.c(1, 0)
        }),
        "z" => Box::new(|z: &Complex| z.clone()),
        "z2" => Box::new(|z: &Complex| z.clone().square()),
        "cosz" => Box::new(|z: &Complex| z.clone().cos()),
        "runge" => Box::new({
            let c = ctx.clone();
            move |z: &Complex| {
                let den = Complex::with_val(c.prec(), z.clone().square() / 4u32) + 1u32;
                Complex::with_val(c.prec(), 1u32 / den)
            }
        }),
        other => return Err(Error::Parse(format!("unknown integrand {other:?}"))),
    };
    let approx = orthopoly::oscillatory_integral(&rule, &f, ctx);
    // reference: adaptive integration of f(z) e^{i omega z} over [-1, 1]
    let weight = Weight::new(s.clone(), 1);
    let wfac = |z: &Complex| {
        let e = Complex::with_val(prec, &weight.s * z) * ctx.f(-1);
        e.exp()
    };
    let seg = Path::open(vec![ctx.c(-1, 0), ctx.c(1, 0)])?;
    let reference = pquad::integrate_path_plain(&|z: &Complex| Complex::with_val(prec, f(z) * wfac(z)), &seg, ctx)?;
    let err = abs(&Complex::with_val(prec, &approx - &reference));
    let (apr, api) = complex_parts(&approx, ctx);
    let (rr, ri) = complex_parts(&reference, ctx);
    Ok(format!(
        "{{{}, {}, {}, {}, {}, {}, {}, {}}}\n",
        json_kv("omega", &float_str(&omega_v, ctx)),
        json_kv("nodes", &format!("{}", 2 * n)),
        json_kv("f", f_id),
        json_kv("re_rule", &apr),
        json_kv("im_rule", &api),
        json_kv("re_reference", &rr),
        json_kv("im_reference", &ri),
        json_kv("abs_err", &float_str(&err, ctx)),
    ))
}

pub fn pii(x_left: f64, x_right: f64, nodes: usize) -> Result<String> {
    let sol = dscale::solve_pii_hm(x_left, x_right, nodes)?;
    let ctx = sol.ctx().clone();
    let mut out = String::from("x,q,qprime,D\n");
    for i in 0..sol.xs.len() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            float_str(&sol.xs[i], &ctx),
            float_str(&sol.q[i], &ctx),
            float_str(&sol.qprime[i], &ctx),
            float_str(&sol.dd[i], &ctx),
        ));
    }
    Ok(out)
}
