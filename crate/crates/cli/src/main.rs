//! Command-line front end: exact recurrence tables, zeros, phase-portrait
//! data, two-cut surface data, double-scaling predictors, and the
//! exact-vs-asymptotic comparison harness, all emitted as deterministic
//! CSV/JSON with numbers carried as decimal strings.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use kisslab_core::{Ctx, Error};

#[derive(Parser)]
#[command(name = "kisslab", version, about = "computational laboratory for complex-weight orthogonal polynomials on [-1,1]")]
struct Cli {
    /// Decimal working digits (>= 30); KLAB_DIGITS overrides the default.
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Output file path (stdout when omitted). Files are written atomically.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonal recurrence table (N = n) as CSV.
    Recurrence {
        /// Parameter s, e.g. "1", "-2i", "0.5-0.25i".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, value_name = "N")]
        n_max: u32,
    },
    /// Zeros of the diagonal polynomial p_n as CSV.
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        n: u32,
    },
    /// The critical parameter t_c.
    Tc,
    /// Phase-portrait region of s as JSON.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Breaking-curve tolerance band.
        #[arg(long, default_value = "1e-8")]
        tol: String,
    },
    /// Trace a breaking curve as CSV.
    BreakingCurve {
        /// plus | minus | ray-pos | ray-neg
        #[arg(long)]
        branch: String,
        #[arg(long, default_value = "0.01")]
        step: String,
    },
    /// Critical graph of the phase quadratic differential as CSV.
    Trajectories {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Two-cut endpoint and surface data as JSON.
    Endpoints {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Exact-vs-predicted comparison table as CSV.
    Compare {
        /// genus0 | genus1 | regular | critical
        #[arg(long)]
        regime: String,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Comma-separated list of n values.
        #[arg(long)]
        n_list: Option<String>,
        /// Largest n (genus1 regime fills admissible indices up to this).
        #[arg(long)]
        n_max: Option<u32>,
        /// Regular regime: breaking point s*.
        #[arg(long, allow_hyphen_values = true)]
        s_star: Option<String>,
        /// Regular regime: offset scale L1.
        #[arg(long, allow_hyphen_values = true)]
        l1: Option<String>,
        /// Regular regime: evaluate the verbatim theorem statement instead
        /// of the derivation-form predictor.
        #[arg(long, default_value_t = false)]
        theorem_form: bool,
        /// Critical regime: offset scale L2 < 0.
        #[arg(long, allow_hyphen_values = true)]
        l2: Option<String>,
    },
    /// Predictor-only table for the two-cut regime as CSV, with the
    /// admissibility flag per index.
    Genus1Predict {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, value_name = "N")]
        n_max: u32,
    },
    /// Complex Gaussian quadrature demo for oscillatory integrands, JSON.
    Quad {
        /// Oscillation frequency in exp(i omega z).
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// Half the rule size: the rule uses the zeros of p_{2n}.
        #[arg(long)]
        n: u32,
        /// one | z | z2 | cosz | runge
        #[arg(long, default_value = "one")]
        f: String,
    },
    /// Painleve II boundary-value solution samples as CSV.
    Pii {
        #[arg(long, default_value_t = 25.0)]
        x_left: f64,
        #[arg(long, default_value_t = 25.0)]
        x_right: f64,
        #[arg(long, default_value_t = 4000)]
        nodes: usize,
    },
}

fn resolve_digits(cli_digits: Option<u32>) -> Result<u32, Error> {
    if let Some(d) = cli_digits {
        return Ok(d);
    }
    if let Ok(env) = std::env::var("KLAB_DIGITS") {
        return env
            .trim()
            .parse::<u32>()
            .map_err(|e| Error::Parse(format!("KLAB_DIGITS: {e}")));
    }
    Ok(Ctx::DEFAULT_DIGITS)
}

fn main() {
    let cli = Cli::parse();
    let digits = match resolve_digits(cli.digits) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            std::process::exit(2);
        }
    };
    let ctx = match Ctx::new(digits) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            std::process::exit(2);
        }
    };
    let result = match &cli.command {
        Command::Recurrence { s, n_max } => commands::recurrence(s, *n_max, &ctx),
        Command::Zeros { s, n } => commands::zeros(s, *n, &ctx),
        Command::Tc => commands::tc(&ctx),
        Command::Classify { s, tol } => commands::classify(s, tol, &ctx),
        Command::BreakingCurve { branch, step } => commands::breaking_curve(branch, step, &ctx),
        Command::Trajectories { s } => commands::trajectories(s, &ctx),
        Command::Endpoints { s } => commands::endpoints(s, &ctx),
        Command::Compare {
            regime,
            s,
            n_list,
            n_max,
            s_star,
            l1,
            theorem_form,
            l2,
        } => commands::compare(
            regime,
            s.as_deref(),
            n_list.as_deref(),
            *n_max,
            s_star.as_deref(),
            l1.as_deref(),
            *theorem_form,
            l2.as_deref(),
            &ctx,
        ),
        Command::Genus1Predict { s, n_max } => commands::genus1_predict_table(s, *n_max, &ctx),
        Command::Quad { omega, n, f } => commands::quad(omega, *n, f, &ctx),
        Command::Pii { x_left, x_right, nodes } => commands::pii(*x_left, *x_right, *nodes),
    };
    match result {
        Ok(payload) => {
            if let Err(e) = output::emit(&payload, cli.out.as_deref()) {
                eprintln!("{}: {e}", e.name());
                std::process::exit(3);
            }
        }
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            let code = match e {
                Error::Parse(_) | Error::InvalidDigits(_) => 2,
                _ => 3,
            };
            std::process::exit(code);
        }
    }
}
