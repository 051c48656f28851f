//! Arbitrary-precision numerics for monic polynomials orthogonal on [-1,1]
//! against the complex varying weight exp(-N s z).
//!
//! The crate is organized in layers:
//!
//! * [`ctx`], [`cplx`], [`path`] - precision context, complex scalars
//!   (backed by MPFR/MPC via `rug`), integration contours.
//! * [`branch`], [`quad`], [`solve`] - branch-controlled square roots,
//!   tanh-sinh path integration, Newton and Aberth-Ehrlich solvers.
//! * [`orthopoly`] - moments, recurrence coefficients, polynomial zeros and
//!   the complex Gaussian quadrature rule.
//! * [`phase`], [`trajectory`] - the genus-0 modified external field, the
//!   breaking curves in the s-plane, region classification, and trajectories
//!   of quadratic differentials.
//! * [`genus1`] - two-cut endpoint solves, Riemann-surface periods, theta
//!   functions and the genus-1 recurrence predictor.
//! * [`dscale`] - double-scaling predictors near regular and critical
//!   breaking points, including the Painleve II boundary-value solve.

pub mod branch;
pub mod cplx;
pub mod ctx;
pub mod dscale;
pub mod error;
pub mod fmt;
pub mod genus1;
pub mod orthopoly;
pub mod path;
pub mod phase;
pub mod quad;
pub mod solve;
pub mod trajectory;

pub use cplx::BigComplex;
pub use ctx::Ctx;
pub use error::{Error, Result};
pub use path::Path;
