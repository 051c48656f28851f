//! Error type shared by all modules.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Context constructed with fewer than the minimum supported digits.
    InvalidDigits(u32),
    /// A non-finite value (NaN or infinity) escaped an operation.
    NonFinite(&'static str),
    /// Evaluation point violates the configured clearance from a branch cut.
    PointOnCut,
    /// Requested parameter is singular for the operation (e.g. s = 0 for the
    /// genus-0 saddle).
    SingularParameter(&'static str),
    /// Adaptive quadrature stalled above the requested tolerance.
    NoConvergence(&'static str),
    /// Newton iteration diverged or exhausted damping.
    Diverged(&'static str),
    /// Polynomial handed to the root finder has identically vanishing
    /// derivative.
    DegenerateDegree,
    /// sigma_{k,k} vanished to working precision: the degree-(k+1) orthogonal
    /// polynomial may fail to exist.
    DegenerateMoment { n: u32, big_n: u32 },
    /// Derivative of p_n vanished at a computed node.
    ZeroDerivative,
    /// Parameter classifies into a region the operation does not serve.
    WrongRegion(&'static str),
    /// Classification fell inside the ambiguity band around a breaking
    /// curve; carries Re h_cr as a decimal string.
    AmbiguousNearBoundary(String),
    /// Parameter expected on a breaking curve is not on one.
    NotOnBreakingCurve,
    /// Breaking-curve corrector lost the curve.
    LostCurve,
    /// Square-root branch continuity tracking failed.
    BranchJump,
    /// Theta-series truncation insufficient for the requested tolerance.
    TruncationInsufficient,
    /// Theta denominator too close to a lattice zero for a reliable
    /// predictor value.
    NearDegenerate,
    /// Double-scaling parameter classifies outside the expected region.
    RegionMismatch,
    /// Boundary-value solve for Painleve II diverged.
    BvpDiverged,
    /// Interpolation point outside the solved domain.
    OutOfDomain,
    /// Malformed input (CLI / parsing layer).
    Parse(String),
    /// I/O failure while emitting output files.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDigits(d) => write!(f, "working precision {d} digits is below the minimum of 30"),
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::PointOnCut => write!(f, "evaluation point is on (or too close to) the branch cut"),
            Error::SingularParameter(what) => write!(f, "singular parameter: {what}"),
            Error::NoConvergence(what) => write!(f, "no convergence: {what}"),
            Error::Diverged(what) => write!(f, "iteration diverged: {what}"),
            Error::DegenerateDegree => write!(f, "polynomial derivative vanishes identically"),
            Error::DegenerateMoment { n, big_n } => {
                write!(f, "degenerate moment table at n = {n} (N = {big_n}): polynomial may not exist")
            }
            Error::ZeroDerivative => write!(f, "p_n' vanished at a quadrature node"),
            Error::WrongRegion(what) => write!(f, "parameter in wrong region: {what}"),
            Error::AmbiguousNearBoundary(v) => {
                write!(f, "classification ambiguous near breaking curve (Re h_cr = {v})")
            }
            Error::NotOnBreakingCurve => write!(f, "parameter is not on a breaking curve"),
            Error::LostCurve => write!(f, "breaking-curve corrector lost the curve"),
            Error::BranchJump => write!(f, "square-root branch tracking failed"),
            Error::TruncationInsufficient => write!(f, "theta-series truncation insufficient"),
            Error::NearDegenerate => write!(f, "theta denominator too close to a lattice zero"),
            Error::RegionMismatch => write!(f, "double-scaling parameter left the expected region"),
            Error::BvpDiverged => write!(f, "Painleve II boundary-value solve diverged"),
            Error::OutOfDomain => write!(f, "interpolation point outside the solved domain"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// Stable machine-readable name, used by the CLI on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidDigits(_) => "InvalidDigits",
            Error::NonFinite(_) => "NonFinite",
            Error::PointOnCut => "PointOnCut",
            Error::SingularParameter(_) => "SingularParameter",
            Error::NoConvergence(_) => "NoConvergence",
            Error::Diverged(_) => "Diverged",
            Error::DegenerateDegree => "DegenerateDegree",
            Error::DegenerateMoment { .. } => "DegenerateMoment",
            Error::ZeroDerivative => "ZeroDerivative",
            Error::WrongRegion(_) => "WrongRegion",
            Error::AmbiguousNearBoundary(_) => "AmbiguousNearBoundary",
            Error::NotOnBreakingCurve => "NotOnBreakingCurve",
            Error::LostCurve => "LostCurve",
            Error::BranchJump => "BranchJump",
            Error::TruncationInsufficient => "TruncationInsufficient",
            Error::NearDegenerate => "NearDegenerate",
            Error::RegionMismatch => "RegionMismatch",
            Error::BvpDiverged => "BvpDiverged",
            Error::OutOfDomain => "OutOfDomain",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}
