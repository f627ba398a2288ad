//! Error type shared by the whole kernel.

use alloc::string::String;
use core::fmt;

/// Kernel-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong inside the kernel.
///
/// Variants mirror the error contracts of the public operations; callers
/// that only care about a subset match on the variants they produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Surface genus below the operation's minimum (2 for construction,
    /// 3 for the handle graph).
    GenusTooSmall { genus: u32, needed: u32 },
    /// A crossing word admits no self-intersection-free realization under
    /// the documented slot placement.
    NotEmbeddable,
    /// The curve tightens to one bounding a disk.
    InessentialCurve,
    /// Twist word longer than the configured cap.
    WordTooLong { len: usize, cap: usize },
    /// Twist power above the configured cap.
    TwistPowerTooLarge { power: i64, cap: i64 },
    /// A spec referenced a curve name missing from the library.
    UnknownCurveName(String),
    /// slope_of_curve called on a curve not contained in the chart's handle.
    CurveNotInHandle,
    /// Projection target: the curve can be isotoped off the subsurface.
    MissesSubsurface,
    /// double_surgery precondition: the wave side is already a handle.
    SideIsHandle,
    /// Internal consistency check of outermost_step: no wave found although
    /// the intersection number is positive.
    NoWaveFound,
    /// Operation requires a handle curve.
    NotHandleCurve,
    /// elementary_move / move_domain: the named curve is not in the
    /// decomposition.
    CurveNotInDecomposition,
    /// elementary_move rejected; carries the violated clause.
    BadMove(String),
    /// A search or BFS exceeded its node budget.
    BudgetExceeded { budget: usize },
    /// Guided search gave up; honest failure, not a refutation.
    SearchExhausted { explored: usize },
    /// No handle of the decomposition certifies it outside the ball.
    NoCertificate,
    /// An internal invariant failed; indicates a kernel bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GenusTooSmall { genus, needed } => {
                write!(f, "genus {genus} too small, need at least {needed}")
            }
            Error::NotEmbeddable => write!(f, "crossing word is not embeddable"),
            Error::InessentialCurve => write!(f, "curve is inessential (bounds a disk)"),
            Error::WordTooLong { len, cap } => {
                write!(f, "twist word length {len} exceeds cap {cap}")
            }
            Error::TwistPowerTooLarge { power, cap } => {
                write!(f, "twist power {power} exceeds cap {cap}")
            }
            Error::UnknownCurveName(name) => write!(f, "unknown curve name {name:?}"),
            Error::CurveNotInHandle => write!(f, "curve is not contained in the chart handle"),
            Error::MissesSubsurface => write!(f, "curve misses the subsurface"),
            Error::SideIsHandle => write!(f, "wave side is a handle; induction should stop"),
            Error::NoWaveFound => write!(f, "no wave found despite positive intersection"),
            Error::NotHandleCurve => write!(f, "curve is not a handle curve"),
            Error::CurveNotInDecomposition => write!(f, "curve is not in the decomposition"),
            Error::BadMove(clause) => write!(f, "bad elementary move: {clause}"),
            Error::BudgetExceeded { budget } => write!(f, "budget of {budget} nodes exceeded"),
            Error::SearchExhausted { explored } => {
                write!(f, "search exhausted after {explored} nodes")
            }
            Error::NoCertificate => write!(f, "no handle yields an outside-ball certificate"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}
