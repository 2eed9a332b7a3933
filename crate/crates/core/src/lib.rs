//! Gabidulin rank-metric codes over `GF(q^m)`, `q = 2^s`, built on
//! low-complexity normal bases.
//!
//! The crate provides:
//!
//! * [`base_field`]: arithmetic in `F_q` with global operation counting,
//! * [`extfield`]: normal bases of `GF(q^m)` (Gauss periods of type I and II,
//!   plus a searched fallback) and element arithmetic in normal coordinates,
//! * [`linearized`]: linearized (q-)polynomial algebra,
//! * [`qtransform`]: the q-transform and its inverse,
//! * [`rank_metric`]: rank weight, rank distance and rank-bounded errors,
//! * [`codec`]: code construction, systematic and nonsystematic encoders,
//!   and the time-domain and transform-domain bounded-distance decoders.
//!
//! Every arithmetic entry point reports through the process-wide counters in
//! [`base_field::ops`], so the cost of any call sequence can be measured as a
//! delta between two snapshots.

pub mod base_field;
pub mod codec;
pub mod extfield;
mod fq_poly;
pub mod linearized;
pub mod matrix;
pub mod qtransform;
pub mod rank_metric;

pub use base_field::{FieldParams, FqElem, OpCounter};
pub use codec::{
    CodeSpec, DecodeOutcome, DecodeStatus, FailureReason, KeyEqMode, StepOps, Syndromes,
};
pub use extfield::{BasisKind, ExtensionContext, KindPreference, NBElem};
pub use linearized::QPoly;
pub use matrix::FqMatrix;
pub use rank_metric::{ErrorDecomposition, SymbolVector};

/// Errors shared across the crate. Decoding failures are not errors; they are
/// reported through [`codec::DecodeStatus`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("basis construction failed: {0}")]
    ConstructionFailed(String),
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("elements are linearly dependent")]
    DependentElements,
    #[error("q-degree overflow in symbolic product")]
    DegreeOverflow,
    #[error("singular linear system")]
    SingularSystem,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
