//! Validated computation of heteroclinic ejection-collision orbits in the
//! planar circular restricted three body problem (CRTBP).
//!
//! The crate builds enclosures from the ground up: midpoint-radius ball
//! arithmetic ([`rigor`]), Taylor and Chebyshev series algebras with rigorous
//! tail bookkeeping ([`series`]), the CRTBP vector fields and their
//! Levi-Civita regularizations written once over an abstract Banach-algebra
//! scalar ([`dynamics`]), a three-segment boundary value problem recast as a
//! fixed-point map ([`bvp`]), Newton-Kantorovich contraction certificates
//! ([`certify`]), and certified parameter continuation with saddle-node
//! detection ([`branch`]).  The [`pipeline`] module wires these together for
//! the command line front end.

pub mod artifact;
pub mod branch;
pub mod bvp;
pub mod certify;
pub mod config;
pub mod dynamics;
pub mod pipeline;
pub mod rigor;
pub mod series;

use thiserror::Error;

/// Crate-wide error type.  Variants mirror the failure modes of the
/// individual subsystems so callers can match on what actually went wrong.
#[derive(Debug, Error)]
pub enum Error {
    // -- ball arithmetic --
    #[error("divisor enclosure contains zero")]
    DivisionByZeroEnclosure,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("dyadic value not exactly representable: {0}")]
    OverflowError(String),

    // -- series algebra --
    #[error("series bases or weights do not match")]
    BasisMismatch,
    #[error("series range not bounded away from zero")]
    NotBoundedAwayFromZero,
    #[error("validation defect too large: |u| = {0}")]
    DefectTooLarge(f64),

    // -- dynamics --
    #[error("distance enclosure to a primary touches zero")]
    CollisionProximity,
    #[error("state enclosure touches a mirrored Levi-Civita singularity")]
    MirrorSingularity,
    #[error("velocity transform undefined: |z|^2 enclosure touches zero")]
    OriginSingularity,

    // -- boundary value problem --
    #[error("negative radicand in ejection/collision circle constraint")]
    NegativeRadicand,
    #[error("iteration failed to converge: {0}")]
    NoConvergence(String),
    #[error("truncated Jacobian is numerically singular")]
    SingularJacobian,

    // -- certification --
    #[error("certification failed: best epsilon={epsilon:.3e}, K={k:.3e}, r={r:.3e}")]
    CertificationFailed { epsilon: f64, k: f64, r: f64 },
    #[error("fold condition ({0}) failed: enclosure {1}")]
    ConditionFailed(usize, String),
    #[error("parameter domains do not overlap")]
    NoOverlap,

    // -- orchestration --
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
