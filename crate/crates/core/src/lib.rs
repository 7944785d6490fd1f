//! Two-qubit state-vector simulation built around Bell states and the
//! "same/different" relative bit.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: 2- and 4-dimensional complex states and operators, the
//!   tensor product and the lifting of one-particle operators to the
//!   two-particle space.
//! - [`bell`]: the one-parameter Bell family, separability and state
//!   classification.
//! - [`engine`]: relative and value measurements, single shots and seeded,
//!   reproducible multi-shot runs.
//! - [`circuit`]: a line-oriented language for circuit programs (`.bk` files).
//! - [`selfcheck`]: the invariant suite behind `bellkit check`.
//!
//! ```
//! use bellkit::algebra::{apply2, bell_operator, lift_a, SingleQubitOperator, TwoQubitState};
//! use bellkit::bell::{bell_state, BellDescriptor};
//!
//! let entangled = apply2(&bell_operator(), &TwoQubitState::basis(0));
//! assert!(entangled.approx_eq(&bell_state(&BellDescriptor::PHI_PLUS), 1e-12));
//!
//! let flipped = apply2(&lift_a(&SingleQubitOperator::flip()), &entangled);
//! let disentangled = apply2(&bell_operator(), &flipped);
//! assert!(disentangled.approx_eq(&TwoQubitState::basis(1), 1e-12));
//! ```

pub mod algebra;
pub mod bell;
pub mod circuit;
pub mod engine;
pub mod selfcheck;

pub use algebra::{
    Amplitude, Bit, NamedOperator, Particle, SingleQubitOperator, SingleQubitState,
    TwoQubitOperator, TwoQubitState,
};
pub use bell::{BellClass, BellDescriptor, Sign, StateClassification, StateKind};
pub use circuit::{CircuitProgram, Diagnostic, Preparation, Severity, Step};
pub use engine::{MeasurementRecord, Outcome, RelativeBit, ShotResult, ShotStatistics};

/// Normalization tolerance for states.
pub const EPS_NORM: f64 = 1e-9;
/// Tolerance for operator identities (unitarity, projector, composition).
pub const EPS_OP: f64 = 1e-9;
/// Below this a norm or probability counts as zero.
pub const EPS_ZERO: f64 = 1e-12;
/// Upper bound on the separability defect of a product state.
pub const EPS_SEP: f64 = 1e-8;
/// Reconstruction tolerance of [`bell::classify`].
pub const EPS_CLASS: f64 = 1e-8;
/// A relative bit is definite when `p_same` is this close to 0 or 1.
pub const EPS_DET: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite amplitude")]
    NonFinite,
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("cannot normalize a zero vector")]
    ZeroNorm,
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("unknown particle `{0}`")]
    UnknownParticle(String),
    #[error("s0 = {0} is outside [0, 1]")]
    S0OutOfRange(f64),
    #[error("malformed value `{0}`")]
    Malformed(String),
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/states-and-operators.md")]
    struct StatesAndOperators;
    #[doc = include_str!("../../../book/src/lifting.md")]
    struct Lifting;
    #[doc = include_str!("../../../book/src/bell-states.md")]
    struct BellStates;
    #[doc = include_str!("../../../book/src/separability.md")]
    struct Separability;
    #[doc = include_str!("../../../book/src/measurement.md")]
    struct Measurement;
    #[doc = include_str!("../../../book/src/relative-bit.md")]
    struct RelativeBit;
    #[doc = include_str!("../../../book/src/circuits.md")]
    struct Circuits;
    #[doc = include_str!("../../../book/src/sampling.md")]
    struct Sampling;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
