//! Exact construction, verification and classification of Z2xZ2-gradings of
//! the classical complex matrix Lie algebras, together with the local
//! symmetric-space data each grading determines.
//!
//! All arithmetic happens over the Gaussian rationals, so every subspace
//! comparison is decided exactly. The linear algebra layer is generic over
//! [`field::Field`]; everything above it works with the concrete aliases
//! exported here.

#![allow(clippy::needless_range_loop)]

pub mod census;
pub mod exact;
pub mod field;
pub mod gradings;
pub mod groups;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod matrices;
pub mod equivalence;
pub mod symspace;

pub use exact::GaussianRational;

/// The scalar field of every computation above the linear algebra layer.
pub type Scalar = GaussianRational;
pub type Mat = linalg::Matrix<Scalar>;
pub type Subspace = linalg::Subspace<Scalar>;
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("rows or vectors of unequal length")]
    Ragged,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("incompatible shapes {left:?} and {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspaces are not independent")]
    NotDirect,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is neither symmetric nor skew-symmetric")]
    NotSymmetricOrSkew,
    #[error("skew block of odd size {0}")]
    OddSkewBlock(usize),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("group exponent {0} does not divide 4; characters leave Q(i)")]
    UnsupportedExponent(u64),
    #[error("element has {found} coordinates, group has {expected} factors")]
    Arity { expected: usize, found: usize },
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("involution does not preserve component {0}")]
    NotGraded(String),
    #[error("supports of tensor factors meet outside the identity")]
    SupportOverlap,
    #[error("subspace is not invariant under the algebra")]
    NotInvariant,
    #[error("subspace is not contained in the algebra")]
    NotSubalgebra,
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    #[error("argument lies outside the complement m")]
    OutsideComplement,
    #[error("reductivity fails: [h, m] is not contained in m")]
    NotReductive,
    #[error("conjugation does not preserve the carrier")]
    CarrierNotPreserved,
    #[error("operation needs a Lie algebra carrier")]
    NotLieCarrier,
    #[error("grading is invalid: {0}")]
    InvalidGrading(String),
    #[error("structure constants violate antisymmetry")]
    NotAntisymmetric,
    #[error("malformed case id {0:?}")]
    BadCaseId(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
