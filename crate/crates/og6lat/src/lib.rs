//! Exact-arithmetic toolkit for even integer lattices, built around the
//! lattice theory used to classify prime-order birational transformations
//! of irreducible holomorphic symplectic sixfolds of OG6 type.
//!
//! The crate provides:
//! - even nondegenerate lattices with exact determinants and signatures
//!   ([`lattice`]),
//! - discriminant groups and finite quadratic forms via Smith normal form
//!   ([`finite`]),
//! - the gluing calculus certifying primitive embeddings ([`embeddings`]),
//! - existence and U-splitting tests for p-elementary genera
//!   ([`elementary`]),
//! - the OG6 decision procedures and the 28-row classification corpus
//!   ([`classifier`]),
//! - a lattice-expression parser and report front end ([`expr`], [`cli`]).
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod classifier;
pub mod cli;
pub mod elementary;
pub mod embeddings;
pub mod expr;
pub mod finite;
pub mod lattice;
mod mat;

pub use classifier::{
    classify_row, classify_table, lambda11_invariants, lambda11_signature,
    picard_incidence_actions, sigma_class_exists, sigma_complement, ClassificationRow,
    MukaiVector, Verdict,
};
pub use elementary::{construct_witness, exists_elementary, splits_off_u, ElementaryGenusQuery};
pub use embeddings::{
    div_one_shortcut, divisibility_in_ambient, embedding_exists_in_unimodular,
    enumerate_gluings, unimodular_complement_disc, EmbeddingAnswer, EmbeddingCertificate,
    GluingData,
};
pub use expr::{parse_lattice, LatticeExpr};
pub use finite::{
    delta_invariant, discriminant_form, forms_isometric, same_genus, smith,
    ElementaryInvariants, FiniteQuadraticForm, ParityDatum, SmithDecomposition,
};
pub use lattice::{direct_sum, direct_sum_all, make_named, twist, Lattice, LatticeVector, Signature};

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gram matrix is not symmetric or not square")]
    NotSymmetric,
    #[error("odd diagonal entry {0}: only even lattices are supported")]
    OddDiagonal(i64),
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector has no divisibility")]
    ZeroVector,
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("bad parameter for {name}: {detail}")]
    BadParameter { name: String, detail: String },
    #[error("twist by 0 is degenerate")]
    ZeroTwist,
    #[error("undecided by brute force: {0}")]
    UndecidedByBruteForce(String),
    #[error("form is not 2-elementary")]
    NotTwoElementary,
    #[error("coinvariant lattice is not {0}-elementary")]
    NotPElementary(u64),
    #[error("signature ({0},{1}) has no negative square to trade")]
    NoNegativePart(usize, usize),
    #[error("target signature ({0},{1}) is not that of an even unimodular lattice")]
    NonUnimodularTarget(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },
}
