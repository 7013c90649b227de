//! Integer classification of topological fixed point data (TFD) for
//! six-dimensional monotone semifree Hamiltonian circle manifolds whose
//! maximal fixed component is four-dimensional.
//!
//! Everything here is exact integer (or exact rational) arithmetic over
//! degree-2 cohomology lattices of del Pezzo surfaces:
//!
//! - [`lattice`] — intersection forms, anticanonical classes, blow-ups,
//!   basis conversion, effective-cone generators;
//! - [`exceptional`] — enumeration of −1-classes by bounded Diophantine
//!   search, with the closed template list as a cross-check;
//! - [`curves`] — adjunction genus and decompositions of a class into
//!   disjoint realizable components;
//! - [`reduction`] — moment-map level slices, Duistermaat–Heckman evolution
//!   of the reduced symplectic class, wall crossings, positivity tests;
//! - [`invariants`] — closed-form Chern number and second Betti number of a
//!   candidate, plus extremal fixed-component volumes;
//! - [`enumerator`] — the thirteen per-family finite searches, symmetry
//!   canonicalization, and Farkas infeasibility certificates;
//! - [`catalog`] — the 56-row golden classification tables and diffing;
//! - [`verify`] — the end-to-end check that enumeration reproduces the
//!   catalog and that all certificates are valid.

pub mod catalog;
pub mod certificate;
pub mod curves;
pub mod enumerator;
pub mod exceptional;
pub mod family;
pub mod invariants;
pub mod lattice;
pub mod reduction;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("basis mismatch: classes live on {0} and {1}")]
    BasisMismatch(String, String),
    #[error("lattice rank {0} exceeds the del Pezzo bound 9")]
    RankOverflow(usize),
    #[error("operation requires surface root {expected}, got {got}")]
    WrongRoot { expected: String, got: String },
    #[error("level {0} outside slice interval [{1}, {2}]")]
    LevelOutOfRange(i64, i64, i64),
    #[error("inconsistent slice surfaces: {0}")]
    InconsistentSlice(String),
    #[error("enumeration truncated: {0} touches its search box boundary")]
    EnumerationTruncated(String),
    #[error("unknown family label {0:?}")]
    UnknownFamily(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("golden catalog: {0}")]
    GoldenData(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
