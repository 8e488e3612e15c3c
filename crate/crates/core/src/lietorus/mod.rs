//! Classical Lie tori realized as matrix algebras over quantum tori.

mod controls;
mod matrix;
mod model;
mod params;
mod verify;

use thiserror::Error;

pub use controls::{general_linear, orthogonal_unchecked};
pub use matrix::MatElement;
pub use model::{AlgebraKind, Component, LieTorusModel, Position};
pub use params::{involution_torus, ConstructionParams, Family, QuantumFactor};
pub use verify::{verify_axioms, AxiomEntry, AxiomReport, AxiomStatus, Witness, CHECK_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family:?} requires r >= {min}")]
    RankTooSmall { family: Family, min: usize },
    #[error("quantum factor {0} is not of the form M:e with M >= 2 and ζ_M^e != 1")]
    BadQuantum(String),
    #[error("symplectic model excluded for r={r}, k={k}, p={p}")]
    SymplecticExcluded { r: usize, k: usize, p: u8 },
    #[error("p must be 0, 1 or 2; got {0}")]
    BadP(u8),
    #[error("delta must contain at least one vector")]
    EmptyDelta,
    #[error("too few diagonal entries: m = {m}")]
    TooFewDiagonalEntries { m: usize },
    #[error("delta[{index}] has length {got}, expected {expected}")]
    DeltaLength { index: usize, expected: usize, got: usize },
    #[error("delta[0] must be the zero vector")]
    FirstDeltaNonzero,
    #[error("delta[{index}] is not a hermitian degree")]
    DeltaNotHermitian { index: usize },
    #[error("delta[{first}] and delta[{second}] agree modulo 2")]
    DeltaCollision { first: usize, second: usize },
    #[error("torus: {0}")]
    Torus(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("root vector has length {got}, expected {expected}")]
    RootLength { expected: usize, got: usize },
    #[error("degree vector has length {got}, expected {expected}")]
    DegreeLength { expected: usize, got: usize },
    #[error("degree {0:?} is not in the degree lattice")]
    DegreeNotInLattice(Vec<i64>),
}

#[cfg(test)]
mod tests;
