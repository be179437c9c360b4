use std::fmt;

use thiserror::Error;

/// Which quandle axiom a table violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Axiom {
    /// `x ◁ x = x`
    Q1,
    /// every column `x ↦ x ◁ y` is a bijection
    Q2,
    /// `(x ◁ y) ◁ z = (x ◁ z) ◁ (y ◁ z)`
    Q3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Q1 => f.write_str("Q1"),
            Axiom::Q2 => f.write_str("Q2"),
            Axiom::Q3 => f.write_str("Q3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("axiom {axiom} fails at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },

    #[error("group is not abelian: {0} and {1} do not commute")]
    NotAbelian(usize, usize),

    #[error("quandle is not a kei: ({0} ◁ {1}) ◁ {1} != {0}")]
    NotKei(usize, usize),

    #[error("size {size} exceeds enumeration bound {bound}")]
    SizeBound { size: usize, bound: usize },

    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("group order exceeds bound {0}")]
    OrderBoundExceeded(usize),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("quandle is not algebraically connected")]
    NotConnected,

    #[error("invariant failed: {0}")]
    InvariantFailure(String),

    #[error("invalid coset quandle data: {0}")]
    InvalidSpec(String),

    #[error("map is not surjective at level {level}")]
    NotSurjective { level: usize },

    #[error("map is not a homomorphism at level {level}, witness {witness:?}")]
    NotHom { level: usize, witness: Vec<usize> },

    #[error("group map is not well defined: {0}")]
    WellDefinednessFailure(String),

    #[error("projection is not equivariant at level {level}: {detail}")]
    EquivarianceFailure { level: usize, detail: String },

    #[error("elements belong to different towers")]
    TowerMismatch,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("incompatible chain at level {level}: {detail}")]
    IncompatibleChain { level: usize, detail: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("augmented quandle check {kind} fails at {witness:?}")]
    Augmentation { kind: AugmentationFailure, witness: Vec<usize> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot read {0}")]
    Io(String),
}

/// The failure modes of augmented-quandle verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum AugmentationFailure {
    Action,
    AQ1,
    AQ2,
    OperationMismatch,
}

impl fmt::Display for AugmentationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AugmentationFailure::Action => "ActionFailure",
            AugmentationFailure::AQ1 => "AQ1Failure",
            AugmentationFailure::AQ2 => "AQ2Failure",
            AugmentationFailure::OperationMismatch => "OperationMismatch",
        };
        f.write_str(s)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
