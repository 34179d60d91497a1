use thiserror::Error;

use crate::quotient::Obstruction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("sublattice is not saturated; its quotient has torsion")]
    Unsaturated,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("cone is not pointed (lineality rank {0})")]
    NotPointed(usize),
    #[error("Hilbert basis needs coordinates up to {needed}, bound is {bound}")]
    BoundExceeded { needed: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ray {index} has length {got}, lattice rank is {rank}")]
    RayLength { index: usize, got: usize, rank: usize },
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("cone {cone} refers to missing ray {ray}")]
    RayIndex { cone: usize, ray: usize },
    #[error("fans are limited to 64 rays")]
    TooManyRays,
    #[error("rays do not span the ambient space")]
    NotSpanning,
    #[error("enumeration refused: more than {0} subsets")]
    SizeGuard(usize),
    #[error("matrix is not a symmetry of the fan")]
    NotAnAutomorphism,
    #[error("selection contains a cone that is not in the fan")]
    ForeignCone,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("acting lattice has rank {got}, fan lattice has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("no good quotient: {0}")]
    Obstructed(Obstruction),
    #[error("the ambient selection has no good quotient")]
    NoGoodQuotient,
    #[error("selection is not contained in the ambient selection")]
    NotContained,
    #[error("acting lattices are not nested")]
    NotNested,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("section has a negative exponent")]
    NegativeExponent,
    #[error("section exponent vector has length {got}, expected {expected}")]
    SectionLength { expected: usize, got: usize },
    #[error("polynomial section has no terms")]
    EmptyPolynomial,
    #[error("declared weight has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("quotient of the lift failed: {0}")]
    RoundTrip(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("symmetry {0} does not map the acting lattice into itself")]
    Incompatible(usize),
    #[error("selection is not maximal for the torus action: {0}")]
    NotMaximal(String),
    #[error("fan is not complete and simplicial")]
    NotCompleteSimplicial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("entries too large for the brute-force oracle")]
    Overflow,
    #[error("acting lattice and fan have different ranks")]
    RankMismatch,
}
