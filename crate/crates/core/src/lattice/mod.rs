//! Finite-index sublattices of Z_p^n in canonical lower-triangular Hermite
//! normal form, their enumeration, membership, elementary divisors and
//! lattice operations.

mod divisor;
mod echelon;
mod enumerate;
mod hnf;
mod ops;

pub use divisor::DivisorType;
pub use echelon::snf_exponents;
pub use enumerate::{compositions, Chunk, Enumerator, LatticeIter};
pub use hnf::{HNFLattice, Residues};
pub use ops::{canonicalize, canonicalize_bounded, divisor_type, intersect, primitive_part, sum, superlattices_index_p};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("generators do not span a finite-index sublattice")]
    RankDeficient,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid HNF data: {0}")]
    Invalid(String),
    #[error("index p^{0} exceeds the machine-word range of the enumerator")]
    TooLarge(u32),
}

/// Enumeration of all sublattices of index p^i (counting only).
pub fn enumerate(n: usize, p: u64, i: u32) -> LatticeIter {
    Enumerator::new(n, p, i).iter()
}
