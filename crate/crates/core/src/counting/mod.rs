//! Closure predicates and zeta-coefficient counters over the lattice
//! enumeration: subalgebras, ideals, weights, types, c_k and the class-2
//! centre splitting.

mod checker;
mod class2;
mod engine;
mod growth;
mod table;

pub use checker::Checker;
pub use class2::class2_split_count;
pub use engine::{c_series, count, count_levels, non_subalgebra_counts, stratified_counts, CountOptions, LevelCounts, Strata};
pub use growth::{local_growth_identity_check, GrowthReport};
pub use table::{CountTable, Kind};

use crate::algebra::StructureAlgebra;
use crate::lattice::HNFLattice;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("lattice is not primitive")]
    NotPrimitive,
    #[error("dimension mismatch between lattice ({0}) and algebra ({1})")]
    Dimension(usize, usize),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error("missing level {0} in the supplied counts")]
    MissingLevel(u32),
}

/// Every product of basis rows lies in the lattice.
pub fn is_subalgebra(lat: &HNFLattice, alg: &StructureAlgebra) -> bool {
    Checker::new(alg, lat.index_exponent()).is_subalgebra(lat)
}

/// e_k y and y e_k lie in the lattice for every basis row y.
pub fn is_ideal(lat: &HNFLattice, alg: &StructureAlgebra) -> bool {
    Checker::new(alg, lat.index_exponent()).is_ideal(lat)
}

/// w(Lambda_0): least w with p^w Lambda_0 a subalgebra.
pub fn weight(lat: &HNFLattice, alg: &StructureAlgebra) -> Result<u32, CountError> {
    if lat.n() != alg.n() {
        return Err(CountError::Dimension(lat.n(), alg.n()));
    }
    if crate::lattice::primitive_part(lat).1 != 0 {
        return Err(CountError::NotPrimitive);
    }
    Ok(Checker::new(alg, lat.index_exponent()).weight(lat))
}
