//! Bruhat-cell parametrization of primitive lattices: cells (type, sigma,
//! beta), the polynomials f^m_{k,l}, weighted homogeneity and the orbit
//! statistics of the dilation and elementary-matrix actions.

mod cell;
mod orbit;
mod poly;
mod sweep;

pub use cell::{cells_for_type, permutations, BruhatCell};
pub use orbit::{additive_weight_preservation, lemma_checks, orbit_stats, EpsilonSign, LemmaCheck, OrbitStats, LEMMA_NAMES};
pub use poly::{cell_weight, f_klm, f_klm_mod, homogeneity_check, homogeneity_reversed, mult_matrix, mult_matrix_forms, scaled_subalgebra_condition, subalgebra_condition, Convention};
pub use sweep::{sweep, SweepOptions, SweepReport};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruhatError {
    #[error("{0} is not a p-adic unit")]
    NotUnit(i128),
    #[error("algebra has no verified grading")]
    Ungraded,
    #[error("orbit statistics need a type with a nonzero jump")]
    TrivialType,
    #[error("mu does not meet the valuation threshold")]
    Threshold,
}
