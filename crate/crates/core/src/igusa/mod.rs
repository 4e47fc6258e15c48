//! Polynomial congruence counting M_i(f), Poincare series, Jacobian
//! elementary divisors, Hensel lifting and the reverse-Hensel pole bound.

mod count;
mod local;
mod poly;

pub use count::{count_lifting, count_naive, count_solutions, poincare_coeffs, slope_report, PoincareSeries, SolutionCounts};
pub use local::{hensel_lift, homogeneous_bound, homogeneous_bound_check, jacobian_profile, reverse_hensel_check, HomogeneousReport, ReverseHenselReport};
pub use poly::{PolySystem, Polynomial};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IgusaError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("naive count needs {0} evaluations, over the budget")]
    Budget(String),
    #[error("system is not homogeneous of the declared degree")]
    NotHomogeneous,
    #[error("Hensel precondition 2 nu(det J) < nu(f) fails")]
    NotApplicable,
    #[error("Hensel lifting needs a square system")]
    NotSquare,
    #[error("lambda_j must lie in [0, 1] with one value per variable")]
    BadLambda,
}
