//! Exact integers, rationals, p-adic valuations, Gaussian binomials,
//! truncated series and rational-function reconstruction.

mod fit;
mod gaussian;
pub mod modp;
mod padic;
mod series;
mod valuation;

pub use fit::{fit_product_form, fit_rational, DenominatorFactor, FitOptions, ProductFormFit, RationalFit};
pub use gaussian::{gaussian_binomial, limit_gaussian};
pub use padic::{padic_limit_report, PadicLimitReport};
pub use series::{SeriesError, TruncatedSeries};
pub use valuation::{valuation, valuation_int, Valuation};
