//! Exact enumeration of sublattices, subalgebras and ideals of finite-dimensional
//! Z_p-algebras, zeta-series reconstruction, Bruhat-cell diagnostics and
//! polynomial congruence counting.
//!
//! Arithmetic is exact throughout. The series and valuation layer in
//! [`exactmath`] is generic over the integer scalar; the aliases below fix the
//! concrete types used by the rest of the crate.

pub mod algebra;
pub mod bruhat;
pub mod counting;
pub mod exactmath;
pub mod igusa;
pub mod io;
pub mod lattice;
pub mod par;
pub mod suites;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational.
pub type Rational = BigRational;
/// Truncated power series with rational coefficients.
pub type Series = exactmath::TruncatedSeries<Rational>;
/// Rational-function fit with integer numerator.
pub type Fit = exactmath::RationalFit<Int>;
