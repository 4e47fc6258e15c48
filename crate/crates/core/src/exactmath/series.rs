use num_traits::Num;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term is not invertible")]
    NotUnit,
    #[error("series truncated at different orders: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

/// Power series in t truncated after t^order. `coeffs[i]` is the
/// coefficient of t^i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries<T> {
    pub prime: u64,
    pub coeffs: Vec<T>,
}

impl<T> TruncatedSeries<T>
where
    T: Clone + Num,
{
    pub fn new(prime: u64, coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { prime, coeffs }
    }

    /// Polynomial `poly` read as a series through t^order.
    pub fn from_poly(prime: u64, poly: &[T], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|i| poly.get(i).cloned().unwrap_or_else(T::zero))
            .collect();
        Self { prime, coeffs }
    }

    pub fn one(prime: u64, order: usize) -> Self {
        Self::from_poly(prime, &[T::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_poly(self.prime, &self.coeffs, order)
    }

    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries { prime: self.prime, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeffs[i].clone() + other.coeffs[i].clone()).collect();
        Self { prime: self.prime, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeffs[i].clone() - other.coeffs[i].clone()).collect();
        Self { prime: self.prime, coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { prime: self.prime, coeffs }
    }

    /// Multiply by a polynomial, keeping this series' order.
    pub fn mul_poly(&self, poly: &[T]) -> Self {
        self.mul(&Self::from_poly(self.prime, poly, self.order()))
    }

    /// Multiplicative inverse; the constant term must be a unit of `T`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(SeriesError::NotUnit);
        }
        let inv0 = T::one() / c0.clone();
        if !(inv0.clone() * c0).is_one() {
            return Err(SeriesError::NotUnit);
        }
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = T::zero() - acc * inv0.clone();
        }
        Ok(Self { prime: self.prime, coeffs: out })
    }

    /// Quotient by a series with unit constant term.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.inverse()?))
    }
}

impl<T: fmt::Display> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(t^{})", parts.join(", "), self.coeffs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use num_traits::Zero;

    #[test]
    fn geometric_inverse() {
        let s = TruncatedSeries::from_poly(2, &[Ratio::from_integer(1i64), Ratio::from_integer(-2)], 5);
        let inv = s.inverse().unwrap();
        let expect: Vec<_> = (0..6).map(|i| Ratio::from_integer(1i64 << i)).collect();
        assert_eq!(inv.coeffs, expect);
        assert!(s.mul(&inv).coeffs.iter().skip(1).all(|c| c.is_zero()));
    }

    #[test]
    fn integer_unit_only() {
        let s = TruncatedSeries::new(2, vec![2i64, 1]);
        assert_eq!(s.inverse(), Err(SeriesError::NotUnit));
        let u = TruncatedSeries::new(2, vec![-1i64, 3, 0]);
        let inv = u.inverse().unwrap();
        assert_eq!(u.mul(&inv).coeffs, vec![1, 0, 0]);
    }
}
