use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::Add;

/// p-adic valuation. `Infinite` is the valuation of zero and orders above
/// every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }

    /// min(self, cap) as an integer.
    pub fn capped(&self, cap: i64) -> i64 {
        match self {
            Valuation::Finite(v) => (*v).min(cap),
            Valuation::Infinite => cap,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl From<i64> for Valuation {
    fn from(v: i64) -> Self {
        Valuation::Finite(v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Valuation of an integer.
pub fn valuation_int<T>(x: &T, p: &T) -> Valuation
where
    T: Integer + Clone + Signed,
{
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let mut v = 0i64;
    let mut y = x.abs();
    loop {
        let (q, r) = y.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        y = q;
        v += 1;
    }
}

/// Valuation of a rational: v(numerator) - v(denominator).
pub fn valuation<T>(x: &Ratio<T>, p: &T) -> Valuation
where
    T: Integer + Clone + Signed,
{
    match (valuation_int(x.numer(), p), valuation_int(x.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => Valuation::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(a: i64, b: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn examples() {
        let two = BigInt::from(2);
        assert_eq!(valuation(&r(8, 1), &two), Valuation::Finite(3));
        assert_eq!(valuation(&r(3, 4), &two), Valuation::Finite(-2));
        assert_eq!(valuation(&r(5, 1), &BigInt::from(3)), Valuation::Finite(0));
        assert_eq!(valuation(&r(0, 1), &two), Valuation::Infinite);
        assert_eq!(valuation_int(&-12i64, &2), Valuation::Finite(2));
    }

    #[test]
    fn infinity_orders_last() {
        assert!(Valuation::Infinite > Valuation::Finite(i64::MAX));
        assert_eq!(Valuation::Finite(2) + Valuation::Infinite, Valuation::Infinite);
        let m = [Valuation::Infinite, Valuation::Finite(4), Valuation::Finite(1)];
        assert_eq!(m.iter().min(), Some(&Valuation::Finite(1)));
    }

    #[test]
    fn product_adds() {
        let p = BigInt::from(3);
        let a = r(18, 5);
        let b = r(7, 27);
        assert_eq!(valuation(&(a.clone() * b.clone()), &p), valuation(&a, &p) + valuation(&b, &p));
    }
}
