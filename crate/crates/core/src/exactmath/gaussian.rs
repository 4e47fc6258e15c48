use num_integer::Integer;
use num_rational::Ratio;
use num_traits::One;

fn pow<T: Clone + One + std::ops::Mul<Output = T>>(q: &T, e: u32) -> T {
    let mut r = T::one();
    for _ in 0..e {
        r = r * q.clone();
    }
    r
}

/// Gaussian binomial coefficient binom(a, b)_q; zero when b > a.
pub fn gaussian_binomial<T>(a: u32, b: u32, q: &T) -> T
where
    T: Integer + Clone,
{
    if b > a {
        return T::zero();
    }
    let b = b.min(a - b);
    let mut num = T::one();
    let mut den = T::one();
    for k in 0..b {
        num = num * (pow(q, a - k) - T::one());
        den = den * (pow(q, k + 1) - T::one());
    }
    num / den
}

/// binom(oo, n-1)_q = prod_{j=1}^{n-1} 1/(1 - q^j).
pub fn limit_gaussian<T>(n: u32, q: &T) -> Ratio<T>
where
    T: Integer + Clone,
{
    let mut den = T::one();
    for j in 1..n {
        den = den * (T::one() - pow(q, j));
    }
    if den.is_zero() {
        panic!("limit_gaussian needs q >= 2");
    }
    Ratio::new(T::one(), den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn examples() {
        assert_eq!(gaussian_binomial(2, 1, &2i64), 3);
        assert_eq!(gaussian_binomial(7, 0, &5i64), 1);
        assert_eq!(gaussian_binomial(4, 2, &2i64), 35);
        assert_eq!(gaussian_binomial(2, 3, &2i64), 0);
        assert_eq!(gaussian_binomial(8, 2, &BigInt::from(5)), BigInt::from(317886556));
    }

    #[test]
    fn limits() {
        assert_eq!(limit_gaussian(2, &2i64), Ratio::from_integer(-1));
        assert_eq!(limit_gaussian(3, &2i64), Ratio::new(1, 3));
        assert_eq!(limit_gaussian(1, &5i64), Ratio::from_integer(1));
    }
}
