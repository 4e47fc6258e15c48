use super::valuation::{valuation, Valuation};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;
use serde::Serialize;

/// Valuation table for a sequence against its successor and a target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadicLimitReport {
    /// v_p(a_i - a_{i+1}).
    pub successive: Vec<Valuation>,
    /// v_p(a_i - target).
    pub to_target: Vec<Valuation>,
    pub successive_non_decreasing: bool,
    pub target_non_decreasing: bool,
}

fn non_decreasing(v: &[Valuation]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

pub fn padic_limit_report<T>(seq: &[Ratio<T>], target: &Ratio<T>, p: &T) -> PadicLimitReport
where
    T: Integer + Clone + Signed,
{
    assert!(!seq.is_empty(), "empty sequence");
    let successive: Vec<Valuation> = seq
        .windows(2)
        .map(|w| valuation(&(w[0].clone() - w[1].clone()), p))
        .collect();
    let to_target: Vec<Valuation> = seq.iter().map(|a| valuation(&(a.clone() - target.clone()), p)).collect();
    PadicLimitReport {
        successive_non_decreasing: non_decreasing(&successive),
        target_non_decreasing: non_decreasing(&to_target),
        successive,
        to_target,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let s = vec![Ratio::new(1i64, 3); 4];
        let r = padic_limit_report(&s, &Ratio::new(1, 3), &2);
        assert!(r.to_target.iter().all(|v| v.is_infinite()));
        assert!(r.successive.iter().all(|v| v.is_infinite()));
    }

    #[test]
    fn powers_to_zero() {
        let s: Vec<_> = (0..6).map(|i| Ratio::from_integer(3i64.pow(i))).collect();
        let r = padic_limit_report(&s, &Ratio::from_integer(0), &3);
        let expect: Vec<_> = (0..6).map(Valuation::Finite).collect();
        assert_eq!(r.to_target, expect);
        assert!(r.target_non_decreasing);
    }
}
