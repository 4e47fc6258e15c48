use super::series::TruncatedSeries;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::Serialize;
use std::fmt;

/// The factor (1 - p^a t^b)^multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DenominatorFactor {
    pub a: u32,
    pub b: u32,
    pub multiplicity: u32,
}

/// numerator / prod (1 - p^a t^b)^m, matching the input through `verified_through`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFit<T> {
    pub prime: u64,
    pub numerator: Vec<T>,
    pub denominator: Vec<DenominatorFactor>,
    pub verified_through: usize,
}

/// A fit whose numerator is itself a product of grid factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFormFit<T> {
    pub fit: RationalFit<T>,
    pub numerator_factors: Vec<DenominatorFactor>,
}

#[derive(Clone, Debug)]
pub struct FitOptions {
    /// Candidate (a, b) pairs.
    pub candidates: Vec<(u32, u32)>,
    pub max_multiplicity: u32,
    /// Spare coefficients required beyond deg Q + deg P.
    pub margin: usize,
}

impl FitOptions {
    /// All (a, b) with a <= a_max, 1 <= b <= b_max.
    pub fn grid(a_max: u32, b_max: u32, max_multiplicity: u32) -> Self {
        let mut candidates = Vec::new();
        for a in 0..=a_max {
            for b in 1..=b_max {
                candidates.push((a, b));
            }
        }
        Self { candidates, max_multiplicity, margin: 2 }
    }
}

fn int_pow<T: Integer + Clone>(p: &T, e: u32) -> T {
    let mut r = T::one();
    for _ in 0..e {
        r = r * p.clone();
    }
    r
}

/// Coefficients of (1 - p^a t^b).
fn factor_poly<T: Integer + Clone>(p: &T, a: u32, b: u32) -> Vec<T> {
    let mut v = vec![T::zero(); b as usize + 1];
    v[0] = T::one();
    v[b as usize] = T::zero() - int_pow(p, a);
    v
}

fn poly_mul<T: Integer + Clone>(x: &[T], y: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    out
}

/// Exact division by a polynomial with constant term 1.
fn poly_div_monic0<T: Integer + Clone>(x: &[T], d: &[T]) -> Option<Vec<T>> {
    if d.len() > x.len() {
        return None;
    }
    let mut rem = x.to_vec();
    let qlen = x.len() - d.len() + 1;
    let mut q = vec![T::zero(); qlen];
    for i in 0..qlen {
        let c = rem[i].clone();
        q[i] = c.clone();
        if !c.is_zero() {
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dj.clone();
            }
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.len() > 1 && v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn sorted_candidates(c: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut v = c.to_vec();
    v.sort();
    v.dedup();
    v.retain(|&(_, b)| b >= 1);
    v
}

/// Visit multisets of candidate factors of exact degree `deg` in
/// lexicographic order of their sorted factor lists. Stops when `visit`
/// returns true.
fn for_each_multiset(
    cands: &[(u32, u32)],
    max_mult: u32,
    deg: u32,
    visit: &mut dyn FnMut(&[(u32, u32)]) -> bool,
) -> bool {
    fn go(
        cands: &[(u32, u32)],
        start: usize,
        used: &mut Vec<(u32, u32)>,
        counts: &mut Vec<u32>,
        max_mult: u32,
        left: u32,
        visit: &mut dyn FnMut(&[(u32, u32)]) -> bool,
    ) -> bool {
        if left == 0 {
            return visit(used);
        }
        for idx in start..cands.len() {
            let (_, b) = cands[idx];
            if b > left || counts[idx] >= max_mult {
                continue;
            }
            counts[idx] += 1;
            used.push(cands[idx]);
            let stop = go(cands, idx, used, counts, max_mult, left - b, visit);
            used.pop();
            counts[idx] -= 1;
            if stop {
                return true;
            }
        }
        false
    }
    let mut counts = vec![0; cands.len()];
    go(cands, 0, &mut Vec::new(), &mut counts, max_mult, deg, visit)
}

fn group(list: &[(u32, u32)]) -> Vec<DenominatorFactor> {
    let mut out: Vec<DenominatorFactor> = Vec::new();
    for &(a, b) in list {
        match out.last_mut() {
            Some(f) if f.a == a && f.b == b => f.multiplicity += 1,
            _ => out.push(DenominatorFactor { a, b, multiplicity: 1 }),
        }
    }
    out
}

/// Try the denominator given by `list`; return the integer numerator if it
/// fits with the required spare coefficients.
fn try_denominator<T>(s: &[Ratio<T>], p: &T, list: &[(u32, u32)], margin: usize) -> Option<Vec<T>>
where
    T: Integer + Clone + Signed,
{
    let n = s.len() - 1;
    let mut q = vec![T::one()];
    for &(a, b) in list {
        q = poly_mul(&q, &factor_poly(p, a, b));
    }
    let dq = q.len() - 1;
    if n + 1 < dq + margin {
        return None;
    }
    let dmax = n + 1 - margin - dq;
    let coeff = |j: usize| -> Ratio<T> {
        let mut acc = Ratio::zero();
        for (k, qk) in q.iter().enumerate().take(j + 1) {
            if !qk.is_zero() {
                acc = acc + s[j - k].clone() * Ratio::from_integer(qk.clone());
            }
        }
        acc
    };
    for j in (dmax + 1..=n).rev() {
        if !coeff(j).is_zero() {
            return None;
        }
    }
    let mut num = Vec::with_capacity(dmax + 1);
    for j in 0..=dmax.min(n) {
        let c = coeff(j);
        if !c.is_integer() {
            return None;
        }
        num.push(c.to_integer());
    }
    trim(&mut num);
    if num.iter().all(|c| c.is_zero()) {
        return None;
    }
    Some(num)
}

/// Minimal-degree denominator prod (1 - p^a t^b)^m over the candidate grid
/// for which numerator = denominator * series is a polynomial, confirmed by
/// `margin` spare coefficients. Ties go to the lexicographically first
/// sorted factor list.
pub fn fit_rational<T>(series: &TruncatedSeries<Ratio<T>>, opts: &FitOptions) -> Option<RationalFit<T>>
where
    T: Integer + Clone + Signed + FromPrimitive,
{
    search(series, opts, false).map(|f| f.fit)
}

/// Like [`fit_rational`] but additionally requires the numerator to factor
/// into grid factors (1 - p^a t^b). Recovers closed forms that are written
/// with a common factor between numerator and denominator.
pub fn fit_product_form<T>(series: &TruncatedSeries<Ratio<T>>, opts: &FitOptions) -> Option<ProductFormFit<T>>
where
    T: Integer + Clone + Signed + FromPrimitive,
{
    search(series, opts, true)
}

fn search<T>(series: &TruncatedSeries<Ratio<T>>, opts: &FitOptions, product: bool) -> Option<ProductFormFit<T>>
where
    T: Integer + Clone + Signed + FromPrimitive,
{
    let p = T::from_u64(series.prime)?;
    let s = &series.coeffs;
    if s.iter().all(|c| c.is_zero()) {
        return None;
    }
    let cands = sorted_candidates(&opts.candidates);
    let n = s.len() - 1;
    let mut found = None;
    for deg in 0..=(n + 1).saturating_sub(opts.margin) as u32 {
        for_each_multiset(&cands, opts.max_multiplicity, deg, &mut |list| {
            let Some(num) = try_denominator(s, &p, list, opts.margin) else {
                return false;
            };
            let numerator_factors = if product {
                match factor_numerator(&num, &p, &cands, opts.max_multiplicity) {
                    Some(f) => f,
                    None => return false,
                }
            } else {
                Vec::new()
            };
            found = Some(ProductFormFit {
                fit: RationalFit {
                    prime: series.prime,
                    numerator: num,
                    denominator: group(list),
                    verified_through: n,
                },
                numerator_factors,
            });
            true
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// Write `num` as a product of grid factors, if possible.
fn factor_numerator<T>(num: &[T], p: &T, cands: &[(u32, u32)], max_mult: u32) -> Option<Vec<DenominatorFactor>>
where
    T: Integer + Clone + Signed,
{
    if !num[0].is_one() {
        return None;
    }
    let deg = (num.len() - 1) as u32;
    let mut result = None;
    for_each_multiset(cands, max_mult, deg, &mut |list| {
        let mut rest = num.to_vec();
        for &(a, b) in list {
            match poly_div_monic0(&rest, &factor_poly(p, a, b)) {
                Some(mut q) => {
                    trim(&mut q);
                    rest = q;
                }
                None => return false,
            }
        }
        if rest.len() == 1 && rest[0].is_one() {
            result = Some(group(list));
            true
        } else {
            false
        }
    });
    result
}

impl<T> RationalFit<T>
where
    T: Integer + Clone + Signed + FromPrimitive,
{
    pub fn denominator_poly(&self) -> Vec<T> {
        let p = T::from_u64(self.prime).expect("prime fits the scalar type");
        let mut q = vec![T::one()];
        for f in &self.denominator {
            for _ in 0..f.multiplicity {
                q = poly_mul(&q, &factor_poly(&p, f.a, f.b));
            }
        }
        q
    }

    /// Series expansion of numerator / denominator through t^order.
    pub fn expand(&self, order: usize) -> TruncatedSeries<Ratio<T>> {
        let num: Vec<Ratio<T>> = self.numerator.iter().cloned().map(Ratio::from_integer).collect();
        let den: Vec<Ratio<T>> = self.denominator_poly().into_iter().map(Ratio::from_integer).collect();
        let n = TruncatedSeries::from_poly(self.prime, &num, order);
        let d = TruncatedSeries::from_poly(self.prime, &den, order);
        n.div(&d).expect("denominator has constant term 1")
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, prime: u64, fs: &[DenominatorFactor]) -> fmt::Result {
    if fs.is_empty() {
        return write!(f, "1");
    }
    for (i, x) in fs.iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        let c = (prime as u128).pow(x.a);
        let t = if x.b == 1 { "t".to_string() } else { format!("t^{}", x.b) };
        let coef = if c == 1 { String::new() } else { format!("{c}") };
        write!(f, "(1-{coef}{t})")?;
        if x.multiplicity > 1 {
            write!(f, "^{}", x.multiplicity)?;
        }
    }
    Ok(())
}

fn write_poly<T: fmt::Display + Zero + Signed>(f: &mut fmt::Formatter<'_>, poly: &[T]) -> fmt::Result {
    let mut first = true;
    for (i, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
        let mag = c.abs();
        let term = match i {
            0 => format!("{mag}"),
            1 if mag.is_one() => "t".to_string(),
            1 => format!("{mag}t"),
            _ if mag.is_one() => format!("t^{i}"),
            _ => format!("{mag}t^{i}"),
        };
        write!(f, "{sign}{term}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<T: fmt::Display + Zero + Signed> fmt::Display for RationalFit<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_poly(f, &self.numerator)?;
        write!(f, ") / (")?;
        write_factors(f, self.prime, &self.denominator)?;
        write!(f, ")")
    }
}

impl<T: fmt::Display + Zero + Signed> fmt::Display for ProductFormFit<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factors(f, self.fit.prime, &self.numerator_factors)?;
        write!(f, " / ")?;
        write_factors(f, self.fit.prime, &self.fit.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn series(p: u64, v: &[i64]) -> TruncatedSeries<Ratio<BigInt>> {
        TruncatedSeries::new(p, v.iter().map(|&x| Ratio::from_integer(BigInt::from(x))).collect())
    }

    #[test]
    fn abelian_rank_two() {
        let s = series(2, &[1, 3, 7, 15, 31, 63, 127]);
        let fit = fit_rational(&s, &FitOptions::grid(4, 3, 3)).unwrap();
        assert_eq!(fit.numerator, vec![BigInt::from(1)]);
        assert_eq!(
            fit.denominator,
            vec![
                DenominatorFactor { a: 0, b: 1, multiplicity: 1 },
                DenominatorFactor { a: 1, b: 1, multiplicity: 1 }
            ]
        );
        assert_eq!(fit.expand(6), s);
    }

    #[test]
    fn zero_series_has_no_fit() {
        let s = series(2, &[0; 8]);
        assert!(fit_rational(&s, &FitOptions::grid(4, 3, 3)).is_none());
    }

    #[test]
    fn product_form_splits_numerator() {
        // (1-t^2)/((1-t)^2) = (1+t)/(1-t): reduced has degree 1, product form degree 2
        let s = series(3, &[1, 2, 2, 2, 2, 2, 2, 2]);
        let reduced = fit_rational(&s, &FitOptions::grid(1, 2, 2)).unwrap();
        assert_eq!(reduced.numerator, vec![BigInt::from(1), BigInt::from(1)]);
        let pf = fit_product_form(&s, &FitOptions::grid(1, 2, 2)).unwrap();
        assert_eq!(pf.numerator_factors, vec![DenominatorFactor { a: 0, b: 2, multiplicity: 1 }]);
        assert_eq!(pf.fit.denominator, vec![DenominatorFactor { a: 0, b: 1, multiplicity: 2 }]);
        assert_eq!(pf.to_string(), "(1-t^2) / (1-t)^2");
    }
}
