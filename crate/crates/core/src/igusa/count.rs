use super::poly::PolySystem;
use super::IgusaError;
use crate::exactmath::{modp, valuation_int, TruncatedSeries, Valuation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// Default ceiling on brute-force evaluations and lifting-tree nodes.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// M_i by brute force over (Z/p^i)^n.
pub fn count_naive(sys: &PolySystem, i: u32, budget: u64) -> Result<u128, IgusaError> {
    let p = sys.p as i128;
    let m = modp::pow(p, i);
    let total = (m as u128).checked_pow(sys.n as u32).filter(|&t| t <= budget as u128);
    let Some(total) = total else {
        return Err(IgusaError::Budget(format!("{}^{}", m, sys.n)));
    };
    let mut a = vec![0i128; sys.n];
    let mut count = 0u128;
    for _ in 0..total {
        if sys.polys.iter().all(|f| f.eval_mod(&a, m) == 0) {
            count += 1;
        }
        for x in a.iter_mut() {
            *x += 1;
            if *x < m {
                break;
            }
            *x = 0;
        }
    }
    Ok(count)
}

/// Solutions of J t = rhs over F_p: particular solution and kernel basis.
fn solve_fp(mat: &[Vec<i128>], rhs: &[i128], n: usize, p: i128) -> Option<(Vec<i128>, Vec<Vec<i128>>)> {
    let mut rows: Vec<Vec<i128>> = mat.iter().zip(rhs).map(|(r, &b)| r.iter().copied().chain([b]).map(|x| modp::rem(x, p)).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pr);
        let inv = modp::inv(rows[rank][col], p).unwrap();
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..=n {
                    rows[r][c] = modp::rem(rows[r][c] - f * rows[rank][c], p);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[n] != 0) {
        return None;
    }
    let mut part = vec![0i128; n];
    for (r, &c) in pivots.iter().enumerate() {
        part[c] = rows[r][n];
    }
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0i128; n];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = modp::rem(-rows[r][free], p);
            }
            v
        })
        .collect();
    Some((part, kernel))
}

/// M_0..=M_{i_max} by the lifting tree. Level 1 is found by brute force over
/// F_p^n; from level i >= 1 on, f(a + p^i t) = f(a) + p^i J(a) t mod p^{i+1},
/// so lifts are the affine solutions of a linear system over F_p.
pub fn count_lifting(sys: &PolySystem, i_max: u32, budget: u64) -> Result<Vec<u128>, IgusaError> {
    let n = sys.n;
    let p = sys.p as i128;
    let jac = sys.jacobian();
    let mut counts = vec![1u128];
    let mut level: Vec<Vec<i128>> = vec![vec![0; n]];
    for i in 0..i_max {
        let last = i + 1 == i_max;
        let next_mod = modp::pow(p, i + 1);
        let pi = modp::pow(p, i);
        let mut next = Vec::new();
        let mut count = 0u128;
        if i == 0 {
            enumerate_mod_p(sys, &mut next, budget)?;
            counts.push(next.len() as u128);
            level = next;
            continue;
        }
        for a in &level {
            let rhs: Vec<i128> = sys.polys.iter().map(|f| modp::rem(-(f.eval_mod(a, next_mod) / pi), p)).collect();
            let mat: Vec<Vec<i128>> = jac.iter().map(|row| row.iter().map(|d| d.eval_mod(a, p)).collect()).collect();
            let Some((part, kernel)) = solve_fp(&mat, &rhs, n, p) else { continue };
            let size = (p as u128).pow(kernel.len() as u32);
            count += size;
            if last {
                continue;
            }
            if (next.len() as u128 + size) > budget as u128 {
                return Err(IgusaError::Budget(format!("lifting tree beyond {budget} nodes at level {}", i + 1)));
            }
            let mut coef = vec![0i128; kernel.len()];
            loop {
                let mut b = a.clone();
                for j in 0..n {
                    let t = kernel.iter().zip(&coef).fold(part[j], |s, (v, &c)| s + c * v[j]) % p;
                    b[j] += pi * t;
                }
                next.push(b);
                let mut k = 0;
                while k < coef.len() {
                    coef[k] += 1;
                    if coef[k] < p {
                        break;
                    }
                    coef[k] = 0;
                    k += 1;
                }
                if k == coef.len() {
                    break;
                }
            }
        }
        counts.push(count);
        level = next;
    }
    Ok(counts)
}

fn enumerate_mod_p(sys: &PolySystem, out: &mut Vec<Vec<i128>>, budget: u64) -> Result<(), IgusaError> {
    let p = sys.p as i128;
    if (p as u128).checked_pow(sys.n as u32).map_or(true, |t| t > budget as u128) {
        return Err(IgusaError::Budget(format!("{p}^{}", sys.n)));
    }
    let mut a = vec![0i128; sys.n];
    loop {
        if sys.polys.iter().all(|f| f.eval_mod(&a, p) == 0) {
            out.push(a.clone());
        }
        let mut k = 0;
        while k < a.len() {
            a[k] += 1;
            if a[k] < p {
                break;
            }
            a[k] = 0;
            k += 1;
        }
        if k == a.len() {
            return Ok(());
        }
    }
}

/// M_i via the lifting tree.
pub fn count_solutions(sys: &PolySystem, i: u32) -> Result<u128, IgusaError> {
    Ok(count_lifting(sys, i, DEFAULT_BUDGET)?[i as usize])
}

/// Sum M_i p^{-ni} t^i and the truncated I_f(t) with t = p^{-s}, related by
/// (1 - t I_f) / (1 - t) = sum M_i p^{-ni} t^i.
#[derive(Clone, Debug, PartialEq)]
pub struct PoincareSeries {
    pub poincare: TruncatedSeries<BigRational>,
    pub igusa: TruncatedSeries<BigRational>,
}

impl PoincareSeries {
    /// Rebuilds the Poincare series from I_f.
    pub fn reconstruct(&self) -> TruncatedSeries<BigRational> {
        let len = self.poincare.order() + 1;
        let p = self.poincare.prime;
        let mut num = vec![BigRational::one()];
        num.extend((0..len - 1).map(|i| -self.igusa.coeff(i)));
        let lhs = TruncatedSeries::new(p, num);
        let geo = TruncatedSeries::new(p, vec![BigRational::one(); len]);
        lhs.mul(&geo)
    }
}

pub fn poincare_coeffs(counts: &[u128], p: u64, n: usize) -> PoincareSeries {
    let coeffs: Vec<BigRational> = counts
        .iter()
        .enumerate()
        .map(|(i, &m)| BigRational::new(BigInt::from(m), BigInt::from(p).pow(n as u32 * i as u32)))
        .collect();
    let len = coeffs.len();
    let poincare = TruncatedSeries::new(p, coeffs);
    // 1 - t I = (1 - t) P
    let one_minus_t = poincare.mul_poly(&[BigRational::one(), -BigRational::one()]);
    let mut igusa: Vec<BigRational> = (1..len).map(|i| -one_minus_t.coeff(i)).collect();
    if igusa.is_empty() {
        igusa.push(BigRational::zero());
    }
    PoincareSeries { poincare, igusa: TruncatedSeries::new(p, igusa) }
}

/// M_i with valuations and slopes v_p(M_i)/i. `running_min[i]` is the minimum
/// slope over i..=I, a finite-window estimate of the liminf, not the limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionCounts {
    pub p: u64,
    pub n: usize,
    pub m: Vec<u128>,
    pub valuations: Vec<Valuation>,
    #[serde(serialize_with = "ser_opt_rats")]
    pub slopes: Vec<Option<BigRational>>,
    #[serde(serialize_with = "ser_opt_rats")]
    pub running_min: Vec<Option<BigRational>>,
}

fn ser_opt_rats<S: serde::Serializer>(v: &[Option<BigRational>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.as_ref().map(|r| r.to_string()))?;
    }
    seq.end()
}

impl SolutionCounts {
    pub fn from_counts(p: u64, n: usize, m: Vec<u128>) -> Self {
        let pb = BigInt::from(p);
        let valuations: Vec<Valuation> = m.iter().map(|&x| valuation_int(&BigInt::from(x), &pb)).collect();
        let slopes: Vec<Option<BigRational>> = valuations
            .iter()
            .enumerate()
            .map(|(i, v)| match (i, v.finite()) {
                (0, _) | (_, None) => None,
                (i, Some(v)) => Some(BigRational::new(v.into(), (i as i64).into())),
            })
            .collect();
        let mut running_min = vec![None; slopes.len()];
        let mut cur: Option<BigRational> = None;
        for (i, s) in slopes.iter().enumerate().rev() {
            if let Some(s) = s {
                cur = Some(match cur {
                    Some(c) if c < *s => c,
                    _ => s.clone(),
                });
            }
            running_min[i] = cur.clone();
        }
        Self { p, n, m, valuations, slopes, running_min }
    }

    /// Tail minimum of the slopes over the second half of the window.
    pub fn liminf_estimate(&self) -> Option<BigRational> {
        self.running_min.get(self.m.len() / 2).cloned().flatten()
    }

    /// M_0 = 1 and M_{i+1} <= p^n M_i.
    pub fn invariants_hold(&self) -> bool {
        let pn = (self.p as u128).pow(self.n as u32);
        self.m.first() == Some(&1) && self.m.windows(2).all(|w| w[1] <= pn * w[0])
    }
}

pub fn slope_report(sys: &PolySystem, i_max: u32) -> Result<SolutionCounts, IgusaError> {
    Ok(SolutionCounts::from_counts(sys.p, sys.n, count_lifting(sys, i_max, DEFAULT_BUDGET)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> PolySystem {
        PolySystem::parse(s).unwrap()
    }

    #[test]
    fn naive_examples() {
        assert_eq!(count_naive(&sys("n=1 p=3\nx^2\n"), 2, 1000).unwrap(), 3);
        assert_eq!(count_naive(&sys("n=2 p=2\nx*y\n"), 1, 1000).unwrap(), 3);
        assert_eq!(count_naive(&sys("n=2 p=2\nx*y\n"), 0, 1000).unwrap(), 1);
        assert!(matches!(count_naive(&sys("n=3 p=5\nx\n"), 5, 1000), Err(IgusaError::Budget(_))));
    }

    #[test]
    fn lifting_matches_naive() {
        for text in ["n=1 p=3\nx^2\n", "n=2 p=2\nx*y\n", "n=2 p=3\nx^2 + y^2\n", "n=2 p=2\nx^3 - y^2\n", "n=2 p=3\nx^2 - y\nx*y\n", "n=1 p=2\n1\n", "n=2 p=2\n0\n"] {
            let f = sys(text);
            let lift = count_lifting(&f, 5, DEFAULT_BUDGET).unwrap();
            for i in 0..=5 {
                if let Ok(m) = count_naive(&f, i, 1 << 16) {
                    assert_eq!(lift[i as usize], m, "{text} i={i}");
                }
            }
        }
    }

    #[test]
    fn closed_counts() {
        let x2 = count_lifting(&sys("n=1 p=3\nx^2\n"), 9, DEFAULT_BUDGET).unwrap();
        assert_eq!(x2, (0..=9).map(|i| 3u128.pow(i / 2)).collect::<Vec<_>>());
        let xy = count_lifting(&sys("n=2 p=2\nx*y\n"), 8, DEFAULT_BUDGET).unwrap();
        for i in 1..=8u32 {
            assert_eq!(xy[i as usize], (i as u128 + 1) * 2u128.pow(i) - i as u128 * 2u128.pow(i - 1));
        }
        assert_eq!(count_solutions(&sys("n=1 p=5\nx\n"), 4).unwrap(), 1);
    }

    #[test]
    fn poincare_examples() {
        let zero = poincare_coeffs(&[1, 4, 16, 64], 2, 1 + 1);
        assert!((0..4).all(|i| zero.poincare.coeff(i) == BigRational::one()));
        assert!((0..3).all(|i| zero.igusa.coeff(i).is_zero()));
        let unit = poincare_coeffs(&[1, 0, 0], 3, 1);
        assert_eq!(unit.igusa.coeff(0), BigRational::one());
        let x2 = poincare_coeffs(&[1, 1, 3, 3], 3, 1);
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(x2.poincare.coeff(1), third);
        assert_eq!(x2.poincare.coeff(2), third);
        assert_eq!(x2.poincare.coeff(3), BigRational::new(1.into(), 9.into()));
        assert_eq!(x2.reconstruct(), x2.poincare);
    }

    #[test]
    fn slopes() {
        let r = slope_report(&sys("n=1 p=2\nx^2\n"), 8).unwrap();
        assert!(r.invariants_hold());
        assert_eq!(r.slopes[3], Some(BigRational::new(1.into(), 3.into())));
        assert_eq!(r.running_min[1], Some(BigRational::zero()));
        assert_eq!(r.liminf_estimate(), Some(BigRational::new(2.into(), 5.into())));
        let z = slope_report(&sys("n=2 p=3\n0\n"), 3).unwrap();
        assert_eq!(z.slopes[3], Some(BigRational::from_integer(2.into())));
        let x = slope_report(&sys("n=1 p=3\nx\n"), 3).unwrap();
        assert_eq!(x.slopes[2], Some(BigRational::zero()));
        let u = slope_report(&sys("n=1 p=3\n1\n"), 3).unwrap();
        assert_eq!(u.slopes[2], None);
    }
}
