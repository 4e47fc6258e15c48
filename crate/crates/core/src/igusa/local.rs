use super::count::{count_lifting, SolutionCounts, DEFAULT_BUDGET};
use super::poly::PolySystem;
use super::IgusaError;
use crate::exactmath::modp;
use crate::lattice::snf_exponents;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// p-exponents of the elementary divisors of J_f(a) mod p^k, ascending
/// (delta_1 | delta_2 | ...), n values with missing divisors reported as k.
pub fn jacobian_profile(sys: &PolySystem, a: &[i128], k: u32) -> Vec<u32> {
    let p = sys.p as i128;
    let m = modp::pow(p, k.max(1));
    let mat: Vec<Vec<i128>> = sys.jacobian().iter().map(|row| row.iter().map(|d| d.eval_mod(a, m)).collect()).collect();
    let mut e = snf_exponents(&mat, p, k);
    e.reverse();
    e.resize(sys.n, k);
    e
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReverseHenselReport {
    pub precision: u32,
    pub holds: bool,
    /// (a, j, nu(delta_j), nu(f(a))) at the first failing point, j 1-based.
    pub counterexample: Option<(Vec<i128>, usize, u32, u32)>,
    /// -n + sum lambda_j / 2
    pub bound: String,
    /// Even i in the window with v_p(M_i)/i below sum lambda_j / 2.
    pub slope_violations: Vec<u32>,
    pub slopes: SolutionCounts,
}

impl ReverseHenselReport {
    pub fn slope_check(&self) -> bool {
        self.slope_violations.is_empty()
    }
}

/// Sweeps a mod p^k testing 2 nu(delta_j(J_f(a))) >= lambda_j nu(f(a)) with
/// both valuations capped at k, then checks v_p(M_i) >= (i/2) sum lambda_j at
/// every even i <= window.
pub fn reverse_hensel_check(sys: &PolySystem, lambda: &[BigRational], k: u32, window: u32) -> Result<ReverseHenselReport, IgusaError> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    if lambda.len() != sys.n || lambda.iter().any(|l| *l < zero || *l > one) {
        return Err(IgusaError::BadLambda);
    }
    let p = sys.p as i128;
    let m = modp::pow(p, k);
    let total = (m as u128).checked_pow(sys.n as u32).filter(|&t| t <= DEFAULT_BUDGET as u128);
    let total = total.ok_or_else(|| IgusaError::Budget(format!("{m}^{}", sys.n)))?;
    let mut counterexample = None;
    let mut a = vec![0i128; sys.n];
    'sweep: for _ in 0..total {
        let nf = sys.valuation_at(&a, k);
        let prof = jacobian_profile(sys, &a, k);
        for (j, (&nd, l)) in prof.iter().zip(lambda).enumerate() {
            // 2 den nu(delta) >= num nu(f)
            let lhs = BigInt::from(2 * nd) * l.denom();
            let rhs = BigInt::from(nf) * l.numer();
            if lhs < rhs {
                counterexample = Some((a.clone(), j + 1, nd, nf));
                break 'sweep;
            }
        }
        for x in a.iter_mut() {
            *x += 1;
            if *x < m {
                break;
            }
            *x = 0;
        }
    }
    let sum: BigRational = lambda.iter().sum();
    let half = &sum / BigRational::from_integer(2.into());
    let bound = BigRational::from_integer(BigInt::from(-(sys.n as i64))) + &half;
    let slopes = SolutionCounts::from_counts(sys.p, sys.n, count_lifting(sys, window, DEFAULT_BUDGET)?);
    let slope_violations = (2..=window)
        .step_by(2)
        .filter(|&i| match slopes.valuations[i as usize].finite() {
            None => false,
            Some(v) => BigRational::from_integer(v.into()) < &half * BigRational::from_integer(i.into()),
        })
        .collect();
    Ok(ReverseHenselReport { precision: k, holds: counterexample.is_none(), counterexample, bound: bound.to_string(), slope_violations, slopes })
}

/// Exact solve over Q with the determinant; None when singular.
fn solve_rational(mat: &[Vec<i128>], rhs: &[i128]) -> Option<(Vec<BigRational>, BigRational)> {
    let n = mat.len();
    let mut a: Vec<Vec<BigRational>> = mat
        .iter()
        .zip(rhs)
        .map(|(r, &b)| r.iter().chain([&b]).map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let pr = (c..n).find(|&r| !a[r][c].is_zero())?;
        if pr != c {
            a.swap(pr, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for x in a[c].iter_mut() {
            *x /= &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in c..=n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Some((a.iter().map(|r| r[n].clone()).collect(), det))
}

fn rat_mod(x: &BigRational, m: i128, p: i128) -> i128 {
    let mb = BigInt::from(m);
    let den = x.denom().mod_floor(&mb);
    assert!(!(den.clone() % BigInt::from(p)).is_zero(), "denominator must be a p-unit");
    let inv = modp::inv(den.to_i128().unwrap(), m).unwrap();
    let num = x.numer().mod_floor(&mb).to_i128().unwrap();
    modp::rem(num * inv % m, m)
}

/// Newton iteration from a to a root b mod p^k_target of the square system,
/// valid when 2 nu(det J_f(a)) < nu(f(a)). Returns b in [0, p^k_target)^n.
pub fn hensel_lift(sys: &PolySystem, a: &[i128], k_target: u32) -> Result<Vec<i128>, IgusaError> {
    if sys.m() != sys.n {
        return Err(IgusaError::NotSquare);
    }
    let p = sys.p as i128;
    let jac = sys.jacobian();
    let j_at = |b: &[i128]| -> Vec<Vec<i128>> { jac.iter().map(|row| row.iter().map(|d| d.eval(b)).collect()).collect() };
    let zeros = vec![0i128; sys.n];
    let (_, det) = solve_rational(&j_at(a), &zeros).ok_or(IgusaError::NotApplicable)?;
    let e = modp::val(det.numer().abs().to_i128().ok_or(IgusaError::NotApplicable)?, p).unwrap();
    let cap = k_target + 2 * e + 2;
    let big_m = modp::pow(p, cap);
    if 2 * e >= sys.valuation_at(a, cap) {
        return Err(IgusaError::NotApplicable);
    }
    let mut b: Vec<i128> = a.iter().map(|&x| modp::rem(x, big_m)).collect();
    for _ in 0..2 * cap + 4 {
        if sys.valuation_at(&b, k_target) >= k_target {
            let out: Vec<i128> = b.iter().map(|&x| modp::rem(x, modp::pow(p, k_target))).collect();
            debug_assert!(a.iter().zip(&b).all(|(x, y)| modp::val_capped(x - y, p, e + 1) > e));
            return Ok(out);
        }
        let fb = sys.eval_mod(&b, big_m);
        let (x, _) = solve_rational(&j_at(&b), &fb).ok_or(IgusaError::NotApplicable)?;
        for (bj, xj) in b.iter_mut().zip(&x) {
            *bj = modp::rem(*bj - rat_mod(xj, big_m, p), big_m);
        }
    }
    Err(IgusaError::NotApplicable)
}

/// Lower bound B(N) on v_p(M_N) for homogeneous f of minimal degree d >= 2.
/// Points with min nu(a_j) >= ceil(N/d) all solve and number p^{n(N - ceil(N/d))}.
/// Points with min nu = t < N/d number p^{n(d-1)t} times a count of primitive
/// solutions mod p^{N-dt}, which is a union of unit orbits of size
/// (p-1)p^{N-dt-1}.
pub fn homogeneous_bound(n: usize, d: u32, big_n: u32) -> i64 {
    let (n, d, big_n) = (n as i64, d as i64, big_n as i64);
    let top = n * (big_n - (big_n + d - 1) / d);
    (0..)
        .take_while(|t| d * t < big_n)
        .map(|t| n * (d - 1) * t + big_n - d * t - 1)
        .fold(top, i64::min)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomogeneousReport {
    pub holds: bool,
    pub degree: Option<u32>,
    /// v_p(M_N) - B(N) for N = 0..=i_max (None when M_N = 0).
    pub margins: Vec<Option<i64>>,
    /// lim B(N)/N, which is at least n/(n+1).
    pub bound_rate: String,
    pub target_rate: String,
}

/// Checks v_p(M_N)/N >= n/(n+1) - slack(N) with slack(N) = n/(n+1) - B(N)/N.
pub fn homogeneous_bound_check(sys: &PolySystem, i_max: u32) -> Result<HomogeneousReport, IgusaError> {
    let degs = sys.homogeneous_degrees().ok_or(IgusaError::NotHomogeneous)?;
    if degs.iter().any(|&d| d < 2) {
        return Err(IgusaError::NotHomogeneous);
    }
    let d = degs.iter().copied().min();
    let n = sys.n as i64;
    let counts = SolutionCounts::from_counts(sys.p, sys.n, count_lifting(sys, i_max, DEFAULT_BUDGET)?);
    let bound = |big_n: u32| d.map_or(n * big_n as i64, |d| homogeneous_bound(sys.n, d, big_n));
    let margins: Vec<Option<i64>> = counts.valuations.iter().enumerate().map(|(i, v)| v.finite().map(|v| v - bound(i as u32))).collect();
    let rate = match d {
        None => BigRational::from_integer(n.into()),
        Some(d) => {
            let first = BigRational::new((n * (d as i64 - 1)).into(), (d as i64).into());
            let second = if n >= 2 { BigRational::one() } else { BigRational::new((d as i64 - 1).into(), (d as i64).into()) };
            first.min(second)
        }
    };
    let target = BigRational::new(n.into(), (n + 1).into());
    let holds = margins.iter().all(|m| m.map_or(true, |m| m >= 0)) && rate >= target;
    Ok(HomogeneousReport { holds, degree: d, margins, bound_rate: rate.to_string(), target_rate: target.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::igusa::count_naive;

    fn sys(s: &str) -> PolySystem {
        PolySystem::parse(s).unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn jacobian_examples() {
        let f = sys("n=1 p=2\nx^2\n");
        assert_eq!(jacobian_profile(&f, &[4], 6), vec![3]);
        assert_eq!(jacobian_profile(&f.with_prime(3), &[9], 6), vec![2]);
        let lin = sys("n=2 p=3\nx + 2*y\ny\n");
        assert_eq!(jacobian_profile(&lin, &[5, 7], 4), vec![0, 0]);
        let sq = sys("n=2 p=3\nx^2\ny^2\n");
        assert_eq!(jacobian_profile(&sq, &[0, 0], 4), vec![4, 4]);
        let xy = sys("n=2 p=2\nx*y\n");
        assert_eq!(jacobian_profile(&xy, &[2, 1], 4), vec![0, 4]);
    }

    #[test]
    fn hensel_examples() {
        let f = sys("n=1 p=7\nx^2 - 2\n");
        assert_eq!(hensel_lift(&f, &[3], 2).unwrap(), vec![10]);
        let b = hensel_lift(&f, &[3], 6).unwrap();
        assert_eq!(f.polys[0].eval_mod(&b, 7i128.pow(6)), 0);
        let lin = sys("n=1 p=5\nx - 17\n");
        assert_eq!(hensel_lift(&lin, &[0], 3), Err(IgusaError::NotApplicable));
        assert_eq!(hensel_lift(&lin, &[2], 3).unwrap(), vec![17]);
        let sq = sys("n=1 p=3\nx^2\n");
        assert_eq!(hensel_lift(&sq, &[0], 3), Err(IgusaError::NotApplicable));
        // x^2 + y^2 - 2, x - y at (1, 1): det J = -4 is a 3-unit
        let sys2 = sys("n=2 p=3\nx^2 + y^2 - 2\nx - y - 3\n");
        let b = hensel_lift(&sys2, &[1, 1], 4).unwrap();
        assert!(sys2.eval_mod(&b, 81).iter().all(|&v| v == 0));
        assert_eq!(hensel_lift(&sys("n=2 p=3\nx*y\n"), &[0, 0], 2), Err(IgusaError::NotSquare));
    }

    #[test]
    fn hensel_root_is_unique_near_a() {
        // roots mod 7^3 congruent to 3 mod 7
        let f = sys("n=1 p=7\nx^2 - 2\n");
        let b = hensel_lift(&f, &[3], 3).unwrap()[0];
        let roots: Vec<i128> = (0..343).filter(|x| x % 7 == 3 && f.polys[0].eval_mod(&[*x], 343) == 0).collect();
        assert_eq!(roots, vec![b]);
    }

    #[test]
    fn reverse_hensel_x_squared() {
        let f = sys("n=1 p=2\nx^2\n");
        let rep = reverse_hensel_check(&f, &[r(1, 1)], 6, 10).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.bound, "-1/2");
        assert!(rep.slope_check());
    }

    #[test]
    fn reverse_hensel_counterexample() {
        // f = x: Jacobian unimodular but nu(f(0)) = K
        let f = sys("n=1 p=3\nx\n");
        let rep = reverse_hensel_check(&f, &[r(1, 1)], 3, 4).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.counterexample, Some((vec![0], 1, 0, 3)));
        // a unit value of f never violates the hypothesis
        let g = sys("n=1 p=3\nx + 1\n");
        assert_eq!(reverse_hensel_check(&g, &[r(1, 1)], 1, 2).unwrap().counterexample.map(|c| c.0), Some(vec![2]));
        assert_eq!(reverse_hensel_check(&f, &[r(3, 2)], 2, 2), Err(IgusaError::BadLambda));
    }

    #[test]
    fn homogeneous_bound_examples() {
        for big_n in 0..12 {
            assert_eq!(homogeneous_bound(1, 2, big_n), (big_n / 2) as i64);
        }
        let f = sys("n=2 p=3\nx^2 + y^2\n");
        let rep = homogeneous_bound_check(&f, 6).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!(rep.margins.iter().all(|m| m.unwrap() >= 0));
        let z = sys("n=2 p=2\n0\n");
        assert!(homogeneous_bound_check(&z, 3).unwrap().holds);
        assert_eq!(homogeneous_bound_check(&sys("n=1 p=2\nx^2 + x\n"), 3), Err(IgusaError::NotHomogeneous));
        assert_eq!(homogeneous_bound_check(&sys("n=1 p=2\nx\n"), 3), Err(IgusaError::NotHomogeneous));
    }

    #[test]
    fn bound_is_sound_by_brute_force() {
        for text in ["n=2 p=2\nx^2 + y^2\n", "n=2 p=3\nx^3 - y^3\n", "n=3 p=2\nx*y - z^2\n"] {
            let f = sys(text);
            let d = f.homogeneous_degrees().unwrap()[0];
            for big_n in 0..4 {
                let m = count_naive(&f, big_n, 1 << 20).unwrap();
                let v = (0..).take_while(|k| m % (f.p as u128).pow(*k + 1) == 0).count() as i64;
                assert!(v >= homogeneous_bound(f.n, d, big_n), "{text} N={big_n}");
            }
        }
    }
}
