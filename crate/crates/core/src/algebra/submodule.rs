use super::AlgebraError;
use crate::exactmath::{valuation, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A Z_p-submodule of Z_p^n given by integer generators in echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleBasis {
    pub n: usize,
    pub p: u64,
    pub basis: Vec<Vec<i64>>,
    pub saturated: bool,
    pivots: Vec<usize>,
}

fn to_q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Clear unit denominators and strip the unit content of a Z_(p)-vector.
fn integral(v: &[BigRational], p: &BigInt) -> Result<Vec<i64>, AlgebraError> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    while !g.is_zero() && (&g % p).is_zero() {
        g /= p;
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    ints.iter()
        .map(|x| (x / &g).to_i64().ok_or(AlgebraError::Overflow("submodule basis")))
        .collect()
}

impl SubmoduleBasis {
    /// Z_(p)-span of integer generators.
    pub fn span(n: usize, p: u64, gens: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        let rows: Vec<Vec<BigRational>> = gens.iter().map(|g| to_q(g)).collect();
        Self::span_q(n, p, rows)
    }

    pub fn full(n: usize, p: u64) -> Self {
        let basis = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        Self { n, p, basis, saturated: true, pivots: (0..n).collect() }
    }

    pub fn zero(n: usize, p: u64) -> Self {
        Self { n, p, basis: Vec::new(), saturated: true, pivots: Vec::new() }
    }

    fn span_q(n: usize, p: u64, mut rows: Vec<Vec<BigRational>>) -> Result<Self, AlgebraError> {
        let pb = BigInt::from(p);
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..n {
            let best = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[c].is_zero())
                .min_by_key(|(i, r)| (valuation(&r[c], &pb), *i))
                .map(|(i, _)| i);
            let Some(bi) = best else { continue };
            let piv = rows.swap_remove(bi);
            for r in rows.iter_mut() {
                if !r[c].is_zero() {
                    let f = &r[c] / &piv[c];
                    for j in 0..n {
                        let d = &f * &piv[j];
                        r[j] -= d;
                    }
                }
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            basis.push(integral(&piv, &pb)?);
            pivots.push(c);
        }
        Ok(Self { n, p, basis, saturated: false, pivots })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Z_(p)-coefficients of x in the basis, or None if x is not in the module.
    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<BigRational>> {
        let pb = BigInt::from(self.p);
        let mut s = to_q(x);
        let mut coef = Vec::with_capacity(self.rank());
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            let bq = to_q(b);
            let f = &s[c] / &bq[c];
            if valuation(&f, &pb) < Valuation::Finite(0) {
                return None;
            }
            for j in 0..self.n {
                let d = &f * &bq[j];
                s[j] -= d;
            }
            coef.push(f);
        }
        s.iter().all(|v| v.is_zero()).then_some(coef)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn is_subset_of(&self, other: &SubmoduleBasis) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_module(&self, other: &SubmoduleBasis) -> bool {
        self.rank() == other.rank() && self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Module contained in p^m Z_p^n.
    pub fn within_power(&self, m: u32) -> bool {
        let pm = (self.p as i128).pow(m);
        self.basis.iter().all(|b| b.iter().all(|&x| x as i128 % pm == 0))
    }

    /// (M tensor Q) intersected with Z_p^n.
    pub fn saturate(&self) -> Result<Self, AlgebraError> {
        let p = self.p as i64;
        let mut b: Vec<Vec<BigInt>> =
            self.basis.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let pb = BigInt::from(p);
        while let Some(dep) = fp_dependency(&b, p) {
            let k = dep.iter().position(|&a| a != 0).expect("nontrivial dependency");
            let mut w = vec![BigInt::zero(); self.n];
            for (a, v) in dep.iter().zip(&b) {
                if *a != 0 {
                    for j in 0..self.n {
                        w[j] += BigInt::from(*a) * &v[j];
                    }
                }
            }
            for x in w.iter_mut() {
                *x = &*x / &pb;
            }
            b[k] = w;
        }
        let rows = b.into_iter().map(|v| v.into_iter().map(BigRational::from_integer).collect()).collect();
        let mut out = Self::span_q(self.n, self.p, rows)?;
        out.saturated = true;
        Ok(out)
    }

    /// Standard basis vectors extending this (saturated) module to Z_p^n.
    pub fn complement(&self) -> Vec<Vec<i64>> {
        let p = self.p as i64;
        let mut cur: Vec<Vec<BigInt>> =
            self.basis.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut out = Vec::new();
        for k in 0..self.n {
            let mut e = vec![BigInt::zero(); self.n];
            e[k] = BigInt::one();
            cur.push(e);
            if fp_dependency(&cur, p).is_some() {
                cur.pop();
            } else {
                let mut v = vec![0; self.n];
                v[k] = 1;
                out.push(v);
            }
        }
        out
    }
}

/// Nontrivial F_p-linear relation among the rows mod p, if any.
fn fp_dependency(rows: &[Vec<BigInt>], p: i64) -> Option<Vec<i64>> {
    let r = rows.len();
    if r == 0 {
        return None;
    }
    let n = rows[0].len();
    let pb = BigInt::from(p);
    let red = |x: &BigInt| -> i64 { x.mod_floor(&pb).to_i64().expect("residue fits") };
    // augmented [A | I]
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row: Vec<i64> = v.iter().map(red).collect();
            row.extend((0..r).map(|j| i64::from(i == j)));
            row
        })
        .collect();
    let mut prow = 0;
    for c in 0..n {
        let Some(piv) = (prow..r).find(|&i| m[i][c] != 0) else { continue };
        m.swap(prow, piv);
        let inv = crate::exactmath::modp::inv(m[prow][c] as i128, p as i128).expect("field") as i64;
        for x in m[prow].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..r {
            if i != prow && m[i][c] != 0 {
                let f = m[i][c];
                let pr = m[prow].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        prow += 1;
    }
    if prow < r {
        Some(m[prow][n..].to_vec())
    } else {
        None
    }
}
