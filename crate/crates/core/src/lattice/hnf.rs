use super::LatticeError;
use crate::exactmath::modp;
use std::fmt;

/// Canonical basis of a finite-index sublattice of Z_p^n: lower-triangular
/// rows with `rows[j][j] = p^{e_j}` and `0 <= rows[r][c] < p^{e_c}` for c < r.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HNFLattice {
    n: usize,
    p: u64,
    exps: Vec<u32>,
    rows: Vec<i64>,
}

/// Scratch state for membership tests of vectors reduced modulo p^i.
#[derive(Clone, Debug)]
pub struct Residues {
    pub p: i64,
    pub modulus: i64,
}

impl HNFLattice {
    /// Validate and wrap raw HNF data (row-major n x n).
    pub fn from_rows(n: usize, p: u64, rows: Vec<i64>) -> Result<Self, LatticeError> {
        if rows.len() != n * n {
            return Err(LatticeError::Dimension { expected: n * n, got: rows.len() });
        }
        let mut exps = Vec::with_capacity(n);
        for j in 0..n {
            let d = rows[j * n + j];
            let v = modp::val(d as i128, p as i128).ok_or_else(|| LatticeError::Invalid("zero diagonal".into()))?;
            if (p as i128).pow(v) != d as i128 {
                return Err(LatticeError::Invalid(format!("diagonal {d} is not a power of {p}")));
            }
            exps.push(v);
        }
        for r in 0..n {
            for c in 0..n {
                let x = rows[r * n + c];
                if c > r && x != 0 {
                    return Err(LatticeError::Invalid("entry above the diagonal".into()));
                }
                if c < r && !(0..rows[c * n + c]).contains(&x) {
                    return Err(LatticeError::Invalid(format!("entry ({r},{c}) not reduced")));
                }
            }
        }
        Ok(Self { n, p, exps, rows })
    }

    pub(crate) fn from_parts_unchecked(n: usize, p: u64, exps: Vec<u32>, rows: Vec<i64>) -> Self {
        Self { n, p, exps, rows }
    }

    pub fn full(n: usize, p: u64) -> Self {
        Self::scalar(n, p, 0)
    }

    /// p^k Z_p^n.
    pub fn scalar(n: usize, p: u64, k: u32) -> Self {
        Self::diagonal(p, &vec![k; n])
    }

    /// diag(p^{e_1}, ..., p^{e_n}).
    pub fn diagonal(p: u64, exps: &[u32]) -> Self {
        let n = exps.len();
        let mut rows = vec![0i64; n * n];
        for (j, &e) in exps.iter().enumerate() {
            rows[j * n + j] = (p as i64).pow(e);
        }
        Self { n, p, exps: exps.to_vec(), rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn diag_exponents(&self) -> &[u32] {
        &self.exps
    }

    /// i with index p^i.
    pub fn index_exponent(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.rows[r * self.n..(r + 1) * self.n]
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.rows[r * self.n + c]
    }

    pub fn rows_flat(&self) -> &[i64] {
        &self.rows
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [i64] {
        &mut self.rows
    }

    pub fn rows_i128(&self) -> Vec<Vec<i128>> {
        (0..self.n).map(|r| self.row(r).iter().map(|&x| x as i128).collect()).collect()
    }

    /// Context for reduced membership tests, or None when p^i is too large
    /// for word arithmetic.
    pub fn residues(&self) -> Option<Residues> {
        let m = (self.p as i64).checked_pow(self.index_exponent())?;
        if m >= 1 << 31 {
            return None;
        }
        Some(Residues { p: self.p as i64, modulus: m })
    }

    /// Membership test for an integer vector.
    pub fn contains(&self, x: &[i64]) -> bool {
        let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        self.contains_i128(&xi)
    }

    pub fn contains_i128(&self, x: &[i128]) -> bool {
        assert_eq!(x.len(), self.n, "vector length");
        self.coordinates(x).is_some()
    }

    /// Integer coefficients of x in the row basis, or None if x is not in
    /// the lattice.
    pub fn coordinates(&self, x: &[i128]) -> Option<Vec<i128>> {
        let n = self.n;
        let mut s = x.to_vec();
        let mut coef = vec![0i128; n];
        for c in (0..n).rev() {
            let d = self.rows[c * n + c] as i128;
            if s[c] % d != 0 {
                return None;
            }
            let q = s[c] / d;
            coef[c] = q;
            if q != 0 {
                for j in 0..=c {
                    s[j] -= q * self.rows[c * n + j] as i128;
                }
            }
        }
        Some(coef)
    }

    /// Least d with p^d x in the lattice.
    pub fn deficiency(&self, x: &[i128]) -> u32 {
        let i = self.index_exponent();
        let m = modp::pow(self.p as i128, i);
        let p = self.p as i128;
        let n = self.n;
        let mut s: Vec<i128> = x.iter().map(|&v| modp::rem(v, m)).collect();
        let mut d = 0;
        for c in (0..n).rev() {
            let e = self.exps[c];
            let v = modp::val_capped(s[c], p, i);
            if v < e {
                let f = modp::pow(p, e - v);
                for sj in s.iter_mut().take(c + 1) {
                    *sj = *sj * f % m;
                }
                d += e - v;
            }
            let q = s[c] / self.rows[c * n + c] as i128;
            if q != 0 {
                for j in 0..=c {
                    s[j] = modp::rem(s[j] - q * self.rows[c * n + j] as i128, m);
                }
            }
        }
        d
    }

    /// Membership of a vector already reduced into [0, p^i).
    /// Destroys `s`.
    #[inline]
    pub fn contains_reduced(&self, s: &mut [i64], ctx: &Residues) -> bool {
        let n = self.n;
        let m = ctx.modulus;
        for c in (0..n).rev() {
            let d = self.rows[c * n + c];
            let sc = s[c];
            if sc % d != 0 {
                return false;
            }
            let q = sc / d;
            if q != 0 {
                let row = &self.rows[c * n..c * n + c];
                for (sj, &rj) in s.iter_mut().zip(row) {
                    *sj = (*sj - q * rj).rem_euclid(m);
                }
            }
        }
        true
    }

    /// Deficiency of a vector already reduced into [0, p^i). Destroys `s`.
    #[inline]
    pub fn deficiency_reduced(&self, s: &mut [i64], ctx: &Residues) -> u32 {
        let n = self.n;
        let m = ctx.modulus;
        let mut d = 0;
        for c in (0..n).rev() {
            let pe = self.rows[c * n + c];
            if s[c] % pe != 0 {
                let mut v = 0;
                let mut x = s[c];
                while x % ctx.p == 0 {
                    x /= ctx.p;
                    v += 1;
                }
                let k = self.exps[c] - v;
                let f = ctx.p.pow(k);
                for sj in s.iter_mut().take(c + 1) {
                    *sj = *sj * f % m;
                }
                d += k;
            }
            let q = s[c] / pe;
            if q != 0 {
                let row = &self.rows[c * n..c * n + c];
                for (sj, &rj) in s.iter_mut().zip(row) {
                    *sj = (*sj - q * rj).rem_euclid(m);
                }
            }
        }
        d
    }

    /// True when every basis row lies in `other`.
    pub fn is_sublattice_of(&self, other: &HNFLattice) -> bool {
        (0..self.n).all(|r| other.contains(self.row(r)))
    }
}

impl fmt::Display for HNFLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for r in 0..self.n {
            let cells: Vec<String> = self.row(r).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let lat = HNFLattice::diagonal(2, &[1, 0]);
        assert!(!lat.contains(&[1, 0]));
        assert!(lat.contains(&[2, 5]));
        assert!(HNFLattice::full(3, 5).contains(&[7, -3, 11]));
        let l = HNFLattice::from_rows(2, 3, vec![9, 0, 4, 3]).unwrap();
        assert!(l.contains(&[0, 27]));
        assert!(l.contains(&[27, 0]));
        assert_eq!(l.coordinates(&[4 + 9, 3]), Some(vec![1, 1]));
    }

    #[test]
    fn deficiency_matches_scaling() {
        let l = HNFLattice::from_rows(2, 2, vec![4, 0, 1, 2]).unwrap();
        for x in -5i128..6 {
            for y in -5i128..6 {
                let d = l.deficiency(&[x, y]);
                let f = 1i128 << d;
                assert!(l.contains_i128(&[x * f, y * f]));
                if d > 0 {
                    let g = f / 2;
                    assert!(!l.contains_i128(&[x * g, y * g]));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(HNFLattice::from_rows(2, 2, vec![2, 0, 3, 1]).is_err());
        assert!(HNFLattice::from_rows(2, 2, vec![3, 0, 0, 1]).is_err());
        assert!(HNFLattice::from_rows(2, 2, vec![2, 1, 0, 1]).is_err());
    }
}
