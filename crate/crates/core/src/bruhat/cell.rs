use crate::lattice::{canonicalize_bounded, DivisorType, HNFLattice};
use std::fmt;

/// Primitive lattice Lambda_beta spanned by the rows of D beta C_sigma with
/// D = diag(p^{lambda_k}), beta lower unitriangular and C_sigma[s][sigma(s)] = 1.
/// Indices are 0-based: row k has entry p^{lambda_k} beta_{ks} in column sigma(s).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BruhatCell {
    pub n: usize,
    pub p: u64,
    pub ty: DivisorType,
    pub sigma: Vec<usize>,
    /// Row-major n x n, entry (r, c) in [0, p^{lambda_c - lambda_r}).
    pub beta: Vec<i64>,
}

impl BruhatCell {
    pub fn identity(p: u64, ty: DivisorType, sigma: Vec<usize>) -> Self {
        let n = ty.n();
        let mut beta = vec![0; n * n];
        for i in 0..n {
            beta[i * n + i] = 1;
        }
        Self { n, p, ty, sigma, beta }
    }

    pub fn lambda(&self, k: usize) -> u32 {
        self.ty.lambda[k]
    }

    pub fn beta_at(&self, r: usize, c: usize) -> i64 {
        self.beta[r * self.n + c]
    }

    /// Working precision: sum of r_iota, which equals lambda_1.
    pub fn precision(&self) -> u32 {
        self.ty.lambda[0]
    }

    /// Modulus exponent of entry (r, c), c < r.
    pub fn modulus_exp(&self, r: usize, c: usize) -> u32 {
        self.ty.lambda[c] - self.ty.lambda[r]
    }

    /// Exact integer inverse of beta (lower unitriangular).
    pub fn beta_inverse(&self) -> Vec<i128> {
        unitri_inverse(&self.beta.iter().map(|&x| x as i128).collect::<Vec<_>>(), self.n, None)
    }

    pub fn generators(&self) -> Vec<Vec<i128>> {
        let n = self.n;
        (0..n)
            .map(|k| {
                let d = (self.p as i128).pow(self.lambda(k));
                let mut v = vec![0i128; n];
                for s in 0..=k {
                    v[self.sigma[s]] = d * self.beta_at(k, s) as i128;
                }
                v
            })
            .collect()
    }

    pub fn lattice(&self) -> HNFLattice {
        canonicalize_bounded(&self.generators(), self.n, self.p, self.ty.index_exponent()).expect("cell lattice within range")
    }

    /// Same cell with another beta, brought to the canonical representative of
    /// its coset: entry (r, c) is reduced mod p^{lambda_c - lambda_r} by
    /// subtracting multiples of row c, right to left.
    pub fn with_beta(&self, beta: &[i128]) -> Self {
        let n = self.n;
        let mut b = beta.to_vec();
        for r in 0..n {
            b[r * n + r] = 1;
            for c in (0..r).rev() {
                let m = (self.p as i128).pow(self.modulus_exp(r, c));
                let t = b[r * n + c].div_euclid(m);
                if t != 0 {
                    for cc in 0..=c {
                        b[r * n + cc] -= t * m * b[c * n + cc];
                    }
                }
            }
        }
        Self { beta: b.iter().map(|&x| x as i64).collect(), ..self.clone() }
    }
}

/// Inverse of a lower unitriangular matrix, optionally modulo m.
pub(crate) fn unitri_inverse(b: &[i128], n: usize, m: Option<i128>) -> Vec<i128> {
    let mut inv = vec![0i128; n * n];
    for i in 0..n {
        inv[i * n + i] = 1;
        for j in (0..i).rev() {
            let mut s = 0i128;
            for k in j..i {
                s += b[i * n + k] * inv[k * n + j];
                if let Some(m) = m {
                    s %= m;
                }
            }
            inv[i * n + j] = match m {
                Some(m) => (-s).rem_euclid(m),
                None => -s,
            };
        }
    }
    inv
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every beta residue for the given primitive type and permutation.
pub fn cells_for_type(p: u64, ty: &DivisorType, sigma: &[usize]) -> impl Iterator<Item = BruhatCell> {
    assert!(ty.is_primitive(), "cells are defined for primitive types");
    let base = BruhatCell::identity(p, ty.clone(), sigma.to_vec());
    let n = base.n;
    let slots: Vec<(usize, i64)> = (0..n)
        .flat_map(|r| (0..r).map(move |c| (r, c)))
        .map(|(r, c)| (r * n + c, (p as i64).pow(base.modulus_exp(r, c))))
        .filter(|&(_, m)| m > 1)
        .collect();
    let mut digits = vec![0i64; slots.len()];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut cell = base.clone();
        for (s, &(idx, _)) in slots.iter().enumerate() {
            cell.beta[idx] = digits[s];
        }
        let mut s = slots.len();
        loop {
            if s == 0 {
                done = true;
                break;
            }
            s -= 1;
            digits[s] += 1;
            if digits[s] < slots[s].1 {
                break;
            }
            digits[s] = 0;
        }
        Some(cell)
    })
}

impl fmt::Display for BruhatCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma: Vec<String> = self.sigma.iter().map(|s| (s + 1).to_string()).collect();
        write!(f, "type {} sigma [{}] beta [", self.ty, sigma.join(" "))?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|c| self.beta_at(r, c).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{divisor_type, Enumerator};
    use std::collections::BTreeSet;

    #[test]
    fn identity_cell_is_diagonal() {
        let ty = DivisorType::new(vec![2, 1, 0]);
        let c = BruhatCell::identity(2, ty, vec![0, 1, 2]);
        assert_eq!(c.lattice(), HNFLattice::diagonal(2, &[2, 1, 0]));
    }

    #[test]
    fn cover_n2() {
        let ty = DivisorType::new(vec![1, 0]);
        let mut set = BTreeSet::new();
        for s in permutations(2) {
            for c in cells_for_type(3, &ty, &s) {
                set.insert(c.lattice());
            }
        }
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn cover_n3_small_types() {
        let p = 2;
        for ty in DivisorType::primitive_types(3, 3, false) {
            let mut cells = BTreeSet::new();
            for s in permutations(3) {
                for c in cells_for_type(p, &ty, &s) {
                    cells.insert(c.lattice());
                }
            }
            let mut direct = BTreeSet::new();
            Enumerator::new(3, p, ty.index_exponent()).for_each(|l| {
                if divisor_type(l) == ty {
                    direct.insert(l.clone());
                }
            });
            assert_eq!(cells, direct, "type {ty}");
        }
    }

    #[test]
    fn with_beta_keeps_the_lattice() {
        let ty = DivisorType::new(vec![3, 1, 0]);
        let base = BruhatCell::identity(2, ty, vec![2, 0, 1]);
        let raw = [1i128, 0, 0, 13, 1, 0, -7, 9, 1];
        let unreduced = BruhatCell { beta: raw.iter().map(|&x| x as i64).collect(), ..base.clone() };
        let reduced = base.with_beta(&raw);
        assert_eq!(reduced.lattice(), unreduced.lattice());
        for r in 0..3 {
            for c in 0..r {
                assert!(reduced.beta_at(r, c) >= 0 && reduced.beta_at(r, c) < 1 << reduced.modulus_exp(r, c));
            }
        }
    }

    #[test]
    fn inverse_is_exact() {
        let b = vec![1, 0, 0, 3, 1, 0, 5, 7, 1];
        let inv = unitri_inverse(&b, 3, None);
        for i in 0..3 {
            for j in 0..3 {
                let s: i128 = (0..3).map(|k| b[i * 3 + k] * inv[k * 3 + j]).sum();
                assert_eq!(s, i128::from(i == j));
            }
        }
    }
}
