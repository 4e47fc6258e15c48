//! Finite-dimensional Z_p-algebras given by integer structure constants.

mod catalog;
mod structure;
mod submodule;

pub use catalog::{catalog, catalog_names, CatalogEntry};
pub use structure::{Class2Split, NilpotencyVerdict, ResidualVerdict};
pub use submodule::SubmoduleBasis;

use crate::exactmath::modp;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("structure constant ({0},{1},{2}) given twice")]
    Duplicate(usize, usize, usize),
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("weights are not a grading of the multiplication")]
    GradingViolated,
    #[error("no grading weights attached")]
    Ungraded,
    #[error("{0} is not a unit modulo p")]
    NotUnit(i64),
    #[error("algebra is not nilpotent of class at most 2")]
    NotClass2,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("declared property does not hold: {0}")]
    Declared(String),
}

/// e_i * e_j = sum_k c[i][j][k] e_k over Z_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    name: String,
    n: usize,
    p: u64,
    constants: Vec<i64>,
    weights: Option<Vec<u32>>,
    terms: Vec<(usize, usize, usize, i64)>,
}

impl StructureAlgebra {
    /// Build from 0-based (i, j, k, value) quadruples; absent entries are 0.
    pub fn new(name: &str, n: usize, p: u64, quads: &[(usize, usize, usize, i64)]) -> Result<Self, AlgebraError> {
        let mut constants = vec![0i64; n * n * n];
        let mut seen = vec![false; n * n * n];
        for &(i, j, k, v) in quads {
            for x in [i, j, k] {
                if x >= n {
                    return Err(AlgebraError::IndexOutOfRange(x, n));
                }
            }
            let idx = (i * n + j) * n + k;
            if seen[idx] {
                return Err(AlgebraError::Duplicate(i, j, k));
            }
            seen[idx] = true;
            constants[idx] = v;
        }
        Ok(Self::from_constants(name, n, p, constants))
    }

    fn from_constants(name: &str, n: usize, p: u64, constants: Vec<i64>) -> Self {
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = constants[(i * n + j) * n + k];
                    if c != 0 {
                        terms.push((i, j, k, c));
                    }
                }
            }
        }
        Self { name: name.to_string(), n, p, constants, weights: None, terms }
    }

    /// The zero multiplication on Z_p^n.
    pub fn abelian(n: usize, p: u64) -> Self {
        Self::from_constants(&format!("abelian-{n}"), n, p, vec![0; n * n * n])
    }

    /// Attach grading weights after checking them.
    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self, AlgebraError> {
        if weights.len() != self.n {
            return Err(AlgebraError::BadWeights(format!("expected {} weights", self.n)));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(AlgebraError::BadWeights("weights must be positive".into()));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(AlgebraError::BadWeights("weights must be non-decreasing".into()));
        }
        if !self.verify_grading(&weights) {
            return Err(AlgebraError::GradingViolated);
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_prime(mut self, p: u64) -> Self {
        self.p = p;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> i64 {
        self.constants[(i * self.n + j) * self.n + k]
    }

    /// Nonzero structure constants as (i, j, k, value).
    pub fn terms(&self) -> &[(usize, usize, usize, i64)] {
        &self.terms
    }

    pub fn is_abelian(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiply_i128(&self, x: &[i128], y: &[i128]) -> Vec<i128> {
        assert!(x.len() == self.n && y.len() == self.n, "vector length");
        let mut out = vec![0i128; self.n];
        for &(i, j, k, c) in &self.terms {
            out[k] += x[i] * y[j] * c as i128;
        }
        out
    }

    /// Bilinear product of integer vectors.
    pub fn multiply(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        let yi: Vec<i128> = y.iter().map(|&v| v as i128).collect();
        self.multiply_i128(&xi, &yi)
            .into_iter()
            .map(|v| i64::try_from(v).expect("product exceeds i64"))
            .collect()
    }

    fn basis(&self, i: usize) -> Vec<i128> {
        let mut e = vec![0i128; self.n];
        e[i] = 1;
        e
    }

    /// Alternating on basis vectors and Jacobi on basis triples.
    pub fn is_lie(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c(i, j, k) != -self.c(j, i, k) {
                        return false;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.multiply_i128(&a, &self.multiply_i128(&b, &c));
                    let t2 = self.multiply_i128(&b, &self.multiply_i128(&c, &a));
                    let t3 = self.multiply_i128(&c, &self.multiply_i128(&a, &b));
                    if (0..n).any(|q| t1[q] + t2[q] + t3[q] != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// c[i][j][k] != 0 implies w_k = w_i + w_j.
    pub fn verify_grading(&self, weights: &[u32]) -> bool {
        weights.len() == self.n && self.terms.iter().all(|&(i, j, k, _)| weights[k] == weights[i] + weights[j])
    }

    /// Algebra on the basis p e_i: every constant times p.
    pub fn pi_scale(&self) -> Self {
        let p = self.p as i64;
        let mut out = Self::from_constants(
            &format!("pi-{}", self.name),
            self.n,
            self.p,
            self.constants.iter().map(|&c| c * p).collect(),
        );
        out.weights = self.weights.clone();
        out
    }

    /// diag(lambda^{w_i}) mod p^K, checked to be an endomorphism mod p^K.
    pub fn dilation_matrix(&self, lambda: i64, k: u32) -> Result<Vec<i128>, AlgebraError> {
        let w = self.weights.as_ref().ok_or(AlgebraError::Ungraded)?;
        if lambda.rem_euclid(self.p as i64) == 0 {
            return Err(AlgebraError::NotUnit(lambda));
        }
        let m = modp::pow(self.p as i128, k);
        let d: Vec<i128> = w.iter().map(|&wi| modp::pow_mod(lambda as i128, wi as u64, m)).collect();
        for &(i, j, q, c) in &self.terms {
            // T e_i * T e_j = d_i d_j c e_q must equal T(c e_q) = d_q c e_q
            if modp::rem(d[i] * d[j] % m * c as i128 - d[q] * c as i128, m) != 0 {
                return Err(AlgebraError::GradingViolated);
            }
        }
        Ok(d)
    }

    /// T_lambda x * T_lambda y == T_lambda (x y) mod p^K.
    pub fn dilation_is_homomorphism(&self, diag: &[i128], k: u32, x: &[i128], y: &[i128]) -> bool {
        let m = modp::pow(self.p as i128, k);
        let tx: Vec<i128> = x.iter().zip(diag).map(|(a, d)| modp::rem(a * d, m)).collect();
        let ty: Vec<i128> = y.iter().zip(diag).map(|(a, d)| modp::rem(a * d, m)).collect();
        let lhs = self.multiply_i128(&tx, &ty);
        let xy = self.multiply_i128(x, y);
        (0..self.n).all(|q| modp::rem(lhs[q] - modp::rem(xy[q], m) * diag[q], m) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_examples() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        assert_eq!(h.multiply(&[1, 0, 0], &[0, 1, 0]), vec![0, 0, 1]);
        assert_eq!(h.multiply(&[0, 1, 0], &[1, 0, 0]), vec![0, 0, -1]);
        assert_eq!(h.multiply(&[3, 5, 7], &[3, 5, 7]), vec![0, 0, 0]);
        let a = StructureAlgebra::abelian(3, 2);
        assert_eq!(a.multiply(&[1, 2, 3], &[4, 5, 6]), vec![0, 0, 0]);
    }

    #[test]
    fn lie_examples() {
        assert!(catalog("heisenberg", 3).unwrap().algebra.is_lie());
        assert!(catalog("filiform-4", 3).unwrap().algebra.is_lie());
        assert!(!catalog("zp2-componentwise", 3).unwrap().algebra.is_lie());
        assert!(StructureAlgebra::abelian(4, 5).is_lie());
    }

    #[test]
    fn grading_examples() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        assert!(h.verify_grading(&[1, 1, 2]));
        assert!(!h.verify_grading(&[1, 1, 1]));
        assert!(StructureAlgebra::abelian(3, 2).verify_grading(&[1, 5, 9]));
        assert_eq!(h.clone().with_weights(vec![1, 1, 1]), Err(AlgebraError::GradingViolated));
        assert!(h.with_weights(vec![2, 1, 3]).is_err());
    }

    #[test]
    fn pi_scale_examples() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        let s = h.pi_scale();
        assert_eq!(s.c(0, 1, 2), 2);
        assert_eq!(s.pi_scale().c(0, 1, 2), 4);
        assert!(StructureAlgebra::abelian(2, 3).pi_scale().is_abelian());
    }

    #[test]
    fn dilation() {
        let h = catalog("heisenberg", 3).unwrap().algebra;
        assert_eq!(h.dilation_matrix(1, 4).unwrap(), vec![1, 1, 1]);
        assert_eq!(h.dilation_matrix(2, 4).unwrap(), vec![2, 2, 4]);
        assert_eq!(h.dilation_matrix(3, 4), Err(AlgebraError::NotUnit(3)));
        let d = h.dilation_matrix(5, 6).unwrap();
        assert!(h.dilation_is_homomorphism(&d, 6, &[1, 4, 2], &[7, 3, 9]));
    }
}
