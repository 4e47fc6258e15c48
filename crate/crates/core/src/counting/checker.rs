use crate::algebra::StructureAlgebra;
use crate::lattice::{HNFLattice, Residues};

/// Predicates for lattices of one fixed index p^i, with structure constants
/// reduced once.
#[derive(Clone, Debug)]
pub struct Checker<'a> {
    alg: &'a StructureAlgebra,
    n: usize,
    ctx: Option<Residues>,
    terms: Vec<(usize, usize, usize, i64)>,
    /// c[i][j] = -c[j][i] and c[i][i] = 0: only a < b pairs and one side needed.
    alternating: bool,
    /// c[i][j] = c[j][i]: only a <= b pairs and one side needed.
    symmetric: bool,
}

impl<'a> Checker<'a> {
    pub fn new(alg: &'a StructureAlgebra, i: u32) -> Self {
        let n = alg.n();
        let ctx = (alg.p() as i64)
            .checked_pow(i)
            .filter(|&m| m < 1 << 31)
            .map(|m| Residues { p: alg.p() as i64, modulus: m });
        let terms = match &ctx {
            Some(r) => alg
                .terms()
                .iter()
                .map(|&(a, b, k, c)| (a, b, k, c.rem_euclid(r.modulus)))
                .filter(|t| t.3 != 0)
                .collect(),
            None => alg.terms().to_vec(),
        };
        let mut alternating = true;
        let mut symmetric = true;
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    let x = alg.c(a, b, k);
                    let y = alg.c(b, a, k);
                    if x != -y || (a == b && x != 0) {
                        alternating = false;
                    }
                    if x != y {
                        symmetric = false;
                    }
                }
            }
        }
        Self { alg, n, ctx, terms, alternating, symmetric }
    }

    #[inline]
    fn product(&self, x: &[i64], y: &[i64], m: i64, out: &mut [i64]) -> bool {
        out.iter_mut().for_each(|v| *v = 0);
        let mut nonzero = false;
        for &(i, j, k, c) in &self.terms {
            let (a, b) = (x[i], y[j]);
            if a != 0 && b != 0 {
                out[k] = (out[k] + a * b % m * c) % m;
                nonzero = true;
            }
        }
        nonzero
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |a| (0..n).map(move |b| (a, b))).filter(move |&(a, b)| {
            if self.alternating {
                a < b
            } else if self.symmetric {
                a <= b
            } else {
                true
            }
        })
    }

    fn basis(&self, k: usize) -> Vec<i64> {
        let mut e = vec![0i64; self.n];
        e[k] = 1;
        e
    }

    pub fn is_subalgebra(&self, lat: &HNFLattice) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let Some(ctx) = &self.ctx else {
            return self.slow_subalgebra(lat);
        };
        let mut buf = vec![0i64; self.n];
        for (a, b) in self.pairs() {
            if self.product(lat.row(a), lat.row(b), ctx.modulus, &mut buf) && !lat.contains_reduced(&mut buf, ctx) {
                return false;
            }
        }
        true
    }

    pub fn is_ideal(&self, lat: &HNFLattice) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let Some(ctx) = &self.ctx else {
            return self.slow_ideal(lat);
        };
        let one_sided = self.alternating || self.symmetric;
        let mut buf = vec![0i64; self.n];
        for a in 0..self.n {
            for k in 0..self.n {
                let e = self.basis(k);
                let y = lat.row(a);
                if self.product(y, &e, ctx.modulus, &mut buf) && !lat.contains_reduced(&mut buf, ctx) {
                    return false;
                }
                if !one_sided && self.product(&e, y, ctx.modulus, &mut buf) && !lat.contains_reduced(&mut buf, ctx) {
                    return false;
                }
            }
        }
        true
    }

    /// Max deficiency over basis-row products; the lattice must be primitive.
    pub fn weight(&self, lat: &HNFLattice) -> u32 {
        if self.terms.is_empty() {
            return 0;
        }
        let Some(ctx) = &self.ctx else {
            return self.slow_weight(lat);
        };
        let mut buf = vec![0i64; self.n];
        let mut w = 0;
        for (a, b) in self.pairs() {
            if self.product(lat.row(a), lat.row(b), ctx.modulus, &mut buf) {
                w = w.max(lat.deficiency_reduced(&mut buf, ctx));
            }
        }
        w
    }

    fn rows(lat: &HNFLattice) -> Vec<Vec<i128>> {
        lat.rows_i128()
    }

    fn slow_subalgebra(&self, lat: &HNFLattice) -> bool {
        let r = Self::rows(lat);
        self.pairs().all(|(a, b)| lat.contains_i128(&self.alg.multiply_i128(&r[a], &r[b])))
    }

    fn slow_ideal(&self, lat: &HNFLattice) -> bool {
        let r = Self::rows(lat);
        (0..self.n).all(|a| {
            (0..self.n).all(|k| {
                let mut e = vec![0i128; self.n];
                e[k] = 1;
                lat.contains_i128(&self.alg.multiply_i128(&r[a], &e)) && lat.contains_i128(&self.alg.multiply_i128(&e, &r[a]))
            })
        })
    }

    fn slow_weight(&self, lat: &HNFLattice) -> u32 {
        let r = Self::rows(lat);
        self.pairs().map(|(a, b)| lat.deficiency(&self.alg.multiply_i128(&r[a], &r[b]))).max().unwrap_or(0)
    }
}
