use super::checker::Checker;
use crate::algebra::StructureAlgebra;
use crate::lattice::{superlattices_index_p, Enumerator, HNFLattice};
use serde::Serialize;
use std::collections::BTreeMap;

/// Both sides of sum_H a_p(H) = sum_K b_p(K) with the per-lattice values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub i: u32,
    /// Sum over subalgebras H of index p^i of a_p(H).
    pub lhs: u64,
    /// Sum over subalgebras K of index p^{i+1} of b_p(K).
    pub rhs: u64,
    pub holds: bool,
    /// a_p(H) value -> number of H.
    pub a_values: BTreeMap<u64, u64>,
    /// b_p(K) value -> number of K.
    pub b_values: BTreeMap<u64, u64>,
    pub a_all_one_mod_p: bool,
    pub b_all_one_mod_p: bool,
}

/// The algebra induced on a subalgebra H in H's row basis, constants
/// reduced mod p (enough for index-p questions).
fn induced_mod_p(h: &HNFLattice, alg: &StructureAlgebra) -> StructureAlgebra {
    let n = alg.n();
    let p = alg.p() as i128;
    let rows = h.rows_i128();
    let mut quads = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let prod = alg.multiply_i128(&rows[a], &rows[b]);
            let coords = h.coordinates(&prod).expect("H is a subalgebra");
            for (k, c) in coords.into_iter().enumerate() {
                let r = c.rem_euclid(p) as i64;
                if r != 0 {
                    quads.push((a, b, k, r));
                }
            }
        }
    }
    StructureAlgebra::new("induced", n, alg.p(), &quads).expect("valid constants")
}

/// Number of index-p subalgebras of the subalgebra H.
pub fn a_p(h: &HNFLattice, alg: &StructureAlgebra) -> u64 {
    let ind = induced_mod_p(h, alg);
    let ch = Checker::new(&ind, 1);
    let mut c = 0;
    Enumerator::new(alg.n(), alg.p(), 1).for_each(|l| {
        if ch.is_subalgebra(l) {
            c += 1;
        }
    });
    c
}

/// Number of subalgebras containing K with index p.
pub fn b_p(k: &HNFLattice, alg: &StructureAlgebra) -> u64 {
    let ch = Checker::new(alg, k.index_exponent().saturating_sub(1));
    superlattices_index_p(k).iter().filter(|h| ch.is_subalgebra(h)).count() as u64
}

pub fn local_growth_identity_check(alg: &StructureAlgebra, i: u32) -> GrowthReport {
    let p = alg.p();
    let mut a_values = BTreeMap::new();
    let mut b_values = BTreeMap::new();
    let (mut lhs, mut rhs) = (0, 0);
    let ci = Checker::new(alg, i);
    Enumerator::new(alg.n(), p, i).for_each(|h| {
        if ci.is_subalgebra(h) {
            let v = a_p(h, alg);
            lhs += v;
            *a_values.entry(v).or_default() += 1;
        }
    });
    let cj = Checker::new(alg, i + 1);
    Enumerator::new(alg.n(), p, i + 1).for_each(|k| {
        if cj.is_subalgebra(k) {
            let v = b_p(k, alg);
            rhs += v;
            *b_values.entry(v).or_default() += 1;
        }
    });
    GrowthReport {
        i,
        lhs,
        rhs,
        holds: lhs == rhs,
        a_all_one_mod_p: a_values.keys().all(|v| v % p == 1 % p),
        b_all_one_mod_p: b_values.keys().all(|v| v % p == 1 % p),
        a_values,
        b_values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn heisenberg_p2_i1() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        let r = local_growth_identity_check(&h, 1);
        assert!(r.holds && r.a_all_one_mod_p && r.b_all_one_mod_p, "{r:?}");
    }

    #[test]
    fn abelian_double_count() {
        let a = StructureAlgebra::abelian(2, 3);
        let r = local_growth_identity_check(&a, 2);
        // 13 lattices at index 9, each with 4 index-3 sublattices
        assert_eq!(r.lhs, 13 * 4);
        assert!(r.holds);
    }
}
