use super::divisor::DivisorType;
use super::echelon::{echelon, snf_exponents};
use super::hnf::HNFLattice;
use super::LatticeError;
use crate::exactmath::modp;
use std::collections::BTreeSet;

fn max_exponent(p: u64) -> u32 {
    let mut v = 0;
    while (p as i128).pow(v + 2) < (1i128 << 62) {
        v += 1;
    }
    v
}

/// Canonical HNF of the span of `gens` given that it contains p^v Z^n.
pub fn canonicalize_bounded(gens: &[Vec<i128>], n: usize, p: u64, v: u32) -> Result<HNFLattice, LatticeError> {
    for g in gens {
        if g.len() != n {
            return Err(LatticeError::Dimension { expected: n, got: g.len() });
        }
    }
    if v > max_exponent(p) {
        return Err(LatticeError::TooLarge(v));
    }
    let piv = echelon(gens, n, p as i128, v);
    Ok(from_pivots(n, p, &piv))
}

fn from_pivots(n: usize, p: u64, piv: &[(u32, Vec<i128>)]) -> HNFLattice {
    let mut rows = vec![0i64; n * n];
    let mut exps = vec![0u32; n];
    for r in 0..n {
        exps[r] = piv[r].0;
        for c in 0..=r {
            rows[r * n + c] = piv[r].1[c] as i64;
        }
    }
    HNFLattice::from_parts_unchecked(n, p, exps, rows)
}

/// Canonical HNF of the Z_p-span of integer generators. Non-p parts of the
/// determinant are units and disappear.
pub fn canonicalize(gens: &[Vec<i128>], n: usize, p: u64) -> Result<HNFLattice, LatticeError> {
    let cap = max_exponent(p);
    let mut v = 8.min(cap);
    loop {
        let lat = canonicalize_bounded(gens, n, p, v)?;
        if lat.index_exponent() < v {
            return Ok(lat);
        }
        if v == cap {
            return Err(LatticeError::RankDeficient);
        }
        v = (2 * v).min(cap);
    }
}

pub fn sum(a: &HNFLattice, b: &HNFLattice) -> HNFLattice {
    assert_eq!(a.n(), b.n());
    let mut gens = a.rows_i128();
    gens.extend(b.rows_i128());
    let v = a.index_exponent().min(b.index_exponent());
    canonicalize_bounded(&gens, a.n(), a.p(), v).expect("sum stays within word range")
}

pub fn intersect(a: &HNFLattice, b: &HNFLattice) -> HNFLattice {
    assert_eq!(a.n(), b.n());
    let n = a.n();
    // rows (y | y) for y in a and (0 | z) for z in b; the high block is
    // eliminated first, leaving the intersection in the low block
    let mut gens = Vec::with_capacity(2 * n);
    for y in a.rows_i128() {
        let mut g = y.clone();
        g.extend(y);
        gens.push(g);
    }
    for z in b.rows_i128() {
        let mut g = vec![0i128; n];
        g.extend(z);
        gens.push(g);
    }
    let v = a.index_exponent() + b.index_exponent();
    assert!(v <= max_exponent(a.p()), "intersection exceeds word range");
    let piv = echelon(&gens, 2 * n, a.p() as i128, v);
    from_pivots(n, a.p(), &piv[..n])
}

pub fn divisor_type(lat: &HNFLattice) -> DivisorType {
    let i = lat.index_exponent();
    DivisorType::new(snf_exponents(&lat.rows_i128(), lat.p() as i128, i + 1))
}

/// (Lambda_0, h) with Lambda = p^h Lambda_0 and Lambda_0 primitive.
pub fn primitive_part(lat: &HNFLattice) -> (HNFLattice, u32) {
    let p = lat.p() as i128;
    let h = lat
        .rows_flat()
        .iter()
        .filter(|&&x| x != 0)
        .map(|&x| modp::val_capped(x as i128, p, u32::MAX))
        .min()
        .unwrap_or(0);
    if h == 0 {
        return (lat.clone(), 0);
    }
    (scale_down(lat, h), h)
}

fn scale_down(lat: &HNFLattice, h: u32) -> HNFLattice {
    let f = (lat.p() as i64).pow(h);
    let rows: Vec<i64> = lat.rows_flat().iter().map(|&x| x / f).collect();
    let exps: Vec<u32> = lat.diag_exponents().iter().map(|&e| e - h).collect();
    HNFLattice::from_parts_unchecked(lat.n(), lat.p(), exps, rows)
}

/// All H with K <= H and [H : K] = p.
pub fn superlattices_index_p(k: &HNFLattice) -> Vec<HNFLattice> {
    let n = k.n();
    let p = k.p();
    let i = k.index_exponent();
    if i == 0 {
        return Vec::new();
    }
    // {x : p x in K} = (1/p)(K meet pZ^n)
    let l = scale_down(&intersect(k, &HNFLattice::scalar(n, p, 1)), 1);
    let mut out = BTreeSet::new();
    let mut c = vec![0i128; n];
    loop {
        let mut x = vec![0i128; n];
        for (j, &cj) in c.iter().enumerate() {
            if cj != 0 {
                for (xt, &lt) in x.iter_mut().zip(l.row(j)) {
                    *xt += cj * lt as i128;
                }
            }
        }
        if !k.contains_i128(&x) {
            let mut gens = k.rows_i128();
            gens.push(x);
            out.insert(canonicalize_bounded(&gens, n, p, i).expect("within range"));
        }
        let mut s = n;
        loop {
            if s == 0 {
                return out.into_iter().collect();
            }
            s -= 1;
            c[s] += 1;
            if c[s] < p as i128 {
                break;
            }
            c[s] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Enumerator;

    fn lat(n: usize, p: u64, rows: &[i64]) -> HNFLattice {
        HNFLattice::from_rows(n, p, rows.to_vec()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let l = canonicalize(&[vec![2, 0], vec![0, 2], vec![1, 1]], 2, 2).unwrap();
        assert_eq!(l, lat(2, 2, &[2, 0, 1, 1]));
        assert!(l.contains(&[1, 1]) && l.contains(&[0, 2]));
        assert_eq!(canonicalize(&[vec![3, 1], vec![1, 2]], 2, 2).unwrap(), HNFLattice::full(2, 2));
        assert_eq!(canonicalize(&[vec![1, 2], vec![2, 4]], 2, 3), Err(LatticeError::RankDeficient));
        Enumerator::new(3, 3, 3).for_each(|l| {
            assert_eq!(&canonicalize(&l.rows_i128(), 3, 3).unwrap(), l);
        });
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisor_type(&HNFLattice::full(3, 2)).lambda, vec![0, 0, 0]);
        assert_eq!(divisor_type(&HNFLattice::scalar(3, 2, 1)).lambda, vec![1, 1, 1]);
        let t = divisor_type(&HNFLattice::diagonal(2, &[2, 0]));
        assert_eq!(t.lambda, vec![2, 0]);
        assert_eq!(t.jumps(), vec![(1, 2)]);
    }

    #[test]
    fn primitive_examples() {
        let l = HNFLattice::diagonal(2, &[2, 0]);
        assert_eq!(primitive_part(&l), (l.clone(), 0));
        assert_eq!(primitive_part(&HNFLattice::scalar(3, 5, 2)), (HNFLattice::full(3, 5), 2));
        assert_eq!(primitive_part(&HNFLattice::diagonal(2, &[3, 1])), (HNFLattice::diagonal(2, &[2, 0]), 1));
    }

    #[test]
    fn sum_and_intersection() {
        let a = HNFLattice::diagonal(2, &[1, 0]);
        let b = HNFLattice::diagonal(2, &[0, 1]);
        assert_eq!(sum(&a, &b), HNFLattice::full(2, 2));
        assert_eq!(intersect(&a, &a), a);
        assert_eq!(intersect(&a, &b), HNFLattice::scalar(2, 2, 1));
        let ls: Vec<_> = Enumerator::new(2, 2, 2).iter().collect();
        for x in &ls {
            for y in &ls {
                let s = sum(x, y);
                let m = intersect(x, y);
                assert_eq!(
                    x.index_exponent() + y.index_exponent(),
                    s.index_exponent() + m.index_exponent()
                );
                assert!(x.is_sublattice_of(&s) && m.is_sublattice_of(x) && m.is_sublattice_of(y));
            }
        }
    }

    #[test]
    fn superlattice_examples() {
        assert_eq!(superlattices_index_p(&HNFLattice::scalar(2, 2, 1)).len(), 3);
        assert!(superlattices_index_p(&HNFLattice::full(2, 2)).is_empty());
        // rank of K's cokernel socle: Z/4 x Z/2 has 3 subgroups of order 2
        assert_eq!(superlattices_index_p(&HNFLattice::diagonal(2, &[2, 1])).len(), 3);
        assert_eq!(superlattices_index_p(&HNFLattice::diagonal(3, &[2, 0, 0])).len(), 1);
    }
}
