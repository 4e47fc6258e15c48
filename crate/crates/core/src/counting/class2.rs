use super::{CountError, Kind};
use crate::algebra::StructureAlgebra;
use crate::lattice::{Enumerator, HNFLattice};

/// Subalgebra (or ideal) count at index p^i via the centre splitting
/// A = C + Z(A): pairs (Lambda_1 <= C, Lambda_2 <= Z) with the product
/// condition, each weighted by p^{a i_2}.
pub fn class2_split_count(alg: &StructureAlgebra, i: u32, kind: Kind) -> Result<u64, CountError> {
    let split = alg.class2_split()?;
    let (a, b) = (split.a, split.b);
    let p = alg.p();
    let mut total = 0u64;
    for i2 in 0..=i {
        let i1 = i - i2;
        if (a == 0 && i1 > 0) || (b == 0 && i2 > 0) {
            continue;
        }
        let m = (p as i128).pow(i2);
        let consts = split.constants_mod(p, i2);
        let lam2: Vec<HNFLattice> = Enumerator::new(b, p, i2).iter().collect();
        let weight = (p as u64).pow(a as u32 * i2);
        let prod = |x: &[i128], y: &[i128]| -> Vec<i128> {
            let mut v = vec![0i128; b];
            for s in 0..a {
                for t in 0..a {
                    if x[s] == 0 || y[t] == 0 {
                        continue;
                    }
                    for (k, vk) in v.iter_mut().enumerate() {
                        *vk = (*vk + x[s] * y[t] % m * consts[(s * a + t) * b + k] as i128) % m;
                    }
                }
            }
            v
        };
        let mut pairs = 0u64;
        Enumerator::new(a, p, i1).for_each(|l1| {
            let rows = l1.rows_i128();
            let mut vecs = Vec::new();
            match kind {
                Kind::Subalgebra => {
                    for x in &rows {
                        for y in &rows {
                            vecs.push(prod(x, y));
                        }
                    }
                }
                Kind::Ideal => {
                    for x in &rows {
                        for k in 0..a {
                            let mut e = vec![0i128; a];
                            e[k] = 1;
                            vecs.push(prod(x, &e));
                            vecs.push(prod(&e, x));
                        }
                    }
                }
                Kind::Lattice => {}
            }
            vecs.retain(|v| v.iter().any(|&x| x != 0));
            pairs += lam2.iter().filter(|l2| vecs.iter().all(|v| l2.contains_i128(v))).count() as u64;
        });
        total += pairs * weight;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::counting::count;
    use crate::exactmath::gaussian_binomial;

    #[test]
    fn heisenberg_agrees_with_direct() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        for i in 0..=4 {
            assert_eq!(class2_split_count(&h, i, Kind::Subalgebra).unwrap(), count(&h, i, Kind::Subalgebra));
            assert_eq!(class2_split_count(&h, i, Kind::Ideal).unwrap(), count(&h, i, Kind::Ideal));
        }
    }

    #[test]
    fn abelian_is_lattice_count() {
        let a = catalog("abelian-2", 3).unwrap().algebra;
        for i in 0..4 {
            assert_eq!(class2_split_count(&a, i, Kind::Subalgebra).unwrap() as i64, gaussian_binomial(i + 1, 1, &3i64));
        }
    }

    #[test]
    fn rejects_class_three() {
        let f = catalog("filiform-4", 2).unwrap().algebra;
        assert!(class2_split_count(&f, 1, Kind::Subalgebra).is_err());
    }
}
