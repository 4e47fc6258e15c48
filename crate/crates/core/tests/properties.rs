use padic_zeta::exactmath::{gaussian_binomial, valuation, TruncatedSeries, Valuation};
use padic_zeta::lattice::{canonicalize_bounded, enumerate, snf_exponents};
use padic_zeta::{Int, Rational};
use proptest::prelude::*;

fn series(p: u64, v: &[i64]) -> TruncatedSeries<Rational> {
    TruncatedSeries::new(p, v.iter().map(|&x| Rational::from_integer(x.into())).collect())
}

proptest! {
    #[test]
    fn q_pascal(a in 1u32..12, b in 1u32..12, q in 2i64..8) {
        let q = Int::from(q);
        let lhs = gaussian_binomial(a + 1, b, &q);
        let rhs = gaussian_binomial(a, b - 1, &q) + q.pow(b) * gaussian_binomial(a, b, &q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gaussian_symmetry(a in 0u32..14, b in 0u32..14, q in 2i64..6) {
        prop_assume!(b <= a);
        let q = Int::from(q);
        prop_assert_eq!(gaussian_binomial(a, b, &q), gaussian_binomial(a, a - b, &q));
    }

    #[test]
    fn series_product_commutes_and_associates(
        x in prop::collection::vec(-20i64..20, 6),
        y in prop::collection::vec(-20i64..20, 6),
        z in prop::collection::vec(-20i64..20, 6),
    ) {
        let (x, y, z) = (series(3, &x), series(3, &y), series(3, &z));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
    }

    #[test]
    fn series_division_inverts_product(x in prop::collection::vec(-20i64..20, 6), mut y in prop::collection::vec(-20i64..20, 6)) {
        y[0] = 1;
        let (x, y) = (series(5, &x), series(5, &y));
        prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x);
    }

    #[test]
    fn valuation_is_additive(a in 1i64..100_000, b in 1i64..100_000, p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let r = |x: i64| Rational::from_integer(x.into());
        let p = Int::from(p);
        let (va, vb) = (valuation(&r(a), &p), valuation(&r(b), &p));
        prop_assert_eq!(valuation(&(r(a) * r(b)), &p), va + vb);
        let q = Rational::new(a.into(), b.into());
        let d = va.finite().unwrap() - vb.finite().unwrap();
        prop_assert_eq!(valuation(&q, &p), Valuation::Finite(d));
    }

    #[test]
    fn hnf_index_equals_snf_sum(entries in prop::collection::vec(-40i128..40, 9), p in prop::sample::select(vec![2u64, 3, 5])) {
        let v = 6;
        let pv = (p as i128).pow(v);
        let mut gens: Vec<Vec<i128>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        for k in 0..3 {
            let mut e = vec![0; 3];
            e[k] = pv;
            gens.push(e);
        }
        let lat = canonicalize_bounded(&gens, 3, p, v).unwrap();
        let snf = snf_exponents(&gens, p as i128, v + 1);
        prop_assert_eq!(lat.index_exponent(), snf.iter().sum::<u32>());
        for g in &gens {
            prop_assert!(lat.contains_i128(g));
        }
    }
}

#[test]
fn enumeration_is_canonical() {
    for (n, p, i) in [(2usize, 3u64, 4u32), (3, 2, 4)] {
        let lats: Vec<_> = enumerate(n, p, i).collect();
        for l in &lats {
            let again = canonicalize_bounded(&l.rows_i128(), n, p, i + 1).unwrap();
            assert_eq!(&again, l);
        }
        let mut rows: Vec<Vec<i64>> = lats.iter().map(|l| l.rows_flat().to_vec()).collect();
        let len = rows.len();
        rows.sort();
        rows.dedup();
        assert_eq!(rows.len(), len);
    }
}
