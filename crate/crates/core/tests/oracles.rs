//! Frozen values derived from closed forms or independent enumeration.

use padic_zeta::algebra::catalog;
use padic_zeta::counting::{c_series, class2_split_count, count_levels, CountOptions, Kind};
use padic_zeta::exactmath::{fit_product_form, gaussian_binomial, limit_gaussian, FitOptions};
use padic_zeta::igusa::{count_lifting, homogeneous_bound, PolySystem};
use padic_zeta::suites::{heisenberg_series, zp2_series};
use padic_zeta::{Int, Rational, Series};

fn subalgebras(name: &str, p: u64, i_max: u32) -> Vec<u64> {
    let alg = catalog(name, p).unwrap().algebra;
    count_levels(&alg, i_max, &CountOptions::default()).iter().map(|l| l.subalgebras).collect()
}

fn as_ints(s: &Series) -> Vec<i64> {
    (0..=s.order()).map(|i| s.coeff(i).to_integer().try_into().unwrap()).collect()
}

#[test]
fn heisenberg_closed_form_expansions() {
    assert_eq!(as_ints(&heisenberg_series(2, 10)), [1, 3, 19, 43, 203, 427, 1835, 3755, 15531, 31403, 127659]);
    assert_eq!(as_ints(&heisenberg_series(3, 7)), [1, 4, 49, 157, 1534, 4693, 43330, 130810]);
}

#[test]
fn heisenberg_direct_counts() {
    assert_eq!(subalgebras("heisenberg", 2, 8), [1, 3, 19, 43, 203, 427, 1835, 3755, 15531]);
    assert_eq!(subalgebras("heisenberg", 3, 5), [1, 4, 49, 157, 1534, 4693]);
}

#[test]
fn heisenberg_split_counts_reach_the_fit_window() {
    let h = catalog("heisenberg", 3).unwrap().algebra;
    let split: Vec<u64> = (0..=10).map(|i| class2_split_count(&h, i, Kind::Subalgebra).unwrap()).collect();
    assert_eq!(split, [1, 4, 49, 157, 1534, 4693, 43330, 130810, 1187131, 3568774, 32207539]);
    assert_eq!(as_ints(&heisenberg_series(3, 10)), split.iter().map(|&x| x as i64).collect::<Vec<_>>());
}

#[test]
fn product_form_fit_recovers_heisenberg() {
    let s = heisenberg_series(2, 12);
    let f = fit_product_form(&s, &FitOptions::grid(4, 3, 2)).unwrap();
    assert_eq!(f.to_string(), "(1-8t^3) / (1-t)*(1-2t)*(1-4t^2)*(1-8t^2)");
}

#[test]
fn abelian_rank_four() {
    let alg = catalog("abelian-4", 3).unwrap().algebra;
    let opts = CountOptions { subalgebras: false, ideals: false, ..CountOptions::default() };
    let got: Vec<u64> = count_levels(&alg, 4, &opts).iter().map(|l| l.lattices).collect();
    assert_eq!(got, [1, 40, 1210, 33880, 925771]);
    assert_eq!(gaussian_binomial(7, 3, &Int::from(3)), Int::from(925771));
}

#[test]
fn zp2_series_and_c_k() {
    assert_eq!(as_ints(&zp2_series(3, 9)), [1, 3, 4, 7, 13, 16, 25, 43, 52, 79]);
    assert_eq!(as_ints(&zp2_series(5, 9)), [1, 3, 4, 9, 19, 24, 49, 99, 124, 249]);
    assert_eq!(subalgebras("zp2-componentwise", 3, 9), [1, 3, 4, 7, 13, 16, 25, 43, 52, 79]);
    let alg = catalog("zp2-componentwise", 5).unwrap().algebra;
    let levels = count_levels(&alg, 6, &CountOptions::all());
    assert_eq!(c_series(&alg, &levels, 6).unwrap(), [1, 3, 3, 6, 15, 15, 30]);
}

#[test]
fn limits() {
    assert_eq!(limit_gaussian(3, &Int::from(2)), Rational::new(1.into(), 3.into()));
    assert_eq!(limit_gaussian(4, &Int::from(2)), Rational::new((-1).into(), 21.into()));
    assert_eq!(limit_gaussian(3, &Int::from(3)), Rational::new(1.into(), 16.into()));
}

#[test]
fn polynomial_counts() {
    let xy = PolySystem::parse("n=2 p=3\nx*y\n").unwrap();
    assert_eq!(count_lifting(&xy, 3, 1 << 20).unwrap(), [1, 5, 21, 81]);
    let cusp = PolySystem::parse("n=2 p=2\nx^3 - y^2\n").unwrap();
    assert_eq!(count_lifting(&cusp, 8, 1 << 20).unwrap(), [1, 2, 6, 12, 24, 48, 160, 320, 896]);
    assert_eq!((0..6).map(|i| homogeneous_bound(1, 2, i)).collect::<Vec<_>>(), [0, 0, 1, 1, 2, 2]);
}
