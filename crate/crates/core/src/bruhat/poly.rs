use super::cell::{unitri_inverse, BruhatCell};
use super::BruhatError;
use crate::algebra::StructureAlgebra;
use crate::exactmath::modp;

/// How the permutation enters the structure constants of f^m_{k,l}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    /// c[sigma(i)][sigma(j)][sigma(q)]
    Direct,
    /// c[sigma^-1(i)][sigma^-1(j)][sigma^-1(q)]
    Inverse,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Direct, Convention::Inverse];

    fn relabel(self, sigma: &[usize]) -> Vec<usize> {
        match self {
            Convention::Direct => sigma.to_vec(),
            Convention::Inverse => {
                let mut inv = vec![0; sigma.len()];
                for (i, &s) in sigma.iter().enumerate() {
                    inv[s] = i;
                }
                inv
            }
        }
    }
}

/// R(x): entry (i, j) is l_ij(x) = sum_q c[i][j][q] x_q.
pub fn mult_matrix(alg: &StructureAlgebra, x: &[i128]) -> Vec<i128> {
    let n = alg.n();
    let mut out = vec![0i128; n * n];
    for &(i, j, q, c) in alg.terms() {
        out[i * n + j] += c as i128 * x[q];
    }
    out
}

/// R as linear forms: entry (i, j) is the coefficient vector of l_ij.
pub fn mult_matrix_forms(alg: &StructureAlgebra) -> Vec<Vec<Vec<i64>>> {
    let n = alg.n();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|q| alg.c(i, j, q)).collect()).collect()).collect()
}

/// Permuted structure constants c'[i][j][q] as a dense cube.
fn permuted_constants(alg: &StructureAlgebra, sigma: &[usize], conv: Convention) -> Vec<i128> {
    let n = alg.n();
    let s = conv.relabel(sigma);
    let mut pos = vec![0; n];
    for (i, &si) in s.iter().enumerate() {
        pos[si] = i;
    }
    let mut out = vec![0i128; n * n * n];
    for &(i, j, q, c) in alg.terms() {
        out[(pos[i] * n + pos[j]) * n + pos[q]] = c as i128;
    }
    out
}

/// All f^m_{k,l}, indexed [(k n + l) n + m], optionally reduced mod m.
fn all_f(beta: &[i128], binv: &[i128], cube: &[i128], n: usize, modulus: Option<i128>) -> Vec<i128> {
    let red = |x: i128| modulus.map_or(x, |m| x.rem_euclid(m));
    // g[i][j][m] = sum_q c'[i][j][q] binv[q][m]
    let mut g = vec![0i128; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for q in 0..n {
                let c = cube[(i * n + j) * n + q];
                if c != 0 {
                    for m in 0..n {
                        let t = &mut g[(i * n + j) * n + m];
                        *t = red(*t + c * binv[q * n + m]);
                    }
                }
            }
        }
    }
    let mut out = vec![0i128; n * n * n];
    for k in 0..n {
        for l in 0..n {
            for m in 0..n {
                let mut s = 0i128;
                for i in 0..=k {
                    let bk = beta[k * n + i];
                    if bk == 0 {
                        continue;
                    }
                    for j in 0..=l {
                        s = red(s + red(bk * beta[l * n + j]) * g[(i * n + j) * n + m]);
                    }
                }
                out[(k * n + l) * n + m] = s;
            }
        }
    }
    out
}

fn cell_beta(cell: &BruhatCell) -> Vec<i128> {
    cell.beta.iter().map(|&x| x as i128).collect()
}

/// Exact f^m_{k,l}(beta) (0-based k, l, m).
pub fn f_klm(cell: &BruhatCell, alg: &StructureAlgebra, conv: Convention, k: usize, l: usize, m: usize) -> i128 {
    let n = cell.n;
    let f = all_f(&cell_beta(cell), &cell.beta_inverse(), &permuted_constants(alg, &cell.sigma, conv), n, None);
    f[(k * n + l) * n + m]
}

/// All f^m_{k,l} mod p^K for an arbitrary lower unitriangular beta.
pub fn f_klm_mod(beta: &[i128], sigma: &[usize], alg: &StructureAlgebra, conv: Convention, k: u32) -> Vec<i128> {
    let n = alg.n();
    let m = modp::pow(alg.p() as i128, k);
    let b: Vec<i128> = beta.iter().map(|&x| x.rem_euclid(m)).collect();
    let binv = unitri_inverse(&b, n, Some(m));
    all_f(&b, &binv, &permuted_constants(alg, sigma, conv), n, Some(m))
}

/// Largest shortfall of v(f) + lambda_k + lambda_l - lambda_m + h below 0.
fn shortfall(cell: &BruhatCell, alg: &StructureAlgebra, conv: Convention, h: u32) -> u32 {
    let n = cell.n;
    let p = cell.p as i128;
    let f = all_f(&cell_beta(cell), &cell.beta_inverse(), &permuted_constants(alg, &cell.sigma, conv), n, None);
    let mut worst = 0i64;
    for k in 0..n {
        for l in 0..n {
            for m in 0..n {
                let v = f[(k * n + l) * n + m];
                if v == 0 {
                    continue;
                }
                let e = modp::val(v, p).unwrap() as i64 + cell.lambda(k) as i64 + cell.lambda(l) as i64 - cell.lambda(m) as i64 + h as i64;
                worst = worst.max(-e);
            }
        }
    }
    worst as u32
}

/// Lambda_beta is a subalgebra iff p^{lambda_k + lambda_l - lambda_m} f^m_{k,l} is integral for all k, l, m.
pub fn subalgebra_condition(cell: &BruhatCell, alg: &StructureAlgebra, conv: Convention) -> bool {
    shortfall(cell, alg, conv, 0) == 0
}

/// The same congruences weakened by p^h, as for the homothetic lattice p^h Lambda_beta.
pub fn scaled_subalgebra_condition(cell: &BruhatCell, alg: &StructureAlgebra, conv: Convention, h: u32) -> bool {
    shortfall(cell, alg, conv, h) == 0
}

/// Weight of Lambda_beta read off the f^m_{k,l}: least w making the scaled congruences hold.
pub fn cell_weight(cell: &BruhatCell, alg: &StructureAlgebra, conv: Convention) -> u32 {
    shortfall(cell, alg, conv, 0)
}

fn check_unit(alg: &StructureAlgebra, lambda: i128) -> Result<(), BruhatError> {
    if lambda.rem_euclid(alg.p() as i128) == 0 {
        Err(BruhatError::NotUnit(lambda))
    } else {
        Ok(())
    }
}

fn sigma_weights(alg: &StructureAlgebra, sigma: &[usize]) -> Result<Vec<i64>, BruhatError> {
    let w = alg.weights().ok_or(BruhatError::Ungraded)?;
    Ok(sigma.iter().map(|&s| w[s] as i64).collect())
}

fn lambda_pow(lambda: i128, e: i64, m: i128) -> i128 {
    if e >= 0 {
        modp::pow_mod(lambda, e as u64, m)
    } else {
        modp::pow_mod(modp::inv(lambda, m).expect("unit"), (-e) as u64, m)
    }
}

/// Substitutes beta_rc -> lambda^{sign (w_sigma(c) - w_sigma(r))} beta_rc mod p^K and
/// tests f -> lambda^{w_sigma(m) - w_sigma(k) - w_sigma(l)} f for all k, l, m.
fn homogeneity_with(beta: &[i128], sigma: &[usize], alg: &StructureAlgebra, lambda: i128, k: u32, sign: i64) -> Result<bool, BruhatError> {
    check_unit(alg, lambda)?;
    let w = sigma_weights(alg, sigma)?;
    let n = alg.n();
    let m = modp::pow(alg.p() as i128, k);
    let mut b2 = beta.to_vec();
    for r in 0..n {
        for c in 0..r {
            b2[r * n + c] = modp::rem(lambda_pow(lambda, sign * (w[c] - w[r]), m) * beta[r * n + c].rem_euclid(m), m);
        }
    }
    let f = f_klm_mod(beta, sigma, alg, Convention::Direct, k);
    let f2 = f_klm_mod(&b2, sigma, alg, Convention::Direct, k);
    for kk in 0..n {
        for l in 0..n {
            for mm in 0..n {
                let idx = (kk * n + l) * n + mm;
                let factor = lambda_pow(lambda, w[mm] - w[kk] - w[l], m);
                if f2[idx] != modp::rem(factor * f[idx], m) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Weighted homogeneity of f^m_{k,l} under the dilation beta -> T^-1 beta T.
pub fn homogeneity_check(beta: &[i128], sigma: &[usize], alg: &StructureAlgebra, lambda: i128, k: u32) -> Result<bool, BruhatError> {
    homogeneity_with(beta, sigma, alg, lambda, k, 1)
}

/// Same test with the opposite substitution beta_rc -> lambda^{w_sigma(r) - w_sigma(c)} beta_rc.
pub fn homogeneity_reversed(beta: &[i128], sigma: &[usize], alg: &StructureAlgebra, lambda: i128, k: u32) -> Result<bool, BruhatError> {
    homogeneity_with(beta, sigma, alg, lambda, k, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::bruhat::{cells_for_type, permutations};
    use crate::counting::is_subalgebra;
    use crate::lattice::DivisorType;

    fn heis(p: u64) -> StructureAlgebra {
        catalog("heisenberg", p).unwrap().algebra
    }

    #[test]
    fn mult_matrix_examples() {
        let h = heis(2);
        assert_eq!(mult_matrix(&h, &[0, 0, 1]), vec![0, 1, 0, -1, 0, 0, 0, 0, 0]);
        let a = StructureAlgebra::abelian(3, 2);
        assert!(mult_matrix(&a, &[1, 2, 3]).iter().all(|&x| x == 0));
        let x = [1, 2, 3];
        let y = [4, -1, 7];
        let s: Vec<i128> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = mult_matrix(&h, &s);
        let rhs: Vec<i128> = mult_matrix(&h, &x).iter().zip(mult_matrix(&h, &y)).map(|(a, b)| a + b).collect();
        assert_eq!(lhs, rhs);
        assert_eq!(mult_matrix_forms(&h)[0][1], vec![0, 0, 1]);
    }

    #[test]
    fn f_identity_is_structure_constants() {
        let h = heis(2);
        let c = BruhatCell::identity(2, DivisorType::new(vec![1, 0, 0]), vec![0, 1, 2]);
        for k in 0..3 {
            for l in 0..3 {
                for m in 0..3 {
                    assert_eq!(f_klm(&c, &h, Convention::Direct, k, l, m), h.c(k, l, m) as i128);
                }
            }
        }
    }

    #[test]
    fn f_regression_value() {
        // beta = [[1,0,0],[1,1,0],[1,1,1]], sigma = id: beta^-1 col 2 = (0,0,1)
        // f^3_{2,3} = sum beta_2i beta_3j c[i][j][3] = beta_21 beta_32 - beta_22 beta_31 = 0
        // f^3_{1,2} = beta_11 beta_22 = 1
        let h = heis(2);
        let mut c = BruhatCell::identity(2, DivisorType::new(vec![2, 1, 0]), vec![0, 1, 2]);
        c.beta = vec![1, 0, 0, 1, 1, 0, 1, 1, 1];
        assert_eq!(f_klm(&c, &h, Convention::Direct, 1, 2, 2), 0);
        assert_eq!(f_klm(&c, &h, Convention::Direct, 0, 1, 2), 1);
        assert_eq!(f_klm(&c, &h, Convention::Direct, 1, 0, 2), -1);
        c.beta = vec![1, 0, 0, 1, 1, 0, 3, 1, 1];
        assert_eq!(f_klm(&c, &h, Convention::Direct, 1, 2, 2), -2);
    }

    #[test]
    fn abelian_always_subalgebra() {
        let a = StructureAlgebra::abelian(3, 2);
        let ty = DivisorType::new(vec![2, 1, 0]);
        for s in permutations(3) {
            for c in cells_for_type(2, &ty, &s) {
                assert!(subalgebra_condition(&c, &a, Convention::Direct));
                assert_eq!(f_klm(&c, &a, Convention::Direct, 0, 1, 2), 0);
            }
        }
    }

    #[test]
    fn direct_convention_matches_membership() {
        let h = heis(2);
        for ty in DivisorType::primitive_types(3, 4, false) {
            for s in permutations(3) {
                for c in cells_for_type(2, &ty, &s) {
                    let lat = c.lattice();
                    assert_eq!(subalgebra_condition(&c, &h, Convention::Direct), is_subalgebra(&lat, &h), "{c}");
                    assert_eq!(cell_weight(&c, &h, Convention::Direct), crate::counting::weight(&lat, &h).unwrap(), "{c}");
                }
            }
        }
    }

    #[test]
    fn scaled_condition_holds_for_large_h() {
        let h = heis(2);
        let ty = DivisorType::new(vec![3, 0, 0]);
        for s in permutations(3) {
            for c in cells_for_type(2, &ty, &s) {
                assert!(scaled_subalgebra_condition(&c, &h, Convention::Direct, 3));
            }
        }
    }

    #[test]
    fn homogeneity_sign() {
        let h = heis(3);
        let beta = vec![1, 0, 0, 5, 1, 0, 7, 11, 1];
        for s in permutations(3) {
            assert!(homogeneity_check(&beta, &s, &h, 1, 8).unwrap());
            assert!(homogeneity_check(&beta, &s, &h, 2, 8).unwrap());
        }
        assert!(!homogeneity_reversed(&beta, &[0, 1, 2], &h, 2, 8).unwrap());
        assert_eq!(homogeneity_check(&beta, &[0, 1, 2], &h, 3, 8), Err(BruhatError::NotUnit(3)));
    }
}
