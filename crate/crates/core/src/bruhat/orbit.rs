use super::cell::BruhatCell;
use super::BruhatError;
use crate::algebra::StructureAlgebra;
use crate::counting::weight;
use crate::exactmath::modp;
use serde::Serialize;
use std::collections::BTreeSet;

/// Sign used in eps(beta) = (v +- 1)(n - 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EpsilonSign {
    /// (v + 1)(n - 1)
    Plus,
    /// (v - 1)(n - 1)
    Minus,
}

/// Orbit data of a cell under dilations and the transvection M_{r*c*}(mu).
/// Row indices iota_star, r_star, c_star are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStats {
    pub iota_star: usize,
    pub big_r: u32,
    pub r_star: usize,
    pub c_star: usize,
    pub mult_orbit_valuation: u32,
    pub add_orbit_valuation: u32,
    /// (v + 1)(n - 1)
    pub eps: i64,
    /// (v - 1)(n - 1)
    pub eps_minus: i64,
    pub delta: u32,
    pub mult_orbit_size: u64,
    pub mult_orbit_direct: u64,
    pub add_orbit_size: u64,
    pub add_orbit_direct: u64,
}

impl OrbitStats {
    pub fn epsilon(&self, sign: EpsilonSign) -> i64 {
        match sign {
            EpsilonSign::Plus => self.eps,
            EpsilonSign::Minus => self.eps_minus,
        }
    }

    /// Orbit-stabilizer sizes agree with direct lattice counts.
    pub fn cross_checks(&self) -> bool {
        self.mult_orbit_size == self.mult_orbit_direct && self.add_orbit_size == self.add_orbit_direct
    }
}

/// 1-based view of a cell.
struct View<'a> {
    cell: &'a BruhatCell,
    w: Vec<i64>,
    binv: Vec<i128>,
}

impl<'a> View<'a> {
    fn new(cell: &'a BruhatCell, alg: &StructureAlgebra) -> Result<Self, BruhatError> {
        let w = alg.weights().ok_or(BruhatError::Ungraded)?;
        Ok(Self { cell, w: cell.sigma.iter().map(|&s| w[s] as i64).collect(), binv: cell.beta_inverse() })
    }
    fn n(&self) -> usize {
        self.cell.n
    }
    fn lam(&self, k: usize) -> i64 {
        self.cell.lambda(k - 1) as i64
    }
    fn w(&self, k: usize) -> i64 {
        self.w[k - 1]
    }
    fn beta(&self, r: usize, c: usize) -> i128 {
        self.cell.beta_at(r - 1, c - 1) as i128
    }
    fn binv(&self, r: usize, c: usize) -> i128 {
        self.binv[(r - 1) * self.n() + c - 1]
    }
    /// sum_{a <= iota < b} r_iota
    fn sum_r(&self, a: usize, b: usize) -> i64 {
        if a < b {
            self.lam(a) - self.lam(b)
        } else {
            0
        }
    }
    fn p(&self) -> i128 {
        self.cell.p as i128
    }
    /// v_p(x) capped at the modulus exponent of a lower entry (r > c), infinite above.
    fn nu(&self, x: i128, r: usize, c: usize) -> i64 {
        if r <= c {
            return if x == 0 { i64::MAX / 4 } else { modp::val(x, self.p()).unwrap() as i64 };
        }
        let cap = (self.lam(c) - self.lam(r)) as u32;
        modp::val_capped(x.rem_euclid(modp::pow(self.p(), cap.max(0))), self.p(), cap) as i64
    }
}

fn units(p: i128, k: u32) -> impl Iterator<Item = i128> {
    (1..modp::pow(p, k)).filter(move |x| x % p != 0)
}

/// Orbit statistics with direct cross-checks of both orbit sizes.
pub fn orbit_stats(cell: &BruhatCell, alg: &StructureAlgebra) -> Result<OrbitStats, BruhatError> {
    let v = View::new(cell, alg)?;
    let n = v.n();
    let p = v.p();
    let big_r = cell.ty.big_r();
    if big_r == 0 {
        return Err(BruhatError::TrivialType);
    }
    let iota_star = (1..n).find(|&i| cell.ty.r(i) == big_r).unwrap();
    let r_star = (iota_star + 1..=n).min_by_key(|&r| (v.w(r), r)).unwrap();
    let c_star = (1..=iota_star).max_by_key(|&c| (v.w(c), std::cmp::Reverse(c))).unwrap();
    let k = cell.precision();
    let modk = modp::pow(p, k);

    // multiplicative stabilizer
    let mut n_units = 0u64;
    let mut stab = 0u64;
    let mut direct = BTreeSet::new();
    for lambda in units(p, k) {
        n_units += 1;
        let pw = |e: i64| {
            if e >= 0 {
                modp::pow_mod(lambda, e as u64, modk)
            } else {
                modp::pow_mod(modp::inv(lambda, modk).unwrap(), (-e) as u64, modk)
            }
        };
        let fixes = (1..=n).all(|r| {
            (1..r).all(|c| {
                let m = modp::pow(p, (v.lam(c) - v.lam(r)) as u32);
                let s: i128 = (c..=r).map(|q| modp::rem(pw(v.w(q)) * v.beta(r, q) % m * v.binv(q, c), m)).sum();
                s % m == 0
            })
        });
        stab += u64::from(fixes);
        let mut b2 = vec![0i128; n * n];
        for r in 1..=n {
            for c in 1..=r {
                b2[(r - 1) * n + c - 1] = modp::rem(pw(v.w(c) - v.w(r)) * v.beta(r, c), modk);
            }
        }
        direct.insert(cell.with_beta(&b2).lattice());
    }
    let mult_orbit_size = n_units / stab;
    let mult_v = modp::val(mult_orbit_size as i128, p).unwrap();

    // additive stabilizer p^delta O
    let mut delta = 0i64;
    for i in 1..=n {
        for j in 1..i {
            let x = v.beta(i, r_star) * v.binv(c_star, j);
            if x != 0 {
                delta = delta.max(v.lam(j) - v.lam(i) - modp::val(x, p).unwrap() as i64);
            }
        }
    }
    let delta = delta as u32;
    let mut add_direct = BTreeSet::new();
    for mu in 0..modk {
        add_direct.insert(cell.with_beta(&transvect(cell, r_star, c_star, mu)).lattice());
    }
    let nm1 = n as i64 - 1;
    Ok(OrbitStats {
        iota_star,
        big_r,
        r_star,
        c_star,
        mult_orbit_valuation: mult_v,
        add_orbit_valuation: delta,
        eps: (mult_v as i64 + 1) * nm1,
        eps_minus: (mult_v as i64 - 1) * nm1,
        delta,
        mult_orbit_size,
        mult_orbit_direct: direct.len() as u64,
        add_orbit_size: (p as u64).pow(delta),
        add_orbit_direct: add_direct.len() as u64,
    })
}

/// beta M_{r*c*}(mu): mu times column r* added to column c* (1-based).
fn transvect(cell: &BruhatCell, r_star: usize, c_star: usize, mu: i128) -> Vec<i128> {
    let n = cell.n;
    let mut b: Vec<i128> = cell.beta.iter().map(|&x| x as i128).collect();
    for i in 0..n {
        b[i * n + c_star - 1] += mu * cell.beta_at(i, r_star - 1) as i128;
    }
    b
}

/// Outcome of one inequality family over one or more cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub example: Option<String>,
}

impl LemmaCheck {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failed: 0, example: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.example.is_none() {
                self.example = Some(detail());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.failed == 0
    }

    pub fn merge(&mut self, other: &LemmaCheck) {
        self.checked += other.checked;
        self.failed += other.failed;
        self.example = match (self.example.take(), other.example.clone()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
}

/// Names of the inequality families in the order returned by `lemma_checks`.
pub const LEMMA_NAMES: [&str; 9] = [
    "val_beta_influenced",
    "val_beta_influenced_eps_plus",
    "val_beta_influenced_eps_minus",
    "val_beta_inv_influenced",
    "val_beta_inv_influenced_unshifted",
    "val_beta_inv_influenced_eps_plus",
    "val_beta_inv_influenced_eps_minus",
    "val_beta_added",
    "val_beta_inv_added",
];

/// Evaluates every valuation inequality on one cell.
pub fn lemma_checks(cell: &BruhatCell, alg: &StructureAlgebra, st: &OrbitStats) -> Result<Vec<LemmaCheck>, BruhatError> {
    let v = View::new(cell, alg)?;
    let n = v.n();
    let is = st.iota_star;
    let ov = st.mult_orbit_valuation as i64 + 1;
    let mut out: Vec<LemmaCheck> = LEMMA_NAMES.iter().map(|&s| LemmaCheck::new(s)).collect();
    let min_low = (is + 1..=n).map(|r| v.w(r)).min().unwrap();
    let max_high = (1..=is).map(|c| v.w(c)).max().unwrap();
    let say = |what: &str, r: usize, c: usize, nu: i64, bound: i64| format!("{cell}: nu({what}_{r}{c}) = {nu} < {bound}");

    for j in (1..=is).filter(|&j| v.w(j) < min_low) {
        for l in is + 1..=n {
            let nu = v.nu(v.beta(l, j), l, j);
            let base = v.sum_r(is, l);
            for (idx, bound) in [(0, base - ov * (l - is) as i64), (1, base - st.eps), (2, base - st.eps_minus)] {
                out[idx].record(nu >= bound, || say("beta", l, j, nu, bound));
            }
        }
    }
    for q in (is + 1..=n).filter(|&q| v.w(q) > max_high) {
        for m in 1..=is {
            let nu = v.nu(v.binv(q, m), q, m);
            let base = v.lam(m) - v.lam(is + 1);
            let bounds = [
                (3, base - ov * (is - m + 1) as i64),
                (4, base - ov * (is - m) as i64),
                (5, base - st.eps),
                (6, base - st.eps_minus),
            ];
            for (idx, bound) in bounds {
                out[idx].record(nu >= bound, || say("beta^-1", q, m, nu, bound));
            }
        }
    }
    let d = st.delta as i64;
    for i in 1..=n {
        let nu = v.nu(v.beta(i, st.r_star), i, st.r_star);
        let bound = v.sum_r(st.c_star, i) - d;
        out[7].record(nu >= bound, || say("beta", i, st.r_star, nu, bound));
    }
    for j in 1..=n {
        let nu = v.nu(v.binv(st.c_star, j), st.c_star, j);
        let bound = v.sum_r(j, st.r_star) - d;
        out[8].record(nu >= bound, || say("beta^-1", st.c_star, j, nu, bound));
    }
    Ok(out)
}

/// Weight of Lambda_{beta M(mu)} equals that of Lambda_beta, for mu meeting
/// nu(mu) >= max(delta - (R + w)/2, delta - (R + w - eps)).
pub fn additive_weight_preservation(
    cell: &BruhatCell,
    alg: &StructureAlgebra,
    st: &OrbitStats,
    mu: i128,
    sign: EpsilonSign,
) -> Result<bool, BruhatError> {
    let lat = cell.lattice();
    let w = weight(&lat, alg).map_err(|_| BruhatError::Ungraded)? as i64;
    let nu = if mu == 0 { i64::MAX / 4 } else { modp::val(mu, cell.p as i128).unwrap() as i64 };
    let (d, r) = (st.delta as i64, st.big_r as i64);
    if 2 * nu < 2 * d - (r + w) || nu < d - (r + w - st.epsilon(sign)) {
        return Err(BruhatError::Threshold);
    }
    let moved = cell.with_beta(&transvect(cell, st.r_star, st.c_star, mu)).lattice();
    Ok(weight(&moved, alg).map_err(|_| BruhatError::Ungraded)? as i64 == w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::bruhat::{cells_for_type, permutations};
    use crate::lattice::DivisorType;

    #[test]
    fn identity_beta_has_trivial_mult_orbit() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        let c = BruhatCell::identity(2, DivisorType::new(vec![2, 1, 0]), vec![0, 1, 2]);
        let st = orbit_stats(&c, &h).unwrap();
        assert_eq!(st.mult_orbit_valuation, 0);
        assert_eq!(st.mult_orbit_size, 1);
        assert!(st.cross_checks());
        assert!(additive_weight_preservation(&c, &h, &st, 0, EpsilonSign::Plus).unwrap());
    }

    #[test]
    fn trivial_type_rejected() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        let c = BruhatCell::identity(2, DivisorType::new(vec![0, 0, 0]), vec![0, 1, 2]);
        assert_eq!(orbit_stats(&c, &h), Err(BruhatError::TrivialType));
    }

    #[test]
    fn orbit_sizes_match_direct_counts() {
        let h = catalog("heisenberg", 3).unwrap().algebra;
        for ty in DivisorType::primitive_types(3, 3, false) {
            for s in permutations(3) {
                for c in cells_for_type(3, &ty, &s) {
                    let st = orbit_stats(&c, &h).unwrap();
                    assert!(st.cross_checks(), "{c} {st:?}");
                }
            }
        }
    }
}
