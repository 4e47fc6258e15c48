use super::cell::{cells_for_type, permutations, BruhatCell};
use super::orbit::{additive_weight_preservation, lemma_checks, orbit_stats, EpsilonSign, LemmaCheck, LEMMA_NAMES};
use super::poly::{cell_weight, homogeneity_check, subalgebra_condition, Convention};
use crate::algebra::StructureAlgebra;
use crate::counting::{is_subalgebra, weight};
use crate::exactmath::modp;
use crate::lattice::{divisor_type, DivisorType, Enumerator, HNFLattice};
use crate::par::Workers;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, Serialize)]
pub struct SweepOptions {
    /// Types with sum iota r_iota <= budget.
    pub budget: u32,
    /// Additive preservation is checked on types with sum iota r_iota <= this.
    pub additive_budget: u32,
    pub homogeneity_trials: u32,
    pub homogeneity_k: u32,
    pub seed: u64,
    #[serde(skip)]
    pub workers: Workers,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { budget: 4, additive_budget: 3, homogeneity_trials: 20, homogeneity_k: 8, seed: 1, workers: Workers(0) }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConventionTally {
    pub agree: u64,
    pub disagree: u64,
    pub example: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub cells: u64,
    pub types: u64,
    pub conventions: BTreeMap<String, ConventionTally>,
    pub weight_mismatches: u64,
    pub cover_failures: Vec<String>,
    pub homogeneity_trials: u64,
    pub homogeneity_failures: u64,
    pub orbit_cross_check_failures: u64,
    pub lemmas: Vec<LemmaCheck>,
    /// (checked, failed) per epsilon sign.
    pub additive_plus: (u64, u64),
    pub additive_minus: (u64, u64),
    pub additive_example: Option<String>,
}

impl SweepReport {
    /// Conventions that agree with direct membership on every cell.
    pub fn passing_conventions(&self) -> Vec<String> {
        self.conventions.iter().filter(|(_, t)| t.disagree == 0).map(|(k, _)| k.clone()).collect()
    }

    pub fn lemma(&self, name: &str) -> Option<&LemmaCheck> {
        self.lemmas.iter().find(|l| l.name == name)
    }

    fn merge(mut self, o: SweepReport) -> SweepReport {
        self.cells += o.cells;
        self.types += o.types;
        for (k, t) in o.conventions {
            let e = self.conventions.entry(k).or_default();
            e.agree += t.agree;
            e.disagree += t.disagree;
            e.example = min_opt(e.example.take(), t.example);
        }
        self.weight_mismatches += o.weight_mismatches;
        self.cover_failures.extend(o.cover_failures);
        self.cover_failures.sort();
        self.homogeneity_trials += o.homogeneity_trials;
        self.homogeneity_failures += o.homogeneity_failures;
        self.orbit_cross_check_failures += o.orbit_cross_check_failures;
        if self.lemmas.is_empty() {
            self.lemmas = o.lemmas;
        } else {
            for (a, b) in self.lemmas.iter_mut().zip(&o.lemmas) {
                a.merge(b);
            }
        }
        self.additive_plus = (self.additive_plus.0 + o.additive_plus.0, self.additive_plus.1 + o.additive_plus.1);
        self.additive_minus = (self.additive_minus.0 + o.additive_minus.0, self.additive_minus.1 + o.additive_minus.1);
        self.additive_example = min_opt(self.additive_example, o.additive_example);
        self
    }
}

fn min_opt(a: Option<String>, b: Option<String>) -> Option<String> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

fn conv_name(c: Convention) -> String {
    format!("{c:?}").to_lowercase()
}

/// Exhaustive check of the cell parametrization against direct lattice
/// computations for every primitive type within the budget and every sigma.
pub fn sweep(alg: &StructureAlgebra, opts: &SweepOptions) -> SweepReport {
    let n = alg.n();
    let p = alg.p();
    let graded = alg.weights().is_some();
    let types = DivisorType::primitive_types(n, opts.budget, false);
    let sigmas = permutations(n);
    let mut jobs = Vec::new();
    for (ti, ty) in types.iter().enumerate() {
        for s in &sigmas {
            jobs.push((ti, ty.clone(), s.clone()));
        }
    }
    let mut report = opts.workers.map_reduce(
        jobs,
        SweepReport::default(),
        |(ti, ty, sigma)| {
            let mut rep = SweepReport::default();
            for conv in Convention::ALL {
                rep.conventions.insert(conv_name(conv), ConventionTally::default());
            }
            if graded {
                rep.lemmas = LEMMA_NAMES.iter().map(|&name| LemmaCheck { name, checked: 0, failed: 0, example: None }).collect();
            }
            for cell in cells_for_type(p, &ty, &sigma) {
                rep.cells += 1;
                check_cell(&cell, alg, opts, graded, &mut rep);
            }
            if graded {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (ti as u64) << 16 ^ sigma.iter().fold(0u64, |a, &s| a * 31 + s as u64));
                homogeneity_trials(alg, &sigma, opts, &mut rng, &mut rep);
            }
            rep
        },
        SweepReport::merge,
    );
    report.types = types.len() as u64;
    for ty in &types {
        if let Some(msg) = cover_mismatch(p, ty, &sigmas) {
            report.cover_failures.push(msg);
        }
    }
    report
}

fn check_cell(cell: &BruhatCell, alg: &StructureAlgebra, opts: &SweepOptions, graded: bool, rep: &mut SweepReport) {
    let lat = cell.lattice();
    let direct = is_subalgebra(&lat, alg);
    for conv in Convention::ALL {
        let t = rep.conventions.get_mut(&conv_name(conv)).unwrap();
        if subalgebra_condition(cell, alg, conv) == direct {
            t.agree += 1;
        } else {
            t.disagree += 1;
            t.example = min_opt(t.example.take(), Some(format!("{cell}: membership {direct}")));
        }
    }
    let w = weight(&lat, alg).expect("cells are primitive");
    if cell_weight(cell, alg, Convention::Direct) != w {
        rep.weight_mismatches += 1;
    }
    if !graded {
        return;
    }
    let st = orbit_stats(cell, alg).expect("graded and nontrivial");
    if !st.cross_checks() {
        rep.orbit_cross_check_failures += 1;
    }
    for (a, b) in rep.lemmas.iter_mut().zip(lemma_checks(cell, alg, &st).expect("graded")) {
        a.merge(&b);
    }
    if cell.ty.weighted_sum() <= opts.additive_budget {
        let modk = modp::pow(cell.p as i128, cell.precision());
        for mu in 0..modk {
            for (sign, slot) in [(EpsilonSign::Plus, &mut rep.additive_plus), (EpsilonSign::Minus, &mut rep.additive_minus)] {
                if let Ok(ok) = additive_weight_preservation(cell, alg, &st, mu, sign) {
                    slot.0 += 1;
                    if !ok {
                        slot.1 += 1;
                        rep.additive_example = min_opt(rep.additive_example.take(), Some(format!("{cell}: mu = {mu}, eps {sign:?}")));
                    }
                }
            }
        }
    }
}

fn homogeneity_trials(alg: &StructureAlgebra, sigma: &[usize], opts: &SweepOptions, rng: &mut ChaCha8Rng, rep: &mut SweepReport) {
    let n = alg.n();
    let p = alg.p() as i128;
    let m = modp::pow(p, opts.homogeneity_k);
    for _ in 0..opts.homogeneity_trials {
        let mut beta = vec![0i128; n * n];
        for r in 0..n {
            beta[r * n + r] = 1;
            for c in 0..r {
                beta[r * n + c] = rng.gen_range(0..m);
            }
        }
        let lambda = loop {
            let x = rng.gen_range(1..m);
            if x % p != 0 {
                break x;
            }
        };
        rep.homogeneity_trials += 1;
        if !homogeneity_check(&beta, sigma, alg, lambda, opts.homogeneity_k).unwrap_or(false) {
            rep.homogeneity_failures += 1;
        }
    }
}

/// Compares deduplicated cell lattices with the enumerated lattices of the type.
fn cover_mismatch(p: u64, ty: &DivisorType, sigmas: &[Vec<usize>]) -> Option<String> {
    let mut cells: BTreeSet<HNFLattice> = BTreeSet::new();
    let mut total = 0u64;
    for s in sigmas {
        for c in cells_for_type(p, ty, s) {
            total += 1;
            cells.insert(c.lattice());
        }
    }
    let mut direct = BTreeSet::new();
    Enumerator::new(ty.n(), p, ty.index_exponent()).for_each(|l| {
        if divisor_type(l) == *ty {
            direct.insert(l.clone());
        }
    });
    (cells != direct)
        .then(|| format!("type {ty}: {total} cells, {} distinct, {} enumerated", cells.len(), direct.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn heisenberg_sweep_small() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        let opts = SweepOptions { budget: 2, additive_budget: 2, homogeneity_trials: 3, ..Default::default() };
        let r = sweep(&h, &opts);
        assert_eq!(r.passing_conventions(), vec!["direct".to_string()]);
        assert!(r.cover_failures.is_empty(), "{:?}", r.cover_failures);
        assert_eq!(r.weight_mismatches, 0);
        assert_eq!(r.homogeneity_failures, 0);
        assert_eq!(r.orbit_cross_check_failures, 0);
    }
}
