use super::{SuiteError, SuiteReport};
use crate::algebra::CatalogEntry;
use crate::bruhat::{sweep, SweepOptions};
use crate::par::Workers;

/// Lemma families asserted by the sweep; the others are reported.
const ASSERTED: [&str; 6] = [
    "val_beta_influenced",
    "val_beta_influenced_eps_plus",
    "val_beta_inv_influenced",
    "val_beta_inv_influenced_eps_plus",
    "val_beta_added",
    "val_beta_inv_added",
];

/// Criterion 8: exhaustive Bruhat cell sweep.
pub fn bruhat_equivalence(e: &CatalogEntry, budget: u32, workers: Workers) -> Result<SuiteReport, SuiteError> {
    let (name, p) = (e.algebra.name().to_string(), e.algebra.p());
    if e.algebra.weights().is_none() {
        return Err(SuiteError::Refused(format!("{name} carries no grading")));
    }
    let opts = SweepOptions { budget, workers, ..SweepOptions::default() };
    let r = sweep(&e.algebra, &opts);
    let mut rep = SuiteReport::new("bruhat-equivalence");
    let tag = format!("{name} p={p} budget {budget}");
    let passing = r.passing_conventions();
    let tallies: Vec<String> = r.conventions.iter().map(|(k, t)| format!("{k} {}/{}", t.agree, t.agree + t.disagree)).collect();
    rep.check(
        format!("{tag}: exactly one convention matches membership on every cell"),
        passing.len() == 1 && r.cells > 0,
        format!("{} cells over {} types; agreement {}", r.cells, r.types, tallies.join(", ")),
    );
    rep.check(format!("{tag}: cell weight equals lattice weight"), r.weight_mismatches == 0, format!("{} mismatches", r.weight_mismatches));
    rep.check(format!("{tag}: cells cover each type exactly"), r.cover_failures.is_empty(), r.cover_failures.join("; "));
    rep.check(
        format!("{tag}: homogeneity at K={}", opts.homogeneity_k),
        r.homogeneity_failures == 0 && r.homogeneity_trials > 0,
        format!("{} trials, {} failures", r.homogeneity_trials, r.homogeneity_failures),
    );
    rep.check(
        format!("{tag}: orbit sizes match direct counts"),
        r.orbit_cross_check_failures == 0,
        format!("{} failures", r.orbit_cross_check_failures),
    );
    for l in &r.lemmas {
        let detail = format!("{} checked, {} failed{}", l.checked, l.failed, l.example.as_ref().map(|x| format!("; e.g. {x}")).unwrap_or_default());
        if ASSERTED.contains(&l.name) {
            rep.check(format!("{tag}: {}", l.name), l.holds(), detail);
        } else {
            rep.note(format!("{}: {detail}", l.name));
        }
    }
    rep.check(
        format!("{tag}: additive weight preservation"),
        r.additive_plus.1 == 0,
        format!("{} checked, {} failed", r.additive_plus.0, r.additive_plus.1),
    );
    rep.note(format!("additive preservation with eps=(v-1)(n-1): {} checked, {} failed", r.additive_minus.0, r.additive_minus.1));
    Ok(rep)
}
