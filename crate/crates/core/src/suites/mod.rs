//! Verification suites, one per acceptance criterion. Each suite returns a
//! report of named checks; the CLI `verify` command and the acceptance test
//! both run these.

mod bruhat;
mod counting;
mod igusa;

pub use self::bruhat::bruhat_equivalence;
pub use self::counting::{
    abelian_oracle, class2_splitting, double_count, heisenberg_oracle, heisenberg_series, limit_convergence, theorem_a, weight_bounds, zp2_checks,
    zp2_series,
};
pub use self::igusa::igusa_suite;

use crate::algebra::{catalog, CatalogEntry};
use crate::par::Workers;
use serde::Serialize;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite {0}")]
    Unknown(String),
    #[error("suite refused: {0}")]
    Refused(String),
}

/// One named assertion with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Informational lines that do not affect the verdict.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        Self { suite: suite.to_string(), ..Self::default() }
    }

    pub fn check(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check { label: label.into(), ok, detail: detail.into() });
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let width = self.checks.iter().map(|c| c.label.len()).max().unwrap_or(0);
        writeln!(s, "suite {}: {}", self.suite, if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        for c in &self.checks {
            writeln!(s, "  {:<4} {:<width$}  {}", if c.ok { "ok" } else { "FAIL" }, c.label, c.detail).unwrap();
        }
        for n in &self.notes {
            writeln!(s, "  note {n}").unwrap();
        }
        s
    }

    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let rec = serde_json::json!({"suite": self.suite, "check": c.label, "ok": c.ok, "detail": c.detail});
            writeln!(s, "{rec}").unwrap();
        }
        for n in &self.notes {
            writeln!(s, "{}", serde_json::json!({"suite": self.suite, "note": n})).unwrap();
        }
        writeln!(s, "{}", serde_json::json!({"suite": self.suite, "passed": self.passed()})).unwrap();
        s
    }
}

/// Overrides for the default windows. `None` keeps the default.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub workers: Workers,
    pub i_max: Option<u32>,
    pub k_max: Option<u32>,
    pub budget: Option<u32>,
    pub primes: Option<Vec<u64>>,
}

impl SuiteConfig {
    fn primes_or(&self, default: &[u64]) -> Vec<u64> {
        self.primes.clone().unwrap_or_else(|| default.to_vec())
    }
}

/// Suite names in criterion order.
pub const SUITE_NAMES: [&str; 10] = [
    "abelian-oracle",
    "heisenberg-oracle",
    "theorem-a",
    "zp2",
    "limit",
    "class2",
    "weight-bounds",
    "bruhat-equivalence",
    "double-count",
    "igusa",
];

fn entry(name: &str, p: u64) -> CatalogEntry {
    catalog(name, p).expect("catalog algebra")
}

/// Default i window: 6 in dimension <= 3, 4 in dimension 4.
fn default_i(e: &CatalogEntry) -> u32 {
    if e.algebra.n() <= 3 {
        6
    } else {
        4
    }
}

/// Runs a suite by name. Algebra-parametric suites use `alg` when given and
/// their catalog defaults otherwise; the others ignore it.
pub fn run_suite(name: &str, alg: Option<&CatalogEntry>, cfg: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let w = cfg.workers;
    let mut rep = SuiteReport::new(name);
    let defaults = |names: &[&str], primes: &[u64]| -> Vec<CatalogEntry> {
        match alg {
            Some(e) => vec![e.clone()],
            None => cfg.primes_or(primes).iter().flat_map(|&p| names.iter().map(move |n| entry(n, p))).collect(),
        }
    };
    match name {
        "abelian-oracle" => {
            let i = cfg.i_max;
            for p in cfg.primes_or(&[2, 3, 5]) {
                for n in [2, 3] {
                    rep.extend(abelian_oracle(n, p, i.unwrap_or(6), w));
                }
            }
            for p in cfg.primes_or(&[2, 3]) {
                rep.extend(abelian_oracle(4, p, i.unwrap_or(4), w));
            }
        }
        "heisenberg-oracle" => {
            let fit_window = cfg.k_max.unwrap_or(12);
            for p in cfg.primes_or(&[2, 3]) {
                rep.extend(heisenberg_oracle(p, cfg.i_max.unwrap_or(6), fit_window, w));
            }
        }
        "theorem-a" => {
            for e in defaults(&["heisenberg", "filiform-4", "pi-zp2-componentwise"], &[2, 3]) {
                rep.extend(theorem_a(&e, cfg.i_max.unwrap_or(default_i(&e)), w)?);
            }
        }
        "zp2" => {
            for p in cfg.primes_or(&[3, 5]) {
                let k = cfg.k_max.unwrap_or(if p <= 3 { 11 } else { 8 });
                rep.extend(zp2_checks(p, cfg.i_max.unwrap_or(6), k, w));
            }
        }
        "limit" => {
            let es = match alg {
                Some(e) => vec![e.clone()],
                None => match &cfg.primes {
                    Some(ps) => ps.iter().flat_map(|&p| [entry("heisenberg", p), entry("filiform-4", p)]).collect(),
                    None => vec![entry("heisenberg", 2), entry("heisenberg", 3), entry("filiform-4", 2)],
                },
            };
            for e in es {
                rep.extend(limit_convergence(&e, cfg.i_max.unwrap_or(default_i(&e)), w));
            }
        }
        "class2" => {
            for e in defaults(&["heisenberg"], &[2]) {
                rep.extend(class2_splitting(&e, cfg.i_max.unwrap_or(5), cfg.k_max.unwrap_or(6), w)?);
            }
        }
        "weight-bounds" => {
            for e in defaults(&["heisenberg", "filiform-4"], &[2, 3]) {
                rep.extend(weight_bounds(&e, cfg.i_max.unwrap_or(default_i(&e)), w)?);
            }
        }
        "bruhat-equivalence" => {
            for e in defaults(&["heisenberg"], &[2]) {
                rep.extend(bruhat_equivalence(&e, cfg.budget.unwrap_or(4), w)?);
            }
        }
        "double-count" => {
            for e in defaults(&["heisenberg"], &[2, 3]) {
                rep.extend(double_count(&e, cfg.i_max.unwrap_or(2)));
            }
        }
        "igusa" => {
            rep.extend(igusa_suite(&cfg.primes_or(&[2, 3])));
        }
        other => return Err(SuiteError::Unknown(other.to_string())),
    }
    Ok(rep)
}

/// Acceptance criterion k (1-based) with default windows.
pub fn criterion(k: usize, workers: Workers) -> Result<SuiteReport, SuiteError> {
    let name = SUITE_NAMES.get(k.wrapping_sub(1)).ok_or_else(|| SuiteError::Unknown(format!("criterion {k}")))?;
    run_suite(name, None, &SuiteConfig { workers, ..SuiteConfig::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_a_refuses_zp2() {
        let e = entry("zp2-componentwise", 3);
        let r = run_suite("theorem-a", Some(&e), &SuiteConfig::default());
        assert!(matches!(r, Err(SuiteError::Refused(_))));
        let pi = entry("pi-zp2-componentwise", 3);
        assert!(run_suite("theorem-a", Some(&pi), &SuiteConfig { i_max: Some(3), ..SuiteConfig::default() }).unwrap().passed());
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", None, &SuiteConfig::default()), Err(SuiteError::Unknown("nope".into())));
        assert!(criterion(11, Workers(0)).is_err());
        assert!(criterion(0, Workers(0)).is_err());
    }

    #[test]
    fn report_formats() {
        let mut r = SuiteReport::new("demo");
        r.check("a", true, "fine");
        r.note("extra");
        assert!(r.passed());
        assert!(r.to_text().starts_with("suite demo: PASS\n"));
        r.check("b", false, "broken");
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
        assert_eq!(r.to_jsonl().lines().count(), 4);
        assert!(r.to_jsonl().ends_with("{\"passed\":false,\"suite\":\"demo\"}\n"));
    }
}
