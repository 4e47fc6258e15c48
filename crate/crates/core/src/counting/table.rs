use super::engine::LevelCounts;
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lattice,
    Subalgebra,
    Ideal,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Lattice => "lattice",
            Kind::Subalgebra => "subalgebra",
            Kind::Ideal => "ideal",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lattice" => Ok(Kind::Lattice),
            "subalgebra" => Ok(Kind::Subalgebra),
            "ideal" => Ok(Kind::Ideal),
            _ => Err(format!("unknown kind {s}")),
        }
    }
}

/// Counts of one kind for i = 0..=i_max, with optional strata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub algebra: String,
    pub p: u64,
    pub kind: Kind,
    pub entries: Vec<u64>,
    /// (i, w) -> count of primitive lattices.
    pub weight_strata: BTreeMap<(u32, u32), u64>,
    /// (i, type label, w) -> count.
    pub type_strata: BTreeMap<(u32, String, u32), u64>,
}

impl CountTable {
    pub fn from_levels(algebra: &str, p: u64, kind: Kind, levels: &[LevelCounts]) -> Self {
        let entries = levels
            .iter()
            .map(|l| match kind {
                Kind::Lattice => l.lattices,
                Kind::Subalgebra => l.subalgebras,
                Kind::Ideal => l.ideals,
            })
            .collect();
        let mut weight_strata = BTreeMap::new();
        let mut type_strata = BTreeMap::new();
        for l in levels {
            for (&w, &c) in &l.strata.by_weight {
                weight_strata.insert((l.i, w), c);
            }
            for ((t, w), &c) in &l.strata.by_type {
                type_strata.insert((l.i, t.label(), *w), c);
            }
        }
        Self { algebra: algebra.to_string(), p, kind, entries, weight_strata, type_strata }
    }

    /// "i: count" rows, then strata sections when present.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let width = self.entries.len().saturating_sub(1).to_string().len();
        for (i, c) in self.entries.iter().enumerate() {
            let _ = writeln!(s, "{i:>width$}: {c}");
        }
        if !self.weight_strata.is_empty() {
            let _ = writeln!(s, "\n# primitive lattices by weight\n{:>4} {:>4} {:>12}", "i", "w", "count");
            for ((i, w), c) in &self.weight_strata {
                let _ = writeln!(s, "{i:>4} {w:>4} {c:>12}");
            }
        }
        if !self.type_strata.is_empty() {
            let _ = writeln!(s, "\n# primitive lattices by type and weight\n{:>4} {:<20} {:>4} {:>12}", "i", "type", "w", "count");
            for ((i, t, w), c) in &self.type_strata {
                let _ = writeln!(s, "{i:>4} {t:<20} {w:>4} {c:>12}");
            }
        }
        s
    }

    /// One JSON record per line.
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.entries.iter().enumerate() {
            let rec = json!({"algebra": self.algebra, "p": self.p, "kind": self.kind, "i": i, "count": c});
            let _ = writeln!(s, "{rec}");
        }
        for ((i, w), c) in &self.weight_strata {
            let rec = json!({"algebra": self.algebra, "p": self.p, "stratum": "weight", "i": i, "w": w, "count": c});
            let _ = writeln!(s, "{rec}");
        }
        for ((i, t, w), c) in &self.type_strata {
            let rec = json!({"algebra": self.algebra, "p": self.p, "stratum": "type", "i": i, "type": t, "w": w, "count": c});
            let _ = writeln!(s, "{rec}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::counting::{count_levels, CountOptions};

    #[test]
    fn single_row_at_zero() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        let levels = count_levels(&h, 0, &CountOptions::default());
        let t = CountTable::from_levels("heisenberg", 2, Kind::Subalgebra, &levels);
        assert_eq!(t.to_text(), "0: 1\n");
        assert!(t.to_jsonl().contains("\"count\":1"));
    }
}
