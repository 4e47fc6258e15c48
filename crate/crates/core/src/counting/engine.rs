use super::checker::Checker;
use super::CountError;
use crate::algebra::StructureAlgebra;
use crate::lattice::{divisor_type, DivisorType, Enumerator};
use crate::par::Workers;
use serde::Serialize;
use std::collections::BTreeMap;

/// Which predicates to evaluate during the pass.
#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub subalgebras: bool,
    pub ideals: bool,
    /// Weight and type strata of primitive lattices.
    pub strata: bool,
    pub workers: Workers,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { subalgebras: true, ideals: true, strata: false, workers: Workers::default() }
    }
}

impl CountOptions {
    pub fn all() -> Self {
        Self { strata: true, ..Self::default() }
    }
}

/// Weight strata of primitive lattices at one index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Strata {
    /// w -> number of primitive lattices of weight w.
    pub by_weight: BTreeMap<u32, u64>,
    /// (type, w) -> count.
    pub by_type: BTreeMap<(DivisorType, u32), u64>,
}

impl Strata {
    fn merge(mut self, other: Strata) -> Strata {
        for (k, v) in other.by_weight {
            *self.by_weight.entry(k).or_default() += v;
        }
        for (k, v) in other.by_type {
            *self.by_type.entry(k).or_default() += v;
        }
        self
    }
}

/// Every count gathered in one enumeration pass at index p^i.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub i: u32,
    pub lattices: u64,
    pub subalgebras: u64,
    pub ideals: u64,
    pub primitive: u64,
    pub strata: Strata,
}

impl LevelCounts {
    fn merge(self, other: LevelCounts) -> LevelCounts {
        LevelCounts {
            i: self.i,
            lattices: self.lattices + other.lattices,
            subalgebras: self.subalgebras + other.subalgebras,
            ideals: self.ideals + other.ideals,
            primitive: self.primitive + other.primitive,
            strata: self.strata.merge(other.strata),
        }
    }
}

/// One pass over the index-p^i lattices with predicate fan-out.
pub fn count_level(alg: &StructureAlgebra, i: u32, opts: &CountOptions) -> LevelCounts {
    let en = Enumerator::new(alg.n(), alg.p(), i);
    let checker = Checker::new(alg, i);
    let p = alg.p() as i64;
    let identity = LevelCounts { i, ..LevelCounts::default() };
    opts.workers.map_reduce(
        en.chunks(),
        identity.clone(),
        |chunk| {
            let mut acc = identity.clone();
            en.visit_chunk(chunk, |lat| {
                acc.lattices += 1;
                if opts.subalgebras && checker.is_subalgebra(lat) {
                    acc.subalgebras += 1;
                }
                if opts.ideals && checker.is_ideal(lat) {
                    acc.ideals += 1;
                }
                let primitive = lat.rows_flat().iter().any(|&x| x % p != 0);
                if primitive {
                    acc.primitive += 1;
                    if opts.strata {
                        let w = checker.weight(lat);
                        *acc.strata.by_weight.entry(w).or_default() += 1;
                        *acc.strata.by_type.entry((divisor_type(lat), w)).or_default() += 1;
                    }
                }
            });
            acc
        },
        LevelCounts::merge,
    )
}

/// Levels 0..=i_max.
pub fn count_levels(alg: &StructureAlgebra, i_max: u32, opts: &CountOptions) -> Vec<LevelCounts> {
    (0..=i_max).map(|i| count_level(alg, i, opts)).collect()
}

/// Number of index-p^i lattices of the given kind.
pub fn count(alg: &StructureAlgebra, i: u32, kind: super::Kind) -> u64 {
    use super::Kind;
    let opts = CountOptions {
        subalgebras: kind == Kind::Subalgebra,
        ideals: kind == Kind::Ideal,
        strata: false,
        workers: Workers::default(),
    };
    let l = count_level(alg, i, &opts);
    match kind {
        Kind::Lattice => l.lattices,
        Kind::Subalgebra => l.subalgebras,
        Kind::Ideal => l.ideals,
    }
}

/// Weight and type strata at index p^i.
pub fn stratified_counts(alg: &StructureAlgebra, i: u32) -> Strata {
    let opts = CountOptions { subalgebras: false, ideals: false, strata: true, workers: Workers::default() };
    count_level(alg, i, &opts).strata
}

/// c_k = sum over (i, w) with i + n w = k of the weight-w primitive count at
/// index p^i, for k = 0..=k_max. `levels` must carry strata for i <= k_max.
pub fn c_series(alg: &StructureAlgebra, levels: &[LevelCounts], k_max: u32) -> Result<Vec<u64>, CountError> {
    let n = alg.n() as u32;
    let mut c = vec![0u64; k_max as usize + 1];
    for i in 0..=k_max {
        let l = levels.get(i as usize).ok_or(CountError::MissingLevel(i))?;
        for (&w, &cnt) in &l.strata.by_weight {
            let k = i + n * w;
            if k <= k_max {
                c[k as usize] += cnt;
            }
        }
    }
    Ok(c)
}

/// (lattices - subalgebras, lattices - ideals).
pub fn non_subalgebra_counts(level: &LevelCounts) -> (u64, u64) {
    (level.lattices - level.subalgebras, level.lattices - level.ideals)
}

/// Primitive count via primitive_part, for cross-checking.
#[cfg(test)]
pub fn primitive_count_direct(alg: &StructureAlgebra, i: u32) -> u64 {
    let mut c = 0;
    Enumerator::new(alg.n(), alg.p(), i).for_each(|l| {
        if crate::lattice::primitive_part(l).1 == 0 {
            c += 1;
        }
    });
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::counting::Kind;

    #[test]
    fn heisenberg_small() {
        let h = catalog("heisenberg", 2).unwrap().algebra;
        assert_eq!(count(&h, 0, Kind::Subalgebra), 1);
        assert_eq!(count(&h, 1, Kind::Subalgebra), 3);
        assert_eq!(count(&h, 2, Kind::Subalgebra), 19);
        let l = count_level(&h, 1, &CountOptions::default());
        assert_eq!(non_subalgebra_counts(&l).0, 4);
    }

    #[test]
    fn zp2_strata_at_two() {
        let z = catalog("zp2-componentwise", 3).unwrap().algebra;
        let s = stratified_counts(&z, 2);
        let expect: BTreeMap<u32, u64> = [(0, 3), (1, 6), (2, 3)].into_iter().collect();
        assert_eq!(s.by_weight, expect);
    }

    #[test]
    fn primitive_fast_path_matches() {
        let h = catalog("heisenberg", 3).unwrap().algebra;
        for i in 0..4 {
            assert_eq!(count_level(&h, i, &CountOptions::default()).primitive, primitive_count_direct(&h, i));
        }
    }
}
