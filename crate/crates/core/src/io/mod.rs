//! Text formats: algebra spec files and count series.

use crate::algebra::{AlgebraError, CatalogEntry, NilpotencyVerdict, ResidualVerdict, StructureAlgebra};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Depth used when verifying declared nilpotency properties.
fn depth_bound(n: usize) -> u32 {
    4 * n as u32 + 8
}

/// Computed (nilpotent class, residually nilpotent) for an algebra.
pub fn structure_properties(alg: &StructureAlgebra) -> Result<(Option<u32>, bool), AlgebraError> {
    let class = match alg.nilpotency_class(depth_bound(alg.n()))? {
        NilpotencyVerdict::Class(c) => Some(c),
        NilpotencyVerdict::NotNilpotentWithin(_) => None,
    };
    let resid = matches!(alg.is_residually_nilpotent(4, depth_bound(alg.n()))?, ResidualVerdict::Verified { .. });
    Ok((class, resid))
}

/// Parses a spec: `key: value` header lines (name, dim, prime, optional
/// weights, lie, nilpotent_class, residually_nilpotent) then 1-based
/// `i j k value` lines. Declared properties are re-verified.
pub fn parse_algebra_spec(text: &str) -> Result<CatalogEntry, IoError> {
    let (mut name, mut dim, mut prime, mut weights) = (None, None, None, None);
    let (mut lie, mut class, mut resid): (Option<bool>, Option<Option<u32>>, Option<bool>) = (None, None, None);
    let mut quads = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        let err = |msg: String| IoError::Parse { line: idx + 1, msg };
        if line.is_empty() {
            continue;
        }
        if let Some((k, v)) = line.split_once(':') {
            let v = v.trim();
            let num = |v: &str| v.parse::<u64>().map_err(|_| err(format!("bad number {v}")));
            let flag = |v: &str| v.parse::<bool>().map_err(|_| err(format!("expected true or false, got {v}")));
            match k.trim() {
                "name" => name = Some(v.to_string()),
                "dim" => dim = Some(num(v)? as usize),
                "prime" => prime = Some(num(v)?),
                "weights" => weights = Some(v.split_whitespace().map(|w| num(w).map(|x| x as u32)).collect::<Result<Vec<_>, _>>()?),
                "lie" => lie = Some(flag(v)?),
                "nilpotent_class" => class = Some(if v == "none" { None } else { Some(num(v)? as u32) }),
                "residually_nilpotent" => resid = Some(flag(v)?),
                other => return Err(err(format!("unknown key {other}"))),
            }
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(err(format!("expected `i j k value`, got {line}")));
        }
        let n = dim.ok_or_else(|| err("dim must precede structure constants".into()))?;
        let mut ijk = [0usize; 3];
        for (slot, s) in ijk.iter_mut().zip(&parts[..3]) {
            let x: usize = s.parse().map_err(|_| err(format!("bad index {s}")))?;
            if x == 0 || x > n {
                return Err(err(format!("index {x} outside 1..={n}")));
            }
            *slot = x - 1;
        }
        let v: i64 = parts[3].parse().map_err(|_| err(format!("bad value {}", parts[3])))?;
        quads.push((ijk[0], ijk[1], ijk[2], v));
    }
    let missing = |k: &str| IoError::Parse { line: 0, msg: format!("missing header key {k}") };
    let name = name.ok_or_else(|| missing("name"))?;
    let n = dim.ok_or_else(|| missing("dim"))?;
    let p = prime.ok_or_else(|| missing("prime"))?;
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(IoError::Parse { line: 0, msg: format!("{p} is not prime") });
    }
    let mut alg = StructureAlgebra::new(&name, n, p, &quads)?;
    if let Some(w) = weights {
        alg = alg.with_weights(w)?;
    }
    let is_lie = alg.is_lie();
    let (nil, rn) = structure_properties(&alg)?;
    if let Some(l) = lie {
        if l != is_lie {
            return Err(AlgebraError::Declared(format!("lie: declared {l}, computed {is_lie}")).into());
        }
    }
    if let Some(c) = class {
        if c != nil {
            return Err(AlgebraError::Declared(format!("nilpotent_class: declared {c:?}, computed {nil:?}")).into());
        }
    }
    if let Some(r) = resid {
        if r != rn {
            return Err(AlgebraError::Declared(format!("residually_nilpotent: declared {r}, computed {rn}")).into());
        }
    }
    Ok(CatalogEntry { algebra: alg, lie: is_lie, nilpotent_class: nil, residually_nilpotent: rn })
}

/// Spec text for an entry, readable by `parse_algebra_spec`.
pub fn algebra_spec_text(entry: &CatalogEntry) -> String {
    let a = &entry.algebra;
    let mut s = String::new();
    let _ = writeln!(s, "name: {}\ndim: {}\nprime: {}", a.name(), a.n(), a.p());
    if let Some(w) = a.weights() {
        let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "weights: {}", ws.join(" "));
    }
    let _ = writeln!(s, "lie: {}", entry.lie);
    match entry.nilpotent_class {
        Some(c) => {
            let _ = writeln!(s, "nilpotent_class: {c}");
        }
        None => {
            let _ = writeln!(s, "nilpotent_class: none");
        }
    }
    let _ = writeln!(s, "residually_nilpotent: {}", entry.residually_nilpotent);
    for &(i, j, k, v) in a.terms() {
        let _ = writeln!(s, "{} {} {} {v}", i + 1, j + 1, k + 1);
    }
    s
}

/// Reads `i: value` rows (values as integers or a/b); other lines are ignored.
/// Rows must be 0, 1, 2, ... in order.
pub fn parse_series(text: &str) -> Result<Vec<BigRational>, IoError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        let Some((i, v)) = line.split_once(':') else { continue };
        let err = |msg: String| IoError::Parse { line: idx + 1, msg };
        let i: usize = i.trim().parse().map_err(|_| err(format!("bad index {i}")))?;
        if i != out.len() {
            return Err(err(format!("expected index {}, got {i}", out.len())));
        }
        out.push(parse_rational(v.trim()).ok_or_else(|| err(format!("bad value {v}")))?);
    }
    if out.is_empty() {
        return Err(IoError::Parse { line: 0, msg: "no `i: value` rows".into() });
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let b: BigInt = b.trim().parse().ok()?;
            if b == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, b))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, catalog_names};

    #[test]
    fn catalog_round_trips_and_verifies() {
        for name in catalog_names() {
            let e = catalog(name, 3).unwrap();
            let back = parse_algebra_spec(&algebra_spec_text(&e)).unwrap();
            assert_eq!(back.algebra, e.algebra, "{name}");
            assert_eq!((back.lie, back.nilpotent_class, back.residually_nilpotent), (e.lie, e.nilpotent_class, e.residually_nilpotent), "{name}");
        }
    }

    #[test]
    fn declared_mismatch_is_an_error() {
        let text = "name: h\ndim: 3\nprime: 2\nnilpotent_class: 3\n1 2 3 1\n2 1 3 -1\n";
        assert!(matches!(parse_algebra_spec(text), Err(IoError::Algebra(AlgebraError::Declared(_)))));
        let text = "name: z\ndim: 2\nprime: 2\nresidually_nilpotent: true\n1 1 1 1\n2 2 2 1\n";
        assert!(matches!(parse_algebra_spec(text), Err(IoError::Algebra(AlgebraError::Declared(_)))));
        let text = "name: h\ndim: 3\nprime: 2\n1 2 4 1\n";
        assert!(matches!(parse_algebra_spec(text), Err(IoError::Parse { line: 4, .. })));
        let text = "name: h\ndim: 3\nprime: 2\nweights: 1 1 1\n1 2 3 1\n";
        assert!(matches!(parse_algebra_spec(text), Err(IoError::Algebra(AlgebraError::GradingViolated))));
    }

    #[test]
    fn series_rows() {
        let v = parse_series(" 0: 1\n 1: 3\n 2: -5/4\n\n# strata\n   2    0   7\n").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[2], BigRational::new((-5).into(), 4.into()));
        assert!(parse_series("0: 1\n2: 3\n").is_err());
        assert!(parse_series("0: 1/0\n").is_err());
    }
}
