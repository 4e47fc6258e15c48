use super::{AlgebraError, StructureAlgebra};

/// A shipped algebra with its declared properties.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub algebra: StructureAlgebra,
    pub lie: bool,
    pub nilpotent_class: Option<u32>,
    pub residually_nilpotent: bool,
}

pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "abelian-1",
        "abelian-2",
        "abelian-3",
        "abelian-4",
        "heisenberg",
        "filiform-4",
        "zp2-componentwise",
        "pi-abelian-1",
        "pi-abelian-2",
        "pi-abelian-3",
        "pi-abelian-4",
        "pi-heisenberg",
        "pi-filiform-4",
        "pi-zp2-componentwise",
    ]
}

fn base(name: &str, p: u64) -> Result<Option<CatalogEntry>, AlgebraError> {
    let entry = match name {
        "heisenberg" => CatalogEntry {
            algebra: StructureAlgebra::new(name, 3, p, &[(0, 1, 2, 1), (1, 0, 2, -1)])?.with_weights(vec![1, 1, 2])?,
            lie: true,
            nilpotent_class: Some(2),
            residually_nilpotent: true,
        },
        "filiform-4" => CatalogEntry {
            algebra: StructureAlgebra::new(name, 4, p, &[(0, 1, 2, 1), (1, 0, 2, -1), (0, 2, 3, 1), (2, 0, 3, -1)])?
                .with_weights(vec![1, 1, 2, 3])?,
            lie: true,
            nilpotent_class: Some(3),
            residually_nilpotent: true,
        },
        "zp2-componentwise" => CatalogEntry {
            algebra: StructureAlgebra::new(name, 2, p, &[(0, 0, 0, 1), (1, 1, 1, 1)])?,
            lie: false,
            nilpotent_class: None,
            residually_nilpotent: false,
        },
        _ => {
            let Some(n) = name.strip_prefix("abelian-").and_then(|s| s.parse::<usize>().ok()) else {
                return Ok(None);
            };
            if !(1..=4).contains(&n) {
                return Ok(None);
            }
            CatalogEntry {
                algebra: StructureAlgebra::abelian(n, p).with_weights(vec![1; n])?,
                lie: true,
                nilpotent_class: Some(1),
                residually_nilpotent: true,
            }
        }
    };
    Ok(Some(entry))
}

/// Look up a catalog algebra at the prime p. Names prefixed by "pi-" give
/// the pi-scaled variant, which is always residually nilpotent.
pub fn catalog(name: &str, p: u64) -> Option<CatalogEntry> {
    if let Some(rest) = name.strip_prefix("pi-") {
        let b = base(rest, p).ok()??;
        return Some(CatalogEntry {
            algebra: b.algebra.pi_scale(),
            lie: b.lie,
            nilpotent_class: b.nilpotent_class,
            residually_nilpotent: true,
        });
    }
    base(name, p).ok()?
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves_and_grading_holds() {
        for name in catalog_names() {
            let e = catalog(name, 3).unwrap_or_else(|| panic!("{name}"));
            assert_eq!(e.algebra.name(), name);
            if let Some(w) = e.algebra.weights() {
                assert!(e.algebra.verify_grading(w));
            }
            assert_eq!(e.algebra.is_lie(), e.lie, "{name}");
        }
        assert!(catalog("abelian-5", 2).is_none());
        assert!(catalog("nonsense", 2).is_none());
    }
}
