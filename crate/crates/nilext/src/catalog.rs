//! Built-in nilpotent algebras and parametrised standard families.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};
use crate::table::StructureTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Bracket list reproduced exactly from the classification listing.
    #[serde(rename = "paper-verbatim")]
    Verbatim,
    /// Generated from a standard family formula.
    StandardFamily,
    /// Loaded from a user file.
    External,
    /// Completed or corrected from a partial listing; see the source note.
    Reconstructed,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Verbatim => "paper-verbatim",
            Provenance::StandardFamily => "standard-family",
            Provenance::External => "external",
            Provenance::Reconstructed => "reconstructed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub table: StructureTable<Scalar>,
    pub provenance: Provenance,
    pub source_note: String,
}

type Bracket = (usize, usize, &'static [(usize, i64)]);

struct Listing {
    id: &'static str,
    dim: usize,
    brackets: &'static [Bracket],
    provenance: Provenance,
    note: &'static str,
}

const A53: &[Bracket] = &[(3, 4, &[(2, 1)]), (3, 5, &[(1, 1)]), (4, 5, &[(3, 1)])];

const LISTINGS: &[Listing] = &[
    Listing {
        id: "A_3_1",
        dim: 3,
        brackets: &[(2, 3, &[(1, 1)])],
        provenance: Provenance::Verbatim,
        note: "Heisenberg algebra h_1",
    },
    Listing {
        id: "A_4_1",
        dim: 4,
        brackets: &[(2, 4, &[(1, 1)]), (3, 4, &[(2, 1)])],
        provenance: Provenance::Verbatim,
        note: "filiform of dimension 4",
    },
    Listing {
        id: "A_5_1",
        dim: 5,
        brackets: &[(3, 5, &[(1, 1)]), (4, 5, &[(2, 1)])],
        provenance: Provenance::Reconstructed,
        note: "standard 5-dimensional listing; layers (3, 2)",
    },
    Listing {
        id: "A_5_2",
        dim: 5,
        brackets: &[(2, 5, &[(1, 1)]), (3, 5, &[(2, 1)]), (4, 5, &[(3, 1)])],
        provenance: Provenance::Reconstructed,
        note: "standard 5-dimensional listing; filiform, layers (2, 1, 1, 1)",
    },
    Listing {
        id: "A_5_3",
        dim: 5,
        brackets: A53,
        provenance: Provenance::Verbatim,
        note: "layers (2, 1, 2)",
    },
    Listing {
        id: "A_5_5",
        dim: 5,
        brackets: &[(3, 4, &[(1, 1)]), (2, 5, &[(1, 1)]), (3, 5, &[(2, 1)])],
        provenance: Provenance::Reconstructed,
        note: "standard 5-dimensional listing; layers (2, 1, 1, 1)",
    },
    Listing {
        id: "A_5_6",
        dim: 5,
        brackets: &[
            (3, 4, &[(1, 1)]),
            (2, 5, &[(1, 1)]),
            (3, 5, &[(2, 1)]),
            (4, 5, &[(3, 1)]),
        ],
        provenance: Provenance::Reconstructed,
        note: "standard 5-dimensional listing; filiform, layers (2, 1, 1, 1)",
    },
    Listing {
        id: "A_6_8",
        dim: 6,
        brackets: &[
            (3, 4, &[(2, 1)]),
            (3, 5, &[(1, 1)]),
            (4, 5, &[(3, 1)]),
            (4, 6, &[(2, -1)]),
        ],
        provenance: Provenance::Verbatim,
        note: "A_5_3 extended by [e6, e4] = e2",
    },
    Listing {
        id: "A_6_9",
        dim: 6,
        brackets: &[
            (3, 4, &[(2, 1)]),
            (3, 5, &[(1, 1)]),
            (4, 5, &[(3, 1)]),
            (4, 6, &[(1, -1)]),
            (5, 6, &[(2, 1)]),
        ],
        provenance: Provenance::Reconstructed,
        note:
            "A_5_3 extended by [e6, e4] = e1, [e6, e5] = -e2; weights need eigenvectors over ℚ(i)",
    },
    Listing {
        id: "A_6_13",
        dim: 6,
        brackets: &[
            (1, 2, &[(5, 1)]),
            (1, 3, &[(4, 1)]),
            (1, 4, &[(6, 1)]),
            (2, 5, &[(6, 1)]),
        ],
        provenance: Provenance::Reconstructed,
        note: "leading brackets [e1, e2] = e5, [e1, e3] = e4 completed to a Lie algebra",
    },
    Listing {
        id: "A_6_14(1)",
        dim: 6,
        brackets: &[
            (1, 3, &[(4, 1)]),
            (1, 4, &[(6, 1)]),
            (2, 3, &[(5, 1)]),
            (2, 5, &[(6, 1)]),
        ],
        provenance: Provenance::Reconstructed,
        note: "member ε = 1 of the family with [e2, e5] = ε e6",
    },
    Listing {
        id: "A_6_14(-1)",
        dim: 6,
        brackets: &[
            (1, 3, &[(4, 1)]),
            (1, 4, &[(6, 1)]),
            (2, 3, &[(5, 1)]),
            (2, 5, &[(6, -1)]),
        ],
        provenance: Provenance::Reconstructed,
        note: "member ε = -1 of the family with [e2, e5] = ε e6",
    },
    Listing {
        id: "A_6_15",
        dim: 6,
        brackets: &[
            (1, 2, &[(3, 1), (5, 1)]),
            (1, 3, &[(4, 1)]),
            (1, 5, &[(6, 1)]),
            (2, 3, &[(6, 1)]),
        ],
        provenance: Provenance::Reconstructed,
        note: "composite bracket [e1, e2] = e3 + e5 completed to a Lie algebra",
    },
    Listing {
        id: "A_6_18",
        dim: 6,
        brackets: &[
            (1, 2, &[(3, 1)]),
            (1, 3, &[(4, 1)]),
            (1, 4, &[(6, 1)]),
            (2, 3, &[(5, 1)]),
            (2, 5, &[(6, 1)]),
        ],
        provenance: Provenance::Reconstructed,
        note: "listed [e2, e4] = e6 violates Jacobi at (1, 2, 3); replaced by [e2, e5] = e6",
    },
];

/// Ids reserved for a larger classification but not shipped.
fn is_reserved(id: &str) -> bool {
    id.strip_prefix("A_6_")
        .and_then(|k| k.parse::<usize>().ok())
        .is_some_and(|k| (1..=22).contains(&k))
}

fn from_listing(l: &Listing) -> CatalogEntry {
    let table = StructureTable::from_brackets(
        l.dim,
        l.brackets
            .iter()
            .map(|(j, k, cs)| (*j, *k, cs.iter().map(|(t, c)| (*t, int(*c))))),
    )
    .expect("catalog listing is well formed");
    CatalogEntry {
        id: l.id.to_string(),
        table,
        provenance: l.provenance,
        source_note: l.note.to_string(),
    }
}

pub fn abelian(n: usize) -> StructureTable<Scalar> {
    StructureTable::abelian(n)
}

/// `[e_{2k}, e_{2k+1}] = e_1`, dimension `2m + 1`.
pub fn heisenberg(m: usize) -> StructureTable<Scalar> {
    StructureTable::from_brackets(
        2 * m + 1,
        (1..=m).map(|k| (2 * k, 2 * k + 1, [(1, int(1))])),
    )
    .expect("heisenberg brackets are in range")
}

/// `[e_1, e_k] = e_{k+1}` for `k = 2..n-1`.
pub fn filiform(n: usize) -> StructureTable<Scalar> {
    StructureTable::from_brackets(n, (2..n).map(|k| (1, k, [(k + 1, int(1))])))
        .expect("filiform brackets are in range")
}

/// Strictly upper triangular `n × n` matrices on the basis `E_ij`, `i < j`.
pub fn triangular(n: usize) -> StructureTable<Scalar> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("pair listed") + 1;
    let mut brackets = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
            let mut cs = Vec::new();
            if j == k {
                cs.push((index((i, l)), int(1)));
            }
            if l == i {
                cs.push((index((k, j)), int(-1)));
            }
            if !cs.is_empty() {
                brackets.push((index((i, j)), index((k, l)), cs));
            }
        }
    }
    StructureTable::from_brackets(pairs.len(), brackets).expect("triangular brackets are in range")
}

const MAX_FAMILY_DIM: usize = 64;

fn family(id: &str) -> Option<Result<CatalogEntry>> {
    let (name, rest) = id.split_once('(')?;
    let arg: usize = match rest.strip_suffix(')')?.trim().parse() {
        Ok(v) => v,
        Err(_) => {
            return Some(Err(Error::Invalid(format!(
                "family parameter in '{id}' must be a positive integer"
            ))))
        }
    };
    let (dim, min, build): (usize, usize, fn(usize) -> StructureTable<Scalar>) = match name {
        "abelian" => (arg, 1, abelian),
        "heisenberg" => (2 * arg + 1, 1, heisenberg),
        "filiform" => (arg, 3, filiform),
        "triangular" => (arg * arg.saturating_sub(1) / 2, 2, triangular),
        _ => return None,
    };
    if arg < min || dim > MAX_FAMILY_DIM {
        return Some(Err(Error::Invalid(format!(
            "{name} needs a parameter ≥ {min} and dimension ≤ {MAX_FAMILY_DIM}"
        ))));
    }
    Some(Ok(CatalogEntry {
        id: format!("{name}({arg})"),
        table: build(arg),
        provenance: Provenance::StandardFamily,
        source_note: match name {
            "abelian" => "all brackets zero".into(),
            "heisenberg" => "[e_2k, e_2k+1] = e_1".into(),
            "filiform" => "[e_1, e_k] = e_k+1".into(),
            _ => "strictly upper triangular matrices, basis E_ij with i < j".into(),
        },
    }))
}

fn normalise(id: &str) -> String {
    id.trim().replace("(+1)", "(1)").replace('−', "-")
}

/// Built-in ids in catalog order.
pub fn catalog_ids() -> Vec<&'static str> {
    LISTINGS.iter().map(|l| l.id).collect()
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    LISTINGS.iter().map(from_listing).collect()
}

pub fn catalog_lookup(id: &str) -> Result<CatalogEntry> {
    let id = normalise(id);
    if let Some(l) = LISTINGS.iter().find(|l| l.id == id) {
        return Ok(from_listing(l));
    }
    if let Some(entry) = family(&id) {
        return entry;
    }
    let hint = if is_reserved(&id) {
        "reserved id without a shipped bracket list; load it from a file".to_string()
    } else {
        format!(
            "available: {}, abelian(n), heisenberg(m), filiform(n), triangular(n)",
            catalog_ids().join(", ")
        )
    };
    Err(Error::NotFound { id, hint })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::is_nilpotent;
    use crate::table::validate_lie_algebra;

    #[test]
    fn entries_are_nilpotent_lie_algebras() {
        for e in catalog_entries() {
            assert!(validate_lie_algebra(&e.table).is_ok(), "{}", e.id);
            assert!(is_nilpotent(&e.table), "{}", e.id);
        }
        for id in [
            "abelian(4)",
            "heisenberg(3)",
            "filiform(7)",
            "triangular(4)",
        ] {
            let e = catalog_lookup(id).unwrap();
            assert!(validate_lie_algebra(&e.table).is_ok(), "{id}");
            assert!(is_nilpotent(&e.table), "{id}");
        }
    }

    #[test]
    fn a618_brackets() {
        let t = catalog_lookup("A_6_18").unwrap().table;
        assert_eq!(t.bracket_basis(1, 2), crate::matrix::unit(6, 2));
        assert_eq!(t.bracket_basis(2, 5), crate::matrix::unit(6, 5));
    }

    #[test]
    fn unknown_and_reserved_ids() {
        match catalog_lookup("A_6_3") {
            Err(Error::NotFound { hint, .. }) => assert!(hint.contains("reserved")),
            other => panic!("{other:?}"),
        }
        match catalog_lookup("B_9") {
            Err(Error::NotFound { hint, .. }) => assert!(hint.contains("A_5_3")),
            other => panic!("{other:?}"),
        }
        assert!(catalog_lookup("filiform(2)").is_err());
        assert_eq!(catalog_lookup("A_6_14(+1)").unwrap().id, "A_6_14(1)");
    }

    #[test]
    fn family_dimensions() {
        assert_eq!(catalog_lookup("abelian(3)").unwrap().table.dim(), 3);
        assert!(catalog_lookup("abelian(3)").unwrap().table.is_abelian());
        assert_eq!(heisenberg(2).dim(), 5);
        assert_eq!(triangular(4).dim(), 6);
    }
}
