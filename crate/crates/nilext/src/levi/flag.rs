//! Characteristic flags built from series terms, centralizers and relative ideals.

use std::collections::HashMap;
use std::fmt;

use crate::scalar::Scalar;
use crate::series::{centralizer, characteristic_series, relative_ideal, SeriesKind};
use crate::subspace::Subspace;
use crate::table::StructureTable;

/// How a characteristic subspace was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    Zero,
    Whole,
    /// `n^k`, `k ≥ 2`.
    Lower(usize),
    /// `n^(k)`, `k ≥ 1`.
    Derived(usize),
    /// `z_k`, `k ≥ 1`.
    Upper(usize),
    Centralizer(Box<Recipe>),
    /// `{x : [x, i] ⊆ j}`.
    Relative(Box<Recipe>, Box<Recipe>),
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

fn subscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Zero => f.write_str("0"),
            Recipe::Whole => f.write_str("n"),
            Recipe::Lower(k) => write!(f, "n{}", superscript(*k)),
            Recipe::Derived(k) => write!(f, "n⁽{}⁾", superscript(*k)),
            Recipe::Upper(k) => write!(f, "z{}", subscript(*k)),
            Recipe::Centralizer(r) => write!(f, "cent({r})"),
            Recipe::Relative(i, j) => write!(f, "rel({i}, {j})"),
        }
    }
}

impl Recipe {
    /// Smaller is simpler; series terms beat centralizers beat relative ideals.
    pub fn complexity(&self) -> usize {
        match self {
            Recipe::Zero | Recipe::Whole => 0,
            Recipe::Lower(_) => 1,
            Recipe::Derived(_) => 2,
            Recipe::Upper(_) => 3,
            Recipe::Centralizer(r) => 10 + r.complexity(),
            Recipe::Relative(i, j) => 20 + i.complexity() + j.complexity(),
        }
    }

    fn key(&self) -> (usize, String) {
        (self.complexity(), self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagMember {
    pub subspace: Subspace,
    pub recipe: Recipe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicFlag {
    /// Longest containment chain from 0 to the whole algebra.
    pub chain: Vec<FlagMember>,
    pub is_complete: bool,
    /// Every characteristic subspace found, by increasing dimension.
    pub members: Vec<FlagMember>,
    /// Closure rounds until no new subspace appeared.
    pub rounds: usize,
}

impl CharacteristicFlag {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(|m| m.subspace.dim()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.chain.iter().map(|m| m.recipe.to_string()).collect()
    }

    /// `0 ⊂ n³ ⊂ ... ⊂ n`.
    pub fn render_chain(&self) -> String {
        self.labels().join(" ⊂ ")
    }
}

const MAX_ROUNDS: usize = 16;

/// Seeds with all series terms, then closes under centralizers and
/// relative ideals until a fixpoint.
pub fn build_characteristic_flag(table: &StructureTable<Scalar>) -> CharacteristicFlag {
    let n = table.dim();
    let mut found: HashMap<Subspace, Recipe> = HashMap::new();
    let offer = |found: &mut HashMap<Subspace, Recipe>, s: Subspace, r: Recipe| -> bool {
        match found.get(&s) {
            Some(old) if old.key() <= r.key() => false,
            Some(_) => {
                found.insert(s, r);
                false
            }
            None => {
                found.insert(s, r);
                true
            }
        }
    };
    offer(&mut found, Subspace::zero(n), Recipe::Zero);
    offer(&mut found, Subspace::full(n), Recipe::Whole);
    for kind in [
        SeriesKind::LowerCentral,
        SeriesKind::Derived,
        SeriesKind::UpperCentral,
    ] {
        let chain = characteristic_series(table, kind);
        for (k, term) in chain.terms.iter().enumerate() {
            let recipe = match kind {
                SeriesKind::LowerCentral => Recipe::Lower(k + 1),
                SeriesKind::Derived => Recipe::Derived(k),
                SeriesKind::UpperCentral => Recipe::Upper(k),
            };
            let recipe = if term.is_zero() {
                Recipe::Zero
            } else if term.is_full() {
                Recipe::Whole
            } else {
                recipe
            };
            offer(&mut found, term.clone(), recipe);
        }
    }
    let mut rounds = 0;
    loop {
        rounds += 1;
        let snapshot: Vec<(Subspace, Recipe)> = sorted(&found);
        let mut grew = false;
        for (s, r) in &snapshot {
            grew |= offer(
                &mut found,
                centralizer(table, s),
                Recipe::Centralizer(Box::new(r.clone())),
            );
        }
        for (i, ri) in &snapshot {
            for (j, rj) in &snapshot {
                if i.is_zero() || j.is_full() || j.contains(i) {
                    // trivially the whole algebra
                    continue;
                }
                grew |= offer(
                    &mut found,
                    relative_ideal(table, i, j),
                    Recipe::Relative(Box::new(ri.clone()), Box::new(rj.clone())),
                );
            }
        }
        if !grew || rounds >= MAX_ROUNDS {
            break;
        }
    }
    let members: Vec<FlagMember> = sorted(&found)
        .into_iter()
        .map(|(subspace, recipe)| FlagMember { subspace, recipe })
        .collect();
    let chain = longest_chain(&members);
    let is_complete = chain.len() == n + 1;
    CharacteristicFlag {
        chain,
        is_complete,
        members,
        rounds,
    }
}

fn sorted(found: &HashMap<Subspace, Recipe>) -> Vec<(Subspace, Recipe)> {
    let mut v: Vec<(Subspace, Recipe)> =
        found.iter().map(|(s, r)| (s.clone(), r.clone())).collect();
    v.sort_by(|(a, ra), (b, rb)| a.dim().cmp(&b.dim()).then_with(|| ra.key().cmp(&rb.key())));
    v
}

/// Longest chain, ties broken by the smaller total recipe complexity.
fn longest_chain(members: &[FlagMember]) -> Vec<FlagMember> {
    let m = members.len();
    // score = (length, -complexity); members are sorted by dimension
    let mut best: Vec<(usize, isize, Option<usize>)> = vec![(0, 0, None); m];
    for y in 0..m {
        let cost = members[y].recipe.complexity() as isize;
        best[y] = (1, -cost, None);
        for x in 0..y {
            let (xs, ys) = (&members[x].subspace, &members[y].subspace);
            if xs.dim() < ys.dim() && ys.contains(xs) {
                let cand = (best[x].0 + 1, best[x].1 - cost);
                if (cand.0, cand.1) > (best[y].0, best[y].1) {
                    best[y] = (cand.0, cand.1, Some(x));
                }
            }
        }
    }
    let top = members
        .iter()
        .position(|mb| mb.subspace.is_full())
        .expect("whole algebra present");
    let mut chain = Vec::new();
    let mut cur = Some(top);
    while let Some(i) = cur {
        chain.push(members[i].clone());
        cur = best[i].2;
    }
    chain.reverse();
    chain
}

/// A complete characteristic flag rules out every Levi extension with nontrivial action.
pub fn flag_excludes(flag: &CharacteristicFlag) -> bool {
    flag.is_complete
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn a41_flag() {
        let t = StructureTable::from_brackets(4, [(2, 4, [(1, int(1))]), (3, 4, [(2, int(1))])])
            .unwrap();
        let f = build_characteristic_flag(&t);
        assert!(f.is_complete);
        assert_eq!(f.render_chain(), "0 ⊂ n³ ⊂ n² ⊂ cent(n²) ⊂ n");
    }

    #[test]
    fn abelian_flag_is_trivial() {
        let f = build_characteristic_flag(&StructureTable::abelian(3));
        assert_eq!(f.dims(), vec![0, 3]);
        assert!(!flag_excludes(&f));
    }

    #[test]
    fn recipe_labels() {
        assert_eq!(Recipe::Upper(2).to_string(), "z₂");
        assert_eq!(Recipe::Derived(2).to_string(), "n⁽²⁾");
        assert_eq!(
            Recipe::Relative(Box::new(Recipe::Whole), Box::new(Recipe::Lower(3))).to_string(),
            "rel(n, n³)"
        );
    }
}
