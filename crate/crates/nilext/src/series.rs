//! Characteristic series, centralizers, relative ideals and the associated
//! graded algebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, Matrix};
use crate::scalar::{Field, Scalar};
use crate::subspace::{bracket_subspaces, Subspace};
use crate::table::StructureTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Derived => "derived",
            SeriesKind::LowerCentral => "lower_central",
            SeriesKind::UpperCentral => "upper_central",
        }
    }
}

/// A series computed until two consecutive terms agree, stored without the repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesChain<F: Field = Scalar> {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace<F>>,
    pub stabilized: bool,
}

impl<F: Field> SeriesChain<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    fn last(&self) -> &Subspace<F> {
        self.terms.last().expect("series has at least one term")
    }

    /// Derived series reaches zero.
    pub fn is_solvable(&self) -> bool {
        debug_assert_eq!(self.kind, SeriesKind::Derived);
        self.last().is_zero()
    }

    /// Lower central series reaches zero, or upper central series reaches the whole algebra.
    pub fn is_nilpotent(&self) -> bool {
        match self.kind {
            SeriesKind::UpperCentral => self.last().is_full(),
            _ => self.last().is_zero(),
        }
    }

    /// Largest `K` with a nonzero `K`-th term (lower central series only).
    pub fn nilindex(&self) -> Option<usize> {
        if self.kind != SeriesKind::LowerCentral || !self.is_nilpotent() {
            return None;
        }
        Some(self.terms.iter().filter(|t| !t.is_zero()).count())
    }

    pub fn is_abelian(&self) -> bool {
        self.nilindex() == Some(1)
    }
}

pub fn characteristic_series<F: Field>(
    table: &StructureTable<F>,
    kind: SeriesKind,
) -> SeriesChain<F> {
    let n = table.dim();
    let full = Subspace::full(n);
    let mut terms = vec![match kind {
        SeriesKind::UpperCentral => Subspace::zero(n),
        _ => full.clone(),
    }];
    loop {
        let cur = terms.last().expect("nonempty");
        let next = match kind {
            SeriesKind::Derived => bracket_subspaces(table, cur, cur),
            SeriesKind::LowerCentral => bracket_subspaces(table, cur, &full),
            SeriesKind::UpperCentral => Ok(relative_ideal(table, &full, cur)),
        }
        .expect("ambient dimensions agree");
        if next == *cur {
            break;
        }
        terms.push(next);
    }
    SeriesChain {
        kind,
        terms,
        stabilized: true,
    }
}

/// `{x : [x, y] ∈ j for all y ∈ i}`.
pub fn relative_ideal<F: Field>(
    table: &StructureTable<F>,
    i: &Subspace<F>,
    j: &Subspace<F>,
) -> Subspace<F> {
    let n = table.dim();
    // annihilator rows of j cut out the quotient by j
    let annihilator = if j.is_zero() {
        Matrix::identity(n).row_vecs()
    } else {
        j.rows().nullspace()
    };
    let mut rows = Vec::new();
    for y in i.basis() {
        let ad = table.ad(&y);
        for a in &annihilator {
            let row: Vec<F> = (0..n).map(|c| crate::matrix::dot(a, &ad.col(c))).collect();
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    Subspace::span(n, &Matrix::from_rows(rows, n).nullspace())
}

pub fn centralizer<F: Field>(table: &StructureTable<F>, h: &Subspace<F>) -> Subspace<F> {
    relative_ideal(table, h, &Subspace::zero(table.dim()))
}

pub fn center<F: Field>(table: &StructureTable<F>) -> Subspace<F> {
    centralizer(table, &Subspace::full(table.dim()))
}

/// Lower central terms `n^1, ..., n^{K+1} = 0` of a nilpotent table.
pub fn lower_central_terms<F: Field>(table: &StructureTable<F>) -> Result<Vec<Subspace<F>>> {
    let chain = characteristic_series(table, SeriesKind::LowerCentral);
    if !chain.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    Ok(chain.terms)
}

pub fn is_nilpotent<F: Field>(table: &StructureTable<F>) -> bool {
    characteristic_series(table, SeriesKind::LowerCentral).is_nilpotent()
}

/// `gr(n) = ⊕ n^k / n^{k+1}` on a basis ordered deepest layer first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra<F: Field = Scalar> {
    /// `(m_1, ..., m_K)`.
    pub layer_dims: Vec<usize>,
    pub table: StructureTable<F>,
    /// Layer of each basis index, stored at position `index - 1`.
    pub layer_of_index: Vec<usize>,
    /// Columns are the chosen basis vectors in source coordinates.
    pub basis: Matrix<F>,
    /// The source bracket rewritten in the same basis.
    pub filtered: StructureTable<F>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn layer_count(&self) -> usize {
        self.layer_dims.len()
    }

    pub fn layer_of(&self, index: usize) -> usize {
        self.layer_of_index[index - 1]
    }

    /// 1-based indices of the basis vectors in layer `k`.
    pub fn layer_indices(&self, k: usize) -> Vec<usize> {
        (1..=self.table.dim())
            .filter(|&i| self.layer_of(i) == k)
            .collect()
    }
}

pub fn associated_graded<F: Field>(table: &StructureTable<F>) -> Result<GradedAlgebra<F>> {
    let terms = lower_central_terms(table)?;
    let n = table.dim();
    let depth = terms.len() - 1;
    let mut layers: Vec<Vec<Vec<F>>> = Vec::with_capacity(depth);
    for k in 0..depth {
        layers.push(terms[k].complement_basis(&terms[k + 1])?);
    }
    let mut cols = Vec::with_capacity(n);
    let mut layer_of_index = Vec::with_capacity(n);
    for (k, layer) in layers.iter().enumerate().rev() {
        for v in layer {
            cols.push(v.clone());
            layer_of_index.push(k + 1);
        }
    }
    let basis = Matrix::from_cols(&cols, n);
    let filtered = table.change_basis(&basis)?;
    let mut graded = StructureTable::abelian(n);
    for ((j, k), cs) in filtered.entries() {
        let target = layer_of_index[j - 1] + layer_of_index[k - 1];
        let kept: Vec<(usize, F)> = cs
            .iter()
            .filter(|(l, _)| layer_of_index[l - 1] == target)
            .cloned()
            .collect();
        graded.set_bracket(*j, *k, kept)?;
    }
    Ok(GradedAlgebra {
        layer_dims: layers.iter().map(Vec::len).collect(),
        table: graded,
        layer_of_index,
        basis,
        filtered,
    })
}
