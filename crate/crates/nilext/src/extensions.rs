//! Adapted bases, block views of derivations and bounds on solvable
//! extensions.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{ratio, Field, Scalar};
use crate::series::{center, lower_central_terms};
use crate::subspace::Subspace;
use crate::table::StructureTable;

/// Layer-`k` vector `e_j = [e_y, e_z]` with `y` in layer `k - 1` and `z`
/// in layer 1 (adapted indices; `y < z` when both lie in layer 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub y: usize,
    pub z: usize,
}

/// Basis `m_K ∔ ... ∔ m_1`, deepest layer first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis<F: Field = Scalar> {
    /// Columns are adapted basis vectors in original coordinates.
    pub basis: Matrix<F>,
    /// Maps original coordinates to adapted coordinates.
    pub change_of_basis: Matrix<F>,
    /// `(m_1, ..., m_K)`.
    pub layer_dims: Vec<usize>,
    pub layer_of_index: Vec<usize>,
    pub witnesses: BTreeMap<usize, Witness>,
    /// The algebra in adapted coordinates.
    pub table: StructureTable<F>,
}

impl<F: Field> AdaptedBasis<F> {
    pub fn layer_count(&self) -> usize {
        self.layer_dims.len()
    }

    /// 1-based adapted indices of layer `k`.
    pub fn layer_indices(&self, k: usize) -> Vec<usize> {
        (1..=self.basis.cols())
            .filter(|&i| self.layer_of_index[i - 1] == k)
            .collect()
    }

    pub fn vector(&self, index: usize) -> Vec<F> {
        self.basis.col(index - 1)
    }

    /// `P⁻¹ D P` split into layer blocks.
    pub fn block_view(&self, d: &Matrix<F>) -> BlockView<F> {
        let adapted = self.change_of_basis.mul(d).mul(&self.basis);
        let mut blocks = BTreeMap::new();
        for r in 1..=self.layer_count() {
            let rows: Vec<usize> = self.layer_indices(r).iter().map(|i| i - 1).collect();
            for c in 1..=self.layer_count() {
                let cols: Vec<usize> = self.layer_indices(c).iter().map(|i| i - 1).collect();
                blocks.insert((r, c), adapted.select(&rows, &cols));
            }
        }
        BlockView {
            derivation: adapted,
            blocks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockView<F: Field = Scalar> {
    /// The derivation in adapted coordinates.
    pub derivation: Matrix<F>,
    /// Keyed by `(row layer, column layer)`.
    pub blocks: BTreeMap<(usize, usize), Matrix<F>>,
}

impl<F: Field> BlockView<F> {
    pub fn block(&self, row_layer: usize, col_layer: usize) -> &Matrix<F> {
        &self.blocks[&(row_layer, col_layer)]
    }

    pub fn m1_block(&self) -> Matrix<F> {
        self.block(1, 1).clone()
    }

    /// Layer `c` maps into layers `≥ c`: blocks with row layer below column layer vanish.
    pub fn is_upper_block_triangular(&self) -> bool {
        self.blocks.iter().all(|(&(r, c), b)| r >= c || b.is_zero())
    }

    /// Blocks mapping layer `c` into layers `> c` only.
    pub fn is_strictly_upper_block_triangular(&self) -> bool {
        self.blocks.iter().all(|(&(r, c), b)| r > c || b.is_zero())
    }
}

pub fn adapted_basis<F: Field>(table: &StructureTable<F>) -> Result<AdaptedBasis<F>> {
    let terms = lower_central_terms(table)?;
    if table.is_abelian() {
        return Err(Error::Abelian);
    }
    let depth = terms.len() - 1;
    let dims: Vec<usize> = (0..depth)
        .map(|k| terms[k].dim() - terms[k + 1].dim())
        .collect();
    // adapted index offset of each layer, deepest layer first
    let mut offset = vec![0; depth + 1];
    let mut next = 0;
    for k in (1..=depth).rev() {
        offset[k] = next;
        next += dims[k - 1];
    }
    let mut layers: Vec<Vec<Vec<F>>> = vec![terms[0].complement_basis(&terms[1])?];
    let mut witnesses = BTreeMap::new();
    for k in 2..=depth {
        let mut span = terms[k].clone();
        let mut chosen = Vec::new();
        'scan: for (b, y) in layers[k - 2].iter().enumerate() {
            for (a, z) in layers[0].iter().enumerate() {
                if k == 2 && a <= b {
                    continue;
                }
                let v = table.bracket(y, z);
                if span.contains_vector(&v) {
                    continue;
                }
                span = span.sum(&Subspace::span(table.dim(), std::slice::from_ref(&v)));
                witnesses.insert(
                    offset[k] + chosen.len() + 1,
                    Witness {
                        y: offset[k - 1] + b + 1,
                        z: offset[1] + a + 1,
                    },
                );
                chosen.push(v);
                if chosen.len() == dims[k - 1] {
                    break 'scan;
                }
            }
        }
        debug_assert_eq!(
            chosen.len(),
            dims[k - 1],
            "layer {k} is spanned by brackets"
        );
        layers.push(chosen);
    }
    let mut cols = Vec::new();
    let mut layer_of_index = Vec::new();
    for k in (1..=depth).rev() {
        for v in &layers[k - 1] {
            cols.push(v.clone());
            layer_of_index.push(k);
        }
    }
    let n = table.dim();
    let basis = Matrix::from_cols(&cols, n);
    let change_of_basis = basis.inverse().expect("layers form a basis");
    let adapted = table.change_basis(&basis)?;
    Ok(AdaptedBasis {
        basis,
        change_of_basis,
        layer_dims: layers.iter().map(Vec::len).collect(),
        layer_of_index,
        witnesses,
        table: adapted,
    })
}

/// `dim n - dim n²`: the most non-nilpotent elements a solvable extension can add.
pub fn solvable_extension_bound<F: Field>(table: &StructureTable<F>) -> Result<usize> {
    let terms = lower_central_terms(table)?;
    Ok(terms[0].dim() - terms.get(1).map_or(0, Subspace::dim))
}

/// Heisenberg algebras (`n² = center`, one-dimensional) reach only `(dim + 1) / 2`.
pub fn attained_extension_rank(table: &StructureTable) -> Option<usize> {
    let terms = lower_central_terms(table).ok()?;
    let n2 = terms.get(1)?;
    let is_heisenberg = n2.dim() == 1 && center(table) == *n2;
    is_heisenberg.then(|| table.dim().div_ceil(2))
}

/// `(dim s + dim s^(2)) / 2`, a lower bound on the nilradical dimension.
pub fn nilradical_lower_bound(dim_s: i64, dim_s_derived2: i64) -> Result<Scalar> {
    if dim_s <= 0 || dim_s_derived2 < 0 {
        return Err(Error::Invalid(
            "dimensions must be non-negative and dim s positive".into(),
        ));
    }
    if dim_s_derived2 > dim_s {
        return Err(Error::Invalid("dim s^(2) exceeds dim s".into()));
    }
    Ok(ratio(dim_s + dim_s_derived2, 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Commutation {
    Commute,
    /// Indices into the input list of a non-commuting pair.
    Fails(usize, usize),
}

/// Whether the `(m_1, m_1)` blocks of the given derivations pairwise commute.
pub fn m1_block_commutation(
    table: &StructureTable,
    basis: &AdaptedBasis,
    ds: &[Matrix],
) -> Result<Commutation> {
    let n = table.dim();
    for d in ds {
        if d.rows() != n || d.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                found: d.rows(),
            });
        }
        crate::derivations::DerivationMatrix::new(table, d.clone())?;
    }
    let blocks: Vec<Matrix> = ds.iter().map(|d| basis.block_view(d).m1_block()).collect();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if !blocks[i].commutator(&blocks[j]).is_zero() {
                return Ok(Commutation::Fails(i, j));
            }
        }
    }
    Ok(Commutation::Commute)
}
