//! Subspaces in canonical reduced row-echelon form.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, unit, Matrix};
use crate::scalar::{Field, Scalar};
use crate::table::{render_vector, StructureTable};

/// Equality is structural: canonical forms are unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field = Scalar> {
    ambient: usize,
    rows: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.basis().iter().map(|v| render_vector(v)).collect();
        write!(f, "span{{{}}} in dim {}", basis.join(", "), self.ambient)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    Complement,
    Contains,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpResult<F: Field = Scalar> {
    Space(Subspace<F>),
    Flag(bool),
}

impl<F: Field> Subspace<F> {
    /// Span of the given vectors (dependent or zero vectors allowed).
    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        let nonzero: Vec<Vec<F>> = vectors
            .iter()
            .filter(|v| !is_zero_vec(v))
            .cloned()
            .collect();
        let (rows, pivots) = Matrix::from_rows(nonzero, ambient).rref();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            &(0..ambient).map(|i| unit(ambient, i)).collect::<Vec<_>>(),
        )
    }

    /// Span of basis vectors given by 1-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        Self::span(
            ambient,
            &indices
                .iter()
                .map(|&i| unit(ambient, i - 1))
                .collect::<Vec<_>>(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> Vec<Vec<F>> {
        self.rows.row_vecs()
    }

    pub fn rows(&self) -> &Matrix<F> {
        &self.rows
    }

    /// 0-based pivot columns.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![F::zero(); self.ambient];
        for (c, row) in coords.iter().zip(self.rows.row_vecs()) {
            crate::matrix::axpy(&mut rebuilt, c, &row);
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.basis().iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vs = self.basis();
        vs.extend(other.basis());
        Self::span(self.ambient, &vs)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        // x = Σ a_i u_i = Σ b_j w_j  ⇔  [U; -W]ᵀ (a, b) = 0
        let u = self.basis();
        let w = other.basis();
        let mut cols = u.clone();
        cols.extend(w.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        if cols.is_empty() {
            return Self::zero(self.ambient);
        }
        let sys = Matrix::from_cols(&cols, self.ambient);
        let vecs: Vec<Vec<F>> = sys
            .nullspace()
            .into_iter()
            .map(|ab| {
                let mut x = vec![F::zero(); self.ambient];
                for (a, ui) in ab.iter().zip(&u) {
                    crate::matrix::axpy(&mut x, a, ui);
                }
                x
            })
            .collect();
        Self::span(self.ambient, &vecs)
    }

    /// Rows of this subspace's canonical basis that complement `inner`.
    ///
    /// `inner` is written in this subspace's coordinates; the rows at its
    /// non-pivot positions form the complement.
    pub fn complement_of(&self, inner: &Self) -> Result<Self> {
        if !self.contains(inner) {
            return Err(Error::NotContained);
        }
        let coords: Vec<Vec<F>> = inner
            .basis()
            .iter()
            .map(|v| self.coordinates(v).expect("contained"))
            .collect();
        let (_, inner_pivots) = Matrix::from_rows(coords, self.dim()).rref();
        let rows = self.basis();
        let picked: Vec<Vec<F>> = (0..self.dim())
            .filter(|i| !inner_pivots.contains(i))
            .map(|i| rows[i].clone())
            .collect();
        Ok(Self::span(self.ambient, &picked))
    }

    /// Basis vectors of the complement in the order used to build it.
    pub fn complement_basis(&self, inner: &Self) -> Result<Vec<Vec<F>>> {
        Ok(self.complement_of(inner)?.basis())
    }

    /// Image under a linear map given by its matrix.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        let vs: Vec<Vec<F>> = self.basis().iter().map(|v| m.mul_vec(v)).collect();
        Self::span(self.ambient, &vs)
    }

    pub fn is_invariant_under(&self, m: &Matrix<F>) -> bool {
        self.basis()
            .iter()
            .all(|v| self.contains_vector(&m.mul_vec(v)))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }
}

/// Lattice operations on two subspaces of the same ambient space.
pub fn subspace_ops<F: Field>(
    mode: SubspaceOp,
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<OpResult<F>> {
    a.check(b)?;
    Ok(match mode {
        SubspaceOp::Sum => OpResult::Space(a.sum(b)),
        SubspaceOp::Intersect => OpResult::Space(a.intersect(b)),
        SubspaceOp::Complement => OpResult::Space(a.complement_of(b)?),
        SubspaceOp::Contains => OpResult::Flag(a.contains(b)),
    })
}

/// `span{[x, y] : x ∈ a, y ∈ b}`.
pub fn bracket_subspaces<F: Field>(
    table: &StructureTable<F>,
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<Subspace<F>> {
    let n = table.dim();
    for s in [a, b] {
        if s.ambient_dim() != n {
            return Err(Error::Dimension {
                expected: n,
                found: s.ambient_dim(),
            });
        }
    }
    let mut vs = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            vs.push(table.bracket(&x, &y));
        }
    }
    Ok(Subspace::span(n, &vs))
}
