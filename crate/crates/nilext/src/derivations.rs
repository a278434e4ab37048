//! Derivation algebras: the Leibniz nullspace, inner derivations,
//! nilpotency and nilindependence.

use crate::error::{Error, Result};
use crate::extensions::adapted_basis;
use crate::matrix::{is_zero_vec, products_vanish, Matrix};
use crate::poly::{self, Poly, PolyMatrix};
use crate::scalar::{Field, Gauss, Scalar};
use crate::series::is_nilpotent;
use crate::table::StructureTable;

/// A matrix checked against the Leibniz rule; column `j` is `D(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationMatrix<F: Field = Scalar> {
    matrix: Matrix<F>,
}

impl<F: Field> DerivationMatrix<F> {
    pub fn new(table: &StructureTable<F>, matrix: Matrix<F>) -> Result<Self> {
        if matrix.rows() != table.dim() || matrix.cols() != table.dim() {
            return Err(Error::Dimension {
                expected: table.dim(),
                found: matrix.rows(),
            });
        }
        if let Some((j, k)) = leibniz_failure(table, &matrix) {
            return Err(Error::NotADerivation(j, k));
        }
        Ok(DerivationMatrix { matrix })
    }

    pub(crate) fn trusted(matrix: Matrix<F>) -> Self {
        DerivationMatrix { matrix }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.matrix
    }
}

/// First basis pair `(j, k)` on which `D[e_j,e_k] ≠ [De_j,e_k] + [e_j,De_k]`.
pub fn leibniz_failure<F: Field>(
    table: &StructureTable<F>,
    d: &Matrix<F>,
) -> Option<(usize, usize)> {
    let n = table.dim();
    let images: Vec<Vec<F>> = (0..n).map(|c| d.col(c)).collect();
    for j in 1..=n {
        for k in j + 1..=n {
            let lhs = d.mul_vec(&table.bracket_basis(j, k));
            let ej = crate::matrix::unit(n, j - 1);
            let ek = crate::matrix::unit(n, k - 1);
            let a = table.bracket(&images[j - 1], &ek);
            let b = table.bracket(&ej, &images[k - 1]);
            let rhs: Vec<F> = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return Some((j, k));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace<F: Field = Scalar> {
    pub basis: Vec<DerivationMatrix<F>>,
    pub inner_basis: Vec<DerivationMatrix<F>>,
}

impl<F: Field> DerivationSpace<F> {
    /// `(total, inner, outer)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        let (t, i) = (self.basis.len(), self.inner_basis.len());
        (t, i, t - i)
    }

    pub fn matrices(&self) -> Vec<Matrix<F>> {
        self.basis.iter().map(|d| d.matrix.clone()).collect()
    }
}

/// Derivations whose entries vanish outside `allowed(row, col)` (0-based).
///
/// Unknowns are ordered column-major; the returned basis is the reduced
/// row-echelon form of the nullspace.
pub fn derivations_supported<F: Field>(
    table: &StructureTable<F>,
    allowed: impl Fn(usize, usize) -> bool,
) -> Vec<Matrix<F>> {
    let n = table.dim();
    let mut unknown_of = vec![None; n * n];
    let mut positions = Vec::new();
    for c in 0..n {
        for r in 0..n {
            if allowed(r, c) {
                unknown_of[c * n + r] = Some(positions.len());
                positions.push((r, c));
            }
        }
    }
    let u = positions.len();
    if u == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<F>> = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            // component r of D[e_j,e_k] - [De_j,e_k] - [e_j,De_k]
            let mut eqs = vec![vec![F::zero(); u]; n];
            for (l, c) in table.bracket_basis(j + 1, k + 1).into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for r in 0..n {
                    if let Some(x) = unknown_of[l * n + r] {
                        eqs[r][x] = eqs[r][x].clone() + c.clone();
                    }
                }
            }
            for s in 0..n {
                let sk = table.bracket_basis(s + 1, k + 1);
                let js = table.bracket_basis(j + 1, s + 1);
                for r in 0..n {
                    if !sk[r].is_zero() {
                        if let Some(x) = unknown_of[j * n + s] {
                            eqs[r][x] = eqs[r][x].clone() - sk[r].clone();
                        }
                    }
                    if !js[r].is_zero() {
                        if let Some(x) = unknown_of[k * n + s] {
                            eqs[r][x] = eqs[r][x].clone() - js[r].clone();
                        }
                    }
                }
            }
            rows.extend(eqs.into_iter().filter(|e| !is_zero_vec(e)));
        }
    }
    let null = if rows.is_empty() {
        (0..u).map(|i| crate::matrix::unit(u, i)).collect()
    } else {
        Matrix::from_rows(rows, u).nullspace()
    };
    if null.is_empty() {
        return Vec::new();
    }
    let (canon, _) = Matrix::from_rows(null, u).rref();
    canon
        .row_vecs()
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            for (x, &(r, c)) in positions.iter().enumerate() {
                m[(r, c)] = v[x].clone();
            }
            m
        })
        .collect()
}

/// Inner derivations `ad(e_i)`, keeping each one independent of its predecessors.
pub fn inner_derivations<F: Field>(table: &StructureTable<F>) -> Vec<Matrix<F>> {
    let n = table.dim();
    let mut kept: Vec<Matrix<F>> = Vec::new();
    let mut rank = 0;
    for i in 0..n {
        let ad = table.ad(&crate::matrix::unit(n, i));
        if ad.is_zero() {
            continue;
        }
        let mut flat: Vec<Vec<F>> = kept.iter().map(Matrix::flatten).collect();
        flat.push(ad.flatten());
        let r = Matrix::from_rows(flat, n * n).rank();
        if r > rank {
            rank = r;
            kept.push(ad);
        }
    }
    kept
}

pub fn derivation_space<F: Field>(table: &StructureTable<F>) -> DerivationSpace<F> {
    DerivationSpace {
        basis: derivations_supported(table, |_, _| true)
            .into_iter()
            .map(DerivationMatrix::trusted)
            .collect(),
        inner_basis: inner_derivations(table)
            .into_iter()
            .map(DerivationMatrix::trusted)
            .collect(),
    }
}

pub fn is_nilpotent_derivation<F: Field>(table: &StructureTable<F>, d: &Matrix<F>) -> Result<bool> {
    DerivationMatrix::new(table, d.clone())?;
    Ok(d.is_nilpotent())
}

/// Outcome of the nilindependence decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilindependence {
    /// No nonzero combination is nilpotent, even over ℂ.
    Independent,
    /// The rational combination with these coefficients is nilpotent.
    Dependent(Vec<Scalar>),
    /// Some nonzero complex combination is nilpotent; none was found over ℚ.
    DependentOverC,
    Undecided(String),
}

impl Nilindependence {
    /// The verdict over ℂ; `None` when undecided.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Nilindependence::Independent => Some(true),
            Nilindependence::Dependent(_) | Nilindependence::DependentOverC => Some(false),
            Nilindependence::Undecided(_) => None,
        }
    }
}

/// Budget for the Gröbner-basis searches behind nilindependence.
const NILINDEPENDENCE_BUDGET: usize = 4000;

/// Blocks that decide nilpotency: the `(m_1, m_1)` block for nilpotent
/// non-abelian tables, the whole matrix otherwise.
pub fn deciding_blocks(table: &StructureTable, ds: &[Matrix]) -> Result<Vec<Matrix>> {
    if table.is_abelian() || !is_nilpotent(table) {
        return Ok(ds.to_vec());
    }
    let basis = adapted_basis(table)?;
    Ok(ds.iter().map(|d| basis.block_view(d).m1_block()).collect())
}

pub fn is_nilindependent(table: &StructureTable, ds: &[Matrix]) -> Result<Nilindependence> {
    for d in ds {
        DerivationMatrix::new(table, d.clone())?;
    }
    let blocks = deciding_blocks(table, ds)?;
    let m = blocks.first().map_or(0, Matrix::rows);
    let flat: Vec<Vec<Scalar>> = blocks.iter().map(Matrix::flatten).collect();
    if flat.is_empty() {
        return Ok(Nilindependence::Independent);
    }
    // linear dependence of the deciding blocks gives a nilpotent combination
    let cols = Matrix::from_cols(&flat, m * m);
    if let Some(c) = cols.nullspace().into_iter().next() {
        return Ok(Nilindependence::Dependent(c));
    }
    let k = blocks.len();
    let gauss: Vec<Matrix<Gauss>> = blocks
        .iter()
        .map(|b| b.map(|x| Gauss::from_rational(x.clone())))
        .collect();
    for lead in 0..k {
        // c_lead = 1 and c_i = 0 for i < lead; remaining coefficients are unknowns
        let nvars = k - lead - 1;
        let mut sym = PolyMatrix::constant(&gauss[lead], nvars);
        for (v, b) in gauss[lead + 1..].iter().enumerate() {
            sym = sym.add(&PolyMatrix::linear(b, v, nvars));
        }
        let mut eqs: Vec<Poly<Gauss>> = Vec::new();
        let mut power = sym.clone();
        for _ in 0..m {
            eqs.push(power.trace());
            power = power.mul(&sym);
        }
        match poly::is_consistent(eqs, NILINDEPENDENCE_BUDGET) {
            Some(false) => continue,
            Some(true) => {
                if let Some(c) = rational_nilpotent_combination(&blocks, lead) {
                    return Ok(Nilindependence::Dependent(c));
                }
                return Ok(Nilindependence::DependentOverC);
            }
            None => {
                return Ok(Nilindependence::Undecided(
                    "polynomial trace conditions exceeded the search budget".into(),
                ))
            }
        }
    }
    Ok(Nilindependence::Independent)
}

/// Small integer combinations with leading coefficient 1 at `lead`.
fn rational_nilpotent_combination(blocks: &[Matrix], lead: usize) -> Option<Vec<Scalar>> {
    let k = blocks.len();
    let free = k - lead - 1;
    if free > 4 {
        return None;
    }
    let range: Vec<i64> = (-3..=3).collect();
    let total = range.len().pow(free as u32);
    for idx in 0..total {
        let mut c = vec![Scalar::from_int(0); k];
        c[lead] = Scalar::from_int(1);
        let mut rest = idx;
        for slot in c.iter_mut().skip(lead + 1) {
            *slot = Scalar::from_int(range[rest % range.len()]);
            rest /= range.len();
        }
        let mut m = Matrix::zeros(blocks[0].rows(), blocks[0].cols());
        for (ci, b) in c.iter().zip(blocks) {
            m = m.add(&b.scale(ci));
        }
        if m.is_nilpotent() {
            return Some(c);
        }
    }
    None
}

/// Every derivation is nilpotent.
///
/// The deciding blocks form a Lie algebra of matrices; all its elements are
/// nilpotent exactly when all products of `m` of them vanish.
pub fn is_characteristically_nilpotent(table: &StructureTable) -> Result<bool> {
    if !is_nilpotent(table) {
        return Err(Error::NotNilpotent);
    }
    let space = derivation_space(table);
    let blocks = deciding_blocks(table, &space.matrices())?;
    let m = blocks.first().map_or(0, Matrix::rows);
    Ok(products_vanish(&blocks, m.max(1)))
}

/// A non-nilpotent derivation among basis elements and their pairwise sums.
pub fn non_nilpotent_derivation(table: &StructureTable) -> Option<Matrix> {
    let ms = derivation_space(table).matrices();
    if let Some(d) = ms.iter().find(|d| !d.is_nilpotent()) {
        return Some(d.clone());
    }
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            let s = a.add(b);
            if !s.is_nilpotent() {
                return Some(s);
            }
        }
    }
    None
}
