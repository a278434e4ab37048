//! Dense exact matrices with row reduction.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field = Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(Field::render).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from rows; an empty list yields a `0 x cols` matrix.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_cols(cols: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let v = out[(r, c)].clone() + a.clone() * b.clone();
                        out[(r, c)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.rows == 0 || self.pow(self.rows as u32).is_zero()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = F::one() / m[(lead, c)].clone();
            for j in c..m.cols {
                let v = m[(lead, j)].clone() * inv.clone();
                m[(lead, j)] = v;
            }
            for r in 0..m.rows {
                if r == lead || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for j in c..m.cols {
                    if m[(lead, j)].is_zero() {
                        continue;
                    }
                    let v = m[(r, j)].clone() - f.clone() * m[(lead, j)].clone();
                    m[(r, j)] = v;
                }
            }
            pivots.push(c);
            lead += 1;
        }
        m.truncate_rows(pivots.len());
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn truncate_rows(&mut self, n: usize) {
        self.rows = n;
        self.data.truncate(n * self.cols);
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `Mx = b`, if the system is consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = F::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(red.select(&rows, &cols))
    }

    /// Characteristic polynomial `det(xI - M)`, coefficients from constant term up.
    pub fn charpoly(&self) -> Vec<F> {
        let n = self.rows;
        assert_eq!(n, self.cols, "charpoly of a non-square matrix");
        // Faddeev–LeVerrier; exact in characteristic zero.
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut shifted = m.clone();
            for i in 0..n {
                let v = shifted[(i, i)].clone() + coeffs[n - k + 1].clone();
                shifted[(i, i)] = v;
            }
            m = self.mul(&shifted);
            coeffs[n - k] = -m.trace() / F::from_int(k as i64);
        }
        coeffs
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn axpy<F: Field>(acc: &mut [F], s: &F, v: &[F]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + s.clone() * x.clone();
        }
    }
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// True iff every product of `len` matrices drawn from `gens` vanishes.
pub fn products_vanish<F: Field>(gens: &[Matrix<F>], len: usize) -> bool {
    let Some(first) = gens.first() else {
        return true;
    };
    let n = first.rows();
    let flatten = |m: &Matrix<F>| m.data.clone();
    let mut span: Vec<Matrix<F>> = basis_of(gens, n);
    for _ in 1..len {
        let products: Vec<Matrix<F>> = span
            .iter()
            .flat_map(|a| gens.iter().map(move |g| a.mul(g)))
            .collect();
        span = basis_of(&products, n);
        if span.is_empty() {
            return true;
        }
    }
    span.iter().all(|m| flatten(m).iter().all(Zero::is_zero))
}

fn basis_of<F: Field>(ms: &[Matrix<F>], n: usize) -> Vec<Matrix<F>> {
    if ms.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<F>> = ms.iter().map(|m| m.data.clone()).collect();
    let (red, _) = Matrix::from_rows(rows, n * n).rref();
    red.row_vecs()
        .into_iter()
        .map(|data| Matrix {
            rows: n,
            cols: n,
            data,
        })
        .collect()
}

impl<F: Field> Matrix<F> {
    pub fn flatten(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data length");
        Matrix { rows, cols, data }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn is_scalar_multiple_of_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self[(r, c)] == self[(0, 0)]
                    } else {
                        self[(r, c)].is_zero()
                    }
                })
            })
    }
}

impl<F: Field> Matrix<F> {
    pub fn one_hot(rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(r, c)] = F::one();
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rref_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, p) = a.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, m(&[&[1, 0, 1], &[0, 1, 1]]));
        let ns = a.nullspace();
        assert_eq!(ns, vec![vec![int(-1), int(-1), int(1)]]);
        assert!(is_zero_vec(&a.mul_vec(&ns[0])));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.solve(&[int(3), int(2)]), Some(vec![int(1), int(1)]));
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[int(0), int(1)]).is_none());
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn charpoly_of_rotation() {
        let r = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(r.charpoly(), vec![int(1), int(0), int(1)]);
        let d = m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 0]]);
        assert_eq!(d.charpoly(), vec![int(0), int(6), int(-5), int(1)]);
    }

    #[test]
    fn nilpotent_products() {
        let e = m(&[&[0, 1], &[0, 0]]);
        let f = m(&[&[0, 0], &[1, 0]]);
        assert!(products_vanish(std::slice::from_ref(&e), 2));
        assert!(!products_vanish(&[e, f], 2));
    }
}
