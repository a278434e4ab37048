//! Lie algebras given by structure constants on a 1-based basis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{axpy, is_zero_vec, unit, Matrix};
use crate::scalar::{Field, Scalar};

/// Sparse table of `[e_j, e_k] = Σ N_jk^l e_l`, stored only for `j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable<F: Field = Scalar> {
    dim: usize,
    entries: BTreeMap<(usize, usize), Vec<(usize, F)>>,
}

/// One Jacobi failure: the triple `j < k < l` and its defect vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation<F: Field = Scalar> {
    pub triple: (usize, usize, usize),
    pub defect: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation<F: Field = Scalar> {
    Ok,
    Violations(Vec<JacobiViolation<F>>),
}

impl<F: Field> Validation<F> {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Ok)
    }
}

impl<F: Field> StructureTable<F> {
    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        StructureTable {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a table from `(j, k, [(l, c), ...])` triples meaning `[e_j, e_k] = Σ c e_l`.
    pub fn from_brackets<I, C>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, C)>,
        C: IntoIterator<Item = (usize, F)>,
    {
        let mut t = Self::abelian(dim);
        for (j, k, coeffs) in brackets {
            t.set_bracket(j, k, coeffs)?;
        }
        Ok(t)
    }

    /// Sets `[e_j, e_k]`, replacing any earlier value. Order of `j, k` is free.
    pub fn set_bracket(
        &mut self,
        j: usize,
        k: usize,
        coeffs: impl IntoIterator<Item = (usize, F)>,
    ) -> Result<()> {
        let dim = self.dim;
        let in_range = |i: usize| (1..=dim).contains(&i);
        if !in_range(j) || !in_range(k) {
            return Err(Error::Malformed(format!(
                "bracket index out of range [1, {dim}]: ({j}, {k})"
            )));
        }
        let mut dense = vec![F::zero(); dim];
        for (l, c) in coeffs {
            if !in_range(l) {
                return Err(Error::Malformed(format!(
                    "coefficient index {l} out of range [1, {dim}]"
                )));
            }
            dense[l - 1] = dense[l - 1].clone() + c;
        }
        if j == k {
            if is_zero_vec(&dense) {
                return Ok(());
            }
            return Err(Error::Malformed(format!("[e{j}, e{j}] must vanish")));
        }
        let (a, b, v) = if j < k {
            (j, k, dense)
        } else {
            (k, j, dense.into_iter().map(|x| -x).collect())
        };
        let sparse: Vec<(usize, F)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i + 1, c))
            .collect();
        if sparse.is_empty() {
            self.entries.remove(&(a, b));
        } else {
            self.entries.insert((a, b), sparse);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored brackets `((j, k), [(l, c)])` with `j < k`, in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, F)>)> {
        self.entries.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.entries.is_empty()
    }

    /// `N_jk^l` with antisymmetry applied.
    pub fn coeff(&self, j: usize, k: usize, l: usize) -> F {
        let (a, b, sign) = if j < k { (j, k, true) } else { (k, j, false) };
        let c = self
            .entries
            .get(&(a, b))
            .and_then(|v| v.iter().find(|(i, _)| *i == l))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero);
        if sign {
            c
        } else {
            -c
        }
    }

    /// `[e_j, e_k]` as a dense 0-based coordinate vector.
    pub fn bracket_basis(&self, j: usize, k: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        if j == k {
            return v;
        }
        let (a, b, neg) = if j < k { (j, k, false) } else { (k, j, true) };
        if let Some(cs) = self.entries.get(&(a, b)) {
            for (l, c) in cs {
                v[l - 1] = if neg { -c.clone() } else { c.clone() };
            }
        }
        v
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for ((j, k), cs) in &self.entries {
            let (xj, xk, yj, yk) = (&x[j - 1], &x[k - 1], &y[j - 1], &y[k - 1]);
            let s = xj.clone() * yk.clone() - xk.clone() * yj.clone();
            if s.is_zero() {
                continue;
            }
            for (l, c) in cs {
                out[l - 1] = out[l - 1].clone() + s.clone() * c.clone();
            }
        }
        out
    }

    /// Matrix of `ad(x)`; column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim)
            .map(|j| self.bracket(x, &unit(self.dim, j)))
            .collect();
        Matrix::from_cols(&cols, self.dim)
    }

    /// Rewrites the table in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                found: p.cols(),
            });
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
        let basis: Vec<Vec<F>> = (0..n).map(|c| p.col(c)).collect();
        let mut t = Self::abelian(n);
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket(&basis[a], &basis[b]);
                if is_zero_vec(&br) {
                    continue;
                }
                let coords = inv.mul_vec(&br);
                t.set_bracket(
                    a + 1,
                    b + 1,
                    coords.into_iter().enumerate().map(|(i, c)| (i + 1, c)),
                )?;
            }
        }
        Ok(t)
    }

    pub fn lift<G: Field>(&self, f: impl Fn(&F) -> G) -> StructureTable<G> {
        StructureTable {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&key, cs)| (key, cs.iter().map(|(l, c)| (*l, f(c))).collect()))
                .collect(),
        }
    }

    /// Expands `Σ_cyc [e_j, [e_k, e_l]]` term by term.
    pub fn jacobi_defect(&self, j: usize, k: usize, l: usize) -> Vec<F> {
        let n = self.dim;
        let e = |i: usize| unit::<F>(n, i - 1);
        let mut total = vec![F::zero(); n];
        for (a, b, c) in [(j, k, l), (k, l, j), (l, j, k)] {
            let inner = self.bracket_basis(b, c);
            let term = self.bracket(&e(a), &inner);
            axpy(&mut total, &F::one(), &term);
        }
        total
    }
}

/// Checks the Jacobi identity on every triple `j < k < l`.
pub fn validate_lie_algebra<F: Field>(table: &StructureTable<F>) -> Validation<F> {
    let n = table.dim();
    let mut bad = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            for l in k + 1..=n {
                let defect = table.jacobi_defect(j, k, l);
                if !is_zero_vec(&defect) {
                    bad.push(JacobiViolation {
                        triple: (j, k, l),
                        defect,
                    });
                }
            }
        }
    }
    if bad.is_empty() {
        Validation::Ok
    } else {
        Validation::Violations(bad)
    }
}

/// Renders a coordinate vector as `e1 - 2 e3`.
pub fn render_vector<F: Field>(v: &[F]) -> String {
    render_vector_with(v, "e")
}

pub fn render_vector_with<F: Field>(v: &[F], symbol: &str) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.render();
        let is_compound = s[1..].contains(['+', '-']);
        let (sign, mag) = match s.strip_prefix('-') {
            Some(rest) if !is_compound => ("-", rest.to_string()),
            _ => ("+", s.clone()),
        };
        let coef = if mag == "1" {
            String::new()
        } else if is_compound {
            format!("({mag}) ")
        } else {
            format!("{mag} ")
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        out.push_str(&format!("{coef}{symbol}{}", i + 1));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
