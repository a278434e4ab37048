//! Eigenbases for a maximal torus of the derivation algebra.
//!
//! A frame is a basis in which a torus `T` of derivations acts diagonally.
//! The frame is certified when `T` is provably maximal: the derivations
//! preserving every `T`-weight space are `T ⊕ N` with `N` simultaneously
//! strictly triangular, so every semisimple derivation commuting with `T`
//! already lies in `T`. Any semisimple derivation is then conjugate under
//! automorphisms into `T`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::derivations::derivations_supported;
use crate::matrix::Matrix;
use crate::scalar::{Field, Gauss, Scalar};
use crate::series::{associated_graded, is_nilpotent};
use crate::table::StructureTable;

#[derive(Clone, Debug)]
pub struct Frame {
    /// The algebra in frame coordinates.
    pub table: StructureTable<Gauss>,
    /// Columns are frame vectors in the input algebra's coordinates.
    pub basis: Matrix<Gauss>,
    /// Diagonals of a basis of the torus.
    pub torus: Vec<Vec<Gauss>>,
    /// Weight-space label of each frame index (0-based positions).
    pub blocks: Vec<usize>,
    pub certified: bool,
    /// Eigenspace splittings performed to enlarge the torus.
    pub refinements: usize,
    /// Whether a splitting needed non-real eigenvalues.
    pub uses_gaussian: bool,
}

impl Frame {
    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    /// Frame indices grouped by torus character.
    pub fn block_members(&self) -> Vec<Vec<usize>> {
        let count = self.blocks.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (i, &b) in self.blocks.iter().enumerate() {
            out[b].push(i);
        }
        out
    }
}

fn diagonal_torus(table: &StructureTable<Gauss>) -> Vec<Vec<Gauss>> {
    let n = table.dim();
    derivations_supported(table, |r, c| r == c)
        .into_iter()
        .map(|m| (0..n).map(|i| m[(i, i)].clone()).collect())
        .collect()
}

fn character_blocks(torus: &[Vec<Gauss>], n: usize) -> Vec<usize> {
    let mut ids: HashMap<Vec<Gauss>, usize> = HashMap::new();
    (0..n)
        .map(|i| {
            let ch: Vec<Gauss> = torus.iter().map(|t| t[i].clone()).collect();
            let next = ids.len();
            *ids.entry(ch).or_insert(next)
        })
        .collect()
}

fn is_acyclic(n: usize, ms: &[Matrix<Gauss>]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for m in ms {
        for r in 0..n {
            for c in 0..n {
                if !m[(r, c)].is_zero() && !adj[c].contains(&r) {
                    adj[c].push(r);
                }
            }
        }
    }
    // Kahn's algorithm
    let mut indeg = vec![0usize; n];
    for outs in &adj {
        for &r in outs {
            indeg[r] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &r in &adj[v] {
            indeg[r] -= 1;
            if indeg[r] == 0 {
                stack.push(r);
            }
        }
    }
    seen == n
}

/// `M - (tr M / d) I` is nilpotent.
fn has_single_eigenvalue(m: &Matrix<Gauss>) -> bool {
    let d = m.rows();
    if d <= 1 {
        return true;
    }
    let shift = m.trace() / Gauss::from_int(d as i64);
    let mut s = m.clone();
    for i in 0..d {
        s[(i, i)] = s[(i, i)].clone() - shift.clone();
    }
    s.is_nilpotent()
}

fn eval(p: &[Gauss], x: &Gauss) -> Gauss {
    p.iter()
        .rev()
        .fold(Gauss::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Divides a monic polynomial by `t - r`, assuming `r` is a root.
fn deflate(p: &[Gauss], r: &Gauss) -> Vec<Gauss> {
    let d = p.len() - 1;
    let mut q = vec![Gauss::zero(); d];
    let mut carry = Gauss::zero();
    for i in (0..d).rev() {
        carry = p[i + 1].clone() + carry * r.clone();
        q[i] = carry.clone();
    }
    q
}

fn divisors(n: &num_bigint::BigInt) -> Option<Vec<num_bigint::BigInt>> {
    use num_bigint::BigInt;
    use num_traits::{Signed, ToPrimitive};
    let n = n.abs().to_u64()?;
    if n > 1_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Some(out)
}

fn rational_root(p: &[Gauss]) -> Option<Gauss> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let q: Vec<Scalar> = p.iter().map(Field::to_rational).collect::<Option<_>>()?;
    let lcm = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q
        .iter()
        .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    if ints[0].is_zero() {
        return Some(Gauss::zero());
    }
    let lead = ints.last().expect("nonconstant");
    for num in divisors(&ints[0])? {
        for den in divisors(lead)? {
            for sign in [1, -1] {
                let cand = Gauss::from_rational(Scalar::new(num.clone() * sign, den.clone()));
                if eval(p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Some root of a monic polynomial inside ℚ(i), found by exact methods
/// where they apply and by a small candidate search otherwise.
fn find_root(p: &[Gauss]) -> Option<Gauss> {
    let d = p.len() - 1;
    match d {
        0 => None,
        1 => Some(-p[0].clone()),
        2 => {
            let (b, c) = (p[1].clone(), p[0].clone());
            let disc = b.clone() * b.clone() - Gauss::from_int(4) * c;
            let s = disc.sqrt_exact()?;
            Some((s - b) / Gauss::from_int(2))
        }
        _ => rational_root(p).or_else(|| {
            for a in -8..=8 {
                for b in -8..=8 {
                    let cand = Gauss::new(
                        Scalar::new(a.into(), 2.into()),
                        Scalar::new(b.into(), 2.into()),
                    );
                    if eval(p, &cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
            None
        }),
    }
}

/// Distinct eigenvalues of `m`, if all of them lie in ℚ(i).
fn eigenvalues(m: &Matrix<Gauss>) -> Option<Vec<Gauss>> {
    let mut p = m.charpoly();
    let mut roots: Vec<Gauss> = Vec::new();
    while p.len() > 1 {
        let r = find_root(&p)?;
        p = deflate(&p, &r);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    Some(roots)
}

/// Basis of the block made of generalized eigenvectors of `m`.
fn eigen_decomposition(m: &Matrix<Gauss>) -> Option<(Vec<Vec<Gauss>>, bool)> {
    let d = m.rows();
    let roots = eigenvalues(m)?;
    let gaussian = roots.iter().any(|r| !r.im.is_zero());
    let mut vectors = Vec::new();
    for r in roots {
        let mut shifted = m.clone();
        for i in 0..d {
            shifted[(i, i)] = shifted[(i, i)].clone() - r.clone();
        }
        vectors.extend(shifted.pow(d as u32).nullspace());
    }
    (vectors.len() == d).then_some((vectors, gaussian))
}

fn candidates(cent: &[Matrix<Gauss>]) -> Vec<Matrix<Gauss>> {
    let mut out: Vec<Matrix<Gauss>> = cent.to_vec();
    let two = Gauss::from_int(2);
    for i in 0..cent.len() {
        for j in i + 1..cent.len() {
            out.push(cent[i].add(&cent[j]));
            out.push(cent[i].sub(&cent[j]));
            out.push(cent[i].add(&cent[j].scale(&two)));
        }
    }
    out
}

/// Starting basis: the associated graded basis when the algebra is nilpotent.
fn starting_basis(table: &StructureTable<Scalar>) -> Matrix<Scalar> {
    if is_nilpotent(table) {
        if let Ok(g) = associated_graded(table) {
            return g.basis;
        }
    }
    Matrix::identity(table.dim())
}

pub fn build_frame(table: &StructureTable<Scalar>) -> Frame {
    let n = table.dim();
    let start = starting_basis(table);
    let lift = |x: &Scalar| Gauss::from_rational(x.clone());
    let mut basis = start.map(lift);
    let mut tab = table
        .change_basis(&start)
        .expect("starting basis is invertible")
        .lift(lift);
    let mut refinements = 0;
    let mut uses_gaussian = false;
    loop {
        let torus = diagonal_torus(&tab);
        let blocks = character_blocks(&torus, n);
        let same = |r: usize, c: usize| blocks[r] == blocks[c];
        let cent = derivations_supported(&tab, same);
        let nil = derivations_supported(&tab, |r, c| r != c && same(r, c));
        let (torus_out, blocks_out) = (torus.clone(), blocks.clone());
        let frame =
            move |certified: bool, tab: StructureTable<Gauss>, basis: Matrix<Gauss>| Frame {
                table: tab,
                basis,
                torus: torus_out,
                blocks: blocks_out,
                certified,
                refinements,
                uses_gaussian,
            };
        if cent.len() == torus.len() + nil.len() && is_acyclic(n, &nil) {
            return frame(true, tab, basis);
        }
        if refinements > n {
            return frame(false, tab, basis);
        }
        let members: Vec<Vec<usize>> = {
            let count = blocks.iter().max().map_or(0, |m| m + 1);
            let mut out = vec![Vec::new(); count];
            for (i, &b) in blocks.iter().enumerate() {
                out[b].push(i);
            }
            out
        };
        let splitter = candidates(&cent).into_iter().find(|x| {
            members
                .iter()
                .any(|idx| !has_single_eigenvalue(&x.select(idx, idx)))
        });
        let Some(x) = splitter else {
            return frame(false, tab, basis);
        };
        let mut p = Matrix::zeros(n, n);
        let mut col = 0;
        let mut ok = true;
        for idx in &members {
            let Some((vecs, gaussian)) = eigen_decomposition(&x.select(idx, idx)) else {
                ok = false;
                break;
            };
            uses_gaussian |= gaussian;
            for v in vecs {
                for (k, &i) in idx.iter().enumerate() {
                    p[(i, col)] = v[k].clone();
                }
                col += 1;
            }
        }
        if !ok {
            return frame(false, tab, basis);
        }
        tab = tab.change_basis(&p).expect("eigenbasis is invertible");
        basis = basis.mul(&p);
        refinements += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn g(a: i64, b: i64) -> Gauss {
        Gauss::new(int(a), int(b))
    }

    #[test]
    fn roots_in_gaussian_rationals() {
        // t² + 1
        let r = find_root(&[g(1, 0), g(0, 0), g(1, 0)]).unwrap();
        assert_eq!(r.clone() * r, g(-1, 0));
        // (t - 2)(t² + 4) = t³ - 2t² + 4t - 8
        let p = [g(-8, 0), g(4, 0), g(-2, 0), g(1, 0)];
        let roots = eigenvalues(&Matrix::from_rows(
            vec![
                vec![g(2, 0), g(0, 0), g(0, 0)],
                vec![g(0, 0), g(0, 0), g(-4, 0)],
                vec![g(0, 0), g(1, 0), g(0, 0)],
            ],
            3,
        ))
        .unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| eval(&p, r).is_zero()));
        // t² - 2 has no root in ℚ(i)
        assert!(find_root(&[g(-2, 0), g(0, 0), g(1, 0)]).is_none());
    }

    #[test]
    fn heisenberg_frame_is_certified() {
        let t = StructureTable::from_brackets(3, [(2, 3, [(1, int(1))])]).unwrap();
        let f = build_frame(&t);
        assert!(f.certified);
        assert_eq!(f.torus.len(), 2);
    }

    #[test]
    fn abelian_frame_is_certified() {
        let f = build_frame(&StructureTable::abelian(3));
        assert!(f.certified);
        assert_eq!(f.torus.len(), 3);
    }
}
