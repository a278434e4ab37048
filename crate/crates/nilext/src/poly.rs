//! Sparse multivariate polynomials and Buchberger's algorithm, used to decide
//! whether small polynomial systems have a common zero over ℂ.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::matrix::Matrix;
use crate::scalar::Field;

/// Exponent vector ordered by graded reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(Vec<u16>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Self) -> Self {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn lcm(&self, other: &Self) -> Self {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Mono, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F, nvars: usize) -> Self {
        Self::term(Mono::one(nvars), c, nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Self::term(Mono::var(i, nvars), F::one(), nvars)
    }

    pub fn term(m: Mono, c: F, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constants generate the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(Mono::is_one)
    }

    pub fn lead(&self) -> Option<(&Mono, &F)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    fn mul_term(&self, m: &Mono, c: &F) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, x)| (a.mul(m), x.clone() * c.clone()))
                .collect(),
        }
    }

    fn monic(&self) -> Self {
        match self.lead() {
            Some((_, c)) => self.scale(&(F::one() / c.clone())),
            None => self.clone(),
        }
    }

    /// Value at a point.
    pub fn eval(&self, point: &[F]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (m, c)| {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v = v * x.clone();
                }
            }
            acc + v
        })
    }
}

/// Fully reduces `f` by `basis` (leading coefficients are 1).
fn reduce<F: Field>(f: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let mut p = f.clone();
    let mut rem = Poly::zero(f.nvars);
    while let Some((m, c)) = p.lead().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis
            .iter()
            .find(|g| g.lead().is_some_and(|(lm, _)| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.lead().expect("nonzero divisor");
                let q = m.div(lm);
                p = p.sub(&g.mul_term(&q, &(c / lc.clone())));
            }
            None => {
                p.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn s_poly<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let (mf, cf) = f.lead().expect("nonzero");
    let (mg, cg) = g.lead().expect("nonzero");
    let l = mf.lcm(mg);
    f.mul_term(&l.div(mf), &(F::one() / cf.clone()))
        .sub(&g.mul_term(&l.div(mg), &(F::one() / cg.clone())))
}

/// Result of a bounded Gröbner-basis computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Groebner<F: Field> {
    Basis(Vec<Poly<F>>),
    /// The ideal contains 1: no common zero over ℂ.
    Unit,
    /// More than the allowed number of S-pairs were reduced.
    OverBudget,
}

/// Buchberger's algorithm with the coprime-leading-monomial criterion.
pub fn groebner<F: Field>(polys: Vec<Poly<F>>, budget: usize) -> Groebner<F> {
    let mut basis: Vec<Poly<F>> = Vec::new();
    for p in polys {
        let r = reduce(&p, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Groebner::Unit;
        }
        basis.push(r.monic());
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut spent = 0;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| pair_lcm(&basis, **a).cmp(&pair_lcm(&basis, **b)))
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        let (li, lj) = (
            basis[i].lead().expect("nonzero").0,
            basis[j].lead().expect("nonzero").0,
        );
        if li.coprime(lj) {
            continue;
        }
        spent += 1;
        if spent > budget {
            return Groebner::OverBudget;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Groebner::Unit;
        }
        basis.push(r.monic());
        let new = basis.len() - 1;
        for k in 0..new {
            pairs.push((k, new));
        }
    }
    Groebner::Basis(interreduce(basis))
}

fn pair_lcm<F: Field>(basis: &[Poly<F>], (i, j): (usize, usize)) -> Mono {
    basis[i]
        .lead()
        .expect("nonzero")
        .0
        .lcm(basis[j].lead().expect("nonzero").0)
}

fn interreduce<F: Field>(mut basis: Vec<Poly<F>>) -> Vec<Poly<F>> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Poly<F>> = Vec::new();
    basis.sort_by(|a, b| {
        a.lead()
            .expect("nonzero")
            .0
            .cmp(b.lead().expect("nonzero").0)
    });
    for p in basis {
        let lm = p.lead().expect("nonzero").0.clone();
        if !keep
            .iter()
            .any(|g| g.lead().expect("nonzero").0.divides(&lm))
        {
            keep.push(p);
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly<F>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, _) = keep[i].lead().expect("nonzero");
        let tail = {
            let mut t = keep[i].clone();
            t.terms.remove(&lm.clone());
            reduce(&t, &others)
        };
        out.push(Poly::term(lm.clone(), F::one(), keep[i].nvars).add(&tail));
    }
    out
}

/// Whether the system has a common zero over the algebraic closure;
/// `None` when the budget runs out.
pub fn is_consistent<F: Field>(polys: Vec<Poly<F>>, budget: usize) -> Option<bool> {
    match groebner(polys, budget) {
        Groebner::Unit => Some(false),
        Groebner::Basis(_) => Some(true),
        Groebner::OverBudget => None,
    }
}

/// Square matrix with polynomial entries.
#[derive(Clone, Debug)]
pub struct PolyMatrix<F: Field> {
    n: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn constant(m: &Matrix<F>, nvars: usize) -> Self {
        let n = m.rows();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(Poly::constant(m[(r, c)].clone(), nvars));
            }
        }
        PolyMatrix { n, entries }
    }

    /// `x_var · m`.
    pub fn linear(m: &Matrix<F>, var: usize, nvars: usize) -> Self {
        let n = m.rows();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(Poly::term(Mono::var(var, nvars), m[(r, c)].clone(), nvars));
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let nvars = self.entries.first().map_or(0, Poly::nvars);
        let mut entries = vec![Poly::zero(nvars); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.entries[k * n + c];
                    if !b.is_zero() {
                        entries[r * n + c] = entries[r * n + c].add(&a.mul(b));
                    }
                }
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn trace(&self) -> Poly<F> {
        let nvars = self.entries.first().map_or(0, Poly::nvars);
        (0..self.n).fold(Poly::zero(nvars), |acc, i| {
            acc.add(&self.entries[i * self.n + i])
        })
    }
}
