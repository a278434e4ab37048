//! Weight screen: tests whether a torus element realises an irrep assignment.
//!
//! A Levi factor of rank one maps its Cartan element to a semisimple
//! derivation with integer eigenvalues, conjugate into the frame torus.
//! Such an element is fixed by its weights on generators. Each candidate is
//! tested against the layer multisets and the rank symmetry of invariant
//! elements, and finally by solving for the raising and lowering derivations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::frame::Frame;
use super::irreps::IrrepAssignment;
use crate::derivations::derivations_supported;
use crate::matrix::Matrix;
use crate::poly::{groebner, Groebner, Mono, Poly};
use crate::scalar::{Field, Gauss};
use crate::series::lower_central_terms;
use crate::subspace::Subspace;

/// Limits shared by every screen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightLimits {
    pub max_distributions: usize,
    pub groebner_budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightOutcome {
    /// Some torus element with these frame weights extends to an sl(2) of derivations.
    Consistent {
        weights: Vec<i64>,
    },
    Contradiction {
        witness: String,
    },
    Undecided {
        reason: String,
    },
}

/// Distinct orderings of `values` in lexicographic order.
struct Permutations {
    current: Option<Vec<i64>>,
}

impl Permutations {
    fn new(mut values: Vec<i64>) -> Self {
        values.sort_unstable();
        Permutations {
            current: Some(values),
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.take()?;
        let mut v = out.clone();
        if let Some(i) = (0..v.len().saturating_sub(1))
            .rev()
            .find(|&i| v[i] < v[i + 1])
        {
            let j = (i + 1..v.len())
                .rev()
                .find(|&j| v[j] > v[i])
                .expect("successor exists");
            v.swap(i, j);
            v[i + 1..].reverse();
            self.current = Some(v);
        }
        Some(out)
    }
}

/// Number of distinct orderings, saturating.
fn multinomial(values: &[i64]) -> u128 {
    let mut counts: BTreeMap<i64, u128> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_default() += 1;
    }
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for (_, c) in counts {
        for i in 1..=c {
            placed += 1;
            total = total.saturating_mul(placed) / i;
        }
    }
    total
}

/// Frame indices whose classes form a basis of `n / n²`.
fn generator_indices(frame: &Frame, n2: &Subspace<Gauss>) -> Vec<usize> {
    let n = frame.dim();
    let mut span = n2.clone();
    let mut out = Vec::new();
    for i in 1..=n {
        let e = Subspace::coordinate(n, &[i]);
        if !span.contains(&e) {
            span = span.sum(&e);
            out.push(i - 1);
        }
    }
    out
}

/// Extends generator weights additively along nonzero structure constants.
fn propagate(frame: &Frame, gens: &[usize], values: &[i64]) -> Result<Vec<i64>, String> {
    let n = frame.dim();
    let mut weight: Vec<Option<i64>> = vec![None; n];
    let mut reason: Vec<Option<(usize, usize)>> = vec![None; n];
    for (&g, &v) in gens.iter().zip(values) {
        weight[g] = Some(v);
    }
    let describe = |l: usize, r: Option<(usize, usize)>, w: &[Option<i64>]| match r {
        None => format!("f{} has weight {}", l + 1, w[l].unwrap_or_default()),
        Some((j, k)) => format!(
            "f{} in [f{}, f{}] has weight {} + {} = {}",
            l + 1,
            j + 1,
            k + 1,
            w[j].unwrap_or_default(),
            w[k].unwrap_or_default(),
            w[l].unwrap_or_default()
        ),
    };
    loop {
        let mut changed = false;
        for ((j0, k0), cs) in frame.table.entries() {
            let (j, k) = (j0 - 1, k0 - 1);
            let (Some(wj), Some(wk)) = (weight[j], weight[k]) else {
                continue;
            };
            for (l0, c) in cs {
                let l = l0 - 1;
                if c.is_zero() {
                    continue;
                }
                match weight[l] {
                    None => {
                        weight[l] = Some(wj + wk);
                        reason[l] = Some((j, k));
                        changed = true;
                    }
                    Some(wl) if wl != wj + wk => {
                        let mut witness = describe(l, reason[l], &weight);
                        let _ = write!(
                            witness,
                            ", but f{} in [f{}, f{}] would need weight {wj} + {wk} = {}",
                            l + 1,
                            j + 1,
                            k + 1,
                            wj + wk
                        );
                        return Err(witness);
                    }
                    Some(_) => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    // generators span n modulo n², so every index is reached
    Ok(weight
        .into_iter()
        .map(|w| w.expect("generators reach every frame vector"))
        .collect())
}

fn multiset(values: impl IntoIterator<Item = i64>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for v in values {
        *out.entry(v).or_default() += 1;
    }
    out
}

fn weight_space(weights: &[i64], lambda: i64) -> Vec<usize> {
    (0..weights.len())
        .filter(|&i| weights[i] == lambda)
        .map(|i| i + 1)
        .collect()
}

/// Weight multiset of every layer `n^k / n^{k+1}` against the assignment.
fn check_layers(
    terms: &[Subspace<Gauss>],
    weights: &[i64],
    assignment: &IrrepAssignment,
) -> Result<(), String> {
    let n = weights.len();
    let distinct: Vec<i64> = multiset(weights.iter().copied()).into_keys().collect();
    for k in 1..terms.len() {
        let expected = multiset(assignment.layer_weights(k));
        for &lambda in &distinct {
            let e = Subspace::coordinate(n, &weight_space(weights, lambda));
            let found = terms[k - 1].intersect(&e).dim() - terms[k].intersect(&e).dim();
            let want = expected.get(&lambda).copied().unwrap_or(0);
            if found != want {
                return Err(format!(
                    "layer {k} carries weight {lambda} with multiplicity {found}, the assignment needs {want}"
                ));
            }
        }
    }
    Ok(())
}

/// Invariant elements act by module maps, so their ranks on weight spaces
/// are symmetric and do not grow towards the extreme weights.
fn check_invariant_ranks(
    frame: &Frame,
    weights: &[i64],
    assignment: &IrrepAssignment,
) -> Result<(), String> {
    let zero = weight_space(weights, 0);
    if assignment.trivial_count() != zero.len() || zero.is_empty() {
        return Ok(());
    }
    let n = frame.dim();
    let mut probes: Vec<(String, Vec<Gauss>)> = zero
        .iter()
        .map(|&i| (format!("f{i}"), crate::matrix::unit(n, i - 1)))
        .collect();
    if zero.len() > 1 {
        let mut sum = vec![Gauss::zero(); n];
        for &i in &zero {
            sum[i - 1] = Gauss::one();
        }
        let label = zero
            .iter()
            .map(|i| format!("f{i}"))
            .collect::<Vec<_>>()
            .join(" + ");
        probes.push((label, sum));
    }
    let top = weights.iter().copied().max().unwrap_or(0);
    for (label, y) in probes {
        let ad = frame.table.ad(&y);
        let rank = |lambda: i64| {
            let idx: Vec<usize> = weight_space(weights, lambda)
                .iter()
                .map(|i| i - 1)
                .collect();
            if idx.is_empty() {
                0
            } else {
                ad.select(&idx, &idx).rank()
            }
        };
        for lambda in 0..=top {
            let (up, down) = (rank(lambda), rank(-lambda));
            if up != down {
                return Err(format!(
                    "ad({label}) has rank {up} on weight {lambda} but rank {down} on weight {}",
                    -lambda
                ));
            }
            let next = rank(lambda + 2);
            if next > up {
                return Err(format!(
                    "ad({label}) has rank {up} on weight {lambda} but rank {next} on weight {}",
                    lambda + 2
                ));
            }
        }
    }
    Ok(())
}

pub(crate) enum Triple {
    Exists,
    Impossible(String),
    OverBudget,
}

/// Solves `[E, F] = h` with `E` raising and `F` lowering the weights by 2.
pub(crate) fn sl2_triple(frame: &Frame, weights: &[i64], budget: usize) -> Triple {
    let h = Matrix::diagonal(
        &weights
            .iter()
            .map(|&w| Gauss::from_int(w))
            .collect::<Vec<_>>(),
    );
    let render = || {
        weights
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    let raise = derivations_supported(&frame.table, |r, c| weights[r] - weights[c] == 2);
    let lower = derivations_supported(&frame.table, |r, c| weights[r] - weights[c] == -2);
    if raise.is_empty() || lower.is_empty() {
        return Triple::Impossible(format!(
            "no derivation shifts the weights ({}) by 2",
            render()
        ));
    }
    let (p, q) = (raise.len(), lower.len());
    let n = frame.dim();
    let brackets: Vec<Matrix<Gauss>> = raise
        .iter()
        .flat_map(|e| lower.iter().map(move |f| e.commutator(f)))
        .collect();
    let mut rows = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let mut row: Vec<Gauss> = brackets.iter().map(|b| b[(r, c)].clone()).collect();
            row.push(-h[(r, c)].clone());
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let (reduced, pivots) = Matrix::from_rows(rows, p * q + 1).rref();
    if pivots.last() == Some(&(p * q)) {
        return Triple::Impossible(format!(
            "h = diag({}) is not a bracket of weight ±2 derivations",
            render()
        ));
    }
    let nvars = p + q;
    let polys: Vec<Poly<Gauss>> = reduced
        .row_vecs()
        .into_iter()
        .map(|row| {
            let mut poly = Poly::constant(row[p * q].clone(), nvars);
            for a in 0..p {
                for b in 0..q {
                    let c = &row[a * q + b];
                    if !c.is_zero() {
                        let m = Mono::var(a, nvars).mul(&Mono::var(p + b, nvars));
                        poly = poly.add(&Poly::term(m, c.clone(), nvars));
                    }
                }
            }
            poly
        })
        .collect();
    match groebner(polys, budget) {
        Groebner::Unit => Triple::Impossible(format!(
            "no derivations E, F of weight ±2 satisfy [E, F] = h for h = diag({})",
            render()
        )),
        Groebner::Basis(_) => Triple::Exists,
        Groebner::OverBudget => Triple::OverBudget,
    }
}

/// Frame-level data reused across assignments.
pub(crate) struct WeightContext<'a> {
    frame: &'a Frame,
    terms: Vec<Subspace<Gauss>>,
    gens: Vec<usize>,
}

impl<'a> WeightContext<'a> {
    pub(crate) fn new(frame: &'a Frame) -> Option<Self> {
        let terms = lower_central_terms(&frame.table).ok()?;
        let n2 = terms
            .get(1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(frame.dim()));
        let gens = generator_indices(frame, &n2);
        Some(WeightContext { frame, terms, gens })
    }
}

/// Screens one irrep assignment against every weight distribution on the generators.
pub(crate) fn screen_assignment(
    ctx: &WeightContext<'_>,
    assignment: &IrrepAssignment,
    limits: WeightLimits,
) -> WeightOutcome {
    let w1 = assignment.layer_weights(1);
    if w1.len() != ctx.gens.len() {
        return WeightOutcome::Contradiction {
            witness: format!(
                "n/n² has dimension {}, the assignment has {} weights",
                ctx.gens.len(),
                w1.len()
            ),
        };
    }
    let count = multinomial(&w1);
    if count > limits.max_distributions as u128 {
        return WeightOutcome::Undecided {
            reason: format!(
                "{count} weight distributions exceed the limit of {}",
                limits.max_distributions
            ),
        };
    }
    let mut first_witness: Option<String> = None;
    let mut undecided: Option<String> = None;
    for values in Permutations::new(w1) {
        let outcome = screen_distribution(ctx, assignment, &values, limits.groebner_budget);
        match outcome {
            WeightOutcome::Consistent { .. } => return outcome,
            WeightOutcome::Contradiction { witness } => {
                first_witness.get_or_insert(witness);
            }
            WeightOutcome::Undecided { reason } => {
                undecided.get_or_insert(reason);
            }
        }
    }
    if let Some(reason) = undecided {
        return WeightOutcome::Undecided { reason };
    }
    if !ctx.frame.certified {
        return WeightOutcome::Undecided {
            reason: "the derivation torus could not be certified maximal".into(),
        };
    }
    let witness = first_witness.unwrap_or_default();
    let witness = if count > 1 {
        format!("all {count} weight distributions fail; first: {witness}")
    } else {
        witness
    };
    WeightOutcome::Contradiction { witness }
}

fn screen_distribution(
    ctx: &WeightContext<'_>,
    assignment: &IrrepAssignment,
    values: &[i64],
    budget: usize,
) -> WeightOutcome {
    let contradiction = |witness| WeightOutcome::Contradiction { witness };
    let weights = match propagate(ctx.frame, &ctx.gens, values) {
        Ok(w) => w,
        Err(w) => return contradiction(w),
    };
    if let Err(w) = check_layers(&ctx.terms, &weights, assignment) {
        return contradiction(w);
    }
    if let Err(w) = check_invariant_ranks(ctx.frame, &weights, assignment) {
        return contradiction(w);
    }
    match sl2_triple(ctx.frame, &weights, budget) {
        Triple::Exists => WeightOutcome::Consistent { weights },
        Triple::Impossible(w) => contradiction(w),
        Triple::OverBudget => WeightOutcome::Undecided {
            reason: "the sl2-triple system exceeded the Gröbner budget".into(),
        },
    }
}

/// Screens `assignment` on the algebra described by `frame`.
pub fn weight_screen(
    frame: &Frame,
    assignment: &IrrepAssignment,
    limits: WeightLimits,
) -> WeightOutcome {
    match WeightContext::new(frame) {
        Some(ctx) => screen_assignment(&ctx, assignment, limits),
        None => WeightOutcome::Undecided {
            reason: "the algebra is not nilpotent".into(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_permutations() {
        let all: Vec<Vec<i64>> = Permutations::new(vec![1, -1, 1]).collect();
        assert_eq!(all, vec![vec![-1, 1, 1], vec![1, -1, 1], vec![1, 1, -1]]);
        assert_eq!(multinomial(&[1, -1, 1]), 3);
        assert_eq!(multinomial(&[2, 0, -2, 1, -1]), 120);
    }
}
