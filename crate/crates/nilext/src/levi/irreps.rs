//! sl(2) tensor decompositions and layer-by-layer irrep assignments.

use std::collections::BTreeMap;

use serde::Serialize;

use super::Factor;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::series::GradedAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorPart {
    Full,
    Antisymmetric,
}

/// Irreducible dimensions in `a ⊗ b` or `Λ²a`, largest first.
pub fn sl2_tensor_decomp(a: usize, b: usize, part: TensorPart) -> Result<Vec<usize>> {
    if a == 0 || b == 0 {
        return Err(Error::Invalid("irrep dimensions are positive".into()));
    }
    match part {
        TensorPart::Full => {
            let lo = a.abs_diff(b) + 1;
            Ok((lo..=a + b - 1).rev().step_by(2).collect())
        }
        TensorPart::Antisymmetric => {
            if a != b {
                return Err(Error::AntisymmetricMismatch(a, b));
            }
            // 2a-3, 2a-7, ... ≥ 1
            let mut out = Vec::new();
            let mut d = 2 * a as isize - 3;
            while d >= 1 {
                out.push(d as usize);
                d -= 4;
            }
            Ok(out)
        }
    }
}

/// Weights `d-1, d-3, ..., 1-d` of the `d`-dimensional irrep.
pub fn weights_of(d: usize) -> Vec<i64> {
    let top = d as i64 - 1;
    (0..d as i64).map(|i| top - 2 * i).collect()
}

/// Irrep dimensions per lower-central layer, each multiset largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IrrepAssignment {
    pub factor: Factor,
    pub per_layer: Vec<Vec<usize>>,
}

impl IrrepAssignment {
    /// Number of trivial summands over all layers.
    pub fn trivial_count(&self) -> usize {
        self.per_layer.iter().flatten().filter(|&&d| d == 1).count()
    }

    /// Weight multiset of layer `k` (1-based), sorted descending.
    pub fn layer_weights(&self, k: usize) -> Vec<i64> {
        let mut w: Vec<i64> = self.per_layer[k - 1]
            .iter()
            .flat_map(|&d| weights_of(d))
            .collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }

    /// `m_1 = 2 ∔ 1, m_2 = 1, ...`.
    pub fn render(&self) -> String {
        self.per_layer
            .iter()
            .enumerate()
            .map(|(k, ds)| {
                let parts: Vec<String> = ds.iter().map(usize::to_string).collect();
                format!("m{} = {}", k + 1, parts.join(" ∔ "))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Sub-multisets of `pool` with the given total, largest parts first.
fn sub_multisets(pool: &[usize], total: usize) -> Vec<Vec<usize>> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in pool {
        *counts.entry(d).or_default() += 1;
    }
    let values: Vec<(usize, usize)> = counts.into_iter().rev().collect();
    let mut out = Vec::new();
    fn go(values: &[(usize, usize)], left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        let Some((&(d, cap), rest)) = values.split_first() else {
            return;
        };
        for take in (0..=cap.min(left / d)).rev() {
            for _ in 0..take {
                acc.push(d);
            }
            go(rest, left - take * d, acc, out);
            for _ in 0..take {
                acc.pop();
            }
        }
    }
    go(&values, total, &mut Vec::new(), &mut out);
    out
}

/// Even-dimensional irreps come in pairs under the compact real form.
fn so3_admissible(layer: &[usize]) -> bool {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in layer {
        *counts.entry(d).or_default() += 1;
    }
    counts.iter().all(|(&d, &m)| d % 2 == 1 || m % 2 == 0)
}

fn admissible(factor: Factor, layer: &[usize]) -> bool {
    match factor {
        Factor::Sl2 => true,
        Factor::So3 => so3_admissible(layer),
    }
}

fn exterior_square(m1: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &a) in m1.iter().enumerate() {
        out.extend(sl2_tensor_decomp(a, a, TensorPart::Antisymmetric).expect("equal factors"));
        for &b in &m1[i + 1..] {
            out.extend(sl2_tensor_decomp(a, b, TensorPart::Full).expect("positive dims"));
        }
    }
    out
}

fn tensor_with(layer: &[usize], m1: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &a in layer {
        for &b in m1 {
            out.extend(sl2_tensor_decomp(a, b, TensorPart::Full).expect("positive dims"));
        }
    }
    out
}

/// All layer assignments compatible with the tensor constraints between layers.
pub fn enumerate_irrep_assignments<F: Field>(
    graded: &GradedAlgebra<F>,
    factor: Factor,
) -> Vec<IrrepAssignment> {
    let dims = &graded.layer_dims;
    let Some(&m1) = dims.first() else {
        return Vec::new();
    };
    let mut partial: Vec<Vec<Vec<usize>>> = partitions(m1, m1)
        .into_iter()
        .filter(|p| p.iter().any(|&d| d >= 2) && admissible(factor, p))
        .map(|p| vec![p])
        .collect();
    for k in 2..=dims.len() {
        let mut next = Vec::new();
        for layers in partial {
            let first = &layers[0];
            let pool = if k == 2 {
                exterior_square(first)
            } else {
                tensor_with(&layers[k - 2], first)
            };
            for choice in sub_multisets(&pool, dims[k - 1]) {
                if admissible(factor, &choice) {
                    let mut extended = layers.clone();
                    extended.push(choice);
                    next.push(extended);
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|per_layer| IrrepAssignment { factor, per_layer })
        .collect()
}
