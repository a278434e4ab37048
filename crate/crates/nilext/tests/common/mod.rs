//! Independent floating-point oracles. They read the canonical text form
//! and share no code with the exact library routines they check.
#![allow(dead_code)]

use nilext::format::serialize_algebra;
use nilext::scalar::Scalar;
use nilext::table::StructureTable;

pub const TOL: f64 = 1e-9;

/// Dense `N[j][k][l]` (0-based) parsed from the canonical text.
pub fn dense_constants(table: &StructureTable<Scalar>) -> Vec<Vec<Vec<f64>>> {
    let text = serialize_algebra(table);
    let mut lines = text.lines();
    let n: usize = lines
        .next()
        .unwrap()
        .trim_start_matches("dim ")
        .parse()
        .unwrap();
    let mut c = vec![vec![vec![0.0; n]; n]; n];
    for line in lines {
        let (lhs, rhs) = line
            .trim_start_matches("bracket ")
            .split_once(" : ")
            .unwrap();
        let idx: Vec<usize> = lhs.split(' ').map(|s| s.parse().unwrap()).collect();
        let (j, k) = (idx[0] - 1, idx[1] - 1);
        for term in rhs.split(", ") {
            let (l, v) = term.split_once(' ').unwrap();
            let value = match v.split_once('/') {
                Some((p, q)) => p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap(),
                None => v.parse::<f64>().unwrap(),
            };
            let l: usize = l.parse::<usize>().unwrap() - 1;
            c[j][k][l] = value;
            c[k][j][l] = -value;
        }
    }
    c
}

pub fn rank(mut rows: Vec<Vec<f64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) =
            (r..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs()))
        else {
            break;
        };
        if rows[p][c].abs() < TOL {
            continue;
        }
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][c] / rows[r][c];
                let pivot = rows[r].clone();
                for (x, p) in rows[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x -= f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the solution space of the Leibniz rule, unknowns `D[r][c]`.
pub fn derivation_dim(table: &StructureTable<Scalar>) -> usize {
    let c = dense_constants(table);
    let n = c.len();
    let var = |r: usize, col: usize| r * n + col;
    let mut rows = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            for l in 0..n {
                let mut row = vec![0.0; n * n];
                // D[e_j, e_k] - [D e_j, e_k] - [e_j, D e_k], component l
                for m in 0..n {
                    row[var(l, m)] += c[j][k][m];
                    row[var(m, j)] -= c[m][k][l];
                    row[var(m, k)] -= c[j][m][l];
                }
                rows.push(row);
            }
        }
    }
    n * n - rank(rows)
}

/// Rank of `{ad e_1, ..., ad e_n}` as vectors.
pub fn inner_dim(table: &StructureTable<Scalar>) -> usize {
    let c = dense_constants(table);
    let n = c.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .flat_map(|l| (0..n).map(move |m| (l, m)))
                .map(|(l, m)| c[i][m][l])
                .collect()
        })
        .collect();
    rank(rows)
}

/// Triples `j < k < l` (1-based) whose Jacobi sum is nonzero.
pub fn jacobi_failures(table: &StructureTable<Scalar>) -> Vec<(usize, usize, usize)> {
    let c = dense_constants(table);
    let n = c.len();
    let bracket = |x: &[f64], y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for a in 0..n {
            for b in 0..n {
                if x[a] != 0.0 && y[b] != 0.0 {
                    for (l, o) in out.iter_mut().enumerate() {
                        *o += x[a] * y[b] * c[a][b][l];
                    }
                }
            }
        }
        out
    };
    let e = |i: usize| {
        (0..n)
            .map(|t| if t == i { 1.0 } else { 0.0 })
            .collect::<Vec<f64>>()
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = bracket(&e(i), &bracket(&e(j), &e(k)));
                let b = bracket(&e(j), &bracket(&e(k), &e(i)));
                let d = bracket(&e(k), &bracket(&e(i), &e(j)));
                if (0..n).any(|l| (a[l] + b[l] + d[l]).abs() > TOL) {
                    out.push((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    out
}
