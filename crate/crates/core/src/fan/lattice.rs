//! Integer matrix normal forms.
//!
//! Matrices are dense row-major `Vec<Vec<i64>>`. Everything here is tiny
//! (at most 16 rays in dimension at most 15), so the algorithms are the
//! textbook elimination ones with no attention to coefficient growth beyond
//! doing determinants in `i128`.

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &IntMatrix, ncols: usize) -> IntMatrix {
    (0..ncols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch in matmul");
            (0..ncols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination; returns the rank and, for square
/// input, the determinant.
fn bareiss(m: &IntMatrix) -> (usize, i128) {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    let mut sign = 1i128;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        if piv != rank {
            a.swap(piv, rank);
            sign = -sign;
        }
        for i in rank + 1..rows {
            for j in col + 1..cols {
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    let det = if rows == cols && rank == rows { sign * prev } else { 0 };
    (rank, det)
}

pub fn rank(m: &IntMatrix) -> usize {
    bareiss(m).0
}

pub fn determinant(m: &IntMatrix) -> i128 {
    assert!(m.iter().all(|r| r.len() == m.len()), "determinant of a non-square matrix");
    if m.is_empty() {
        return 1;
    }
    bareiss(m).1
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d[i][i]).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix, ncols: usize) -> Smith {
    let nrows = m.len();
    let mut a = m.clone();
    let mut u = identity(nrows);
    let mut v = identity(ncols);

    let swap_cols = |x: &mut IntMatrix, i: usize, j: usize| {
        for row in x.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i -= k * row_j
    let row_axpy = |x: &mut IntMatrix, i: usize, j: usize, k: i64| {
        let src = x[j].clone();
        for (dst, s) in x[i].iter_mut().zip(src) {
            *dst -= k * s;
        }
    };
    // col_i -= k * col_j
    let col_axpy = |x: &mut IntMatrix, i: usize, j: usize, k: i64| {
        for row in x.iter_mut() {
            row[i] -= k * row[j];
        }
    };

    let mut rank = 0;
    for t in 0..nrows.min(ncols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, v, d: a, rank };
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..nrows {
                let k = a[i][t] / a[t][t];
                if k != 0 {
                    row_axpy(&mut a, i, t, k);
                    row_axpy(&mut u, i, t, k);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..ncols {
                let k = a[t][j] / a[t][t];
                if k != 0 {
                    col_axpy(&mut a, j, t, k);
                    col_axpy(&mut v, j, t, k);
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let piv = a[t][t];
            let bad_row = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % piv != 0));
            match bad_row {
                Some(i) => {
                    // pull the offending row into row t and go again
                    row_axpy(&mut a, t, i, -1);
                    row_axpy(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -*x;
            }
        }
        rank = t + 1;
    }
    Smith { u, v, d: a, rank }
}

/// Row-style Hermite normal form; zero rows are dropped.
pub fn hermite_normal_form(m: &IntMatrix, ncols: usize) -> IntMatrix {
    let mut a = m.clone();
    let nrows = a.len();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        for i in row + 1..nrows {
            while a[i][col] != 0 {
                let k = a[row][col] / a[i][col];
                let src = a[i].clone();
                for (dst, s) in a[row].iter_mut().zip(src) {
                    *dst -= k * s;
                }
                a.swap(row, i);
            }
        }
        if a[row][col] == 0 {
            continue;
        }
        if a[row][col] < 0 {
            for x in a[row].iter_mut() {
                *x = -*x;
            }
        }
        let piv = a[row][col];
        for i in 0..row {
            let k = a[i][col].div_euclid(piv);
            if k != 0 {
                let src = a[row].clone();
                for (dst, s) in a[i].iter_mut().zip(src) {
                    *dst -= k * s;
                }
            }
        }
        row += 1;
    }
    a.truncate(row);
    a
}

/// True when the two matrices (same shape, `n x k`) span the same column lattice.
pub fn same_column_lattice(a: &IntMatrix, b: &IntMatrix, ncols: usize) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ha = hermite_normal_form(&transpose(a, ncols), a.len());
    let hb = hermite_normal_form(&transpose(b, ncols), b.len());
    ha == hb
}

/// All `n x n` integer matrices with entries in `[-bound, bound]` and determinant ±1.
pub(crate) fn small_unimodular(n: usize, bound: i64) -> Vec<IntMatrix> {
    let width = (2 * bound + 1) as usize;
    let total = width.pow((n * n) as u32);
    (0..total)
        .filter_map(|mut code| {
            let m: IntMatrix = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let e = (code % width) as i64 - bound;
                            code /= width;
                            e
                        })
                        .collect()
                })
                .collect();
            (determinant(&m).abs() == 1).then_some(m)
        })
        .collect()
}
