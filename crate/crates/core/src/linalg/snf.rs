//! Smith normal form invariant factors.
//!
//! Two phases. The sparse phase repeatedly pivots on a `±1` entry (first row
//! in index order, then first unit column in that row), which splits off an
//! invariant factor 1 by unimodular row and column operations. Whatever is
//! left has no unit entries and is usually tiny; it is finished densely with
//! the classical smallest-magnitude pivot rule.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::int::Int;
use super::matrix::ExactMatrix;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` nonnegative invariant factors, `d_1 | d_2 | …`,
    /// zeros last.
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(m: &ExactMatrix) -> Result<SnfResult> {
    let rows = m.int_rows().ok_or(Error::RationalEntries)?;
    let size = m.rows().min(m.cols());
    let (units, residual) = eliminate_unit_pivots(rows, m.cols());
    let mut diag: Vec<BigInt> = std::iter::repeat_n(BigInt::from(1), units).collect();
    diag.extend(dense_invariant_factors(residual).into_iter().map(|d| d.to_bigint()));
    let rank = diag.len();
    diag.resize(size, BigInt::zero());
    Ok(SnfResult { diag, rank })
}

/// Returns the number of unit pivots eliminated and the dense residual.
fn eliminate_unit_pivots(rows: Vec<SparseVec>, ncols: usize) -> (usize, Vec<Vec<Int>>) {
    let mut rows: Vec<Option<SparseVec>> = rows.into_iter().map(Some).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row.as_ref().unwrap().entries() {
            col_rows[*c].insert(r);
        }
    }
    let mut col_alive = vec![true; ncols];
    let mut units = 0;
    loop {
        let mut progress = false;
        for r in 0..rows.len() {
            let Some(row) = rows[r].as_ref() else { continue };
            let Some((c, u)) = row
                .entries()
                .iter()
                .find(|(_, v)| v.is_unit())
                .map(|(c, v)| (*c, v.clone()))
            else {
                continue;
            };
            let pivot = rows[r].take().unwrap();
            for (cc, _) in pivot.entries() {
                col_rows[*cc].remove(&r);
            }
            let others: Vec<usize> = col_rows[c].iter().copied().collect();
            for r2 in others {
                let old = rows[r2].take().unwrap();
                let b = old.get(c).unwrap().clone();
                // u⁻¹ = u for a unit
                let factor = -(&b * &u);
                let new = SparseVec::combine(&Int::ONE, &old, &factor, &pivot);
                for (cc, _) in old.entries() {
                    col_rows[*cc].remove(&r2);
                }
                for (cc, _) in new.entries() {
                    col_rows[*cc].insert(r2);
                }
                rows[r2] = Some(new);
            }
            col_alive[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_cols: Vec<usize> = (0..ncols)
        .filter(|&c| col_alive[c] && !col_rows[c].is_empty())
        .collect();
    let col_pos: std::collections::HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let residual = rows
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut dense = vec![Int::ZERO; live_cols.len()];
            for (c, v) in r.into_entries() {
                dense[col_pos[&c]] = v;
            }
            dense
        })
        .collect();
    (units, residual)
}

/// Nonzero invariant factors of a dense integer matrix.
pub(crate) fn dense_invariant_factors(mut a: Vec<Vec<Int>>) -> Vec<Int> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_entry(&a, t, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let (q, _) = a[i][t].div_rem(&a[t][t]);
                    row_axpy(&mut a, i, t, &q, t);
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let (q, _) = a[t][j].div_rem(&a[t][t]);
                    for i in t..m {
                        let v = &a[i][j] - &(&q * &a[i][t]);
                        a[i][j] = v;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest remaining entry of row t / column t to the pivot
                let mut best = (t, t);
                for i in t..m {
                    if !a[i][t].is_zero() && a[i][t].cmp_abs(&a[best.0][best.1]).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    if !a[t][j].is_zero() && a[t][j].cmp_abs(&a[best.0][best.1]).is_lt() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let p = a[t][t].clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !a[i][j].div_rem(&p).1.is_zero())
            });
            match offender {
                Some(i) => row_axpy(&mut a, t, i, &Int::from(-1), t),
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// `row[dst] -= q · row[src]` over columns `from..`.
fn row_axpy(a: &mut [Vec<Int>], dst: usize, src: usize, q: &Int, from: usize) {
    for j in from..a[dst].len() {
        if a[src][j].is_zero() {
            continue;
        }
        let v = &a[dst][j] - &(q * &a[src][j]);
        a[dst][j] = v;
    }
}

fn smallest_entry(
    a: &[Vec<Int>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) if a[i][j].cmp_abs(&a[bi][bj]).is_lt() => best = Some((i, j)),
                _ => {}
            }
            if a[i][j].is_unit() {
                return best;
            }
        }
    }
    best
}
