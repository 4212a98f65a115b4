use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::cyclo::CycloScalar;
use super::poly::{Monomial, MultiPoly};

/// Rank by fraction-free (Bareiss) elimination with first-nonzero pivoting.
pub fn bareiss_rank(mut a: Vec<Vec<CycloScalar>>, m: usize) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = CycloScalar::one(m);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let prev_inv = prev.inverse().expect("pivots are nonzero");
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                let t = &(pivot * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = &t * &prev_inv;
            }
            row[col] = CycloScalar::zero(m);
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Dimension of the linear span of `polys`.
pub fn polynomial_rank(polys: &[MultiPoly]) -> usize {
    let Some(first) = polys.first() else {
        return 0;
    };
    let m = first.m();
    let mut distinct: Vec<&MultiPoly> = Vec::new();
    for p in polys.iter().filter(|p| !p.is_zero()) {
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    let mut columns: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in &distinct {
        for (mono, _) in p.terms() {
            let next = columns.len();
            columns.entry(mono).or_insert(next);
        }
    }
    let matrix = distinct
        .iter()
        .map(|p| {
            let mut row: Vec<CycloScalar> =
                (0..columns.len()).map(|_| CycloScalar::zero(m)).collect();
            for (mono, c) in p.terms() {
                row[columns[mono]] = c.clone();
            }
            row
        })
        .collect();
    bareiss_rank(matrix, m)
}
