//! Gaussian elimination over a [`Field`].

use super::field::{Field, Gf};

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Gf>>, ncols: usize, f: &Field) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = f.inv(&rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

pub fn rank(rows: &[Vec<Gf>], ncols: usize, f: &Field) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols, f).len()
}

/// A basis of the right kernel `{v : A v = 0}`, one vector per free column.
pub fn kernel(rows: &[Vec<Gf>], ncols: usize, f: &Field) -> Vec<Vec<Gf>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols, f);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); ncols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&m[r][free]);
            }
            v
        })
        .collect()
}
