//! Row reduction over the base field.

use num_traits::Zero;

use crate::field::{Coeff, Field};

/// Reduced row echelon form; zero rows are dropped. Returns the rows together
/// with their pivot columns.
pub fn rref(field: Field, mut rows: Vec<Vec<Coeff>>) -> Vec<(usize, Vec<Coeff>)> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out: Vec<(usize, Vec<Coeff>)> = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let pivot = (next..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        rows.swap(next, pr);
        let inv = field.inv(&rows[next][col]).expect("nonzero pivot");
        let prow: Vec<Coeff> = rows[next].iter().map(|v| field.mul(v, &inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, v) in row.iter_mut().enumerate() {
                if !prow[c].is_zero() {
                    *v = field.sub(v, &field.mul(&factor, &prow[c]));
                }
            }
        }
        rows[next] = prow;
        out.push((col, Vec::new()));
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    for (i, entry) in out.iter_mut().enumerate() {
        entry.1 = rows[i].clone();
    }
    out
}

pub fn rank(field: Field, rows: Vec<Vec<Coeff>>) -> usize {
    rref(field, rows).len()
}
