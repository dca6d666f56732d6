//! Dense linear algebra over a [`Field`]: echelon forms, rank, null spaces.

use crate::gf::{Elem, Field};

/// Row-reduces `rows` in place to reduced echelon form and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][col]).expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let c = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = field.sub(*x, field.mul(c, p));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{u : rows · u = 0}` for vectors of length `ncols`.
pub fn null_space(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; ncols];
            v[fc] = Elem::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = field.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// True when `v` lies in the span of `rows`.
pub fn in_span(field: &Field, rows: &[Vec<Elem>], v: &[Elem]) -> bool {
    let base = rank(field, rows);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(field, &ext) == base
}

/// True when the two row sets span the same subspace.
pub fn same_span(field: &Field, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> bool {
    let ra = rank(field, a);
    if ra != rank(field, b) {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(field, &both) == ra
}

/// Returns the indices of rows in `extra` that extend a basis of `base` to a
/// basis of `span(base ∪ extra)`, greedily in order.
pub fn extend_basis(field: &Field, base: &[Vec<Elem>], extra: &[Vec<Elem>]) -> Vec<usize> {
    let mut current: Vec<Vec<Elem>> = base.to_vec();
    let mut r = rank(field, &current);
    let mut picked = Vec::new();
    for (i, v) in extra.iter().enumerate() {
        current.push(v.clone());
        let r2 = rank(field, &current);
        if r2 > r {
            picked.push(i);
            r = r2;
        } else {
            current.pop();
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_null_space() {
        let f = Field::prime(3).unwrap();
        let e = |v: &[u32]| v.iter().map(|&x| Elem(x)).collect::<Vec<_>>();
        let rows = vec![e(&[1, 2, 0, 1]), e(&[2, 1, 0, 2]), e(&[0, 0, 1, 1])];
        assert_eq!(rank(&f, &rows), 2);
        let ns = null_space(&f, &rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let dot = r.iter().zip(v).fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert!(dot.is_zero());
            }
        }
        assert!(in_span(&f, &rows, &e(&[1, 2, 1, 2])));
        assert!(!in_span(&f, &rows, &e(&[1, 0, 0, 0])));
        assert!(same_span(&f, &rows[..2], &rows[..1]));
        assert_eq!(extend_basis(&f, &rows[..1], &rows), vec![2]);
    }
}
