//! Small dense exact linear algebra over a [`FieldSpec`].

use crate::scalars::{FieldSpec, Scalar};

/// Row-reduces `rows` in place and returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Basis of `{x : A x = 0}` for the `rows × ncols` matrix `A`.
pub fn nullspace(field: FieldSpec, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect()
}

/// Diagonalises a symmetric Gram matrix by congruence (characteristic ≠ 2).
///
/// Returns the diagonal entries; zeros appear exactly when the form is
/// degenerate.
pub fn diagonalize_symmetric(mut g: Vec<Vec<Scalar>>) -> Vec<Scalar> {
    let n = g.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[j][j].is_zero()) {
                swap_sym(&mut g, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !g[k][j].is_zero()) {
                // e_k ← e_k + e_j gives g_kk = 2 g_kj ≠ 0
                for i in 0..n {
                    let add = g[j][i].clone();
                    g[k][i] += &add;
                }
                for i in 0..n {
                    let add = g[i][j].clone();
                    g[i][k] += &add;
                }
            }
        }
        let pivot = g[k][k].clone();
        diag.push(pivot.clone());
        if pivot.is_zero() {
            continue;
        }
        let inv = pivot.inv().expect("nonzero");
        for i in k + 1..n {
            if g[i][k].is_zero() {
                continue;
            }
            let f = &g[i][k] * &inv;
            for j in k..n {
                let sub = &f * &g[k][j];
                g[i][j] -= &sub;
            }
            for j in k..n {
                let sub = &f * &g[j][k];
                g[j][i] -= &sub;
            }
        }
    }
    diag
}

fn swap_sym(g: &mut [Vec<Scalar>], a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: FieldSpec, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_one_row() {
        let f = FieldSpec::Rationals;
        let a = ints(f, &[&[1, 2, 3]]);
        let ns = nullspace(f, &a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = (0..3).fold(f.zero(), |acc, i| acc + &a[0][i] * &v[i]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn hyperbolic_gram_diagonalises() {
        let f = FieldSpec::Rationals;
        // xy has Gram [[0,1/2],[1/2,0]]
        let half = f.parse("1/2").unwrap();
        let g = vec![vec![f.zero(), half.clone()], vec![half, f.zero()]];
        let d = diagonalize_symmetric(g);
        assert!(d.iter().all(|x| !x.is_zero()));
        assert_eq!((&d[0] * &d[1]).signum(), Some(std::cmp::Ordering::Less));
    }

    #[test]
    fn rank_mod_p() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(rank(&ints(f, &[&[1, 2], &[3, 6]])), 1);
        assert_eq!(rank(&ints(f, &[&[1, 2], &[3, 2]])), 2);
    }
}
