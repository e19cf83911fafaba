//! Exact solution of sparse square systems by Gaussian elimination with a
//! fewest-nonzeros pivot choice.

use std::collections::{BTreeMap, BTreeSet};

use crate::rational::Rational;

/// Solves `M x = rhs` where row `i` of `M` is `rows[i]` as `(column, value)`
/// pairs. Returns `None` if `M` is singular or not square.
pub(crate) fn solve_square(rows: Vec<Vec<(usize, Rational)>>, rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let k = rows.len();
    if rhs.len() != k {
        return None;
    }
    let mut mat: Vec<BTreeMap<usize, Rational>> = Vec::with_capacity(k);
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for (i, row) in rows.into_iter().enumerate() {
        let mut map = BTreeMap::new();
        for (c, v) in row {
            if c >= k {
                return None;
            }
            let entry = map.entry(c).or_insert_with(Rational::zero);
            *entry += v;
        }
        map.retain(|_, v: &mut Rational| !v.is_zero());
        for &c in map.keys() {
            col_rows[c].insert(i);
        }
        mat.push(map);
    }
    let mut rhs = rhs;
    let mut open = vec![true; k];
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(k);

    for _ in 0..k {
        // sparsest open row, then its sparsest column
        let r = (0..k).filter(|&i| open[i]).min_by_key(|&i| (mat[i].len(), i))?;
        let c = *mat[r].keys().min_by_key(|&&c| (col_rows[c].len(), c))?;
        let pivot = mat[r][&c].clone();
        open[r] = false;
        for &cc in mat[r].keys() {
            col_rows[cc].remove(&r);
        }
        let pivot_row: Vec<(usize, Rational)> = mat[r].iter().map(|(&cc, v)| (cc, v.clone())).collect();
        let pivot_rhs = rhs[r].clone();
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for i in targets {
            let f = &mat[i][&c] / &pivot;
            for (cc, v) in &pivot_row {
                let updated = mat[i].get(cc).cloned().unwrap_or_else(Rational::zero) - &f * v;
                if updated.is_zero() {
                    mat[i].remove(cc);
                    col_rows[*cc].remove(&i);
                } else {
                    mat[i].insert(*cc, updated);
                    col_rows[*cc].insert(i);
                }
            }
            rhs[i] = &rhs[i] - &f * &pivot_rhs;
        }
        order.push((r, c));
    }

    let mut x = vec![Rational::zero(); k];
    for &(r, c) in order.iter().rev() {
        let mut acc = rhs[r].clone();
        for (&cc, v) in &mat[r] {
            if cc != c {
                acc = acc - v * &x[cc];
            }
        }
        x[c] = acc / &mat[r][&c];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn solves_a_small_system() {
        // 2x + y = 5, x − y = 1  →  x = 2, y = 1
        let rows = vec![vec![(0, q(2)), (1, q(1))], vec![(0, q(1)), (1, q(-1))]];
        assert_eq!(solve_square(rows, vec![q(5), q(1)]).unwrap(), vec![q(2), q(1)]);
    }

    #[test]
    fn detects_singular_systems() {
        let rows = vec![vec![(0, q(1)), (1, q(1))], vec![(0, q(2)), (1, q(2))]];
        assert!(solve_square(rows, vec![q(1), q(2)]).is_none());
    }

    #[test]
    fn fractional_solution() {
        // 3x = 1, x + 2y = 0
        let rows = vec![vec![(0, q(3))], vec![(0, q(1)), (1, q(2))]];
        assert_eq!(
            solve_square(rows, vec![q(1), q(0)]).unwrap(),
            vec![Rational::new(1, 3), Rational::new(-1, 6)]
        );
    }
}
