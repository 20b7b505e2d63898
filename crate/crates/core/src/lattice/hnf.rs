//! Row-style Hermite normal form over the integers.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::Integer;

/// Echelon basis of the row span: pivots strictly move right, are positive,
/// and everything below a pivot is zero. Zero rows are dropped.
pub fn hermite_rows(rows: &[Vec<Integer>]) -> Vec<Vec<Integer>> {
    let mut a: Vec<Vec<Integer>> = rows.to_vec();
    let width = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut top = 0;
    for c in 0..width {
        // gcd-combine every remaining row into one with a pivot in column c
        loop {
            let nz: Vec<usize> = (top..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz
                .iter()
                .min_by_key(|&&i| a[i][c].abs())
                .expect("nonempty");
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let f = a[i][c].div_floor(&a[piv][c]);
                let (head, tail) = if i < piv {
                    let (h, t) = a.split_at_mut(piv);
                    (&mut h[i], &t[0])
                } else {
                    let (h, t) = a.split_at_mut(i);
                    (&mut t[0], &h[piv])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(i) = (top..a.len()).find(|&i| !a[i][c].is_zero()) {
            a.swap(top, i);
            if a[top][c].is_negative() {
                a[top].iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(a[top].clone());
            top += 1;
        }
    }
    out
}

/// Canonical coset representatives modulo the span of some generators.
#[derive(Clone, Debug)]
pub struct CosetReducer {
    basis: Vec<Vec<Integer>>,
    pivots: Vec<usize>,
}

impl CosetReducer {
    /// `generators` are the spanning vectors, e.g. the columns of a matrix.
    pub fn new(generators: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Integer>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| Integer::from(x)).collect())
            .collect();
        let basis = hermite_rows(&rows);
        let pivots = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        Self { basis, pivots }
    }

    /// Reduces each pivot coordinate into `[0, pivot)`, top to bottom. Two
    /// vectors lie in the same coset exactly when their reductions agree.
    pub fn reduce(&self, v: &[i64]) -> Vec<Integer> {
        let mut v: Vec<Integer> = v.iter().map(|&x| Integer::from(x)).collect();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let f = v[c].div_floor(&row[c]);
            if !f.is_zero() {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Whether `v` is an integer combination of the given column vectors.
pub fn lattice_member(v: &[i64], columns: &[Vec<i64>]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    CosetReducer::new(columns).contains(v)
}

/// Exact determinant by fraction-free elimination with row pivoting.
pub(crate) fn determinant(m: &[Vec<i64>]) -> Integer {
    let n = m.len();
    let mut a: Vec<Vec<Integer>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
        .collect();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Integer::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * prev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_shape() {
        let rows: Vec<Vec<Integer>> = [[4, 6, 0], [6, 9, 3], [2, 3, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
            .collect();
        let h = hermite_rows(&rows);
        assert_eq!(h.len(), 2);
        assert_eq!(h[0][0], Integer::from(2));
    }

    #[test]
    fn membership() {
        let cols = vec![vec![2, 0], vec![1, 3]];
        assert!(lattice_member(&[3, 3], &cols));
        assert!(lattice_member(&[0, 0], &cols));
        assert!(!lattice_member(&[1, 0], &cols));
        assert!(lattice_member(&[0, 6], &cols));
        assert!(!lattice_member(&[0, 1], &[]));
        assert!(lattice_member(&[0], &[]));
    }

    #[test]
    fn coset_representatives_are_canonical() {
        let cols = vec![vec![2, 0, 1], vec![0, 3, 1]];
        let r = CosetReducer::new(&cols);
        let v = [5, -4, 7];
        let w = [5 + 2 * 3 - 0, -4 + 3 * -2, 7 + 3 - 2];
        assert_eq!(r.reduce(&v), r.reduce(&w));
        assert_ne!(r.reduce(&v), r.reduce(&[5, -4, 8]));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), Integer::from(-1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), Integer::from(0));
        assert_eq!(
            determinant(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]),
            Integer::from(4)
        );
    }
}
