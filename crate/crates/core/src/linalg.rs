//! Exact Gaussian elimination over a [`Scalar`] field.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Inverse of a square matrix, `None` if singular.
pub fn invert<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].try_inv()?;
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f.mul_ref(p);
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Incrementally maintained row-echelon basis of sparse vectors keyed by `K`.
///
/// Used for span/closure computations where the ambient coordinates are
/// only known lazily.
#[derive(Clone, Debug)]
pub struct SpanBasis<K: Ord + Clone, S: Scalar> {
    rows: Vec<(K, BTreeMap<K, S>)>,
}

impl<K: Ord + Clone, S: Scalar> Default for SpanBasis<K, S> {
    fn default() -> Self {
        SpanBasis { rows: Vec::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> SpanBasis<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual.
    pub fn reduce(&self, v: &BTreeMap<K, S>) -> BTreeMap<K, S> {
        let mut v = v.clone();
        v.retain(|_, c| !c.is_zero());
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in row {
                    let e = v.entry(k.clone()).or_insert_with(S::zero);
                    *e -= &c.mul_ref(x);
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns true if the rank grew.
    pub fn insert(&mut self, v: &BTreeMap<K, S>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.try_inv().expect("nonzero pivot");
        let row: BTreeMap<K, S> = r.into_iter().map(|(k, x)| (k, x.mul_ref(&inv))).collect();
        // keep existing rows reduced against the new pivot
        for (_, other) in self.rows.iter_mut() {
            if let Some(f) = other.get(&pivot).cloned() {
                for (k, x) in &row {
                    let e = other.entry(k.clone()).or_insert_with(S::zero);
                    *e -= &f.mul_ref(x);
                    if e.is_zero() {
                        other.remove(k);
                    }
                }
            }
        }
        self.rows.push((pivot, row));
        true
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone, S: Scalar>(vectors: &[BTreeMap<K, S>]) -> usize {
    let mut b = SpanBasis::new();
    for v in vectors {
        b.insert(v);
    }
    b.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn inverse_of_hyperbolic_block() {
        let m = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(invert(&m).unwrap(), m);
        let s: Vec<Vec<Q>> = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(invert(&s).is_none());
    }

    #[test]
    fn span_rank() {
        let v = |a: i64, b: i64, c: i64| -> BTreeMap<usize, Q> {
            [(0, q(a)), (1, q(b)), (2, q(c))].into_iter().filter(|(_, x)| *x != q(0)).collect()
        };
        assert_eq!(rank(&[v(1, 2, 3), v(2, 4, 6), v(0, 1, 1)]), 2);
        assert_eq!(rank(&[v(1, 0, 0), v(0, 1, 0), v(1, 1, 1)]), 3);
    }
}
