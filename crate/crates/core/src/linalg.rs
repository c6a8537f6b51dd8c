//! Sparse exact linear algebra over a [`Field`].

use std::collections::{BTreeMap, HashMap};

use crate::scalar::Field;

/// Sparse vector as `(index, value)` pairs, indices strictly increasing, no zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_is_zero<F>(v: &SparseVec<F>) -> bool {
    v.is_empty()
}

/// `a + c * b`
pub fn axpy<F: Field>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.clone() * b[j].1.clone()));
            j += 1;
        } else {
            let v = a[i].1.clone() + c.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row-echelon basis of a subspace.
///
/// Each stored row has leading coefficient 1 at its pivot column. Rows are not
/// back-substituted; [`Echelon::reduce`] sweeps columns in increasing order so
/// that is not needed.
#[derive(Clone, Debug, Default)]
pub struct Echelon<F> {
    rows: Vec<SparseVec<F>>,
    pivots: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, F> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let Some((&col, val)) = acc.range(cursor..).next() else {
                break;
            };
            match self.pivots.get(&col) {
                None => cursor = col + 1,
                Some(&r) => {
                    let c = val.clone();
                    for (k, x) in &self.rows[r] {
                        let e = acc.entry(*k).or_insert_with(F::zero);
                        *e = e.clone() - c.clone() * x.clone();
                        if e.is_zero() {
                            acc.remove(k);
                        }
                    }
                    cursor = col + 1;
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Inserts `v`; returns `true` when it was independent of the current rows.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, mut r: SparseVec<F>) -> bool {
        let Some((lead, lc)) = r.first().cloned() else {
            return false;
        };
        let inv = lc.inv();
        for e in r.iter_mut() {
            e.1 = e.1.clone() * inv.clone();
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of the span of the given vectors.
pub fn rank<F: Field>(vectors: &[SparseVec<F>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Kernel of the linear map sending source basis vector `s` to `columns[s]`,
/// as vectors in the source basis. `target_dim` bounds the column indices.
///
/// Deterministic: kernel vector number `k` has its largest nonzero coordinate
/// strictly larger than that of kernel vector `k - 1`.
pub fn kernel<F: Field>(columns: &[SparseVec<F>], target_dim: usize) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (s, col) in columns.iter().enumerate() {
        debug_assert!(col.iter().all(|(i, _)| *i < target_dim));
        let mut v = col.clone();
        v.push((target_dim + s, F::one()));
        let r = e.reduce(&v);
        match r.first() {
            Some((lead, _)) if *lead < target_dim => {
                e.push_reduced(r);
            }
            Some(_) => out.push(
                r.into_iter()
                    .map(|(i, x)| (i - target_dim, x))
                    .collect(),
            ),
            None => unreachable!("augmented vector cannot vanish"),
        }
    }
    out
}

/// Apply the map given by `columns` to a source vector.
pub fn apply<F: Field>(columns: &[SparseVec<F>], v: &SparseVec<F>) -> SparseVec<F> {
    let mut acc: SparseVec<F> = Vec::new();
    for (s, c) in v {
        acc = axpy(&acc, c, &columns[*s]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn sv(dense: &[i64]) -> SparseVec<Q> {
        dense
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, q(x)))
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        // columns of [[1,2,3],[2,4,6]] -> rank 1, kernel dim 2
        let cols = vec![sv(&[1, 2]), sv(&[2, 4]), sv(&[3, 6])];
        assert_eq!(rank(&cols), 1);
        let k = kernel(&cols, 2);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&cols, v).is_empty());
        }
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let cols: Vec<SparseVec<Q>> = vec![vec![], vec![]];
        assert_eq!(kernel(&cols, 0), vec![sv(&[1]), sv(&[0, 1])]);
    }

    fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
        let ncols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != q(0)) else { continue };
            m.swap(r, p);
            let piv = m[r].clone();
            for row in m.iter_mut().skip(r + 1) {
                let f = &row[c] / &piv[c];
                for k in 0..ncols {
                    row[k] = &row[k] - &f * &piv[k];
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn rank_nullity(m in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..7)) {
            let cols: Vec<SparseVec<Q>> = m.iter().map(|c| sv(c)).collect();
            let dense: Vec<Vec<Q>> = m.iter().map(|c| c.iter().map(|&x| q(x)).collect()).collect();
            let r = dense_rank(dense);
            prop_assert_eq!(rank(&cols), r);
            let k = kernel(&cols, 4);
            prop_assert_eq!(k.len() + r, cols.len());
            for v in &k {
                prop_assert!(apply(&cols, v).is_empty());
            }
            prop_assert_eq!(rank(&k), k.len());
        }
    }
}
