//! Graded pieces of a quotient `A = S / I` as explicit vector spaces.
//!
//! Each degree gets the standard-monomial basis; multiplication by a variable
//! is a sparse matrix between consecutive pieces built from normal forms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::{axpy, SparseVec};
use crate::ring::{GradedRing, Monomial, MultiPoly};
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct GradedQuotient<F: Field> {
    gb: GroebnerBasis<F>,
    weights: Vec<u32>,
    max_degree: usize,
    basis: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    /// `mult[k][d][t]`: `x_k` times basis element `t` of degree `d`, in degree `d + w_k`.
    mult: Vec<Vec<Vec<SparseVec<F>>>>,
    /// For a non-constant basis monomial `s` of degree `d`: `(k, t')` with
    /// `s = x_k * basis[d - w_k][t']`.
    split: Vec<Vec<Option<(usize, usize)>>>,
}

impl<F: Field> GradedQuotient<F> {
    /// `R / <extra>` through degree `max_degree`.
    pub fn new(ring: &GradedRing<F>, extra: &[MultiPoly<F>], max_degree: usize) -> Result<Self> {
        ring.check_ideal(extra)?;
        let gb = GroebnerBasis::compute(ring.ambient(), &ring.with_relations(extra));
        Ok(Self::from_basis(gb, max_degree))
    }

    pub fn from_basis(gb: GroebnerBasis<F>, max_degree: usize) -> Self {
        let ring = gb.ring().clone();
        let weights = ring.weights().to_vec();
        let n = weights.len();
        let basis: Vec<Vec<Monomial>> = (0..=max_degree).map(|d| gb.standard_monomials(d)).collect();
        let index: Vec<HashMap<Monomial, usize>> = basis
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();

        let mut q = GradedQuotient {
            gb,
            weights: weights.clone(),
            max_degree,
            basis,
            index,
            mult: Vec::new(),
            split: Vec::new(),
        };

        let mut mult = vec![Vec::new(); n];
        for (k, table) in mult.iter_mut().enumerate() {
            let w = weights[k] as usize;
            for d in 0..=max_degree {
                if d + w > max_degree {
                    table.push(Vec::new());
                    continue;
                }
                let xk = Monomial::var(n, k);
                let row: Vec<SparseVec<F>> = q.basis[d]
                    .iter()
                    .map(|s| {
                        let p = MultiPoly::monomial(&ring, s * &xk, F::one());
                        q.coords_unchecked(&q.gb.normal_form(&p), d + w)
                    })
                    .collect();
                table.push(row);
            }
        }
        q.mult = mult;

        q.split = (0..=max_degree)
            .map(|d| {
                q.basis[d]
                    .iter()
                    .map(|s| {
                        let k = s.last_var()?;
                        let w = weights[k] as usize;
                        let mut e = s.exps().to_vec();
                        e[k] -= 1;
                        // divisors of standard monomials are standard
                        let t = q.index[d - w][&Monomial::new(e)];
                        Some((k, t))
                    })
                    .collect()
            })
            .collect();
        q
    }

    pub fn groebner(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, d: usize) -> usize {
        self.basis[d].len()
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        &self.basis[d]
    }

    pub fn split(&self, d: usize, t: usize) -> Option<(usize, usize)> {
        self.split[d][t]
    }

    /// Coordinates of a reduced homogeneous polynomial of degree `d`.
    fn coords_unchecked(&self, p: &MultiPoly<F>, d: usize) -> SparseVec<F> {
        let mut v: SparseVec<F> = p
            .terms()
            .iter()
            .map(|(m, c)| (self.index[d][m], c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Coordinates of the class of a homogeneous polynomial of degree `d`.
    pub fn coords(&self, p: &MultiPoly<F>, d: usize) -> Result<SparseVec<F>> {
        if !p.terms().iter().all(|(m, _)| m.degree(&self.weights) == d) {
            return Err(Error::NotHomogeneous(p.to_string()));
        }
        Ok(self.coords_unchecked(&self.gb.normal_form(p), d))
    }

    pub fn element(&self, d: usize, v: &SparseVec<F>) -> MultiPoly<F> {
        MultiPoly::from_terms(
            self.gb.ring(),
            v.iter().map(|(i, c)| (self.basis[d][*i].clone(), c.clone())).collect(),
        )
    }

    /// `x_k * v` for `v` in degree `d`.
    pub fn mul_var(&self, k: usize, d: usize, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Vec::new();
        for (t, c) in v {
            acc = axpy(&acc, c, &self.mult[k][d][*t]);
        }
        acc
    }
}

/// Degree-wise coordinates of a graded free module `⊕ A(-a_g)`.
///
/// Generators must be added in nondecreasing degree. In degree `j` the
/// coordinates are the blocks `A_{j - a_g}` for every generator with `a_g <= j`,
/// in generator order.
#[derive(Clone, Debug, Default)]
pub struct FreeLayout {
    gen_degrees: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl FreeLayout {
    pub fn new() -> Self {
        FreeLayout::default()
    }

    pub fn gen_degrees(&self) -> &[usize] {
        &self.gen_degrees
    }

    pub fn add_generator(&mut self, degree: usize) {
        debug_assert!(self.gen_degrees.last().is_none_or(|&d| d <= degree));
        debug_assert!(degree >= self.offsets.len(), "degree already laid out");
        self.gen_degrees.push(degree);
    }

    /// Fix coordinates for the next degree; all generators of that degree must
    /// already be added.
    pub fn close_degree<F: Field>(&mut self, algebra: &GradedQuotient<F>) {
        let j = self.offsets.len();
        let mut offs = Vec::new();
        let mut total = 0;
        for &a in self.gen_degrees.iter().take_while(|&&a| a <= j) {
            offs.push(total);
            total += algebra.dim(j - a);
        }
        self.offsets.push(offs);
        self.dims.push(total);
    }

    pub fn closed_through(&self) -> usize {
        self.offsets.len()
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn offset(&self, j: usize, g: usize) -> usize {
        self.offsets[j][g]
    }

    pub fn gens_in(&self, j: usize) -> usize {
        self.offsets[j].len()
    }

    /// Which generator block holds coordinate `idx` in degree `j`, and the local index.
    pub fn locate(&self, j: usize, idx: usize) -> (usize, usize) {
        let offs = &self.offsets[j];
        let g = offs.partition_point(|&o| o <= idx) - 1;
        // skip empty blocks sharing the same offset
        let g = (g..offs.len())
            .rev()
            .find(|&h| offs[h] <= idx)
            .unwrap_or(g);
        (g, idx - offs[g])
    }

    /// `x_k * v` for `v` in degree `j`.
    pub fn mul_var<F: Field>(
        &self,
        algebra: &GradedQuotient<F>,
        k: usize,
        j: usize,
        v: &SparseVec<F>,
    ) -> SparseVec<F> {
        let w = algebra.weights()[k] as usize;
        let mut acc: SparseVec<F> = Vec::new();
        let mut start = 0;
        while start < v.len() {
            let (g, _) = self.locate(j, v[start].0);
            let end = self.offsets[j]
                .get(g + 1)
                .map_or(v.len(), |&o| start + v[start..].partition_point(|e| e.0 < o));
            let base = self.offsets[j][g];
            let local: SparseVec<F> = v[start..end].iter().map(|(i, c)| (i - base, c.clone())).collect();
            let prod = algebra.mul_var(k, j - self.gen_degrees[g], &local);
            let shift = self.offsets[j + w][g];
            let shifted: SparseVec<F> = prod.into_iter().map(|(i, c)| (i + shift, c)).collect();
            acc = merge_disjoint(acc, shifted);
            start = end;
        }
        acc
    }
}

fn merge_disjoint<F: Field>(a: SparseVec<F>, b: SparseVec<F>) -> SparseVec<F> {
    if a.last().is_none_or(|l| b.first().is_none_or(|f| l.0 < f.0)) {
        let mut a = a;
        a.extend(b);
        return a;
    }
    axpy(&a, &F::one(), &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn conic_pieces() {
        let s = PolyRing::standard(&["x0", "x1", "x2"]);
        let f = MultiPoly::from_i64_terms(&s, &[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        let r = GradedRing::<Q>::new(s.clone(), vec![f]).unwrap();
        let a = GradedQuotient::new(&r, &[], 6).unwrap();
        for d in 0..=6 {
            assert_eq!(a.dim(d), 2 * d + 1);
        }
        // x1 * x1 = x0 x2 in degree 2
        let one = a.coords(&MultiPoly::var(&s, 1), 1).unwrap();
        let sq = a.mul_var(1, 1, &one);
        let expect = a.coords(&MultiPoly::from_i64_terms(&s, &[(1, &[1, 0, 1])]), 2).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(a.element(2, &sq).to_string(), "x0*x2");
    }

    #[test]
    fn free_layout_blocks() {
        let s = PolyRing::standard(&["x", "y"]);
        let r = GradedRing::<Q>::polynomial(s);
        let a = GradedQuotient::new(&r, &[], 4).unwrap();
        let mut lay = FreeLayout::new();
        lay.add_generator(0);
        lay.close_degree(&a);
        lay.add_generator(1);
        lay.add_generator(1);
        for _ in 1..=4 {
            lay.close_degree(&a);
        }
        assert_eq!(lay.dim(0), 1);
        assert_eq!(lay.dim(1), 2 + 1 + 1);
        assert_eq!(lay.dim(2), 3 + 2 + 2);
        assert_eq!(lay.locate(2, 0), (0, 0));
        assert_eq!(lay.locate(2, 3), (1, 0));
        assert_eq!(lay.locate(2, 6), (2, 1));
        // multiply e_1 (generator 1 in degree 1) by y
        let v = vec![(lay.offset(1, 1), Q::from_integer(1.into()))];
        let w = lay.mul_var(&a, 1, 1, &v);
        assert_eq!(w.len(), 1);
        assert_eq!(lay.locate(2, w[0].0).0, 1);
    }
}
