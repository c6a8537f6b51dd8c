//! Buchberger's algorithm, normal forms and standard monomials.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;


use crate::ring::{monomials_of_degree, Monomial, MultiPoly, PolyRing};
use crate::scalar::Field;

/// Minimally generated monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes the generator set. Generators come out sorted by
    /// exponent vector so equal ideals compare equal.
    pub fn new(mut gens: Vec<Monomial>) -> Self {
        gens.sort_by_key(|m| m.total_degree());
        let mut min: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !min.iter().any(|h| h.divides(&g)) {
                min.push(g);
            }
        }
        min.sort();
        MonomialIdeal { gens: min }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_one(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }
}

/// Reduced Gröbner basis, sorted ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing>,
    gens: Vec<MultiPoly<F>>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.ring == other.ring
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Full reduction of `p` by `reducers`, always dividing by the first reducer
/// whose leading monomial divides the current term.
pub fn reduce_by<F: Field>(p: &MultiPoly<F>, reducers: &[MultiPoly<F>]) -> MultiPoly<F> {
    let ring = p.ring().clone();
    let mut done: Vec<(Monomial, F)> = Vec::new();
    let mut rest: VecDeque<(Monomial, F)> = p.terms().iter().cloned().collect();
    while let Some((m, c)) = rest.pop_front() {
        let hit = reducers
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match hit {
            None => done.push((m, c)),
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let q = lm.quotient_of(&m).unwrap();
                let factor = c / lc.clone();
                // subtract factor*q*tail(g) from the remaining terms
                let tail = MultiPoly::from_sorted_terms(&ring, g.terms()[1..].to_vec());
                let current = MultiPoly::from_sorted_terms(&ring, rest.into_iter().collect());
                rest = current.sub_scaled(&q, &factor, &tail).into_terms().into();
            }
        }
    }
    MultiPoly::from_sorted_terms(&ring, done)
}

fn s_polynomial<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, lcm: &Monomial) -> MultiPoly<F> {
    let (lf, cf) = f.leading_term().unwrap();
    let (lg, cg) = g.leading_term().unwrap();
    let a = f.mul_term(&lf.quotient_of(lcm).unwrap(), &cf.inv());
    a.sub_scaled(&lg.quotient_of(lcm).unwrap(), &cg.inv(), g)
}

impl<F: Field> GroebnerBasis<F> {
    /// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
    ///
    /// Pairs are processed smallest lcm first (normal strategy). Pairs with
    /// coprime leading monomials are skipped, as are pairs covered by the
    /// chain criterion.
    pub fn compute(ring: &Arc<PolyRing>, gens: &[MultiPoly<F>]) -> Self {
        let mut basis: Vec<MultiPoly<F>> = Vec::new();
        let mut pending: Vec<Pair> = Vec::new();
        let mut live: HashSet<(usize, usize)> = HashSet::new();

        let add = |p: MultiPoly<F>,
                   basis: &mut Vec<MultiPoly<F>>,
                   pending: &mut Vec<Pair>,
                   live: &mut HashSet<(usize, usize)>| {
            let j = basis.len();
            let lj = p.leading_monomial().unwrap().clone();
            basis.push(p);
            for (i, g) in basis[..j].iter().enumerate() {
                let li = g.leading_monomial().unwrap();
                if li.is_coprime(&lj) {
                    continue;
                }
                pending.push(Pair {
                    i,
                    j,
                    lcm: li.lcm(&lj),
                });
                live.insert((i, j));
            }
        };

        for g in gens {
            assert!(PolyRing::same(g.ring(), ring), "generator from another ring");
            let r = reduce_by(&g.in_ring_unchecked(ring), &basis);
            if !r.is_zero() {
                add(r.monic(), &mut basis, &mut pending, &mut live);
            }
        }

        while !pending.is_empty() {
            let best = (0..pending.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pending[a], &pending[b]);
                    ring.cmp(&pa.lcm, &pb.lcm)
                        .then(pa.j.cmp(&pb.j))
                        .then(pa.i.cmp(&pb.i))
                })
                .unwrap();
            let Pair { i, j, lcm } = pending.swap_remove(best);
            live.remove(&(i, j));

            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].leading_monomial().unwrap().divides(&lcm)
                    && !live.contains(&(i.min(k), i.max(k)))
                    && !live.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j], &lcm);
            let r = reduce_by(&s, &basis);
            if !r.is_zero() {
                add(r.monic(), &mut basis, &mut pending, &mut live);
            }
        }

        GroebnerBasis::reduce_basis(ring, basis)
    }

    fn reduce_basis(ring: &Arc<PolyRing>, basis: Vec<MultiPoly<F>>) -> Self {
        let lms: Vec<&Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap()).collect();
        let keep: Vec<usize> = (0..basis.len())
            .filter(|&i| {
                !(0..basis.len()).any(|j| {
                    j != i && lms[j].divides(lms[i]) && (lms[j] != lms[i] || j < i)
                })
            })
            .collect();
        let minimal: Vec<MultiPoly<F>> = keep.iter().map(|&i| basis[i].clone()).collect();
        let mut reduced: Vec<MultiPoly<F>> = (0..minimal.len())
            .map(|i| {
                let others: Vec<MultiPoly<F>> = minimal
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                reduce_by(&minimal[i], &others).monic()
            })
            .collect();
        reduced.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        GroebnerBasis {
            ring: ring.clone(),
            gens: reduced,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.leading_monomial().unwrap().is_one())
    }

    pub fn normal_form(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        reduce_by(p, &self.gens)
    }

    pub fn contains(&self, p: &MultiPoly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn leading_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.gens
                .iter()
                .map(|g| g.leading_monomial().unwrap().clone())
                .collect(),
        )
    }

    /// Monomials of weighted degree `deg` outside the leading ideal, descending
    /// in the monomial order. These form a k-basis of `(S/I)_deg`.
    pub fn standard_monomials(&self, deg: usize) -> Vec<Monomial> {
        let lead: Vec<&Monomial> = self.gens.iter().map(|g| g.leading_monomial().unwrap()).collect();
        let mut out: Vec<Monomial> = monomials_of_degree(self.ring.weights(), deg)
            .into_iter()
            .filter(|m| !lead.iter().any(|l| l.divides(m)))
            .collect();
        out.sort_by(|a, b| self.ring.cmp(b, a));
        out
    }
}

impl<F: Field> MultiPoly<F> {
    /// Rebinds to an equal ring handle without re-sorting.
    pub(crate) fn in_ring_unchecked(&self, ring: &Arc<PolyRing>) -> MultiPoly<F> {
        if Arc::ptr_eq(self.ring(), ring) {
            return self.clone();
        }
        MultiPoly::from_sorted_terms(ring, self.terms().to_vec())
    }
}

/// `true` when `p` has no term divisible by a leading monomial of `gb`.
pub fn is_reduced_against<F: Field>(p: &MultiPoly<F>, gb: &GroebnerBasis<F>) -> bool {
    let lead = gb.leading_ideal();
    p.terms().iter().all(|(m, c)| c.is_zero() || !lead.contains(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    type Q = BigRational;
    type P = MultiPoly<Q>;

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::standard(names)
    }

    fn poly(r: &Arc<PolyRing>, t: &[(i64, &[u32])]) -> P {
        P::from_i64_terms(r, t)
    }

    fn minors(r: &Arc<PolyRing>, d: usize) -> Vec<P> {
        // 2x2 minors of [[x0..x_{d-1}],[x1..x_d]]
        let n = d + 1;
        let e = |idx: &[usize]| {
            let mut v = vec![0u32; n];
            for &i in idx {
                v[i] += 1;
            }
            v
        };
        let mut out = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                // x_a x_{b+1} - x_{a+1} x_b
                let p1 = e(&[a, b + 1]);
                let p2 = e(&[a + 1, b]);
                out.push(poly(r, &[(1, &p1), (-1, &p2)]));
            }
        }
        out
    }

    /// Independent oracle: dim I_j by row-reducing all m*g of degree j.
    fn brute_ideal_dim(r: &Arc<PolyRing>, gens: &[P], j: usize) -> usize {
        let basis = monomials_of_degree(r.weights(), j);
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for g in gens {
            let crate::ring::Homogeneity::Degree(dg) = g.homogeneity() else {
                continue;
            };
            if dg > j {
                continue;
            }
            for m in monomials_of_degree(r.weights(), j - dg) {
                let p = g.mul_term(&m, &Q::one());
                rows.push(
                    basis.iter().map(|b| p.coeff_of(b)).collect(),
                );
            }
        }
        dense_rank(rows)
    }

    fn dense_rank(mut rows: Vec<Vec<Q>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let piv = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if !row[c].is_zero() {
                    let f = &row[c] / &piv[c];
                    for k in c..ncols {
                        row[k] = &row[k] - &f * &piv[k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x", "y"]);
        let gens = vec![poly(&r, &[(1, &[1, 0])]), poly(&r, &[(1, &[0, 1])])];
        let gb = GroebnerBasis::compute(&r, &gens);
        assert_eq!(gb.generators().len(), 2);
        assert_eq!(
            gb.leading_ideal().gens(),
            &[Monomial::new(vec![0, 1]), Monomial::new(vec![1, 0])]
        );
    }

    #[test]
    fn single_conic() {
        let r = ring(&["x0", "x1", "x2"]);
        let f = poly(&r, &[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        let gb = GroebnerBasis::compute(&r, &[f.clone()]);
        assert_eq!(gb.generators(), &[-&f]);
        assert_eq!(gb.leading_ideal().gens(), &[Monomial::new(vec![0, 2, 0])]);
        let x1sq = poly(&r, &[(1, &[0, 2, 0])]);
        assert_eq!(gb.normal_form(&x1sq), poly(&r, &[(1, &[1, 0, 1])]));
        assert_eq!(gb.standard_monomials(2).len(), 5);
    }

    #[test]
    fn normal_form_trivia() {
        let r = ring(&["x", "y"]);
        let gb = GroebnerBasis::compute(&r, &[poly(&r, &[(1, &[1, 0])])]);
        assert!(gb.normal_form(&P::zero(&r)).is_zero());
        assert!(gb.normal_form(&poly(&r, &[(1, &[1, 1])])).is_zero());
    }

    #[test]
    fn empty_input() {
        let r = ring(&["x", "y"]);
        let gb = GroebnerBasis::<Q>::compute(&r, &[]);
        assert!(gb.generators().is_empty());
        assert!(gb.leading_ideal().is_empty());
        assert_eq!(gb.standard_monomials(0), vec![Monomial::new(vec![0, 0])]);
        assert_eq!(gb.standard_monomials(3).len(), 4);
    }

    #[test]
    fn standard_monomials_examples() {
        let r = ring(&["x", "y"]);
        let gb = GroebnerBasis::compute(&r, &[poly(&r, &[(1, &[1, 0])]), poly(&r, &[(1, &[0, 1])])]);
        assert_eq!(gb.standard_monomials(0), vec![Monomial::new(vec![0, 0])]);
        assert!(gb.standard_monomials(1).is_empty());

        let w = PolyRing::weighted(&["a", "b"], &[2, 2]).unwrap();
        let gb = GroebnerBasis::<Q>::compute(&w, &[]);
        assert!(gb.standard_monomials(1).is_empty());
        assert_eq!(gb.standard_monomials(4).len(), 3);
    }

    #[test]
    fn conic_degree_two_matches_brute_force() {
        // The conic quotient in three variables has 5 standard monomials in degree 2
        // (6 monomials minus the one relation). Oracle: 6 - rank(I_2).
        let r = ring(&["x0", "x1", "x2"]);
        let f = poly(&r, &[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        let gb = GroebnerBasis::compute(&r, &[f.clone()]);
        for j in 0..=8 {
            let total = monomials_of_degree(r.weights(), j).len();
            assert_eq!(gb.standard_monomials(j).len(), total - brute_ideal_dim(&r, &[f.clone()], j));
        }
    }

    #[test]
    fn twisted_cubic_matches_brute_force() {
        let r = ring(&["x0", "x1", "x2", "x3"]);
        let gens = minors(&r, 3);
        let gb = GroebnerBasis::compute(&r, &gens);
        for g in &gens {
            assert!(gb.contains(g));
        }
        for j in 0..=8 {
            let total = monomials_of_degree(r.weights(), j).len();
            let expect = total - brute_ideal_dim(&r, &gens, j);
            assert_eq!(gb.standard_monomials(j).len(), expect, "degree {j}");
            // cone over the twisted cubic: HF(j) = 3j + 1
            assert_eq!(expect, 3 * j + 1);
        }
        assert_eq!(GroebnerBasis::compute(&r, gb.generators()), gb);
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x", "y"]);
        let gb = GroebnerBasis::compute(
            &r,
            &[poly(&r, &[(1, &[1, 0]), (1, &[0, 0])]), poly(&r, &[(1, &[1, 0])])],
        );
        assert!(gb.is_unit());
        assert_eq!(gb.generators().len(), 1);
    }

    #[test]
    fn reduced_basis_property() {
        let r = ring(&["x", "y", "z"]);
        let gens = vec![
            poly(&r, &[(1, &[2, 0, 0]), (-1, &[0, 1, 1])]),
            poly(&r, &[(1, &[1, 1, 0]), (-1, &[0, 0, 2])]),
        ];
        let gb = GroebnerBasis::compute(&r, &gens);
        for (i, g) in gb.generators().iter().enumerate() {
            assert!(g.leading_coeff().unwrap().is_one());
            let others: Vec<P> = gb
                .generators()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let lead = MonomialIdeal::new(
                others.iter().map(|h| h.leading_monomial().unwrap().clone()).collect(),
            );
            assert!(g.terms().iter().all(|(m, _)| !lead.contains(m)));
        }
        for g in &gens {
            assert!(gb.contains(g));
        }
    }

    fn random_homogeneous(r: &Arc<PolyRing>, deg: usize, coeffs: &[i64]) -> P {
        let ms = monomials_of_degree(r.weights(), deg);
        P::from_terms(
            r,
            ms.into_iter()
                .zip(coeffs.iter().cycle())
                .map(|(m, &c)| (m, Q::from_integer(c.into())))
                .collect(),
        )
    }

    fn random_ideal() -> impl Strategy<Value = (usize, Vec<(usize, Vec<i64>)>)> {
        (
            2usize..=4,
            prop::collection::vec((2usize..=3, prop::collection::vec(-2i64..=2, 1..12)), 1..=3),
        )
    }

    fn names(n: usize) -> Vec<&'static str> {
        ["a", "b", "c", "d"][..n].to_vec()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn standard_monomials_match_rank((n, shape) in random_ideal()) {
            let r = ring(&names(n));
            let gens: Vec<P> = shape.iter().map(|(d, c)| random_homogeneous(&r, *d, c)).collect();
            let gb = GroebnerBasis::compute(&r, &gens);
            for j in 0..=8 {
                let total = monomials_of_degree(r.weights(), j).len();
                prop_assert_eq!(gb.standard_monomials(j).len(), total - brute_ideal_dim(&r, &gens, j));
            }
            for g in &gens {
                prop_assert!(gb.contains(g));
            }
            prop_assert_eq!(&GroebnerBasis::compute(&r, gb.generators()), &gb);
        }

        #[test]
        fn normal_form_is_confluent((n, shape) in random_ideal(), seed in any::<u64>(), pc in prop::collection::vec(-3i64..=3, 1..10)) {
            let r = ring(&names(n));
            let gens: Vec<P> = shape.iter().map(|(d, c)| random_homogeneous(&r, *d, c)).collect();
            let gb = GroebnerBasis::compute(&r, &gens);
            let p = random_homogeneous(&r, 4, &pc);
            let nf = gb.normal_form(&p);
            prop_assert!(is_reduced_against(&nf, &gb));
            prop_assert_eq!(&gb.normal_form(&nf), &nf);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..3 {
                let mut shuffled = gb.generators().to_vec();
                shuffled.shuffle(&mut rng);
                prop_assert_eq!(&reduce_by(&p, &shuffled), &nf);
            }
        }

        #[test]
        fn lex_and_revlex_agree_on_dimensions((n, shape) in random_ideal()) {
            let r = ring(&names(n));
            let lex = r.with_order(MonomialOrder::WeightedLex).unwrap();
            let gens: Vec<P> = shape.iter().map(|(d, c)| random_homogeneous(&r, *d, c)).collect();
            let gens_lex: Vec<P> = gens.iter().map(|g| g.in_ring(&lex).unwrap()).collect();
            let a = GroebnerBasis::compute(&r, &gens);
            let b = GroebnerBasis::compute(&lex, &gens_lex);
            for j in 0..=6 {
                prop_assert_eq!(a.standard_monomials(j).len(), b.standard_monomials(j).len());
            }
        }
    }
}
