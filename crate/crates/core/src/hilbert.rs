//! Hilbert series of graded quotients, with dimension and multiplicity.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{IntPoly, RatFun};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, MonomialIdeal};
use crate::ring::{GradedRing, Monomial, MultiPoly};
use crate::scalar::Field;

/// `HS(t) = numerator(t) / ∏ (1 - t^{d_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    numerator: IntPoly,
    weights: Vec<u32>,
}

/// Krull dimension (pole order at `t = 1`) and multiplicity `e(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimMult {
    pub dim: u32,
    pub mult: BigRational,
}

impl fmt::Display for DimMult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dim, self.mult)
    }
}

impl HilbertSeries {
    pub fn new(numerator: IntPoly, weights: Vec<u32>) -> Self {
        HilbertSeries { numerator, weights }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `∏ (1 - t^{d_i})`
    pub fn denominator(&self) -> IntPoly {
        self.weights
            .iter()
            .fold(IntPoly::one(), |acc, &d| &acc * &IntPoly::one_minus_t_pow(d as usize))
    }

    pub fn to_ratfun(&self) -> RatFun {
        RatFun::new(self.numerator.clone(), self.denominator()).expect("denominator is a unit series")
    }

    /// Hilbert function values `dim_k M_j` for `j = 0..=n`.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        let den = self.denominator();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        // den has constant term 1
        for k in 0..=n {
            let mut acc = self.numerator.coeff(k);
            for i in 1..=k.min(den.degree().unwrap_or(0)) {
                let di = &den.coeffs()[i];
                if !di.is_zero() {
                    acc -= di * &out[k - i];
                }
            }
            out.push(acc);
        }
        out
    }

    /// Dimension and multiplicity: write `numerator = (1-t)^k q` with `q(1) != 0`;
    /// then `dim = s - k` and `e(1) = q(1) / ∏ d_i`.
    pub fn dim_and_mult(&self) -> Result<DimMult> {
        let (k, q) = self
            .numerator
            .one_minus_t_valuation()
            .map_err(|_| Error::ZeroModule)?;
        let s = self.weights.len() as u32;
        assert!(k <= s, "numerator has more (1 - t) factors than the denominator");
        let prod: BigInt = self.weights.iter().map(|&d| BigInt::from(d)).product();
        let mult = BigRational::new(q.eval_at_one(), prod);
        debug_assert!(mult.is_positive(), "multiplicity must be positive");
        Ok(DimMult { dim: s - k, mult })
    }

    /// Sum of all coefficients when the module has finite length.
    pub fn length(&self) -> Option<BigInt> {
        let r = self.to_ratfun();
        if r.denominator() != &IntPoly::one() {
            return None;
        }
        Some(r.numerator().eval_at_one())
    }
}

fn pure_power_var(m: &Monomial) -> Option<usize> {
    let mut sup = m.support();
    let v = sup.next()?;
    sup.next().is_none().then_some(v)
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !a.is_coprime(b) {
                return false;
            }
        }
    }
    true
}

struct NumeratorCache<'w> {
    weights: &'w [u32],
    memo: HashMap<Vec<Monomial>, IntPoly>,
}

impl NumeratorCache<'_> {
    fn numerator(&mut self, gens: Vec<Monomial>) -> IntPoly {
        let ideal = MonomialIdeal::new(gens);
        if ideal.is_empty() {
            return IntPoly::one();
        }
        if ideal.contains_one() {
            return IntPoly::zero();
        }
        let gens = ideal.gens();
        if pairwise_coprime(gens) {
            return gens.iter().fold(IntPoly::one(), |acc, m| {
                &acc * &IntPoly::one_minus_t_pow(m.degree(self.weights))
            });
        }
        if let Some(hit) = self.memo.get(gens) {
            return hit.clone();
        }

        // pivot: most frequent variable, lowest index on ties
        let n = self.weights.len();
        let mut counts = vec![0usize; n];
        for g in gens {
            for v in g.support() {
                counts[v] += 1;
            }
        }
        let var = (0..n).max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a))).unwrap();
        // smallest exponent of var among generators that are not pure powers of var;
        // a pure power x^a that is a minimal generator has a larger exponent
        let e = gens
            .iter()
            .filter(|g| g.exps()[var] > 0 && pure_power_var(g) != Some(var))
            .map(|g| g.exps()[var])
            .min()
            .expect("pivot variable occurs in a mixed generator");
        let mut pe = vec![0u32; n];
        pe[var] = e;
        let pivot = Monomial::new(pe);

        let mut with_pivot = gens.to_vec();
        with_pivot.push(pivot.clone());
        let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&pivot)).collect();

        // N(I) = N(I + <p>) + t^{deg p} N(I : p)
        let a = self.numerator(with_pivot);
        let b = self.numerator(colon).shift(pivot.degree(self.weights));
        let out = &a + &b;
        self.memo.insert(gens.to_vec(), out.clone());
        out
    }
}

/// Numerator of the Hilbert series of `S / mi` over `∏ (1 - t^{d_i})`.
pub fn hilbert_numerator(mi: &MonomialIdeal, weights: &[u32]) -> IntPoly {
    let mut cache = NumeratorCache {
        weights,
        memo: HashMap::new(),
    };
    cache.numerator(mi.gens().to_vec())
}

/// Hilbert series of `R / I`, computed from the leading ideal of the
/// relations plus the generators of `I`.
pub fn hilbert_series<F: Field>(ring: &GradedRing<F>, ideal: &[MultiPoly<F>]) -> Result<HilbertSeries> {
    ring.check_ideal(ideal)?;
    let gb = GroebnerBasis::compute(ring.ambient(), &ring.with_relations(ideal));
    Ok(hilbert_series_of_basis(&gb))
}

pub fn hilbert_series_of_basis<F: Field>(gb: &GroebnerBasis<F>) -> HilbertSeries {
    let weights = gb.ring().weights().to_vec();
    let num = hilbert_numerator(&gb.leading_ideal(), &weights);
    HilbertSeries::new(num, weights)
}

/// Hilbert series of `R` itself.
pub fn ring_hilbert_series<F: Field>(ring: &GradedRing<F>) -> HilbertSeries {
    hilbert_series(ring, &[]).expect("relations already validated")
}

/// `true` when `e(1)` values satisfy `big = factor * small`.
pub fn scales_by(big: &DimMult, small: &DimMult, factor: u64) -> bool {
    big.mult == &small.mult * BigRational::from_integer(factor.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::ring::{monomials_of_degree, MonomialOrder, PolyRing};
    use proptest::prelude::*;

    type Q = BigRational;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    /// Oracle: count monomials outside the ideal degree by degree.
    fn brute_hilbert_function(mi: &MonomialIdeal, weights: &[u32], n: usize) -> Vec<BigInt> {
        (0..=n)
            .map(|j| {
                BigInt::from(
                    monomials_of_degree(weights, j)
                        .iter()
                        .filter(|m| !mi.contains(m))
                        .count(),
                )
            })
            .collect()
    }

    #[test]
    fn numerator_examples() {
        let empty = MonomialIdeal::new(vec![]);
        assert_eq!(hilbert_numerator(&empty, &[1, 1]), IntPoly::one());
        let sq = MonomialIdeal::new(vec![mono(&[0, 2, 0])]);
        assert_eq!(hilbert_numerator(&sq, &[1, 1, 1]), IntPoly::from_i64s(&[1, 0, -1]));
        let m2 = MonomialIdeal::new(vec![mono(&[2, 0, 0]), mono(&[1, 1, 0]), mono(&[0, 2, 0])]);
        let n = hilbert_numerator(&m2, &[1, 1, 1]);
        assert_eq!(n, IntPoly::from_i64s(&[1, 0, -3, 2]));
        let hs = HilbertSeries::new(n, vec![1, 1, 1]);
        assert_eq!(hs.expand(6), brute_hilbert_function(&m2, &[1, 1, 1], 6));
        let unit = MonomialIdeal::new(vec![mono(&[0, 0])]);
        assert!(hilbert_numerator(&unit, &[1, 1]).is_zero());
    }

    #[test]
    fn dim_mult_examples() {
        let field = HilbertSeries::new(
            &IntPoly::one_minus_t_pow(2) * &IntPoly::one_minus_t_pow(3),
            vec![2, 3],
        );
        assert_eq!(field.dim_and_mult().unwrap(), DimMult { dim: 0, mult: Q::one() });
        let cubic = HilbertSeries::new(IntPoly::one_minus_t_pow(3), vec![1, 1, 1]);
        assert_eq!(
            cubic.dim_and_mult().unwrap(),
            DimMult { dim: 2, mult: Q::from_integer(3.into()) }
        );
        let line = HilbertSeries::new(IntPoly::one_minus_t_power(2), vec![1, 1, 1]);
        assert_eq!(line.dim_and_mult().unwrap(), DimMult { dim: 1, mult: Q::one() });
        let zero = HilbertSeries::new(IntPoly::zero(), vec![1]);
        assert_eq!(zero.dim_and_mult(), Err(Error::ZeroModule));
        assert_eq!(Error::ZeroModule.to_string(), "zero module has no dimension");
    }

    #[test]
    fn weighted_multiplicity() {
        // k[a, b] with weights 2, 3: HS = 1 / ((1 - t^2)(1 - t^3)), e(1) = 1/6
        let hs = HilbertSeries::new(IntPoly::one(), vec![2, 3]);
        assert_eq!(
            hs.dim_and_mult().unwrap(),
            DimMult { dim: 2, mult: Q::new(1.into(), 6.into()) }
        );
    }

    fn cusp_ring() -> GradedRing<Q> {
        let s = PolyRing::standard(&["x", "y", "z"]);
        let f = MultiPoly::from_i64_terms(&s, &[(1, &[0, 2, 1]), (-1, &[3, 0, 0])]);
        GradedRing::new(s, vec![f]).unwrap()
    }

    #[test]
    fn cuspidal_cubic_lines() {
        let r = cusp_ring();
        let x = r.var(0);
        let y = r.var(1);
        let line = hilbert_series(&r, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(line.dim_and_mult().unwrap(), DimMult { dim: 1, mult: Q::one() });
        assert_eq!(line.to_ratfun(), "1 / (1 - t)".parse().unwrap());
        let sq = hilbert_series(&r, &[x.pow(2), &x * &y, y.pow(2)]).unwrap();
        assert_eq!(
            sq.dim_and_mult().unwrap(),
            DimMult { dim: 1, mult: Q::from_integer(3.into()) }
        );
        let whole = ring_hilbert_series(&r);
        assert_eq!(whole.numerator(), &IntPoly::one_minus_t_pow(3));
        assert_eq!(
            whole.dim_and_mult().unwrap(),
            DimMult { dim: 2, mult: Q::from_integer(3.into()) }
        );
        // brute-force: dim R_j = C(j+2,2) - C(j-1,2) = 3j for j >= 1
        let hf = whole.expand(6);
        for (j, v) in hf.iter().enumerate() {
            let expect = if j == 0 { 1 } else { 3 * j as i64 };
            assert_eq!(v, &BigInt::from(expect));
        }
    }

    #[test]
    fn inhomogeneous_generator_named() {
        let r = cusp_ring();
        let bad = &r.var(0) + &r.var(1).pow(2);
        match hilbert_series(&r, &[bad]) {
            Err(Error::NotHomogeneous(s)) => assert_eq!(s, "y^2 + x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn order_independence_on_cones() {
        for ring in [cusp_ring(), conic_ring()] {
            let lex = ring.with_order(MonomialOrder::WeightedLex).unwrap();
            let a = ring_hilbert_series(&ring);
            let b = ring_hilbert_series(&lex);
            assert_eq!(a, b);
            let gens_a = vec![ring.var(0), ring.var(1)];
            let gens_b: Vec<_> = gens_a.iter().map(|g| g.in_ring(lex.ambient()).unwrap()).collect();
            assert_eq!(
                hilbert_series(&ring, &gens_a).unwrap(),
                hilbert_series(&lex, &gens_b).unwrap()
            );
        }
    }

    fn conic_ring() -> GradedRing<Q> {
        let s = PolyRing::standard(&["x0", "x1", "x2"]);
        let f = MultiPoly::from_i64_terms(&s, &[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        GradedRing::new(s, vec![f]).unwrap()
    }

    #[test]
    fn regular_element_additivity() {
        // quadric cone xw - yz and cubic cone; x is a non-zerodivisor of degree 1,
        // a generic linear form too.
        let s4 = PolyRing::standard(&["x", "y", "z", "w"]);
        let q = MultiPoly::from_i64_terms(&s4, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]);
        let quadric = GradedRing::<Q>::new(s4, vec![q]).unwrap();
        for ring in [quadric, cusp_ring()] {
            let hs_r = ring_hilbert_series(&ring);
            for f in [ring.var(0), ring.var(0).pow(2)] {
                let e = match f.homogeneity() {
                    crate::ring::Homogeneity::Degree(d) => d,
                    _ => unreachable!(),
                };
                let hs_f = hilbert_series(&ring, &[f]).unwrap();
                assert_eq!(hs_f.numerator(), &(hs_r.numerator() * &IntPoly::one_minus_t_pow(e)));
            }
        }
    }

    fn monomial_ideal(nvars: usize) -> impl Strategy<Value = Vec<Monomial>> {
        prop::collection::vec(prop::collection::vec(0u32..4, nvars).prop_map(Monomial::new), 0..6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn numerator_matches_brute_force(gens in monomial_ideal(3), w in prop::collection::vec(1u32..3, 3)) {
            let mi = MonomialIdeal::new(gens);
            let hs = HilbertSeries::new(hilbert_numerator(&mi, &w), w.clone());
            prop_assert_eq!(hs.expand(10), brute_hilbert_function(&mi, &w, 10));
            if !hs.is_zero() {
                let dm = hs.dim_and_mult().unwrap();
                prop_assert!(dm.mult.is_positive());
            }
        }

        #[test]
        fn four_variable_numerators(gens in monomial_ideal(4)) {
            let w = [1, 1, 1, 1];
            let mi = MonomialIdeal::new(gens);
            let hs = HilbertSeries::new(hilbert_numerator(&mi, &w), w.to_vec());
            prop_assert_eq!(hs.expand(8), brute_hilbert_function(&mi, &w, 8));
        }
    }
}
