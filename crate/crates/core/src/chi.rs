//! Closed-form `χ(M, N)(t) = HS_M HS_N / HS_R` for cyclic modules, its pole
//! decomposition at `t = 1`, and Cartier-type local multiplicities.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{ExtendedValue, RatFun};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_series, ring_hilbert_series, DimMult, HilbertSeries};
use crate::ring::{GradedRing, MultiPoly};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChiClass {
    Infinite,
    PositiveFinite,
    Zero,
}

impl fmt::Display for ChiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChiClass::Infinite => "INFINITE",
            ChiClass::PositiveFinite => "POSITIVE_FINITE",
            ChiClass::Zero => "ZERO",
        })
    }
}

impl ChiClass {
    pub fn from_defect(c: i64) -> Self {
        match c.signum() {
            1 => ChiClass::Infinite,
            0 => ChiClass::PositiveFinite,
            _ => ChiClass::Zero,
        }
    }

    /// `None` for a negative or otherwise impossible value.
    pub fn from_value(v: &ExtendedValue) -> Option<Self> {
        match v {
            ExtendedValue::Infinity => Some(ChiClass::Infinite),
            ExtendedValue::Finite(q) if q.is_zero() => Some(ChiClass::Zero),
            ExtendedValue::Finite(q) if q.is_positive() => Some(ChiClass::PositiveFinite),
            ExtendedValue::Finite(_) => None,
        }
    }
}

/// `χ(t) = e_{M,N}(t) / (1 - t)^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbDecomposition {
    pub defect: i64,
    pub e_mn: RatFun,
    pub e_mn_at_1: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiResult {
    pub chi: RatFun,
    pub module_m: DimMult,
    pub module_n: DimMult,
    pub ring: DimMult,
    pub defect: i64,
    pub e_mn: RatFun,
    pub e_mn_at_1: BigRational,
    pub value: ExtendedValue,
    pub class: ChiClass,
}

impl ChiResult {
    pub fn dims(&self) -> (u32, u32, u32) {
        (self.module_m.dim, self.module_n.dim, self.ring.dim)
    }

    /// `e_M(1) e_N(1) / e_R(1)`
    pub fn mult_product(&self) -> BigRational {
        &self.module_m.mult * &self.module_n.mult / &self.ring.mult
    }
}

fn nonzero_quotient<F: Field>(ring: &GradedRing<F>, ideal: &[MultiPoly<F>]) -> Result<HilbertSeries> {
    let hs = hilbert_series(ring, ideal)?;
    if hs.is_zero() {
        return Err(Error::UnitIdeal);
    }
    Ok(hs)
}

/// `χ(R/I, R/J)(t)` in lowest terms.
pub fn chi_series<F: Field>(ring: &GradedRing<F>, i: &[MultiPoly<F>], j: &[MultiPoly<F>]) -> Result<RatFun> {
    let hm = nonzero_quotient(ring, i)?;
    let hn = nonzero_quotient(ring, j)?;
    let hr = ring_hilbert_series(ring);
    chi_from_series(&hm, &hn, &hr)
}

fn chi_from_series(hm: &HilbertSeries, hn: &HilbertSeries, hr: &HilbertSeries) -> Result<RatFun> {
    if hr.is_zero() {
        return Err(Error::UnitIdeal);
    }
    RatFun::new(
        hm.numerator() * hn.numerator(),
        &hr.denominator() * hr.numerator(),
    )
}

pub fn ab_decompose(chi: &RatFun, dims: (u32, u32, u32)) -> Result<AbDecomposition> {
    let defect = i64::from(dims.0) + i64::from(dims.1) - i64::from(dims.2);
    let order = chi.order_at_one().ok_or(Error::ZeroModule)?;
    if order != -defect {
        return Err(Error::PoleOrderMismatch {
            pole_order: -order,
            defect,
        });
    }
    let e_mn = chi.mul_one_minus_t_power(defect)?;
    let e_mn_at_1 = match e_mn.eval_at_one() {
        ExtendedValue::Finite(q) if q.is_positive() => q,
        _ => {
            return Err(Error::PoleOrderMismatch {
                pole_order: -order,
                defect,
            })
        }
    };
    Ok(AbDecomposition {
        defect,
        e_mn,
        e_mn_at_1,
    })
}

/// Class from the defect, cross-checked against the value at `t = 1`.
pub fn classify(cr: &ChiResult) -> Result<ChiClass> {
    let by_dimension = ChiClass::from_defect(cr.defect);
    match ChiClass::from_value(&cr.value) {
        Some(c) if c == by_dimension => Ok(c),
        other => Err(Error::ClassMismatch {
            by_dimension: by_dimension.to_string(),
            by_value: other.map_or_else(|| cr.value.to_string(), |c| c.to_string()),
        }),
    }
}

/// Everything about `χ(R/I, R/J)`.
pub fn chi<F: Field>(ring: &GradedRing<F>, i: &[MultiPoly<F>], j: &[MultiPoly<F>]) -> Result<ChiResult> {
    let hm = nonzero_quotient(ring, i)?;
    let hn = nonzero_quotient(ring, j)?;
    let hr = ring_hilbert_series(ring);
    let chi = chi_from_series(&hm, &hn, &hr)?;
    let module_m = hm.dim_and_mult()?;
    let module_n = hn.dim_and_mult()?;
    let ring_dm = hr.dim_and_mult()?;
    let ab = ab_decompose(&chi, (module_m.dim, module_n.dim, ring_dm.dim))?;
    let value = chi.eval_at_one();
    let mut cr = ChiResult {
        chi,
        module_m,
        module_n,
        ring: ring_dm,
        defect: ab.defect,
        e_mn: ab.e_mn,
        e_mn_at_1: ab.e_mn_at_1,
        value,
        class: ChiClass::Zero,
    };
    cr.class = classify(&cr)?;
    Ok(cr)
}

/// `length R / (I_C + <f>)`.
pub fn cartier_mult<F: Field>(ring: &GradedRing<F>, f: &MultiPoly<F>, ic: &[MultiPoly<F>]) -> Result<BigInt> {
    let gens: Vec<MultiPoly<F>> = ic.iter().chain(std::iter::once(f)).cloned().collect();
    let hs = hilbert_series(ring, &gens)?;
    if hs.is_zero() {
        return Err(Error::UnitIdeal);
    }
    hs.length().ok_or(Error::NotProper)
}

/// `(1/e) length R / (I_C + <f>)` where `f` cuts out `eD`.
pub fn qcartier_mult<F: Field>(
    ring: &GradedRing<F>,
    f: &MultiPoly<F>,
    e: i64,
    ic: &[MultiPoly<F>],
) -> Result<BigRational> {
    if e <= 0 {
        return Err(Error::NonPositiveMultiple);
    }
    Ok(BigRational::new(cartier_mult(ring, f, ic)?, e.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;
    use crate::hilbert::scales_by;
    use crate::parse::polys;
    use crate::ring::{Monomial, PolyRing};
    use num_traits::One;
    use proptest::prelude::*;

    type Q = BigRational;

    fn ratfun(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn ring(vars: &[&str], rels: &[&str]) -> GradedRing<Q> {
        let s = PolyRing::standard(vars);
        let r = polys(&s, rels);
        GradedRing::new(s, r).unwrap()
    }

    fn ideal(r: &GradedRing<Q>, gens: &[&str]) -> Vec<MultiPoly<Q>> {
        polys(r.ambient(), gens)
    }

    fn rational_normal_cone(d: usize) -> (GradedRing<Q>, Vec<MultiPoly<Q>>, Vec<MultiPoly<Q>>) {
        let names: Vec<String> = (0..=d).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut rels = Vec::new();
        // 2x2 minors of the 2 x d Hankel matrix
        for a in 0..d {
            for b in a + 1..d {
                rels.push(format!("x{}*x{} - x{}*x{}", a, b + 1, a + 1, b));
            }
        }
        let s = PolyRing::standard(&refs);
        let rel_refs: Vec<&str> = rels.iter().map(String::as_str).collect();
        let r = GradedRing::new(s.clone(), polys(&s, &rel_refs)).unwrap();
        let i1: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
        let i2: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        let i1r: Vec<&str> = i1.iter().map(String::as_str).collect();
        let i2r: Vec<&str> = i2.iter().map(String::as_str).collect();
        let (a, b) = (polys(&s, &i1r), polys(&s, &i2r));
        (r, a, b)
    }

    #[test]
    fn fermat_cubic_lines() {
        let r = ring(&["x", "y", "z"], &["x^3 + y^3 + z^3"]);
        let (i, j) = (ideal(&r, &["x + y", "z"]), ideal(&r, &["y", "x + z"]));
        let cr = chi(&r, &i, &j).unwrap();
        assert_eq!(cr.chi, ratfun("1/(1 + t + t^2)"));
        assert_eq!(cr.value, ExtendedValue::Finite(q(1, 3)));
        assert_eq!(cr.class, ChiClass::PositiveFinite);
        assert_eq!(cr.dims(), (1, 1, 2));
        assert_eq!(cr.e_mn_at_1, q(1, 3));
        assert_eq!(cr.e_mn_at_1, cr.mult_product());
    }

    #[test]
    fn rational_normal_cones() {
        for d in 2..=5 {
            let (r, i, j) = rational_normal_cone(d);
            let cr = chi(&r, &i, &j).unwrap();
            let den = IntPoly::from_i64s(&[1, d as i64 - 1]);
            assert_eq!(cr.chi, RatFun::new(IntPoly::one(), den).unwrap(), "d = {d}");
            assert_eq!(cr.value, ExtendedValue::Finite(q(1, d as i64)));
            assert_eq!(cr.class, ChiClass::PositiveFinite);
            assert_eq!(cr.e_mn_at_1, cr.mult_product());
        }
    }

    #[test]
    fn two_planes() {
        let r = ring(&["x", "y", "z", "w"], &["x*z", "x*w", "y*z", "y*w"]);
        let cr = chi(&r, &ideal(&r, &["x", "y", "w"]), &ideal(&r, &["y", "z", "w"])).unwrap();
        assert_eq!(cr.chi, ratfun("1/(1 + 2t - t^2)"));
        let coeffs: Vec<Q> = [1, -2, 5, -12, 29, -70, 169].iter().map(|&c| q(c, 1)).collect();
        assert_eq!(cr.chi.series_expand(6), coeffs);
        assert_eq!(cr.value, ExtendedValue::Finite(q(1, 2)));
        assert_eq!(cr.e_mn_at_1, cr.mult_product());
    }

    #[test]
    fn quadric_cone_planes() {
        let r = ring(&["x", "y", "z", "w"], &["x*w - y*z"]);
        let cr = chi(&r, &ideal(&r, &["x", "y"]), &ideal(&r, &["z", "w"])).unwrap();
        assert_eq!(cr.chi, ratfun("1/(1 - t^2)"));
        assert_eq!(cr.dims(), (2, 2, 3));
        assert_eq!(cr.defect, 1);
        assert_eq!(cr.e_mn, ratfun("1/(1 + t)"));
        assert_eq!(cr.e_mn_at_1, q(1, 2));
        assert_eq!(cr.e_mn_at_1, cr.mult_product());
        assert_eq!(cr.value, ExtendedValue::Infinity);
        assert_eq!(cr.class, ChiClass::Infinite);
    }

    #[test]
    fn point_against_line_is_zero() {
        let r = ring(&["x", "y", "z"], &["x^3 + y^3 + z^3"]);
        let cr = chi(&r, &ideal(&r, &["x", "y", "z"]), &ideal(&r, &["x + y", "z"])).unwrap();
        assert_eq!(cr.defect, -1);
        assert_eq!(cr.value, ExtendedValue::Finite(Q::zero()));
        assert_eq!(cr.class, ChiClass::Zero);
    }

    #[test]
    fn self_pairing() {
        let r = ring(&["x", "y", "z"], &["x*z - y^2"]);
        let cr = chi(&r, &[], &[]).unwrap();
        assert_eq!(cr.chi, ring_hilbert_series(&r).to_ratfun());
        assert_eq!(cr.defect, 2);
        assert_eq!(cr.e_mn_at_1, q(2, 1));
    }

    #[test]
    fn decomposition_rejects_wrong_dims() {
        let chi = ratfun("1/(1 - t^2)");
        assert!(matches!(ab_decompose(&chi, (2, 2, 2)), Err(Error::PoleOrderMismatch { .. })));
        let ab = ab_decompose(&chi, (2, 2, 3)).unwrap();
        assert_eq!(ab.e_mn, ratfun("1/(1 + t)"));
    }

    #[test]
    fn classify_catches_disagreement() {
        let r = ring(&["x", "y"], &[]);
        let mut cr = chi(&r, &ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert_eq!(classify(&cr).unwrap(), ChiClass::PositiveFinite);
        cr.value = ExtendedValue::Infinity;
        assert!(matches!(classify(&cr), Err(Error::ClassMismatch { .. })));
    }

    #[test]
    fn unit_and_inhomogeneous_rejected() {
        let r = ring(&["x", "y"], &[]);
        assert_eq!(chi_series(&r, &ideal(&r, &["1"]), &[]).unwrap_err(), Error::UnitIdeal);
        let err = chi_series(&r, &ideal(&r, &["x + 1"]), &[]).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
    }

    #[test]
    fn cartier_examples() {
        let conic = ring(&["x0", "x1", "x2"], &["x0*x2 - x1^2"]);
        let f = &ideal(&conic, &["x0"])[0];
        let c = ideal(&conic, &["x1", "x2"]);
        assert_eq!(cartier_mult(&conic, f, &c).unwrap(), BigInt::one());
        assert_eq!(qcartier_mult(&conic, f, 2, &c).unwrap(), q(1, 2));

        let plane = ring(&["x", "y"], &[]);
        let y = ideal(&plane, &["y"]);
        let x = &ideal(&plane, &["x"])[0];
        assert_eq!(cartier_mult(&plane, x, &y).unwrap(), BigInt::one());
        assert_eq!(qcartier_mult(&plane, x, 1, &y).unwrap(), q(1, 1));
        let x2 = &ideal(&plane, &["x^2"])[0];
        assert_eq!(cartier_mult(&plane, x2, &y).unwrap(), BigInt::from(2));

        let g = &ideal(&conic, &["x0*x2"])[0];
        assert_eq!(cartier_mult(&conic, g, &c).unwrap_err().to_string(), "intersection not proper");
        assert_eq!(qcartier_mult(&conic, f, 0, &c).unwrap_err(), Error::NonPositiveMultiple);
    }

    #[test]
    fn qcartier_matches_chi_on_conic() {
        let conic = ring(&["x0", "x1", "x2"], &["x0*x2 - x1^2"]);
        let d = ideal(&conic, &["x0", "x1"]);
        let c = ideal(&conic, &["x1", "x2"]);
        let f = &ideal(&conic, &["x0"])[0];
        let qc = qcartier_mult(&conic, f, 2, &c).unwrap();
        assert_eq!(chi(&conic, &d, &c).unwrap().value, ExtendedValue::Finite(qc));
        let me = hilbert_series(&conic, &[f.clone()]).unwrap().dim_and_mult().unwrap();
        let md = hilbert_series(&conic, &d).unwrap().dim_and_mult().unwrap();
        assert!(scales_by(&me, &md, 2));
    }

    #[test]
    fn cusp_is_not_cartier_scaled() {
        let cusp = ring(&["x", "y", "z"], &["y^2*z - x^3"]);
        let d = hilbert_series(&cusp, &ideal(&cusp, &["x", "y"])).unwrap().dim_and_mult().unwrap();
        let d2 = hilbert_series(&cusp, &ideal(&cusp, &["x^2", "x*y", "y^2"]))
            .unwrap()
            .dim_and_mult()
            .unwrap();
        assert_eq!((d.dim, d.mult.clone()), (1, q(1, 1)));
        assert_eq!((d2.dim, d2.mult.clone()), (1, q(3, 1)));
        assert!(!scales_by(&d2, &d, 2));
    }

    fn monomials(s: &std::sync::Arc<PolyRing>, exps: &[Vec<u32>]) -> Vec<MultiPoly<Q>> {
        exps.iter()
            .filter(|e| e.iter().any(|&x| x > 0))
            .map(|e| MultiPoly::monomial(s, Monomial::new(e.clone()), Q::one()))
            .collect()
    }

    fn gens(n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
        prop::collection::vec(prop::collection::vec(0u32..=2, n), 0..=3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn trichotomy_and_multiplicativity(
            n in 1usize..=4,
            rel in gens(4),
            a in gens(4),
            b in gens(4),
        ) {
            let names = ["x", "y", "z", "w"];
            let s = PolyRing::standard(&names[..n]);
            let cut = |v: &Vec<Vec<u32>>| -> Vec<Vec<u32>> { v.iter().map(|e| e[..n].to_vec()).collect() };
            let r = GradedRing::new(s.clone(), monomials(&s, &cut(&rel))).unwrap();
            let (i, j) = (monomials(&s, &cut(&a)), monomials(&s, &cut(&b)));
            let cr = chi(&r, &i, &j).unwrap();
            prop_assert_eq!(cr.class, ChiClass::from_defect(cr.defect));
            prop_assert_eq!(ChiClass::from_value(&cr.value), Some(cr.class));
            prop_assert_eq!(&cr.e_mn_at_1, &cr.mult_product());
            if cr.defect == 0 {
                prop_assert_eq!(cr.value.clone(), ExtendedValue::Finite(cr.mult_product()));
            }
            prop_assert_eq!(chi_series(&r, &i, &j).unwrap(), chi_series(&r, &j, &i).unwrap());
        }
    }
}
