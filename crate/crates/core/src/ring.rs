//! Weighted polynomial rings, sparse polynomials and graded quotient rings `R = S / I_R`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Exponent vector, one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Weighted degree `Σ e_i d_i`; weights must have matching length.
    pub fn degree(&self, weights: &[u32]) -> usize {
        debug_assert_eq!(self.0.len(), weights.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as usize * w as usize)
            .sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// `self / gcd(self, other)`, the colon of a principal monomial ideal.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Largest variable index with positive exponent.
    pub fn last_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All monomials of weighted degree `deg`, in lexicographic exponent order.
pub fn monomials_of_degree(weights: &[u32], deg: usize) -> Vec<Monomial> {
    fn go(weights: &[u32], i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[i] as usize;
        for e in (0..=left / w).rev() {
            cur[i] = e as u32;
            go(weights, i + 1, left - e * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    go(weights, 0, deg, &mut cur, &mut out);
    out
}

/// Weighted-degree-first monomial orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken reverse-lexicographically.
    #[default]
    WeightedRevLex,
    /// Weighted degree, ties broken lexicographically.
    WeightedLex,
    /// Compare by successive integer weight rows. The first row must be the
    /// grading and the rows must have full rank.
    Matrix(Vec<Vec<i64>>),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match self {
            MonomialOrder::WeightedRevLex => a
                .degree(weights)
                .cmp(&b.degree(weights))
                .then_with(|| {
                    for (x, y) in a.0.iter().zip(&b.0).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }),
            MonomialOrder::WeightedLex => a
                .degree(weights)
                .cmp(&b.degree(weights))
                .then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::Matrix(rows) => {
                for row in rows {
                    let dot = |m: &Monomial| -> i64 {
                        m.0.iter().zip(row).map(|(&e, &r)| e as i64 * r).sum()
                    };
                    match dot(a).cmp(&dot(b)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Degree compatibility and totality check.
    pub fn validate(&self, weights: &[u32]) -> Result<()> {
        let MonomialOrder::Matrix(rows) = self else {
            return Ok(());
        };
        let n = weights.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidOrder("row length differs from variable count".into()));
        }
        let first_is_grading = rows
            .first()
            .is_some_and(|r| r.iter().zip(weights).all(|(&a, &w)| a == w as i64));
        if !first_is_grading {
            return Err(Error::InvalidOrder(
                "first row must equal the variable weights".into(),
            ));
        }
        if integer_rank(rows) < n {
            return Err(Error::InvalidOrder("weight rows do not have full rank".into()));
        }
        Ok(())
    }
}

fn integer_rank(rows: &[Vec<i64>]) -> usize {
    use num_rational::BigRational;
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..ncols {
                    let v = &f * &m[rank][k];
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The ambient weighted polynomial ring `S = k[x_1..x_s]` with its monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(names: Vec<String>, weights: Vec<i64>, order: MonomialOrder) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::NoVariables);
        }
        assert_eq!(names.len(), weights.len(), "one weight per variable");
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        let mut ws = Vec::with_capacity(weights.len());
        for (n, &w) in names.iter().zip(&weights) {
            if w < 1 || w > u32::MAX as i64 {
                return Err(Error::InvalidWeight {
                    name: n.clone(),
                    weight: w,
                });
            }
            ws.push(w as u32);
        }
        order.validate(&ws)?;
        Ok(Arc::new(PolyRing {
            names,
            weights: ws,
            order,
        }))
    }

    /// Standard-graded ring with default order.
    pub fn standard(names: &[&str]) -> Arc<Self> {
        PolyRing::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
            MonomialOrder::default(),
        )
        .expect("valid standard ring")
    }

    pub fn weighted(names: &[&str], weights: &[i64]) -> Result<Arc<Self>> {
        PolyRing::new(
            names.iter().map(|s| s.to_string()).collect(),
            weights.to_vec(),
            MonomialOrder::default(),
        )
    }

    /// Same variables and weights under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        order.validate(&self.weights)?;
        Ok(Arc::new(PolyRing {
            names: self.names.clone(),
            weights: self.weights.clone(),
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn wdeg(&self, m: &Monomial) -> Result<usize> {
        if m.nvars() != self.nvars() {
            return Err(Error::LengthMismatch {
                expected: self.nvars(),
                got: m.nvars(),
            });
        }
        Ok(m.degree(&self.weights))
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.weights)
    }

    pub(crate) fn same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Any,
    Degree(usize),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }
}

/// Sparse polynomial; terms are kept sorted descending in the ring's order with
/// no zero coefficients.
#[derive(Clone)]
pub struct MultiPoly<F> {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for MultiPoly<F> {}

impl<F: Field> MultiPoly<F> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: F) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), F::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: F) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: combines duplicates, drops zeros, sorts.
    pub fn from_terms(ring: &Arc<PolyRing>, mut raw: Vec<(Monomial, F)>) -> Self {
        raw.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut terms: Vec<(Monomial, F)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            assert_eq!(m.nvars(), ring.nvars());
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.clone() + c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_i64_terms(ring: &Arc<PolyRing>, raw: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            ring,
            raw.iter()
                .map(|(c, e)| (Monomial::new(e.to_vec()), F::from_i64(*c)))
                .collect(),
        )
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff_of(&self, m: &Monomial) -> F {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let w = self.ring.weights();
        let mut degs = self.terms.iter().map(|(m, _)| m.degree(w));
        match degs.next() {
            None => Homogeneity::Any,
            Some(d) if degs.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity().is_homogeneous()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Scaled to leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// `c * m * self`; order is multiplicative so sortedness is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t * m, a.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self - c * m * other`, merging sorted term lists.
    pub(crate) fn sub_scaled(&self, m: &Monomial, c: &F, other: &Self) -> Self {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, x)| (t * m, x.clone() * c.clone())).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (t, x) = b.next().unwrap();
                    out.push((t, -x));
                }
                (Some((ta, _)), Some((tb, _))) => match ring.cmp(ta, tb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (t, x) = b.next().unwrap();
                        out.push((t, -x));
                    }
                    Ordering::Equal => {
                        let (t, xa) = a.next().unwrap().clone();
                        let (_, xb) = b.next().unwrap();
                        let v = xa - xb;
                        if !v.is_zero() {
                            out.push((t, v));
                        }
                    }
                },
            }
        }
        MultiPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.sub_scaled(&Monomial::one(self.ring.nvars()), &-F::one(), other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.sub_scaled(&Monomial::one(self.ring.nvars()), &F::one(), other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut raw = Vec::with_capacity(self.len() * other.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                raw.push((m * n, a.clone() * b.clone()));
            }
        }
        Ok(Self::from_terms(&self.ring, raw))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ring), |acc, _| &acc * self)
    }

    /// Re-express in a ring with the same variables and weights (e.g. another order).
    pub fn in_ring(&self, ring: &Arc<PolyRing>) -> Result<Self> {
        if ring.names() != self.ring.names() || ring.weights() != self.ring.weights() {
            return Err(Error::RingMismatch);
        }
        Ok(Self::from_terms(ring, self.terms.clone()))
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        )
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    /// Descending terms, `*` between every factor so the output reparses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = m.format_with(self.ring.names());
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl<F: Field> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        self.try_add(rhs).expect("ring mismatch in add")
    }
}

impl<F: Field> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        self.try_sub(rhs).expect("ring mismatch in sub")
    }
}

impl<F: Field> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        self.try_mul(rhs).expect("ring mismatch in mul")
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.scale(&-F::one())
    }
}

/// A graded k-algebra `R = S / I_R` presented by homogeneous relations.
#[derive(Clone, Debug)]
pub struct GradedRing<F: Field> {
    ambient: Arc<PolyRing>,
    relations: Vec<MultiPoly<F>>,
}

impl<F: Field> GradedRing<F> {
    pub fn new(ambient: Arc<PolyRing>, relations: Vec<MultiPoly<F>>) -> Result<Self> {
        for r in &relations {
            if !PolyRing::same(r.ring(), &ambient) {
                return Err(Error::RingMismatch);
            }
            if !r.is_homogeneous() {
                return Err(Error::NotHomogeneous(r.to_string()));
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(GradedRing { ambient, relations })
    }

    /// The ambient ring itself, no relations.
    pub fn polynomial(ambient: Arc<PolyRing>) -> Self {
        GradedRing {
            ambient,
            relations: Vec::new(),
        }
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn relations(&self) -> &[MultiPoly<F>] {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        self.ambient.weights()
    }

    pub fn field(&self) -> FieldSpec {
        F::spec()
    }

    pub fn var(&self, i: usize) -> MultiPoly<F> {
        MultiPoly::var(&self.ambient, i)
    }

    /// Polynomial from `(coefficient, exponent vector)` pairs.
    pub fn poly(&self, raw: &[(i64, &[u32])]) -> MultiPoly<F> {
        MultiPoly::from_i64_terms(&self.ambient, raw)
    }

    pub fn wdeg(&self, m: &Monomial) -> Result<usize> {
        self.ambient.wdeg(m)
    }

    /// Same ring under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let ambient = self.ambient.with_order(order)?;
        let relations = self
            .relations
            .iter()
            .map(|r| r.in_ring(&ambient))
            .collect::<Result<_>>()?;
        Ok(GradedRing { ambient, relations })
    }

    /// Checks every generator is homogeneous and lives in this ring.
    pub fn check_ideal(&self, gens: &[MultiPoly<F>]) -> Result<()> {
        for g in gens {
            if !PolyRing::same(g.ring(), &self.ambient) {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        Ok(())
    }

    /// Relations followed by the given generators.
    pub fn with_relations(&self, gens: &[MultiPoly<F>]) -> Vec<MultiPoly<F>> {
        self.relations.iter().chain(gens).cloned().collect()
    }
}
