//! Univariate polynomials and rational functions in `t` with integer coefficients.
//!
//! These carry Hilbert numerators and the closed form of chi. Values at `t = 1`
//! are exact rationals or infinity.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `t` with integer coefficients, `coeffs[i]` the coefficient of `t^i`.
/// No trailing zeros are stored; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    /// `1 - t^d`
    pub fn one_minus_t_pow(d: usize) -> Self {
        IntPoly::one() - IntPoly::monomial(BigInt::one(), d)
    }

    /// `(1 - t)^k`
    pub fn one_minus_t_power(k: u32) -> Self {
        let base = IntPoly::one_minus_t_pow(1);
        (0..k).fold(IntPoly::one(), |acc, _| &acc * &base)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    fn divide_coeffs_exact(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    /// Exact division when `divisor` divides `self` in `Z[t]`.
    /// Returns `None` when the quotient is not integral or a remainder is left.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let lc = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("pseudo-remainder by zero");
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading_coeff().unwrap().clone();
            r = &r.scale(&lc) - &divisor.shift(dr - dd).scale(&lr);
        }
        r
    }

    /// Primitive gcd (content ignored) with positive leading coefficient.
    pub fn primitive_gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Split off the largest power of `(1 - t)`: returns `(k, q)` with
    /// `self = (1 - t)^k * q` and `q(1) != 0`.
    pub fn one_minus_t_valuation(&self) -> Result<(u32, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroValuation);
        }
        let mut k = 0;
        let mut q = self.clone();
        while q.eval_at_one().is_zero() {
            q = q.div_one_minus_t();
            k += 1;
        }
        Ok((k, q))
    }

    /// Quotient by `(1 - t)`; caller guarantees `self(1) = 0`.
    fn div_one_minus_t(&self) -> IntPoly {
        // synthetic division by (t - 1), then negate
        let n = self.coeffs.len();
        let mut r = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (1..n).rev() {
            carry += &self.coeffs[k];
            r[k - 1] = -carry.clone();
        }
        debug_assert!((carry + &self.coeffs[0]).is_zero());
        IntPoly::new(r)
    }

    /// Taylor coefficients of `1/self` would need a unit constant term; this is the
    /// general power-series quotient `num/self` through degree `n`.
    fn series_divide(num: &IntPoly, den: &IntPoly, n: usize) -> Vec<BigRational> {
        let d0 = BigRational::from_integer(den.constant_term());
        assert!(!d0.is_zero(), "power series denominator vanishes at 0");
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigRational::from_integer(num.coeff(k));
            for i in 1..=k.min(den.degree().unwrap_or(0)) {
                let di = &den.coeffs[i];
                if !di.is_zero() {
                    acc -= &out[k - i] * BigRational::from_integer(di.clone());
                }
            }
            out.push(acc / &d0);
        }
        out
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Ascending powers, e.g. `1 - 3t + t^2`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_t_terms(f, self.coeffs.iter().cloned().map(BigRational::from_integer))
    }
}

fn write_t_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: impl Iterator<Item = BigRational>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match k {
            0 => write!(f, "{a}")?,
            _ => {
                if !a.is_one() {
                    if a.is_integer() {
                        write!(f, "{a}")?;
                    } else {
                        write!(f, "{a}*")?;
                    }
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Render a truncated power series as `c0 + c1 t + ... + O(t^{n+1})`.
pub fn format_series(coeffs: &[BigRational]) -> String {
    struct S<'a>(&'a [BigRational]);
    impl fmt::Display for S<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.iter().any(|c| !c.is_zero()) {
                write_t_terms(f, self.0.iter().cloned())?;
                write!(f, " + ")?;
            }
            write!(f, "O(t^{})", self.0.len())
        }
    }
    S(coeffs).to_string()
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(IntPoly, Add, add);
forward_owned!(IntPoly, Sub, sub);
forward_owned!(IntPoly, Mul, mul);

/// Reduced quotient of integer polynomials.
///
/// Canonical form: `gcd(num, den)` is a unit in `Q[t]`, the integer contents share
/// no common factor, and `den` has positive constant term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: IntPoly,
    den: IntPoly,
}

impl RatFun {
    /// Normalize `num / den` into canonical form.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun {
                num,
                den: IntPoly::one(),
            });
        }
        let g = num.primitive_gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.divide_coeffs_exact(&c);
            den = den.divide_coeffs_exact(&c);
        }
        let d0 = den.constant_term();
        if d0.is_zero() {
            return Err(Error::DenominatorVanishesAtZero);
        }
        if d0.is_negative() {
            num = -&num;
            den = -&den;
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFun::new(p, IntPoly::one()).expect("unit denominator")
    }

    pub fn one() -> Self {
        RatFun::from_poly(IntPoly::one())
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiply by `(1 - t)^k` for any integer `k`.
    pub fn mul_one_minus_t_power(&self, k: i64) -> Result<Self> {
        let f = IntPoly::one_minus_t_power(k.unsigned_abs() as u32);
        if k >= 0 {
            RatFun::new(&self.num * &f, self.den.clone())
        } else {
            RatFun::new(self.num.clone(), &self.den * &f)
        }
    }

    /// Order of vanishing at `t = 1`: positive for zeros, negative for poles.
    /// `None` for the zero function.
    pub fn order_at_one(&self) -> Option<i64> {
        let (kn, _) = self.num.one_minus_t_valuation().ok()?;
        let (kd, _) = self.den.one_minus_t_valuation().expect("denominator nonzero");
        Some(kn as i64 - kd as i64)
    }

    /// Taylor coefficients at `t = 0` through `t^n`.
    pub fn series_expand(&self, n: usize) -> Vec<BigRational> {
        IntPoly::series_divide(&self.num, &self.den, n)
    }

    /// Value at `t = 1` after cancelling common `(1 - t)` factors.
    pub fn eval_at_one(&self) -> ExtendedValue {
        if self.num.is_zero() {
            return ExtendedValue::Finite(BigRational::zero());
        }
        let (kn, qn) = self.num.one_minus_t_valuation().expect("nonzero");
        let (kd, qd) = self.den.one_minus_t_valuation().expect("nonzero");
        match kn.cmp(&kd) {
            std::cmp::Ordering::Less => ExtendedValue::Infinity,
            std::cmp::Ordering::Greater => ExtendedValue::Finite(BigRational::zero()),
            std::cmp::Ordering::Equal => {
                ExtendedValue::Finite(BigRational::new(qn.eval_at_one(), qd.eval_at_one()))
            }
        }
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("product of power series")
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("sum of power series")
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("difference of power series")
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by a zero or non-unit series")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

/// `num / den`, each parenthesized when it has more than one term.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPoly| {
            let terms = p.coeffs.iter().filter(|c| !c.is_zero()).count();
            let negative_single = terms == 1 && p.leading_coeff().is_some_and(Signed::is_negative);
            if terms > 1 || negative_single {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{} / {}", wrap(&self.num), wrap(&self.den))
    }
}

/// An element of `Q ∪ {∞}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtendedValue {
    Finite(BigRational),
    Infinity,
}

impl ExtendedValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinity)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtendedValue::Finite(q) => Some(q),
            ExtendedValue::Infinity => None,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(q) => write!(f, "{q}"),
            ExtendedValue::Infinity => write!(f, "infinity"),
        }
    }
}

// ---- parsing -------------------------------------------------------------

struct TParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> TParser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<IntPoly> {
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := power (['*'] power)*   (juxtaposition allowed, as in `3t`)
    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') || matches!(self.peek(), Some(b't' | b'(')) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<IntPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u32 = match e.try_into() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(IntPoly::monomial(BigInt::one(), 1))
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPoly::constant(self.integer()?)),
            _ => self.err("expected term"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = TParser { s: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.finish()?;
        Ok(e)
    }
}

/// Parses `num / den` or a bare polynomial.
impl FromStr for RatFun {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = TParser { s: s.as_bytes(), pos: 0 };
        let num = p.expr()?;
        let den = if p.eat(b'/') { p.expr()? } else { IntPoly::one() };
        p.finish()?;
        RatFun::new(num, den)
    }
}
