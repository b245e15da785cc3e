//! Exact arithmetic in the Novikov coefficient field.
//!
//! Elements are fractions of finite sums `r·q^d·t^κ` with `r, κ ∈ ℚ` and
//! `d ∈ ℤ`. Infinite generalized series such as `1/(1 - t^{-1})` are kept as
//! fractions, so zero tests are exact; [`NovikovScalar::series`] expands them
//! only for display.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{lcm_denominators, Rational};
use crate::upoly::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("series expansion of zero")]
    ZeroScalar,
    #[error("element has no expansion as a series in decreasing powers of t")]
    NotASeries,
    #[error("series window must be nonnegative")]
    NegativeWindow,
}

/// `coeff · q^qpow · t^texp`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NovikovMonomial {
    pub coeff: Rational,
    pub qpow: i64,
    pub texp: Rational,
}

impl NovikovMonomial {
    pub fn new(coeff: Rational, qpow: i64, texp: Rational) -> Self {
        NovikovMonomial { coeff, qpow, texp }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.texp.cmp(&other.texp).then(self.qpow.cmp(&other.qpow))
    }

    pub fn mul(&self, other: &Self) -> Self {
        NovikovMonomial {
            coeff: &self.coeff * &other.coeff,
            qpow: self.qpow + other.qpow,
            texp: &self.texp + &other.texp,
        }
    }

    /// Monomials with nonzero coefficient are units.
    pub fn inverse(&self) -> Self {
        NovikovMonomial {
            coeff: self.coeff.recip(),
            qpow: -self.qpow,
            texp: -&self.texp,
        }
    }
}

/// A finite sum of monomials in canonical form: strictly decreasing in
/// `(texp, qpow)`, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NovikovPoly {
    terms: Vec<NovikovMonomial>,
}

impl NovikovPoly {
    pub fn zero() -> Self {
        NovikovPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::monomial(r, 0, Rational::zero())
    }

    pub fn monomial(coeff: Rational, qpow: i64, texp: Rational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        NovikovPoly {
            terms: vec![NovikovMonomial::new(coeff, qpow, texp)],
        }
    }

    /// `t^e`
    pub fn t_pow(e: Rational) -> Self {
        Self::monomial(Rational::one(), 0, e)
    }

    /// `q^d`
    pub fn q_pow(d: i64) -> Self {
        Self::monomial(Rational::one(), d, Rational::zero())
    }

    /// Canonicalizes an arbitrary list of `(coeff, qpow, texp)` triples:
    /// merges equal keys, drops zeros, sorts.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, i64, Rational)>) -> Self {
        let mut acc: BTreeMap<(Rational, i64), Rational> = BTreeMap::new();
        for (c, d, e) in terms {
            *acc.entry((e, d)).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<(Rational, i64), Rational>) -> Self {
        NovikovPoly {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|((texp, qpow), coeff)| NovikovMonomial { coeff, qpow, texp })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[NovikovMonomial] {
        &self.terms
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].coeff.is_one()
            && self.terms[0].qpow == 0
            && self.terms[0].texp.is_zero()
    }

    /// The term maximal in `(texp, qpow)`.
    pub fn leading(&self) -> Result<&NovikovMonomial, NovikovError> {
        self.terms.first().ok_or(NovikovError::ZeroPolynomial)
    }

    pub fn trailing(&self) -> Option<&NovikovMonomial> {
        self.terms.last()
    }

    pub fn as_monomial(&self) -> Option<&NovikovMonomial> {
        match self.terms.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    /// The value as a plain rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [m] if m.qpow == 0 && m.texp.is_zero() => Some(m.coeff.clone()),
            _ => None,
        }
    }

    pub fn mul_monomial(&self, m: &NovikovMonomial) -> Self {
        if m.coeff.is_zero() {
            return Self::zero();
        }
        // order is preserved under multiplication by a monomial
        NovikovPoly {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        NovikovPoly {
            terms: self
                .terms
                .iter()
                .map(|t| NovikovMonomial {
                    coeff: &t.coeff * r,
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sets `t = q = 1`: the sum of all coefficients.
    pub fn specialize_one(&self) -> Rational {
        self.terms.iter().map(|t| &t.coeff).sum()
    }

    /// Keeps the terms with `texp >= threshold`.
    pub fn truncate_below(&self, threshold: &Rational) -> Self {
        NovikovPoly {
            terms: self
                .terms
                .iter()
                .take_while(|t| &t.texp >= threshold)
                .cloned()
                .collect(),
        }
    }

    pub fn all_coefficients_positive(&self) -> bool {
        !self.terms.is_empty() && self.terms.iter().all(|t| t.coeff.is_positive())
    }

    fn texp_range(&self) -> Option<(Rational, Rational)> {
        Some((
            self.terms.last()?.texp.clone(),
            self.terms.first()?.texp.clone(),
        ))
    }

    fn qpow_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.iter().map(|t| t.qpow).min()?;
        let hi = self.terms.iter().map(|t| t.qpow).max()?;
        Some((lo, hi))
    }

    /// Exact quotient `self / divisor` when it exists as a finite sum.
    ///
    /// Newton polygons add under multiplication, so every quotient term lies
    /// in the box spanned by the differences of the extreme exponents; a
    /// candidate term outside the box proves non-divisibility.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (at_lo, at_hi) = self.texp_range()?;
        let (bt_lo, bt_hi) = divisor.texp_range()?;
        let (aq_lo, aq_hi) = self.qpow_range()?;
        let (bq_lo, bq_hi) = divisor.qpow_range()?;
        let (t_lo, t_hi) = (at_lo - bt_lo, at_hi - bt_hi);
        let (q_lo, q_hi) = (aq_lo - bq_lo, aq_hi - bq_hi);
        let lead_inv = divisor.terms[0].inverse();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(lt) = rem.terms.first() {
            let m = lt.mul(&lead_inv);
            if m.texp < t_lo || m.texp > t_hi || m.qpow < q_lo || m.qpow > q_hi {
                return None;
            }
            rem = &rem - &divisor.mul_monomial(&m);
            quot.push(m);
        }
        Some(NovikovPoly::from_terms(
            quot.into_iter().map(|m| (m.coeff, m.qpow, m.texp)),
        ))
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |m: &NovikovMonomial| {
            if negate_other {
                NovikovMonomial {
                    coeff: -&m.coeff,
                    ..m.clone()
                }
            } else {
                m.clone()
            }
        };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.cmp_key(b) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(sign(b));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a.coeff - &b.coeff
                    } else {
                        &a.coeff + &b.coeff
                    };
                    if !c.is_zero() {
                        out.push(NovikovMonomial {
                            coeff: c,
                            ..a.clone()
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(sign));
        NovikovPoly { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(m) = other.as_monomial() {
            return self.mul_monomial(m);
        }
        if let Some(m) = self.as_monomial() {
            return other.mul_monomial(m);
        }
        let mut acc: BTreeMap<(Rational, i64), Rational> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mul(b);
                *acc.entry((m.texp, m.qpow)).or_insert_with(Rational::zero) += m.coeff;
            }
        }
        Self::from_map(acc)
    }
}

impl Add for &NovikovPoly {
    type Output = NovikovPoly;
    fn add(self, rhs: Self) -> NovikovPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &NovikovPoly {
    type Output = NovikovPoly;
    fn sub(self, rhs: Self) -> NovikovPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &NovikovPoly {
    type Output = NovikovPoly;
    fn mul(self, rhs: Self) -> NovikovPoly {
        self.product(rhs)
    }
}

impl Neg for &NovikovPoly {
    type Output = NovikovPoly;
    fn neg(self) -> NovikovPoly {
        self.scale(&-Rational::one())
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
forward_owned!(NovikovPoly, Add, add);
forward_owned!(NovikovPoly, Sub, sub);
forward_owned!(NovikovPoly, Mul, mul);

// Beyond this t-degree spread (in units of the common exponent denominator)
// fraction reduction skips the gcd and keeps only monomial normalization.
const GCD_SPREAD_LIMIT: i64 = 4096;

/// Reduces `num/den` by their polynomial gcd when each lives in
/// `q^k·ℚ[t^{1/D}]` for a single `k`.
fn cancel_gcd(num: &NovikovPoly, den: &NovikovPoly) -> Option<(NovikovPoly, NovikovPoly)> {
    let uniform = |p: &NovikovPoly| -> Option<i64> {
        let q = p.terms.first()?.qpow;
        p.terms.iter().all(|t| t.qpow == q).then_some(q)
    };
    let (qn, qd) = (uniform(num)?, uniform(den)?);
    if qn != 0 || qd != 0 {
        let shift = |p: &NovikovPoly, q: i64| {
            p.mul_monomial(&NovikovMonomial::new(Rational::one(), q, Rational::zero()))
        };
        let (n, d) = cancel_gcd(&shift(num, -qn), &shift(den, -qd))?;
        return Some((shift(&n, qn), shift(&d, qd)));
    }
    let d = lcm_denominators(num.terms.iter().chain(&den.terms).map(|t| &t.texp));
    let dq = Rational::from_integer(d.clone());
    let to_int = |r: &Rational| -> Option<i64> { (r * &dq).to_integer().to_i64() };
    let dense = |p: &NovikovPoly| -> Option<(i64, QPoly)> {
        let lo = to_int(&p.terms.last()?.texp)?;
        let hi = to_int(&p.terms.first()?.texp)?;
        if hi - lo > GCD_SPREAD_LIMIT {
            return None;
        }
        let mut c = vec![Rational::zero(); (hi - lo + 1) as usize];
        for t in &p.terms {
            c[(to_int(&t.texp)? - lo) as usize] = t.coeff.clone();
        }
        Some((lo, QPoly::new(c)))
    };
    let (nlo, n) = dense(num)?;
    let (dlo, dp) = dense(den)?;
    let g = n.gcd(&dp);
    if g.degree().unwrap_or(0) == 0 {
        return None;
    }
    let back = |lo: i64, p: QPoly| {
        NovikovPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| {
            (
                c.clone(),
                0,
                Rational::new(BigInt::from(lo + i as i64), d.clone()),
            )
        }))
    };
    let (nq, _) = n.div_rem(&g);
    let (dq2, _) = dp.div_rem(&g);
    Some((back(nlo, nq), back(dlo, dq2)))
}

/// An element of the fraction field. Canonical form: the leading monomial of
/// `den` is exactly `1`.
#[derive(Clone, Debug)]
pub struct NovikovScalar {
    num: NovikovPoly,
    den: NovikovPoly,
}

impl NovikovScalar {
    pub fn new(num: NovikovPoly, den: NovikovPoly) -> Result<Self, NovikovError> {
        if den.is_zero() {
            return Err(NovikovError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: NovikovPoly, mut den: NovikovPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let unit = |num: &mut NovikovPoly, den: &mut NovikovPoly| {
            let inv = den.terms[0].inverse();
            *num = num.mul_monomial(&inv);
            *den = den.mul_monomial(&inv);
        };
        unit(&mut num, &mut den);
        if den.len() > 1 {
            if let Some((n, d)) = cancel_gcd(&num, &den) {
                num = n;
                den = d;
                unit(&mut num, &mut den);
            }
        }
        NovikovScalar { num, den }
    }

    pub fn zero() -> Self {
        NovikovScalar {
            num: NovikovPoly::zero(),
            den: NovikovPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(NovikovPoly::one())
    }

    pub fn from_poly(p: NovikovPoly) -> Self {
        NovikovScalar {
            num: p,
            den: NovikovPoly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(NovikovPoly::constant(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(crate::rational::int(n))
    }

    pub fn t_pow(e: Rational) -> Self {
        Self::from_poly(NovikovPoly::t_pow(e))
    }

    pub fn num(&self) -> &NovikovPoly {
        &self.num
    }

    pub fn den(&self) -> &NovikovPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The element as a finite polynomial, if its denominator is 1.
    pub fn as_poly(&self) -> Option<&NovikovPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_poly().and_then(|p| p.as_rational())
    }

    pub fn as_monomial(&self) -> Option<&NovikovMonomial> {
        self.as_poly().and_then(|p| p.as_monomial())
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        Self::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NovikovScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_monomial(&self, m: &NovikovMonomial) -> Self {
        if m.coeff.is_zero() {
            return Self::zero();
        }
        NovikovScalar {
            num: self.num.mul_monomial(m),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self, NovikovError> {
        if self.is_zero() {
            return Err(NovikovError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, NovikovError> {
        if other.is_zero() {
            return Err(NovikovError::DivisionByZero);
        }
        Ok(Self::normalized(
            &self.num * &other.den,
            &self.den * &other.num,
        ))
    }

    pub fn pow(&self, e: i64) -> Result<Self, NovikovError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(Self::normalized(base.num.pow(e), base.den.pow(e)))
    }

    /// Truncated generalized-series expansion: all terms with
    /// `texp >= L - window`, where `L` is the leading exponent.
    pub fn series(&self, window: &Rational) -> Result<NovikovPoly, NovikovError> {
        if self.is_zero() {
            return Err(NovikovError::ZeroScalar);
        }
        if window.is_negative() {
            return Err(NovikovError::NegativeWindow);
        }
        // den = 1 - r, every term of r strictly below t^0
        let r = &NovikovPoly::one() - &self.den;
        if r.terms.iter().any(|t| t.texp.is_zero()) {
            return Err(NovikovError::NotASeries);
        }
        let lead = self.num.terms[0].texp.clone();
        let floor = &lead - window;
        if r.is_zero() {
            return Ok(self.num.truncate_below(&floor));
        }
        // r's largest exponent is -gap; r^k only matters while k·gap <= window
        let mut acc = self.num.truncate_below(&floor);
        let mut power = acc.clone();
        loop {
            power = (&power * &r).truncate_below(&floor);
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc)
    }
}

impl PartialEq for NovikovScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for NovikovScalar {}

impl From<NovikovPoly> for NovikovScalar {
    fn from(p: NovikovPoly) -> Self {
        Self::from_poly(p)
    }
}

fn fmt_exponent(e: &Rational) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for NovikovMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.qpow != 0 {
            parts.push(if self.qpow == 1 {
                "q".to_string()
            } else {
                format!("q^{}", self.qpow)
            });
        }
        if !self.texp.is_zero() {
            parts.push(if self.texp.is_one() {
                "t".to_string()
            } else {
                format!("t^{}", fmt_exponent(&self.texp))
            });
        }
        if parts.is_empty() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "{}", parts.join("*"))
        } else if (-&self.coeff).is_one() {
            write!(f, "-{}", parts.join("*"))
        } else {
            write!(f, "{}*{}", self.coeff, parts.join("*"))
        }
    }
}

impl fmt::Display for NovikovPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = NovikovMonomial {
                coeff: t.coeff.abs(),
                ..t.clone()
            };
            match (i, neg) {
                (0, true) => write!(f, "-{abs}")?,
                (0, false) => write!(f, "{abs}")?,
                (_, true) => write!(f, " - {abs}")?,
                (_, false) => write!(f, " + {abs}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
