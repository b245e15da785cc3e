//! Polynomials in the quantum-homology generators `u_1..u_n` with Novikov
//! field coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::novikov::{NovikovMonomial, NovikovScalar};

/// Exponent vector, ordered graded-lexicographically with the first
/// generator largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_into(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Single generator to a positive power: `(index, exponent)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut nz = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let first = nz.next()?;
        nz.next().is_none().then_some((first.0, *first.1))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Π[u_1..u_n]`. Terms are kept sorted ascending in the monomial
/// order; zero coefficients never appear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QHElement {
    nvars: usize,
    terms: BTreeMap<Monomial, NovikovScalar>,
}

impl QHElement {
    pub fn zero(nvars: usize) -> Self {
        QHElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, NovikovScalar::one())
    }

    pub fn constant(nvars: usize, c: NovikovScalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn generator(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), NovikovScalar::one())
    }

    pub fn term(m: Monomial, c: NovikovScalar) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        QHElement { nvars, terms }
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, NovikovScalar)>,
    ) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            out.add_term(m, &c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &NovikovScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> NovikovScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(NovikovScalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &NovikovScalar)> {
        self.terms.last_key_value()
    }

    pub fn pop_leading(&mut self) -> Option<(Monomial, NovikovScalar)> {
        self.terms.pop_last()
    }

    /// Highest total degree of a term.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The constant coefficient if the element has no generator terms.
    pub fn as_scalar(&self) -> Option<NovikovScalar> {
        match self.terms.len() {
            0 => Some(NovikovScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &NovikovScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "generator count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QHElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &NovikovScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        QHElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.mul(c)))
                .collect(),
        }
    }

    pub fn scale_monomial(&self, n: &NovikovMonomial) -> Self {
        QHElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.mul_monomial(n)))
                .collect(),
        }
    }

    /// `c · m · self`
    pub fn mul_term(&self, m: &Monomial, c: &NovikovScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        QHElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, d)| (k.mul(m), d.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "generator count mismatch");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &other.terms {
            for (k, d) in &self.terms {
                out.add_term(k.mul(m), &d.mul(c));
            }
        }
        out
    }

    /// Ring homomorphism `u_i ↦ images[i]`.
    pub fn substitute(&self, images: &[QHElement]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per generator");
        let target = images.first().map_or(0, |e| e.nvars);
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Reduced weight `2·qpow` if every coefficient monomial has the same
    /// q-power (fractions use numerator minus denominator degree).
    pub fn reduced_weight(&self) -> Option<i64> {
        let mut weight = None;
        for c in self.terms.values() {
            let dq = c.den().leading().ok()?.qpow;
            if c.den().terms().iter().any(|t| t.qpow != dq) {
                return None;
            }
            for t in c.num().terms() {
                let w = 2 * (t.qpow - dq);
                match weight {
                    None => weight = Some(w),
                    Some(v) if v != w => return None,
                    _ => {}
                }
            }
        }
        Some(weight.unwrap_or(0))
    }

    /// Renders with the given generator names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names
                        .get(i)
                        .cloned()
                        .unwrap_or_else(|| format!("u{}", i + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, coeff) = render_coefficient(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (coeff.as_str(), mono.is_empty()) {
                (c, true) => out.push_str(c),
                ("1", false) => out.push_str(&mono),
                (c, false) => {
                    out.push_str(c);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Sign and absolute rendering of a coefficient; compound values are
/// parenthesized so the result can be juxtaposed with `*`.
fn render_coefficient(c: &NovikovScalar) -> (bool, String) {
    if let Some(m) = c.as_monomial() {
        let neg = m.coeff < num_traits::zero();
        let abs = NovikovMonomial {
            coeff: if neg { -&m.coeff } else { m.coeff.clone() },
            ..m.clone()
        };
        return (neg, abs.to_string());
    }
    (false, format!("({c})"))
}

impl fmt::Display for QHElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::NovikovPoly;
    use crate::rational::{int, ratio};

    fn t(n: i64, d: i64) -> NovikovScalar {
        NovikovScalar::t_pow(ratio(n, d))
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![1, 1]);
        let c = Monomial::from_exponents(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::var(2, 0) > Monomial::var(2, 1));
    }

    #[test]
    fn arithmetic_and_rendering() {
        let u = QHElement::generator(2, 0);
        let v = QHElement::generator(2, 1);
        let s = u.add(&v).scale(&t(1, 2));
        let d = u.sub(&v);
        let prod = s.mul(&d);
        let names = vec!["u".to_string(), "v".to_string()];
        assert_eq!(prod.render(&names), "t^(1/2)*u^2 - t^(1/2)*v^2");
        assert_eq!(QHElement::one(2).render(&names), "1");
        let frac = NovikovScalar::new(
            NovikovPoly::one(),
            &NovikovPoly::one() - &NovikovPoly::t_pow(int(-1)),
        )
        .unwrap();
        assert_eq!(u.scale(&frac).render(&names), "((1)/(1 - t^-1))*u");
    }

    #[test]
    fn weights() {
        let u = QHElement::generator(1, 0);
        assert_eq!(u.scale(&t(3, 4)).reduced_weight(), Some(0));
        let q = NovikovScalar::from_poly(NovikovPoly::q_pow(1));
        assert_eq!(u.scale(&q).reduced_weight(), Some(2));
        assert_eq!(u.add(&u.mul(&u).scale(&q)).reduced_weight(), None);
    }

    #[test]
    fn substitution() {
        // u1 ↦ u + v, u2 ↦ u - v : u1*u2 ↦ u^2 - v^2
        let u = QHElement::generator(2, 0);
        let v = QHElement::generator(2, 1);
        let x = QHElement::generator(2, 0).mul(&QHElement::generator(2, 1));
        let y = x.substitute(&[u.add(&v), u.sub(&v)]);
        assert_eq!(y, u.mul(&u).sub(&v.mul(&v)));
    }
}
