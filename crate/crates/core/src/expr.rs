//! Expressions over the generators, `t`, `q` and named rational parameters.
//!
//! Grammar (precedence low to high): `+ -`, `* /`, unary `-`, `^`. Exponents
//! must evaluate to rationals; `t` accepts any rational power, `q` and ring
//! elements only integer powers.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::element::QHElement;
use crate::novikov::{NovikovPoly, NovikovScalar};
use crate::rational::{int, to_i64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("expected a rational value, got a ring element")]
    NotRational,
    #[error("expected a scalar, got a ring element")]
    NotScalar,
    #[error("exponent must be an integer, got {0}")]
    NonIntegerExponent(Rational),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no inverse for {0}")]
    NotInvertible(String),
    #[error("constraint `{0}` violated")]
    ConstraintViolated(String),
}

/// Result of evaluation, in increasing generality.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Number(Rational),
    Scalar(NovikovScalar),
    Element(QHElement),
}

impl Value {
    fn to_scalar(&self) -> Option<NovikovScalar> {
        match self {
            Value::Number(r) => Some(NovikovScalar::from_rational(r.clone())),
            Value::Scalar(s) => Some(s.clone()),
            Value::Element(e) => e.as_scalar(),
        }
    }

    fn to_element(&self, nvars: usize) -> QHElement {
        match self {
            Value::Element(e) => e.clone(),
            _ => QHElement::constant(nvars, self.to_scalar().expect("scalar")),
        }
    }

    pub fn into_rational(self) -> Result<Rational, ExprError> {
        match self {
            Value::Number(r) => Ok(r),
            Value::Scalar(s) => s.as_rational().ok_or(ExprError::NotRational),
            Value::Element(e) => e
                .as_scalar()
                .and_then(|s| s.as_rational())
                .ok_or(ExprError::NotRational),
        }
    }

    pub fn into_scalar(self) -> Result<NovikovScalar, ExprError> {
        self.to_scalar().ok_or(ExprError::NotScalar)
    }

    pub fn into_element(self, nvars: usize) -> QHElement {
        self.to_element(nvars)
    }
}

/// Ring inversion callback; `None` when the element is not a unit.
pub type Inverter<'a> = dyn Fn(&QHElement) -> Option<QHElement> + 'a;

/// Name bindings for evaluation.
pub struct Scope<'a> {
    pub generators: &'a [String],
    pub params: &'a BTreeMap<String, Rational>,
    /// Ring inversion, used for negative powers and division by ring elements.
    pub inverter: Option<&'a Inverter<'a>>,
}

impl<'a> Scope<'a> {
    pub fn params_only(params: &'a BTreeMap<String, Rational>) -> Self {
        Scope {
            generators: &[],
            params,
            inverter: None,
        }
    }

    fn nvars(&self) -> usize {
        self.generators.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
    Le,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        match c {
            c if c.is_whitespace() => k += 1,
            '0'..='9' => {
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                let n = s.parse().map_err(|_| ExprError::Syntax {
                    pos,
                    msg: format!("bad number `{s}`"),
                })?;
                out.push((pos, Tok::Num(Rational::from_integer(n))));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                    k += 1;
                }
                out.push((
                    pos,
                    Tok::Ident(chars[start..k].iter().map(|&(_, c)| c).collect()),
                ));
            }
            '<' if chars.get(k + 1).is_some_and(|&(_, c)| c == '=') => {
                out.push((pos, Tok::Le));
                k += 2;
            }
            '≤' => {
                out.push((pos, Tok::Le));
                k += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '<' => {
                out.push((pos, Tok::Op(c)));
                k += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                k += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                k += 1;
            }
            _ => {
                return Err(ExprError::Syntax {
                    pos,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'s, 'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    scope: &'s Scope<'a>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if c == '+' {
                self.add(acc, rhs)
            } else {
                self.add(acc, self.neg(rhs))
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                self.mul(acc, rhs)
            } else {
                self.div(acc, rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, ExprError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                let v = self.unary()?;
                Ok(self.neg(v))
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value, ExprError> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            // right-associative, and `t^-1` is allowed
            let e = self.unary()?.into_rational()?;
            return self.pow(base, e);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Value, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.at += 1;
                Ok(Value::Number(r))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.ident(&name)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(v)
            }
            Some(_) => self.err("expected a value"),
            None => self.err("unexpected end of input"),
        }
    }

    fn ident(&self, name: &str) -> Result<Value, ExprError> {
        if let Some(i) = self.scope.generators.iter().position(|g| g == name) {
            return Ok(Value::Element(QHElement::generator(self.scope.nvars(), i)));
        }
        if let Some(r) = self.scope.params.get(name) {
            return Ok(Value::Number(r.clone()));
        }
        match name {
            "t" => Ok(Value::Scalar(NovikovScalar::t_pow(int(1)))),
            "q" => Ok(Value::Scalar(NovikovScalar::from_poly(NovikovPoly::q_pow(
                1,
            )))),
            _ => Err(ExprError::UnknownIdentifier(name.to_string())),
        }
    }

    fn neg(&self, v: Value) -> Value {
        match v {
            Value::Number(r) => Value::Number(-r),
            Value::Scalar(s) => Value::Scalar(s.neg()),
            Value::Element(e) => Value::Element(e.neg()),
        }
    }

    fn add(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Number(x), Value::Number(y)) => Value::Number(x + y),
            (a @ Value::Element(_), b) | (a, b @ Value::Element(_)) => {
                let n = self.scope.nvars();
                Value::Element(a.to_element(n).add(&b.to_element(n)))
            }
            (a, b) => Value::Scalar(
                a.to_scalar()
                    .expect("scalar")
                    .add(&b.to_scalar().expect("scalar")),
            ),
        }
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Number(x), Value::Number(y)) => Value::Number(x * y),
            (a @ Value::Element(_), b) | (a, b @ Value::Element(_)) => {
                let n = self.scope.nvars();
                Value::Element(a.to_element(n).mul(&b.to_element(n)))
            }
            (a, b) => Value::Scalar(
                a.to_scalar()
                    .expect("scalar")
                    .mul(&b.to_scalar().expect("scalar")),
            ),
        }
    }

    fn div(&self, a: Value, b: Value) -> Result<Value, ExprError> {
        if let (Value::Number(x), Value::Number(y)) = (&a, &b) {
            if y.is_zero() {
                return Err(ExprError::DivisionByZero);
            }
            return Ok(Value::Number(x / y));
        }
        match b.to_scalar() {
            Some(s) => {
                let inv = s.inverse().map_err(|_| ExprError::DivisionByZero)?;
                Ok(self.mul(a, Value::Scalar(inv)))
            }
            None => {
                let inv = self.invert(&b.to_element(self.scope.nvars()))?;
                Ok(self.mul(a, Value::Element(inv)))
            }
        }
    }

    fn invert(&self, e: &QHElement) -> Result<QHElement, ExprError> {
        self.scope
            .inverter
            .and_then(|f| f(e))
            .ok_or_else(|| ExprError::NotInvertible(e.render(self.scope.generators)))
    }

    fn pow(&self, base: Value, e: Rational) -> Result<Value, ExprError> {
        if let Value::Number(r) = &base {
            let k = to_i64(&e).ok_or_else(|| ExprError::NonIntegerExponent(e.clone()))?;
            if r.is_zero() && k < 0 {
                return Err(ExprError::DivisionByZero);
            }
            return Ok(Value::Number(num_traits::pow::Pow::pow(r, k as i32)));
        }
        if let Some(s) = base.to_scalar() {
            if let Some(k) = to_i64(&e) {
                return s
                    .pow(k)
                    .map(Value::Scalar)
                    .map_err(|_| ExprError::DivisionByZero);
            }
            // fractional powers only of pure t-powers
            return match s.as_monomial() {
                Some(m) if m.coeff.is_one() && m.qpow == 0 => {
                    Ok(Value::Scalar(NovikovScalar::from_poly(
                        NovikovPoly::monomial(Rational::one(), 0, &m.texp * &e),
                    )))
                }
                _ => Err(ExprError::NonIntegerExponent(e)),
            };
        }
        let k = to_i64(&e).ok_or_else(|| ExprError::NonIntegerExponent(e.clone()))?;
        let n = self.scope.nvars();
        let mut b = base.to_element(n);
        if k < 0 {
            b = self.invert(&b)?;
        }
        let mut acc = QHElement::one(n);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&b);
        }
        Ok(Value::Element(acc))
    }
}

fn parser<'s, 'a>(src: &str, scope: &'s Scope<'a>) -> Result<Parser<'s, 'a>, ExprError> {
    Ok(Parser {
        toks: tokenize(src)?,
        at: 0,
        end: src.len(),
        scope,
    })
}

pub fn evaluate(src: &str, scope: &Scope) -> Result<Value, ExprError> {
    let mut p = parser(src, scope)?;
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

pub fn evaluate_rational(
    src: &str,
    params: &BTreeMap<String, Rational>,
) -> Result<Rational, ExprError> {
    evaluate(src, &Scope::params_only(params))?.into_rational()
}

pub fn evaluate_element(src: &str, scope: &Scope) -> Result<QHElement, ExprError> {
    Ok(evaluate(src, scope)?.into_element(scope.nvars()))
}

/// Checks a chain such as `0 < c2 <= c1 < c1 + c2 <= 1 <= mu`.
pub fn check_constraint(src: &str, params: &BTreeMap<String, Rational>) -> Result<(), ExprError> {
    let scope = Scope::params_only(params);
    let mut p = parser(src, &scope)?;
    let mut lhs = p.expr()?.into_rational()?;
    let mut links = 0;
    loop {
        let strict = match p.peek() {
            Some(Tok::Op('<')) => true,
            Some(Tok::Le) => false,
            None if links > 0 => return Ok(()),
            _ => return p.err("expected `<` or `<=`"),
        };
        p.at += 1;
        let rhs = p.expr()?.into_rational()?;
        let ok = if strict { lhs < rhs } else { lhs <= rhs };
        if !ok {
            return Err(ExprError::ConstraintViolated(src.to_string()));
        }
        lhs = rhs;
        links += 1;
    }
}
