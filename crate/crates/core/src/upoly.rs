//! Dense univariate polynomials over ℚ.
//!
//! Used for fraction reduction in the Novikov field (after rescaling
//! t-exponents to integers) and for the cyclotomic gcd certificates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::{int, Rational};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = int(-1);
        c[n] = Rational::one();
        QPoly::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => QPoly::zero(),
            Some(lc) => QPoly {
                coeffs: self.coeffs.iter().map(|c| c / lc).collect(),
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                match other.coeffs.get(i) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        QPoly::new(c)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlc = divisor.leading().expect("division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / dlc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Computed modulo large primes, lifted by the Chinese remainder theorem
    /// and confirmed by exact division.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.degree(), other.degree()) {
            (None, _) => return other.monic(),
            (_, None) => return self.monic(),
            (Some(0), _) | (_, Some(0)) => return QPoly::one(),
            _ => {}
        }
        let (a, b) = (primitive_integer(self), primitive_integer(other));
        let (la, lb) = (a.last().expect("nonzero"), b.last().expect("nonzero"));
        let gamma = la.gcd(lb);
        let mut degree = usize::MAX;
        let mut modulus = BigInt::one();
        let mut lifted: Vec<BigInt> = Vec::new();
        let mut previous: Option<Vec<BigInt>> = None;
        for p in primes() {
            let pb = BigInt::from(p);
            if (la % &pb).is_zero() || (lb % &pb).is_zero() {
                continue;
            }
            let g = gcd_mod(reduce_mod(&a, p), reduce_mod(&b, p), p);
            let d = g.len() - 1;
            if d == 0 {
                return QPoly::one();
            }
            if d > degree {
                continue;
            }
            let scale = reduce_mod(std::slice::from_ref(&gamma), p)[0];
            let g: Vec<u64> = g.into_iter().map(|c| mul_mod(c, scale, p)).collect();
            if d < degree {
                degree = d;
                modulus = BigInt::one();
                lifted = vec![BigInt::zero(); d + 1];
                previous = None;
            }
            let m_inv = inv_mod(reduce_mod(std::slice::from_ref(&modulus), p)[0], p);
            for (x, &r) in lifted.iter_mut().zip(&g) {
                let x_p = reduce_mod(std::slice::from_ref(x), p)[0];
                let k = mul_mod(sub_mod(r, x_p, p), m_inv, p);
                *x += &modulus * BigInt::from(k);
            }
            modulus *= &pb;
            let half = &modulus >> 1u32;
            let candidate: Vec<BigInt> = lifted
                .iter()
                .map(|c| if *c > half { c - &modulus } else { c.clone() })
                .collect();
            if previous.as_ref() == Some(&candidate) {
                let h = QPoly::new(
                    candidate
                        .iter()
                        .cloned()
                        .map(Rational::from_integer)
                        .collect(),
                )
                .monic();
                if self.div_rem(&h).1.is_zero() && other.div_rem(&h).1.is_zero() {
                    return h;
                }
            }
            previous = Some(candidate);
        }
        unreachable!("the prime sequence is unbounded")
    }

    /// The n-th cyclotomic polynomial, by dividing `x^n - 1` by the
    /// cyclotomic factors of the proper divisors of n.
    pub fn cyclotomic(n: usize) -> Self {
        assert!(n > 0, "cyclotomic index must be positive");
        let mut p = QPoly::x_pow_minus_one(n);
        for d in 1..n {
            if n.is_multiple_of(d) {
                let (q, r) = p.div_rem(&QPoly::cyclotomic(d));
                debug_assert!(r.is_zero());
                p = q;
            }
        }
        p
    }
}

/// Euler's totient.
pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All n with φ(n) ≤ d, ascending. Since φ(n) ≥ √(n/2), n ≤ 2d² suffices.
pub fn indices_with_totient_at_most(d: usize) -> Vec<usize> {
    let limit = 2 * d * d + 2;
    (1..=limit).filter(|&n| euler_phi(n) <= d).collect()
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl QPoly {
    /// Renders with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

/// Primitive integer polynomial proportional to a nonzero `p`.
fn primitive_integer(p: &QPoly) -> Vec<BigInt> {
    let l = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    v.into_iter().map(|c| c / &g).collect()
}

fn reduce_mod(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    v.iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64"))
        .collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `F_p`; both inputs nonzero after reduction.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while a.len() > db {
            let c = mul_mod(*a.last().expect("nonempty"), inv, p);
            let shift = a.len() - 1 - db;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = sub_mod(a[shift + j], mul_mod(c, bj, p), p);
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = inv_mod(*a.last().expect("nonzero gcd"), p);
    a.into_iter().map(|c| mul_mod(c, inv, p)).collect()
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    WITNESSES.iter().all(|&w| {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

/// Primes below `2^62`, descending.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62))
        .rev()
        .step_by(2)
        .filter(|&n| is_prime(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn euclid_gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((-9i64..10, 1i64..4), 0..7).prop_map(|v| {
            QPoly::new(
                v.into_iter()
                    .map(|(n, d)| crate::rational::ratio(n, d))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn gcd_matches_euclid(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
            let (x, y) = (a.mul(&c), b.mul(&c));
            prop_assert_eq!(x.gcd(&y), euclid_gcd(&x, &y));
        }
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(QPoly::cyclotomic(1), QPoly::from_i64(&[-1, 1]));
        assert_eq!(QPoly::cyclotomic(4), QPoly::from_i64(&[1, 0, 1]));
        assert_eq!(QPoly::cyclotomic(6), QPoly::from_i64(&[1, -1, 1]));
        assert_eq!(QPoly::cyclotomic(12), QPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(QPoly::cyclotomic(10).degree(), Some(4));
    }

    #[test]
    fn totient_enumeration() {
        assert_eq!(
            indices_with_totient_at_most(4),
            vec![1, 2, 3, 4, 5, 6, 8, 10, 12]
        );
        assert_eq!(indices_with_totient_at_most(1), vec![1, 2]);
    }

    #[test]
    fn gcd_and_division() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = QPoly::from_i64(&[-2, 1, 1]);
        let b = QPoly::from_i64(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), QPoly::from_i64(&[-1, 1]));
        let (q, r) = a.mul(&b).div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        // u^4 + u^3 - 1 against Φ_1: evaluation at 1 is 1, so coprime
        let m = QPoly::from_i64(&[-1, 0, 0, 1, 1]);
        assert_eq!(m.gcd(&QPoly::cyclotomic(1)), QPoly::one());
    }

    #[test]
    fn render() {
        assert_eq!(
            QPoly::from_i64(&[-1, 0, 0, 1, 1]).render("u"),
            "u^4 + u^3 - 1"
        );
        assert_eq!(QPoly::zero().to_string(), "0");
    }
}
