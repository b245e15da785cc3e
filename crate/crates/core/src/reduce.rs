//! Gröbner bases over the Novikov field, normal forms, the standard-monomial
//! basis of the quotient and inversion of ring elements.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use thiserror::Error;

use crate::element::{Monomial, QHElement};
use crate::novikov::NovikovScalar;
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("element has {got} generators, ring has {expected}")]
    GeneratorMismatch { expected: usize, got: usize },
    #[error("the quotient is not finite dimensional")]
    InfiniteQuotient,
    #[error("element is not invertible in the quotient")]
    NotInvertible,
    #[error("cannot invert zero")]
    ZeroElement,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GroebnerOptions {
    /// Interreduce the degree-one relations and substitute them into the rest
    /// before pair completion.
    pub eliminate_linear: bool,
}

#[derive(Debug)]
pub struct GroebnerBasis {
    generators: Vec<String>,
    basis: Vec<QHElement>,
    standard: OnceLock<Result<Vec<Monomial>, ReduceError>>,
}

impl Clone for GroebnerBasis {
    fn clone(&self) -> Self {
        GroebnerBasis {
            generators: self.generators.clone(),
            basis: self.basis.clone(),
            standard: OnceLock::new(),
        }
    }
}

fn monic(f: &QHElement) -> QHElement {
    match f.leading_term() {
        Some((_, c)) if !c.is_one() => f.scale(&c.inverse().expect("nonzero leading coefficient")),
        _ => f.clone(),
    }
}

fn leading_monomial(f: &QHElement) -> &Monomial {
    f.leading_term().expect("nonzero polynomial").0
}

/// Full reduction of `f` by `divisors` (all monic).
fn reduce_by(f: &QHElement, divisors: &[QHElement]) -> QHElement {
    let n = f.nvars();
    let mut p = f.clone();
    let mut rem = QHElement::zero(n);
    while let Some((m, c)) = p.pop_leading() {
        match divisors.iter().find(|g| leading_monomial(g).divides(&m)) {
            Some(g) => {
                let (lm, _) = g.leading_term().expect("nonzero");
                let q = lm.quotient_into(&m);
                // the leading term cancels exactly, so only the tail is added
                let mut tail = g.clone();
                tail.pop_leading();
                p = p.add(&tail.mul_term(&q, &c.neg()));
            }
            None => rem.add_term(m, &c),
        }
    }
    rem
}

fn s_polynomial(f: &QHElement, g: &QHElement) -> QHElement {
    let (lf, lg) = (leading_monomial(f), leading_monomial(g));
    let l = lf.lcm(lg);
    let one = NovikovScalar::one();
    f.mul_term(&lf.quotient_into(&l), &one)
        .sub(&g.mul_term(&lg.quotient_into(&l), &one))
}

/// Interreduced monic basis with pairwise non-divisible leading monomials.
fn interreduce(mut polys: Vec<QHElement>) -> Vec<QHElement> {
    polys.sort_by(|a, b| leading_monomial(a).cmp(leading_monomial(b)));
    let mut minimal: Vec<QHElement> = Vec::new();
    for f in polys {
        let lf = leading_monomial(&f).clone();
        if minimal.iter().any(|g| leading_monomial(g).divides(&lf)) {
            continue;
        }
        minimal.push(f);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let (lm, _) = minimal[i].leading_term().expect("nonzero");
        let lm = lm.clone();
        let mut tail = minimal[i].clone();
        tail.pop_leading();
        let others: Vec<QHElement> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut f = reduce_by(&tail, &others);
        f.add_term(lm, &NovikovScalar::one());
        out.push(f);
    }
    out.sort_by(|a, b| leading_monomial(a).cmp(leading_monomial(b)));
    out
}

/// Row-reduces the degree-one relations and substitutes them into the others.
fn eliminate_linear(relations: Vec<QHElement>) -> Vec<QHElement> {
    let (linear, other): (Vec<_>, Vec<_>) = relations
        .into_iter()
        .partition(|r| r.total_degree() == Some(1));
    let mut echelon: Vec<QHElement> = Vec::new();
    for r in linear {
        let r = reduce_by(&r, &echelon);
        if !r.is_zero() {
            echelon.push(monic(&r));
        }
    }
    let echelon = if echelon.is_empty() {
        echelon
    } else {
        interreduce(echelon)
    };
    let mut out: Vec<QHElement> = other
        .iter()
        .map(|r| reduce_by(r, &echelon))
        .filter(|r| !r.is_zero())
        .collect();
    out.extend(echelon);
    out
}

pub fn groebner(pres: &Presentation) -> GroebnerBasis {
    groebner_with(pres, GroebnerOptions::default())
}

pub fn groebner_with(pres: &Presentation, options: GroebnerOptions) -> GroebnerBasis {
    groebner_from(pres.generators().to_vec(), pres.relations(), options)
}

/// Buchberger completion with the normal selection strategy and the coprime
/// and chain criteria.
pub fn groebner_from(
    generators: Vec<String>,
    relations: Vec<QHElement>,
    options: GroebnerOptions,
) -> GroebnerBasis {
    let mut input: Vec<QHElement> = relations.into_iter().filter(|r| !r.is_zero()).collect();
    if options.eliminate_linear {
        input = eliminate_linear(input);
    }
    let mut basis: Vec<QHElement> = Vec::new();
    for f in input {
        let r = reduce_by(&f, &basis);
        if !r.is_zero() {
            basis.push(monic(&r));
        }
    }
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((
                leading_monomial(&basis[i]).lcm(leading_monomial(&basis[j])),
                i,
                j,
            ));
        }
    }
    while let Some((l, i, j)) = pairs.pop_first() {
        done.insert((i, j));
        let (li, lj) = (leading_monomial(&basis[i]), leading_monomial(&basis[j]));
        if li.coprime(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leading_monomial(&basis[k]).divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = reduce_by(&s_polynomial(&basis[i], &basis[j]), &basis);
        if s.is_zero() {
            continue;
        }
        let s = monic(&s);
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.insert((leading_monomial(g).lcm(leading_monomial(&s)), i, k));
        }
        basis.push(s);
    }
    let basis = if basis.is_empty() {
        basis
    } else {
        interreduce(basis)
    };
    GroebnerBasis {
        generators,
        basis,
        standard: OnceLock::new(),
    }
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    /// Basis polynomials, ascending by leading monomial.
    pub fn polynomials(&self) -> &[QHElement] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| leading_monomial(g).clone())
            .collect()
    }

    pub fn render(&self, x: &QHElement) -> String {
        x.render(&self.generators)
    }

    fn check(&self, x: &QHElement) -> Result<(), ReduceError> {
        if x.nvars() != self.nvars() {
            return Err(ReduceError::GeneratorMismatch {
                expected: self.nvars(),
                got: x.nvars(),
            });
        }
        Ok(())
    }

    pub fn normal_form(&self, x: &QHElement) -> Result<QHElement, ReduceError> {
        self.check(x)?;
        Ok(reduce_by(x, &self.basis))
    }

    pub fn contains(&self, x: &QHElement) -> Result<bool, ReduceError> {
        Ok(self.normal_form(x)?.is_zero())
    }

    /// `normal_form(a·b)`, reducing the factors first.
    pub fn multiply(&self, a: &QHElement, b: &QHElement) -> Result<QHElement, ReduceError> {
        let a = self.normal_form(a)?;
        let b = self.normal_form(b)?;
        self.normal_form(&a.mul(&b))
    }

    pub fn power(&self, x: &QHElement, e: u64) -> Result<QHElement, ReduceError> {
        let mut base = self.normal_form(x)?;
        let mut acc = QHElement::one(self.nvars());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.normal_form(&acc.mul(&base))?;
            }
            e >>= 1;
            if e > 0 {
                base = self.normal_form(&base.mul(&base))?;
            }
        }
        Ok(acc)
    }

    /// Monomials outside the leading-monomial ideal, ascending.
    pub fn standard_basis(&self) -> Result<&[Monomial], ReduceError> {
        self.standard
            .get_or_init(|| self.compute_standard_basis())
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn rank(&self) -> Result<usize, ReduceError> {
        Ok(self.standard_basis()?.len())
    }

    fn compute_standard_basis(&self) -> Result<Vec<Monomial>, ReduceError> {
        let n = self.nvars();
        let lms = self.leading_monomials();
        let mut bounds = vec![None; n];
        for m in &lms {
            if let Some((i, e)) = m.as_pure_power() {
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
            if m.is_one() {
                return Ok(Vec::new());
            }
        }
        let bounds: Vec<u32> = bounds
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(ReduceError::InfiniteQuotient)?;
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(exps.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return Ok(out);
                }
                exps[k] += 1;
                if exps[k] < bounds[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    /// Coordinates of the normal form in the standard basis.
    pub fn coordinates(&self, x: &QHElement) -> Result<Vec<NovikovScalar>, ReduceError> {
        let nf = self.normal_form(x)?;
        Ok(self
            .standard_basis()?
            .iter()
            .map(|m| nf.coefficient(m))
            .collect())
    }

    /// Solves `x·y = 1` in standard-basis coordinates.
    pub fn ring_invert(&self, x: &QHElement) -> Result<QHElement, ReduceError> {
        let x = self.normal_form(x)?;
        if x.is_zero() {
            return Err(ReduceError::ZeroElement);
        }
        let n = self.nvars();
        let basis = self.standard_basis()?.to_vec();
        if let Some(c) = x.as_scalar() {
            return Ok(QHElement::constant(
                n,
                c.inverse().map_err(|_| ReduceError::ZeroElement)?,
            ));
        }
        let r = basis.len();
        // column j holds x·b_j
        let mut a: Vec<Vec<NovikovScalar>> = vec![vec![NovikovScalar::zero(); r + 1]; r];
        for (j, b) in basis.iter().enumerate() {
            let col = self.normal_form(&x.mul_term(b, &NovikovScalar::one()))?;
            for (i, m) in basis.iter().enumerate() {
                a[i][j] = col.coefficient(m);
            }
        }
        let one = Monomial::one(n);
        for (i, m) in basis.iter().enumerate() {
            if *m == one {
                a[i][r] = NovikovScalar::one();
            }
        }
        let y = solve(a).ok_or(ReduceError::NotInvertible)?;
        Ok(QHElement::from_terms(n, basis.into_iter().zip(y)))
    }
}

/// Gauss–Jordan on an augmented `r × (r+1)` matrix; `None` if singular.
fn solve(mut a: Vec<Vec<NovikovScalar>>) -> Option<Vec<NovikovScalar>> {
    let r = a.len();
    for col in 0..r {
        // prefer the sparsest pivot to keep fractions small
        let pivot = (col..r)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].num().len() + a[i][col].den().len())?;
        a.swap(col, pivot);
        let inv = a[col][col].inverse().ok()?;
        for v in a[col].iter_mut().skip(col) {
            *v = v.mul(&inv);
        }
        let pivot_row = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = x.sub(&p.mul(&f));
            }
        }
    }
    Some(a.into_iter().map(|row| row[r].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{evaluate_element, Scope};
    use crate::manifolds::{self, strategies};
    use crate::novikov::NovikovPoly;
    use crate::presentation::{build_presentation, preset_ring, Params};
    use crate::rational::{int, ratio, Rational};
    use proptest::prelude::*;

    fn params(pairs: &[(&str, Rational)]) -> Params {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    fn parse(gb: &GroebnerBasis, p: &Params, s: &str) -> QHElement {
        let inv = |e: &QHElement| gb.ring_invert(e).ok();
        let scope = Scope {
            generators: gb.generators(),
            params: p,
            inverter: Some(&inv),
        };
        evaluate_element(s, &scope).unwrap()
    }

    #[test]
    fn even_ring() {
        let p = params(&[("mu", int(2))]);
        let pres = preset_ring("even_hirzebruch", &p).unwrap();
        let gb = groebner(&pres);
        assert_eq!(gb.polynomials().len(), 2);
        assert_eq!(gb.polynomials()[0], parse(&gb, &p, "v^2 - t^-2"));
        let nf = gb.normal_form(&parse(&gb, &p, "u^3")).unwrap();
        assert_eq!(nf, parse(&gb, &p, "u*t^-1"));
        let names: Vec<String> = gb
            .standard_basis()
            .unwrap()
            .iter()
            .map(|m| gb.render(&QHElement::term(m.clone(), NovikovScalar::one())))
            .collect();
        assert_eq!(names, ["1", "v", "u", "u*v"]);
        let inv = gb.ring_invert(&parse(&gb, &p, "u")).unwrap();
        assert_eq!(inv, parse(&gb, &p, "u*t"));
        let inv = gb.ring_invert(&parse(&gb, &p, "u + v")).unwrap();
        assert_eq!(inv, parse(&gb, &p, "(u - v)*t/(1 - t^-1)"));
        assert_eq!(
            gb.ring_invert(&QHElement::zero(2)),
            Err(ReduceError::ZeroElement)
        );
        assert_eq!(
            gb.normal_form(&QHElement::one(3)),
            Err(ReduceError::GeneratorMismatch {
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn odd_ring() {
        let p = params(&[("mu", ratio(3, 2))]);
        let pres = preset_ring("odd_hirzebruch", &p).unwrap();
        let gb = groebner(&pres);
        assert_eq!(gb.polynomials().len(), 1);
        assert_eq!(gb.render(&gb.polynomials()[0]), "u^4 + t^(-3/2)*u^3 - t^-4");
        let nf = gb.normal_form(&parse(&gb, &p, "u^4")).unwrap();
        assert_eq!(nf, parse(&gb, &p, "t^(-1 - 2*mu) - u^3*t^(-mu)"));
        assert_eq!(gb.rank(), Ok(4));
    }

    #[test]
    fn singular_element() {
        let p = params(&[("mu", int(1))]);
        let gb = groebner(&preset_ring("even_hirzebruch", &p).unwrap());
        assert_eq!(
            gb.ring_invert(&parse(&gb, &p, "u + v")),
            Err(ReduceError::NotInvertible)
        );
    }

    #[test]
    fn infinite_quotient() {
        let gb = groebner_from(
            vec!["u".into(), "v".into()],
            vec![QHElement::generator(2, 0).mul(&QHElement::generator(2, 1))],
            GroebnerOptions::default(),
        );
        assert_eq!(gb.rank(), Err(ReduceError::InfiniteQuotient));
    }

    #[test]
    fn blowup_rings() {
        let p = params(&[("mu", int(1)), ("c1", ratio(1, 2)), ("c2", ratio(1, 2))]);
        let ep = groebner(&preset_ring("blowup_ep", &p).unwrap());
        assert_eq!(ep.rank(), Ok(6));
        assert!(ep.contains(&parse(&ep, &p, "u^2 - v^2")).unwrap());
        let q = params(&[("mu", int(1)), ("c1", ratio(1, 2)), ("c2", ratio(1, 4))]);
        let ep2 = groebner(&preset_ring("blowup_ep", &q).unwrap());
        assert!(!ep2.contains(&parse(&ep2, &q, "u^2 - v^2")).unwrap());

        let hex = manifolds::blowup_hexagon(&int(1), &ratio(1, 2), &ratio(1, 2)).unwrap();
        let full = groebner(&build_presentation(&hex, None, p.clone()).unwrap());
        assert_eq!(full.rank(), Ok(6));
        let lhs = full.ring_invert(&parse(&full, &p, "u5")).unwrap();
        let lhs = lhs.scale(&NovikovScalar::t_pow(int(-1)));
        assert_eq!(
            full.normal_form(&lhs).unwrap(),
            full.normal_form(&parse(&full, &p, "u2")).unwrap()
        );
    }

    #[test]
    fn linear_elimination_gives_same_basis() {
        let (mu, c1, c2) = (int(2), ratio(1, 2), ratio(1, 4));
        let hex = manifolds::blowup_hexagon(&mu, &c1, &c2).unwrap();
        let pres = build_presentation(&hex, None, Params::new()).unwrap();
        let a = groebner(&pres);
        let b = groebner_with(
            &pres,
            GroebnerOptions {
                eliminate_linear: true,
            },
        );
        assert_eq!(a.polynomials(), b.polynomials());
    }

    fn hirzebruch_ring() -> impl Strategy<Value = GroebnerBasis> {
        (any::<bool>(), strategies::mu()).prop_map(|(even, mu)| {
            let name = if even {
                "even_hirzebruch"
            } else {
                "odd_hirzebruch"
            };
            groebner(&preset_ring(name, &params(&[("mu", mu)])).unwrap())
        })
    }

    fn arb_ring() -> impl Strategy<Value = GroebnerBasis> {
        let ep = strategies::blowup_params().prop_map(|(mu, c1, c2)| {
            groebner(
                &preset_ring("blowup_ep", &strategies::blowup_param_map(&mu, &c1, &c2)).unwrap(),
            )
        });
        prop_oneof![2 => hirzebruch_ring(), 1 => ep]
    }

    /// Random element of `ring` whose coefficients all carry `q^qpow`.
    fn arb_element(
        ring: &GroebnerBasis,
        qpow: i64,
        terms: usize,
    ) -> impl Strategy<Value = QHElement> {
        let n = ring.nvars();
        prop::collection::vec(
            (prop::collection::vec(0u32..5, n), -3i64..4, -4i64..5),
            0..=terms,
        )
        .prop_map(move |terms| {
            QHElement::from_terms(
                n,
                terms.into_iter().map(|(e, c, te)| {
                    let coeff = NovikovPoly::monomial(int(c), qpow, int(te));
                    (Monomial::from_exponents(e), NovikovScalar::from_poly(coeff))
                }),
            )
        })
    }

    fn with_elements(
        ring: impl Strategy<Value = GroebnerBasis>,
        count: usize,
    ) -> impl Strategy<Value = (GroebnerBasis, Vec<QHElement>)> {
        ring.prop_flat_map(move |gb| {
            let xs = prop::collection::vec(arb_element(&gb, 0, 3), count);
            (Just(gb), xs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn normal_form_respects_ring_operations((gb, xs) in with_elements(arb_ring(), 2)) {
            let (a, b) = (&xs[0], &xs[1]);
            let (na, nb) = (gb.normal_form(a).unwrap(), gb.normal_form(b).unwrap());
            prop_assert_eq!(gb.normal_form(&na).unwrap(), na.clone());
            prop_assert_eq!(gb.normal_form(&a.add(b)).unwrap(), na.add(&nb));
            prop_assert_eq!(gb.normal_form(&a.mul(b)).unwrap(), gb.multiply(&na, &nb).unwrap());
        }

        #[test]
        fn odd_reduction_matches_long_division(
            mu in strategies::mu(),
            coeffs in prop::collection::vec((-3i64..4, -3i64..4), 0..10),
        ) {
            let gb = groebner(&preset_ring("odd_hirzebruch", &params(&[("mu", mu.clone())])).unwrap());
            let scalar = |(c, e): (i64, i64)| NovikovScalar::from_int(c).mul(&NovikovScalar::t_pow(int(e)));
            let mut dense: Vec<NovikovScalar> = coeffs.iter().copied().map(scalar).collect();
            let x = QHElement::from_terms(
                1,
                dense.iter().enumerate().map(|(k, c)| (Monomial::from_exponents(vec![k as u32]), c.clone())),
            );
            // u^4 = t^{-1-2mu} - t^{-mu} u^3
            let (a3, a0) = (NovikovScalar::t_pow(-mu.clone()).neg(), NovikovScalar::t_pow(int(-1) - int(2) * &mu));
            for k in (4..dense.len()).rev() {
                let c = std::mem::replace(&mut dense[k], NovikovScalar::zero());
                dense[k - 1] = dense[k - 1].add(&c.mul(&a3));
                dense[k - 4] = dense[k - 4].add(&c.mul(&a0));
            }
            let expected = QHElement::from_terms(
                1,
                dense.into_iter().enumerate().map(|(k, c)| (Monomial::from_exponents(vec![k as u32]), c)),
            );
            prop_assert_eq!(gb.normal_form(&x).unwrap(), expected);
        }

        #[test]
        fn inverses_multiply_to_one((gb, xs) in with_elements(hirzebruch_ring(), 1)) {
            match gb.ring_invert(&xs[0]) {
                Ok(y) => prop_assert!(gb.multiply(&xs[0], &y).unwrap().is_one()),
                Err(e) => prop_assert!(matches!(e, ReduceError::NotInvertible | ReduceError::ZeroElement)),
            }
        }

        #[test]
        fn reduction_preserves_weight(
            (gb, x, d) in (arb_ring(), -2i64..3).prop_flat_map(|(gb, d)| {
                let x = arb_element(&gb, d, 3);
                (Just(gb), x, Just(d))
            })
        ) {
            let nf = gb.normal_form(&x).unwrap();
            prop_assert!(nf.is_zero() || nf.reduced_weight() == Some(2 * d));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn rank_is_vertex_count_and_generators_are_units((p, nef) in strategies::bundled()) {
            let gb = groebner(&build_presentation(&p, nef.as_ref(), Params::new()).unwrap());
            prop_assert_eq!(gb.rank().unwrap(), p.vertices().len());
            for i in 0..p.len() {
                let u = QHElement::generator(p.len(), i);
                let inv = gb.ring_invert(&u).unwrap();
                prop_assert!(gb.multiply(&u, &inv).unwrap().is_one());
            }
        }
    }
}
