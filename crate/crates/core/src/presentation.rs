//! Seidel elements of facet circle actions and the quotient presentation
//! `Π[u_1..u_n] / (Lin(P) + SR(P))` they determine.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::element::{Monomial, QHElement};
use crate::expr::ExprError;
use crate::manifolds;
use crate::novikov::NovikovScalar;
use crate::polytope::{Polytope, PolytopeError};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("the polytope is not Fano; a NEF override with a citation is required")]
    NotFano,
    #[error("override refused: the polytope is not even NEF")]
    NotEvenNef,
    #[error("facet index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Justification for treating a non-Fano NEF action as having no lower order
/// terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NefOverride {
    pub citation: String,
}

impl NefOverride {
    pub fn new(citation: impl Into<String>) -> Self {
        NefOverride {
            citation: citation.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Fano,
    NefOverride { citation: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeidelElement {
    pub element: QHElement,
    pub facet: usize,
    pub phi_max: Rational,
    pub label: Option<Vec<i64>>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub enum Source {
    Polytope(Box<Polytope>),
    Preset(String),
}

#[derive(Clone, Debug)]
pub struct Presentation {
    generators: Vec<String>,
    linear: Vec<QHElement>,
    multiplicative: Vec<QHElement>,
    params: BTreeMap<String, Rational>,
    source: Source,
}

pub type Params = BTreeMap<String, Rational>;

impl Presentation {
    pub fn new(
        generators: Vec<String>,
        linear: Vec<QHElement>,
        multiplicative: Vec<QHElement>,
        params: Params,
        source: Source,
    ) -> Self {
        Presentation {
            generators,
            linear,
            multiplicative,
            params,
            source,
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, name: &str) -> Option<QHElement> {
        let i = self.generators.iter().position(|g| g == name)?;
        Some(QHElement::generator(self.nvars(), i))
    }

    pub fn linear_relations(&self) -> &[QHElement] {
        &self.linear
    }

    /// Stanley–Reisner relations, or the defining relations of a preset.
    pub fn multiplicative_relations(&self) -> &[QHElement] {
        &self.multiplicative
    }

    pub fn relations(&self) -> Vec<QHElement> {
        self.linear
            .iter()
            .chain(&self.multiplicative)
            .cloned()
            .collect()
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn polytope(&self) -> Option<&Polytope> {
        match &self.source {
            Source::Polytope(p) => Some(p),
            Source::Preset(_) => None,
        }
    }

    pub fn render(&self, x: &QHElement) -> String {
        x.render(&self.generators)
    }
}

fn provenance(p: &Polytope, nef: Option<&NefOverride>) -> Result<Provenance, PresentationError> {
    let report = p.fano_nef_check()?;
    if report.fano {
        return Ok(Provenance::Fano);
    }
    match nef {
        None => Err(PresentationError::NotFano),
        Some(_) if !report.nef => Err(PresentationError::NotEvenNef),
        Some(o) => Ok(Provenance::NefOverride {
            citation: o.citation.clone(),
        }),
    }
}

/// `u_i · t^{φ_max(i)}` for facet `i`.
pub fn seidel_element(
    p: &Polytope,
    i: usize,
    nef: Option<&NefOverride>,
) -> Result<SeidelElement, PresentationError> {
    if i >= p.len() {
        return Err(PresentationError::IndexOutOfRange(i));
    }
    let provenance = provenance(p, nef)?;
    let phi_max = p.facet_phi_max(i)?;
    let element = QHElement::term(
        Monomial::var(p.len(), i),
        NovikovScalar::t_pow(phi_max.clone()),
    );
    Ok(SeidelElement {
        element,
        facet: i,
        phi_max,
        label: p.facets()[i].label.clone(),
        provenance,
    })
}

/// `Σ ⟨e_k, η_i⟩ u_i` for `k = 1, 2`.
pub fn linear_relations(p: &Polytope) -> Vec<QHElement> {
    let n = p.len();
    (0..2)
        .map(|k| {
            QHElement::from_terms(
                n,
                p.facets()
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (Monomial::var(n, i), NovikovScalar::from_int(f.normal[k]))),
            )
        })
        .collect()
}

/// One relation `u_i u_j - Π u_k^{m_k} t^δ` per primitive pair, from
/// `η_i + η_j = Σ m_k η_k` and multiplicativity of the Seidel elements.
pub fn sr_relations(
    p: &Polytope,
    nef: Option<&NefOverride>,
) -> Result<Vec<QHElement>, PresentationError> {
    provenance(p, nef)?;
    let n = p.len();
    let phi = p.phi_maxima();
    let mut out = Vec::new();
    for (i, j) in p.primitive_pairs() {
        let (a, b) = (p.facets()[i].normal, p.facets()[j].normal);
        let decomposition = p.cone_decompose([a[0] + b[0], a[1] + b[1]])?;
        let mut exps = vec![0u32; n];
        let mut delta = -(&phi[i] + &phi[j]);
        for &(k, m) in &decomposition.parts {
            exps[k] += m as u32;
            delta += int(m as i64) * &phi[k];
        }
        let lhs = Monomial::var(n, i).mul(&Monomial::var(n, j));
        let rhs = Monomial::from_exponents(exps);
        out.push(QHElement::from_terms(
            n,
            [
                (lhs, NovikovScalar::one()),
                (rhs, NovikovScalar::t_pow(delta).neg()),
            ],
        ));
    }
    Ok(out)
}

pub fn facet_generator_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

pub fn build_presentation(
    p: &Polytope,
    nef: Option<&NefOverride>,
    params: Params,
) -> Result<Presentation, PresentationError> {
    let sr = sr_relations(p, nef)?;
    Ok(Presentation::new(
        facet_generator_names(p.len()),
        linear_relations(p),
        sr,
        params,
        Source::Polytope(Box::new(p.clone())),
    ))
}

pub const PRESETS: [&str; 4] = [
    "even_hirzebruch",
    "odd_hirzebruch",
    "blowup_ep",
    "blowup_full",
];

pub fn param(params: &Params, name: &str) -> Result<Rational, PresentationError> {
    params
        .get(name)
        .cloned()
        .ok_or_else(|| PresentationError::MissingParam(name.to_string()))
}

fn t(e: Rational) -> NovikovScalar {
    NovikovScalar::t_pow(e)
}

fn mono(exps: &[u32]) -> Monomial {
    Monomial::from_exponents(exps.to_vec())
}

/// Checks `0 < c2 <= c1 < c1 + c2 <= 1 <= mu`.
pub fn check_blowup_range(
    mu: &Rational,
    c1: &Rational,
    c2: &Rational,
) -> Result<(), PresentationError> {
    let zero = int(0);
    let one = int(1);
    let s = c1 + c2;
    if zero < *c2 && c2 <= c1 && *c1 < s && s <= one && one <= *mu {
        Ok(())
    } else {
        Err(PresentationError::ParamOutOfRange(format!(
            "need 0 < c2 <= c1 < c1 + c2 <= 1 <= mu, got mu={mu}, c1={c1}, c2={c2}"
        )))
    }
}

/// The two generators of the two-point blow-up ideal in `u = (F-E2)⊗q`,
/// `v = (B-E2)⊗q`.
pub fn blowup_ep_relations(mu: &Rational, c1: &Rational, c2: &Rational) -> [QHElement; 2] {
    let tail = c1 - mu - int(1) - c2;
    let r1 = QHElement::from_terms(
        2,
        [
            (mono(&[2, 2]), NovikovScalar::one()),
            (mono(&[2, 1]), t(-c2.clone())),
            (mono(&[0, 1]), t(-(mu + c2)).neg()),
            (mono(&[0, 0]), t(tail.clone()).neg()),
        ],
    );
    let r2 = QHElement::from_terms(
        2,
        [
            (mono(&[2, 2]), NovikovScalar::one()),
            (mono(&[1, 2]), t(-c2.clone())),
            (mono(&[1, 0]), t(-(int(1) + c2)).neg()),
            (mono(&[0, 0]), t(tail).neg()),
        ],
    );
    [r1, r2]
}

pub fn preset_ring(name: &str, params: &Params) -> Result<Presentation, PresentationError> {
    let mu = param(params, "mu")?;
    let keep = |names: &[&str]| -> Params {
        params
            .iter()
            .filter(|(k, _)| names.contains(&k.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    };
    let preset = |gens: &[&str], rels: Vec<QHElement>, kept: Params| {
        Presentation::new(
            gens.iter().map(|s| s.to_string()).collect(),
            Vec::new(),
            rels,
            kept,
            Source::Preset(name.to_string()),
        )
    };
    match name {
        "even_hirzebruch" => {
            if mu < int(1) {
                return Err(PresentationError::ParamOutOfRange(format!(
                    "need mu >= 1, got {mu}"
                )));
            }
            let rels = vec![
                QHElement::from_terms(
                    2,
                    [
                        (mono(&[2, 0]), NovikovScalar::one()),
                        (mono(&[0, 0]), t(int(-1)).neg()),
                    ],
                ),
                QHElement::from_terms(
                    2,
                    [
                        (mono(&[0, 2]), NovikovScalar::one()),
                        (mono(&[0, 0]), t(-mu.clone()).neg()),
                    ],
                ),
            ];
            Ok(preset(&["u", "v"], rels, keep(&["mu"])))
        }
        "odd_hirzebruch" => {
            if mu <= int(0) {
                return Err(PresentationError::ParamOutOfRange(format!(
                    "need mu > 0, got {mu}"
                )));
            }
            let rel = QHElement::from_terms(
                1,
                [
                    (mono(&[4]), t(int(2) * &mu)),
                    (mono(&[3]), t(mu.clone())),
                    (mono(&[0]), t(int(-1)).neg()),
                ],
            );
            Ok(preset(&["u"], vec![rel], keep(&["mu"])))
        }
        "blowup_ep" => {
            let (c1, c2) = (param(params, "c1")?, param(params, "c2")?);
            check_blowup_range(&mu, &c1, &c2)?;
            let rels = blowup_ep_relations(&mu, &c1, &c2).to_vec();
            Ok(preset(&["u", "v"], rels, keep(&["mu", "c1", "c2"])))
        }
        "blowup_full" => {
            let (c1, c2) = (param(params, "c1")?, param(params, "c2")?);
            check_blowup_range(&mu, &c1, &c2)?;
            let p = manifolds::blowup_hexagon(&mu, &c1, &c2)?;
            build_presentation(&p, None, keep(&["mu", "c1", "c2"]))
        }
        other => Err(PresentationError::UnknownPreset(other.to_string())),
    }
}

/// `Σ label_k · g_k` for a class label in the given generator images.
pub fn class_to_element(label: &[i64], images: &[QHElement]) -> QHElement {
    let n = images.first().map_or(0, QHElement::nvars);
    label
        .iter()
        .zip(images)
        .fold(QHElement::zero(n), |acc, (&c, g)| {
            acc.add(&g.scale(&NovikovScalar::from_int(c)))
        })
}
