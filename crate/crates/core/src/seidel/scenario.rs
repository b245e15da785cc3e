use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{
    even_power_form, infinite_order_certificate, KernelVerdict, LoopProvenance, LoopRegistry,
    LoopWord, OrderVerdict, SeidelError, TorsionOrder,
};
use crate::element::QHElement;
use crate::exec::Execution;
use crate::manifolds;
use crate::novikov::{NovikovPoly, NovikovScalar};
use crate::presentation::{
    blowup_ep_relations, build_presentation, class_to_element, param, preset_ring, seidel_element,
    NefOverride, Params, Presentation, Provenance,
};
use crate::rational::{format_rational, int, ratio, Rational};
use crate::reduce::{groebner, GroebnerBasis};

pub const SCENARIOS: [&str; 3] = ["even", "odd", "blowup"];

/// Justification attached to the non-Fano `P_2` facet action.
pub const NEF_CITATION: &str =
    "the Seidel element of this NEF action does not contain any lower order terms";

#[derive(Clone, Debug, Default)]
pub struct ScenarioOptions {
    /// Exponent bound for kernel searches and bounded order checks; each
    /// scenario has its own default.
    pub bound: Option<u64>,
    pub execution: Execution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub anchor: String,
    pub passed: bool,
    pub witness: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub params: BTreeMap<String, String>,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

struct Builder {
    report: Report,
}

impl Builder {
    fn new(scenario: &str, params: &Params) -> Self {
        Builder {
            report: Report {
                scenario: scenario.to_string(),
                params: params
                    .iter()
                    .map(|(k, v)| (k.clone(), format_rational(v)))
                    .collect(),
                claims: Vec::new(),
            },
        }
    }

    fn claim<K: AsRef<str>>(
        &mut self,
        id: &str,
        anchor: &str,
        description: &str,
        passed: bool,
        witness: &[(K, String)],
    ) {
        self.report.claims.push(Claim {
            id: id.to_string(),
            description: description.to_string(),
            anchor: anchor.to_string(),
            passed,
            witness: witness
                .iter()
                .map(|(k, v)| (k.as_ref().to_string(), v.clone()))
                .collect(),
        });
    }
}

pub fn run_scenario(
    name: &str,
    params: &Params,
    options: &ScenarioOptions,
) -> Result<Report, SeidelError> {
    match name {
        "even" => even(params, options),
        "odd" => odd(params, options),
        "blowup" => blowup(params, options),
        other => Err(SeidelError::UnknownScenario(other.to_string())),
    }
}

fn t(e: Rational) -> NovikovScalar {
    NovikovScalar::t_pow(e)
}

fn gens(n: usize) -> Vec<QHElement> {
    (0..n).map(|i| QHElement::generator(n, i)).collect()
}

/// Every element of `rels`, pushed through `images`, lies in the ideal of `gb`.
fn all_reduce_to_zero(
    gb: &GroebnerBasis,
    rels: &[QHElement],
    images: &[QHElement],
) -> Result<bool, SeidelError> {
    for r in rels {
        if !gb.contains(&r.substitute(images))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn render_all(pres: &Presentation, xs: &[QHElement]) -> String {
    xs.iter()
        .map(|x| pres.render(x))
        .collect::<Vec<_>>()
        .join("; ")
}

fn words(ws: &[LoopWord]) -> String {
    if ws.is_empty() {
        return "none".into();
    }
    ws.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn even(params: &Params, options: &ScenarioOptions) -> Result<Report, SeidelError> {
    let mu = param(params, "mu")?;
    let bound = options.bound.unwrap_or(10);
    let mut b = Builder::new("even", params);
    let square = manifolds::even_hirzebruch(0, &mu)?;
    let pres = build_presentation(&square, None, params.clone())?;
    let full = groebner(&pres);
    let preset = preset_ring("even_hirzebruch", params)?;
    let ring = Arc::new(groebner(&preset));
    let [u, v] = [QHElement::generator(2, 0), QHElement::generator(2, 1)];
    let g4 = gens(4);

    let forward = all_reduce_to_zero(
        &full,
        preset.multiplicative_relations(),
        &[g4[0].clone(), g4[1].clone()],
    )?;
    let backward = all_reduce_to_zero(
        &ring,
        &pres.relations(),
        &[u.clone(), v.clone(), u.clone(), v.clone()],
    )?;
    let (r1, r2) = (full.rank()?, ring.rank()?);
    b.claim(
        "even.presentation",
        "even-hirzebruch/quotient",
        "the square's presentation and the two-relation ring u^2 = t^-1, v^2 = t^-mu define the same ideal, of rank 4",
        forward && backward && r1 == 4 && r2 == 4,
        &[
            ("polytope_relations", render_all(&pres, &pres.relations())),
            ("rank", r1.to_string()),
        ],
    );

    let sr = pres.multiplicative_relations();
    let expected = [
        g4[0].mul(&g4[2]).sub(&QHElement::constant(4, t(int(-1)))),
        g4[1]
            .mul(&g4[3])
            .sub(&QHElement::constant(4, t(-mu.clone()))),
    ];
    b.claim(
        "even.sr_verbatim",
        "even-hirzebruch/products",
        "Stanley-Reisner relations are u1*u3 = t^-1 and u2*u4 = t^-mu",
        sr == expected,
        &[("sr", render_all(&pres, sr))],
    );

    let to_preset = [u.clone(), v.clone(), u.clone(), v.clone()];
    let mut reg = LoopRegistry::new(ring.clone());
    for (name, facet) in [("Lambda0_e1", 0), ("Lambda0_e2", 1)] {
        let s = seidel_element(&square, facet, None)?;
        reg.register(
            name,
            &s.element.substitute(&to_preset),
            TorsionOrder::Finite(2),
            LoopProvenance::Facet {
                facet,
                inverted: false,
                basis: s.provenance,
            },
        )?;
    }
    let phis = [square.facet_phi_max(0)?, square.facet_phi_max(1)?];
    b.claim(
        "even.order_two",
        "even-hirzebruch/torsion",
        "S(Lambda0_e1) = u t^(1/2) and S(Lambda0_e2) = v t^(mu/2) are nontrivial with square 1",
        phis == [ratio(1, 2), &mu / int(2)]
            && !reg.entries()[0].value.is_one()
            && !reg.entries()[1].value.is_one(),
        &[
            ("phi_e1", format_rational(&phis[0])),
            ("phi_e2", format_rational(&phis[1])),
        ],
    );

    if mu > int(1) {
        let eps = int(1) / (int(6) * &mu);
        let p2 = manifolds::even_hirzebruch(1, &mu)?;
        let nef = NefOverride::new(NEF_CITATION);
        let s = seidel_element(&p2, 0, Some(&nef))?;
        let expected_phi = ratio(1, 2) - &eps;
        b.claim(
            "even.phi_p2",
            "even-hirzebruch/normalization",
            "the x1 = 1 facet of P_2 has phi_max = 1/2 - 1/(6 mu)",
            s.phi_max == expected_phi,
            &[("phi_max", format_rational(&s.phi_max))],
        );
        let label = s.label.clone().unwrap_or_default();
        let value = class_to_element(&label, &[u.clone(), v.clone()]).scale(&t(s.phi_max.clone()));
        reg.register(
            "Lambda2_e1",
            &value,
            TorsionOrder::Infinite,
            LoopProvenance::Facet {
                facet: 0,
                inverted: false,
                basis: s.provenance.clone(),
            },
        )?;
        let denom = &NovikovPoly::one() - &NovikovPoly::t_pow(int(1) - &mu);
        let coeff = t(ratio(1, 2) + &eps).div(&NovikovScalar::from_poly(denom))?;
        let candidate = u.sub(&v).scale(&coeff);
        let product = ring.multiply(&value, &candidate)?;
        b.claim(
            "even.inverse",
            "even-hirzebruch/inverse",
            "S(Lambda2_e1) * (u - v) t^(1/2 + eps) / (1 - t^(1 - mu)) = 1",
            product.is_one(),
            &[
                ("value", ring.render(&value)),
                ("inverse", ring.render(&candidate)),
            ],
        );
        let mut forms = Vec::new();
        let mut ok = true;
        for l in [-3i64, -2, -1, 1, 2, 3] {
            let f = even_power_form(&mu, l)?;
            ok &= f.nonvanishing();
            forms.push((l, f));
        }
        b.claim(
            "even.power_form",
            "even-hirzebruch/binomial",
            "for 1 <= |l| <= 3 both coefficients of S(Lambda2_e1)^l have single-sign numerators",
            ok,
            &forms
                .iter()
                .map(|(l, f)| {
                    (
                        format!("l={l}"),
                        format!(
                            "{:?} {:?} / (1 - t^(1-mu))^{}",
                            f.part, f.signs, f.denominator_power
                        ),
                    )
                })
                .collect::<Vec<_>>(),
        );
        let w = LoopWord::new().with("Lambda2_e1", 1);
        let verdict = reg.kernel_check(&w)?;
        b.claim(
            "even.not_in_kernel",
            "even-hirzebruch/kernel",
            "Lambda2_e1 is not in the kernel",
            !verdict.in_kernel(),
            &[("verdict", verdict_text(&ring, &verdict))],
        );
    }

    let found = reg.kernel_search(bound, options.execution)?;
    b.claim(
        "even.kernel_search",
        "even-hirzebruch/injectivity",
        "no nonzero word within the bound lies in the kernel",
        found.is_empty(),
        &[("bound", bound.to_string()), ("kernel", words(&found))],
    );
    Ok(b.report)
}

fn verdict_text(gb: &GroebnerBasis, v: &KernelVerdict) -> String {
    match v {
        KernelVerdict::InKernel => "in_kernel".into(),
        KernelVerdict::NotInKernel(w) => format!("not_in_kernel: S(w) - 1 = {}", gb.render(w)),
    }
}

/// `(3μ² + 3μ + 1) / (3(1 + 2μ))`
pub fn odd_epsilon(mu: &Rational) -> Rational {
    (int(3) * mu * mu + int(3) * mu + int(1)) / (int(3) * (int(1) + int(2) * mu))
}

fn odd(params: &Params, options: &ScenarioOptions) -> Result<Report, SeidelError> {
    let mu = param(params, "mu")?;
    let bound = options.bound.unwrap_or(50);
    let mut b = Builder::new("odd", params);
    let poly = manifolds::odd_hirzebruch(&mu)?;
    let pres = build_presentation(&poly, None, params.clone())?;
    let full = groebner(&pres);
    let preset = preset_ring("odd_hirzebruch", params)?;
    let ring = Arc::new(groebner(&preset));
    let g4 = gens(4);
    let u = QHElement::generator(1, 0);

    let additive = [g4[1].sub(&g4[3]), g4[0].sub(&g4[1]).sub(&g4[2])];
    let lin = crate::reduce::groebner_from(
        pres.generators().to_vec(),
        pres.linear_relations().to_vec(),
        Default::default(),
    );
    let add = crate::reduce::groebner_from(
        pres.generators().to_vec(),
        additive.to_vec(),
        Default::default(),
    );
    let same_linear = all_reduce_to_zero(&lin, &additive, &g4)?
        && all_reduce_to_zero(&add, pres.linear_relations(), &g4)?;
    b.claim(
        "odd.additive",
        "odd-hirzebruch/additive",
        "linear relations span u2 = u4 and u1 = u2 + u3",
        same_linear,
        &[("linear", render_all(&pres, pres.linear_relations()))],
    );

    let sr = pres.multiplicative_relations();
    let expected = [
        g4[0].mul(&g4[2]).sub(&QHElement::constant(4, t(int(-1)))),
        g4[1].mul(&g4[3]).sub(&g4[2].scale(&t(-mu.clone()))),
    ];
    b.claim(
        "odd.sr_verbatim",
        "odd-hirzebruch/primitive",
        "Stanley-Reisner relations are u1*u3 = t^-1 and u2*u4 = u3 t^-mu",
        sr == expected,
        &[("sr", render_all(&pres, sr))],
    );

    // u = F⊗q; u3 = u^2 t^mu follows from u2 u4 = u3 t^-mu
    let u3 = u.mul(&u).scale(&t(mu.clone()));
    let to_preset = [u.add(&u3), u.clone(), u3, u.clone()];
    let forward = all_reduce_to_zero(&full, preset.multiplicative_relations(), &[g4[1].clone()])?;
    let backward = all_reduce_to_zero(&ring, &pres.relations(), &to_preset)?;
    let (r1, r2) = (full.rank()?, ring.rank()?);
    b.claim(
        "odd.presentation",
        "odd-hirzebruch/quotient",
        "the polytope presentation equals the single relation u^4 t^(2 mu) + u^3 t^mu - t^-1, rank 4",
        forward && backward && r1 == 4 && r2 == 4,
        &[
            ("relation", ring.render(&preset.multiplicative_relations()[0])),
            ("rank", r1.to_string()),
        ],
    );

    let eps = odd_epsilon(&mu);
    let phis = poly.phi_maxima();
    let expected_phi = [
        int(1) + &mu - int(2) * &eps,
        eps.clone(),
        int(2) * &eps - &mu,
        eps.clone(),
    ];
    b.claim(
        "odd.phi",
        "odd-hirzebruch/normalization",
        "facet maxima are 1 + mu - 2 eps, eps, 2 eps - mu, eps with eps = (3 mu^2 + 3 mu + 1)/(3 (1 + 2 mu))",
        phis == expected_phi,
        &[
            ("eps", format_rational(&eps)),
            ("phi", phis.iter().map(format_rational).collect::<Vec<_>>().join(", ")),
        ],
    );

    let s4 = seidel_element(&poly, 3, None)?;
    let value = s4.element.substitute(&to_preset);
    let mut reg = LoopRegistry::new(ring.clone());
    let inverse = ring.ring_invert(&value)?;
    reg.register(
        "Lambda1_e1",
        &inverse,
        TorsionOrder::Infinite,
        LoopProvenance::Facet {
            facet: 3,
            inverted: true,
            basis: s4.provenance,
        },
    )?;
    let cert = infinite_order_certificate(&ring, &value, bound)?;
    let gcds = cert
        .evidence
        .gcds
        .iter()
        .map(|c| format!("n={}: {}", c.n, c.gcd.render("u")))
        .collect::<Vec<_>>()
        .join(", ");
    b.claim(
        "odd.certificate",
        "odd-hirzebruch/roots-of-unity",
        "u t^eps has infinite order: no power up to the bound is 1 and u^4 + u^3 - 1 shares no factor with small cyclotomics",
        cert.verdict == OrderVerdict::InfiniteOrderCertified,
        &[
            ("value", ring.render(&value)),
            ("verdict", format!("{:?}", cert.verdict)),
            (
                "specialized",
                cert.evidence.specialized.as_ref().map_or("n/a".into(), |m| m.render("u")),
            ),
            ("gcds", gcds),
        ],
    );
    let found = reg.kernel_search(bound, options.execution)?;
    b.claim(
        "odd.kernel_search",
        "odd-hirzebruch/injectivity",
        "no nonzero multiple of Lambda1_e1 within the bound lies in the kernel",
        found.is_empty(),
        &[("bound", bound.to_string()), ("kernel", words(&found))],
    );
    Ok(b.report)
}

/// Centroid offsets of the two-point blow-up polytope.
pub fn blowup_epsilons(mu: &Rational, c1: &Rational, c2: &Rational) -> (Rational, Rational) {
    let den = int(3) * (c1 * c1 + c2 * c2 - int(2) * mu);
    let e1 = (c1 * c1 * c1 + int(3) * c2 * c2 - c2 * c2 * c2 - int(3) * mu) / &den;
    let e2 = (c1 * c1 * c1 - c2 * c2 * c2 + int(3) * c2 * c2 * mu - int(3) * mu * mu) / &den;
    (e1, e2)
}

fn blowup(params: &Params, options: &ScenarioOptions) -> Result<Report, SeidelError> {
    let (mu, c1, c2) = (
        param(params, "mu")?,
        param(params, "c1")?,
        param(params, "c2")?,
    );
    let bound = options.bound.unwrap_or(2);
    let mut b = Builder::new("blowup", params);
    let hex = manifolds::blowup_hexagon(&mu, &c1, &c2)?;
    let pres = build_presentation(&hex, None, params.clone())?;
    let full = Arc::new(groebner(&pres));
    let ep_pres = preset_ring("blowup_ep", params)?;
    let ep = Arc::new(groebner(&ep_pres));
    let g6 = gens(6);
    let [u, v] = [QHElement::generator(2, 0), QHElement::generator(2, 1)];

    let pairs = hex
        .primitive_pairs()
        .iter()
        .map(|(i, j)| format!("{{{},{}}}", i + 1, j + 1))
        .collect::<Vec<_>>()
        .join(" ");
    b.claim(
        "blowup.relation_count",
        "blowup/presentation",
        "the hexagon has 2 linear and 9 Stanley-Reisner relations",
        pres.linear_relations().len() == 2 && pres.multiplicative_relations().len() == 9,
        &[("primitive_pairs", pairs)],
    );
    let rank = full.rank()?;
    b.claim(
        "blowup.rank",
        "blowup/presentation",
        "the quotient has rank 6, the vertex count",
        rank == 6 && hex.vertices().len() == 6 && ep.rank()? == 6,
        &[("rank", rank.to_string())],
    );
    let ep_rels = blowup_ep_relations(&mu, &c1, &c2);
    let contained = all_reduce_to_zero(&full, &ep_rels, &[g6[0].clone(), g6[4].clone()])?;
    b.claim(
        "blowup.ep_containment",
        "blowup/quantum-ring",
        "both generators of the two-variable ideal vanish in the hexagon ring under u -> u1, v -> u5",
        contained,
        &[("relations", render_all(&ep_pres, &ep_rels))],
    );

    let (e1, e2) = blowup_epsilons(&mu, &c1, &c2);
    let phis = hex.phi_maxima();
    let expected = [
        &mu - &e2,
        e1.clone(),
        &e1 + &e2 - &c1,
        e2.clone(),
        int(1) - &e1,
        &mu + int(1) - &c2 - &e1 - &e2,
    ];
    b.claim(
        "blowup.phi",
        "blowup/normalization",
        "facet maxima match the closed forms in eps1, eps2",
        phis == expected,
        &[
            ("eps1", format_rational(&e1)),
            ("eps2", format_rational(&e2)),
            (
                "phi",
                phis.iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(", "),
            ),
        ],
    );
    b.claim(
        "blowup.eps_equal_iff_mu_one",
        "blowup/normalization",
        "eps1 = eps2 exactly when mu = 1",
        (e1 == e2) == (mu == int(1)),
        &[("eps1 = eps2", (e1 == e2).to_string())],
    );

    // x0 = Γ2 = Γ5^{-1}, y0 = Γ1
    let s1 = seidel_element(&hex, 0, None)?;
    let s2 = seidel_element(&hex, 1, None)?;
    let s5 = seidel_element(&hex, 4, None)?;
    let x0_inverse_route = full.ring_invert(&s5.element)?;
    b.claim(
        "blowup.x0_routes",
        "blowup/generators",
        "S(Gamma2) equals S(Gamma5)^-1 in the hexagon ring",
        full.normal_form(&s2.element)? == x0_inverse_route,
        &[("S(Gamma2)", pres.render(&s2.element))],
    );

    let provenance = |facet: usize, inverted: bool| LoopProvenance::Facet {
        facet,
        inverted,
        basis: Provenance::Fano,
    };
    let mut reg_ep = LoopRegistry::new(ep.clone());
    let y0_ep = u.scale(&t(s1.phi_max.clone()));
    let x0_ep = ep.ring_invert(&v.scale(&t(s5.phi_max.clone())))?;
    reg_ep.register("x0", &x0_ep, TorsionOrder::Infinite, provenance(4, true))?;
    reg_ep.register("y0", &y0_ep, TorsionOrder::Infinite, provenance(0, false))?;
    let mut reg_full = LoopRegistry::new(full.clone());
    reg_full.register(
        "x0",
        &s2.element,
        TorsionOrder::Infinite,
        provenance(1, false),
    )?;
    reg_full.register(
        "y0",
        &s1.element,
        TorsionOrder::Infinite,
        provenance(0, false),
    )?;

    let w = LoopWord::new().with("x0", 2).with("y0", 2);
    let v_ep = reg_ep.kernel_check(&w)?;
    let v_full = reg_full.kernel_check(&w)?;
    b.claim(
        "blowup.rings_agree",
        "blowup/generators",
        "kernel verdicts for 2(x0 + y0) agree in the two-variable and hexagon rings",
        v_ep.in_kernel() == v_full.in_kernel(),
        &[("verdict", verdict_text(&ep, &v_ep))],
    );

    if mu == int(1) {
        let diagonal = c1 == c2;
        b.claim(
            "blowup.kernel",
            "blowup/non-injectivity",
            "2(x0 + y0) lies in the kernel exactly when c1 = c2",
            v_ep.in_kernel() == diagonal,
            &[("verdict", verdict_text(&ep, &v_ep))],
        );
        let (iu, iv) = (ep.ring_invert(&u)?, ep.ring_invert(&v)?);
        let chain = iv.sub(&iu).scale(&t(int(-1))).sub(&v.sub(&u));
        b.claim(
            "blowup.proof_chain",
            "blowup/non-injectivity",
            "(v^-1 - u^-1) t^-1 = v - u",
            ep.contains(&chain)?,
            &[("residue", ep.render(&ep.normal_form(&chain)?))],
        );
        let squares_equal = ep.contains(&u.mul(&u).sub(&v.mul(&v)))?;
        let factor = u.sub(&v).scale(&t(c1.clone()).sub(&t(c2.clone())));
        let factor_zero = ep.contains(&factor)?;
        b.claim(
            "blowup.squares_equivalence",
            "blowup/non-injectivity",
            "u^2 = v^2 holds exactly when (u - v)(t^c1 - t^c2) = 0",
            squares_equal == factor_zero,
            &[
                ("u^2 = v^2", squares_equal.to_string()),
                ("(u-v)(t^c1-t^c2) = 0", factor_zero.to_string()),
            ],
        );
        let found = reg_ep.kernel_search(bound, options.execution)?;
        let hit = found.contains(&w);
        b.claim(
            "blowup.kernel_search",
            "blowup/non-injectivity",
            "the bounded search over x0, y0 finds 2(x0 + y0) exactly when c1 = c2",
            hit == diagonal && (bound >= 2 || !diagonal),
            &[("bound", bound.to_string()), ("kernel", words(&found))],
        );
    }
    Ok(b.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::strategies;
    use proptest::prelude::*;

    fn params(pairs: &[(&str, Rational)]) -> Params {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    fn failing(r: &Report) -> Vec<&str> {
        r.claims
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.id.as_str())
            .collect()
    }

    #[test]
    fn even_passes() {
        let r = run_scenario(
            "even",
            &params(&[("mu", int(2))]),
            &ScenarioOptions::default(),
        )
        .unwrap();
        assert!(r.passed(), "{:?}", failing(&r));
        assert!(r.claim("even.inverse").is_some());
        let r = run_scenario(
            "even",
            &params(&[("mu", int(1))]),
            &ScenarioOptions::default(),
        )
        .unwrap();
        assert!(r.passed(), "{:?}", failing(&r));
    }

    #[test]
    fn odd_passes() {
        let r = run_scenario(
            "odd",
            &params(&[("mu", ratio(3, 2))]),
            &ScenarioOptions::default(),
        )
        .unwrap();
        assert!(r.passed(), "{:?}", failing(&r));
    }

    #[test]
    fn blowup_grid() {
        for (c1, c2) in [(ratio(1, 2), ratio(1, 2)), (ratio(1, 2), ratio(1, 3))] {
            let p = params(&[("mu", int(1)), ("c1", c1.clone()), ("c2", c2.clone())]);
            let r = run_scenario("blowup", &p, &ScenarioOptions::default()).unwrap();
            assert!(r.passed(), "{:?}", failing(&r));
            let kernel = &r.claim("blowup.kernel").unwrap().witness["verdict"];
            assert_eq!(kernel == "in_kernel", c1 == c2);
        }
    }

    #[test]
    fn unknown() {
        assert!(matches!(
            run_scenario("nope", &Params::new(), &ScenarioOptions::default()),
            Err(SeidelError::UnknownScenario(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn epsilons_agree_exactly_at_mu_one((mu, c1, c2) in strategies::blowup_params()) {
            let (e1, e2) = blowup_epsilons(&mu, &c1, &c2);
            prop_assert_eq!(e1 == e2, mu == int(1));
            let (f1, f2) = blowup_epsilons(&int(1), &c1, &c2);
            prop_assert_eq!(f1, f2);
        }

        #[test]
        fn x0_routes_agree((mu, c1, c2) in strategies::blowup_params()) {
            let hex = manifolds::blowup_hexagon(&mu, &c1, &c2).unwrap();
            let gb = groebner(&build_presentation(&hex, None, Params::new()).unwrap());
            let (e1, _) = blowup_epsilons(&mu, &c1, &c2);
            let s2 = seidel_element(&hex, 1, None).unwrap();
            let u5 = QHElement::generator(6, 4);
            let route = gb.ring_invert(&u5).unwrap().scale(&NovikovScalar::t_pow(e1 - int(1)));
            prop_assert_eq!(gb.normal_form(&s2.element).unwrap(), gb.normal_form(&route).unwrap());
        }
    }
}
