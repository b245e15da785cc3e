use std::fmt::Write as _;

use serde_json::{json, Value};
use toric_seidel::element::QHElement;
use toric_seidel::expr::{evaluate_element, Scope};
use toric_seidel::polytope::{Point, Polytope};
use toric_seidel::presentation::{facet_generator_names, seidel_element, NefOverride, Provenance};
use toric_seidel::rational::{format_rational, Rational};
use toric_seidel::reduce::groebner;
use toric_seidel::seidel::Report;

use crate::ring::{LoadedManifold, RingSource};
use crate::{CliError, Output, Params};

pub enum PolytopeQuery {
    Info,
    Delzant,
    Fano,
    Centroid,
    PrimitivePairs,
}

pub enum RingQuery {
    Presentation,
    Groebner,
    Basis,
    Rank,
    NormalForm(String),
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn point(p: &Point) -> Value {
    json!([rat(&p[0]), rat(&p[1])])
}

fn point_text(p: &Point) -> String {
    format!("({}, {})", format_rational(&p[0]), format_rational(&p[1]))
}

fn params_json(params: &Params) -> Value {
    Value::Object(params.iter().map(|(k, v)| (k.clone(), rat(v))).collect())
}

fn params_text(params: &Params) -> String {
    if params.is_empty() {
        return "none".into();
    }
    params
        .iter()
        .map(|(k, v)| format!("{k}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `B - 2*F` style rendering of a class label.
fn class_text(label: &[i64], basis: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in label.iter().zip(basis) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if *c < 0 {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        match c.unsigned_abs() {
            1 => out.push_str(name),
            a => {
                let _ = write!(out, "{a}*{name}");
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn facet_class(p: &Polytope, i: usize) -> Option<String> {
    let label = p.facets()[i].label.as_ref()?;
    (!p.class_basis().is_empty()).then(|| class_text(label, p.class_basis()))
}

pub fn polytope(m: &LoadedManifold, query: PolytopeQuery) -> Result<Output, CliError> {
    let p = &m.polytope;
    let mut text = String::new();
    let (json, passed) = match query {
        PolytopeQuery::Info => {
            let fano = p.fano_nef_check()?;
            let phi = p.phi_maxima();
            let delzant = p.check_delzant();
            let _ = writeln!(text, "name: {}", m.file.name);
            let _ = writeln!(text, "parameters: {}", params_text(&m.params));
            let _ = writeln!(text, "facets:");
            let mut facets = Vec::new();
            for (i, f) in p.facets().iter().enumerate() {
                let class = facet_class(p, i);
                let _ = writeln!(
                    text,
                    "  {}: normal ({}, {}), offset {}, phi_max {}, chern {}{}",
                    i + 1,
                    f.normal[0],
                    f.normal[1],
                    format_rational(&f.offset),
                    format_rational(&phi[i]),
                    fano.chern[i],
                    class
                        .as_ref()
                        .map(|c| format!(", class {c}"))
                        .unwrap_or_default()
                );
                facets.push(json!({
                    "facet": i + 1,
                    "normal": f.normal,
                    "offset": rat(&f.offset),
                    "label": f.label,
                    "class": class,
                    "phi_max": rat(&phi[i]),
                    "chern": fano.chern[i],
                }));
            }
            let vertices: Vec<String> = p.vertices().iter().map(point_text).collect();
            let _ = writeln!(text, "vertices: {}", vertices.join(", "));
            let _ = writeln!(text, "area: {}", format_rational(&p.area()));
            let _ = writeln!(text, "centroid: {}", point_text(&p.centroid()));
            let _ = writeln!(
                text,
                "delzant: {}",
                if delzant.passed() { "yes" } else { "no" }
            );
            let _ = writeln!(text, "fano: {}", if fano.fano { "yes" } else { "no" });
            let _ = writeln!(text, "nef: {}", if fano.nef { "yes" } else { "no" });
            let json = json!({
                "name": m.file.name,
                "params": params_json(&m.params),
                "basis": p.class_basis(),
                "facets": facets,
                "cyclic_order": p.cyclic_order().iter().map(|i| i + 1).collect::<Vec<_>>(),
                "vertices": p.vertices().iter().map(point).collect::<Vec<_>>(),
                "area": rat(&p.area()),
                "centroid": point(&p.centroid()),
                "delzant": delzant.passed(),
                "fano": fano.fano,
                "nef": fano.nef,
            });
            (json, true)
        }
        PolytopeQuery::Delzant => {
            let report = p.check_delzant();
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    let _ = writeln!(
                        text,
                        "vertex {}: facets {} and {} have determinant {}",
                        v.vertex + 1,
                        v.facets[0] + 1,
                        v.facets[1] + 1,
                        v.determinant
                    );
                    json!({
                        "vertex": v.vertex + 1,
                        "facets": [v.facets[0] + 1, v.facets[1] + 1],
                        "determinant": v.determinant,
                    })
                })
                .collect();
            let _ = writeln!(
                text,
                "delzant: {}",
                if report.passed() { "yes" } else { "no" }
            );
            (
                json!({"delzant": report.passed(), "violations": violations}),
                report.passed(),
            )
        }
        PolytopeQuery::Fano => {
            let f = p.fano_nef_check()?;
            let _ = writeln!(text, "fano: {}", if f.fano { "yes" } else { "no" });
            let _ = writeln!(text, "nef: {}", if f.nef { "yes" } else { "no" });
            let chern: Vec<String> = f
                .chern
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{}: {c}", i + 1))
                .collect();
            let _ = writeln!(text, "chern numbers: {}", chern.join(", "));
            (
                json!({"fano": f.fano, "nef": f.nef, "chern": f.chern}),
                true,
            )
        }
        PolytopeQuery::Centroid => {
            let (area, c) = p.area_centroid();
            let _ = writeln!(text, "area: {}", format_rational(&area));
            let _ = writeln!(text, "centroid: {}", point_text(&c));
            (json!({"area": rat(&area), "centroid": point(&c)}), true)
        }
        PolytopeQuery::PrimitivePairs => {
            let mut pairs = Vec::new();
            for (i, j) in p.primitive_pairs() {
                let (a, b) = (p.facets()[i].normal, p.facets()[j].normal);
                let d = p.cone_decompose([a[0] + b[0], a[1] + b[1]])?;
                let rhs: Vec<String> = d
                    .parts
                    .iter()
                    .map(|&(k, m)| {
                        if m == 1 {
                            format!("eta{}", k + 1)
                        } else {
                            format!("{m}*eta{}", k + 1)
                        }
                    })
                    .collect();
                let rhs = if rhs.is_empty() {
                    "0".to_string()
                } else {
                    rhs.join(" + ")
                };
                let _ = writeln!(
                    text,
                    "{{{}, {}}}: eta{} + eta{} = {rhs}",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                );
                pairs.push(json!({
                    "pair": [i + 1, j + 1],
                    "decomposition": d.parts.iter().map(|&(k, m)| json!({"facet": k + 1, "multiplicity": m})).collect::<Vec<_>>(),
                }));
            }
            (json!({"primitive_pairs": pairs}), true)
        }
    };
    Ok(Output { text, json, passed })
}

pub fn ring(
    ring: &RingSource,
    query: RingQuery,
    precision: Option<&Rational>,
) -> Result<Output, CliError> {
    let pres = &ring.presentation;
    let render_all = |xs: &[QHElement], render: &dyn Fn(&QHElement) -> String| -> Vec<String> {
        xs.iter().map(render).collect()
    };
    let mut text = String::new();
    let json = match query {
        RingQuery::Presentation => {
            let linear = render_all(pres.linear_relations(), &|x| pres.render(x));
            let mult = render_all(pres.multiplicative_relations(), &|x| pres.render(x));
            let _ = writeln!(text, "generators: {}", pres.generators().join(", "));
            let _ = writeln!(text, "parameters: {}", params_text(pres.params()));
            let _ = writeln!(text, "linear relations:");
            for r in &linear {
                let _ = writeln!(text, "  {r}");
            }
            let _ = writeln!(text, "multiplicative relations:");
            for r in &mult {
                let _ = writeln!(text, "  {r}");
            }
            json!({
                "generators": pres.generators(),
                "params": params_json(pres.params()),
                "linear": linear,
                "multiplicative": mult,
            })
        }
        RingQuery::Groebner => {
            let gb = groebner(pres);
            let polys = render_all(gb.polynomials(), &|x| gb.render(x));
            for p in &polys {
                let _ = writeln!(text, "{p}");
            }
            json!({"generators": gb.generators(), "groebner": polys})
        }
        RingQuery::Basis => {
            let gb = groebner(pres);
            let basis: Vec<String> = gb
                .standard_basis()?
                .iter()
                .map(|m| {
                    gb.render(&QHElement::term(
                        m.clone(),
                        toric_seidel::novikov::NovikovScalar::one(),
                    ))
                })
                .collect();
            let _ = writeln!(text, "{}", basis.join(", "));
            json!({"generators": gb.generators(), "basis": basis})
        }
        RingQuery::Rank => {
            let rank = groebner(pres).rank()?;
            let _ = writeln!(text, "{rank}");
            json!({"rank": rank})
        }
        RingQuery::NormalForm(src) => {
            let gb = groebner(pres);
            let invert = |x: &QHElement| gb.ring_invert(x).ok();
            let scope = Scope {
                generators: gb.generators(),
                params: &ring.params,
                inverter: Some(&invert),
            };
            let x = evaluate_element(&src, &scope)?;
            let nf = gb.normal_form(&x)?;
            let rendered = gb.render(&nf);
            let _ = writeln!(text, "{rendered}");
            let mut coefficients = Vec::new();
            if let Some(w) = precision {
                for (m, c) in nf.terms().collect::<Vec<_>>().into_iter().rev() {
                    let mono = gb.render(&QHElement::term(
                        m.clone(),
                        toric_seidel::novikov::NovikovScalar::one(),
                    ));
                    let series = c.series(w)?;
                    let _ = writeln!(text, "  [{mono}] {series} + ...");
                    coefficients.push(json!({
                        "monomial": mono,
                        "coefficient": c.to_string(),
                        "series": series.to_string(),
                    }));
                }
            }
            let mut out = json!({"input": src, "normal_form": rendered});
            if let Some(w) = precision {
                out["precision"] = rat(w);
                out["coefficients"] = Value::Array(coefficients);
            }
            out
        }
    };
    Ok(Output {
        text,
        json,
        passed: true,
    })
}

pub fn seidel(
    m: &LoadedManifold,
    facet: usize,
    nef: Option<&NefOverride>,
) -> Result<Output, CliError> {
    let p = &m.polytope;
    let index = facet.checked_sub(1).ok_or(CliError::FacetIndex(facet))?;
    let s = seidel_element(p, index, nef)?;
    let names = facet_generator_names(p.len());
    let element = s.element.render(&names);
    let class = facet_class(p, index);
    let provenance = match &s.provenance {
        Provenance::Fano => "fano".to_string(),
        Provenance::NefOverride { citation } => format!("nef override ({citation})"),
    };
    let mut text = String::new();
    let _ = writeln!(text, "facet: {facet}");
    let _ = writeln!(text, "seidel element: {element}");
    let _ = writeln!(text, "phi_max: {}", format_rational(&s.phi_max));
    if let Some(c) = &class {
        let _ = writeln!(text, "class: {c}");
    }
    let _ = writeln!(text, "provenance: {provenance}");
    let json = json!({
        "facet": facet,
        "generator": names[index],
        "element": element,
        "phi_max": rat(&s.phi_max),
        "label": s.label,
        "class": class,
        "provenance": s.provenance,
        "params": params_json(&m.params),
    });
    Ok(Output {
        text,
        json,
        passed: true,
    })
}

pub fn report(r: &Report) -> Output {
    let mut text = String::new();
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(text, "scenario {}: {}", r.scenario, params.join(", "));
    for c in &r.claims {
        let _ = writeln!(
            text,
            "{} {}: {} [{}]",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.description,
            c.anchor
        );
        for (k, v) in &c.witness {
            let _ = writeln!(text, "    {k}: {v}");
        }
    }
    let passed = r.claims.iter().filter(|c| c.passed).count();
    let _ = writeln!(text, "{passed}/{} claims passed", r.claims.len());
    let mut json = serde_json::to_value(r).expect("report serializes");
    json["passed"] = Value::Bool(r.passed());
    Output {
        text,
        json,
        passed: r.passed(),
    }
}
