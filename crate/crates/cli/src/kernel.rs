//! Kernel scenario files: a ring, named loops with their Seidel values, word
//! checks and an optional expected search result.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use toric_seidel::exec::Execution;
use toric_seidel::expr::{evaluate_element, Scope};
use toric_seidel::presentation::seidel_element;
use toric_seidel::rational::format_rational;
use toric_seidel::reduce::{groebner, GroebnerBasis};
use toric_seidel::seidel::{Claim, LoopProvenance, LoopRegistry, LoopWord, Report, TorsionOrder};

use crate::ring::{load_ring, RingSource};
use crate::{parse_override, parse_param_value, CliError, Params};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub comment: String,
    pub ring: RingDecl,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub loops: Vec<LoopDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<WordCheck>,
    /// Words the search must return, exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_search: Option<Vec<BTreeMap<String, i64>>>,
}

/// Either a preset or a manifold file (relative to the scenario file).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDecl {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    /// `nef:CITATION`
    #[serde(default, rename = "override", skip_serializing_if = "Option::is_none")]
    pub nef_override: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderDecl {
    Finite(u64),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDecl {
    pub name: String,
    /// Expression in the ring generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// 1-based facet whose Seidel element is the value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inverted: bool,
    pub order: OrderDecl,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    InKernel,
    NotInKernel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordCheck {
    pub word: BTreeMap<String, i64>,
    pub expect: Expect,
}

fn order(decl: &LoopDecl) -> Result<TorsionOrder, CliError> {
    match &decl.order {
        OrderDecl::Finite(n) => Ok(TorsionOrder::Finite(*n)),
        OrderDecl::Named(s) if s == "inf" => Ok(TorsionOrder::Infinite),
        OrderDecl::Named(s) => Err(CliError::Invalid(format!(
            "loop `{}`: order must be a positive integer or \"inf\", got \"{s}\"",
            decl.name
        ))),
    }
}

fn word(w: &BTreeMap<String, i64>) -> LoopWord {
    w.iter().map(|(k, &v)| (k.clone(), v)).collect()
}

fn register(
    reg: &mut LoopRegistry,
    gb: &GroebnerBasis,
    ring: &RingSource,
    decl: &LoopDecl,
) -> Result<(), CliError> {
    let (value, provenance) = match (&decl.value, decl.facet) {
        (Some(src), None) => {
            let citation = decl.citation.clone().ok_or_else(|| {
                CliError::Invalid(format!(
                    "loop `{}` needs a citation for its asserted value",
                    decl.name
                ))
            })?;
            let invert = |x: &_| gb.ring_invert(x).ok();
            let scope = Scope {
                generators: gb.generators(),
                params: &ring.params,
                inverter: Some(&invert),
            };
            (
                evaluate_element(src, &scope)?,
                LoopProvenance::Asserted { citation },
            )
        }
        (None, Some(facet)) => {
            let p = ring.presentation.polytope().ok_or_else(|| {
                CliError::Invalid(format!(
                    "loop `{}`: facet loops need a manifold file ring",
                    decl.name
                ))
            })?;
            let index = facet.checked_sub(1).ok_or(CliError::FacetIndex(facet))?;
            let s = seidel_element(p, index, ring.nef.as_ref())?;
            let value = if decl.inverted {
                gb.ring_invert(&s.element)?
            } else {
                s.element
            };
            (
                value,
                LoopProvenance::Facet {
                    facet: index,
                    inverted: decl.inverted,
                    basis: s.provenance,
                },
            )
        }
        _ => {
            return Err(CliError::Invalid(format!(
                "loop `{}` needs exactly one of `value` and `facet`",
                decl.name
            )))
        }
    };
    reg.register(&decl.name, &value, order(decl)?, provenance)?;
    Ok(())
}

/// Runs a scenario file; the report passes when every check and the
/// expected search result hold.
pub fn run_kernel(path: &Path, bound: Option<u64>, exec: Execution) -> Result<Report, CliError> {
    let src = crate::read(path)?;
    let file: KernelFile = serde_json::from_str(&src).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        source: e,
    })?;
    let params: Params = file
        .params
        .iter()
        .map(|(k, v)| Ok((k.clone(), parse_param_value(v)?)))
        .collect::<Result<_, CliError>>()?;
    let nef = file
        .ring
        .nef_override
        .as_deref()
        .map(parse_override)
        .transpose()?;
    let ring = match (&file.ring.preset, &file.ring.file) {
        (Some(name), None) => load_ring(None, Some(name), &params, nef)?,
        (None, Some(rel)) => {
            let base = path.parent().unwrap_or(Path::new("."));
            load_ring(Some(&base.join(rel)), None, &params, nef)?
        }
        _ => {
            return Err(CliError::Invalid(
                "ring needs exactly one of `preset` and `file`".into(),
            ))
        }
    };
    let gb: Arc<GroebnerBasis> = Arc::new(groebner(&ring.presentation));
    let mut reg = LoopRegistry::new(gb.clone());
    for decl in &file.loops {
        register(&mut reg, &gb, &ring, decl)?;
    }
    let mut claims = Vec::new();
    for check in &file.checks {
        let w = word(&check.word);
        let verdict = reg.kernel_check(&w)?;
        let mut witness = BTreeMap::new();
        witness.insert("word".to_string(), w.to_string());
        witness.insert("value".to_string(), gb.render(&reg.word_element(&w)?));
        witness.insert(
            "verdict".to_string(),
            if verdict.in_kernel() {
                "in_kernel"
            } else {
                "not_in_kernel"
            }
            .to_string(),
        );
        claims.push(Claim {
            id: format!("check.{w}"),
            description: format!(
                "word {w} is {}",
                match check.expect {
                    Expect::InKernel => "in the kernel",
                    Expect::NotInKernel => "not in the kernel",
                }
            ),
            anchor: file.name.clone(),
            passed: verdict.in_kernel() == (check.expect == Expect::InKernel),
            witness,
        });
    }
    let bound = bound.or(file.bound);
    if let Some(b) = bound {
        let found = reg.kernel_search(b, exec)?;
        let rendered: Vec<String> = found.iter().map(|w| w.to_string()).collect();
        let mut witness = BTreeMap::new();
        witness.insert("bound".to_string(), b.to_string());
        witness.insert("found".to_string(), format!("[{}]", rendered.join(", ")));
        let passed = match &file.expect_search {
            Some(expected) => {
                let mut expected: Vec<LoopWord> = expected.iter().map(word).collect();
                expected.sort();
                expected == found
            }
            None => true,
        };
        claims.push(Claim {
            id: "search".to_string(),
            description: format!("kernel words with infinite-order exponents in [-{b}, {b}]"),
            anchor: file.name.clone(),
            passed,
            witness,
        });
    }
    Ok(Report {
        scenario: file.name,
        params: params
            .iter()
            .map(|(k, v)| (k.clone(), format_rational(v)))
            .collect(),
        claims,
    })
}
