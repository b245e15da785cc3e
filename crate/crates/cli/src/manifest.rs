//! Polytope description files: facets with offset expressions, a homology
//! class basis and declared parameters with range constraints.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use toric_seidel::expr::{check_constraint, evaluate_rational};
use toric_seidel::polytope::{Facet, Polytope};
use toric_seidel::rational::{format_rational, parse_rational, to_i64, Rational};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub comment: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<ParameterDecl>,
    /// Chains such as `0 < c2 <= c1`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
    pub facets: Vec<FacetDecl>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Integer,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterDecl {
    pub name: String,
    pub kind: ParamKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<String>,
}

/// Integer literal or an expression in the parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetDecl {
    pub normal: [Coord; 2],
    pub offset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<Coord>>,
}

pub type Params = BTreeMap<String, Rational>;

impl ManifoldFile {
    pub fn parse(src: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(src)
    }

    /// Pretty JSON with a trailing newline; the form the bundled files use.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    /// Defaults overlaid with `overrides`, checked against kinds and
    /// constraints.
    pub fn bind(&self, overrides: &Params) -> Result<Params, CliError> {
        if let Some(unknown) = overrides
            .keys()
            .find(|k| !self.parameters.iter().any(|p| &p.name == *k))
        {
            return Err(CliError::UnknownParam(unknown.clone()));
        }
        let mut out = Params::new();
        for decl in &self.parameters {
            let value = match (overrides.get(&decl.name), &decl.default) {
                (Some(v), _) => v.clone(),
                (None, Some(d)) => parse_rational(d).ok_or_else(|| {
                    CliError::Invalid(format!("default of `{}` is not a rational: {d}", decl.name))
                })?,
                (None, None) => return Err(CliError::MissingParam(decl.name.clone())),
            };
            if decl.kind == ParamKind::Integer && !value.is_integer() {
                return Err(CliError::NotInteger {
                    name: decl.name.clone(),
                    value: format_rational(&value),
                });
            }
            out.insert(decl.name.clone(), value);
        }
        for c in &self.constraints {
            check_constraint(c, &out)?;
        }
        Ok(out)
    }

    pub fn polytope(&self, params: &Params) -> Result<Polytope, CliError> {
        let facets = self
            .facets
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let normal = [
                    coord(&f.normal[0], params, i)?,
                    coord(&f.normal[1], params, i)?,
                ];
                let offset = evaluate_rational(&f.offset, params)?;
                Ok(match &f.label {
                    Some(l) => Facet::labeled(
                        normal,
                        offset,
                        l.iter()
                            .map(|c| coord(c, params, i))
                            .collect::<Result<_, CliError>>()?,
                    ),
                    None => Facet::new(normal, offset),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let p = Polytope::new(facets)?;
        if self.basis.is_empty() {
            Ok(p)
        } else {
            Ok(p.with_class_basis(self.basis.clone())?)
        }
    }
}

fn coord(c: &Coord, params: &Params, facet: usize) -> Result<i64, CliError> {
    match c {
        Coord::Int(n) => Ok(*n),
        Coord::Expr(e) => {
            let r = evaluate_rational(e, params)?;
            to_i64(&r).ok_or_else(|| {
                CliError::Invalid(format!(
                    "facet {}: `{e}` evaluates to {}, not an integer",
                    facet + 1,
                    format_rational(&r)
                ))
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_seidel::rational::int;

    const SRC: &str = r#"{
  "name": "strip",
  "parameters": [
    {
      "name": "k",
      "kind": "integer",
      "default": "1"
    },
    {
      "name": "mu",
      "kind": "rational",
      "default": "2"
    }
  ],
  "constraints": [
    "0 <= k < mu"
  ],
  "facets": [
    {
      "normal": [
        1,
        0
      ],
      "offset": "1"
    },
    {
      "normal": [
        "-k",
        1
      ],
      "offset": "mu - k"
    },
    {
      "normal": [
        -1,
        0
      ],
      "offset": "0"
    },
    {
      "normal": [
        "-k",
        -1
      ],
      "offset": "0"
    }
  ]
}
"#;

    #[test]
    fn round_trip_and_bind() {
        let m = ManifoldFile::parse(SRC).unwrap();
        assert_eq!(m.to_canonical_string(), SRC);
        let params = m.bind(&Params::new()).unwrap();
        assert_eq!(params["k"], int(1));
        let p = m.polytope(&params).unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn bind_errors() {
        let m = ManifoldFile::parse(SRC).unwrap();
        let one = |k: &str, v: Rational| -> Params { [(k.to_string(), v)].into_iter().collect() };
        assert!(matches!(
            m.bind(&one("nu", int(1))),
            Err(CliError::UnknownParam(_))
        ));
        assert!(matches!(
            m.bind(&one("k", Rational::new(1.into(), 2.into()))),
            Err(CliError::NotInteger { .. })
        ));
        assert!(matches!(m.bind(&one("k", int(2))), Err(CliError::Expr(_))));
    }
}
