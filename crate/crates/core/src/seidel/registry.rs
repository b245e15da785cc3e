use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::SeidelError;
use crate::element::QHElement;
use crate::exec::Execution;
use crate::presentation::Provenance;
use crate::reduce::GroebnerBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for TorsionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionOrder::Finite(n) => write!(f, "{n}"),
            TorsionOrder::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LoopProvenance {
    /// Seidel element of a facet action, possibly inverted.
    Facet {
        facet: usize,
        inverted: bool,
        basis: Provenance,
    },
    Asserted {
        citation: String,
    },
}

#[derive(Clone, Debug)]
pub struct LoopEntry {
    pub name: String,
    /// Normal form of the value.
    pub value: QHElement,
    pub inverse: QHElement,
    pub order: TorsionOrder,
    pub provenance: LoopProvenance,
}

/// Integer combination of named loops.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LoopWord(BTreeMap<String, i64>);

impl LoopWord {
    pub fn new() -> Self {
        LoopWord::default()
    }

    pub fn with(mut self, name: &str, exponent: i64) -> Self {
        self.set(name, exponent);
        self
    }

    pub fn set(&mut self, name: &str, exponent: i64) {
        if exponent == 0 {
            self.0.remove(name);
        } else {
            self.0.insert(name.to_string(), exponent);
        }
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.set(k, out.exponent(k) + v);
        }
        out
    }

    pub fn negated(&self) -> Self {
        LoopWord(self.0.iter().map(|(k, &v)| (k.clone(), -v)).collect())
    }
}

impl FromIterator<(String, i64)> for LoopWord {
    fn from_iter<I: IntoIterator<Item = (String, i64)>>(iter: I) -> Self {
        let mut w = LoopWord::new();
        for (k, v) in iter {
            w.set(&k, w.exponent(&k) + v);
        }
        w
    }
}

impl fmt::Display for LoopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &v) in &self.0 {
            let sign = if v < 0 { "-" } else { "+" };
            if first {
                if v < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match v.unsigned_abs() {
                1 => write!(f, "{k}")?,
                a => write!(f, "{a}*{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelVerdict {
    InKernel,
    /// Normal form of `S(w) - 1`.
    NotInKernel(QHElement),
}

impl KernelVerdict {
    pub fn in_kernel(&self) -> bool {
        matches!(self, KernelVerdict::InKernel)
    }
}

/// Named loops with their Seidel values in one quotient ring.
#[derive(Clone, Debug)]
pub struct LoopRegistry {
    gb: Arc<GroebnerBasis>,
    entries: Vec<LoopEntry>,
}

impl LoopRegistry {
    pub fn new(gb: Arc<GroebnerBasis>) -> Self {
        LoopRegistry {
            gb,
            entries: Vec::new(),
        }
    }

    pub fn ring(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn entries(&self) -> &[LoopEntry] {
        &self.entries
    }

    pub fn entry(&self, name: &str) -> Result<&LoopEntry, SeidelError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| SeidelError::UnknownName(name.to_string()))
    }

    /// Adds a loop after checking that its value is a unit of the asserted
    /// order.
    pub fn register(
        &mut self,
        name: &str,
        value: &QHElement,
        order: TorsionOrder,
        provenance: LoopProvenance,
    ) -> Result<(), SeidelError> {
        if self.entries.iter().any(|e| e.name == name) {
            return Err(SeidelError::DuplicateName(name.to_string()));
        }
        if value.nvars() != self.gb.nvars() {
            return Err(SeidelError::RingMismatch);
        }
        let value = self.gb.normal_form(value)?;
        let inverse = self
            .gb
            .ring_invert(&value)
            .map_err(|_| SeidelError::NotAUnit(name.to_string()))?;
        if let TorsionOrder::Finite(n) = order {
            if n == 0 || !self.gb.power(&value, n)?.is_one() {
                return Err(SeidelError::OrderInconsistent {
                    name: name.to_string(),
                    order: n,
                });
            }
        }
        self.entries.push(LoopEntry {
            name: name.to_string(),
            value,
            inverse,
            order,
            provenance,
        });
        Ok(())
    }

    /// Reduces finite-order exponents into `[0, order)`.
    pub fn normalize(&self, w: &LoopWord) -> Result<LoopWord, SeidelError> {
        let mut out = LoopWord::new();
        for (k, v) in w.iter() {
            let e = self.entry(k)?;
            let v = match e.order {
                TorsionOrder::Finite(n) => v.rem_euclid(n as i64),
                TorsionOrder::Infinite => v,
            };
            out.set(k, v);
        }
        Ok(out)
    }

    fn signed_power(&self, e: &LoopEntry, k: i64) -> Result<QHElement, SeidelError> {
        let base = if k < 0 { &e.inverse } else { &e.value };
        Ok(self.gb.power(base, k.unsigned_abs())?)
    }

    /// Normal form of `Π S(g)^{w(g)}`.
    pub fn word_element(&self, w: &LoopWord) -> Result<QHElement, SeidelError> {
        let w = self.normalize(w)?;
        let mut acc = QHElement::one(self.gb.nvars());
        for (k, v) in w.iter() {
            let p = self.signed_power(self.entry(k)?, v)?;
            acc = self.gb.multiply(&acc, &p)?;
        }
        Ok(acc)
    }

    pub fn kernel_check(&self, w: &LoopWord) -> Result<KernelVerdict, SeidelError> {
        let x = self.word_element(w)?;
        if x.is_one() {
            return Ok(KernelVerdict::InKernel);
        }
        let one = QHElement::one(self.gb.nvars());
        Ok(KernelVerdict::NotInKernel(
            self.gb.normal_form(&x.sub(&one))?,
        ))
    }

    /// Exponent range searched for each entry, in registration order.
    fn ranges(&self, bound: u64) -> Vec<Vec<i64>> {
        let b = bound as i64;
        self.entries
            .iter()
            .map(|e| match e.order {
                TorsionOrder::Finite(n) => (0..n as i64).collect(),
                TorsionOrder::Infinite => (-b..=b).collect(),
            })
            .collect()
    }

    /// Every nonzero word in the search box whose Seidel value is `1`, sorted.
    pub fn kernel_search(&self, bound: u64, exec: Execution) -> Result<Vec<LoopWord>, SeidelError> {
        let ranges = self.ranges(bound);
        // power tables: tables[i][j] = S(g_i)^{ranges[i][j]}
        let tables: Vec<Vec<QHElement>> = self
            .entries
            .iter()
            .zip(&ranges)
            .map(|(e, r)| r.iter().map(|&k| self.signed_power(e, k)).collect())
            .collect::<Result<_, _>>()?;
        let mut indices: Vec<Vec<usize>> = vec![Vec::new()];
        for r in &ranges {
            indices = indices
                .into_iter()
                .flat_map(|prefix| {
                    (0..r.len()).map(move |j| {
                        let mut p = prefix.clone();
                        p.push(j);
                        p
                    })
                })
                .collect();
        }
        let one = QHElement::one(self.gb.nvars());
        let verdicts = exec.map(&indices, |idx| -> Result<Option<LoopWord>, SeidelError> {
            let word: LoopWord = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| (self.entries[i].name.clone(), ranges[i][j]))
                .collect();
            if word.is_empty() {
                return Ok(None);
            }
            let mut acc = one.clone();
            for (i, &j) in idx.iter().enumerate() {
                acc = self.gb.multiply(&acc, &tables[i][j])?;
            }
            Ok(acc.is_one().then_some(word))
        });
        let mut out: Vec<LoopWord> = verdicts
            .into_iter()
            .filter_map(Result::transpose)
            .collect::<Result<_, _>>()?;
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{self, strategies};
    use crate::presentation::{build_presentation, seidel_element, Params};
    use crate::rational::{int, ratio, Rational};
    use crate::reduce::groebner;
    use proptest::prelude::*;

    const NAMES: [&str; 3] = ["a", "b", "c"];

    fn hexagon_registry(mu: &Rational, c1: &Rational, c2: &Rational) -> LoopRegistry {
        let p = manifolds::blowup_hexagon(mu, c1, c2).unwrap();
        let gb = Arc::new(groebner(
            &build_presentation(&p, None, Params::new()).unwrap(),
        ));
        let mut reg = LoopRegistry::new(gb);
        for (i, name) in NAMES.iter().enumerate() {
            let s = seidel_element(&p, i, None).unwrap();
            let provenance = LoopProvenance::Facet {
                facet: i,
                inverted: false,
                basis: s.provenance,
            };
            reg.register(name, &s.element, TorsionOrder::Infinite, provenance)
                .unwrap();
        }
        reg
    }

    fn word(exps: &[i64]) -> LoopWord {
        NAMES
            .iter()
            .zip(exps)
            .map(|(n, &e)| (n.to_string(), e))
            .collect()
    }

    #[test]
    fn names_are_checked() {
        let mut reg = hexagon_registry(&int(1), &ratio(1, 2), &ratio(1, 2));
        assert!(matches!(reg.entry("z"), Err(SeidelError::UnknownName(_))));
        let value = reg.entry("a").unwrap().value.clone();
        assert!(matches!(
            reg.register(
                "a",
                &value,
                TorsionOrder::Infinite,
                reg.entries()[0].provenance.clone()
            ),
            Err(SeidelError::DuplicateName(_))
        ));
        assert_eq!(
            reg.kernel_check(&LoopWord::new()).unwrap(),
            KernelVerdict::InKernel
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn words_act_multiplicatively(
            (mu, c1, c2) in strategies::blowup_params(),
            v in prop::collection::vec(-1i64..2, 3),
            w in prop::collection::vec(-1i64..2, 3),
        ) {
            let reg = hexagon_registry(&mu, &c1, &c2);
            let gb = reg.ring();
            let (v, w) = (word(&v), word(&w));
            let (sv, sw) = (reg.word_element(&v).unwrap(), reg.word_element(&w).unwrap());
            prop_assert_eq!(reg.word_element(&v.plus(&w)).unwrap(), gb.multiply(&sv, &sw).unwrap());
            prop_assert_eq!(reg.word_element(&v.negated()).unwrap(), gb.ring_invert(&sv).unwrap());
        }
    }
}
