use num_traits::{One, Signed};
use serde::Serialize;

use super::SeidelError;
use crate::element::QHElement;
use crate::reduce::GroebnerBasis;
use crate::upoly::{indices_with_totient_at_most, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderVerdict {
    InfiniteOrderCertified,
    FiniteOrder(u64),
    UndeterminedUpTo(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCheck {
    pub n: usize,
    pub gcd: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderEvidence {
    /// Powers `1..=checked` were compared against `1`.
    pub checked: u64,
    /// The relation at `t = q = 1`.
    pub specialized: Option<QPoly>,
    pub gcds: Vec<CyclotomicCheck>,
    /// Why the cyclotomic argument could not be run.
    pub not_applicable: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCertificate {
    pub verdict: OrderVerdict,
    pub evidence: OrderEvidence,
}

/// Specialization of the single relation at `t = q = 1`, when the value is
/// `±t^κ q^d u^a` with `a ≥ 1` and every relation coefficient is a Laurent
/// polynomial. Any identity `value^ℓ = 1` would then force `M¹ | u^{aℓ} ∓ 1`.
fn cyclotomic_path(gb: &GroebnerBasis, value: &QHElement) -> Result<QPoly, String> {
    if gb.nvars() != 1 {
        return Err(format!("ring has {} generators", gb.nvars()));
    }
    let [relation] = gb.polynomials() else {
        return Err(format!("ideal has {} generators", gb.polynomials().len()));
    };
    let [(m, c)] = value.terms().collect::<Vec<_>>()[..] else {
        return Err("value is not a single term".into());
    };
    let coeff = c
        .as_monomial()
        .ok_or_else(|| "value coefficient is not a monomial".to_string())?;
    if !coeff.coeff.abs().is_one() || m.degree() == 0 {
        return Err("value is not of the form ±t^k u^a with a > 0".into());
    }
    let degree = relation.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![num_traits::zero(); degree + 1];
    for (m, c) in relation.terms() {
        if !c.den().is_one() {
            return Err("relation coefficient is not a Laurent polynomial".into());
        }
        coeffs[m.degree() as usize] = c.num().specialize_one();
    }
    let m1 = QPoly::new(coeffs);
    if m1.degree() != Some(degree) || degree == 0 {
        return Err("leading coefficient vanishes at t = 1".into());
    }
    Ok(m1)
}

pub fn infinite_order_certificate(
    gb: &GroebnerBasis,
    value: &QHElement,
    bound: u64,
) -> Result<OrderCertificate, SeidelError> {
    if value.nvars() != gb.nvars() {
        return Err(SeidelError::RingMismatch);
    }
    gb.ring_invert(value)
        .map_err(|_| SeidelError::NotAUnit(gb.render(value)))?;
    let x = gb.normal_form(value)?;
    let mut acc = QHElement::one(gb.nvars());
    let mut evidence = OrderEvidence {
        checked: 0,
        specialized: None,
        gcds: Vec::new(),
        not_applicable: None,
    };
    for l in 1..=bound {
        acc = gb.multiply(&acc, &x)?;
        evidence.checked = l;
        if acc.is_one() {
            return Ok(OrderCertificate {
                verdict: OrderVerdict::FiniteOrder(l),
                evidence,
            });
        }
    }
    let m1 = match cyclotomic_path(gb, value) {
        Ok(m1) => m1,
        Err(reason) => {
            evidence.not_applicable = Some(reason);
            return Ok(OrderCertificate {
                verdict: OrderVerdict::UndeterminedUpTo(bound),
                evidence,
            });
        }
    };
    let degree = m1.degree().unwrap_or(0);
    evidence.gcds = indices_with_totient_at_most(degree)
        .into_iter()
        .map(|n| CyclotomicCheck {
            n,
            gcd: m1.gcd(&QPoly::cyclotomic(n)),
        })
        .collect();
    let certified = evidence.gcds.iter().all(|c| c.gcd.degree() == Some(0));
    evidence.specialized = Some(m1);
    Ok(OrderCertificate {
        verdict: if certified {
            OrderVerdict::InfiniteOrderCertified
        } else {
            OrderVerdict::UndeterminedUpTo(bound)
        },
        evidence,
    })
}
