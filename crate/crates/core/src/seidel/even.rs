use serde::Serialize;

use super::SeidelError;
use crate::element::{Monomial, QHElement};
use crate::novikov::{NovikovPoly, NovikovScalar};
use crate::presentation::{preset_ring, Params};
use crate::rational::{int, Rational};
use crate::reduce::groebner;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisPart {
    /// `C1·u + C2·v`
    UAndV,
    /// `C1 + C2·uv`
    OneAndUv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    AllPositive,
    AllNegative,
    Mixed,
    Zero,
}

impl Sign {
    fn of(p: &NovikovPoly) -> Self {
        if p.is_zero() {
            Sign::Zero
        } else if p.all_coefficients_positive() {
            Sign::AllPositive
        } else if (-p).all_coefficients_positive() {
            Sign::AllNegative
        } else {
            Sign::Mixed
        }
    }

    /// A polynomial whose coefficients share one sign is nonzero.
    pub fn nonvanishing(self) -> bool {
        matches!(self, Sign::AllPositive | Sign::AllNegative)
    }
}

/// `S^ℓ` for `S = (u+v)·t^{1/2 - 1/(6μ)}` in `Π[u,v]/(u² - t^{-1}, v² - t^{-μ})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenPowerForm {
    pub exponent: i64,
    pub part: BasisPart,
    pub c1: NovikovScalar,
    pub c2: NovikovScalar,
    /// `C_i · (1 - t^{1-μ})^{denominator_power}`.
    pub numerators: [NovikovPoly; 2],
    pub denominator_power: u32,
    pub signs: [Sign; 2],
}

impl EvenPowerForm {
    pub fn nonvanishing(&self) -> bool {
        self.signs.iter().all(|s| s.nonvanishing())
    }
}

pub fn even_power_form(mu: &Rational, exponent: i64) -> Result<EvenPowerForm, SeidelError> {
    if exponent == 0 {
        return Err(SeidelError::ZeroExponent);
    }
    if *mu < int(1) || (*mu == int(1) && exponent < 0) {
        return Err(SeidelError::ParamOutOfRange(format!(
            "need mu >= 1, and mu > 1 for negative exponents; got mu={mu}"
        )));
    }
    let params: Params = [("mu".to_string(), mu.clone())].into_iter().collect();
    let gb = groebner(&preset_ring("even_hirzebruch", &params)?);
    let eps = int(1) / (int(6) * mu);
    let s = QHElement::generator(2, 0)
        .add(&QHElement::generator(2, 1))
        .scale(&NovikovScalar::t_pow(
            Rational::new(1.into(), 2.into()) - eps,
        ));
    let base = if exponent < 0 { gb.ring_invert(&s)? } else { s };
    let x = gb.power(&base, exponent.unsigned_abs())?;
    let odd = exponent % 2 != 0;
    let (part, m1, m2) = if odd {
        (BasisPart::UAndV, vec![1, 0], vec![0, 1])
    } else {
        (BasisPart::OneAndUv, vec![0, 0], vec![1, 1])
    };
    let c1 = x.coefficient(&Monomial::from_exponents(m1));
    let c2 = x.coefficient(&Monomial::from_exponents(m2));
    let denominator_power = if exponent < 0 {
        exponent.unsigned_abs() as u32
    } else {
        0
    };
    let clear = (&NovikovPoly::one() - &NovikovPoly::t_pow(int(1) - mu)).pow(denominator_power);
    let numerator = |c: &NovikovScalar| -> Result<NovikovPoly, SeidelError> {
        let cleared = c.mul(&NovikovScalar::from_poly(clear.clone()));
        cleared.as_poly().cloned().ok_or_else(|| {
            SeidelError::ParamOutOfRange(format!("coefficient {c} does not clear to a polynomial"))
        })
    };
    let numerators = [numerator(&c1)?, numerator(&c2)?];
    let signs = [Sign::of(&numerators[0]), Sign::of(&numerators[1])];
    Ok(EvenPowerForm {
        exponent,
        part,
        c1,
        c2,
        numerators,
        denominator_power,
        signs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn t(n: i64, d: i64) -> NovikovPoly {
        NovikovPoly::t_pow(ratio(n, d))
    }

    #[test]
    fn squares_and_first_power() {
        let f = even_power_form(&int(2), 2).unwrap();
        assert_eq!(f.part, BasisPart::OneAndUv);
        let c1 = &(&NovikovPoly::t_pow(int(-1)) + &NovikovPoly::t_pow(int(-2))) * &t(5, 6);
        assert_eq!(f.c1, NovikovScalar::from_poly(c1));
        assert_eq!(f.c2, NovikovScalar::from_poly(t(5, 6).scale(&int(2))));
        assert!(f.nonvanishing());
        let f = even_power_form(&int(2), 1).unwrap();
        assert_eq!(f.part, BasisPart::UAndV);
        assert_eq!(f.c1, NovikovScalar::from_poly(t(5, 12)));
        assert_eq!(f.c2, f.c1);
        assert_eq!(f.signs, [Sign::AllPositive, Sign::AllPositive]);
    }

    #[test]
    fn inverse_has_denominator() {
        let f = even_power_form(&int(2), -1).unwrap();
        assert_eq!(f.part, BasisPart::UAndV);
        assert_eq!(f.denominator_power, 1);
        assert_eq!(f.signs, [Sign::AllPositive, Sign::AllNegative]);
        assert_eq!(f.numerators[0], t(1, 2) * t(1, 12));
        assert!(f.nonvanishing());
    }

    #[test]
    fn errors() {
        assert_eq!(even_power_form(&int(2), 0), Err(SeidelError::ZeroExponent));
        assert!(matches!(
            even_power_form(&int(1), -1),
            Err(SeidelError::ParamOutOfRange(_))
        ));
        assert!(even_power_form(&int(1), 3).unwrap().nonvanishing());
    }
}
