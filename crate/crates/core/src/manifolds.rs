//! Moment polytopes of the bundled manifolds.

use crate::polytope::{Facet, Polytope};
use crate::presentation::{check_blowup_range, PresentationError};
use crate::rational::{int, Rational};

fn basis(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `P_{2k} = {0 <= x1 <= 1, x2 + k x1 >= 0, x2 - k x1 <= mu - k}` with labels in
/// `{B, F}`.
pub fn even_hirzebruch(k: i64, mu: &Rational) -> Result<Polytope, PresentationError> {
    if *mu < int(1) || k < 0 || int(k) >= *mu {
        return Err(PresentationError::ParamOutOfRange(format!(
            "need mu >= 1 and 0 <= k < mu, got k={k}, mu={mu}"
        )));
    }
    let p = Polytope::new(vec![
        Facet::labeled([1, 0], int(1), vec![1, k]),
        Facet::labeled([-k, 1], mu - int(k), vec![0, 1]),
        Facet::labeled([-1, 0], int(0), vec![1, -k]),
        Facet::labeled([-k, -1], int(0), vec![0, 1]),
    ])?;
    Ok(p.with_class_basis(basis(&["B", "F"]))?)
}

/// `{0 <= x1 + x2 <= 1, x1 >= 0, x2 >= -mu}` with labels in `{B, F}`.
pub fn odd_hirzebruch(mu: &Rational) -> Result<Polytope, PresentationError> {
    if *mu <= int(0) {
        return Err(PresentationError::ParamOutOfRange(format!(
            "need mu > 0, got {mu}"
        )));
    }
    let p = Polytope::new(vec![
        Facet::labeled([1, 1], int(1), vec![1, 1]),
        Facet::labeled([0, -1], mu.clone(), vec![0, 1]),
        Facet::labeled([-1, -1], int(0), vec![1, 0]),
        Facet::labeled([-1, 0], int(0), vec![0, 1]),
    ])?;
    Ok(p.with_class_basis(basis(&["B", "F"]))?)
}

/// `{0 <= x2 <= mu, -1 <= x1 <= 0, c1 <= x2 - x1 <= mu + 1 - c2}` with labels
/// in `{B, F, E1, E2}`.
pub fn blowup_hexagon(
    mu: &Rational,
    c1: &Rational,
    c2: &Rational,
) -> Result<Polytope, PresentationError> {
    check_blowup_range(mu, c1, c2)?;
    let p = Polytope::new(vec![
        Facet::labeled([0, 1], mu.clone(), vec![0, 1, 0, -1]),
        Facet::labeled([1, 0], int(0), vec![1, 0, -1, 0]),
        Facet::labeled([1, -1], -c1.clone(), vec![0, 0, 1, 0]),
        Facet::labeled([0, -1], int(0), vec![0, 1, -1, 0]),
        Facet::labeled([-1, 0], int(1), vec![1, 0, 0, -1]),
        Facet::labeled([-1, 1], mu + int(1) - c2, vec![0, 0, 0, 1]),
    ])?;
    Ok(p.with_class_basis(basis(&["B", "F", "E1", "E2"]))?)
}

fn check_figure_range(
    mu: &Rational,
    c1: &Rational,
    c2: &Rational,
) -> Result<(), PresentationError> {
    check_blowup_range(mu, c1, c2)?;
    if c2 < c1 && c1 + c2 < int(1) {
        Ok(())
    } else {
        Err(PresentationError::ParamOutOfRange(format!(
            "need c2 < c1 and c1 + c2 < 1, got c1={c1}, c2={c2}"
        )))
    }
}

/// First alternative toric structure on the two-point blow-up.
pub fn blowup_t1(
    mu: &Rational,
    c1: &Rational,
    c2: &Rational,
) -> Result<Polytope, PresentationError> {
    check_figure_range(mu, c1, c2)?;
    Ok(Polytope::new(vec![
        Facet::new([0, 1], mu.clone()),
        Facet::new([1, 0], int(0)),
        Facet::new([2, -1], -(c1 + c2)),
        Facet::new([1, -1], -c1.clone()),
        Facet::new([0, -1], int(0)),
        Facet::new([-1, 0], int(1)),
    ])?)
}

/// Second alternative toric structure on the two-point blow-up.
pub fn blowup_t2(
    mu: &Rational,
    c1: &Rational,
    c2: &Rational,
) -> Result<Polytope, PresentationError> {
    check_figure_range(mu, c1, c2)?;
    Ok(Polytope::new(vec![
        Facet::new([0, 1], mu.clone()),
        Facet::new([1, 0], int(0)),
        Facet::new([1, -1], -c1.clone()),
        Facet::new([1, -2], -(c1 + c2)),
        Facet::new([0, -1], int(0)),
        Facet::new([-1, 0], int(1)),
    ])?)
}

/// Parameter and polytope generators shared by property tests.
#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use crate::presentation::{NefOverride, Params};
    use crate::rational::ratio;
    use proptest::prelude::*;

    /// `mu >= 1`.
    pub fn mu() -> impl Strategy<Value = Rational> {
        (0i64..12, 1i64..5).prop_map(|(n, d)| int(1) + ratio(n, d))
    }

    /// `(mu, c1, c2)` with `0 < c2 <= c1`, `c1 + c2 <= 1 <= mu`.
    pub fn blowup_params() -> impl Strategy<Value = (Rational, Rational, Rational)> {
        (2i64..9, 1i64..8, 1i64..8, 0i64..6, 1i64..4).prop_filter_map(
            "admissible",
            |(d, a, b, m, e)| {
                (b <= a && a + b <= d).then(|| (int(1) + ratio(m, e), ratio(a, d), ratio(b, d)))
            },
        )
    }

    pub fn blowup_param_map(mu: &Rational, c1: &Rational, c2: &Rational) -> Params {
        [("mu", mu), ("c1", c1), ("c2", c2)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    /// A bundled NEF polytope at admissible parameters, paired with an
    /// override whenever it is not Fano.
    pub fn bundled() -> impl Strategy<Value = (Polytope, Option<NefOverride>)> {
        let even = (0i64..2, mu()).prop_map(|(k, mu)| even_hirzebruch(k, &(mu + int(k))).unwrap());
        let odd = mu().prop_map(|mu| odd_hirzebruch(&mu).unwrap());
        let hexagon =
            blowup_params().prop_map(|(mu, c1, c2)| blowup_hexagon(&mu, &c1, &c2).unwrap());
        let figures =
            (any::<bool>(), blowup_params()).prop_filter_map("strict", |(first, (mu, c1, c2))| {
                if first {
                    blowup_t1(&mu, &c1, &c2).ok()
                } else {
                    blowup_t2(&mu, &c1, &c2).ok()
                }
            });
        prop_oneof![even, odd, hexagon, figures].prop_map(|p| {
            let fano = p.fano_nef_check().unwrap().fano;
            (p, (!fano).then(|| NefOverride::new("no lower order terms")))
        })
    }
}
