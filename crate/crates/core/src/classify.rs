//! Isomorphism of (curve, involution) pairs and Klein four-group detection.
//!
//! If the reduced automorphism group contains a Klein four-group, the
//! invariants satisfy `2^(g-1) u_1^2 = u_g^(g+1)`. For odd `g` this splits as
//! `(2^r u_1 - u_g^(r+1)) (2^r u_1 + u_g^(r+1)) = 0` with `r = (g-1)/2`; the
//! first factor means the involutions lift to involutions, the second that
//! two of them lift to elements of order 4.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{invariants_equal, invariants_from_even, DihedralInvariants};
use crate::involution::{normalize_to_even, HyperellipticCurve};
use crate::models::{self, ModelFamily};
use crate::scalar::{pow, Scalar};
use crate::{RatInvariants, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorSign {
    First,
    Second,
    Both,
    None,
}

impl fmt::Display for FactorSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorSign::First => "first",
            FactorSign::Second => "second",
            FactorSign::Both => "both",
            FactorSign::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub genus: usize,
    pub invariant_tuples: Vec<RatInvariants>,
    pub v4_embedded: bool,
    /// Only for odd genus.
    pub factor_sign: Option<FactorSign>,
    /// `2 u_1^2 - u_2^3`, genus 2 only.
    pub d6: Option<Rational>,
    pub notes: Vec<String>,
}

/// `2^(g-1) u_1^2 == u_g^(g+1)`.
pub fn v4_condition<S: Scalar>(u: &DihedralInvariants<S>) -> bool {
    v4_defect(u).is_zero()
}

/// `2^(g-1) u_1^2 - u_g^(g+1)`.
pub fn v4_defect<S: Scalar>(u: &DihedralInvariants<S>) -> S {
    let g = u.genus();
    let u1 = u.first();
    pow(&S::from_i64(2), g - 1) * u1.clone() * u1.clone() - pow(u.last(), g + 1)
}

pub fn klein_factor_sign<S: Scalar>(u: &DihedralInvariants<S>) -> Result<FactorSign> {
    let g = u.genus();
    if g % 2 == 0 {
        return Err(Error::NotApplicable(format!(
            "factor split needs odd genus, got {g}"
        )));
    }
    let r = (g - 1) / 2;
    let lhs = pow(&S::from_i64(2), r) * u.first().clone();
    let rhs = pow(u.last(), r + 1);
    let first = (lhs.clone() - rhs.clone()).is_zero();
    let second = (lhs + rhs).is_zero();
    Ok(match (first, second) {
        (true, true) => FactorSign::Both,
        (true, false) => FactorSign::First,
        (false, true) => FactorSign::Second,
        (false, false) => FactorSign::None,
    })
}

/// Invariant tuples reachable through the exact detection path.
pub fn rational_invariant_tuples(curve: &HyperellipticCurve) -> Result<Vec<RatInvariants>> {
    let form = normalize_to_even(curve)?;
    Ok(vec![invariants_from_even(&form)?])
}

/// Equal invariant tuples mean isomorphic pairs. The converse holds for the
/// tuples the exact path can see; curves with several classes of extra
/// involutions may carry tuples that are not found here.
pub fn curves_isomorphic_with_involution(
    c1: &HyperellipticCurve,
    c2: &HyperellipticCurve,
) -> Result<bool> {
    let t1 = rational_invariant_tuples(c1)?;
    let t2 = rational_invariant_tuples(c2)?;
    if c1.genus() != c2.genus() {
        return Ok(false);
    }
    for u in &t1 {
        for v in &t2 {
            if invariants_equal(u, v)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub const NOTE_INCOMPLETE: &str =
    "tuples come from involutions visible over Q; conjugacy classes defined only over an extension are not listed";

pub fn classify(curve: &HyperellipticCurve) -> ClassificationReport {
    let g = curve.genus();
    let mut notes = Vec::new();
    let tuples = match rational_invariant_tuples(curve) {
        Ok(t) => t,
        Err(Error::NotInLocus) => {
            notes.push("not-in-L_g: no extra involution detected over Q".to_string());
            Vec::new()
        }
        Err(Error::DegenerateLocus) => {
            notes.push(
                "extra involution found but c_1 = c_g = 0: dihedral invariants vanish".to_string(),
            );
            Vec::new()
        }
        Err(e) => {
            notes.push(format!("detection failed: {e}"));
            Vec::new()
        }
    };
    if !tuples.is_empty() {
        notes.push(NOTE_INCOMPLETE.to_string());
    }

    let v4_tuple = tuples.iter().find(|u| v4_condition(*u));
    let v4_embedded = v4_tuple.is_some();
    let factor_sign = if g % 2 == 1 {
        Some(
            v4_tuple
                .or(tuples.first())
                .map(|u| klein_factor_sign(u).expect("odd genus"))
                .unwrap_or(FactorSign::None),
        )
    } else {
        None
    };

    let d6 = if g == 2 {
        tuples.first().map(v4_defect)
    } else {
        None
    };
    if let Some(d6) = &d6 {
        notes.push(format!("d6 = 2*u1^2 - u2^3 = {d6}"));
        if d6.is_zero() {
            notes.push("d6 = 0: V4 embeds in the reduced automorphism group".to_string());
        }
    }

    if let Some(u) = v4_tuple {
        notes.extend(family_notes(u, factor_sign));
    }

    ClassificationReport {
        genus: g,
        invariant_tuples: tuples,
        v4_embedded,
        factor_sign,
        d6,
        notes,
    }
}

fn family_notes(u: &RatInvariants, sign: Option<FactorSign>) -> Vec<String> {
    let mut notes = Vec::new();
    match sign {
        Some(FactorSign::First) => notes.push(
            "first factor: the Klein group lifts to involutions (Aut contains Z2^3)".to_string(),
        ),
        Some(FactorSign::Second) => notes.push(
            "second factor: two involutions lift to elements of order 4 (Aut contains Z2 x Z4)"
                .to_string(),
        ),
        _ => {}
    }
    let family = if u.genus() == 2 {
        ModelFamily::G2D8
    } else {
        ModelFamily::GenericV4
    };
    let req = models::RationalModelRequest {
        genus: u.genus(),
        u: Some(u.clone()),
        family,
        extra: None,
    };
    let reproduced = models::build_model(&req)
        .and_then(|curve| models::verify_model_exact(u, &curve))
        .unwrap_or(false);
    if reproduced {
        notes.push(format!(
            "{} model over Q reproduces the invariants",
            family.name()
        ));
    }
    notes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, RatPoly};

    fn inv(v: &[i64]) -> RatInvariants {
        DihedralInvariants::new(v.iter().map(|&n| rat(n, 1)).collect()).unwrap()
    }

    fn curve(g: usize, c: &[i64]) -> HyperellipticCurve {
        HyperellipticCurve::new(g, RatPoly::from_i64s(c)).unwrap()
    }

    #[test]
    fn v4_examples() {
        assert!(v4_condition(&inv(&[162, 72, 18])));
        assert!(v4_condition(&inv(&[162, 36, 18])));
        assert!(!v4_condition(&inv(&[82, 20, 6])));
        assert!(v4_condition(&inv(&[-16, 8])));
    }

    #[test]
    fn factor_sign_examples() {
        assert_eq!(
            klein_factor_sign(&inv(&[162, 72, 18])),
            Ok(FactorSign::First)
        );
        assert_eq!(
            klein_factor_sign(&inv(&[-162, 5, 18])),
            Ok(FactorSign::Second)
        );
        assert_eq!(klein_factor_sign(&inv(&[82, 20, 6])), Ok(FactorSign::None));
        assert_eq!(klein_factor_sign(&inv(&[0, 1, 0])), Ok(FactorSign::Both));
        assert!(matches!(
            klein_factor_sign(&inv(&[-16, 8])),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let f = RatPoly::from_i64s(&[1, 0, -3, 0, 2, 0, -3, 0, 1]);
        let c1 = HyperellipticCurve::new(3, f.clone()).unwrap();
        // f(2X) / 256
        let scaled = RatPoly::new(
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(1 << i, 256))
                .collect(),
        );
        let c2 = HyperellipticCurve::new(3, scaled).unwrap();
        assert!(curves_isomorphic_with_involution(&c1, &c2).unwrap());
        let rev = HyperellipticCurve::new(3, f.reverse(8).unwrap()).unwrap();
        assert!(curves_isomorphic_with_involution(&c1, &rev).unwrap());
        let other = curve(3, &[1, 0, 3, 0, 2, 0, 1, 0, 1]);
        assert!(!curves_isomorphic_with_involution(&c1, &other).unwrap());
        let generic = curve(2, &[1, 0, 0, 0, 0, 1, 1]);
        assert_eq!(
            curves_isomorphic_with_involution(&c1, &generic),
            Err(Error::NotInLocus)
        );
    }

    #[test]
    fn classify_examples() {
        let r = classify(&curve(2, &[1, 0, 1, 0, 1, 0, 1]));
        assert!(r.v4_embedded);
        assert_eq!(r.invariant_tuples, vec![inv(&[2, 2])]);
        assert_eq!(r.d6, Some(rat(0, 1)));
        assert_eq!(r.factor_sign, None);
        assert!(r.notes.iter().any(|n| n.starts_with("d6 = 2*u1^2")));

        let r = classify(&curve(3, &[3, -1, 4, 1, -5, 9, 2, 6, 1]));
        assert!(r.invariant_tuples.is_empty());
        assert!(!r.v4_embedded);
        assert_eq!(r.factor_sign, Some(FactorSign::None));

        let r = classify(&curve(3, &[1, 0, -3, 0, 2, 0, -3, 0, 1]));
        assert!(r.v4_embedded);
        assert_eq!(r.factor_sign, Some(FactorSign::First));
        assert!(r.notes.iter().any(|n| n.contains("Z2^3")));
        assert!(r.notes.iter().any(|n| n.starts_with("generic_v4 model")));
    }

    #[test]
    fn classify_is_deterministic() {
        let c = curve(3, &[1, 0, -3, 0, 2, 0, -3, 0, 1]);
        assert_eq!(classify(&c), classify(&c));
    }

    #[test]
    fn order_four_lift_case() {
        // (X^4 - 1)(X^4 - 3X^2 + 1): constant term -1, handled without roots
        let f = &RatPoly::from_i64s(&[-1, 0, 0, 0, 1]) * &RatPoly::from_i64s(&[1, 0, -3, 0, 1]);
        let r = classify(&HyperellipticCurve::new(3, f).unwrap());
        assert_eq!(r.invariant_tuples[0].first(), &rat(-162, 1));
        assert_eq!(r.invariant_tuples[0].last(), &rat(18, 1));
        assert!(r.v4_embedded);
        assert_eq!(r.factor_sign, Some(FactorSign::Second));
        assert!(r.notes.iter().any(|n| n.contains("Z2 x Z4")));
        assert!(!r.notes.iter().any(|n| n.contains("Z2^3")));
    }
}
