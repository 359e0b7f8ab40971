//! Curves over the field of moduli, built from dihedral invariants.
//!
//! When `2^(g-1) u_1^2 = u_g^(g+1)` the curve
//! `y^2 = u_1 x^(2g+2) + u_1 x^(2g) + u_2 x^(2g-2) + ... + u_g x^2 + 2`
//! has invariants `u`, and its coefficients lie in `Q(u)`. Genus 2 and 3 have
//! additional family-specific models.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::classify::v4_condition;
use crate::error::{Error, Result};
use crate::invariants::{invariants_equal, invariants_equal_tol, DEFAULT_TOL};
use crate::involution::HyperellipticCurve;
use crate::numeric;
use crate::scalar::{pow, Scalar};
use crate::{RatInvariants, RatPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelFamily {
    GenericV4,
    G2D8,
    G2D12,
    G2V4a,
    G2V4b,
    G3Aut16,
    G3D12,
    G3Z2xZ4,
    G3Z2cubed,
}

impl ModelFamily {
    pub const ALL: [ModelFamily; 9] = [
        ModelFamily::GenericV4,
        ModelFamily::G2D8,
        ModelFamily::G2D12,
        ModelFamily::G2V4a,
        ModelFamily::G2V4b,
        ModelFamily::G3Aut16,
        ModelFamily::G3D12,
        ModelFamily::G3Z2xZ4,
        ModelFamily::G3Z2cubed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelFamily::GenericV4 => "generic_v4",
            ModelFamily::G2D8 => "g2_D8",
            ModelFamily::G2D12 => "g2_D12",
            ModelFamily::G2V4a => "g2_V4_a",
            ModelFamily::G2V4b => "g2_V4_b",
            ModelFamily::G3Aut16 => "g3_aut16",
            ModelFamily::G3D12 => "g3_D12",
            ModelFamily::G3Z2xZ4 => "g3_Z2xZ4",
            ModelFamily::G3Z2cubed => "g3_Z2cubed",
        }
    }

    /// Fixed genus of the family; `None` for the generic family.
    pub fn genus(self) -> Option<usize> {
        match self {
            ModelFamily::GenericV4 => None,
            ModelFamily::G2D8 | ModelFamily::G2D12 | ModelFamily::G2V4a | ModelFamily::G2V4b => {
                Some(2)
            }
            _ => Some(3),
        }
    }

    /// `false` for the D12 models, whose coefficients depend on relations
    /// that cannot be checked from the invariants alone.
    pub fn validated(self) -> bool {
        !matches!(self, ModelFamily::G2D12 | ModelFamily::G3D12)
    }

    /// Known discrepancies between the emitted model and its input.
    pub fn caveat(self) -> Option<&'static str> {
        match self {
            ModelFamily::G2D12 | ModelFamily::G3D12 => {
                Some("coefficients are not validated against the invariants")
            }
            ModelFamily::G2V4a => Some(
                "these coefficients do not reproduce u; model_g2_v4a_corrected (X coefficient 2(u2^2+12u1), X^2 coefficient over d6) does",
            ),
            ModelFamily::G3Z2xZ4 => Some("the model's own invariants are (-1 - u3^4/16, 0, -u3)"),
            _ => None,
        }
    }
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown model family '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalModelRequest {
    pub genus: usize,
    pub u: Option<RatInvariants>,
    pub family: ModelFamily,
    /// `w` for [`ModelFamily::G3Aut16`].
    pub extra: Option<Rational>,
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn finish(genus: usize, coeffs: Vec<Rational>) -> Result<HyperellipticCurve> {
    let f = RatPoly::new(coeffs);
    match HyperellipticCurve::new(genus, f) {
        Err(Error::NotSquarefree) | Err(Error::InvalidDegree(_)) => Err(Error::DegenerateModel),
        other => other,
    }
}

fn require_genus(u: &RatInvariants, genus: usize) -> Result<()> {
    if u.genus() != genus {
        return Err(Error::Precondition(format!(
            "expected {genus} invariants, got {}",
            u.genus()
        )));
    }
    Ok(())
}

/// `y^2 = u_1 x^(2g+2) + u_1 x^(2g) + u_2 x^(2g-2) + ... + u_g x^2 + 2`.
pub fn model_generic_v4(u: &RatInvariants) -> Result<HyperellipticCurve> {
    let g = u.genus();
    if u.first().is_zero() {
        return Err(Error::Precondition("u_1 = 0".into()));
    }
    if !v4_condition(u) {
        return Err(Error::Precondition("2^(g-1) u_1^2 != u_g^(g+1)".into()));
    }
    let mut c = vec![Rational::zero(); 2 * g + 3];
    c[0] = q(2);
    for j in 1..=g {
        c[2 * (g + 1 - j)] = u.u(j).clone();
    }
    c[2 * g + 2] = u.first().clone();
    finish(g, c)
}

/// Genus-2 families.
pub fn model_g2(u: &RatInvariants, family: ModelFamily) -> Result<HyperellipticCurve> {
    require_genus(u, 2)?;
    let (u1, u2) = (u.u(1).clone(), u.u(2).clone());
    let d6 = q(2) * u1.clone() * u1.clone() - pow(&u2, 3);
    match family {
        ModelFamily::G2D8 => {
            if !d6.is_zero() {
                return Err(Error::Precondition(
                    "D8 family needs 2 u_1^2 = u_2^3".into(),
                ));
            }
            finish(2, vec![q(2), q(0), u2, q(0), u1.clone(), q(0), u1])
        }
        ModelFamily::G2D12 => {
            let k = q(4) * (u2.clone() - q(450));
            finish(2, vec![u2 - q(18), q(0), q(0), k.clone(), q(0), q(0), k])
        }
        ModelFamily::G2V4a => {
            if u2.is_zero() {
                return Err(Error::Precondition("V4 family (a) needs u_2 != 0".into()));
            }
            if d6.is_zero() {
                return Err(Error::Precondition("V4 family (a) needs d6 != 0".into()));
            }
            let u2sq = u2.clone() * u2.clone();
            let u2cu = u2sq.clone() * u2.clone();
            let outer = u2cu.clone() + u2sq.clone() * u1.clone() + q(2) * d6.clone();
            let middle = q(15) * u2cu - u2sq.clone() * u1.clone() + q(30) * d6.clone();
            let d6sq = d6.clone() * d6.clone();
            let d6cu = d6sq.clone() * d6.clone();
            finish(
                2,
                vec![
                    outer.clone(),
                    q(2) * (u2sq.clone() + q(12)),
                    q(2) * middle.clone() / d6sq.clone(),
                    -(q(8) * (u2sq.clone() - q(20) * u1.clone()) / d6.clone()),
                    q(4) * middle / d6sq.clone(),
                    q(8) * (u2sq + q(12) * u1) / d6sq,
                    q(8) * outer / d6cu,
                ],
            )
        }
        ModelFamily::G2V4b => {
            if !u2.is_zero() {
                return Err(Error::Precondition("V4 family (b) needs u_2 = 0".into()));
            }
            let e = q(2) * u1.clone() + q(1);
            let o = -(q(2) * (q(4) * u1.clone() - q(3)));
            let m = q(14) * u1.clone() + q(15);
            let mid = -(q(4) * (q(4) * u1 - q(5)));
            finish(2, vec![e.clone(), o.clone(), m.clone(), mid, m, o, e])
        }
        ModelFamily::GenericV4 => model_generic_v4(u),
        other => Err(Error::Precondition(format!(
            "{other} is not a genus-2 family"
        ))),
    }
}

/// The V4 (a) sextic with the two coefficients forced by its own symmetry
/// `X -> (d6/2)/X`: `2(u_2^2 + 12 u_1) X` and `2 m / d6 X^2`. Unlike
/// [`ModelFamily::G2V4a`], its invariants equal `u`.
pub fn model_g2_v4a_corrected(u: &RatInvariants) -> Result<HyperellipticCurve> {
    require_genus(u, 2)?;
    let (u1, u2) = (u.u(1).clone(), u.u(2).clone());
    if u2.is_zero() {
        return Err(Error::Precondition("V4 family (a) needs u_2 != 0".into()));
    }
    let d6 = q(2) * u1.clone() * u1.clone() - pow(&u2, 3);
    if d6.is_zero() {
        return Err(Error::Precondition("V4 family (a) needs d6 != 0".into()));
    }
    let u2sq = u2.clone() * u2.clone();
    let u2cu = u2sq.clone() * u2;
    let outer = u2cu.clone() + u2sq.clone() * u1.clone() + q(2) * d6.clone();
    let middle = q(15) * u2cu - u2sq.clone() * u1.clone() + q(30) * d6.clone();
    let lin = u2sq.clone() + q(12) * u1.clone();
    let d6sq = d6.clone() * d6.clone();
    finish(
        2,
        vec![
            outer.clone(),
            q(2) * lin.clone(),
            q(2) * middle.clone() / d6.clone(),
            -(q(8) * (u2sq - q(20) * u1) / d6.clone()),
            q(4) * middle / d6sq.clone(),
            q(8) * lin / d6sq.clone(),
            q(8) * outer / (d6sq * d6),
        ],
    )
}

/// Genus-3 families. `aut16` takes `w`; `D12` and `Z2xZ4` use `u_3` only.
pub fn model_g3(
    u: Option<&RatInvariants>,
    w: Option<&Rational>,
    family: ModelFamily,
) -> Result<HyperellipticCurve> {
    let need_u = || -> Result<&RatInvariants> {
        let u = u.ok_or_else(|| Error::Precondition(format!("{family} needs invariants")))?;
        require_genus(u, 3)?;
        Ok(u)
    };
    match family {
        ModelFamily::G3Aut16 => {
            let w = w.ok_or_else(|| Error::Precondition("g3_aut16 needs w".into()))?;
            finish(
                3,
                vec![
                    q(1),
                    q(0),
                    q(0),
                    q(0),
                    w.clone(),
                    q(0),
                    q(0),
                    q(0),
                    w.clone(),
                ],
            )
        }
        ModelFamily::G3D12 => {
            let u3 = need_u()?.u(3).clone();
            finish(
                3,
                vec![
                    q(126),
                    q(0),
                    -(q(9) * (u3.clone() - q(162))),
                    q(0),
                    q(15) * (u3.clone() - q(134)),
                    q(0),
                    -(q(7) * (u3.clone() - q(98))),
                    q(0),
                    u3 - q(260),
                ],
            )
        }
        ModelFamily::G3Z2xZ4 => {
            let u3 = need_u()?.u(3).clone();
            let u3_4 = pow(&u3, 4);
            finish(
                3,
                vec![
                    q(-16),
                    q(0),
                    q(8) * u3,
                    q(0),
                    q(0),
                    q(0),
                    u3_4.clone(),
                    q(0),
                    u3_4,
                ],
            )
        }
        ModelFamily::G3Z2cubed => {
            let u = need_u()?;
            finish(
                3,
                vec![
                    q(2),
                    q(0),
                    u.u(3).clone(),
                    q(0),
                    u.u(2).clone(),
                    q(0),
                    u.u(1).clone(),
                    q(0),
                    u.u(1).clone(),
                ],
            )
        }
        ModelFamily::GenericV4 => model_generic_v4(need_u()?),
        other => Err(Error::Precondition(format!(
            "{other} is not a genus-3 family"
        ))),
    }
}

pub fn build_model(req: &RationalModelRequest) -> Result<HyperellipticCurve> {
    if let Some(g) = req.family.genus() {
        if g != req.genus {
            return Err(Error::Precondition(format!(
                "{} is a genus-{g} family, requested genus {}",
                req.family, req.genus
            )));
        }
    }
    let need_u = || {
        req.u
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("{} needs invariants", req.family)))
    };
    match req.family {
        ModelFamily::GenericV4 => {
            let u = need_u()?;
            require_genus(u, req.genus)?;
            model_generic_v4(u)
        }
        f if f.genus() == Some(2) => model_g2(need_u()?, f),
        f => model_g3(req.u.as_ref(), req.extra.as_ref(), f),
    }
}

/// `(2^(g-1) u_1^2 + u_g^(g+1)) / (2^g u_1)`: the first invariant of the
/// generic model without assuming the Klein-group relation.
pub fn closed_form_u1(u: &RatInvariants) -> Result<Rational> {
    let g = u.genus();
    let u1 = u.first();
    if u1.is_zero() {
        return Err(Error::Precondition("u_1 = 0".into()));
    }
    let two = q(2);
    Ok(
        (pow(&two, g - 1) * u1.clone() * u1.clone() + pow(u.last(), g + 1))
            / (pow(&two, g) * u1.clone()),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelVerification {
    pub matches: bool,
    /// The match was established over Q rather than in floating point.
    pub exact: bool,
    /// Holds the closed-form identity value when the Klein-group relation is satisfied.
    pub closed_form_u1: Option<Rational>,
    pub diagnostics: Vec<String>,
}

/// Exact route only: the rationally detected tuple equals `u`.
pub fn verify_model_exact(u: &RatInvariants, curve: &HyperellipticCurve) -> Result<bool> {
    if curve.genus() != u.genus() {
        return Ok(false);
    }
    match crate::classify::rational_invariant_tuples(curve) {
        Ok(tuples) => {
            for t in &tuples {
                if invariants_equal(t, u)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Err(Error::NotInLocus) | Err(Error::DegenerateLocus) => Ok(false),
        Err(e) => Err(e),
    }
}

pub fn verify_model_detailed(
    u: &RatInvariants,
    curve: &HyperellipticCurve,
) -> Result<ModelVerification> {
    let mut out = ModelVerification {
        matches: false,
        exact: false,
        closed_form_u1: None,
        diagnostics: Vec::new(),
    };
    if curve.genus() != u.genus() {
        out.diagnostics.push(format!(
            "genus {} vs {} invariants",
            curve.genus(),
            u.genus()
        ));
        return Ok(out);
    }
    if !u.first().is_zero() && v4_condition(u) {
        let value = closed_form_u1(u)?;
        if &value != u.first() {
            return Err(Error::Verification(format!(
                "closed-form identity gives {value}, expected {}",
                u.first()
            )));
        }
        out.closed_form_u1 = Some(value);
    }
    if verify_model_exact(u, curve)? {
        out.matches = true;
        out.exact = true;
        return Ok(out);
    }
    out.diagnostics
        .push("exact path did not reproduce u; trying numeric search".into());

    let (model, _) = curve.even_degree_model();
    let involutions = numeric::search_involutions_of_poly(&model, DEFAULT_TOL)
        .map_err(|e| Error::Verification(format!("numeric search: {e}")))?;
    let target = u.to_complex();
    for inv in involutions.iter().filter(|i| !i.fixes_branch_points) {
        let found = numeric::involution_invariants(&model, inv)
            .map_err(|e| Error::Verification(format!("numeric invariants: {e}")))?;
        if let Some(v) = found {
            if invariants_equal_tol(&v, &target, DEFAULT_TOL)? {
                out.matches = true;
                return Ok(out);
            }
            out.diagnostics.push(format!(
                "involution ({:.6}, {:.6}, {:.6}) gives u = {:?}",
                inv.a,
                inv.b,
                inv.c,
                v.values()
            ));
        }
    }
    Ok(out)
}

/// `true` when some extra involution of `curve` has invariants `u`.
pub fn verify_model(u: &RatInvariants, curve: &HyperellipticCurve) -> Result<bool> {
    verify_model_detailed(u, curve).map(|v| v.matches)
}
