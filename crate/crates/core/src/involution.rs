//! Rational detection of extra involutions.
//!
//! An extra involution that fixes the point at infinity acts as
//! `X -> -X - a` for some `a`; the defining polynomial is then `G(X^2 + aX)`.
//! The subleading coefficient forces the only possible shift, so deciding the
//! decomposition is a single Taylor shift followed by a parity check.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{RatPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticCurve {
    genus: usize,
    f: RatPoly,
}

impl HyperellipticCurve {
    /// Checks `genus >= 2`, `deg f` in `{2g+1, 2g+2}` and that `f` is squarefree.
    pub fn new(genus: usize, f: RatPoly) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidInput(format!(
                "genus must be >= 2, got {genus}"
            )));
        }
        let deg = f.degree().unwrap_or(0);
        if deg != 2 * genus + 1 && deg != 2 * genus + 2 {
            return Err(Error::InvalidDegree(format!(
                "genus {genus} needs degree {} or {}, got {deg}",
                2 * genus + 1,
                2 * genus + 2
            )));
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(HyperellipticCurve { genus, f })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn poly(&self) -> &RatPoly {
        &self.f
    }

    /// `true` when infinity is a branch point.
    pub fn is_odd_degree(&self) -> bool {
        self.f.degree() == Some(2 * self.genus + 1)
    }

    /// A degree-`2g+2` model of the curve.
    ///
    /// Odd-degree curves are rewritten through `x = t + 1/X`, i.e.
    /// `X^(2g+2) f(t + 1/X)`, with `t` the first of `0, 1, -1, 2, -2, ...`
    /// such that `f(t) != 0`. The old branch point at infinity lands on
    /// `X = 0` and the new point at infinity is the non-branch point `t`.
    /// Returns the model and `t` (or `None` if no change was needed).
    pub fn even_degree_model(&self) -> (RatPoly, Option<Rational>) {
        if !self.is_odd_degree() {
            return (self.f.clone(), None);
        }
        let t = (0i64..)
            .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
            .map(|k| Rational::from_integer(k.into()))
            .find(|t| !self.f.eval(t).is_zero())
            .expect("a squarefree polynomial has finitely many roots");
        let model = self
            .f
            .taylor_shift_rational(&t)
            .reverse(2 * self.genus + 2)
            .expect("degree is below the bound");
        (model, Some(t))
    }
}

/// Monic even polynomial `X^(2g+2) + c_g X^(2g) + ... + c_1 X^2 + b0` together
/// with the substitutions that produced it from the input.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenForm {
    pub genus: usize,
    pub b0: Rational,
    /// `c[i - 1]` is the coefficient of `X^(2i)`.
    pub c: Vec<Rational>,
    /// The input was evaluated at `X + shift`.
    pub shift: Rational,
    /// The shifted polynomial was divided by this leading coefficient.
    pub leading_scale: Rational,
    /// For odd-degree input: the point `t` of [`HyperellipticCurve::even_degree_model`].
    pub moved_infinity: Option<Rational>,
}

impl EvenForm {
    pub fn poly(&self) -> RatPoly {
        let mut coeffs = vec![Rational::zero(); 2 * self.genus + 3];
        coeffs[0] = self.b0.clone();
        for (i, ci) in self.c.iter().enumerate() {
            coeffs[2 * (i + 1)] = ci.clone();
        }
        coeffs[2 * self.genus + 2] = Rational::one();
        RatPoly::new(coeffs)
    }
}

/// `outer(inner(X))` equals the decomposed polynomial, with
/// `inner = X^2 + aX` and `a = -2 * shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionWitness {
    pub outer: RatPoly,
    pub inner: RatPoly,
    pub shift: Rational,
}

impl DecompositionWitness {
    /// The outer factor relative to `(X - shift)^2` instead of `inner`,
    /// i.e. the even part of the input read as a polynomial in `X^2`.
    pub fn centered_outer(&self) -> RatPoly {
        let c2 = self.shift.clone() * self.shift.clone();
        self.outer.taylor_shift(&-c2)
    }
}

/// The unique `c` for which `E(X + c)` can be even:
/// `-coeff(E, d - 1) / (d * lc(E))`.
pub fn even_shift_candidate(e: &RatPoly) -> Result<Rational> {
    let d = match e.degree() {
        Some(d) if d >= 2 && d % 2 == 0 => d,
        other => {
            return Err(Error::InvalidInput(format!(
                "shift candidate needs an even degree >= 2, got {other:?}"
            )))
        }
    };
    let denom = Rational::from_integer((d as i64).into()) * e.leading();
    Ok(-e.coeff(d - 1) / denom)
}

/// The shift `c` and `E(X + c)`, if the latter is even.
fn centered_even(e: &RatPoly) -> Option<(Rational, RatPoly)> {
    let d = e.degree()?;
    if d < 4 || d % 2 == 1 {
        return None;
    }
    let shift = even_shift_candidate(e).ok()?;
    let centered = e.taylor_shift_rational(&shift);
    centered.is_even().then_some((shift, centered))
}

/// Writes `E = G(X^2 + aX)` if possible. Polynomials of odd degree or degree
/// below 4 have no such decomposition with `deg G >= 2` and yield `None`.
pub fn decompose_degree2(e: &RatPoly) -> Option<DecompositionWitness> {
    let (shift, centered) = centered_even(e)?;
    let half = RatPoly::new(centered.coeffs().iter().step_by(2).cloned().collect());
    // (X - c)^2 = inner + c^2
    let c2 = shift.clone() * shift.clone();
    let outer = half.taylor_shift_rational(&c2);
    let inner = RatPoly::new(vec![
        Rational::zero(),
        -(shift.clone() + shift.clone()),
        Rational::one(),
    ]);
    Some(DecompositionWitness {
        outer,
        inner,
        shift,
    })
}

pub fn has_extra_involution_rational(curve: &HyperellipticCurve) -> bool {
    decompose_degree2(&curve.even_degree_model().0).is_some()
}

/// Even form of an arbitrary even-degree polynomial (no genus restriction).
pub fn even_form(e: &RatPoly) -> Result<EvenForm> {
    let (shift, centered) = centered_even(e).ok_or(Error::NotInLocus)?;
    let lead = centered.leading();
    let monic = centered.scale(&(Rational::one() / lead.clone()));
    let b0 = monic.coeff(0);
    if b0.is_zero() {
        return Err(Error::NotNormalizable(
            "0 is a branch point of the centered model".into(),
        ));
    }
    let genus = monic.degree().unwrap_or(0) / 2 - 1;
    let c = (1..=genus).map(|i| monic.coeff(2 * i)).collect();
    Ok(EvenForm {
        genus,
        b0,
        c,
        shift,
        leading_scale: lead,
        moved_infinity: None,
    })
}

pub fn normalize_to_even(curve: &HyperellipticCurve) -> Result<EvenForm> {
    let (model, moved) = curve.even_degree_model();
    let mut form = even_form(&model)?;
    form.moved_infinity = moved;
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    fn curve(g: usize, c: &[i64]) -> HyperellipticCurve {
        HyperellipticCurve::new(g, p(c)).unwrap()
    }

    #[test]
    fn curve_validation() {
        // (X^4 - X^2 + 1)(X^2 - 1)^2
        assert_eq!(
            HyperellipticCurve::new(3, p(&[1, 0, -3, 0, 4, 0, -3, 0, 1])),
            Err(Error::NotSquarefree)
        );
        assert!(matches!(
            HyperellipticCurve::new(1, p(&[1, 0, 0, 1])),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            HyperellipticCurve::new(2, p(&[1, 0, 0, 1])),
            Err(Error::InvalidDegree(_))
        ));
        let square = &p(&[-1, 0, 1]) * &p(&[-1, 0, 1]);
        let f = &square * &p(&[1, 1, 1]);
        assert_eq!(HyperellipticCurve::new(2, f), Err(Error::NotSquarefree));
        assert!(curve(3, &[-1, 0, 0, 0, 0, 0, 0, 1]).is_odd_degree());
    }

    #[test]
    fn shift_candidates() {
        assert_eq!(
            even_shift_candidate(&p(&[29, -44, 27, -8, 1])).unwrap(),
            rat(2, 1)
        );
        assert_eq!(
            even_shift_candidate(&p(&[1, 0, 3, 0, 1])).unwrap(),
            rat(0, 1)
        );
        assert_eq!(
            even_shift_candidate(&p(&[5, 4, 3, 2, 1, 6, 1])).unwrap(),
            rat(-1, 1)
        );
        assert!(matches!(
            even_shift_candidate(&p(&[1, 1, 1, 1])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn decomposition_examples() {
        let e = p(&[29, -44, 27, -8, 1]);
        let w = decompose_degree2(&e).unwrap();
        assert_eq!(w.inner, p(&[0, -4, 1]));
        assert_eq!(w.outer.compose(&w.inner), e);
        assert_eq!(w.centered_outer(), p(&[1, 3, 1]));
        // (X - 2)^2 = inner + 4 and the centered outer factor recovers E
        assert_eq!(w.centered_outer().compose(&p(&[4, -4, 1])), e);

        let w = decompose_degree2(&p(&[1, 0, 3, 0, 1])).unwrap();
        assert_eq!((w.outer, w.inner), (p(&[1, 3, 1]), p(&[0, 0, 1])));

        assert_eq!(decompose_degree2(&p(&[1, 1, 0, 0, 1])), None);
        assert_eq!(decompose_degree2(&p(&[1, 0, 1])), None);
        assert_eq!(decompose_degree2(&p(&[1, 0, 1, 0, 0, 1])), None);
    }

    #[test]
    fn rational_detection() {
        assert!(has_extra_involution_rational(&curve(
            3,
            &[1, 0, -3, 0, 2, 0, -3, 0, 1]
        )));
        assert!(!has_extra_involution_rational(&curve(
            2,
            &[1, 0, 0, 0, 0, 1, 1]
        )));
        // y^2 = x^7 - 1: the degree-8 model is -X^8 + X
        let c = curve(3, &[-1, 0, 0, 0, 0, 0, 0, 1]);
        let (model, t) = c.even_degree_model();
        assert_eq!(t, Some(rat(0, 1)));
        assert_eq!(model, p(&[0, 1, 0, 0, 0, 0, 0, 0, -1]));
        assert!(!has_extra_involution_rational(&c));
    }

    #[test]
    fn odd_degree_model_skips_roots() {
        // f(0) = 0 so t = 1 is used
        let c = curve(2, &[0, 1, 0, 0, 0, 1]);
        let (model, t) = c.even_degree_model();
        assert_eq!(t, Some(rat(1, 1)));
        assert_eq!(model.degree(), Some(6));
        assert!(model.coeff(0).is_zero());
    }

    #[test]
    fn normalization_examples() {
        let ef = normalize_to_even(&curve(2, &[2, 0, 2, 0, 2, 0, 2])).unwrap();
        assert_eq!(ef.b0, rat(1, 1));
        assert_eq!(ef.c, vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(ef.leading_scale, rat(2, 1));
        assert_eq!(ef.shift, rat(0, 1));

        let ef = even_form(&p(&[29, -44, 27, -8, 1])).unwrap();
        assert_eq!(
            (ef.genus, ef.shift.clone(), ef.b0.clone()),
            (1, rat(2, 1), rat(1, 1))
        );
        assert_eq!(ef.c, vec![rat(3, 1)]);

        let ef = normalize_to_even(&curve(3, &[1, 0, -3, 0, 2, 0, -3, 0, 1])).unwrap();
        assert_eq!(ef.b0, rat(1, 1));
        assert_eq!(ef.c, vec![rat(-3, 1), rat(2, 1), rat(-3, 1)]);
        assert_eq!(ef.poly(), p(&[1, 0, -3, 0, 2, 0, -3, 0, 1]));

        assert_eq!(
            normalize_to_even(&curve(2, &[1, 0, 0, 0, 0, 1, 1])),
            Err(Error::NotInLocus)
        );
    }

    #[test]
    fn degenerate_interior_coefficients_are_fine() {
        let ef = normalize_to_even(&curve(3, &[3, 0, 0, 0, 0, 0, 1, 0, 1])).unwrap();
        assert_eq!(ef.c, vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decomposition_recomposes(
            g in prop::collection::vec(rational(), 3..=6),
            a in rational(),
        ) {
            let outer = RatPoly::new(g);
            prop_assume!(outer.degree().unwrap_or(0) >= 2);
            let inner = RatPoly::new(vec![rat(0, 1), a, rat(1, 1)]);
            let e = outer.compose(&inner);
            let w = decompose_degree2(&e).expect("composition must decompose");
            prop_assert_eq!(w.outer.compose(&w.inner), e);
            prop_assert_eq!(w.inner, inner);
        }

        #[test]
        fn detection_is_shift_invariant(
            p2 in prop::collection::vec(rational(), 4),
            odd in rational(),
            t in rational(),
        ) {
            // P(X^2) + odd * X^3, then translate by t
            let mut c = vec![rat(0, 1); 9];
            for (i, v) in p2.iter().enumerate() {
                c[2 * i] = v.clone();
            }
            c[8] = rat(1, 1);
            c[3] = odd;
            let f = RatPoly::new(c);
            prop_assume!(f.is_squarefree());
            let g = f.taylor_shift(&t);
            let a = HyperellipticCurve::new(3, f).unwrap();
            let b = HyperellipticCurve::new(3, g).unwrap();
            prop_assert_eq!(has_extra_involution_rational(&a), has_extra_involution_rational(&b));
        }

        #[test]
        fn even_inputs_normalize_without_shift(p2 in prop::collection::vec(rational(), 3)) {
            // X^6 + p2 X^4 + ... with nonzero constant
            let mut c = vec![rat(0, 1); 7];
            for (i, v) in p2.iter().enumerate() {
                c[2 * i] = v.clone();
            }
            c[6] = rat(1, 1);
            let f = RatPoly::new(c);
            prop_assume!(!f.coeff(0).is_zero() && f.is_squarefree());
            let ef = normalize_to_even(&HyperellipticCurve::new(2, f).unwrap()).unwrap();
            prop_assert_eq!(ef.shift, rat(0, 1));
            prop_assert_eq!(ef.b0, p2[0].clone());
            prop_assert_eq!(ef.c, p2[1..].to_vec());
        }
    }
}
