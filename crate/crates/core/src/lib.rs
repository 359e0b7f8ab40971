//! Extra involutions and dihedral invariants of hyperelliptic curves.
//!
//! A genus-`g` hyperelliptic curve `y^2 = f(x)` with an extra involution can
//! be brought to the shape `y^2 = x^(2g+2) + a_g x^(2g) + ... + a_1 x^2 + 1`.
//! The coefficients `a_i` are only defined up to a dihedral group of order
//! `2g+2`; the dihedral invariants `u_1, ..., u_g` are polynomial invariants
//! of that action and classify pairs (curve, involution) up to isomorphism.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`poly`]: coefficient fields and dense polynomials;
//! * [`involution`]: detection of a rational extra involution by degree-2
//!   polynomial decomposition and normalization to an even polynomial;
//! * [`numeric`]: a floating-point Möbius search for involutions that are not
//!   visible over the field of definition;
//! * [`invariants`]: normal forms, the dihedral action and the invariants;
//! * [`classify`]: isomorphism decisions and Klein four-group detection;
//! * [`models`]: curves over the field of moduli built from invariants;
//! * [`cli`]: the JSON front end used by the `hyperell` binary.
//!
//! All algorithms are generic over [`Scalar`]; the aliases below fix the
//! domains used in practice.

pub mod classify;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod involution;
pub mod models;
pub mod numeric;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use invariants::{DihedralInvariants, NormalForm};
pub use involution::{DecompositionWitness, EvenForm, HyperellipticCurve};
pub use poly::Poly;
pub use scalar::{Fp, Scalar};

/// Exact rational numbers, the coefficient domain of every input curve.
pub type Rational = num_rational::BigRational;
pub type Complex64 = num_complex::Complex<f64>;

pub type RatPoly = Poly<Rational>;
pub type ComplexPoly = Poly<Complex64>;
pub type RealPoly = Poly<f64>;
pub type FpPoly<const P: u64> = Poly<Fp<P>>;

pub type RatNormalForm = NormalForm<Rational>;
pub type RatInvariants = DihedralInvariants<Rational>;
pub type ComplexInvariants = DihedralInvariants<Complex64>;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Lossy conversion used by the floating-point paths.
pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
