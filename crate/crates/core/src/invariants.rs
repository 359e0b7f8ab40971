//! Normal forms, the dihedral action on them, and dihedral invariants.
//!
//! A normal form of genus `g` is the tuple `(a_1, ..., a_g)` of
//! `X^(2g+2) + a_g X^(2g) + ... + a_1 X^2 + 1`. The coordinate is fixed up to
//! `X -> eps X` (`eps` a primitive `(2g+2)`-th root of unity) and `X -> 1/X`,
//! which act on the tuple by `a_i -> eps^(2i) a_i` and by reversal. The
//! invariants
//!
//! ```text
//! u_i = a_1^(g-i+1) a_i + a_g^(g-i+1) a_(g+1-i),   1 <= i <= g
//! ```
//!
//! are unchanged by both.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::involution::EvenForm;
use crate::scalar::{has_exact_order, pow, Scalar};
use crate::{Poly, Rational};

/// Tolerance used for floating-point comparisons when none is given.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm<S> {
    a: Vec<S>,
}

impl<S: Scalar> NormalForm<S> {
    /// Requires `g >= 2`. Over exact domains the polynomial must also be
    /// squarefree; floating domains skip that check.
    pub fn new(a: Vec<S>) -> Result<Self> {
        let nf = Self::new_unchecked(a)?;
        if S::EXACT && !nf.poly().is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(nf)
    }

    /// Only the genus is checked.
    pub fn new_unchecked(a: Vec<S>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "normal form needs g >= 2 coefficients, got {}",
                a.len()
            )));
        }
        Ok(NormalForm { a })
    }

    pub fn genus(&self) -> usize {
        self.a.len()
    }

    /// `a[i - 1]` is `a_i`.
    pub fn coeffs(&self) -> &[S] {
        &self.a
    }

    pub fn poly(&self) -> Poly<S> {
        let g = self.genus();
        let mut c = vec![S::zero(); 2 * g + 3];
        c[0] = S::one();
        for (i, ai) in self.a.iter().enumerate() {
            c[2 * (i + 1)] = ai.clone();
        }
        c[2 * g + 2] = S::one();
        Poly::new(c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DihedralInvariants<S> {
    u: Vec<S>,
}

impl<S: Scalar> DihedralInvariants<S> {
    /// Rejects `g < 2` and the all-zero tuple.
    pub fn new(u: Vec<S>) -> Result<Self> {
        if u.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "invariant tuple needs g >= 2 entries, got {}",
                u.len()
            )));
        }
        if u.iter().all(Zero::is_zero) {
            return Err(Error::DegenerateLocus);
        }
        Ok(DihedralInvariants { u })
    }

    pub fn genus(&self) -> usize {
        self.u.len()
    }

    /// `values()[i - 1]` is `u_i`.
    pub fn values(&self) -> &[S] {
        &self.u
    }

    pub fn u(&self, i: usize) -> &S {
        &self.u[i - 1]
    }

    pub fn first(&self) -> &S {
        &self.u[0]
    }

    pub fn last(&self) -> &S {
        &self.u[self.u.len() - 1]
    }
}

/// The formula without the degeneracy check.
fn raw_invariants<S: Scalar>(a: &[S]) -> Vec<S> {
    let g = a.len();
    let (a1, ag) = (&a[0], &a[g - 1]);
    (1..=g)
        .map(|i| pow(a1, g - i + 1) * a[i - 1].clone() + pow(ag, g - i + 1) * a[g - i].clone())
        .collect()
}

pub fn dihedral_invariants<S: Scalar>(nf: &NormalForm<S>) -> Result<DihedralInvariants<S>> {
    let a = nf.coeffs();
    if a[0].is_zero() && a[a.len() - 1].is_zero() {
        return Err(Error::DegenerateLocus);
    }
    DihedralInvariants::new(raw_invariants(a))
}

/// `a_i -> eps^(2i) a_i`. `eps` must have order exactly `2g+2`; over floating
/// domains that is checked to [`DEFAULT_TOL`].
pub fn tau1<S: Scalar>(nf: &NormalForm<S>, eps: &S) -> Result<NormalForm<S>> {
    let g = nf.genus();
    if !has_exact_order(eps, 2 * g + 2, DEFAULT_TOL) {
        return Err(Error::InvalidRoot {
            expected: 2 * g + 2,
        });
    }
    let eps2 = eps.clone() * eps.clone();
    let mut scale = S::one();
    let a = nf
        .coeffs()
        .iter()
        .map(|ai| {
            scale = scale.clone() * eps2.clone();
            scale.clone() * ai.clone()
        })
        .collect();
    Ok(NormalForm { a })
}

/// `a_i -> a_(g+1-i)`.
pub fn tau2<S: Scalar>(nf: &NormalForm<S>) -> NormalForm<S> {
    NormalForm {
        a: nf.coeffs().iter().rev().cloned().collect(),
    }
}

/// Invariants of the monic even polynomial
/// `X^(2g+2) + c_g X^(2g) + ... + c_1 X^2 + b0` without extracting roots:
///
/// ```text
/// u_i = c_1^(g-i+1) c_i / b0^(g-i+1) + c_g^(g-i+1) c_(g+1-i) / b0
/// ```
///
/// which equals the invariants of the normal form reached by `X -> mu X`
/// with `mu^(2g+2) = b0`.
pub fn invariants_from_even_coeffs<S: Scalar>(b0: &S, c: &[S]) -> Result<DihedralInvariants<S>> {
    let g = c.len();
    if g < 2 {
        return Err(Error::InvalidInput(format!(
            "even form needs g >= 2, got {g}"
        )));
    }
    if b0.is_zero() {
        return Err(Error::NotNormalizable("b0 = 0".into()));
    }
    let (c1, cg) = (&c[0], &c[g - 1]);
    if c1.is_zero() && cg.is_zero() {
        return Err(Error::DegenerateLocus);
    }
    let b0_inv = S::one() / b0.clone();
    let u = (1..=g)
        .map(|i| {
            let k = g - i + 1;
            pow(c1, k) * c[i - 1].clone() * pow(&b0_inv, k)
                + pow(cg, k) * c[g - i].clone() * b0_inv.clone()
        })
        .collect();
    DihedralInvariants::new(u)
}

pub fn invariants_from_even(ef: &EvenForm) -> Result<DihedralInvariants<Rational>> {
    invariants_from_even_coeffs(&ef.b0, &ef.c)
}

/// `2^(g+1) a_g^(2g+2) - 2^(g+1) u_1 a_g^(g+1) + u_g^(g+1)`, which vanishes
/// identically.
pub fn relation_check<S: Scalar>(nf: &NormalForm<S>) -> S {
    let a = nf.coeffs();
    let g = a.len();
    let u = raw_invariants(a);
    let two_pow = pow(&S::from_i64(2), g + 1);
    let ag = &a[g - 1];
    let ag_g1 = pow(ag, g + 1);
    two_pow.clone() * ag_g1.clone() * ag_g1.clone() - two_pow * u[0].clone() * ag_g1
        + pow(&u[g - 1], g + 1)
}

/// Componentwise equality: exact over exact domains, [`DEFAULT_TOL`] otherwise.
pub fn invariants_equal<S: Scalar>(
    u: &DihedralInvariants<S>,
    v: &DihedralInvariants<S>,
) -> Result<bool> {
    invariants_equal_tol(u, v, DEFAULT_TOL)
}

pub fn invariants_equal_tol<S: Scalar>(
    u: &DihedralInvariants<S>,
    v: &DihedralInvariants<S>,
    tol: f64,
) -> Result<bool> {
    if u.genus() != v.genus() {
        return Err(Error::GenusMismatch {
            left: u.genus(),
            right: v.genus(),
        });
    }
    Ok(u.values()
        .iter()
        .zip(v.values())
        .all(|(x, y)| x.approx_eq(y, tol)))
}

impl DihedralInvariants<Rational> {
    pub fn to_complex(&self) -> DihedralInvariants<crate::Complex64> {
        DihedralInvariants {
            u: self
                .u
                .iter()
                .map(|q| crate::Complex64::new(crate::rational_to_f64(q), 0.0))
                .collect(),
        }
    }
}

impl<S: Scalar> NormalForm<S> {
    pub fn invariants(&self) -> Result<DihedralInvariants<S>> {
        dihedral_invariants(self)
    }
}
