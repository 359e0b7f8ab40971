//! Dense univariate polynomials over a [`Scalar`] field.
//!
//! Coefficients are stored low degree first and trailing zeros are always
//! trimmed, so the zero polynomial is the empty coefficient vector and the
//! leading coefficient of anything else is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{pow, Scalar};
use crate::Rational;

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Self::monomial(S::one(), 1)
    }

    pub fn monomial(c: S, degree: usize) -> Self {
        let mut coeffs = vec![S::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = S::one() / self.leading();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    /// True when every odd-degree coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Euclidean division. Fails on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = S::one() / divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() * lead_inv.clone();
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `G(H(X))` by Horner's rule in the polynomial ring.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// `p(X + c)` via repeated synthetic division, `O(deg^2)` field operations.
    pub fn taylor_shift(&self, c: &S) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        if c.is_zero() || n < 2 {
            return self.clone();
        }
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                a[j] = a[j].clone() + c.clone() * a[j + 1].clone();
            }
        }
        Self::new(a)
    }

    /// `X^n p(1/X)`: the coefficient window `[0, n]` reversed.
    pub fn reverse(&self, n: usize) -> Result<Self> {
        match self.degree() {
            None => Ok(Self::zero()),
            Some(d) if d > n => Err(Error::InvalidBound {
                bound: n,
                degree: d,
            }),
            Some(_) => {
                let mut c = self.coeffs.clone();
                c.resize(n + 1, S::zero());
                c.reverse();
                Ok(Self::new(c))
            }
        }
    }

    /// Resultant with the convention `res(p, q) = lc(p)^deg(q) * prod q(alpha)`
    /// over the roots `alpha` of `p`, so `res(X - a, X - b) = a - b`.
    ///
    /// Computed with the Euclidean remainder sequence over the field.
    pub fn resultant(&self, other: &Self) -> Result<S> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = S::one();
        loop {
            let m = a.degree().unwrap_or(0);
            let n = b.degree().unwrap_or(0);
            if n == 0 {
                return Ok(acc * pow(&b.leading(), m));
            }
            let r = a.rem(&b)?;
            let Some(k) = r.degree() else {
                return Ok(S::zero());
            };
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc = acc * pow(&b.leading(), m - k);
            a = b;
            b = r;
        }
    }

    /// `disc(p) = (-1)^(d(d-1)/2) res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> Result<S> {
        let d = self.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::InvalidDegree(format!(
                "discriminant needs degree >= 2, got {d}"
            )));
        }
        let r = self.resultant(&self.derivative())? / self.leading();
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
    }

    /// `gcd(p, p')` is constant. Constants are squarefree; zero is not.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

impl<'a, S: Scalar> Add<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Sub<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Mul<&'a Poly<S>> for &'a Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Poly<S> {
            type Output = Poly<S>;
            fn $m(self, rhs: Poly<S>) -> Poly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

impl Poly<Rational> {
    /// `p(X + c)` with the same result as [`Poly::taylor_shift`], computed on
    /// integers: with `c = r/q` and `D` the common denominator,
    /// `p(X + c) = h(qX + r) / (q^d D)` where `h(Y) = q^d D p(Y/q)` has
    /// integer coefficients. Only the final coefficients are reduced.
    pub fn taylor_shift_rational(&self, c: &Rational) -> Self {
        let n = self.coeffs.len();
        if c.is_zero() || n < 2 {
            return self.clone();
        }
        let d = n - 1;
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let (r, q) = (c.numer(), c.denom());
        let q_pows: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * q))
            .take(n)
            .collect();
        let mut h: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.numer() * (&den / a.denom()) * &q_pows[d - i])
            .collect();
        for i in 0..d {
            for j in (i..d).rev() {
                let t = &h[j + 1] * r;
                h[j] += t;
            }
        }
        let coeffs = h
            .into_iter()
            .enumerate()
            .map(|(k, b)| Rational::new(b, &q_pows[d - k] * &den))
            .collect();
        Self::new(coeffs)
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, RatPoly};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p(&[1, 0, 1]) + &p(&[0, 0, -1]), p(&[1]));
        assert_eq!(&RatPoly::zero() + &p(&[3, 4]), p(&[3, 4]));
        let half = RatPoly::new(vec![rat(1, 2), rat(1, 1)]);
        assert_eq!(&half + &half, p(&[1, 2]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            &p(&[1, 0, 1]) * &p(&[1, 0, 0, 0, 1]),
            p(&[1, 0, 1, 0, 1, 0, 1])
        );
        assert_eq!(&p(&[5, 0, 2]) * &RatPoly::one(), p(&[5, 0, 2]));
        assert_eq!(
            &p(&[1, 0, -1, 0, 1]) * &p(&[1, 0, -2, 0, 1]),
            p(&[1, 0, -3, 0, 4, 0, -3, 0, 1])
        );
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p(&[1, 3, 1]).compose(&p(&[0, 0, 1])), p(&[1, 0, 3, 0, 1]));
        assert_eq!(RatPoly::x().compose(&p(&[2, 7, 1])), p(&[2, 7, 1]));
        assert_eq!(p(&[9]).compose(&p(&[2, 7, 1])), p(&[9]));
    }

    #[test]
    fn taylor_shift_examples() {
        assert_eq!(
            p(&[29, -44, 27, -8, 1]).taylor_shift(&rat(2, 1)),
            p(&[1, 0, 3, 0, 1])
        );
        assert_eq!(p(&[3, 1, 4]).taylor_shift(&rat(0, 1)), p(&[3, 1, 4]));
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&rat(1, 1)), p(&[1, 2, 1]));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[5, 3, 0, 2]).reverse(3).unwrap(), p(&[2, 0, 3, 5]));
        assert_eq!(p(&[1, 2, 1]).reverse(2).unwrap(), p(&[1, 2, 1]));
        // X^6 + a X^4 + b X^2 + 1 -> X^6 + b X^4 + a X^2 + 1
        assert_eq!(
            p(&[1, 0, 7, 0, 4, 0, 1]).reverse(6).unwrap(),
            p(&[1, 0, 4, 0, 7, 0, 1])
        );
        assert_eq!(
            p(&[1, 2, 3]).reverse(1),
            Err(Error::InvalidBound {
                bound: 1,
                degree: 2
            })
        );
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p(&[-1, 0, 1]).resultant(&p(&[-1, 1])).unwrap(), rat(0, 1));
        // res(X - 3, X - 5) = 3 - 5
        assert_eq!(p(&[-3, 1]).resultant(&p(&[-5, 1])).unwrap(), rat(-2, 1));
        assert_eq!(p(&[1]).resultant(&p(&[1, 0, 1])), Ok(rat(1, 1)));
        assert_eq!(p(&[2]).resultant(&p(&[1, 0, 1])), Ok(rat(4, 1)));
        assert_eq!(
            RatPoly::zero().resultant(&p(&[1, 1])),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn discriminant_examples() {
        // X^2 + 3X + 1: 9 - 4
        assert_eq!(p(&[1, 3, 1]).discriminant().unwrap(), rat(5, 1));
        // (X-1)^2 (X+2)
        let rep = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        assert_eq!(rep.discriminant().unwrap(), rat(0, 1));
        // X^3 + pX + q with p = 2, q = -3: -4*8 - 27*9
        assert_eq!(p(&[-3, 2, 0, 1]).discriminant().unwrap(), rat(-32 - 243, 1));
        assert!(matches!(
            p(&[1, 1]).discriminant(),
            Err(Error::InvalidDegree(_))
        ));
    }

    #[test]
    fn squarefree_examples() {
        assert!(p(&[1, 0, 1, 0, 1, 0, 1]).is_squarefree());
        assert!(!(&p(&[-1, 0, 1]) * &p(&[-1, 0, 1])).is_squarefree());
        assert!(p(&[7]).is_squarefree());
    }

    #[test]
    fn display_rational() {
        assert_eq!(
            p(&[29, -44, 27, -8, 1]).to_string(),
            "X^4 - 8*X^3 + 27*X^2 - 44*X + 29"
        );
        assert_eq!(RatPoly::new(vec![rat(-1, 2)]).to_string(), "-1/2");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-9i64..=9, 1i64..=4), 0..=max_deg + 1)
            .prop_map(|v| RatPoly::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in small_poly(4), b in small_poly(4), c in small_poly(4)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn compose_associative(f in small_poly(3), g in small_poly(2), h in small_poly(2)) {
            prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        }

        #[test]
        fn shift_roundtrip(a in small_poly(7), n in -5i64..=5, d in 1i64..=3) {
            let c = rat(n, d);
            prop_assert_eq!(a.taylor_shift(&c).taylor_shift(&-c.clone()), a.clone());
            // agrees with composition by X + c
            prop_assert_eq!(a.taylor_shift(&c), a.compose(&RatPoly::new(vec![c.clone(), rat(1, 1)])));
            prop_assert_eq!(a.taylor_shift_rational(&c), a.taylor_shift(&c));
        }

        #[test]
        fn reverse_involutive(a in small_poly(6)) {
            prop_assume!(!a.coeff(0).is_zero());
            let n = a.degree().unwrap();
            prop_assert_eq!(a.reverse(n).unwrap().reverse(n).unwrap(), a);
        }

        #[test]
        fn discriminant_detects_repeated_roots(
            a in small_poly(3), b in small_poly(2), planted in any::<bool>()
        ) {
            prop_assume!(b.degree().unwrap_or(0) >= 1);
            let f = if planted { &(&a * &b) * &b } else { &a * &b };
            prop_assume!(f.degree().unwrap_or(0) >= 2);
            let disc = f.discriminant().unwrap();
            prop_assert_eq!(disc.is_zero(), !f.is_squarefree());
        }
    }
}
