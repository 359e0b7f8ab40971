//! Coefficient domains.
//!
//! Everything above this module is written against [`Scalar`], a field
//! abstraction built on `num-traits`. Three families implement it:
//!
//! * [`Rational`](crate::Rational) — exact, the domain of every curve the
//!   toolkit accepts from the outside world;
//! * [`Fp`] — integers modulo an odd prime `P`, used where an exact root of
//!   unity is needed (the cyclic part of the dihedral action);
//! * `f32`, `f64` and `Complex<f32|f64>` — approximate domains used by the
//!   numeric involution search and by floating-point oracles.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A field element usable as a polynomial coefficient.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    /// `true` when `==` is exact equality of field elements.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// Equality up to `tol`. Exact domains ignore `tol`; floating domains use
    /// `|x - y| <= tol * max(1, |x|, |y|)`.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let _ = tol;
        self == other
    }
}

/// Integer power by repeated squaring.
pub fn pow<S: Scalar>(base: &S, exp: usize) -> S {
    num_traits::pow::pow(base.clone(), exp)
}

/// `true` iff `root` has multiplicative order exactly `n`.
///
/// For floating domains the comparisons are made with `tol`.
pub fn has_exact_order<S: Scalar>(root: &S, n: usize, tol: f64) -> bool {
    if n == 0 || !pow(root, n).approx_eq(&S::one(), tol) {
        return false;
    }
    prime_factors(n)
        .into_iter()
        .all(|q| !pow(root, n / q).approx_eq(&S::one(), tol))
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn approx_eq(&self, other: &Self, tol: f64) -> bool {
                let scale = 1f64.max(self.abs() as f64).max(other.abs() as f64);
                ((self - other).abs() as f64) <= tol * scale
            }
        }

        impl Scalar for Complex<$t> {
            const EXACT: bool = false;

            fn from_i64(n: i64) -> Self {
                Complex::new(n as $t, 0.0)
            }

            fn approx_eq(&self, other: &Self, tol: f64) -> bool {
                let scale = 1f64.max(self.norm() as f64).max(other.norm() as f64);
                ((self - other).norm() as f64) <= tol * scale
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

const fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of the prime field `F_P`. `P` must be an odd prime below 2^62;
/// this is checked at compile time on first construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const MODULUS_OK: () = assert!(
        P < (1 << 62) && is_odd_prime(P),
        "modulus must be an odd prime"
    );

    pub fn new(value: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::MODULUS_OK;
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub const fn modulus() -> u64 {
        P
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    /// A primitive `n`-th root of unity, if `n` divides `P - 1`.
    pub fn primitive_root_of_unity(n: u64) -> Option<Self> {
        if n == 0 || (P - 1) % n != 0 {
            return None;
        }
        let factors = prime_factors(n as usize);
        (2..P)
            .map(|h| Fp::<P>::new(h as i64).pow((P - 1) / n))
            .find(|w| w.pow(n) == Fp(1) && factors.iter().all(|&q| w.pow(n / q as u64) != Fp(1)))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
}
