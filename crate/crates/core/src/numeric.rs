//! Floating-point search for involutions of the branch set.
//!
//! Results here are approximations and are always labeled as such by
//! callers. A Möbius involution is written `x -> (a x + b) / (c x - a)`
//! (trace zero); a pair `x <-> y` it swaps satisfies the linear condition
//! `c x y - a (x + y) - b = 0`, so two such pairs pin it down.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::invariants::{invariants_from_even_coeffs, DihedralInvariants};
use crate::involution::HyperellipticCurve;
use crate::{rational_to_f64, Complex64, ComplexPoly, RatPoly};

pub use crate::invariants::DEFAULT_TOL;

const MAX_ITER: usize = 500;

#[derive(Clone, Debug, PartialEq)]
pub struct MobiusInvolution {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    /// Largest distance between an image root and its matched root.
    pub residual: f64,
    /// A fixed point of the map is a branch point (the lift has order 4).
    pub fixes_branch_points: bool,
}

impl MobiusInvolution {
    /// Image of `x`; `None` means infinity.
    pub fn apply(&self, x: Complex64) -> Option<Complex64> {
        let den = self.c * x - self.a;
        if den.norm() <= 1e-300 {
            None
        } else {
            Some((self.a * x + self.b) / den)
        }
    }

    /// Finite fixed points; a single point when infinity is also fixed.
    pub fn fixed_points(&self) -> Vec<Complex64> {
        if self.c.norm() <= 1e-12 * self.scale() {
            vec![-self.b / (self.a * 2.0)]
        } else {
            let disc = (self.a * self.a + self.b * self.c).sqrt();
            vec![(self.a + disc) / self.c, (self.a - disc) / self.c]
        }
    }

    fn scale(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm())
    }

    /// Scales so the first non-negligible of `(a, b, c)` is 1 and flushes
    /// negligible entries to zero.
    fn normalized(mut self) -> Self {
        let scale = self.scale();
        for z in [&mut self.a, &mut self.b, &mut self.c] {
            if z.norm() <= 1e-12 * scale {
                *z = Complex64::zero();
            }
        }
        let pivot = [self.a, self.b, self.c]
            .into_iter()
            .find(|z| z.norm() > 1e-8 * scale)
            .expect("nonzero involution");
        self.a /= pivot;
        self.b /= pivot;
        self.c /= pivot;
        self
    }

    fn approx_same(&self, other: &Self, tol: f64) -> bool {
        (self.a - other.a).norm() <= tol
            && (self.b - other.b).norm() <= tol
            && (self.c - other.c).norm() <= tol
    }

    fn sort_key(&self) -> [f64; 6] {
        [
            self.a.re, self.a.im, self.b.re, self.b.im, self.c.re, self.c.im,
        ]
    }
}

/// All complex roots with multiplicity, by Aberth–Ehrlich iteration.
pub fn polynomial_roots(p: &ComplexPoly) -> Result<Vec<Complex64>> {
    let n = match p.degree() {
        None => return Err(Error::NumericFailure("zero polynomial".into())),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let monic = p.monic();
    let coeffs = monic.coeffs();
    if coeffs
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::NumericFailure("non-finite coefficient".into()));
    }
    let dp = monic.derivative();
    // Cauchy bound on root moduli
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let start = radius.min(1e6) * 0.5;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(start, std::f64::consts::TAU * (k as f64 + 0.4) / n as f64))
        .collect();
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pv = monic.eval(&z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dp.eval(&z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            return Ok(polish(&monic, &dp, z));
        }
    }
    // Accept if residuals are small even without step convergence.
    let z = polish(&monic, &dp, z);
    let ok = z.iter().all(|r| {
        let scale: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * r.norm().powi(k as i32))
            .sum();
        monic.eval(r).norm() <= 1e-8 * scale
    });
    if ok {
        Ok(z)
    } else {
        Err(Error::NumericFailure(format!(
            "root iteration did not converge in {MAX_ITER} steps"
        )))
    }
}

fn polish(p: &ComplexPoly, dp: &ComplexPoly, mut z: Vec<Complex64>) -> Vec<Complex64> {
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = dp.eval(r);
            if d.norm() == 0.0 {
                break;
            }
            let step = p.eval(r) / d;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            *r -= step;
        }
    }
    z
}

pub fn to_complex_poly(f: &RatPoly) -> ComplexPoly {
    f.map(|q| Complex64::new(rational_to_f64(q), 0.0))
}

/// Involution through two swapped (or fixed) pairs, if nondegenerate.
fn involution_through(
    p: (Complex64, Complex64),
    q: (Complex64, Complex64),
) -> Option<MobiusInvolution> {
    // row . (a, b, c) = 0 with row = (-(x + y), -1, x y)
    let r1 = [-(p.0 + p.1), Complex64::new(-1.0, 0.0), p.0 * p.1];
    let r2 = [-(q.0 + q.1), Complex64::new(-1.0, 0.0), q.0 * q.1];
    let a = r1[1] * r2[2] - r1[2] * r2[1];
    let b = r1[2] * r2[0] - r1[0] * r2[2];
    let c = r1[0] * r2[1] - r1[1] * r2[0];
    let scale = a.norm().max(b.norm()).max(c.norm());
    if !(scale.is_finite() && scale > 0.0) {
        return None;
    }
    let det = -(a * a) - b * c;
    if det.norm() <= 1e-10 * scale * scale {
        return None;
    }
    Some(MobiusInvolution {
        a,
        b,
        c,
        residual: 0.0,
        fixes_branch_points: false,
    })
}

/// Greedy nearest-neighbour check that `inv` permutes `roots`; returns the
/// largest mismatch or `None` if any image misses by more than `tol`.
fn permutation_residual(inv: &MobiusInvolution, roots: &[Complex64], tol: f64) -> Option<f64> {
    let mut used = vec![false; roots.len()];
    let mut worst: f64 = 0.0;
    for &r in roots {
        let y = inv.apply(r)?;
        if !(y.re.is_finite() && y.im.is_finite()) {
            return None;
        }
        let (j, dist) = roots
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, s)| (j, (s - y).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        if dist > tol * y.norm().max(1.0) {
            return None;
        }
        used[j] = true;
        worst = worst.max(dist / y.norm().max(1.0));
    }
    Some(worst)
}

/// Möbius involutions of the line that permute the branch points of `curve`.
///
/// Odd-degree curves are searched through their degree-`2g+2` model
/// ([`HyperellipticCurve::even_degree_model`]), so reported maps are in that
/// model's coordinate. The result is sorted canonically and deduplicated.
pub fn search_involutions_numeric(
    curve: &HyperellipticCurve,
    tol: f64,
) -> Result<Vec<MobiusInvolution>> {
    let (model, _) = curve.even_degree_model();
    search_involutions_of_poly(&model, tol)
}

pub fn search_involutions_of_poly(f: &RatPoly, tol: f64) -> Result<Vec<MobiusInvolution>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let roots = polynomial_roots(&to_complex_poly(f))?;
    let n = roots.len();
    if n < 3 {
        return Err(Error::InvalidInput(
            "need at least three branch points".into(),
        ));
    }
    let mut found: Vec<MobiusInvolution> = Vec::new();
    for j in 0..n {
        let m = (1..n).find(|&m| m != j).expect("n >= 3");
        for k in 0..n {
            if k == 0 || k == j {
                continue;
            }
            let Some(inv) = involution_through((roots[0], roots[j]), (roots[m], roots[k])) else {
                continue;
            };
            let Some(residual) = permutation_residual(&inv, &roots, tol) else {
                continue;
            };
            let mut inv = MobiusInvolution { residual, ..inv }.normalized();
            inv.fixes_branch_points = inv.fixed_points().iter().any(|fp| {
                roots
                    .iter()
                    .any(|r| (r - fp).norm() <= tol.sqrt() * r.norm().max(1.0))
            });
            match found.iter_mut().find(|g| g.approx_same(&inv, 1e-6)) {
                Some(g) => g.residual = g.residual.min(inv.residual),
                None => found.push(inv),
            }
        }
    }
    found.sort_by(|x, y| {
        x.sort_key()
            .iter()
            .zip(y.sort_key().iter())
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    });
    Ok(found)
}

/// Dihedral invariants of the pair (curve, `inv`), computed in floating point.
///
/// The coordinate is moved so that `inv` becomes `X -> -X`; the resulting
/// polynomial is even up to rounding and is fed to the same root-free formula
/// as the exact path. Returns `None` when `inv` fixes a branch point or the
/// invariants vanish identically.
pub fn involution_invariants(
    f: &RatPoly,
    inv: &MobiusInvolution,
) -> Result<Option<DihedralInvariants<Complex64>>> {
    let f = to_complex_poly(f);
    let d = f.degree().unwrap_or(0);
    if d < 6 || d % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "expected even degree >= 6, got {d}"
        )));
    }
    let g = d / 2 - 1;
    let fixed = inv.fixed_points();
    let moved = if fixed.len() == 1 {
        f.taylor_shift(&fixed[0])
    } else {
        // x = (q X - p) / (X - 1) sends 0 -> p and infinity -> q
        let (p, q) = (fixed[0], fixed[1]);
        let num = ComplexPoly::new(vec![-p, q]);
        let den = ComplexPoly::new(vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)]);
        let mut acc = ComplexPoly::zero();
        let mut num_pow = ComplexPoly::one();
        for (k, ck) in f.coeffs().iter().enumerate() {
            let mut term = num_pow.scale(ck);
            for _ in 0..(d - k) {
                term = &term * &den;
            }
            acc = &acc + &term;
            num_pow = &num_pow * &num;
        }
        acc
    };
    let coeffs = moved.coeffs();
    let size = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = moved.coeff(d);
    let b0 = moved.coeff(0);
    if lead.norm() <= 1e-10 * size || b0.norm() <= 1e-10 * size {
        return Ok(None);
    }
    let odd = coeffs
        .iter()
        .skip(1)
        .step_by(2)
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    if odd > 1e-6 * size {
        return Err(Error::NumericFailure(format!(
            "conjugated polynomial is not even (odd part {odd:e} of {size:e})"
        )));
    }
    let c: Vec<Complex64> = (1..=g).map(|i| moved.coeff(2 * i) / lead).collect();
    if c[0].norm() <= 1e-12 && c[g - 1].norm() <= 1e-12 {
        return Ok(None);
    }
    Ok(Some(invariants_from_even_coeffs(&(b0 / lead), &c)?))
}
