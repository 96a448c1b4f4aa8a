//! Inverting `phi`: the roots of `f_alpha(x) = x^3 - alpha x^2 + conj(alpha) x - 1`.
//!
//! Any two distinct roots `x, y` of `f_alpha` satisfy `phi(x, y) = alpha`, and
//! for `alpha` in the region all three roots are unimodular.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::PhaseValue;
use crate::region::{discriminant, in_region, AlphaPoint};

/// Root separation below which two roots are treated as a double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-6;

/// The three roots of `f_alpha`, ordered by ascending principal argument in
/// `(-pi, pi]` with ties broken by descending real part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootTriple {
    pub roots: [Complex64; 3],
}

impl RootTriple {
    pub fn sum(&self) -> Complex64 {
        self.roots.iter().sum()
    }

    pub fn product(&self) -> Complex64 {
        self.roots.iter().product()
    }

    pub fn pairwise_sum(&self) -> Complex64 {
        let [a, b, c] = self.roots;
        a * b + b * c + c * a
    }

    /// `(r1 - r2)^2 (r2 - r3)^2 (r3 - r1)^2`, as a complex number.
    pub fn discriminant_product(&self) -> Complex64 {
        let [a, b, c] = self.roots;
        let v = (a - b) * (b - c) * (c - a);
        v * v
    }

    /// Indices `(i, j)` of a pair closer than [`DOUBLE_ROOT_TOL`], if any.
    pub fn double_root(&self) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), f64)> = None;
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let d = (self.roots[i] - self.roots[j]).norm();
            if d < DOUBLE_ROOT_TOL && best.is_none_or(|(_, bd)| d < bd) {
                best = Some(((i, j), d));
            }
        }
        best.map(|(p, _)| p)
    }
}

pub(crate) fn f_alpha(alpha: Complex64, x: Complex64) -> Complex64 {
    ((x - alpha) * x + alpha.conj()) * x - 1.0
}

fn f_alpha_prime(alpha: Complex64, x: Complex64) -> Complex64 {
    (x * 3.0 - alpha * 2.0) * x + alpha.conj()
}

/// Principal argument in `(-pi, pi]`.
pub(crate) fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

fn root_order(a: &Complex64, b: &Complex64) -> Ordering {
    principal_arg(*a)
        .total_cmp(&principal_arg(*b))
        .then_with(|| b.re.total_cmp(&a.re))
}

/// Cardano on the depressed cubic `t^3 + p t + q` with `x = t + alpha/3`.
fn cardano(alpha: Complex64) -> [Complex64; 3] {
    let shift = alpha / 3.0;
    let p = alpha.conj() - alpha * alpha / 3.0;
    // 2a^3/27 - ab/3 + c with a = -alpha, b = conj(alpha), c = -1
    let q = -alpha * alpha * alpha * (2.0 / 27.0) + alpha * alpha.conj() / 3.0 - 1.0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    // pick the sign that avoids cancellation
    let w1 = -q / 2.0 + disc;
    let w2 = -q / 2.0 - disc;
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    if w.norm() == 0.0 {
        // p = q = 0: triple root at the shift
        return [shift; 3];
    }
    let c = w.cbrt();
    let mut out = [Complex64::new(0.0, 0.0); 3];
    let mut ck = c;
    for slot in &mut out {
        *slot = ck - p / (ck * 3.0) + shift;
        ck *= omega;
    }
    out
}

fn newton_polish(alpha: Complex64, mut x: Complex64) -> Complex64 {
    for _ in 0..2 {
        let d = f_alpha_prime(alpha, x);
        if d.norm() < 1e-300 {
            break;
        }
        let step = f_alpha(alpha, x) / d;
        let next = x - step;
        // accept only improving steps; near a double root Newton can wander
        if f_alpha(alpha, next).norm() <= f_alpha(alpha, x).norm() {
            x = next;
        } else {
            break;
        }
    }
    x
}

/// Roots of `f_alpha`, polished with Newton and, inside the region, projected
/// onto the unit circle.
pub fn solve_falpha(alpha: AlphaPoint) -> RootTriple {
    let a = alpha.value();
    let mut roots = cardano(a).map(|r| newton_polish(a, r));
    if in_region(alpha) {
        for r in &mut roots {
            let n = r.norm();
            if n > 0.0 {
                *r /= n;
            }
        }
    }
    roots.sort_by(root_order);
    RootTriple { roots }
}

/// Double root `r` of `f_alpha` refined as the nearby root of `f_alpha'`,
/// where it is simple, and projected to the unit circle.
pub(crate) fn refine_double_root(alpha: Complex64, guess: Complex64) -> Complex64 {
    let mut x = guess;
    for _ in 0..8 {
        let d2 = x * 6.0 - alpha * 2.0;
        if d2.norm() < 1e-300 {
            break;
        }
        let step = f_alpha_prime(alpha, x) / d2;
        x -= step;
        if step.norm() < 1e-17 {
            break;
        }
    }
    let n = x.norm();
    if (x - guess).norm() > DOUBLE_ROOT_TOL || n == 0.0 {
        // refinement ran off; keep the cluster average
        return guess / guess.norm();
    }
    x / n
}

/// The pair `(r, 1/r^2)` at a double root, else `None`.
pub(crate) fn boundary_pair(
    alpha: AlphaPoint,
    roots: &RootTriple,
) -> Option<(Complex64, Complex64)> {
    let (i, j) = roots.double_root()?;
    let guess = (roots.roots[i] + roots.roots[j]) * 0.5;
    let r = refine_double_root(alpha.value(), guess);
    Some((r, (r * r).inv()))
}

/// All six ordered pairs of distinct root indices, in lexicographic order.
pub const ORDERED_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

/// Every `(x, y)` with `phi(x, y) = alpha`, drawn from distinct root indices.
pub fn invert_phi(alpha: AlphaPoint) -> Result<[(PhaseValue, PhaseValue); 6]> {
    if !in_region(alpha) {
        return Err(outside_region(alpha));
    }
    let roots = solve_falpha(alpha);
    let phase = |z: Complex64| PhaseValue::project(z).expect("unimodular root");
    Ok(ORDERED_PAIRS.map(|(i, j)| (phase(roots.roots[i]), phase(roots.roots[j]))))
}

pub(crate) fn outside_region(alpha: AlphaPoint) -> Error {
    let d_plus = discriminant(alpha);
    let d_minus = discriminant(alpha.negated());
    let mut parts = Vec::new();
    if d_plus > crate::region::REGION_EPS {
        parts.push(format!("D[a]={d_plus:?}"));
    }
    if d_minus > crate::region::REGION_EPS {
        parts.push(format!("D[-a]={d_minus:?}"));
    }
    Error::OutsideRegion(parts.join(", "))
}
