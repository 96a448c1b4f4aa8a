//! The parameter domain of the family.
//!
//! `phi(x, y) = x + y + 1/(xy)` maps the torus onto the closed region bounded
//! by a three-cusped deltoid. The family is parameterized by the intersection
//! of that region with its mirror image under `alpha -> -alpha`, which is
//! exactly where both `D[alpha]` and `D[-alpha]` are non-positive.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{cis, PhaseValue};

/// Slack allowed in [`in_region`], so that exact boundary points count as inside.
pub const REGION_EPS: f64 = 1e-12;

/// Half-width of the band around zero treated as "on the boundary" by [`classify`].
pub const BOUNDARY_BAND: f64 = 1e-9;

/// A value of the family parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaPoint(Complex64);

impl AlphaPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite(0));
        }
        Ok(AlphaPoint(value))
    }

    /// Panics on non-finite input; intended for literals.
    pub fn from_parts(re: f64, im: f64) -> Self {
        Self::new(Complex64::new(re, im)).expect("finite alpha")
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn negated(self) -> Self {
        AlphaPoint(-self.0)
    }

    pub fn conj(self) -> Self {
        AlphaPoint(self.0.conj())
    }
}

impl From<AlphaPoint> for Complex64 {
    fn from(a: AlphaPoint) -> Self {
        a.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionClass {
    Interior,
    /// `D[alpha] = 0`, `D[-alpha] < 0`.
    BoundaryPlus,
    /// `D[-alpha] = 0`, `D[alpha] < 0`.
    BoundaryMinus,
    /// Both discriminants vanish: the six maximal extremal points.
    CuspBoth,
    Outside,
}

impl RegionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionClass::Interior => "interior",
            RegionClass::BoundaryPlus => "boundary_plus",
            RegionClass::BoundaryMinus => "boundary_minus",
            RegionClass::CuspBoth => "cusp_both",
            RegionClass::Outside => "outside",
        }
    }

    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            RegionClass::BoundaryPlus | RegionClass::BoundaryMinus | RegionClass::CuspBoth
        )
    }
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn phi(x: PhaseValue, y: PhaseValue) -> Complex64 {
    phi_raw(x.value(), y.value())
}

#[inline]
pub(crate) fn phi_raw(x: Complex64, y: Complex64) -> Complex64 {
    x + y + (x * y).inv()
}

/// Discriminant of `x^3 - alpha x^2 + conj(alpha) x - 1`, in closed form:
/// `|alpha|^4 + 18|alpha|^2 - 8 Re[alpha^3] - 27`.
pub fn discriminant(alpha: AlphaPoint) -> f64 {
    let a = alpha.value();
    let r2 = a.norm_sqr();
    // Re[a^3] = re^3 - 3 re im^2, evaluated without forming the cube
    let re3 = a.re * (a.re * a.re - 3.0 * a.im * a.im);
    r2 * r2 + 18.0 * r2 - 8.0 * re3 - 27.0
}

pub fn in_region(alpha: AlphaPoint) -> bool {
    discriminant(alpha) <= REGION_EPS && discriminant(alpha.negated()) <= REGION_EPS
}

pub fn classify(alpha: AlphaPoint) -> RegionClass {
    classify_values(discriminant(alpha), discriminant(alpha.negated()))
}

fn classify_values(d_plus: f64, d_minus: f64) -> RegionClass {
    let on = |d: f64| d.abs() <= BOUNDARY_BAND;
    let below = |d: f64| d < -BOUNDARY_BAND;
    match (on(d_plus), on(d_minus)) {
        (true, true) => RegionClass::CuspBoth,
        (true, false) if below(d_minus) => RegionClass::BoundaryPlus,
        (false, true) if below(d_plus) => RegionClass::BoundaryMinus,
        _ if below(d_plus) && below(d_minus) => RegionClass::Interior,
        _ => RegionClass::Outside,
    }
}

/// `|alpha_max| = sqrt(6 sqrt 3 - 9)`, the largest modulus reached in the region.
pub fn max_extremal_radius() -> f64 {
    (6.0 * 3f64.sqrt() - 9.0).sqrt()
}

/// The six points farthest from the origin and the six closest to it on the
/// region's boundary, indexed `k = 1..=6`.
pub fn extremal_points() -> ([AlphaPoint; 6], [AlphaPoint; 6]) {
    let r = max_extremal_radius();
    let maximal = std::array::from_fn(|i| {
        let k = (i + 1) as f64;
        AlphaPoint(cis(PI / 6.0 + k * PI / 3.0) * r)
    });
    let minimal = std::array::from_fn(|i| {
        let k = i + 1;
        // k = 6 is exactly 1
        if k == 6 {
            AlphaPoint(Complex64::new(1.0, 0.0))
        } else {
            AlphaPoint(cis(k as f64 * PI / 3.0))
        }
    });
    (maximal, minimal)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionSample {
    pub alpha: AlphaPoint,
    pub class: RegionClass,
    pub d_plus: f64,
    pub d_minus: f64,
}

/// Classify a regular `nx × ny` grid over `[xmin, xmax] × [ymin, ymax]`,
/// row-major with `y` as the outer index.
pub fn sample_region(
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    nx: usize,
    ny: usize,
) -> Result<Vec<RegionSample>> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidGrid(format!(
            "grid must be at least 2x2, got {nx}x{ny}"
        )));
    }
    let finite = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite());
    if !finite || xmin >= xmax || ymin >= ymax {
        return Err(Error::InvalidGrid(format!(
            "bounds must be finite and ordered, got [{xmin}, {xmax}] x [{ymin}, {ymax}]"
        )));
    }
    let coord = |lo: f64, hi: f64, k: usize, n: usize| {
        if k == n - 1 {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = coord(ymin, ymax, j, ny);
        for i in 0..nx {
            let x = coord(xmin, xmax, i, nx);
            let alpha = AlphaPoint(Complex64::new(x, y));
            let d_plus = discriminant(alpha);
            let d_minus = discriminant(alpha.negated());
            out.push(RegionSample {
                alpha,
                class: classify_values(d_plus, d_minus),
                d_plus,
                d_minus,
            });
        }
    }
    Ok(out)
}

pub const REGION_CSV_HEADER: &str = "re,im,class,d_plus,d_minus";

pub fn write_region_csv<W: Write>(mut w: W, samples: &[RegionSample]) -> std::io::Result<()> {
    writeln!(w, "{REGION_CSV_HEADER}")?;
    for s in samples {
        let a = s.alpha.value();
        writeln!(
            w,
            "{:.16e},{:.16e},{},{:.16e},{:.16e}",
            a.re, a.im, s.class, s.d_plus, s.d_minus
        )?;
    }
    Ok(())
}

/// Walk the ray `t * e^{i theta}` outward from the origin and bisect for the
/// point where it leaves the region.
pub fn boundary_on_ray(theta: f64) -> AlphaPoint {
    let dir = cis(theta);
    let worst = |t: f64| {
        let a = AlphaPoint(dir * t);
        discriminant(a).max(discriminant(a.negated()))
    };
    let (mut lo, mut hi) = (0.0f64, 3.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if worst(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    AlphaPoint(dir * lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(re: f64, im: f64) -> AlphaPoint {
        AlphaPoint::from_parts(re, im)
    }

    #[test]
    fn phi_examples() {
        let one = PhaseValue::ONE;
        assert_eq!(phi(one, one), Complex64::new(3.0, 0.0));
        let w = PhaseValue::from_angle(2.0 * PI / 3.0);
        assert!(phi(one, w).norm() < 1e-15);
        // diagonal traces 2x + 1/x^2
        for k in 0..12 {
            let x = PhaseValue::from_angle(0.5 * k as f64);
            let expect = x.value() * 2.0 + (x.value() * x.value()).inv();
            assert!((phi(x, x) - expect).norm() < 1e-15);
            assert!(discriminant(AlphaPoint(phi(x, x))).abs() < 1e-9);
        }
    }

    #[test]
    fn discriminant_values() {
        assert_eq!(discriminant(a(0.0, 0.0)), -27.0);
        assert_eq!(discriminant(a(-1.0, 0.0)), 0.0);
        assert_eq!(discriminant(a(1.0, 0.0)), -16.0);
        assert_eq!(discriminant(a(3.0, 0.0)), 0.0);
        assert_eq!(discriminant(a(-3.0, 0.0)), 432.0);
        assert!((discriminant(a(0.0, 0.5)) + 22.4375).abs() < 1e-14);
    }

    #[test]
    fn membership() {
        assert!(in_region(a(0.0, 0.0)));
        assert!(!in_region(a(3.0, 0.0)));
        assert!(in_region(a(1.0, 0.0)));
        assert!(in_region(a(-1.0, 0.0)));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(a(0.0, 0.5)), RegionClass::Interior);
        assert_eq!(classify(a(-1.0, 0.0)), RegionClass::BoundaryPlus);
        assert_eq!(classify(a(1.0, 0.0)), RegionClass::BoundaryMinus);
        assert_eq!(classify(a(3.0, 0.0)), RegionClass::Outside);
        assert_eq!(classify(a(2.0, 2.0)), RegionClass::Outside);
        let (maximal, _) = extremal_points();
        for p in maximal {
            assert_eq!(classify(p), RegionClass::CuspBoth, "{p:?}");
        }
    }

    #[test]
    fn extremal_point_moduli() {
        let (maximal, minimal) = extremal_points();
        for p in maximal {
            assert!((p.value().norm() - 1.179_959_679_570_986_f64).abs() < 1e-12);
            assert!((p.value().norm() - max_extremal_radius()).abs() < 1e-15);
        }
        for p in minimal {
            assert!((p.value().norm() - 1.0).abs() < 1e-15);
            assert!(classify(p).is_boundary());
        }
        assert_eq!(minimal[5].value(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn grid_sampling() {
        let g = sample_region(-2.0, 2.0, -2.0, 2.0, 41, 41).unwrap();
        assert_eq!(g.len(), 41 * 41);
        let center = g[20 * 41 + 20];
        assert_eq!(center.alpha.value(), Complex64::new(0.0, 0.0));
        assert_eq!(center.class, RegionClass::Interior);
        // row-major, y outer
        assert_eq!(g[1].alpha.value(), Complex64::new(-1.9, -2.0));
        assert_eq!(g[41].alpha.value(), Complex64::new(-2.0, -1.9));

        let g = sample_region(0.9, 1.1, -0.1, 0.1, 3, 3).unwrap();
        assert!((g[4].alpha.value() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(g[4].class, RegionClass::BoundaryMinus);

        assert_eq!(sample_region(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap().len(), 4);
        assert!(sample_region(0.0, 1.0, 0.0, 1.0, 1, 2).is_err());
        assert!(sample_region(1.0, 0.0, 0.0, 1.0, 2, 2).is_err());
    }

    #[test]
    fn csv_layout() {
        let g = sample_region(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let mut buf = Vec::new();
        write_region_csv(&mut buf, &g).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], REGION_CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1].contains(",interior,"));
        assert_eq!(lines[1].split(',').count(), 5);
    }

    #[test]
    fn ray_bisection_lands_on_boundary() {
        for k in 0..24 {
            let p = boundary_on_ray(0.1 + k as f64 * 0.26);
            assert!(classify(p).is_boundary(), "{p:?} -> {:?}", classify(p));
            assert!(in_region(p));
        }
    }

    proptest! {
        #[test]
        fn phi_range_is_inside_deltoid(s in 0.0..std::f64::consts::TAU, t in 0.0..std::f64::consts::TAU) {
            let v = phi(PhaseValue::from_angle(s), PhaseValue::from_angle(t));
            prop_assert!(v.norm() <= 3.0 + 1e-12);
            prop_assert!(discriminant(AlphaPoint(v)) <= 1e-9);
        }

        #[test]
        fn symmetries(re in -3.0f64..3.0, im in -3.0f64..3.0) {
            let p = a(re, im);
            prop_assert_eq!(discriminant(p), discriminant(p.conj()));
            prop_assert_eq!(in_region(p), in_region(p.negated()));
            prop_assert_eq!(in_region(p), in_region(p.conj()));
        }

        #[test]
        fn region_fits_in_disk(re in -1.5f64..1.5, im in -1.5f64..1.5) {
            let p = a(re, im);
            if in_region(p) {
                prop_assert!(p.value().norm() <= max_extremal_radius() + 1e-9);
            }
        }
    }
}
