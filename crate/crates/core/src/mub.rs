//! Mutually unbiased triplets from 2-circulant seeds.
//!
//! A 2-circulant unitary `T` (four circulant `m × m` blocks) is block
//! diagonalized by `F_m`; each frequency `k` gives a 2×2 unitary `S_k`, which
//! factors as
//!
//! ```text
//! S = 1/2 [[u + v,       y (u - v)    ],
//!          [(u - v) / x, y (u + v) / x]]
//! ```
//!
//! with unimodular `u, v, x, y`. Collecting the factors into diagonals
//! `U, V, X, Y` gives two bases
//!
//! ```text
//! Z1 = 1/sqrt2 [[F, X F], [F, -X F]]    Z2 = 1/sqrt2 [[U F, U Y F], [V F, -V Y F]]
//! ```
//!
//! with `Z1^-1 Z2 = T`. If `T` is a rescaled Hadamard matrix then
//! `{I, Z1, Z2}` is a MUB triplet.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::catalog::two_circulant_defect;
use crate::error::{Error, Result};
use crate::family::{block_params_from_alpha, h_block};
use crate::linalg::{
    fourier_matrix, max_entry_dist, unitarity_residual, ComplexMatrix, PhaseValue,
};
use crate::region::AlphaPoint;

/// Branch threshold in [`decompose_2x2`]. The general branch stays accurate
/// for tiny off-diagonals, so this only catches exact zeros and underflow.
pub const BRANCH_TOL: f64 = 1e-12;

/// Accepted deviation from circulant blocks for a seed.
pub const CIRCULANT_TOL: f64 = 1e-9;

/// Off-diagonal mass tolerated after block diagonalization.
pub const LEAK_TOL: f64 = 1e-7;

/// Accepted `max |Z1^-1 Z2 - T|`.
pub const RECONSTRUCTION_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoByTwoFactors {
    pub u: PhaseValue,
    pub v: PhaseValue,
    pub x: PhaseValue,
    pub y: PhaseValue,
}

pub fn compose_2x2(f: &TwoByTwoFactors) -> ComplexMatrix {
    let (u, v, x, y) = (f.u.value(), f.v.value(), f.x.value(), f.y.value());
    let s = (u + v) * 0.5;
    let d = (u - v) * 0.5;
    ComplexMatrix::from_rows(&[[s, y * d], [d / x, y * s / x]]).expect("2x2")
}

fn unit(z: Complex64) -> Result<PhaseValue> {
    PhaseValue::project(z).map_err(|e| Error::Decomposition(e.to_string()))
}

/// Inverse of [`compose_2x2`] for a unitary `M = [[a, b], [c, d]]`.
///
/// Diagonal (`|b| <= tau`) and anti-diagonal (`|a| <= tau`) inputs are
/// handled directly. Otherwise `y/x = d/a` and `uv = det(M) a/d`, so `u, v`
/// are the roots of `z^2 - 2a z + uv`, i.e. `a ± sqrt(a^2 - uv)`; since
/// `a^2 - uv = abc/d` the square root is taken of that product directly.
/// `u` is the root with the larger principal argument. Then
/// `y = 2b/(u-v)` and `x = (u-v)/(2c)`.
pub fn decompose_2x2(m: &ComplexMatrix, tol: f64) -> Result<TwoByTwoFactors> {
    if m.shape() != (2, 2) {
        return Err(Error::ShapeMismatch {
            expected: (2, 2),
            actual: m.shape(),
        });
    }
    let res = unitarity_residual(m)?;
    if !(res <= tol) {
        return Err(Error::NotUnitary(res));
    }
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let one = Complex64::new(1.0, 0.0);

    if b.norm() <= BRANCH_TOL {
        let u = unit(a)?;
        return Ok(TwoByTwoFactors {
            u,
            v: u,
            x: unit(u.value() / d)?,
            y: PhaseValue::ONE,
        });
    }
    if a.norm() <= BRANCH_TOL {
        return Ok(TwoByTwoFactors {
            u: PhaseValue::ONE,
            v: unit(-one)?,
            x: unit(c.inv())?,
            y: unit(b)?,
        });
    }

    let disc = (a * b * c / d).sqrt();
    let (r1, r2) = (a + disc, a - disc);
    let (u, v, diff) = if crate::cubic::principal_arg(r1) >= crate::cubic::principal_arg(r2) {
        (r1, r2, disc * 2.0)
    } else {
        (r2, r1, -disc * 2.0)
    };
    if diff.norm() == 0.0 {
        return Err(Error::Decomposition(
            "u = v with nonzero off-diagonal".into(),
        ));
    }
    Ok(TwoByTwoFactors {
        u: unit(u)?,
        v: unit(v)?,
        x: unit(diff / (c * 2.0))?,
        y: unit(b * 2.0 / diff)?,
    })
}

/// Which conjugation of a circulant block by the Fourier matrix is diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `F C F^-1` is diagonal.
    Forward,
    /// `F^-1 C F` is diagonal.
    Inverse,
}

impl Orientation {
    fn conjugate(self, c: &ComplexMatrix) -> ComplexMatrix {
        let f = fourier_matrix(c.nrows());
        let fi = f.adjoint();
        match self {
            Orientation::Forward => &(&f * c) * &fi,
            Orientation::Inverse => &(&fi * c) * &f,
        }
    }

    /// The matrix `G` with `T = diag(G^-1, G^-1) S diag(G, G)`.
    fn basis(self, m: usize) -> ComplexMatrix {
        match self {
            Orientation::Forward => fourier_matrix(m),
            Orientation::Inverse => fourier_matrix(m).adjoint(),
        }
    }

    fn other(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Inverse,
            Orientation::Inverse => Orientation::Forward,
        }
    }
}

fn off_diagonal(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Fixed once per process by checking which orientation diagonalizes
/// `circ(1, 2, 3)`.
pub fn diagonalization_orientation() -> Orientation {
    static CELL: OnceLock<Orientation> = OnceLock::new();
    *CELL.get_or_init(|| {
        let probe = crate::linalg::circulant(&[1.0, 2.0, 3.0].map(|x| Complex64::new(x, 0.0)))
            .expect("nonempty");
        let fwd = off_diagonal(&Orientation::Forward.conjugate(&probe));
        let inv = off_diagonal(&Orientation::Inverse.conjugate(&probe));
        if fwd <= inv {
            Orientation::Forward
        } else {
            Orientation::Inverse
        }
    })
}

/// Diagonals of the Fourier-conjugated blocks of a 2-circulant matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagonal {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub c: Vec<Complex64>,
    pub d: Vec<Complex64>,
    pub orientation: Orientation,
}

impl BlockDiagonal {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `S_k = [[a_k, b_k], [c_k, d_k]]`.
    pub fn s(&self, k: usize) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[self.a[k], self.b[k]], [self.c[k], self.d[k]]]).expect("2x2")
    }
}

pub fn block_diagonal_form(t: &ComplexMatrix) -> Result<BlockDiagonal> {
    let defect = two_circulant_defect(t);
    if !(defect <= CIRCULANT_TOL) {
        return Err(Error::NotTwoCirculant(defect));
    }
    let m = t.nrows() / 2;
    let blocks = [(0, 0), (0, m), (m, 0), (m, m)].map(|(r, c)| t.block(r, c, m, m));

    let first = diagonalization_orientation();
    let mut best_leak = f64::INFINITY;
    for orientation in [first, first.other()] {
        let conj = blocks.each_ref().map(|b| orientation.conjugate(b));
        let leak = conj.iter().map(off_diagonal).fold(0.0, f64::max);
        if leak <= LEAK_TOL {
            let diag = |c: &ComplexMatrix| (0..m).map(|k| c[(k, k)]).collect::<Vec<_>>();
            return Ok(BlockDiagonal {
                a: diag(&conj[0]),
                b: diag(&conj[1]),
                c: diag(&conj[2]),
                d: diag(&conj[3]),
                orientation,
            });
        }
        best_leak = best_leak.min(leak);
    }
    Err(Error::DiagonalizationLeak(best_leak))
}

/// Maximum deviations found by [`verify_mub`].
#[derive(Clone, Debug, PartialEq)]
pub struct MubReport {
    /// Basis labels, `"I"` first when the standard basis is included.
    pub labels: Vec<String>,
    /// `max |B* B - I|` per basis.
    pub unitarity: Vec<f64>,
    /// `(i, j, max ||<e, f>| - 1/sqrt n|)` over columns `e` of basis `i`, `f` of basis `j`.
    pub pairs: Vec<(usize, usize, f64)>,
    pub tol: f64,
}

impl MubReport {
    pub fn max_deviation(&self) -> f64 {
        self.unitarity
            .iter()
            .copied()
            .chain(self.pairs.iter().map(|p| p.2))
            .fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.max_deviation() <= self.tol
    }
}

/// Check orthonormality of each basis (columns) and unbiasedness of every pair.
pub fn verify_mub(bases: &[ComplexMatrix], include_standard: bool, tol: f64) -> Result<MubReport> {
    let n = match (bases.first(), include_standard) {
        (Some(b), _) => b.nrows(),
        (None, _) => return Err(Error::EmptyInput("no bases given")),
    };
    for b in bases {
        if b.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                expected: (n, n),
                actual: b.shape(),
            });
        }
    }
    let mut all: Vec<ComplexMatrix> = Vec::new();
    let mut labels = Vec::new();
    if include_standard {
        all.push(ComplexMatrix::identity(n));
        labels.push("I".to_string());
    }
    for (k, b) in bases.iter().enumerate() {
        all.push(b.clone());
        labels.push(format!("Z{}", k + 1));
    }
    let target = 1.0 / (n as f64).sqrt();
    let unitarity = all
        .iter()
        .map(|b| max_entry_dist(&(&b.adjoint() * b), &ComplexMatrix::identity(n)))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let g = &all[i].adjoint() * &all[j];
            let dev = g
                .entries()
                .iter()
                .map(|z| (z.norm() - target).abs())
                .fold(0.0, f64::max);
            pairs.push((i, j, dev));
        }
    }
    Ok(MubReport {
        labels,
        unitarity,
        pairs,
        tol,
    })
}

/// Unbiased bases built from a seed, with the report for `{I, Z1, Z2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MubTriplet {
    pub z1: ComplexMatrix,
    pub z2: ComplexMatrix,
    pub factors: Vec<TwoByTwoFactors>,
    /// `max |Z1^-1 Z2 - T|`.
    pub reconstruction: f64,
    pub report: MubReport,
}

/// Tolerance used by [`zauner_bases`] for the MUB report.
pub const MUB_TOL: f64 = 1e-9;

pub fn zauner_bases(t: &ComplexMatrix) -> Result<MubTriplet> {
    zauner_bases_with_tol(t, MUB_TOL)
}

pub fn zauner_bases_with_tol(t: &ComplexMatrix, report_tol: f64) -> Result<MubTriplet> {
    let defect = two_circulant_defect(t);
    if !(defect <= CIRCULANT_TOL) {
        return Err(Error::NotTwoCirculant(defect));
    }
    let res = unitarity_residual(t)?;
    if !(res <= 1e-8) {
        return Err(Error::NotUnitary(res));
    }
    let bd = block_diagonal_form(t)?;
    let m = bd.order();
    let factors = (0..m)
        .map(|k| decompose_2x2(&bd.s(k), 1e-8))
        .collect::<Result<Vec<_>>>()?;

    let g = bd.orientation.basis(m);
    let diag = |pick: fn(&TwoByTwoFactors) -> PhaseValue| -> Vec<Complex64> {
        factors.iter().map(|f| pick(f).value()).collect()
    };
    let (uu, vv, xx, yy) = (diag(|f| f.u), diag(|f| f.v), diag(|f| f.x), diag(|f| f.y));
    let ones = vec![Complex64::new(1.0, 0.0); m];
    let s = std::f64::consts::FRAC_1_SQRT_2;

    let xg = g.scale_rows_cols(&xx, &ones);
    let z1 = ComplexMatrix::from_blocks(&g, &xg, &g, &xg.scale(-1.0))?.scale(s);
    let ug = g.scale_rows_cols(&uu, &ones);
    let vg = g.scale_rows_cols(&vv, &ones);
    let uyg = g.scale_rows_cols(
        &uu.iter().zip(&yy).map(|(a, b)| a * b).collect::<Vec<_>>(),
        &ones,
    );
    let vyg = g.scale_rows_cols(
        &vv.iter().zip(&yy).map(|(a, b)| -a * b).collect::<Vec<_>>(),
        &ones,
    );
    let z2 = ComplexMatrix::from_blocks(&ug, &uyg, &vg, &vyg)?.scale(s);

    let reconstruction = max_entry_dist(&(&z1.adjoint() * &z2), t)?;
    if !(reconstruction <= RECONSTRUCTION_TOL) {
        return Err(Error::Decomposition(format!(
            "Z1^-1 Z2 differs from the seed by {reconstruction:e}"
        )));
    }
    let report = verify_mub(&[z1.clone(), z2.clone()], true, report_tol)?;
    Ok(MubTriplet {
        z1,
        z2,
        factors,
        reconstruction,
        report,
    })
}

/// The seed `H / sqrt 6` for parameter `alpha`, in 2-circulant block form.
pub fn seed_from_alpha(alpha: AlphaPoint) -> Result<ComplexMatrix> {
    Ok(h_block(&block_params_from_alpha(alpha)?).scale(1.0 / 6f64.sqrt()))
}

pub fn mub_from_alpha(alpha: AlphaPoint) -> Result<MubTriplet> {
    zauner_bases(&seed_from_alpha(alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cis;
    use std::f64::consts::PI;

    fn ph(t: f64) -> PhaseValue {
        PhaseValue::from_angle(t)
    }

    fn factors(u: f64, v: f64, x: f64, y: f64) -> TwoByTwoFactors {
        TwoByTwoFactors {
            u: ph(u),
            v: ph(v),
            x: ph(x),
            y: ph(y),
        }
    }

    #[test]
    fn compose_examples() {
        let one = PhaseValue::ONE;
        let id = compose_2x2(&TwoByTwoFactors {
            u: one,
            v: one,
            x: one,
            y: one,
        });
        assert_eq!(id, ComplexMatrix::identity(2));

        let f2 = compose_2x2(&factors(PI / 4.0, -PI / 4.0, PI / 2.0, -PI / 2.0));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let want = ComplexMatrix::from_rows(&[
            [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
        ])
        .unwrap();
        assert!(max_entry_dist(&f2, &want).unwrap() < 1e-15);

        let swap = compose_2x2(&TwoByTwoFactors {
            u: one,
            v: ph(PI),
            x: one,
            y: one,
        });
        let want = ComplexMatrix::from_rows(&[
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(max_entry_dist(&swap, &want).unwrap() < 1e-15);
    }

    #[test]
    fn decompose_examples() {
        let f = decompose_2x2(&ComplexMatrix::identity(2), 1e-9).unwrap();
        assert_eq!(
            f,
            TwoByTwoFactors {
                u: PhaseValue::ONE,
                v: PhaseValue::ONE,
                x: PhaseValue::ONE,
                y: PhaseValue::ONE
            }
        );

        let f2 = fourier_matrix(2);
        let f = decompose_2x2(&f2, 1e-9).unwrap();
        assert!((f.u.value() - cis(PI / 4.0)).norm() < 1e-15);
        assert!((f.v.value() - cis(-PI / 4.0)).norm() < 1e-15);
        assert!((f.y.value() - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((f.x.value() - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let swap = ComplexMatrix::from_rows(&[
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        let f = decompose_2x2(&swap, 1e-9).unwrap();
        assert_eq!(f.u.value(), Complex64::new(1.0, 0.0));
        assert_eq!(f.v.value(), Complex64::new(-1.0, 0.0));
        assert_eq!(f.x.value(), Complex64::new(1.0, 0.0));
        assert_eq!(f.y.value(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn decompose_rejects_non_unitary() {
        let m = ComplexMatrix::from_rows(&[
            [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(decompose_2x2(&m, 1e-9), Err(Error::NotUnitary(_))));
        assert!(decompose_2x2(&ComplexMatrix::identity(3), 1e-9).is_err());
    }

    #[test]
    fn orientation_self_test() {
        // both orientations diagonalize circulants; the forward one is tried first
        assert_eq!(diagonalization_orientation(), Orientation::Forward);
    }

    #[test]
    fn identity_seed() {
        let bd = block_diagonal_form(&ComplexMatrix::identity(6)).unwrap();
        for k in 0..3 {
            assert!((bd.a[k] - 1.0).norm() < 1e-15 && (bd.d[k] - 1.0).norm() < 1e-15);
            assert!(bd.b[k].norm() < 1e-15 && bd.c[k].norm() < 1e-15);
        }
        let t = zauner_bases(&ComplexMatrix::identity(6)).unwrap();
        assert!(t.reconstruction <= 1e-12);
        assert!(!t.report.passes());
        let expect = 1.0 - 1.0 / 6f64.sqrt();
        assert!((t.report.max_deviation() - expect).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_circulant_seed() {
        let d = crate::catalog::dita_d(PhaseValue::ONE).scale(1.0 / 6f64.sqrt());
        assert!(matches!(zauner_bases(&d), Err(Error::NotTwoCirculant(_))));
    }

    #[test]
    fn verify_examples() {
        let f6 = fourier_matrix(6);
        let r = verify_mub(std::slice::from_ref(&f6), true, 1e-12).unwrap();
        assert!(r.passes());
        let r = verify_mub(&[f6.clone(), f6.clone()], false, 1e-8).unwrap();
        assert!(!r.passes());
        assert!(verify_mub(&[f6, fourier_matrix(3)], true, 1e-8).is_err());
    }
}
