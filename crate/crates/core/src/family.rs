//! The two-parameter family `X6(alpha)` and its 2-circulant block form.
//!
//! With `A = circ(a, b, c)` and `B = circ(d, e, f)` the block matrix
//! `H = [[A, B], [B*, -A*]]` is Hadamard iff
//! `a/b + b/c + c/a + d/e + e/f + f/d = 0`. Writing `x = a/b`, `y = b/c`,
//! `u = d/e`, `v = e/f` this becomes `phi(x, y) + phi(u, v) = 0`, which is
//! solved by taking `x, y` as roots of `f_alpha` and `u, v` as roots of
//! `f_{-alpha}`.

use num_complex::Complex64;

use crate::cubic::{boundary_pair, outside_region, solve_falpha, ORDERED_PAIRS};
use crate::error::{Error, Result};
use crate::linalg::{circulant, ComplexMatrix, PhaseValue};
use crate::region::{in_region, phi_raw, AlphaPoint};

/// Tolerance on `|phi(x,y) + phi(u,v)|` accepted by [`x6_from_quadruple`].
pub const QUADRUPLE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockParams {
    pub a: PhaseValue,
    pub b: PhaseValue,
    pub c: PhaseValue,
    pub d: PhaseValue,
    pub e: PhaseValue,
    pub f: PhaseValue,
}

impl BlockParams {
    /// `|a/b + b/c + c/a + d/e + e/f + f/d|`; zero iff the block matrix is Hadamard.
    pub fn orthogonality_scalar(&self) -> f64 {
        let r = |p: PhaseValue, q: PhaseValue| p.value() * q.value().conj();
        (r(self.a, self.b)
            + r(self.b, self.c)
            + r(self.c, self.a)
            + r(self.d, self.e)
            + r(self.e, self.f)
            + r(self.f, self.d))
        .norm()
    }

    /// `a = 1, b = conj(x), c = conj(xy), d = 1, e = conj(u), f = conj(uv)`.
    pub fn from_quadruple(q: &Quadruple) -> Self {
        BlockParams {
            a: PhaseValue::ONE,
            b: q.x.inv(),
            c: PhaseValue::project((q.x.value() * q.y.value()).conj()).expect("unimodular"),
            d: PhaseValue::ONE,
            e: q.u.inv(),
            f: PhaseValue::project((q.u.value() * q.v.value()).conj()).expect("unimodular"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadruple {
    pub x: PhaseValue,
    pub y: PhaseValue,
    pub u: PhaseValue,
    pub v: PhaseValue,
}

impl Quadruple {
    pub fn from_values(x: Complex64, y: Complex64, u: Complex64, v: Complex64) -> Result<Self> {
        Ok(Quadruple {
            x: PhaseValue::new(x)?,
            y: PhaseValue::new(y)?,
            u: PhaseValue::new(u)?,
            v: PhaseValue::new(v)?,
        })
    }

    /// `|phi(x, y) + phi(u, v)|`.
    pub fn phi_defect(&self) -> f64 {
        (phi_raw(self.x.value(), self.y.value()) + phi_raw(self.u.value(), self.v.value())).norm()
    }

    /// The same matrix up to equivalence, with the roles of the two circulant
    /// blocks exchanged.
    pub fn swapped(&self) -> Self {
        Quadruple {
            x: self.u,
            y: self.v,
            u: self.x,
            v: self.y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyVariant {
    Standard,
    Transpose,
}

/// `[[A, B], [B*, -A*]]` with `A = circ(a, b, c)`, `B = circ(d, e, f)`.
pub fn h_block(p: &BlockParams) -> ComplexMatrix {
    let a = circulant(&[p.a.value(), p.b.value(), p.c.value()]).expect("nonempty");
    let b = circulant(&[p.d.value(), p.e.value(), p.f.value()]).expect("nonempty");
    let lower_right = a.adjoint().scale(-1.0);
    ComplexMatrix::from_blocks(&a, &b, &b.adjoint(), &lower_right).expect("3x3 blocks")
}

/// The dephased member `X6(x, y, u, v)`.
pub fn x6_from_quadruple(q: &Quadruple) -> Result<ComplexMatrix> {
    let defect = q.phi_defect();
    if !(defect <= QUADRUPLE_TOL) {
        return Err(Error::QuadrupleCondition(defect));
    }
    Ok(x6_unchecked(q))
}

fn x6_unchecked(q: &Quadruple) -> ComplexMatrix {
    let (x, y, u, v) = (q.x.value(), q.y.value(), q.u.value(), q.v.value());
    let one = Complex64::new(1.0, 0.0);
    let xy = x * y;
    let xy_uv = xy / (u * v);
    let x_u = x / u;
    let x_v = x / v;
    let uxy = u * xy;
    let vxy = v * xy;
    let uvx = u * v * x;
    let rows = [
        [one, one, one, one, one, one],
        [one, x * xy, xy * y, xy_uv, uxy, vxy],
        [one, x / y, x * xy, x_u, x_v, uvx],
        [one, uvx, uxy, -one, -uxy, -uvx],
        [one, x_u, vxy, -x_u, -one, -vxy],
        [one, x_v, xy_uv, -xy_uv, -x_v, -one],
    ];
    ComplexMatrix::from_rows(&rows).expect("6x6")
}

/// The quadruple used by [`x6_from_alpha`].
///
/// Interior points take the first two roots of `f_alpha` and of `f_{-alpha}`
/// in the solver's argument ordering. At a double root `r` the pair is
/// `(r, 1/r^2)`, which makes the matrix self-adjoint. When only `f_{-alpha}`
/// has the double root the two sides are exchanged, so that the self-adjoint
/// representative is returned there too.
pub fn quadruple_from_alpha(alpha: AlphaPoint) -> Result<Quadruple> {
    if !in_region(alpha) {
        return Err(outside_region(alpha));
    }
    let plus = solve_falpha(alpha);
    let minus = solve_falpha(alpha.negated());
    let side = |triple: &crate::cubic::RootTriple, at: AlphaPoint| match boundary_pair(at, triple) {
        Some(pair) => (pair, true),
        None => ((triple.roots[0], triple.roots[1]), false),
    };
    let ((x, y), plus_double) = side(&plus, alpha);
    let ((u, v), minus_double) = side(&minus, alpha.negated());
    let p = |z: Complex64| PhaseValue::project(z);
    let q = Quadruple {
        x: p(x)?,
        y: p(y)?,
        u: p(u)?,
        v: p(v)?,
    };
    Ok(if minus_double && !plus_double {
        q.swapped()
    } else {
        q
    })
}

/// The literal quadruple `(x, y)` from `f_alpha`, `(u, v)` from `f_{-alpha}`,
/// using `(r, 1/r^2)` at a double root on either side, never exchanging sides.
pub fn mirrored_quadruple_from_alpha(alpha: AlphaPoint) -> Result<Quadruple> {
    let q = quadruple_from_alpha(alpha)?;
    let minus = solve_falpha(alpha.negated());
    let plus = solve_falpha(alpha);
    if minus.double_root().is_some() && plus.double_root().is_none() {
        Ok(q.swapped())
    } else {
        Ok(q)
    }
}

pub fn x6_from_alpha(alpha: AlphaPoint, variant: FamilyVariant) -> Result<ComplexMatrix> {
    let q = quadruple_from_alpha(alpha)?;
    let m = x6_from_quadruple(&q)?;
    Ok(match variant {
        FamilyVariant::Standard => m,
        FamilyVariant::Transpose => m.transpose(),
    })
}

/// Block parameters matching [`x6_from_alpha`]'s quadruple.
pub fn block_params_from_alpha(alpha: AlphaPoint) -> Result<BlockParams> {
    Ok(BlockParams::from_quadruple(&quadruple_from_alpha(alpha)?))
}

/// All 36 quadruples built from ordered pairs of distinct root indices, the
/// `f_alpha` pair index major.
pub fn all_quadruples(alpha: AlphaPoint) -> Result<Vec<Quadruple>> {
    if !in_region(alpha) {
        return Err(outside_region(alpha));
    }
    let plus = solve_falpha(alpha).roots;
    let minus = solve_falpha(alpha.negated()).roots;
    let p = |z: Complex64| PhaseValue::project(z);
    let mut out = Vec::with_capacity(36);
    for &(i, j) in &ORDERED_PAIRS {
        for &(k, l) in &ORDERED_PAIRS {
            out.push(Quadruple {
                x: p(plus[i])?,
                y: p(plus[j])?,
                u: p(minus[k])?,
                v: p(minus[l])?,
            });
        }
    }
    Ok(out)
}

pub fn all_variants(alpha: AlphaPoint) -> Result<Vec<ComplexMatrix>> {
    all_quadruples(alpha)?
        .iter()
        .map(x6_from_quadruple)
        .collect()
}
