//! Previously known order-6 matrices and their 2-circulant representations.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    circulant, max_entry_dist, parse_matrix, ComplexMatrix, DiagonalPhases, PhaseValue,
};

/// A transform `D1 · P · M · Q · D2 = expected` where `expected` is 2-circulant.
/// Permutations follow [`crate::equivalence::EquivalenceWitness`].
#[derive(Clone, Debug, PartialEq)]
pub struct CirculantRepWitness {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub left_diag: DiagonalPhases,
    pub right_diag: DiagonalPhases,
    pub expected: ComplexMatrix,
}

impl CirculantRepWitness {
    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        m.permute(&self.row_perm, &self.col_perm)
            .scale_rows_cols(self.left_diag.as_slice(), self.right_diag.as_slice())
    }

    /// `max |D1 P M Q D2 - expected|`.
    pub fn defect(&self, m: &ComplexMatrix) -> f64 {
        max_entry_dist(&self.apply(m), &self.expected).unwrap_or(f64::INFINITY)
    }
}

/// Largest deviation of any of the four `m × m` blocks from being circulant.
pub fn two_circulant_defect(t: &ComplexMatrix) -> f64 {
    let (n, nc) = t.shape();
    if n != nc || n % 2 != 0 || n == 0 {
        return f64::INFINITY;
    }
    let m = n / 2;
    let mut worst = 0.0f64;
    for (r0, c0) in [(0, 0), (0, m), (m, 0), (m, m)] {
        let block = t.block(r0, c0, m, m);
        let rebuilt = circulant(block.row(0)).expect("nonempty");
        worst = worst.max(max_entry_dist(&block, &rebuilt).expect("same shape"));
    }
    worst
}

fn mat(rows: [[Complex64; 6]; 6]) -> ComplexMatrix {
    ComplexMatrix::from_rows(&rows).expect("6x6")
}

const fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The affine family `D(t)` with entries in `{±1, ±i, ±i t^3, ±i / t^3}`.
pub fn dita_d(t: PhaseValue) -> ComplexMatrix {
    let t3 = t.value().powi(3);
    let it3 = I * t3;
    let i_t3 = I / t3;
    let (o, m) = (re(1.0), re(-1.0));
    mat([
        [o, o, o, o, o, o],
        [o, m, -i_t3, I, -I, i_t3],
        [o, -it3, m, -I, it3, I],
        [o, I, -I, m, I, -I],
        [o, -I, i_t3, I, m, -i_t3],
        [o, it3, I, -I, -it3, m],
    ])
}

/// `D1 · D(t) · D2` with `D1 = Diag(1, it, i/t, 1, t, -1/t)` and
/// `D2 = Diag(1, i/t, it, 1, 1/t, -t)`, and the 2-circulant result.
pub fn dita_circulant_witness(t: PhaseValue) -> CirculantRepWitness {
    let t = t.value();
    let ti = t.inv();
    let o = re(1.0);
    let left = vec![o, I * t, I * ti, o, t, -ti];
    let right = vec![o, I * ti, I * t, o, ti, -t];
    let expected = mat([
        [o, I * ti, I * t, o, ti, -t],
        [I * t, o, I * ti, -t, o, ti],
        [I * ti, I * t, o, ti, -t, o],
        [o, -ti, t, -o, I * ti, I * t],
        [t, o, -ti, I * t, -o, I * ti],
        [-ti, t, o, I * ti, I * t, -o],
    ]);
    CirculantRepWitness {
        row_perm: (0..6).collect(),
        col_perm: (0..6).collect(),
        left_diag: DiagonalPhases::from_raw(left),
        right_diag: DiagonalPhases::from_raw(right),
        expected,
    }
}

/// The self-adjoint pattern `B(x, y, z)`. Hadamard only for suitable `x, y, z`.
pub fn bn_b(x: PhaseValue, y: PhaseValue, z: PhaseValue) -> ComplexMatrix {
    let (x, y, z) = (x.value(), y.value(), z.value());
    let xyz = x * y * z;
    let (o, m) = (re(1.0), re(-1.0));
    mat([
        [o, o, o, o, o, o],
        [o, m, -x.inv(), -y, y, x.inv()],
        [o, -x, o, y, z.inv(), -xyz.inv()],
        [o, -y.inv(), y.inv(), m, -xyz.inv(), xyz.inv()],
        [o, y.inv(), z, -xyz, o, -x.inv()],
        [o, x, -xyz, xyz, -x, m],
    ])
}

/// Principal cube root of a phase: argument in `(-pi/3, pi/3]`.
pub fn principal_cbrt(z: PhaseValue) -> Complex64 {
    let arg = crate::cubic::principal_arg(z.value());
    Complex64::from_polar(1.0, arg / 3.0)
}

/// The rearrangement `D1 · P · B · Q · D2` into 2-circulant form, where `P`
/// takes rows `(1, 3, 5, 2, 4, 6)` of `B` and `Q` takes columns
/// `(5, 1, 3, 4, 6, 2)` (1-based). Holds for every unimodular `x, y, z`.
pub fn bn_circulant_witness(x: PhaseValue, y: PhaseValue, z: PhaseValue) -> CirculantRepWitness {
    let (x, y) = (x.value(), y.value());
    let c = principal_cbrt(z);
    let c2 = c * c;
    let o = re(1.0);
    let left = vec![o, c, c.inv(), y.inv(), c, -(x * y * c).inv()];
    let right = vec![o, c.inv(), c2.inv(), o, -x * y * c2, y * c];
    let p = -x * y * c2;
    let q = y * c;
    let r = (y * c).inv();
    let s = -(x * y * c2).inv();
    let expected = mat([
        [o, c.inv(), c2.inv(), o, p, q],
        [c2.inv(), o, c.inv(), q, o, p],
        [c.inv(), c2.inv(), o, p, q, o],
        [o, r, s, -o, -c2, -c],
        [s, o, r, -c, -o, -c2],
        [r, s, o, -c2, -c, -o],
    ]);
    CirculantRepWitness {
        row_perm: vec![0, 2, 4, 1, 3, 5],
        col_perm: vec![4, 0, 2, 3, 5, 1],
        left_diag: DiagonalPhases::from_raw(left),
        right_diag: DiagonalPhases::from_raw(right),
        expected,
    }
}

/// `[[F3, Δ F3], [F3, -Δ F3]]` with `F3` the unimodular order-3 Fourier matrix
/// and `Δ = Diag(1, e^{ia}, e^{ib})`.
pub fn generalized_fourier(a_phase: f64, b_phase: f64) -> ComplexMatrix {
    let f3 = crate::linalg::fourier_matrix(3).scale(3f64.sqrt());
    let delta = [
        re(1.0),
        crate::linalg::cis(a_phase),
        crate::linalg::cis(b_phase),
    ];
    ComplexMatrix::from_fn(6, 6, |i, j| {
        let f = f3[(i % 3, j % 3)];
        match (i < 3, j < 3) {
            (_, true) => f,
            (true, false) => delta[i] * f,
            (false, false) => -delta[i - 3] * f,
        }
    })
}

/// Read a matrix in the text format. Only the shape is validated.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text)
}

pub fn save_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, m.to_string()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hadamard_residual;
    use std::f64::consts::PI;

    fn ph(t: f64) -> PhaseValue {
        PhaseValue::from_angle(t)
    }

    #[test]
    fn dita_examples() {
        let d1 = dita_d(PhaseValue::ONE);
        for z in d1.entries() {
            let ok = [re(1.0), re(-1.0), I, -I]
                .iter()
                .any(|w| (z - w).norm() < 1e-15);
            assert!(ok, "{z}");
        }
        assert!(hadamard_residual(&d1).unwrap() <= 1e-12);
        let t = ph(PI / 9.0);
        assert!((t.value().powi(3) - crate::linalg::cis(PI / 3.0)).norm() < 1e-15);
        assert!(hadamard_residual(&dita_d(t)).unwrap() <= 1e-10);
        for k in 0..5 {
            assert_eq!(dita_d(ph(k as f64))[(3, 3)], re(-1.0));
        }
    }

    #[test]
    fn dita_witness_at_one() {
        let w = dita_circulant_witness(PhaseValue::ONE);
        let e = &w.expected;
        assert_eq!(e[(0, 1)], I);
        assert_eq!(e[(0, 2)], I);
        assert!(two_circulant_defect(e) <= 1e-12);
        assert!(w.defect(&dita_d(PhaseValue::ONE)) <= 1e-12);
    }

    #[test]
    fn bn_pattern() {
        let (x, y, z) = (ph(0.4), ph(-1.2), ph(2.2));
        let b = bn_b(x, y, z);
        for k in [1, 3, 5] {
            assert_eq!(b[(k, k)], re(-1.0));
        }
        assert_eq!(b[(5, 1)], x.value());
        assert_eq!(b[(2, 1)], -x.value());
        let ones = bn_b(PhaseValue::ONE, PhaseValue::ONE, PhaseValue::ONE);
        assert_eq!(ones[(2, 2)], re(1.0));
    }

    #[test]
    fn principal_cube_root_branch() {
        let c = principal_cbrt(PhaseValue::new(re(-1.0)).unwrap());
        assert!((c - crate::linalg::cis(PI / 3.0)).norm() < 1e-15);
        let c = principal_cbrt(ph(-2.0));
        assert!((c.arg() + 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn bn_witness_at_one() {
        let one = PhaseValue::ONE;
        let w = bn_circulant_witness(one, one, one);
        let ul = w.expected.block(0, 0, 3, 3);
        assert!(ul.entries().iter().all(|z| (z - 1.0).norm() < 1e-15));
        for k in 3..6 {
            assert_eq!(w.expected[(k, k)], re(-1.0));
        }
        assert!(w.defect(&bn_b(one, one, one)) <= 1e-12);
    }

    #[test]
    fn generalized_fourier_family() {
        for (a, b) in [(0.0, 0.0), (0.3, -1.7), (PI, 0.0), (2.0, 5.0)] {
            assert!(hadamard_residual(&generalized_fourier(a, b)).unwrap() <= 1e-10);
        }
        let m = generalized_fourier(PI, 0.0);
        // second row of the right half picks up e^{i pi} = -1
        assert!((m[(1, 3)] + 1.0).norm() < 1e-15);
        assert!((m[(4, 3)] - 1.0).norm() < 1e-15);
    }

    #[test]
    fn two_circulant_defect_detects_structure() {
        assert_eq!(two_circulant_defect(&ComplexMatrix::identity(6)), 0.0);
        assert!(two_circulant_defect(&dita_d(PhaseValue::ONE)) > 0.1);
        assert_eq!(
            two_circulant_defect(&ComplexMatrix::identity(3)),
            f64::INFINITY
        );
    }

    #[test]
    fn load_and_save() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.mat");
        let m = dita_d(ph(0.3));
        save_matrix(&path, &m).unwrap();
        let back = load_matrix(&path).unwrap();
        assert_eq!(max_entry_dist(&m, &back).unwrap(), 0.0);
        assert_eq!(back.shape(), (6, 6));

        std::fs::write(&path, "2 2\n1 0 1 0\n1 0\n").unwrap();
        match load_matrix(&path) {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            load_matrix(dir.path().join("missing.mat")),
            Err(Error::Io { .. })
        ));
    }
}
