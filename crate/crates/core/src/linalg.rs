//! Dense complex matrices and the handful of structured constructors the rest
//! of the crate is built on.
//!
//! Matrices are small (order 6, occasionally 2 or 3), so everything here is a
//! straightforward row-major `Vec<Complex64>` with naive products.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used when callers do not specify one.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Allowed deviation from modulus one for a [`PhaseValue`].
pub const PHASE_TOL: f64 = 1e-12;

pub type ComplexScalar = Complex64;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{i theta}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// A unit-modulus complex number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseValue(Complex64);

impl PhaseValue {
    pub const ONE: PhaseValue = PhaseValue(Complex64::new(1.0, 0.0));

    pub fn new(value: Complex64) -> Result<Self> {
        let defect = (value.norm() - 1.0).abs();
        if !(defect <= PHASE_TOL) {
            return Err(Error::NotUnimodular {
                value: format!("{value}"),
                defect,
            });
        }
        Ok(PhaseValue(value))
    }

    /// Divides by the modulus. Fails only for zero or non-finite input.
    pub fn project(value: Complex64) -> Result<Self> {
        let r = value.norm();
        if !r.is_finite() || r == 0.0 {
            return Err(Error::NotUnimodular {
                value: format!("{value}"),
                defect: f64::INFINITY,
            });
        }
        Ok(PhaseValue(value / r))
    }

    pub fn from_angle(theta: f64) -> Self {
        PhaseValue(cis(theta))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    /// Inverse, which for a phase is the conjugate.
    #[inline]
    pub fn inv(self) -> Self {
        PhaseValue(self.0.conj())
    }
}

impl From<PhaseValue> for Complex64 {
    fn from(p: PhaseValue) -> Self {
        p.0
    }
}

/// Diagonal of a diagonal matrix.
///
/// [`DiagonalPhases::new`] enforces unit modulus; [`dephase`] may produce
/// non-unit entries when its input is not unimodular.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalPhases(Vec<Complex64>);

impl DiagonalPhases {
    pub fn new(phases: Vec<Complex64>) -> Result<Self> {
        for &p in &phases {
            PhaseValue::new(p)?;
        }
        Ok(DiagonalPhases(phases))
    }

    pub(crate) fn from_raw(entries: Vec<Complex64>) -> Self {
        DiagonalPhases(entries)
    }

    pub fn ones(n: usize) -> Self {
        DiagonalPhases(vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.0.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &d) in self.0.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// The diagonal as a 1×n row, for serialization.
    pub fn to_row(&self) -> ComplexMatrix {
        ComplexMatrix {
            nrows: 1,
            ncols: self.0.len(),
            entries: self.0.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        ComplexMatrix {
            nrows,
            ncols,
            entries: vec![Complex64::new(0.0, 0.0); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(nrows: usize, ncols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != nrows * ncols {
            return Err(Error::ShapeMismatch {
                expected: (nrows, ncols),
                actual: (entries.len(), 1),
            });
        }
        if let Some(i) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(ComplexMatrix {
            nrows,
            ncols,
            entries,
        })
    }

    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::ShapeMismatch {
                    expected: (nrows, ncols),
                    actual: (nrows, r.len()),
                });
            }
            entries.extend_from_slice(r);
        }
        Self::from_vec(nrows, ncols, entries)
    }

    pub fn from_fn(
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Self {
        let mut entries = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                entries.push(f(i, j));
            }
        }
        ComplexMatrix {
            nrows,
            ncols,
            entries,
        }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        ComplexMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<Self> {
        if self.ncols != rhs.nrows {
            return Err(Error::ShapeMismatch {
                expected: (self.ncols, rhs.ncols),
                actual: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self[(i, k)];
                for j in 0..rhs.ncols {
                    out.entries[i * rhs.ncols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `diag(left) * self * diag(right)`.
    pub fn scale_rows_cols(&self, left: &[Complex64], right: &[Complex64]) -> Self {
        Self::from_fn(self.nrows, self.ncols, |i, j| {
            left[i] * self[(i, j)] * right[j]
        })
    }

    /// `P * self * Q` where row `i` of the result is row `row_perm[i]` of
    /// `self` and column `j` is column `col_perm[j]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        Self::from_fn(self.nrows, self.ncols, |i, j| {
            self[(row_perm[i], col_perm[j])]
        })
    }

    /// Extract the `rows × cols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Assemble `[[a, b], [c, d]]`.
    pub fn from_blocks(
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        c: &ComplexMatrix,
        d: &ComplexMatrix,
    ) -> Result<Self> {
        let (m, n) = a.shape();
        if b.nrows != m || c.ncols != n || d.shape() != (c.nrows, b.ncols) {
            return Err(Error::ShapeMismatch {
                expected: (m, n),
                actual: d.shape(),
            });
        }
        Ok(Self::from_fn(m + c.nrows, n + b.ncols, |i, j| {
            match (i < m, j < n) {
                (true, true) => a[(i, j)],
                (true, false) => b[(i, j - n)],
                (false, true) => c[(i - m, j)],
                (false, false) => d[(i - m, j - n)],
            }
        }))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.ncols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.ncols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

/// Unitary Fourier matrix, entry `(j, k) = exp(2 pi i jk / m) / sqrt(m)`.
pub fn fourier_matrix(m: usize) -> ComplexMatrix {
    assert!(m >= 1, "fourier_matrix requires m >= 1");
    let norm = 1.0 / (m as f64).sqrt();
    ComplexMatrix::from_fn(m, m, |j, k| {
        // reduce jk mod m before scaling to keep the angle small
        cis(TAU * ((j * k) % m) as f64 / m as f64) * norm
    })
}

/// Circulant matrix with entry `(i, j) = first_row[(j - i) mod m]`: every row
/// is the previous one shifted right by one.
pub fn circulant(first_row: &[Complex64]) -> Result<ComplexMatrix> {
    let m = first_row.len();
    if m == 0 {
        return Err(Error::EmptyInput("circulant first row"));
    }
    Ok(ComplexMatrix::from_fn(m, m, |i, j| {
        first_row[(j + m - i) % m]
    }))
}

/// Largest deviation of `M` from being a complex Hadamard matrix:
/// `max(max |MM* - nI|, max ||m_ij| - 1|)`.
pub fn hadamard_residual(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows, m.ncols));
    }
    let n = m.nrows;
    let gram = m * &m.adjoint();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { n as f64 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - target).norm());
        }
    }
    for z in &m.entries {
        worst = worst.max((z.norm() - 1.0).abs());
    }
    Ok(worst)
}

/// `max |(M M*) - I|`, entrywise.
pub fn unitarity_residual(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows, m.ncols));
    }
    let gram = m * &m.adjoint();
    max_entry_dist(&gram, &ComplexMatrix::identity(m.nrows))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dephased {
    pub matrix: ComplexMatrix,
    pub left: DiagonalPhases,
    pub right: DiagonalPhases,
}

/// Dephased form `N = D1 M D2` whose first row and column are exactly 1.
pub fn dephase(m: &ComplexMatrix) -> Result<Dephased> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows, m.ncols));
    }
    let n = m.nrows;
    if let Some(idx) = m
        .entries
        .iter()
        .position(|z| *z == Complex64::new(0.0, 0.0))
    {
        return Err(Error::ZeroEntry {
            row: idx / n.max(1),
            col: idx % n.max(1),
        });
    }
    if n == 0 {
        return Ok(Dephased {
            matrix: m.clone(),
            left: DiagonalPhases::ones(0),
            right: DiagonalPhases::ones(0),
        });
    }
    let corner = m[(0, 0)];
    let right: Vec<Complex64> = (0..n).map(|j| m[(0, j)].inv()).collect();
    let left: Vec<Complex64> = (0..n).map(|i| corner / m[(i, 0)]).collect();
    let mut out = m.scale_rows_cols(&left, &right);
    let one = Complex64::new(1.0, 0.0);
    for k in 0..n {
        out[(0, k)] = one;
        out[(k, 0)] = one;
    }
    Ok(Dephased {
        matrix: out,
        left: DiagonalPhases::from_raw(left),
        right: DiagonalPhases::from_raw(right),
    })
}

/// `max |a_ij - b_ij|`.
pub fn max_entry_dist(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            expected: a.shape(),
            actual: b.shape(),
        });
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Text serialization: a `"<nrows> <ncols>"` header followed by one line per
/// row of `"<re> <im>"` pairs with 17 significant digits.
impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let line: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:.16e} {:.16e}", z.re, z.im))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ComplexMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_matrix(s)
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parse the matrix text format. Lines whose first non-blank character is
/// `#` and blank lines are skipped. Line and column numbers in errors are
/// 1-based; the column counts whitespace-separated tokens.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing '<nrows> <ncols>' header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(parse_err(hline, 1, "header must be '<nrows> <ncols>'"));
    }
    let parse_dim = |tok: &str, col: usize| {
        tok.parse::<usize>()
            .map_err(|e| parse_err(hline, col, format!("bad dimension '{tok}': {e}")))
    };
    let nrows = parse_dim(dims[0], 1)?;
    let ncols = parse_dim(dims[1], 2)?;

    let mut entries = Vec::with_capacity(nrows * ncols);
    for r in 0..nrows {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_err(hline, 1, format!("expected {nrows} rows, found {r}")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 * ncols {
            return Err(parse_err(
                lno,
                toks.len().min(2 * ncols) + 1,
                format!(
                    "expected {} numbers ({} entries), found {}",
                    2 * ncols,
                    ncols,
                    toks.len()
                ),
            ));
        }
        for (k, pair) in toks.chunks(2).enumerate() {
            let num = |tok: &str, col: usize| {
                tok.parse::<f64>()
                    .map_err(|e| parse_err(lno, col, format!("bad number '{tok}': {e}")))
            };
            let re = num(pair[0], 2 * k + 1)?;
            let im = num(pair[1], 2 * k + 2)?;
            if !re.is_finite() || !im.is_finite() {
                return Err(parse_err(lno, 2 * k + 1, "non-finite entry"));
            }
            entries.push(Complex64::new(re, im));
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(parse_err(
            lno,
            1,
            format!("trailing data after {nrows} rows"),
        ));
    }
    ComplexMatrix::from_vec(nrows, ncols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cm(rows: &[&[f64]]) -> ComplexMatrix {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn fourier_small_orders() {
        assert_eq!(fourier_matrix(1), cm(&[&[1.0]]));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let f2 = fourier_matrix(2);
        assert!(max_entry_dist(&f2, &cm(&[&[s, s], &[s, -s]])).unwrap() < 1e-15);
        let f3 = fourier_matrix(3);
        assert!(unitarity_residual(&f3).unwrap() <= 1e-14);
        // F3 is symmetric
        assert_eq!(max_entry_dist(&f3, &f3.transpose()).unwrap(), 0.0);
    }

    #[test]
    fn fourier_unitary_up_to_eight() {
        for m in 1..=8 {
            assert!(
                unitarity_residual(&fourier_matrix(m)).unwrap() <= 1e-13,
                "m = {m}"
            );
        }
    }

    #[test]
    fn circulant_orientation() {
        let a = circulant(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert_eq!(
            a,
            cm(&[&[1.0, 2.0, 3.0], &[3.0, 1.0, 2.0], &[2.0, 3.0, 1.0]])
        );
        assert_eq!(circulant(&[c(1.0, 0.0)]).unwrap(), cm(&[&[1.0]]));
        assert!(matches!(circulant(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn circulant_adjoint_is_circulant() {
        let (d, e, f) = (c(0.3, 1.0), c(-2.0, 0.5), c(1.5, -0.7));
        let lhs = circulant(&[d, e, f]).unwrap().adjoint();
        let rhs = circulant(&[d.conj(), f.conj(), e.conj()]).unwrap();
        assert_eq!(max_entry_dist(&lhs, &rhs).unwrap(), 0.0);
    }

    #[test]
    fn residual_examples() {
        let f6 = fourier_matrix(6).scale(6f64.sqrt());
        assert!(hadamard_residual(&f6).unwrap() <= 1e-12);
        let ones = cm(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!((hadamard_residual(&ones).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(
            hadamard_residual(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare(2, 3))
        ));
    }

    #[test]
    fn dephase_contract() {
        let f6 = fourier_matrix(6).scale(6f64.sqrt());
        // F6 is already dephased
        let d = dephase(&f6).unwrap();
        assert!(max_entry_dist(&d.matrix, &f6).unwrap() < 1e-15);
        assert!(d.left.as_slice().iter().all(|z| (z - 1.0).norm() < 1e-15));

        let left: Vec<_> = (0..6).map(|k| cis(0.7 * k as f64 + 0.1)).collect();
        let right: Vec<_> = (0..6).map(|k| cis(-1.3 * k as f64 + 2.0)).collect();
        let m = f6.scale_rows_cols(&left, &right);
        let d = dephase(&m).unwrap();
        for k in 0..6 {
            assert_eq!(d.matrix[(0, k)], c(1.0, 0.0));
            assert_eq!(d.matrix[(k, 0)], c(1.0, 0.0));
        }
        let rebuilt = m.scale_rows_cols(d.left.as_slice(), d.right.as_slice());
        assert!(max_entry_dist(&rebuilt, &d.matrix).unwrap() < 1e-14);
        assert!(max_entry_dist(&d.matrix, &f6).unwrap() < 1e-13);
        let again = dephase(&d.matrix).unwrap();
        assert!(max_entry_dist(&again.matrix, &d.matrix).unwrap() < 1e-15);
        assert!(hadamard_residual(&d.matrix).unwrap() <= 1e-12);
    }

    #[test]
    fn dephase_rejects_zero() {
        let m = cm(&[&[1.0, 0.0], &[1.0, 1.0]]);
        assert!(matches!(
            dephase(&m),
            Err(Error::ZeroEntry { row: 0, col: 1 })
        ));
    }

    #[test]
    fn entry_distance() {
        let a = cm(&[&[0.0]]);
        let b = ComplexMatrix::from_rows(&[[c(3.0, 4.0)]]).unwrap();
        assert_eq!(max_entry_dist(&a, &a).unwrap(), 0.0);
        assert_eq!(max_entry_dist(&a, &b).unwrap(), 5.0);
        assert!(max_entry_dist(&a, &ComplexMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn phase_value_validation() {
        assert!(PhaseValue::new(c(0.6, 0.8)).is_ok());
        assert!(PhaseValue::new(c(1.0 + 1e-9, 0.0)).is_err());
        assert!(PhaseValue::new(c(f64::NAN, 0.0)).is_err());
        assert_eq!(
            PhaseValue::project(c(0.0, 2.0)).unwrap().value(),
            c(0.0, 1.0)
        );
        assert!(DiagonalPhases::new(vec![c(1.0, 0.0), c(0.5, 0.0)]).is_err());
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let m = fourier_matrix(6).scale(6f64.sqrt());
        let text = m.to_string();
        let back: ComplexMatrix = text.parse().unwrap();
        assert_eq!(max_entry_dist(&m, &back).unwrap(), 0.0);

        let with_comments = format!("# a comment\n\n{text}# trailing comment\n");
        assert_eq!(parse_matrix(&with_comments).unwrap(), back);

        let err = parse_matrix("2 2\n1 0 0 0\n1 0 0\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_matrix("2 x\n"),
            Err(Error::Parse {
                line: 1,
                column: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_matrix("1 1\n1 0\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    fn small_vec() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 3)
            .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
    }

    proptest! {
        #[test]
        fn circulants_commute(a in small_vec(), b in small_vec()) {
            let ca = circulant(&a).unwrap();
            let cb = circulant(&b).unwrap();
            prop_assert!(max_entry_dist(&(&ca * &cb), &(&cb * &ca)).unwrap() <= 1e-12);
        }

        #[test]
        fn text_round_trip_is_exact(v in prop::collection::vec((-1e6f64..1e6, -1e-6f64..1e-6), 6)) {
            let m = ComplexMatrix::from_vec(2, 3, v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap();
            let back = parse_matrix(&m.to_string()).unwrap();
            prop_assert_eq!(m, back);
        }
    }
}
