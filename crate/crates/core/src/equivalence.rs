//! Hadamard equivalence `H = D1 P K Q D2` for small matrices.
//!
//! Dephasing removes the diagonal freedom, so `H ~ K` iff some row and column
//! permutation of `K` has the same dephased form as `H`. The search fixes the
//! row and column of `K` that become the first row and column (which
//! determines the dephasing), then enumerates the remaining column orders and
//! matches rows by backtracking. This visits the same candidates as the plain
//! `n! × n!` enumeration but prunes as soon as a row has no partner.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{dephase, hadamard_residual, max_entry_dist, ComplexMatrix, DiagonalPhases};

/// Default tolerance for equivalence decisions.
pub const EQUIV_TOL: f64 = 1e-7;

/// Per-element tolerance for fingerprint comparison.
pub const FINGERPRINT_TOL: f64 = 1e-6;

/// Largest order the exhaustive search accepts.
pub const MAX_ORDER: usize = 7;

/// A certificate that `H = D1 · P · K · Q · D2`.
///
/// Permutations are index arrays: row `i` of `P K Q` is row `row_perm[i]` of
/// `K`, and column `j` is column `col_perm[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceWitness {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub left_diag: DiagonalPhases,
    pub right_diag: DiagonalPhases,
}

impl EquivalenceWitness {
    /// `D1 · P · K · Q · D2`.
    pub fn apply(&self, k: &ComplexMatrix) -> ComplexMatrix {
        k.permute(&self.row_perm, &self.col_perm)
            .scale_rows_cols(self.left_diag.as_slice(), self.right_diag.as_slice())
    }

    /// `max |D1 P K Q D2 - H|`.
    pub fn defect(&self, h: &ComplexMatrix, k: &ComplexMatrix) -> f64 {
        max_entry_dist(&self.apply(k), h).unwrap_or(f64::INFINITY)
    }
}

fn check_square_nonzero(m: &ComplexMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    if let Some(idx) = m.entries().iter().position(|z| z.norm() == 0.0) {
        return Err(Error::ZeroEntry {
            row: idx / n,
            col: idx % n,
        });
    }
    Ok(n)
}

/// `dephase(P M Q)`.
pub fn canonical_dephased(
    m: &ComplexMatrix,
    row_perm: &[usize],
    col_perm: &[usize],
) -> Result<ComplexMatrix> {
    let n = check_square_nonzero(m)?;
    if !is_permutation(row_perm, n) || !is_permutation(col_perm, n) {
        return Err(Error::ShapeMismatch {
            expected: (n, n),
            actual: (row_perm.len(), col_perm.len()),
        });
    }
    Ok(dephase(&m.permute(row_perm, col_perm))?.matrix)
}

pub fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter()
        .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

/// Next permutation in lexicographic order, in place. Returns false after the last.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Decide whether `h ~ k` at tolerance `tol`.
///
/// The search is exhaustive, so `None` certifies inequivalence at `tol`. Among
/// all witnesses the one returned is the first in the order (first row of
/// `k`, first column of `k`, remaining column order, remaining row order),
/// each lexicographic; the result does not depend on thread scheduling.
pub fn are_equivalent(
    h: &ComplexMatrix,
    k: &ComplexMatrix,
    tol: f64,
) -> Result<Option<EquivalenceWitness>> {
    let n = check_square_nonzero(h)?;
    let nk = check_square_nonzero(k)?;
    if n != nk {
        return Err(Error::ShapeMismatch {
            expected: h.shape(),
            actual: k.shape(),
        });
    }
    if n > MAX_ORDER {
        return Err(Error::ShapeMismatch {
            expected: (MAX_ORDER, MAX_ORDER),
            actual: h.shape(),
        });
    }
    for (name, m) in [("first", h), ("second", k)] {
        let r = hadamard_residual(m)?;
        if r > tol {
            log::warn!(
                "{name} matrix is not Hadamard at tol {tol:e} (residual {r:e}); searching anyway"
            );
        }
    }
    if n == 0 {
        return Ok(Some(EquivalenceWitness {
            row_perm: vec![],
            col_perm: vec![],
            left_diag: DiagonalPhases::ones(0),
            right_diag: DiagonalPhases::ones(0),
        }));
    }

    let target = dephase(h)?;
    let found = (0..n * n).into_par_iter().find_map_first(|outer| {
        let (r0, c0) = (outer / n, outer % n);
        search_anchored(&target.matrix, k, r0, c0, tol, |row_perm, col_perm| {
            let w = witness_from(h, &target, k, row_perm, col_perm);
            (w.defect(h, k) <= tol).then_some(w)
        })
    });
    Ok(found)
}

/// Enumerate permutations with `row_perm[0] = r0`, `col_perm[0] = c0` whose
/// dephased form matches `target`, calling `accept` until it yields a value.
fn search_anchored<T>(
    target: &ComplexMatrix,
    k: &ComplexMatrix,
    r0: usize,
    c0: usize,
    tol: f64,
    mut accept: impl FnMut(&[usize], &[usize]) -> Option<T>,
) -> Option<T> {
    let n = k.nrows();
    let corner = k[(r0, c0)];
    // dephased relative to (r0, c0): rows/cols indexed as in k
    let kd = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == r0 || j == c0 {
            Complex64::new(1.0, 0.0)
        } else {
            k[(i, j)] * corner / (k[(i, c0)] * k[(r0, j)])
        }
    });

    let mut rest: Vec<usize> = (0..n).filter(|&j| j != c0).collect();
    let mut col_perm = vec![c0; n];
    let mut row_perm = vec![r0; n];
    let mut used = vec![false; n];
    loop {
        col_perm[1..].copy_from_slice(&rest);
        used.iter_mut().for_each(|u| *u = false);
        used[r0] = true;
        if let Some(t) = match_rows(
            target,
            &kd,
            &col_perm,
            &mut row_perm,
            &mut used,
            1,
            tol,
            &mut accept,
        ) {
            return Some(t);
        }
        if !next_permutation(&mut rest) {
            return None;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn match_rows<T>(
    target: &ComplexMatrix,
    kd: &ComplexMatrix,
    col_perm: &[usize],
    row_perm: &mut Vec<usize>,
    used: &mut [bool],
    i: usize,
    tol: f64,
    accept: &mut impl FnMut(&[usize], &[usize]) -> Option<T>,
) -> Option<T> {
    let n = kd.nrows();
    if i == n {
        return accept(row_perm, col_perm);
    }
    let want = target.row(i);
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let row = kd.row(cand);
        let fits = col_perm
            .iter()
            .zip(want)
            .all(|(&j, w)| (row[j] - w).norm() <= tol);
        if fits {
            used[cand] = true;
            row_perm[i] = cand;
            if let Some(t) = match_rows(target, kd, col_perm, row_perm, used, i + 1, tol, accept) {
                return Some(t);
            }
            used[cand] = false;
        }
    }
    None
}

/// From `dephase(H) = E1 H E2` and `dephase(PKQ) = F1 PKQ F2` it follows that
/// `H = (E1^-1 F1) PKQ (F2 E2^-1)`; rescaled so `left_diag[0] = 1`.
fn witness_from(
    h: &ComplexMatrix,
    target: &crate::linalg::Dephased,
    k: &ComplexMatrix,
    row_perm: &[usize],
    col_perm: &[usize],
) -> EquivalenceWitness {
    let n = h.nrows();
    let pkq = k.permute(row_perm, col_perm);
    let d = dephase(&pkq).expect("nonzero entries checked");
    let e1 = target.left.as_slice();
    let e2 = target.right.as_slice();
    let f1 = d.left.as_slice();
    let f2 = d.right.as_slice();
    let mut left: Vec<Complex64> = (0..n).map(|i| f1[i] / e1[i]).collect();
    let mut right: Vec<Complex64> = (0..n).map(|j| f2[j] / e2[j]).collect();
    let s = left[0];
    for z in &mut left {
        *z /= s;
    }
    for z in &mut right {
        *z *= s;
    }
    EquivalenceWitness {
        row_perm: row_perm.to_vec(),
        col_perm: col_perm.to_vec(),
        left_diag: DiagonalPhases::from_raw(left),
        right_diag: DiagonalPhases::from_raw(right),
    }
}

/// Sorted phases of all quartets `m_ij m_kl conj(m_il) conj(m_kj)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fingerprint(Vec<f64>);

impl Fingerprint {
    pub fn phases(&self) -> &[f64] {
        &self.0
    }

    pub fn matches(&self, other: &Fingerprint, tol: f64) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

pub fn fingerprint(m: &ComplexMatrix) -> Result<Fingerprint> {
    let n = check_square_nonzero(m)?;
    let mut out = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for kk in 0..n {
                for l in 0..n {
                    let q = m[(i, j)] * m[(kk, l)] * (m[(i, l)] * m[(kk, j)]).conj();
                    let mut p = q.arg().rem_euclid(TAU);
                    // fold the 0/2pi seam so near-zero phases sort together
                    if TAU - p < FINGERPRINT_TOL {
                        p -= TAU;
                    }
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(Fingerprint(out))
}

pub fn is_self_adjoint(m: &ComplexMatrix, tol: f64) -> bool {
    m.is_square() && max_entry_dist(m, &m.adjoint()).is_ok_and(|d| d <= tol)
}

/// Group matrices into equivalence classes, in first-appearance order.
///
/// Each matrix is compared against one representative per existing class;
/// representatives whose fingerprint differs are skipped without searching.
pub fn partition_classes(matrices: &[ComplexMatrix], tol: f64) -> Result<Vec<Vec<usize>>> {
    let prints = matrices
        .iter()
        .map(fingerprint)
        .collect::<Result<Vec<_>>>()?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for (idx, m) in matrices.iter().enumerate() {
        for class in &mut classes {
            let rep = class[0];
            if !prints[rep].matches(&prints[idx], FINGERPRINT_TOL) {
                continue;
            }
            if are_equivalent(&matrices[rep], m, tol)?.is_some() {
                class.push(idx);
                continue 'next;
            }
        }
        classes.push(vec![idx]);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cis, fourier_matrix};

    fn f6() -> ComplexMatrix {
        fourier_matrix(6).scale(6f64.sqrt())
    }

    #[test]
    fn lexicographic_permutations() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
    }

    #[test]
    fn canonical_form_contract() {
        let m = f6();
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(
            canonical_dephased(&m, &id, &id).unwrap(),
            dephase(&m).unwrap().matrix
        );
        let c = canonical_dephased(&m, &[3, 1, 0, 5, 4, 2], &[2, 0, 1, 4, 5, 3]).unwrap();
        for k in 0..6 {
            assert_eq!(c[(0, k)], Complex64::new(1.0, 0.0));
            assert_eq!(c[(k, 0)], Complex64::new(1.0, 0.0));
        }
        let swapped = canonical_dephased(&m, &[0, 2, 1, 3, 4, 5], &id).unwrap();
        assert!(hadamard_residual(&swapped).unwrap() <= 1e-12);
        assert!(canonical_dephased(&m, &[0, 0, 1, 2, 3, 4], &id).is_err());
    }

    #[test]
    fn reflexive_with_identity_witness() {
        let m = f6();
        let w = are_equivalent(&m, &m, EQUIV_TOL).unwrap().unwrap();
        assert_eq!(w.row_perm, (0..6).collect::<Vec<_>>());
        assert_eq!(w.col_perm, (0..6).collect::<Vec<_>>());
        assert!(w.defect(&m, &m) <= EQUIV_TOL);
    }

    #[test]
    fn recovers_planted_transform() {
        let h = f6();
        let left: Vec<_> = (0..6).map(|i| cis(0.37 * i as f64 + 0.2)).collect();
        let right: Vec<_> = (0..6).map(|i| cis(-0.81 * i as f64 + 1.0)).collect();
        let k = h
            .permute(&[4, 2, 0, 5, 1, 3], &[1, 5, 3, 0, 2, 4])
            .scale_rows_cols(&left, &right);
        let w = are_equivalent(&h, &k, EQUIV_TOL).unwrap().unwrap();
        assert!(w.defect(&h, &k) <= EQUIV_TOL);
        assert!((w.left_diag.as_slice()[0] - 1.0).norm() < 1e-15);
        let back = are_equivalent(&k, &h, EQUIV_TOL).unwrap().unwrap();
        assert!(back.defect(&k, &h) <= EQUIV_TOL);
    }

    #[test]
    fn real_hadamard_quartets_are_signs() {
        let h2 = ComplexMatrix::from_rows(&[
            [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        ])
        .unwrap();
        let h4 = ComplexMatrix::from_fn(4, 4, |i, j| h2[(i / 2, j / 2)] * h2[(i % 2, j % 2)]);
        let fp = fingerprint(&h4).unwrap();
        assert_eq!(fp.phases().len(), 256);
        for &p in fp.phases() {
            assert!(
                p.abs() < 1e-12 || (p - std::f64::consts::PI).abs() < 1e-12,
                "{p}"
            );
        }
    }

    #[test]
    fn inequivalent_sizes_and_orders() {
        let a = fourier_matrix(2).scale(2f64.sqrt());
        assert!(are_equivalent(&a, &f6(), EQUIV_TOL).is_err());
        let big = fourier_matrix(8).scale(8f64.sqrt());
        assert!(are_equivalent(&big, &big, EQUIV_TOL).is_err());
    }

    #[test]
    fn self_adjoint_checks() {
        let f3 = fourier_matrix(3).scale(3f64.sqrt());
        assert!(!is_self_adjoint(&f3, 1e-9));
        assert!(is_self_adjoint(&ComplexMatrix::identity(4), 0.0));
        assert!(!is_self_adjoint(&ComplexMatrix::zeros(2, 3), 1.0));
    }
}
