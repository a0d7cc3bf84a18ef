//! Dense exact linear algebra over the rationals and the integers.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

pub type QVector = Vec<Rational>;

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(QMatrix { rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[QVector], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> QVector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a * &other[(k, c)];
                    out[(r, c)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Determinant by exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &pivot;
                m.add_row_multiple(r, c, &-f);
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let red = rref(&aug);
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::NonInvertible);
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red.matrix[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = factor * &self[(source, c)];
            if !delta.is_zero() {
                self[(target, c)] += delta;
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rational) {
        for c in 0..self.cols {
            self[(r, c)] *= factor;
        }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        QMatrix::from_rows(rows, cols).map_err(serde::de::Error::custom)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &QMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = a[(row, col)].recip().expect("pivot is nonzero");
        a.scale_row(row, &inv);
        for r in 0..a.rows {
            if r != row && !a[(r, col)].is_zero() {
                let f = -a[(r, col)].clone();
                a.add_row_multiple(r, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    Rref {
        matrix: a,
        pivots,
        rank,
    }
}

/// The full solution set `particular + span(kernel)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: QVector,
    pub kernel: Vec<QVector>,
}

/// Exact solution set of `m x = b`, or `None` when the system is inconsistent.
pub fn solve_affine(m: &QMatrix, b: &[Rational]) -> Result<Option<AffineSolution>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let n = m.cols;
    let mut aug = QMatrix::zeros(m.rows, n + 1);
    for r in 0..m.rows {
        for c in 0..n {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, n)] = b[r].clone();
    }
    let red = rref(&aug);
    if red.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &pc) in red.pivots.iter().enumerate() {
        particular[pc] = red.matrix[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &pc) in red.pivots.iter().enumerate() {
                v[pc] = -red.matrix[(r, f)].clone();
            }
            v
        })
        .collect();
    Ok(Some(AffineSolution { particular, kernel }))
}

/// Outcome of solving `m X = B` for a matrix of right-hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiSolve {
    Unique(QMatrix),
    Inconsistent,
    /// Consistent but the unknowns are not determined; carries the rank of `m`.
    Underdetermined(usize),
}

pub fn solve_multi(m: &QMatrix, rhs: &QMatrix) -> Result<MultiSolve> {
    if rhs.rows != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: rhs.rows,
        });
    }
    let n = m.cols;
    let k = rhs.cols;
    let mut aug = QMatrix::zeros(m.rows, n + k);
    for r in 0..m.rows {
        for c in 0..n {
            aug[(r, c)] = m[(r, c)].clone();
        }
        for c in 0..k {
            aug[(r, n + c)] = rhs[(r, c)].clone();
        }
    }
    let red = rref(&aug);
    if red.pivots.iter().any(|&p| p >= n) {
        return Ok(MultiSolve::Inconsistent);
    }
    if red.rank < n {
        return Ok(MultiSolve::Underdetermined(red.rank));
    }
    let mut x = QMatrix::zeros(n, k);
    for r in 0..n {
        for c in 0..k {
            x[(r, c)] = red.matrix[(r, n + c)].clone();
        }
    }
    Ok(MultiSolve::Unique(x))
}

/// Integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| &row[k] * &b[k][c]).sum())
                .collect()
        })
        .collect()
}

pub fn int_determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let q = QMatrix::from_rows(
        m.iter()
            .map(|r| r.iter().cloned().map(Rational::int).collect())
            .collect(),
        n,
    )
    .expect("square integer matrix");
    let det = q.determinant().expect("square");
    debug_assert!(det.is_integer());
    det.numer().clone()
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ...`,
/// all diagonal entries nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl Snf {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.d[i][i].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix, cols: usize) -> Result<Snf> {
    let rows = m.len();
    if let Some(r) = m.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch {
            expected: cols,
            found: r.len(),
        });
    }
    let mut d = m.clone();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);

    let swap_cols = |a: &mut IntMatrix, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };
    // col[target] -= f * col[source]
    let sub_col = |a: &mut IntMatrix, target: usize, source: usize, f: &BigInt| {
        for row in a.iter_mut() {
            let delta = f * &row[source];
            row[target] -= delta;
        }
    };
    let sub_row = |a: &mut IntMatrix, target: usize, source: usize, f: &BigInt| {
        let src = a[source].clone();
        for (x, s) in a[target].iter_mut().zip(src) {
            *x -= f * s;
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[bi][bj].abs() <= d[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let f = d[i][t].div_floor(&d[t][t]);
                sub_row(&mut d, i, t, &f);
                sub_row(&mut u, i, t, &f);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let f = d[t][j].div_floor(&d[t][t]);
                sub_col(&mut d, j, t, &f);
                sub_col(&mut v, j, t, &f);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold a violating row into the pivot row and retry
            let pivot = d[t][t].clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&d[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    sub_row(&mut d, t, i, &minus_one);
                    sub_row(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Ok(Snf { u, d, v, rows, cols })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn qm(rows: &[&[&str]]) -> QMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        QMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rref_examples() {
        let id = QMatrix::identity(2);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
        assert_eq!(rref(&qm(&[&["1", "2"], &["2", "4"]])).rank, 1);
        let z = qm(&[&["0", "0"], &["0", "0"]]);
        assert_eq!(rref(&z).rank, 0);
        assert!(rref(&z).pivots.is_empty());
    }

    #[test]
    fn solve_affine_examples() {
        let s = solve_affine(&qm(&[&["1", "1"]]), &[q("1")]).unwrap().unwrap();
        assert_eq!(s.particular, vec![q("1"), q("0")]);
        assert_eq!(s.kernel, vec![vec![q("-1"), q("1")]]);

        let inconsistent = qm(&[&["1", "1"], &["1", "1"]]);
        assert!(solve_affine(&inconsistent, &[q("0"), q("1")]).unwrap().is_none());

        // d = xi0 a0 + xi1 a1 + xi2 a2, sum = 1 with a0=(0,0), a1=(1,0), a2=(0,1)
        let m = qm(&[&["0", "1", "0"], &["0", "0", "1"], &["1", "1", "1"]]);
        let s = solve_affine(&m, &[q("1/2"), q("1/2"), q("1")]).unwrap().unwrap();
        assert_eq!(s.particular, vec![q("0"), q("1/2"), q("1/2")]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = qm(&[&["2", "1"], &["0", "1"]]);
        assert_eq!(m.determinant().unwrap(), q("2"));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
        assert!(qm(&[&["1", "2"], &["2", "4"]]).inverse().is_err());
        let p = qm(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(p.determinant().unwrap(), q("-1"));
    }

    fn check_snf(m: &IntMatrix, cols: usize) -> Snf {
        let s = smith_normal_form(m, cols).unwrap();
        let rows = m.len();
        let um = int_mul(&s.u, m, rows, cols);
        let umv = int_mul(&um, &s.v, cols, cols);
        assert_eq!(umv, s.d);
        assert_eq!(int_determinant(&s.u).abs(), BigInt::one());
        assert_eq!(int_determinant(&s.v).abs(), BigInt::one());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check_snf(&im(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(s.d, im(&[&[1, 0], &[0, 6]]));
        let s = check_snf(&im(&[&[2]]), 1);
        assert_eq!(s.d, im(&[&[2]]));
        let s = check_snf(&im(&[&[0, 0], &[0, 0], &[0, 0]]), 2);
        assert!(s.invariant_factors().is_empty());
        check_snf(&im(&[&[4, 6, 8], &[6, 9, 12]]), 3);
        check_snf(&im(&[&[-3, 7], &[5, -11], &[2, 2]]), 2);
    }

    #[test]
    fn snf_empty_rows() {
        let s = smith_normal_form(&Vec::new(), 3).unwrap();
        assert_eq!(s.v.len(), 3);
    }
}
