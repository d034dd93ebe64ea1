//! Dense matrices over the Gaussian rationals.
//!
//! Equality is exact entrywise equality. Products skip zero entries of the
//! left factor, which keeps the heavily sparse matrix-unit computations cheap.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussianRational,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-entry convenience constructor.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        Self::from_fn(rows, cols, |i, j| data[i * cols + j].into())
    }

    /// An `n×1` column.
    pub fn column(values: Vec<GaussianRational>) -> Self {
        Self {
            rows: values.len(),
            cols: 1,
            entries: values,
        }
    }

    /// A `1×n` row.
    pub fn row_vector(values: Vec<GaussianRational>) -> Self {
        Self {
            rows: 1,
            cols: values.len(),
            entries: values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &GaussianRational) {
        self.entries[i * self.cols + j] += v;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn col(&self, j: usize) -> Self {
        Self::column((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> Self {
        Self::row_vector((0..self.cols).map(|j| self.get(i, j).clone()).collect())
    }

    fn check_same_shape(&self, rhs: &Self, what: &str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs, "add")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs, "sub")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(GaussianRational::conj).collect(),
        }
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square(), "pow of a non-square matrix");
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    /// Sum of `|a_ij|²` over all entries.
    pub fn frobenius_sqr(&self) -> crate::scalar::Rational {
        self.entries
            .iter()
            .map(GaussianRational::norm_sqr)
            .fold(crate::scalar::Rational::zero(), |a, b| a + b)
    }

    /// First index where two equally shaped matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.cols, p % self.cols))
    }

    /// Places `self` into an `n×n` zero matrix, sending local index `k` to `map[k]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> Self {
        assert!(self.is_square() && map.len() == self.rows);
        let mut out = Self::zeros(n, n);
        for (i, &gi) in map.iter().enumerate() {
            for (j, &gj) in map.iter().enumerate() {
                out.set(gi, gj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Extracts the principal block on the given indices.
    pub fn restrict(&self, map: &[usize]) -> Self {
        Self::from_fn(map.len(), map.len(), |i, j| self.get(map[i], map[j]).clone())
    }

    /// Rank by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled by the least common multiple of its entry
    /// denominators, so the elimination runs in `ℤ[i]` and every division
    /// is exact.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<GaussianRational>> = (0..self.rows)
            .map(|i| {
                let row: Vec<GaussianRational> =
                    (0..self.cols).map(|j| self.get(i, j).clone()).collect();
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
                let l = crate::scalar::Rational::from_integer(l);
                row.iter().map(|x| x.scale(&l)).collect()
            })
            .collect();
        let mut prev = GaussianRational::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in (r + 1)..self.rows {
                for j in (c + 1)..self.cols {
                    let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = num
                        .div_exact_integer(&prev)
                        .expect("Bareiss step must divide exactly in Z[i]");
                }
                a[i][c] = GaussianRational::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Reduced row echelon form over the field and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solves `self · x = rhs` for a column `rhs`; errors unless the solution
    /// exists and is unique.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if rhs.cols != 1 || rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("solve: rhs must be a column".into()));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, 0).clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Singular("inconsistent system".into()));
        }
        if pivots.len() != self.cols {
            return Err(Error::Singular("solution is not unique".into()));
        }
        Ok(Self::column(
            (0..self.cols)
                .map(|k| red.get(k, self.cols).clone())
                .collect(),
        ))
    }

    /// Basis of the column space (as a list of columns of `self`).
    pub fn column_space_basis(&self) -> Vec<Self> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.col(c)).collect()
    }

    pub fn to_json_value(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.to_string_pair()).collect(),
        }
    }

    pub fn from_json_value(j: &MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows * j.cols {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                j.rows * j.cols,
                j.entries.len()
            )));
        }
        let entries = j
            .entries
            .iter()
            .map(|[re, im]| GaussianRational::from_string_pair(re, im))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: j.rows,
            cols: j.cols,
            entries,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("matrix JSON serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&j)
    }
}

/// Wire form: row-major `[re, im]` string pairs, each `"num/den"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[String; 2]>,
}

/// `AB − BA`.
pub fn mat_commutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.rows,
            cols: b.cols,
        });
    }
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// `AB + BA`.
pub fn mat_anticommutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.try_mul(b)?.try_add(&b.try_mul(a)?)
}

pub fn mat_rank(a: &ExactMatrix) -> usize {
    a.rank()
}

/// True iff `∏ (A − r·I)` over `roots` vanishes. Non-square input is never
/// annihilated.
pub fn minimal_poly_check(a: &ExactMatrix, roots: &[GaussianRational]) -> bool {
    if !a.is_square() {
        return false;
    }
    let n = a.rows;
    let id = ExactMatrix::identity(n);
    let mut acc = id.clone();
    for r in roots {
        let factor = a - &id.scale(r);
        acc = &acc * &factor;
    }
    acc.is_zero()
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: ExactMatrix) -> ExactMatrix {
        &self + &rhs
    }
}

impl Sub for ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: ExactMatrix) -> ExactMatrix {
        &self - &rhs
    }
}

impl Mul for ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: ExactMatrix) -> ExactMatrix {
        &self * &rhs
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&GaussianRational::from_int(-1))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_of_identity_vanishes() {
        let a = ExactMatrix::from_i64(2, 2, &[1, 2, 3, 4]);
        assert!(mat_commutator(&ExactMatrix::identity(2), &a).unwrap().is_zero());
    }

    #[test]
    fn commutator_rejects_mismatch() {
        let a = ExactMatrix::identity(2);
        let b = ExactMatrix::identity(3);
        assert!(matches!(
            mat_commutator(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
        let c = ExactMatrix::zeros(2, 3);
        assert!(matches!(
            mat_commutator(&c, &a),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn rank_basics() {
        assert_eq!(ExactMatrix::identity(11).rank(), 11);
        assert_eq!(ExactMatrix::zeros(11, 11).rank(), 0);
        assert_eq!(ExactMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]).rank(), 1);
        assert_eq!(ExactMatrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]).rank(), 2);
        let mut m = ExactMatrix::identity(2);
        m.set(0, 1, GaussianRational::i());
        m.set(1, 0, GaussianRational::i());
        m.set(1, 1, GaussianRational::from_int(-1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_with_fractions() {
        let m = ExactMatrix::from_fn(3, 3, |i, j| {
            GaussianRational::from_ratio(1, (i + j + 1) as i64)
        });
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn minimal_polynomial_of_identity() {
        let id = ExactMatrix::identity(4);
        assert!(minimal_poly_check(&id, &[GaussianRational::one()]));
        assert!(!minimal_poly_check(&id, &[GaussianRational::zero()]));
        assert!(!minimal_poly_check(&ExactMatrix::zeros(2, 3), &[]));
    }

    #[test]
    fn solve_unique_and_singular() {
        let a = ExactMatrix::from_i64(2, 2, &[2, 1, 1, 3]);
        let b = ExactMatrix::column(vec![3.into(), 5.into()]);
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
        let s = ExactMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert!(s.solve(&b).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut m = ExactMatrix::identity(2);
        m.set(0, 1, GaussianRational::from_parts(-1, 3, 2, 1));
        let s = m.to_json();
        assert_eq!(
            s,
            r#"{"rows":2,"cols":2,"entries":[["1/1","0/1"],["-1/3","2/1"],["0/1","0/1"],["1/1","0/1"]]}"#
        );
        assert_eq!(ExactMatrix::from_json(&s).unwrap(), m);
        assert!(ExactMatrix::from_json(r#"{"rows":2,"cols":2,"entries":[]}"#).is_err());
    }
}
