//! Integer matrices and the exact sequence `0 -> N -> N' -> N'/N -> 0`.
//!
//! The weight matrix `F` (n x k) embeds the one-parameter-subgroup lattice of
//! the acting torus into `Z^n`. Its Smith normal form gives, in one pass, the
//! cokernel map `P` ((n-k) x n) and a section `s` (k x n) with `s F = I`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qmath::{self, Q};
use crate::serial::JsonInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix data has {got} entries, expected {rows} x {cols}")]
    Shape { rows: usize, cols: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("weight matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("cokernel has torsion: invariant factor {0} exceeds 1")]
    TorsionCokernel(BigInt),
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("section does not satisfy s F = I")]
    InvalidSection,
}

/// Dense integer matrix in row-major order with arbitrary precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LatticeError> {
        if data.len() != rows * cols {
            return Err(LatticeError::Shape { rows, cols, got: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self, LatticeError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LatticeError::Shape { rows: rows.len(), cols, got: bad.len() });
        }
        let n = rows.len();
        Ok(IntMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_q_rows(&self) -> Vec<qmath::QVector> {
        (0..self.rows).map(|i| qmath::int_to_q(self.row(i))).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Self {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        IntMatrix { rows: range.len(), cols: self.cols, data }
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != rhs.rows {
            return Err(LatticeError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
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
                    let idx = i * rhs.cols + j;
                    out.data[idx] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Matrix-vector product over the rationals.
    pub fn apply_q(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Q::zero(), |acc, (a, b)| acc + Q::from_integer(a.clone()) * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn rank(&self) -> usize {
        qmath::rank(&self.to_q_rows(), self.cols)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    /// Row-style Hermite normal form of the row lattice (zero rows dropped).
    /// Two matrices generate the same row lattice iff their forms agree.
    pub fn row_hermite_form(&self) -> IntMatrix {
        let mut m = self.to_rows();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            while let Some(p) = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()))
            {
                m.swap(r, p);
                let mut done = true;
                for i in r + 1..m.len() {
                    if m[i][c].is_zero() {
                        continue;
                    }
                    let qt = m[i][c].div_floor(&m[r][c]);
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &qt * y;
                    }
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if r < m.len() && !m[r][c].is_zero() {
                if m[r][c].is_negative() {
                    for x in m[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                let pivot_row = m[r].clone();
                for row in m.iter_mut().take(r) {
                    let qt = row[c].div_floor(&pivot_row[c]);
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &qt * y;
                    }
                }
                r += 1;
            }
        }
        m.truncate(r);
        IntMatrix::from_rows(m, self.cols).expect("rows keep their width")
    }

    pub fn same_row_lattice(&self, other: &IntMatrix) -> bool {
        self.cols == other.cols && self.row_hermite_form() == other.row_hermite_form()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

// JSON: array of rows, each an array of decimal strings. Plain JSON integers
// are accepted on input.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IntMatrix;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of equal-length integer rows")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<IntMatrix, A::Error> {
                let mut rows: Vec<Vec<BigInt>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<JsonInt>>()? {
                    rows.push(row.into_iter().map(|x| x.0).collect());
                }
                if rows.len() > 64 || rows.first().is_some_and(|r| r.len() > 64) {
                    return Err(de::Error::custom("matrices are limited to 64 rows and columns"));
                }
                let cols = rows.first().map_or(0, Vec::len);
                IntMatrix::from_rows(rows, cols).map_err(de::Error::custom)
            }
        }
        d.deserialize_seq(V)
    }
}

/// `U A V = S` with `U`, `V` unimodular and `S` diagonal, `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
}

/// row_dst += factor * row_src
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, factor: &BigInt) {
    for j in 0..m.cols {
        let v = m.get(src, j) * factor;
        m.data[dst * m.cols + j] += v;
    }
}

/// col_dst += factor * col_src
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, factor: &BigInt) {
    for i in 0..m.rows {
        let v = m.get(i, src) * factor;
        m.data[i * m.cols + dst] += v;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let e = s.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_signs(u, s, v);
            };
            swap_rows(&mut s, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut s, t, pj);
            swap_cols(&mut v, t, pj);

            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let qt = s.get(i, t).div_floor(&pivot);
                if !qt.is_zero() {
                    add_row(&mut s, i, t, &-qt.clone());
                    add_row(&mut u, i, t, &-qt);
                }
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let qt = s.get(t, j).div_floor(&pivot);
                if !qt.is_zero() {
                    add_col(&mut s, j, t, &-qt.clone());
                    add_col(&mut v, j, t, &-qt);
                }
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s.get(i, j).mod_floor(&pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    add_row(&mut s, t, i, &BigInt::one());
                    add_row(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
    }
    finish_signs(u, s, v)
}

fn finish_signs(mut u: IntMatrix, mut s: IntMatrix, v: IntMatrix) -> SmithForm {
    for t in 0..s.rows.min(s.cols) {
        if s.get(t, t).is_negative() {
            for j in 0..s.cols {
                let x = -s.get(t, j).clone();
                s.set(t, j, x);
            }
            for j in 0..u.cols {
                let x = -u.get(t, j).clone();
                u.set(t, j, x);
            }
        }
    }
    SmithForm { u, s, v }
}

/// `(F, P, s)` realizing the exact sequence of lattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceData {
    pub weights: IntMatrix,
    pub cokernel: IntMatrix,
    pub section: IntMatrix,
}

impl ExactSequenceData {
    /// Checks `P F = 0`, `s F = I`, rank and surjectivity of `P`.
    pub fn validate(&self) -> Result<(), LatticeError> {
        let (n, k) = (self.weights.rows, self.weights.cols);
        if self.cokernel.cols != n || self.section.cols != n || self.section.rows != k {
            return Err(LatticeError::DimensionMismatch("exact sequence shapes".into()));
        }
        if self.weights.rank() != k {
            return Err(LatticeError::RankDeficient { rank: self.weights.rank(), expected: k });
        }
        if !(&self.cokernel * &self.weights).is_zero() {
            return Err(LatticeError::DimensionMismatch("P F is not zero".into()));
        }
        if !(&self.section * &self.weights).is_identity() {
            return Err(LatticeError::InvalidSection);
        }
        let snf = smith_normal_form(&self.cokernel);
        let factors = snf.invariant_factors();
        if factors.len() != self.cokernel.rows {
            return Err(LatticeError::RankDeficient { rank: factors.len(), expected: self.cokernel.rows });
        }
        if let Some(d) = factors.into_iter().find(|d| !d.is_one()) {
            return Err(LatticeError::TorsionCokernel(d));
        }
        Ok(())
    }
}

/// Computes `P` and `s` together from one Smith normal form of `F`. The
/// section is deterministic but not canonical: any `s + G P` is another one.
pub fn exact_sequence(f: &IntMatrix) -> Result<ExactSequenceData, LatticeError> {
    let (n, k) = (f.rows, f.cols);
    let snf = smith_normal_form(f);
    let factors = snf.invariant_factors();
    if factors.len() < k {
        return Err(LatticeError::RankDeficient { rank: factors.len(), expected: k });
    }
    if let Some(d) = factors.iter().find(|d| !d.is_one()) {
        return Err(LatticeError::TorsionCokernel(d.clone()));
    }
    // U F V = [I; 0]  =>  rows k.. of U kill F, and V * (rows ..k of U) is a left inverse.
    let cokernel = snf.u.select_rows(k..n);
    let section = &snf.v * &snf.u.select_rows(0..k);
    Ok(ExactSequenceData { weights: f.clone(), cokernel, section })
}

pub fn cokernel_map(f: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    exact_sequence(f).map(|e| e.cokernel)
}

pub fn section(f: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    exact_sequence(f).map(|e| e.section)
}

/// Divides out the gcd of the entries, keeping the direction.
pub fn primitive(v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn det2(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}
