//! Exact rational scalars, vectors and dense matrices.
//!
//! Every decategorified quantity in the crate lives here. Rationals are
//! arbitrary precision and always in lowest terms; they render as `num/den`
//! with the denominator omitted when it is one.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Report format: `num/den`, or just `num` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`rat_to_string`].
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QVector {
    entries: Vec<Rat>,
}

impl QVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        QVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        QVector { entries: vec![Rat::zero(); dim] }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        QVector { entries: values.iter().map(|&v| rat(v)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(rat_to_string).collect()
    }

    /// Column matrix with this vector as its only column.
    pub fn as_column(&self) -> QMatrix {
        QMatrix { rows: self.dim(), cols: 1, entries: self.entries.clone() }
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rat::one();
        }
        m
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, entries: rows.iter().flatten().map(|&v| rat(v)).collect() }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(QMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, v) in columns.iter().enumerate() {
            if v.dim() != rows {
                return Err(Error::Shape(format!("column {j} has dimension {}", v.dim())));
            }
            for i in 0..rows {
                m.entries[i * columns.len() + j] = v.entries[i].clone();
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

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector::new((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rat) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &QVector) -> Result<QVector> {
        if self.cols != v.dim() {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} matrix to vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let mut out = vec![Rat::zero(); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            for (a, b) in self.row(r).iter().zip(&v.entries) {
                if !a.is_zero() && !b.is_zero() {
                    *slot += a * b;
                }
            }
        }
        Ok(QVector::new(out))
    }

    /// Conjugates by a basis permutation: result\[i\]\[j\] = self\[perm\[i\]\]\[perm\[j\]\].
    pub fn permuted(&self, perm: &[usize]) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        assert_eq!(perm.len(), self.rows);
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.get(perm[i], perm[j]).clone();
            }
        }
        out
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(rat_to_string).collect()).collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_string_rows();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in rows {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Exact matrix product `a * b`.
pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = QMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if !bkj.is_zero() {
                    out.entries[i * b.cols + j] += aik * bkj;
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product; block (i, j) is `a[i][j] * b`.
pub fn kronecker(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = QMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.entries[(i * b.rows + k) * cols + j * b.cols + l] = aij * b.get(k, l);
                }
            }
        }
    }
    out
}

pub fn kronecker_vec(a: &QVector, b: &QVector) -> QVector {
    let mut out = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.entries {
        for y in &b.entries {
            out.push(x * y);
        }
    }
    QVector::new(out)
}

/// Reduced row echelon form with the list of pivot columns.
///
/// Rows are inserted one at a time and reduced against the pivots found so
/// far, which keeps sparse equation systems cheap.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let cols = m.cols;
    let mut pivots: Vec<(usize, Vec<Rat>)> = Vec::new();
    for r in 0..m.rows {
        let mut row: Vec<Rat> = m.row(r).to_vec();
        for (pc, prow) in &pivots {
            if row[*pc].is_zero() {
                continue;
            }
            let factor = row[*pc].clone();
            for (x, p) in row.iter_mut().zip(prow) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let inv = row[lead].recip();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, prow) in pivots.iter_mut() {
            if prow[lead].is_zero() {
                continue;
            }
            let factor = prow[lead].clone();
            for (x, p) in prow.iter_mut().zip(&row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push((lead, row));
    }
    pivots.sort_by_key(|(c, _)| *c);
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let rows: Vec<Vec<Rat>> = pivots.into_iter().map(|(_, r)| r).collect();
    let mut out = QMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out.entries[i * cols + j] = x;
        }
    }
    (out, pivot_cols)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of the kernel `{v : m v = 0}`.
///
/// One vector per free column, in increasing column order, with a 1 in its
/// free column and zeros in the other free columns.
pub fn nullspace(m: &QMatrix) -> Vec<QVector> {
    let (reduced, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rat::zero(); m.cols];
            v[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                let x = reduced.get(i, free);
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            QVector::new(v)
        })
        .collect()
}

/// True when every entry is a nonnegative integer.
pub fn is_natural(m: &QMatrix) -> bool {
    m.entries.iter().all(|x| x.is_integer() && !x.is_negative())
}
