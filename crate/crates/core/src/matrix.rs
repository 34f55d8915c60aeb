//! Sparse matrices over [`CycScalar`].

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::{CycScalar, FieldSpec};
use crate::error::{Error, Result};

/// A sparse column vector: index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, CycScalar>;

/// Row-major sparse matrix. Stored entries are never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, CycScalar>>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        Self::diagonal(field, (0..n).map(|_| field.one()))
    }

    pub fn diagonal(field: &FieldSpec, entries: impl IntoIterator<Item = CycScalar>) -> Self {
        let entries: Vec<CycScalar> = entries.into_iter().collect();
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, x) in entries.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(field: &FieldSpec, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(field, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, field.one());
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
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

    pub fn get(&self, i: usize, j: usize) -> CycScalar {
        self.data[i].get(&j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycScalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &CycScalar) {
        if x.is_zero() {
            return;
        }
        let row = &mut self.data[i];
        match row.get_mut(&j) {
            Some(v) => {
                *v += x;
                if v.is_zero() {
                    row.remove(&j);
                }
            }
            None => {
                row.insert(j, x.clone());
            }
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, CycScalar> {
        &self.data[i]
    }

    /// Iterates over nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycScalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r.get(&i).map_or(false, CycScalar::is_one))
    }

    pub fn is_diagonal(&self) -> bool {
        self.data.iter().enumerate().all(|(i, r)| r.keys().all(|&j| j == i))
    }

    /// True when every entry is free of the symbolic `a`.
    pub fn is_a_free(&self) -> bool {
        self.entries().all(|(_, _, x)| x.is_a_free())
    }

    /// `Some(c)` if the matrix equals `c * Id`.
    pub fn scalar_multiple_of_identity(&self) -> Option<CycScalar> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        let c = self.get(0, 0);
        (1..self.rows).all(|i| self.get(i, i) == c).then_some(c)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (i, j, x) in other.entries() {
            out.add_at(i, j, x);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.try_add(&other.scale(&-self.field.one()))
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, CycScalar> = BTreeMap::new();
            for (k, x) in row {
                for (j, y) in &other.data[*k] {
                    let p = x * y;
                    match acc.get_mut(j) {
                        Some(v) => *v += &p,
                        None => {
                            acc.insert(*j, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.try_sub(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: &CycScalar) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols);
        if c.is_zero() {
            return out;
        }
        for (i, row) in self.data.iter().enumerate() {
            out.data[i] = row.iter().map(|(j, x)| (*j, x * c)).collect();
        }
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for (i, j, x) in self.entries() {
            out.data[j].insert(i, x.clone());
        }
        out
    }

    /// Kronecker product; basis `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows * other.rows, self.cols * other.cols);
        for (i, j, x) in self.entries() {
            for (k, l, y) in other.entries() {
                out.data[i * other.rows + k].insert(j * other.cols + l, x * y);
            }
        }
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = self.field.zero();
            for (j, x) in row {
                if let Some(y) = v.get(j) {
                    acc += &(x * y);
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.data.iter().enumerate() {
            if let Some(x) = row.get(&j) {
                out.insert(i, x.clone());
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination.
    ///
    /// Pivots must be units `c * a^k`; a column offering none yields
    /// [`Error::UnsupportedDivision`], a column with no nonzero entry left
    /// yields [`Error::DivisionByZero`].
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut left: Vec<BTreeMap<usize, CycScalar>> = self.data.clone();
        let mut right: Vec<BTreeMap<usize, CycScalar>> = Matrix::identity(&self.field, n).data;
        for col in 0..n {
            let mut best: Option<(usize, usize)> = None;
            let mut saw_nonzero = false;
            for r in col..n {
                if let Some(x) = left[r].get(&col) {
                    saw_nonzero = true;
                    if x.as_monomial().is_some() {
                        let weight = left[r].len() + right[r].len();
                        if best.map_or(true, |(_, w)| weight < w) {
                            best = Some((r, weight));
                        }
                    }
                }
            }
            let (p, _) = match best {
                Some(b) => b,
                None if saw_nonzero => return Err(Error::UnsupportedDivision),
                None => return Err(Error::DivisionByZero),
            };
            left.swap(col, p);
            right.swap(col, p);
            let inv = left[col][&col].invert()?;
            for row in [&mut left[col], &mut right[col]] {
                for v in row.values_mut() {
                    *v = &*v * &inv;
                }
            }
            let (pl, pr) = (left[col].clone(), right[col].clone());
            for r in 0..n {
                if r == col {
                    continue;
                }
                let Some(factor) = left[r].get(&col).cloned() else { continue };
                for (row, piv) in [(&mut left[r], &pl), (&mut right[r], &pr)] {
                    for (j, y) in piv {
                        let d = &factor * y;
                        match row.get_mut(j) {
                            Some(v) => {
                                *v -= &d;
                                if v.is_zero() {
                                    row.remove(j);
                                }
                            }
                            None => {
                                row.insert(*j, -d);
                            }
                        }
                    }
                }
            }
        }
        Ok(Matrix { field: self.field.clone(), rows: n, cols: n, data: right })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, j, x) in self.entries() {
            writeln!(f, "  ({i},{j}) = {x}")?;
        }
        write!(f, "]")
    }
}
