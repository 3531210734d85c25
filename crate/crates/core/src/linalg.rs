//! Exact linear algebra over `Q(α)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};

/// A dense `rows × cols` matrix of field elements, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.same_field(&entries[0])) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// A one-column matrix.
    pub fn column(entries: Vec<FieldElement>) -> Result<Self> {
        Self::new(entries.len(), 1, entries)
    }

    pub fn zeros(field: &Arc<NumberField>, rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![FieldElement::zero(field); rows * cols] }
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = FieldElement::one(field);
        }
        m
    }

    pub fn diagonal(diag: Vec<FieldElement>) -> Result<Self> {
        let n = diag.len();
        let field = Arc::clone(diag.first().ok_or_else(|| Error::Shape("empty diagonal".into()))?.field());
        let mut m = Self::zeros(&field, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            if !d.same_field(&m.entries[0]) {
                return Err(Error::FieldMismatch);
            }
            m.entries[i * n + i] = d;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.entries[0].field()
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    fn require_same(&self, other: &Self) -> Result<()> {
        if self.entries[0].same_field(&other.entries[0]) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("cannot subtract matrices of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    /// Entrywise conjugate of the transpose.
    pub fn conjugate_transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).conjugate());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    fn rows_vec(&self) -> Vec<Vec<FieldElement>> {
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    /// Exact determinant by fraction-carrying elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn determinant(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.rows_vec();
        let mut det = FieldElement::one(self.field());
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(FieldElement::zero(self.field()));
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inverse()?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &inv;
                for c in col..n {
                    let t = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Solves `self · x = b` for square `self` by Gaussian elimination,
    /// pivoting on the first nonzero entry of each column.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &Self) -> Result<Self> {
        self.require_same(b)?;
        if self.rows != self.cols {
            return Err(Error::Shape(format!("{}x{} system is not square", self.rows, self.cols)));
        }
        if b.rows != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side has {} rows, expected {}",
                b.rows, self.rows
            )));
        }
        let n = self.rows;
        let k = b.cols;
        let mut a = self.rows_vec();
        let mut rhs = b.rows_vec();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, col);
            rhs.swap(p, col);
            let inv = a[col][col].inverse()?;
            for c in col..n {
                a[col][c] = &a[col][c] * &inv;
            }
            for c in 0..k {
                rhs[col][c] = &rhs[col][c] * &inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in col..n {
                    let t = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
                for c in 0..k {
                    let t = &factor * &rhs[col][c];
                    rhs[r][c] = &rhs[r][c] - &t;
                }
            }
        }
        Self::new(n, k, rhs.into_iter().flatten().collect())
    }

    /// Solves the normal equations `(Aᴴ A) x = Aᴴ b` for `rows ≥ cols`.
    pub fn least_squares(&self, b: &Self) -> Result<Self> {
        if self.rows < self.cols {
            return Err(Error::Shape(format!(
                "least squares needs rows >= cols, got {}x{}",
                self.rows, self.cols
            )));
        }
        if b.rows != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side has {} rows, expected {}",
                b.rows, self.rows
            )));
        }
        let ah = self.conjugate_transpose();
        ah.mul(self)?.solve(&ah.mul(b)?)
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.cols)).finish()
    }
}
