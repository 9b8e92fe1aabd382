use alloc::vec::Vec;
use core::fmt;

use super::{BitMatrix, Series, SeriesError};

/// Dense matrix of [`Series`] sharing one truncation order.
#[derive(Clone, PartialEq, Eq)]
pub struct SeriesMatrix {
    rows: usize,
    cols: usize,
    n: usize,
    entries: Vec<Series>,
}

impl SeriesMatrix {
    pub fn zeros(rows: usize, cols: usize, n: usize) -> Self {
        SeriesMatrix { rows, cols, n, entries: alloc::vec![Series::zero(n); rows * cols] }
    }

    pub fn identity(dim: usize, n: usize) -> Self {
        let mut m = Self::zeros(dim, dim, n);
        for i in 0..dim {
            m.set(i, i, Series::one(n));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, n: usize, mut f: impl FnMut(usize, usize) -> Series) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.trunc_order(), n, "entry truncation order differs");
                entries.push(e);
            }
        }
        SeriesMatrix { rows, cols, n, entries }
    }

    /// Row-major construction from exponent lists.
    pub fn from_exponent_rows(rows: &[Vec<Vec<usize>>], n: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, n, |i, j| Series::from_exponents(rows[i][j].iter().copied(), n))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn trunc_order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Series {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Series {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Series) {
        assert_eq!(s.trunc_order(), self.n, "entry truncation order differs");
        self.entries[r * self.cols + c] = s;
    }

    pub fn column(&self, c: usize) -> Vec<Series> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Series::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.n, |r, c| self.get(c, r).clone())
    }

    /// Reinterprets every entry at truncation order `n`.
    pub fn with_order(&self, n: usize) -> Self {
        Self::from_fn(self.rows, self.cols, n, |r, c| self.get(r, c).with_order(n))
    }

    pub fn checked_mul(&self, other: &SeriesMatrix) -> Result<SeriesMatrix, SeriesError> {
        if self.n != other.n {
            return Err(SeriesError::TruncationMismatch(self.n, other.n));
        }
        if self.cols != other.rows {
            return Err(SeriesError::DimensionMismatch);
        }
        let mut out = Self::zeros(self.rows, other.cols, self.n);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        *out.get_mut(i, j) += &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &SeriesMatrix) -> Result<SeriesMatrix, SeriesError> {
        if self.n != other.n {
            return Err(SeriesError::TruncationMismatch(self.n, other.n));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(SeriesError::DimensionMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Series]) -> Result<Vec<Series>, SeriesError> {
        if v.len() != self.cols {
            return Err(SeriesError::DimensionMismatch);
        }
        let mut out = alloc::vec![Series::zero(self.n); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let prod = self.get(i, j).checked_mul(x)?;
                *o += &prod;
            }
        }
        Ok(out)
    }

    /// Reduction mod `U`.
    pub fn mod_u(&self) -> BitMatrix {
        let mut b = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c).coeff(0) {
                    b.set(r, c, true);
                }
            }
        }
        b
    }

    /// Inverse by Gauss-Jordan elimination on unit pivots.
    pub fn inverse(&self) -> Result<SeriesMatrix, SeriesError> {
        if self.rows != self.cols {
            return Err(SeriesError::NotSquare);
        }
        let d = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(d, self.n);
        for k in 0..d {
            let p = (k..d).find(|&r| a.get(r, k).is_unit()).ok_or(SeriesError::Singular)?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let w = a.get(k, k).inverse()?;
            a.scale_row(k, &w);
            inv.scale_row(k, &w);
            for r in 0..d {
                if r != k && !a.get(r, k).is_zero() {
                    let c = a.get(r, k).clone();
                    a.add_row_multiple(r, k, &c);
                    inv.add_row_multiple(r, k, &c);
                }
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, w: &Series) {
        for c in 0..self.cols {
            let x = self.get(r, c) * w;
            self.set(r, c, x);
        }
    }

    pub(crate) fn scale_col(&mut self, c: usize, w: &Series) {
        for r in 0..self.rows {
            let x = self.get(r, c) * w;
            self.set(r, c, x);
        }
    }

    /// `row[dst] += f * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Series) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if !s.is_zero() {
                let x = s * f;
                *self.get_mut(dst, c) += &x;
            }
        }
    }

    /// `col[dst] += f * col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, f: &Series) {
        for r in 0..self.rows {
            let s = self.get(r, src);
            if !s.is_zero() {
                let x = s * f;
                *self.get_mut(r, dst) += &x;
            }
        }
    }
}

impl fmt::Debug for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SeriesMatrix {}x{} mod U^{} [", self.rows, self.cols, self.n)?;
        for r in 0..self.rows {
            f.write_str("  ")?;
            for c in 0..self.cols {
                write!(f, "[{}] ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        f.write_str("]")
    }
}
