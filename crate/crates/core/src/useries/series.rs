use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul};

use super::SeriesError;

/// A power series over F₂ in one variable `U`, truncated mod `U^N`.
///
/// Bit `e` of the packed word vector is the coefficient of `U^e`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    words: Vec<u64>,
    n: usize,
}

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl Series {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "truncation order must be positive");
        Series { words: alloc::vec![0; word_count(n)], n }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(0, n)
    }

    /// `U^e`, which is zero when `e >= n`.
    pub fn monomial(e: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        if e < n {
            s.words[e / 64] |= 1 << (e % 64);
        }
        s
    }

    /// Builds a series from exponents; repeated exponents cancel in pairs and
    /// exponents `>= n` are dropped.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I, n: usize) -> Self {
        let mut s = Self::zero(n);
        for e in exps {
            s.toggle(e);
        }
        s
    }

    /// `Σ_{e<n} U^e`.
    pub fn all_ones(n: usize) -> Self {
        let mut s = Self::zero(n);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.mask_top();
        s
    }

    #[inline]
    pub fn trunc_order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coeff(&self, e: usize) -> bool {
        e < self.n && (self.words[e / 64] >> (e % 64)) & 1 == 1
    }

    /// Adds `U^e` in place (no-op past the truncation order).
    #[inline]
    pub fn toggle(&mut self, e: usize) {
        if e < self.n {
            self.words[e / 64] ^= 1 << (e % 64);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.valuation() == Some(0) && self.weight() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.coeff(0)
    }

    /// Lowest exponent present, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Valuation with zero mapped to `N`.
    pub fn val_or_n(&self) -> usize {
        self.valuation().unwrap_or(self.n)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Ascending exponent list.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Reinterprets at another truncation order, dropping or zero-padding.
    pub fn with_order(&self, n: usize) -> Self {
        let mut s = Self::zero(n);
        let m = s.words.len().min(self.words.len());
        s.words[..m].copy_from_slice(&self.words[..m]);
        s.mask_top();
        s
    }

    /// Multiplication by `U^k`.
    pub fn shl(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        xor_shifted(&mut out.words, &self.words, k);
        out.mask_top();
        out
    }

    /// Division by `U^k`, dropping the `k` lowest coefficients.
    pub fn shr(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        let (ws, bs) = (k / 64, k % 64);
        let len = self.words.len();
        for i in 0..len {
            let src = i + ws;
            if src >= len {
                break;
            }
            let mut w = self.words[src] >> bs;
            if bs != 0 && src + 1 < len {
                w |= self.words[src + 1] << (64 - bs);
            }
            out.words[i] = w;
        }
        out
    }

    pub fn checked_add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.same_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.same_order(other)?;
        let mut out = Self::zero(self.n);
        // shift-and-xor over the sparser operand
        let (a, b) = if self.weight() <= other.weight() { (self, other) } else { (other, self) };
        for e in a.exponents() {
            xor_shifted(&mut out.words, &b.words, e);
        }
        out.mask_top();
        Ok(out)
    }

    /// Multiplicative inverse mod `U^N` by long division of `1`.
    pub fn inverse(&self) -> Result<Series, SeriesError> {
        if !self.is_unit() {
            return Err(SeriesError::NotAUnit);
        }
        let mut rem = Self::one(self.n);
        let mut out = Self::zero(self.n);
        for e in 0..self.n {
            if rem.coeff(e) {
                out.toggle(e);
                xor_shifted(&mut rem.words, &self.words, e);
                rem.mask_top();
            }
        }
        Ok(out)
    }

    fn same_order(&self, other: &Series) -> Result<(), SeriesError> {
        if self.n != other.n {
            return Err(SeriesError::TruncationMismatch(self.n, other.n));
        }
        Ok(())
    }

    fn mask_top(&mut self) {
        let r = self.n % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

/// `dst ^= src << k`, words past the end of `dst` are discarded.
fn xor_shifted(dst: &mut [u64], src: &[u64], k: usize) {
    let (ws, bs) = (k / 64, k % 64);
    let len = dst.len();
    for (i, &w) in src.iter().enumerate() {
        let t = i + ws;
        if t >= len {
            break;
        }
        if w == 0 {
            continue;
        }
        dst[t] ^= w << bs;
        if bs != 0 && t + 1 < len {
            dst[t + 1] ^= w >> (64 - bs);
        }
    }
}

/// `a * b`, failing on mismatched truncation orders.
pub fn series_mul(a: &Series, b: &Series) -> Result<Series, SeriesError> {
    a.checked_mul(b)
}

/// `a⁻¹`, failing with [`SeriesError::NotAUnit`] if `a(0) = 0`.
pub fn series_inverse(a: &Series) -> Result<Series, SeriesError> {
    a.inverse()
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.checked_add(rhs).expect("series truncation orders differ")
    }
}

impl AddAssign<&Series> for Series {
    fn add_assign(&mut self, rhs: &Series) {
        assert_eq!(self.n, rhs.n, "series truncation orders differ");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.checked_mul(rhs).expect("series truncation orders differ")
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(U^{})", self, self.n)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = self.exponents();
        if exps.is_empty() {
            return f.write_str("0");
        }
        for (idx, e) in exps.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("U")?,
                _ => write!(f, "U^{}", e)?,
            }
        }
        Ok(())
    }
}
