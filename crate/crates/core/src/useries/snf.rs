use alloc::vec::Vec;

use super::{Series, SeriesError, SeriesMatrix};

/// Default number of top coefficients treated as truncation noise.
pub const DEFAULT_GUARD: usize = 8;

/// `S · diag(U^d) · T = M` over `F₂[[U]]/U^N`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub s: SeriesMatrix,
    /// Diagonal valuations, weakly increasing; `N` encodes a zero entry.
    pub d: Vec<usize>,
    pub t: SeriesMatrix,
    pub t_inv: SeriesMatrix,
    /// Original row index whose grading label ends up at each position.
    pub row_order: Vec<usize>,
    /// Original column index whose grading label ends up at each position.
    pub col_order: Vec<usize>,
}

impl SnfResult {
    pub fn trunc_order(&self) -> usize {
        self.s.trunc_order()
    }

    /// The `rows × cols` diagonal factor.
    pub fn diagonal(&self) -> SeriesMatrix {
        let n = self.trunc_order();
        let mut m = SeriesMatrix::zeros(self.s.cols(), self.t.rows(), n);
        for (k, &v) in self.d.iter().enumerate() {
            m.set(k, k, Series::monomial(v, n));
        }
        m
    }

    /// Largest diagonal valuation below `N`.
    pub fn max_finite(&self) -> Option<usize> {
        let n = self.trunc_order();
        self.d.iter().copied().filter(|&v| v < n).max()
    }

    /// Number of diagonal entries that are nonzero mod `U^N`.
    pub fn rank(&self) -> usize {
        let n = self.trunc_order();
        self.d.iter().filter(|&&v| v < n).count()
    }
}

/// Smith normal form with pivot order (valuation, row, column).
pub fn smith_normal_form(m: &SeriesMatrix) -> SnfResult {
    let (rows, cols, n) = (m.rows(), m.cols(), m.trunc_order());
    let mut a = m.clone();
    let mut s = SeriesMatrix::identity(rows, n);
    let mut t = SeriesMatrix::identity(cols, n);
    let mut t_inv = SeriesMatrix::identity(cols, n);
    let mut row_order: Vec<usize> = (0..rows).collect();
    let mut col_order: Vec<usize> = (0..cols).collect();
    let mut d = Vec::with_capacity(rows.min(cols));

    for k in 0..rows.min(cols) {
        let mut best = (n, k, k);
        for i in k..rows {
            for j in k..cols {
                let v = a.get(i, j).val_or_n();
                if v < best.0 {
                    best = (v, i, j);
                }
            }
        }
        let (v, pi, pj) = best;
        if v == n {
            d.resize(rows.min(cols), n);
            break;
        }

        a.swap_rows(k, pi);
        s.swap_cols(k, pi);
        row_order.swap(k, pi);
        a.swap_cols(k, pj);
        t.swap_rows(k, pj);
        t_inv.swap_cols(k, pj);
        col_order.swap(k, pj);

        let w = a.get(k, k).shr(v).inverse().expect("pivot quotient is a unit");
        a.scale_row(k, &w);
        s.scale_col(k, &w.inverse().expect("unit"));

        for i in k + 1..rows {
            if a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k).shr(v);
            a.add_row_multiple(i, k, &f);
            s.add_col_multiple(k, i, &f);
        }
        for j in k + 1..cols {
            if a.get(k, j).is_zero() {
                continue;
            }
            let f = a.get(k, j).shr(v);
            a.add_col_multiple(j, k, &f);
            t.add_row_multiple(k, j, &f);
            t_inv.add_col_multiple(j, k, &f);
        }
        d.push(v);
    }

    SnfResult { s, d, t, t_inv, row_order, col_order }
}

/// Kernel generator with the default guard.
pub fn kernel_generator(m: &SeriesMatrix) -> Result<Vec<Series>, SeriesError> {
    kernel_generator_with_guard(m, DEFAULT_GUARD)
}

/// The column of `T⁻¹` at the unique diagonal slot with valuation `>= N - guard`,
/// divided by the largest common power of `U`.
pub fn kernel_generator_with_guard(m: &SeriesMatrix, guard: usize) -> Result<Vec<Series>, SeriesError> {
    if m.rows() != m.cols() {
        return Err(SeriesError::NotSquare);
    }
    let snf = smith_normal_form(m);
    kernel_from_snf(&snf, guard)
}

pub(crate) fn kernel_from_snf(snf: &SnfResult, guard: usize) -> Result<Vec<Series>, SeriesError> {
    let n = snf.trunc_order();
    let margin = n.saturating_sub(guard);
    let hits: Vec<usize> = (0..snf.d.len()).filter(|&k| snf.d[k] >= margin).collect();
    let k = match hits.as_slice() {
        [] => return Err(SeriesError::NoKernel),
        [k] => *k,
        _ => return Err(SeriesError::AmbiguousKernel(hits.len())),
    };
    let v = snf.t_inv.column(k);
    let shift = v.iter().map(Series::val_or_n).min().unwrap_or(0);
    Ok(if shift == 0 || shift == n { v } else { v.iter().map(|x| x.shr(shift)).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(r: &SnfResult) -> SeriesMatrix {
        r.s.checked_mul(&r.diagonal()).unwrap().checked_mul(&r.t).unwrap()
    }

    #[test]
    fn identity_has_unit_diagonal() {
        let m = SeriesMatrix::identity(4, 32);
        let r = smith_normal_form(&m);
        assert_eq!(r.d, [0, 0, 0, 0]);
        assert_eq!(reconstruct(&r), m);
    }

    #[test]
    fn diag_u_one_reorders() {
        let m = SeriesMatrix::from_exponent_rows(&[alloc::vec![alloc::vec![1], alloc::vec![]], alloc::vec![alloc::vec![], alloc::vec![0]]], 16);
        let r = smith_normal_form(&m);
        assert_eq!(r.d, [0, 1]);
        assert_eq!(reconstruct(&r), m);
        assert_eq!(r.row_order, [1, 0]);
    }

    #[test]
    fn all_ones_two_by_two() {
        let one = alloc::vec![0];
        let m = SeriesMatrix::from_exponent_rows(&[alloc::vec![one.clone(), one.clone()], alloc::vec![one.clone(), one]], 16);
        let r = smith_normal_form(&m);
        assert_eq!(r.d, [0, 16]);
        assert_eq!(reconstruct(&r), m);
        let v = kernel_generator(&m).unwrap();
        assert!(v.iter().all(Series::is_one));
    }

    #[test]
    fn kernel_edge_cases() {
        let zero = SeriesMatrix::zeros(1, 1, 16);
        let v = kernel_generator(&zero).unwrap();
        assert!(v[0].is_one());
        let one = SeriesMatrix::identity(1, 16);
        assert_eq!(kernel_generator(&one), Err(SeriesError::NoKernel));
        assert_eq!(kernel_generator(&SeriesMatrix::zeros(2, 2, 16)), Err(SeriesError::AmbiguousKernel(2)));
    }

    #[test]
    fn kernel_strips_common_power() {
        // [[U, U]] padded to 2x2 with a zero row: kernel (1, 1)
        let m = SeriesMatrix::from_exponent_rows(
            &[alloc::vec![alloc::vec![1], alloc::vec![1]], alloc::vec![alloc::vec![], alloc::vec![]]],
            16,
        );
        let v = kernel_generator(&m).unwrap();
        assert!(v.iter().all(Series::is_one));
    }
}
