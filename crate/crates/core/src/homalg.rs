//! Homology of finite free complexes over `F₂[[U]]/U^N`, three-term mapping cones
//! and the field-reduction acyclicity test.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_rational::Rational64;

use crate::useries::{smith_normal_form, Series, SeriesError, SeriesMatrix, DEFAULT_GUARD};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HomAlgError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("differential is not square")]
    NotSquare,
    #[error("expected {expected} gradings, got {got}")]
    GradingCount { expected: usize, got: usize },
    #[error("differential does not square to zero")]
    NotDifferential,
    #[error("entry ({row}, {col}) is not homogeneous of degree -1")]
    NotHomogeneous { row: usize, col: usize },
    #[error("torsion exponent {exponent} lies within the guard band")]
    UnstableTorsion { exponent: usize },
    #[error("map does not commute with the differentials")]
    NotChainMap,
    #[error("H0 is not a nullhomotopy of f1 f0")]
    NotNullhomotopy,
    #[error("field reduction and truncated homology disagree on acyclicity")]
    NakayamaViolation,
}

/// A finitely generated free complex `(C, ∂)`; column `j` of `∂` is the image of generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    differential: SeriesMatrix,
    gradings: Option<Vec<Rational64>>,
}

impl FiniteComplex {
    /// Checks `∂² = 0` and, when gradings are given, that every entry is a monomial of degree −1.
    pub fn new(differential: SeriesMatrix, gradings: Option<Vec<Rational64>>) -> Result<Self, HomAlgError> {
        if differential.rows() != differential.cols() {
            return Err(HomAlgError::NotSquare);
        }
        let dim = differential.rows();
        if let Some(g) = &gradings {
            if g.len() != dim {
                return Err(HomAlgError::GradingCount { expected: dim, got: g.len() });
            }
            for row in 0..dim {
                for col in 0..dim {
                    let e = differential.get(row, col);
                    let Some(v) = e.valuation() else { continue };
                    let monomial = e.weight() == 1;
                    if !monomial || g[row] - Rational64::from_integer(2 * v as i64) != g[col] - 1 {
                        return Err(HomAlgError::NotHomogeneous { row, col });
                    }
                }
            }
        }
        if !differential.checked_mul(&differential)?.is_zero() {
            return Err(HomAlgError::NotDifferential);
        }
        Ok(FiniteComplex { differential, gradings })
    }

    pub fn ungraded(differential: SeriesMatrix) -> Result<Self, HomAlgError> {
        Self::new(differential, None)
    }

    pub fn zero(dim: usize, n: usize) -> Self {
        FiniteComplex { differential: SeriesMatrix::zeros(dim, dim, n), gradings: None }
    }

    pub fn dim(&self) -> usize {
        self.differential.rows()
    }

    pub fn trunc_order(&self) -> usize {
        self.differential.trunc_order()
    }

    pub fn differential(&self) -> &SeriesMatrix {
        &self.differential
    }

    pub fn gradings(&self) -> Option<&[Rational64]> {
        self.gradings.as_deref()
    }

    pub fn with_order(&self, n: usize) -> Result<Self, HomAlgError> {
        Self::new(self.differential.with_order(n), self.gradings.clone())
    }

    /// `dim H(C ⊗ F₂)` by rank-nullity on `∂ mod U`.
    pub fn field_homology_dim(&self) -> usize {
        self.dim() - 2 * self.differential.mod_u().rank()
    }
}

/// `H(C) ≅ ⊕ R_{(g)} ⊕ ⊕ (R/U^a)_{(g)}`; gradings are `None` for ungraded complexes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyDecomp {
    pub free: Vec<Option<Rational64>>,
    /// `(a, g)`: a summand annihilated by `U^a` whose top generator sits in grading `g`.
    pub torsion: Vec<(usize, Option<Rational64>)>,
}

impl HomologyDecomp {
    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    /// Torsion exponents, sorted.
    pub fn torsion_exponents(&self) -> Vec<usize> {
        let mut e: Vec<usize> = self.torsion.iter().map(|t| t.0).collect();
        e.sort_unstable();
        e
    }

    /// Free and torsion parts with gradings forgotten.
    pub fn ungraded(&self) -> HomologyDecomp {
        let mut torsion: Vec<_> = self.torsion.iter().map(|&(a, _)| (a, None)).collect();
        torsion.sort();
        HomologyDecomp { free: alloc::vec![None; self.free.len()], torsion }
    }

    /// `dim H(C ⊗ F₂)` predicted by the decomposition.
    pub fn field_dim(&self) -> usize {
        self.free.len() + 2 * self.torsion.len()
    }
}

pub fn homology(c: &FiniteComplex) -> Result<HomologyDecomp, HomAlgError> {
    homology_with_guard(c, DEFAULT_GUARD)
}

pub fn homology_with_guard(c: &FiniteComplex, guard: usize) -> Result<HomologyDecomp, HomAlgError> {
    let n = c.trunc_order();
    let snf = smith_normal_form(&c.differential);
    let label = |idx: usize| c.gradings.as_ref().map(|g| g[idx]);
    let rank = snf.rank();

    let mut torsion = Vec::new();
    for (k, &d) in snf.d.iter().enumerate().take(rank) {
        if d + guard >= n {
            return Err(HomAlgError::UnstableTorsion { exponent: d });
        }
        if d > 0 {
            torsion.push((d, label(snf.row_order[k])));
        }
    }

    // cycles: columns past the rank; boundaries: rows before it
    let mut count: BTreeMap<Option<Rational64>, i64> = BTreeMap::new();
    for &j in &snf.col_order[rank..] {
        *count.entry(label(j)).or_default() += 1;
    }
    for &i in &snf.row_order[..rank] {
        *count.entry(label(i)).or_default() -= 1;
    }
    let mut free = Vec::new();
    for (g, m) in count {
        debug_assert!(m >= 0, "negative free multiplicity");
        for _ in 0..m.max(0) {
            free.push(g);
        }
    }
    torsion.sort();
    Ok(HomologyDecomp { free, torsion })
}

fn commutes(f: &SeriesMatrix, src: &FiniteComplex, dst: &FiniteComplex) -> Result<bool, HomAlgError> {
    if f.rows() != dst.dim() || f.cols() != src.dim() {
        return Err(SeriesError::DimensionMismatch.into());
    }
    Ok(dst.differential.checked_mul(f)? == f.checked_mul(&src.differential)?)
}

/// Total complex of `C0 → C1 → C2` with `∂_M = [[∂0,0,0],[f0,∂1,0],[H0,f1,∂2]]`.
///
/// Gradings, when all three are graded, are shifted by `+2`, `+1`, `0`.
pub fn mapping_cone3(
    c0: &FiniteComplex,
    c1: &FiniteComplex,
    c2: &FiniteComplex,
    f0: &SeriesMatrix,
    f1: &SeriesMatrix,
    h0: &SeriesMatrix,
) -> Result<FiniteComplex, HomAlgError> {
    if !commutes(f0, c0, c1)? || !commutes(f1, c1, c2)? {
        return Err(HomAlgError::NotChainMap);
    }
    if h0.rows() != c2.dim() || h0.cols() != c0.dim() {
        return Err(SeriesError::DimensionMismatch.into());
    }
    let lhs = c2.differential.checked_mul(h0)?.checked_add(&h0.checked_mul(&c0.differential)?)?;
    if lhs != f1.checked_mul(f0)? {
        return Err(HomAlgError::NotNullhomotopy);
    }

    let (d0, d1, d2) = (c0.dim(), c1.dim(), c2.dim());
    let n = c0.trunc_order();
    let blocks: [(usize, usize, &SeriesMatrix); 6] = [
        (0, 0, &c0.differential),
        (d0, 0, f0),
        (d0 + d1, 0, h0),
        (d0, d0, &c1.differential),
        (d0 + d1, d0, f1),
        (d0 + d1, d0 + d1, &c2.differential),
    ];
    let total = d0 + d1 + d2;
    let mut m = SeriesMatrix::zeros(total, total, n);
    for (r0, c0_, b) in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                m.set(r0 + r, c0_ + c, b.get(r, c).clone());
            }
        }
    }

    let gradings = match (&c0.gradings, &c1.gradings, &c2.gradings) {
        (Some(g0), Some(g1), Some(g2)) => Some(
            g0.iter()
                .map(|g| g + 2)
                .chain(g1.iter().map(|g| g + 1))
                .chain(g2.iter().copied())
                .collect(),
        ),
        _ => None,
    };
    FiniteComplex::new(m, gradings)
}

/// Acyclicity of `C ⊗ F₂`, cross-checked against the truncated homology of `C`.
pub fn is_acyclic_nakayama(c: &FiniteComplex) -> Result<bool, HomAlgError> {
    let field_acyclic = c.field_homology_dim() == 0;
    let ring_acyclic = homology(c)?.is_zero();
    if field_acyclic != ring_acyclic {
        return Err(HomAlgError::NakayamaViolation);
    }
    Ok(field_acyclic)
}

/// `α·Id` for `α ∈ F₂[[U]]`.
pub fn scalar_matrix(alpha: &Series, dim: usize) -> SeriesMatrix {
    SeriesMatrix::from_fn(dim, dim, alpha.trunc_order(), |r, c| {
        if r == c {
            alpha.clone()
        } else {
            Series::zero(alpha.trunc_order())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: usize, n: usize) -> Series {
        Series::monomial(e, n)
    }

    #[test]
    fn zero_differential_is_free() {
        let h = homology(&FiniteComplex::zero(3, 16)).unwrap();
        assert_eq!(h.free_rank(), 3);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn single_arrow_u_squared() {
        let mut d = SeriesMatrix::zeros(2, 2, 16);
        d.set(1, 0, mono(2, 16));
        let g = alloc::vec![Rational64::from_integer(-3), Rational64::from_integer(0)];
        let c = FiniteComplex::new(d, Some(g)).unwrap();
        let h = homology(&c).unwrap();
        assert!(h.free.is_empty());
        assert_eq!(h.torsion, [(2, Some(Rational64::from_integer(0)))]);
        assert_eq!(c.field_homology_dim(), 2);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let mut d = SeriesMatrix::zeros(2, 2, 16);
        d.set(1, 0, Series::from_exponents([0, 1], 16));
        let g = alloc::vec![Rational64::from_integer(1), Rational64::from_integer(0)];
        assert_eq!(FiniteComplex::new(d, Some(g)), Err(HomAlgError::NotHomogeneous { row: 1, col: 0 }));
    }

    #[test]
    fn not_a_differential() {
        let mut d = SeriesMatrix::zeros(2, 2, 16);
        d.set(0, 1, mono(0, 16));
        d.set(1, 0, mono(0, 16));
        assert_eq!(FiniteComplex::ungraded(d), Err(HomAlgError::NotDifferential));
    }

    #[test]
    fn unstable_torsion_reported() {
        let mut d = SeriesMatrix::zeros(2, 2, 16);
        d.set(1, 0, mono(10, 16));
        let c = FiniteComplex::ungraded(d).unwrap();
        assert_eq!(homology(&c), Err(HomAlgError::UnstableTorsion { exponent: 10 }));
    }

    #[test]
    fn cone_of_isomorphism_is_acyclic() {
        let n = 16;
        let c = FiniteComplex::zero(2, n);
        let z = FiniteComplex::zero(0, n);
        let id = SeriesMatrix::identity(2, n);
        let m = mapping_cone3(&c, &c, &z, &id, &SeriesMatrix::zeros(0, 2, n), &SeriesMatrix::zeros(0, 2, n)).unwrap();
        assert!(is_acyclic_nakayama(&m).unwrap());
    }

    #[test]
    fn cone_of_zero_maps_is_not_acyclic() {
        let n = 16;
        let c = FiniteComplex::zero(1, n);
        let zero = SeriesMatrix::zeros(1, 1, n);
        let m = mapping_cone3(&c, &c, &c, &zero, &zero, &zero).unwrap();
        assert!(!is_acyclic_nakayama(&m).unwrap());
        assert_eq!(homology(&m).unwrap().free_rank(), 3);
    }

    #[test]
    fn bad_nullhomotopy() {
        let n = 16;
        let c = FiniteComplex::zero(1, n);
        let id = SeriesMatrix::identity(1, n);
        let zero = SeriesMatrix::zeros(1, 1, n);
        assert_eq!(mapping_cone3(&c, &c, &c, &id, &id, &zero), Err(HomAlgError::NotNullhomotopy));
    }

    #[test]
    fn u_arrow_field_vs_ring() {
        let mut d = SeriesMatrix::zeros(2, 2, 16);
        d.set(1, 0, mono(1, 16));
        let c = FiniteComplex::ungraded(d).unwrap();
        assert!(!is_acyclic_nakayama(&c).unwrap());
        assert_eq!(homology(&c).unwrap().torsion_exponents(), [1]);
    }
}
