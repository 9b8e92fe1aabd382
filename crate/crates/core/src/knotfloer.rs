//! Knot Floer complexes over `F₂[[W, Z]]` and their specialization along `E_{p,q,k}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_rational::Rational64;

use crate::diagram::SlopeParams;
use crate::homalg::{homology, FiniteComplex, HomAlgError, HomologyDecomp};
use crate::localsys::{grading_exponents, model_module, recover_isomorphism, GenPerm};
use crate::useries::SeriesMatrix;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("arrow refers to generator {0}, which does not exist")]
    BadIndex(usize),
    #[error("arrow {from} -> {to} has no monomials")]
    EmptyArrow { from: usize, to: usize },
    #[error("monomial W^{a} Z^{b} on arrow {from} -> {to} is not of bidegree (-1, -1)")]
    NotHomogeneous { from: usize, to: usize, a: u32, b: u32 },
    #[error("differential does not square to zero")]
    NotDifferential,
    #[error(transparent)]
    HomAlg(#[from] HomAlgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotGenerator {
    pub name: String,
    pub gr_w: Rational64,
    pub gr_z: Rational64,
}

impl KnotGenerator {
    pub fn new(name: &str, gr_w: i64, gr_z: i64) -> Self {
        KnotGenerator { name: name.to_string(), gr_w: gr_w.into(), gr_z: gr_z.into() }
    }

    pub fn alexander(&self) -> Rational64 {
        (self.gr_w - self.gr_z) / 2
    }

    /// `(t/2)·gr_w + (1 − t/2)·gr_z`.
    pub fn t_grading(&self, half_t: Rational64) -> Rational64 {
        half_t * self.gr_w + (Rational64::from_integer(1) - half_t) * self.gr_z
    }
}

/// `∂ from = Σ W^a Z^b · to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotArrow {
    pub from: usize,
    pub to: usize,
    pub monomials: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotComplex {
    generators: Vec<KnotGenerator>,
    arrows: Vec<KnotArrow>,
}

type Poly = BTreeSet<(u32, u32)>;

fn xor_into(p: &mut Poly, m: (u32, u32)) {
    if !p.remove(&m) {
        p.insert(m);
    }
}

impl KnotComplex {
    /// Validates names, indices, bigrading homogeneity and `∂² = 0`.
    pub fn new(generators: Vec<KnotGenerator>, arrows: Vec<KnotArrow>) -> Result<Self, KnotError> {
        let mut names = BTreeSet::new();
        for g in &generators {
            if !names.insert(g.name.as_str()) {
                return Err(KnotError::DuplicateName(g.name.clone()));
            }
        }
        let len = generators.len();
        for arr in &arrows {
            for idx in [arr.from, arr.to] {
                if idx >= len {
                    return Err(KnotError::BadIndex(idx));
                }
            }
            if arr.monomials.is_empty() {
                return Err(KnotError::EmptyArrow { from: arr.from, to: arr.to });
            }
            let (s, t) = (&generators[arr.from], &generators[arr.to]);
            for &(a, b) in &arr.monomials {
                let ok_w = t.gr_w - 2 * a as i64 == s.gr_w - 1;
                let ok_z = t.gr_z - 2 * b as i64 == s.gr_z - 1;
                if !(ok_w && ok_z) {
                    return Err(KnotError::NotHomogeneous { from: arr.from, to: arr.to, a, b });
                }
            }
        }
        let k = KnotComplex { generators, arrows };
        if !k.squares_to_zero() {
            return Err(KnotError::NotDifferential);
        }
        Ok(k)
    }

    pub fn generators(&self) -> &[KnotGenerator] {
        &self.generators
    }

    pub fn arrows(&self) -> &[KnotArrow] {
        &self.arrows
    }

    /// The differential as polynomial entries keyed by `(from, to)`.
    fn entries(&self) -> BTreeMap<(usize, usize), Poly> {
        let mut out: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        for arr in &self.arrows {
            let e = out.entry((arr.from, arr.to)).or_default();
            for &m in &arr.monomials {
                xor_into(e, m);
            }
        }
        out.retain(|_, p| !p.is_empty());
        out
    }

    pub fn squares_to_zero(&self) -> bool {
        let d = self.entries();
        let mut sq: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        for (&(g, h), p1) in &d {
            for (&(_, k), p2) in d.range((h, 0)..(h + 1, 0)) {
                let e = sq.entry((g, k)).or_default();
                for &(a1, b1) in p1 {
                    for &(a2, b2) in p2 {
                        xor_into(e, (a1 + a2, b1 + b2));
                    }
                }
            }
        }
        sq.values().all(BTreeSet::is_empty)
    }
}

pub const BUILTIN_KNOTS: [&str; 2] = ["unknot", "rh_trefoil"];

pub fn builtin_knot(name: &str) -> Result<KnotComplex, KnotError> {
    match name {
        "unknot" => KnotComplex::new(alloc::vec![KnotGenerator::new("x", 0, 0)], Vec::new()),
        "rh_trefoil" => KnotComplex::new(
            alloc::vec![KnotGenerator::new("a", -1, -1), KnotGenerator::new("b", 0, -2), KnotGenerator::new("c", -2, 0)],
            alloc::vec![
                KnotArrow { from: 0, to: 1, monomials: alloc::vec![(1, 0)] },
                KnotArrow { from: 0, to: 2, monomials: alloc::vec![(0, 1)] },
            ],
        ),
        other => Err(KnotError::UnknownKnot(other.to_string())),
    }
}

/// `CFK⁻ ⊗ E_{p,q,k}` with basis `g ⊗ e_x` at index `g·p + x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedComplex {
    pub params: SlopeParams,
    pub complex: FiniteComplex,
    /// `m'_x` on the `e`-basis.
    pub exponents: Vec<Rational64>,
    /// False when `gcd(p, k) > 1`.
    pub canonical: bool,
}

/// `W^a Z^b ↦ U^b · φ^{a−b}`.
pub fn monomial_action(params: &SlopeParams, a: u32, b: u32) -> GenPerm {
    let phi = model_module(params).monodromy;
    let step = if a >= b { phi } else { phi.inverse() };
    let mut out = GenPerm::identity(params.p);
    for _ in 0..a.abs_diff(b) {
        out = step.compose(&out);
    }
    out.times_u_pow(i64::from(b))
}

/// `W·Z` acts as `U` on `E_{p,q,k}`.
pub fn action_consistent(params: &SlopeParams) -> bool {
    let w = monomial_action(params, 1, 0);
    let z = monomial_action(params, 0, 1);
    let id_u = GenPerm::identity(params.p).times_u_pow(1);
    w.compose(&z) == id_u && z.compose(&w) == id_u && z.exps.iter().all(|&e| e >= 0)
}

/// `m'_{Φ(y_i)} = m_i`.
pub fn module_exponents(params: &SlopeParams) -> (Vec<Rational64>, bool) {
    let g = grading_exponents(params);
    let phi = recover_isomorphism(params);
    let mut out = alloc::vec![Rational64::from_integer(0); params.p];
    for (i, m) in g.values.iter().enumerate() {
        out[phi.target[i]] = *m;
    }
    (out, g.canonical)
}

pub fn specialize(knot: &KnotComplex, params: &SlopeParams, n: usize) -> Result<SpecializedComplex, KnotError> {
    let p = params.p;
    let dim = knot.generators.len() * p;
    let half_t = Rational64::new(params.k as i64, p as i64);
    let (exponents, canonical) = module_exponents(params);

    let mut gradings = Vec::with_capacity(dim);
    for g in &knot.generators {
        let base = g.t_grading(half_t);
        gradings.extend(exponents.iter().map(|m| base - m * 2));
    }

    let mut d = SeriesMatrix::zeros(dim, dim, n);
    for arr in &knot.arrows {
        for &(a, b) in &arr.monomials {
            let act = monomial_action(params, a, b);
            for x in 0..p {
                let e = act.exps[x];
                debug_assert!(e >= 0);
                if (e as usize) < n {
                    d.get_mut(arr.to * p + act.target[x], arr.from * p + x).toggle(e as usize);
                }
            }
        }
    }
    let complex = FiniteComplex::new(d, Some(gradings))?;
    Ok(SpecializedComplex { params: params.clone(), complex, exponents, canonical })
}

/// The `W = 1, Z = U` specialization, graded by `gr_z`.
pub fn u_specialization(knot: &KnotComplex, n: usize) -> Result<FiniteComplex, KnotError> {
    let dim = knot.generators.len();
    let mut d = SeriesMatrix::zeros(dim, dim, n);
    for arr in &knot.arrows {
        for &(_, b) in &arr.monomials {
            if (b as usize) < n {
                d.get_mut(arr.to, arr.from).toggle(b as usize);
            }
        }
    }
    let gradings = knot.generators.iter().map(|g| g.gr_z).collect();
    Ok(FiniteComplex::new(d, Some(gradings))?)
}

pub fn hfk(knot: &KnotComplex, params: &SlopeParams, n: usize) -> Result<HomologyDecomp, KnotError> {
    Ok(homology(&specialize(knot, params, n)?.complex)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Option<Rational64> {
        Some(Rational64::new(n, d))
    }

    fn params(p: usize, q: usize, k: usize) -> SlopeParams {
        SlopeParams::new(p, q, k).unwrap()
    }

    #[test]
    fn builtins() {
        assert!(builtin_knot("unknot").unwrap().squares_to_zero());
        let t = builtin_knot("rh_trefoil").unwrap();
        let g: Vec<_> = t.generators().iter().map(|g| g.t_grading(Rational64::new(1, 5))).collect();
        assert_eq!(g, [Rational64::from_integer(-1), Rational64::new(-8, 5), Rational64::new(-2, 5)]);
        assert_eq!(builtin_knot("figure8"), Err(KnotError::UnknownKnot("figure8".into())));
    }

    #[test]
    fn rejects_nonzero_square() {
        let gens = alloc::vec![KnotGenerator::new("a", 0, 0), KnotGenerator::new("b", -1, -1), KnotGenerator::new("c", -2, -2)];
        let arrows = alloc::vec![
            KnotArrow { from: 0, to: 1, monomials: alloc::vec![(0, 0)] },
            KnotArrow { from: 1, to: 2, monomials: alloc::vec![(0, 0)] },
        ];
        assert_eq!(KnotComplex::new(gens, arrows), Err(KnotError::NotDifferential));
    }

    #[test]
    fn unknot_5_3_1() {
        let h = hfk(&builtin_knot("unknot").unwrap(), &params(5, 3, 1), 64).unwrap();
        assert_eq!(h.free, [r(-8, 5), r(-6, 5), r(-4, 5), r(-2, 5), r(0, 1)]);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn trefoil_5_3_1() {
        let h = hfk(&builtin_knot("rh_trefoil").unwrap(), &params(5, 3, 1), 64).unwrap();
        assert_eq!(h.free, [r(-2, 1), r(-8, 5), r(-6, 5), r(-4, 5), r(-2, 5)]);
        assert_eq!(h.torsion, [(1, r(-8, 5))]);
    }

    #[test]
    fn trefoil_5_3_2() {
        let h = hfk(&builtin_knot("rh_trefoil").unwrap(), &params(5, 3, 2), 64).unwrap();
        assert_eq!(h.free, [r(-12, 5), r(-2, 1), r(-8, 5), r(-6, 5), r(-4, 5)]);
        assert_eq!(h.torsion, [(1, r(-8, 5)), (1, r(-6, 5))]);
    }

    #[test]
    fn wz_is_u() {
        for (p, q) in [(5, 3), (3, 5), (2, 1), (7, 4)] {
            for k in 0..p {
                assert!(action_consistent(&params(p, q, k)));
            }
        }
    }
}
