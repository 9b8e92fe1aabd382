//! The triangle matrix `F`, its kernels, the cycles `ψᵏ` and the checks on them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::diagram::{
    involution_labels, nzk_count, nzk_window, special_indices, z_unchecked, z_window, zigzag, DiagramError, IndexSet,
    SlopeParams, TriangleLabel,
};
use crate::localsys::recover_isomorphism_check;
use crate::useries::{kernel_from_snf, smith_normal_form, Series, SeriesError, SeriesMatrix, DEFAULT_GUARD};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CyclesError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Standard basis element of one of the three Floer complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// `θ_{i,ℓ}` on the `(β₀, β_r)` side.
    Theta(usize, usize),
    /// `ξ_j` on the `(β_r, β∞)` side.
    Xi(usize),
    /// `ζ_{i,ℓ}` on the `(β∞, β₀)` side.
    Zeta(usize, usize),
}

pub type LabelVec = BTreeMap<Label, Series>;

/// The three compositions whose triangle counts must vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Composition {
    /// `μ₂(ψ₀ᵣ ⊗ ψᵣ∞)`, landing on ζ.
    OrRinf,
    /// `μ₂(ψᵣ∞ ⊗ ψ∞₀)`, landing on θ.
    RinfInf0,
    /// `μ₂(ψ∞₀ ⊗ ψ₀ᵣ)`, landing on ξ.
    Inf0Or,
}

impl Composition {
    pub const ALL: [Composition; 3] = [Composition::OrRinf, Composition::RinfInf0, Composition::Inf0Or];

    pub fn name(self) -> &'static str {
        match self {
            Composition::OrRinf => "mu2_0r_rinf",
            Composition::RinfInf0 => "mu2_rinf_inf0",
            Composition::Inf0Or => "mu2_inf0_0r",
        }
    }
}

/// Which coefficient family is forced to be the identity pattern.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CoeffOption {
    /// `u_{i,ℓ} = [ℓ = 0]`, `w_{i,ℓ} = t_{i,-ℓ}`.
    #[default]
    UnitU,
    /// `u_{i,ℓ} = t_{i,ℓ}`, `w_{i,ℓ} = [ℓ = 0]`.
    UnitW,
}

/// `F = Σ_n U^{z_n} f_{i,ℓ} e*_{j-p}` with rows indexed by level-0 pairs and columns by `ℤ/q`.
#[derive(Clone, Debug)]
pub struct TriangleMatrix {
    pub p: usize,
    pub q: usize,
    pub rows: IndexSet,
    pub f: SeriesMatrix,
}

impl TriangleMatrix {
    pub fn trunc_order(&self) -> usize {
        self.f.trunc_order()
    }

    pub fn adjoint(&self) -> SeriesMatrix {
        self.f.transpose()
    }
}

#[allow(non_snake_case)]
pub fn build_F(p: usize, q: usize, n: usize) -> Result<TriangleMatrix, CyclesError> {
    let params = SlopeParams::new(p, q, 0)?;
    let rows = IndexSet::new(&params.s);
    let mut f = SeriesMatrix::zeros(q, q, n);
    let (lo, hi) = z_window(p, q, n as u64);
    for m in lo..=hi {
        let tl = TriangleLabel::new(p, q, m);
        let Some(r) = rows.position(tl.i, tl.l) else { continue };
        f.get_mut(r, tl.xi(p, q)).toggle(z_unchecked(p as i64, q as i64, m) as usize);
    }
    Ok(TriangleMatrix { p, q, rows, f })
}

/// Kernel data of `F` and `F*` and the derived level-0 coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub p: usize,
    pub q: usize,
    pub trunc_order: usize,
    pub option: CoeffOption,
    pub index_set: IndexSet,
    /// `v_j`, `j ∈ ℤ/q`, with `F v = 0`.
    pub v: Vec<Series>,
    /// `t_{i,ℓ}` on `index_set`, with `F* t = 0`.
    pub t: Vec<Series>,
    pub u: Vec<Series>,
    pub w: Vec<Series>,
    pub snf_f: Vec<usize>,
    pub snf_adjoint: Vec<usize>,
    /// Order below which the coefficients are trusted.
    pub verified_order: usize,
}

/// Scales `v` so its first unit entry is exactly 1.
fn normalize_unit(v: &mut [Series]) -> Result<(), SeriesError> {
    let Some(pos) = v.iter().position(Series::is_unit) else { return Err(SeriesError::NoKernel) };
    let inv = v[pos].inverse()?;
    for x in v.iter_mut() {
        *x = &*x * &inv;
    }
    Ok(())
}

pub fn solve_coefficients(p: usize, q: usize, n: usize, option: CoeffOption) -> Result<Coefficients, CyclesError> {
    solve_coefficients_with_guard(p, q, n, option, DEFAULT_GUARD)
}

pub fn solve_coefficients_with_guard(
    p: usize,
    q: usize,
    n: usize,
    option: CoeffOption,
    guard: usize,
) -> Result<Coefficients, CyclesError> {
    let tm = build_F(p, q, n)?;
    let snf = smith_normal_form(&tm.f);
    let snf_adj = smith_normal_form(&tm.adjoint());
    let mut v = kernel_from_snf(&snf, guard)?;
    let mut t = kernel_from_snf(&snf_adj, guard)?;
    normalize_unit(&mut v)?;
    normalize_unit(&mut t)?;

    let index_set = tm.rows.clone();
    let delta: Vec<Series> =
        index_set.pairs().iter().map(|&(_, l)| if l == 0 { Series::one(n) } else { Series::zero(n) }).collect();
    let (u, w) = match option {
        CoeffOption::UnitU => {
            let w = index_set
                .pairs()
                .iter()
                .map(|&(i, l)| t[index_set.position(i, -(l as i64)).expect("valid pair")].clone())
                .collect();
            (delta, w)
        }
        CoeffOption::UnitW => (t.clone(), delta),
    };

    let max_finite = snf.max_finite().max(snf_adj.max_finite()).unwrap_or(0);
    let verified_order = (n - max_finite.min(n) - 1).min(n.saturating_sub(guard));
    Ok(Coefficients {
        p,
        q,
        trunc_order: n,
        option,
        index_set,
        v,
        t,
        u,
        w,
        snf_f: snf.d,
        snf_adjoint: snf_adj.d,
        verified_order,
    })
}

/// The conjugation map `m` from level-0 labels to level-`k` labels.
pub fn shift_label(params: &SlopeParams, label: Label) -> Label {
    let (p, q, k) = (params.p, params.q, params.k);
    let c = params.c();
    match label {
        Label::Theta(i, l) => {
            let ti = (i + k) % p;
            let wrap = usize::from(i + k >= p);
            Label::Theta(ti, (l + wrap) % c[ti].max(1))
        }
        Label::Xi(j) => Label::Xi((j + k) % q),
        Label::Zeta(i, l) => Label::Zeta((i + k) % p, l),
    }
}

/// Partner index of `y` paired with a ξ or ζ label at position `x`: `-x·q⁻¹ mod p`.
pub fn y_partner(params: &SlopeParams, x: usize) -> usize {
    let p = params.p;
    (p - (x * params.qinv) % p) % p
}

/// Coefficient vectors of `ψ₀ᵣᵏ`, `ψᵣ∞ᵏ`, `ψ∞₀ᵏ` over level-`k` labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiTriple {
    pub k: usize,
    pub trunc_order: usize,
    pub theta: LabelVec,
    pub xi: LabelVec,
    pub zeta: LabelVec,
}

impl PsiTriple {
    pub fn coeff(&self, label: Label) -> Option<&Series> {
        match label {
            Label::Theta(..) => self.theta.get(&label),
            Label::Xi(..) => self.xi.get(&label),
            Label::Zeta(..) => self.zeta.get(&label),
        }
    }

    /// Unit coefficient on every special basis element.
    pub fn special_sums(params: &SlopeParams, n: usize) -> Self {
        let mut psi = PsiTriple { k: params.k, trunc_order: n, theta: LabelVec::new(), xi: LabelVec::new(), zeta: LabelVec::new() };
        for label in special_basis(params) {
            let slot = match label {
                Label::Theta(..) => &mut psi.theta,
                Label::Xi(..) => &mut psi.xi,
                Label::Zeta(..) => &mut psi.zeta,
            };
            slot.insert(label, Series::one(n));
        }
        psi
    }

    /// Labels with a unit coefficient.
    pub fn support_mod_u(&self) -> BTreeSet<Label> {
        self.theta
            .iter()
            .chain(&self.xi)
            .chain(&self.zeta)
            .filter(|(_, s)| s.is_unit())
            .map(|(l, _)| *l)
            .collect()
    }
}

pub fn build_psis(params: &SlopeParams, coeffs: &Coefficients) -> PsiTriple {
    let n = coeffs.trunc_order;
    let mut psi = PsiTriple { k: params.k, trunc_order: n, theta: LabelVec::new(), xi: LabelVec::new(), zeta: LabelVec::new() };
    let put = |map: &mut LabelVec, label: Label, s: &Series| {
        if !s.is_zero() {
            *map.entry(label).or_insert_with(|| Series::zero(n)) += s;
        }
    };
    for (pos, &(i, l)) in coeffs.index_set.pairs().iter().enumerate() {
        put(&mut psi.theta, shift_label(params, Label::Theta(i, l)), &coeffs.u[pos]);
        put(&mut psi.zeta, shift_label(params, Label::Zeta(i, l)), &coeffs.w[pos]);
    }
    for (j, vj) in coeffs.v.iter().enumerate() {
        put(&mut psi.xi, shift_label(params, Label::Xi(j)), vj);
    }
    psi
}

/// One weighted corner triple `(θ, ξ, ζ)` of a triangle `T_n` with `d` fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub theta: Label,
    pub xi: Label,
    pub zeta: Label,
    pub weight: u64,
}

/// All corner triples at level `k` whose weight `n_{z(k)}(T_n)` is below `n`.
pub fn corners(params: &SlopeParams, n: usize) -> Vec<Corner> {
    let c = params.c();
    let (lo, hi) = nzk_window(params, n as u64);
    let mut out = Vec::new();
    for m in lo..=hi {
        let tl = params.triangle(m);
        let ci = c[tl.i];
        if ci == 0 {
            continue;
        }
        let weight = nzk_count(params, m);
        let xi = Label::Xi(tl.xi(params.p, params.q));
        for d in 0..ci {
            let theta = Label::Theta(tl.i, (d as i64 + tl.l).rem_euclid(ci as i64) as usize);
            out.push(Corner { theta, xi, zeta: Label::Zeta(tl.i, d), weight });
        }
    }
    out
}

pub fn mu2(psis: &PsiTriple, composition: Composition, params: &SlopeParams, n: usize) -> LabelVec {
    let mut out = LabelVec::new();
    for cr in corners(params, n) {
        let (a, b, target) = match composition {
            Composition::OrRinf => (psis.theta.get(&cr.theta), psis.xi.get(&cr.xi), cr.zeta),
            Composition::RinfInf0 => (psis.xi.get(&cr.xi), psis.zeta.get(&cr.zeta), cr.theta),
            Composition::Inf0Or => (psis.zeta.get(&cr.zeta), psis.theta.get(&cr.theta), cr.xi),
        };
        let (Some(a), Some(b)) = (a, b) else { continue };
        let term = (a * b).shl(cr.weight as usize);
        if !term.is_zero() {
            *out.entry(target).or_insert_with(|| Series::zero(n)) += &term;
        }
    }
    out.retain(|_, s| !s.is_zero());
    out
}

fn structure_constants(params: &SlopeParams, n: usize, relabel: impl Fn(Label) -> Label) -> BTreeMap<(Label, Label, Label), Series> {
    let mut map = BTreeMap::new();
    for cr in corners(params, n) {
        let key = (relabel(cr.theta), relabel(cr.xi), relabel(cr.zeta));
        map.entry(key).or_insert_with(|| Series::zero(n)).toggle(cr.weight as usize);
    }
    map.retain(|_, s: &mut Series| !s.is_zero());
    map
}

/// `m ∘ μ₂⁰ = μ₂ᵏ ∘ (m ⊗ m)` on all pairs of standard basis elements.
///
/// Both sides are bilinear, so it suffices to compare the weighted corner
/// triples of level 0 pushed through `m` with those of level `k`.
pub fn conjugation_check(params: &SlopeParams, n: usize) -> bool {
    let Ok(level0) = params.at_level(0) else { return false };
    let labels0 = all_labels(&level0);
    let labelsk = all_labels(params);
    let image: BTreeSet<Label> = labels0.iter().map(|&l| shift_label(params, l)).collect();
    if image.len() != labels0.len() || image != labelsk {
        return false;
    }
    structure_constants(&level0, n, |l| shift_label(params, l)) == structure_constants(params, n, |l| l)
}

/// Every standard basis label at level `k`.
pub fn all_labels(params: &SlopeParams) -> BTreeSet<Label> {
    let c = params.c();
    let mut out = BTreeSet::new();
    for (i, &ci) in c.iter().enumerate() {
        for l in 0..ci {
            out.insert(Label::Theta(i, l));
            out.insert(Label::Zeta(i, l));
        }
    }
    out.extend((0..params.q).map(Label::Xi));
    out
}

/// Special basis elements at level `k`, listed directly from `p`, `q`, `k`.
pub fn special_basis(params: &SlopeParams) -> BTreeSet<Label> {
    let (p, q, k) = (params.p, params.q, params.k);
    let c = params.c();
    let mut out = BTreeSet::new();
    if p >= q {
        for i in 0..q {
            out.insert(Label::Theta((k + i) % p, 0));
            out.insert(Label::Zeta((k + i) % p, 0));
        }
        out.extend((0..q).map(Label::Xi));
    } else {
        for (i, &ci) in c.iter().enumerate() {
            let l = if i < k { 1 % ci } else { 0 };
            out.insert(Label::Theta(i, l));
            out.insert(Label::Zeta(i, 0));
        }
        out.extend((0..p).map(|j| Label::Xi((k + q - p + j) % q)));
    }
    out
}

fn special_corners(params: &SlopeParams) -> Option<BTreeMap<i64, [Label; 3]>> {
    let c = params.c();
    let mut out = BTreeMap::new();
    for m in special_indices(params) {
        let tl = params.triangle(m);
        let ci = c[tl.i];
        if ci == 0 {
            return None;
        }
        let theta = Label::Theta(tl.i, tl.l.rem_euclid(ci as i64) as usize);
        out.insert(m, [theta, Label::Xi(tl.xi(params.p, params.q)), Label::Zeta(tl.i, 0)]);
    }
    Some(out)
}

/// Every special basis element is a corner of exactly two special triangles,
/// and those two triangles are the ends of an H-edge (θ, ζ) or L-edge (ξ).
pub fn incidence_check(params: &SlopeParams) -> bool {
    let Some(tri) = special_corners(params) else { return false };
    let mut owners: BTreeMap<Label, Vec<i64>> = BTreeMap::new();
    for (&m, labels) in &tri {
        for l in labels {
            owners.entry(*l).or_default().push(m);
        }
    }
    if owners.keys().copied().collect::<BTreeSet<_>>() != special_basis(params) {
        return false;
    }
    if owners.values().any(|v| v.len() != 2) {
        return false;
    }
    let zz = zigzag(params);
    if !zz.is_single_cycle() || zz.vertices != special_indices(params) {
        return false;
    }
    let same = |a: i64, b: i64, slot: usize| tri[&a][slot] == tri[&b][slot];
    zz.h_edges.iter().all(|&(a, b)| same(a, b, 0) && same(a, b, 2)) && zz.l_edges.iter().all(|&(a, b)| same(a, b, 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvolutionRanks {
    pub rank_a: usize,
    pub rank_b: usize,
    pub contained: bool,
}

/// Ranks of the involution-symmetric subspaces `A ⊆ ⊕ e_j`, `B ⊆ ⊕ f_{i,ℓ}` and whether `F(A) ⊆ B`.
pub fn involution_rank_check(p: usize, q: usize, n: usize) -> Result<InvolutionRanks, CyclesError> {
    let inv = involution_labels(p, q)?;
    let tm = build_F(p, q, n)?;

    let mut a_gens: Vec<Vec<usize>> = Vec::new();
    for (j, &jb) in inv.columns.iter().enumerate() {
        if j <= jb {
            a_gens.push(if j == jb { alloc::vec![j] } else { alloc::vec![j, jb] });
        }
    }

    let extra = if (p + q) % 2 == 1 && p < q {
        let half = ((p + q - 1) / 2) as i64;
        let tl = TriangleLabel::new(p, q, half);
        inv.index_set.position(tl.i, tl.l)
    } else {
        None
    };
    let mut two_orbits = Vec::new();
    let mut fixed = Vec::new();
    for (x, &xb) in inv.pairs.iter().enumerate() {
        if x < xb {
            two_orbits.push((x, xb));
        } else if x == xb && Some(x) != extra {
            fixed.push(x);
        }
    }
    if let Some(e) = extra {
        if inv.pairs[e] != e {
            return Ok(InvolutionRanks { rank_a: a_gens.len(), rank_b: two_orbits.len(), contained: false });
        }
    }
    let rank_b = two_orbits.len() + usize::from(extra.is_some());

    let mut contained = true;
    for gen in &a_gens {
        let mut x = alloc::vec![Series::zero(n); q];
        for &j in gen {
            x[j] = Series::one(n);
        }
        let y = tm.f.mul_vec(&x)?;
        contained &= two_orbits.iter().all(|&(a, b)| y[a] == y[b]);
        contained &= fixed.iter().all(|&a| y[a].is_zero());
    }
    Ok(InvolutionRanks { rank_a: a_gens.len(), rank_b, contained })
}

/// Mod-`U` pattern of the level-0 coefficients.
pub fn modu_pattern_holds(coeffs: &Coefficients) -> bool {
    let (p, q) = (coeffs.p, coeffs.q);
    let m = p.min(q);
    let uw_ok = coeffs.index_set.pairs().iter().enumerate().all(|(pos, &(_, l))| {
        coeffs.u[pos].coeff(0) == (l == 0) && coeffs.w[pos].coeff(0) == (l == 0)
    });
    let v_ok = (0..q).all(|j| coeffs.v[j].coeff(0) == ((q - j) <= m));
    uw_ok && v_ok
}

/// Outcome of a single named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub params: SlopeParams,
    pub trunc_order: usize,
    pub option: CoeffOption,
    pub verified_order: usize,
    pub checks: Vec<Check>,
    pub ranks: Option<InvolutionRanks>,
    pub coefficients: Option<Coefficients>,
    pub error: Option<CyclesError>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }
}

/// Runs every check on freshly solved coefficients, including a recomputation at `2N`.
pub fn verify_main_theorem(params: &SlopeParams, n: usize, option: CoeffOption) -> VerificationReport {
    let coeffs = match solve_coefficients(params.p, params.q, n, option) {
        Ok(c) => c,
        Err(e) => {
            return VerificationReport {
                params: params.clone(),
                trunc_order: n,
                option,
                verified_order: 0,
                checks: alloc::vec![Check { name: "kernel", passed: false }],
                ranks: None,
                coefficients: None,
                error: Some(e),
            }
        }
    };
    let mut report = verify_with_coefficients(params, &coeffs);
    let stable = match solve_coefficients(params.p, params.q, 2 * n, option) {
        Ok(big) => {
            let below = coeffs.verified_order;
            let agree = |a: &[Series], b: &[Series]| a.iter().zip(b).all(|(x, y)| x.with_order(below) == y.with_order(below));
            agree(&coeffs.v, &big.v) && agree(&coeffs.t, &big.t)
        }
        Err(_) => false,
    };
    report.checks.push(Check { name: "stability", passed: stable });
    report
}

/// Runs the checks that depend on the given coefficients (no recomputation).
pub fn verify_with_coefficients(params: &SlopeParams, coeffs: &Coefficients) -> VerificationReport {
    let n = coeffs.trunc_order;
    let order = coeffs.verified_order;
    let psis = build_psis(params, coeffs);
    let mut checks = Vec::new();

    for comp in Composition::ALL {
        let out = mu2(&psis, comp, params, n);
        checks.push(Check { name: comp.name(), passed: out.values().all(|s| s.val_or_n() >= order) });
    }
    checks.push(Check { name: "verified_order", passed: 2 * order >= n });
    checks.push(Check {
        name: "modu_pattern",
        passed: modu_pattern_holds(coeffs) && psis.support_mod_u() == special_basis(params),
    });
    checks.push(Check { name: "incidence", passed: incidence_check(params) });
    checks.push(Check { name: "conjugation", passed: conjugation_check(params, n) });
    let ranks = involution_rank_check(params.p, params.q, n).ok();
    checks.push(Check {
        name: "involution",
        passed: ranks.is_some_and(|r| r.rank_a == r.rank_b + 1 && r.contained),
    });
    checks.push(Check { name: "isomorphism", passed: recover_isomorphism_check(params) });

    VerificationReport {
        params: params.clone(),
        trunc_order: n,
        option: coeffs.option,
        verified_order: order,
        checks,
        ranks,
        coefficients: Some(coeffs.clone()),
        error: None,
    }
}
