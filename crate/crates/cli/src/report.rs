//! Serializable reports. Field order is fixed by declaration order.

use std::fmt::Write as _;

use num_rational::Rational64;
use serde::Serialize;
use surgery_triangle_core::cycles::{CoeffOption, Coefficients, VerificationReport};
use surgery_triangle_core::diagram::{nzk_count, nzk_window, special_indices, z_window, zigzag, SlopeParams};
use surgery_triangle_core::homalg::HomologyDecomp;
use surgery_triangle_core::useries::Series;

pub fn option_name(o: CoeffOption) -> &'static str {
    match o {
        CoeffOption::UnitU => "unit-u",
        CoeffOption::UnitW => "unit-w",
    }
}

fn exps(s: &[Series]) -> Vec<Vec<usize>> {
    s.iter().map(Series::exponents).collect()
}

fn grading(g: &Option<Rational64>) -> Option<String> {
    g.map(|r| r.to_string())
}

#[derive(Serialize)]
pub struct ZigZagReport {
    pub vertices: Vec<i64>,
    pub h_edges: Vec<(i64, i64)>,
    pub l_edges: Vec<(i64, i64)>,
}

#[derive(Serialize)]
pub struct ZData {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub trunc: usize,
    pub s: Vec<usize>,
    pub special: Vec<i64>,
    pub zigzag: ZigZagReport,
    /// `[n, z_n]` over the window where `z_n < trunc`.
    pub z: Vec<(i64, u64)>,
    /// `[n, n_{z(k)}(T_n)]` over the window where it is below `trunc`.
    pub nzk: Vec<(i64, u64)>,
}

impl ZData {
    pub fn new(params: &SlopeParams, trunc: usize) -> Self {
        let (p, q) = (params.p, params.q);
        let (lo, hi) = z_window(p, q, trunc as u64);
        let z = (lo..=hi).map(|n| (n, surgery_triangle_core::diagram::z_count(p, q, n).expect("coprime"))).collect();
        let (lo, hi) = nzk_window(params, trunc as u64);
        let nzk = (lo..=hi).map(|n| (n, nzk_count(params, n))).collect();
        let zz = zigzag(params);
        ZData {
            p,
            q,
            k: params.k,
            trunc,
            s: params.s.clone(),
            special: special_indices(params),
            zigzag: ZigZagReport { vertices: zz.vertices, h_edges: zz.h_edges, l_edges: zz.l_edges },
            z,
            nzk,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p={} q={} k={} N={}", self.p, self.q, self.k, self.trunc);
        let _ = writeln!(out, "s        {:?}", self.s);
        let _ = writeln!(out, "special  {:?}", self.special);
        let _ = writeln!(out, "H-edges  {:?}", self.zigzag.h_edges);
        let _ = writeln!(out, "L-edges  {:?}", self.zigzag.l_edges);
        let row = |v: &[(i64, u64)]| v.iter().map(|(n, z)| format!("{n}:{z}")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "z        {}", row(&self.z));
        let _ = writeln!(out, "nzk      {}", row(&self.nzk));
        out
    }
}

#[derive(Serialize)]
pub struct KernelReport {
    pub p: usize,
    pub q: usize,
    pub trunc: usize,
    pub option: &'static str,
    pub verified_order: usize,
    pub index_set: Vec<(usize, usize)>,
    /// Each series as its list of exponents.
    pub v: Vec<Vec<usize>>,
    pub t: Vec<Vec<usize>>,
    pub u: Vec<Vec<usize>>,
    pub w: Vec<Vec<usize>>,
    pub snf_f: Vec<usize>,
    pub snf_adjoint: Vec<usize>,
}

impl KernelReport {
    pub fn new(c: &Coefficients) -> Self {
        KernelReport {
            p: c.p,
            q: c.q,
            trunc: c.trunc_order,
            option: option_name(c.option),
            verified_order: c.verified_order,
            index_set: c.index_set.pairs().to_vec(),
            v: exps(&c.v),
            t: exps(&c.t),
            u: exps(&c.u),
            w: exps(&c.w),
            snf_f: c.snf_f.clone(),
            snf_adjoint: c.snf_adjoint.clone(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p={} q={} N={} option={} verified below U^{}", self.p, self.q, self.trunc, self.option, self.verified_order);
        let show = |e: &[usize]| series_text(e, self.verified_order);
        for (j, v) in self.v.iter().enumerate() {
            let _ = writeln!(out, "v[{j}] = {}", show(v));
        }
        for ((i, l), t) in self.index_set.iter().zip(&self.t) {
            let _ = writeln!(out, "t[{i},{l}] = {}", show(t));
        }
        let _ = writeln!(out, "SNF(F)  {:?}", self.snf_f);
        let _ = writeln!(out, "SNF(F*) {:?}", self.snf_adjoint);
        out
    }
}

fn series_text(e: &[usize], below: usize) -> String {
    let terms: Vec<String> = e
        .iter()
        .filter(|&&x| x < below)
        .map(|&x| match x {
            0 => "1".to_string(),
            1 => "U".to_string(),
            _ => format!("U^{x}"),
        })
        .collect();
    let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
    format!("{body} + O(U^{below})")
}

#[derive(Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct RanksReport {
    pub rank_a: usize,
    pub rank_b: usize,
    pub contained: bool,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub trunc: usize,
    pub option: &'static str,
    pub passed: bool,
    pub verified_order: usize,
    pub checks: Vec<CheckReport>,
    pub ranks: Option<RanksReport>,
    pub error: Option<String>,
    pub coefficients: Option<KernelReport>,
}

impl VerifyReport {
    pub fn new(r: &VerificationReport, with_coefficients: bool) -> Self {
        VerifyReport {
            p: r.params.p,
            q: r.params.q,
            k: r.params.k,
            trunc: r.trunc_order,
            option: option_name(r.option),
            passed: r.passed(),
            verified_order: r.verified_order,
            checks: r.checks.iter().map(|c| CheckReport { name: c.name, passed: c.passed }).collect(),
            ranks: r.ranks.map(|x| RanksReport { rank_a: x.rank_a, rank_b: x.rank_b, contained: x.contained }),
            error: r.error.as_ref().map(|e| e.to_string()),
            coefficients: if with_coefficients { r.coefficients.as_ref().map(KernelReport::new) } else { None },
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "({},{},{}) N={} {}: {} (verified below U^{})",
            self.p,
            self.q,
            self.k,
            self.trunc,
            self.option,
            if self.passed { "PASS" } else { "FAIL" },
            self.verified_order
        );
        for c in &self.checks {
            let _ = writeln!(out, "  {:<16}{}", c.name, if c.passed { "ok" } else { "FAILED" });
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error: {e}");
        }
        out
    }
}

#[derive(Serialize)]
pub struct SweepCase {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub passed: bool,
    pub verified_order: usize,
    pub failed_checks: Vec<&'static str>,
}

#[derive(Serialize)]
pub struct SweepReport {
    pub bound: usize,
    pub trunc: usize,
    pub option: &'static str,
    pub total: usize,
    pub failed: usize,
    pub min_verified_order: usize,
    pub cases: Vec<SweepCase>,
}

impl SweepReport {
    pub fn new(bound: usize, trunc: usize, option: CoeffOption, reports: &[VerificationReport]) -> Self {
        let cases: Vec<SweepCase> = reports
            .iter()
            .map(|r| SweepCase {
                p: r.params.p,
                q: r.params.q,
                k: r.params.k,
                passed: r.passed(),
                verified_order: r.verified_order,
                failed_checks: r.failed_checks(),
            })
            .collect();
        SweepReport {
            bound,
            trunc,
            option: option_name(option),
            total: cases.len(),
            failed: cases.iter().filter(|c| !c.passed).count(),
            min_verified_order: cases.iter().map(|c| c.verified_order).min().unwrap_or(0),
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "p+q <= {} at N={} {}: {}/{} passed, min verified order {}",
            self.bound,
            self.trunc,
            self.option,
            self.total - self.failed,
            self.total,
            self.min_verified_order
        );
        for c in self.cases.iter().filter(|c| !c.passed) {
            let _ = writeln!(out, "  FAIL ({},{},{}) {:?}", c.p, c.q, c.k, c.failed_checks);
        }
        out
    }
}

#[derive(Serialize)]
pub struct TorsionReport {
    pub exponent: usize,
    pub grading: Option<String>,
}

#[derive(Serialize)]
pub struct HfkReport {
    pub knot: String,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub trunc: usize,
    /// False when the module exponents are not distinct mod 1.
    pub canonical: bool,
    pub free_rank: usize,
    pub free: Vec<Option<String>>,
    pub torsion: Vec<TorsionReport>,
}

impl HfkReport {
    pub fn new(knot: &str, params: &SlopeParams, trunc: usize, canonical: bool, h: &HomologyDecomp) -> Self {
        HfkReport {
            knot: knot.to_string(),
            p: params.p,
            q: params.q,
            k: params.k,
            trunc,
            canonical,
            free_rank: h.free_rank(),
            free: h.free.iter().map(grading).collect(),
            torsion: h.torsion.iter().map(|(a, g)| TorsionReport { exponent: *a, grading: grading(g) }).collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "HFK- of {} at (p,q,k)=({},{},{}), N={}", self.knot, self.p, self.q, self.k, self.trunc);
        if !self.canonical {
            let _ = writeln!(out, "  gradings are non-canonical (gcd(p,k) > 1)");
        }
        let g = |x: &Option<String>| x.clone().unwrap_or_else(|| "?".into());
        for f in &self.free {
            let _ = writeln!(out, "  F[[U]]       ({})", g(f));
        }
        for t in &self.torsion {
            let _ = writeln!(out, "  F[[U]]/U^{:<3} ({})", t.exponent, g(&t.grading));
        }
        out
    }
}
