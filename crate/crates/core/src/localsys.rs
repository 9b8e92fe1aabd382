//! Local systems on the three attaching curves and the model module `E_{p,q,k}`.

use alloc::vec::Vec;
use core::fmt;
use num_integer::Integer;
use num_rational::Rational64;

use crate::diagram::SlopeParams;
use crate::useries::{Series, SeriesMatrix};

/// A monomial entry `1` or `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mono {
    One,
    U,
}

impl Mono {
    pub fn exponent(self) -> u32 {
        match self {
            Mono::One => 0,
            Mono::U => 1,
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mono::One => "1",
            Mono::U => "U",
        })
    }
}

/// `u_{(-i·q⁻¹-1) mod p} = U` for `i < k`, else `1`; `c_i = s_{(i-k) mod p}`.
pub fn uc_sequences(params: &SlopeParams) -> (Vec<Mono>, Vec<usize>) {
    let p = params.p;
    let mut u = alloc::vec![Mono::One; p];
    for i in 0..params.k {
        let idx = (2 * p * p - i * params.qinv % p - 1) % p;
        u[idx] = Mono::U;
    }
    (u, params.c())
}

/// Generalized permutation: basis vector `j` goes to `U^{exps[j]}` times basis vector `target[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenPerm {
    pub target: Vec<usize>,
    pub exps: Vec<i64>,
}

impl GenPerm {
    pub fn identity(rank: usize) -> Self {
        GenPerm { target: (0..rank).collect(), exps: alloc::vec![0; rank] }
    }

    /// Permutation matrix of `j ↦ target[j]`.
    pub fn permutation(target: Vec<usize>) -> Self {
        let exps = alloc::vec![0; target.len()];
        GenPerm { target, exps }
    }

    pub fn rank(&self) -> usize {
        self.target.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GenPerm) -> GenPerm {
        let target = other.target.iter().map(|&t| self.target[t]).collect();
        let exps = other.target.iter().zip(&other.exps).map(|(&t, &e)| e + self.exps[t]).collect();
        GenPerm { target, exps }
    }

    /// Inverse over `F₂[[U]][U⁻¹]`; exponents may turn negative.
    pub fn inverse(&self) -> GenPerm {
        let r = self.rank();
        let mut target = alloc::vec![0; r];
        let mut exps = alloc::vec![0; r];
        for j in 0..r {
            target[self.target[j]] = j;
            exps[self.target[j]] = -self.exps[j];
        }
        GenPerm { target, exps }
    }

    /// Multiplies every entry by `U^e`.
    pub fn times_u_pow(&self, e: i64) -> GenPerm {
        GenPerm { target: self.target.clone(), exps: self.exps.iter().map(|x| x + e).collect() }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = alloc::vec![false; self.rank()];
        for &t in &self.target {
            if t >= seen.len() || seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }

    /// True iff all entries are `1` or `U`.
    pub fn entries_in_one_or_u(&self) -> bool {
        self.exps.iter().all(|&e| e == 0 || e == 1)
    }

    pub fn u_entry_count(&self) -> usize {
        self.exps.iter().filter(|&&e| e == 1).count()
    }

    pub fn total_exponent(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn cycle_count(&self) -> usize {
        crate::diagram::orbit_count(&self.target)
    }

    /// Dense matrix with entry `(target[j], j) = U^{exps[j]}`; exponents must be non-negative.
    pub fn to_matrix(&self, n: usize) -> SeriesMatrix {
        let mut m = SeriesMatrix::zeros(self.rank(), self.rank(), n);
        for (j, (&t, &e)) in self.target.iter().zip(&self.exps).enumerate() {
            assert!(e >= 0, "negative exponent in generalized permutation");
            m.set(t, j, Series::monomial(e as usize, n));
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    ZeroSlope,
    SlopeR,
    InfinitySlope,
}

/// A free module on an attaching curve with monomial monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystem {
    pub rank: usize,
    pub monodromy: GenPerm,
    pub label: Curve,
}

impl LocalSystem {
    pub fn matrix(&self, n: usize) -> SeriesMatrix {
        self.monodromy.to_matrix(n)
    }
}

/// `φ∞ᵏ(y_i) = u_i · y_{i+1}`.
pub fn monodromy_infinity(params: &SlopeParams) -> LocalSystem {
    let p = params.p;
    let (u, _) = uc_sequences(params);
    let monodromy = GenPerm {
        target: (0..p).map(|i| (i + 1) % p).collect(),
        exps: u.iter().map(|m| m.exponent() as i64).collect(),
    };
    LocalSystem { rank: p, monodromy, label: Curve::InfinitySlope }
}

/// The rank-`p` module `E_{p,q,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelModule {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    /// `e_i ↦ U·e_{i+q}` when `(i+q) mod p < k`, else `e_{i+q}`.
    pub monodromy: GenPerm,
}

pub fn model_module(params: &SlopeParams) -> ModelModule {
    let (p, q, k) = (params.p, params.q, params.k);
    let target: Vec<usize> = (0..p).map(|i| (i + q) % p).collect();
    let exps = target.iter().map(|&t| i64::from(t < k)).collect();
    ModelModule { p, q, k, monodromy: GenPerm { target, exps } }
}

/// `Φ(y_i) = e_{(qi+k-1) mod p}`.
pub fn recover_isomorphism(params: &SlopeParams) -> GenPerm {
    let p = params.p;
    GenPerm::permutation((0..p).map(|i| (params.q * i + params.k + p - 1) % p).collect())
}

/// Checks `Φ · φ∞ᵏ · Φ⁻¹ = φ_{p,q,k}` exactly.
pub fn recover_isomorphism_check(params: &SlopeParams) -> bool {
    let phi = recover_isomorphism(params);
    let lhs = phi.compose(&monodromy_infinity(params).monodromy).compose(&phi.inverse());
    lhs == model_module(params).monodromy
}

/// Exponents `m'_i` identifying `E∞ᵏ` with a submodule of `F₂[[U^{1/p}]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingExponents {
    pub values: Vec<Rational64>,
    /// False when `gcd(p, k) > 1`, where the values are not pairwise distinct mod 1.
    pub canonical: bool,
}

/// `m_0 = 0`, `m_{i+1} = m_i + k/p - [u_i = U]`, shifted so the minimum is 0.
pub fn grading_exponents(params: &SlopeParams) -> GradingExponents {
    let (u, _) = uc_sequences(params);
    let p = params.p as i64;
    let step = Rational64::new(params.k as i64, p);
    let mut m = Vec::with_capacity(params.p);
    let mut cur = Rational64::from_integer(0);
    for ui in &u {
        m.push(cur);
        cur += step - Rational64::from_integer(ui.exponent() as i64);
    }
    debug_assert_eq!(cur, Rational64::from_integer(0));
    let min = m.iter().copied().min().unwrap_or_default();
    let values = m.into_iter().map(|x| x - min).collect();
    GradingExponents { values, canonical: p.gcd(&(params.k as i64)) == 1 }
}
