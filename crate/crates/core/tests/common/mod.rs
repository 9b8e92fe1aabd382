#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surgery_triangle_core::homalg::{FiniteComplex, scalar_matrix};
use surgery_triangle_core::useries::{BitMatrix, Series, SeriesMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_series(rng: &mut impl Rng, n: usize, max_exp: usize) -> Series {
    Series::from_exponents((0..max_exp.min(n)).filter(|_| rng.gen_bool(0.3)), n)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, n: usize, max_exp: usize) -> SeriesMatrix {
    SeriesMatrix::from_fn(rows, cols, n, |_, _| random_series(rng, n, max_exp))
}

/// Random matrix that is invertible mod `U`.
pub fn random_invertible(rng: &mut impl Rng, dim: usize, n: usize) -> SeriesMatrix {
    loop {
        let m = random_matrix(rng, dim, dim, n, 6);
        if m.mod_u().rank() == dim {
            return m;
        }
    }
}

/// `P · D₀ · P⁻¹` with `D₀` a sum of arrows `g ↦ U^a h` and free generators.
pub fn random_complex(rng: &mut impl Rng, dim: usize, n: usize, max_exp: usize) -> FiniteComplex {
    random_complex_with(rng, dim, n, max_exp, 0.7)
}

/// Contractible when `dim` is even and `max_exp` is 0.
pub fn random_acyclic(rng: &mut impl Rng, dim: usize, n: usize) -> FiniteComplex {
    random_complex_with(rng, dim, n, 0, 1.0)
}

fn random_complex_with(rng: &mut impl Rng, dim: usize, n: usize, max_exp: usize, pair_prob: f64) -> FiniteComplex {
    let mut d0 = SeriesMatrix::zeros(dim, dim, n);
    let mut i = 0;
    while i + 1 < dim {
        if rng.gen_bool(pair_prob) {
            d0.set(i + 1, i, Series::monomial(rng.gen_range(0..=max_exp), n));
            i += 2;
        } else {
            i += 1;
        }
    }
    let p = random_invertible(rng, dim, n);
    let d = p.checked_mul(&d0).unwrap().checked_mul(&p.inverse().unwrap()).unwrap();
    FiniteComplex::ungraded(d).unwrap()
}

pub fn block_diag(a: &SeriesMatrix, b: &SeriesMatrix) -> SeriesMatrix {
    let n = a.trunc_order();
    let (ra, ca) = (a.rows(), a.cols());
    SeriesMatrix::from_fn(ra + b.rows(), ca + b.cols(), n, |r, c| match (r < ra, c < ca) {
        (true, true) => a.get(r, c).clone(),
        (false, false) => b.get(r - ra, c - ca).clone(),
        _ => Series::zero(n),
    })
}

pub struct ConeData {
    pub c0: FiniteComplex,
    pub c1: FiniteComplex,
    pub c2: FiniteComplex,
    pub f0: SeriesMatrix,
    pub f1: SeriesMatrix,
    pub h0: SeriesMatrix,
}

/// `C1 = C0 ⊕ E`, `f0 = ι(α + ∂h + h∂)`, `f1 = ∂k + k∂`, `H0 = k f0`; total rank at most 8.
pub fn random_cone(rng: &mut impl Rng, n: usize) -> ConeData {
    // half the corpus has contractible E and C2 and α = 1, so the cone is acyclic
    let tame = rng.gen_bool(0.5);
    let d0 = rng.gen_range(1..=3);
    let de = if tame { 2 * rng.gen_range(0..=1) } else { rng.gen_range(0..=2) };
    let room = (8 - 2 * d0 - de).min(3);
    let d2 = if tame { 2 * rng.gen_range(0..=room / 2) } else { rng.gen_range(0..=room) };
    let c0 = random_complex(rng, d0, n, 3);
    let (e, c2) = if tame {
        (random_acyclic(rng, de, n), random_acyclic(rng, d2, n))
    } else {
        (random_complex(rng, de, n, 3), random_complex(rng, d2, n, 3))
    };
    let c1 = FiniteComplex::ungraded(block_diag(c0.differential(), e.differential())).unwrap();

    let alpha = match (tame, rng.gen_range(0..4)) {
        (true, _) | (false, 1) => Series::one(n),
        (false, 0) => Series::zero(n),
        _ => Series::monomial(rng.gen_range(0..3), n),
    };
    let h = random_matrix(rng, d0, d0, n, 3);
    let dd = c0.differential();
    let g = scalar_matrix(&alpha, d0)
        .checked_add(&dd.checked_mul(&h).unwrap())
        .unwrap()
        .checked_add(&h.checked_mul(dd).unwrap())
        .unwrap();
    let incl = SeriesMatrix::from_fn(d0 + de, d0, n, |r, c| if r == c { Series::one(n) } else { Series::zero(n) });
    let f0 = incl.checked_mul(&g).unwrap();

    let k = random_matrix(rng, d2, d0 + de, n, 3);
    let f1 = c2
        .differential()
        .checked_mul(&k)
        .unwrap()
        .checked_add(&k.checked_mul(c1.differential()).unwrap())
        .unwrap();
    let h0 = k.checked_mul(&f0).unwrap();
    ConeData { c0, c1, c2, f0, f1, h0 }
}

/// `dim_F₂ H(C ⊗ F₂[U]/U^N)` from the `nN × nN` expansion.
pub fn brute_homology_dim(c: &FiniteComplex) -> usize {
    let (dim, n) = (c.dim(), c.trunc_order());
    let mut m = BitMatrix::zeros(dim * n, dim * n);
    let d = c.differential();
    for r in 0..dim {
        for col in 0..dim {
            for f in d.get(r, col).exponents() {
                for e in 0..n - f {
                    m.flip(r * n + e + f, col * n + e);
                }
            }
        }
    }
    dim * n - 2 * m.rank()
}
