//! Index combinatorics of the genus-1 diagram for slope `p/q`.
//!
//! Triangles are indexed by `n ∈ ℤ`; with `i = n mod p`, `j = n mod q` and
//! `ℓ = ⌊n/p⌋` the triangle `T_n` has corners `θ_{i,ℓ}`, `ξ_{j-p}`, `ζ_{i,0}`.

use alloc::vec::Vec;
use num_integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("p and q must be positive, got ({p}, {q})")]
    NonPositive { p: usize, q: usize },
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: usize, q: usize },
    #[error("k = {k} is outside 0..{p}")]
    KOutOfRange { k: usize, p: usize },
}

fn check_coprime(p: usize, q: usize) -> Result<(), DiagramError> {
    if p == 0 || q == 0 {
        return Err(DiagramError::NonPositive { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(DiagramError::NotCoprime { p, q });
    }
    Ok(())
}

/// Slope data `(p, q, k)` together with `q⁻¹ mod p` and the s-sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlopeParams {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub qinv: usize,
    pub s: Vec<usize>,
}

impl SlopeParams {
    pub fn new(p: usize, q: usize, k: usize) -> Result<Self, DiagramError> {
        check_coprime(p, q)?;
        if k >= p {
            return Err(DiagramError::KOutOfRange { k, p });
        }
        let qinv = (0..p).find(|x| (q * x) % p == 1 % p).expect("q invertible mod p");
        Ok(SlopeParams { p, q, k, qinv, s: s_sequence(p, q)? })
    }

    /// Same slope at another level `k`.
    pub fn at_level(&self, k: usize) -> Result<Self, DiagramError> {
        if k >= self.p {
            return Err(DiagramError::KOutOfRange { k, p: self.p });
        }
        Ok(SlopeParams { k, ..self.clone() })
    }

    pub fn min_pq(&self) -> usize {
        self.p.min(self.q)
    }

    pub fn max_pq(&self) -> usize {
        self.p.max(self.q)
    }

    /// Block sizes at level `k`: `c_i = s_{(i-k) mod p}`.
    pub fn c(&self) -> Vec<usize> {
        (0..self.p).map(|i| self.s[(i + self.p - self.k) % self.p]).collect()
    }

    pub fn triangle(&self, n: i64) -> TriangleLabel {
        TriangleLabel::new(self.p, self.q, n)
    }

    /// Every `(p, q, k)` with `gcd(p,q) = 1`, `p + q <= bound`, ordered by `(p+q, p, k)`.
    pub fn sweep(bound: usize) -> Vec<SlopeParams> {
        let mut out = Vec::new();
        for total in 2..=bound {
            for p in 1..total {
                let q = total - p;
                if p.gcd(&q) != 1 {
                    continue;
                }
                for k in 0..p {
                    out.push(SlopeParams::new(p, q, k).expect("coprime"));
                }
            }
        }
        out
    }
}

/// Pairs `(i, ℓ)` with `ℓ < c_i`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    c: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl IndexSet {
    pub fn new(c: &[usize]) -> Self {
        let mut pairs = Vec::new();
        let mut offsets = Vec::with_capacity(c.len());
        for (i, &ci) in c.iter().enumerate() {
            offsets.push(pairs.len());
            pairs.extend((0..ci).map(|l| (i, l)));
        }
        IndexSet { c: c.to_vec(), pairs, offsets }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn c(&self) -> &[usize] {
        &self.c
    }

    /// Position of `(i, ℓ mod c_i)`, or `None` when `c_i = 0`.
    pub fn position(&self, i: usize, l: i64) -> Option<usize> {
        let ci = *self.c.get(i)?;
        if ci == 0 {
            return None;
        }
        Some(self.offsets[i] + l.rem_euclid(ci as i64) as usize)
    }
}

/// Residue data of the triangle `T_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleLabel {
    pub n: i64,
    pub i: usize,
    pub j: usize,
    pub l: i64,
}

impl TriangleLabel {
    pub fn new(p: usize, q: usize, n: i64) -> Self {
        let (l, i) = (n.div_euclid(p as i64), n.rem_euclid(p as i64));
        TriangleLabel { n, i: i as usize, j: n.rem_euclid(q as i64) as usize, l }
    }

    /// Index of the ξ corner, `j - p mod q`.
    pub fn xi(&self, p: usize, q: usize) -> usize {
        (self.j as i64 - p as i64).rem_euclid(q as i64) as usize
    }
}

/// The unique weakly decreasing sequence of `⌈q/p⌉`'s and `⌊q/p⌋`'s summing to `q`.
pub fn s_sequence(p: usize, q: usize) -> Result<Vec<usize>, DiagramError> {
    check_coprime(p, q)?;
    let (u, v) = (q / p, q % p);
    Ok((0..p).map(|i| if i < v { u + 1 } else { u }).collect())
}

/// Untwisted basepoint count `z_n`.
pub fn z_count(p: usize, q: usize, n: i64) -> Result<u64, DiagramError> {
    check_coprime(p, q)?;
    Ok(z_unchecked(p as i64, q as i64, n))
}

pub(crate) fn z_unchecked(p: i64, q: i64, n: i64) -> u64 {
    if n < p {
        // z_{-m+p-1} = Σ_t max(⌊(m - tq)/p⌋, 0)
        let m = p - 1 - n;
        let mut total = 0;
        let mut r = m;
        while r >= p {
            total += (r / p) as u64;
            r -= q;
        }
        total
    } else if n >= p + q - 1 {
        // z_{m+p+q-1} = Σ_t max(⌈(m - tq)/p⌉, 0)
        let m = n - p - q + 1;
        let mut total = 0;
        let mut r = m;
        while r > 0 {
            total += ((r + p - 1) / p) as u64;
            r -= q;
        }
        total
    } else {
        0
    }
}

/// Basepoint count of `T_n` against the twisted basepoint set of level `k`.
///
/// Rows of basepoints whose height `b` has `q·b mod p < k` are pushed to the
/// left of their lattice column; the count is taken row by row.
pub fn nzk_count(params: &SlopeParams, n: i64) -> u64 {
    let (p, q, k) = (params.p as i64, params.q as i64, params.k as i64);
    let shifted = |r: i64| r.rem_euclid(p) < k;
    let mut total = 0u64;
    if n >= p {
        // triangle below its horizontal edge; rows t >= 0 at depth t + 1
        for t in 0.. {
            let base = (n - p - q - q * t).div_euclid(p);
            if base < 0 {
                break;
            }
            let cnt = if shifted(n - q - q * t) { base } else { base + 1 };
            total += cnt.max(0) as u64;
        }
    } else {
        // triangle above its horizontal edge; rows t >= 0 at height t
        for t in 0.. {
            let base = (-n - 1 - q * t).div_euclid(p);
            if base + 2 <= 0 {
                break;
            }
            let cnt = if shifted(n + q * t) { base + 2 } else { base + 1 };
            total += cnt.max(0) as u64;
        }
    }
    total
}

/// Inclusive range `[lo, hi]` of `n` with `weight(n) < limit`, grown outward
/// from `[lo0, hi0]` on each side while the weight stays below `limit`.
pub fn window(lo0: i64, hi0: i64, limit: u64, weight: impl Fn(i64) -> u64) -> (i64, i64) {
    let (mut lo, mut hi) = (lo0, hi0);
    while weight(hi + 1) < limit {
        hi += 1;
    }
    while weight(lo - 1) < limit {
        lo -= 1;
    }
    (lo, hi)
}

/// Window of `n` with `z_n < limit`.
pub fn z_window(p: usize, q: usize, limit: u64) -> (i64, i64) {
    let (pi, qi) = (p as i64, q as i64);
    window(0, pi + qi - 1, limit, |n| z_unchecked(pi, qi, n))
}

/// Window of `n` with `n_{z(k)}(T_n) < limit`.
pub fn nzk_window(params: &SlopeParams, limit: u64) -> (i64, i64) {
    let k = params.k as i64;
    window(k, k + (params.p + params.q) as i64 - 1, limit, |n| nzk_count(params, n))
}

/// `{k,…,k+min(p,q)-1} ∪ {k+max(p,q),…,k+p+q-1}`, ascending.
pub fn special_indices(params: &SlopeParams) -> Vec<i64> {
    let k = params.k as i64;
    let (lo, hi, top) = (params.min_pq() as i64, params.max_pq() as i64, (params.p + params.q) as i64);
    (0..lo).chain(hi..top).map(|x| x + k).collect()
}

/// Alternating cycle of H- and L-edges on the special indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZag {
    pub k: usize,
    pub vertices: Vec<i64>,
    pub h_edges: Vec<(i64, i64)>,
    pub l_edges: Vec<(i64, i64)>,
}

impl ZigZag {
    /// True iff the edges form one closed path alternating H and L through every vertex.
    pub fn is_single_cycle(&self) -> bool {
        let m = self.h_edges.len();
        if m == 0 || m != self.l_edges.len() || self.vertices.len() != 2 * m {
            return false;
        }
        let partner = |edges: &[(i64, i64)], v: i64| -> Option<(usize, i64)> {
            let mut hit = None;
            for (idx, &(a, b)) in edges.iter().enumerate() {
                if a == v || b == v {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some((idx, if a == v { b } else { a }));
                }
            }
            hit
        };
        let start = self.vertices[0];
        let mut v = start;
        let mut seen = alloc::vec![false; self.vertices.len()];
        for step in 0..m {
            let Some((_, w)) = partner(&self.h_edges, v) else { return false };
            let Some((_, x)) = partner(&self.l_edges, w) else { return false };
            for u in [v, w] {
                match self.vertices.iter().position(|&y| y == u) {
                    Some(pos) if !seen[pos] => seen[pos] = true,
                    _ => return false,
                }
            }
            v = x;
            if v == start {
                return step + 1 == m && seen.iter().all(|&b| b);
            }
        }
        false
    }
}

pub fn zigzag(params: &SlopeParams) -> ZigZag {
    let (p, q) = (params.p as i64, params.q as i64);
    let k = params.k as i64;
    let lo = params.min_pq() as i64;
    let hi = params.max_pq() as i64;
    let mut h_edges = Vec::new();
    let mut l_edges = Vec::new();
    for i in 0..lo {
        let si = params.s[i as usize] as i64;
        if si != 0 {
            h_edges.push((i + k, i + si * p + k));
        }
        let t = (hi..p + q).find(|t| (t - i).rem_euclid(q) == 0).expect("residue class meets the top block");
        l_edges.push((i + k, t + k));
    }
    ZigZag { k: params.k, vertices: special_indices(params), h_edges, l_edges }
}

/// `Z(j) = s_j·p + j mod q` on `{0,…,min(p,q)-1}`.
pub fn z_bijection(p: usize, q: usize) -> Result<Vec<usize>, DiagramError> {
    let s = s_sequence(p, q)?;
    Ok((0..p.min(q)).map(|j| (s[j] * p + j) % q).collect())
}

/// Number of cycles of a permutation of `0..len`.
pub fn orbit_count(perm: &[usize]) -> usize {
    let mut seen = alloc::vec![false; perm.len()];
    let mut count = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    count
}

/// The involutions induced by `n ↦ p+q-1-n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involutions {
    pub index_set: IndexSet,
    /// `(i, ℓ) ↦ (q-i-1 mod p, -ℓ mod s_i)` on positions of `index_set`.
    pub pairs: Vec<usize>,
    /// `j ↦ -(j+p+1) mod q`.
    pub columns: Vec<usize>,
}

impl Involutions {
    pub fn pair_fixed_points(&self) -> usize {
        self.pairs.iter().enumerate().filter(|(a, b)| a == *b).count()
    }

    pub fn column_fixed_points(&self) -> usize {
        self.columns.iter().enumerate().filter(|(a, b)| a == *b).count()
    }
}

pub fn involution_labels(p: usize, q: usize) -> Result<Involutions, DiagramError> {
    let s = s_sequence(p, q)?;
    let index_set = IndexSet::new(&s);
    let (pi, qi) = (p as i64, q as i64);
    let pairs = index_set
        .pairs()
        .iter()
        .map(|&(i, l)| {
            let ibar = (qi - i as i64 - 1).rem_euclid(pi) as usize;
            index_set.position(ibar, -(l as i64)).expect("s_i = s_ibar")
        })
        .collect();
    let columns = (0..qi).map(|j| (-(j + pi + 1)).rem_euclid(qi) as usize).collect();
    Ok(Involutions { index_set, pairs, columns })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_examples() {
        assert_eq!(s_sequence(5, 3).unwrap(), [1, 1, 1, 0, 0]);
        assert_eq!(s_sequence(3, 5).unwrap(), [2, 2, 1]);
        assert_eq!(s_sequence(1, 7).unwrap(), [7]);
        assert_eq!(s_sequence(4, 2), Err(DiagramError::NotCoprime { p: 4, q: 2 }));
    }

    #[test]
    fn z_table_5_3() {
        let z: Vec<u64> = (7..=21).map(|n| z_count(5, 3, n).unwrap()).collect();
        assert_eq!(z, [0, 1, 1, 1, 2, 2, 3, 4, 4, 5, 6, 7, 8, 9, 10]);
        assert_eq!(z_count(5, 3, -1).unwrap(), 1);
        assert_eq!(z_count(5, 3, 8).unwrap(), 1);
    }

    #[test]
    fn nzk_zero_set_5_3_2() {
        let params = SlopeParams::new(5, 3, 2).unwrap();
        let zeros: Vec<i64> = (-40..40).filter(|&n| nzk_count(&params, n) == 0).collect();
        assert_eq!(zeros, (2..=9).collect::<Vec<_>>());
    }

    #[test]
    fn special_examples() {
        assert_eq!(special_indices(&SlopeParams::new(5, 3, 0).unwrap()), [0, 1, 2, 5, 6, 7]);
        assert_eq!(special_indices(&SlopeParams::new(5, 3, 2).unwrap()), [2, 3, 4, 7, 8, 9]);
        assert_eq!(special_indices(&SlopeParams::new(3, 5, 1).unwrap()), [1, 2, 3, 6, 7, 8]);
    }

    #[test]
    fn zigzag_5_3_0() {
        let z = zigzag(&SlopeParams::new(5, 3, 0).unwrap());
        assert_eq!(z.h_edges, [(0, 5), (1, 6), (2, 7)]);
        assert_eq!(z.l_edges, [(0, 6), (1, 7), (2, 5)]);
        assert!(z.is_single_cycle());
    }

    #[test]
    fn zigzag_degenerate() {
        let z = zigzag(&SlopeParams::new(1, 4, 0).unwrap());
        assert_eq!(z.h_edges, [(0, 4)]);
        assert_eq!(z.l_edges, [(0, 4)]);
        assert!(z.is_single_cycle());
        let z = zigzag(&SlopeParams::new(3, 5, 0).unwrap());
        assert_eq!(z.vertices, [0, 1, 2, 5, 6, 7]);
        assert!(z.is_single_cycle());
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(z_bijection(5, 3).unwrap(), [2, 0, 1]);
        assert_eq!(z_bijection(3, 5).unwrap(), [1, 2, 0]);
        assert_eq!(z_bijection(1, 6).unwrap(), [0]);
        assert_eq!(z_bijection(6, 1).unwrap(), [0]);
    }

    #[test]
    fn involution_examples() {
        let inv = involution_labels(5, 3).unwrap();
        assert_eq!(inv.index_set.pairs(), [(0, 0), (1, 0), (2, 0)]);
        assert_eq!(inv.pairs, [2, 1, 0]);
        assert_eq!(inv.columns, [0, 2, 1]);
        let inv = involution_labels(2, 1).unwrap();
        assert_eq!(inv.pairs, [0]);
    }

    #[test]
    fn sweep_order() {
        let sw = SlopeParams::sweep(4);
        let keys: Vec<(usize, usize, usize)> = sw.iter().map(|s| (s.p, s.q, s.k)).collect();
        assert_eq!(keys, [(1, 1, 0), (1, 2, 0), (2, 1, 0), (2, 1, 1), (1, 3, 0), (3, 1, 0), (3, 1, 1), (3, 1, 2)]);
    }
}
