use num_rational::Rational64;
use surgery_triangle_core::diagram::SlopeParams;
use surgery_triangle_core::homalg::homology;
use surgery_triangle_core::knotfloer::*;

fn r(n: i64, d: i64) -> Option<Rational64> {
    Some(Rational64::new(n, d))
}

/// Generators of a box-free staircase for `T(2,5)`, a second nontrivial test knot.
fn t25() -> KnotComplex {
    let gens = vec![
        KnotGenerator::new("x0", 0, -4),
        KnotGenerator::new("x1", -1, -3),
        KnotGenerator::new("x2", -2, -2),
        KnotGenerator::new("x3", -3, -1),
        KnotGenerator::new("x4", -4, 0),
    ];
    let arrows = vec![
        KnotArrow { from: 1, to: 0, monomials: vec![(1, 0)] },
        KnotArrow { from: 1, to: 2, monomials: vec![(0, 1)] },
        KnotArrow { from: 3, to: 2, monomials: vec![(1, 0)] },
        KnotArrow { from: 3, to: 4, monomials: vec![(0, 1)] },
    ];
    KnotComplex::new(gens, arrows).unwrap()
}

#[test]
fn unknot_free_gradings() {
    let expected = [r(-8, 5), r(-6, 5), r(-4, 5), r(-2, 5), r(0, 1)];
    for k in 1..5 {
        let h = hfk(&builtin_knot("unknot").unwrap(), &SlopeParams::new(5, 3, k).unwrap(), 64).unwrap();
        assert_eq!(h.free, expected, "k={k}");
        assert!(h.torsion.is_empty());
    }
}

#[test]
fn unknot_rank_p_on_sweep() {
    let unknot = builtin_knot("unknot").unwrap();
    for params in SlopeParams::sweep(20) {
        let h = hfk(&unknot, &params, 32).unwrap();
        assert_eq!(h.free_rank(), params.p);
        assert!(h.torsion.is_empty());
    }
}

#[test]
fn specializations_are_complexes() {
    for knot in [builtin_knot("rh_trefoil").unwrap(), t25()] {
        for params in SlopeParams::sweep(14) {
            // FiniteComplex::new checks ∂² = 0 and homogeneity
            let s = specialize(&knot, &params, 32).unwrap();
            assert_eq!(s.complex.dim(), params.p * knot.generators().len());
            assert!(action_consistent(&params));
        }
    }
}

#[test]
fn trefoil_a_block_has_two_permutation_blocks() {
    let s = specialize(&builtin_knot("rh_trefoil").unwrap(), &SlopeParams::new(5, 3, 1).unwrap(), 32).unwrap();
    let d = s.complex.differential();
    let block_nonzero = |to: usize, from: usize| {
        (0..5).any(|i| (0..5).any(|j| !d.get(to * 5 + i, from * 5 + j).is_zero()))
    };
    let blocks: Vec<(usize, usize)> =
        (0..3).flat_map(|t| (0..3).map(move |f| (t, f))).filter(|&(t, f)| block_nonzero(t, f)).collect();
    assert_eq!(blocks, [(1, 0), (2, 0)]);
    for to in [1, 2] {
        let per_col = (0..5).map(|j| (0..5).filter(|&i| !d.get(to * 5 + i, j).is_zero()).count());
        assert!(per_col.into_iter().all(|c| c == 1));
    }
}

#[test]
fn level_zero_is_p_copies() {
    for knot in [builtin_knot("rh_trefoil").unwrap(), t25()] {
        let single = homology(&u_specialization(&knot, 64).unwrap()).unwrap().ungraded();
        for (p, q) in [(5, 3), (3, 5), (4, 1), (2, 7)] {
            let h = hfk(&knot, &SlopeParams::new(p, q, 0).unwrap(), 64).unwrap().ungraded();
            let mut expected = single.clone();
            for _ in 1..p {
                expected.free.extend(single.free.iter().copied());
                expected.torsion.extend(single.torsion.iter().copied());
            }
            expected.torsion.sort();
            assert_eq!(h, expected, "({p},{q})");
        }
    }
}

#[test]
fn non_canonical_flag() {
    let s = specialize(&builtin_knot("unknot").unwrap(), &SlopeParams::new(4, 3, 2).unwrap(), 32).unwrap();
    assert!(!s.canonical);
    let s = specialize(&builtin_knot("unknot").unwrap(), &SlopeParams::new(5, 3, 2).unwrap(), 32).unwrap();
    assert!(s.canonical);
}

#[test]
fn inhomogeneous_knot_rejected() {
    let gens = vec![KnotGenerator::new("a", 0, 0), KnotGenerator::new("b", 0, 0)];
    let arrows = vec![KnotArrow { from: 0, to: 1, monomials: vec![(1, 0)] }];
    assert!(matches!(KnotComplex::new(gens, arrows), Err(KnotError::NotHomogeneous { .. })));
}
