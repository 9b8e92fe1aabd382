use num_rational::Rational64;
use proptest::prelude::*;
use surgery_triangle_core::diagram::SlopeParams;
use surgery_triangle_core::localsys::*;

#[test]
fn recover_on_sweep() {
    for params in SlopeParams::sweep(30) {
        assert!(recover_isomorphism_check(&params), "{params:?}");
    }
}

#[test]
fn monodromy_shape_on_sweep() {
    for params in SlopeParams::sweep(25) {
        let phi = monodromy_infinity(&params).monodromy;
        assert!(phi.is_bijective());
        assert!(phi.entries_in_one_or_u());
        assert_eq!(phi.u_entry_count(), params.k);
        assert_eq!(phi.cycle_count(), 1);

        let e = model_module(&params).monodromy;
        assert_eq!(e.total_exponent(), params.k as i64);
        let (_, c) = uc_sequences(&params);
        assert_eq!(c.iter().sum::<usize>(), params.q);
    }
}

#[test]
fn grading_recursion_closes() {
    for params in SlopeParams::sweep(25) {
        let g = grading_exponents(&params);
        let (u, _) = uc_sequences(&params);
        let step = Rational64::new(params.k as i64, params.p as i64);
        for (i, ui) in u.iter().enumerate() {
            let next = g.values[(i + 1) % params.p];
            assert_eq!(next, g.values[i] + step - i64::from(ui.exponent()));
        }
        assert!(g.values.iter().all(|v| *v >= Rational64::from_integer(0)));
        if g.canonical {
            let p = params.p as i64;
            let mut fr: Vec<_> = g.values.iter().map(|v| (*v * p).to_integer().rem_euclid(p)).collect();
            fr.sort_unstable();
            assert_eq!(fr, (0..params.p as i64).collect::<Vec<_>>());
        }
    }
}

#[test]
fn figure_sequences() {
    use Mono::{One, U};
    let p = |a, b, c| SlopeParams::new(a, b, c).unwrap();
    assert_eq!(uc_sequences(&p(5, 3, 2)), (vec![One, One, U, One, U], vec![0, 0, 1, 1, 1]));
    assert_eq!(uc_sequences(&p(5, 3, 0)), (vec![One; 5], vec![1, 1, 1, 0, 0]));
    assert_eq!(p(3, 5, 0).s, [2, 2, 1]);
}

proptest! {
    #[test]
    fn genperm_group_laws(perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(),
                          exps in proptest::collection::vec(0i64..3, 7)) {
        let g = GenPerm { target: perm, exps };
        let id = GenPerm::identity(7);
        prop_assert_eq!(g.compose(&g.inverse()), id.clone());
        prop_assert_eq!(g.inverse().compose(&g), id.clone());
        prop_assert_eq!(g.compose(&id), g.clone());
        let m = g.to_matrix(16);
        let m2 = g.compose(&g).to_matrix(16);
        prop_assert_eq!(m.checked_mul(&m).unwrap(), m2);
    }
}
