use midk::exchange::{check_ndep, check_polymatroidal, check_weakly_polymatroidal};
use midk::quotients::{is_admissible_order, ndep_admissible_order};
use midk::{Monomial, MonomialIdeal, VariableOrder};
use proptest::prelude::*;

fn ideal_strategy(max_n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens)
            .prop_map(move |rows| MonomialIdeal::from_exponents(n, rows).unwrap())
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (MonomialIdeal, Vec<usize>)> {
    ideal_strategy(max_n, 6, 3).prop_flat_map(|i| {
        let n = i.n();
        (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn minimalization_is_idempotent(i in ideal_strategy(4, 7, 4)) {
        let again = MonomialIdeal::minimalize(i.generators().to_vec(), i.n()).unwrap();
        prop_assert_eq!(&again, &i);
        let rows: Vec<Vec<u32>> = i.generators().iter().map(|g| g.exponents().to_vec()).collect();
        prop_assert_eq!(MonomialIdeal::from_exponents(i.n(), rows).unwrap(), i);
    }

    #[test]
    fn lattice_laws(a in ideal_strategy(3, 4, 3), b in ideal_strategy(3, 4, 3)) {
        prop_assume!(a.n() == b.n());
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert!(a.multiply(&b).unwrap().is_subset_of(&a.intersect(&b).unwrap()).unwrap());
        prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
        prop_assert_eq!(a.power(2).unwrap(), a.multiply(&a).unwrap());
    }

    #[test]
    fn colon_by_generator_is_unit(i in ideal_strategy(4, 5, 3)) {
        for g in i.generators() {
            prop_assert!(i.colon(g).unwrap().is_unit());
        }
    }

    #[test]
    fn ndep_is_invariant_under_relabeling((i, perm) in with_permutation(4)) {
        let relabeled = i.permute(&perm);
        prop_assert_eq!(check_ndep(&i).unwrap().holds(), check_ndep(&relabeled).unwrap().holds());
    }

    #[test]
    fn admissibility_is_invariant_under_relabeling((i, perm) in with_permutation(4)) {
        let order: Vec<Monomial> = i.generators().to_vec();
        let moved: Vec<Monomial> = order.iter().map(|m| m.permute(&perm)).collect();
        prop_assert_eq!(
            is_admissible_order(&i, &order).unwrap().holds(),
            is_admissible_order(&i.permute(&perm), &moved).unwrap().holds()
        );
    }

    #[test]
    fn ndep_ideals_have_admissible_orders_and_stay_ndep_times_m(i in ideal_strategy(4, 6, 3)) {
        prop_assume!(check_ndep(&i).unwrap().holds());
        let order = ndep_admissible_order(&i).unwrap();
        prop_assert!(is_admissible_order(&i, order.as_slice()).unwrap().holds());
        let mi = MonomialIdeal::maximal_ideal(i.n()).multiply(&i).unwrap();
        prop_assert!(check_ndep(&mi).unwrap().holds());
    }

    #[test]
    fn polymatroidal_implies_ndep(n in 1..=4usize, d in 1..=3u32, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=6)) {
        let all = MonomialIdeal::veronese(&(0..n).collect::<Vec<_>>(), d, n).unwrap();
        let chosen: Vec<Monomial> = picks.iter().map(|p| all.generators()[p.index(all.len())].clone()).collect();
        let i = MonomialIdeal::minimalize(chosen, n).unwrap();
        if check_polymatroidal(&i).unwrap().holds() {
            prop_assert!(check_ndep(&i).unwrap().holds());
            // Polymatroidal ideals are weakly polymatroidal under every order.
            prop_assert!(check_weakly_polymatroidal(&i, &VariableOrder::natural(n)).unwrap().holds());
        }
    }

    #[test]
    fn veronese_ideals_are_polymatroidal(vars in prop::collection::btree_set(0..5usize, 1..=4), a in 1..=3u32) {
        let vars: Vec<usize> = vars.into_iter().collect();
        let v = MonomialIdeal::veronese(&vars, a, 5).unwrap();
        prop_assert!(check_polymatroidal(&v).unwrap().holds());
        prop_assert!(check_ndep(&v).unwrap().holds());
    }

    #[test]
    fn certificates_replay(i in ideal_strategy(4, 6, 3)) {
        if let Some(w) = check_ndep(&i).unwrap().witness() {
            prop_assert!(w.replays(&i));
            for r in &w.tried {
                prop_assert!(!i.contains(&r.monomial).unwrap());
            }
        }
        let json = serde_json::to_string(&i).unwrap();
        prop_assert_eq!(serde_json::from_str::<MonomialIdeal>(&json).unwrap(), i);
    }
}

#[test]
fn overflow_is_an_error() {
    let big = Monomial::new(vec![u32::MAX]);
    assert!(big.mul(&Monomial::var(0, 1)).is_err());
}
