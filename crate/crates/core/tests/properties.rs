use num_bigint::BigUint;
use orddec::counting::{card_ord, card_ord_full, catalan, hat_r, max_reversing_rank, narayana};
use orddec::generators::{
    b_set, b_set_by_filter, g_set, lambda, minimal_generating_set, LambdaSpec, Regime,
};
use orddec::{
    close, count_by_enumeration, enumerate, Family, FamilySelector, MaximalDescriptor,
    SemigroupSet, Transformation,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn any_map(max_n: usize) -> impl Strategy<Value = Transformation> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(1..=n, n).prop_map(|v| Transformation::new(&v).unwrap())
    })
}

fn decreasing_map(max_n: usize) -> impl Strategy<Value = Transformation> {
    (1..=max_n).prop_flat_map(|n| {
        (1..=n)
            .map(|i| (1..=i).boxed())
            .collect::<Vec<_>>()
            .prop_map(|v| Transformation::new(&v).unwrap())
    })
}

fn same_size_triple(
    max_n: usize,
) -> impl Strategy<Value = (Transformation, Transformation, Transformation)> {
    (1..=max_n).prop_flat_map(|n| {
        let one =
            proptest::collection::vec(1..=n, n).prop_map(|v| Transformation::new(&v).unwrap());
        (one.clone(), one.clone(), one)
    })
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in same_size_triple(12)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn line_format_round_trips(a in any_map(20)) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Transformation>().unwrap(), a.clone());
        prop_assert_eq!(Transformation::parse_with_len(&text, a.n()).unwrap(), a);
    }

    #[test]
    fn serde_round_trips(a in any_map(16)) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Transformation>(&json).unwrap(), a);
    }

    #[test]
    fn identity_is_neutral(a in any_map(16)) {
        let id = Transformation::identity(a.n());
        prop_assert_eq!(a.then(&id), a.clone());
        prop_assert_eq!(id.then(&a), a);
    }

    #[test]
    fn rank_never_grows_under_composition((a, b, _c) in same_size_triple(12)) {
        let ab = a.then(&b);
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        prop_assert!(a.kernel_refines(&ab));
    }

    #[test]
    fn fix_set_of_decreasing_product(a in decreasing_map(12), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<usize> = (1..=a.n()).map(|i| rng.gen_range(1..=i)).collect();
        let b = Transformation::new(&v).unwrap();
        let expected: Vec<usize> = a.fix_set().into_iter().filter(|x| b.fix_set().contains(x)).collect();
        prop_assert_eq!(a.then(&b).fix_set(), expected);
    }

    #[test]
    fn oriented_decreasing_products_stay_in_ord(
        n in 1usize..=9,
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let whole = enumerate(&FamilySelector::new(n, Family::Ord { max_rank: None }).unwrap()).unwrap();
        let (a, b) = (i.get(whole.as_slice()), j.get(whole.as_slice()));
        prop_assert!(whole.contains(&a.then(b)));
    }

    #[test]
    fn membership_matches_family_predicate(a in decreasing_map(10), r in 1usize..=10) {
        let sel = Family::ord(r);
        prop_assert_eq!(sel.contains(&a), a.is_in_ord() && a.rank() <= r);
        prop_assert_eq!(Family::opd(r).contains(&a), a.is_in_opd() && a.rank() <= r);
        if a.is_in_ord() {
            prop_assert!(a.is_in_opd() ^ a.is_in_rd_star());
        }
    }

    #[test]
    fn degrees_are_defined_on_their_domains(a in decreasing_map(10)) {
        prop_assert_eq!(a.ord_degree().is_ok(), a.is_in_rd_star());
        if a.is_in_rd_star() {
            let m = a.ord_degree().unwrap();
            prop_assert!(a.images()[..m - 1].iter().all(|&v| v == 1));
            prop_assert!(a.apply(m) != 1);
        }
        if a.is_in_opd() {
            let d = a.opd_degree().unwrap();
            let prefix: Vec<usize> = a.images()[..d].iter().map(|&v| v as usize).collect();
            prop_assert!(prefix.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn descriptor_json_round_trips(n in 4usize..=9, r_off in 0usize..6, pick in any::<prop::sample::Index>()) {
        let r = 3 + r_off % (n - 3);
        let all = orddec::maximal_descriptors(n, r).unwrap();
        let d = pick.get(&all);
        prop_assert_eq!(&MaximalDescriptor::from_json(&d.to_json()).unwrap(), d);
    }
}

#[test]
fn ord_full_matches_enumeration_for_small_n() {
    for n in 1..=10 {
        let counted =
            count_by_enumeration(&FamilySelector::new(n, Family::Ord { max_rank: None }).unwrap())
                .unwrap();
        assert_eq!(card_ord_full(n).unwrap(), counted, "n={n}");
        assert_eq!(card_ord(n, n).unwrap(), counted, "n={n}");
    }
}

#[test]
fn catalan_is_a_row_sum_of_narayana() {
    for n in 1..=30 {
        let row: BigUint = (1..=n).map(|k| narayana(n, k).unwrap()).sum();
        assert_eq!(row, catalan(n).unwrap());
    }
}

#[test]
fn enumeration_partitions_ord_by_rank() {
    for n in 4..=8 {
        let whole =
            enumerate(&FamilySelector::new(n, Family::Ord { max_rank: None }).unwrap()).unwrap();
        let mut total = 0;
        for r in 1..=n {
            let below = if r == 1 {
                0
            } else {
                card_ord(n, r - 1).unwrap().try_into().unwrap()
            };
            let at: usize = card_ord(n, r).unwrap().try_into().unwrap();
            total += whole.iter().filter(|a| a.rank() == r).count();
            assert_eq!(total, at, "n={n} r={r}");
            assert!(below <= at);
        }
        assert_eq!(total, whole.len());
    }
}

#[test]
fn b_sets_agree_with_their_filter() {
    for n in 3..=8 {
        for r in 2..n {
            for m in (r + 1)..=n {
                let direct = b_set(n, r, m).unwrap();
                assert_eq!(
                    direct,
                    b_set_by_filter(n, r, m).unwrap(),
                    "n={n} r={r} m={m}"
                );
                let c = orddec::counting::binomial(m as i64 - 1, r as i64 - 1);
                assert_eq!(BigUint::from(direct.len()), c, "n={n} r={r} m={m}");
            }
        }
    }
}

#[test]
fn lambda_regimes_follow_the_threshold() {
    for n in 4..=12 {
        for rhat in 3..=max_reversing_rank(n) {
            for m in 3..n {
                let spec = LambdaSpec::new(n, rhat, m).unwrap();
                let expected = if m + rhat <= n + 1 {
                    Regime::Eq4
                } else {
                    Regime::Eq5
                };
                assert_eq!(spec.regime, expected);
                let lam = lambda(n, rhat, m).unwrap();
                assert!(lam.is_in_rd_star());
                assert_eq!(lam.ord_degree().unwrap(), m);
                assert!(lam.rank() <= rhat);
            }
        }
    }
}

#[test]
fn generating_set_sizes_grow_beyond_enumeration_bound() {
    for n in 13..=16 {
        for r in 3..n {
            let gens = minimal_generating_set(n, r).unwrap();
            let rank = orddec::counting::rank_ord(n, r).unwrap();
            assert_eq!(BigUint::from(gens.len()), rank, "n={n} r={r}");
            let rhat = hat_r(n, r).unwrap().value;
            assert_eq!(g_set(n, r).unwrap().len(), n - 3, "n={n} rhat={rhat}");
        }
    }
}

#[test]
fn closure_of_generators_is_a_fixed_point() {
    let gens = minimal_generating_set(5, 3).unwrap();
    let whole = close(&gens).unwrap();
    assert_eq!(whole.len(), 54);
    assert_eq!(close(&whole).unwrap(), whole);
    let empty = SemigroupSet::empty(5);
    assert!(close(&empty).is_err());
}
