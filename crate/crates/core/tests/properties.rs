use imbf_core::oracle::all_perms;
use imbf_core::{
    alg2_extend, alg3_count, apply, build_poset, canonical_perm, concat, count_downsets,
    enumerate_dn, enumerate_downsets, fix_set, fix_set_of_perm, is_fixed, leq, lift,
    oracle_downsets, oracle_phi, partitions, phi, quadrant_count_two_fixed, split, width, Budgets,
    CycleType, Mbf, OrbitSet, Strategy as Method, VarPerm, DEDEKIND,
};
use proptest::prelude::*;

fn b() -> Budgets {
    Budgets::default()
}

fn perm_strategy(max_n: u8) -> impl Strategy<Value = VarPerm> {
    (0..=max_n).prop_flat_map(|n| {
        Just((0..n).collect::<Vec<u8>>())
            .prop_shuffle()
            .prop_map(|m| VarPerm::new(m).unwrap())
    })
}

fn dn_member(n: u8) -> impl Strategy<Value = Mbf> {
    let d = enumerate_dn(n).unwrap().to_vec();
    (0..d.len()).prop_map(move |i| d[i])
}

proptest! {
    #[test]
    fn concat_split_round_trip((a, b) in (0u8..=4).prop_flat_map(|n| (dn_member(n), dn_member(n)))) {
        let (lo, hi) = if leq(&a, &b).unwrap() { (a, b) } else { (a.meet(&b), a.join(&b)) };
        let f = concat(&lo, &hi).unwrap();
        prop_assert_eq!(split(&f).unwrap(), (lo, hi));
        prop_assert!(enumerate_dn(f.n()).unwrap().contains(&f));
    }

    #[test]
    fn duality_reverses_order((a, b) in (0u8..=6).prop_flat_map(|n| (dn_member(n), dn_member(n)))) {
        prop_assert_eq!(a.dual().dual(), a);
        prop_assert_eq!(leq(&a, &b).unwrap(), leq(&b.dual(), &a.dual()).unwrap());
        prop_assert_eq!(a.meet(&b).dual(), a.dual().join(&b.dual()));
    }

    #[test]
    fn lifting_is_a_homomorphism((p, q) in perm_strategy(6).prop_flat_map(|p| {
        let n = p.n();
        (Just(p), Just((0..n).collect::<Vec<u8>>()).prop_shuffle().prop_map(|m| VarPerm::new(m).unwrap()))
    })) {
        prop_assert_eq!(lift(&p.compose(&q)), lift(&p).compose(&lift(&q)));
        prop_assert_eq!(lift(&p.inverse()), lift(&p).inverse());
    }

    #[test]
    fn lifted_action_preserves_monotonicity((p, f) in perm_strategy(5).prop_flat_map(|p| {
        let n = p.n();
        (Just(p), dn_member(n))
    })) {
        let g = apply(&lift(&p), &f).unwrap();
        prop_assert!(enumerate_dn(p.n()).unwrap().contains(&g));
        prop_assert_eq!(g.count_ones(), f.count_ones());
        let h = apply(&lift(&p.inverse()), &g).unwrap();
        prop_assert_eq!(h, f);
    }
}

#[test]
fn orbit_order_is_a_partial_order_matching_the_existential_rule() {
    for n in 0..=4u8 {
        for p in all_perms(n) {
            let poset = build_poset(&lift(&p)).unwrap();
            let orbits = poset.orbits();
            let k = poset.len();
            for a in 0..k {
                assert!(!poset.less(a, a));
                for c in 0..k {
                    let exists = orbits[a]
                        .iter()
                        .any(|&s| orbits[c].iter().any(|&t| s & !t == 0));
                    assert_eq!(poset.leq(a, c), exists, "{p}: {a} vs {c}");
                    if a != c {
                        assert!(!(poset.less(a, c) && poset.less(c, a)));
                    }
                    for e in 0..k {
                        if poset.less(a, c) && poset.less(c, e) {
                            assert!(poset.less(a, e));
                        }
                    }
                }
            }
            let pos: Vec<usize> = {
                let mut v = vec![0; k];
                for (i, &o) in poset.linear_extension().iter().enumerate() {
                    v[o] = i;
                }
                v
            };
            for a in 0..k {
                for c in poset.strictly_above(a).iter() {
                    assert!(pos[a] < pos[c]);
                }
            }
        }
    }
}

#[test]
fn downsets_are_closed_and_counted_consistently() {
    for n in 0..=5u8 {
        for t in partitions(n).unwrap() {
            let p = build_poset(&lift(&canonical_perm(&t))).unwrap();
            let count = count_downsets(&p);
            let w = width(&p);
            assert!(1u128 << w <= count, "{t}");
            assert!(p.len() >= 128 || count <= 1u128 << p.len(), "{t}");
            if t.written_total() == n {
                let all = enumerate_downsets(&p, 1 << 24).unwrap();
                assert_eq!(all.len() as u128, count, "{t}");
                assert!(all.iter().all(|d| p.is_downset(&d.0)));
            }
            if p.len() <= 20 {
                assert_eq!(oracle_downsets(&p).unwrap() as u128, count, "{t}");
            }
        }
    }
}

#[test]
fn downsets_map_to_fixed_monotone_functions() {
    for t in partitions(4).unwrap() {
        let perm = canonical_perm(&t);
        let bp = lift(&perm);
        let p = build_poset(&bp).unwrap();
        let dn = enumerate_dn(4).unwrap();
        for d in enumerate_downsets(&p, 1 << 20).unwrap() {
            let f = p.function_of(&d);
            assert!(dn.contains(&f));
            assert!(is_fixed(&f, &bp).unwrap());
        }
    }
}

#[test]
fn fixed_counts_depend_only_on_cycle_type() {
    for n in 0..=4u8 {
        for p in all_perms(n) {
            let t = p.cycle_type();
            assert_eq!(
                oracle_phi(&p).unwrap(),
                oracle_phi(&canonical_perm(&t)).unwrap(),
                "{p}"
            );
            assert_eq!(
                fix_set_of_perm(&p, &b()).unwrap().len() as u128,
                oracle_phi(&p).unwrap(),
                "{p}"
            );
        }
    }
}

#[test]
fn phi_lies_between_two_and_dedekind() {
    for n in 0..=4u8 {
        for t in partitions(n).unwrap() {
            let v = phi(&t, Method::Auto, &b()).unwrap().phi;
            assert!(v >= 2);
            assert!(v <= DEDEKIND[n as usize]);
            assert_eq!(v == DEDEKIND[n as usize], t.is_identity(), "{t}");
        }
    }
}

#[test]
fn fixed_sets_hold_only_fixed_monotone_functions() {
    for n in 0..=5u8 {
        for t in partitions(n).unwrap() {
            let fs = fix_set(&t, &b()).unwrap();
            let bp = lift(fs.perm());
            let dn = enumerate_dn(n).unwrap();
            let items = fs.elements().to_vec();
            assert!(items.windows(2).all(|w| w[0] < w[1]));
            assert!(items
                .iter()
                .all(|f| dn.contains(f) && is_fixed(f, &bp).unwrap()));
            assert_eq!(
                items.len() as u128,
                oracle_phi(&canonical_perm(&t)).unwrap()
            );
        }
    }
}

#[test]
fn extension_matches_the_oracle() {
    let fs = fix_set(&CycleType::parse(4, "2+2").unwrap(), &b()).unwrap();
    assert_eq!(fs.len(), 28);
    let ext = alg2_extend(&fs, &b()).unwrap();
    let perm = VarPerm::from_cycles(5, &[&[1, 2], &[3, 4]]).unwrap();
    assert_eq!(ext.len() as u128, oracle_phi(&perm).unwrap());
}

#[test]
fn split_with_identity_inside_matches_the_oracle() {
    for n in 0..=3u8 {
        let inner = VarPerm::identity(n);
        let d = fix_set_of_perm(&inner, &b()).unwrap();
        let got = alg3_count(&inner, &d, d.elements()).unwrap();
        let mut cycles: Vec<u8> = (0..n).collect();
        cycles.extend([n + 1, n]);
        let target = VarPerm::new(cycles).unwrap();
        assert_eq!(got, oracle_phi(&target).unwrap(), "n + 2 = {}", n + 2);
    }
}

#[test]
fn split_with_a_non_involution_inside() {
    // (123) inside, swap on x4 x5: the base set is Fix((132), D_3).
    let inner = VarPerm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
    let f = fix_set_of_perm(&inner, &b()).unwrap();
    let base = fix_set_of_perm(&inner.compose(&inner), &b()).unwrap();
    let got = alg3_count(&inner, &f, base.elements()).unwrap();
    let target = VarPerm::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
    assert_eq!(got, oracle_phi(&target).unwrap());
}

#[test]
fn quadrant_count_is_the_four_chain_count() {
    for n in 0..=2u8 {
        let d = enumerate_dn(n).unwrap().to_vec();
        let le = |a: &Mbf, c: &Mbf| leq(a, c).unwrap();
        let mut brute = 0u128;
        for a in &d {
            for x in &d {
                for y in &d {
                    for z in &d {
                        if le(a, x) && le(x, z) && le(a, y) && le(y, z) {
                            brute += 1;
                        }
                    }
                }
            }
        }
        let fs = fix_set(&CycleType::identity(n).unwrap(), &b()).unwrap();
        assert_eq!(quadrant_count_two_fixed(&fs).unwrap(), brute);
        assert_eq!(brute, DEDEKIND[n as usize + 2]);
    }
}

#[test]
fn quadrant_on_a_chain_matches_the_oracle() {
    let chain = fix_set(&CycleType::parse(3, "3").unwrap(), &b()).unwrap();
    let got = quadrant_count_two_fixed(&chain).unwrap();
    let target = VarPerm::from_cycles(5, &[&[1, 2, 3]]).unwrap();
    assert_eq!(got, oracle_phi(&target).unwrap());
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let cases = [(6u8, "1"), (7, "2"), (7, "3"), (6, "2+2"), (7, "2+2+2")];
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            cases
                .iter()
                .map(|&(n, s)| {
                    phi(&CycleType::parse(n, s).unwrap(), Method::Auto, &b())
                        .unwrap()
                        .phi
                })
                .collect::<Vec<_>>()
        })
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn orbit_sets_behave_like_sets() {
    let mut s = OrbitSet::empty();
    for i in [0, 63, 64, 130, 255] {
        s.insert(i);
    }
    assert_eq!(s.len(), 5);
    assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 130, 255]);
    assert!(s.contains(130) && !s.contains(131));
    assert_eq!(s.first(), Some(0));
    let t = OrbitSet::prefix(64);
    assert_eq!(s.intersect(&t).len(), 2);
    assert_eq!(s.minus(&t).len(), 3);
    assert!(s.intersect(&t).is_subset(&t));
}
