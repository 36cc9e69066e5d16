use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use hyperwitt::function_field::{local_class, square_class, Place, Poly, RatFn};
use hyperwitt::gf::Gf;
use hyperwitt::hyperfield::{
    find_isomorphism, prime, quotient, rigidity_report, Elem, FiniteHyperfield, Subgroup,
};
use hyperwitt::quadratic::{corpus, group_extension_build, hilbert_symbol_int, qh, QPlace};

/// Corpus members small enough for exhaustive subgroup and isomorphism work.
fn pool() -> &'static [(String, Arc<FiniteHyperfield>)] {
    static POOL: OnceLock<Vec<(String, Arc<FiniteHyperfield>)>> = OnceLock::new();
    POOL.get_or_init(|| corpus().unwrap().into_iter().filter(|(_, h)| h.order() <= 17).collect())
}

fn hyperfield() -> impl Strategy<Value = Arc<FiniteHyperfield>> {
    (0..pool().len()).prop_map(|i| pool()[i].1.clone())
}

/// A hyperfield with the subgroup generated by two random elements.
fn with_subgroup() -> impl Strategy<Value = (Arc<FiniteHyperfield>, Subgroup)> {
    (hyperfield(), any::<u16>(), any::<u16>()).prop_map(|(h, a, b)| {
        let m = h.order() - 1;
        let gens: Vec<Elem> = [a, b].iter().map(|&x| 1 + x as usize % m).collect();
        let t = Subgroup::generated_by(&h, &gens).unwrap();
        (h, t)
    })
}

fn place() -> impl Strategy<Value = QPlace> {
    prop_oneof![
        Just(QPlace::Infinity),
        Just(QPlace::Prime(2)),
        Just(QPlace::Prime(3)),
        Just(QPlace::Prime(5)),
        Just(QPlace::Prime(7)),
    ]
}

fn nonzero_int() -> impl Strategy<Value = i64> {
    prop_oneof![-60i64..=-1, 1i64..=60]
}

fn ratfn(q: u64) -> impl Strategy<Value = RatFn> {
    let f = Gf::new(q).unwrap();
    (prop::collection::vec(0..q as u32, 1..6), prop::collection::vec(0..q as u32, 1..4)).prop_filter_map(
        "nonzero",
        move |(n, d)| {
            let (n, d) = (Poly::new(&f, n), Poly::new(&f, d));
            (!n.is_zero() && !d.is_zero()).then(|| RatFn::new(n, d).unwrap())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_symbol_is_symmetric_and_bimultiplicative(a in nonzero_int(), b in nonzero_int(), c in nonzero_int(), v in place()) {
        let s = |x, y| hilbert_symbol_int(x, y, v).unwrap();
        prop_assert_eq!(s(a, b), s(b, a));
        prop_assert_eq!(s(a * b, c), s(a, c) * s(b, c));
        prop_assert_eq!(s(a, -a), 1);
    }

    #[test]
    fn square_class_is_a_homomorphism(f in ratfn(3), g in ratfn(3)) {
        let (cf, cg) = (square_class(&f).unwrap(), square_class(&g).unwrap());
        prop_assert_eq!(square_class(&f.mul(&g)).unwrap(), cf.mul(&cg));
        prop_assert_eq!(square_class(&f.square().mul(&g)).unwrap(), cg);
    }

    #[test]
    fn local_class_ignores_squares(f in ratfn(5), u in ratfn(5), which in 0usize..4) {
        let f5 = Gf::new(5).unwrap();
        let p = match which {
            0 => Place::Infinite,
            1 => Place::finite(Poly::new(&f5, vec![0, 1])).unwrap(),
            2 => Place::finite(Poly::new(&f5, vec![2, 1])).unwrap(),
            _ => Place::finite(Poly::new(&f5, vec![2, 0, 1])).unwrap(),
        };
        let p = &p;
        prop_assert_eq!(local_class(&u.square().mul(&f), p).unwrap(), local_class(&f, p).unwrap());
    }

    #[test]
    fn prime_and_quotient_commute((h, t) in with_subgroup()) {
        let (q, _) = quotient(&h, &t).unwrap();
        let (qp, _) = quotient(&prime(&h), &t).unwrap();
        let pq = prime(&q);
        for a in q.elements() {
            for b in q.elements() {
                prop_assert_eq!(qp.sum(a, b), pq.sum(a, b));
            }
        }
    }

    #[test]
    fn zero_in_sum_only_for_negatives(h in hyperfield(), a in any::<u16>(), b in any::<u16>()) {
        let (a, b) = (a as usize % h.order(), b as usize % h.order());
        prop_assert_eq!(h.sum(a, b).contains(h.zero()), b == h.neg(a));
    }

    #[test]
    fn isomorphism_search_is_symmetric(h1 in hyperfield(), h2 in hyperfield()) {
        let forward = find_isomorphism(&h1, &h2);
        prop_assert_eq!(forward.is_some(), find_isomorphism(&h2, &h1).is_some());
        if let Some(w) = forward {
            prop_assert!(w.is_isomorphism());
        }
    }

    #[test]
    fn basic_part_is_a_union_of_cosets((h, t) in with_subgroup()) {
        let basic = rigidity_report(&h, Some(&t)).unwrap().basic;
        for x in basic.iter() {
            prop_assert!(t.coset(&h, x).is_subset(basic));
        }
    }

    #[test]
    fn extensions_keep_the_basic_part_in_the_base(i in 0usize..6, rank in 1u32..=2) {
        let base = qh(["C", "R", "F3", "F5", "Qp:3", "Qp:5"][i]).unwrap();
        let (h, pres) = group_extension_build(&base, rank).unwrap();
        let basic = rigidity_report(&h, None).unwrap().basic;
        // Elements off the base coset are rigid, as are their negatives.
        prop_assert!(basic.iter().all(|x| pres.coset_of(x) == 0));
        let base_basic = rigidity_report(&base, None).unwrap().basic;
        prop_assert_eq!(basic.len(), base_basic.len());
    }

    #[test]
    fn json_round_trip(h in hyperfield()) {
        let back = FiniteHyperfield::from_json(&h.to_json()).unwrap();
        prop_assert_eq!(&back, &*h);
    }
}
