use std::sync::Arc;

use gscheme_core::fingroup::{self, commutator_subgroup, normal_closure, normal_subgroups, quotient};
use gscheme_core::{GGroup, GroupTable, PointSet, PrimeDef, Spectrum, Syllable, Variant, Word, WordContext};
use proptest::prelude::*;

fn groups() -> Vec<GroupTable> {
    let c2 = GroupTable::cyclic(2);
    vec![
        c2.clone(),
        GroupTable::cyclic(4),
        GroupTable::direct_product(&c2, &c2),
        GroupTable::symmetric(3),
        GroupTable::dihedral(4),
        GroupTable::quaternion8(),
        GroupTable::alternating(4),
        GroupTable::symmetric(4),
    ]
}

fn s3_ctx() -> WordContext {
    WordContext::new(Arc::new(GroupTable::symmetric(3)), 2)
}

fn raw_syllable() -> impl Strategy<Value = Syllable> {
    prop_oneof![
        (0usize..6).prop_map(Syllable::Coef),
        (1usize..=2, prop_oneof![-3i32..0, 1i32..4]).prop_map(|(var, exp)| Syllable::Letter { var, exp }),
    ]
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(raw_syllable(), 0..7).prop_map(|raw| s3_ctx().reduce(&raw).unwrap())
}

fn point() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..6, 2)
}

proptest! {
    #[test]
    fn word_multiplication_is_associative(a in word(), b in word(), c in word()) {
        let ctx = s3_ctx();
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
    }

    #[test]
    fn inverse_cancels(a in word()) {
        let ctx = s3_ctx();
        prop_assert!(ctx.mul(&a, &ctx.inverse(&a)).is_identity());
        prop_assert!(ctx.mul(&ctx.inverse(&a), &a).is_identity());
    }

    #[test]
    fn reduction_is_idempotent(a in word()) {
        let ctx = s3_ctx();
        prop_assert_eq!(ctx.reduce(a.syllables()).unwrap(), a);
    }

    #[test]
    fn literal_round_trip(a in word()) {
        let ctx = s3_ctx();
        prop_assert_eq!(ctx.parse(&ctx.format(&a)).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in word(), b in word(), x in point()) {
        let ctx = s3_ctx();
        let g = ctx.group();
        let (ea, eb) = (ctx.evaluate_at(&a, &x).unwrap(), ctx.evaluate_at(&b, &x).unwrap());
        prop_assert_eq!(ctx.evaluate_at(&ctx.mul(&a, &b), &x).unwrap(), g.mul(ea, eb));
        prop_assert_eq!(ctx.evaluate_at(&ctx.inverse(&a), &x).unwrap(), g.inv(ea));
    }

    #[test]
    fn normal_closure_is_least(gi in 0usize..8, mask in 0u32..256) {
        let h = &groups()[gi];
        let set: Vec<usize> = h.elements().filter(|&e| mask >> (e % 8) & 1 == 1).collect();
        let n = normal_closure(h, &set);
        prop_assert!(fingroup::is_normal(h, &n));
        prop_assert!(set.iter().all(|&e| n.contains(e)));
        for m in normal_subgroups(h) {
            if set.iter().all(|&e| m.contains(e)) {
                prop_assert!(n.is_subset(&m));
            }
        }
    }

    #[test]
    fn commutator_is_symmetric_and_inside_meet(gi in 0usize..8, i in 0usize..16, j in 0usize..16) {
        let h = &groups()[gi];
        let ns = normal_subgroups(h);
        let (a, b) = (&ns[i % ns.len()], &ns[j % ns.len()]);
        let ab = commutator_subgroup(h, a, b);
        prop_assert_eq!(&ab, &commutator_subgroup(h, b, a));
        prop_assert!(ab.is_subset(&a.intersection(b)));
        prop_assert!(fingroup::is_normal(h, &ab));
    }

    #[test]
    fn quotient_has_the_right_kernel(gi in 0usize..8, i in 0usize..16) {
        let h = &groups()[gi];
        let ns = normal_subgroups(h);
        let n = &ns[i % ns.len()];
        let q = quotient(h, n).unwrap();
        prop_assert_eq!(&q.projection.kernel(&q.table), n);
        prop_assert_eq!(q.table.order() * n.order(), h.order());
        for c in q.table.elements() {
            prop_assert_eq!(q.project(q.lift(c)), c);
        }
    }

    #[test]
    fn closure_is_vanishing_set_of_radical(gi in 0usize..8, t2 in any::<bool>(), bits in any::<u64>()) {
        let h = groups()[gi].clone();
        let v = if t2 { Variant::T2 } else { Variant::T1 };
        let s = Spectrum::new(&GGroup::identity(Arc::new(h)), v, PrimeDef::Elementwise).unwrap();
        let subset = PointSet::from_bits(bits).intersection(s.points());
        let closure = s.closure(subset);
        prop_assert!(subset.is_subset(closure));
        prop_assert!(s.is_closed(closure));
        prop_assert_eq!(closure, s.vanishing_set(&s.radical(subset)).unwrap().members);
        prop_assert_eq!(s.closure(closure), closure);
    }

    #[test]
    fn opens_form_a_topology(gi in 0usize..8, t2 in any::<bool>()) {
        let h = groups()[gi].clone();
        let v = if t2 { Variant::T2 } else { Variant::T1 };
        let s = Spectrum::new(&GGroup::identity(Arc::new(h)), v, PrimeDef::Elementwise).unwrap();
        let opens = s.open_sets();
        prop_assert!(opens.contains(&PointSet::EMPTY) && opens.contains(&s.points()));
        for &a in &opens {
            for &b in &opens {
                prop_assert!(s.is_open(a.union(b)) && s.is_open(a.intersection(b)));
            }
        }
        for p in 0..s.len() {
            let down: PointSet = (0..s.len()).filter(|&q| s.prime(q).is_subset(s.prime(p))).collect();
            prop_assert_eq!(s.minimal_open(p), down);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn restrictions_compose(gi in 0usize..8, t2 in any::<bool>()) {
        let h = groups()[gi].clone();
        let v = if t2 { Variant::T2 } else { Variant::T1 };
        let s = Spectrum::new(&GGroup::identity(Arc::new(h)), v, PrimeDef::Elementwise).unwrap();
        let x = gscheme_core::GScheme::affine(&s).unwrap();
        prop_assert!(x.check_sheaf().holds());
        let opens = x.opens().to_vec();
        for &u in &opens {
            for &w in opens.iter().filter(|w| w.is_subset(u)) {
                for &z in opens.iter().filter(|z| z.is_subset(w)) {
                    let (uw, wz, uz) = (x.restriction(u, w).unwrap(), x.restriction(w, z).unwrap(), x.restriction(u, z).unwrap());
                    prop_assert!((0..uw.len()).all(|s| wz[uw[s]] == uz[s]));
                }
            }
        }
    }
}
