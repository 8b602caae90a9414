use std::collections::BTreeMap;
use std::sync::Arc;

use opetope_core::free::{free_planar, transport, Signature};
use opetope_core::genmult::{check_gen_axioms, check_gen_morphism, GenMulticat};
use opetope_core::opetopes::{
    enumerate_multitopes, iterated_slice_sym, lift, manifestation_count, multitope_term, orbit, parse_multitope,
    phi_iterated,
};
use opetope_core::symmult::check_sym_axioms;
use opetope_core::value::{Id, Obj};
use opetope_core::xi::{is_freely_symmetric, materialize, xi, xi_inverse};
use opetope_core::Permutation;
use proptest::prelude::*;
use proptest::sample::Index;

fn perm(k: usize) -> impl Strategy<Value = Permutation> {
    Just((0..k).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms3(k: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (perm(k), perm(k), perm(k))
}

fn id(s: &str) -> Id {
    Arc::from(s)
}

/// Acyclic signatures: a generator into `o{t}` takes inputs below `t`.
fn signature() -> impl Strategy<Value = Signature> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let generator = (1..n, prop::collection::vec(any::<Index>(), 1..=2));
            (Just(n), prop::collection::vec(generator, 1..=3))
        })
        .prop_map(|(n, gens)| Signature {
            objects: (0..n).map(|i| id(&format!("o{i}"))).collect(),
            arrows: gens
                .into_iter()
                .enumerate()
                .map(|(j, (t, src))| {
                    let src = src.iter().map(|i| id(&format!("o{}", i.index(t)))).collect();
                    (id(&format!("g{j}")), src, id(&format!("o{t}")))
                })
                .collect(),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((a, b, c) in (0usize..6).prop_flat_map(perms3)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(a in (0usize..7).prop_flat_map(perm)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
    }

    #[test]
    fn permute_is_a_right_action((a, b, _) in (0usize..6).prop_flat_map(perms3)) {
        let xs: Vec<usize> = (0..a.size()).map(|i| 10 * i).collect();
        prop_assert_eq!(a.compose(&b).unwrap().permute(&xs), b.permute(&a.permute(&xs)));
    }

    #[test]
    fn block_permutations_compose(
        (a, b, sizes) in (1usize..5).prop_flat_map(|k| (perm(k), perm(k), prop::collection::vec(0usize..3, k)))
    ) {
        let lhs = a.compose(&b).unwrap().block(&sizes).unwrap();
        let rhs = a.block(&sizes).unwrap().compose(&b.block(&a.permute(&sizes)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn free_multicategories_symmetrise(sig in signature(), seed in any::<u64>()) {
        let Ok(m) = free_planar(&sig, 8) else { return Ok(()) };
        let mut s = seed;
        let theta: BTreeMap<Id, Permutation> = m
            .arrows
            .iter()
            .filter(|(f, _)| !m.identities.values().any(|e| e == *f))
            .map(|(f, (src, _))| {
                let mut v: Vec<usize> = (0..src.len()).collect();
                for i in (1..v.len()).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    v.swap(i, (s >> 33) as usize % (i + 1));
                }
                (f.clone(), Permutation::from_images(v).unwrap())
            })
            .collect();
        let (m2, iso) = transport(&m, &theta).unwrap();
        let (a, b): (GenMulticat, GenMulticat) = (m.into(), m2.clone().into());
        prop_assert!(check_gen_axioms(&b, 3).is_empty());
        prop_assert!(check_gen_morphism(&iso, &a, &b).is_empty());
        let q = xi(&b);
        prop_assert!(check_sym_axioms(&q, 3).is_empty());
        prop_assert!(is_freely_symmetric(&q, 3));
        let table = materialize(&m2).unwrap();
        let inv = xi_inverse(&table.into()).unwrap();
        prop_assert_eq!(inv.multicat.arrows.len(), m2.arrows.len());
    }
}

#[test]
fn chains_have_factorial_manifestations() {
    let mut term = "[1,[|]]".to_string();
    for n in 1..=5 {
        let x = lift(2, &parse_multitope(2, &term).unwrap()).unwrap();
        assert_eq!(manifestation_count(2, &x).unwrap(), (1..=n).product::<usize>());
        term = format!("[1,[{term}]]");
    }
}

#[test]
fn manifestation_count_is_a_class_invariant() {
    let x = lift(3, &parse_multitope(3, "[[1,[[1,[|]]]],[[[1,[[1,[|]]]],[|,|]],|]]").unwrap()).unwrap();
    let members = orbit(&iterated_slice_sym(3), &x).unwrap();
    let n = members.len();
    assert_eq!(n, 2 * 2 * 2 * 6);
    for y in members.iter().take(12) {
        assert_eq!(manifestation_count(3, y).unwrap(), n);
    }
}

#[test]
fn multitope_terms_round_trip() {
    for (k, b) in [(0, 2), (1, 2), (2, 4), (3, 3)] {
        for m in enumerate_multitopes(k, b) {
            let t = multitope_term(&m);
            assert_eq!(parse_multitope(k, &t).unwrap(), m, "{t}");
        }
    }
}

#[test]
fn lifts_are_sent_back_to_their_multitopes() {
    let phi = phi_iterated(3);
    let ms = enumerate_multitopes(3, 3);
    assert!(!ms.is_empty());
    for m in ms {
        let x = lift(3, &m).unwrap();
        assert_eq!(phi.on_object(&x).unwrap(), m);
        assert!(matches!(x, Obj::Sym(_)));
    }
}
