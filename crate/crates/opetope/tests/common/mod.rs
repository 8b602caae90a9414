//! Random finite multicategories: free planar ones on acyclic signatures,
//! transported along random permutations so that their amalgamating maps
//! are not all trivial.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use opetope::formats::{parse_input, Input};
use opetope_core::free::{free_planar, transport, Signature};
use opetope_core::genmult::{FiniteGenMulticat, GenMorphism};
use opetope_core::symmult::FiniteSymMulticat;
use opetope_core::value::Id;
use opetope_core::Permutation;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn id(s: &str) -> Id {
    Arc::from(s)
}

pub fn random_perm<R: Rng>(rng: &mut R, k: usize) -> Permutation {
    let mut v: Vec<usize> = (0..k).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

/// At least two objects `o0..`, generators `g0..`; a generator into `oi`
/// only takes inputs among `o0..o(i-1)`.
pub fn random_signature<R: Rng>(rng: &mut R, objects: usize, generators: usize, arity: usize) -> Signature {
    let n = rng.gen_range(2..=objects.max(2));
    let objs: Vec<Id> = (0..n).map(|i| id(&format!("o{i}"))).collect();
    let count = rng.gen_range(1..=generators);
    let mut arrows = Vec::new();
    for j in 0..count {
        // mostly arrows with inputs, sometimes a constant
        let t = if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..n) };
        let k = if t == 0 { 0 } else { rng.gen_range(1..=arity) };
        let src = (0..k).map(|_| objs[rng.gen_range(0..t)].clone()).collect();
        arrows.push((id(&format!("g{j}")), src, objs[t].clone()));
    }
    Signature { objects: objs, arrows }
}

/// A random multicategory with at most `arrows` non-identity arrows.
pub fn random_multicat<R: Rng>(rng: &mut R, objects: usize, arrows: usize, arity: usize) -> FiniteGenMulticat {
    loop {
        let sig = random_signature(rng, objects, arrows, arity);
        let Ok(m) = free_planar(&sig, arrows) else { continue };
        if m.arrows.values().any(|(s, _)| s.len() > arity) {
            continue;
        }
        return transport_randomly(rng, &m).0;
    }
}

pub fn transport_randomly<R: Rng>(rng: &mut R, m: &FiniteGenMulticat) -> (FiniteGenMulticat, GenMorphism) {
    let identities: Vec<&Id> = m.identities.values().collect();
    let theta: BTreeMap<Id, Permutation> = m
        .arrows
        .iter()
        .filter(|(f, _)| !identities.contains(f))
        .map(|(f, (s, _))| (f.clone(), random_perm(rng, s.len())))
        .collect();
    transport(m, &theta).unwrap()
}

/// Renames the arrows of a table with fresh shuffled names.
pub fn shuffle_ids<R: Rng>(rng: &mut R, q: &FiniteSymMulticat) -> FiniteSymMulticat {
    let mut names: Vec<usize> = (0..q.arrows.len()).collect();
    names.shuffle(rng);
    let map: BTreeMap<Id, Id> = q
        .arrows
        .keys()
        .zip(names)
        .map(|(f, n)| (f.clone(), id(&format!("a{n}"))))
        .collect();
    FiniteSymMulticat {
        category: q.category.clone(),
        arrows: q.arrows.iter().map(|(f, p)| (map[f].clone(), p.clone())).collect(),
        compose: q
            .compose
            .iter()
            .map(|((f, p, g), r)| ((map[f].clone(), *p, map[g].clone()), map[r].clone()))
            .collect(),
        action: q.action.iter().map(|((f, s), r)| ((map[f].clone(), s.clone()), map[r].clone())).collect(),
        iota: q.iota.iter().map(|(e, f)| (e.clone(), map[f].clone())).collect(),
    }
}

pub fn load_sym(name: &str) -> FiniteSymMulticat {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    match parse_input(&std::fs::read_to_string(path).unwrap()).unwrap() {
        Input::Sym(q) => q,
        other => panic!("{name} is not a symmetric multicategory: {other:?}"),
    }
}
