//! Free planar multicategories on acyclic signatures, and transport of a
//! generalised multicategory along a family of permutations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::genmult::{FiniteGenMulticat, GenMorphism};
use crate::perm::{Permutation, Splice};
use crate::tree::PlanarTree;
use crate::value::{GenArrow, Id, Obj};

/// Generating arrows `(name, source, target)` over a list of objects.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub objects: Vec<Id>,
    pub arrows: Vec<(Id, Vec<Id>, Id)>,
}

type Term = PlanarTree<Id, Id>;

fn name(t: &Term) -> Id {
    match t {
        PlanarTree::Edge(x) => format!("1{x}").into(),
        PlanarTree::Node { .. } => term_name(t).into(),
    }
}

fn term_name(t: &Term) -> String {
    match t {
        PlanarTree::Edge(_) => "_".into(),
        PlanarTree::Node { label, children, .. } => {
            if children.is_empty() {
                return label.to_string();
            }
            let inner: Vec<String> = children.iter().map(term_name).collect();
            format!("{label}({})", inner.join(","))
        }
    }
}

/// Replaces leaf `p` of `f` by `g`.
fn plug(f: &Term, p: usize, g: &Term) -> Term {
    fn go(t: &Term, p: usize, g: &Term, seen: &mut usize) -> Term {
        match t {
            PlanarTree::Edge(_) => {
                let here = *seen == p;
                *seen += 1;
                if here {
                    g.clone()
                } else {
                    t.clone()
                }
            }
            PlanarTree::Node { label, out, children } => PlanarTree::Node {
                label: label.clone(),
                out: out.clone(),
                children: children.iter().map(|c| go(c, p, g, seen)).collect(),
            },
        }
    }
    go(f, p, g, &mut 0)
}

/// All terms into `x`. Fails once more than `limit` terms are found.
fn terms_into(sig: &Signature, x: &Id, limit: usize, memo: &mut BTreeMap<Id, Vec<Term>>, depth: usize) -> Result<Vec<Term>> {
    if let Some(v) = memo.get(x) {
        return Ok(v.clone());
    }
    if depth > sig.objects.len() {
        return Err(Error::Precondition("the signature has a cycle".into()));
    }
    let mut out = alloc::vec![PlanarTree::Edge(x.clone())];
    for (f, src, tgt) in &sig.arrows {
        if tgt != x {
            continue;
        }
        let mut partial: Vec<Vec<Term>> = alloc::vec![Vec::new()];
        for s in src {
            let options = terms_into(sig, s, limit, memo, depth + 1)?;
            let mut next = Vec::new();
            for p in &partial {
                for o in &options {
                    let mut q = p.clone();
                    q.push(o.clone());
                    next.push(q);
                    if next.len() > limit {
                        return Err(Error::Precondition(format!("more than {limit} composites")));
                    }
                }
            }
            partial = next;
        }
        for children in partial {
            out.push(PlanarTree::Node {
                label: f.clone(),
                out: x.clone(),
                children,
            });
        }
        if out.len() > limit + 1 {
            return Err(Error::Precondition(format!("more than {limit} composites")));
        }
    }
    memo.insert(x.clone(), out.clone());
    Ok(out)
}

/// The free planar multicategory on an acyclic signature: arrows are
/// formal composites, composition is grafting at a leaf and every
/// amalgamating permutation is trivial. Fails if there are more than
/// `limit` non-identity arrows.
pub fn free_planar(sig: &Signature, limit: usize) -> Result<FiniteGenMulticat> {
    let mut memo = BTreeMap::new();
    let mut terms: Vec<Term> = Vec::new();
    for x in &sig.objects {
        terms.extend(terms_into(sig, x, limit, &mut memo, 0)?);
    }
    if terms.len() - sig.objects.len() > limit {
        return Err(Error::Precondition(format!("more than {limit} composites")));
    }
    let mut m = FiniteGenMulticat {
        objects: sig.objects.clone(),
        ..Default::default()
    };
    for t in &terms {
        let src = t.leaves().into_iter().cloned().collect();
        m.arrows.insert(name(t), (src, t.root_edge().clone()));
        if let PlanarTree::Edge(x) = t {
            m.identities.insert(x.clone(), name(t));
        }
    }
    for f in &terms {
        let leaves: Vec<Id> = f.leaves().into_iter().cloned().collect();
        for (p, x) in leaves.iter().enumerate() {
            for g in &terms {
                if g.root_edge() != x {
                    continue;
                }
                let fg = if let PlanarTree::Edge(_) = f { g.clone() } else { plug(f, p, g) };
                let k = leaves.len() + g.leaf_count() - 1;
                let r = name(&fg);
                if !m.arrows.contains_key(&r) {
                    return Err(Error::Precondition(format!("composite {r} exceeds the truncation")));
                }
                m.compose.insert((name(f), p, name(g)), (r, Permutation::identity(k)));
            }
        }
    }
    Ok(m)
}

/// Transports `m` along `θ`: the arrow `f` gets source
/// `s'(f)_i = s(f)_{θ_f⁻¹(i)}` and composites are reindexed so that
/// `(1, θ)` is an isomorphism `m → m'`. Arrows missing from `theta` keep
/// their source.
pub fn transport(m: &FiniteGenMulticat, theta: &BTreeMap<Id, Permutation>) -> Result<(FiniteGenMulticat, GenMorphism)> {
    let th = |f: &Id| -> Permutation {
        theta
            .get(f)
            .cloned()
            .unwrap_or_else(|| Permutation::identity(m.arrows[f].0.len()))
    };
    let mut out = FiniteGenMulticat {
        objects: m.objects.clone(),
        identities: m.identities.clone(),
        ..Default::default()
    };
    for (f, (src, tgt)) in &m.arrows {
        let t = th(f);
        if t.size() != src.len() {
            return Err(Error::SizeMismatch {
                expected: src.len(),
                found: t.size(),
            });
        }
        out.arrows.insert(f.clone(), (t.inverse().permute(src), tgt.clone()));
    }
    for ((f, p, g), (r, chi)) in &m.compose {
        let (tf, tg, tr) = (th(f), th(g), th(r));
        let (kf, kg) = (tf.size(), tg.size());
        let old = Splice::new(kf, *p, kg);
        let inv = chi.inverse();
        // where entry z of the old splice lands in r
        let land = |z: usize| tr.apply(inv.apply(z));
        let q = tf.apply(*p);
        let new = Splice::new(kf, q, kg);
        let mut images = alloc::vec![0; kf + kg - 1];
        let tfi = tf.inverse();
        let tgi = tg.inverse();
        for i2 in 0..kf {
            if i2 == q {
                continue;
            }
            images[land(old.outer(tfi.apply(i2)))] = new.outer(i2);
        }
        for l2 in 0..kg {
            images[land(old.inner(tgi.apply(l2)))] = new.inner(l2);
        }
        out.compose
            .insert((f.clone(), q, g.clone()), (r.clone(), Permutation::from_images(images)?));
    }
    let mut iso = GenMorphism::default();
    for x in &m.objects {
        iso.objects.insert(Obj::Atom(x.clone()), Obj::Atom(x.clone()));
    }
    for f in m.arrows.keys() {
        iso.arrows.insert(GenArrow::Atom(f.clone()), (GenArrow::Atom(f.clone()), th(f)));
    }
    Ok((out, iso))
}
