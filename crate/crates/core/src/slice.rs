//! The slice constructions: `M₊` of a generalised multicategory and `Q⁺`
//! of a symmetric one, with the comparison `φ⁺: Q⁺ → ξ(M₊)`.
//!
//! Slice arrows are planar trees. Enumeration at bound `b` yields trees
//! with at most `b` nodes whose labels are arrows of the base at bound
//! `b - 1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::genmult::GenMulticat;
use crate::perm::{Permutation, Splice};
use crate::symmult::{SymMorphism, SymMulticat};
use crate::tree::{comb_substitute, graft, CombedTree, Origin, PlanarTree};
use crate::value::{Config, EltMor, GenArrow, GenTree, Obj, ObjMor, Profile, SymArrow};

type GTree = PlanarTree<GenArrow, Obj>;
type STree = PlanarTree<SymArrow, ObjMor>;

fn tree_of(f: &GenArrow) -> Result<&GenTree> {
    match f {
        GenArrow::Tree(t) => Ok(t),
        other => Err(Error::WrongKind(format!("{other} is not a tree"))),
    }
}

fn config_of(f: &SymArrow) -> Result<&Config> {
    match f {
        SymArrow::Config(c) => Ok(c),
        other => Err(Error::WrongKind(format!("{other} is not a configuration"))),
    }
}

fn label_obj(x: &Obj) -> Result<&GenArrow> {
    match x {
        Obj::Gen(g) => Ok(g),
        other => Err(Error::WrongKind(format!("object {other} is not an arrow of the base"))),
    }
}

// ---- M₊ ----

pub(crate) fn gen_source(f: &GenArrow) -> Result<Vec<Obj>> {
    Ok(tree_of(f)?.tree.labels().into_iter().cloned().map(Obj::Gen).collect())
}

pub(crate) fn gen_target(f: &GenArrow) -> Result<Obj> {
    Ok(Obj::Gen(tree_of(f)?.target.clone()))
}

/// `1_f`: the one-node tree labelled `f`.
pub(crate) fn gen_identity(inner: &GenMulticat, x: &Obj) -> Result<GenArrow> {
    let f = label_obj(x)?;
    let tree = PlanarTree::corolla(f.clone(), inner.target(f)?, inner.source(f)?);
    let k = inner.arity(f)?;
    Ok(GenArrow::Tree(Arc::new(GenTree {
        tree,
        rho: Permutation::identity(k),
        target: f.clone(),
    })))
}

#[derive(Clone, Copy)]
enum Slot {
    Pending(usize),
    Leaf(usize),
}

/// Composes a node with its subtrees left to right. Returns the composite
/// and, for each of its source positions, the leaf of the subtree it
/// comes from.
fn eval_gen_node(m: &GenMulticat, label: &GenArrow, children: &[GTree]) -> Result<(GenArrow, Vec<usize>)> {
    let mut acc = label.clone();
    let mut origin: Vec<Slot> = (0..children.len()).map(Slot::Pending).collect();
    let mut offset = 0;
    for (j, ch) in children.iter().enumerate() {
        let pos = origin
            .iter()
            .position(|s| matches!(s, Slot::Pending(p) if *p == j))
            .expect("every child has a pending slot");
        match ch {
            PlanarTree::Edge(_) => {
                origin[pos] = Slot::Leaf(offset);
                offset += 1;
            }
            PlanarTree::Node { label, children, .. } => {
                let (h, hl) = eval_gen_node(m, label, children)?;
                let c = m.compose(&acc, pos, &h)?;
                let ar = hl.len();
                origin = c
                    .chi
                    .images()
                    .iter()
                    .map(|&z| {
                        if (pos..pos + ar).contains(&z) {
                            Slot::Leaf(offset + hl[z - pos])
                        } else if z < pos {
                            origin[z]
                        } else {
                            origin[z + 1 - ar]
                        }
                    })
                    .collect();
                acc = c.result;
                offset += ar;
            }
        }
    }
    let leaves = origin
        .into_iter()
        .map(|s| match s {
            Slot::Leaf(i) => i,
            Slot::Pending(_) => unreachable!("all children visited"),
        })
        .collect();
    Ok((acc, leaves))
}

fn eval_gen(m: &GenMulticat, t: &GTree) -> Result<(GenArrow, Permutation)> {
    match t {
        PlanarTree::Edge(x) => Ok((m.identity(x)?, Permutation::identity(1))),
        PlanarTree::Node { label, children, .. } => {
            let (f, leaves) = eval_gen_node(m, label, children)?;
            Ok((f, Permutation::from_images(leaves)?))
        }
    }
}

fn check_gen_tree(m: &GenMulticat, t: &GTree) -> Result<()> {
    if let PlanarTree::Node { label, out, children } = t {
        let src = m.source(label)?;
        if src.len() != children.len() {
            return Err(Error::SizeMismatch {
                expected: src.len(),
                found: children.len(),
            });
        }
        let tgt = m.target(label)?;
        if *out != tgt {
            return Err(Error::ObjectMismatch {
                position: 0,
                expected: tgt.to_string(),
                found: out.to_string(),
            });
        }
        for (j, ch) in children.iter().enumerate() {
            if *ch.root_edge() != src[j] {
                return Err(Error::ObjectMismatch {
                    position: j,
                    expected: src[j].to_string(),
                    found: ch.root_edge().to_string(),
                });
            }
            check_gen_tree(m, ch)?;
        }
    }
    Ok(())
}

/// Validates a tree over `m` and evaluates it into an arrow of `M₊`.
pub fn gen_tree(m: &GenMulticat, tree: GTree) -> Result<GenArrow> {
    check_gen_tree(m, &tree)?;
    let (target, rho) = eval_gen(m, &tree)?;
    Ok(GenArrow::Tree(Arc::new(GenTree { tree, rho, target })))
}

fn same_object(a: &Obj, b: &Obj) -> Result<Obj> {
    if a == b {
        Ok(a.clone())
    } else {
        Err(Error::NotComposable(format!("edge {a} meets edge {b}")))
    }
}

/// `f ∘_p g` in `M₊`: grafts `g` at node `p` of `f` and records where each
/// node of the result comes from.
pub(crate) fn gen_compose_trees(inner: &GenMulticat, f: &GenArrow, p: usize, g: &GenArrow) -> Result<(GenArrow, Permutation)> {
    let tf = tree_of(f)?;
    let tg = tree_of(g)?;
    let gr = graft(&tf.tree, p, &tg.tree, &tg.rho, &mut |a: &Obj, b: &Obj| same_object(a, b))?;
    let splice = Splice::new(tf.tree.node_count(), p, tg.tree.node_count());
    let chi = Permutation::from_images(
        gr.nodes
            .iter()
            .map(|o| match *o {
                Origin::Outer(t) => splice.outer(t),
                Origin::Inner(u) => splice.inner(u),
            })
            .collect(),
    )?;
    let (target, rho) = eval_gen(inner, &gr.tree)?;
    let result = GenArrow::Tree(Arc::new(GenTree {
        tree: gr.tree,
        rho,
        target,
    }));
    Ok((result, chi))
}

/// Bounded enumeration of planar trees.
struct TreeGen<'a, L, E> {
    labels: &'a [(L, Profile)],
    /// leaf edges into a slot
    leaf: &'a dyn Fn(&Obj) -> Result<Vec<E>>,
    /// edges from the target of a node into a slot
    link: &'a dyn Fn(&Obj, &Obj) -> Result<Vec<E>>,
    memo: BTreeMap<(Obj, usize), Vec<PlanarTree<L, E>>>,
}

impl<L: Clone, E: Clone> TreeGen<'_, L, E> {
    /// Trees plugged into a slot of type `x`, with at most `budget` nodes.
    fn into(&mut self, x: &Obj, budget: usize) -> Result<Vec<PlanarTree<L, E>>> {
        if let Some(v) = self.memo.get(&(x.clone(), budget)) {
            return Ok(v.clone());
        }
        let mut out: Vec<PlanarTree<L, E>> = (self.leaf)(x)?.into_iter().map(PlanarTree::Edge).collect();
        if budget > 0 {
            let labels = self.labels;
            for (f, pf) in labels {
                let outs = (self.link)(&pf.output, x)?;
                if outs.is_empty() {
                    continue;
                }
                for children in self.combos(&pf.inputs, budget - 1)? {
                    for a in &outs {
                        out.push(PlanarTree::Node {
                            label: f.clone(),
                            out: a.clone(),
                            children: children.clone(),
                        });
                    }
                }
            }
        }
        self.memo.insert((x.clone(), budget), out.clone());
        Ok(out)
    }

    fn combos(&mut self, inputs: &[Obj], budget: usize) -> Result<Vec<Vec<PlanarTree<L, E>>>> {
        let Some((first, rest)) = inputs.split_first() else {
            return Ok(vec![Vec::new()]);
        };
        let mut out = Vec::new();
        for t in self.into(first, budget)? {
            let n = t.node_count();
            for mut tail in self.combos(rest, budget - n)? {
                tail.insert(0, t.clone());
                out.push(tail);
            }
        }
        Ok(out)
    }

    /// Trees with at least one node, rooted at any label.
    fn roots(&mut self, budget: usize, root: &dyn Fn(&Obj) -> Result<Vec<E>>) -> Result<Vec<PlanarTree<L, E>>> {
        let mut out = Vec::new();
        if budget == 0 {
            return Ok(out);
        }
        let labels = self.labels;
        for (f, pf) in labels {
            let outs = root(&pf.output)?;
            for children in self.combos(&pf.inputs, budget - 1)? {
                for a in &outs {
                    out.push(PlanarTree::Node {
                        label: f.clone(),
                        out: a.clone(),
                        children: children.clone(),
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Arrows of `M₊` with at most `bound` nodes.
pub(crate) fn gen_arrows(inner: &GenMulticat, bound: usize) -> Vec<GenArrow> {
    let below = bound.saturating_sub(1);
    let labels: Vec<(GenArrow, Profile)> = inner
        .arrows(below)
        .into_iter()
        .filter_map(|f| {
            let p = Profile {
                inputs: inner.source(&f).ok()?,
                output: inner.target(&f).ok()?,
            };
            Some((f, p))
        })
        .collect();
    let leaf = |x: &Obj| Ok(vec![x.clone()]);
    let link = |t: &Obj, x: &Obj| Ok(if t == x { vec![x.clone()] } else { Vec::new() });
    let mut gen = TreeGen {
        labels: &labels,
        leaf: &leaf,
        link: &link,
        memo: BTreeMap::new(),
    };
    let mut trees: Vec<GTree> = inner.objects(below).into_iter().map(PlanarTree::Edge).collect();
    trees.extend(gen.roots(bound, &|t: &Obj| Ok(vec![t.clone()])).unwrap_or_default());
    let mut out: Vec<GenArrow> = trees
        .into_iter()
        .filter_map(|t| {
            let (target, rho) = eval_gen(inner, &t).ok()?;
            Some(GenArrow::Tree(Arc::new(GenTree { tree: t, rho, target })))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

// ---- Q⁺ ----

pub(crate) fn config_profile(f: &SymArrow) -> Result<Profile> {
    let c = config_of(f)?;
    Ok(Profile {
        inputs: c.source().into_iter().map(Obj::Sym).collect(),
        output: Obj::Sym(c.target.clone()),
    })
}

fn eval_sym(q: &SymMulticat, t: &STree) -> Result<SymArrow> {
    match t {
        PlanarTree::Edge(e) => q.iota(e),
        PlanarTree::Node { label, out, children } => {
            let mut acc = label.clone();
            for (j, ch) in children.iter().enumerate().rev() {
                if let PlanarTree::Edge(e) = ch {
                    if q.obj_is_identity(e) {
                        continue;
                    }
                }
                acc = q.compose_at(&acc, j, &eval_sym(q, ch)?)?;
            }
            if !q.obj_is_identity(out) {
                acc = q.compose_at(&q.iota(out)?, 0, &acc)?;
            }
            Ok(acc)
        }
    }
}

/// Composes the labels of the tree as arrows of `q`, edges acting through
/// `ι`, then applies `ρ`.
pub fn configuration_target(q: &SymMulticat, tree: &STree, rho: &Permutation) -> Result<SymArrow> {
    let f = eval_sym(q, tree)?;
    if rho.is_identity() {
        Ok(f)
    } else {
        q.act(&f, rho)
    }
}

fn check_sym_tree(q: &SymMulticat, t: &STree) -> Result<()> {
    if let PlanarTree::Node { label, out, children } = t {
        let p = q.profile(label)?;
        if p.arity() != children.len() {
            return Err(Error::SizeMismatch {
                expected: p.arity(),
                found: children.len(),
            });
        }
        let d = q.obj_dom(out)?;
        if d != p.output {
            return Err(Error::ObjectMismatch {
                position: 0,
                expected: p.output.to_string(),
                found: d.to_string(),
            });
        }
        for (j, ch) in children.iter().enumerate() {
            let c = q.obj_cod(ch.root_edge())?;
            if c != p.inputs[j] {
                return Err(Error::ObjectMismatch {
                    position: j,
                    expected: p.inputs[j].to_string(),
                    found: c.to_string(),
                });
            }
            check_sym_tree(q, ch)?;
        }
    }
    Ok(())
}

/// Validates and evaluates a configuration `(T, ρ, τ)` over `q`.
pub fn make_config(q: &SymMulticat, tree: STree, rho: Permutation, tau: Permutation) -> Result<SymArrow> {
    check_sym_tree(q, &tree)?;
    if rho.size() != tree.leaf_count() {
        return Err(Error::SizeMismatch {
            expected: tree.leaf_count(),
            found: rho.size(),
        });
    }
    if tau.size() != tree.node_count() {
        return Err(Error::SizeMismatch {
            expected: tree.node_count(),
            found: tau.size(),
        });
    }
    let target = configuration_target(q, &tree, &rho)?;
    Ok(SymArrow::Config(Arc::new(Config { tree, rho, tau, target })))
}

/// `ι(α)` for `α = (σ, f_1..f_m; f): g → g'`: one node labelled `g`, twist
/// `σ`, edges `f_i` and `f`.
pub(crate) fn config_iota(_q: &SymMulticat, a: &EltMor) -> Result<SymArrow> {
    let tree = PlanarTree::corolla(a.dom.clone(), a.output.clone(), a.inputs.clone());
    Ok(SymArrow::Config(Arc::new(Config {
        tree,
        rho: a.sigma.clone(),
        tau: Permutation::identity(1),
        target: a.cod.clone(),
    })))
}

/// `(T, ρ, τ)σ = (T, ρ, σ⁻¹τ)`.
pub(crate) fn config_act(f: &SymArrow, sigma: &Permutation) -> Result<SymArrow> {
    let c = config_of(f)?;
    Ok(SymArrow::Config(Arc::new(Config {
        tree: c.tree.clone(),
        rho: c.rho.clone(),
        tau: sigma.inverse().compose(&c.tau)?,
        target: c.target.clone(),
    })))
}

/// Replaces node `τ₁⁻¹(m)` of the first configuration by the second,
/// composing coincident edges and combing.
pub(crate) fn config_compose(q: &SymMulticat, f: &SymArrow, m: usize, g: &SymArrow) -> Result<SymArrow> {
    let c1 = config_of(f)?;
    let c2 = config_of(g)?;
    let n1 = c1.tau.size();
    if m >= n1 {
        return Err(Error::BadPosition { position: m, arity: n1 });
    }
    let at = c1.tau.inverse().apply(m);
    let label = c1.tree.node(at).and_then(|n| match n {
        PlanarTree::Node { label, .. } => Some(label),
        PlanarTree::Edge(_) => None,
    });
    if label != Some(&c2.target) {
        return Err(Error::ObjectMismatch {
            position: m,
            expected: label.map(|l| l.to_string()).unwrap_or_default(),
            found: c2.target.to_string(),
        });
    }
    let outer = CombedTree {
        tree: c1.tree.clone(),
        twist: c1.rho.clone(),
    };
    let inner = CombedTree {
        tree: c2.tree.clone(),
        twist: c2.rho.clone(),
    };
    let (combed, origins) = comb_substitute(&outer, at, &inner, &mut |second: &ObjMor, first: &ObjMor| q.obj_compose(second, first))?;
    let splice = Splice::new(n1, m, c2.tau.size());
    let tau = Permutation::from_images(
        origins
            .iter()
            .map(|o| match *o {
                Origin::Outer(t) => splice.outer(c1.tau.apply(t)),
                Origin::Inner(u) => splice.inner(c2.tau.apply(u)),
            })
            .collect(),
    )?;
    Ok(SymArrow::Config(Arc::new(Config {
        tree: combed.tree,
        rho: combed.twist,
        tau,
        target: c1.target.clone(),
    })))
}

/// Configurations over `q` with at most `bound` nodes.
pub(crate) fn config_arrows(q: &SymMulticat, bound: usize) -> Vec<SymArrow> {
    let below = bound.saturating_sub(1);
    let labels: Vec<(SymArrow, Profile)> = q
        .arrows(below)
        .into_iter()
        .filter_map(|f| {
            let p = q.profile(&f).ok()?;
            Some((f, p))
        })
        .collect();
    let leaf = |x: &Obj| q.morphisms_into(x);
    let link = |t: &Obj, x: &Obj| q.hom(t, x);
    let mut gen = TreeGen {
        labels: &labels,
        leaf: &leaf,
        link: &link,
        memo: BTreeMap::new(),
    };
    let mut trees: Vec<STree> = Vec::new();
    for x in q.objects(below) {
        if let Ok(ms) = q.morphisms_out(&x) {
            trees.extend(ms.into_iter().map(PlanarTree::Edge));
        }
    }
    trees.extend(gen.roots(bound, &|t: &Obj| q.morphisms_out(t)).unwrap_or_default());
    let mut out = Vec::new();
    for t in trees {
        let k = t.leaf_count();
        let n = t.node_count();
        let Ok(base) = eval_sym(q, &t) else { continue };
        for rho in Permutation::all(k) {
            let Ok(target) = (if rho.is_identity() { Ok(base.clone()) } else { q.act(&base, &rho) }) else {
                continue;
            };
            for tau in Permutation::all(n) {
                out.push(SymArrow::Config(Arc::new(Config {
                    tree: t.clone(),
                    rho: rho.clone(),
                    tau,
                    target: target.clone(),
                })));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

// ---- φ⁺ ----

fn xi_base(phi: &SymMorphism) -> Result<GenMulticat> {
    match phi.codomain() {
        SymMulticat::Xi(m) => Ok(m),
        _ => Err(Error::Precondition("the codomain must be a symmetrisation".into())),
    }
}

/// `φ⁺(f) = g` where `φ(f) = (g, σ)`.
pub(crate) fn phi_plus_object(phi: &SymMorphism, x: &Obj) -> Result<Obj> {
    let f = match x {
        Obj::Sym(f) => f,
        other => return Err(Error::WrongKind(format!("object {other} is not an arrow of the base"))),
    };
    match phi.on_arrow(f)? {
        SymArrow::Xi(g, _) => Ok(Obj::Gen(g)),
        other => Err(Error::WrongKind(format!("{other} is not an arrow of a symmetrisation"))),
    }
}

/// Relabels node `f` by `g` where `φ(f) = (g, σ)` and reorders its inputs
/// by `σ`. Records the original preorder index of every node in new
/// preorder.
fn bar(phi: &SymMorphism, q: &SymMulticat, t: &STree, idx: usize, orig: &mut Vec<usize>) -> Result<GTree> {
    match t {
        PlanarTree::Edge(e) => Ok(PlanarTree::Edge(phi.on_object(&q.obj_cod(e)?)?)),
        PlanarTree::Node { label, out, children } => {
            let (g, sigma) = match phi.on_arrow(label)? {
                SymArrow::Xi(g, s) => (g, s),
                other => return Err(Error::WrongKind(format!("{other} is not an arrow of a symmetrisation"))),
            };
            if sigma.size() != children.len() {
                return Err(Error::SizeMismatch {
                    expected: children.len(),
                    found: sigma.size(),
                });
            }
            orig.push(idx);
            let mut starts = Vec::with_capacity(children.len());
            let mut next = idx + 1;
            for ch in children {
                starts.push(next);
                next += ch.node_count();
            }
            let mut kids = Vec::with_capacity(children.len());
            for j in 0..children.len() {
                let s = sigma.apply(j);
                kids.push(bar(phi, q, &children[s], starts[s], orig)?);
            }
            Ok(PlanarTree::Node {
                label: g,
                out: phi.on_object(&q.obj_cod(out)?)?,
                children: kids,
            })
        }
    }
}

/// `φ⁺(T, ρ, τ) = (T̄, τ ∘ τ_T̄⁻¹)`.
pub(crate) fn phi_plus_arrow(phi: &SymMorphism, f: &SymArrow) -> Result<SymArrow> {
    let c = config_of(f)?;
    let m = xi_base(phi)?;
    let q = phi.domain();
    let mut orig = Vec::new();
    let tbar = bar(phi, &q, &c.tree, 0, &mut orig)?;
    let pi = Permutation::from_images(orig.iter().map(|&n| c.tau.apply(n)).collect())?;
    Ok(SymArrow::Xi(gen_tree(&m, tbar)?, pi))
}

/// `φ⁺: Q⁺ → ξ(M₊)` for `φ: Q → ξ(M)`.
pub fn phi_plus(phi: SymMorphism) -> Result<SymMorphism> {
    xi_base(&phi)?;
    Ok(SymMorphism::PhiPlus(Arc::new(phi)))
}
