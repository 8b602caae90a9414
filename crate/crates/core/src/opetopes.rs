//! Opetopes and multitopes: objects of the iterated slices `I^{k+}` and
//! `J_{k+}` of the terminal multicategories, their isomorphism classes and
//! the comparison between the two.
//!
//! A `k`-opetope is an object of `I^{k+}`, so for `k ≥ 1` an arrow of
//! `I^{(k-1)+}`; likewise for multitopes.
//!
//! Multitope terms: `*` in dimension 0, `1` in dimension 1, and above
//! that a tree written `[label,[child,…]]` with `|` for a leaf and `{x}`
//! for a tree with no nodes on the edge `x`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::genmult::GenMulticat;
use crate::perm::Permutation;
use crate::report::EquivalenceReport;
use crate::slice::{gen_tree, make_config};
use crate::symmult::{check_sym_equivalence, SymMorphism, SymMulticat, SymTable};
use crate::tree::PlanarTree;
use crate::value::{GenArrow, Obj, ObjMor, SymArrow};
use crate::xi::xi;

/// `I^{k+}`.
pub fn iterated_slice_sym(k: usize) -> SymMulticat {
    let mut q = SymMulticat::terminal();
    for _ in 0..k {
        q = q.slice();
    }
    q
}

/// `J_{k+}`.
pub fn iterated_slice_gen(k: usize) -> GenMulticat {
    let mut m = GenMulticat::terminal();
    for _ in 0..k {
        m = m.slice();
    }
    m
}

/// The isomorphism `I → ξ(J)`.
pub fn phi_zero() -> SymMorphism {
    let star = Obj::atom("*");
    let t = SymTable {
        domain: SymMulticat::terminal(),
        codomain: xi(&GenMulticat::terminal()),
        objects: [(star.clone(), star.clone())].into_iter().collect(),
        morphisms: [(ObjMor::Atom("1*".into()), ObjMor::Identity(star))].into_iter().collect(),
        arrows: [(SymArrow::atom("1"), SymArrow::Xi(GenArrow::atom("1"), Permutation::identity(1)))]
            .into_iter()
            .collect(),
    };
    SymMorphism::Table(Arc::new(t))
}

/// `φ^{k+}: I^{k+} → ξ(J_{k+})`.
pub fn phi_iterated(k: usize) -> SymMorphism {
    let mut phi = phi_zero();
    for _ in 0..k {
        phi = SymMorphism::PhiPlus(Arc::new(phi));
    }
    phi
}

/// `k`-opetopes whose top-level tree has at most `bound` nodes.
pub fn enumerate_opetopes(k: usize, bound: usize) -> Vec<Obj> {
    iterated_slice_sym(k).objects(bound)
}

/// `k`-multitopes whose top-level tree has at most `bound` nodes, in
/// canonical order.
pub fn enumerate_multitopes(k: usize, bound: usize) -> Vec<Obj> {
    let mut out = iterated_slice_gen(k).objects(bound);
    out.sort_by_cached_key(multitope_term);
    out
}

// ---- terms ----

/// Canonical term of a multitope.
pub fn multitope_term(x: &Obj) -> String {
    let mut s = String::new();
    write_obj(x, &mut s);
    s
}

fn write_obj(x: &Obj, s: &mut String) {
    match x {
        Obj::Atom(a) => s.push_str(a),
        Obj::Gen(g) => write_arrow(g, s),
        Obj::Sym(f) => s.push_str(&f.to_string()),
    }
}

fn write_arrow(g: &GenArrow, s: &mut String) {
    match g {
        GenArrow::Atom(a) => s.push_str(a),
        GenArrow::Tree(t) => match &t.tree {
            PlanarTree::Edge(x) => {
                s.push('{');
                write_obj(x, s);
                s.push('}');
            }
            node => write_node(node, s),
        },
    }
}

fn write_node(t: &PlanarTree<GenArrow, Obj>, s: &mut String) {
    match t {
        PlanarTree::Edge(_) => s.push('|'),
        PlanarTree::Node { label, children, .. } => {
            s.push('[');
            write_arrow(label, s);
            s.push_str(",[");
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                write_node(c, s);
            }
            s.push_str("]]");
        }
    }
}

/// Untyped syntax of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Syntax {
    Atom(String),
    Leaf,
    Bare(Box<Syntax>),
    Node(Box<Syntax>, Vec<Syntax>),
}

use alloc::boxed::Box;

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn skip(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::Precondition(format!("term syntax at offset {}: {what}", self.i))
    }

    fn term(&mut self) -> Result<Syntax> {
        self.skip();
        match self.s.get(self.i) {
            Some(b'|') => {
                self.i += 1;
                Ok(Syntax::Leaf)
            }
            Some(b'{') => {
                self.i += 1;
                let x = self.term()?;
                self.eat(b'}')?;
                Ok(Syntax::Bare(Box::new(x)))
            }
            Some(b'[') => {
                self.i += 1;
                let label = self.term()?;
                self.eat(b',')?;
                self.eat(b'[')?;
                let mut children = Vec::new();
                self.skip();
                if self.s.get(self.i) != Some(&b']') {
                    loop {
                        children.push(self.term()?);
                        self.skip();
                        if self.s.get(self.i) == Some(&b',') {
                            self.i += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.eat(b']')?;
                self.eat(b']')?;
                Ok(Syntax::Node(Box::new(label), children))
            }
            Some(c) if c.is_ascii_alphanumeric() || *c == b'*' || *c == b'_' => {
                let start = self.i;
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || b"*_".contains(&self.s[self.i])) {
                    self.i += 1;
                }
                Ok(Syntax::Atom(String::from_utf8_lossy(&self.s[start..self.i]).into_owned()))
            }
            _ => Err(self.error("unexpected input")),
        }
    }
}

fn parse_syntax(s: &str) -> Result<Syntax> {
    let mut p = Parser { s: s.as_bytes(), i: 0 };
    let t = p.term()?;
    p.skip();
    if p.i != s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

/// Parses a `k`-multitope term.
pub fn parse_multitope(k: usize, s: &str) -> Result<Obj> {
    build_multitope(k, &parse_syntax(s)?)
}

fn build_multitope(k: usize, t: &Syntax) -> Result<Obj> {
    match (k, t) {
        (0, Syntax::Atom(a)) if a == "*" => Ok(Obj::atom("*")),
        (1, Syntax::Atom(a)) if a == "1" => Ok(Obj::Gen(GenArrow::atom("1"))),
        (0 | 1, _) => Err(Error::Precondition(format!("not a {k}-multitope"))),
        (_, Syntax::Bare(x)) => {
            let m = iterated_slice_gen(k - 2);
            Ok(Obj::Gen(gen_tree(&m, PlanarTree::Edge(build_multitope(k - 2, x)?))?))
        }
        (_, Syntax::Node(..)) => {
            let m = iterated_slice_gen(k - 2);
            Ok(Obj::Gen(gen_tree(&m, build_gen_node(&m, k, t)?)?))
        }
        _ => Err(Error::Precondition(format!("not a {k}-multitope"))),
    }
}

fn build_gen_node(m: &GenMulticat, k: usize, t: &Syntax) -> Result<PlanarTree<GenArrow, Obj>> {
    let Syntax::Node(label, children) = t else {
        return Err(Error::Precondition("expected a node".into()));
    };
    let g = match build_multitope(k - 1, label)? {
        Obj::Gen(g) => g,
        other => return Err(Error::WrongKind(other.to_string())),
    };
    let src = m.source(&g)?;
    if src.len() != children.len() {
        return Err(Error::SizeMismatch {
            expected: src.len(),
            found: children.len(),
        });
    }
    let mut kids = Vec::with_capacity(children.len());
    for (c, x) in children.iter().zip(&src) {
        kids.push(match c {
            Syntax::Leaf => PlanarTree::Edge(x.clone()),
            _ => build_gen_node(m, k, c)?,
        });
    }
    Ok(PlanarTree::Node {
        out: m.target(&g)?,
        label: g,
        children: kids,
    })
}

// ---- lifting ----

/// An isomorphism `from → to` in the object category of `q`, found by
/// search along generating isomorphisms.
pub fn find_iso(q: &SymMulticat, from: &Obj, to: &Obj) -> Result<ObjMor> {
    if from == to {
        return q.obj_identity(from);
    }
    let mut back: HashMap<Obj, ObjMor> = HashMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    let mut seen: HashSet<Obj> = HashSet::from([from.clone()]);
    while let Some(y) = queue.pop_front() {
        for m in q.gen_out(&y)? {
            let c = q.obj_cod(&m)?;
            if !seen.insert(c.clone()) {
                continue;
            }
            back.insert(c.clone(), m);
            if c == *to {
                let mut path = Vec::new();
                let mut cur = c;
                while cur != *from {
                    let m = back[&cur].clone();
                    cur = q.obj_dom(&m)?;
                    path.push(m);
                }
                let mut acc = q.obj_identity(from)?;
                for m in path.into_iter().rev() {
                    acc = q.obj_compose(&m, &acc)?;
                }
                return Ok(acc);
            }
            queue.push_back(c);
        }
    }
    Err(Error::Precondition(format!("{from} and {to} are not isomorphic")))
}

/// The `k`-opetope with trivial twists and node order whose tree follows
/// the `k`-multitope `x`.
pub fn lift(k: usize, x: &Obj) -> Result<Obj> {
    match (k, x) {
        (0, Obj::Atom(_)) => Ok(x.clone()),
        (1, Obj::Gen(GenArrow::Atom(a))) => Ok(Obj::Sym(SymArrow::Atom(a.clone()))),
        (_, Obj::Gen(GenArrow::Tree(t))) if k >= 2 => {
            let q = iterated_slice_sym(k - 2);
            let tree = match &t.tree {
                PlanarTree::Edge(e) => PlanarTree::Edge(q.obj_identity(&lift(k - 2, e)?)?),
                node => lift_node(&q, k, node, None)?,
            };
            let leaves = tree.leaf_count();
            let nodes = tree.node_count();
            Ok(Obj::Sym(make_config(&q, tree, Permutation::identity(leaves), Permutation::identity(nodes))?))
        }
        _ => Err(Error::WrongKind(format!("{x} is not a {k}-multitope"))),
    }
}

fn lift_node(
    q: &SymMulticat,
    k: usize,
    t: &PlanarTree<GenArrow, Obj>,
    slot: Option<&Obj>,
) -> Result<PlanarTree<SymArrow, ObjMor>> {
    let PlanarTree::Node { label, children, .. } = t else {
        unreachable!("leaves are handled by the parent")
    };
    let f = match lift(k - 1, &Obj::Gen(label.clone()))? {
        Obj::Sym(f) => f,
        other => return Err(Error::WrongKind(other.to_string())),
    };
    let p = q.profile(&f)?;
    let mut kids = Vec::with_capacity(children.len());
    for (c, x) in children.iter().zip(&p.inputs) {
        kids.push(match c {
            PlanarTree::Edge(_) => PlanarTree::Edge(q.obj_identity(x)?),
            node => lift_node(q, k, node, Some(x))?,
        });
    }
    let out = match slot {
        None => q.obj_identity(&p.output)?,
        Some(s) => find_iso(q, &p.output, s)?,
    };
    Ok(PlanarTree::Node {
        label: f,
        out,
        children: kids,
    })
}

/// Parses a multitope term and lifts it to an opetope.
pub fn parse_opetope(k: usize, s: &str) -> Result<Obj> {
    lift(k, &parse_multitope(k, s)?)
}

// ---- isomorphism classes ----

/// All objects isomorphic to `x` in the object category of `q`, by closure
/// under generating isomorphisms.
pub fn orbit(q: &SymMulticat, x: &Obj) -> Result<HashSet<Obj>> {
    let mut seen: HashSet<Obj> = HashSet::from([x.clone()]);
    let mut stack = vec![x.clone()];
    while let Some(y) = stack.pop() {
        for m in q.gen_out(&y)? {
            let c = q.obj_cod(&m)?;
            if seen.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    Ok(seen)
}

/// Number of manifestations of a `k`-opetope.
pub fn manifestation_count(k: usize, x: &Obj) -> Result<usize> {
    Ok(orbit(&iterated_slice_sym(k), x)?.len())
}

/// An isomorphism class of `k`-opetopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    /// Least member by encoding.
    pub representative: Obj,
    pub size: usize,
    /// The members among the items the class was computed from.
    pub members: Vec<Obj>,
}

/// Partitions `items` into isomorphism classes in `ℂ_k`, ordered by
/// representative.
pub fn iso_classes(k: usize, items: &[Obj]) -> Result<Vec<IsoClass>> {
    let q = iterated_slice_sym(k);
    let wanted: BTreeSet<&Obj> = items.iter().collect();
    let mut done: HashSet<Obj> = HashSet::new();
    let mut out = Vec::new();
    for x in items {
        if done.contains(x) {
            continue;
        }
        let orb = orbit(&q, x)?;
        let representative = orb
            .iter()
            .min_by_cached_key(|y| y.to_string())
            .cloned()
            .expect("orbits are nonempty");
        let mut members: Vec<Obj> = orb.iter().filter(|y| wanted.contains(y)).cloned().collect();
        members.sort();
        done.extend(members.iter().cloned());
        out.push(IsoClass {
            representative,
            size: orb.len(),
            members,
        });
    }
    out.sort_by_cached_key(|c| c.representative.to_string());
    Ok(out)
}

trait MinByCachedKey: Iterator + Sized {
    fn min_by_cached_key<K: Ord>(self, f: impl FnMut(&Self::Item) -> K) -> Option<Self::Item>;
}

impl<I: Iterator> MinByCachedKey for I {
    fn min_by_cached_key<K: Ord>(self, mut f: impl FnMut(&Self::Item) -> K) -> Option<Self::Item> {
        self.map(|x| (f(&x), x)).min_by(|a, b| a.0.cmp(&b.0)).map(|p| p.1)
    }
}

// ---- correspondence ----

/// Outcome of comparing `ℂ_k` with `P_k` at a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub dim: usize,
    pub equivalence: EquivalenceReport,
    pub classes: usize,
    pub multitopes: usize,
    /// Each class is sent to one multitope, and classes biject with the
    /// multitopes at the bound.
    pub object_bijection: bool,
    pub notes: Vec<String>,
}

impl Correspondence {
    pub fn verdict(&self) -> bool {
        self.equivalence.verdict() && self.object_bijection
    }
}

/// Largest node bound at which [`verify_correspondence`] compares arrows.
/// Past it the arrows of `I^{k+}` carry every permutation of up to nine
/// leaves.
pub const ARROW_BOUND: usize = 3;

/// Checks `φ^{k+}: I^{k+} → ξ(J_{k+})` for equivalence at the bound (at
/// most [`ARROW_BOUND`]), and that isomorphism classes of `k`-opetopes
/// match `k`-multitopes at the bound.
pub fn verify_correspondence(k: usize, bound: usize) -> Result<Correspondence> {
    let phi = phi_iterated(k);
    let equivalence = check_sym_equivalence(&phi, bound.min(ARROW_BOUND));
    let items = enumerate_opetopes(k, bound);
    let classes = iso_classes(k, &items)?;
    let multitopes: BTreeSet<Obj> = enumerate_multitopes(k, bound).into_iter().collect();
    let mut notes = Vec::new();
    let mut images: BTreeMap<Obj, Obj> = BTreeMap::new();
    let mut ok = true;
    for c in &classes {
        let mut seen = BTreeSet::new();
        for x in &c.members {
            seen.insert(phi.on_object(x)?);
        }
        if seen.len() != 1 {
            ok = false;
            notes.push(format!("class of {} has {} images", c.representative, seen.len()));
            continue;
        }
        let image = seen.pop_first().expect("one image");
        if let Some(prev) = images.insert(image.clone(), c.representative.clone()) {
            ok = false;
            notes.push(format!("classes of {prev} and {} share an image", c.representative));
        }
        if !multitopes.contains(&image) {
            ok = false;
            notes.push(format!("{} lies outside the bound", multitope_term(&image)));
        }
    }
    for p in &multitopes {
        if !images.contains_key(p) {
            ok = false;
            notes.push(format!("{} is not hit", multitope_term(p)));
        }
    }
    Ok(Correspondence {
        dim: k,
        equivalence,
        classes: classes.len(),
        multitopes: multitopes.len(),
        object_bijection: ok,
        notes,
    })
}

/// Term of the 3-multitope made of a ternary cell with a binary cell on
/// its middle input.
pub const PENTAGON_SEED: &str = "[[1,[[1,[[1,[|]]]]]],[|,[[1,[[1,[|]]]],[|,|]],|]]";

/// Term of the 3-multitope made of a ternary cell with a binary cell on
/// its middle input and a ternary cell on its last input.
pub const HEXAGON_SEED: &str =
    "[[1,[[1,[[1,[|]]]]]],[|,[[1,[[1,[|]]]],[|,|]],[[1,[[1,[[1,[|]]]]]],[|,|,|]]]]";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xi::is_tidy;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn low_dimensions() {
        assert_eq!(enumerate_opetopes(0, 3).len(), 1);
        assert_eq!(enumerate_opetopes(1, 3).len(), 1);
        assert_eq!(enumerate_multitopes(0, 3).len(), 1);
        assert_eq!(enumerate_multitopes(1, 3).len(), 1);
        assert_eq!(iterated_slice_sym(1).objects(3).len(), 1);
    }

    #[test]
    fn two_multitopes_are_chains() {
        let ms = enumerate_multitopes(2, 3);
        let terms: Vec<String> = ms.iter().map(multitope_term).collect();
        assert_eq!(terms, ["[1,[[1,[[1,[|]]]]]]", "[1,[[1,[|]]]]", "[1,[|]]", "{*}"]);
        for t in &terms {
            assert_eq!(multitope_term(&parse_multitope(2, t).unwrap()), *t);
        }
    }

    #[test]
    fn two_opetopes_by_node_count() {
        let q = iterated_slice_sym(2);
        let all = enumerate_opetopes(2, 3);
        for n in 0..=3 {
            let count = all
                .iter()
                .filter(|x| match x {
                    Obj::Sym(SymArrow::Config(c)) => c.tau.size() == n,
                    _ => false,
                })
                .count();
            assert_eq!(count, factorial(n));
        }
        let classes = iso_classes(2, &all).unwrap();
        assert_eq!(classes.len(), 4);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, [1, 1, 2, 6]);
        assert!(is_tidy(&q, 3));
    }

    #[test]
    fn ternary_two_opetope_has_six_manifestations() {
        let x = parse_opetope(2, "[1,[[1,[[1,[|]]]]]]").unwrap();
        assert_eq!(manifestation_count(2, &x).unwrap(), 6);
        assert_eq!(manifestation_count(0, &Obj::atom("*")).unwrap(), 1);
        assert_eq!(manifestation_count(1, &Obj::Sym(SymArrow::atom("1"))).unwrap(), 1);
    }

    #[test]
    fn lift_maps_back_to_its_multitope() {
        for k in 2..=3 {
            let phi = phi_iterated(k);
            for m in enumerate_multitopes(k, 3) {
                let x = lift(k, &m).unwrap();
                assert_eq!(phi.on_object(&x).unwrap(), m, "{}", multitope_term(&m));
            }
        }
    }

    #[test]
    fn pentagon_has_576_manifestations() {
        let x = parse_opetope(3, PENTAGON_SEED).unwrap();
        assert_eq!(manifestation_count(3, &x).unwrap(), 576);
    }

    #[test]
    fn correspondence_in_low_dimensions() {
        for k in 0..=2 {
            let c = verify_correspondence(k, 3).unwrap();
            assert!(c.verdict(), "{k}: {:?}", c);
        }
    }

    #[test]
    fn bad_terms_are_rejected() {
        assert!(parse_multitope(2, "[1,[|,|]]").is_err());
        assert!(parse_multitope(2, "[1,[|]").is_err());
        assert!(parse_multitope(0, "1").is_err());
    }
}
