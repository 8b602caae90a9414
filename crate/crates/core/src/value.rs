//! Values shared by every multicategory in the crate.
//!
//! Objects, arrows and object-morphisms of all the constructions live in
//! one family of enums so that slices of slices need no extra type
//! parameters. Derived data (targets, evaluated twists) is cached inside
//! the values but never takes part in equality, hashing or ordering.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::perm::Permutation;
use crate::tree::PlanarTree;

/// Opaque identifier of an atom (object, arrow or morphism of a table).
pub type Id = Arc<str>;

/// An object of some multicategory.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Obj {
    Atom(Id),
    /// An arrow of a generalised multicategory seen as an object of its slice.
    Gen(GenArrow),
    /// An arrow of a symmetric multicategory seen as an object of its slice.
    Sym(SymArrow),
}

impl Obj {
    pub fn atom(s: &str) -> Self {
        Obj::Atom(s.into())
    }
}

/// A morphism of a category of objects.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ObjMor {
    Atom(Id),
    /// Identity of an object of a discrete category.
    Identity(Obj),
    /// A morphism of a category of elements.
    Elt(Arc<EltMor>),
}

/// A morphism `(σ, f_1..f_m; f): g → g'` of `elt(Q)`, where
/// `g' = (ι(f) ∘ g ∘ (ι(f_1), …, ι(f_m)))σ`.
#[derive(Clone, Debug)]
pub struct EltMor {
    pub dom: SymArrow,
    pub sigma: Permutation,
    pub inputs: Vec<ObjMor>,
    pub output: ObjMor,
    pub cod: SymArrow,
}

impl EltMor {
    fn key(&self) -> (&SymArrow, &Permutation, &[ObjMor], &ObjMor) {
        (&self.dom, &self.sigma, &self.inputs, &self.output)
    }
}

impl PartialEq for EltMor {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for EltMor {}
impl Hash for EltMor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}
impl PartialOrd for EltMor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for EltMor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// An arrow of a generalised multicategory.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GenArrow {
    Atom(Id),
    Tree(Arc<GenTree>),
}

impl GenArrow {
    pub fn atom(s: &str) -> Self {
        GenArrow::Atom(s.into())
    }
}

/// An arrow of a generalised slice: a planar tree whose nodes are arrows of
/// the base and whose edges are its objects. Node order is preorder.
#[derive(Clone, Debug)]
pub struct GenTree {
    pub tree: PlanarTree<GenArrow, Obj>,
    /// Source position `r` of the evaluated composite is leaf `rho(r)`.
    pub rho: Permutation,
    /// The evaluated composite in the base.
    pub target: GenArrow,
}

impl PartialEq for GenTree {
    fn eq(&self, other: &Self) -> bool {
        self.tree == other.tree
    }
}
impl Eq for GenTree {}
impl Hash for GenTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tree.hash(state)
    }
}
impl PartialOrd for GenTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GenTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tree.cmp(&other.tree)
    }
}

/// An arrow of a symmetric multicategory.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum SymArrow {
    Atom(Id),
    /// `(f, σ)` in the symmetrisation of a generalised multicategory.
    Xi(GenArrow, Permutation),
    /// A configuration `(T, ρ, τ)` of a symmetric slice.
    Config(Arc<Config>),
}

impl SymArrow {
    pub fn atom(s: &str) -> Self {
        SymArrow::Atom(s.into())
    }
}

/// A configuration `(T, ρ, τ)`: a planar tree labelled by arrows and
/// object-morphisms, a permutation of its leaves, and `tau[n]`, the source
/// position of the node with preorder index `n`.
#[derive(Clone, Debug)]
pub struct Config {
    pub tree: PlanarTree<SymArrow, ObjMor>,
    pub rho: Permutation,
    pub tau: Permutation,
    /// The arrow obtained by evaluating the configuration.
    pub target: SymArrow,
}

impl Config {
    fn key(&self) -> (&PlanarTree<SymArrow, ObjMor>, &Permutation, &Permutation) {
        (&self.tree, &self.rho, &self.tau)
    }

    /// Node labels listed by source position.
    pub fn source(&self) -> Vec<SymArrow> {
        let labels = self.tree.labels();
        let inv = self.tau.inverse();
        (0..labels.len()).map(|i| labels[inv.apply(i)].clone()).collect()
    }
}

impl PartialEq for Config {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for Config {}
impl Hash for Config {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}
impl PartialOrd for Config {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Config {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Sources and target of an arrow.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Profile {
    pub inputs: Vec<Obj>,
    pub output: Obj,
}

impl Profile {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Atom(a) => f.write_str(a),
            Obj::Gen(g) => write!(f, "{g}"),
            Obj::Sym(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for GenArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenArrow::Atom(a) => f.write_str(a),
            GenArrow::Tree(t) => write!(f, "tree({})", t.tree),
        }
    }
}

impl fmt::Display for SymArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymArrow::Atom(a) => f.write_str(a),
            SymArrow::Xi(g, s) => write!(f, "xi({g};{s})"),
            SymArrow::Config(c) => write!(f, "cfg({};{};{})", c.tree, c.rho, c.tau),
        }
    }
}

impl fmt::Display for ObjMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjMor::Atom(a) => f.write_str(a),
            ObjMor::Identity(x) => write!(f, "id({x})"),
            ObjMor::Elt(e) => {
                write!(f, "elt({};{};[", e.dom, e.sigma)?;
                for (i, m) in e.inputs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "];{})", e.output)
            }
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.inputs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ";{})", self.output)
    }
}
