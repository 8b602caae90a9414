//! Planar trees with labelled nodes and edges, and grafting.
//!
//! Nodes are addressed by their depth-first (preorder, left to right)
//! index; leaves by their left-to-right index.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A planar tree. `Edge(e)` is a leaf, or on its own the tree with no
/// nodes. A node carries its label, the label of its outgoing edge and its
/// incoming subtrees in order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PlanarTree<L, E> {
    Edge(E),
    Node {
        label: L,
        out: E,
        children: Vec<PlanarTree<L, E>>,
    },
}

impl<L, E> PlanarTree<L, E> {
    pub fn corolla(label: L, out: E, leaves: Vec<E>) -> Self {
        PlanarTree::Node {
            label,
            out,
            children: leaves.into_iter().map(PlanarTree::Edge).collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            PlanarTree::Edge(_) => 0,
            PlanarTree::Node { children, .. } => {
                1 + children.iter().map(Self::node_count).sum::<usize>()
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            PlanarTree::Edge(_) => 1,
            PlanarTree::Node { children, .. } => children.iter().map(Self::leaf_count).sum(),
        }
    }

    pub fn root_edge(&self) -> &E {
        match self {
            PlanarTree::Edge(e) => e,
            PlanarTree::Node { out, .. } => out,
        }
    }

    pub fn labels(&self) -> Vec<&L> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let PlanarTree::Node { label, .. } = t {
                out.push(label);
            }
        });
        out
    }

    pub fn leaves(&self) -> Vec<&E> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let PlanarTree::Edge(e) = t {
                out.push(e);
            }
        });
        out
    }

    /// Visits every subtree in preorder.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Self)) {
        f(self);
        if let PlanarTree::Node { children, .. } = self {
            for c in children {
                c.walk(f);
            }
        }
    }

    /// The subtree rooted at the node with the given preorder index.
    pub fn node(&self, index: usize) -> Option<&Self> {
        let mut n = 0;
        let mut found = None;
        self.walk(&mut |t| {
            if matches!(t, PlanarTree::Node { .. }) {
                if n == index {
                    found.get_or_insert(t);
                }
                n += 1;
            }
        });
        found
    }

    /// Child indices leading from the root to the node with the given
    /// preorder index.
    pub fn path_to(&self, index: usize) -> Option<Vec<usize>> {
        fn go<L, E>(t: &PlanarTree<L, E>, n: &mut usize, index: usize, path: &mut Vec<usize>) -> bool {
            let PlanarTree::Node { children, .. } = t else {
                return false;
            };
            if *n == index {
                return true;
            }
            *n += 1;
            for (i, c) in children.iter().enumerate() {
                path.push(i);
                if go(c, n, index, path) {
                    return true;
                }
                path.pop();
            }
            false
        }
        let mut path = Vec::new();
        go(self, &mut 0, index, &mut path).then_some(path)
    }

    /// The subtree at the node with the given preorder index, mutably.
    pub fn node_mut(&mut self, index: usize) -> Option<&mut Self> {
        let path = self.path_to(index)?;
        let mut t = self;
        for i in path {
            let PlanarTree::Node { children, .. } = t else {
                unreachable!()
            };
            t = &mut children[i];
        }
        Some(t)
    }

    pub fn map<L2, E2>(&self, fl: &mut impl FnMut(&L) -> L2, fe: &mut impl FnMut(&E) -> E2) -> PlanarTree<L2, E2> {
        match self {
            PlanarTree::Edge(e) => PlanarTree::Edge(fe(e)),
            PlanarTree::Node {
                label,
                out,
                children,
            } => PlanarTree::Node {
                label: fl(label),
                out: fe(out),
                children: children.iter().map(|c| c.map(fl, fe)).collect(),
            },
        }
    }
}

impl<L: fmt::Display, E: fmt::Display> fmt::Display for PlanarTree<L, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Edge(e) => write!(f, "{e}"),
            PlanarTree::Node {
                label,
                out,
                children,
            } => {
                write!(f, "node({label},[")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "])@{out}")
            }
        }
    }
}

/// A planar tree together with a permutation of its leaves, the only twist
/// left after combing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CombedTree<L, E> {
    pub tree: PlanarTree<L, E>,
    pub twist: Permutation,
}

/// Where a node of a grafted tree came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Origin {
    Outer(usize),
    Inner(usize),
}

/// Result of [`graft`].
#[derive(Clone, Debug)]
pub struct Graft<L, E> {
    pub tree: PlanarTree<L, E>,
    /// Origin of each node, by preorder index in the new tree.
    pub nodes: Vec<Origin>,
    /// For each leaf of the new tree, the index of the outer leaf it came
    /// from.
    pub leaves: Vec<usize>,
}

/// Replaces node `at` of `outer` by the tree `inner`.
///
/// Child `j` of the replaced node is attached at leaf `inner_twist(j)` of
/// `inner`. Where an inner leaf edge meets the child's outgoing edge the two
/// labels are composed with `compose(second, first)`, and the same happens
/// between the inner root edge and the replaced node's outgoing edge.
pub fn graft<L: Clone, E: Clone>(
    outer: &PlanarTree<L, E>,
    at: usize,
    inner: &PlanarTree<L, E>,
    inner_twist: &Permutation,
    compose: &mut impl FnMut(&E, &E) -> Result<E>,
) -> Result<Graft<L, E>> {
    let target = outer.node(at).ok_or(Error::BadPosition {
        position: at,
        arity: outer.node_count(),
    })?;
    let PlanarTree::Node { children, .. } = target else {
        unreachable!()
    };
    if children.len() != inner.leaf_count() || inner_twist.size() != children.len() {
        return Err(Error::SizeMismatch {
            expected: children.len(),
            found: inner.leaf_count(),
        });
    }
    let mut st = State {
        nodes: Vec::new(),
        leaves: Vec::new(),
    };
    let mut cursor = Cursor { node: 0, leaf: 0 };
    let tree = rebuild_outer(outer, at, inner, inner_twist, compose, &mut st, &mut cursor)?;
    Ok(Graft {
        tree,
        nodes: st.nodes,
        leaves: st.leaves,
    })
}

struct State {
    nodes: Vec<Origin>,
    leaves: Vec<usize>,
}

#[derive(Clone, Copy)]
struct Cursor {
    node: usize,
    leaf: usize,
}

/// Copies an outer subtree verbatim, numbering from `cur`.
fn copy_outer<L: Clone, E: Clone>(t: &PlanarTree<L, E>, st: &mut State, cur: &mut Cursor) -> PlanarTree<L, E> {
    match t {
        PlanarTree::Edge(e) => {
            st.leaves.push(cur.leaf);
            cur.leaf += 1;
            PlanarTree::Edge(e.clone())
        }
        PlanarTree::Node {
            label,
            out,
            children,
        } => {
            st.nodes.push(Origin::Outer(cur.node));
            cur.node += 1;
            PlanarTree::Node {
                label: label.clone(),
                out: out.clone(),
                children: children.iter().map(|c| copy_outer(c, st, cur)).collect(),
            }
        }
    }
}

fn rebuild_outer<L: Clone, E: Clone>(
    t: &PlanarTree<L, E>,
    at: usize,
    inner: &PlanarTree<L, E>,
    twist: &Permutation,
    compose: &mut impl FnMut(&E, &E) -> Result<E>,
    st: &mut State,
    cur: &mut Cursor,
) -> Result<PlanarTree<L, E>> {
    match t {
        PlanarTree::Edge(_) => Ok(copy_outer(t, st, cur)),
        PlanarTree::Node {
            label,
            out,
            children,
        } => {
            if cur.node == at {
                // starting cursors of each child of the replaced node
                let mut starts = Vec::with_capacity(children.len());
                let mut c = Cursor {
                    node: cur.node + 1,
                    leaf: cur.leaf,
                };
                for ch in children {
                    starts.push(c);
                    c.node += ch.node_count();
                    c.leaf += ch.leaf_count();
                }
                let end = c;
                let inv = twist.inverse();
                let mut inner_node = 0;
                let mut inner_leaf = 0;
                let mut ctx = Splice {
                    children,
                    starts: &starts,
                    inv: &inv,
                    compose,
                    inner_node: &mut inner_node,
                    inner_leaf: &mut inner_leaf,
                };
                let mut rebuilt = ctx.inner(inner, st)?;
                // root edge of the inner tree meets the replaced node's edge
                match &mut rebuilt {
                    PlanarTree::Edge(e) | PlanarTree::Node { out: e, .. } => {
                        *e = (ctx.compose)(out, e)?;
                    }
                }
                *cur = end;
                Ok(rebuilt)
            } else {
                st.nodes.push(Origin::Outer(cur.node));
                cur.node += 1;
                let mut kids = Vec::with_capacity(children.len());
                for ch in children {
                    kids.push(rebuild_outer(ch, at, inner, twist, compose, st, cur)?);
                }
                Ok(PlanarTree::Node {
                    label: label.clone(),
                    out: out.clone(),
                    children: kids,
                })
            }
        }
    }
}

struct Splice<'a, L, E, F> {
    children: &'a [PlanarTree<L, E>],
    starts: &'a [Cursor],
    inv: &'a Permutation,
    compose: &'a mut F,
    inner_node: &'a mut usize,
    inner_leaf: &'a mut usize,
}

impl<L: Clone, E: Clone, F: FnMut(&E, &E) -> Result<E>> Splice<'_, L, E, F> {
    fn inner(&mut self, t: &PlanarTree<L, E>, st: &mut State) -> Result<PlanarTree<L, E>> {
        match t {
            PlanarTree::Edge(leaf_edge) => {
                let j = self.inv.apply(*self.inner_leaf);
                *self.inner_leaf += 1;
                let mut cur = self.starts[j];
                let mut sub = copy_outer(&self.children[j], st, &mut cur);
                match &mut sub {
                    PlanarTree::Edge(e) | PlanarTree::Node { out: e, .. } => {
                        *e = (self.compose)(leaf_edge, e)?;
                    }
                }
                Ok(sub)
            }
            PlanarTree::Node {
                label,
                out,
                children,
            } => {
                st.nodes.push(Origin::Inner(*self.inner_node));
                *self.inner_node += 1;
                let mut kids = Vec::with_capacity(children.len());
                for ch in children {
                    kids.push(self.inner(ch, st)?);
                }
                Ok(PlanarTree::Node {
                    label: label.clone(),
                    out: out.clone(),
                    children: kids,
                })
            }
        }
    }
}

/// Substitutes `inner` for node `at` of `outer` and combs the result so
/// that its only twist sits at the leaves.
pub fn comb_substitute<L: Clone, E: Clone>(
    outer: &CombedTree<L, E>,
    at: usize,
    inner: &CombedTree<L, E>,
    compose: &mut impl FnMut(&E, &E) -> Result<E>,
) -> Result<(CombedTree<L, E>, Vec<Origin>)> {
    let g = graft(&outer.tree, at, &inner.tree, &inner.twist, compose)?;
    let pi = Permutation::from_images(g.leaves)?;
    let twist = pi.inverse().compose(&outer.twist)?;
    Ok((CombedTree { tree: g.tree, twist }, g.nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;

    type T = PlanarTree<&'static str, String>;

    fn leaf(s: &str) -> T {
        PlanarTree::Edge(s.into())
    }

    fn node(l: &'static str, out: &str, ch: Vec<T>) -> T {
        PlanarTree::Node {
            label: l,
            out: out.into(),
            children: ch,
        }
    }

    fn cat(a: &String, b: &String) -> Result<String> {
        Ok(alloc::format!("{a}.{b}"))
    }

    #[test]
    fn counts_and_orders() {
        let t = node("f", "r", vec![node("g", "e", vec![leaf("a"), leaf("b")]), leaf("c")]);
        assert_eq!(t.node_count(), 2);
        assert_eq!(t.leaf_count(), 3);
        assert_eq!(t.labels(), vec![&"f", &"g"]);
        assert_eq!(t.leaves(), vec!["a", "b", "c"]);
        assert!(matches!(t.node(1), Some(PlanarTree::Node { label: "g", .. })));
        assert!(t.node(2).is_none());
        assert_eq!(alloc::format!("{t}"), "node(f,[node(g,[a,b])@e,c])@r");
    }

    #[test]
    fn unary_chain_graft() {
        let outer = CombedTree {
            tree: node("f", "r", vec![leaf("x")]),
            twist: Permutation::identity(1),
        };
        let inner = CombedTree {
            tree: node("g", "s", vec![leaf("y")]),
            twist: Permutation::identity(1),
        };
        let (c, origins) = comb_substitute(&outer, 0, &inner, &mut cat).unwrap();
        assert_eq!(c.tree, node("g", "r.s", vec![leaf("y.x")]));
        assert!(c.twist.is_identity());
        assert_eq!(origins, vec![Origin::Inner(0)]);
        // a nested chain
        let outer2 = CombedTree {
            tree: node("f", "r", vec![node("h", "t", vec![leaf("x")])]),
            twist: Permutation::identity(1),
        };
        let (c2, o2) = comb_substitute(&outer2, 0, &inner, &mut cat).unwrap();
        assert_eq!(c2.tree, node("g", "r.s", vec![node("h", "y.t", vec![leaf("x")])]));
        assert_eq!(o2, vec![Origin::Inner(0), Origin::Outer(1)]);
    }

    #[test]
    fn zero_node_inner_is_a_relabelling() {
        // replacing a unary node by a bare edge deletes it
        let outer = CombedTree {
            tree: node("f", "r", vec![leaf("x")]),
            twist: Permutation::identity(1),
        };
        let inner = CombedTree {
            tree: leaf("e"),
            twist: Permutation::identity(1),
        };
        let (c, o) = comb_substitute(&outer, 0, &inner, &mut cat).unwrap();
        assert_eq!(c.tree, leaf("r.e.x"));
        assert!(o.is_empty());
    }

    #[test]
    fn twist_over_binary_subtrees_is_a_block_permutation() {
        let outer = CombedTree {
            tree: node(
                "n",
                "r",
                vec![
                    node("a", "ea", vec![leaf("a1"), leaf("a2")]),
                    node("b", "eb", vec![leaf("b1"), leaf("b2")]),
                ],
            ),
            twist: Permutation::identity(4),
        };
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        let inner = CombedTree {
            tree: node("m", "s", vec![leaf("i0"), leaf("i1")]),
            twist: swap.clone(),
        };
        let (c, _) = comb_substitute(&outer, 0, &inner, &mut cat).unwrap();
        let leaves: Vec<&str> = c.tree.leaves().into_iter().map(|s| s.as_str()).collect();
        assert_eq!(leaves, vec!["b1", "b2", "a1", "a2"]);
        assert_eq!(c.twist, swap.block(&[2, 2]).unwrap());
        // combed leaves read through the twist give back the original order
        let old: Vec<String> = outer.tree.leaves().into_iter().cloned().collect();
        let new: Vec<String> = c.tree.leaves().into_iter().cloned().collect();
        assert_eq!(c.twist.permute(&new), outer.twist.permute(&old));
    }

    #[test]
    fn graft_into_a_middle_node_keeps_outer_numbering() {
        let outer = CombedTree {
            tree: node(
                "f",
                "r",
                vec![leaf("x0"), node("g", "e", vec![leaf("y0"), leaf("y1")]), node("h", "k", vec![])],
            ),
            twist: Permutation::from_images(vec![2, 0, 1]).unwrap(),
        };
        let inner = CombedTree {
            tree: node("p", "s", vec![node("q", "t", vec![leaf("i0")]), leaf("i1")]),
            twist: Permutation::identity(2),
        };
        let g = graft(&outer.tree, 1, &inner.tree, &inner.twist, &mut cat).unwrap();
        assert_eq!(
            g.tree,
            node(
                "f",
                "r",
                vec![
                    leaf("x0"),
                    node("p", "e.s", vec![node("q", "t", vec![leaf("i0.y0")]), leaf("i1.y1")]),
                    node("h", "k", vec![])
                ]
            )
        );
        assert_eq!(g.nodes, vec![Origin::Outer(0), Origin::Inner(0), Origin::Inner(1), Origin::Outer(2)]);
        assert_eq!(g.leaves, vec![0, 1, 2]);
        assert!(graft(&outer.tree, 0, &inner.tree, &inner.twist, &mut cat).is_err());
    }
}
