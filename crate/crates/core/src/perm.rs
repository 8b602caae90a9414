//! Finite permutations.
//!
//! A [`Permutation`] of size `k` is stored as its table of images on
//! `0..k`. Formulas elsewhere in the crate are written with the convention
//! used for symmetric actions: acting on a list `xs` by `σ` produces the
//! list whose `i`-th entry is `xs[σ(i)]` (see [`Permutation::permute`]).

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// An element of the symmetric group `S_k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (0..k).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let k = images.len();
        let mut seen = alloc::vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return Err(Error::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition of `i` and `j` in `S_k`.
    pub fn transposition(k: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(k);
        p.images.swap(i, j);
        p
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, Error> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(self.then_unchecked(other))
    }

    pub(crate) fn then_unchecked(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Reorders `xs` so that entry `i` of the output is `xs[σ(i)]`.
    ///
    /// This is the reindexing carried out by the symmetric action on
    /// sources: `fσ` has source `(x_{σ(1)}, …, x_{σ(k)})`.
    pub fn permute<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        debug_assert_eq!(xs.len(), self.size());
        self.images.iter().map(|&i| xs[i].clone()).collect()
    }

    /// Every element of `S_k`, in lexicographic order of image tables.
    pub fn all(k: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..k).collect()),
        }
    }

    /// Adjacent transpositions `(i i+1)`, which generate `S_k`.
    pub fn adjacent_transpositions(k: usize) -> impl Iterator<Item = Permutation> {
        (1..k).map(move |i| Permutation::transposition(k, i - 1, i))
    }

    /// Block permutation: moves contiguous blocks of the given sizes the way
    /// `self` moves indices.
    ///
    /// Block `i` of the output is block `σ(i)` of the input, so that
    /// `(fσ) ∘ (g_{σ(1)}, …, g_{σ(k)}) = (f ∘ (g_1, …, g_k)) · block(σ, m)`
    /// where `m_i` is the arity of `g_i`.
    pub fn block(&self, block_sizes: &[usize]) -> Result<Self, Error> {
        if block_sizes.len() != self.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: block_sizes.len(),
            });
        }
        let mut offsets = Vec::with_capacity(block_sizes.len());
        let mut acc = 0;
        for &m in block_sizes {
            offsets.push(acc);
            acc += m;
        }
        let mut images = Vec::with_capacity(acc);
        for &src in &self.images {
            images.extend(offsets[src]..offsets[src] + block_sizes[src]);
        }
        Ok(Permutation { images })
    }

    /// Block-diagonal sum: acts as `perms[i]` on the `i`-th contiguous block.
    pub fn juxtapose<'a>(perms: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut images = Vec::new();
        for p in perms {
            let base = images.len();
            images.extend(p.images.iter().map(|&i| base + i));
        }
        Permutation { images }
    }

    /// Extends `self ∈ S_j` to `S_{k+j-1}` by acting on the block that
    /// replaces position `p` of a list of length `k`.
    pub fn inserted_at(&self, k: usize, p: usize) -> Self {
        let j = self.size();
        let mut images: Vec<usize> = (0..p).collect();
        images.extend(self.images.iter().map(|&i| p + i));
        images.extend(p + j..k + j - 1);
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, i) in self.images.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

/// Iterator returned by [`Permutation::all`].
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // next lexicographic permutation
        let n = succ.len();
        if n > 1 {
            let mut i = n - 1;
            while i > 0 && succ[i - 1] >= succ[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = n - 1;
                while succ[j] <= succ[i - 1] {
                    j -= 1;
                }
                succ.swap(i - 1, j);
                succ[i..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation { images: current })
    }
}

/// Splice bookkeeping for a partial composite `f ∘_p g` with `|s(f)| = k`
/// and `|s(g)| = j`: the spliced list is
/// `(x_0, …, x_{p-1}, y_0, …, y_{j-1}, x_{p+1}, …, x_{k-1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Splice {
    pub outer_arity: usize,
    pub position: usize,
    pub inner_arity: usize,
}

impl Splice {
    pub fn new(outer_arity: usize, position: usize, inner_arity: usize) -> Self {
        Splice {
            outer_arity,
            position,
            inner_arity,
        }
    }

    pub fn len(&self) -> usize {
        self.outer_arity + self.inner_arity - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position in the spliced list of outer index `i` (`i != position`).
    pub fn outer(&self, i: usize) -> usize {
        debug_assert!(i != self.position);
        if i < self.position {
            i
        } else {
            i + self.inner_arity - 1
        }
    }

    /// Position in the spliced list of inner index `l`.
    pub fn inner(&self, l: usize) -> usize {
        self.position + l
    }

    /// Builds the spliced list itself.
    pub fn splice<T: Clone>(&self, outer: &[T], inner: &[T]) -> Vec<T> {
        let mut z = Vec::with_capacity(self.len());
        z.extend_from_slice(&outer[..self.position]);
        z.extend_from_slice(inner);
        z.extend_from_slice(&outer[self.position + 1..]);
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
        assert!(Permutation::from_images(vec![]).is_ok());
    }

    #[test]
    fn identity_and_inverse() {
        let s = p(&[2, 0, 1]);
        assert_eq!(Permutation::identity(3).compose(&s).unwrap(), s);
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
        assert!(Permutation::identity(0).is_identity());
        assert!(Permutation::identity(1).is_identity());
    }

    #[test]
    fn compose_transpositions_against_table() {
        // (1 2) ∘ (2 3) in 1-based cycle notation; composed by hand from
        // the image tables: i ↦ a(b(i)).
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        let table_a = [1, 0, 2];
        let table_b = [0, 2, 1];
        let expected: Vec<usize> = (0..3).map(|i| table_a[table_b[i]]).collect();
        assert_eq!(expected, vec![1, 2, 0]);
        assert_eq!(a.compose(&b).unwrap(), p(&expected));
    }

    #[test]
    fn compose_size_mismatch() {
        assert!(matches!(
            Permutation::identity(2).compose(&Permutation::identity(3)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn all_enumerates_factorial_many() {
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(1).count(), 1);
        assert_eq!(Permutation::all(4).count(), 24);
        let mut v: Vec<_> = Permutation::all(4).collect();
        v.dedup();
        assert_eq!(v.len(), 24);
    }

    #[test]
    fn block_examples() {
        assert!(Permutation::identity(3).block(&[2, 1, 3]).unwrap().is_identity());
        let swap = p(&[1, 0]);
        let b = swap.block(&[2, 1]).unwrap();
        assert_eq!(b.permute(&["a1", "a2", "b1"]), vec!["b1", "a1", "a2"]);
        let s = p(&[2, 0, 1]);
        assert_eq!(s.block(&[1, 1, 1]).unwrap(), s);
        assert!(swap.block(&[1]).is_err());
    }

    fn block_sizes() -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    out.push(vec![a, b, c]);
                }
            }
        }
        out
    }

    #[test]
    fn block_is_a_homomorphism() {
        // brute force over S3 and blocks of size 0..2
        for m in block_sizes() {
            for s in Permutation::all(3) {
                for t in Permutation::all(3) {
                    let st = s.compose(&t).unwrap();
                    let lhs = st.block(&m).unwrap();
                    let rhs = s
                        .block(&m)
                        .unwrap()
                        .compose(&t.block(&s.permute(&m)).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "s={s} t={t} m={m:?}");
                }
            }
        }
    }

    #[test]
    fn block_law_needs_sizes_permuted_by_the_left_factor() {
        // Permuting the sizes by the right-hand factor instead only works
        // for some size vectors.
        let mut agree = 0;
        let mut disagree = 0;
        for m in block_sizes() {
            for s in Permutation::all(3) {
                for t in Permutation::all(3) {
                    let st = s.compose(&t).unwrap();
                    let lhs = st.block(&m).unwrap();
                    let rhs = s.block(&t.permute(&m)).unwrap().compose(&t.block(&m).unwrap());
                    if rhs.as_ref() == Ok(&lhs) {
                        agree += 1;
                    } else {
                        disagree += 1;
                    }
                }
            }
        }
        assert!(agree > 0 && disagree > 0);
    }

    #[test]
    fn juxtapose_examples() {
        let id2 = Permutation::identity(2);
        let id1 = Permutation::identity(1);
        assert!(Permutation::juxtapose([&id2, &id1]).is_identity());
        let swap = p(&[1, 0]);
        let j = Permutation::juxtapose([&swap, &id1]);
        assert_eq!(j.permute(&["a1", "a2", "b1"]), vec!["a2", "a1", "b1"]);
        let s = p(&[2, 0, 1]);
        assert_eq!(Permutation::juxtapose([&s]), s);
    }

    #[test]
    fn permute_is_a_right_action() {
        // (xs·σ)·σ' = xs·(σ∘σ')
        let xs = ["a", "b", "c", "d"];
        for s in Permutation::all(4) {
            for t in Permutation::all(4).step_by(5) {
                let lhs = t.permute(&s.permute(&xs));
                let rhs = s.compose(&t).unwrap().permute(&xs);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn splice_positions() {
        let sp = Splice::new(3, 1, 2);
        let z = sp.splice(&["x0", "x1", "x2"], &["y0", "y1"]);
        assert_eq!(z, vec!["x0", "y0", "y1", "x2"]);
        assert_eq!(z[sp.outer(0)], "x0");
        assert_eq!(z[sp.outer(2)], "x2");
        assert_eq!(z[sp.inner(1)], "y1");
        let nullary = Splice::new(2, 0, 0);
        assert_eq!(nullary.splice(&["x0", "x1"], &[]), vec!["x1"]);
        assert_eq!(nullary.outer(1), 0);
    }

    #[test]
    fn inserted_at_acts_on_inner_block() {
        let swap = p(&[1, 0]);
        let ins = swap.inserted_at(3, 1);
        assert_eq!(ins.permute(&["x0", "y0", "y1", "x2"]), vec!["x0", "y1", "y0", "x2"]);
    }
}
