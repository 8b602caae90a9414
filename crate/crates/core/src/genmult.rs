//! Generalised multicategories: composition carries an amalgamating
//! permutation `χ` instead of leaving the spliced source list as it is.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Splice};
use crate::report::ValidationReport;
use crate::slice;
use crate::value::{GenArrow, Id, Obj};

/// A generalised multicategory given by finite tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteGenMulticat {
    pub objects: Vec<Id>,
    /// arrow id -> (source, target)
    pub arrows: BTreeMap<Id, (Vec<Id>, Id)>,
    pub identities: BTreeMap<Id, Id>,
    /// `(f, p, g) -> (f ∘_p g, χ)`, positions 0-based.
    pub compose: BTreeMap<(Id, usize, Id), (Id, Permutation)>,
}

impl FiniteGenMulticat {
    /// The terminal generalised multicategory: one object `*` and its
    /// identity `1`.
    pub fn terminal() -> Self {
        let star: Id = "*".into();
        let one: Id = "1".into();
        let mut m = FiniteGenMulticat {
            objects: alloc::vec![star.clone()],
            ..Default::default()
        };
        m.arrows.insert(one.clone(), (alloc::vec![star.clone()], star.clone()));
        m.identities.insert(star, one.clone());
        m.compose
            .insert((one.clone(), 0, one.clone()), (one, Permutation::identity(1)));
        m
    }
}

/// A generalised multicategory, either tabulated or generated on demand.
#[derive(Clone, Debug)]
pub enum GenMulticat {
    Finite(Arc<FiniteGenMulticat>),
    /// The slice `M₊` of the inner multicategory.
    Slice(Arc<GenMulticat>),
}

/// The outcome of `f ∘_p g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenComposition {
    pub result: GenArrow,
    /// Source position `r` of the result holds spliced entry `chi(r)`.
    pub chi: Permutation,
    pub splice: Splice,
}

impl GenComposition {
    /// `ψ`: where source entry `i != p` of `f` lands in the result.
    pub fn psi(&self, i: usize) -> usize {
        let z = self.splice.outer(i);
        self.chi.images().iter().position(|&c| c == z).expect("chi is a permutation")
    }

    /// `φ`: where source entry `l` of `g` lands in the result.
    pub fn phi(&self, l: usize) -> usize {
        let z = self.splice.inner(l);
        self.chi.images().iter().position(|&c| c == z).expect("chi is a permutation")
    }
}

impl From<FiniteGenMulticat> for GenMulticat {
    fn from(m: FiniteGenMulticat) -> Self {
        GenMulticat::Finite(Arc::new(m))
    }
}

fn atom_of<'a>(f: &'a GenArrow, what: &str) -> Result<&'a Id> {
    match f {
        GenArrow::Atom(a) => Ok(a),
        other => Err(Error::WrongKind(format!("{what} {other} is not a table arrow"))),
    }
}

fn obj_atom(x: &Obj) -> Result<&Id> {
    match x {
        Obj::Atom(a) => Ok(a),
        other => Err(Error::WrongKind(format!("object {other} is not a table object"))),
    }
}

impl GenMulticat {
    pub fn terminal() -> Self {
        FiniteGenMulticat::terminal().into()
    }

    pub fn slice(&self) -> Self {
        GenMulticat::Slice(Arc::new(self.clone()))
    }

    pub fn finite(&self) -> Option<&FiniteGenMulticat> {
        match self {
            GenMulticat::Finite(m) => Some(m),
            GenMulticat::Slice(_) => None,
        }
    }

    pub fn source(&self, f: &GenArrow) -> Result<Vec<Obj>> {
        match self {
            GenMulticat::Finite(m) => {
                let a = atom_of(f, "arrow")?;
                let (s, _) = m.arrows.get(a).ok_or_else(|| unknown("arrow", f))?;
                Ok(s.iter().cloned().map(Obj::Atom).collect())
            }
            GenMulticat::Slice(_) => slice::gen_source(f),
        }
    }

    pub fn target(&self, f: &GenArrow) -> Result<Obj> {
        match self {
            GenMulticat::Finite(m) => {
                let a = atom_of(f, "arrow")?;
                let (_, t) = m.arrows.get(a).ok_or_else(|| unknown("arrow", f))?;
                Ok(Obj::Atom(t.clone()))
            }
            GenMulticat::Slice(_) => slice::gen_target(f),
        }
    }

    pub fn arity(&self, f: &GenArrow) -> Result<usize> {
        match (self, f) {
            (GenMulticat::Slice(_), GenArrow::Tree(t)) => Ok(t.tree.node_count()),
            _ => Ok(self.source(f)?.len()),
        }
    }

    pub fn identity(&self, x: &Obj) -> Result<GenArrow> {
        match self {
            GenMulticat::Finite(m) => {
                let a = obj_atom(x)?;
                m.identities
                    .get(a)
                    .cloned()
                    .map(GenArrow::Atom)
                    .ok_or_else(|| Error::Unknown {
                        kind: "identity of object",
                        name: x.to_string(),
                    })
            }
            GenMulticat::Slice(inner) => slice::gen_identity(inner, x),
        }
    }

    pub fn is_identity(&self, f: &GenArrow) -> bool {
        match self.target(f) {
            Ok(t) => self.identity(&t).is_ok_and(|e| &e == f),
            Err(_) => false,
        }
    }

    /// `f ∘_p g` with its amalgamation permutation.
    pub fn compose(&self, f: &GenArrow, p: usize, g: &GenArrow) -> Result<GenComposition> {
        let sf = self.source(f)?;
        let sg = self.source(g)?;
        if p >= sf.len() {
            return Err(Error::BadPosition {
                position: p,
                arity: sf.len(),
            });
        }
        let tg = self.target(g)?;
        if tg != sf[p] {
            return Err(Error::ObjectMismatch {
                position: p,
                expected: sf[p].to_string(),
                found: tg.to_string(),
            });
        }
        let splice = Splice::new(sf.len(), p, sg.len());
        match self {
            GenMulticat::Finite(m) => {
                let key = (atom_of(f, "arrow")?.clone(), p, atom_of(g, "arrow")?.clone());
                let (r, chi) = m
                    .compose
                    .get(&key)
                    .ok_or_else(|| Error::Undefined(format!("{f} o_{p} {g}")))?;
                Ok(GenComposition {
                    result: GenArrow::Atom(r.clone()),
                    chi: chi.clone(),
                    splice,
                })
            }
            GenMulticat::Slice(inner) => {
                let (result, chi) = slice::gen_compose_trees(inner, f, p, g)?;
                Ok(GenComposition { result, chi, splice })
            }
        }
    }

    /// Size used by bounded enumeration: node count for slice arrows, 1
    /// for table arrows.
    pub fn size(&self, f: &GenArrow) -> usize {
        match f {
            GenArrow::Atom(_) => 1,
            GenArrow::Tree(t) => t.tree.node_count(),
        }
    }

    /// Objects within the bound, in canonical order.
    pub fn objects(&self, bound: usize) -> Vec<Obj> {
        match self {
            GenMulticat::Finite(m) => m.objects.iter().cloned().map(Obj::Atom).collect(),
            GenMulticat::Slice(inner) => inner.arrows(bound).into_iter().map(Obj::Gen).collect(),
        }
    }

    /// Arrows within the bound, in canonical order.
    pub fn arrows(&self, bound: usize) -> Vec<GenArrow> {
        match self {
            GenMulticat::Finite(m) => m.arrows.keys().cloned().map(GenArrow::Atom).collect(),
            GenMulticat::Slice(inner) => slice::gen_arrows(inner, bound),
        }
    }
}

fn unknown(kind: &'static str, f: &impl ToString) -> Error {
    Error::Unknown {
        kind,
        name: f.to_string(),
    }
}

/// The spliced source list of `f ∘_p g` reordered by `χ`.
pub fn splice_and_permute<T: Clone>(sf: &[T], p: usize, sg: &[T], chi: &Permutation) -> Vec<T> {
    let z = Splice::new(sf.len(), p, sg.len()).splice(sf, sg);
    chi.permute(&z)
}

fn show3(f: &GenArrow, p: usize, g: &GenArrow) -> String {
    format!("{f} o_{p} {g}")
}

/// Checks one composite against its source/target contract.
fn check_composite(m: &GenMulticat, f: &GenArrow, p: usize, g: &GenArrow, c: &GenComposition, r: &mut ValidationReport) {
    let inst = show3(f, p, g);
    let (Ok(sf), Ok(sg), Ok(sr)) = (m.source(f), m.source(g), m.source(&c.result)) else {
        r.push("composite-profile", inst);
        return;
    };
    if c.chi.size() != sf.len() + sg.len() - 1 {
        r.push("composite-profile", format!("{inst}: chi has wrong size"));
        return;
    }
    if splice_and_permute(&sf, p, &sg, &c.chi) != sr || m.target(&c.result).ok() != m.target(f).ok() {
        r.push("composite-profile", inst);
    }
}

/// Exhaustively checks the unit, associativity and commutativity laws,
/// including the element-tracking coherence of the amalgamating maps, over
/// all instances whose sizes fit the bound.
pub fn check_gen_axioms(m: &GenMulticat, bound: usize) -> ValidationReport {
    let mut r = ValidationReport::new();
    let arrows = m.arrows(bound);
    let objects = m.objects(bound);
    for x in &objects {
        match m.identity(x) {
            Ok(e) => match (m.source(&e), m.target(&e)) {
                (Ok(s), Ok(t)) if s.len() == 1 && s[0] == *x && t == *x => {}
                _ => r.push("identity-profile", format!("{e} for {x}")),
            },
            Err(_) => r.push("missing-identity", x.to_string()),
        }
    }
    let fits = |fs: &[&GenArrow]| fs.iter().map(|f| m.size(f)).sum::<usize>() < bound + fs.len();
    let info: Vec<(GenArrow, Vec<Obj>, Obj)> = arrows
        .iter()
        .filter_map(|f| Some((f.clone(), m.source(f).ok()?, m.target(f).ok()?)))
        .collect();
    if info.len() != arrows.len() {
        r.push("arrow-profile", "some arrow has no source or target");
    }
    let mut by_target: BTreeMap<&Obj, Vec<usize>> = BTreeMap::new();
    for (i, (_, _, t)) in info.iter().enumerate() {
        by_target.entry(t).or_default().push(i);
    }

    // unit laws
    for (f, sf, tf) in &info {
        if let Ok(e) = m.identity(tf) {
            match m.compose(&e, 0, f) {
                Ok(c) if c.result == *f && c.chi.is_identity() => {}
                Ok(_) => r.push("unit-left", format!("1_{tf} o_0 {f}")),
                Err(err) => r.push("unit-left", format!("1_{tf} o_0 {f}: {err}")),
            }
        }
        for (p, x) in sf.iter().enumerate() {
            if let Ok(e) = m.identity(x) {
                match m.compose(f, p, &e) {
                    Ok(c) if c.result == *f && c.chi.is_identity() => {}
                    Ok(_) => r.push("unit-right", format!("{f} o_{p} 1_{x}")),
                    Err(err) => r.push("unit-right", format!("{f} o_{p} 1_{x}: {err}")),
                }
            }
        }
    }

    let empty = Vec::new();
    for (f, sf, _) in &info {
        for (p, x) in sf.iter().enumerate() {
            for &gi in by_target.get(x).unwrap_or(&empty) {
                let (g, sg, _) = &info[gi];
                if !fits(&[f, g]) {
                    continue;
                }
                let fg = match m.compose(f, p, g) {
                    Ok(c) => c,
                    Err(err) => {
                        r.push("composite-defined", format!("{}: {err}", show3(f, p, g)));
                        continue;
                    }
                };
                check_composite(m, f, p, g, &fg, &mut r);

                // associativity: h plugged into g
                for (q, y) in sg.iter().enumerate() {
                    for &hi in by_target.get(y).unwrap_or(&empty) {
                        let h = &info[hi].0;
                        if !fits(&[f, g, h]) {
                            continue;
                        }
                        associativity(m, f, p, g, q, h, &fg, &mut r);
                    }
                }
                // commutativity: h plugged into another slot of f
                for (q, y) in sf.iter().enumerate() {
                    if q == p {
                        continue;
                    }
                    for &hi in by_target.get(y).unwrap_or(&empty) {
                        let h = &info[hi].0;
                        if !fits(&[f, g, h]) {
                            continue;
                        }
                        commutativity(m, f, p, g, q, h, &fg, &mut r);
                    }
                }
            }
        }
    }
    r.finish()
}

#[allow(clippy::too_many_arguments)]
fn associativity(
    m: &GenMulticat,
    f: &GenArrow,
    p: usize,
    g: &GenArrow,
    q: usize,
    h: &GenArrow,
    fg: &GenComposition,
    r: &mut ValidationReport,
) {
    let inst = format!("({f} o_{p} {g}) with {h} at {q}");
    let qbar = fg.phi(q);
    let (lhs, gh) = match (m.compose(&fg.result, qbar, h), m.compose(g, q, h)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            r.push("associativity", format!("{inst}: undefined"));
            return;
        }
    };
    let rhs = match m.compose(f, p, &gh.result) {
        Ok(c) => c,
        Err(_) => {
            r.push("associativity", format!("{inst}: undefined"));
            return;
        }
    };
    if lhs.result != rhs.result {
        r.push("associativity", inst);
        return;
    }
    let kf = fg.splice.outer_arity;
    let jg = fg.splice.inner_arity;
    let lh = gh.splice.inner_arity;
    // f-elements
    for i in (0..kf).filter(|&i| i != p) {
        if lhs.psi(fg.psi(i)) != rhs.psi(i) {
            r.push("associativity-coherence-f", format!("{inst}: f entry {i}"));
        }
    }
    // g-elements
    for l in (0..jg).filter(|&l| l != q) {
        if lhs.psi(fg.phi(l)) != rhs.phi(gh.psi(l)) {
            r.push("associativity-coherence-g", format!("{inst}: g entry {l}"));
        }
    }
    // h-elements
    for n in 0..lh {
        if lhs.phi(n) != rhs.phi(gh.phi(n)) {
            r.push("associativity-coherence-h", format!("{inst}: h entry {n}"));
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn commutativity(
    m: &GenMulticat,
    f: &GenArrow,
    p: usize,
    g: &GenArrow,
    q: usize,
    h: &GenArrow,
    fg: &GenComposition,
    r: &mut ValidationReport,
) {
    let inst = format!("{f} with {g} at {p} and {h} at {q}");
    let fh = match m.compose(f, q, h) {
        Ok(c) => c,
        Err(_) => {
            r.push("commutativity", format!("{inst}: undefined"));
            return;
        }
    };
    let (lhs, rhs) = match (m.compose(&fg.result, fg.psi(q), h), m.compose(&fh.result, fh.psi(p), g)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            r.push("commutativity", format!("{inst}: undefined"));
            return;
        }
    };
    if lhs.result != rhs.result {
        r.push("commutativity", inst);
        return;
    }
    for i in (0..fg.splice.outer_arity).filter(|&i| i != p && i != q) {
        if lhs.psi(fg.psi(i)) != rhs.psi(fh.psi(i)) {
            r.push("commutativity-coherence-f", format!("{inst}: f entry {i}"));
        }
    }
    for l in 0..fg.splice.inner_arity {
        if lhs.psi(fg.phi(l)) != rhs.phi(l) {
            r.push("commutativity-coherence-g", format!("{inst}: g entry {l}"));
        }
    }
    for n in 0..fh.splice.inner_arity {
        if lhs.phi(n) != rhs.psi(fh.phi(n)) {
            r.push("commutativity-coherence-h", format!("{inst}: h entry {n}"));
        }
    }
}

/// A morphism `(F, θ)` of generalised multicategories with a finite
/// domain: `Ff` has source `(F x_{θ⁻¹(0)}, …)` when `f` has source `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenMorphism {
    pub objects: BTreeMap<Obj, Obj>,
    pub arrows: BTreeMap<GenArrow, (GenArrow, Permutation)>,
}

impl GenMorphism {
    /// The identity on a tabulated multicategory.
    pub fn identity(m: &GenMulticat) -> Self {
        let mut out = GenMorphism::default();
        for x in m.objects(0) {
            out.objects.insert(x.clone(), x);
        }
        for f in m.arrows(0) {
            let k = m.arity(&f).unwrap_or(0);
            out.arrows.insert(f.clone(), (f, Permutation::identity(k)));
        }
        out
    }

    pub fn on_object(&self, x: &Obj) -> Result<&Obj> {
        self.objects.get(x).ok_or_else(|| unknown("object", x))
    }

    pub fn on_arrow(&self, f: &GenArrow) -> Result<&(GenArrow, Permutation)> {
        self.arrows.get(f).ok_or_else(|| unknown("arrow", f))
    }
}

/// Checks that `F` is a morphism `m → n`.
pub fn check_gen_morphism(map: &GenMorphism, m: &GenMulticat, n: &GenMulticat) -> ValidationReport {
    let mut r = ValidationReport::new();
    let objects = m.objects(0);
    let arrows = m.arrows(0);
    for x in &objects {
        let Ok(fx) = map.on_object(x) else {
            r.push("total-on-objects", x.to_string());
            continue;
        };
        match (m.identity(x), n.identity(fx)) {
            (Ok(e), Ok(fe)) => match map.on_arrow(&e) {
                Ok((img, th)) if *img == fe && th.is_identity() => {}
                _ => r.push("preserves-identities", format!("1_{x}")),
            },
            _ => r.push("preserves-identities", format!("1_{x}: identity missing")),
        }
    }
    for f in &arrows {
        let Ok((ff, th)) = map.on_arrow(f) else {
            r.push("total-on-arrows", f.to_string());
            continue;
        };
        let (Ok(sf), Ok(tf)) = (m.source(f), m.target(f)) else {
            continue;
        };
        if th.size() != sf.len() {
            r.push("transition-size", f.to_string());
            continue;
        }
        let mapped: Option<Vec<Obj>> = sf.iter().map(|x| map.on_object(x).ok().cloned()).collect();
        let expected = mapped.map(|v| th.inverse().permute(&v));
        let ok = match (n.source(ff), n.target(ff), expected, map.on_object(&tf)) {
            (Ok(s), Ok(t), Some(e), Ok(ft)) => s == e && t == *ft,
            _ => false,
        };
        if !ok {
            r.push("source-condition", format!("{f} -> {ff}"));
        }
    }
    for f in &arrows {
        let Ok(sf) = m.source(f) else { continue };
        for (p, x) in sf.iter().enumerate() {
            for g in &arrows {
                if m.target(g).ok().as_ref() != Some(x) {
                    continue;
                }
                let inst = show3(f, p, g);
                let Ok(c) = m.compose(f, p, g) else {
                    continue;
                };
                let (Ok((ff, tf)), Ok((fg_, tg)), Ok((fh, th))) =
                    (map.on_arrow(f), map.on_arrow(g), map.on_arrow(&c.result))
                else {
                    continue;
                };
                if tf.size() != sf.len() {
                    continue;
                }
                let Ok(c2) = n.compose(ff, tf.apply(p), fg_) else {
                    r.push("preserves-composition", format!("{inst}: image not composable"));
                    continue;
                };
                if c2.result != *fh {
                    r.push("preserves-composition", inst);
                    continue;
                }
                if th.size() != c.chi.size() || tg.size() != c.splice.inner_arity {
                    r.push("transition-size", inst);
                    continue;
                }
                for i in (0..sf.len()).filter(|&i| i != p) {
                    if th.apply(c.psi(i)) != c2.psi(tf.apply(i)) {
                        r.push("transition-coherence-psi", format!("{inst}: entry {i}"));
                    }
                }
                for l in 0..c.splice.inner_arity {
                    if th.apply(c.phi(l)) != c2.phi(tg.apply(l)) {
                        r.push("transition-coherence-phi", format!("{inst}: entry {l}"));
                    }
                }
            }
        }
    }
    r.finish()
}

/// `G ∘ F`, with `θ^{GF}_f = θ^G_{Ff} ∘ θ^F_f`.
pub fn compose_gen_morphisms(f: &GenMorphism, g: &GenMorphism) -> Result<GenMorphism> {
    let mut out = GenMorphism::default();
    for (x, fx) in &f.objects {
        out.objects.insert(x.clone(), g.on_object(fx)?.clone());
    }
    for (a, (fa, tf)) in &f.arrows {
        let (gfa, tg) = g.on_arrow(fa)?;
        out.arrows.insert(a.clone(), (gfa.clone(), tg.compose(tf)?));
    }
    Ok(out)
}
