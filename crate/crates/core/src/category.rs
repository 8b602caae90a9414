//! Finite categories given by explicit composition tables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::value::Id;

/// A category with finitely many objects and morphisms.
///
/// `compose[(f, g)]` is `f ∘ g`, defined when `dom f == cod g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<Id>,
    /// morphism id -> (dom, cod)
    pub morphisms: BTreeMap<Id, (Id, Id)>,
    pub identities: BTreeMap<Id, Id>,
    pub compose: BTreeMap<(Id, Id), Id>,
}

impl FiniteCategory {
    /// The discrete category: only identities, named `1_x`.
    pub fn discrete<I, S>(objects: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Id>,
    {
        let objects: Vec<Id> = objects.into_iter().map(Into::into).collect();
        let mut c = FiniteCategory {
            objects: objects.clone(),
            morphisms: BTreeMap::new(),
            identities: BTreeMap::new(),
            compose: BTreeMap::new(),
        };
        for x in objects {
            let e: Id = format!("1_{x}").into();
            c.morphisms.insert(e.clone(), (x.clone(), x.clone()));
            c.identities.insert(x, e.clone());
            c.compose.insert((e.clone(), e.clone()), e);
        }
        c
    }

    /// Builds a category from morphisms and a composition table, recognising
    /// identities as endomorphisms that act as units on every listed
    /// composite.
    pub fn from_table(
        objects: Vec<Id>,
        morphisms: BTreeMap<Id, (Id, Id)>,
        compose: BTreeMap<(Id, Id), Id>,
    ) -> Self {
        let mut identities = BTreeMap::new();
        for x in &objects {
            let found = morphisms.iter().find(|(e, (d, c))| {
                d == x
                    && c == x
                    && morphisms.iter().all(|(f, (fd, fc))| {
                        (fc != x || compose.get(&((*e).clone(), f.clone())) == Some(f))
                            && (fd != x || compose.get(&(f.clone(), (*e).clone())) == Some(f))
                    })
            });
            if let Some((e, _)) = found {
                identities.insert(x.clone(), e.clone());
            }
        }
        FiniteCategory {
            objects,
            morphisms,
            identities,
            compose,
        }
    }

    pub fn dom(&self, f: &Id) -> Result<&Id> {
        self.morphisms
            .get(f)
            .map(|(d, _)| d)
            .ok_or_else(|| unknown_morphism(f))
    }

    pub fn cod(&self, f: &Id) -> Result<&Id> {
        self.morphisms
            .get(f)
            .map(|(_, c)| c)
            .ok_or_else(|| unknown_morphism(f))
    }

    pub fn identity(&self, x: &Id) -> Result<&Id> {
        self.identities.get(x).ok_or_else(|| Error::Unknown {
            kind: "identity of object",
            name: x.as_ref().into(),
        })
    }

    /// `f ∘ g`.
    pub fn compose(&self, f: &Id, g: &Id) -> Result<&Id> {
        if self.dom(f)? != self.cod(g)? {
            return Err(Error::NotComposable(format!("{f} after {g}")));
        }
        self.compose
            .get(&(f.clone(), g.clone()))
            .ok_or_else(|| Error::Undefined(format!("{f} after {g}")))
    }

    pub fn is_identity(&self, f: &Id) -> bool {
        self.morphisms
            .get(f)
            .is_some_and(|(d, _)| self.identities.get(d) == Some(f))
    }

    pub fn hom(&self, x: &Id, y: &Id) -> impl Iterator<Item = &Id> {
        let (x, y) = (x.clone(), y.clone());
        self.morphisms
            .iter()
            .filter(move |(_, (d, c))| *d == x && *c == y)
            .map(|(f, _)| f)
    }

    pub fn out_of<'a>(&'a self, x: &'a Id) -> impl Iterator<Item = &'a Id> + 'a {
        self.morphisms
            .iter()
            .filter(move |(_, (d, _))| d == x)
            .map(|(f, _)| f)
    }

    pub fn into_obj<'a>(&'a self, x: &'a Id) -> impl Iterator<Item = &'a Id> + 'a {
        self.morphisms
            .iter()
            .filter(move |(_, (_, c))| c == x)
            .map(|(f, _)| f)
    }

    /// A two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: &Id) -> Option<&Id> {
        let (d, c) = self.morphisms.get(f)?;
        let (id_d, id_c) = (self.identities.get(d)?, self.identities.get(c)?);
        self.hom(c, d).find(|g| {
            self.compose.get(&(f.clone(), (*g).clone())) == Some(id_c)
                && self.compose.get(&((*g).clone(), f.clone())) == Some(id_d)
        })
    }
}

fn unknown_morphism(f: &Id) -> Error {
    Error::Unknown {
        kind: "morphism",
        name: f.as_ref().into(),
    }
}

/// Exhaustively checks the category laws.
pub fn check_category(c: &FiniteCategory) -> ValidationReport {
    let mut r = ValidationReport::new();
    let objects: BTreeSet<&Id> = c.objects.iter().collect();
    for (f, (d, k)) in &c.morphisms {
        if !objects.contains(d) || !objects.contains(k) {
            r.push("unknown-object", format!("morphism {f}: {d} -> {k}"));
        }
    }
    for x in &c.objects {
        match c.identities.get(x) {
            None => r.push("missing-identity", format!("object {x}")),
            Some(e) => match c.morphisms.get(e) {
                Some((d, k)) if d == x && k == x => {}
                _ => r.push("identity-endpoints", format!("{e} is not an endomorphism of {x}")),
            },
        }
    }
    for ((f, g), h) in &c.compose {
        let (Some((fd, fc)), Some((gd, gc)), Some((hd, hc))) =
            (c.morphisms.get(f), c.morphisms.get(g), c.morphisms.get(h))
        else {
            r.push("unknown-morphism", format!("entry {f} after {g} = {h}"));
            continue;
        };
        if fd != gc {
            r.push("dom-cod-mismatch", format!("{f} after {g}: dom {f} = {fd}, cod {g} = {gc}"));
        }
        if hd != gd || hc != fc {
            r.push("composite-endpoints", format!("{f} after {g} = {h}"));
        }
    }
    for (f, (fd, _)) in &c.morphisms {
        for g in c.into_obj(fd) {
            if !c.compose.contains_key(&(f.clone(), g.clone())) {
                r.push("missing-composite", format!("{f} after {g}"));
            }
        }
    }
    for (f, (fd, fc)) in &c.morphisms {
        if let Some(e) = c.identities.get(fc) {
            if c.compose.get(&(e.clone(), f.clone())) != Some(f) {
                r.push("left-unit", format!("{e} after {f}"));
            }
        }
        if let Some(e) = c.identities.get(fd) {
            if c.compose.get(&(f.clone(), e.clone())) != Some(f) {
                r.push("right-unit", format!("{f} after {e}"));
            }
        }
    }
    for (f, (fd, _)) in &c.morphisms {
        for g in c.into_obj(fd) {
            let gd = &c.morphisms[g].0;
            for h in c.into_obj(gd) {
                let fg = c.compose.get(&(f.clone(), g.clone()));
                let gh = c.compose.get(&(g.clone(), h.clone()));
                let (Some(fg), Some(gh)) = (fg, gh) else {
                    continue;
                };
                let lhs = c.compose.get(&(fg.clone(), h.clone()));
                let rhs = c.compose.get(&(f.clone(), gh.clone()));
                if lhs != rhs || lhs.is_none() {
                    r.push("associativity", format!("({f}, {g}, {h})"));
                }
            }
        }
    }
    r.finish()
}

/// Decides whether `c` is equivalent to a discrete category: every hom-set
/// has at most one element and every morphism is invertible. On success
/// the second component lists one object per connected component (the
/// least object id in it).
pub fn equivalent_to_discrete(c: &FiniteCategory) -> (bool, Vec<Id>) {
    for x in &c.objects {
        for y in &c.objects {
            if c.hom(x, y).count() > 1 {
                return (false, Vec::new());
            }
        }
    }
    if c.morphisms.keys().any(|f| c.inverse(f).is_none()) {
        return (false, Vec::new());
    }
    let mut parent: BTreeMap<&Id, &Id> = c.objects.iter().map(|x| (x, x)).collect();
    fn find<'a>(p: &BTreeMap<&'a Id, &'a Id>, mut x: &'a Id) -> &'a Id {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for (d, k) in c.morphisms.values() {
        let (a, b) = (find(&parent, d), find(&parent, k));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent.insert(hi, lo);
        }
    }
    let mut skeleton: Vec<Id> = c
        .objects
        .iter()
        .map(|x| find(&parent, x).clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    skeleton.sort();
    (true, skeleton)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn id(s: &str) -> Id {
        s.into()
    }

    /// Two objects joined by an isomorphism pair.
    pub(crate) fn iso_pair() -> FiniteCategory {
        let mut m = BTreeMap::new();
        for (f, d, k) in [("1a", "a", "a"), ("1b", "b", "b"), ("u", "a", "b"), ("v", "b", "a")] {
            m.insert(id(f), (id(d), id(k)));
        }
        let mut comp = BTreeMap::new();
        for (f, g, h) in [
            ("1a", "1a", "1a"),
            ("1b", "1b", "1b"),
            ("u", "1a", "u"),
            ("1b", "u", "u"),
            ("v", "1b", "v"),
            ("1a", "v", "v"),
            ("u", "v", "1b"),
            ("v", "u", "1a"),
        ] {
            comp.insert((id(f), id(g)), id(h));
        }
        FiniteCategory::from_table(vec![id("a"), id("b")], m, comp)
    }

    #[test]
    fn discrete_is_a_category() {
        let c = FiniteCategory::discrete(["x", "y", "z"]);
        assert!(check_category(&c).is_empty());
        let (ok, sk) = equivalent_to_discrete(&c);
        assert!(ok);
        assert_eq!(sk, vec![id("x"), id("y"), id("z")]);
    }

    #[test]
    fn iso_pair_passes_and_has_one_point_skeleton() {
        let c = iso_pair();
        assert_eq!(c.identities.len(), 2);
        assert!(check_category(&c).is_empty(), "{}", check_category(&c));
        assert_eq!(c.inverse(&id("u")), Some(&id("v")));
        assert_eq!(equivalent_to_discrete(&c), (true, vec![id("a")]));
    }

    #[test]
    fn seeded_associativity_failure_names_triple() {
        // one object, e idempotent-ish table broken on purpose
        let mut m = BTreeMap::new();
        for f in ["1", "e", "s"] {
            m.insert(id(f), (id("x"), id("x")));
        }
        let mut comp = BTreeMap::new();
        let table = [
            ("1", "1", "1"),
            ("1", "e", "e"),
            ("e", "1", "e"),
            ("1", "s", "s"),
            ("s", "1", "s"),
            ("e", "e", "e"),
            ("s", "s", "1"),
            ("e", "s", "e"),
            ("s", "e", "s"),
        ];
        for (f, g, h) in table {
            comp.insert((id(f), id(g)), id(h));
        }
        let c = FiniteCategory::from_table(vec![id("x")], m, comp);
        let r = check_category(&c);
        assert!(r.mentions("associativity"), "{r}");
        // (s∘e)∘s = s∘s = 1 but s∘(e∘s) = s∘e = s
        assert!(r.violations().iter().any(|v| v.instance == "(s, e, s)"));
    }

    #[test]
    fn missing_identity_and_composite_reported() {
        let mut m = BTreeMap::new();
        m.insert(id("f"), (id("x"), id("x")));
        let c = FiniteCategory::from_table(vec![id("x")], m, BTreeMap::new());
        let r = check_category(&c);
        assert!(r.mentions("missing-identity"));
        assert!(r.mentions("missing-composite"));
    }

    #[test]
    fn parallel_endomorphism_is_not_discrete() {
        let mut m = BTreeMap::new();
        m.insert(id("1"), (id("x"), id("x")));
        m.insert(id("s"), (id("x"), id("x")));
        let mut comp = BTreeMap::new();
        for (f, g, h) in [("1", "1", "1"), ("1", "s", "s"), ("s", "1", "s"), ("s", "s", "1")] {
            comp.insert((id(f), id(g)), id(h));
        }
        let c = FiniteCategory::from_table(vec![id("x")], m, comp);
        assert!(check_category(&c).is_empty());
        assert_eq!(equivalent_to_discrete(&c), (false, vec![]));
    }
}
