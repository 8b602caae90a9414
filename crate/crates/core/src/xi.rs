//! Symmetrisation of generalised multicategories, and its inverse on
//! object-discrete freely symmetric multicategories.
//!
//! An arrow `(f, σ)` of `ξ(M)` has source `(x_1, …, x_k)` when `f` has
//! source `(x_{σ(0)}, …, x_{σ(k-1)})` in `M`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::category::{equivalent_to_discrete, FiniteCategory};
use crate::error::{Error, Result};
use crate::genmult::{FiniteGenMulticat, GenMorphism, GenMulticat};
use crate::perm::{Permutation, Splice};
use crate::symmult::{elt_category, FiniteSymMulticat, SymMorphism, SymMulticat, SymTable};
use crate::value::{GenArrow, Id, Obj, ObjMor, Profile, SymArrow};

fn parts(f: &SymArrow) -> Result<(&GenArrow, &Permutation)> {
    match f {
        SymArrow::Xi(g, s) => Ok((g, s)),
        other => Err(Error::WrongKind(format!("{other} is not an arrow of a symmetrisation"))),
    }
}

/// `ξ(M)`.
pub fn xi(m: &GenMulticat) -> SymMulticat {
    SymMulticat::Xi(m.clone())
}

pub(crate) fn xi_profile(m: &GenMulticat, f: &SymArrow) -> Result<Profile> {
    let (g, s) = parts(f)?;
    let src = m.source(g)?;
    if src.len() != s.size() {
        return Err(Error::SizeMismatch {
            expected: src.len(),
            found: s.size(),
        });
    }
    Ok(Profile {
        inputs: s.inverse().permute(&src),
        output: m.target(g)?,
    })
}

/// `(f, σ) ∘_p (g, τ) = (f ∘_{σ⁻¹(p)} g, γ)` where `a_{γ(r)} = z_{χ(r)}`.
pub(crate) fn xi_compose(m: &GenMulticat, f: &SymArrow, p: usize, g: &SymArrow) -> Result<SymArrow> {
    let (fa, sigma) = parts(f)?;
    let (ga, tau) = parts(g)?;
    if p >= sigma.size() {
        return Err(Error::BadPosition {
            position: p,
            arity: sigma.size(),
        });
    }
    let inv = sigma.inverse();
    let pbar = inv.apply(p);
    let c = m.compose(fa, pbar, ga)?;
    let k = sigma.size();
    let j = tau.size();
    let a = Splice::new(k, p, j);
    // position in `a` of each spliced entry `z`
    let mut zw = Vec::with_capacity(k + j - 1);
    for i in 0..pbar {
        zw.push(a.outer(sigma.apply(i)));
    }
    for l in 0..j {
        zw.push(a.inner(tau.apply(l)));
    }
    for i in pbar + 1..k {
        zw.push(a.outer(sigma.apply(i)));
    }
    let gamma = Permutation::from_images(c.chi.images().iter().map(|&z| zw[z]).collect())?;
    Ok(SymArrow::Xi(c.result, gamma))
}

/// `(f, τ)σ = (f, σ⁻¹τ)`.
pub(crate) fn xi_act(f: &SymArrow, sigma: &Permutation) -> Result<SymArrow> {
    let (g, tau) = parts(f)?;
    Ok(SymArrow::Xi(g.clone(), sigma.inverse().compose(tau)?))
}

pub(crate) fn xi_arrows(m: &GenMulticat, bound: usize) -> Vec<SymArrow> {
    let mut out = Vec::new();
    for g in m.arrows(bound) {
        let k = m.arity(&g).unwrap_or(0);
        for s in Permutation::all(k) {
            out.push(SymArrow::Xi(g.clone(), s));
        }
    }
    out
}

/// `ξF(f, σ) = (Ff, σθ_f⁻¹)`.
pub(crate) fn xi_map_arrow(map: &GenMorphism, f: &SymArrow) -> Result<SymArrow> {
    let (g, s) = parts(f)?;
    let (fg, theta) = map.on_arrow(g)?;
    Ok(SymArrow::Xi(fg.clone(), s.compose(&theta.inverse())?))
}

/// `ξF: ξ(M) → ξ(N)`.
pub fn xi_on_morphism(map: GenMorphism, m: &GenMulticat, n: &GenMulticat) -> SymMorphism {
    SymMorphism::Xi {
        map: Arc::new(map),
        domain: m.clone(),
        codomain: n.clone(),
    }
}

/// An arrow within the bound fixed by a non-identity permutation.
pub fn fixed_point(q: &SymMulticat, bound: usize) -> Option<(SymArrow, Permutation)> {
    for f in q.arrows(bound) {
        let k = q.arity(&f).unwrap_or(0);
        for s in Permutation::all(k).skip(1) {
            if q.act(&f, &s).is_ok_and(|g| g == f) {
                return Some((f, s));
            }
        }
    }
    None
}

/// No arrow within the bound is fixed by a non-identity permutation.
pub fn is_freely_symmetric(q: &SymMulticat, bound: usize) -> bool {
    fixed_point(q, bound).is_none()
}

/// The object category within the bound, as a finite table.
pub fn object_category(q: &SymMulticat, bound: usize) -> Result<FiniteCategory> {
    match q {
        SymMulticat::Finite(t) => Ok(t.category.clone()),
        SymMulticat::Xi(m) => Ok(FiniteCategory::discrete(m.objects(bound).iter().map(|x| x.to_string()))),
        SymMulticat::Slice(inner) => elt_category(inner, bound),
    }
}

/// Freely symmetric, with a category of objects equivalent to a discrete
/// one.
pub fn is_tidy(q: &SymMulticat, bound: usize) -> bool {
    if !is_freely_symmetric(q, bound) {
        return false;
    }
    match q {
        SymMulticat::Slice(_) => objects_rigid(q, bound),
        _ => object_category(q, bound).is_ok_and(|c| equivalent_to_discrete(&c).0),
    }
}

/// Every morphism out of an object within the bound is invertible and no
/// two of them share a codomain. Both properties transfer along
/// isomorphisms, so one object per isomorphism class is examined.
fn objects_rigid(q: &SymMulticat, bound: usize) -> bool {
    let mut covered: hashbrown::HashSet<Obj> = hashbrown::HashSet::new();
    for x in q.objects(bound) {
        if covered.contains(&x) {
            continue;
        }
        let Ok(outs) = q.morphisms_out(&x) else { return false };
        let mut cods = BTreeSet::new();
        for m in &outs {
            if q.obj_inverse(m).is_none() {
                return false;
            }
            match q.obj_cod(m) {
                Ok(c) if cods.insert(c.clone()) => {}
                _ => return false,
            }
        }
        // the class of x is the set of codomains just listed
        covered.extend(cods);
    }
    true
}

/// The generalised multicategory picked out of an object-discrete freely
/// symmetric table, with every arrow written as a representative acted on
/// by a permutation.
#[derive(Clone, Debug)]
pub struct XiInverse {
    pub multicat: FiniteGenMulticat,
    /// arrow `a` of the table -> `(r, σ)` with `a = rσ`
    pub decomposition: BTreeMap<Id, (Id, Permutation)>,
}

impl XiInverse {
    /// The comparison `q → ξ(xi_inverse(q))`, sending `rσ` to `(r, σ⁻¹)`.
    pub fn comparison(&self, q: &FiniteSymMulticat) -> SymMorphism {
        let mut t = SymTable {
            domain: SymMulticat::Finite(Arc::new(q.clone())),
            codomain: xi(&GenMulticat::Finite(Arc::new(self.multicat.clone()))),
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            arrows: BTreeMap::new(),
        };
        for x in &q.category.objects {
            t.objects.insert(Obj::Atom(x.clone()), Obj::Atom(x.clone()));
        }
        for (e, (x, _)) in &q.category.morphisms {
            t.morphisms.insert(ObjMor::Atom(e.clone()), ObjMor::Identity(Obj::Atom(x.clone())));
        }
        for (a, (r, s)) in &self.decomposition {
            t.arrows.insert(SymArrow::Atom(a.clone()), SymArrow::Xi(GenArrow::Atom(r.clone()), s.inverse()));
        }
        SymMorphism::Table(Arc::new(t))
    }
}

/// Chooses the least member of each symmetry orbit, ordered by
/// `(source, target, id)`, and inherits composition from `q`.
pub fn xi_inverse(q: &SymMulticat) -> Result<XiInverse> {
    let t = q
        .finite()
        .ok_or_else(|| Error::Precondition("the inverse construction needs a tabulated multicategory".into()))?;
    if let Some(e) = t.category.morphisms.keys().find(|e| !t.category.is_identity(e)) {
        return Err(Error::Precondition(format!("object category is not discrete: {e}")));
    }
    if let Some((f, s)) = fixed_point(q, 0) {
        return Err(Error::Precondition(format!("not freely symmetric: {f} is fixed by {s}")));
    }
    let key = |a: &Id| {
        let (s, x) = &t.arrows[a];
        (s.clone(), x.clone(), a.clone())
    };
    let mut decomposition: BTreeMap<Id, (Id, Permutation)> = BTreeMap::new();
    for a in t.arrows.keys() {
        if decomposition.contains_key(a) {
            continue;
        }
        let k = t.arrows[a].0.len();
        let mut orbit = Vec::new();
        for s in Permutation::all(k) {
            let b = t
                .action
                .get(&(a.clone(), s.clone()))
                .ok_or_else(|| Error::Undefined(format!("{a} . {s}")))?;
            orbit.push((b.clone(), s));
        }
        let (r, rs) = orbit
            .iter()
            .min_by(|x, y| key(&x.0).cmp(&key(&y.0)))
            .cloned()
            .expect("orbits are nonempty");
        // b = a s and r = a rs, so b = r (rs⁻¹ s)
        let back = rs.inverse();
        for (b, s) in orbit {
            decomposition.insert(b, (r.clone(), back.compose(&s)?));
        }
    }
    let mut m = FiniteGenMulticat {
        objects: t.category.objects.clone(),
        ..Default::default()
    };
    for (a, (r, _)) in &decomposition {
        if a == r {
            m.arrows.insert(r.clone(), t.arrows[r].clone());
        }
    }
    for x in &t.category.objects {
        let e = t.category.identity(x)?;
        let u = t.iota.get(e).ok_or_else(|| Error::Undefined(format!("iota({e})")))?;
        let (r, _) = &decomposition[u];
        m.identities.insert(x.clone(), r.clone());
    }
    let reps: Vec<Id> = m.arrows.keys().cloned().collect();
    for f in &reps {
        let sf = &m.arrows[f].0;
        for (p, x) in sf.iter().enumerate() {
            for g in &reps {
                if m.arrows[g].1 != *x {
                    continue;
                }
                let Some(c) = t.compose.get(&(f.clone(), p, g.clone())) else {
                    continue;
                };
                let (r, s) = &decomposition[c];
                m.compose.insert((f.clone(), p, g.clone()), (r.clone(), s.inverse()));
            }
        }
    }
    Ok(XiInverse { multicat: m, decomposition })
}

/// The unique `H` with `ξH = G`, read off from `G(f, ι) = (f̄, σ)` as
/// `Hf = f̄`, `θ_f = σ⁻¹`.
pub fn xi_fullness_witness(g: &SymMorphism, m: &GenMulticat) -> Result<GenMorphism> {
    let mut out = GenMorphism::default();
    for x in m.objects(0) {
        out.objects.insert(x.clone(), g.on_object(&x)?);
    }
    for f in m.arrows(0) {
        let k = m.arity(&f)?;
        match g.on_arrow(&SymArrow::Xi(f.clone(), Permutation::identity(k)))? {
            SymArrow::Xi(fbar, s) => {
                out.arrows.insert(f, (fbar, s.inverse()));
            }
            other => return Err(Error::WrongKind(format!("{other} is not an arrow of a symmetrisation"))),
        }
    }
    Ok(out)
}

/// Tabulates `ξ(M)` for a tabulated `M`. Arrow ids are the encodings
/// `xi(f;[σ])`; the identity of `x` is named `1_x`.
pub fn materialize(m: &FiniteGenMulticat) -> Result<FiniteSymMulticat> {
    let gm = GenMulticat::Finite(Arc::new(m.clone()));
    let q = xi(&gm);
    let category = FiniteCategory::discrete(m.objects.iter().cloned());
    let name = |f: &SymArrow| -> Id { f.to_string().into() };
    let arrows = q.arrows(0);
    let mut out = FiniteSymMulticat {
        category,
        arrows: BTreeMap::new(),
        compose: BTreeMap::new(),
        action: BTreeMap::new(),
        iota: BTreeMap::new(),
    };
    let mut profiles = Vec::with_capacity(arrows.len());
    for f in &arrows {
        let p = q.profile(f)?;
        let src = p.inputs.iter().map(obj_id).collect::<Result<Vec<_>>>()?;
        out.arrows.insert(name(f), (src, obj_id(&p.output)?));
        for s in Permutation::all(p.arity()) {
            out.action.insert((name(f), s.clone()), name(&q.act(f, &s)?));
        }
        profiles.push(p);
    }
    for (f, pf) in arrows.iter().zip(&profiles) {
        for (p, x) in pf.inputs.iter().enumerate() {
            for (g, pg) in arrows.iter().zip(&profiles) {
                if pg.output == *x {
                    out.compose.insert((name(f), p, name(g)), name(&q.compose_at(f, p, g)?));
                }
            }
        }
    }
    for x in &m.objects {
        let e = out.category.identity(x)?.clone();
        out.iota.insert(e, name(&q.unit(&Obj::Atom(x.clone()))?));
    }
    Ok(out)
}

fn obj_id(x: &Obj) -> Result<Id> {
    match x {
        Obj::Atom(a) => Ok(a.clone()),
        other => Err(Error::WrongKind(other.to_string())),
    }
}
