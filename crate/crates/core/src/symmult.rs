//! Symmetric multicategories over a category of objects, their categories
//! of elements, and morphisms between them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::genmult::GenMulticat;
use crate::perm::Permutation;
use crate::report::ValidationReport;
use crate::slice;
use crate::value::{EltMor, GenArrow, Id, Obj, ObjMor, Profile, SymArrow};
use crate::xi;

/// A symmetric multicategory given by finite tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSymMulticat {
    pub category: FiniteCategory,
    /// arrow id -> (source, target)
    pub arrows: BTreeMap<Id, (Vec<Id>, Id)>,
    /// `(f, p, g) -> f ∘_p g`, positions 0-based.
    pub compose: BTreeMap<(Id, usize, Id), Id>,
    /// `(f, σ) -> fσ`.
    pub action: BTreeMap<(Id, Permutation), Id>,
    /// object-morphism id -> arrow id
    pub iota: BTreeMap<Id, Id>,
}

impl FiniteSymMulticat {
    /// The terminal symmetric multicategory `I`: one object `*`, its
    /// identity morphism `1*` and one arrow `1`.
    pub fn terminal() -> Self {
        let star: Id = "*".into();
        let one: Id = "1".into();
        let mut category = FiniteCategory::discrete([star.clone()]);
        let e: Id = "1*".into();
        category.morphisms.clear();
        category.compose.clear();
        category.morphisms.insert(e.clone(), (star.clone(), star.clone()));
        category.identities.insert(star.clone(), e.clone());
        category.compose.insert((e.clone(), e.clone()), e.clone());
        let mut q = FiniteSymMulticat {
            category,
            arrows: BTreeMap::new(),
            compose: BTreeMap::new(),
            action: BTreeMap::new(),
            iota: BTreeMap::new(),
        };
        q.arrows.insert(one.clone(), (vec![star.clone()], star));
        q.compose.insert((one.clone(), 0, one.clone()), one.clone());
        q.action.insert((one.clone(), Permutation::identity(1)), one.clone());
        q.iota.insert(e, one);
        q
    }
}

/// A symmetric multicategory, tabulated or generated on demand.
#[derive(Clone, Debug)]
pub enum SymMulticat {
    Finite(Arc<FiniteSymMulticat>),
    /// The symmetrisation of a generalised multicategory.
    Xi(GenMulticat),
    /// The slice `Q⁺` of the inner multicategory.
    Slice(Arc<SymMulticat>),
}

impl From<FiniteSymMulticat> for SymMulticat {
    fn from(q: FiniteSymMulticat) -> Self {
        SymMulticat::Finite(Arc::new(q))
    }
}

fn atom(f: &SymArrow) -> Result<&Id> {
    match f {
        SymArrow::Atom(a) => Ok(a),
        other => Err(Error::WrongKind(format!("arrow {other} is not a table arrow"))),
    }
}

fn obj_atom(x: &Obj) -> Result<&Id> {
    match x {
        Obj::Atom(a) => Ok(a),
        other => Err(Error::WrongKind(format!("object {other} is not a table object"))),
    }
}

fn mor_atom(m: &ObjMor) -> Result<&Id> {
    match m {
        ObjMor::Atom(a) => Ok(a),
        other => Err(Error::WrongKind(format!("morphism {other} is not a table morphism"))),
    }
}

fn sym_obj(x: &Obj) -> Result<&SymArrow> {
    match x {
        Obj::Sym(a) => Ok(a),
        other => Err(Error::WrongKind(format!("object {other} is not an arrow of the base"))),
    }
}

fn elt_of(m: &ObjMor) -> Result<&EltMor> {
    match m {
        ObjMor::Elt(e) => Ok(e),
        other => Err(Error::WrongKind(format!("morphism {other} is not a morphism of elements"))),
    }
}

fn undefined(what: String) -> Error {
    Error::Undefined(what)
}

impl SymMulticat {
    pub fn terminal() -> Self {
        FiniteSymMulticat::terminal().into()
    }

    pub fn slice(&self) -> Self {
        SymMulticat::Slice(Arc::new(self.clone()))
    }

    pub fn finite(&self) -> Option<&FiniteSymMulticat> {
        match self {
            SymMulticat::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Whether the arrows (hence the objects of the slice) form a finite
    /// table.
    pub fn has_finite_arrows(&self) -> bool {
        match self {
            SymMulticat::Finite(_) => true,
            SymMulticat::Xi(m) => m.finite().is_some(),
            SymMulticat::Slice(_) => false,
        }
    }

    // ---- category of objects ----

    pub fn objects(&self, bound: usize) -> Vec<Obj> {
        match self {
            SymMulticat::Finite(q) => q.category.objects.iter().cloned().map(Obj::Atom).collect(),
            SymMulticat::Xi(m) => m.objects(bound),
            SymMulticat::Slice(q) => q.arrows(bound).into_iter().map(Obj::Sym).collect(),
        }
    }

    pub fn obj_dom(&self, m: &ObjMor) -> Result<Obj> {
        match (self, m) {
            (SymMulticat::Finite(q), ObjMor::Atom(a)) => Ok(Obj::Atom(q.category.dom(a)?.clone())),
            (SymMulticat::Xi(_), ObjMor::Identity(x)) => Ok(x.clone()),
            (SymMulticat::Slice(_), ObjMor::Elt(e)) => Ok(Obj::Sym(e.dom.clone())),
            _ => Err(Error::WrongKind(format!("morphism {m}"))),
        }
    }

    pub fn obj_cod(&self, m: &ObjMor) -> Result<Obj> {
        match (self, m) {
            (SymMulticat::Finite(q), ObjMor::Atom(a)) => Ok(Obj::Atom(q.category.cod(a)?.clone())),
            (SymMulticat::Xi(_), ObjMor::Identity(x)) => Ok(x.clone()),
            (SymMulticat::Slice(_), ObjMor::Elt(e)) => Ok(Obj::Sym(e.cod.clone())),
            _ => Err(Error::WrongKind(format!("morphism {m}"))),
        }
    }

    pub fn obj_identity(&self, x: &Obj) -> Result<ObjMor> {
        match self {
            SymMulticat::Finite(q) => Ok(ObjMor::Atom(q.category.identity(obj_atom(x)?)?.clone())),
            SymMulticat::Xi(_) => Ok(ObjMor::Identity(x.clone())),
            SymMulticat::Slice(q) => elt_identity(q, sym_obj(x)?),
        }
    }

    pub fn obj_is_identity(&self, m: &ObjMor) -> bool {
        match (self, m) {
            (SymMulticat::Finite(q), ObjMor::Atom(a)) => q.category.is_identity(a),
            (SymMulticat::Xi(_), ObjMor::Identity(_)) => true,
            (SymMulticat::Slice(q), ObjMor::Elt(e)) => {
                e.sigma.is_identity()
                    && q.obj_is_identity(&e.output)
                    && e.inputs.iter().all(|i| q.obj_is_identity(i))
            }
            _ => false,
        }
    }

    /// `g ∘ f`.
    pub fn obj_compose(&self, g: &ObjMor, f: &ObjMor) -> Result<ObjMor> {
        if self.obj_is_identity(f) {
            return Ok(g.clone());
        }
        if self.obj_is_identity(g) {
            return Ok(f.clone());
        }
        match self {
            SymMulticat::Finite(q) => Ok(ObjMor::Atom(q.category.compose(mor_atom(g)?, mor_atom(f)?)?.clone())),
            SymMulticat::Xi(_) => Err(Error::WrongKind(format!("{g} after {f} in a discrete category"))),
            SymMulticat::Slice(q) => elt_compose(q, elt_of(g)?, elt_of(f)?),
        }
    }

    pub fn obj_inverse(&self, m: &ObjMor) -> Option<ObjMor> {
        match (self, m) {
            (SymMulticat::Finite(q), ObjMor::Atom(a)) => q.category.inverse(a).cloned().map(ObjMor::Atom),
            (SymMulticat::Xi(_), ObjMor::Identity(_)) => Some(m.clone()),
            (SymMulticat::Slice(q), ObjMor::Elt(e)) => elt_inverse(q, e),
            _ => None,
        }
    }

    pub fn morphisms_out(&self, x: &Obj) -> Result<Vec<ObjMor>> {
        match self {
            SymMulticat::Finite(q) => Ok(q.category.out_of(obj_atom(x)?).cloned().map(ObjMor::Atom).collect()),
            SymMulticat::Xi(_) => Ok(vec![ObjMor::Identity(x.clone())]),
            SymMulticat::Slice(q) => elt_out(q, sym_obj(x)?),
        }
    }

    pub fn morphisms_into(&self, x: &Obj) -> Result<Vec<ObjMor>> {
        match self {
            SymMulticat::Finite(q) => Ok(q.category.into_obj(obj_atom(x)?).cloned().map(ObjMor::Atom).collect()),
            SymMulticat::Xi(_) => Ok(vec![ObjMor::Identity(x.clone())]),
            SymMulticat::Slice(q) => {
                if q.has_finite_arrows() {
                    let mut out = Vec::new();
                    for g in q.arrows(0) {
                        for m in elt_out(q, &g)? {
                            if self.obj_cod(&m)? == *x {
                                out.push(m);
                            }
                        }
                    }
                    Ok(out)
                } else {
                    let mut out = Vec::new();
                    for m in elt_out(q, sym_obj(x)?)? {
                        out.push(self.obj_inverse(&m).ok_or_else(|| {
                            Error::NotInvertible(format!("{m}: morphisms into a lazily generated object need a groupoid"))
                        })?);
                    }
                    out.sort();
                    Ok(out)
                }
            }
        }
    }

    pub fn hom(&self, x: &Obj, y: &Obj) -> Result<Vec<ObjMor>> {
        let mut out = Vec::new();
        for m in self.morphisms_out(x)? {
            if self.obj_cod(&m)? == *y {
                out.push(m);
            }
        }
        Ok(out)
    }

    /// Non-identity isomorphisms out of `x` that generate its isomorphism
    /// class under composition.
    pub fn gen_out(&self, x: &Obj) -> Result<Vec<ObjMor>> {
        match self {
            SymMulticat::Finite(q) => {
                let a = obj_atom(x)?;
                Ok(q.category
                    .out_of(a)
                    .filter(|f| !q.category.is_identity(f) && q.category.inverse(f).is_some())
                    .cloned()
                    .map(ObjMor::Atom)
                    .collect())
            }
            SymMulticat::Xi(_) => Ok(Vec::new()),
            SymMulticat::Slice(q) => elt_gen_out(q, sym_obj(x)?),
        }
    }

    /// Non-identity isomorphisms into `x` that generate its isomorphism
    /// class.
    pub fn gen_in(&self, x: &Obj) -> Result<Vec<ObjMor>> {
        match self {
            SymMulticat::Finite(q) => {
                let a = obj_atom(x)?;
                Ok(q.category
                    .into_obj(a)
                    .filter(|f| !q.category.is_identity(f) && q.category.inverse(f).is_some())
                    .cloned()
                    .map(ObjMor::Atom)
                    .collect())
            }
            SymMulticat::Xi(_) => Ok(Vec::new()),
            SymMulticat::Slice(_) => self
                .gen_out(x)?
                .iter()
                .map(|m| self.obj_inverse(m).ok_or_else(|| Error::NotInvertible(m.to_string())))
                .collect(),
        }
    }

    // ---- arrows ----

    pub fn profile(&self, f: &SymArrow) -> Result<Profile> {
        match self {
            SymMulticat::Finite(q) => {
                let (s, t) = q
                    .arrows
                    .get(atom(f)?)
                    .ok_or_else(|| Error::Unknown {
                        kind: "arrow",
                        name: f.to_string(),
                    })?;
                Ok(Profile {
                    inputs: s.iter().cloned().map(Obj::Atom).collect(),
                    output: Obj::Atom(t.clone()),
                })
            }
            SymMulticat::Xi(m) => xi::xi_profile(m, f),
            SymMulticat::Slice(_) => slice::config_profile(f),
        }
    }

    pub fn arity(&self, f: &SymArrow) -> Result<usize> {
        match f {
            SymArrow::Xi(_, s) => Ok(s.size()),
            SymArrow::Config(c) => Ok(c.tau.size()),
            SymArrow::Atom(_) => Ok(self.profile(f)?.arity()),
        }
    }

    pub fn target(&self, f: &SymArrow) -> Result<Obj> {
        match f {
            SymArrow::Config(c) => Ok(Obj::Sym(c.target.clone())),
            _ => Ok(self.profile(f)?.output),
        }
    }

    /// `ι(m)` for an object-morphism `m: x → y`, an arrow of profile `(x; y)`.
    pub fn iota(&self, m: &ObjMor) -> Result<SymArrow> {
        match self {
            SymMulticat::Finite(q) => q
                .iota
                .get(mor_atom(m)?)
                .cloned()
                .map(SymArrow::Atom)
                .ok_or_else(|| undefined(format!("iota({m})"))),
            SymMulticat::Xi(g) => match m {
                ObjMor::Identity(x) => Ok(SymArrow::Xi(g.identity(x)?, Permutation::identity(1))),
                _ => Err(Error::WrongKind(m.to_string())),
            },
            SymMulticat::Slice(q) => slice::config_iota(q, elt_of(m)?),
        }
    }

    /// The identity arrow `1_x = ι(1_x)`.
    pub fn unit(&self, x: &Obj) -> Result<SymArrow> {
        self.iota(&self.obj_identity(x)?)
    }

    pub fn is_unit(&self, f: &SymArrow) -> bool {
        match f {
            SymArrow::Config(c) => {
                c.tau.size() == 1
                    && c.rho.is_identity()
                    && matches!(&c.tree, crate::tree::PlanarTree::Node { children, out, label }
                        if children.iter().all(|ch| matches!(ch, crate::tree::PlanarTree::Edge(e) if self.slice_base().is_some_and(|q| q.obj_is_identity(e))))
                        && self.slice_base().is_some_and(|q| q.obj_is_identity(out))
                        && c.target == *label)
            }
            SymArrow::Xi(g, s) => match self {
                SymMulticat::Xi(m) => s.size() == 1 && m.is_identity(g),
                _ => false,
            },
            SymArrow::Atom(_) => match self.target(f) {
                Ok(t) => self.unit(&t).is_ok_and(|u| u == *f),
                Err(_) => false,
            },
        }
    }

    fn slice_base(&self) -> Option<&SymMulticat> {
        match self {
            SymMulticat::Slice(q) => Some(q),
            _ => None,
        }
    }

    /// `f ∘_p g = f ∘ (1, …, g, …, 1)`.
    pub fn compose_at(&self, f: &SymArrow, p: usize, g: &SymArrow) -> Result<SymArrow> {
        match self {
            SymMulticat::Finite(q) => {
                let pf = self.profile(f)?;
                let pg = self.profile(g)?;
                check_slot(&pf, p, &pg)?;
                q.compose
                    .get(&(atom(f)?.clone(), p, atom(g)?.clone()))
                    .cloned()
                    .map(SymArrow::Atom)
                    .ok_or_else(|| undefined(format!("{f} o_{p} {g}")))
            }
            SymMulticat::Xi(m) => xi::xi_compose(m, f, p, g),
            SymMulticat::Slice(q) => slice::config_compose(q, f, p, g),
        }
    }

    /// `f ∘ (g_1, …, g_k)`.
    pub fn sym_compose(&self, f: &SymArrow, gs: &[SymArrow]) -> Result<SymArrow> {
        let k = self.arity(f)?;
        if gs.len() != k {
            return Err(Error::SizeMismatch {
                expected: k,
                found: gs.len(),
            });
        }
        let mut acc = f.clone();
        for (i, g) in gs.iter().enumerate().rev() {
            if self.is_unit(g) {
                let pf = self.profile(&acc)?;
                let pg = self.profile(g)?;
                check_slot(&pf, i, &pg)?;
                continue;
            }
            acc = self.compose_at(&acc, i, g)?;
        }
        Ok(acc)
    }

    /// `fσ`, an arrow of profile `(x_{σ(0)}, …; x)`.
    pub fn act(&self, f: &SymArrow, sigma: &Permutation) -> Result<SymArrow> {
        let k = self.arity(f)?;
        if sigma.size() != k {
            return Err(Error::SizeMismatch {
                expected: k,
                found: sigma.size(),
            });
        }
        match self {
            SymMulticat::Finite(q) => q
                .action
                .get(&(atom(f)?.clone(), sigma.clone()))
                .cloned()
                .map(SymArrow::Atom)
                .ok_or_else(|| undefined(format!("{f} . {sigma}"))),
            SymMulticat::Xi(_) => xi::xi_act(f, sigma),
            SymMulticat::Slice(_) => slice::config_act(f, sigma),
        }
    }

    pub fn size(&self, f: &SymArrow) -> usize {
        match (self, f) {
            (SymMulticat::Xi(m), SymArrow::Xi(g, _)) => m.size(g),
            (_, SymArrow::Config(c)) => c.tau.size(),
            _ => 1,
        }
    }

    /// Arrows within the bound in canonical order.
    pub fn arrows(&self, bound: usize) -> Vec<SymArrow> {
        match self {
            SymMulticat::Finite(q) => q.arrows.keys().cloned().map(SymArrow::Atom).collect(),
            SymMulticat::Xi(m) => xi::xi_arrows(m, bound),
            SymMulticat::Slice(q) => slice::config_arrows(q, bound),
        }
    }
}

fn check_slot(pf: &Profile, p: usize, pg: &Profile) -> Result<()> {
    match pf.inputs.get(p) {
        None => Err(Error::BadPosition {
            position: p,
            arity: pf.arity(),
        }),
        Some(x) if *x != pg.output => Err(Error::ObjectMismatch {
            position: p,
            expected: x.to_string(),
            found: pg.output.to_string(),
        }),
        Some(_) => Ok(()),
    }
}

// ---- category of elements ----

/// Applies `(σ, f_1..f_m; f)` to `g`: `(ι(f) ∘ g ∘ (ι(f_1), …, ι(f_m)))σ`.
pub fn elt_action(q: &SymMulticat, g: &SymArrow, sigma: &Permutation, inputs: &[ObjMor], output: &ObjMor) -> Result<SymArrow> {
    let prof = q.profile(g)?;
    if inputs.len() != prof.arity() || sigma.size() != prof.arity() {
        return Err(Error::SizeMismatch {
            expected: prof.arity(),
            found: inputs.len(),
        });
    }
    let mut acc = g.clone();
    for (i, fi) in inputs.iter().enumerate().rev() {
        if q.obj_cod(fi)? != prof.inputs[i] {
            return Err(Error::ObjectMismatch {
                position: i,
                expected: prof.inputs[i].to_string(),
                found: q.obj_cod(fi)?.to_string(),
            });
        }
        if q.obj_is_identity(fi) {
            continue;
        }
        acc = q.compose_at(&acc, i, &q.iota(fi)?)?;
    }
    if q.obj_dom(output)? != prof.output {
        return Err(Error::NotComposable(format!("{output} after {g}")));
    }
    if !q.obj_is_identity(output) {
        acc = q.compose_at(&q.iota(output)?, 0, &acc)?;
    }
    if !sigma.is_identity() {
        acc = q.act(&acc, sigma)?;
    }
    Ok(acc)
}

/// The morphism `(σ, f_1..f_m; f)` of `elt(q)` out of `g`.
pub fn elt_morphism(q: &SymMulticat, g: &SymArrow, sigma: Permutation, inputs: Vec<ObjMor>, output: ObjMor) -> Result<ObjMor> {
    let cod = elt_action(q, g, &sigma, &inputs, &output)?;
    Ok(ObjMor::Elt(Arc::new(EltMor {
        dom: g.clone(),
        sigma,
        inputs,
        output,
        cod,
    })))
}

fn elt_identity(q: &SymMulticat, g: &SymArrow) -> Result<ObjMor> {
    let prof = q.profile(g)?;
    let inputs = prof.inputs.iter().map(|x| q.obj_identity(x)).collect::<Result<Vec<_>>>()?;
    Ok(ObjMor::Elt(Arc::new(EltMor {
        dom: g.clone(),
        sigma: Permutation::identity(prof.arity()),
        inputs,
        output: q.obj_identity(&prof.output)?,
        cod: g.clone(),
    })))
}

/// `β ∘ α` for `α: g → g'`, `β: g' → g''`.
fn elt_compose(q: &SymMulticat, beta: &EltMor, alpha: &EltMor) -> Result<ObjMor> {
    if alpha.cod != beta.dom {
        return Err(Error::NotComposable(format!("{} after {}", beta.dom, alpha.cod)));
    }
    let inv = alpha.sigma.inverse();
    let inputs = (0..alpha.inputs.len())
        .map(|i| q.obj_compose(&alpha.inputs[i], &beta.inputs[inv.apply(i)]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ObjMor::Elt(Arc::new(EltMor {
        dom: alpha.dom.clone(),
        sigma: alpha.sigma.compose(&beta.sigma)?,
        inputs,
        output: q.obj_compose(&beta.output, &alpha.output)?,
        cod: beta.cod.clone(),
    })))
}

/// `(σ, f_1..f_m; f)⁻¹ = (σ⁻¹, (f_{σ(i)}⁻¹)_i; f⁻¹)`.
fn elt_inverse(q: &SymMulticat, a: &EltMor) -> Option<ObjMor> {
    let inputs = (0..a.inputs.len())
        .map(|i| q.obj_inverse(&a.inputs[a.sigma.apply(i)]))
        .collect::<Option<Vec<_>>>()?;
    Some(ObjMor::Elt(Arc::new(EltMor {
        dom: a.cod.clone(),
        sigma: a.sigma.inverse(),
        inputs,
        output: q.obj_inverse(&a.output)?,
        cod: a.dom.clone(),
    })))
}

/// Every morphism of `elt(q)` out of `g`.
fn elt_out(q: &SymMulticat, g: &SymArrow) -> Result<Vec<ObjMor>> {
    let prof = q.profile(g)?;
    let ins = prof
        .inputs
        .iter()
        .map(|x| q.morphisms_into(x))
        .collect::<Result<Vec<_>>>()?;
    let outs = q.morphisms_out(&prof.output)?;
    let mut result = Vec::new();
    let mut choice = vec![0usize; ins.len()];
    if ins.iter().any(|v| v.is_empty()) {
        return Ok(result);
    }
    loop {
        let inputs: Vec<ObjMor> = choice.iter().enumerate().map(|(i, &c)| ins[i][c].clone()).collect();
        for out in &outs {
            for sigma in Permutation::all(prof.arity()) {
                result.push(elt_morphism(q, g, sigma, inputs.clone(), out.clone())?);
            }
        }
        // next choice of inputs
        let mut i = 0;
        loop {
            if i == choice.len() {
                result.sort();
                return Ok(result);
            }
            choice[i] += 1;
            if choice[i] < ins[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn elt_gen_out(q: &SymMulticat, g: &SymArrow) -> Result<Vec<ObjMor>> {
    let prof = q.profile(g)?;
    let k = prof.arity();
    let ids = prof.inputs.iter().map(|x| q.obj_identity(x)).collect::<Result<Vec<_>>>()?;
    let out_id = q.obj_identity(&prof.output)?;
    let mut result = Vec::new();
    for s in Permutation::adjacent_transpositions(k) {
        result.push(elt_morphism(q, g, s, ids.clone(), out_id.clone())?);
    }
    for (i, x) in prof.inputs.iter().enumerate() {
        for h in q.gen_in(x)? {
            let mut inputs = ids.clone();
            inputs[i] = h;
            result.push(elt_morphism(q, g, Permutation::identity(k), inputs, out_id.clone())?);
        }
    }
    for h in q.gen_out(&prof.output)? {
        result.push(elt_morphism(q, g, Permutation::identity(k), ids.clone(), h)?);
    }
    Ok(result)
}

/// The category of elements of `q` restricted to arrows within the bound,
/// as a finite table whose ids are the textual encodings of the values.
pub fn elt_category(q: &SymMulticat, bound: usize) -> Result<FiniteCategory> {
    let objs = q.arrows(bound);
    let names: BTreeSet<String> = objs.iter().map(|g| g.to_string()).collect();
    let qq = q.slice();
    let mut morphisms = BTreeMap::new();
    let mut values = BTreeMap::new();
    for g in &objs {
        for m in elt_out(q, g)? {
            let e = elt_of(&m)?;
            if names.contains(&e.cod.to_string()) {
                let id: Id = m.to_string().into();
                morphisms.insert(id.clone(), (Id::from(e.dom.to_string()), Id::from(e.cod.to_string())));
                values.insert(id, m.clone());
            }
        }
    }
    let mut compose = BTreeMap::new();
    for (fid, f) in &values {
        for (gid, g) in &values {
            if morphisms[fid].0 == morphisms[gid].1 {
                let fg = qq.obj_compose(f, g)?;
                compose.insert((fid.clone(), gid.clone()), Id::from(fg.to_string()));
            }
        }
    }
    let mut identities = BTreeMap::new();
    for g in &objs {
        identities.insert(Id::from(g.to_string()), Id::from(elt_identity(q, g)?.to_string()));
    }
    Ok(FiniteCategory {
        objects: names.into_iter().map(Id::from).collect(),
        morphisms,
        identities,
        compose,
    })
}

// ---- axioms ----

fn show(f: &SymArrow) -> String {
    f.to_string()
}

/// Checks Axioms 1-6 in their partial-composition forms on every instance
/// within the bound.
pub fn check_sym_axioms(q: &SymMulticat, bound: usize) -> ValidationReport {
    let mut r = ValidationReport::new();
    let arrows = q.arrows(bound);
    let objects = q.objects(bound);
    let mut info: Vec<(SymArrow, Profile)> = Vec::new();
    for f in &arrows {
        match q.profile(f) {
            Ok(p) => info.push((f.clone(), p)),
            Err(e) => r.push("data-2-profile", format!("{f}: {e}")),
        }
    }
    let mut by_output: BTreeMap<&Obj, Vec<usize>> = BTreeMap::new();
    for (i, (_, p)) in info.iter().enumerate() {
        by_output.entry(&p.output).or_default().push(i);
    }
    let fits = |fs: &[&SymArrow]| fs.iter().map(|f| q.size(f)).sum::<usize>() < bound + fs.len();
    let empty = Vec::new();

    // Data 3 and Axiom 6: ι is a functor into unary arrows
    for x in &objects {
        let Ok(outs) = q.morphisms_out(x) else {
            r.push("data-1-category", format!("morphisms out of {x}"));
            continue;
        };
        for a in &outs {
            match (q.iota(a), q.obj_dom(a), q.obj_cod(a)) {
                (Ok(ia), Ok(d), Ok(c)) => {
                    if q.profile(&ia).ok() != Some(Profile { inputs: vec![d], output: c.clone() }) {
                        r.push("data-3-iota-profile", a.to_string());
                    }
                    let Ok(next) = q.morphisms_out(&c) else { continue };
                    for b in &next {
                        let lhs = q.obj_compose(b, a).and_then(|ba| q.iota(&ba));
                        let rhs = q.iota(b).and_then(|ib| q.compose_at(&ib, 0, &ia));
                        let rhs = match (&rhs, q.is_unit(&ia)) {
                            (Err(_), true) => q.iota(b),
                            _ => rhs,
                        };
                        if lhs.is_err() || lhs != rhs {
                            r.push("axiom-6-iota-functor", format!("{b} after {a}"));
                        }
                    }
                }
                _ => r.push("data-3-iota", a.to_string()),
            }
        }
    }

    for (f, pf) in &info {
        // Axiom 1: units
        match q.unit(&pf.output).and_then(|u| q.compose_at(&u, 0, f)) {
            Ok(g) if g == *f => {}
            _ => r.push("axiom-1-left-unit", show(f)),
        }
        for (p, x) in pf.inputs.iter().enumerate() {
            match q.unit(x).and_then(|u| q.compose_at(f, p, &u)) {
                Ok(g) if g == *f => {}
                _ => r.push("axiom-1-right-unit", format!("{f} at {p}")),
            }
        }
        // Data 5 and Axiom 3: the action
        let k = pf.arity();
        let perms: Vec<Permutation> = Permutation::all(k).collect();
        let mut acted = Vec::with_capacity(perms.len());
        for s in &perms {
            match q.act(f, s) {
                Ok(fs) => {
                    let expect = Profile {
                        inputs: s.permute(&pf.inputs),
                        output: pf.output.clone(),
                    };
                    if q.profile(&fs).ok() != Some(expect) {
                        r.push("data-5-action-profile", format!("{f} . {s}"));
                    }
                    if s.is_identity() && fs != *f {
                        r.push("axiom-3-identity-acts-trivially", show(f));
                    }
                    acted.push(Some(fs));
                }
                Err(e) => {
                    r.push("data-5-action", format!("{f} . {s}: {e}"));
                    acted.push(None);
                }
            }
        }
        for (i, s) in perms.iter().enumerate() {
            let Some(fs) = &acted[i] else { continue };
            for (j, t) in perms.iter().enumerate() {
                let st = s.compose(t).expect("same size");
                let idx = perms.iter().position(|p| *p == st).expect("all perms");
                let lhs = q.act(fs, t).ok();
                if lhs.is_none() || lhs != acted[idx] {
                    r.push("axiom-3-action", format!("{f} . {s} . {t}"));
                }
                let _ = j;
            }
        }

        for (p, x) in pf.inputs.iter().enumerate() {
            for &gi in by_output.get(x).unwrap_or(&empty) {
                let (g, pg) = &info[gi];
                if !fits(&[f, g]) {
                    continue;
                }
                let fg = match q.compose_at(f, p, g) {
                    Ok(h) => h,
                    Err(e) => {
                        r.push("data-4-composite", format!("{f} o_{p} {g}: {e}"));
                        continue;
                    }
                };
                let splice = crate::perm::Splice::new(k, p, pg.arity());
                let expect = Profile {
                    inputs: splice.splice(&pf.inputs, &pg.inputs),
                    output: pf.output.clone(),
                };
                if q.profile(&fg).ok() != Some(expect) {
                    r.push("data-4-composite-profile", format!("{f} o_{p} {g}"));
                }
                // Axiom 2, sequential: (f o_p g) o_{p+l} h = f o_p (g o_l h)
                for (l, y) in pg.inputs.iter().enumerate() {
                    for &hi in by_output.get(y).unwrap_or(&empty) {
                        let h = &info[hi].0;
                        if !fits(&[f, g, h]) {
                            continue;
                        }
                        let lhs = q.compose_at(&fg, p + l, h);
                        let rhs = q.compose_at(g, l, h).and_then(|gh| q.compose_at(f, p, &gh));
                        if lhs.is_err() || lhs != rhs {
                            r.push("axiom-2-associativity", format!("{f} o_{p} {g} o_{l} {h}"));
                        }
                    }
                }
                // Axiom 2, parallel: for p < p', (f o_{p'} h) o_p g = (f o_p g) o_{p'+j-1} h
                for (p2, y) in pf.inputs.iter().enumerate().skip(p + 1) {
                    for &hi in by_output.get(y).unwrap_or(&empty) {
                        let (h, _) = &info[hi];
                        if !fits(&[f, g, h]) {
                            continue;
                        }
                        let lhs = q.compose_at(&fg, p2 + pg.arity() - 1, h);
                        let rhs = q.compose_at(f, p2, h).and_then(|fh| q.compose_at(&fh, p, g));
                        if lhs.is_err() || lhs != rhs {
                            r.push("axiom-2-interchange", format!("{f} o_{p} {g} and o_{p2} {h}"));
                        }
                    }
                }
                // Axiom 5: f o_p (g τ) = (f o_p g)(τ inserted at p)
                for t in Permutation::all(pg.arity()) {
                    let lhs = q.act(g, &t).and_then(|gt| q.compose_at(f, p, &gt));
                    let rhs = q.act(&fg, &t.inserted_at(k, p));
                    if lhs.is_err() || lhs != rhs {
                        r.push("axiom-5-inner-action", format!("{f} o_{p} {g} . {t}"));
                    }
                }
            }
        }
        // Axiom 4: (fσ) o_i g = (f o_{σ(i)} g) . block(σ, m)
        for (si, s) in perms.iter().enumerate() {
            let Some(fs) = &acted[si] else { continue };
            for i in 0..k {
                let slot = &pf.inputs[s.apply(i)];
                for &gi in by_output.get(slot).unwrap_or(&empty) {
                    let (g, pg) = &info[gi];
                    if !fits(&[f, g]) {
                        continue;
                    }
                    let mut sizes = vec![1; k];
                    sizes[s.apply(i)] = pg.arity();
                    let lhs = q.compose_at(fs, i, g);
                    let rhs = q
                        .compose_at(f, s.apply(i), g)
                        .and_then(|h| q.act(&h, &s.block(&sizes)?));
                    if lhs.is_err() || lhs != rhs {
                        r.push("axiom-4-outer-action", format!("{f} . {s} o_{i} {g}"));
                    }
                }
            }
        }
    }
    r.finish()
}

// ---- morphisms ----

/// Explicit tables for a morphism between symmetric multicategories.
#[derive(Clone, Debug)]
pub struct SymTable {
    pub domain: SymMulticat,
    pub codomain: SymMulticat,
    pub objects: BTreeMap<Obj, Obj>,
    pub morphisms: BTreeMap<ObjMor, ObjMor>,
    pub arrows: BTreeMap<SymArrow, SymArrow>,
}

/// A morphism of symmetric multicategories.
#[derive(Clone, Debug)]
pub enum SymMorphism {
    Identity(SymMulticat),
    Table(Arc<SymTable>),
    /// `ξF` for a morphism `F: domain → codomain` of generalised
    /// multicategories.
    Xi {
        map: Arc<crate::genmult::GenMorphism>,
        domain: GenMulticat,
        codomain: GenMulticat,
    },
    /// `φ⁺` for `φ: Q → ξ(M)`.
    PhiPlus(Arc<SymMorphism>),
    /// `second ∘ first`.
    Compose(Arc<SymMorphism>, Arc<SymMorphism>),
}

impl SymMorphism {
    pub fn domain(&self) -> SymMulticat {
        match self {
            SymMorphism::Identity(q) => q.clone(),
            SymMorphism::Table(t) => t.domain.clone(),
            SymMorphism::Xi { domain, .. } => SymMulticat::Xi(domain.clone()),
            SymMorphism::PhiPlus(phi) => phi.domain().slice(),
            SymMorphism::Compose(_, first) => first.domain(),
        }
    }

    pub fn codomain(&self) -> SymMulticat {
        match self {
            SymMorphism::Identity(q) => q.clone(),
            SymMorphism::Table(t) => t.codomain.clone(),
            SymMorphism::Xi { codomain, .. } => SymMulticat::Xi(codomain.clone()),
            SymMorphism::PhiPlus(phi) => match phi.codomain() {
                SymMulticat::Xi(m) => SymMulticat::Xi(m.slice()),
                other => other.slice(),
            },
            SymMorphism::Compose(second, _) => second.codomain(),
        }
    }

    pub fn on_object(&self, x: &Obj) -> Result<Obj> {
        match self {
            SymMorphism::Identity(_) => Ok(x.clone()),
            SymMorphism::Table(t) => t.objects.get(x).cloned().ok_or_else(|| undefined(format!("object {x}"))),
            SymMorphism::Xi { map, .. } => map.on_object(x).cloned(),
            SymMorphism::PhiPlus(phi) => slice::phi_plus_object(phi, x),
            SymMorphism::Compose(second, first) => second.on_object(&first.on_object(x)?),
        }
    }

    pub fn on_objmor(&self, m: &ObjMor) -> Result<ObjMor> {
        match self {
            SymMorphism::Identity(_) => Ok(m.clone()),
            SymMorphism::Table(t) => t.morphisms.get(m).cloned().ok_or_else(|| undefined(format!("morphism {m}"))),
            SymMorphism::Xi { map, .. } => match m {
                ObjMor::Identity(x) => Ok(ObjMor::Identity(map.on_object(x)?.clone())),
                _ => Err(Error::WrongKind(m.to_string())),
            },
            SymMorphism::PhiPlus(phi) => {
                let dom = self.domain().obj_dom(m)?;
                Ok(ObjMor::Identity(slice::phi_plus_object(phi, &dom)?))
            }
            SymMorphism::Compose(second, first) => second.on_objmor(&first.on_objmor(m)?),
        }
    }

    pub fn on_arrow(&self, f: &SymArrow) -> Result<SymArrow> {
        match self {
            SymMorphism::Identity(_) => Ok(f.clone()),
            SymMorphism::Table(t) => t.arrows.get(f).cloned().ok_or_else(|| undefined(format!("arrow {f}"))),
            SymMorphism::Xi { map, .. } => xi::xi_map_arrow(map, f),
            SymMorphism::PhiPlus(phi) => slice::phi_plus_arrow(phi, f),
            SymMorphism::Compose(second, first) => second.on_arrow(&first.on_arrow(f)?),
        }
    }
}

/// Checks that `F` preserves the category of objects, `ι`, composition and
/// the symmetric action on every instance within the bound.
pub fn check_sym_morphism(map: &SymMorphism, bound: usize) -> ValidationReport {
    let mut r = ValidationReport::new();
    let q = map.domain();
    let t = map.codomain();
    for x in q.objects(bound) {
        let Ok(fx) = map.on_object(&x) else {
            r.push("total-on-objects", x.to_string());
            continue;
        };
        match (q.obj_identity(&x).and_then(|e| map.on_objmor(&e)), t.obj_identity(&fx)) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => r.push("functor-identity", x.to_string()),
        }
        let Ok(outs) = q.morphisms_out(&x) else { continue };
        for a in &outs {
            let Ok(fa) = map.on_objmor(a) else {
                r.push("total-on-morphisms", a.to_string());
                continue;
            };
            let ends_ok = match (q.obj_cod(a).and_then(|c| map.on_object(&c)), t.obj_dom(&fa), t.obj_cod(&fa)) {
                (Ok(fc), Ok(d), Ok(c)) => d == fx && c == fc,
                _ => false,
            };
            if !ends_ok {
                r.push("functor-endpoints", a.to_string());
                continue;
            }
            match (q.iota(a).and_then(|ia| map.on_arrow(&ia)), t.iota(&fa)) {
                (Ok(u), Ok(v)) if u == v => {}
                _ => r.push("preserves-iota", a.to_string()),
            }
            let Ok(next) = q.obj_cod(a).and_then(|c| q.morphisms_out(&c)) else { continue };
            for b in &next {
                let lhs = q.obj_compose(b, a).and_then(|ba| map.on_objmor(&ba));
                let rhs = map.on_objmor(b).and_then(|fb| t.obj_compose(&fb, &fa));
                if lhs.is_err() || lhs != rhs {
                    r.push("functor-composition", format!("{b} after {a}"));
                }
            }
        }
    }
    let arrows = q.arrows(bound);
    let fits = |fs: &[&SymArrow]| fs.iter().map(|f| q.size(f)).sum::<usize>() < bound + fs.len();
    let mut images = BTreeMap::new();
    for f in &arrows {
        let (Ok(pf), Ok(ff)) = (q.profile(f), map.on_arrow(f)) else {
            r.push("total-on-arrows", f.to_string());
            continue;
        };
        let mapped: Result<Vec<Obj>> = pf.inputs.iter().map(|x| map.on_object(x)).collect();
        let expect = mapped.and_then(|inputs| Ok(Profile { inputs, output: map.on_object(&pf.output)? }));
        if t.profile(&ff).ok() != expect.ok() {
            r.push("preserves-profile", f.to_string());
        }
        for s in Permutation::all(pf.arity()) {
            let lhs = q.act(f, &s).and_then(|fs| map.on_arrow(&fs));
            let rhs = t.act(&ff, &s);
            if lhs.is_err() || lhs != rhs {
                r.push("preserves-action", format!("{f} . {s}"));
            }
        }
        images.insert(f.clone(), (pf, ff));
    }
    for (f, (pf, ff)) in &images {
        for (g, (pg, fg)) in &images {
            if !fits(&[f, g]) {
                continue;
            }
            for (p, x) in pf.inputs.iter().enumerate() {
                if *x != pg.output {
                    continue;
                }
                let lhs = q.compose_at(f, p, g).and_then(|h| map.on_arrow(&h));
                let rhs = t.compose_at(ff, p, fg);
                if lhs.is_err() || lhs != rhs {
                    r.push("preserves-composition", format!("{f} o_{p} {g}"));
                }
            }
        }
    }
    r.finish()
}

/// Bounded check that `F` is an equivalence: on objects essentially
/// surjective, full and faithful; on arrows a bijection
/// `Q(x_1..x_k; x) → R(Fx_1..Fx_k; Fx)` for every profile met within the
/// bound.
pub fn check_sym_equivalence(map: &SymMorphism, bound: usize) -> EquivalenceOutcome {
    let q = map.domain();
    let t = map.codomain();
    let mut notes = Vec::new();

    // objects
    let q_objs = q.objects(bound);
    let t_objs = t.objects(bound);
    let mut fiber: BTreeMap<Obj, Vec<Obj>> = BTreeMap::new();
    let mut object_error = false;
    for x in &q_objs {
        match map.on_object(x) {
            Ok(fx) => fiber.entry(fx).or_default().push(x.clone()),
            Err(e) => {
                object_error = true;
                notes.push(format!("object {x}: {e}"));
            }
        }
    }
    let mut ess = !object_error;
    for y in &t_objs {
        if fiber.contains_key(y) {
            continue;
        }
        let reached = t
            .morphisms_out(y)
            .map(|ms| {
                ms.iter().any(|m| {
                    t.obj_inverse(m).is_some() && t.obj_cod(m).is_ok_and(|c| fiber.contains_key(&c))
                })
            })
            .unwrap_or(false);
        if !reached {
            ess = false;
            if notes.len() < 8 {
                notes.push(format!("object {y} is not isomorphic to an image"));
            }
        }
    }

    // isomorphic objects have isomorphic hom sets, so one object per
    // isomorphism class is enough
    let mut ff = !object_error;
    let mut covered: hashbrown::HashSet<Obj> = hashbrown::HashSet::new();
    let mut reps = Vec::new();
    for x in &q_objs {
        if covered.contains(x) {
            continue;
        }
        reps.push(x.clone());
        let mut stack = vec![x.clone()];
        covered.insert(x.clone());
        while let Some(y) = stack.pop() {
            for m in q.gen_out(&y).unwrap_or_default() {
                if let Ok(c) = q.obj_cod(&m) {
                    if covered.insert(c.clone()) {
                        stack.push(c);
                    }
                }
            }
        }
    }
    for x in &reps {
        let (Ok(outs), Ok(fx)) = (q.morphisms_out(x), map.on_object(x)) else {
            ff = false;
            continue;
        };
        let mut by_cod: BTreeMap<Obj, Vec<ObjMor>> = BTreeMap::new();
        for m in outs {
            if let Ok(c) = q.obj_cod(&m) {
                by_cod.entry(c).or_default().push(m);
            }
        }
        let mut t_by_cod: BTreeMap<Obj, BTreeSet<ObjMor>> = BTreeMap::new();
        if let Ok(touts) = t.morphisms_out(&fx) {
            for m in touts {
                if let Ok(c) = t.obj_cod(&m) {
                    t_by_cod.entry(c).or_default().insert(m);
                }
            }
        }
        // candidate codomains: reached in Q, or in the fiber of a codomain
        // reached in R
        let mut cods: BTreeSet<Obj> = by_cod.keys().cloned().collect();
        for c in t_by_cod.keys() {
            if let Some(xs) = fiber.get(c) {
                cods.extend(xs.iter().cloned());
            }
        }
        for x2 in cods {
            let Ok(fx2) = map.on_object(&x2) else { continue };
            let src = by_cod.get(&x2).cloned().unwrap_or_default();
            let images: Result<BTreeSet<ObjMor>> = src.iter().map(|m| map.on_objmor(m)).collect();
            let tgt = t_by_cod.get(&fx2).cloned().unwrap_or_default();
            let ok = matches!(&images, Ok(im) if im.len() == src.len() && *im == tgt);
            if !ok {
                ff = false;
                if notes.len() < 8 {
                    notes.push(format!("hom({x}, {x2}) is not mapped bijectively"));
                }
            }
        }
    }

    // arrows
    let mut q_groups: BTreeMap<Profile, Vec<SymArrow>> = BTreeMap::new();
    for f in q.arrows(bound) {
        if let Ok(p) = q.profile(&f) {
            q_groups.entry(p).or_default().push(f);
        }
    }
    let mut t_groups: BTreeMap<Profile, BTreeSet<SymArrow>> = BTreeMap::new();
    for f in t.arrows(bound) {
        if let Ok(p) = t.profile(&f) {
            t_groups.entry(p).or_default().insert(f);
        }
    }
    let mut bij = BTreeMap::new();
    let mut hit: BTreeSet<Profile> = BTreeSet::new();
    for (p, fs) in &q_groups {
        let fp = p
            .inputs
            .iter()
            .map(|x| map.on_object(x))
            .collect::<Result<Vec<_>>>()
            .and_then(|inputs| Ok(Profile { inputs, output: map.on_object(&p.output)? }));
        let images: Result<BTreeSet<SymArrow>> = fs.iter().map(|f| map.on_arrow(f)).collect();
        let ok = match (&fp, &images) {
            (Ok(fp), Ok(im)) => {
                hit.insert(fp.clone());
                im.len() == fs.len() && Some(im) == t_groups.get(fp)
            }
            _ => false,
        };
        if !ok && notes.len() < 8 {
            notes.push(format!("arrows of profile {p} are not mapped bijectively"));
        }
        bij.insert(p.clone(), ok);
    }
    for p in t_groups.keys() {
        if !hit.contains(p) {
            if notes.len() < 8 {
                notes.push(format!("profile {p} has no preimage profile"));
            }
            bij.insert(p.clone(), false);
        }
    }
    EquivalenceOutcome {
        essentially_surjective: ess,
        full_faithful_on_objects: ff,
        arrow_bijections: bij,
        bound,
        notes,
    }
}

/// See [`crate::report::EquivalenceReport`].
pub type EquivalenceOutcome = crate::report::EquivalenceReport;

/// Whether a symmetric arrow is an `(f, σ)` pair over a generalised arrow.
pub fn xi_parts(f: &SymArrow) -> Option<(&GenArrow, &Permutation)> {
    match f {
        SymArrow::Xi(g, s) => Some((g, s)),
        _ => None,
    }
}
