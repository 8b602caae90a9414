//! JSON documents for the finite tables, reports and enumerations.
//!
//! Permutations travel as 0-based image arrays: `[1,0]` swaps two entries.

use std::collections::BTreeMap;
use std::sync::Arc;

use opetope_core::category::FiniteCategory;
use opetope_core::genmult::FiniteGenMulticat;
use opetope_core::opetopes::{iterated_slice_sym, multitope_term, phi_iterated, Correspondence};
use opetope_core::report::{EquivalenceReport, ValidationReport};
use opetope_core::symmult::FiniteSymMulticat;
use opetope_core::value::{Id, Obj, Profile, SymArrow};
use opetope_core::Permutation;
use serde::{Deserialize, Serialize};

use crate::CliError;

fn id(s: &str) -> Id {
    Arc::from(s)
}

fn perm(images: &[usize]) -> Result<Permutation, CliError> {
    Permutation::from_images(images.to_vec()).map_err(|e| CliError::Parse(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// `compose` entries `[f, g, h]` state `f ∘ g = h`. Identities are
/// recognised from the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub compose: Vec<[String; 3]>,
}

impl CategoryDoc {
    pub fn from_category(c: &FiniteCategory) -> Self {
        CategoryDoc {
            objects: c.objects.iter().map(|x| x.to_string()).collect(),
            morphisms: c
                .morphisms
                .iter()
                .map(|(f, (d, e))| MorphismDoc {
                    id: f.to_string(),
                    dom: d.to_string(),
                    cod: e.to_string(),
                })
                .collect(),
            compose: c
                .compose
                .iter()
                .map(|((f, g), h)| [f.to_string(), g.to_string(), h.to_string()])
                .collect(),
        }
    }

    pub fn to_category(&self) -> Result<FiniteCategory, CliError> {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| (id(&m.id), (id(&m.dom), id(&m.cod))))
            .collect::<BTreeMap<_, _>>();
        for [f, g, h] in &self.compose {
            for x in [f, g, h] {
                if !morphisms.contains_key(x.as_str()) {
                    return Err(CliError::Parse(format!("unknown morphism {x} in compose")));
                }
            }
        }
        let compose = self
            .compose
            .iter()
            .map(|[f, g, h]| ((id(f), id(g)), id(h)))
            .collect();
        Ok(FiniteCategory::from_table(
            self.objects.iter().map(|x| id(x)).collect(),
            morphisms,
            compose,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub id: String,
    pub source: Vec<String>,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenComposeDoc {
    pub f: String,
    pub p: usize,
    pub g: String,
    pub result: String,
    pub chi: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<GenComposeDoc>,
}

fn arrow_docs(arrows: &BTreeMap<Id, (Vec<Id>, Id)>) -> Vec<ArrowDoc> {
    arrows
        .iter()
        .map(|(f, (s, t))| ArrowDoc {
            id: f.to_string(),
            source: s.iter().map(|x| x.to_string()).collect(),
            target: t.to_string(),
        })
        .collect()
}

fn arrow_table(arrows: &[ArrowDoc]) -> Result<BTreeMap<Id, (Vec<Id>, Id)>, CliError> {
    let mut out = BTreeMap::new();
    for a in arrows {
        let prev = out.insert(id(&a.id), (a.source.iter().map(|x| id(x)).collect(), id(&a.target)));
        if prev.is_some() {
            return Err(CliError::Parse(format!("arrow {} listed twice", a.id)));
        }
    }
    Ok(out)
}

impl GenDoc {
    pub fn from_multicat(m: &FiniteGenMulticat) -> Self {
        GenDoc {
            objects: m.objects.iter().map(|x| x.to_string()).collect(),
            arrows: arrow_docs(&m.arrows),
            identities: m.identities.iter().map(|(x, f)| (x.to_string(), f.to_string())).collect(),
            compose: m
                .compose
                .iter()
                .map(|((f, p, g), (r, chi))| GenComposeDoc {
                    f: f.to_string(),
                    p: *p,
                    g: g.to_string(),
                    result: r.to_string(),
                    chi: chi.images().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_multicat(&self) -> Result<FiniteGenMulticat, CliError> {
        let mut compose = BTreeMap::new();
        for c in &self.compose {
            compose.insert((id(&c.f), c.p, id(&c.g)), (id(&c.result), perm(&c.chi)?));
        }
        Ok(FiniteGenMulticat {
            objects: self.objects.iter().map(|x| id(x)).collect(),
            arrows: arrow_table(&self.arrows)?,
            identities: self.identities.iter().map(|(x, f)| (id(x), id(f))).collect(),
            compose,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymComposeDoc {
    pub f: String,
    pub p: usize,
    pub g: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub f: String,
    pub sigma: Vec<usize>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IotaDoc {
    #[serde(rename = "objMorphism")]
    pub obj_morphism: String,
    pub arrow: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymDoc {
    pub category: CategoryDoc,
    pub arrows: Vec<ArrowDoc>,
    pub compose: Vec<SymComposeDoc>,
    pub action: Vec<ActionDoc>,
    pub iota: Vec<IotaDoc>,
}

impl SymDoc {
    pub fn from_multicat(q: &FiniteSymMulticat) -> Self {
        SymDoc {
            category: CategoryDoc::from_category(&q.category),
            arrows: arrow_docs(&q.arrows),
            compose: q
                .compose
                .iter()
                .map(|((f, p, g), r)| SymComposeDoc {
                    f: f.to_string(),
                    p: *p,
                    g: g.to_string(),
                    result: r.to_string(),
                })
                .collect(),
            action: q
                .action
                .iter()
                .map(|((f, s), r)| ActionDoc {
                    f: f.to_string(),
                    sigma: s.images().to_vec(),
                    result: r.to_string(),
                })
                .collect(),
            iota: q
                .iota
                .iter()
                .map(|(m, f)| IotaDoc {
                    obj_morphism: m.to_string(),
                    arrow: f.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_multicat(&self) -> Result<FiniteSymMulticat, CliError> {
        let mut action = BTreeMap::new();
        for a in &self.action {
            action.insert((id(&a.f), perm(&a.sigma)?), id(&a.result));
        }
        Ok(FiniteSymMulticat {
            category: self.category.to_category()?,
            arrows: arrow_table(&self.arrows)?,
            compose: self
                .compose
                .iter()
                .map(|c| ((id(&c.f), c.p, id(&c.g)), id(&c.result)))
                .collect(),
            action,
            iota: self.iota.iter().map(|i| (id(&i.obj_morphism), id(&i.arrow))).collect(),
        })
    }
}

/// Any input document, told apart by its keys.
#[derive(Clone, Debug)]
pub enum Input {
    Category(FiniteCategory),
    Gen(FiniteGenMulticat),
    Sym(FiniteSymMulticat),
}

pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let has = |k: &str| v.get(k).is_some();
    let bad = |e: serde_json::Error| CliError::Parse(e.to_string());
    if has("category") {
        let d: SymDoc = serde_json::from_value(v).map_err(bad)?;
        Ok(Input::Sym(d.to_multicat()?))
    } else if has("identities") {
        let d: GenDoc = serde_json::from_value(v).map_err(bad)?;
        Ok(Input::Gen(d.to_multicat()?))
    } else if has("morphisms") {
        let d: CategoryDoc = serde_json::from_value(v).map_err(bad)?;
        Ok(Input::Category(d.to_category()?))
    } else {
        Err(CliError::Parse(
            "expected a category, generalised or symmetric multicategory document".into(),
        ))
    }
}

// ---- reports ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDoc {
    pub law: String,
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub kind: String,
    pub bound: usize,
    pub ok: bool,
    pub violations: Vec<ViolationDoc>,
}

impl ReportDoc {
    pub fn new(kind: &str, bound: usize, r: &ValidationReport) -> Self {
        ReportDoc {
            kind: kind.into(),
            bound,
            ok: r.is_empty(),
            violations: r
                .violations()
                .iter()
                .map(|v| ViolationDoc {
                    law: v.law.into(),
                    instance: v.instance.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceDoc {
    pub bound: usize,
    #[serde(rename = "essentiallySurjective")]
    pub essentially_surjective: bool,
    #[serde(rename = "fullFaithfulOnObjects")]
    pub full_faithful_on_objects: bool,
    #[serde(rename = "arrowBijections")]
    pub arrow_bijections: BTreeMap<String, bool>,
    pub notes: Vec<String>,
}

impl From<&EquivalenceReport> for EquivalenceDoc {
    fn from(r: &EquivalenceReport) -> Self {
        EquivalenceDoc {
            bound: r.bound,
            essentially_surjective: r.essentially_surjective,
            full_faithful_on_objects: r.full_faithful_on_objects,
            arrow_bijections: r.arrow_bijections.iter().map(|(p, b)| (p.to_string(), *b)).collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondenceDoc {
    pub dim: usize,
    pub ok: bool,
    pub classes: usize,
    pub multitopes: usize,
    #[serde(rename = "objectBijection")]
    pub object_bijection: bool,
    pub equivalence: EquivalenceDoc,
    pub notes: Vec<String>,
}

impl From<&Correspondence> for CorrespondenceDoc {
    fn from(c: &Correspondence) -> Self {
        CorrespondenceDoc {
            dim: c.dim,
            ok: c.verdict(),
            classes: c.classes,
            multitopes: c.multitopes,
            object_bijection: c.object_bijection,
            equivalence: (&c.equivalence).into(),
            notes: c.notes.clone(),
        }
    }
}

// ---- slices and enumerations ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub inputs: Vec<String>,
    pub output: String,
}

impl From<&Profile> for ProfileDoc {
    fn from(p: &Profile) -> Self {
        ProfileDoc {
            inputs: p.inputs.iter().map(|x| x.to_string()).collect(),
            output: p.output.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceArrowDoc {
    pub arrow: String,
    pub profile: ProfileDoc,
}

/// The objects and arrows of a slice up to a node bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceDoc {
    pub kind: String,
    pub bound: usize,
    pub objects: Vec<String>,
    pub arrows: Vec<SliceArrowDoc>,
}

/// A `k`-opetope. `term` is the multitope it corresponds to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpetopeDoc {
    pub dim: usize,
    pub tree: String,
    pub rho: Vec<usize>,
    pub tau: Vec<usize>,
    pub profile: Option<ProfileDoc>,
    pub term: String,
}

impl OpetopeDoc {
    pub fn new(dim: usize, x: &Obj) -> Result<Self, CliError> {
        let term = multitope_term(&phi_iterated(dim).on_object(x).map_err(CliError::from)?);
        let profile = if dim == 0 {
            None
        } else {
            let f = match x {
                Obj::Sym(f) => f,
                other => return Err(CliError::Internal(format!("{other} is not an opetope"))),
            };
            Some((&iterated_slice_sym(dim - 1).profile(f).map_err(CliError::from)?).into())
        };
        let (tree, rho, tau) = match x {
            Obj::Sym(SymArrow::Config(c)) => (c.tree.to_string(), c.rho.images().to_vec(), c.tau.images().to_vec()),
            other => (other.to_string(), vec![], vec![]),
        };
        Ok(OpetopeDoc {
            dim,
            tree,
            rho,
            tau,
            profile,
            term,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerationDoc {
    pub kind: String,
    pub dim: usize,
    pub bound: usize,
    pub count: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub multitopes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub opetopes: Vec<OpetopeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestationsDoc {
    pub dim: usize,
    pub seed: String,
    pub count: usize,
}
