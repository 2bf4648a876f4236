//! The self-contained JSON project document.
//!
//! One file holds named groups, complexes, actions, complexes of groups, and
//! developability witnesses, cross-referenced by name. Loading resolves the
//! whole object graph up front, so commands downstream work with validated
//! structures only; every dangling name is reported with the JSON path of
//! the offending field.
//!
//! Conventions keep the format exact and diff-stable: permutations are
//! one-based image rows, homomorphisms are total image tables over the
//! canonical element order, simplices are addressed by their comma-joined
//! vertex key, arrows by `small<large`, and everything absent defaults to
//! trivial (trivial group, trivial homomorphism, identity twist).

use crate::action::SimplicialAction;
use crate::cog::{ComplexOfGroups, MorphismToGroup};
use crate::error::{Error, Result};
use crate::group::{FinGroup, GroupHom};
use crate::perm::Permutation;
use crate::simplicial::SimplicialComplex;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

/// The one schema this build reads and writes.
pub const SCHEMA_VERSION: u32 = 1;

/// A permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: u16,
    /// One-based image rows, one per generator.
    pub generators: Vec<Vec<u16>>,
}

/// A simplicial complex given by vertices and generating simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
}

/// A group acting on a complex; the group's permutation degree must equal
/// the complex's vertex count, and elements act by their permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub group: String,
    pub complex: String,
}

/// One twisting element `g_{b,a}` of a composable arrow pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSpec {
    /// Arrow applied second.
    pub outer: String,
    /// Arrow applied first.
    pub inner: String,
    /// Element id in the group at the outer arrow's terminal object.
    pub element: usize,
}

/// A complex of groups over a named complex. Simplices absent from `groups`
/// carry the trivial group; arrows absent from `psi` carry the unique
/// homomorphism out of a trivial group (an error if the source group is
/// not trivial); pairs absent from `twists` twist by the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CogSpec {
    pub complex: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, String>,
    /// Arrow name → image table over the source group's element order.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub psi: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<TwistSpec>,
}

/// A morphism from a named complex of groups to a named group. Objects
/// absent from `f_obj` carry the trivial homomorphism (an error if the
/// local group is not trivial); arrows absent from `f_arrow` carry the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub cog: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub f_obj: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub f_arrow: BTreeMap<String, usize>,
}

/// The raw document as serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectDoc {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cogs: BTreeMap<String, CogSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, WitnessSpec>,
}

impl ProjectDoc {
    pub fn empty() -> ProjectDoc {
        ProjectDoc {
            schema_version: SCHEMA_VERSION,
            groups: BTreeMap::new(),
            complexes: BTreeMap::new(),
            actions: BTreeMap::new(),
            cogs: BTreeMap::new(),
            witnesses: BTreeMap::new(),
        }
    }

    /// Pretty JSON with keys sorted at every level (all maps are ordered).
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// The resolved object graph of a project file.
#[derive(Clone, Debug)]
pub struct Project {
    pub groups: BTreeMap<String, Arc<FinGroup>>,
    pub complexes: BTreeMap<String, SimplicialComplex>,
    pub actions: BTreeMap<String, SimplicialAction>,
    pub cogs: BTreeMap<String, ComplexOfGroups>,
    pub witnesses: BTreeMap<String, MorphismToGroup>,
}

impl Project {
    fn lookup<'a, T>(
        table: &'a BTreeMap<String, T>,
        kind: &'static str,
        name: &str,
        path: String,
    ) -> Result<&'a T> {
        table.get(name).ok_or_else(|| Error::UnresolvedRef {
            path,
            kind,
            name: name.to_string(),
        })
    }

    pub fn group(&self, name: &str) -> Result<&Arc<FinGroup>> {
        Self::lookup(&self.groups, "group", name, format!("/groups/{name}"))
    }

    pub fn complex(&self, name: &str) -> Result<&SimplicialComplex> {
        Self::lookup(
            &self.complexes,
            "complex",
            name,
            format!("/complexes/{name}"),
        )
    }

    pub fn action(&self, name: &str) -> Result<&SimplicialAction> {
        Self::lookup(&self.actions, "action", name, format!("/actions/{name}"))
    }

    pub fn cog(&self, name: &str) -> Result<&ComplexOfGroups> {
        Self::lookup(&self.cogs, "cog", name, format!("/cogs/{name}"))
    }

    pub fn witness(&self, name: &str) -> Result<&MorphismToGroup> {
        Self::lookup(
            &self.witnesses,
            "witness",
            name,
            format!("/witnesses/{name}"),
        )
    }
}

fn bad(path: String, message: impl Into<String>) -> Error {
    Error::ProjectData {
        path,
        message: message.into(),
    }
}

/// Resolves a raw document into live structures, generating groups under
/// the given element cap.
pub fn resolve_project(doc: &ProjectDoc, cap: usize) -> Result<Project> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::SchemaVersion {
            found: doc.schema_version,
            expected: SCHEMA_VERSION,
        });
    }

    let mut groups = BTreeMap::new();
    for (name, spec) in &doc.groups {
        let path = format!("/groups/{name}");
        let gens = spec
            .generators
            .iter()
            .map(|row| Permutation::from_one_based(row.clone()))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| bad(path.clone(), e.to_string()))?;
        let g = FinGroup::generate(spec.degree, gens, cap)
            .map_err(|e| bad(path.clone(), e.to_string()))?;
        groups.insert(name.clone(), g);
    }

    let mut complexes = BTreeMap::new();
    for (name, spec) in &doc.complexes {
        let path = format!("/complexes/{name}");
        let refs: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
        let gens: Vec<Vec<&str>> = spec
            .simplices
            .iter()
            .map(|s| s.iter().map(String::as_str).collect())
            .collect();
        let gen_slices: Vec<&[&str]> = gens.iter().map(Vec::as_slice).collect();
        let k = SimplicialComplex::from_names(&refs, &gen_slices)
            .map_err(|e| bad(path, e.to_string()))?;
        complexes.insert(name.clone(), k);
    }

    let mut actions = BTreeMap::new();
    for (name, spec) in &doc.actions {
        let group = Project::lookup(
            &groups,
            "group",
            &spec.group,
            format!("/actions/{name}/group"),
        )?
        .clone();
        let complex = Project::lookup(
            &complexes,
            "complex",
            &spec.complex,
            format!("/actions/{name}/complex"),
        )?
        .clone();
        let action = SimplicialAction::from_permutations(group, complex)
            .map_err(|e| bad(format!("/actions/{name}"), e.to_string()))?;
        actions.insert(name.clone(), action);
    }

    let mut cogs = BTreeMap::new();
    for (name, spec) in &doc.cogs {
        let complex = Project::lookup(
            &complexes,
            "complex",
            &spec.complex,
            format!("/cogs/{name}/complex"),
        )?
        .clone();
        let cog = resolve_cog(name, spec, complex, &groups)?;
        cogs.insert(name.clone(), cog);
    }

    let mut witnesses = BTreeMap::new();
    for (name, spec) in &doc.witnesses {
        let cog = Project::lookup(&cogs, "cog", &spec.cog, format!("/witnesses/{name}/cog"))?
            .clone();
        let target = Project::lookup(
            &groups,
            "group",
            &spec.target,
            format!("/witnesses/{name}/target"),
        )?
        .clone();
        let w = resolve_witness(name, spec, cog, target)?;
        witnesses.insert(name.clone(), w);
    }

    Ok(Project {
        groups,
        complexes,
        actions,
        cogs,
        witnesses,
    })
}

fn resolve_cog(
    name: &str,
    spec: &CogSpec,
    complex: SimplicialComplex,
    groups: &BTreeMap<String, Arc<FinGroup>>,
) -> Result<ComplexOfGroups> {
    let base = crate::scwol::scwol_of_complex(&complex);
    let mut local: Vec<Arc<FinGroup>> = vec![FinGroup::trivial(1); base.object_count()];
    for (key, group_name) in &spec.groups {
        let path = format!("/cogs/{name}/groups/{key}");
        let o = base
            .object_id(key)
            .map_err(|e| bad(path.clone(), e.to_string()))?;
        local[o] = Project::lookup(groups, "group", group_name, path)?.clone();
    }
    let mut psi = Vec::with_capacity(base.arrow_count());
    for a in 0..base.arrow_count() {
        let arrow = base.arrow_name(a);
        let (src, tgt) = (local[base.i(a)].clone(), local[base.t(a)].clone());
        let hom = match spec.psi.get(arrow) {
            Some(images) => GroupHom::new(src, tgt, images.clone()).map_err(|e| {
                bad(format!("/cogs/{name}/psi/{arrow}"), e.to_string())
            })?,
            None if src.order() == 1 => GroupHom::trivial(src, tgt),
            None => {
                return Err(bad(
                    format!("/cogs/{name}/psi/{arrow}"),
                    "missing homomorphism for an arrow with a nontrivial source group",
                ))
            }
        };
        psi.push(hom);
    }
    for key in spec.psi.keys() {
        base.arrow_id(key)
            .map_err(|e| bad(format!("/cogs/{name}/psi/{key}"), e.to_string()))?;
    }
    let mut twists = BTreeMap::new();
    for (idx, t) in spec.twists.iter().enumerate() {
        let path = format!("/cogs/{name}/twists/{idx}");
        let b = base
            .arrow_id(&t.outer)
            .map_err(|e| bad(path.clone(), e.to_string()))?;
        let a = base
            .arrow_id(&t.inner)
            .map_err(|e| bad(path.clone(), e.to_string()))?;
        twists.insert((b, a), t.element);
    }
    ComplexOfGroups::over_complex(complex, local, psi, twists)
        .map_err(|e| bad(format!("/cogs/{name}"), e.to_string()))
}

fn resolve_witness(
    name: &str,
    spec: &WitnessSpec,
    cog: ComplexOfGroups,
    target: Arc<FinGroup>,
) -> Result<MorphismToGroup> {
    let base = cog.base();
    let mut f_obj = Vec::with_capacity(base.object_count());
    for o in 0..base.object_count() {
        let key = base.object_name(o);
        let hom = match spec.f_obj.get(key) {
            Some(images) => {
                GroupHom::new(cog.group(o).clone(), target.clone(), images.clone())
                    .map_err(|e| bad(format!("/witnesses/{name}/f_obj/{key}"), e.to_string()))?
            }
            None if cog.group(o).order() == 1 => {
                GroupHom::trivial(cog.group(o).clone(), target.clone())
            }
            None => {
                return Err(bad(
                    format!("/witnesses/{name}/f_obj/{key}"),
                    "missing object map for a nontrivial local group",
                ))
            }
        };
        f_obj.push(hom);
    }
    for key in spec.f_obj.keys() {
        base.object_id(key)
            .map_err(|e| bad(format!("/witnesses/{name}/f_obj/{key}"), e.to_string()))?;
    }
    let mut f_arrow = vec![target.id(); base.arrow_count()];
    for (key, &e) in &spec.f_arrow {
        let a = base
            .arrow_id(key)
            .map_err(|err| bad(format!("/witnesses/{name}/f_arrow/{key}"), err.to_string()))?;
        f_arrow[a] = e;
    }
    MorphismToGroup::new(cog, target, f_obj, f_arrow)
        .map_err(|e| bad(format!("/witnesses/{name}"), e.to_string()))
}

/// Reads and resolves a project file.
pub fn parse_project(path: &Path, cap: usize) -> Result<Project> {
    let text = std::fs::read_to_string(path)?;
    let doc: ProjectDoc = serde_json::from_str(&text)?;
    resolve_project(&doc, cap)
}

/// Builds a [`ProjectDoc`] from live structures, inventing deterministic
/// names for anonymous local groups as needed.
#[derive(Debug)]
pub struct ProjectBuilder {
    doc: ProjectDoc,
    groups: BTreeMap<String, Arc<FinGroup>>,
    complexes: BTreeMap<String, SimplicialComplex>,
    cogs: BTreeMap<String, ComplexOfGroups>,
}

impl Default for ProjectBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl ProjectBuilder {
    pub fn new() -> ProjectBuilder {
        ProjectBuilder {
            doc: ProjectDoc::empty(),
            groups: BTreeMap::new(),
            complexes: BTreeMap::new(),
            cogs: BTreeMap::new(),
        }
    }

    pub fn group(&mut self, name: &str, g: &Arc<FinGroup>) -> &mut Self {
        self.doc.groups.insert(name.to_string(), group_spec(g));
        self.groups.insert(name.to_string(), g.clone());
        self
    }

    fn group_name(&mut self, g: &Arc<FinGroup>, fallback: String) -> String {
        if let Some((name, _)) = self.groups.iter().find(|(_, known)| ***known == **g) {
            return name.clone();
        }
        self.group(&fallback, g);
        fallback
    }

    pub fn complex(&mut self, name: &str, k: &SimplicialComplex) -> &mut Self {
        self.doc
            .complexes
            .insert(name.to_string(), complex_spec(k));
        self.complexes.insert(name.to_string(), k.clone());
        self
    }

    fn complex_name(&mut self, k: &SimplicialComplex, fallback: String) -> String {
        if let Some((name, _)) = self.complexes.iter().find(|(_, known)| *known == k) {
            return name.clone();
        }
        self.complex(&fallback, k);
        fallback
    }

    pub fn action(&mut self, name: &str, action: &SimplicialAction) -> &mut Self {
        let group = self.group_name(action.group(), format!("{name}.group"));
        let complex = self.complex_name(action.complex(), format!("{name}.complex"));
        self.doc
            .actions
            .insert(name.to_string(), ActionSpec { group, complex });
        self
    }

    /// Registers a complex of groups; it must have been built over a
    /// simplicial complex so objects have simplex keys.
    pub fn cog(&mut self, name: &str, cog: &ComplexOfGroups) -> Result<&mut Self> {
        let complex = cog.complex().ok_or_else(|| {
            bad(
                format!("/cogs/{name}"),
                "only complexes of groups over a simplicial complex can be serialized",
            )
        })?;
        let complex_name = self.complex_name(complex, format!("{name}.complex"));
        let base = cog.base();
        let mut group_names = BTreeMap::new();
        for o in 0..base.object_count() {
            // The degree-1 trivial group is the loader's default; a trivial
            // group of higher degree must still be written out so subgroup
            // relations survive the round trip.
            if cog.group(o).order() > 1 || cog.group(o).degree() > 1 {
                let key = base.object_name(o).to_string();
                let group = self.group_name(cog.group(o), format!("{name}.{key}"));
                group_names.insert(key, group);
            }
        }
        let mut psi = BTreeMap::new();
        for a in 0..base.arrow_count() {
            if cog.group(base.i(a)).order() > 1 {
                psi.insert(
                    base.arrow_name(a).to_string(),
                    cog.psi(a).images().to_vec(),
                );
            }
        }
        let twists = cog
            .twist_entries()
            .iter()
            .map(|(&(b, a), &e)| TwistSpec {
                outer: base.arrow_name(b).to_string(),
                inner: base.arrow_name(a).to_string(),
                element: e,
            })
            .collect();
        self.doc.cogs.insert(
            name.to_string(),
            CogSpec {
                complex: complex_name,
                groups: group_names,
                psi,
                twists,
            },
        );
        self.cogs.insert(name.to_string(), cog.clone());
        Ok(self)
    }

    pub fn witness(&mut self, name: &str, w: &MorphismToGroup) -> Result<&mut Self> {
        let cog_name = match self.cogs.iter().find(|(_, known)| *known == w.cog()) {
            Some((n, _)) => n.clone(),
            None => {
                self.cog(&format!("{name}.cog"), w.cog())?;
                format!("{name}.cog")
            }
        };
        let target = self.group_name(w.target(), format!("{name}.target"));
        let base = w.cog().base();
        let mut f_obj = BTreeMap::new();
        for o in 0..base.object_count() {
            if w.cog().group(o).order() > 1 {
                f_obj.insert(
                    base.object_name(o).to_string(),
                    w.f_obj(o).images().to_vec(),
                );
            }
        }
        let mut f_arrow = BTreeMap::new();
        for a in 0..base.arrow_count() {
            if w.f_arrow(a) != w.target().id() {
                f_arrow.insert(base.arrow_name(a).to_string(), w.f_arrow(a));
            }
        }
        self.doc.witnesses.insert(
            name.to_string(),
            WitnessSpec {
                cog: cog_name,
                target,
                f_obj,
                f_arrow,
            },
        );
        Ok(self)
    }

    pub fn finish(self) -> ProjectDoc {
        self.doc
    }
}

fn group_spec(g: &FinGroup) -> GroupSpec {
    GroupSpec {
        degree: g.degree(),
        generators: g.gens().iter().map(Permutation::one_based).collect(),
    }
}

fn complex_spec(k: &SimplicialComplex) -> ComplexSpec {
    ComplexSpec {
        vertices: k.vertex_names().to_vec(),
        simplices: k
            .maximal_simplices()
            .into_iter()
            .map(|idx| {
                k.simplex(idx)
                    .vertices()
                    .iter()
                    .map(|&v| k.vertex_name(v).to_string())
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn roundtrip(doc: &ProjectDoc) -> Project {
        let text = doc.to_json_string().unwrap();
        let parsed: ProjectDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(&parsed, doc);
        resolve_project(&parsed, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn a_cog_with_witness_survives_the_json_roundtrip() {
        let cog = fixtures::segment();
        let witness = fixtures::segment_witness();
        let mut b = ProjectBuilder::new();
        b.cog("seg", &cog).unwrap();
        b.witness("c6-witness", &witness).unwrap();
        let doc = b.finish();
        let project = roundtrip(&doc);
        assert_eq!(project.cog("seg").unwrap(), &cog);
        let w = project.witness("c6-witness").unwrap();
        assert_eq!(w.target(), witness.target());
        for o in 0..cog.base().object_count() {
            assert_eq!(w.f_obj(o).images(), witness.f_obj(o).images());
        }
        for a in 0..cog.base().arrow_count() {
            assert_eq!(w.f_arrow(a), witness.f_arrow(a));
        }
    }

    #[test]
    fn a_twisted_cog_survives_the_json_roundtrip() {
        let twisted = fixtures::twisted_triangle();
        let mut b = ProjectBuilder::new();
        b.cog("twist", &twisted.cog).unwrap();
        let project = roundtrip(&b.finish());
        let loaded = project.cog("twist").unwrap();
        assert_eq!(loaded, &twisted.cog);
        assert!(loaded.has_nontrivial_twists());
    }

    #[test]
    fn an_action_survives_the_json_roundtrip() {
        let action = fixtures::path_swap_action();
        let mut b = ProjectBuilder::new();
        b.action("path-act", &action);
        let project = roundtrip(&b.finish());
        let loaded = project.action("path-act").unwrap();
        assert_eq!(loaded.group(), action.group());
        assert_eq!(loaded.complex(), action.complex());
    }

    #[test]
    fn dangling_references_name_their_json_path() {
        let mut doc = ProjectDoc::empty();
        doc.cogs.insert(
            "broken".into(),
            CogSpec {
                complex: "missing".into(),
                groups: BTreeMap::new(),
                psi: BTreeMap::new(),
                twists: Vec::new(),
            },
        );
        let err = resolve_project(&doc, DEFAULT_ELEMENT_CAP).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("/cogs/broken/complex"), "{message}");
        assert!(message.contains("missing"), "{message}");
    }

    #[test]
    fn unknown_group_names_inside_a_cog_are_errors() {
        let cog = fixtures::segment();
        let mut b = ProjectBuilder::new();
        b.cog("seg", &cog).unwrap();
        let mut doc = b.finish();
        let spec = doc.cogs.get_mut("seg").unwrap();
        *spec.groups.values_mut().next().unwrap() = "nonexistent".into();
        let err = resolve_project(&doc, DEFAULT_ELEMENT_CAP).unwrap_err();
        assert!(matches!(err, Error::UnresolvedRef { .. }), "{err}");
    }

    #[test]
    fn wrong_schema_versions_and_empty_files_are_rejected() {
        let mut doc = ProjectDoc::empty();
        doc.schema_version = 99;
        assert!(matches!(
            resolve_project(&doc, DEFAULT_ELEMENT_CAP),
            Err(Error::SchemaVersion {
                found: 99,
                expected: SCHEMA_VERSION
            })
        ));
        assert!(matches!(
            serde_json::from_str::<ProjectDoc>("").map_err(Error::from),
            Err(Error::Json(_))
        ));
    }
}
