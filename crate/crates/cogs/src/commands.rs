//! Command dispatch: each CLI subcommand as a function from resolved
//! arguments to a deterministic [`Report`].
//!
//! Hard errors (missing files, dangling names, malformed data) surface as
//! [`Error`] values so the binary can exit with a usage failure; mathematical
//! failures (an identity that does not hold, a gluing that is not well
//! defined) become violations inside a failing report instead.

use crate::action::ChoicePolicy;
use crate::assembly::{assemble_E, build_compatible_system, cubical_chain_complex, ECellComplex};
use crate::cog::{validate_cog, validate_morphism_to_group};
use crate::development::{develop, local_development};
use crate::error::{Error, Result};
use crate::fibre::{default_fibres, FibreKind};
use crate::fixtures;
use crate::group::DEFAULT_ELEMENT_CAP;
use crate::homology::{
    chain_from_delta, euler_characteristic, homology, is_point_homology, is_simplicial_cone,
    DegreeHomology,
};
use crate::iso::{roundtrip, scwol_to_dot, GScwol};
use crate::project::{resolve_project, Project, ProjectBuilder, ProjectDoc};
use crate::report::{digest_bytes, Report, Violation};
use crate::scwol::ObjectId;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Environment variable overriding the group element cap.
pub const CAP_ENV_VAR: &str = "COGS_ELEMENT_CAP";

/// The element cap in effect: the environment override when set and
/// parseable, the default otherwise.
pub fn element_cap() -> usize {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

/// One fully resolved CLI invocation.
#[derive(Clone, Debug)]
pub enum Command {
    /// Validate every complex of groups and witness in a project file.
    Validate { path: PathBuf },
    /// Induce a complex of groups from a named action.
    Induce {
        path: PathBuf,
        action: String,
        policy: ChoicePolicy,
    },
    /// Develop witnesses (all of them when no name is given).
    Develop {
        path: PathBuf,
        witness: Option<String>,
        dot: Option<PathBuf>,
    },
    /// Local developments over blocks, checked to be cones.
    DevelopBlock {
        path: PathBuf,
        cog: Option<String>,
        simplex: Option<String>,
    },
    /// Induce, develop, and search for the equivariant isomorphism back.
    Roundtrip {
        path: PathBuf,
        action: Option<String>,
        policy: ChoicePolicy,
        budget: u64,
    },
    /// Assemble the classifying complex over one block.
    Assemble {
        path: PathBuf,
        cog: Option<String>,
        simplex: String,
        fibres: FibreKind,
    },
    /// Build the full compatible system and check the twisted identities.
    CompatCheck {
        path: PathBuf,
        cog: Option<String>,
        fibres: FibreKind,
    },
    /// Homology of named complexes or developed witnesses.
    Homology {
        path: PathBuf,
        name: Option<String>,
    },
    /// Materialize the built-in fixture corpus.
    Fixtures { out: PathBuf },
}

/// Runs a command to completion, filling in the timing field last.
pub fn run(cmd: &Command) -> Result<Report> {
    let start = Instant::now();
    let mut report = match cmd {
        Command::Validate { path } => cmd_validate(path)?,
        Command::Induce {
            path,
            action,
            policy,
        } => cmd_induce(path, action, *policy)?,
        Command::Develop { path, witness, dot } => {
            cmd_develop(path, witness.as_deref(), dot.as_ref())?
        }
        Command::DevelopBlock {
            path,
            cog,
            simplex,
        } => cmd_develop_block(path, cog.as_deref(), simplex.as_deref())?,
        Command::Roundtrip {
            path,
            action,
            policy,
            budget,
        } => cmd_roundtrip(path, action.as_deref(), *policy, *budget)?,
        Command::Assemble {
            path,
            cog,
            simplex,
            fibres,
        } => cmd_assemble(path, cog.as_deref(), simplex, *fibres)?,
        Command::CompatCheck { path, cog, fibres } => {
            cmd_compat_check(path, cog.as_deref(), *fibres)?
        }
        Command::Homology { path, name } => cmd_homology(path, name.as_deref())?,
        Command::Fixtures { out } => cmd_fixtures(out)?,
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn load(path: &Path) -> Result<(Project, String)> {
    let bytes = std::fs::read(path)?;
    let digest = digest_bytes(&bytes);
    let doc: ProjectDoc = serde_json::from_slice(&bytes)?;
    let project = resolve_project(&doc, element_cap())?;
    Ok((project, digest))
}

/// The single entry of a one-entity table, or the named one. `section` is
/// the JSON key of the table, used in error paths.
fn pick<'a, T>(
    table: &'a std::collections::BTreeMap<String, T>,
    kind: &'static str,
    section: &str,
    name: Option<&str>,
) -> Result<(&'a str, &'a T)> {
    match name {
        Some(n) => table
            .get_key_value(n)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| Error::UnresolvedRef {
                path: format!("/{section}/{n}"),
                kind,
                name: n.to_string(),
            }),
        None if table.len() == 1 => {
            let (k, v) = table.iter().next().expect("len checked");
            Ok((k.as_str(), v))
        }
        None => Err(Error::ProjectData {
            path: format!("/{section}"),
            message: format!(
                "the file defines {} entries under `{section}`; name one explicitly",
                table.len()
            ),
        }),
    }
}

fn homology_json(h: &[DegreeHomology]) -> Vec<Value> {
    h.iter()
        .enumerate()
        .map(|(degree, d)| {
            json!({
                "degree": degree,
                "betti": d.betti,
                "torsion": d.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn cell_tables(e: &ECellComplex) -> Vec<Value> {
    let mut dims = Vec::new();
    for k in 0..e.dims() {
        let cells: Vec<Value> = (0..e.cell_count(k))
            .map(|c| {
                let glue: &[crate::assembly::FacetGlue] =
                    if k == 0 { &[] } else { e.facets(k, c) };
                let facets: Vec<Value> = glue
                    .iter()
                    .map(|f| {
                        json!({
                            "coordinate": f.coordinate,
                            "side": u8::from(f.upper),
                            "target_dim": f.target_dim,
                            "target_cell": e.cell_label(f.target_dim, f.target_cell),
                            "degenerate": f.degenerate,
                        })
                    })
                    .collect();
                json!({ "cell": e.cell_label(k, c), "facets": facets })
            })
            .collect();
        dims.push(json!({ "dim": k, "count": e.cell_count(k), "cells": cells }));
    }
    dims
}

fn cmd_validate(path: &Path) -> Result<Report> {
    let (project, digest) = load(path)?;
    let mut report = Report::new("validate", digest);
    let mut cog_summary = serde_json::Map::new();
    for (name, cog) in &project.cogs {
        let violations = validate_cog(cog);
        cog_summary.insert(name.clone(), json!(violations.len()));
        report.add_violations(violations);
    }
    let mut witness_summary = serde_json::Map::new();
    for (name, w) in &project.witnesses {
        let verdict = validate_morphism_to_group(w);
        witness_summary.insert(
            name.clone(),
            json!({
                "violations": verdict.violations.len(),
                "witness": verdict.is_witness(),
            }),
        );
        if !verdict.injective_on_local_groups {
            report.add_violations(vec![Violation::new(
                "witness-injectivity",
                format!("witness `{name}` is not injective on some local group"),
            )]);
        }
        report.add_violations(verdict.violations);
    }
    report.put("cogs", Value::Object(cog_summary));
    report.put("witnesses", Value::Object(witness_summary));
    report.put(
        "entities",
        json!({
            "groups": project.groups.len(),
            "complexes": project.complexes.len(),
            "actions": project.actions.len(),
            "cogs": project.cogs.len(),
            "witnesses": project.witnesses.len(),
        }),
    );
    Ok(report)
}

fn cmd_induce(path: &Path, action: &str, policy: ChoicePolicy) -> Result<Report> {
    let (project, digest) = load(path)?;
    let action = project.action(action)?;
    let mut report = Report::new("induce", digest);
    let induced = crate::action::induce_from_action(action, policy, true)?;
    report.add_violations(validate_cog(&induced.cog));
    let verdict = validate_morphism_to_group(&induced.morphism);
    if !verdict.is_witness() {
        report.fail();
    }
    report.add_violations(verdict.violations);
    report.put("policy", induced.record.policy.clone());
    report.put("subdivisions", induced.record.subdivisions);
    report.put(
        "quotient",
        json!({
            "simplices": induced.cog.base().object_count(),
            "arrows": induced.cog.base().arrow_count(),
        }),
    );
    report.put("nontrivial_twists", induced.cog.twist_entries().len());
    Ok(report)
}

fn cmd_develop(path: &Path, witness: Option<&str>, dot: Option<&PathBuf>) -> Result<Report> {
    let (project, digest) = load(path)?;
    let mut report = Report::new("develop", digest);
    let chosen: Vec<(&str, &crate::cog::MorphismToGroup)> = match witness {
        Some(_) => vec![pick(&project.witnesses, "witness", "witnesses", witness)?],
        None => project
            .witnesses
            .iter()
            .map(|(k, v)| (k.as_str(), v))
            .collect(),
    };
    if chosen.is_empty() {
        return Err(Error::ProjectData {
            path: "/witnesses".into(),
            message: "the file defines no witnesses to develop".into(),
        });
    }
    if dot.is_some() && chosen.len() != 1 {
        return Err(Error::ProjectData {
            path: "/witnesses".into(),
            message: "dot export needs a single named witness".into(),
        });
    }
    let mut summary = serde_json::Map::new();
    for (name, w) in chosen {
        let verdict = validate_morphism_to_group(w);
        if !verdict.is_witness() {
            report.add_violations(verdict.violations);
            report.fail();
            summary.insert(name.to_string(), json!({ "witness": false }));
            continue;
        }
        let dev = develop(w)?;
        let delta = crate::delta::realize(dev.scwol());
        let h = homology(&chain_from_delta(&delta)?);
        summary.insert(
            name.to_string(),
            json!({
                "objects": dev.scwol().object_count(),
                "arrows": dev.scwol().arrow_count(),
                "homology": homology_json(&h),
            }),
        );
        if let Some(dot_path) = dot {
            let text = scwol_to_dot(dev.scwol());
            std::fs::write(dot_path, &text)?;
            report.put("dot_digest", digest_bytes(text.as_bytes()));
        }
    }
    report.put("developments", Value::Object(summary));
    Ok(report)
}

fn cmd_develop_block(path: &Path, cog: Option<&str>, simplex: Option<&str>) -> Result<Report> {
    let (project, digest) = load(path)?;
    let (cog_name, cog) = pick(&project.cogs, "cog", "cogs", cog)?;
    let mut report = Report::new("develop-block", digest);
    report.put("cog", cog_name);
    let sigmas: Vec<ObjectId> = match simplex {
        Some(key) => vec![cog.base().object_id(key)?],
        None => (0..cog.base().object_count()).collect(),
    };
    let mut summary = serde_json::Map::new();
    for sigma in sigmas {
        let key = cog.base().object_name(sigma).to_string();
        let dev = local_development(cog, sigma)?;
        let delta = crate::delta::realize(dev.scwol());
        let chain = chain_from_delta(&delta)?;
        let chi = euler_characteristic(&chain);
        let h = homology(&chain);
        let apex = is_simplicial_cone(&delta);
        if apex.is_none() {
            report.add_violations(vec![Violation::new(
                "block-cone",
                format!("local development at `{key}` is not a simplicial cone"),
            )]);
        }
        if chi != 1 || !is_point_homology(&h) {
            report.add_violations(vec![Violation::new(
                "block-contractible",
                format!("local development at `{key}` has chi {chi} or nontrivial homology"),
            )]);
        }
        summary.insert(
            key,
            json!({
                "objects": dev.scwol().object_count(),
                "arrows": dev.scwol().arrow_count(),
                "pairs": dev.scwol().composable_tuples(2).len(),
                "apex": apex.map(|a| delta.label(0, a).to_string()),
                "chi": chi,
                "homology": homology_json(&h),
            }),
        );
    }
    report.put("blocks", Value::Object(summary));
    Ok(report)
}

fn cmd_roundtrip(
    path: &Path,
    action: Option<&str>,
    policy: ChoicePolicy,
    budget: u64,
) -> Result<Report> {
    let (project, digest) = load(path)?;
    let chosen: Vec<(&str, &crate::action::SimplicialAction)> = match action {
        Some(_) => vec![pick(&project.actions, "action", "actions", action)?],
        None => project
            .actions
            .iter()
            .map(|(k, v)| (k.as_str(), v))
            .collect(),
    };
    if chosen.is_empty() {
        return Err(Error::ProjectData {
            path: "/actions".into(),
            message: "the file defines no actions to round-trip".into(),
        });
    }
    let mut report = Report::new("roundtrip", digest);
    report.put("policy", policy.label());
    let mut summary = serde_json::Map::new();
    for (name, act) in chosen {
        let result = roundtrip(act, policy, budget)?;
        let mut entry = serde_json::Map::new();
        entry.insert("recovered".into(), json!(result.recovered()));
        entry.insert(
            "subdivisions".into(),
            json!(result.induced.record.subdivisions),
        );
        entry.insert(
            "nontrivial_twists".into(),
            json!(result.induced.cog.twist_entries().len()),
        );
        if let Some(iso) = &result.iso {
            let dev_side = GScwol::of_development(&result.development);
            let act_side = GScwol::of_action(&result.induced.action);
            let witness: serde_json::Map<String, Value> = iso
                .object_map
                .iter()
                .enumerate()
                .map(|(o, &img)| {
                    (
                        dev_side.scwol().object_name(o).to_string(),
                        json!(act_side.scwol().object_name(img)),
                    )
                })
                .collect();
            entry.insert("witness".into(), Value::Object(witness));
        } else {
            report.add_violations(vec![Violation::new(
                "roundtrip-recovery",
                format!("development of the complex induced from `{name}` is not equivariantly isomorphic to the action"),
            )]);
        }
        summary.insert(name.to_string(), Value::Object(entry));
    }
    report.put("actions", Value::Object(summary));
    Ok(report)
}

fn cmd_assemble(
    path: &Path,
    cog: Option<&str>,
    simplex: &str,
    fibres: FibreKind,
) -> Result<Report> {
    let (project, digest) = load(path)?;
    let (cog_name, cog) = pick(&project.cogs, "cog", "cogs", cog)?;
    let sigma = cog.base().object_id(simplex)?;
    let mut report = Report::new("assemble", digest);
    report.put("cog", cog_name);
    report.put("simplex", simplex);
    report.put("fibres", fibres.label());
    let system = default_fibres(cog, fibres);
    let e = match assemble_E(cog, sigma, &system) {
        Ok(e) => e,
        Err(Error::NotWellDefined(witness)) => {
            report.add_violations(vec![Violation::new("assembly", witness)]);
            return Ok(report);
        }
        Err(other) => return Err(other),
    };
    report.put("counts", e.counts());
    report.put("cells", cell_tables(&e));
    if fibres == FibreKind::Point {
        let ours = homology(&cubical_chain_complex(&e)?);
        let dev = local_development(cog, sigma)?;
        let theirs = homology(&chain_from_delta(&crate::delta::realize(dev.scwol()))?);
        report.put("homology", homology_json(&ours));
        if ours != theirs {
            report.add_violations(vec![Violation::new(
                "assembly-homology",
                format!(
                    "cubical homology disagrees with the realization of the local development at `{simplex}`"
                ),
            )]);
        }
    }
    Ok(report)
}

fn cmd_compat_check(path: &Path, cog: Option<&str>, fibres: FibreKind) -> Result<Report> {
    let (project, digest) = load(path)?;
    let (cog_name, cog) = pick(&project.cogs, "cog", "cogs", cog)?;
    let mut report = Report::new("compat-check", digest);
    report.put("cog", cog_name);
    report.put("fibres", fibres.label());
    match build_compatible_system(cog, fibres) {
        Ok(system) => {
            let spaces: serde_json::Map<String, Value> = (0..cog.base().object_count())
                .map(|o| {
                    (
                        cog.base().object_name(o).to_string(),
                        json!(system.space(o).counts()),
                    )
                })
                .collect();
            report.put("spaces", Value::Object(spaces));
            report.put("embeddings", cog.base().arrow_count());
            report.put("nontrivial_twists", cog.twist_entries().len());
        }
        Err(Error::NotWellDefined(witness)) => {
            report.add_violations(vec![Violation::new("compatibility", witness)]);
        }
        Err(other) => return Err(other),
    }
    Ok(report)
}

fn cmd_homology(path: &Path, name: Option<&str>) -> Result<Report> {
    let (project, digest) = load(path)?;
    let mut report = Report::new("homology", digest);
    let mut summary = serde_json::Map::new();
    let add_complex = |summary: &mut serde_json::Map<String, Value>,
                           name: &str,
                           k: &crate::simplicial::SimplicialComplex|
     -> Result<()> {
        let delta = crate::delta::realize(&crate::scwol::scwol_of_complex(k));
        let h = homology(&chain_from_delta(&delta)?);
        summary.insert(name.to_string(), json!(homology_json(&h)));
        Ok(())
    };
    let add_witness = |summary: &mut serde_json::Map<String, Value>,
                           name: &str,
                           w: &crate::cog::MorphismToGroup|
     -> Result<()> {
        let dev = develop(w)?;
        let h = homology(&chain_from_delta(&crate::delta::realize(dev.scwol()))?);
        summary.insert(name.to_string(), json!(homology_json(&h)));
        Ok(())
    };
    match name {
        Some(n) => {
            if let Some(k) = project.complexes.get(n) {
                add_complex(&mut summary, n, k)?;
            } else if let Some(w) = project.witnesses.get(n) {
                add_witness(&mut summary, n, w)?;
            } else {
                return Err(Error::UnresolvedRef {
                    path: format!("/complexes/{n}"),
                    kind: "complex or witness",
                    name: n.to_string(),
                });
            }
        }
        None => {
            for (n, k) in &project.complexes {
                add_complex(&mut summary, n, k)?;
            }
            for (n, w) in &project.witnesses {
                add_witness(&mut summary, n, w)?;
            }
        }
    }
    report.put("homology", Value::Object(summary));
    Ok(report)
}

/// The built-in corpus: file name → project document.
pub fn corpus() -> Vec<(&'static str, ProjectDoc)> {
    let mut out = Vec::new();

    let seg = fixtures::segment();
    let seg_witness = fixtures::segment_witness();
    let mut b = ProjectBuilder::new();
    let u = seg.base().object_id("u").expect("segment has vertex u");
    let w = seg.base().object_id("w").expect("segment has vertex w");
    b.group("c2", seg.group(u));
    b.group("c3", seg.group(w));
    b.group("c6", seg_witness.target());
    b.complex("seg", seg.complex().expect("segment is simplicial"));
    b.cog("seg", &seg).expect("segment cog serializes");
    b.witness("c6-witness", &seg_witness)
        .expect("segment witness serializes");
    out.push(("seg.json", b.finish()));

    let tri3 = fixtures::triangle_with_c2_vertex();
    let v = tri3.base().object_id("v").expect("triangle has vertex v");
    let mut b = ProjectBuilder::new();
    b.group("c2", tri3.group(v));
    b.complex("triangle", tri3.complex().expect("tri3 is simplicial"));
    b.cog("tri3", &tri3).expect("tri3 cog serializes");
    out.push(("tri3.json", b.finish()));

    let path_act = fixtures::path_swap_action();
    let mut b = ProjectBuilder::new();
    b.group("c2-swap", path_act.group());
    b.complex("path", path_act.complex());
    b.action("path-act", &path_act);
    out.push(("path-act.json", b.finish()));

    let hex = fixtures::twelve_cycle_rotation();
    let mut b = ProjectBuilder::new();
    b.group("c6-rot", hex.group());
    b.complex("twelve-cycle", hex.complex());
    b.action("hex-c6", &hex);
    out.push(("hex-c6.json", b.finish()));

    let s3_act = fixtures::subdivided_triangle_s3();
    let twisted = fixtures::twisted_triangle();
    let mut b = ProjectBuilder::new();
    b.group("s3", s3_act.group());
    b.complex("subdivided-triangle", s3_act.complex());
    b.action("s3-subdiv", &s3_act);
    b.complex("quotient", twisted.cog.complex().expect("quotient is simplicial"));
    b.cog("twist", &twisted.cog).expect("twist cog serializes");
    b.witness("twist-witness", &twisted.morphism)
        .expect("twist witness serializes");
    out.push(("twist.json", b.finish()));

    out
}

fn cmd_fixtures(out_dir: &Path) -> Result<Report> {
    std::fs::create_dir_all(out_dir)?;
    let mut report = Report::new("fixtures", digest_bytes(b""));
    let mut written = serde_json::Map::new();
    for (file, doc) in corpus() {
        let mut text = doc.to_json_string()?;
        text.push('\n');
        std::fs::write(out_dir.join(file), &text)?;
        written.insert(file.to_string(), json!(digest_bytes(text.as_bytes())));
    }
    report.put("files", Value::Object(written));
    Ok(report)
}
