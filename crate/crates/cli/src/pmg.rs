use std::path::{Path, PathBuf};

use clap::Subcommand;
use pmtk_core::premetric::{Degeneracy, FormSpec, PreMetricGroup, ReductiveCase};
use serde_json::{json, Value};

use crate::report::{element, qz_json, subgroup_json, subgroup_text, CliError, CliResult, Report};

#[derive(Subcommand, Debug)]
pub enum PmgCommand {
    /// Light cone, radical, coradical, reductivity and mantle of each form.
    Analyze { files: Vec<PathBuf> },
    /// Localization at the radical.
    Mantle { files: Vec<PathBuf> },
    /// Localization at a maximal isotropic subgroup, checked against all choices.
    Core { files: Vec<PathBuf> },
    /// Isomorphism test between two forms, with an explicit map when one exists.
    Iso { a: PathBuf, b: PathBuf },
    /// Reference-table label of an anisotropic form.
    Classify { files: Vec<PathBuf> },
    /// Case of a reductive pre-metric 2-group.
    Classify2 { files: Vec<PathBuf> },
}

pub fn load(path: &Path, cap: Option<u64>) -> CliResult<PreMetricGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let spec: FormSpec =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let p = spec.build()?;
    Ok(match cap {
        Some(c) => p.with_cap(c),
        None => p,
    })
}

fn form_json(p: &PreMetricGroup) -> Value {
    serde_json::to_value(FormSpec::raw(p)).expect("form serializes")
}

fn header(r: &mut Report, path: &Path, p: &PreMetricGroup) {
    r.line(format!("{}:", path.display()));
    r.data("file", json!(path.display().to_string()), "input");
    r.field("group", "group", p.group(), json!(p.group().invariant_factors()), "build_premetric");
    r.field("order", "order", p.order(), json!(p.order()), "build_premetric");
    let q = r.qz_list(p.q_gens());
    r.field("q_gens", "q on generators", q, qz_json(p.q_gens()), "build_premetric");
}

fn degeneracy_json(p: &PreMetricGroup, d: &Degeneracy) -> (String, Value) {
    match d {
        Degeneracy::Nondegenerate => ("nondegenerate".into(), json!({"class": "nondegenerate"})),
        Degeneracy::SlightlyDegenerate { fermion } => (
            format!("slightly degenerate, fermion {}", element(p.group(), *fermion)),
            json!({"class": "slightly_degenerate", "fermion": p.group().element(*fermion)}),
        ),
        Degeneracy::TannakianRadical(h) | Degeneracy::Other(h) => (
            format!("{} (kernel of b: {})", d.name().replace('_', " "), subgroup_text(h)),
            json!({"class": d.name(), "kernel": subgroup_json(h)}),
        ),
    }
}

fn case_json(p: &PreMetricGroup, case: &ReductiveCase) -> (String, Value) {
    match case {
        ReductiveCase::Split(w) => (
            format!(
                "3 (metric part {}; anisotropic part {})",
                subgroup_text(&w.metric_part),
                subgroup_text(&w.anisotropic_part)
            ),
            json!({
                "case": 3,
                "metric_part": subgroup_json(&w.metric_part),
                "anisotropic_part": subgroup_json(&w.anisotropic_part),
                "metric_form": form_json(&p.restrict(&w.metric_part).expect("subgroup of the form").0),
                "anisotropic_form": form_json(&p.restrict(&w.anisotropic_part).expect("subgroup of the form").0),
            }),
        ),
        other => (other.number().to_string(), json!({"case": other.number()})),
    }
}

fn analyze(r: &mut Report, path: &Path, p: &PreMetricGroup) -> CliResult<()> {
    header(r, path, p);
    let (d_text, d_json) = degeneracy_json(p, &p.degeneracy_class());
    r.field("degeneracy", "degeneracy", d_text, d_json, "degeneracy_class");
    let cone = p.light_cone();
    r.field("light_cone_size", "light cone size", cone.len(), json!(cone.len()), "light_cone");
    r.data("light_cone", json!(cone.iter().map(|&x| p.group().element(x)).collect::<Vec<_>>()), "light_cone");
    r.field("anisotropic", "anisotropic", p.is_anisotropic(), json!(p.is_anisotropic()), "is_anisotropic");
    let fermions = p.fermions();
    r.field("fermions", "fermions", fermions.len(), json!(fermions.len()), "fermions");
    let radical = p.radical_subgroup()?;
    r.field("radical", "radical", subgroup_text(&radical), subgroup_json(&radical), "radical_subgroup");
    let corad = p.coradical_subgroup();
    r.field("coradical", "coradical", subgroup_text(&corad), subgroup_json(&corad), "coradical_subgroup");
    let ig = p.is_isotropically_generated();
    let ig2 = p.is_isotropically_generated_criterion()?;
    if ig != ig2 {
        return Err(CliError::Domain(pmtk_core::error::Error::Internal(
            "closure and criterion disagree on isotropic generation".into(),
        )));
    }
    r.field("isotropically_generated", "isotropically generated", ig, json!(ig), "is_isotropically_generated");
    let reductive = p.is_reductive()?;
    r.field("reductive", "reductive", reductive, json!(reductive), "is_reductive");
    let mantle = p.mantle()?;
    r.field("mantle_group", "mantle", mantle.group(), json!(mantle.group().invariant_factors()), "mantle");
    r.data("mantle_form", form_json(&mantle), "mantle");
    if reductive {
        if let Ok(t) = p.decomposition_type() {
            r.field("decomposition_type", "decomposition type", t, json!(t.to_string()), "decomposition_type");
        }
        if p.order().is_power_of_two() {
            match p.classify_reductive_2group() {
                Ok(case) => {
                    let (t, j) = case_json(p, &case);
                    r.field("case_2group", "2-group case", t, j, "classify_reductive_2group");
                }
                Err(e) => r.field("case_2group", "2-group case", format!("none ({e})"), Value::Null, "classify_reductive_2group"),
            }
        }
    }
    Ok(())
}

pub fn run(cmd: &PmgCommand, r: &mut Report, cap: Option<u64>) -> CliResult<()> {
    match cmd {
        PmgCommand::Analyze { files } => each(files, r, cap, analyze),
        PmgCommand::Mantle { files } => each(files, r, cap, |r, path, p| {
            header(r, path, p);
            let radical = p.radical_subgroup()?;
            r.field("radical", "radical", subgroup_text(&radical), subgroup_json(&radical), "radical_subgroup");
            let m = p.mantle()?;
            r.field("mantle_group", "mantle group", m.group(), json!(m.group().invariant_factors()), "mantle");
            let q = r.qz_list(m.q_gens());
            r.field("mantle_q_gens", "mantle q on generators", q, qz_json(m.q_gens()), "mantle");
            r.data("mantle_form", form_json(&m), "mantle");
            Ok(())
        }),
        PmgCommand::Core { files } => each(files, r, cap, |r, path, p| {
            header(r, path, p);
            let max = p.maximal_isotropic_subgroups()?;
            r.field("maximal_isotropic", "maximal isotropic subgroups", max.len(), json!(max.len()), "maximal_isotropic_subgroups");
            let c = p.core_verified()?;
            r.field("core_group", "core group", c.group(), json!(c.group().invariant_factors()), "core");
            let q = r.qz_list(c.q_gens());
            r.field("core_q_gens", "core q on generators", q, qz_json(c.q_gens()), "core");
            r.field("choice_independent", "independent of the choice", true, json!(true), "core");
            r.data("core_form", form_json(&c), "core");
            Ok(())
        }),
        PmgCommand::Iso { a, b } => {
            let pa = load(a, cap)?;
            let pb = load(b, cap)?;
            r.line(format!("{} vs {}:", a.display(), b.display()));
            match pa.are_isomorphic(&pb)? {
                Some(map) => {
                    r.field("isomorphic", "result", "isomorphic", json!(true), "are_isomorphic");
                    let g = pa.group();
                    let images: Vec<(usize, usize)> =
                        (0..g.rank()).map(|i| g.generator(i)).map(|x| (x, map.apply(x))).collect();
                    for &(x, y) in &images {
                        r.line(format!("  {} -> {}", element(g, x), element(pb.group(), y)));
                    }
                    r.data(
                        "map",
                        json!(images
                            .iter()
                            .map(|&(x, y)| json!({"from": g.element(x), "to": pb.group().element(y)}))
                            .collect::<Vec<_>>()),
                        "are_isomorphic",
                    );
                }
                None => r.field("isomorphic", "result", "not isomorphic", json!(false), "are_isomorphic"),
            }
            r.finish_item();
            Ok(())
        }
        PmgCommand::Classify { files } => each(files, r, cap, |r, path, p| {
            header(r, path, p);
            let label = p.classify_anisotropic()?;
            r.field("row", "row", &label.row, json!(label.row), "classify_anisotropic");
            r.field("table", "table", format!("{:?}", label.table), json!(format!("{:?}", label.table)), "classify_anisotropic");
            let params = r.qz_list(&label.parameters);
            r.field("parameters", "parameters", params, qz_json(&label.parameters), "classify_anisotropic");
            let mut values = p.q_multiset();
            values.sort();
            let shown = r.qz_list(&values);
            r.field("q_multiset", "q values", shown, qz_json(&values), "q_multiset");
            Ok(())
        }),
        PmgCommand::Classify2 { files } => each(files, r, cap, |r, path, p| {
            header(r, path, p);
            let case = p.classify_reductive_2group()?;
            let (t, j) = case_json(p, &case);
            r.field("case", "case", t, j, "classify_reductive_2group");
            Ok(())
        }),
    }
}

fn each(
    files: &[PathBuf],
    r: &mut Report,
    cap: Option<u64>,
    f: impl Fn(&mut Report, &Path, &PreMetricGroup) -> CliResult<()>,
) -> CliResult<()> {
    if files.is_empty() {
        return Err(CliError::Parse("at least one input file is required".into()));
    }
    for path in files {
        let p = load(path, cap)?;
        f(r, path, &p)?;
        r.finish_item();
    }
    Ok(())
}
