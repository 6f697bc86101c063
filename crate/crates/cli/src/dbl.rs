use std::path::{Path, PathBuf};

use clap::Subcommand;
use pmtk_core::doubles::*;
use pmtk_core::error::Error;
use serde_json::{json, Value};

use crate::report::{CliError, CliResult, Report};

#[derive(Subcommand, Debug)]
pub enum DblCommand {
    /// Lagrangian subcategories grouped by their normal abelian support.
    Lagrangians { file: PathBuf },
    /// The subgroup generated by admissible normal abelian subgroups, radical group and mantle.
    Radical { file: PathBuf },
    /// Obstruction verdicts for normal abelian subgroups.
    Omega {
        file: PathBuf,
        /// Comma-separated element indices of one subgroup; all normal abelian subgroups when omitted.
        #[arg(long, value_delimiter = ',')]
        subgroup: Option<Vec<usize>>,
    },
    /// Orbit count of non-pointed reductive doubles of (Z/p)³.
    Orbits {
        #[arg(long)]
        p: u64,
    },
    /// Support and weight of a cocycle on (Z/2)³.
    Support { file: PathBuf },
}

pub fn load(path: &Path, cap: Option<u64>) -> CliResult<Cocycle3> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let spec: DoubleSpec =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let w = spec.build()?;
    if let Some(c) = cap {
        let n = w.group().order() as u64;
        if n > c {
            return Err(CliError::Domain(Error::CapExceeded { order: n, cap: c }));
        }
    }
    Ok(w)
}

fn names(g: &FinGroup, xs: &[usize]) -> String {
    format!("{{{}}}", xs.iter().map(|&x| g.name(x)).collect::<Vec<_>>().join(", "))
}

fn header(r: &mut Report, path: &Path, w: &Cocycle3) {
    r.line(format!("{}:", path.display()));
    r.data("file", json!(path.display().to_string()), "input");
    let n = w.group().order();
    r.field("group_order", "group order", n, json!(n), "build_group");
    r.field("cocycle_zero", "cocycle is zero", w.is_zero(), json!(w.is_zero()), "validate_cocycle");
}

fn alt_form_json(b: &AltForm) -> Value {
    json!({
        "basis": b.basis,
        "factors": b.factors,
        "entries": b.entries.iter().map(|&(i, j, x)| json!([i, j, x])).collect::<Vec<_>>(),
    })
}

fn alt_form_text(g: &FinGroup, b: &AltForm) -> String {
    if b.entries.iter().all(|&(_, _, x)| x == 0) {
        return "B = 0".into();
    }
    let terms: Vec<String> = b
        .entries
        .iter()
        .filter(|e| e.2 != 0)
        .map(|&(i, j, x)| format!("B({}, {}) = {x}/{}", g.name(b.basis[i]), g.name(b.basis[j]), gcd(b.factors[i], b.factors[j])))
        .collect();
    terms.join(", ")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn omega_one(r: &mut Report, w: &Cocycle3, n: &[usize]) -> CliResult<()> {
    let g = w.group();
    r.line(format!("  N = {}:", names(g, n)));
    r.data("subgroup", json!(n), "normal_abelian_subgroups");
    let class = match m_class(w, n) {
        Ok(c) => c,
        Err(Error::RestrictionNontrivial) => {
            r.field("restriction_trivial", "  restriction of the cocycle trivial", false, json!(false), "cocycle_trivial_on");
            r.field("in_omega", "  admissible", false, json!(false), "omega_in_Omega");
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    r.field("restriction_trivial", "  restriction of the cocycle trivial", true, json!(true), "cocycle_trivial_on");
    match obstruction_vanishes(w, &class)? {
        Some(b) => {
            r.field("in_omega", "  admissible", true, json!(true), "omega_in_Omega");
            r.field("witness", "  witness", alt_form_text(g, &b), alt_form_json(&b), "obstruction_vanishes");
        }
        None => r.field("in_omega", "  admissible", false, json!(false), "omega_in_Omega"),
    }
    Ok(())
}

pub fn run(cmd: &DblCommand, r: &mut Report, cap: Option<u64>) -> CliResult<()> {
    match cmd {
        DblCommand::Lagrangians { file } => {
            let w = load(file, cap)?;
            header(r, file, &w);
            let census = lagrangian_census(&w)?;
            let g = w.group();
            for e in &census.entries {
                let verdict = if e.obstruction_ok { format!("torsor size {}", e.torsor_size) } else { "obstructed".into() };
                r.line(format!("  N = {}: {verdict}", names(g, &e.subgroup)));
            }
            r.data("entries", serde_json::to_value(&census.entries).expect("census serializes"), "lagrangian_census");
            r.field("total", "total Lagrangian subcategories", census.total, json!(census.total), "lagrangian_census");
        }
        DblCommand::Radical { file } => {
            let w = load(file, cap)?;
            header(r, file, &w);
            let rep = radical_and_mantle(&w)?;
            let g = w.group();
            r.field("n_omega", "generated admissible subgroup", names(g, &rep.n_omega), json!(rep.n_omega), "n_omega");
            let rg = rep.radical_group.order();
            r.field("radical_group_order", "radical group order", rg, json!(rg), "radical_and_mantle");
            r.field("radical_group_abelian", "radical group abelian", rep.radical_group.is_abelian(), json!(rep.radical_group.is_abelian()), "radical_and_mantle");
            r.data("projection", json!(rep.projection), "radical_and_mantle");
            let mg = rep.mantle_group.order();
            r.field("mantle_group_order", "mantle group order", mg, json!(mg), "radical_and_mantle");
            let mz = rep.mantle_cocycle.is_zero();
            r.field("mantle_cocycle_zero", "mantle cocycle is zero", mz, json!(mz), "radical_and_mantle");
            r.field("reductive", "reductive", rep.reductive, json!(rep.reductive), "radical_and_mantle");
        }
        DblCommand::Omega { file, subgroup } => {
            let w = load(file, cap)?;
            header(r, file, &w);
            let g = w.group().clone();
            let subs = match subgroup {
                Some(s) => {
                    let mut s = s.clone();
                    s.sort_unstable();
                    s.dedup();
                    if s.iter().any(|&x| x >= g.order()) || !g.is_subgroup(&s) {
                        return Err(CliError::Domain(Error::InvalidInput("not a subgroup".into())));
                    }
                    if !g.is_normal(&s) || !g.is_abelian_subset(&s) {
                        return Err(CliError::Domain(Error::InvalidInput("subgroup must be normal and abelian".into())));
                    }
                    vec![s]
                }
                None => g.normal_abelian_subgroups(),
            };
            r.finish_item();
            for n in subs {
                omega_one(r, &w, &n)?;
                r.finish_item();
            }
        }
        DblCommand::Orbits { p } => {
            let rep = ep3_orbits(*p)?;
            r.line(format!("p = {p}:"));
            r.field("p", "p", p, json!(p), "ep3_orbit_count");
            r.field("count", "orbits", rep.count, json!(rep.count), "ep3_orbit_count");
            let sizes = rep.orbit_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ");
            r.field("orbit_sizes", "orbit sizes", sizes, json!(rep.orbit_sizes), "ep3_orbit_count");
            r.data("representatives", serde_json::to_value(&rep.representatives).expect("orbits serialize"), "ep3_orbit_count");
        }
        DblCommand::Support { file } => {
            let w = load(file, cap)?;
            header(r, file, &w);
            let (support, weight) = support_and_weight(&w)?;
            let g = w.group();
            r.field("support", "support", names(g, &support), json!(support), "support_and_weight");
            r.field("weight", "weight", weight, json!(weight), "support_and_weight");
            let complement: Vec<usize> = (1..g.order()).filter(|x| !support.contains(x)).collect();
            let spans = g.generated(&complement).len() == g.order();
            let ok = weight % 2 == 1 && spans;
            r.field("reductive_nonpointed", "non-pointed and reductive", ok, json!(ok), "support_and_weight");
        }
    }
    Ok(())
}
