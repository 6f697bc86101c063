use clap::Subcommand;
use pmtk_core::abelian::FinAbGroup;
use pmtk_core::doubles::{cyclic_cohomology, CyclicModule};
use serde_json::json;

use crate::report::{CliError, CliResult, Report};

#[derive(Subcommand, Debug)]
pub enum CohomCommand {
    /// Cohomology of Z/m with coefficients in a finite module or in k^×.
    Cyclic {
        #[arg(long)]
        m: u64,
        /// `units` for k^×, or comma-separated invariant factors such as `7,7`.
        #[arg(long)]
        module: String,
        /// Action of the generator as a JSON matrix whose columns are the
        /// images of the standard generators; identity when omitted.
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        degree: u32,
    },
}

fn parse_module(module: &str, action: Option<&str>) -> CliResult<CyclicModule> {
    if module == "units" {
        if action.is_some() {
            return Err(CliError::Parse("k^× carries the trivial action; drop --action".into()));
        }
        return Ok(CyclicModule::UnitCircle);
    }
    let factors = module
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Parse(format!("module {module:?}: {e}")))?;
    let group = FinAbGroup::new(factors)?;
    Ok(match action {
        None => CyclicModule::trivial_action(group),
        Some(a) => {
            let action: Vec<Vec<i64>> =
                serde_json::from_str(a).map_err(|e| CliError::Parse(format!("action {a:?}: {e}")))?;
            CyclicModule::Finite { group, action }
        }
    })
}

pub fn run(cmd: &CohomCommand, r: &mut Report) -> CliResult<()> {
    let CohomCommand::Cyclic { m, module, action, degree } = cmd;
    let coeffs = parse_module(module, action.as_deref())?;
    let h = cyclic_cohomology(*m, &coeffs, *degree)?;
    r.line(format!("H^{degree}(Z/{m}, {module}):"));
    r.field("m", "m", m, json!(m), "cyclic_cohomology");
    r.field("degree", "degree", degree, json!(degree), "cyclic_cohomology");
    r.field("group", "group", &h, json!(h.invariant_factors()), "cyclic_cohomology");
    r.field("order", "order", h.order(), json!(h.order()), "cyclic_cohomology");
    Ok(())
}
