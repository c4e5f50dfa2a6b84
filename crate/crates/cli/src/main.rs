mod select;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gerbe_core::centers::{bundled_levels, LevelTable};
use gerbe_core::obstruction::{classical_name, corollary_table, obstruction_report};
use gerbe_core::{GroupData, LieType};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gerbe", version, about = "Levels and equivariance obstructions for basic gerbes on compact simple Lie groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Basic and fundamental level of G/Z.
    Levels {
        #[command(flatten)]
        group: GroupArgs,
        /// Fundamental level data file (defaults to the bundled table).
        #[arg(long)]
        ellf_data: Option<PathBuf>,
    },
    /// Whether the level-l basic gerbe admits a Z-equivariant extension.
    Obstruction {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Relative tolerance for the finite-difference checks.
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Table comparing basic and fundamental levels with the list of quotients
    /// whose basic gerbe extends equivariantly.
    Corollary {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long = "max-N", alias = "max-n", default_value_t = 12)]
        max_n: usize,
        #[arg(long)]
        ellf_data: Option<PathBuf>,
    },
}

/// `FAMILY RANK SUBGROUP` positionally, or through the flags.
#[derive(Args)]
struct GroupArgs {
    #[arg(value_name = "FAMILY")]
    family_pos: Option<String>,
    #[arg(value_name = "RANK")]
    rank_pos: Option<usize>,
    #[arg(value_name = "SUBGROUP")]
    subgroup_pos: Option<String>,
    #[arg(long, conflicts_with = "family_pos")]
    family: Option<String>,
    #[arg(long, conflicts_with = "rank_pos")]
    rank: Option<usize>,
    #[arg(long, conflicts_with = "subgroup_pos")]
    subgroup: Option<String>,
}

struct Usage(String);

impl GroupArgs {
    fn resolve(&self, levels: &LevelTable) -> Result<(GroupData, usize), Usage> {
        let family = self
            .family
            .as_ref()
            .or(self.family_pos.as_ref())
            .ok_or_else(|| Usage("missing family".into()))?;
        let rank = self.rank.or(self.rank_pos).ok_or_else(|| Usage("missing rank".into()))?;
        let selector = self.subgroup.as_deref().or(self.subgroup_pos.as_deref()).unwrap_or("full");
        let t: LieType = format!("{family}{rank}").parse().map_err(|e: gerbe_core::GerbeError| Usage(e.to_string()))?;
        let data = GroupData::new(t).with_levels(levels);
        let id = select::resolve(&data, selector).map_err(Usage)?;
        Ok((data, id))
    }
}

fn load_levels(path: Option<&PathBuf>) -> Result<LevelTable, Usage> {
    match path {
        None => Ok(bundled_levels().clone()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Usage(format!("{}: {e}", p.display())))?;
            LevelTable::parse(&text).map_err(|e| Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn markdown_record(v: &Value) -> String {
    let mut out = String::from("| field | value |\n|---|---|\n");
    if let Value::Object(map) = v {
        for (k, x) in map {
            let s = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("| {k} | {s} |\n"));
        }
    }
    out
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => println!("{v}"),
        Format::Md => print!("{}", markdown_record(v)),
    }
}

fn levels_record(data: &GroupData, id: usize) -> Value {
    let z = &data.subgroups[id];
    json!({
        "group": classical_name(data, z),
        "lie_type": data.rs.lie_type.to_string(),
        "center_invariants": data.center.group.invariant_factors,
        "subgroup": z.id,
        "subgroup_order": z.order(),
        "subgroup_invariants": z.invariants.invariant_factors,
        "ell_b": z.ell_b,
        "ell_f": z.ell_f.as_ref().map(|d| d.value),
        "provenance": {
            "ell_b": "computed",
            "ell_f": z.ell_f.as_ref().map(|d| format!("external data ({})", d.source)),
        },
    })
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    match cli.command {
        Command::Levels { group, ellf_data } => {
            let levels = load_levels(ellf_data.as_ref())?;
            let (data, id) = group.resolve(&levels)?;
            emit(cli.format, &levels_record(&data, id));
        }
        Command::Obstruction { group, level } => {
            let (data, id) = group.resolve(bundled_levels())?;
            let rep = obstruction_report(&data, &data.subgroups[id], level).map_err(|e| Usage(e.to_string()))?;
            emit(cli.format, &serde_json::to_value(rep).expect("plain data"));
        }
        Command::Verify {
            suite,
            seed,
            tol,
            max_rank,
        } => {
            if !(tol > 0.0) {
                return Err(Usage("tolerance must be positive".into()));
            }
            let opts = verify::Options { seed, tol, max_rank };
            let records = verify::run(suite, &opts);
            let failed = records.iter().filter(|r| !verify::passed(r)).count();
            for r in &records {
                println!("{r}");
            }
            println!(
                "{}",
                json!({ "suite": format!("{suite:?}").to_lowercase(), "checks": records.len(), "failed": failed, "passed": failed == 0 })
            );
            return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Corollary {
            max_rank,
            max_n,
            ellf_data,
        } => {
            let levels = load_levels(ellf_data.as_ref())?;
            let table = corollary_table(max_rank, max_n, Some(&levels)).map_err(|e| Usage(e.to_string()))?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&table).expect("plain data")),
                Format::Md => print!("{}", table.to_markdown()),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
