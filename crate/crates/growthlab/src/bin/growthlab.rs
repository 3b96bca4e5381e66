//! CLI workbench: seeded verification campaigns, growth scans, extremal
//! constructions, and function-field separability reports.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use growthlab::harness::{self, Campaign, Family};
use growthlab::{ffield, incidence};

#[derive(Parser)]
#[command(name = "growthlab", version, about = "exact-arithmetic workbench for growth and incidence geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign from a key=value config file
    Verify {
        #[arg(long)]
        campaign: String,
    },
    /// Scan image-set sizes and realized exponents over a size range
    Growth {
        #[arg(long)]
        family: String,
        #[arg(long)]
        field: String,
        /// inclusive range, e.g. 4..32
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// write CSV here instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Emit a named extremal construction as JSON
    Construct {
        /// construction name: extremal-grid | elekes | bg-set
        name: String,
        #[arg(long, default_value_t = 8)]
        n: u64,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Function-field tools
    Ff {
        #[command(subcommand)]
        sub: FfCommand,
    },
}

#[derive(Subcommand)]
enum FfCommand {
    /// Decide separability of a set literal read from a file
    Separable {
        #[arg(long)]
        set: String,
    },
}

fn run() -> growthlab::Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { campaign } => {
            let text = std::fs::read_to_string(&campaign)
                .map_err(|e| growthlab::Error::IoFailure(format!("{campaign}: {e}")))?;
            let c = Campaign::parse(&text)?;
            let report = harness::run_campaign(&c)?;
            println!(
                "{} rows, {} hard violations",
                report.summary.rows, report.summary.violations
            );
            for (lemma, stat) in &report.summary.per_lemma {
                println!(
                    "  {lemma}: rows={} violations={} medianRatio={}",
                    stat.rows, stat.violations, stat.median_ratio
                );
            }
            Ok(report.summary.violations == 0)
        }
        Command::Growth { family, field, sizes, seed, out } => {
            let family: Family = family.parse()?;
            let field = harness::parse_cli_field(&field)?;
            let (lo, hi) = sizes
                .split_once("..")
                .ok_or_else(|| growthlab::Error::SpecInvalid("sizes must be lo..hi".into()))?;
            let lo: usize =
                lo.parse().map_err(|_| growthlab::Error::SpecInvalid("bad size".into()))?;
            let hi: usize =
                hi.parse().map_err(|_| growthlab::Error::SpecInvalid("bad size".into()))?;
            let csv = harness::growth_scan(family, &field, (lo, hi), seed)?;
            match out {
                Some(path) => std::fs::write(&path, csv)
                    .map_err(|e| growthlab::Error::IoFailure(format!("{path}: {e}")))?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Command::Construct { name, n, field, seed } => {
            let field = harness::parse_cli_field(&field)?;
            let json = match name.as_str() {
                "extremal-grid" => incidence::extremal_grid(&field, n)?.to_json(),
                "elekes" => {
                    let set = match harness::generate(Family::Random, &field, n as usize, seed)? {
                        harness::Generated::Set(s) => s,
                        _ => unreachable!(),
                    };
                    let (inst, cert) = incidence::elekes_config(&set)?;
                    serde_json::json!({"instance": inst.to_json(), "certificate": cert.to_json()})
                }
                "bg-set" => {
                    let p = match &field {
                        growthlab::field::FieldSpec::Prime(c) => c.p(),
                        _ => return Err(growthlab::Error::SpecInvalid("bg-set needs F_p".into())),
                    };
                    let (set, cert) = incidence::bourgain_garaev_set(p, n)?;
                    serde_json::json!({"set": set.to_string(), "certificate": cert.to_json()})
                }
                other => {
                    return Err(growthlab::Error::SpecInvalid(format!(
                        "unknown construction: {other}"
                    )))
                }
            };
            println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
            Ok(true)
        }
        Command::Ff { sub } => match sub {
            FfCommand::Separable { set } => {
                let text = std::fs::read_to_string(&set)
                    .map_err(|e| growthlab::Error::IoFailure(format!("{set}: {e}")))?;
                let parsed = growthlab::set::parse_set(text.trim())?;
                let report = ffield::is_separable(&parsed)?;
                let dendro = ffield::Dendrogram::build(&parsed)?;
                let json = serde_json::json!({
                    "set": parsed.to_string(),
                    "separable": report.separable,
                    "ordering": report.ordering.map(|o| o.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
                    "balls": report.balls.map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    "violation": report.violation.map(|v| v.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
                    "dendrogram": dendro.to_json(),
                });
                println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
                Ok(true)
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
