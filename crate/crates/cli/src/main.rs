//! `linmatch`: match bases from instance files, run theorem sweeps, scan groups.
//!
//! Exit codes: 0 matched / no contradiction, 1 violation / contradiction, 2 error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use linmatch::group::{matching_property_scan, GroupDescriptor};
use linmatch::instance::Instance;
use linmatch::matching::{automatch, match_basis, MatchOutcome};
use linmatch::strong::{is_strong_matching, strong_matching_exists};
use linmatch::sweep::{run_sweep, SweepParams, SweepTask};
use linmatch::ExtensionField;

#[derive(Parser)]
#[command(
    name = "linmatch",
    version,
    about = "Matchings of subspaces in finite field extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON result here instead of standard output.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Match the source basis (default "A") to a basis of the target (default "B").
    Match {
        instance: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Match a basis of the target subspace (default "B") to itself.
    Automatch {
        instance: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether a strong matching exists; checks the task's phi when present.
    Strong {
        instance: PathBuf,
        #[arg(long, default_value_t = linmatch::enumerate::DEFAULT_CAP)]
        cap: u128,
        #[command(flatten)]
        out: Output,
    },
    /// Run a sweep: automatch, matchingProperty, strongMatching, refinement, olson,
    /// groups, criterion or transversal.
    Sweep(SweepArgs),
    /// Group matchings.
    Groups {
        #[command(subcommand)]
        command: GroupsCommand,
    },
}

#[derive(Args)]
struct SweepArgs {
    task: String,
    /// p,k or p,k,c0,...,ck with the modulus constant term first.
    #[arg(long)]
    field: Option<String>,
    /// A dimension n, or an inclusive range a..b.
    #[arg(long, default_value = "1")]
    dim: String,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = linmatch::enumerate::DEFAULT_CAP)]
    cap: u128,
    /// Comma-separated groups for the groups task, e.g. Z4,Z5,Z^2.
    #[arg(long)]
    groups: Option<String>,
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Box radius for Z^d.
    #[arg(long, default_value_t = 2)]
    radius: i64,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum GroupsCommand {
    /// Check all pairs |A| = |B| ≤ max-size with identity ∉ B; exit 1 when some pair has no matching.
    Scan {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long, default_value_t = linmatch::enumerate::DEFAULT_CAP)]
        cap: u128,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_field(s: &str) -> Result<ExtensionField> {
    let nums: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("bad --field {s:?}"))?;
    if nums.len() < 2 {
        bail!("--field needs p,k[,modulus coefficients]");
    }
    let modulus = (nums.len() > 2).then(|| &nums[2..]);
    Ok(ExtensionField::new(nums[0], nums[1] as usize, modulus)?)
}

fn parse_dims(s: &str) -> Result<Vec<usize>> {
    let bad = || anyhow!("bad --dim {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

fn emit<T: Serialize + ?Sized>(out: &Output, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match &out.json {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn summarize(rows: &[(&str, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        eprintln!("{k:<width$}  {v}");
    }
}

fn outcome_code(outcome: &MatchOutcome) -> u8 {
    if outcome.is_matched() {
        0
    } else {
        1
    }
}

fn report_outcome(outcome: &MatchOutcome, out: &Output) -> Result<u8> {
    emit(out, outcome)?;
    match outcome {
        MatchOutcome::Matched(c) => summarize(&[
            ("result", "matched".into()),
            ("source", format!("{:?}", c.source.vectors())),
            ("target", format!("{:?}", c.target.vectors())),
        ]),
        MatchOutcome::Violation(v) => summarize(&[
            ("result", "violation".into()),
            ("J", format!("{:?}", v.j)),
            ("dim V_J", v.vdim.to_string()),
            ("bound", v.bound.to_string()),
        ]),
    }
    Ok(outcome_code(outcome))
}

fn load(path: &Path) -> Result<Instance> {
    Instance::load(path).with_context(|| format!("loading {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Match { instance, out } => {
            let inst = load(&instance)?;
            let source = inst.basis(inst.source_name())?;
            let target = inst.subspace(inst.target_name())?;
            let outcome = match_basis(&inst.field, &source, target)?;
            report_outcome(&outcome, &out)
        }
        Command::Automatch { instance, out } => {
            let inst = load(&instance)?;
            let b = inst.subspace(inst.target_name())?;
            let basis_name = inst.task.source.as_deref().unwrap_or(inst.target_name());
            let basis = inst.basis(basis_name)?;
            let outcome = automatch(&inst.field, b, &basis)?;
            report_outcome(&outcome, &out)
        }
        Command::Strong { instance, cap, out } => {
            let inst = load(&instance)?;
            let a = inst.subspace(inst.source_name())?;
            let b = inst.subspace(inst.target_name())?;
            let exists = strong_matching_exists(&inst.field, a, b, cap)?;
            let phi_ok = match inst.phi() {
                Some(phi) => Some(is_strong_matching(&inst.field, &phi, a, b, cap)?),
                None => None,
            };
            emit(&out, &json!({"exists": exists, "phiIsStrong": phi_ok}))?;
            summarize(&[
                ("strong matching exists", exists.to_string()),
                (
                    "phi is strong",
                    phi_ok.map_or("-".into(), |x| x.to_string()),
                ),
            ]);
            Ok(if exists && phi_ok.unwrap_or(true) {
                0
            } else {
                1
            })
        }
        Command::Sweep(args) => {
            let task: SweepTask = args.task.parse()?;
            let field = args.field.as_deref().map(parse_field).transpose()?;
            let mut params = SweepParams::new(field, parse_dims(&args.dim)?);
            params.samples = args.samples;
            params.seed = args.seed;
            params.cap = args.cap;
            params.max_size = args.max_size;
            params.radius = args.radius;
            if let Some(gs) = &args.groups {
                params.groups = gs
                    .split(',')
                    .map(|g| g.trim().parse::<GroupDescriptor>())
                    .collect::<linmatch::Result<_>>()?;
            }
            let report = run_sweep(task, &params)?;
            emit(&args.out, &report)?;
            eprint!("{}", report.summary());
            Ok(u8::from(report.contradicted()))
        }
        Command::Groups {
            command:
                GroupsCommand::Scan {
                    group,
                    max_size,
                    radius,
                    cap,
                    out,
                },
        } => {
            let g: GroupDescriptor = group.parse()?;
            let report = matching_property_scan(&g, max_size, radius, cap)?;
            emit(&out, &report)?;
            summarize(&[
                ("group", report.group.clone()),
                ("pairs", report.pairs_checked.to_string()),
                ("matched", report.pairs_matched.to_string()),
                ("B-to-B checked", report.self_checked.to_string()),
                ("B-to-B failures", report.self_failures.to_string()),
            ]);
            Ok(u8::from(
                report.has_counterexample() || report.self_failures > 0,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
