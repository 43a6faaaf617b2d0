//! `sl2branch`: branching rules from `SL2(k)` to `SL2(R)` and their
//! finite-group checks.
//!
//! Exit codes: 0 pass, 1 assertion failure, 2 schema or usage error,
//! 3 cases skipped for budget.

mod descriptor;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sl2_branching::arith::{FieldParams, Rational};
use sl2_branching::engine::{
    branch, intertwining_rule, packet_profile, tail_conforms, tail_end, tails_match,
};
use sl2_branching::grep::{l_packet, GRep};
use sl2_oracle::{run_suite, summarize, Execution, Suite, Verdict, DEFAULT_BUDGET, PSI_SCALE};

use descriptor::{parse_depth, parse_field_flag, Descriptor, Scalar, SchemaError, Truncate};

#[derive(Parser)]
#[command(name = "sl2branch", version, about = "Restriction of SL2(k) representations to SL2(R)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Common {
    /// Residue field as `p,f`; overrides the descriptor.
    #[arg(long)]
    field: Option<String>,
    /// Truncation depth `D` (integer or fraction); overrides the descriptor.
    #[arg(long)]
    max_depth: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// The truncated series `Res_K π`.
    Branch {
        descriptor: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Finite-group checks: shalika, ps, mackey or all.
    Verify {
        suite: String,
        /// Cap on `p^{3n}` for the groups `SL2(Z/p^n)` built.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Run without the thread pool.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The tail end (components of depth > 2r) and its pattern.
    Tail {
        descriptor: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Whether the restrictions of two representations share a K-type.
    Intertwine {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Two-per-depth profile of the L-packet of a representation.
    Packet {
        descriptor: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Schema(String),
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema(e.0)
    }
}

impl From<sl2_branching::Error> for Failure {
    fn from(e: sl2_branching::Error) -> Self {
        Failure::Schema(e.to_string())
    }
}

type Outcome = Result<(String, Verdict), Failure>;

/// A descriptor with the command-line overrides applied.
struct Loaded {
    descriptor: Descriptor,
    fp: FieldParams,
    rep: GRep,
}

fn load(path: &Path, common: &Common) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))?;
    let mut descriptor =
        Descriptor::parse(&text).map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))?;
    if let Some(f) = &common.field {
        descriptor.field = parse_field_flag(f)?;
    }
    if let Some(d) = &common.max_depth {
        let d = parse_depth("--max-depth", &Scalar::Text(d.clone()))?;
        descriptor.truncate = Some(Truncate { max_depth: d.into() });
    }
    let fp = descriptor.field_params()?;
    let rep = descriptor.to_grep()?;
    Ok(Loaded { descriptor, fp, rep })
}

fn required_depth(l: &Loaded) -> Result<Rational, Failure> {
    l.descriptor
        .max_depth()?
        .ok_or_else(|| Failure::Schema("truncate.max_depth: missing (or pass --max-depth)".into()))
}

/// Tail analyses need `D > 2r`; default to `2r + 4`.
fn tail_depth(l: &mut Loaded) -> Result<Rational, Failure> {
    let d = match l.descriptor.max_depth()? {
        Some(d) => d,
        None => {
            let d = l.rep.depth() * Rational::from(2) + Rational::from(4);
            l.descriptor.truncate = Some(Truncate { max_depth: d.floor().into() });
            d.floor()
        }
    };
    Ok(d)
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn cmd_branch(path: &Path, common: &Common) -> Outcome {
    let l = load(path, common)?;
    let d = required_depth(&l)?;
    let s = branch(&l.rep, d, &l.fp)?;
    let text = match common.format {
        Format::Table => render::series_table(&s, &l.fp),
        Format::Json => pretty(json!({
            "descriptor": l.descriptor,
            "total_degree": s.total_degree().ok().map(|t| t.to_string()),
            "series": s,
        })),
    };
    Ok((text, Verdict::Pass))
}

fn cmd_tail(path: &Path, common: &Common) -> Outcome {
    let mut l = load(path, common)?;
    let d = tail_depth(&mut l)?;
    let (desc, tail) = tail_end(&l.rep, d, &l.fp)?;
    let conforms = tail_conforms(&desc, &tail);
    let verdict = if conforms { Verdict::Pass } else { Verdict::Fail };
    let text = match common.format {
        Format::Table => {
            let mut out = format!(
                "# tail of {}\ncentral value: {}\npattern: {} >= {}\nconforms: {conforms}\n",
                l.rep, desc.central, desc.pattern, desc.start_depth
            );
            out += &render::series_table(&tail, &l.fp);
            out
        }
        Format::Json => pretty(json!({
            "descriptor": l.descriptor,
            "pattern_text": desc.pattern.to_string(),
            "tail": desc,
            "conforms": conforms,
            "series": tail,
        })),
    };
    Ok((text, verdict))
}

fn cmd_intertwine(left: &Path, right: &Path, common: &Common) -> Outcome {
    let a = load(left, common)?;
    let b = load(right, common)?;
    if a.fp != b.fp {
        return Err(Failure::Schema("the two descriptors name different fields".into()));
    }
    let rule = intertwining_rule(&a.rep, &b.rep, &a.fp);
    let tails = tails_match(&a.rep, &b.rep, &a.fp).ok();
    let text = match common.format {
        Format::Table => {
            let mut out = format!("left:  {}\nright: {}\n", a.rep, b.rep);
            match rule {
                Some(r) => out += &format!("k_intertwines: true ({r})\n"),
                None => out += "k_intertwines: false (no sufficient condition holds)\n",
            }
            if let Some(t) = &tails {
                out += &format!(
                    "tails_match: {} (central {}, class/splitting field {})\n",
                    t.matches, t.same_central_character, t.same_class_or_splitting_field
                );
            }
            out
        }
        Format::Json => pretty(json!({
            "left": a.descriptor,
            "right": b.descriptor,
            "k_intertwines": rule.is_some(),
            "rule": rule,
            "tails_match": tails,
        })),
    };
    Ok((text, Verdict::Pass))
}

fn cmd_packet(path: &Path, common: &Common) -> Outcome {
    let mut l = load(path, common)?;
    let d = tail_depth(&mut l)?;
    let packet = l_packet(&l.rep, &l.fp);
    let prof = packet_profile(&packet, d, &l.fp)?;
    let verdict = if prof.passed() { Verdict::Pass } else { Verdict::Fail };
    let text = match common.format {
        Format::Table => {
            let mut out = format!("# L-packet of {} ({} members)\n", l.rep, packet.len());
            for m in &packet {
                out += &format!("  {m}\n");
            }
            out += &render::packet_table(&prof);
            out += &format!("two per depth above {}: {}\n", prof.depth, prof.passed());
            out
        }
        Format::Json => pretty(json!({
            "descriptor": l.descriptor,
            "members": packet,
            "profile": prof,
            "passed": prof.passed(),
        })),
    };
    Ok((text, verdict))
}

fn cmd_verify(suite: &str, budget: u128, sequential: bool, common: &Common) -> Outcome {
    let suite: Suite = suite.parse().map_err(Failure::Schema)?;
    let field = parse_field_flag(common.field.as_deref().unwrap_or("3,1"))?;
    if field.f != 1 {
        return Err(Failure::Schema("--field: the oracle works over prime residue fields (f = 1)".into()));
    }
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let reports = run_suite(suite, field.p, budget, exec).map_err(|e| Failure::Schema(e.to_string()))?;
    let verdict = summarize(&reports);
    let text = match common.format {
        Format::Table => {
            let mut out = format!("# oracle suite {suite:?}, p = {}, budget = {budget}, psi_scale = {PSI_SCALE}\n", field.p);
            for r in &reports {
                out += &format!("\n{r}");
            }
            let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
            out += &format!(
                "\nsummary: {} passed, {} failed, {} skipped\n",
                count(Verdict::Pass),
                count(Verdict::Fail),
                count(Verdict::Skipped)
            );
            out
        }
        Format::Json => pretty(json!({
            "p": field.p,
            "budget": budget.to_string(),
            "psi_scale": PSI_SCALE,
            "verdict": verdict.to_string(),
            "reports": reports.iter().map(|r| json!({
                "name": r.name,
                "verdict": r.verdict.to_string(),
                "fields": r.fields.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok((text, verdict))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Schema(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.cmd {
        Cmd::Branch { descriptor, common } => (common, cmd_branch(descriptor, common)),
        Cmd::Verify { suite, budget, sequential, common } => (common, cmd_verify(suite, *budget, *sequential, common)),
        Cmd::Tail { descriptor, common } => (common, cmd_tail(descriptor, common)),
        Cmd::Intertwine { left, right, common } => (common, cmd_intertwine(left, right, common)),
        Cmd::Packet { descriptor, common } => (common, cmd_packet(descriptor, common)),
    };
    let result = result.and_then(|(text, verdict)| emit(&text, common.out.as_deref()).map(|_| verdict));
    match result {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Ok(Verdict::Skipped) => {
            eprintln!("some cases were skipped: budget exceeded");
            ExitCode::from(3)
        }
        Err(Failure::Schema(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
