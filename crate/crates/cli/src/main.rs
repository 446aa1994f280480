use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use flipcount::bounds;
use flipcount::config::CAPS_ENV;
use flipcount::enumeration::{count_plane_graphs, count_report, verify_support_identity, Predicate};
use flipcount::generators::{GeneratorKind, GeneratorSpec};
use flipcount::verify::{self, analyze, lemma_violations, Suite};
use flipcount::{Caps, Error, PointSet, Triangulation};

#[derive(Parser)]
#[command(name = "flipcount", version, about = "Flippable edges and crossing-free graph counts")]
struct Cli {
    /// Cap overrides such as "pg=10,tri=12"; applied after the environment.
    #[arg(long, global = true)]
    caps: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated point set in the point file format.
    Gen(Source),
    /// Flip statistics and decomposition diagnostics of the initial triangulation.
    Analyze(Source),
    /// Exact counts of triangulations and crossing-free graphs.
    Enumerate(EnumerateArgs),
    /// Evaluate the ratio bounds.
    Bounds(BoundsArgs),
    /// Run a property suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct Input {
    /// Point file: one "x y" pair per line, `#` comments allowed.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator: convex, low-flip, double-chain or random.
    #[arg(long)]
    kind: Option<String>,
}

#[derive(Args)]
struct Source {
    #[command(flatten)]
    input: Input,
    /// Number of points for --kind.
    #[arg(long, requires = "kind")]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: Source,
    /// all, eq=M, le=M, ge=M, forest, spanning-tree, k-forest=K,
    /// quadrangulation or triangulation.
    #[arg(long)]
    predicate: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    parallel: bool,
    /// Also check the support identity and the ratio bound.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Every constant.
    #[arg(long)]
    all: bool,
    /// Only the quadrangulation bound.
    #[arg(long)]
    quadrangulation: bool,
    /// Sample B(c) as CSV.
    #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "STEP"], allow_negative_numbers = true)]
    curve: Option<Vec<f64>>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "lemmas")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest random set size.
    #[arg(long, default_value_t = 10)]
    max_n: usize,
}

/// Outcome of a command: 0 pass, 1 violation, 2 usage or input error.
enum Outcome {
    Pass,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::InstanceTooLarge { cap, .. } = e {
                eprintln!("hint: raise the cap (currently {cap}) with --caps or {CAPS_ENV}, e.g. \"pg=10,tri=12\"");
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> flipcount::Result<Outcome> {
    let mut caps = Caps::from_env()?;
    if let Some(spec) = &cli.caps {
        caps = caps.with_overrides(spec)?;
    }
    match cli.command {
        Command::Gen(src) => {
            print!("{}", load(&src)?.to_point_file());
            Ok(Outcome::Pass)
        }
        Command::Analyze(src) => cmd_analyze(&src, &caps),
        Command::Enumerate(args) => cmd_enumerate(&args, &caps),
        Command::Bounds(args) => cmd_bounds(&args),
        Command::Verify(args) => cmd_verify(&args, &caps),
    }
}

fn load(src: &Source) -> flipcount::Result<PointSet> {
    match (&src.input.input, &src.input.kind) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            text.parse()
        }
        (None, Some(kind)) => {
            let kind: GeneratorKind = kind.parse()?;
            let n = src
                .n
                .ok_or_else(|| Error::Config("--kind needs --n".into()))?;
            GeneratorSpec::new(kind, n, src.seed)?.generate()
        }
        (None, None) => Err(Error::Config("give --input or --kind".into())),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn cmd_analyze(src: &Source, caps: &Caps) -> flipcount::Result<Outcome> {
    let ps = Arc::new(load(src)?);
    let t = Triangulation::build_initial(ps);
    let a = analyze(&t, caps)?;
    let violations = lemma_violations(&a);
    let mut value = serde_json::to_value(&a).expect("serializable");
    value["identities_ok"] = json!(a.diagnostics.identities_ok);
    value["violations"] = json!(violations);
    print_json(&value);
    Ok(if violations.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}

fn cmd_enumerate(args: &EnumerateArgs, caps: &Caps) -> flipcount::Result<Outcome> {
    let ps = Arc::new(load(&args.source)?);
    let mut value = match &args.predicate {
        Some(p) => {
            let p: Predicate = p.parse()?;
            let count = count_plane_graphs(&ps, p, caps, args.parallel)?;
            if args.format == Format::Csv {
                println!("predicate,count\n{p},{count}");
            }
            json!({ "predicate": p.to_string(), "count": count })
        }
        None => {
            let report = count_report(&ps, caps, args.parallel)?;
            if args.format == Format::Csv {
                print!("{}", report.by_edge_count_csv());
            }
            serde_json::to_value(&report).expect("serializable")
        }
    };
    let mut outcome = Outcome::Pass;
    if args.verify {
        let (identity, pg, tri) = match verify_support_identity(&ps, caps) {
            Ok(r) => (json!({ "holds": true, "sum": r.lhs.to_string() }), r.pg, r.tri),
            Err(Error::IdentityViolation(msg)) => {
                outcome = Outcome::Violation;
                (json!({ "holds": false, "detail": msg }), 0, 0)
            }
            Err(e) => return Err(e),
        };
        value["support_identity"] = identity;
        if pg > 0 {
            let check = verify::ratio_check("input", pg, tri, ps.len(), ps.hull_size())?;
            if !check.passed {
                outcome = Outcome::Violation;
            }
            value["ratio_bound"] = json!({ "holds": check.passed, "detail": check.detail });
        }
    }
    if args.format == Format::Json {
        print_json(&value);
    }
    Ok(outcome)
}

fn cmd_bounds(args: &BoundsArgs) -> flipcount::Result<Outcome> {
    if let Some(c) = &args.curve {
        let curve = bounds::emit_curve(c[0], c[1], c[2])?;
        print!("{}", bounds::curve_csv(&curve));
        return Ok(Outcome::Pass);
    }
    let reports = if args.quadrangulation && !args.all {
        vec![bounds::quadrangulation_bound()?]
    } else {
        bounds::all_bounds()?
    };
    print_json(&json!(reports));
    Ok(Outcome::Pass)
}

fn cmd_verify(args: &VerifyArgs, caps: &Caps) -> flipcount::Result<Outcome> {
    let suite: Suite = args.suite.parse()?;
    let checks = verify::run_suite(suite, args.seed, args.max_n, caps)?;
    for c in &checks {
        eprintln!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    print_json(&json!({
        "suite": suite.to_string(),
        "passed": checks.len() - failed,
        "failed": failed,
        "checks": checks,
    }));
    Ok(if failed == 0 {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}
