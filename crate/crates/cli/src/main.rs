use clap::{Args, Parser, Subcommand};
use sigbasis::engine::{validate_sigtree, RunConfig, RunError, RunResult, Strategy};
use sigbasis::problem::{builtin, builtin_names, parse_field, parse_problem, ProblemSpec, SigInit};
use sigbasis::verify::{bounded_signature_basis_check, bounded_syzygy_check, buchberger, lm_ideal_equal, Fixture};
use sigbasis::{export_dot, Error, Position, SigSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_LIMIT: u8 = 3;

/// Rows allowed in a bounded echelon check before it gives up.
const DEEP_CAP: usize = 400_000;

#[derive(Parser)]
#[command(name = "sigbasis", version, about = "Signature-based Gröbner bases via rewrite bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a rewrite basis of a problem.
    Run(RunArgs),
    /// Compute the reduced Gröbner basis with the Buchberger oracle and write it as a fixture.
    Fixture {
        #[command(flatten)]
        input: Input,
        /// Output path; standard output when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Print a problem in normalized form.
    Show {
        #[command(flatten)]
        input: Input,
    },
    /// List the builtin systems.
    Builtins,
}

#[derive(Args)]
struct Input {
    /// Problem file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// Builtin system: mora, katsura3 … katsura8.
    #[arg(long)]
    builtin: Option<String>,
    /// Coefficient field override: q or gf:P.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, default_value = "in-order", value_parser = Strategy::ALL_NAMES)]
    strategy: String,
    /// Batch size of the f4 strategy.
    #[arg(long, default_value_t = 4)]
    batch: usize,
    /// Signature order; defaults to the problem's or top.
    #[arg(long, value_parser = ["pot", "top"])]
    sig_order: Option<String>,
    /// Initial signatures; defaults to the problem's or shifted.
    #[arg(long, value_parser = ["shifted", "unshifted", "sum"])]
    sig_init: Option<String>,
    /// Write the sigtree as a Graphviz digraph.
    #[arg(long, value_name = "PATH")]
    emit_dot: Option<PathBuf>,
    /// Write the engine events as JSON lines.
    #[arg(long, value_name = "PATH")]
    emit_trace: Option<PathBuf>,
    /// Write the basis, syzygy signatures, statistics and checks as JSON.
    #[arg(long, value_name = "PATH")]
    emit_json: Option<PathBuf>,
    /// Check the certificate, the sigtree and the lm ideal against the oracle.
    #[arg(long)]
    verify: bool,
    /// Also run the bounded signature-basis and syzygy checks up to this degree.
    #[arg(long, value_name = "D")]
    verify_deep: Option<u32>,
    /// Compare against a stored oracle fixture instead of recomputing it.
    #[arg(long, value_name = "PATH")]
    oracle: Option<PathBuf>,
    /// Stop after this many insertions (exit status 3).
    #[arg(long, value_name = "N")]
    max_insertions: Option<usize>,
    /// Stop after this many seconds (exit status 3).
    #[arg(long, value_name = "S")]
    max_seconds: Option<f64>,
    /// Suppress the basis listing.
    #[arg(long, short)]
    quiet: bool,
}

enum Failure {
    Usage(String),
    Verify(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Fixture { input, out } => fixture(input, out),
        Command::Show { input } => load(&input).map(|(_, p)| print!("{}", p.render())),
        Command::Builtins => {
            builtin_names().iter().for_each(|n| println!("{n}"));
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("limit reached: {m}");
            ExitCode::from(EXIT_LIMIT)
        }
    }
}

fn load(input: &Input) -> Result<(String, ProblemSpec), Failure> {
    let (name, mut spec) = match (&input.file, &input.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let spec = parse_problem(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
            (stem.unwrap_or_default(), spec)
        }
        (None, Some(name)) => (name.clone(), builtin(name)?),
        (None, None) => return Err(Failure::Usage("no problem given".into())),
    };
    if let Some(f) = &input.field {
        spec.field = parse_field(f)?;
        spec.context()?;
    }
    Ok((name, spec))
}

fn fixture(input: Input, out: Option<PathBuf>) -> Result<(), Failure> {
    let (name, spec) = load(&input)?;
    let ctx = spec.context()?;
    let gb = buchberger(&spec.elements(&ctx)?, &ctx)?;
    let text = Fixture::new(&name, &ctx, &gb).to_json();
    match out {
        Some(path) => write(&path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let (name, spec) = load(&args.input)?;
    let strategy = Strategy::parse(&args.strategy, args.batch)?;
    let position: Position = match &args.sig_order {
        Some(p) => p.parse()?,
        None => spec.sig_order.unwrap_or(Position::Top),
    };
    let init: SigInit = match &args.sig_init {
        Some(i) => i.parse()?,
        None => spec.sig_init.unwrap_or(SigInit::Shifted),
    };
    let input = spec.prebasis(position, init)?;
    let mut cfg = RunConfig::new(strategy);
    cfg.trace = args.emit_trace.is_some();
    if let Some(n) = args.max_insertions {
        cfg.limits.max_insertions = n;
    }
    if let Some(s) = args.max_seconds {
        cfg.limits.max_seconds = s;
    }

    let start = Instant::now();
    let (result, limit) = match sigbasis::run_with(&input, &cfg) {
        Ok(r) => (r, None),
        Err(RunError::Limit { message, partial }) => (*partial, Some(message)),
        Err(RunError::Failed(e)) => return Err(e.into()),
    };
    let elapsed = start.elapsed().as_secs_f64();

    println!(
        "{name}: {strategy}, {position}, {init} over {} in {elapsed:.3}s",
        spec.field
    );
    let s = &result.stats;
    println!(
        "{} iterations, {} insertions, {} zero reductions, {} reduction steps, peak queue {}",
        s.iterations, s.insertions, s.zero_reductions, s.reduction_steps, s.peak_queue
    );
    if !args.quiet {
        for line in result.basis.to_text() {
            println!("  {line}");
        }
    }

    let verification = if limit.is_none() && (args.verify || args.verify_deep.is_some()) {
        Some(verify(&spec, &input, &result, &args)?)
    } else {
        None
    };

    if let Some(path) = &args.emit_dot {
        write(path, &export_dot(&result, &minimal_lms(&result)))?;
    }
    if let Some(path) = &args.emit_trace {
        write(path, &sigbasis::engine::to_json_lines(&result.trace))?;
    }
    if let Some(path) = &args.emit_json {
        let mut json = result.to_json();
        json["problem"] = serde_json::json!(name);
        json["strategy"] = serde_json::json!(strategy.to_string());
        json["sig_order"] = serde_json::json!(position.to_string());
        json["sig_init"] = serde_json::json!(init.to_string());
        json["field"] = serde_json::json!(spec.field.to_string());
        json["complete"] = serde_json::json!(limit.is_none());
        if let Some(v) = &verification {
            json["verification"] = serde_json::json!(v.checks);
        }
        let text = serde_json::to_string_pretty(&json).expect("json serializes") + "\n";
        write(path, &text)?;
    }

    if let Some(message) = limit {
        return Err(Failure::Limit(message));
    }
    match verification {
        Some(v) if !v.failures.is_empty() => Err(Failure::Verify(v.failures.join("; "))),
        _ => Ok(()),
    }
}

struct Verification {
    checks: Vec<(String, bool)>,
    failures: Vec<String>,
}

fn verify(spec: &ProblemSpec, input: &SigSet, result: &RunResult, args: &RunArgs) -> Result<Verification, Failure> {
    let mut v = Verification {
        checks: Vec::new(),
        failures: Vec::new(),
    };
    let mut check = |name: &str, ok: bool, detail: String| {
        println!("{name}: {}", if ok { "ok" } else { "FAILED" });
        v.checks.push((name.to_string(), ok));
        if !ok {
            v.failures.push(format!("{name}: {detail}"));
        }
    };
    let ctx = &result.basis.ctx;

    let cert = result.certificate();
    let shown: Vec<String> = cert.failures.iter().map(|s| s.to_string_with(ctx)).collect();
    check("certificate", cert.pass, format!("not rewrite basis at {}", shown.join(", ")));

    let violations = validate_sigtree(&result.tree, &result.basis);
    let detail = violations
        .iter()
        .map(|x| format!("node {} {:?}: {}", x.node, x.rule, x.detail))
        .collect::<Vec<_>>()
        .join(", ");
    check("sigtree", violations.is_empty(), detail);

    let oracle = match &args.oracle {
        Some(path) => Fixture::load(path)?.lms(ctx)?,
        None => buchberger(&spec.elements(ctx)?, ctx)?.lms(),
    };
    let ok = lm_ideal_equal(&result.part_lms(), &oracle, &ctx.monoid);
    check("oracle lm ideal", ok, "leading monomial ideals differ".into());

    if let Some(d) = args.verify_deep {
        let report = bounded_signature_basis_check(&result.basis, d, DEEP_CAP)?;
        let detail = report
            .violations
            .iter()
            .map(|(s, m)| format!("{} misses {}", s.to_string_with(ctx), m.display(&ctx.vars)))
            .collect::<Vec<_>>()
            .join(", ");
        check(&format!("signature basis to degree {d}"), report.pass(), detail);
        match bounded_syzygy_check(input, result, d, DEEP_CAP) {
            Ok(report) => {
                let detail = report
                    .uncovered
                    .iter()
                    .map(|s| s.to_string_with(ctx))
                    .collect::<Vec<_>>()
                    .join(", ");
                check(&format!("syzygies to degree {d}"), report.pass(), format!("uncovered {detail}"));
            }
            Err(Error::Unsupported(m)) => println!("syzygies to degree {d}: skipped ({m})"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(v)
}

/// The part leading monomials that generate their ideal minimally.
fn minimal_lms(result: &RunResult) -> Vec<sigbasis::Monomial> {
    let lms = result.part_lms();
    let monoid = &result.basis.ctx.monoid;
    lms.iter()
        .enumerate()
        .filter(|&(i, m)| {
            !lms.iter()
                .enumerate()
                .any(|(j, n)| monoid.divides(n, m) && (n != m || j < i))
        })
        .map(|(_, m)| m.clone())
        .collect()
}
