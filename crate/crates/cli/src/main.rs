use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tropcurve::enumerate::{
    constraints_from_json, count_curves, count_random, CountOptions, CountProblem, CountResult, Strategy,
};
use tropcurve::moduli::{
    algebraic_pluecker, curve_moduli_point, trop_moduli_point, verify_against, verify_commutativity,
};
use tropcurve::random::{random_suite_input, seeded};
use tropcurve::trees::{ParametrizedTropCurve, TropicalDegree};
use tropcurve::tropicalize::{tropicalize, CurveInput};
use tropcurve::Error;

/// Tropicalize rational curves, check commutativity with evaluation and the
/// moduli embedding, and count tropical curves through conditions.
#[derive(Parser, Debug)]
#[command(name = "tropcurve", version)]
struct Cli {
    /// Seed of the single random generator behind all random choices.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a Graphviz rendering of the resulting tree(s).
    #[arg(long, global = true)]
    emit_dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tropical curve of a curve input file.
    Tropicalize { input: PathBuf },
    /// Compare trop(ev) with tev at every mark and boundary label, and the
    /// two moduli points.
    Verify {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Verify this many seeded random inputs instead of a file.
        #[arg(long)]
        random: Option<usize>,
        /// Tropical curve to check against instead of the computed one.
        #[arg(long, requires = "input")]
        curve: Option<PathBuf>,
    },
    /// Algebraic and tropical Pluecker data of a curve input file.
    Pluecker { input: PathBuf },
    /// Count rational tropical curves through point or line conditions.
    Count(CountArgs),
}

#[derive(Args, Debug)]
struct CountArgs {
    /// Ambient dimension of a projective degree.
    #[arg(long, requires = "d", required_unless_present = "degree_file")]
    r: Option<usize>,
    /// Projective degree.
    #[arg(long, requires = "r")]
    d: Option<u32>,
    /// JSON file {"r": .., "degree": {..}}.
    #[arg(long, conflicts_with_all = ["r", "d"])]
    degree_file: Option<PathBuf>,
    /// Point conditions (constraint JSON).
    #[arg(long, group = "conditions")]
    points_file: Option<PathBuf>,
    /// Line conditions (constraint JSON).
    #[arg(long, group = "conditions")]
    lines_file: Option<PathBuf>,
    /// Random point conditions (the default).
    #[arg(long, group = "conditions")]
    random_points: bool,
    /// Random line conditions.
    #[arg(long, group = "conditions")]
    random_lines: bool,
    /// Attempts at drawing generic random conditions.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    retries: u32,
    /// Process types on the calling thread only.
    #[arg(long)]
    sequential: bool,
    /// Skip the floating-point screen and solve every type exactly.
    #[arg(long)]
    no_prefilter: bool,
}

enum Failure {
    Lib(Error),
    Other { kind: &'static str, message: String },
    VerifyFailed(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn other(kind: &'static str, message: impl Into<String>) -> Failure {
    Failure::Other { kind, message: message.into() }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| other("Io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| other("MalformedJson", format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| other("Io", format!("{}: {e}", path.display())))
}

fn cmd_tropicalize(input: &Path) -> CliResult<(Value, Option<String>)> {
    let input = CurveInput::from_json(&read_json(input)?)?;
    let t = tropicalize(&input)?;
    let out = json!({"curve": t.curve.to_json(), "clusters": t.clusters.to_json()});
    Ok((out, Some(t.curve.tree.to_dot())))
}

fn cmd_verify(cli: &Cli, input: Option<&Path>, random: Option<usize>, curve: Option<&Path>) -> CliResult<Value> {
    if let Some(n) = random {
        let mut rng = seeded(cli.seed);
        let mut failed = Vec::new();
        for k in 0..n {
            let input = random_suite_input(&mut rng);
            let report = verify_commutativity(&input)?;
            if !report.all_pass() {
                failed.push(json!({"index": k, "input": input.to_json(), "report": report.to_json()}));
            }
        }
        let out = json!({"seed": cli.seed, "inputs": n, "pass": failed.is_empty(), "failures": failed});
        return if failed.is_empty() { Ok(out) } else { Err(Failure::VerifyFailed(out)) };
    }
    let input = CurveInput::from_json(&read_json(input.expect("clap requires an input"))?)?;
    let report = match curve {
        Some(path) => verify_against(&input, &ParametrizedTropCurve::from_json(&read_json(path)?)?)?,
        None => verify_commutativity(&input)?,
    };
    if report.all_pass() {
        Ok(report.to_json())
    } else {
        Err(Failure::VerifyFailed(report.to_json()))
    }
}

fn cmd_pluecker(input: &Path) -> CliResult<Value> {
    let input = CurveInput::from_json(&read_json(input)?)?;
    let algebraic = algebraic_pluecker(&input)?;
    let from_algebraic = trop_moduli_point(&input)?;
    let from_curve = curve_moduli_point(&tropicalize(&input)?.curve, &input.i0)?;
    Ok(json!({
        "i0": input.i0,
        "algebraic": algebraic.to_json(),
        "trop_of_algebraic": from_algebraic.to_json(),
        "tropical": from_curve.to_json(),
        "agree": from_algebraic == from_curve,
    }))
}

fn count_degree(args: &CountArgs) -> CliResult<TropicalDegree> {
    if let Some(path) = &args.degree_file {
        let v = read_json(path)?;
        let r = v
            .get("r")
            .and_then(Value::as_u64)
            .ok_or_else(|| other("InvalidInput", "degree file needs integer \"r\""))?;
        let degree = v.get("degree").ok_or_else(|| other("InvalidInput", "degree file needs \"degree\""))?;
        return Ok(TropicalDegree::from_json(degree, r as usize)?);
    }
    Ok(TropicalDegree::projective(args.r.expect("clap"), args.d.expect("clap"))?)
}

/// Marks are the constrained labels that are not degree labels, in file
/// order, unless the file lists them.
fn problem_from_file(degree: TropicalDegree, path: &Path) -> CliResult<CountProblem> {
    let v = read_json(path)?;
    let constraints = constraints_from_json(&v)?;
    let marks = match v.get("marks") {
        Some(m) => serde_json::from_value(m.clone()).map_err(|e| other("InvalidInput", format!("bad marks: {e}")))?,
        None => constraints
            .iter()
            .filter(|c| !degree.contains(&c.label))
            .map(|c| c.label.clone())
            .collect(),
    };
    Ok(CountProblem { degree, marks, constraints })
}

fn count_output(seed: u64, attempts: Option<usize>, problem: &CountProblem, result: &CountResult) -> Value {
    let mut out = json!({"seed": seed});
    if let Some(a) = attempts {
        out["attempts"] = json!(a);
    }
    out["problem"] = problem.to_json();
    out["result"] = result.to_json();
    out
}

fn cmd_count(cli: &Cli, args: &CountArgs) -> CliResult<(Value, Option<String>)> {
    let degree = count_degree(args)?;
    let opts = CountOptions {
        strategy: if args.sequential { Strategy::Sequential } else { Strategy::Parallel },
        prefilter: !args.no_prefilter,
    };
    let run = || -> CliResult<Value> {
        let (problem, result, attempts) = match (&args.points_file, &args.lines_file) {
            (Some(path), _) | (_, Some(path)) => {
                let problem = problem_from_file(degree.clone(), path)?;
                let result = count_curves(&problem, &opts)?;
                (problem, result, None)
            }
            _ => {
                let dim = usize::from(args.random_lines);
                let run = count_random(&degree, dim, cli.seed, args.retries as usize, &opts)?;
                (run.problem, run.result, Some(run.attempts))
            }
        };
        let mut out = count_output(cli.seed, attempts, &problem, &result);
        out["dot"] = json!(result.solutions.iter().map(|s| s.curve.tree.to_dot()).collect::<String>());
        Ok(out)
    };
    let mut out = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| other("InvalidInput", format!("cannot start {n} threads: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let dot = out.as_object_mut().and_then(|o| o.remove("dot")).and_then(|d| d.as_str().map(String::from));
    Ok((out, dot))
}

fn emit(cli: &Cli, value: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match &cli.out {
        Some(path) => write_text(path, &text),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| other("Io", e.to_string()))
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let (value, dot) = match &cli.command {
        Command::Tropicalize { input } => cmd_tropicalize(input)?,
        Command::Verify { input, random, curve } => (cmd_verify(cli, input.as_deref(), *random, curve.as_deref())?, None),
        Command::Pluecker { input } => (cmd_pluecker(input)?, None),
        Command::Count(args) => cmd_count(cli, args)?,
    };
    if let (Some(path), Some(dot)) = (&cli.emit_dot, dot) {
        write_text(path, &dot)?;
    }
    emit(cli, &value)
}

fn report_error(kind: &str, message: &str) {
    let v = json!({"error": {"kind": kind, "message": message}});
    eprintln!("{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("Usage", e.to_string().trim_end());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::VerifyFailed(report)) => {
            let _ = emit(&cli, &report);
            let diff: Vec<&Value> = report
                .get("checks")
                .or_else(|| report.get("failures"))
                .and_then(Value::as_array)
                .map(|c| c.iter().filter(|x| x["pass"] != json!(true)).collect())
                .unwrap_or_default();
            eprintln!("{}", json!({"error": {"kind": "VerifyFailed", "message": "tropicalization does not commute", "diff": diff}}));
            ExitCode::from(1)
        }
        Err(Failure::Other { kind, message }) => {
            report_error(kind, &message);
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::from(match e {
                Error::PrecisionLoss(_) => 3,
                Error::Degenerate(_) => 4,
                _ => 2,
            })
        }
    }
}
