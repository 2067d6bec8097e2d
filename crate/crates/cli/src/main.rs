mod outcome;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diamfree::canon::{self, MAX_STABILIZER_LEN};
use diamfree::error::{CanonError, Error, GraphError, LatticeError, SolverError};
use diamfree::families::{Extremal, Family};
use diamfree::johnson;
use diamfree::lattice::{format_trit_lines, generate, parse_trit_lines};
use diamfree::solver::{self, SolverConfig};
use diamfree::verify::{self, Suite, VerifyOptions};
use diamfree::{DiameterGraph, Signature};

use outcome::*;
use report::Report;

const EXIT_VERIFY: u8 = 1;
const EXIT_CAPACITY: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "diamfree", version, about = "Diameter-avoiding subsets of signed ternary lattices")]
struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Solver time limit in seconds; 0 disables it.
    #[arg(long, global = true, default_value_t = 300)]
    time_limit: u64,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    enum_limit: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Allow the long runs (k = 6).
    #[arg(long, global = true)]
    slow: bool,
    /// Recompute even when a cached report exists.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List the points of L(m, k, l).
    Gen { m: usize, k: usize, l: usize },
    /// Largest independent set of the diameter graph of L(m, k, l).
    Solve {
        m: usize,
        k: usize,
        l: usize,
        /// Join pairs at squared distance >= this instead of the diameter.
        #[arg(long)]
        threshold: Option<u32>,
        /// List every maximum independent set.
        #[arg(long)]
        enumerate: bool,
        /// Group the maximum sets by coordinate-permutation class (implies --enumerate).
        #[arg(long)]
        classify: bool,
    },
    /// Canonical form of a family given as JSON or as one trit string per line.
    Canon { path: PathBuf },
    /// Run a check suite: main-theorem, props, johnson or section4.
    Verify {
        suite: Suite,
        /// Range of k such as `1..4` (inclusive) or a single value.
        #[arg(long, value_parser = parse_k_range)]
        k: Option<(usize, usize)>,
    },
    /// Check the three 258-point four-distance sets.
    JohnsonVerify,
}

fn parse_k_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad k {t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?)),
        None => {
            let k = parse(s)?;
            Ok((k, k))
        }
    }
}

enum Failure {
    Capacity(String),
    Timeout { message: String, lower: usize, upper: usize },
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let capacity = |l: &LatticeError| matches!(l, LatticeError::Capacity { .. } | LatticeError::TooLong { .. });
        match &e {
            Error::Solver(SolverError::Timeout { lower, upper }) => {
                Failure::Timeout { message, lower: *lower, upper: *upper }
            }
            Error::Solver(SolverError::TooManyVertices { .. } | SolverError::EnumerationLimit { .. })
            | Error::Canon(CanonError::TooLong { .. }) => Failure::Capacity(message),
            Error::Lattice(l)
            | Error::Graph(GraphError::Lattice(l))
            | Error::Solver(SolverError::Graph(GraphError::Lattice(l)))
                if capacity(l) =>
            {
                Failure::Capacity(message)
            }
            _ => Failure::Input(message),
        }
    }
}

macro_rules! lib {
    ($e:expr) => {
        $e.map_err(|e| Failure::from(Error::from(e)))
    };
}

struct Job {
    command: &'static str,
    config: Value,
    input: Vec<u8>,
}

fn solver_config(cli: &Cli) -> SolverConfig {
    SolverConfig {
        time_limit: (cli.time_limit > 0).then(|| Duration::from_secs(cli.time_limit)),
        enumeration_limit: cli.enum_limit,
        ..SolverConfig::default()
    }
}

fn signature(m: usize, k: usize, l: usize) -> Result<Signature, Failure> {
    lib!(Signature::new(m, k, l))
}

fn sig_array(s: Signature) -> [usize; 3] {
    [s.m(), s.k(), s.l()]
}

fn job(cli: &Cli) -> Result<Job, Failure> {
    let limit = if cli.time_limit == 0 { Value::Null } else { json!(cli.time_limit) };
    Ok(match &cli.command {
        Command::Gen { m, k, l } => Job { command: "gen", config: json!({}), input: format!("{m} {k} {l}").into_bytes() },
        Command::Solve { m, k, l, threshold, enumerate, classify } => Job {
            command: "solve",
            config: json!({
                "threshold_sq": threshold,
                "enumerate": *enumerate || *classify,
                "classify": classify,
                "time_limit_s": limit,
                "enum_limit": cli.enum_limit,
            }),
            input: format!("{m} {k} {l}").into_bytes(),
        },
        Command::Canon { path } => Job {
            command: "canon",
            config: json!({}),
            input: fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        },
        Command::Verify { suite, k } => {
            let (k_min, k_max) = k.unwrap_or((1, if cli.slow { 6 } else { 5 }));
            Job {
                command: "verify",
                config: json!({
                    "suite": suite.name(),
                    "k_min": k_min,
                    "k_max": k_max,
                    "slow": cli.slow,
                    "time_limit_s": limit,
                    "enum_limit": cli.enum_limit,
                }),
                input: suite.name().as_bytes().to_vec(),
            }
        }
        Command::JohnsonVerify => Job { command: "johnson-verify", config: json!({}), input: b"johnson-verify".to_vec() },
    })
}

fn load_family(path: &std::path::Path, bytes: &[u8]) -> Result<Family, Failure> {
    let text = std::str::from_utf8(bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        return lib!(Family::from_json(text));
    }
    let points = lib!(parse_trit_lines(text))?;
    let first = points.first().ok_or_else(|| Failure::Input(format!("{}: no vectors", path.display())))?;
    let name = path.file_stem().map_or_else(|| "input".to_owned(), |s| s.to_string_lossy().into_owned());
    lib!(Family::new(first.signature(), name, points.iter().copied()))
}

fn run(cli: &Cli, job: &Job) -> Result<Outcome, Failure> {
    let config = solver_config(cli);
    match &cli.command {
        Command::Gen { m, k, l } => {
            let s = signature(*m, *k, *l)?;
            let points = lib!(generate(s))?;
            Ok(Outcome::Gen(GenResult {
                signature: sig_array(s),
                count: points.len(),
                points: format_trit_lines(&points).lines().map(str::to_owned).collect(),
            }))
        }
        Command::Solve { m, k, l, threshold, enumerate, classify } => {
            let s = signature(*m, *k, *l)?;
            let g = match threshold {
                Some(t) => lib!(DiameterGraph::build(&lib!(generate(s))?, *t))?,
                None => lib!(DiameterGraph::of_lattice(s))?,
            };
            let result = if *enumerate || *classify {
                lib!(solver::enumerate_maximum_with(&g, &config))?
            } else {
                lib!(solver::independence_number_with(&g, &config))?
            };
            let strings = |pts: Vec<diamfree::TritVector>| pts.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            let enumerated = result.enumerated_points(&g);
            let classes = match (&enumerated, classify) {
                (Some(sets), true) => {
                    let families = sets
                        .iter()
                        .enumerate()
                        .map(|(i, set)| Family::new(s, format!("set_{i}"), set.iter().copied()))
                        .collect::<Result<Vec<_>, _>>();
                    let families = lib!(families)?;
                    let classes = lib!(canon::classify(&families))?;
                    let summaries = classes
                        .iter()
                        .map(|c| {
                            let orbit =
                                (s.n() <= MAX_STABILIZER_LEN).then(|| canon::orbit_length(&c.representative)).transpose();
                            Ok(ClassSummary {
                                size: c.size(),
                                orbit_length: lib!(orbit)?,
                                form: c.form.rows().map(str::to_owned).collect(),
                                representative: c.representative.members().iter().map(|x| x.to_string()).collect(),
                            })
                        })
                        .collect::<Result<Vec<_>, Failure>>()?;
                    Some(summaries)
                }
                _ => None,
            };
            Ok(Outcome::Solve(SolveResult {
                signature: sig_array(s),
                threshold_sq: g.threshold_sq(),
                vertices: g.len(),
                edges: g.edge_count(),
                alpha: result.alpha,
                witness: strings(result.witness_points(&g)),
                enumerated: enumerated.map(|sets| sets.into_iter().map(strings).collect()),
                classes,
            }))
        }
        Command::Canon { path } => {
            let f = load_family(path, &job.input)?;
            let (form, cert) = lib!(canon::certificate(&f))?;
            let stabilizer = (f.signature().n() <= MAX_STABILIZER_LEN).then(|| canon::stabilizer_order(&f)).transpose();
            let stabilizer = lib!(stabilizer)?;
            let orbit = (f.signature().n() <= MAX_STABILIZER_LEN).then(|| canon::orbit_length(&f)).transpose();
            Ok(Outcome::Canon(CanonResult {
                signature: sig_array(f.signature()),
                size: f.len(),
                form: form.rows().map(str::to_owned).collect(),
                permutation: cert.permutation,
                cycles: cert.cycles,
                stabilizer_order: stabilizer,
                orbit_length: lib!(orbit)?,
            }))
        }
        Command::Verify { suite, .. } => {
            let k_min = job.config["k_min"].as_u64().expect("set in job") as usize;
            let k_max = job.config["k_max"].as_u64().expect("set in job") as usize;
            let opts = VerifyOptions { k_min, k_max, slow: cli.slow, solver: config };
            let report = verify::run_suite(*suite, &opts).map_err(Failure::from)?;
            Ok(Outcome::Verify(VerifyResult { k_min, k_max, slow: cli.slow, passed: report.passed(), report }))
        }
        Command::JohnsonVerify => {
            let mut variants = Vec::new();
            for e in Extremal::ALL {
                let report = johnson::verify_258(e).map_err(Failure::from)?;
                let variant = match e {
                    Extremal::X => "X_6",
                    Extremal::Y => "Y_6",
                    Extremal::Z => "Z_6",
                }
                .to_owned();
                variants.push(JohnsonVariant { variant, passed: report.passed(258), report });
            }
            Ok(Outcome::JohnsonVerify(JohnsonResult { passed: variants.iter().all(|v| v.passed), variants }))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(cli: &Cli, report: &Report) -> Result<String, Failure> {
    Ok(match cli.format {
        Format::Json => report::to_json(report),
        Format::Text => report.outcome.text(),
        Format::Csv => report.outcome.csv().map_err(|e| Failure::Input(e.to_string()))?,
    })
}

fn main_inner(cli: &Cli) -> Result<bool, Failure> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    let job = job(cli)?;
    let input_hash = report::sha256_hex(&job.input);
    let key = report::cache_key(job.command, &job.config, &input_hash);
    let dir = report::cache_dir();
    let cached = if cli.force { None } else { report::load(&dir, &key) };
    let report = match cached {
        Some(r) => r,
        None => {
            let outcome = run(cli, &job)?;
            let r = Report {
                tool: "diamfree".into(),
                version: diamfree::VERSION.into(),
                command: job.command.into(),
                config: job.config.clone(),
                input_hash,
                key,
                outcome,
            };
            if let Err(e) = report::store(&dir, &r) {
                eprintln!("warning: could not cache the report in {}: {e}", dir.display());
            }
            r
        }
    };
    emit(cli, &render(cli, &report)?)?;
    Ok(report.outcome.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Capacity(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_CAPACITY)
        }
        Err(Failure::Timeout { message, lower, upper }) => {
            eprintln!("error: {message}");
            let partial = json!({ "status": "timeout", "lower": lower, "upper": upper });
            let _ = emit(&cli, &format!("{}\n", serde_json::to_string_pretty(&partial).expect("plain json")));
            ExitCode::from(EXIT_TIMEOUT)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
