//! Command-line front end. Every pipeline is exposed as a subcommand with
//! reproducible, machine-readable output: JSON values carry big integers
//! as decimal strings and bounds as canonical tower strings, and re-running
//! a command with the same inputs yields byte-identical output regardless
//! of the worker count.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 infeasibility (for
//! example the exhaustive lowering cap).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bounds::{bound_d, bound_nonneg, bound_rational};
use crate::ensys::{count_solutions, enumerate_box, EnSystem, SolveOptions};
use crate::explorer::{
    probe, semi_algorithm, survey, SearchDomain, SurveyOptions,
};
use crate::gallery::{
    assemble_beyond_bound_witness, build_chain, build_family_1156, build_beyond_bound, chain_solution, worked_example,
};
use crate::lower::{lower_canonical, lower_compact, LowerError, LoweringMap};
use crate::poly::{parse_equation, parse_polynomial};
use crate::transforms::{hat, rationalize, tilde};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Box radii accepted on the command line (the solver's own limit).
const MAX_CLI_RADIUS: u64 = 1 << 46;

#[derive(Parser, Debug)]
#[command(
    name = "enform",
    version,
    about = "Compile Diophantine equations into single-operation constraint systems, \
             compute their double-exponential bounds exactly, and solve them in boxes"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cache directory: results are stored one JSON document per file,
    /// keyed by subcommand, canonical input serialization, and flags.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker count for sharded operations (default: available
    /// parallelism). Output bytes never depend on it.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LowerMode {
    Compact,
    Canonical,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BoundDomain {
    Integer,
    Nonneg,
    Rational,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SemiDomain {
    Integer,
    Nonneg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an equation and report its normalized form and coefficient
    /// statistics.
    Parse { equation: String },
    /// Compile an equation into a single-operation constraint system.
    Lower {
        #[arg(long, value_enum, default_value_t = LowerMode::Compact)]
        mode: LowerMode,
        equation: String,
    },
    /// Compute the conjectural height bound for an equation's solutions.
    Bound {
        #[arg(long, value_enum, default_value_t = BoundDomain::Integer)]
        domain: BoundDomain,
        equation: String,
    },
    /// Enumerate the solutions of a system file inside a box.
    Solve {
        #[arg(long = "box", value_name = "B")]
        box_radius: u64,
        #[arg(long)]
        limit: Option<usize>,
        system: PathBuf,
    },
    /// Count the solutions of a system file inside a box exactly.
    Count {
        #[arg(long = "box", value_name = "B")]
        box_radius: u64,
        system: PathBuf,
    },
    /// Eliminate x_i = 1 equations (adds exactly the zero tuple).
    Tilde { system: PathBuf },
    /// Four-square encoding: integer solvability of the output matches
    /// non-negative solvability of the input polynomial.
    Hat { polynomial: String },
    /// Rational encoding: polynomial equations over 12n integer variables
    /// whose solutions correspond to the system's rational solutions.
    Rationalize { system: PathBuf },
    /// Probe the reformulated conjecture at a concrete tuple.
    Probe {
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        horizon: i64,
        /// Comma-separated integers, e.g. "5" or "5,25".
        tuple: String,
    },
    /// Classify all small systems (n ≤ 2 exhaustive up to symmetry, n = 3
    /// sampled) by solving at two horizons.
    Survey {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        growth_box: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// The shell-by-shell semi-algorithm for "infinitely many solutions".
    Semi {
        #[arg(long)]
        override_start: Option<i64>,
        #[arg(long, default_value_t = 50)]
        cutoff: i64,
        #[arg(long, value_enum, default_value_t = SemiDomain::Integer)]
        domain: SemiDomain,
        equation: String,
    },
    /// Build and verify the explicit constructions.
    Gallery {
        #[command(subcommand)]
        item: GalleryItem,
    },
}

#[derive(Subcommand, Debug)]
enum GalleryItem {
    /// The doubling chain with exactly two integer solutions.
    Chain {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// The family with exactly 1156 · 2^(n-10) solutions.
    Thm7 {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// The 21-variable system whose solutions are all enormous.
    Thm8 {
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// The quintic worked example, solved end to end.
    Example,
}

#[derive(Debug)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum CliError {
    Usage(String),
    Infeasible(String),
}

impl From<crate::poly::PolyError> for CliError {
    fn from(e: crate::poly::PolyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<crate::ensys::EnError> for CliError {
    fn from(e: crate::ensys::EnError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LowerError> for CliError {
    fn from(e: LowerError) -> Self {
        match e {
            LowerError::CapExceeded { .. } => CliError::Infeasible(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<crate::bounds::BoundsError> for CliError {
    fn from(e: crate::bounds::BoundsError) -> Self {
        match e {
            crate::bounds::BoundsError::Lower(l) => l.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<crate::explorer::ExplorerError> for CliError {
    fn from(e: crate::explorer::ExplorerError) -> Self {
        CliError::Usage(e.to_string())
    }
}

struct Report {
    /// Pretty-printed for `--format json`; survey uses line mode instead.
    json: Value,
    json_lines: Option<Vec<Value>>,
    text: String,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            json_lines: None,
            text,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => match &self.json_lines {
                Some(lines) => {
                    let mut out = String::new();
                    for l in lines {
                        out.push_str(&serde_json::to_string(l).unwrap());
                        out.push('\n');
                    }
                    out
                }
                None => {
                    let mut s = serde_json::to_string_pretty(&self.json).unwrap();
                    s.push('\n');
                    s
                }
            },
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
        }
    }
}

/// Run the CLI on the given arguments, capturing output and exit code.
pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CliOutcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let threads = cli
        .global
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
    let format = cli.global.format;

    let (cache_key, result) = dispatch(&cli.command, threads);
    match result {
        Ok(report) => {
            let output = match cache_lookup(&cli.global.cache_dir, &cache_key, format) {
                Some(cached) => cached,
                None => {
                    let rendered = report.render(format);
                    cache_store(&cli.global.cache_dir, &cache_key, format, &rendered);
                    rendered
                }
            };
            CliOutcome {
                code: EXIT_OK,
                stdout: output,
                stderr: String::new(),
            }
        }
        Err(CliError::Usage(msg)) => CliOutcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg),
        },
        Err(CliError::Infeasible(msg)) => CliOutcome {
            code: EXIT_INFEASIBLE,
            stdout: String::new(),
            stderr: format!("infeasible: {}\n", msg),
        },
    }
}

fn dispatch(cmd: &Command, threads: usize) -> (Value, Result<Report, CliError>) {
    match cmd {
        Command::Parse { equation } => (
            json!({"cmd": "parse", "equation": equation}),
            cmd_parse(equation),
        ),
        Command::Lower { mode, equation } => (
            json!({"cmd": "lower", "mode": format!("{mode:?}"), "equation": equation}),
            cmd_lower(*mode, equation),
        ),
        Command::Bound { domain, equation } => (
            json!({"cmd": "bound", "domain": format!("{domain:?}"), "equation": equation}),
            cmd_bound(*domain, equation),
        ),
        Command::Solve {
            box_radius,
            limit,
            system,
        } => {
            let sys = read_system(system);
            let key = json!({
                "cmd": "solve", "box": box_radius, "limit": limit,
                "system": sys.as_ref().ok().map(|s| serde_json::to_value(s).unwrap()),
            });
            (key, sys.and_then(|s| cmd_solve(&s, *box_radius, *limit, threads)))
        }
        Command::Count { box_radius, system } => {
            let sys = read_system(system);
            let key = json!({
                "cmd": "count", "box": box_radius,
                "system": sys.as_ref().ok().map(|s| serde_json::to_value(s).unwrap()),
            });
            (key, sys.and_then(|s| cmd_count(&s, *box_radius, threads)))
        }
        Command::Tilde { system } => {
            let sys = read_system(system);
            let key = json!({
                "cmd": "tilde",
                "system": sys.as_ref().ok().map(|s| serde_json::to_value(s).unwrap()),
            });
            (key, sys.and_then(|s| cmd_tilde(&s)))
        }
        Command::Rationalize { system } => {
            let sys = read_system(system);
            let key = json!({
                "cmd": "rationalize",
                "system": sys.as_ref().ok().map(|s| serde_json::to_value(s).unwrap()),
            });
            (key, sys.and_then(|s| cmd_rationalize(&s)))
        }
        Command::Hat { polynomial } => (
            json!({"cmd": "hat", "polynomial": polynomial}),
            cmd_hat(polynomial),
        ),
        Command::Probe {
            strict,
            horizon,
            tuple,
        } => (
            json!({"cmd": "probe", "strict": strict, "horizon": horizon, "tuple": tuple}),
            cmd_probe(tuple, *horizon, *strict),
        ),
        Command::Survey {
            n,
            growth_box,
            seed,
            samples,
        } => (
            json!({
                "cmd": "survey", "n": n, "growth_box": growth_box,
                "seed": seed, "samples": samples,
            }),
            cmd_survey(*n, *growth_box, *seed, *samples, threads),
        ),
        Command::Semi {
            override_start,
            cutoff,
            domain,
            equation,
        } => (
            json!({
                "cmd": "semi", "override_start": override_start, "cutoff": cutoff,
                "domain": format!("{domain:?}"), "equation": equation,
            }),
            cmd_semi(equation, *domain, *override_start, *cutoff),
        ),
        Command::Gallery { item } => match item {
            GalleryItem::Chain { n } => (
                json!({"cmd": "gallery-chain", "n": n}),
                cmd_gallery_chain(*n),
            ),
            GalleryItem::Thm7 { n } => (
                json!({"cmd": "gallery-thm7", "n": n}),
                cmd_gallery_thm7(*n, threads),
            ),
            GalleryItem::Thm8 { depth } => (
                json!({"cmd": "gallery-thm8", "depth": depth}),
                cmd_gallery_thm8(*depth),
            ),
            GalleryItem::Example => (
                json!({"cmd": "gallery-example"}),
                cmd_gallery_example(threads),
            ),
        },
    }
}

// --- subcommand handlers ---

fn cmd_parse(text: &str) -> Result<Report, CliError> {
    let eq = parse_equation(text)?;
    let (m, degrees) = eq.normalized.coeff_stats();
    let json = json!({
        "equation": eq.to_string(),
        "normalized": eq.normalized.to_string(),
        "num_vars": eq.num_vars(),
        "max_abs_coeff": m.to_string(),
        "degrees": degrees,
    });
    let text = format!(
        "equation:   {}\nnormalized: {} = 0\nvariables:  {}\nmax |coeff|: {}\ndegrees:    {:?}",
        eq,
        eq.normalized,
        eq.num_vars(),
        m,
        degrees
    );
    Ok(Report::new(json, text))
}

fn map_json(map: &LoweringMap) -> Value {
    json!({
        "n": map.target.n(),
        "system": map.target,
        "map": map.meaning_json(),
        "constraints": map.constraints.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn cmd_lower(mode: LowerMode, text: &str) -> Result<Report, CliError> {
    let eq = parse_equation(text)?;
    let map = match mode {
        LowerMode::Compact => lower_compact(&eq),
        LowerMode::Canonical => lower_canonical(&eq.normalized)?,
    };
    let mut json = map_json(&map);
    json["mode"] = json!(match mode {
        LowerMode::Compact => "compact",
        LowerMode::Canonical => "canonical",
    });
    json["equation"] = json!(eq.to_string());
    let mut text_out = format!("{}", map.target);
    text_out.push_str("meanings:\n");
    for (i, p) in &map.var_meaning {
        text_out.push_str(&format!("  x{} = {}\n", i, p));
    }
    Ok(Report::new(json, text_out))
}

fn cmd_bound(domain: BoundDomain, text: &str) -> Result<Report, CliError> {
    let eq = parse_equation(text)?;
    let d = &eq.normalized;
    let bound = match domain {
        BoundDomain::Integer => bound_d(d)?,
        BoundDomain::Nonneg => bound_nonneg(d)?,
        BoundDomain::Rational => bound_rational(d)?,
    };
    let materialized = bound.value_capped(1 << 14).map(|v| v.to_string());
    let json = json!({
        "domain": match domain {
            BoundDomain::Integer => "integer",
            BoundDomain::Nonneg => "nonneg",
            BoundDomain::Rational => "rational",
        },
        "equation": eq.to_string(),
        "bound": bound.to_string(),
        "materialized": materialized,
    });
    Ok(Report::new(json, bound.to_string()))
}

fn solve_options(limit: Option<usize>, threads: usize) -> SolveOptions {
    SolveOptions {
        limit: limit.unwrap_or(1_000_000),
        threads,
        propagate: true,
    }
}

fn checked_radius(box_radius: u64) -> Result<i64, CliError> {
    if box_radius > MAX_CLI_RADIUS {
        return Err(CliError::Usage(format!(
            "--box {} exceeds the supported maximum {}",
            box_radius, MAX_CLI_RADIUS
        )));
    }
    Ok(box_radius as i64)
}

fn cmd_solve(
    sys: &EnSystem,
    box_radius: u64,
    limit: Option<usize>,
    threads: usize,
) -> Result<Report, CliError> {
    let radius = checked_radius(box_radius)?;
    let set = enumerate_box(sys, radius, &solve_options(limit, threads));
    let json = json!({
        "n": set.n,
        "box_radius": set.box_radius,
        "truncated": set.truncated,
        "count": set.count.as_ref().map(|c| c.to_string()),
        "solutions": set.solutions,
    });
    let mut text = String::new();
    for s in &set.solutions {
        let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        text.push_str(&format!("({})\n", parts.join(", ")));
    }
    text.push_str(&format!(
        "{} solution(s) in [-{}, {}]^{}{}",
        set.solutions.len(),
        radius,
        radius,
        set.n,
        if set.truncated { " (truncated)" } else { "" }
    ));
    Ok(Report::new(json, text))
}

fn cmd_count(sys: &EnSystem, box_radius: u64, threads: usize) -> Result<Report, CliError> {
    let radius = checked_radius(box_radius)?;
    let count = count_solutions(sys, radius, &solve_options(None, threads));
    let json = json!({
        "n": sys.n(),
        "box_radius": radius,
        "count": count.to_string(),
    });
    Ok(Report::new(json, count.to_string()))
}

fn cmd_tilde(sys: &EnSystem) -> Result<Report, CliError> {
    let t = tilde(sys);
    let json = json!({"system": t});
    let text = format!("{}", t);
    Ok(Report::new(json, text))
}

fn cmd_hat(text: &str) -> Result<Report, CliError> {
    let d = if text.contains('=') {
        parse_equation(text)?.normalized
    } else {
        parse_polynomial(text)?
    };
    let h = hat(&d);
    let json = json!({
        "input": d.to_string(),
        "polynomial": h.to_string(),
        "num_vars": h.num_vars(),
    });
    let text = format!("{} = 0  ({} variables)", h, h.num_vars());
    Ok(Report::new(json, text))
}

fn cmd_rationalize(sys: &EnSystem) -> Result<Report, CliError> {
    let eqs = rationalize(sys);
    let texts: Vec<String> = eqs.iter().map(|e| e.to_string()).collect();
    let json = json!({
        "n": sys.n(),
        "num_vars": 12 * sys.n(),
        "block_order": ["y", "z", "s", "t", "u", "v", "p", "q", "a", "b", "c", "d"],
        "equations": texts,
    });
    Ok(Report::new(json, texts.join("\n")))
}

fn parse_tuple(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad tuple component {:?}", p.trim())))
        })
        .collect()
}

fn cmd_probe(tuple: &str, horizon: i64, strict: bool) -> Result<Report, CliError> {
    let x = parse_tuple(tuple)?;
    if x.is_empty() {
        return Err(CliError::Usage("tuple must be non-empty".into()));
    }
    let verdict = probe(&x, horizon, strict)?;
    let json = json!({
        "tuple": x,
        "horizon": horizon,
        "strict": strict,
        "verdict": verdict,
    });
    let text = format!("{:?}", verdict);
    Ok(Report::new(json, text))
}

fn cmd_survey(
    n: usize,
    growth_box: i64,
    seed: u64,
    samples: usize,
    threads: usize,
) -> Result<Report, CliError> {
    if n == 0 || n > 3 {
        return Err(CliError::Usage(format!(
            "survey supports n in 1..=3, got {}",
            n
        )));
    }
    // Classification box: the materialized conjectural bound 2^(2^(n-1)).
    let b_classify: i64 = 1 << (1 << (n - 1));
    let opts = SurveyOptions {
        samples,
        seed,
        threads,
    };
    let classifications = survey(n, b_classify, growth_box, &opts)?;
    let lines: Vec<Value> = classifications
        .iter()
        .map(|c| serde_json::to_value(c).unwrap())
        .collect();
    let mut text = String::new();
    let mut beyond = 0usize;
    for c in &classifications {
        if matches!(c.status, crate::explorer::SurveyStatus::SolutionBeyondBound) {
            beyond += 1;
        }
    }
    text.push_str(&format!(
        "surveyed {} canonical systems at n={} (classify box {}, growth box {})\n",
        classifications.len(),
        n,
        b_classify,
        growth_box
    ));
    let count_with = |status: crate::explorer::SurveyStatus| {
        classifications
            .iter()
            .filter(|c| c.status == status)
            .count()
    };
    text.push_str(&format!(
        "finite_within_bound: {}\ngrowing_family: {}\nsolution_beyond_bound: {}\n",
        count_with(crate::explorer::SurveyStatus::FiniteWithinBound),
        count_with(crate::explorer::SurveyStatus::GrowingFamily),
        beyond,
    ));
    let json = Value::Array(lines.clone());
    Ok(Report {
        json,
        json_lines: Some(lines),
        text,
    })
}

fn cmd_semi(
    text: &str,
    domain: SemiDomain,
    override_start: Option<i64>,
    cutoff: i64,
) -> Result<Report, CliError> {
    let eq = parse_equation(text)?;
    let domain = match domain {
        SemiDomain::Integer => SearchDomain::Integers,
        SemiDomain::Nonneg => SearchDomain::NonNegative,
    };
    if let Some(start) = override_start {
        if cutoff < start {
            return Err(CliError::Usage(format!(
                "--cutoff {} is below --override-start {}",
                cutoff, start
            )));
        }
    }
    let report = semi_algorithm(&eq.normalized, domain, override_start, cutoff)?;
    let json = serde_json::to_value(&report).unwrap();
    let text = format!("{:?}", report.outcome);
    Ok(Report::new(json, text))
}

fn cmd_gallery_chain(n: usize) -> Result<Report, CliError> {
    if n < 2 {
        return Err(CliError::Usage("chain needs n ≥ 2".into()));
    }
    let sys = build_chain(n);
    let expected: Vec<String> = chain_solution(n).iter().map(|v| v.to_string()).collect();
    let solutions = if n <= 6 {
        let radius = 1i64 << (1u32 << (n - 1));
        let set = enumerate_box(&sys, radius, &SolveOptions::default());
        Some(json!({
            "box_radius": radius,
            "solutions": set.solutions,
        }))
    } else {
        None // the box 2^(2^(n-1)) no longer fits the machine-size solver
    };
    let json = json!({
        "n": n,
        "system": sys,
        "nonzero_solution": expected,
        "enumeration": solutions,
    });
    let text = format!("{}\nnonzero solution: ({})", sys, expected.join(", "));
    Ok(Report::new(json, text))
}

fn cmd_gallery_thm7(n: usize, threads: usize) -> Result<Report, CliError> {
    if n < 10 {
        return Err(CliError::Usage("the 1156-family needs n ≥ 10".into()));
    }
    let sys = build_family_1156(n);
    let radius = 1i64 << 16;
    let count = count_solutions(&sys, radius, &solve_options(None, threads));
    let json = json!({
        "n": n,
        "system": sys,
        "box_radius": radius,
        "count": count.to_string(),
        "expected": format!("1156 * 2^{}", n - 10),
    });
    let text = format!("{}\ncount in [-2^16, 2^16]^{}: {}", sys, n, count);
    Ok(Report::new(json, text))
}

fn cmd_gallery_thm8(depth: u32) -> Result<Report, CliError> {
    if !(2..=4).contains(&depth) {
        return Err(CliError::Usage("depth must be 2, 3, or 4".into()));
    }
    let t = build_beyond_bound(depth);
    let witness = assemble_beyond_bound_witness(&t);
    let valid = t.system.check_solution(&witness).unwrap();
    let floor = BigInt::from(t.base) + BigInt::from(t.base).pow(t.base as u32 - 2);
    let floor_ok = witness[10] >= floor;
    let json = json!({
        "depth": depth,
        "base": t.base,
        "modulus": t.modulus.to_string(),
        "system": t.system,
        "witness_valid": valid,
        "x11_bits": witness[10].bits(),
        "x12_bits": witness[11].bits(),
        "x11_meets_floor": floor_ok,
        "floor": format!("{} + {}^{}", t.base, t.base, t.base - 2),
    });
    let text = format!(
        "{}\nbase {} modulus {}\nwitness valid: {}, |x11| bits: {}, floor check: {}",
        t.system,
        t.base,
        t.modulus,
        valid,
        witness[10].bits(),
        floor_ok
    );
    Ok(Report::new(json, text))
}

fn cmd_gallery_example(threads: usize) -> Result<Report, CliError> {
    let report = worked_example(threads);
    let json = serde_json::to_value(&report).unwrap();
    let mut text = format!(
        "{}\nlowered to n = {}, bound {} = {}\nscan: {} < x1 < {}\nsolutions:\n",
        report.equation,
        report.n,
        report.bound,
        report.bound_value,
        report.x1_greater_than,
        report.x1_less_than
    );
    for (a, b) in &report.solutions {
        text.push_str(&format!("  ({}, {})\n", a, b));
    }
    Ok(Report::new(json, text))
}

// --- input and cache helpers ---

fn read_system(path: &Path) -> Result<EnSystem, CliError> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))?;
    serde_json::from_str(&data)
        .map_err(|e| CliError::Usage(format!("bad system file {}: {}", path.display(), e)))
}

fn fnv1a64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}

fn cache_path(dir: &Path, key: &Value, format: Format) -> PathBuf {
    let cmd = key["cmd"].as_str().unwrap_or("cmd");
    let keyed = format!("{}|{:?}", serde_json::to_string(key).unwrap(), format);
    dir.join(format!("{}-{:016x}.json", cmd, fnv1a64(keyed.as_bytes())))
}

fn cache_lookup(dir: &Option<PathBuf>, key: &Value, format: Format) -> Option<String> {
    let dir = dir.as_ref()?;
    let path = cache_path(dir, key, format);
    let data = std::fs::read_to_string(path).ok()?;
    let doc: Value = serde_json::from_str(&data).ok()?;
    if &doc["key"] == key {
        doc["output"].as_str().map(|s| s.to_string())
    } else {
        None
    }
}

fn cache_store(dir: &Option<PathBuf>, key: &Value, format: Format, output: &str) {
    let Some(dir) = dir else { return };
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let doc = json!({"key": key, "output": output});
    let path = cache_path(dir, key, format);
    let _ = std::fs::write(path, serde_json::to_string(&doc).unwrap());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliOutcome {
        run(std::iter::once("enform").chain(args.iter().copied()))
    }

    #[test]
    fn bound_integer_linear() {
        let out = run_args(&["bound", "--domain", "integer", "x1 - 1 = 0"]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.stdout.trim(), "2^(2^8)");
    }

    #[test]
    fn usage_errors_exit_two() {
        let out = run_args(&["nonsense"]);
        assert_eq!(out.code, EXIT_USAGE);
        let out = run_args(&["parse", "x1 + 1"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("'='"));
    }

    #[test]
    fn infeasible_lowering_exits_three() {
        let out = run_args(&["lower", "--mode", "canonical", "x1^5 - x1 = x2^2 - x2"]);
        assert_eq!(out.code, EXIT_INFEASIBLE);
        assert!(out.stderr.contains("387420489"));
    }

    #[test]
    fn help_exits_zero() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("Usage"));
    }

    #[test]
    fn parse_json_shape() {
        let out = run_args(&["parse", "--format", "json", "x1^5 - x1 = x2^2 - x2"]);
        assert_eq!(out.code, EXIT_OK);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["num_vars"], 2);
        assert_eq!(v["max_abs_coeff"], "1");
        assert_eq!(v["degrees"], json!([5, 2]));
    }

    #[test]
    fn probe_round_trip() {
        let out = run_args(&["probe", "--horizon", "10", "--format", "json", "5"]);
        assert_eq!(out.code, EXIT_OK);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["verdict"]["kind"], "witness_found");
        assert_eq!(v["verdict"]["witness"], json!([6]));
    }
}
