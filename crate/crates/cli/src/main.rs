//! `semicyclic`: evaluate tangle invariants in the semicyclic representations and
//! run the identity suites.

mod suites;

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use semicyclic::evaluator::{complex_value, evaluate, kashaev};
use semicyclic::reps::{default_index, parse_a};
use semicyclic::tangle::{builtin, parse, Diagram, BUILTINS};
use semicyclic::{CycScalar, FieldSpec, Rep};

use suites::Suite;

#[derive(Parser, Debug)]
#[command(name = "semicyclic", version, about = "Semicyclic U_q(sl_2) tangle invariants in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a diagram in one representation.
    Compute {
        #[command(flatten)]
        params: Params,
        /// Builtin name or path to a `tangle v1` file.
        #[arg(long, default_value = "unknot")]
        diagram: String,
        /// Evaluate in the standard representation instead.
        #[arg(long)]
        standard: bool,
        #[arg(long, value_enum, default_value_t = Format::Exact)]
        format: Format,
    },
    /// Run an identity suite and print one line per identity.
    Verify {
        #[command(flatten)]
        params: Params,
        /// relations, rmatrix, ybe, fusion, turaev, kashaev, words or all.
        #[arg(value_name = "SUITE", conflicts_with = "suite")]
        positional: Option<String>,
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Exact)]
        format: Format,
    },
    /// Semicyclic and standard values of builtin knots over several N.
    Table {
        /// Comma-separated odd N values.
        #[arg(long, default_value = "3,5,7")]
        n: String,
        /// Comma-separated builtin names; empty for none.
        #[arg(long, default_value = "trefoil,figure_eight")]
        knots: String,
        #[arg(long, value_enum, default_value_t = Format::Exact)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
struct Params {
    #[arg(long, default_value_t = 3)]
    n: i64,
    /// `sym`, a rational `p/q`, `q` or `q^k`.
    #[arg(long, default_value = "sym")]
    a: String,
    /// Semicyclic index, reduced mod N, or `default` for (N+1)/2.
    #[arg(long = "rep-index", default_value = "default")]
    rep_index: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Exact,
    Complex,
    Json,
}

/// A parsed and validated configuration.
pub struct RunConfig {
    pub field: FieldSpec,
    pub a: CycScalar,
    pub index: usize,
}

impl RunConfig {
    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn semicyclic(&self) -> Rep {
        Rep::semicyclic(&self.field, &self.a, self.index as i64).expect("a is a unit")
    }
}

/// An error that ends the run with a message and a nonzero status.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { message: message.into(), code: 2 }
    }

    fn check(message: impl Into<String>) -> Failure {
        Failure { message: message.into(), code: 1 }
    }
}

fn field_for(n: i64) -> Result<FieldSpec, Failure> {
    if n < 3 || n % 2 == 0 {
        return Err(Failure::usage(format!("N must be odd and >= 3 (got {n})")));
    }
    if n > 99 {
        return Err(Failure::usage(format!("N={n} is too large for exact computation")));
    }
    FieldSpec::new(n as u32).map_err(|e| Failure::usage(e.to_string()))
}

fn config(p: &Params) -> Result<RunConfig, Failure> {
    let field = field_for(p.n)?;
    let a = parse_a(&field, &p.a).map_err(|e| Failure::usage(e.to_string()))?;
    let n = field.n() as i64;
    let index = match p.rep_index.as_str() {
        "default" => default_index(field.n()),
        s => s
            .parse::<i64>()
            .map_err(|_| Failure::usage(format!("rep-index must be an integer or `default` (got {s:?})")))?
            .rem_euclid(n) as usize,
    };
    Ok(RunConfig { field, a, index })
}

fn load_diagram(name: &str) -> Result<Diagram, Failure> {
    if BUILTINS.contains(&name) {
        return builtin(name).map_err(|e| Failure::usage(e.to_string()));
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(Failure::usage(format!(
            "no builtin or file named {name:?} (builtins: {})",
            BUILTINS.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read diagram file {name}: {e}")))?;
    parse(&text).map_err(|e| Failure::usage(format!("{name}: {e}")))
}

fn complex_text(x: &CycScalar) -> String {
    let c = complex_value(x);
    format!("{:.12} {} {:.12}i", c.re, if c.im < 0.0 { '-' } else { '+' }, c.im.abs())
}

fn cmd_compute(p: &Params, diagram: &str, standard: bool, format: Format) -> Result<(), Failure> {
    let cfg = config(p)?;
    let d = load_diagram(diagram)?;
    let rep = if standard { Rep::standard(&cfg.field) } else { cfg.semicyclic() };
    let ev = evaluate(&d, &rep).map_err(|e| Failure::check(e.to_string()))?;
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&ev.to_json(diagram, cfg.n())).unwrap());
        }
        Format::Exact | Format::Complex => {
            let show = |x: &CycScalar| if format == Format::Exact { x.to_string() } else { complex_text(x) };
            match &ev.scalar {
                Some(s) => println!("{}", show(s)),
                None => {
                    let top: String = ev.map.top.iter().map(|o| o.symbol()).collect();
                    let bottom: String = ev.map.bottom.iter().map(|o| o.symbol()).collect();
                    println!("# map {bottom} -> {top}, {} nonzero entries", ev.map.matrix.nnz());
                    for (r, c, x) in ev.map.matrix.entries() {
                        println!("{r} {c} {}", show(x));
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_verify(p: &Params, suite: &str, format: Format) -> Result<(), Failure> {
    let suite: Suite = suite.parse().map_err(Failure::usage)?;
    let cfg = config(p)?;
    let seed = match std::env::var("SEMICYCLIC_SEED") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| Failure::usage(format!("SEMICYCLIC_SEED must be an unsigned integer (got {s:?})")))?,
        Err(_) => suites::DEFAULT_SEED,
    };
    let lines = suites::run(suite, &cfg, seed).map_err(|e| Failure::check(e.to_string()))?;
    let failed = lines.iter().filter(|l| !l.ok()).count();
    match format {
        Format::Json => {
            let out = json!({
                "N": cfg.n(),
                "a": cfg.a.to_string(),
                "rep_index": cfg.index,
                "seed": seed,
                "results": lines.iter().map(suites::Line::to_json).collect::<Vec<_>>(),
                "failed": failed,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        _ => {
            println!("N={} a={} i={}", cfg.n(), cfg.a, cfg.index);
            for l in &lines {
                println!("{l}");
            }
            println!("{} checks, {} failed", lines.len(), failed);
        }
    }
    if failed > 0 {
        return Err(Failure::check(format!("{failed} asserted identities failed")));
    }
    Ok(())
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn cmd_table(ns: &str, knots: &str, format: Format) -> Result<(), Failure> {
    let mut fields = vec![];
    for n in split_list(ns) {
        let n: i64 = n.parse().map_err(|_| Failure::usage(format!("not an integer N: {n:?}")))?;
        fields.push(field_for(n)?);
    }
    let mut diagrams = vec![];
    for k in split_list(knots) {
        if !BUILTINS.contains(&k) {
            return Err(Failure::usage(format!("unknown knot {k:?} (builtins: {})", BUILTINS.join(", "))));
        }
        diagrams.push((k, builtin(k).unwrap()));
    }
    let mut rows = vec![];
    for (name, d) in &diagrams {
        for f in &fields {
            let rep = Rep::semicyclic(f, &f.a_pow(1), default_index(f.n()) as i64).unwrap();
            let semi = evaluate(d, &rep).map_err(|e| Failure::check(e.to_string()))?.scalar.unwrap();
            let std = kashaev(d, f).map_err(|e| Failure::check(e.to_string()))?;
            rows.push((name, f.n(), semi, std));
        }
    }
    if format == Format::Json {
        let out: Vec<_> = rows
            .iter()
            .map(|(k, n, s, t)| {
                let c = complex_value(s);
                json!({"knot": k, "N": n, "semicyclic": s.to_json(), "standard": t.to_json(),
                       "complex": [c.re, c.im], "equal": s == t})
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(());
    }
    println!("{:<14} {:>2}  {:<40} {:<40} {:<34} equal", "knot", "N", "semicyclic", "standard", "complex");
    for (k, n, s, t) in &rows {
        println!("{:<14} {:>2}  {:<40} {:<40} {:<34} {}", k, n, s.to_string(), t.to_string(), complex_text(s), s == t);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { params, diagram, standard, format } => cmd_compute(params, diagram, *standard, *format),
        Command::Verify { params, positional, suite, format } => {
            let name = positional.as_deref().or(suite.as_deref()).unwrap_or("all");
            cmd_verify(params, name, *format)
        }
        Command::Table { n, knots, format } => cmd_table(n, knots, *format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
