use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use msegcalc::arith::{ModContext, Order};
use msegcalc::calculus::{is_irreducible_product, jacquet, Composition, Irreducibility};
use msegcalc::distinction::{classify, Status};
use msegcalc::dsl::{parse_expr, parse_irrep};
use msegcalc::reps::Expr;
use msegcalc::solver::decompose;
use msegcalc::structure::{derivative_full, semisimplify, structure};
use msegcalc::{render, verify, CalcError};
use serde_json::{json, Value};

/// Multisegment calculus for mod-l representations of GL(n).
#[derive(Parser)]
#[command(name = "msegcalc", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// The prime l (0 or absent for characteristic zero).
    #[arg(long, global = true)]
    ell: Option<u64>,
    /// Order of q mod l: a positive integer or `inf`.
    #[arg(long, global = true, value_parser = parse_order)]
    e: Option<Order>,
    /// Emit a versioned JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include the per-candidate elimination log.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Distinction of an irreducible label.
    Classify { expr: String },
    /// Composition factors of a product.
    Semisimplify { expr: String },
    /// Length, socle, cosocle and composition series where known.
    Structure { expr: String },
    /// Semisimplified Jacquet module along a composition.
    Jacquet {
        /// Comma-separated composition, e.g. 2,1,1.
        #[arg(long)]
        beta: String,
        expr: String,
    },
    /// The k-th derivative.
    Derive {
        #[arg(long)]
        k: u64,
        expr: String,
    },
    /// Whether a product is irreducible.
    Irreducible { expr: String },
    /// Candidate-elimination decomposition of a product.
    Solve { expr: String },
    /// The contragredient.
    Dual { expr: String },
    /// Run a reproduction sweep.
    Verify {
        /// `all` or a suite name.
        #[arg(default_value = "all")]
        suite: String,
    },
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse::<Order>().map_err(|e| e.to_string())
}

const USAGE: u8 = 1;
const UNKNOWN: u8 = 2;
const VERIFY_FAILED: u8 = 3;

struct Reply {
    text: String,
    json: Value,
    code: u8,
}

impl Reply {
    fn ok(text: String, json: Value) -> Self {
        Reply { text, json, code: 0 }
    }
}

fn beta_of(s: &str) -> Result<Composition, CalcError> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CalcError::parse(0, format!("--beta {s:?}: {e}")))?;
    Composition::new(parts)
}

fn factors(x: &Expr) -> Vec<Expr> {
    match x {
        Expr::Prod(fs) => fs.clone(),
        Expr::Irr(_) => vec![x.clone()],
    }
}

fn run(cmd: &Command, opts: &Opts, ctx: &ModContext) -> Result<Reply, CalcError> {
    Ok(match cmd {
        Command::Classify { expr } => {
            let v = classify(&parse_irrep(expr, ctx)?, ctx)?;
            let code = if v.status == Status::Unknown { UNKNOWN } else { 0 };
            Reply { text: render::verdict(&v), json: render::verdict_json(&v), code }
        }
        Command::Semisimplify { expr } => {
            let g = semisimplify(&parse_expr(expr, ctx)?, ctx)?;
            Reply::ok(render::groth(&g, ctx), render::groth_json(&g, ctx))
        }
        Command::Structure { expr } => {
            let r = structure(&parse_expr(expr, ctx)?, ctx)?;
            Reply::ok(render::structure(&r, ctx), render::structure_json(&r, ctx))
        }
        Command::Jacquet { beta, expr } => {
            let j = jacquet(&parse_expr(expr, ctx)?, &beta_of(beta)?, ctx)?;
            Reply::ok(render::jacquet(&j, ctx), render::jacquet_json(&j, ctx))
        }
        Command::Derive { k, expr } => {
            let d = derivative_full(&parse_expr(expr, ctx)?, *k, ctx)?;
            Reply::ok(render::derivative(&d, ctx), render::derivative_json(&d, ctx))
        }
        Command::Irreducible { expr } => {
            let r = is_irreducible_product(&factors(&parse_expr(expr, ctx)?), ctx);
            let (word, code) = match r {
                Irreducibility::Irreducible => ("irreducible", 0),
                Irreducibility::Reducible => ("reducible", 0),
                Irreducibility::Unknown => ("unknown", UNKNOWN),
            };
            Reply { text: word.to_string(), json: json!({ "irreducibility": word }), code }
        }
        Command::Solve { expr } => {
            let r = decompose(&parse_expr(expr, ctx)?, ctx)?;
            Reply::ok(render::solve(&r, ctx, opts.trace), render::solve_json(&r, ctx, opts.trace))
        }
        Command::Dual { expr } => {
            let d = parse_expr(expr, ctx)?.dual(ctx);
            let text = render::expr(&d, ctx);
            Reply::ok(text.clone(), json!({ "dual": text }))
        }
        Command::Verify { suite } => {
            let outcomes = verify::run(suite)?;
            let mut lines = Vec::new();
            for o in &outcomes {
                lines.push(o.line());
                lines.extend(o.failures.iter().map(|f| format!("    - {f}")));
                lines.extend(o.notes.iter().map(|n| format!("    note: {n}")));
            }
            let json = Value::Array(
                outcomes
                    .iter()
                    .map(|o| {
                        json!({
                            "criterion": o.criterion,
                            "suite": o.suite,
                            "title": o.title,
                            "passed": o.passed(),
                            "checks": o.cases,
                            "failures": o.failures,
                            "notes": o.notes,
                        })
                    })
                    .collect(),
            );
            let code = if outcomes.iter().all(|o| o.passed()) { 0 } else { VERIFY_FAILED };
            Reply { text: lines.join("\n"), json, code }
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify { .. } => "classify",
        Command::Semisimplify { .. } => "semisimplify",
        Command::Structure { .. } => "structure",
        Command::Jacquet { .. } => "jacquet",
        Command::Derive { .. } => "derive",
        Command::Irreducible { .. } => "irreducible",
        Command::Solve { .. } => "solve",
        Command::Dual { .. } => "dual",
        Command::Verify { .. } => "verify",
    }
}

fn input(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Classify { expr }
        | Command::Semisimplify { expr }
        | Command::Structure { expr }
        | Command::Jacquet { expr, .. }
        | Command::Derive { expr, .. }
        | Command::Irreducible { expr }
        | Command::Solve { expr }
        | Command::Dual { expr } => Some(expr),
        Command::Verify { .. } => None,
    }
}

fn error_json(err: &CalcError) -> Value {
    let kind = match err {
        CalcError::Parse { .. } => "parse",
        CalcError::Degree(_) => "degree",
        CalcError::OutOfRange(_) => "out-of-range",
        CalcError::InvalidContext(_) => "invalid-context",
        CalcError::Unknown(_) => "unknown",
    };
    let mut v = json!({ "kind": kind, "message": err.to_string() });
    if let CalcError::Parse { pos, .. } = err {
        v["position"] = json!(pos);
    }
    v
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let name = command_name(&cli.command);
    let outcome = ModContext::from_flags(cli.opts.ell, cli.opts.e)
        .and_then(|ctx| run(&cli.command, &cli.opts, &ctx).map(|r| (ctx, r)));
    match outcome {
        Ok((ctx, reply)) => {
            if cli.opts.json {
                let doc = render::envelope(name, &ctx, input(&cli.command), reply.json);
                println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            } else {
                println!("{}", reply.text);
            }
            ExitCode::from(reply.code)
        }
        Err(err) => {
            if cli.opts.json {
                let doc = json!({ "schema": render::SCHEMA, "command": name, "error": error_json(&err) });
                println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(if err.is_unknown() { UNKNOWN } else { USAGE })
        }
    }
}
