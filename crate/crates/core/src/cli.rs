//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid polytope or other failure, 2 parse
//! error, 3 formula method on a non-family expression, 4 budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::autom::{aut_order, closure, described_generators};
use crate::config::{Config, DEFAULT_MAX_CLOSURE, DEFAULT_MAX_ELEMENTS};
use crate::error::Error;
use crate::expr::{construct, eval_expr, parse_expr, ConstructionExpr};
use crate::family::{enumerate_symbolic, FamilyNode, NodeSummary};
use crate::poset::PosetJson;
use crate::structure::{prism_decompose, pyramid_decompose};
use crate::verify::{verify_json, verify_polytope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_FAMILY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Deepest `family --steps` accepted.
const MAX_FAMILY_STEPS: usize = 24;

#[derive(Debug, Parser)]
#[command(name = "polytope", version, about = "Face lattices of joins and prisms, and their automorphism groups")]
struct Cli {
    /// Element cap for constructions and brute-force searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    /// Cap on the size of a generated permutation group.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CLOSURE)]
    max_closure: usize,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Brute,
    Generators,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    Pyramid,
    Prism,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the face lattice of EXPR.
    Build {
        expr: String,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check the polytope axioms on EXPR or on a JSON lattice.
    Verify {
        #[arg(required_unless_present = "json", conflicts_with = "json")]
        expr: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Automorphism group of EXPR.
    Aut {
        expr: String,
        /// Defaults to formula for family expressions, brute otherwise.
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Split EXPR as a pyramid over, or a prism over, some cofactor.
    Decompose {
        expr: String,
        #[arg(long = "as", value_enum)]
        shape: Shape,
    },
    /// List all family members after N steps.
    Family {
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::BudgetExceeded { .. } | Error::SearchBudgetExceeded { .. } | Error::ClosureBudgetExceeded { .. } => {
                EXIT_BUDGET
            }
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let config = Config {
        max_elements: cli.max_elements,
        max_closure: cli.max_closure,
        parallel: !cli.sequential,
    };
    match dispatch(cli.command, &config, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse(text: &str) -> std::result::Result<ConstructionExpr, Failure> {
    parse_expr(text).map_err(|e| Error::from(e).into())
}

fn dispatch(command: Command, config: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Build { expr, out: format, output } => {
            let p = eval_expr(&parse(&expr)?, config)?;
            let text = match format {
                OutFormat::Json => serde_json::to_string_pretty(&p.to_json()).expect("serializable") + "\n",
                OutFormat::Dot => p.to_dot(),
            };
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { expr, json } => {
            let report = match (expr, json) {
                (Some(expr), _) => verify_polytope(&construct(&parse(&expr)?, config)?, config),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)?;
                    let lattice: PosetJson = serde_json::from_str(&text).map_err(|e| Failure {
                        code: EXIT_INVALID,
                        message: format!("{}: {e}", path.display()),
                    })?;
                    verify_json(&lattice, config)?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
            Ok(if report.is_polytope { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Aut { expr, method } => aut(&expr, method, config, out, err),
        Command::Decompose { expr, shape } => {
            let p = eval_expr(&parse(&expr)?, config)?;
            let cofactor = match shape {
                Shape::Pyramid => pyramid_decompose(&p, config)?,
                Shape::Prism => prism_decompose(&p, config)?,
            };
            match cofactor {
                Some(q) => writeln!(out, "{}", serde_json::to_string_pretty(&q.to_json()).expect("serializable"))?,
                None => writeln!(out, "none")?,
            }
            Ok(EXIT_OK)
        }
        Command::Family { steps, json } => {
            if steps > MAX_FAMILY_STEPS {
                return Err(Failure {
                    code: EXIT_BUDGET,
                    message: format!("at most {MAX_FAMILY_STEPS} steps ({} nodes)", 1u64 << MAX_FAMILY_STEPS),
                });
            }
            let nodes = enumerate_symbolic(steps);
            if json {
                let summaries: Vec<NodeSummary> = nodes.iter().map(FamilyNode::summary).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&summaries).expect("serializable"))?;
            } else {
                for node in &nodes {
                    writeln!(
                        out,
                        "{}\tk={} prod={} A={}\tAut={}\torder={}",
                        node.path_string(),
                        node.k,
                        node.summary().prod,
                        node.a,
                        node.aut_structure(),
                        node.aut_order()
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn aut(text: &str, method: Option<Method>, config: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let e = parse(text)?;
    let path = e.family_path();
    let method = match (method, &path) {
        (Some(m), _) => m,
        (None, Some(_)) => Method::Formula,
        (None, None) => {
            writeln!(err, "note: not a family expression, falling back to brute force")?;
            Method::Brute
        }
    };
    let not_family = || Failure {
        code: EXIT_NOT_FAMILY,
        message: format!("`{text}` is not I followed by *pt / xI steps"),
    };
    match method {
        Method::Formula => {
            let path = path.ok_or_else(not_family)?;
            let node = FamilyNode::symbolic_from_path(&path);
            writeln!(out, "path: {}", node.path_string())?;
            writeln!(out, "state: A = {}, k = {}, prod = {}", node.a, node.k, node.summary().prod)?;
            writeln!(out, "aut: {}", node.aut_structure())?;
            writeln!(out, "normal form: {}", node.aut_descriptor())?;
            writeln!(out, "order: {}", node.aut_order())?;
        }
        Method::Brute => {
            let p = eval_expr(&e, config)?;
            writeln!(out, "elements: {}", p.len())?;
            writeln!(out, "order: {}", aut_order(&p, config)?)?;
        }
        Method::Generators => {
            let path = path.ok_or_else(not_family)?;
            let node = FamilyNode::from_path(&path, config);
            if node.polytope.is_none() {
                return Err(Error::BudgetExceeded {
                    elements: node.elements,
                    cap: config.max_elements,
                }
                .into());
            }
            let gens = described_generators(&node)?;
            writeln!(out, "generators: {}", gens.len())?;
            writeln!(out, "order: {}", closure(&gens, config.max_closure)?)?;
        }
    }
    Ok(EXIT_OK)
}
