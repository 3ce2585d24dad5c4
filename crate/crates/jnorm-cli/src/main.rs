//! `jnorm`: exact computations in the normed planes and spaces built by
//! the `jnorm` library.
//!
//! Exit status is 0 for success or a true verdict, 1 for a false verdict
//! and 2 for usage or input errors.

mod config;
mod geometry;
mod logic;
mod mult;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jnorm::geometry::Dimension;

use config::{parse_dimension, Config, FieldChoice};
use output::{Out, OutputMode};

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
}

#[derive(Debug, Parser)]
#[command(name = "jnorm", version, about = "Exact normed-plane geometry and the arithmetic it defines")]
struct Cli {
    /// First base of the pair keys p^m q^n
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    /// Second base of the pair keys p^m q^n
    #[arg(long, global = true, default_value_t = 5)]
    q: u32,
    /// Scalar field
    #[arg(long, global = true, value_enum, default_value_t = FieldChoice::Rat)]
    field: FieldChoice,
    /// Dimension of the space: a natural >= 2 or "inf"
    #[arg(long, global = true, value_parser = parse_dimension, default_value = "2")]
    dimension: Dimension,
    /// Prefix length for sequences, vertices, facets and run searches
    #[arg(long, global = true, default_value_t = 64)]
    depth: usize,
    /// Largest natural sampled by bounded evaluation
    #[arg(long, global = true, default_value_t = 25)]
    bound: u32,
    /// Human-readable text or JSON-lines records
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stage table of pairs, edge lengths a_k and gradient steps b_k
    Constants {
        /// Number of stages (default: depth / 4)
        #[arg(long)]
        stages: Option<usize>,
    },
    /// Chain vertices v_0..v_N with ray gradients, and their limit
    Vertices {
        /// Last vertex index (default: depth)
        #[arg(long)]
        count: Option<usize>,
    },
    /// The first N chain facets plus the east-limit and north-east faces
    Facets {
        /// Number of chain facets (default: depth)
        #[arg(long)]
        count: Option<usize>,
    },
    /// Exact norm and facet classification of a vector
    Norm {
        /// "(x,y)" or, in higher dimension, "(x,y,w1,w2,...)"
        #[arg(long = "vec", allow_hyphen_values = true)]
        vector: String,
    },
    /// Decide the multiplication graph and certify products
    MultCheck {
        #[arg(long, allow_hyphen_values = true, requires_all = ["y", "z"], conflicts_with = "table")]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires_all = ["x", "z"])]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires_all = ["x", "y"])]
        z: Option<String>,
        /// Check every x, y <= MAX and z <= MAX^2
        #[arg(long, value_name = "MAX", required_unless_present = "x")]
        table: Option<u32>,
    },
    /// Translate an arithmetic sentence into the scalar language
    Translate {
        /// Sentence text; read from stdin when absent or "-"
        formula: Option<String>,
        /// Translate the built-in axiom Qi instead
        #[arg(long, value_name = "I", conflicts_with = "formula")]
        builtin: Option<usize>,
    },
    /// Expand mu and nu into the normed-space language
    Expand {
        /// Formula text; read from stdin when absent or "-"
        formula: Option<String>,
        /// A free scalar variable of the formula (repeatable)
        #[arg(long = "free", value_name = "NAME")]
        free: Vec<String>,
    },
    /// Bounded evaluation of built-in or given scalar sentences
    Verify {
        #[arg(value_enum)]
        target: logic::Target,
        /// For `sentence`: the text, or stdin when absent or "-"
        formula: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Constants { .. } => "constants",
            Command::Vertices { .. } => "vertices",
            Command::Facets { .. } => "facets",
            Command::Norm { .. } => "norm",
            Command::MultCheck { .. } => "mult-check",
            Command::Translate { .. } => "translate",
            Command::Expand { .. } => "expand",
            Command::Verify { .. } => "verify",
        }
    }
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    let cfg = Config {
        p: cli.p,
        q: cli.q,
        field: cli.field,
        dimension: cli.dimension,
        depth: cli.depth,
        bound: cli.bound,
    };
    cfg.params()?;
    let mut out = Out::new(cli.output, cli.command.name(), &cfg);
    match &cli.command {
        Command::Constants { stages } => geometry::constants(&cfg, &mut out, *stages),
        Command::Vertices { count } => geometry::vertices(&cfg, &mut out, *count),
        Command::Facets { count } => geometry::facets(&cfg, &mut out, *count),
        Command::Norm { vector } => geometry::norm(&cfg, &mut out, vector),
        Command::MultCheck { x: Some(x), y: Some(y), z: Some(z), .. } => mult::single(&cfg, &mut out, x, y, z),
        Command::MultCheck { table: Some(max), .. } => mult::table(&cfg, &mut out, *max),
        Command::MultCheck { .. } => Err(CliError::Input("mult-check needs --x --y --z or --table MAX".into())),
        Command::Translate { formula, builtin } => logic::translate_cmd(&mut out, formula.as_deref(), *builtin),
        Command::Expand { formula, free } => logic::expand_cmd(&mut out, formula.as_deref(), free),
        Command::Verify { target, formula } => logic::verify(&cfg, &mut out, *target, formula.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version exit 0, every usage error 2
            return ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2));
        }
    };
    match run(cli) {
        Ok(Verdict::True) => ExitCode::SUCCESS,
        Ok(Verdict::False) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("jnorm: {msg}");
            ExitCode::from(2)
        }
    }
}
