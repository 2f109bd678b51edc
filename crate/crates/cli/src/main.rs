mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use input::InputError;
use report::{Format, Report};

pub const DEFAULT_SEED: u64 = 0x10ca1;

#[derive(Parser, Debug)]
#[command(name = "lochar", version, about = "Exact checks for symmetric monoidal categories of matrices, relations and abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Object size bound; each subcommand documents its default.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    bound: Option<u64>,
}

/// Instance selection shared by the category subcommands.
#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// mat-bool, rel-bool, mat, rel, pid, hom-table or counterexample.
    #[arg(long, default_value = "mat-bool")]
    instance: String,
    /// Scalar algebra for `mat` and `rel`: a name such as `boolean` or
    /// `integers-mod-4`, a descriptor, or `@file`.
    #[arg(long)]
    algebra: Option<String>,
    /// Hom-table category for `hom-table`: inline JSON or `@file`.
    #[arg(long)]
    table: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form of an integer matrix.
    Snf {
        /// Rows as a JSON array of integer arrays.
        #[arg(long)]
        matrix: String,
    },
    /// Primary decomposition of a module given by factors or a presentation.
    Decompose {
        #[arg(long)]
        module: String,
    },
    /// Tensor product of modules, cross-checked against the presentation oracle.
    Tensor {
        #[arg(long, required = true)]
        module: Vec<String>,
    },
    /// Factorisation of an object into tensor primes.
    Factorize {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        object: String,
    },
    /// Tensor divisibility `a | b`.
    Divides {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Accept the unit as a cofactor.
        #[arg(long)]
        non_strict: bool,
    },
    /// Product tomography on families between small objects.
    Tomography {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 2)]
        max_dim: u64,
        #[arg(long, default_value_t = 2)]
        max_family: usize,
        /// Skip the sufficient conditions and enumerate every family.
        #[arg(long)]
        exhaustive: bool,
        /// Re-verify a counterexample `{"f": [..], "g": [..]}` instead of searching.
        #[arg(long)]
        counterexample: Option<String>,
    },
    /// Certifies that atoms form a tensor-free subcategory.
    FreeSubcat {
        #[command(flatten)]
        inst: InstanceArgs,
        /// JSON array of objects; the unit must be included.
        #[arg(long)]
        atoms: String,
        #[arg(long, default_value_t = 3)]
        max_dim: u64,
        #[arg(long, default_value_t = 2)]
        max_family: usize,
    },
    /// Lifts a functor on prime atoms of Mat(S) and checks its laws.
    Lift(commands::LiftArgs),
    /// The prime-word retraction of Mat(S) and its coherence.
    Retraction {
        #[arg(long, default_value = "boolean")]
        algebra: String,
        /// Bound for the uniqueness and monoidality witnesses.
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
    },
    /// Equivalence built from an isomorphism of prime atoms.
    Equiv {
        /// mat-rel, mat-span or mat-mat.
        #[arg(long, default_value = "mat-rel")]
        pair: String,
        #[arg(long, default_value = "boolean")]
        algebra: String,
        /// Also certify the atoms as a free subcategory on both sides.
        #[arg(long)]
        certify: bool,
    },
    /// Semiring and quantale laws of a scalar algebra.
    Laws {
        #[arg(long, default_value = "boolean")]
        algebra: String,
        /// Triples to check; the carrier size cubed forces exhaustive checking.
        #[arg(long)]
        budget: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Snf { .. } => "snf",
            Command::Decompose { .. } => "decompose",
            Command::Tensor { .. } => "tensor",
            Command::Factorize { .. } => "factorize",
            Command::Divides { .. } => "divides",
            Command::Tomography { .. } => "tomography",
            Command::FreeSubcat { .. } => "free-subcat",
            Command::Lift(_) => "lift",
            Command::Retraction { .. } => "retraction",
            Command::Equiv { .. } => "equiv",
            Command::Laws { .. } => "laws",
        }
    }
}

fn dispatch(cli: &Cli) -> Result<commands::Outcome, InputError> {
    use commands as c;
    let seed = cli.seed;
    match &cli.command {
        Command::Snf { matrix } => c::snf(matrix),
        Command::Decompose { module } => c::decompose(module),
        Command::Tensor { module } => c::tensor(module),
        Command::Factorize { inst, object } => c::factorize(inst, object, cli.bound.unwrap_or(12)),
        Command::Divides { inst, a, b, non_strict } => c::divides(inst, a, b, !non_strict, cli.bound.unwrap_or(12)),
        Command::Tomography { inst, max_dim, max_family, exhaustive, counterexample } => {
            c::tomography(inst, *max_dim, *max_family, *exhaustive, counterexample.as_deref())
        }
        Command::FreeSubcat { inst, atoms, max_dim, max_family } => {
            c::free_subcat(inst, atoms, cli.bound.unwrap_or(8), *max_dim, *max_family)
        }
        Command::Lift(args) => c::lift(args, cli.bound.unwrap_or(4) as usize, seed),
        Command::Retraction { algebra, max_dim } => c::retraction(algebra, cli.bound.unwrap_or(12) as usize, *max_dim, seed),
        Command::Equiv { pair, algebra, certify } => c::equiv(pair, algebra, cli.bound.unwrap_or(6) as usize, *certify, seed),
        Command::Laws { algebra, budget } => c::laws(algebra, *budget, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = dispatch(&cli);
    let elapsed = start.elapsed();
    match outcome {
        Ok(o) => {
            let report = Report::new(cli.command.name(), o, cli.seed, elapsed);
            let _ = writeln!(std::io::stdout(), "{}", report.render(cli.format));
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let _ = writeln!(std::io::stdout(), "{}", e.to_json(cli.command.name()));
                }
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(3)
        }
    }
}
