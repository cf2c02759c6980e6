//! Command-line front end: every verification as a reproducible command
//! with a JSON report on stdout and a human summary on stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod report;
pub mod suite;

pub use report::{CliCase, CliReport, Summary};

pub const DEFAULT_SEED: u64 = 0x7477_6c61_6221;

/// Exit code for a usage, parse or configuration error.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "twlab", version, about = "Exact checks for finite rings, birings, Lawvere theories and Tall-Wraith monoids")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Outcome that counts as success
    #[arg(long, global = true, value_enum, default_value_t = Expect::Pass)]
    pub expect: Expect,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest carrier enumerated exhaustively
    #[arg(long = "cap-carrier", global = true, default_value_t = 4096)]
    pub cap_carrier: usize,
    /// Write the JSON report to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Worker threads for independent cases
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Fail,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite rings: Z/n, GF(p,k) and products
    #[command(subcommand)]
    Ring(RingCmd),
    /// Polynomial arithmetic over Z or a finite ring
    Poly(PolyArgs),
    /// Co-operations on R[x] and its quotients
    #[command(subcommand)]
    Biring(BiringCmd),
    /// Equational theories, finite models and co-operations on free algebras
    #[command(subcommand)]
    Lawvere(LawvereCmd),
    /// Function rings R^X, idempotent decompositions and the sequence ring
    #[command(subcommand)]
    Toy(ToyCmd),
    /// Tall-Wraith monoid laws
    #[command(subcommand)]
    Tw(TwCmd),
    /// Run the acceptance matrix, optionally restricted by a TOML config
    Suite {
        /// Config with `roster`, `criteria`, `seed`, `cap_carrier`, `cogroup`, `monoids`, `mu_bases`
        config: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    /// List the idempotents
    Idempotents { ring: String },
    /// Check the ring axioms and print basic invariants
    Info { ring: String },
    /// Find a monic irreducible polynomial of degree k over GF(p)
    Irreducible { p: u64, k: u32 },
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// Coefficient ring: `Z` or a finite ring spec
    #[arg(long, global = true, default_value = "Z")]
    pub ring: String,
    #[command(subcommand)]
    pub op: PolyCmd,
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    /// Parse and print in normal form
    Show { p: String },
    Add { p: String, q: String },
    Mul { p: String, q: String },
    /// Substitute polynomials for variables, e.g. `x=y+1`
    Subst { p: String, bindings: Vec<String> },
    /// Evaluate at ring elements, e.g. `x=2`
    Eval { p: String, env: Vec<String> },
    /// Reduce every variable modulo v^q - v
    Reduce {
        p: String,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum BiringCmd {
    /// Co-addition, co-multiplication, co-inverse and counits of one polynomial
    Coops {
        ring: String,
        p: String,
        /// Work in R[x]/(x^q - x)
        #[arg(long)]
        q: Option<u64>,
    },
    /// Whether (x^q - x) is a coideal (q defaults to |R|)
    Coideal {
        ring: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Check the co-laws on every element of R[x]/(x^q - x)
    Colaws {
        ring: String,
        #[arg(long)]
        q: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LawvereCmd {
    /// Whether a finite ring is a model of the theory
    Model { theory: String, ring: String },
    /// Check the co-operation square on free algebras
    Coop {
        theory: String,
        ring: String,
        /// Number of generators
        #[arg(long, default_value_t = 2)]
        gens: usize,
        /// Maximal term depth
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Restrict to one operation symbol
        #[arg(long)]
        op: Option<String>,
    },
    /// Compare pointwise and co-operation structures on maps S -> A
    Homs {
        theory: String,
        ring: String,
        #[arg(long, default_value_t = 2)]
        gens: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Auto,
    Full,
    Bijection,
}

#[derive(Subcommand, Debug)]
pub enum ToyCmd {
    /// Check that eta: R[x]/(x^q - x) -> R^R is an isomorphism over a finite field
    Iso {
        field: String,
        #[arg(long, value_enum, default_value_t = Level::Auto)]
        level: Level,
    },
    /// Whether mu is a bijection on |R|-indexed decompositions of B (B defaults to R)
    Mu { ring: String, base: Option<String> },
    /// Count the decompositions of 1 into orthogonal idempotents
    Decompositions {
        ring: String,
        #[arg(long)]
        slots: usize,
    },
    /// Check that an |R|-indexed decomposition is idempotent exactly when supported on idempotents
    Support { ring: String },
    /// Check that eta(1 - x^(q-1)) is the indicator of zero
    Delta0 { field: String },
    /// Check that the kernel of eta is generated by x^q - x
    Kernel {
        field: String,
        #[arg(long, default_value_t = 64)]
        lifts: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum TwCmd {
    /// Axioms for R[x] or R[x]/(x^q - x) under substitution
    Poly {
        ring: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Axioms for the function ring R^R under composition
    Fun { ring: String },
    /// Axioms for the plethory of the cyclic monoid of order n
    Monoid {
        n: usize,
        /// Random samples on top of the fixed ones
        #[arg(long, default_value_t = 4)]
        random: usize,
    },
    /// Check eta(a ⊙ b) = eta(a) ∘ eta(b) over a finite field
    Transport { field: String },
    /// Check that the structure descends to R[x]/(x^q - x)
    Descent {
        ring: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 32)]
        random: usize,
    },
    /// Check the currying bijection Hom(S1 x S2, A) = Hom(S1, A^S2)
    Curry {
        s1: usize,
        s2: usize,
        ring: String,
        /// Extra target rings for the naturality check
        #[arg(long = "with")]
        with: Vec<String>,
    },
    /// Count co-group structures on Z/n
    Cogroup { n: u64 },
}

/// Runs the tool on `argv` (including the program name), writing the JSON
/// report to `out` and the human summary to `err`.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let command = argv.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    let mut report = CliReport::new(command, cli.global.seed);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs as usize).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = pool.install(|| commands::dispatch(&cli, &mut report));
    if let Err(msg) = result {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    report.finish();
    let json = report.to_json();
    match &cli.global.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = out.write_all(json.as_bytes());
        }
    }
    let _ = err.write_all(report.human().as_bytes());
    let ok = match cli.global.expect {
        Expect::Pass => report.all_pass(),
        Expect::Fail => !report.all_pass(),
    };
    if ok {
        0
    } else {
        1
    }
}

/// Runs the tool against the process's stdout and stderr.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
