use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use skewcat::commands::{self, IipMode, Report, Target, EXIT_INVALID};
use skewcat::parse::{parse_coeff, CoeffSpec};
use skewcat_core::instances::Profile;

#[derive(Parser)]
#[command(name = "skewcat", version, about = "Skew category algebras of finite discrete dynamical systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// System file
    file: PathBuf,
    /// Coefficients: Q, Fp <p>, Zmod <m> or formal, optionally followed by `constants`
    #[arg(long, value_parser = coeff_arg)]
    coeff: Option<CoeffSpec>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a system file and print its summary
    Validate {
        file: PathBuf,
    },
    /// Fixed, separated and aperiodic point sets and freeness
    Analyze {
        #[command(flatten)]
        input: Input,
    },
    /// Commutant of the coefficient ring and maximal commutativity
    Commutant {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Two-sided ideal generated by elements and its meet with the coefficients
    Ideal {
        #[command(flatten)]
        input: Input,
        /// Element names or literals separated by `;`
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Ideal intersection property
    Iip {
        #[command(flatten)]
        input: Input,
        /// Enumerate every principal ideal (finite fields only)
        #[arg(long, conflicts_with = "search")]
        brute: bool,
        /// Randomized search for a counterexample
        #[arg(long)]
        search: bool,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Cross-check freeness, maximal commutativity and the intersection property
    Theorems {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Multiply elements (names from the file or literals) left to right
    Product {
        #[command(flatten)]
        input: Input,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Theorem checks on seeded random instances
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_parser = profile_arg)]
        profile: Option<Profile>,
        #[arg(long, value_parser = coeff_arg)]
        coeff: Option<CoeffSpec>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Built-in reproductions: example19, example19-discrete, prop9b
    Reproduce {
        target: Target,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random samples for prop9b
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Degree bound for prop9b
        #[arg(long, default_value_t = 8)]
        degree: u64,
    },
}

fn coeff_arg(s: &str) -> Result<CoeffSpec, String> {
    parse_coeff(s)
}

fn profile_arg(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e: skewcat_core::Error| e.to_string())
}

fn read(path: &Path) -> Result<String, Report> {
    std::fs::read_to_string(path).map_err(|e| Report {
        lines: vec![format!("error=cannot read {}: {e}", path.display())],
        warnings: Vec::new(),
        exit: EXIT_INVALID,
    })
}

fn with_file(path: &Path, run: impl FnOnce(&str) -> Report) -> Report {
    match read(path) {
        Ok(text) => run(&text),
        Err(r) => r,
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let report = match cli.command {
        Command::Validate { file } => with_file(&file, commands::validate),
        Command::Analyze { input } => with_file(&input.file, |t| commands::analyze(t, input.coeff)),
        Command::Commutant { input, cap } => with_file(&input.file, |t| commands::commutant(t, input.coeff, cap)),
        Command::Ideal { input, gens, cap } => {
            with_file(&input.file, |t| commands::ideal(t, input.coeff, gens.as_deref(), cap))
        }
        Command::Iip { input, brute, search, cap } => {
            let mode = match (brute, search) {
                (true, _) => IipMode::Brute,
                (_, true) => IipMode::Search,
                _ => IipMode::Auto,
            };
            with_file(&input.file, |t| commands::iip(t, input.coeff, mode, cap))
        }
        Command::Theorems { input, cap } => with_file(&input.file, |t| commands::theorems(t, input.coeff, cap)),
        Command::Product { input, elements } => {
            with_file(&input.file, |t| commands::product(t, input.coeff, &elements))
        }
        Command::Random { seed, count, profile, coeff, cap } => commands::random(seed, count, profile, coeff, cap),
        Command::Reproduce { target, seed, count, degree } => commands::reproduce(target, seed, count, degree),
    };
    println!("command={}", args[1..].join(" "));
    print!("{}", report.render());
    for w in &report.warnings {
        eprintln!("{w}");
    }
    ExitCode::from(report.exit as u8)
}
