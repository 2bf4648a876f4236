//! Command-line front end: parses arguments, dispatches to the library, and
//! prints one JSON report per run.
//!
//! Exit codes: `0` when every check passed, `1` when a mathematical check
//! failed (the report lists the violations), `2` for usage errors such as
//! missing files or dangling names.

use clap::{Parser, Subcommand, ValueEnum};
use cogs::action::ChoicePolicy;
use cogs::commands::{run, Command};
use cogs::fibre::FibreKind;
use cogs::report::Verdict;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cogs",
    version,
    about = "Complexes of groups: validate, develop, assemble, and check"
)]
struct Cli {
    /// Print only the verdict instead of the full report.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    /// Least candidate at every choice point.
    Canonical,
    /// Seeded uniform choices (see --seed).
    Random,
    /// Greatest candidate at every choice point; maximizes twisting.
    Adversarial,
}

impl PolicyArg {
    fn resolve(self, seed: u64) -> ChoicePolicy {
        match self {
            PolicyArg::Canonical => ChoicePolicy::Canonical,
            PolicyArg::Random => ChoicePolicy::Random(seed),
            PolicyArg::Adversarial => ChoicePolicy::Adversarial,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FibresArg {
    /// One-point fibres: the assembled space is the local development.
    Point,
    /// Full-simplex fibres on the group elements.
    Simplex,
}

impl From<FibresArg> for FibreKind {
    fn from(arg: FibresArg) -> FibreKind {
        match arg {
            FibresArg::Point => FibreKind::Point,
            FibresArg::Simplex => FibreKind::FullSimplex,
        }
    }
}

#[derive(Subcommand)]
enum Sub {
    /// Check every complex of groups and witness in a project file.
    Validate { path: PathBuf },
    /// Induce a complex of groups from a named action and validate it.
    Induce {
        path: PathBuf,
        /// Action name inside the project file.
        action: String,
        #[arg(long, value_enum, default_value_t = PolicyArg::Canonical)]
        policy: PolicyArg,
        /// Seed for --policy random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Develop witnesses into group actions on simply connected scwols.
    Develop {
        path: PathBuf,
        /// Witness name; omit to develop every witness in the file.
        witness: Option<String>,
        /// Write the development scwol as Graphviz DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build local developments over blocks and confirm they are cones.
    DevelopBlock {
        path: PathBuf,
        /// Complex-of-groups name; defaults to the only one in the file.
        #[arg(long)]
        cog: Option<String>,
        /// Simplex key; omit to sweep every simplex.
        #[arg(long)]
        simplex: Option<String>,
    },
    /// Induce from an action, develop, and search for the equivariant
    /// isomorphism back to the original action.
    Roundtrip {
        path: PathBuf,
        /// Action name; omit to round-trip every action in the file.
        action: Option<String>,
        #[arg(long, value_enum, default_value_t = PolicyArg::Canonical)]
        policy: PolicyArg,
        /// Seed for --policy random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on isomorphism search steps.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Assemble the classifying complex over one block and emit its cell
    /// and gluing tables.
    Assemble {
        path: PathBuf,
        /// Complex-of-groups name; defaults to the only one in the file.
        #[arg(long)]
        cog: Option<String>,
        /// Simplex key of the block.
        #[arg(long)]
        simplex: String,
        #[arg(long, value_enum, default_value_t = FibresArg::Point)]
        fibres: FibresArg,
    },
    /// Build the compatible system of assembled spaces over every simplex
    /// and check the twisted embedding identities.
    CompatCheck {
        path: PathBuf,
        /// Complex-of-groups name; defaults to the only one in the file.
        #[arg(long)]
        cog: Option<String>,
        #[arg(long, value_enum, default_value_t = FibresArg::Point)]
        fibres: FibresArg,
    },
    /// Integral homology of complexes or developed witnesses.
    Homology {
        path: PathBuf,
        /// Complex or witness name; omit to compute all of them.
        name: Option<String>,
    },
    /// Write the built-in example projects to a directory.
    Fixtures {
        /// Output directory.
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

impl Sub {
    fn into_command(self) -> Command {
        match self {
            Sub::Validate { path } => Command::Validate { path },
            Sub::Induce {
                path,
                action,
                policy,
                seed,
            } => Command::Induce {
                path,
                action,
                policy: policy.resolve(seed),
            },
            Sub::Develop { path, witness, dot } => Command::Develop { path, witness, dot },
            Sub::DevelopBlock { path, cog, simplex } => {
                Command::DevelopBlock { path, cog, simplex }
            }
            Sub::Roundtrip {
                path,
                action,
                policy,
                seed,
                budget,
            } => Command::Roundtrip {
                path,
                action,
                policy: policy.resolve(seed),
                budget,
            },
            Sub::Assemble {
                path,
                cog,
                simplex,
                fibres,
            } => Command::Assemble {
                path,
                cog,
                simplex,
                fibres: fibres.into(),
            },
            Sub::CompatCheck { path, cog, fibres } => Command::CompatCheck {
                path,
                cog,
                fibres: fibres.into(),
            },
            Sub::Homology { path, name } => Command::Homology { path, name },
            Sub::Fixtures { out } => Command::Fixtures { out },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command.into_command()) {
        Ok(report) => {
            if cli.quiet {
                match report.verdict {
                    Verdict::Pass => println!("pass"),
                    Verdict::Fail => println!("fail"),
                }
            } else {
                match report.to_json_string() {
                    Ok(text) => println!("{text}"),
                    Err(err) => {
                        eprintln!("error: {err}");
                        return ExitCode::from(2);
                    }
                }
            }
            match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
