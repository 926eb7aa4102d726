use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lagmat::commands::{self, EnumKind};
use lagmat::io::{to_canonical, Instance, Kind};
use lagmat::{CliError, CliResult};
use lagmat_core::RgpMode;
use serde_json::Value as Json;

#[derive(Parser)]
#[command(name = "lagmat", version, about = "Antisymmetric matroids, restricted Grassmann-Plücker functions and Lagrangian matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKindArg {
    Antisym,
    Symmetric,
    Even,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an instance file. Exit 0 pass, 1 violation, 2 error.
    Check {
        path: PathBuf,
        /// Expected kind; a mismatch is a schema error.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
    },
    /// Convert an instance to another kind.
    Convert {
        path: PathBuf,
        #[arg(long)]
        to: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List antisymmetric, symmetric or even symmetric matroids on ±[n].
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: EnumKindArg,
        /// Every instance (the default).
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// A seeded sample of this many instances.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Raise the size limit to the hard maximum.
        #[arg(long)]
        allow_large: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write [I | Σ] for a seeded random symmetric Σ.
    RandomMatrix {
        #[arg(long)]
        n: usize,
        /// GF(p) for a prime p ≤ 97, or Q.
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check that short cycles generate the basis graph's cycle space.
    Homotopy {
        path: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_weight: usize,
    },
    /// Export the weighted and unweighted basis graphs as edge lists.
    Graph {
        path: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write every worked example as a fixture file.
    Examples {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(doc: &Json, output: Option<&Path>) -> CliResult<()> {
    emit(&to_canonical(doc), output)
}

fn max_n_env() -> CliResult<Option<usize>> {
    match std::env::var("LAGMAT_MAX_N") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Schema(format!("LAGMAT_MAX_N=`{v}` is not a number"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Check { path, kind, mode } => {
            let inst = Instance::read(&path)?;
            if let Some(k) = kind {
                let want: Kind = k.parse()?;
                if want != inst.kind() {
                    return Err(CliError::Schema(format!("file holds `{}`, not `{want}`", inst.kind())));
                }
            }
            let mode = match mode {
                Mode::Full => RgpMode::Full,
                Mode::Weak => RgpMode::Weak,
            };
            let out = commands::check(&inst, mode)?;
            emit_json(&out.report, None)?;
            Ok(out.passed)
        }
        Command::Convert { path, to, output } => {
            let out = commands::convert(&Instance::read(&path)?, to.parse()?)?;
            emit(&out.to_canonical_string(), output.as_deref())?;
            Ok(true)
        }
        Command::Enumerate { n, kind, exhaustive: _, sample, seed, allow_large, output } => {
            let kind = match kind {
                EnumKindArg::Antisym => EnumKind::Antisym,
                EnumKindArg::Symmetric => EnumKind::Symmetric,
                EnumKindArg::Even => EnumKind::Even,
            };
            let doc = commands::enumerate(n, kind, sample, seed, allow_large, max_n_env()?)?;
            emit_json(&doc, output.as_deref())?;
            Ok(true)
        }
        Command::RandomMatrix { n, field, seed, output } => {
            let inst = commands::random_matrix(n, &field, seed)?;
            emit(&inst.to_canonical_string(), output.as_deref())?;
            Ok(true)
        }
        Command::Homotopy { path, max_weight } => {
            let out = commands::homotopy(&Instance::read(&path)?, max_weight)?;
            emit_json(&out.report, None)?;
            Ok(out.passed)
        }
        Command::Graph { path, output } => {
            emit_json(&commands::graph(&Instance::read(&path)?)?, output.as_deref())?;
            Ok(true)
        }
        Command::Examples { out } => {
            let names = commands::write_examples(&out)?;
            emit_json(&serde_json::json!({ "dir": out.display().to_string(), "written": names }), None)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lagmat: {e}");
            ExitCode::from(2)
        }
    }
}
