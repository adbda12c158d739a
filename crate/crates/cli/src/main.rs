//! `hspwb`: character tables, code automorphisms, hidden shift attacks on small
//! McEliece instances and Fourier sampling statistics, with JSON/CSV reports.

mod commands;
mod output;
mod subgroup;

use clap::{Parser, Subcommand};
use output::{CliError, Format, Sink};
use serde::Serialize;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug, Serialize)]
#[command(name = "hspwb", version, about = "Hidden shift and Fourier sampling workbench")]
pub struct Cli {
    /// Directory for report files; reports go to stdout when omitted.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses the rayon default.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Cap on enumerated group orders and codeword counts.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub enum_cap: u128,
    /// Cap on group orders realized through the regular representation.
    #[arg(long, global = true, default_value_t = 5000)]
    pub realize_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Character table as CSV (irreps x classes) with a JSON summary.
    Chartable {
        #[command(subcommand)]
        family: TableFamily,
    },
    /// Dimensions of the irreps of a symmetric group.
    Dims {
        #[command(subcommand)]
        family: DimsFamily,
    },
    /// Size and dimension bounds for the unbalanced diagrams of S_n.
    LambdaAudit {
        #[arg(long)]
        n: usize,
        /// Cutoff in (0, 1/4), as a fraction `a/b` or a decimal.
        #[arg(long)]
        c: String,
    },
    /// Largest normalized characters outside the unbalanced diagrams, per support size.
    Roichman {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: String,
    },
    /// Rational Goppa codes.
    Goppa {
        #[command(subcommand)]
        action: GoppaAction,
    },
    /// McEliece-type hidden shift instances.
    Mceliece {
        #[command(subcommand)]
        action: McElieceAction,
    },
    /// Alias of `mceliece attack`.
    Attack {
        #[command(subcommand)]
        action: AttackAction,
    },
    /// Weak and strong Fourier sampling statistics for a subgroup.
    Dist {
        /// Group name such as `s3`, `gl2-3`, `s2*s3` or `wr(s3)`.
        #[arg(long)]
        group: String,
        /// Elements or generators: a file path, a JSON element list or cycle notation like `[(12)]`.
        #[arg(long)]
        subgroup: String,
        /// Irreps in S: `linear` or labels separated by `;`.
        #[arg(long = "S")]
        s: Option<String>,
        /// Dimension threshold; defaults to d_S^2 + 1.
        #[arg(long = "D")]
        d: Option<f64>,
        /// Also estimate the sampling distance from this many random conjugates.
        #[arg(long)]
        mc_samples: Option<usize>,
    },
    /// Runs the identity and inequality grid over a suite of groups.
    VerifyLemmas {
        #[arg(long, default_value = "small")]
        suite: String,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableFamily {
    Gl2 {
        #[arg(long)]
        q: u32,
    },
    Sn {
        #[arg(long)]
        n: usize,
    },
    Wreath {
        /// Base group name.
        #[arg(long)]
        base: String,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimsFamily {
    Sn {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoppaAction {
    /// Generator matrix, dimension and minimum distance.
    Build {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Permutation automorphism group (n <= 8).
    Aut {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Whether every automorphism comes from a fractional-linear map of the points.
    Check {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Random spec with distinct points and g, h of degree at most 2.
    Gen {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum McElieceAction {
    /// Instance from a Goppa code when n <= q, else a random full-rank matrix.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
    },
    /// Recovers the secret shift through the hidden subgroup.
    Attack {
        #[arg(long)]
        instance: PathBuf,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackAction {
    Simulate {
        #[arg(long)]
        instance: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    if cli.enum_cap == 0 || cli.realize_cap == 0 {
        return Err(CliError::Config("caps must be positive".into()));
    }
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let report = commands::dispatch(cli)?;
    let envelope = json!({
        "tool": "hspwb",
        "version": env!("CARGO_PKG_VERSION"),
        "command": report.command,
        "config": cli,
        "seed": cli.seed,
        "threads": rayon::current_num_threads(),
        "result": report.result,
    });
    Sink { out: cli.out.clone(), format: cli.format }.emit(envelope, &report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(output::EXIT_CONFIG);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.exit_code())
        }
    }
}
