use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tensorforge::commands::{self, ActionArgs, TensorArgs};
use tensorforge::{explore, verify, RunReport};
use tensorforge_core::Budget;

/// Finite groups acting on each other: compatibility checks and
/// non-abelian tensor products.
#[derive(Parser)]
#[command(name = "tensorforge", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Search budget: backtracking nodes and action-pair grid size.
    #[arg(long, global = true, env = "TENSORFORGE_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or export catalog groups.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Decide whether two actions are compatible (exit 0 iff compatible).
    Compat(ActionOpts),
    /// Compute the non-abelian tensor product of G and H.
    Tensor {
        #[command(flatten)]
        actions: ActionOpts,
        /// Present the group even when the actions are not compatible.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Run the fixed verification suite.
    Verify {
        #[command(subcommand)]
        suite: VerifyCmd,
    },
    /// Exhaustive scans for open questions.
    Explore {
        #[command(subcommand)]
        scan: ExploreCmd,
    },
    /// Enumerate the elements of a presented group.
    Enumerate {
        /// Presentation file: {"ngens": n, "relators": [[signed int]]}.
        presentation: PathBuf,
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Write the completed coset table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Export {
        key: String,
        path: PathBuf,
        /// Write the automorphism group instead of the group.
        #[arg(long)]
        aut: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Paper,
}

#[derive(Subcommand)]
enum ExploreCmd {
    /// Normalizer inclusions against compatibility over small catalog groups.
    Question2 {
        #[arg(long)]
        max_order: usize,
        /// Write one evidence record per line to this file.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Tensor products from homomorphism pairs of heisenberg:p.
    ClassifyHeisenberg { p: usize },
}

#[derive(Args)]
struct ActionOpts {
    /// Catalog key or group file.
    g: Option<String>,
    /// Catalog key or group file.
    h: Option<String>,
    /// Action of H on G: trivial, inversion, or Aut(G) indices per element of H.
    #[arg(long, conflicts_with_all = ["pair", "phi"])]
    alpha: Option<String>,
    /// Action of G on H: trivial, inversion, or Aut(H) indices per element of G.
    #[arg(long, conflicts_with_all = ["pair", "phi"])]
    beta: Option<String>,
    /// Action pair file.
    #[arg(long, conflicts_with = "phi")]
    pair: Option<PathBuf>,
    /// Homomorphism G -> H; the actions are conjugation through phi and psi.
    #[arg(long, requires = "psi")]
    phi: Option<PathBuf>,
    /// Homomorphism H -> G.
    #[arg(long, requires = "phi")]
    psi: Option<PathBuf>,
}

impl From<ActionOpts> for ActionArgs {
    fn from(o: ActionOpts) -> Self {
        ActionArgs { g: o.g, h: o.h, alpha: o.alpha, beta: o.beta, pair: o.pair, phi: o.phi, psi: o.psi }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match cli.budget {
        Some(n) => Budget { max_nodes: n, max_pairs: n, ..Budget::default() },
        None => Budget::default(),
    };
    let report: RunReport = match cli.command {
        Command::Catalog { action: CatalogCmd::List } => commands::catalog_list(),
        Command::Catalog { action: CatalogCmd::Export { key, path, aut } } => {
            commands::catalog_export(&key, &path, aut, budget)
        }
        Command::Compat(opts) => commands::compat(&opts.into(), budget),
        Command::Tensor { actions, force, max_cosets } => {
            commands::tensor(&actions.into(), TensorArgs { force, max_cosets }, budget)
        }
        Command::Verify { suite: VerifyCmd::Paper } => verify::verify_paper(budget),
        Command::Explore { scan: ExploreCmd::Question2 { max_order, jsonl } } => {
            explore::question2(max_order, jsonl.as_deref(), budget)
        }
        Command::Explore { scan: ExploreCmd::ClassifyHeisenberg { p } } => explore::classify_heisenberg(p, budget),
        Command::Enumerate { presentation, max_cosets, csv } => {
            commands::enumerate(&presentation, max_cosets, csv.as_deref(), budget)
        }
    };
    let text = if cli.json { report.to_json_string() + "\n" } else { report.render_text() };
    // A closed pipe (for example `| head`) is not an error of the command.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(report.status.exit_code() as u8)
}
