use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adian::rword_subgraph::{all_deltas_finite, occurrences, DeltaReportEntry};
use adian::stephen::DecisionOutcome;
use adian::{classify, decide_equal, delta, is_idempotent, schutzenberger, Budget, DeltaError, Presentation, Verdict, Word};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_CLOSED: u8 = 0;
const EXIT_NOT_EQUAL: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_ERROR: u8 = 3;

/// Word problems for one-relation Adian inverse semigroups.
#[derive(Parser)]
#[command(name = "adian", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Presentation file: alphabet on the first line, then `LHS = RHS` lines.
    #[arg(short = 'p', long = "presentation")]
    presentation: PathBuf,
    /// Maximum number of full expansions per construction.
    #[arg(long, default_value_t = 64)]
    budget: usize,
    /// Maximum number of vertices before giving up.
    #[arg(long, default_value_t = 100_000)]
    max_vertices: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Lhs,
    Rhs,
}

#[derive(Subcommand)]
enum Command {
    /// Adian property, overlap type and decidable class.
    Analyze {
        #[arg(short = 'p', long = "presentation")]
        presentation: PathBuf,
    },
    /// Build the Schützenberger graph of a word.
    Sgraph {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'w', long)]
        word: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Plain text dump: `v id`, `e src label dst`, `roots start end`.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Print one line per full expansion.
        #[arg(long)]
        trace: bool,
    },
    /// Subgraph generated by the K-th occurrence of a relation side in a word.
    Subgraph {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'w', long)]
        word: String,
        #[arg(short = 'r', long = "rword", value_enum)]
        side: SideArg,
        /// 1-based occurrence index.
        #[arg(short = 'i', long = "index")]
        index: usize,
        /// 0-based relation index.
        #[arg(long, default_value_t = 0)]
        relation: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Subgraphs for every R-word occurrence in a word.
    Deltas {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'w', long)]
        word: String,
    },
    /// Decide whether two words are equal.
    Decide {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'u')]
        u: String,
        #[arg(short = 'v')]
        v: String,
    },
    /// Decide whether a word is idempotent.
    Idempotent {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'w', long)]
        word: String,
    },
}

fn load(path: &Path) -> Result<Presentation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    adian::parse_presentation(&text).with_context(|| format!("parsing {}", path.display()))
}

fn budget(c: &Common) -> Result<Budget> {
    Budget::new(c.budget, c.max_vertices).map_err(|e| anyhow!("{e}"))
}

fn word(p: &Presentation, text: &str) -> Result<Word> {
    p.word(text).with_context(|| format!("word '{text}'"))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn verdict(outcome: &DecisionOutcome) -> u8 {
    println!("{} guaranteed={}", outcome.verdict, outcome.guaranteed);
    match outcome.verdict {
        Verdict::Equal => EXIT_CLOSED,
        Verdict::NotEqual => EXIT_NOT_EQUAL,
        Verdict::BudgetExceeded => EXIT_BUDGET,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { presentation } => {
            let p = load(&presentation)?;
            println!("{}", classify(&p)?);
            Ok(EXIT_CLOSED)
        }
        Command::Sgraph {
            common,
            word: w,
            dot,
            dump,
            trace,
        } => {
            let p = load(&common.presentation)?;
            let w = word(&p, &w)?;
            let (automaton, code) = match schutzenberger(&w, &p, budget(&common)?) {
                Ok(a) => (a, EXIT_CLOSED),
                Err(e) => (*e.0, EXIT_BUDGET),
            };
            if trace {
                print!("{}", automaton.trace);
            } else {
                println!(
                    "{} vertices={} edges={} expansions={}",
                    if automaton.is_closed() { "closed" } else { "budget-exceeded" },
                    automaton.graph.vertex_count(),
                    automaton.graph.edge_count(),
                    automaton.trace.steps.len()
                );
            }
            if let Some(path) = dot {
                write(&path, &automaton.graph.to_dot())?;
            }
            if let Some(path) = dump {
                write(&path, &automaton.graph.dump())?;
            }
            Ok(code)
        }
        Command::Subgraph {
            common,
            word: w,
            side,
            index,
            relation,
            dot,
        } => {
            let p = load(&common.presentation)?;
            let w = word(&p, &w)?;
            let r = p
                .relations()
                .get(relation)
                .ok_or_else(|| anyhow!("no relation with index {relation}"))?;
            let rword = match side {
                SideArg::Lhs => r.lhs(),
                SideArg::Rhs => r.rhs(),
            };
            let occs = occurrences(rword, &w);
            let Some(occ) = index.checked_sub(1).and_then(|k| occs.get(k)) else {
                bail!("'{w}' has {} occurrences of '{rword}', not {index}", occs.len());
            };
            let (d, code) = match delta(&w, occ, &p, budget(&common)?) {
                Ok(d) => (d, EXIT_CLOSED),
                Err(DeltaError::BudgetExceeded(d)) => (*d, EXIT_BUDGET),
                Err(e) => return Err(e.into()),
            };
            println!("{}", DeltaReportEntry::from(&d));
            if let Some(path) = dot {
                write(&path, &d.graph.to_dot())?;
            }
            Ok(code)
        }
        Command::Deltas { common, word: w } => {
            let p = load(&common.presentation)?;
            let w = word(&p, &w)?;
            let report = all_deltas_finite(&w, &p, budget(&common)?);
            print!("{report}");
            Ok(if report.all_closed { EXIT_CLOSED } else { EXIT_BUDGET })
        }
        Command::Decide { common, u, v } => {
            let p = load(&common.presentation)?;
            let (u, v) = (word(&p, &u)?, word(&p, &v)?);
            Ok(verdict(&decide_equal(&u, &v, &p, budget(&common)?)))
        }
        Command::Idempotent { common, word: w } => {
            let p = load(&common.presentation)?;
            let w = word(&p, &w)?;
            Ok(verdict(&is_idempotent(&w, &p, budget(&common)?)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

