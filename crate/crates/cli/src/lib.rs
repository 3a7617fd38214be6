//! Argument types and command handlers behind the `rep12` binary, split out
//! so integration tests can drive them directly.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use rep12::graph::{GraphError, LabeledGraph, PatternWitness};
use rep12::oracle::{self, OracleError, SearchBudget};
use rep12::shorten::{shorten_with_trace, Phase, ShortenError, ShortenTrace, TraceLevel};
use rep12::word::{Word, WordError};

/// `rep12`: decode, verify, shorten, and analyze 12-representants.
///
/// Exit codes: 0 on success, 1 on malformed input, 2 on a negative result
/// (the word does not represent the graph, no representant exists, or no
/// labeling is valid).
#[derive(Debug, Parser)]
#[command(name = "rep12", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decode a word into the labeled graph it represents.
    Decode {
        #[command(flatten)]
        word: WordSource,
    },
    /// Check whether a word represents a graph.
    Verify {
        #[command(flatten)]
        word: WordSource,
        /// Graph to check against, as JSON.
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
    },
    /// Shorten a representant with at most two occurrences per letter to one
    /// of optimal length.
    Shorten {
        #[command(flatten)]
        word: WordSource,
        /// How much of the run to print.
        #[arg(long, value_enum, default_value_t = TraceArg::None)]
        trace: TraceArg,
    },
    /// Report bad vertices, the length lower bound, and labeling validity.
    Analyze {
        /// Graph to analyze, as JSON.
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
    },
    /// Exhaustively search for a shortest representant.
    OracleShortest {
        /// Graph to search for, as JSON.
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search the permutation words for a representant.
    OraclePermutation {
        /// Graph to search for, as JSON.
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search all labelings of a graph for one minimizing bad vertices.
    OracleLabelSearch {
        /// Graph whose labelings to search, as JSON.
        #[arg(long, value_name = "PATH")]
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// Exactly one source for the input word.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct WordSource {
    /// The word itself: a digit string such as 2121, or space-separated
    /// letters such as "10 2 10 1 ...".
    #[arg(value_name = "WORD")]
    pub positional: Option<String>,
    /// The word as a flag instead of a positional argument.
    #[arg(long = "word", value_name = "WORD")]
    pub flag: Option<String>,
    /// Read the word from a file.
    #[arg(long = "word-file", value_name = "PATH")]
    pub file: Option<PathBuf>,
}

/// Search limits; defaults depend on the search kind.
#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Largest vertex count the search will accept.
    #[arg(long, value_name = "N")]
    pub max_n: Option<usize>,
    /// Cap on candidate words examined before giving up.
    #[arg(long, value_name = "COUNT")]
    pub max_words: Option<u64>,
    /// Allow searches beyond the built-in size caps.
    #[arg(long)]
    pub acknowledge_slow: bool,
}

impl BudgetArgs {
    fn resolve(&self, defaults: SearchBudget) -> SearchBudget {
        SearchBudget {
            max_n: self.max_n.unwrap_or(defaults.max_n),
            max_words: self.max_words.or(defaults.max_words),
            acknowledge_slow: self.acknowledge_slow,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceArg {
    None,
    Lengths,
    Full,
}

impl From<TraceArg> for TraceLevel {
    fn from(arg: TraceArg) -> Self {
        match arg {
            TraceArg::None => TraceLevel::None,
            TraceArg::Lengths => TraceLevel::Lengths,
            TraceArg::Full => TraceLevel::Full,
        }
    }
}

/// Everything `analyze` reports about one labeled graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub edge_count: usize,
    pub bad_vertices: Vec<u32>,
    pub witnesses: BTreeMap<u32, (u32, u32, u32)>,
    pub lower_bound: usize,
    pub forbidden_pattern: Option<PatternWitness>,
    pub valid: bool,
}

/// Collects the bad-vertex classification, length lower bound, and labeling
/// validity of `graph` into one report.
pub fn analyze(graph: &LabeledGraph) -> AnalyzeReport {
    let bad = graph.bad_vertices();
    let forbidden = graph.find_forbidden_pattern();
    AnalyzeReport {
        n: graph.n(),
        edge_count: graph.edge_count(),
        bad_vertices: bad.bad().iter().copied().collect(),
        witnesses: bad.witnesses().clone(),
        lower_bound: graph.length_lower_bound(),
        valid: forbidden.is_none(),
        forbidden_pattern: forbidden,
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Word(#[from] WordError),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Shorten(#[from] ShortenError),
    #[error("{0}")]
    Oracle(#[from] OracleError),
    #[error("cannot read {path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Io(#[from] io::Error),
}

enum Outcome {
    Success,
    Negative,
}

/// Runs one parsed invocation, writing results to `out` and errors to `err`,
/// and returns the process exit code.
pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match execute(cli, out) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Negative) => 2,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

fn load_word(source: &WordSource) -> Result<Word, CliError> {
    let text = match (&source.positional, &source.flag, &source.file) {
        (Some(text), None, None) | (None, Some(text), None) => text.clone(),
        (None, None, Some(path)) => read_file(path)?,
        // clap enforces exactly one source; this is unreachable through the
        // parser but kept total for direct callers.
        _ => return Err(WordError::Empty.into()),
    };
    Ok(Word::parse(&text, None)?)
}

fn load_graph(path: &Path) -> Result<LabeledGraph, CliError> {
    Ok(LabeledGraph::from_json(&read_file(path)?)?)
}

fn execute(cli: &Cli, out: &mut impl Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Decode { word } => {
            let graph = load_word(word)?.decode();
            if cli.json {
                writeln!(out, "{}", graph.to_json())?;
            } else {
                write_graph_text(out, &graph)?;
            }
            Ok(Outcome::Success)
        }
        Command::Verify { word, graph } => {
            let word = load_word(word)?;
            let graph = load_graph(graph)?;
            let verified = word.verify(&graph)?;
            if cli.json {
                writeln!(out, "{}", json!({ "verified": verified }))?;
            } else if verified {
                writeln!(out, "word represents the graph")?;
            } else {
                writeln!(out, "word does not represent the graph")?;
            }
            Ok(if verified {
                Outcome::Success
            } else {
                Outcome::Negative
            })
        }
        Command::Shorten { word, trace } => {
            let word = load_word(word)?;
            let (output, trace) = shorten_with_trace(&word, (*trace).into())?;
            if cli.json {
                writeln!(out, "{}", trace.to_json_value())?;
            } else {
                write_trace_text(out, &trace)?;
                writeln!(out, "{output}")?;
            }
            Ok(Outcome::Success)
        }
        Command::Analyze { graph } => {
            let graph = load_graph(graph)?;
            let report = analyze(&graph);
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&report).expect("report serialization cannot fail")
                )?;
            } else {
                write_report_text(out, &report)?;
            }
            Ok(if report.valid {
                Outcome::Success
            } else {
                Outcome::Negative
            })
        }
        Command::OracleShortest { graph, budget } => {
            let graph = load_graph(graph)?;
            let outcome =
                oracle::brute_force_shortest(&graph, &budget.resolve(SearchBudget::words()))?;
            write_search_outcome(
                cli,
                out,
                &outcome,
                "no representant of length at most 2n exists",
            )
        }
        Command::OraclePermutation { graph, budget } => {
            let graph = load_graph(graph)?;
            let outcome = oracle::is_permutation_representable(
                &graph,
                &budget.resolve(SearchBudget::permutations()),
            )?;
            write_search_outcome(
                cli,
                out,
                &outcome,
                "no permutation word represents the graph",
            )
        }
        Command::OracleLabelSearch { graph, budget } => {
            let graph = load_graph(graph)?;
            let result =
                oracle::min_bad_labeling(&graph, &budget.resolve(SearchBudget::labelings()))?;
            match result {
                Some(result) => {
                    if cli.json {
                        writeln!(out, "{}", result.to_json_value())?;
                    } else {
                        let labels: Vec<String> =
                            result.labeling.iter().map(u32::to_string).collect();
                        writeln!(out, "labeling: {}", labels.join(" "))?;
                        writeln!(out, "bad vertices: {}", result.bad_count)?;
                        writeln!(out, "representant: {}", result.representant)?;
                    }
                    Ok(Outcome::Success)
                }
                None => {
                    if cli.json {
                        writeln!(out, "{}", json!({ "found": false }))?;
                    } else {
                        writeln!(out, "no labeling admits a representant")?;
                    }
                    Ok(Outcome::Negative)
                }
            }
        }
    }
}

fn write_search_outcome(
    cli: &Cli,
    out: &mut impl Write,
    outcome: &oracle::SearchOutcome,
    negative_message: &str,
) -> Result<Outcome, CliError> {
    if cli.json {
        writeln!(out, "{}", outcome.to_json_value())?;
        return Ok(match outcome.word {
            Some(_) => Outcome::Success,
            None => Outcome::Negative,
        });
    }
    match &outcome.word {
        Some(word) => {
            writeln!(out, "{word}")?;
            Ok(Outcome::Success)
        }
        None => {
            writeln!(out, "{negative_message}")?;
            Ok(Outcome::Negative)
        }
    }
}

fn write_graph_text(out: &mut impl Write, graph: &LabeledGraph) -> Result<(), CliError> {
    writeln!(out, "n: {}", graph.n())?;
    let edges: Vec<String> = graph
        .edges()
        .iter()
        .map(|(u, v)| format!("{{{u},{v}}}"))
        .collect();
    writeln!(out, "edges: {}", edges.join(" "))?;
    Ok(())
}

fn write_report_text(out: &mut impl Write, report: &AnalyzeReport) -> Result<(), CliError> {
    writeln!(out, "n: {}", report.n)?;
    writeln!(out, "edges: {}", report.edge_count)?;
    let bad: Vec<String> = report.bad_vertices.iter().map(u32::to_string).collect();
    writeln!(out, "bad vertices: {}", bad.join(" "))?;
    for (b, (x, _, z)) in &report.witnesses {
        writeln!(out, "witness for {b}: ({x}, {b}, {z})")?;
    }
    writeln!(out, "length lower bound: {}", report.lower_bound)?;
    match &report.forbidden_pattern {
        None => writeln!(out, "labeling: valid")?,
        Some(w) => {
            let vertices: Vec<String> = w.vertices.iter().map(u32::to_string).collect();
            writeln!(
                out,
                "labeling: invalid ({} at {})",
                w.kind,
                vertices.join(",")
            )?;
        }
    }
    Ok(())
}

fn write_trace_text(out: &mut impl Write, trace: &ShortenTrace) -> Result<(), CliError> {
    for row in trace.rows() {
        let prefix = match row.phase {
            Phase::Descending => 'i',
            Phase::Ascending => 'j',
        };
        match &row.word_before {
            Some(word) => writeln!(out, "{prefix}={} {word}", row.pivot)?,
            None => writeln!(out, "{prefix}={} len={}", row.pivot, row.length_before)?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> LabeledGraph {
        LabeledGraph::new(
            8,
            &[
                (4, 8),
                (6, 8),
                (1, 7),
                (1, 5),
                (2, 3),
                (4, 5),
                (2, 5),
                (1, 8),
                (1, 3),
                (6, 7),
            ],
        )
        .unwrap()
    }

    #[test]
    fn analyze_report_for_golden_graph() {
        let report = analyze(&g1());
        assert_eq!(report.n, 8);
        assert_eq!(report.edge_count, 10);
        assert_eq!(report.bad_vertices, vec![2, 4, 7]);
        assert_eq!(report.witnesses[&2], (1, 2, 7));
        assert_eq!(report.witnesses[&4], (1, 4, 7));
        assert_eq!(report.witnesses[&7], (4, 7, 8));
        assert_eq!(report.lower_bound, 11);
        assert!(report.valid);
        assert_eq!(report.forbidden_pattern, None);
    }

    #[test]
    fn analyze_report_round_trips_through_json() {
        let report = analyze(&g1());
        let text = serde_json::to_string(&report).unwrap();
        let back: AnalyzeReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);

        let path = LabeledGraph::new(3, &[(1, 2), (2, 3)]).unwrap();
        let report = analyze(&path);
        assert!(!report.valid);
        let text = serde_json::to_string(&report).unwrap();
        let back: AnalyzeReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn budget_args_override_defaults() {
        let args = BudgetArgs {
            max_n: Some(7),
            max_words: Some(10),
            acknowledge_slow: true,
        };
        let budget = args.resolve(SearchBudget::words());
        assert_eq!(budget.max_n, 7);
        assert_eq!(budget.max_words, Some(10));
        assert!(budget.acknowledge_slow);

        let args = BudgetArgs {
            max_n: None,
            max_words: None,
            acknowledge_slow: false,
        };
        assert_eq!(args.resolve(SearchBudget::words()), SearchBudget::words());
    }

    #[test]
    fn cli_parses_golden_invocations() {
        let cli = Cli::try_parse_from(["rep12", "shorten", "8753532847616421", "--trace", "full"])
            .unwrap();
        assert!(matches!(
            cli.command,
            Command::Shorten {
                trace: TraceArg::Full,
                ..
            }
        ));

        let cli = Cli::try_parse_from([
            "rep12",
            "verify",
            "--graph",
            "g.json",
            "--word",
            "35278471246",
            "--json",
        ])
        .unwrap();
        assert!(cli.json);
        assert!(matches!(cli.command, Command::Verify { .. }));
    }

    #[test]
    fn cli_rejects_word_source_conflicts() {
        assert!(Cli::try_parse_from(["rep12", "decode"]).is_err());
        assert!(Cli::try_parse_from(["rep12", "decode", "2121", "--word", "2121"]).is_err());
    }
}
