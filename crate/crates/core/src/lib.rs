//! 12-representants of labeled graphs.
//!
//! A word `w` over the alphabet `[n] = {1, …, n}`, using every letter at
//! least once, represents the labeled graph in which `i < j` are adjacent
//! exactly when no occurrence of `i` comes before an occurrence of `j`. This
//! crate decodes and verifies such words, recognizes which labeled graphs
//! admit one (no induced subgraph may reduce to the patterns I3, J4, or Q4),
//! classifies vertices as good or bad, and shortens a representant with at
//! most two occurrences per letter to one of optimal length `n + b`, where
//! `b` counts the bad vertices. Brute-force searches over words, labelings,
//! and whole graph families provide independent ground truth for all of it.
//!
//! ```
//! use rep12::{shorten, Word};
//!
//! let word = Word::parse("8753532847616421", None)?;
//! let graph = word.decode();
//! assert_eq!(graph.n(), 8);
//!
//! let short = shorten::shorten(&word)?;
//! assert_eq!(short.to_string(), "35278471246");
//! assert_eq!(short.len(), graph.length_lower_bound());
//! assert!(short.verify(&graph)?);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod graph;
pub mod oracle;
pub mod shorten;
pub mod word;

pub use graph::{
    BadVertexReport, GraphError, InducedSubgraph, LabeledGraph, PatternKind, PatternWitness,
};
pub use oracle::{LabelingResult, OracleError, SearchBudget, SearchOutcome, SearchStats};
pub use shorten::{ShortenError, ShortenStep, ShortenTrace, TraceLevel};
pub use word::{OccurrenceIndex, Word, WordError};
