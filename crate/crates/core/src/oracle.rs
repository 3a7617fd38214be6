//! Brute-force ground truth, kept deliberately independent of the codec and
//! the shortening procedure so the two can be checked against each other:
//! exhaustive shortest-representant search, permutation representability,
//! labeled-graph enumeration, lower-bound certification, and minimum-bad
//! labeling search.

use itertools::Itertools;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::LabeledGraph;
use crate::shorten::{self, ShortenError};
use crate::word::Word;

/// Search sizes beyond these need an explicit acknowledgement.
pub const WORD_SEARCH_MAX_N: usize = 5;
pub const PERMUTATION_SEARCH_MAX_N: usize = 8;
pub const LABELING_SEARCH_MAX_N: usize = 8;
/// Graph enumeration has no override; 2^10 graphs at n = 5 is the ceiling.
pub const GRAPH_ENUMERATION_MAX_N: usize = 5;

/// Errors raised by the brute-force searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph on {n} vertices exceeds the search cap of {cap}; raise max_n and acknowledge the cost to override")]
    BudgetExceeded { n: usize, cap: usize },
    #[error("word cap of {0} candidates exhausted before the search finished")]
    WordCapExceeded(u64),
    #[error("supplied word does not represent the winning labeled graph")]
    AuxiliaryMismatch,
    #[error("supplied word rejected by the shortening procedure: {0}")]
    AuxiliaryRejected(#[from] ShortenError),
    #[error("no representant found for a labeling that passed the validity check")]
    RepresentantSearchFailed,
}

/// Limits on a brute-force run.
///
/// `max_n` alone cannot push past a search's hard cap; raising it beyond the
/// cap additionally requires `acknowledge_slow`, as a guard against
/// accidentally requesting a factorial-sized sweep. `max_words` bounds the
/// number of candidate words examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_n: usize,
    pub max_words: Option<u64>,
    pub acknowledge_slow: bool,
}

impl SearchBudget {
    /// Default budget for word searches.
    pub fn words() -> Self {
        Self {
            max_n: WORD_SEARCH_MAX_N,
            max_words: None,
            acknowledge_slow: false,
        }
    }

    /// Default budget for permutation searches.
    pub fn permutations() -> Self {
        Self {
            max_n: PERMUTATION_SEARCH_MAX_N,
            max_words: None,
            acknowledge_slow: false,
        }
    }

    /// Default budget for labeling searches.
    pub fn labelings() -> Self {
        Self {
            max_n: LABELING_SEARCH_MAX_N,
            max_words: None,
            acknowledge_slow: false,
        }
    }

    fn admit(&self, n: usize, hard_cap: usize) -> Result<(), OracleError> {
        let cap = if self.acknowledge_slow {
            self.max_n
        } else {
            self.max_n.min(hard_cap)
        };
        if n > cap {
            return Err(OracleError::BudgetExceeded { n, cap });
        }
        Ok(())
    }
}

/// Counters accumulated during a search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Candidate words examined.
    pub words_checked: u64,
}

/// Result of a word search: the winning word, if any, plus counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub word: Option<Word>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.word.is_some()
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "found": self.word.is_some(),
            "word": self.word.as_ref().map(Word::to_string),
            "length": self.word.as_ref().map(Word::len),
            "stats": { "words_checked": self.stats.words_checked },
        })
    }
}

/// Winner of a minimum-bad labeling search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingResult {
    /// `labeling[v - 1]` is the label given to input vertex `v`.
    pub labeling: Vec<u32>,
    /// Bad vertices of the relabeled graph.
    pub bad_count: usize,
    /// A shortest representant of the relabeled graph, length `n + bad_count`.
    pub representant: Word,
    /// Counters from the representant search; zero when one was supplied.
    pub stats: SearchStats,
}

impl LabelingResult {
    pub fn to_json_value(&self) -> Value {
        json!({
            "found": true,
            "labeling": self.labeling,
            "bad_count": self.bad_count,
            "word": self.representant.to_string(),
            "length": self.representant.len(),
            "stats": { "words_checked": self.stats.words_checked },
        })
    }
}

/// Checks the defining adjacency rule directly: `i < j` adjacent exactly when
/// no occurrence of `i` precedes an occurrence of `j`. Deliberately does not
/// go through [`Word::decode`], so searches built on this function remain an
/// independent route to the same answer.
fn represents(letters: &[u32], g: &LabeledGraph) -> bool {
    let n = g.n();
    let mut first = vec![usize::MAX; n + 1];
    let mut last = vec![0usize; n + 1];
    for (idx, &letter) in letters.iter().enumerate() {
        let l = letter as usize;
        if first[l] == usize::MAX {
            first[l] = idx;
        }
        last[l] = idx;
    }
    if first[1..].contains(&usize::MAX) {
        return false;
    }
    // Indexing by letter value keeps the i < j rule literal.
    #[allow(clippy::needless_range_loop)]
    for i in 1..=n {
        for j in i + 1..=n {
            let some_i_before_j = first[i] < last[j];
            if some_i_before_j == g.has_edge(i as u32, j as u32) {
                return false;
            }
        }
    }
    true
}

/// Depth-first enumeration of the arrangements of a fixed letter multiset, in
/// lexicographic order, stopping at the first arrangement that represents the
/// target graph.
struct ArrangementSearch<'a> {
    g: &'a LabeledGraph,
    remaining: Vec<u8>,
    prefix: Vec<u32>,
    target_len: usize,
    stats: &'a mut SearchStats,
    max_words: Option<u64>,
}

impl ArrangementSearch<'_> {
    fn run(&mut self) -> Result<Option<Vec<u32>>, OracleError> {
        if self.prefix.len() == self.target_len {
            self.stats.words_checked += 1;
            if let Some(cap) = self.max_words {
                if self.stats.words_checked > cap {
                    return Err(OracleError::WordCapExceeded(cap));
                }
            }
            if represents(&self.prefix, self.g) {
                return Ok(Some(self.prefix.clone()));
            }
            return Ok(None);
        }
        for letter in 1..=self.g.n() as u32 {
            if self.remaining[letter as usize] == 0 {
                continue;
            }
            self.remaining[letter as usize] -= 1;
            self.prefix.push(letter);
            let found = self.run()?;
            self.prefix.pop();
            self.remaining[letter as usize] += 1;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn search_profile(
    g: &LabeledGraph,
    doubled: &[u32],
    stats: &mut SearchStats,
    max_words: Option<u64>,
) -> Result<Option<Vec<u32>>, OracleError> {
    let n = g.n();
    let mut remaining = vec![1u8; n + 1];
    remaining[0] = 0;
    for &letter in doubled {
        remaining[letter as usize] = 2;
    }
    let target_len = n + doubled.len();
    let mut search = ArrangementSearch {
        g,
        remaining,
        prefix: Vec::with_capacity(target_len),
        target_len,
        stats,
        max_words,
    };
    search.run()
}

/// Finds a shortest representant of `g` by exhausting, length by length, all
/// words in which every letter occurs once or twice. Among the shortest it
/// returns the lexicographically smallest. `None` means `g` has no such
/// representant at any length up to `2n`, and hence none at all.
pub fn brute_force_shortest(
    g: &LabeledGraph,
    budget: &SearchBudget,
) -> Result<SearchOutcome, OracleError> {
    budget.admit(g.n(), WORD_SEARCH_MAX_N)?;
    let n = g.n();
    let mut stats = SearchStats::default();
    for doubles in 0..=n {
        let mut best: Option<Vec<u32>> = None;
        for subset in (1..=n as u32).combinations(doubles) {
            if let Some(letters) = search_profile(g, &subset, &mut stats, budget.max_words)? {
                if best.as_ref().is_none_or(|b| letters < *b) {
                    best = Some(letters);
                }
            }
        }
        if let Some(letters) = best {
            return Ok(SearchOutcome {
                word: Some(Word::from_raw(letters, n)),
                stats,
            });
        }
    }
    Ok(SearchOutcome { word: None, stats })
}

/// Whether any word over `[n]` represents `g`.
pub fn is_representable(g: &LabeledGraph, budget: &SearchBudget) -> Result<bool, OracleError> {
    Ok(brute_force_shortest(g, budget)?.word.is_some())
}

/// Searches the `n!` permutation words for one representing `g`, in
/// lexicographic order, returning the first hit.
pub fn is_permutation_representable(
    g: &LabeledGraph,
    budget: &SearchBudget,
) -> Result<SearchOutcome, OracleError> {
    budget.admit(g.n(), PERMUTATION_SEARCH_MAX_N)?;
    let n = g.n();
    let mut stats = SearchStats::default();
    for perm in (1..=n as u32).permutations(n) {
        stats.words_checked += 1;
        if let Some(cap) = budget.max_words {
            if stats.words_checked > cap {
                return Err(OracleError::WordCapExceeded(cap));
            }
        }
        if represents(&perm, g) {
            return Ok(SearchOutcome {
                word: Some(Word::from_raw(perm, n)),
                stats,
            });
        }
    }
    Ok(SearchOutcome { word: None, stats })
}

/// Depth-first sweep of all words over `[n]`, letters free to repeat, that are
/// strictly shorter than the stated lower bound `n + b`.
///
/// Returns a counterexample word if one represents `g`; `None` certifies that
/// the bound holds over the unrestricted word space.
pub fn certify_lower_bound(
    g: &LabeledGraph,
    budget: &SearchBudget,
) -> Result<SearchOutcome, OracleError> {
    budget.admit(g.n(), WORD_SEARCH_MAX_N)?;
    let n = g.n();
    let bound = g.length_lower_bound();
    let mut stats = SearchStats::default();
    for target_len in n..bound {
        let mut search = FreeSearch {
            g,
            prefix: Vec::with_capacity(target_len),
            seen: vec![false; n + 1],
            missing: n,
            target_len,
            stats: &mut stats,
            max_words: budget.max_words,
        };
        if let Some(letters) = search.run()? {
            return Ok(SearchOutcome {
                word: Some(Word::from_raw(letters, n)),
                stats,
            });
        }
    }
    Ok(SearchOutcome { word: None, stats })
}

/// Like [`ArrangementSearch`] but over the unrestricted word space: any letter
/// may fill any slot, subject to every letter appearing by the end.
struct FreeSearch<'a> {
    g: &'a LabeledGraph,
    prefix: Vec<u32>,
    seen: Vec<bool>,
    missing: usize,
    target_len: usize,
    stats: &'a mut SearchStats,
    max_words: Option<u64>,
}

impl FreeSearch<'_> {
    fn run(&mut self) -> Result<Option<Vec<u32>>, OracleError> {
        if self.prefix.len() == self.target_len {
            self.stats.words_checked += 1;
            if let Some(cap) = self.max_words {
                if self.stats.words_checked > cap {
                    return Err(OracleError::WordCapExceeded(cap));
                }
            }
            if represents(&self.prefix, self.g) {
                return Ok(Some(self.prefix.clone()));
            }
            return Ok(None);
        }
        if self.missing > self.target_len - self.prefix.len() {
            return Ok(None);
        }
        for letter in 1..=self.g.n() as u32 {
            let l = letter as usize;
            let was_new = !self.seen[l];
            if was_new {
                self.seen[l] = true;
                self.missing -= 1;
            }
            self.prefix.push(letter);
            let found = self.run()?;
            self.prefix.pop();
            if was_new {
                self.seen[l] = false;
                self.missing += 1;
            }
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// All `2^(n(n-1)/2)` labeled graphs on `[n]`, edge masks in increasing order.
pub fn enumerate_labeled_graphs(
    n: usize,
) -> Result<impl Iterator<Item = LabeledGraph>, OracleError> {
    if n == 0 || n > GRAPH_ENUMERATION_MAX_N {
        return Err(OracleError::BudgetExceeded {
            n,
            cap: GRAPH_ENUMERATION_MAX_N,
        });
    }
    let pairs: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|u| (u + 1..=n as u32).map(move |v| (u, v)))
        .collect();
    let count: u32 = 1 << pairs.len();
    Ok((0..count).map(move |mask| {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|&(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &pair)| pair)
            .collect();
        LabeledGraph::new(n, &edges).expect("enumerated edges are canonical pairs")
    }))
}

/// Searches all `n!` labelings of `g` for one that admits a representant at
/// all and, among those, minimizes the number of bad vertices; ties go to the
/// lexicographically smallest labeling sequence. `None` means no labeling is
/// free of forbidden patterns. The winner's representant is found by a search
/// restricted to its bad-vertex profile, then run through the shortening
/// procedure.
pub fn min_bad_labeling(
    g: &LabeledGraph,
    budget: &SearchBudget,
) -> Result<Option<LabelingResult>, OracleError> {
    min_bad_labeling_with(g, budget, |_| None)
}

/// Like [`min_bad_labeling`], but a caller who already knows a representant of
/// the winning relabeled graph can supply it and skip the representant search.
/// The supplied word is verified against the winner and shortened; a word for
/// the wrong graph is rejected.
pub fn min_bad_labeling_with<F>(
    g: &LabeledGraph,
    budget: &SearchBudget,
    mut representant_for: F,
) -> Result<Option<LabelingResult>, OracleError>
where
    F: FnMut(&LabeledGraph) -> Option<Word>,
{
    budget.admit(g.n(), LABELING_SEARCH_MAX_N)?;
    let n = g.n();
    let mut best: Option<(usize, Vec<u32>)> = None;
    for labeling in (1..=n as u32).permutations(n) {
        let relabeled = g
            .relabel(&labeling)
            .expect("a permutation of [n] is a bijective labeling");
        if relabeled.find_forbidden_pattern().is_some() {
            continue;
        }
        let bad_count = relabeled.bad_vertices().b_count();
        if best.as_ref().is_none_or(|&(b, _)| bad_count < b) {
            let done = bad_count == 0;
            best = Some((bad_count, labeling));
            if done {
                break;
            }
        }
    }
    let Some((bad_count, labeling)) = best else {
        return Ok(None);
    };
    let winner = g.relabel(&labeling).expect("winning labeling is bijective");

    let mut stats = SearchStats::default();
    let raw = match representant_for(&winner) {
        Some(word) => {
            if word.n() != winner.n() || !represents(word.letters(), &winner) {
                return Err(OracleError::AuxiliaryMismatch);
            }
            word
        }
        None => {
            let doubled: Vec<u32> = winner.bad_vertices().bad().iter().copied().collect();
            let letters = search_profile(&winner, &doubled, &mut stats, budget.max_words)?
                .ok_or(OracleError::RepresentantSearchFailed)?;
            Word::from_raw(letters, n)
        }
    };
    let representant = shorten::shorten(&raw)?;
    Ok(Some(LabelingResult {
        labeling,
        bad_count,
        representant,
        stats,
    }))
}
