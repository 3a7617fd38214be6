//! Shortening a 12-representant in which every letter occurs at most twice
//! down to a shortest representant of the same labeled graph.
//!
//! The procedure runs two bubble passes over the word. The descending phase
//! visits pivots `i = n, …, 1`; the first occurrence of a doubled pivot moves
//! right past smaller letters and is deleted if it meets its second copy. The
//! ascending phase visits `j = 1, …, n`; the second occurrence of a doubled
//! pivot moves left past larger letters and is deleted if it meets its first
//! copy. Every swap and deletion preserves the decoded graph, and the result
//! has length `n + b` where `b` counts the bad vertices.

use std::cmp::Ordering;

use serde_json::{json, Value};
use thiserror::Error;

use crate::word::Word;

/// Errors raised by the shortening procedure and the elementary rewrites.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShortenError {
    #[error("letter {letter} occurs {count} times; shortening requires at most two occurrences")]
    TooManyOccurrences { letter: u32, count: usize },
    #[error("rewrite precondition violated at position {position}: {reason}")]
    RewritePrecondition {
        position: usize,
        reason: &'static str,
    },
}

/// Which pass of the procedure a step or row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Descending,
    Ascending,
}

impl Phase {
    fn as_str(self) -> &'static str {
        match self {
            Phase::Descending => "descending",
            Phase::Ascending => "ascending",
        }
    }
}

/// A single elementary move. Positions are 1-based and refer to the word as
/// it was immediately before the move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepAction {
    /// The pivot at `from` swaps with the adjacent letter at `to`.
    Swap { from: usize, to: usize },
    /// One copy of an adjacent equal pair is deleted at `position`.
    Remove { position: usize },
}

/// One recorded move of the procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortenStep {
    pub phase: Phase,
    pub pivot: u32,
    pub action: StepAction,
    /// Snapshot after the move; kept only at [`TraceLevel::Full`].
    pub word_after: Option<Word>,
}

/// How much the trace retains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceLevel {
    /// Output only.
    #[default]
    None,
    /// Row lengths and steps, no word snapshots.
    Lengths,
    /// Everything, including a snapshot per row and per step.
    Full,
}

impl TraceLevel {
    fn as_str(self) -> &'static str {
        match self {
            TraceLevel::None => "none",
            TraceLevel::Lengths => "lengths",
            TraceLevel::Full => "full",
        }
    }
}

/// One executed pivot iteration: recorded at iteration start, only for pivots
/// that are doubled at that moment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRow {
    pub phase: Phase,
    pub pivot: u32,
    pub length_before: usize,
    /// Snapshot at iteration start; kept only at [`TraceLevel::Full`].
    pub word_before: Option<Word>,
}

/// The full record of one shortening run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortenTrace {
    input: Word,
    output: Word,
    level: TraceLevel,
    rows: Vec<IterationRow>,
    steps: Vec<ShortenStep>,
    after_descending: Option<Word>,
}

impl ShortenTrace {
    pub fn input(&self) -> &Word {
        &self.input
    }

    pub fn output(&self) -> &Word {
        &self.output
    }

    pub fn level(&self) -> TraceLevel {
        self.level
    }

    pub fn rows(&self) -> &[IterationRow] {
        &self.rows
    }

    pub fn steps(&self) -> &[ShortenStep] {
        &self.steps
    }

    /// The word between the two phases; `None` at [`TraceLevel::None`].
    pub fn after_descending(&self) -> Option<&Word> {
        self.after_descending.as_ref()
    }

    /// Reapplies the recorded steps to the input. Returns `None` when the
    /// trace was taken at [`TraceLevel::None`] and so carries no steps.
    pub fn replay(&self) -> Option<Word> {
        if self.level == TraceLevel::None {
            return None;
        }
        let mut letters = self.input.letters().to_vec();
        for step in &self.steps {
            match step.action {
                StepAction::Swap { from, to } => letters.swap(from - 1, to - 1),
                StepAction::Remove { position } => {
                    letters.remove(position - 1);
                }
            }
        }
        Some(Word::from_raw(letters, self.input.n()))
    }

    /// Machine-readable form. Words appear in their display form; steps carry
    /// the pivot's position before the move.
    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                json!({
                    "phase": row.phase.as_str(),
                    "pivot": row.pivot,
                    "length_before": row.length_before,
                    "word_before": row.word_before.as_ref().map(Word::to_string),
                })
            })
            .collect();
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|step| {
                let (action, position) = match step.action {
                    StepAction::Swap { from, .. } => ("swap", from),
                    StepAction::Remove { position } => ("remove", position),
                };
                json!({
                    "phase": step.phase.as_str(),
                    "pivot": step.pivot,
                    "action": action,
                    "position": position,
                })
            })
            .collect();
        json!({
            "input": self.input.to_string(),
            "output": self.output.to_string(),
            "level": self.level.as_str(),
            "rows": rows,
            "steps": steps,
            "after_descending": self.after_descending.as_ref().map(Word::to_string),
        })
    }
}

/// Shortens `word` to a representant of the same graph of length `n + b`.
///
/// Every letter of `word` must occur at most twice; words with a letter
/// occurring three or more times are rejected rather than silently reduced.
pub fn shorten(word: &Word) -> Result<Word, ShortenError> {
    shorten_with_trace(word, TraceLevel::None).map(|(output, _)| output)
}

/// Like [`shorten`], additionally recording the run at the given detail level.
pub fn shorten_with_trace(
    word: &Word,
    level: TraceLevel,
) -> Result<(Word, ShortenTrace), ShortenError> {
    let occ = word.occurrence_index();
    for letter in 1..=word.n() as u32 {
        let count = occ.count(letter);
        if count > 2 {
            return Err(ShortenError::TooManyOccurrences { letter, count });
        }
    }

    let mut engine = Engine {
        letters: word.letters().to_vec(),
        n: word.n(),
        level,
        rows: Vec::new(),
        steps: Vec::new(),
    };
    engine.descending_phase();
    debug_assert!(engine.descending_postcondition_holds());
    let after_descending =
        (level != TraceLevel::None).then(|| Word::from_raw(engine.letters.clone(), engine.n));
    engine.ascending_phase();
    debug_assert!(engine.ascending_postcondition_holds());

    let output = Word::from_raw(engine.letters, word.n());
    let trace = ShortenTrace {
        input: word.clone(),
        output: output.clone(),
        level,
        rows: engine.rows,
        steps: engine.steps,
        after_descending,
    };
    Ok((output, trace))
}

struct Engine {
    letters: Vec<u32>,
    n: usize,
    level: TraceLevel,
    rows: Vec<IterationRow>,
    steps: Vec<ShortenStep>,
}

impl Engine {
    /// Occurrence count and the first two 0-based positions of `letter`.
    fn occurrences(&self, letter: u32) -> (usize, Option<usize>, Option<usize>) {
        let mut count = 0;
        let mut first = None;
        let mut second = None;
        for (idx, &l) in self.letters.iter().enumerate() {
            if l == letter {
                count += 1;
                if first.is_none() {
                    first = Some(idx);
                } else if second.is_none() {
                    second = Some(idx);
                }
            }
        }
        (count, first, second)
    }

    fn record_row(&mut self, phase: Phase, pivot: u32) {
        if self.level == TraceLevel::None {
            return;
        }
        let word_before =
            (self.level == TraceLevel::Full).then(|| Word::from_raw(self.letters.clone(), self.n));
        self.rows.push(IterationRow {
            phase,
            pivot,
            length_before: self.letters.len(),
            word_before,
        });
    }

    fn record_step(&mut self, phase: Phase, pivot: u32, action: StepAction) {
        if self.level == TraceLevel::None {
            return;
        }
        let word_after =
            (self.level == TraceLevel::Full).then(|| Word::from_raw(self.letters.clone(), self.n));
        self.steps.push(ShortenStep {
            phase,
            pivot,
            action,
            word_after,
        });
    }

    fn descending_phase(&mut self) {
        for i in (1..=self.n as u32).rev() {
            let (count, first, _) = self.occurrences(i);
            if count < 2 {
                continue;
            }
            self.record_row(Phase::Descending, i);
            let mut p = first.expect("doubled letter has a first occurrence");
            while let Some(&next) = self.letters.get(p + 1) {
                match next.cmp(&i) {
                    Ordering::Less => {
                        self.letters.swap(p, p + 1);
                        self.record_step(
                            Phase::Descending,
                            i,
                            StepAction::Swap {
                                from: p + 1,
                                to: p + 2,
                            },
                        );
                        p += 1;
                    }
                    Ordering::Equal => {
                        self.letters.remove(p);
                        self.record_step(
                            Phase::Descending,
                            i,
                            StepAction::Remove { position: p + 1 },
                        );
                        break;
                    }
                    Ordering::Greater => break,
                }
            }
        }
    }

    fn ascending_phase(&mut self) {
        for j in 1..=self.n as u32 {
            let (count, _, second) = self.occurrences(j);
            if count < 2 {
                continue;
            }
            self.record_row(Phase::Ascending, j);
            let mut q = second.expect("doubled letter has a second occurrence");
            loop {
                if q == 0 {
                    break;
                }
                let prev = self.letters[q - 1];
                match prev.cmp(&j) {
                    Ordering::Greater => {
                        self.letters.swap(q - 1, q);
                        self.record_step(
                            Phase::Ascending,
                            j,
                            StepAction::Swap { from: q + 1, to: q },
                        );
                        q -= 1;
                    }
                    Ordering::Equal => {
                        self.letters.remove(q);
                        self.record_step(
                            Phase::Ascending,
                            j,
                            StepAction::Remove { position: q + 1 },
                        );
                        break;
                    }
                    Ordering::Less => break,
                }
            }
        }
    }

    /// After the descending phase every still-doubled letter is immediately
    /// followed, at its first occurrence, by a larger letter.
    fn descending_postcondition_holds(&self) -> bool {
        (1..=self.n as u32).all(|i| {
            let (count, first, _) = self.occurrences(i);
            count < 2 || self.letters[first.unwrap() + 1] > i
        })
    }

    /// After the ascending phase every still-doubled letter is immediately
    /// preceded, at its second occurrence, by a smaller letter.
    fn ascending_postcondition_holds(&self) -> bool {
        (1..=self.n as u32).all(|j| {
            let (count, _, second) = self.occurrences(j);
            count < 2 || self.letters[second.unwrap() - 1] < j
        })
    }
}

/// Swaps the letter at `position` with the smaller letter right after it.
///
/// The letter at `position` (1-based) must occur again later in the word, and
/// the next letter must be strictly smaller. The decoded graph is unchanged.
pub fn apply_rewrite_a(word: &Word, position: usize) -> Result<Word, ShortenError> {
    let letters = word.letters();
    if position == 0 || position >= letters.len() {
        return Err(ShortenError::RewritePrecondition {
            position,
            reason: "position and its successor must lie inside the word",
        });
    }
    let i = letters[position - 1];
    let j = letters[position];
    if !letters[position..].contains(&i) {
        return Err(ShortenError::RewritePrecondition {
            position,
            reason: "letter has no later occurrence",
        });
    }
    if j >= i {
        return Err(ShortenError::RewritePrecondition {
            position,
            reason: "next letter is not smaller",
        });
    }
    let mut out = letters.to_vec();
    out.swap(position - 1, position);
    Ok(Word::from_raw(out, word.n()))
}

/// Swaps the letter at `position` with the larger letter right before it.
///
/// The letter at `position` (1-based) must have an earlier occurrence, and the
/// previous letter must be strictly larger. The decoded graph is unchanged.
pub fn apply_rewrite_b(word: &Word, position: usize) -> Result<Word, ShortenError> {
    let letters = word.letters();
    if position < 2 || position > letters.len() {
        return Err(ShortenError::RewritePrecondition {
            position,
            reason: "position and its predecessor must lie inside the word",
        });
    }
    let i = letters[position - 1];
    let j = letters[position - 2];
    if !letters[..position - 1].contains(&i) {
        return Err(ShortenError::RewritePrecondition {
            position,
            reason: "letter has no earlier occurrence",
        });
    }
    if j <= i {
        return Err(ShortenError::RewritePrecondition {
            position,
            reason: "previous letter is not larger",
        });
    }
    let mut out = letters.to_vec();
    out.swap(position - 2, position - 1);
    Ok(Word::from_raw(out, word.n()))
}

/// Deletes the letter at `position`, which must equal the letter right after
/// it. The decoded graph is unchanged.
pub fn apply_rewrite_c(word: &Word, position: usize) -> Result<Word, ShortenError> {
    let letters = word.letters();
    if position == 0 || position >= letters.len() {
        return Err(ShortenError::RewritePrecondition {
            position,
            reason: "position and its successor must lie inside the word",
        });
    }
    if letters[position - 1] != letters[position] {
        return Err(ShortenError::RewritePrecondition {
            position,
            reason: "adjacent letters differ",
        });
    }
    let mut out = letters.to_vec();
    out.remove(position - 1);
    Ok(Word::from_raw(out, word.n()))
}
