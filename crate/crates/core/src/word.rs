//! Words over the alphabet `[n]` and the decoding rule that ties them to
//! labeled graphs: distinct letters `i < j` are adjacent in the decoded graph
//! exactly when no occurrence of `i` precedes an occurrence of `j`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::LabeledGraph;

/// Errors raised while parsing or validating words.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("cannot read `{0}` as a letter")]
    BadToken(String),
    #[error("letter {letter} is outside 1..={n}")]
    LetterOutOfRange { letter: u32, n: usize },
    #[error("letter {0} of the alphabet never occurs")]
    IncompleteAlphabet(u32),
    #[error("word is over [{word_n}] but the graph is on [{graph_n}]")]
    AlphabetMismatch { word_n: usize, graph_n: usize },
}

/// A finite word over `[n]` in which every letter of the alphabet occurs at
/// least once. Positions are 1-based throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u32>,
    n: usize,
}

impl Word {
    /// Wraps a letter sequence over the alphabet `[n]`.
    ///
    /// Every letter must lie in `1..=n` and every element of the alphabet must
    /// occur somewhere.
    pub fn new(letters: Vec<u32>, n: usize) -> Result<Self, WordError> {
        if letters.is_empty() || n == 0 {
            return Err(WordError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &letter in &letters {
            if letter == 0 || letter as usize > n {
                return Err(WordError::LetterOutOfRange { letter, n });
            }
            seen[letter as usize] = true;
        }
        if let Some(missing) = (1..=n as u32).find(|&i| !seen[i as usize]) {
            return Err(WordError::IncompleteAlphabet(missing));
        }
        Ok(Self { letters, n })
    }

    /// Like [`Word::new`], inferring the alphabet size as the largest letter.
    pub fn from_letters(letters: Vec<u32>) -> Result<Self, WordError> {
        let n = letters.iter().copied().max().unwrap_or(0) as usize;
        if !letters.is_empty() && n == 0 {
            return Err(WordError::LetterOutOfRange { letter: 0, n: 0 });
        }
        Self::new(letters, n)
    }

    /// Internal constructor for sequences already known to satisfy the word
    /// invariants (used by the rewrite and shortening routines).
    pub(crate) fn from_raw(letters: Vec<u32>, n: usize) -> Self {
        debug_assert!(Self::new(letters.clone(), n).is_ok());
        Self { letters, n }
    }

    /// Parses a word from text.
    ///
    /// Whitespace-separated integer tokens are always accepted. A single
    /// unseparated digit string such as `8753532847616421` is read one digit
    /// per letter, provided the target alphabet (when given) does not exceed
    /// nine letters; the digit `0` is rejected either way. With `n = None` the
    /// alphabet size is inferred as the largest letter.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(WordError::Empty);
        }
        let compact_digits = tokens.len() == 1
            && tokens[0].len() > 1
            && tokens[0].bytes().all(|b| b.is_ascii_digit())
            && n.is_none_or(|n| n <= 9);
        let letters: Vec<u32> = if compact_digits {
            tokens[0].bytes().map(|b| u32::from(b - b'0')).collect()
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| WordError::BadToken((*t).to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        match n {
            Some(n) => Self::new(letters, n),
            None => Self::from_letters(letters),
        }
    }

    /// Alphabet size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of letters, counted with multiplicity. Always at least `n`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Words are never empty; this exists for the sake of convention.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// The letter at 1-based position `p`.
    pub fn letter_at(&self, p: usize) -> Option<u32> {
        if p == 0 {
            return None;
        }
        self.letters.get(p - 1).copied()
    }

    /// Per-letter occurrence positions.
    pub fn occurrence_index(&self) -> OccurrenceIndex {
        let mut positions = vec![Vec::new(); self.n];
        for (idx, &letter) in self.letters.iter().enumerate() {
            positions[letter as usize - 1].push(idx + 1);
        }
        OccurrenceIndex { positions }
    }

    /// The labeled graph this word represents: `i < j` are adjacent exactly
    /// when no occurrence of `i` comes before an occurrence of `j`, i.e. when
    /// the last `j` precedes the first `i`.
    pub fn decode(&self) -> LabeledGraph {
        let n = self.n;
        let mut first = vec![usize::MAX; n + 1];
        let mut last = vec![0usize; n + 1];
        for (idx, &letter) in self.letters.iter().enumerate() {
            let l = letter as usize;
            if first[l] == usize::MAX {
                first[l] = idx;
            }
            last[l] = idx;
        }
        let mut edges = Vec::new();
        // Indexing by letter value keeps the i < j rule literal.
        #[allow(clippy::needless_range_loop)]
        for i in 1..=n {
            for j in i + 1..=n {
                if last[j] < first[i] {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        LabeledGraph::new(n, &edges).expect("decoded edges are canonical pairs over [n]")
    }

    /// Whether this word represents `graph`. Alphabet and vertex set must
    /// agree in size.
    pub fn verify(&self, graph: &LabeledGraph) -> Result<bool, WordError> {
        if self.n != graph.n() {
            return Err(WordError::AlphabetMismatch {
                word_n: self.n,
                graph_n: graph.n(),
            });
        }
        Ok(self.decode() == *graph)
    }
}

impl fmt::Display for Word {
    /// Compact digit string for alphabets up to nine letters, space-separated
    /// integers otherwise. Both forms parse back via [`Word::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 9 {
            for &letter in &self.letters {
                write!(f, "{letter}")?;
            }
            Ok(())
        } else {
            let mut sep = "";
            for &letter in &self.letters {
                write!(f, "{sep}{letter}")?;
                sep = " ";
            }
            Ok(())
        }
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, None)
    }
}

/// The 1-based occurrence positions of each letter of a word, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceIndex {
    positions: Vec<Vec<usize>>,
}

impl OccurrenceIndex {
    /// All positions of `letter`, ascending.
    pub fn positions(&self, letter: u32) -> &[usize] {
        &self.positions[letter as usize - 1]
    }

    pub fn count(&self, letter: u32) -> usize {
        self.positions(letter).len()
    }

    pub fn first(&self, letter: u32) -> Option<usize> {
        self.positions(letter).first().copied()
    }

    pub fn second(&self, letter: u32) -> Option<usize> {
        self.positions(letter).get(1).copied()
    }

    /// Largest occurrence count over the alphabet.
    pub fn max_multiplicity(&self) -> usize {
        self.positions.iter().map(Vec::len).max().unwrap_or(0)
    }
}
