//! Labeled graphs on the vertex set `[n] = {1, …, n}`, induced subgraphs and
//! their reduced forms, forbidden-pattern detection, and bad-vertex analysis.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or slicing labeled graphs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a labeled graph needs at least one vertex")]
    NoVertices,
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: u32, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("edge {{{0}, {1}}} listed twice")]
    DuplicateEdge(u32, u32),
    #[error("selection of labels is empty")]
    EmptySelection,
    #[error("selection repeats label {0}")]
    RepeatedSelection(u32),
    #[error("labeling is not a bijection onto 1..={0}")]
    InvalidLabeling(usize),
    #[error("malformed graph JSON: {0}")]
    MalformedJson(String),
}

/// An undirected graph whose vertices are labeled exactly `1..=n`.
///
/// Edges are kept twice over: as a sorted list of canonical `(u, v)` pairs
/// with `u < v`, and as a dense symmetric adjacency matrix for O(1) queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl LabeledGraph {
    /// Builds a graph on `[n]` from a list of unordered label pairs.
    ///
    /// Pairs may come in either orientation; they are canonicalized to
    /// `(smaller, larger)`. Out-of-range labels, self-loops, and pairs listed
    /// twice are rejected.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut adj = vec![false; n * n];
        let mut canonical = Vec::with_capacity(edges.len());
        for &(x, y) in edges {
            for label in [x, y] {
                if label == 0 || label as usize > n {
                    return Err(GraphError::LabelOutOfRange { label, n });
                }
            }
            if x == y {
                return Err(GraphError::SelfLoop(x));
            }
            let (u, v) = (x.min(y), x.max(y));
            let idx = (u as usize - 1) * n + (v as usize - 1);
            if adj[idx] {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[idx] = true;
            adj[(v as usize - 1) * n + (u as usize - 1)] = true;
            canonical.push((u, v));
        }
        canonical.sort_unstable();
        Ok(Self {
            n,
            edges: canonical,
            adj,
        })
    }

    /// The graph on `[n]` with no edges.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Self::new(n, &[])
    }

    /// The complete graph on `[n]`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for u in 1..=n as u32 {
            for v in u + 1..=n as u32 {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical edge list, sorted, each pair as `(smaller, larger)`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Whether `{u, v}` is an edge. Both labels must lie in `[n]`.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        debug_assert!(u >= 1 && u as usize <= self.n);
        debug_assert!(v >= 1 && v as usize <= self.n);
        if u == v {
            return false;
        }
        self.adj[(u as usize - 1) * self.n + (v as usize - 1)]
    }

    /// The subgraph induced by `labels`, retaining the original labels.
    ///
    /// Labels must be distinct, nonempty, and within `[n]`; they are sorted
    /// ascending internally.
    pub fn induced(&self, labels: &[u32]) -> Result<InducedSubgraph, GraphError> {
        if labels.is_empty() {
            return Err(GraphError::EmptySelection);
        }
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        for &label in &sorted {
            if label == 0 || label as usize > self.n {
                return Err(GraphError::LabelOutOfRange { label, n: self.n });
            }
        }
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::RepeatedSelection(pair[0]));
            }
        }
        let mut edges = Vec::new();
        for (i, &u) in sorted.iter().enumerate() {
            for &v in &sorted[i + 1..] {
                if self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Ok(InducedSubgraph {
            labels: sorted,
            edges,
        })
    }

    /// Applies a bijective relabeling; `labeling[v - 1]` is the new label of
    /// vertex `v`.
    pub fn relabel(&self, labeling: &[u32]) -> Result<Self, GraphError> {
        if labeling.len() != self.n {
            return Err(GraphError::InvalidLabeling(self.n));
        }
        let mut seen = vec![false; self.n + 1];
        for &label in labeling {
            if label == 0 || label as usize > self.n || seen[label as usize] {
                return Err(GraphError::InvalidLabeling(self.n));
            }
            seen[label as usize] = true;
        }
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(u, v)| (labeling[u as usize - 1], labeling[v as usize - 1]))
            .collect();
        Self::new(self.n, &edges)
    }

    /// Finds an induced occurrence of one of the three forbidden patterns,
    /// or `None` if the labeling is valid.
    ///
    /// I3 witnesses are searched before J4 before Q4, and within each kind the
    /// lexicographically smallest vertex tuple is returned. I3 is found by
    /// scanning ordered triples; J4 and Q4 by pairs of disjoint edges whose
    /// four endpoints induce exactly those two edges.
    pub fn find_forbidden_pattern(&self) -> Option<PatternWitness> {
        let n = self.n as u32;
        for a in 1..=n {
            for b in a + 1..=n {
                if !self.has_edge(a, b) {
                    continue;
                }
                for c in b + 1..=n {
                    if self.has_edge(b, c) && !self.has_edge(a, c) {
                        return Some(PatternWitness {
                            kind: PatternKind::I3,
                            vertices: vec![a, b, c],
                        });
                    }
                }
            }
        }

        let mut best_j4: Option<[u32; 4]> = None;
        let mut best_q4: Option<[u32; 4]> = None;
        for (i, &(u1, v1)) in self.edges.iter().enumerate() {
            for &(u2, v2) in &self.edges[i + 1..] {
                if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                    continue;
                }
                let mut quad = [u1, v1, u2, v2];
                quad.sort_unstable();
                let present = quad
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &x)| quad[k + 1..].iter().map(move |&y| (x, y)))
                    .filter(|&(x, y)| self.has_edge(x, y))
                    .count();
                if present != 2 {
                    continue;
                }
                let [a, b, c, d] = quad;
                if self.has_edge(a, c) && self.has_edge(b, d) {
                    if best_j4.is_none_or(|t| quad < t) {
                        best_j4 = Some(quad);
                    }
                } else if self.has_edge(a, d)
                    && self.has_edge(b, c)
                    && best_q4.is_none_or(|t| quad < t)
                {
                    best_q4 = Some(quad);
                }
                // Edges {a,b},{c,d} reduce to a pattern that is not forbidden.
            }
        }
        if let Some(quad) = best_j4 {
            return Some(PatternWitness {
                kind: PatternKind::J4,
                vertices: quad.to_vec(),
            });
        }
        best_q4.map(|quad| PatternWitness {
            kind: PatternKind::Q4,
            vertices: quad.to_vec(),
        })
    }

    /// Classifies every vertex as good or bad.
    ///
    /// A vertex `b` is bad when some `a < b < c` has `ab ∉ E`, `bc ∉ E`, and
    /// `ac ∈ E`. For each bad vertex the lexicographically smallest `(a, c)`
    /// witness is stored.
    pub fn bad_vertices(&self) -> BadVertexReport {
        let n = self.n as u32;
        let mut bad = BTreeSet::new();
        let mut witnesses = BTreeMap::new();
        for b in 1..=n {
            'scan: for a in 1..b {
                if self.has_edge(a, b) {
                    continue;
                }
                for c in b + 1..=n {
                    if !self.has_edge(b, c) && self.has_edge(a, c) {
                        bad.insert(b);
                        witnesses.insert(b, (a, b, c));
                        break 'scan;
                    }
                }
            }
        }
        BadVertexReport { bad, witnesses }
    }

    /// `n + b`: no representant of this graph can be shorter.
    pub fn length_lower_bound(&self) -> usize {
        self.n + self.bad_vertices().b_count()
    }

    /// Parses the JSON object `{"n": …, "edges": [[u, v], …]}`.
    ///
    /// Pairs may be unordered; unknown fields are rejected.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::MalformedJson(e.to_string()))?;
        Self::new(raw.n, &raw.edges)
    }

    /// Serializes to the canonical JSON form read by [`LabeledGraph::from_json`].
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            edges: self.edges.clone(),
        })
        .expect("graph JSON serialization cannot fail")
    }
}

/// A subgraph induced by a label selection, keeping the original labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    labels: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl InducedSubgraph {
    /// The selected labels, ascending.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Edges with both ends in the selection, canonical pairs of original labels.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (u, v) = (u.min(v), u.max(v));
        self.edges.binary_search(&(u, v)).is_ok()
    }

    /// The reduced form: the i-th smallest label is replaced by i.
    pub fn reduced(&self) -> LabeledGraph {
        let rank = |label: u32| -> u32 {
            let idx = self
                .labels
                .binary_search(&label)
                .expect("edge endpoint is a selected label");
            idx as u32 + 1
        };
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(u, v)| (rank(u), rank(v)))
            .collect();
        LabeledGraph::new(self.labels.len(), &edges)
            .expect("rank relabeling preserves graph invariants")
    }
}

/// The three forbidden labeled patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternKind {
    /// The labeled path 1–2–3.
    I3,
    /// Two disjoint edges {1,3} and {2,4}.
    J4,
    /// Two disjoint edges {1,4} and {2,3}.
    Q4,
}

impl PatternKind {
    pub fn vertex_count(self) -> usize {
        match self {
            PatternKind::I3 => 3,
            PatternKind::J4 | PatternKind::Q4 => 4,
        }
    }

    /// The pattern itself as a labeled graph in reduced form.
    pub fn reduced_graph(self) -> LabeledGraph {
        let (n, edges): (usize, &[(u32, u32)]) = match self {
            PatternKind::I3 => (3, &[(1, 2), (2, 3)]),
            PatternKind::J4 => (4, &[(1, 3), (2, 4)]),
            PatternKind::Q4 => (4, &[(1, 4), (2, 3)]),
        };
        LabeledGraph::new(n, edges).expect("pattern graphs are well formed")
    }
}

impl std::fmt::Display for PatternKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            PatternKind::I3 => "I3",
            PatternKind::J4 => "J4",
            PatternKind::Q4 => "Q4",
        };
        f.write_str(name)
    }
}

/// An induced occurrence of a forbidden pattern: the original labels, in
/// ascending order, whose induced subgraph reduces to `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub vertices: Vec<u32>,
}

/// The good/bad classification of every vertex, with one witness triple
/// `(a, b, c)` per bad vertex `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadVertexReport {
    bad: BTreeSet<u32>,
    witnesses: BTreeMap<u32, (u32, u32, u32)>,
}

impl BadVertexReport {
    pub fn bad(&self) -> &BTreeSet<u32> {
        &self.bad
    }

    pub fn b_count(&self) -> usize {
        self.bad.len()
    }

    pub fn is_bad(&self, v: u32) -> bool {
        self.bad.contains(&v)
    }

    pub fn witness(&self, v: u32) -> Option<(u32, u32, u32)> {
        self.witnesses.get(&v).copied()
    }

    pub fn witnesses(&self) -> &BTreeMap<u32, (u32, u32, u32)> {
        &self.witnesses
    }
}
