//! Randomized invariants tying the codec, the pattern scan, the bad-vertex
//! classification, the shortening procedure, and the brute-force searches to
//! one another.

use itertools::Itertools;
use proptest::prelude::*;

use rep12::graph::{LabeledGraph, PatternKind};
use rep12::oracle::{self, SearchBudget};
use rep12::shorten::{self, StepAction, TraceLevel};
use rep12::word::Word;

/// Words over [n] with each letter once or twice, n up to `max_n`.
fn word_with_doubles(max_n: usize) -> impl Strategy<Value = Word> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n)
            .prop_flat_map(|doubled| {
                let mut letters = Vec::new();
                for (i, &twice) in doubled.iter().enumerate() {
                    letters.push(i as u32 + 1);
                    if twice {
                        letters.push(i as u32 + 1);
                    }
                }
                Just(letters).prop_shuffle()
            })
            .prop_map(move |letters| Word::new(letters, n).expect("letters cover [n]"))
    })
}

/// Words over [n] with one to three occurrences per letter.
fn word_unrestricted(max_n: usize) -> impl Strategy<Value = Word> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(1..=3usize, n)
            .prop_flat_map(|counts| {
                let mut letters = Vec::new();
                for (i, &count) in counts.iter().enumerate() {
                    letters.extend(std::iter::repeat_n(i as u32 + 1, count));
                }
                Just(letters).prop_shuffle()
            })
            .prop_map(move |letters| Word::new(letters, n).expect("letters cover [n]"))
    })
}

fn permutation_word(max_n: usize) -> impl Strategy<Value = Word> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(move |letters| Word::new(letters, n).expect("permutation covers [n]"))
    })
}

fn labeled_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = LabeledGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 1..=n as u32 {
                for v in u + 1..=n as u32 {
                    if mask[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            LabeledGraph::new(n, &edges).expect("mask pairs are canonical")
        })
    })
}

/// Pattern detection by brute subset sweep: compare every reduced induced
/// subgraph on three or four vertices against the pattern graphs.
fn has_pattern_by_subsets(g: &LabeledGraph) -> bool {
    let n = g.n() as u32;
    let i3 = PatternKind::I3.reduced_graph();
    let j4 = PatternKind::J4.reduced_graph();
    let q4 = PatternKind::Q4.reduced_graph();
    for sub in (1..=n).combinations(3) {
        if g.induced(&sub).unwrap().reduced() == i3 {
            return true;
        }
    }
    for sub in (1..=n).combinations(4) {
        let red = g.induced(&sub).unwrap().reduced();
        if red == j4 || red == q4 {
            return true;
        }
    }
    false
}

fn is_bad_by_definition(g: &LabeledGraph, b: u32) -> bool {
    let n = g.n() as u32;
    (1..b).any(|a| (b + 1..=n).any(|c| !g.has_edge(a, b) && !g.has_edge(b, c) && g.has_edge(a, c)))
}

proptest! {
    #[test]
    fn decode_verify_round_trip(w in word_unrestricted(8)) {
        let g = w.decode();
        prop_assert_eq!(g.n(), w.n());
        prop_assert_eq!(w.verify(&g), Ok(true));
    }

    #[test]
    fn decoded_graphs_never_contain_forbidden_patterns(w in word_unrestricted(7)) {
        prop_assert_eq!(w.decode().find_forbidden_pattern(), None);
    }

    #[test]
    fn permutation_words_decode_to_graphs_without_bad_vertices(w in permutation_word(8)) {
        let g = w.decode();
        prop_assert_eq!(g.bad_vertices().b_count(), 0);
        prop_assert_eq!(g.length_lower_bound(), g.n());
    }

    #[test]
    fn prepended_fresh_letter_is_universal(w in word_unrestricted(6)) {
        let n = w.n();
        let fresh = n as u32 + 1;
        let mut letters = vec![fresh];
        letters.extend_from_slice(w.letters());
        let extended = Word::new(letters, n + 1).unwrap();
        let g = w.decode();
        let h = extended.decode();
        for i in 1..=n as u32 {
            prop_assert!(h.has_edge(i, fresh));
            for j in i + 1..=n as u32 {
                prop_assert_eq!(h.has_edge(i, j), g.has_edge(i, j));
            }
        }
    }

    #[test]
    fn pattern_scan_agrees_with_subset_sweep(g in labeled_graph(1, 6)) {
        match g.find_forbidden_pattern() {
            Some(witness) => {
                prop_assert_eq!(witness.vertices.len(), witness.kind.vertex_count());
                prop_assert!(witness.vertices.windows(2).all(|p| p[0] < p[1]));
                let reduced = g.induced(&witness.vertices).unwrap().reduced();
                prop_assert_eq!(reduced, witness.kind.reduced_graph());
            }
            None => prop_assert!(!has_pattern_by_subsets(&g)),
        }
    }

    #[test]
    fn bad_vertex_report_matches_definition(g in labeled_graph(1, 8)) {
        let report = g.bad_vertices();
        for b in 1..=g.n() as u32 {
            prop_assert_eq!(report.is_bad(b), is_bad_by_definition(&g, b));
            prop_assert_eq!(report.witness(b).is_some(), report.is_bad(b));
        }
        for (&b, &(a, mid, c)) in report.witnesses() {
            prop_assert_eq!(mid, b);
            prop_assert!(a < b && b < c);
            prop_assert!(!g.has_edge(a, b));
            prop_assert!(!g.has_edge(b, c));
            prop_assert!(g.has_edge(a, c));
        }
    }

    #[test]
    fn induced_subgraph_preserves_adjacency(
        (g, selection) in labeled_graph(1, 8).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), proptest::collection::vec(any::<bool>(), n))
        }).prop_map(|(g, mask)| {
            let mut selection: Vec<u32> = mask
                .iter()
                .enumerate()
                .filter_map(|(i, &keep)| keep.then_some(i as u32 + 1))
                .collect();
            if selection.is_empty() {
                selection.push(1);
            }
            (g, selection)
        })
    ) {
        let sub = g.induced(&selection).unwrap();
        for (idx, &u) in selection.iter().enumerate() {
            for &v in &selection[idx + 1..] {
                prop_assert_eq!(sub.has_edge(u, v), g.has_edge(u, v));
            }
        }
        let reduced = sub.reduced();
        prop_assert_eq!(reduced.n(), selection.len());
        prop_assert_eq!(reduced.edge_count(), sub.edges().len());
    }

    #[test]
    fn shorten_reaches_the_optimum(w in word_with_doubles(8)) {
        let g = w.decode();
        let out = shorten::shorten(&w).unwrap();
        prop_assert_eq!(out.decode(), g.clone());
        prop_assert_eq!(out.len(), g.length_lower_bound());
        // Occurrence law: bad vertices doubled, good vertices single.
        let occ = out.occurrence_index();
        let bad = g.bad_vertices();
        for letter in 1..=g.n() as u32 {
            let expected = if bad.is_bad(letter) { 2 } else { 1 };
            prop_assert_eq!(occ.count(letter), expected);
        }
    }

    #[test]
    fn shorten_is_length_idempotent(w in word_with_doubles(8)) {
        let once = shorten::shorten(&w).unwrap();
        let twice = shorten::shorten(&once).unwrap();
        prop_assert_eq!(once.len(), twice.len());
        prop_assert_eq!(once.decode(), twice.decode());
    }

    #[test]
    fn trace_replays_and_swaps_are_adjacent(w in word_with_doubles(7)) {
        let (out, trace) = shorten::shorten_with_trace(&w, TraceLevel::Lengths).unwrap();
        prop_assert_eq!(trace.replay().unwrap(), out.clone());
        for step in trace.steps() {
            if let StepAction::Swap { from, to } = step.action {
                prop_assert_eq!(from.abs_diff(to), 1);
            }
        }
        // Row lengths never increase, and drop by exactly the removals.
        let removals = trace
            .steps()
            .iter()
            .filter(|s| matches!(s.action, StepAction::Remove { .. }))
            .count();
        prop_assert_eq!(w.len() - out.len(), removals);
    }

    #[test]
    fn phase_postconditions_hold(w in word_with_doubles(8)) {
        let (out, trace) = shorten::shorten_with_trace(&w, TraceLevel::Full).unwrap();
        let mid = trace.after_descending().unwrap();
        let occ = mid.occurrence_index();
        for letter in 1..=mid.n() as u32 {
            if occ.count(letter) == 2 {
                let follower = mid.letter_at(occ.first(letter).unwrap() + 1).unwrap();
                prop_assert!(follower > letter);
            }
        }
        let occ = out.occurrence_index();
        for letter in 1..=out.n() as u32 {
            if occ.count(letter) == 2 {
                let predecessor = out.letter_at(occ.second(letter).unwrap() - 1).unwrap();
                prop_assert!(predecessor < letter);
            }
        }
    }

    #[test]
    fn rewrites_preserve_the_graph_wherever_applicable(w in word_with_doubles(7)) {
        let g = w.decode();
        for position in 1..=w.len() {
            if let Ok(out) = shorten::apply_rewrite_a(&w, position) {
                prop_assert_eq!(out.decode(), g.clone());
                prop_assert_eq!(out.len(), w.len());
            }
            if let Ok(out) = shorten::apply_rewrite_b(&w, position) {
                prop_assert_eq!(out.decode(), g.clone());
                prop_assert_eq!(out.len(), w.len());
            }
            if let Ok(out) = shorten::apply_rewrite_c(&w, position) {
                prop_assert_eq!(out.decode(), g.clone());
                prop_assert_eq!(out.len(), w.len() - 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn brute_force_search_agrees_with_pattern_criterion(g in labeled_graph(1, 4)) {
        let outcome = oracle::brute_force_shortest(&g, &SearchBudget::words()).unwrap();
        match outcome.word {
            Some(word) => {
                prop_assert_eq!(g.find_forbidden_pattern(), None);
                prop_assert_eq!(word.decode(), g.clone());
                prop_assert_eq!(word.len(), g.length_lower_bound());
                // The procedure cannot improve on an already-shortest word.
                let shortened = shorten::shorten(&word).unwrap();
                prop_assert_eq!(shortened.len(), word.len());
            }
            None => prop_assert!(g.find_forbidden_pattern().is_some()),
        }
    }

    #[test]
    fn min_bad_labeling_is_minimal_and_lex_first(g in labeled_graph(1, 4)) {
        let n = g.n();
        let result = oracle::min_bad_labeling(&g, &SearchBudget::labelings()).unwrap();

        // Independent sweep over all labelings.
        let mut best: Option<(usize, Vec<u32>)> = None;
        for labeling in (1..=n as u32).permutations(n) {
            let relabeled = g.relabel(&labeling).unwrap();
            if relabeled.find_forbidden_pattern().is_some() {
                continue;
            }
            let bad = relabeled.bad_vertices().b_count();
            if best.as_ref().is_none_or(|&(b, _)| bad < b) {
                best = Some((bad, labeling));
            }
        }

        match (result, best) {
            (None, None) => {}
            (Some(result), Some((bad_count, labeling))) => {
                prop_assert_eq!(result.bad_count, bad_count);
                prop_assert_eq!(&result.labeling, &labeling);
                let winner = g.relabel(&labeling).unwrap();
                prop_assert_eq!(result.representant.decode(), winner);
                prop_assert_eq!(result.representant.len(), n + bad_count);
            }
            (result, best) => {
                return Err(TestCaseError::fail(format!(
                    "search and sweep disagree: {result:?} vs {best:?}"
                )));
            }
        }
    }
}
