//! Tabular exact inference over 5-index items.
//!
//! Deduction starts from the axiom `[ε,0,ε,0,1]` (the mandatory root
//! shift), closes under the shift rule and one two-premise rule per reduce
//! transition, and accepts on the goal item `[ε,0,ε,0,n+1]`. Side-condition
//! arcs are either restricted to a gold tree (recognition) or scored
//! max-plus (Viterbi parsing).
//!
//! Two engines implement the closure: the general hook-trick engine
//! (`O(n⁷)` time, `O(n⁵)` space) and, for systems that never reduce `s2`,
//! the collapsed 4-index engine (`O(n⁶)` time, `O(n⁴)` space). Mode
//! selection is structural and automatic; results are identical.

mod collapsed;
mod general;
mod item;
mod rules;
mod score;

pub use item::{BufferPos, Item, NodeId};
pub use rules::{compile_rules, RuleRow, RuleTable, WindowVar};
pub use score::{ScoreFileError, ScoreMatrix};

use thiserror::Error;

use crate::transition::{ReduceTransition, TransitionSystem};
use crate::tree::DepTree;

use collapsed::CollapsedEngine;
use general::{GeneralEngine, JoinStrategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("transition {0} falls outside the tabularizable window {{s0,s1,s2,b0}}")]
    UnsupportedTransition(ReduceTransition),
    #[error("the collapsed engine requires a system that never reduces s2")]
    CollapsedIneligible,
    #[error("no derivation reaches the goal item")]
    NoParse,
    #[error("a sentence must contain at least one token")]
    InvalidSentence,
}

/// Engine choice. `Auto` takes the collapsed engine whenever the compiled
/// rules permit it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Auto,
    General,
    Collapsed,
}

/// Where side-condition arcs get their weight.
#[derive(Debug, Clone, Copy)]
pub enum ArcScores<'a> {
    /// Recognition: an arc is admitted (weight 0) iff it belongs to the tree.
    Gold(&'a DepTree),
    /// Viterbi: weights from the matrix; `-∞` entries are disallowed.
    Matrix(&'a ScoreMatrix),
    /// Instrumentation: every arc with a non-root modifier is admitted at 0.
    Uniform,
}

impl ArcScores<'_> {
    pub(crate) fn score(&self, head: usize, modifier: usize) -> Option<f64> {
        match self {
            ArcScores::Gold(tree) => (tree.head_of(modifier) == head).then_some(0.0),
            ArcScores::Matrix(m) => {
                let s = m.get(head, modifier);
                s.is_finite().then_some(s)
            }
            ArcScores::Uniform => Some(0.0),
        }
    }
}

/// Diagnostics of one closure run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartRun {
    /// Goal item derived.
    pub accepted: bool,
    /// Best goal score, when accepted.
    pub goal_score: Option<f64>,
    /// Distinct derived items.
    pub items: u64,
    /// Derived items plus hook-aggregate entries (total stored signatures).
    pub stored: u64,
    /// Rule evaluations performed (folds, joins/probes, shifts).
    pub applications: u64,
    /// Derived items with `h1 ≠ h2`; zero for every collapsible system.
    pub h1_h2_mismatches: u64,
    /// Engine actually used.
    pub collapsed_mode: bool,
}

/// A weighted parse: the best tree and its total arc score.
#[derive(Debug, Clone, PartialEq)]
pub struct Parse {
    pub tree: DepTree,
    pub score: f64,
}

/// Complexity instrumentation for the full (all arcs admitted) chart.
///
/// Counts come from the general hook-trick tabulation run in its textbook
/// dense-probe form, uniformly for every chartable system, so that they
/// measure exactly what the `O(n⁵)/O(n⁷)` (and, via the missing
/// s2-reductions, `O(n⁴)/O(n⁶)`) analyses bound: `items` is every stored
/// signature (derived items plus hook aggregates) and `applications` every
/// rule evaluation including dense range probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartMetrics {
    pub items: u64,
    pub applications: u64,
    /// Whether recognition and parsing would run collapsed.
    pub collapsed_eligible: bool,
}

fn check_n(n: usize) -> Result<(), ChartError> {
    if n < 1 {
        return Err(ChartError::InvalidSentence);
    }
    assert!(
        n <= u16::MAX as usize - 2,
        "sentence too long for the chart index space"
    );
    Ok(())
}

fn pick_mode(mode: Mode, table: &RuleTable) -> Result<bool, ChartError> {
    match mode {
        Mode::Auto => Ok(table.collapsed_eligible()),
        Mode::General => Ok(false),
        Mode::Collapsed => {
            if table.collapsed_eligible() {
                Ok(true)
            } else {
                Err(ChartError::CollapsedIneligible)
            }
        }
    }
}

/// Runs one closure and reports diagnostics. The workhorse behind
/// recognition, parsing and the metrics; also the handle tests use to
/// compare engines.
pub fn run_chart(
    mode: Mode,
    sys: &TransitionSystem,
    scores: ArcScores<'_>,
    n: usize,
) -> Result<ChartRun, ChartError> {
    check_n(n)?;
    let table = compile_rules(sys)?;
    if pick_mode(mode, &table)? {
        let mut engine = CollapsedEngine::new(n, &table, &scores);
        engine.close();
        let goal = engine.goal(n);
        Ok(ChartRun {
            accepted: goal.is_some(),
            goal_score: goal.map(|g| engine.score(g)),
            items: engine.item_count(),
            stored: engine.item_count(),
            applications: engine.applications,
            h1_h2_mismatches: 0,
            collapsed_mode: true,
        })
    } else {
        let mut engine = GeneralEngine::new(n, &table, &scores, JoinStrategy::Indexed);
        engine.close();
        let goal = engine.goal(n);
        Ok(ChartRun {
            accepted: goal.is_some(),
            goal_score: goal.map(|g| engine.score(g)),
            items: engine.item_count(),
            stored: engine.stored_count(),
            applications: engine.applications,
            h1_h2_mismatches: engine.h1_h2_mismatches,
            collapsed_mode: false,
        })
    }
}

/// True iff `sys` can derive exactly `gold`: the chart is closed with arcs
/// restricted to the gold tree and accepts on the goal item. Any goal
/// derivation creates one arc per token, all gold, hence exactly `gold`.
pub fn recognize_gold(sys: &TransitionSystem, gold: &DepTree) -> Result<bool, ChartError> {
    recognize_gold_with(Mode::Auto, sys, gold)
}

pub fn recognize_gold_with(
    mode: Mode,
    sys: &TransitionSystem,
    gold: &DepTree,
) -> Result<bool, ChartError> {
    run_chart(mode, sys, ArcScores::Gold(gold), gold.len()).map(|r| r.accepted)
}

/// Finds a derivable tree maximizing the arc-score sum. Spurious ambiguity
/// is harmless under max-plus: every derivation of a tree carries the same
/// total.
pub fn viterbi_parse(
    sys: &TransitionSystem,
    scores: &ScoreMatrix,
    n: usize,
) -> Result<Parse, ChartError> {
    viterbi_parse_with(Mode::Auto, sys, scores, n)
}

pub fn viterbi_parse_with(
    mode: Mode,
    sys: &TransitionSystem,
    scores: &ScoreMatrix,
    n: usize,
) -> Result<Parse, ChartError> {
    check_n(n)?;
    let table = compile_rules(sys)?;
    let arc_scores = ArcScores::Matrix(scores);
    if pick_mode(mode, &table)? {
        let mut engine = CollapsedEngine::new(n, &table, &arc_scores);
        engine.close();
        let goal = engine.goal(n).ok_or(ChartError::NoParse)?;
        let tree = DepTree::from_arcs(n, &engine.extract_arcs(goal))
            .expect("goal backpointers yield one arc per token");
        Ok(Parse {
            tree,
            score: engine.score(goal),
        })
    } else {
        let mut engine = GeneralEngine::new(n, &table, &arc_scores, JoinStrategy::Indexed);
        engine.close();
        let goal = engine.goal(n).ok_or(ChartError::NoParse)?;
        let tree = DepTree::from_arcs(n, &engine.extract_arcs(goal))
            .expect("goal backpointers yield one arc per token");
        Ok(Parse {
            tree,
            score: engine.score(goal),
        })
    }
}

/// Exact size and work counts for the full chart on `n` tokens (all arcs
/// admitted, score zero). See [`ChartMetrics`] for what is counted.
pub fn chart_metrics(sys: &TransitionSystem, n: usize) -> Result<ChartMetrics, ChartError> {
    check_n(n)?;
    let table = compile_rules(sys)?;
    let scores = ArcScores::Uniform;
    let mut engine = GeneralEngine::new(n, &table, &scores, JoinStrategy::DenseProbe);
    engine.close();
    Ok(ChartMetrics {
        items: engine.stored_count(),
        applications: engine.applications,
        collapsed_eligible: table.collapsed_eligible(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_oracle, reachable_trees};
    use crate::transition::TransitionSystem;
    use crate::tree::enumerate_trees;

    fn crossing_tree() -> DepTree {
        DepTree::new(vec![3, 4, 0, 3]).unwrap()
    }

    #[test]
    fn recognizes_the_crossing_tree_under_attardi2_only_with_degree2() {
        assert_eq!(
            recognize_gold(&TransitionSystem::attardi2(), &crossing_tree()),
            Ok(true)
        );
        assert_eq!(
            recognize_gold(&TransitionSystem::arc_standard(), &crossing_tree()),
            Ok(false)
        );
    }

    #[test]
    fn single_token_accepts_everywhere() {
        let t = DepTree::new(vec![0]).unwrap();
        for sys in TransitionSystem::standard_presets() {
            assert_eq!(recognize_gold(&sys, &t), Ok(true), "{}", sys.name());
        }
    }

    #[test]
    fn derived_item_counts_match_the_reference_closure() {
        // frozen from an independent closure implementation
        let expect: &[(&str, [u64; 4])] = &[
            ("arcstandard", [3, 8, 19, 40]),
            ("attardi2", [3, 8, 20, 46]),
            ("alldeg1", [3, 8, 20, 46]),
            ("all", [3, 8, 20, 46]),
            ("alls0s1", [3, 8, 19, 40]),
        ];
        for (name, counts) in expect {
            let sys = TransitionSystem::preset(name).unwrap();
            for (idx, &want) in counts.iter().enumerate() {
                let run = run_chart(Mode::General, &sys, ArcScores::Uniform, idx + 1).unwrap();
                assert_eq!(run.items, want, "{} n={}", name, idx + 1);
            }
        }
    }

    #[test]
    fn stored_signatures_match_the_reference_closure() {
        let all = run_chart(
            Mode::General,
            &TransitionSystem::all(),
            ArcScores::Uniform,
            4,
        )
        .unwrap();
        assert_eq!(all.stored, 527);
        let s = run_chart(
            Mode::General,
            &TransitionSystem::all_s0s1(),
            ArcScores::Uniform,
            4,
        )
        .unwrap();
        assert_eq!(s.stored, 265);
    }

    #[test]
    fn metrics_are_deterministic() {
        let a = chart_metrics(&TransitionSystem::all(), 6).unwrap();
        let b = chart_metrics(&TransitionSystem::all(), 6).unwrap();
        assert_eq!(a, b);
        assert!(!a.collapsed_eligible);
        assert!(
            chart_metrics(&TransitionSystem::all_s0s1(), 6)
                .unwrap()
                .collapsed_eligible
        );
    }

    #[test]
    fn collapsed_and_general_agree_on_recognition() {
        for sys in [
            TransitionSystem::arc_standard(),
            TransitionSystem::all_s0s1(),
        ] {
            for n in 1..=4 {
                for tree in enumerate_trees(n) {
                    let g = recognize_gold_with(Mode::General, &sys, &tree).unwrap();
                    let c = recognize_gold_with(Mode::Collapsed, &sys, &tree).unwrap();
                    assert_eq!(g, c, "{} {}", sys.name(), tree);
                }
            }
        }
    }

    #[test]
    fn collapsed_mode_selection_is_structural() {
        let run = |sys: &TransitionSystem| {
            run_chart(Mode::Auto, sys, ArcScores::Uniform, 3)
                .unwrap()
                .collapsed_mode
        };
        assert!(run(&TransitionSystem::all_s0s1()));
        assert!(run(&TransitionSystem::arc_standard()));
        assert!(!run(&TransitionSystem::attardi2()));
        assert!(!run(&TransitionSystem::all()));
        // requesting collapsed for an ineligible system is an error
        assert_eq!(
            recognize_gold_with(
                Mode::Collapsed,
                &TransitionSystem::attardi2(),
                &crossing_tree()
            ),
            Err(ChartError::CollapsedIneligible)
        );
    }

    #[test]
    fn recognition_agrees_with_the_exact_oracle() {
        for sys in TransitionSystem::standard_presets() {
            for n in 1..=4 {
                for tree in enumerate_trees(n) {
                    let chart = recognize_gold(&sys, &tree).unwrap();
                    let oracle = exact_oracle(&sys, &tree, 1_000_000).unwrap();
                    assert_eq!(chart, oracle, "{} {}", sys.name(), tree);
                }
            }
        }
    }

    #[test]
    fn viterbi_forced_optimum() {
        let mut m = ScoreMatrix::new(2);
        m.set(0, 1, 1.0).unwrap();
        m.set(1, 2, 1.0).unwrap();
        let parse = viterbi_parse(&TransitionSystem::arc_standard(), &m, 2).unwrap();
        assert_eq!(parse.tree, DepTree::new(vec![0, 1]).unwrap());
        assert_eq!(parse.score, 2.0);
    }

    #[test]
    fn viterbi_prefers_the_rewarded_crossing_tree() {
        let gold = crossing_tree();
        let mut m = ScoreMatrix::fill(4, 0.0);
        for arc in gold.arcs() {
            m.set(arc.head, arc.modifier, 1.0).unwrap();
        }
        let parse = viterbi_parse(&TransitionSystem::attardi2(), &m, 4).unwrap();
        assert_eq!(parse.tree, gold);
        assert_eq!(parse.score, 4.0);
        // arc-standard cannot reach it and must settle for less
        let fallback = viterbi_parse(&TransitionSystem::arc_standard(), &m, 4).unwrap();
        assert!(fallback.score < 4.0);
        assert!(!fallback.tree.is_nonprojective());
    }

    #[test]
    fn viterbi_no_parse_when_everything_is_disallowed() {
        let m = ScoreMatrix::new(2); // all -inf
        assert_eq!(
            viterbi_parse(&TransitionSystem::all(), &m, 2).unwrap_err(),
            ChartError::NoParse
        );
    }

    #[test]
    fn viterbi_matches_brute_force_on_small_sentences() {
        let sys = TransitionSystem::attardi2();
        for n in 1..=3 {
            let reach = reachable_trees(&sys, n).unwrap();
            let mut m = ScoreMatrix::new(n);
            for h in 0..=n {
                for md in 1..=n {
                    if h != md {
                        // deterministic, irregular integer scores
                        let s = ((h * 7 + md * 13) % 11) as f64 - 5.0;
                        m.set(h, md, s).unwrap();
                    }
                }
            }
            let best = reach
                .iter()
                .map(|t| t.arcs().map(|a| m.get(a.head, a.modifier)).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max);
            let parse = viterbi_parse(&sys, &m, n).unwrap();
            assert_eq!(parse.score, best, "n={}", n);
            assert!(reach.contains(&parse.tree));
            let total: f64 = parse.tree.arcs().map(|a| m.get(a.head, a.modifier)).sum();
            assert_eq!(total, parse.score);
        }
    }

    #[test]
    fn dense_probe_and_indexed_strategies_derive_the_same_chart() {
        for sys in [TransitionSystem::all(), TransitionSystem::attardi2()] {
            for n in 1..=4 {
                let table = compile_rules(&sys).unwrap();
                let scores = ArcScores::Uniform;
                let mut indexed = GeneralEngine::new(n, &table, &scores, JoinStrategy::Indexed);
                indexed.close();
                let mut dense = GeneralEngine::new(n, &table, &scores, JoinStrategy::DenseProbe);
                dense.close();
                assert_eq!(
                    indexed.item_count(),
                    dense.item_count(),
                    "{} n={}",
                    sys.name(),
                    n
                );
                assert_eq!(indexed.stored_count(), dense.stored_count());
                for item in indexed.items() {
                    assert!(dense.contains(item), "missing {}", item);
                }
            }
        }
    }
}
