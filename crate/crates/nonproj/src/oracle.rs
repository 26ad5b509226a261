//! Oracles: can a given transition system derive a given gold tree?
//!
//! Three flavors with increasing cost and exactness:
//! - [`greedy_oracle`] — deterministic linear scan, may miss derivable trees;
//! - [`exact_oracle`] — memoized search over gold-consistent derivations;
//! - [`reachable_trees`] — exhaustive enumeration of every derivable tree,
//!   for small `n` only.

use std::collections::HashSet;

use thiserror::Error;

use crate::transition::{Configuration, ReduceTransition, Transition, TransitionSystem};
use crate::tree::DepTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("state budget of {budget} exceeded after {visited} states")]
    BudgetExceeded { budget: usize, visited: usize },
    #[error("exhaustive enumeration is limited to {max} tokens, got {n}")]
    SentenceTooLong { n: usize, max: usize },
}

/// Maximum sentence length accepted by [`reachable_trees`].
pub const REACHABLE_MAX_TOKENS: usize = 5;

/// A reduce is *ready* when its resolved pair is a gold arc and every gold
/// dependent of the modifier is already attached. Reducing earlier would
/// orphan a dependent forever, so readiness never prunes a completion.
fn ready_reduce(
    config: &Configuration,
    t: ReduceTransition,
    gold: &DepTree,
    children: &[Vec<usize>],
    attached: &[bool],
) -> bool {
    let (Some(head), Some(modifier)) = (config.resolve(t.head()), config.resolve(t.modifier()))
    else {
        return false;
    };
    if modifier == 0 || gold.head_of(modifier) != head {
        return false;
    }
    children[modifier].iter().all(|&c| attached[c])
}

/// Deterministic static oracle: at each step applies the first ready reduce
/// in the system's priority order, otherwise shifts; fails if stuck. On
/// success the returned sequence replays to exactly `gold`.
pub fn greedy_oracle(sys: &TransitionSystem, gold: &DepTree) -> Option<Vec<Transition>> {
    let n = gold.len();
    let children: Vec<Vec<usize>> = (0..=n).map(|h| gold.children(h)).collect();
    let mut attached = vec![false; n + 1];
    let mut config = Configuration::initial(n).ok()?;
    let mut seq = Vec::with_capacity(2 * n + 1);
    loop {
        if config.is_terminal() {
            return Some(seq);
        }
        let ready = sys
            .reduces()
            .iter()
            .copied()
            .find(|&t| ready_reduce(&config, t, gold, &children, &attached));
        if let Some(t) = ready {
            let modifier = config.resolve(t.modifier()).expect("ready reduce resolves");
            config = config.reduce(t).expect("ready reduce applies");
            attached[modifier] = true;
            seq.push(Transition::Reduce(t));
        } else if !config.buffer_is_empty() {
            config = config.shift().expect("buffer non-empty");
            seq.push(Transition::Shift);
        } else {
            return None;
        }
    }
}

/// Exact derivability of `gold` under `sys`, by memoized search over
/// gold-consistent sequences. Only ready reduces and shift are expanded;
/// states are memoized on `(stack, buffer_start)` — that pair determines
/// the gold-consistent arc set, because a node leaves stack ∪ buffer only
/// when reduced, and gold fixes its arc.
///
/// Returns `Err(BudgetExceeded)` once more than `budget` states have been
/// visited, which is distinguishable from a definite `false`.
pub fn exact_oracle(
    sys: &TransitionSystem,
    gold: &DepTree,
    budget: usize,
) -> Result<bool, OracleError> {
    let n = gold.len();
    let children: Vec<Vec<usize>> = (0..=n).map(|h| gold.children(h)).collect();
    let Ok(initial) = Configuration::initial(n) else {
        return Ok(false);
    };
    let mut visited: HashSet<(Vec<usize>, usize)> = HashSet::new();
    let mut stack = vec![initial];
    while let Some(config) = stack.pop() {
        if config.is_terminal() {
            return Ok(true);
        }
        if !visited.insert((config.stack().to_vec(), config.buffer_start())) {
            continue;
        }
        if visited.len() > budget {
            return Err(OracleError::BudgetExceeded {
                budget,
                visited: visited.len(),
            });
        }
        // attached = not on the stack and already consumed from the buffer
        let mut attached = vec![false; n + 1];
        attached[..config.buffer_start().min(n + 1)].fill(true);
        for &s in config.stack() {
            attached[s] = false;
        }
        if !config.buffer_is_empty() {
            stack.push(config.shift().expect("buffer non-empty"));
        }
        for &t in sys.reduces() {
            if ready_reduce(&config, t, gold, &children, &attached) {
                stack.push(config.reduce(t).expect("ready reduce applies"));
            }
        }
    }
    Ok(false)
}

/// Every tree over `n` tokens derivable by `sys`, by exhaustive search with
/// state deduplication. Enforced to `n <=` [`REACHABLE_MAX_TOKENS`].
pub fn reachable_trees(sys: &TransitionSystem, n: usize) -> Result<HashSet<DepTree>, OracleError> {
    if n > REACHABLE_MAX_TOKENS {
        return Err(OracleError::SentenceTooLong {
            n,
            max: REACHABLE_MAX_TOKENS,
        });
    }
    let mut trees = HashSet::new();
    let Ok(initial) = Configuration::initial(n) else {
        return Ok(trees);
    };
    let mut visited: HashSet<(Vec<usize>, usize, Vec<usize>)> = HashSet::new();
    let mut stack = vec![initial];
    while let Some(config) = stack.pop() {
        if config.is_terminal() {
            trees.insert(DepTree::from_arcs(n, config.arcs()).expect("terminal arcs form a tree"));
            continue;
        }
        let mut arcs: Vec<usize> = config
            .arcs()
            .iter()
            .map(|a| a.head * (n + 2) + a.modifier)
            .collect();
        arcs.sort_unstable();
        if !visited.insert((config.stack().to_vec(), config.buffer_start(), arcs)) {
            continue;
        }
        if let Ok(next) = config.shift() {
            stack.push(next);
        }
        for &t in sys.reduces() {
            if let Ok(next) = config.reduce(t) {
                stack.push(next);
            }
        }
    }
    Ok(trees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transition::{run_sequence, Slot};
    use crate::tree::{enumerate_projective_trees, enumerate_trees};

    fn crossing_tree() -> DepTree {
        DepTree::new(vec![3, 4, 0, 3]).unwrap()
    }

    #[test]
    fn greedy_finds_the_crossing_derivation() {
        let sys = TransitionSystem::attardi2();
        let gold = crossing_tree();
        let seq = greedy_oracle(&sys, &gold).expect("attardi2 derives the crossing tree");
        // the canonical 9-step derivation, frozen by hand-execution
        let expect = [
            Transition::Shift,
            Transition::Shift,
            Transition::Shift,
            Transition::Shift,
            Transition::Reduce(ReduceTransition::new(Slot::S0, Slot::S2).unwrap()),
            Transition::Shift,
            Transition::Reduce(ReduceTransition::new(Slot::S0, Slot::S2).unwrap()),
            Transition::Reduce(ReduceTransition::new(Slot::S1, Slot::S0).unwrap()),
            Transition::Reduce(ReduceTransition::new(Slot::S1, Slot::S0).unwrap()),
        ];
        assert_eq!(seq, expect);
        assert_eq!(run_sequence(4, &seq).unwrap(), gold);
    }

    #[test]
    fn arc_standard_misses_crossings() {
        let sys = TransitionSystem::arc_standard();
        let gold = crossing_tree();
        assert!(greedy_oracle(&sys, &gold).is_none());
        assert_eq!(exact_oracle(&sys, &gold, 100_000), Ok(false));
    }

    #[test]
    fn projective_chain_everywhere() {
        let gold = DepTree::new(vec![0, 1]).unwrap();
        for sys in TransitionSystem::standard_presets() {
            assert!(greedy_oracle(&sys, &gold).is_some(), "{}", sys.name());
            assert_eq!(
                exact_oracle(&sys, &gold, 10_000),
                Ok(true),
                "{}",
                sys.name()
            );
        }
    }

    #[test]
    fn exact_confirms_greedy_witness() {
        let sys = TransitionSystem::attardi2();
        assert_eq!(exact_oracle(&sys, &crossing_tree(), 50), Ok(true));
    }

    #[test]
    fn budget_is_reported() {
        let sys = TransitionSystem::all();
        let gold = DepTree::new(vec![3, 4, 0, 3]).unwrap();
        match exact_oracle(&sys, &gold, 1) {
            Err(OracleError::BudgetExceeded { budget: 1, .. }) => {}
            other => panic!("expected budget exhaustion, got {:?}", other),
        }
    }

    #[test]
    fn arc_standard_reaches_exactly_the_projective_trees() {
        for n in 1..=4 {
            let reach = reachable_trees(&TransitionSystem::arc_standard(), n).unwrap();
            assert_eq!(reach, enumerate_projective_trees(n), "n={}", n);
        }
    }

    #[test]
    fn reachable_sets_grow_with_the_inventory() {
        for n in 1..=4 {
            let attardi2 = reachable_trees(&TransitionSystem::attardi2(), n).unwrap();
            let alldeg1 = reachable_trees(&TransitionSystem::all_deg1(), n).unwrap();
            let all = reachable_trees(&TransitionSystem::all(), n).unwrap();
            let alls0s1 = reachable_trees(&TransitionSystem::all_s0s1(), n).unwrap();
            assert!(attardi2.is_subset(&alldeg1));
            assert!(alldeg1.is_subset(&all));
            assert!(alls0s1.is_subset(&all));
        }
    }

    #[test]
    fn reachable_rejects_large_n() {
        assert!(matches!(
            reachable_trees(&TransitionSystem::all(), 6),
            Err(OracleError::SentenceTooLong { n: 6, max: 5 })
        ));
    }

    #[test]
    fn greedy_success_implies_exact_and_membership() {
        for sys in TransitionSystem::standard_presets() {
            for n in 1..=4 {
                let reach = reachable_trees(&sys, n).unwrap();
                for tree in enumerate_trees(n) {
                    if let Some(seq) = greedy_oracle(&sys, &tree) {
                        assert_eq!(run_sequence(n, &seq).unwrap(), tree);
                        assert_eq!(exact_oracle(&sys, &tree, 1_000_000), Ok(true));
                        assert!(reach.contains(&tree));
                    }
                    let exact = exact_oracle(&sys, &tree, 1_000_000).unwrap();
                    assert_eq!(exact, reach.contains(&tree), "{} {}", sys.name(), tree);
                }
            }
        }
    }
}
