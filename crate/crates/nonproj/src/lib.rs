//! Non-projective transition-based dependency parsing with exact inference.
//!
//! This crate implements a family of shift/reduce dependency parsers whose
//! reduce transitions pick head and modifier from the window
//! `{s0, s1, s2, b0}`. Degree-2 and degree-3 members derive trees with
//! crossing arcs, and every member admits polynomial-time exact inference
//! through a deduction system over 5-index items, with a hook-trick engine
//! and a collapsed 4-index engine for systems that never reduce `s2`.
//!
//! The pieces:
//!
//! - [`tree`] — sentences, arcs, rooted dependency trees, crossing-arc test;
//! - [`transition`] — configurations, shift/reduce semantics, the system
//!   presets (`arcstandard`, `attardi2`, `alldeg1`, `all`, `alls0s1`,
//!   generalized `attardi<D>`), direct sequence execution;
//! - [`oracle`] — greedy static oracle, exact memoized oracle, exhaustive
//!   enumeration of reachable trees for small sentences;
//! - [`chart`] — gold-constrained recognition, arc-scored Viterbi parsing,
//!   and complexity instrumentation over both engines;
//! - [`treebank`] — CoNLL-U ingestion and corpus statistics;
//! - [`cli`] — the report-producing commands behind the `nonproj` binary.
//!
//! Each capability has a runnable demo under `examples/`.
//!
//! ```
//! use nonproj::chart::recognize_gold;
//! use nonproj::transition::TransitionSystem;
//! use nonproj::tree::DepTree;
//!
//! // arcs (3,1) and (4,2) cross: no projective system derives this tree
//! let gold = DepTree::new(vec![3, 4, 0, 3]).unwrap();
//! assert!(gold.is_nonprojective());
//! assert!(!recognize_gold(&TransitionSystem::arc_standard(), &gold).unwrap());
//! assert!(recognize_gold(&TransitionSystem::attardi2(), &gold).unwrap());
//! ```
//!
//! All values are immutable after construction and every operation is a
//! pure function, so corpus-scale work parallelizes per sentence with no
//! shared state.

pub mod chart;
pub mod cli;
pub mod oracle;
pub mod transition;
pub mod tree;
pub mod treebank;

pub use chart::{
    chart_metrics, compile_rules, recognize_gold, viterbi_parse, ChartError, ChartMetrics, Mode,
    Parse, RuleTable, ScoreMatrix,
};
pub use oracle::{exact_oracle, greedy_oracle, reachable_trees, OracleError};
pub use transition::{
    run_sequence, Configuration, ReduceTransition, SequenceError, Slot, Transition,
    TransitionError, TransitionSystem,
};
pub use tree::{Arc, DepTree, Sentence, TreeError};
