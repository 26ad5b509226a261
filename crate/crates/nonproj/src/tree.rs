//! Sentences, dependency arcs and rooted dependency trees.
//!
//! Tokens are numbered `1..=n`; node `0` is the artificial root. A
//! [`DepTree`] assigns every token exactly one head and must reach `0`
//! acyclically, so it always describes a single tree rooted at `0`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// A length-`n` input sentence. Tokens `1..=n` are implicit; node `0` is the
/// artificial root that heads the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sentence {
    len: usize,
}

impl Sentence {
    pub fn new(len: usize) -> Result<Self, TreeError> {
        if len < 1 {
            return Err(TreeError::EmptySentence);
        }
        Ok(Sentence { len })
    }

    /// Number of tokens (excluding the artificial root).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // a sentence always has at least one token
    }
}

/// A dependency arc from `head` to `modifier`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub head: usize,
    pub modifier: usize,
}

impl Arc {
    pub fn new(head: usize, modifier: usize) -> Self {
        Arc { head, modifier }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.head, self.modifier)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a sentence must contain at least one token")]
    EmptySentence,
    #[error("token {modifier} has head {head}, outside 0..={len}")]
    HeadOutOfRange {
        modifier: usize,
        head: usize,
        len: usize,
    },
    #[error("token {node} does not reach the root (cycle)")]
    Cycle { node: usize },
}

/// A rooted dependency tree over tokens `1..=n`.
///
/// Stored as the total head function: `heads[m - 1]` is the head of token
/// `m`. Construction validates the single-rooted-tree invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DepTree {
    heads: Vec<usize>,
}

impl DepTree {
    /// Builds a tree from the head function, rejecting out-of-range heads
    /// and cycles (a self-loop is a cycle of length one).
    pub fn new(heads: Vec<usize>) -> Result<Self, TreeError> {
        let n = heads.len();
        if n == 0 {
            return Err(TreeError::EmptySentence);
        }
        for (idx, &h) in heads.iter().enumerate() {
            if h > n {
                return Err(TreeError::HeadOutOfRange {
                    modifier: idx + 1,
                    head: h,
                    len: n,
                });
            }
        }
        // Every node must reach 0 by following heads; walk with a step bound.
        for start in 1..=n {
            let mut node = start;
            let mut steps = 0;
            while node != 0 {
                node = heads[node - 1];
                steps += 1;
                if steps > n {
                    return Err(TreeError::Cycle { node: start });
                }
            }
        }
        Ok(DepTree { heads })
    }

    /// Builds the tree from `(head, modifier)` pairs. Each token `1..=n`
    /// must appear as a modifier exactly once.
    pub fn from_arcs(n: usize, arcs: &[Arc]) -> Result<Self, TreeError> {
        let mut heads = vec![usize::MAX; n];
        for arc in arcs {
            if arc.modifier == 0 || arc.modifier > n {
                return Err(TreeError::HeadOutOfRange {
                    modifier: arc.modifier,
                    head: arc.head,
                    len: n,
                });
            }
            heads[arc.modifier - 1] = arc.head;
        }
        if let Some(m) = heads.iter().position(|&h| h == usize::MAX) {
            return Err(TreeError::Cycle { node: m + 1 });
        }
        DepTree::new(heads)
    }

    /// Number of tokens.
    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Head of token `m` (`1..=n`).
    pub fn head_of(&self, m: usize) -> usize {
        self.heads[m - 1]
    }

    pub fn sentence(&self) -> Sentence {
        Sentence {
            len: self.heads.len(),
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.heads
            .iter()
            .enumerate()
            .map(|(idx, &h)| Arc::new(h, idx + 1))
    }

    /// Children of `node` in ascending order.
    pub fn children(&self, node: usize) -> Vec<usize> {
        (1..=self.len())
            .filter(|&m| self.head_of(m) == node)
            .collect()
    }

    /// True iff two arcs cross: spans `(a1,b1)`, `(a2,b2)` with
    /// `a1 < a2 < b1 < b2` for some arc pair.
    pub fn is_nonprojective(&self) -> bool {
        let spans: Vec<(usize, usize)> = self
            .arcs()
            .map(|a| (a.head.min(a.modifier), a.head.max(a.modifier)))
            .collect();
        for (x, &(a1, b1)) in spans.iter().enumerate() {
            for &(a2, b2) in &spans[x + 1..] {
                if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                    return true;
                }
            }
        }
        false
    }
}

impl fmt::Display for DepTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for m in 1..=self.len() {
            if m > 1 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", m, self.head_of(m))?;
        }
        write!(f, "}}")
    }
}

/// Every rooted tree on `n` tokens, by filtering all `(n+1)^n` head
/// functions. Intended for exhaustive small-`n` checks; guarded at `n <= 7`.
pub fn enumerate_trees(n: usize) -> Vec<DepTree> {
    assert!(
        (1..=7).contains(&n),
        "enumerate_trees is exhaustive; n must be in 1..=7"
    );
    let mut out = Vec::new();
    let mut heads = vec![0usize; n];
    loop {
        if let Ok(t) = DepTree::new(heads.clone()) {
            out.push(t);
        }
        // odometer over head assignments
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            if heads[pos] < n {
                heads[pos] += 1;
                break;
            }
            heads[pos] = 0;
            pos += 1;
        }
    }
}

/// The projective trees on `n` tokens (no crossing arcs).
pub fn enumerate_projective_trees(n: usize) -> HashSet<DepTree> {
    enumerate_trees(n)
        .into_iter()
        .filter(|t| !t.is_nonprojective())
        .collect()
}
