//! Chart items for the 5-index tabulation.

use std::fmt;

/// Node id inside the chart (`0..=n`).
pub type NodeId = u16;
/// Buffer position inside the chart (`0..=n+1`).
pub type BufferPos = u16;

/// Internal sentinel for an absent (`ε`) left context.
pub(crate) const EPS: u16 = u16::MAX;
/// Internal padding value for unused key components; never a valid node.
pub(crate) const PAD: u16 = u16::MAX - 1;

/// A 5-index item `[h1, i, h2, h3, j]`: the class of computations that
/// replace the rightmost stack item `h1` with `h2, h3` while advancing the
/// buffer from `i` to `j`. `h1` and `h2` are `None` (ε) only together, for
/// computations rising from the empty stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Item {
    pub h1: Option<NodeId>,
    pub i: BufferPos,
    pub h2: Option<NodeId>,
    pub h3: NodeId,
    pub j: BufferPos,
}

impl Item {
    pub(crate) fn pack(self) -> [u16; 5] {
        [
            self.h1.unwrap_or(EPS),
            self.i,
            self.h2.unwrap_or(EPS),
            self.h3,
            self.j,
        ]
    }

    #[cfg(test)]
    pub(crate) fn unpack(key: [u16; 5]) -> Self {
        Item {
            h1: (key[0] != EPS).then_some(key[0]),
            i: key[1],
            h2: (key[2] != EPS).then_some(key[2]),
            h3: key[3],
            j: key[4],
        }
    }

    /// The axiom `[ε, 0, ε, 0, 1]`: the mandatory first shift of the root.
    pub fn axiom() -> Self {
        Item {
            h1: None,
            i: 0,
            h2: None,
            h3: 0,
            j: 1,
        }
    }

    /// The goal for `n` tokens: `[ε, 0, ε, 0, n+1]` — root alone on the
    /// stack, buffer exhausted (the final ε buffer is encoded as `n+1`).
    pub fn goal(n: usize) -> Self {
        Item {
            h1: None,
            i: 0,
            h2: None,
            h3: 0,
            j: (n + 1) as BufferPos,
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps = |x: Option<NodeId>| x.map_or("eps".to_string(), |v| v.to_string());
        write!(
            f,
            "[{},{},{},{},{}]",
            eps(self.h1),
            self.i,
            eps(self.h2),
            self.h3,
            self.j
        )
    }
}
