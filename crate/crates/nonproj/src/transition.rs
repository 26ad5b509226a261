//! Shift/reduce transition systems over a stack and a buffer.
//!
//! A configuration is `(stack, buffer, arcs)`. The buffer always remains a
//! contiguous suffix of the input `0..=n`, so it is represented by its start
//! index alone. A reduce `re(h, m)` names its head and modifier by window
//! slots — stack positions `s0, s1, s2, ...` counted from the top, or the
//! next buffer token `b0` — creates the arc and pops the modifier from the
//! stack. The modifier always comes from the stack.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tree::{Arc, DepTree};

/// A window position: `s_k` counts from the top of the stack, `b0` is the
/// next buffer token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Stack(u8),
    Buffer,
}

impl Slot {
    pub const S0: Slot = Slot::Stack(0);
    pub const S1: Slot = Slot::Stack(1);
    pub const S2: Slot = Slot::Stack(2);
    pub const B0: Slot = Slot::Buffer;

    /// Window position index: `s_k` has index `k`, `b0` sits at `-1`,
    /// adjacent to `s0`.
    pub fn window_index(self) -> i32 {
        match self {
            Slot::Stack(k) => k as i32,
            Slot::Buffer => -1,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Stack(k) => write!(f, "s{}", k),
            Slot::Buffer => write!(f, "b0"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransitionError {
    #[error("a sentence must contain at least one token")]
    InvalidSentence,
    #[error("the modifier of a reduce must be a stack slot, got {0}")]
    BufferModifier(Slot),
    #[error("head and modifier slots coincide ({0})")]
    EqualSlots(Slot),
    #[error("shift on an empty buffer")]
    EmptyBuffer,
    #[error("slot {0} does not resolve in this configuration")]
    UnresolvedSlot(Slot),
    #[error("the root node cannot be reduced")]
    RootReduction,
}

/// A reduce transition `re(head, modifier)`: creates the arc and pops the
/// modifier from the stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReduceTransition {
    head: Slot,
    modifier: Slot,
}

impl ReduceTransition {
    pub fn new(head: Slot, modifier: Slot) -> Result<Self, TransitionError> {
        if matches!(modifier, Slot::Buffer) {
            return Err(TransitionError::BufferModifier(modifier));
        }
        if head == modifier {
            return Err(TransitionError::EqualSlots(head));
        }
        Ok(ReduceTransition { head, modifier })
    }

    pub fn head(&self) -> Slot {
        self.head
    }

    pub fn modifier(&self) -> Slot {
        self.modifier
    }

    /// Window distance between head and modifier.
    pub fn degree(&self) -> usize {
        (self.head.window_index() - self.modifier.window_index()).unsigned_abs() as usize
    }

    /// The nine reduce transitions expressible over the `{s0, s1, s2, b0}`
    /// window with a stack modifier, in canonical order.
    pub fn universe() -> [ReduceTransition; 9] {
        [
            re(Slot::S0, Slot::S1),
            re(Slot::S1, Slot::S0),
            re(Slot::S0, Slot::S2),
            re(Slot::S2, Slot::S0),
            re(Slot::S1, Slot::S2),
            re(Slot::S2, Slot::S1),
            re(Slot::B0, Slot::S0),
            re(Slot::B0, Slot::S1),
            re(Slot::B0, Slot::S2),
        ]
    }

    /// True iff both slots fall inside the `{s0, s1, s2, b0}` window, i.e.
    /// the transition is one of [`ReduceTransition::universe`].
    pub fn in_universe(&self) -> bool {
        let ok = |s: Slot| match s {
            Slot::Stack(k) => k <= 2,
            Slot::Buffer => true,
        };
        ok(self.head) && ok(self.modifier)
    }
}

/// Infallible constructor for statically known slot pairs.
fn re(head: Slot, modifier: Slot) -> ReduceTransition {
    ReduceTransition::new(head, modifier).expect("valid slot pair")
}

impl fmt::Display for ReduceTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "re({},{})", self.head, self.modifier)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transition {
    Shift,
    Reduce(ReduceTransition),
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transition::Shift => write!(f, "sh"),
            Transition::Reduce(r) => write!(f, "{}", r),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown transition system `{0}`")]
pub struct UnknownPreset(pub String);

/// A named inventory of reduce transitions; shift is always implicitly
/// present. The listing order is the priority order used by the greedy
/// oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    name: String,
    reduces: Vec<ReduceTransition>,
}

impl TransitionSystem {
    pub fn new(name: impl Into<String>, reduces: Vec<ReduceTransition>) -> Self {
        let mut seen = Vec::new();
        for r in &reduces {
            assert!(!seen.contains(r), "duplicate reduce {}", r);
            seen.push(*r);
        }
        TransitionSystem {
            name: name.into(),
            reduces,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn reduces(&self) -> &[ReduceTransition] {
        &self.reduces
    }

    pub fn max_degree(&self) -> usize {
        self.reduces.iter().map(|r| r.degree()).max().unwrap_or(0)
    }

    /// Projective baseline: `re(s0,s1)`, `re(s1,s0)`.
    pub fn arc_standard() -> Self {
        TransitionSystem::new(
            "arcstandard",
            vec![re(Slot::S0, Slot::S1), re(Slot::S1, Slot::S0)],
        )
    }

    /// The degree-2 system: arc-standard plus `re(s0,s2)`, `re(s2,s0)`.
    pub fn attardi2() -> Self {
        TransitionSystem::attardi(2)
    }

    /// Degree-`d` generalization: arc-standard plus `re(s0,s_k)`,
    /// `re(s_k,s0)` for `k = 2..=d`. Chartable only for `d <= 2`.
    pub fn attardi(d: u8) -> Self {
        assert!(d >= 1, "degree must be at least 1");
        let mut reduces = vec![re(Slot::S0, Slot::S1), re(Slot::S1, Slot::S0)];
        for k in 2..=d {
            reduces.push(re(Slot::S0, Slot::Stack(k)));
            reduces.push(re(Slot::Stack(k), Slot::S0));
        }
        let name = if d == 2 {
            "attardi2".to_string()
        } else {
            format!("attardi{}", d)
        };
        TransitionSystem::new(name, reduces)
    }

    /// attardi2 plus the remaining degree-1 transitions of the window:
    /// `re(s1,s2)`, `re(s2,s1)`, `re(b0,s0)`.
    pub fn all_deg1() -> Self {
        let mut reduces = TransitionSystem::attardi2().reduces;
        reduces.push(re(Slot::S1, Slot::S2));
        reduces.push(re(Slot::S2, Slot::S1));
        reduces.push(re(Slot::B0, Slot::S0));
        TransitionSystem::new("alldeg1", reduces)
    }

    /// All nine window transitions.
    pub fn all() -> Self {
        TransitionSystem::new("all", ReduceTransition::universe().to_vec())
    }

    /// All nine minus the transitions that reduce `s2`; every derivation
    /// then keeps the chart's two left indices equal, enabling the
    /// collapsed 4-index tabulation.
    pub fn all_s0s1() -> Self {
        let reduces = ReduceTransition::universe()
            .into_iter()
            .filter(|r| r.modifier() != Slot::S2)
            .collect();
        TransitionSystem::new("alls0s1", reduces)
    }

    /// Looks up a preset by name: `arcstandard`, `attardi2`, `alldeg1`,
    /// `all`, `alls0s1`, or `attardi<D>` for a degree-`D` system.
    pub fn preset(name: &str) -> Result<Self, UnknownPreset> {
        match name {
            "arcstandard" => Ok(TransitionSystem::arc_standard()),
            "attardi2" => Ok(TransitionSystem::attardi2()),
            "alldeg1" => Ok(TransitionSystem::all_deg1()),
            "all" => Ok(TransitionSystem::all()),
            "alls0s1" => Ok(TransitionSystem::all_s0s1()),
            _ => {
                if let Some(d) = name
                    .strip_prefix("attardi")
                    .and_then(|s| s.parse::<u8>().ok())
                {
                    if d >= 1 {
                        return Ok(TransitionSystem::attardi(d));
                    }
                }
                Err(UnknownPreset(name.to_string()))
            }
        }
    }

    /// The five chartable presets, in the order reports list them.
    pub fn standard_presets() -> Vec<TransitionSystem> {
        vec![
            TransitionSystem::arc_standard(),
            TransitionSystem::attardi2(),
            TransitionSystem::all_deg1(),
            TransitionSystem::all(),
            TransitionSystem::all_s0s1(),
        ]
    }
}

impl FromStr for TransitionSystem {
    type Err = UnknownPreset;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TransitionSystem::preset(s)
    }
}

/// Parser state: stack (bottom to top), the start of the buffer suffix, and
/// the arcs resolved so far. Values are immutable; transitions return new
/// configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    n: usize,
    stack: Vec<usize>,
    buffer_start: usize,
    arcs: Vec<Arc>,
}

impl Configuration {
    /// `([], [0, 1, ..., n], {})`.
    pub fn initial(n: usize) -> Result<Self, TransitionError> {
        if n < 1 {
            return Err(TransitionError::InvalidSentence);
        }
        Ok(Configuration {
            n,
            stack: Vec::new(),
            buffer_start: 0,
            arcs: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stack(&self) -> &[usize] {
        &self.stack
    }

    pub fn buffer_start(&self) -> usize {
        self.buffer_start
    }

    pub fn buffer_is_empty(&self) -> bool {
        self.buffer_start > self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Empty buffer and a stack holding only the root.
    pub fn is_terminal(&self) -> bool {
        self.buffer_is_empty() && self.stack == [0]
    }

    /// The node a slot denotes here, if any.
    pub fn resolve(&self, slot: Slot) -> Option<usize> {
        match slot {
            Slot::Stack(k) => {
                let depth = self.stack.len();
                if (k as usize) < depth {
                    Some(self.stack[depth - 1 - k as usize])
                } else {
                    None
                }
            }
            Slot::Buffer => {
                if self.buffer_is_empty() {
                    None
                } else {
                    Some(self.buffer_start)
                }
            }
        }
    }

    /// Moves the first buffer item onto the stack.
    pub fn shift(&self) -> Result<Self, TransitionError> {
        if self.buffer_is_empty() {
            return Err(TransitionError::EmptyBuffer);
        }
        let mut next = self.clone();
        next.stack.push(self.buffer_start);
        next.buffer_start += 1;
        Ok(next)
    }

    /// Creates the arc named by `t` and pops the modifier from the stack.
    /// The buffer is untouched.
    pub fn reduce(&self, t: ReduceTransition) -> Result<Self, TransitionError> {
        let head = self
            .resolve(t.head())
            .ok_or(TransitionError::UnresolvedSlot(t.head()))?;
        let modifier = self
            .resolve(t.modifier())
            .ok_or(TransitionError::UnresolvedSlot(t.modifier()))?;
        if modifier == 0 {
            return Err(TransitionError::RootReduction);
        }
        let mut next = self.clone();
        let Slot::Stack(k) = t.modifier() else {
            unreachable!("modifier is a stack slot")
        };
        let depth = next.stack.len();
        next.stack.remove(depth - 1 - k as usize);
        next.arcs.push(Arc::new(head, modifier));
        Ok(next)
    }

    pub fn apply(&self, t: Transition) -> Result<Self, TransitionError> {
        match t {
            Transition::Shift => self.shift(),
            Transition::Reduce(r) => self.reduce(r),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("step {index} ({transition}): {source}")]
    Inapplicable {
        index: usize,
        transition: String,
        source: TransitionError,
    },
    #[error("sequence ends in a non-terminal configuration")]
    IncompleteDerivation,
    #[error(transparent)]
    InvalidSentence(#[from] TransitionError),
}

/// Replays a transition sequence from the initial configuration for `n`
/// tokens. Succeeds iff every step applies and the final configuration is
/// terminal; the resulting arcs then form a tree (one arc per token).
pub fn run_sequence(n: usize, seq: &[Transition]) -> Result<DepTree, SequenceError> {
    let mut config = Configuration::initial(n)?;
    for (index, &t) in seq.iter().enumerate() {
        config = config
            .apply(t)
            .map_err(|source| SequenceError::Inapplicable {
                index,
                transition: t.to_string(),
                source,
            })?;
    }
    if !config.is_terminal() {
        return Err(SequenceError::IncompleteDerivation);
    }
    DepTree::from_arcs(n, config.arcs()).map_err(|_| SequenceError::IncompleteDerivation)
}
