//! Compiled deduction rules.
//!
//! Every reduce over the `{s0, s1, s2, b0}` window becomes one two-premise
//! rule. With premises `[A, iA, B, C, k]` and `[C, k, D, E, j]`, the
//! concatenated computation exposes the window `s2 = B`, `s1 = D`, `s0 = E`,
//! `b0 = j`; the rule reads head and modifier off the window, deletes the
//! modifier, and the conclusion keeps `(A, iA)`, the two surviving window
//! nodes in order, and `j`.

use crate::transition::{ReduceTransition, Slot, TransitionSystem};

use super::ChartError;

/// A window position in the two-premise join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowVar {
    /// `s2` — the `B` index of the first premise.
    S2,
    /// `s1` — the `D` index of the second premise.
    S1,
    /// `s0` — the `E` index of the second premise.
    S0,
    /// `b0` — the buffer position `j` of the second premise.
    B0,
}

fn window_var(slot: Slot) -> Option<WindowVar> {
    match slot {
        Slot::Stack(0) => Some(WindowVar::S0),
        Slot::Stack(1) => Some(WindowVar::S1),
        Slot::Stack(2) => Some(WindowVar::S2),
        Slot::Buffer => Some(WindowVar::B0),
        Slot::Stack(_) => None,
    }
}

/// One compiled deduction rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleRow {
    transition: ReduceTransition,
    head: WindowVar,
    modifier: WindowVar,
}

impl RuleRow {
    pub fn transition(&self) -> ReduceTransition {
        self.transition
    }

    pub fn head(&self) -> WindowVar {
        self.head
    }

    /// The eliminated window variable; never `B0`.
    pub fn modifier(&self) -> WindowVar {
        self.modifier
    }

    /// The two window nodes the conclusion keeps, in stack order.
    pub fn conclusion_keeps(&self) -> (WindowVar, WindowVar) {
        match self.modifier {
            WindowVar::S2 => (WindowVar::S1, WindowVar::S0),
            WindowVar::S1 => (WindowVar::S2, WindowVar::S0),
            WindowVar::S0 => (WindowVar::S2, WindowVar::S1),
            WindowVar::B0 => unreachable!("modifier comes from the stack"),
        }
    }
}

/// The compiled rule set for one transition system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    rows: Vec<RuleRow>,
}

impl RuleTable {
    pub fn rows(&self) -> &[RuleRow] {
        &self.rows
    }

    /// True when no rule eliminates `s2`; every derivable item then has
    /// `h1 = h2` and the 4-index engine applies.
    pub fn collapsed_eligible(&self) -> bool {
        self.rows.iter().all(|r| r.modifier != WindowVar::S2)
    }
}

/// Compiles a transition system into deduction rules. Fails with
/// [`ChartError::UnsupportedTransition`] for any reduce outside the
/// `{s0, s1, s2, b0}` window (e.g. the degree-3 generalized systems).
pub fn compile_rules(sys: &TransitionSystem) -> Result<RuleTable, ChartError> {
    let mut rows = Vec::with_capacity(sys.reduces().len());
    for &t in sys.reduces() {
        let (Some(head), Some(modifier)) = (window_var(t.head()), window_var(t.modifier())) else {
            return Err(ChartError::UnsupportedTransition(t));
        };
        rows.push(RuleRow {
            transition: t,
            head,
            modifier,
        });
    }
    Ok(RuleTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attardi2_rows_never_eliminate_s2_heads_only() {
        let table = compile_rules(&TransitionSystem::attardi2()).unwrap();
        assert_eq!(table.rows().len(), 4);
        // re(s0,s2) eliminates B, so the degree-2 system is not collapsible
        assert!(!table.collapsed_eligible());
        assert_eq!(
            table
                .rows()
                .iter()
                .filter(|r| r.modifier() == WindowVar::S2)
                .count(),
            1
        );
    }

    #[test]
    fn alls0s1_conclusions_keep_the_left_context() {
        let table = compile_rules(&TransitionSystem::all_s0s1()).unwrap();
        assert_eq!(table.rows().len(), 6);
        assert!(table.collapsed_eligible());
        for row in table.rows() {
            // first three conclusion indices stay (A, iA, B): B survives
            let (first, _) = row.conclusion_keeps();
            assert_eq!(first, WindowVar::S2);
        }
    }

    #[test]
    fn full_table_matches_the_fixed_schema() {
        use WindowVar::*;
        let table = compile_rules(&TransitionSystem::all()).unwrap();
        let expect: Vec<(WindowVar, WindowVar, (WindowVar, WindowVar))> = vec![
            (S0, S1, (S2, S0)), // re(s0,s1): arc E->D, keeps (B, E)
            (S1, S0, (S2, S1)), // re(s1,s0): arc D->E, keeps (B, D)
            (S0, S2, (S1, S0)), // re(s0,s2): arc E->B, keeps (D, E)
            (S2, S0, (S2, S1)), // re(s2,s0): arc B->E, keeps (B, D)
            (S1, S2, (S1, S0)), // re(s1,s2): arc D->B, keeps (D, E)
            (S2, S1, (S2, S0)), // re(s2,s1): arc B->D, keeps (B, E)
            (B0, S0, (S2, S1)), // re(b0,s0): arc j->E, keeps (B, D)
            (B0, S1, (S2, S0)), // re(b0,s1): arc j->D, keeps (B, E)
            (B0, S2, (S1, S0)), // re(b0,s2): arc j->B, keeps (D, E)
        ];
        assert_eq!(table.rows().len(), expect.len());
        for (row, (head, modifier, keeps)) in table.rows().iter().zip(expect) {
            assert_eq!(row.head(), head, "{}", row.transition());
            assert_eq!(row.modifier(), modifier, "{}", row.transition());
            assert_eq!(row.conclusion_keeps(), keeps, "{}", row.transition());
        }
    }

    #[test]
    fn degree_three_generalizations_are_rejected() {
        let err = compile_rules(&TransitionSystem::attardi(3)).unwrap_err();
        assert!(matches!(err, ChartError::UnsupportedTransition(_)));
    }
}
