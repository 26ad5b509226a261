//! Reference machinery for the acceptance suite.
//!
//! The naive joiner here closes the same deduction system as the engines
//! under test, but joins the two premises directly on their shared `(C, k)`
//! pair with no fold stage — the straightforward 8-index tabulation. It is
//! deliberately independent of the production engines' code paths.

use std::collections::{HashMap, HashSet, VecDeque};

use nonproj::chart::{Item, RuleTable, WindowVar};
use nonproj::tree::DepTree;
use nonproj::ScoreMatrix;

/// Arc admission/weighting for the reference joiner.
pub enum RefScores<'a> {
    Gold(&'a DepTree),
    Matrix(&'a ScoreMatrix),
}

impl RefScores<'_> {
    fn score(&self, head: usize, modifier: usize) -> Option<f64> {
        match self {
            RefScores::Gold(t) => (t.head_of(modifier) == head).then_some(0.0),
            RefScores::Matrix(m) => {
                let s = m.get(head, modifier);
                s.is_finite().then_some(s)
            }
        }
    }
}

pub struct NaiveChart {
    scores: HashMap<Item, f64>,
    n: usize,
}

impl NaiveChart {
    pub fn accepted(&self) -> bool {
        self.scores.contains_key(&Item::goal(self.n))
    }

    pub fn goal_score(&self) -> Option<f64> {
        self.scores.get(&Item::goal(self.n)).copied()
    }
}

/// Closes the chart with direct premise-pair joins, max-plus to fixpoint.
pub fn naive_close(n: usize, table: &RuleTable, scores: &RefScores<'_>) -> NaiveChart {
    let mut chart: HashMap<Item, f64> = HashMap::new();
    let mut agenda: VecDeque<Item> = VecDeque::new();
    let mut queued: HashSet<Item> = HashSet::new();
    let mut processed: HashSet<Item> = HashSet::new();
    let mut by_tail: HashMap<(u16, u16), Vec<Item>> = HashMap::new();
    let mut by_head: HashMap<(u16, u16), Vec<Item>> = HashMap::new();

    let axiom = Item::axiom();
    chart.insert(axiom, 0.0);
    agenda.push_back(axiom);
    queued.insert(axiom);

    while let Some(x) = agenda.pop_front() {
        queued.remove(&x);
        let x_score = chart[&x];
        let mut derived: Vec<(Item, f64)> = Vec::new();

        if (x.j as usize) <= n {
            derived.push((
                Item {
                    h1: Some(x.h3),
                    i: x.j,
                    h2: Some(x.h3),
                    h3: x.j,
                    j: x.j + 1,
                },
                0.0,
            ));
        }
        // x as premise1 against processed premise2 partners
        if let Some(partners) = by_head.get(&(x.h3, x.j)) {
            for &p2 in partners {
                join(
                    table,
                    scores,
                    n,
                    (x, x_score),
                    (p2, chart[&p2]),
                    &mut derived,
                );
            }
        }
        // x as premise2 (needs a real left context) against processed premise1s
        if let Some(h1) = x.h1 {
            if let Some(partners) = by_tail.get(&(h1, x.i)) {
                for &p1 in partners {
                    join(
                        table,
                        scores,
                        n,
                        (p1, chart[&p1]),
                        (x, x_score),
                        &mut derived,
                    );
                }
            }
        }
        if processed.insert(x) {
            by_tail.entry((x.h3, x.j)).or_default().push(x);
            if let Some(h1) = x.h1 {
                by_head.entry((h1, x.i)).or_default().push(x);
            }
        }
        for (item, score) in derived {
            let better = match chart.get(&item) {
                None => true,
                Some(&old) => score > old,
            };
            if better {
                chart.insert(item, score);
                if queued.insert(item) {
                    agenda.push_back(item);
                }
            }
        }
    }
    NaiveChart { scores: chart, n }
}

fn join(
    table: &RuleTable,
    scores: &RefScores<'_>,
    n: usize,
    (p1, s1): (Item, f64),
    (p2, s2): (Item, f64),
    out: &mut Vec<(Item, f64)>,
) {
    assert_eq!((Some(p1.h3), p1.j), (p2.h1, p2.i), "premises share (C, k)");
    let b = p1.h2; // may be ε
    let d = p2.h2.expect("premise2 items always carry a real h2");
    let e = p2.h3;
    let j = p2.j;
    for row in table.rows() {
        let head = match row.head() {
            WindowVar::S2 => match b {
                Some(v) => v,
                None => continue,
            },
            WindowVar::S1 => d,
            WindowVar::S0 => e,
            WindowVar::B0 => {
                if (j as usize) > n {
                    continue;
                }
                j
            }
        };
        let modifier = match row.modifier() {
            WindowVar::S2 => match b {
                Some(v) => v,
                None => continue,
            },
            WindowVar::S1 => d,
            WindowVar::S0 => e,
            WindowVar::B0 => unreachable!("modifiers come from the stack"),
        };
        if modifier == 0 {
            continue;
        }
        let Some(lambda) = scores.score(head as usize, modifier as usize) else {
            continue;
        };
        let item = match row.modifier() {
            WindowVar::S2 => Item {
                h1: p1.h1,
                i: p1.i,
                h2: Some(d),
                h3: e,
                j,
            },
            WindowVar::S1 => Item {
                h1: p1.h1,
                i: p1.i,
                h2: b,
                h3: e,
                j,
            },
            WindowVar::S0 => Item {
                h1: p1.h1,
                i: p1.i,
                h2: b,
                h3: d,
                j,
            },
            WindowVar::B0 => unreachable!(),
        };
        out.push((item, s1 + s2 + lambda));
    }
}
