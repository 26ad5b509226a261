//! The collapsed 4-index engine for systems that never reduce `s2`.
//!
//! When no rule eliminates `B`, every conclusion keeps the first premise's
//! first three indices and shift items repeat their left node, so every
//! derivable item satisfies `h1 = h2`. Items are stored as `(h1, i, h3, j)`
//! and the two premises join directly on the shared `(C, k)` pair — six
//! distinct indices per join, no fold stage needed.

use std::collections::{HashMap, VecDeque};

use super::general::Back;
use super::item::{Item, EPS};
use super::rules::{RuleRow, RuleTable, WindowVar};
use super::ArcScores;
use crate::tree::Arc;

struct ItemData {
    score: f64,
    back: Back,
    in_agenda: bool,
    processed: bool,
}

pub(crate) struct CollapsedEngine<'a> {
    n: u16,
    rows: &'a [RuleRow],
    scores: &'a ArcScores<'a>,
    items: HashMap<[u16; 4], u32>,
    keys: Vec<[u16; 4]>,
    data: Vec<ItemData>,
    agenda: VecDeque<u32>,
    idx_tail: HashMap<[u16; 2], Vec<u32>>, // (h3, j): premise1 candidates
    idx_head: HashMap<[u16; 2], Vec<u32>>, // (h1, i): premise2 candidates
    pub(crate) applications: u64,
}

fn pack(item: Item) -> [u16; 4] {
    debug_assert_eq!(item.h1, item.h2, "collapsed items have h1 = h2");
    [item.h1.unwrap_or(EPS), item.i, item.h3, item.j]
}

impl<'a> CollapsedEngine<'a> {
    pub(crate) fn new(n: usize, table: &'a RuleTable, scores: &'a ArcScores<'a>) -> Self {
        assert!(
            table.collapsed_eligible(),
            "system reduces s2; use the general engine"
        );
        CollapsedEngine {
            n: n as u16,
            rows: table.rows(),
            scores,
            items: HashMap::new(),
            keys: Vec::new(),
            data: Vec::new(),
            agenda: VecDeque::new(),
            idx_tail: HashMap::new(),
            idx_head: HashMap::new(),
            applications: 0,
        }
    }

    fn derive(&mut self, key: [u16; 4], score: f64, back: Back) {
        match self.items.get(&key) {
            None => {
                let id = self.keys.len() as u32;
                self.keys.push(key);
                self.data.push(ItemData {
                    score,
                    back,
                    in_agenda: true,
                    processed: false,
                });
                self.items.insert(key, id);
                self.agenda.push_back(id);
            }
            Some(&id) => {
                let d = &mut self.data[id as usize];
                if score > d.score {
                    d.score = score;
                    d.back = back;
                    if !d.in_agenda {
                        d.in_agenda = true;
                        self.agenda.push_back(id);
                    }
                }
            }
        }
    }

    /// Applies every rule to the pair premise1 `(A, iA, C, k)`,
    /// premise2 `(C, k, E, j)`; the window is `s2 = A`, `s1 = C`, `s0 = E`,
    /// `b0 = j`.
    fn join(&mut self, p1: u32, p2: u32) {
        let k1 = self.keys[p1 as usize];
        let k2 = self.keys[p2 as usize];
        debug_assert_eq!([k1[2], k1[3]], [k2[0], k2[1]], "premises share (C, k)");
        let (a, i_a) = (k1[0], k1[1]);
        let (c, e, j) = (k2[0], k2[2], k2[3]);
        let pair_score = self.data[p1 as usize].score + self.data[p2 as usize].score;
        for rule in 0..self.rows.len() {
            self.applications += 1;
            let row = self.rows[rule];
            let head = match row.head() {
                WindowVar::S2 => {
                    if a == EPS {
                        continue;
                    }
                    a
                }
                WindowVar::S1 => c,
                WindowVar::S0 => e,
                WindowVar::B0 => {
                    if j > self.n {
                        continue;
                    }
                    j
                }
            };
            let (modifier, survivor) = match row.modifier() {
                WindowVar::S1 => (c, e),
                WindowVar::S0 => (e, c),
                _ => unreachable!("collapsed systems never reduce s2"),
            };
            if modifier == 0 {
                continue;
            }
            let Some(lambda) = self.scores.score(head as usize, modifier as usize) else {
                continue;
            };
            self.derive(
                [a, i_a, survivor, j],
                pair_score + lambda,
                Back::Reduce {
                    p1,
                    p2,
                    arc: (head, modifier),
                },
            );
        }
    }

    pub(crate) fn close(&mut self) {
        self.derive(pack(Item::axiom()), 0.0, Back::Axiom);
        while let Some(id) = self.agenda.pop_front() {
            self.data[id as usize].in_agenda = false;
            let key = self.keys[id as usize];
            self.applications += 1;
            if key[3] <= self.n {
                // shift: the old top becomes the left context of the new item
                self.derive([key[2], key[3], key[3], key[3] + 1], 0.0, Back::Shift);
            }
            // premise1 role against processed premise2 partners
            let partners = self
                .idx_head
                .get(&[key[2], key[3]])
                .cloned()
                .unwrap_or_default();
            for p2 in partners {
                self.join(id, p2);
            }
            // premise2 role (needs a real left node) against processed premise1s
            if key[0] != EPS {
                let partners = self
                    .idx_tail
                    .get(&[key[0], key[1]])
                    .cloned()
                    .unwrap_or_default();
                for p1 in partners {
                    self.join(p1, id);
                }
            }
            if !self.data[id as usize].processed {
                self.data[id as usize].processed = true;
                self.idx_tail.entry([key[2], key[3]]).or_default().push(id);
                if key[0] != EPS {
                    self.idx_head.entry([key[0], key[1]]).or_default().push(id);
                }
            }
        }
    }

    pub(crate) fn item_count(&self) -> u64 {
        self.keys.len() as u64
    }

    pub(crate) fn goal(&self, n: usize) -> Option<u32> {
        self.items.get(&pack(Item::goal(n))).copied()
    }

    pub(crate) fn score(&self, id: u32) -> f64 {
        self.data[id as usize].score
    }

    pub(crate) fn extract_arcs(&self, root: u32) -> Vec<Arc> {
        let mut arcs = Vec::new();
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if let Back::Reduce { p1, p2, arc } = self.data[id as usize].back {
                arcs.push(Arc::new(arc.0 as usize, arc.1 as usize));
                stack.push(p1);
                stack.push(p2);
            }
        }
        arcs
    }
}
