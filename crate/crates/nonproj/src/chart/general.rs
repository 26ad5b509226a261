//! The general 5-index engine with the fold/join factoring.
//!
//! Every two-premise rule is applied in two stages so that no loop nest
//! ever touches eight free indices:
//!
//! - *fold*: the premise owning the modifier is reduced over the modifier
//!   variable (with the head joining in, as an extra aggregate index when it
//!   lives on the other side), producing an aggregate keyed by at most six
//!   indices;
//! - *join*: the aggregate meets the other premise on the shared `(C, k)`
//!   pair, touching at most seven distinct indices.
//!
//! The agenda is a FIFO worklist with max-plus updates; items re-enter the
//! agenda when their score improves, and a tie keeps the first derivation.
//!
//! Two join strategies share this closure. `Indexed` looks partners up in
//! reverse indexes of processed items (the fast path for recognition and
//! parsing). `DenseProbe` sweeps the partner's full index ranges at
//! aggregate creation, probing the item table per candidate — the textbook
//! tabulation, used by the metrics instrumentation so that the reported
//! application counts measure the classic loop structure.

use std::collections::{HashMap, VecDeque};

use super::item::{Item, EPS, PAD};
use super::rules::{RuleRow, RuleTable, WindowVar};
use super::ArcScores;
use crate::tree::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum JoinStrategy {
    Indexed,
    DenseProbe,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Back {
    Axiom,
    Shift,
    Reduce { p1: u32, p2: u32, arc: (u16, u16) },
}

struct ItemData {
    score: f64,
    back: Back,
    in_agenda: bool,
    processed: bool,
}

struct AggEntry {
    key: [u16; 5],
    score: f64,
    src: u32,
    arc: (u16, u16),
}

/// Per-rule aggregate table plus its join index.
struct RuleState {
    agg: HashMap<[u16; 5], u32>,
    entries: Vec<AggEntry>,
    by_join: HashMap<[u16; 3], Vec<u32>>,
}

impl RuleState {
    fn new() -> Self {
        RuleState {
            agg: HashMap::new(),
            entries: Vec::new(),
            by_join: HashMap::new(),
        }
    }
}

pub(crate) struct GeneralEngine<'a> {
    n: u16,
    rows: &'a [RuleRow],
    scores: &'a ArcScores<'a>,
    strategy: JoinStrategy,
    items: HashMap<[u16; 5], u32>,
    keys: Vec<[u16; 5]>,
    data: Vec<ItemData>,
    agenda: VecDeque<u32>,
    rules: Vec<RuleState>,
    // reverse indexes over processed items
    idx_tail: HashMap<[u16; 2], Vec<u32>>, // (h3, j): premise1 for plain joins
    idx_h2tail: HashMap<[u16; 3], Vec<u32>>, // (h2, h3, j): premise1 with pinned B
    idx_p2_h2: HashMap<[u16; 3], Vec<u32>>, // (h1, i, h2): premise2 by D
    idx_p2_h3: HashMap<[u16; 3], Vec<u32>>, // (h1, i, h3): premise2 by E
    idx_p2_j: HashMap<[u16; 3], Vec<u32>>, // (h1, i, j): premise2 by j
    pub(crate) applications: u64,
    pub(crate) h1_h2_mismatches: u64,
}

impl<'a> GeneralEngine<'a> {
    pub(crate) fn new(
        n: usize,
        table: &'a RuleTable,
        scores: &'a ArcScores<'a>,
        strategy: JoinStrategy,
    ) -> Self {
        GeneralEngine {
            n: n as u16,
            rows: table.rows(),
            scores,
            strategy,
            items: HashMap::new(),
            keys: Vec::new(),
            data: Vec::new(),
            agenda: VecDeque::new(),
            rules: table.rows().iter().map(|_| RuleState::new()).collect(),
            idx_tail: HashMap::new(),
            idx_h2tail: HashMap::new(),
            idx_p2_h2: HashMap::new(),
            idx_p2_h3: HashMap::new(),
            idx_p2_j: HashMap::new(),
            applications: 0,
            h1_h2_mismatches: 0,
        }
    }

    fn arc_score(&self, head: u16, modifier: u16) -> Option<f64> {
        self.scores.score(head as usize, modifier as usize)
    }

    /// Inserts or improves an item. Equal scores keep the first derivation.
    fn derive(&mut self, key: [u16; 5], score: f64, back: Back) {
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
                if key[0] != key[2] {
                    self.h1_h2_mismatches += 1;
                }
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

    /// Conclusion of a plain or pinned-B join: premise1 `(A, iA, B, ...)`
    /// meets an aggregate carrying the surviving node and `j`.
    fn conclude_right(&mut self, p1: u32, rule: usize, entry: u32) {
        let k1 = self.keys[p1 as usize];
        let e = &self.rules[rule].entries[entry as usize];
        let (surv, j) = match self.rows[rule].head() {
            WindowVar::S2 => (e.key[3], e.key[4]), // key (B, C, k, S, j)
            _ => (e.key[2], e.key[3]),             // key (C, k, S, j, PAD)
        };
        let score = self.data[p1 as usize].score + e.score;
        let back = Back::Reduce {
            p1,
            p2: e.src,
            arc: e.arc,
        };
        self.derive([k1[0], k1[1], k1[2], surv, j], score, back);
    }

    /// Conclusion of a fold-left join: an aggregate carrying `(A, iA)` meets
    /// premise2 `(C, k, D, E, j)`; the conclusion keeps `(D, E, j)`.
    fn conclude_left(&mut self, rule: usize, entry: u32, p2: u32) {
        let k2 = self.keys[p2 as usize];
        let e = &self.rules[rule].entries[entry as usize];
        let score = e.score + self.data[p2 as usize].score;
        let back = Back::Reduce {
            p1: e.src,
            p2,
            arc: e.arc,
        };
        self.derive([e.key[0], e.key[1], k2[2], k2[3], k2[4]], score, back);
    }

    /// Creates or improves an aggregate entry, then joins it against the
    /// processed partners. New entries join via the configured strategy;
    /// improvements re-propagate through the reverse indexes.
    fn upsert_agg(
        &mut self,
        rule: usize,
        key: [u16; 5],
        join: [u16; 3],
        score: f64,
        src: u32,
        arc: (u16, u16),
    ) {
        let created = match self.rules[rule].agg.get(&key) {
            None => {
                let id = self.rules[rule].entries.len() as u32;
                self.rules[rule].entries.push(AggEntry {
                    key,
                    score,
                    src,
                    arc,
                });
                self.rules[rule].agg.insert(key, id);
                self.rules[rule].by_join.entry(join).or_default().push(id);
                Some(id)
            }
            Some(&id) => {
                let e = &mut self.rules[rule].entries[id as usize];
                if score > e.score {
                    e.score = score;
                    e.src = src;
                    e.arc = arc;
                    Some(id)
                } else {
                    None
                }
            }
        };
        let Some(entry) = created else { return };
        let folds_premise1 = self.rows[rule].modifier() == WindowVar::S2;
        match (self.strategy, folds_premise1) {
            (JoinStrategy::DenseProbe, false) => self.probe_premise1(rule, entry),
            (JoinStrategy::DenseProbe, true) => self.probe_premise2(rule, entry),
            (JoinStrategy::Indexed, false) => self.indexed_premise1(rule, entry),
            (JoinStrategy::Indexed, true) => self.indexed_premise2(rule, entry),
        }
    }

    fn indexed_premise1(&mut self, rule: usize, entry: u32) {
        let e = &self.rules[rule].entries[entry as usize];
        let partners: Vec<u32> = if self.rows[rule].head() == WindowVar::S2 {
            // key (B, C, k, S, j): premise1 must carry this B as its h2
            self.idx_h2tail
                .get(&[e.key[0], e.key[1], e.key[2]])
                .cloned()
                .unwrap_or_default()
        } else {
            // key (C, k, S, j, PAD)
            self.idx_tail
                .get(&[e.key[0], e.key[1]])
                .cloned()
                .unwrap_or_default()
        };
        for p1 in partners {
            self.applications += 1;
            self.conclude_right(p1, rule, entry);
        }
    }

    fn indexed_premise2(&mut self, rule: usize, entry: u32) {
        // key (A, iA, H, C, k): premise2 joins on (C, k) with H pinned to
        // the window node the rule's head reads.
        let e = &self.rules[rule].entries[entry as usize];
        let lookup = [e.key[3], e.key[4], e.key[2]];
        let partners: Vec<u32> = match self.rows[rule].head() {
            WindowVar::S1 => self.idx_p2_h2.get(&lookup).cloned().unwrap_or_default(),
            WindowVar::S0 => self.idx_p2_h3.get(&lookup).cloned().unwrap_or_default(),
            WindowVar::B0 => self.idx_p2_j.get(&lookup).cloned().unwrap_or_default(),
            WindowVar::S2 => unreachable!("head and modifier slots differ"),
        };
        for p2 in partners {
            self.applications += 1;
            self.conclude_left(rule, entry, p2);
        }
    }

    /// Textbook sweep for a premise1 partner `(A, iA, B, C, k)`: every probe
    /// of the candidate ranges counts as one application.
    fn probe_premise1(&mut self, rule: usize, entry: u32) {
        let e = &self.rules[rule].entries[entry as usize];
        if self.rows[rule].head() == WindowVar::S2 {
            // key (B, C, k, S, j): B is pinned, sweep (A, iA)
            let (b, c, k) = (e.key[0], e.key[1], e.key[2]);
            for i_a in 1..k {
                for a in 0..i_a {
                    self.applications += 1;
                    if let Some(&p1) = self.items.get(&[a, i_a, b, c, k]) {
                        if self.data[p1 as usize].processed {
                            self.conclude_right(p1, rule, entry);
                        }
                    }
                }
            }
        } else {
            // key (C, k, S, j, PAD): sweep (A, iA, B) plus the ε candidate
            let (c, k) = (e.key[0], e.key[1]);
            self.applications += 1;
            if let Some(&p1) = self.items.get(&[EPS, 0, EPS, c, k]) {
                if self.data[p1 as usize].processed {
                    self.conclude_right(p1, rule, entry);
                }
            }
            for i_a in 1..k {
                for a in 0..i_a {
                    for b in 0..k {
                        self.applications += 1;
                        if let Some(&p1) = self.items.get(&[a, i_a, b, c, k]) {
                            if self.data[p1 as usize].processed {
                                self.conclude_right(p1, rule, entry);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Textbook sweep for a premise2 partner `(C, k, D, E, j)` with one
    /// window variable pinned by the aggregate's head parameter.
    fn probe_premise2(&mut self, rule: usize, entry: u32) {
        let e = &self.rules[rule].entries[entry as usize];
        let (c, k, h) = (e.key[3], e.key[4], e.key[2]);
        let n = self.n;
        match self.rows[rule].head() {
            WindowVar::S1 => {
                // D = h: sweep (E, j)
                for e2 in 0..=n {
                    for j in k + 1..=n + 1 {
                        self.applications += 1;
                        if let Some(&p2) = self.items.get(&[c, k, h, e2, j]) {
                            if self.data[p2 as usize].processed {
                                self.conclude_left(rule, entry, p2);
                            }
                        }
                    }
                }
            }
            WindowVar::S0 => {
                // E = h: sweep (D, j)
                for d in 0..=n {
                    for j in k + 1..=n + 1 {
                        self.applications += 1;
                        if let Some(&p2) = self.items.get(&[c, k, d, h, j]) {
                            if self.data[p2 as usize].processed {
                                self.conclude_left(rule, entry, p2);
                            }
                        }
                    }
                }
            }
            WindowVar::B0 => {
                // j = h: sweep (D, E)
                for d in 0..=n {
                    for e2 in 0..=n {
                        self.applications += 1;
                        if let Some(&p2) = self.items.get(&[c, k, d, e2, h]) {
                            if self.data[p2 as usize].processed {
                                self.conclude_left(rule, entry, p2);
                            }
                        }
                    }
                }
            }
            WindowVar::S2 => unreachable!("head and modifier slots differ"),
        }
    }

    /// Folds the popped item as premise2 `(C, k, D, E, j)` into the
    /// aggregates of every rule whose modifier it owns.
    fn fold_as_premise2(&mut self, id: u32) {
        let key = self.keys[id as usize];
        let (c, k, d, e, j) = (key[0], key[1], key[2], key[3], key[4]);
        let score = self.data[id as usize].score;
        for rule in 0..self.rows.len() {
            let row = self.rows[rule];
            let (modifier, survivor) = match row.modifier() {
                WindowVar::S1 => (d, e),
                WindowVar::S0 => (e, d),
                _ => continue, // premise1 owns the modifier
            };
            match row.head() {
                WindowVar::S2 => {
                    // head B lives on the other premise: fold parameter
                    for b in 0..=self.n {
                        self.applications += 1;
                        if modifier == 0 {
                            continue;
                        }
                        if let Some(lambda) = self.arc_score(b, modifier) {
                            self.upsert_agg(
                                rule,
                                [b, c, k, survivor, j],
                                [b, c, k],
                                score + lambda,
                                id,
                                (b, modifier),
                            );
                        }
                    }
                }
                head => {
                    self.applications += 1;
                    if modifier == 0 {
                        continue;
                    }
                    let head_node = match head {
                        WindowVar::S0 => e,
                        WindowVar::S1 => d,
                        WindowVar::B0 => {
                            if j > self.n {
                                continue; // b0 does not exist at the goal column
                            }
                            j
                        }
                        WindowVar::S2 => unreachable!(),
                    };
                    if let Some(lambda) = self.arc_score(head_node, modifier) {
                        self.upsert_agg(
                            rule,
                            [c, k, survivor, j, PAD],
                            [c, k, PAD],
                            score + lambda,
                            id,
                            (head_node, modifier),
                        );
                    }
                }
            }
        }
    }

    /// Folds the popped item as premise1 `(A, iA, B, C, k)` for the rules
    /// that eliminate `B`; the head is always a fold parameter there.
    fn fold_as_premise1(&mut self, id: u32) {
        let key = self.keys[id as usize];
        let (a, i_a, b, c, k) = (key[0], key[1], key[2], key[3], key[4]);
        if b == EPS || b == 0 {
            return; // ε cannot be reduced, nor can the root
        }
        let score = self.data[id as usize].score;
        for rule in 0..self.rows.len() {
            if self.rows[rule].modifier() != WindowVar::S2 {
                continue;
            }
            for h in 0..=self.n {
                self.applications += 1;
                if let Some(lambda) = self.arc_score(h, b) {
                    self.upsert_agg(
                        rule,
                        [a, i_a, h, c, k],
                        [h, c, k],
                        score + lambda,
                        id,
                        (h, b),
                    );
                }
            }
        }
    }

    /// Late-arrival joins: the popped item meets aggregates that were
    /// created before it was processed.
    fn join_existing(&mut self, id: u32) {
        let key = self.keys[id as usize];
        // premise1 role: (A, iA, B, C, k) = key
        for rule in 0..self.rows.len() {
            let row = self.rows[rule];
            if row.modifier() == WindowVar::S2 {
                // premise2 role instead: aggregates keyed (A, iA, H, C, k)
                if key[0] == EPS {
                    continue;
                }
                let h = match row.head() {
                    WindowVar::S1 => key[2],
                    WindowVar::S0 => key[3],
                    WindowVar::B0 => {
                        if key[4] > self.n {
                            continue;
                        }
                        key[4]
                    }
                    WindowVar::S2 => unreachable!(),
                };
                let entries = self.rules[rule]
                    .by_join
                    .get(&[h, key[0], key[1]])
                    .cloned()
                    .unwrap_or_default();
                for entry in entries {
                    self.applications += 1;
                    self.conclude_left(rule, entry, id);
                }
            } else if row.head() == WindowVar::S2 {
                if key[2] == EPS {
                    continue; // a pinned-B join needs a real B
                }
                let entries = self.rules[rule]
                    .by_join
                    .get(&[key[2], key[3], key[4]])
                    .cloned()
                    .unwrap_or_default();
                for entry in entries {
                    self.applications += 1;
                    self.conclude_right(id, rule, entry);
                }
            } else {
                let entries = self.rules[rule]
                    .by_join
                    .get(&[key[3], key[4], PAD])
                    .cloned()
                    .unwrap_or_default();
                for entry in entries {
                    self.applications += 1;
                    self.conclude_right(id, rule, entry);
                }
            }
        }
    }

    fn register(&mut self, id: u32) {
        let key = self.keys[id as usize];
        self.idx_tail.entry([key[3], key[4]]).or_default().push(id);
        if key[2] != EPS {
            self.idx_h2tail
                .entry([key[2], key[3], key[4]])
                .or_default()
                .push(id);
        }
        if key[0] != EPS {
            self.idx_p2_h2
                .entry([key[0], key[1], key[2]])
                .or_default()
                .push(id);
            self.idx_p2_h3
                .entry([key[0], key[1], key[3]])
                .or_default()
                .push(id);
            self.idx_p2_j
                .entry([key[0], key[1], key[4]])
                .or_default()
                .push(id);
        }
    }

    /// Runs the closure from the axiom to the fixpoint.
    pub(crate) fn close(&mut self) {
        self.derive(Item::axiom().pack(), 0.0, Back::Axiom);
        while let Some(id) = self.agenda.pop_front() {
            self.data[id as usize].in_agenda = false;
            let key = self.keys[id as usize];
            // shift: one evaluation per pop
            self.applications += 1;
            if key[4] <= self.n {
                self.derive(
                    [key[3], key[4], key[3], key[4], key[4] + 1],
                    0.0,
                    Back::Shift,
                );
            }
            if key[0] != EPS {
                self.fold_as_premise2(id);
            }
            self.fold_as_premise1(id);
            self.join_existing(id);
            if !self.data[id as usize].processed {
                self.data[id as usize].processed = true;
                self.register(id);
            }
        }
    }

    pub(crate) fn item_count(&self) -> u64 {
        self.keys.len() as u64
    }

    /// Items plus hook aggregates: everything the tabulation stores.
    pub(crate) fn stored_count(&self) -> u64 {
        self.keys.len() as u64
            + self
                .rules
                .iter()
                .map(|r| r.entries.len() as u64)
                .sum::<u64>()
    }

    pub(crate) fn goal(&self, n: usize) -> Option<u32> {
        self.items.get(&Item::goal(n).pack()).copied()
    }

    pub(crate) fn score(&self, id: u32) -> f64 {
        self.data[id as usize].score
    }

    /// Reads the arcs off the backpointers under `root`.
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

    #[cfg(test)]
    pub(crate) fn contains(&self, item: Item) -> bool {
        self.items.contains_key(&item.pack())
    }

    #[cfg(test)]
    pub(crate) fn items(&self) -> impl Iterator<Item = Item> + '_ {
        self.keys.iter().map(|&k| Item::unpack(k))
    }
}
