//! Maximum acyclic induced subgraph of the side-information graph.
//!
//! Exact branch and bound over messages in index order: include-first
//! branching, with candidates that would close a cycle filtered out at every
//! node. The first maximum set found is the lexicographically smallest one
//! (comparing sorted member lists), which keeps witnesses stable.

use serde::Serialize;

use crate::instance::Instance;
use crate::rational::Rational;
use crate::set::MessageSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaisResult {
    pub mais_size: usize,
    #[serde(serialize_with = "crate::report::one_based")]
    pub witness: MessageSet,
    pub bound: Rational,
}

/// Size of the largest acyclic message set; at least 1.
pub fn mais_size(inst: &Instance) -> usize {
    mais_bound(inst).mais_size
}

/// `1 / mais_size` with a maximum acyclic witness.
pub fn mais_bound(inst: &Instance) -> MaisResult {
    let witness = max_acyclic_subset(inst, inst.all(), None);
    let size = witness.len();
    MaisResult {
        mais_size: size,
        witness,
        bound: Rational::new(1, size as i64),
    }
}

/// Largest acyclic subset of `candidates`, stopping early once `cap` members
/// are reached.
pub fn max_acyclic_subset(inst: &Instance, candidates: MessageSet, cap: Option<usize>) -> MessageSet {
    let n = inst.n();
    // outs[x] = {y : x ∈ A_y}
    let mut outs = vec![0u64; n];
    for y in 0..n {
        for x in inst.side(y) {
            outs[x] |= 1u64 << y;
        }
    }
    let mut search = Search {
        outs,
        best: MessageSet::EMPTY,
        cap: cap.unwrap_or(usize::MAX),
    };
    search.dfs(MessageSet::EMPTY, candidates);
    search.best
}

struct Search {
    outs: Vec<u64>,
    best: MessageSet,
    cap: usize,
}

impl Search {
    /// Whether adding `v` to the acyclic set `set` closes a cycle through `v`.
    fn closes_cycle(&self, set: MessageSet, v: usize) -> bool {
        let scope = set.with(v).bits();
        let mut reach = self.outs[v] & scope;
        let mut frontier = reach;
        while frontier != 0 {
            if reach >> v & 1 == 1 {
                return true;
            }
            let mut next = 0u64;
            for x in MessageSet(frontier) {
                next |= self.outs[x];
            }
            next &= scope;
            frontier = next & !reach;
            reach |= next;
        }
        reach >> v & 1 == 1
    }

    fn done(&self) -> bool {
        self.best.len() >= self.cap
    }

    fn dfs(&mut self, set: MessageSet, remaining: MessageSet) {
        if set.len() >= self.cap {
            self.best = set;
            return;
        }
        let addable: MessageSet = remaining.iter().filter(|&v| !self.closes_cycle(set, v)).collect();
        let reachable = (set.len() + addable.len()).min(self.cap);
        if reachable <= self.best.len() {
            return;
        }
        let Some(v) = addable.first() else {
            self.best = set;
            return;
        };
        self.dfs(set.with(v), addable.without(v));
        if self.done() {
            return;
        }
        self.dfs(set, addable.without(v));
    }
}
