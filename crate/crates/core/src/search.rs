//! Chain search: shortest plain alignment chains, and best-bound searches over
//! singleton and disjoint weighted alignment chains within size limits.
//!
//! Both bound searches run one depth-first pass over simple spine paths whose
//! edges admit at least one floor, evaluating every prefix as a complete
//! chain. For a fixed spine the best singleton chain stacks the largest
//! acyclic subset of each edge's candidate floors; the best disjoint chain is
//! a dynamic program over blocks of consecutive edges, each block being a
//! basic edge or a crossing tower together with the basic edges it covers.
//!
//! Results are ordered by (bound, m, chain), so equal inputs always give the
//! same witness.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use crate::chain::{ratio, Chain, Floor, Tower, TowerKind};
use crate::instance::Instance;
use crate::mais::{mais_bound, max_acyclic_subset};
use crate::report::BoundReport;
use crate::set::MessageSet;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest number of spine edges.
    pub max_m: usize,
    /// Largest tower height.
    pub max_height: usize,
    /// Expanded search nodes before giving up on exhaustiveness.
    pub node_budget: u64,
}

impl SearchLimits {
    pub fn new(max_m: usize, max_height: usize) -> Self {
        SearchLimits {
            max_m,
            max_height,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }
}

/// `cand[a][b] = {k : a, b ∈ B_k}`, the messages that may sit on an edge.
fn candidates(inst: &Instance) -> Vec<Vec<MessageSet>> {
    let n = inst.n();
    let mut cand = vec![vec![MessageSet::EMPTY; n]; n];
    for k in 0..n {
        let b = inst.interfering(k);
        for x in b {
            for y in b {
                if x != y {
                    cand[x][y].insert(k);
                }
            }
        }
    }
    cand
}

fn terminal(inst: &Instance, first: usize, last: usize) -> bool {
    first != last && (inst.interferes(last, first) || inst.interferes(first, last))
}

/// A shortest plain alignment chain and its length `Δ`, or `None` when the
/// problem is not internally conflicted.
///
/// Among shortest chains the endpoints `(i(1), i(m+1))` are the
/// lexicographically smallest pair with `i(1) < i(m+1)`, the path is the
/// first one found by breadth-first search over ascending neighbours, and
/// each edge uses its smallest candidate floor.
pub fn min_alignment_chain(inst: &Instance) -> Option<(Chain, usize)> {
    let n = inst.n();
    let cand = candidates(inst);
    let mut best: Option<(usize, usize, usize, Vec<Option<usize>>)> = None;
    for u in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if dist[y] == usize::MAX && !cand[x][y].is_empty() {
                    dist[y] = dist[x] + 1;
                    parent[y] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        for (v, &d) in dist.iter().enumerate().skip(u + 1) {
            if d == usize::MAX || !terminal(inst, u, v) {
                continue;
            }
            if best.as_ref().is_none_or(|b| d < b.0) {
                best = Some((d, u, v, parent.clone()));
            }
        }
    }
    let (delta, u, v, parent) = best?;
    let mut spine = vec![v];
    while let Some(p) = parent[*spine.last().expect("nonempty")] {
        spine.push(p);
    }
    spine.reverse();
    debug_assert_eq!(spine[0], u);
    let floors = spine
        .windows(2)
        .map(|w| vec![cand[w[0]][w[1]].first().expect("edge has a floor")])
        .collect();
    let chain = Chain::singleton(spine, floors).expect("shortest path is a valid shape");
    Some((chain, delta))
}

/// The plain-mode report: the shortest alignment chain, ignoring limits.
pub fn search_plain(inst: &Instance) -> BoundReport {
    match min_alignment_chain(inst) {
        Some((chain, _)) => BoundReport {
            bound: Some(crate::chain::chain_ratio(&chain)),
            witness: Some(chain),
            exhaustive: true,
            nodes: 0,
        },
        None => BoundReport::none(true, 0),
    }
}

/// Best bound over singleton weighted alignment chains within `limits`.
pub fn search_singleton(inst: &Instance, limits: SearchLimits) -> BoundReport {
    let mut search = Searcher::new(inst, limits, Mode::Singleton);
    search.seed_all();
    search.run();
    search.report()
}

/// Best bound over disjoint weighted alignment chains within `limits`; never
/// worse than [`search_singleton`] at the same limits.
pub fn search_disjoint(inst: &Instance, limits: SearchLimits) -> BoundReport {
    let singleton = search_singleton(inst, limits);
    let mut search = Searcher::new(inst, limits, Mode::Disjoint);
    search.seed_all();
    if let Some(chain) = singleton.witness.clone() {
        search.offer(chain);
    }
    search.run();
    let mut report = search.report();
    report.exhaustive &= singleton.exhaustive;
    report.nodes += singleton.nodes;
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Singleton,
    Disjoint,
}

/// Best chain so far, with its bound `m / (1 + m + total)`.
struct Best {
    m: usize,
    total: usize,
    chain: Chain,
}

/// Compares `a_m / (1 + a_m + a_total)` with `b_m / (1 + b_m + b_total)`.
fn cmp_ratio(a_m: usize, a_total: usize, b_m: usize, b_total: usize) -> Ordering {
    let lhs = a_m as u128 * (1 + b_m + b_total) as u128;
    let rhs = b_m as u128 * (1 + a_m + a_total) as u128;
    lhs.cmp(&rhs)
}

struct Searcher<'a> {
    inst: &'a Instance,
    limits: SearchLimits,
    mode: Mode,
    cand: Vec<Vec<MessageSet>>,
    /// Basic-tower floors per edge, largest acyclic set in stacking order,
    /// capped at `max_height`.
    stacks: Vec<Vec<Vec<usize>>>,
    /// Upper bound on the height any added edge can contribute.
    step_bound: usize,
    crossing_memo: HashMap<(Vec<usize>, usize), Option<Vec<Floor>>>,
    best: Option<Best>,
    nodes: u64,
    exhausted_budget: bool,
}

impl<'a> Searcher<'a> {
    fn new(inst: &'a Instance, limits: SearchLimits, mode: Mode) -> Self {
        let n = inst.n();
        let cand = candidates(inst);
        let mut stacks = vec![vec![Vec::new(); n]; n];
        let mut max_stack = 0;
        for a in 0..n {
            for b in a + 1..n {
                if cand[a][b].is_empty() || limits.max_height == 0 {
                    continue;
                }
                let set = max_acyclic_subset(inst, cand[a][b], Some(limits.max_height));
                let order = inst.interference_order(set).expect("acyclic set has an order");
                max_stack = max_stack.max(order.len());
                stacks[a][b] = order.clone();
                stacks[b][a] = order;
            }
        }
        let step_bound = match mode {
            Mode::Singleton => max_stack,
            Mode::Disjoint if max_stack > 0 => limits.max_height,
            Mode::Disjoint => 0,
        };
        Searcher {
            inst,
            limits,
            mode,
            cand,
            stacks,
            step_bound,
            crossing_memo: HashMap::new(),
            best: None,
            nodes: 0,
            exhausted_budget: false,
        }
    }

    fn report(self) -> BoundReport {
        let exhaustive = !self.exhausted_budget;
        match self.best {
            Some(best) => BoundReport {
                bound: Some(ratio(best.m, best.total)),
                witness: Some(best.chain),
                exhaustive,
                nodes: self.nodes,
            },
            None => BoundReport::none(exhaustive, self.nodes),
        }
    }

    /// Offers the MAIS-derived one-edge chain and the shortest plain chain.
    fn seed_all(&mut self) {
        if self.limits.max_m == 0 || self.limits.max_height == 0 {
            return;
        }
        let mais = mais_bound(self.inst);
        if mais.mais_size >= 3 {
            let order = self.inst.interference_order(mais.witness).expect("witness is acyclic");
            let floors: Vec<usize> = order[2..].iter().copied().take(self.limits.max_height).collect();
            let chain = Chain::singleton(vec![order[0], order[1]], vec![floors]).expect("one-edge chain");
            self.offer(chain.canonical());
        }
        if let Some((chain, delta)) = min_alignment_chain(self.inst) {
            if delta <= self.limits.max_m {
                self.offer(chain);
            }
        }
    }

    /// Keeps `chain` if it is better than the current best. The caller
    /// guarantees validity.
    fn offer(&mut self, chain: Chain) {
        let m = chain.m();
        let total = chain.total_height();
        if m > self.limits.max_m || chain.heights().iter().any(|&h| h > self.limits.max_height) {
            return;
        }
        let better = match &self.best {
            None => true,
            Some(b) => cmp_ratio(m, total, b.m, b.total)
                .then(m.cmp(&b.m))
                .then_with(|| chain.cmp(&b.chain))
                .is_lt(),
        };
        if better {
            self.best = Some(Best { m, total, chain });
        }
    }

    fn run(&mut self) {
        if self.limits.max_m == 0 || self.limits.max_height == 0 {
            return;
        }
        let n = self.inst.n();
        let mut spine = Vec::with_capacity(self.limits.max_m + 1);
        for start in 0..n {
            spine.push(start);
            let budget_hit = self.dfs(&mut spine, MessageSet::singleton(start));
            spine.pop();
            if budget_hit {
                self.exhausted_budget = true;
                return;
            }
        }
    }

    /// Returns true when the node budget ran out.
    fn dfs(&mut self, spine: &mut Vec<usize>, used: MessageSet) -> bool {
        self.nodes += 1;
        if self.nodes > self.limits.node_budget {
            return true;
        }
        let d = spine.len() - 1;
        if d >= 1 {
            self.evaluate(spine);
        }
        if d == self.limits.max_m || self.prune(spine) {
            return false;
        }
        let last = *spine.last().expect("nonempty");
        for next in 0..self.inst.n() {
            if used.contains(next) || self.cand[last][next].is_empty() {
                continue;
            }
            spine.push(next);
            let hit = self.dfs(spine, used.with(next));
            spine.pop();
            if hit {
                return true;
            }
        }
        false
    }

    fn stack_height(&self, a: usize, b: usize) -> usize {
        self.stacks[a][b].len()
    }

    /// Upper bound on the total height any chain extending this spine prefix
    /// can give to the prefix's own edges.
    fn prefix_height_bound(&self, spine: &[usize]) -> usize {
        let heights = spine.windows(2).map(|w| self.stack_height(w[0], w[1]));
        match self.mode {
            Mode::Singleton => heights.sum(),
            Mode::Disjoint => {
                // each crossing block spends one edge on its crossing tower
                let hs: Vec<usize> = heights.collect();
                let mut gains: Vec<usize> = hs.iter().map(|&h| self.limits.max_height - h).collect();
                gains.sort_unstable_by(|a, b| b.cmp(a));
                let centrals = hs.len().div_ceil(2);
                hs.iter().sum::<usize>() + gains.iter().take(centrals).sum::<usize>()
            }
        }
    }

    /// Whether no extension of this prefix (including longer ones) can beat
    /// the current best.
    fn prune(&self, spine: &[usize]) -> bool {
        let Some(best) = &self.best else {
            return false;
        };
        let d = spine.len() - 1;
        let w = self.prefix_height_bound(spine);
        for m in d.max(1)..=self.limits.max_m {
            let total = w + (m - d) * self.step_bound;
            match cmp_ratio(m, total, best.m, best.total) {
                Ordering::Less => return false,
                Ordering::Greater => continue,
                Ordering::Equal => match m.cmp(&best.m) {
                    Ordering::Less => return false,
                    Ordering::Greater => continue,
                    Ordering::Equal => {
                        let prefix = &best.chain.spine()[..=d.min(best.m)];
                        if spine[..prefix.len()] <= *prefix {
                            return false;
                        }
                    }
                },
            }
        }
        true
    }

    fn evaluate(&mut self, spine: &[usize]) {
        let m = spine.len() - 1;
        if spine[0] > spine[m] || !terminal(self.inst, spine[0], spine[m]) {
            return;
        }
        let chain = match self.mode {
            Mode::Singleton => {
                let floors = spine.windows(2).map(|w| self.stacks[w[0]][w[1]].clone()).collect();
                Chain::singleton(spine.to_vec(), floors).expect("valid shape")
            }
            Mode::Disjoint => self.best_disjoint(spine),
        };
        self.offer(chain);
    }

    fn basic_tower(&self, spine: &[usize], edge: usize) -> Tower {
        Tower::basic(edge, &self.stacks[spine[edge]][spine[edge + 1]])
    }

    /// Best disjoint chain on a fixed spine.
    fn best_disjoint(&mut self, spine: &[usize]) -> Chain {
        let m = spine.len() - 1;
        let h: Vec<usize> = (0..m).map(|e| self.stack_height(spine[e], spine[e + 1])).collect();
        // value[e]: best total height over edges 0..e; choice[e]: last block
        let mut value = vec![0usize; m + 1];
        let mut choice: Vec<Option<(usize, usize, Vec<Floor>)>> = vec![None; m + 1];
        for e in 1..=m {
            value[e] = value[e - 1] + h[e - 1];
            choice[e] = None;
            let q = e - 1;
            for p in (0..q).rev() {
                let others: usize = h[p..=q].iter().sum();
                for (c, hc) in h.iter().enumerate().take(q + 1).skip(p) {
                    let Some(floors) = self.crossing_floors(spine, p, q, c) else {
                        continue;
                    };
                    let v = value[p] + others - hc + floors.len();
                    if v > value[e] {
                        value[e] = v;
                        choice[e] = Some((p, c, floors));
                    }
                }
            }
        }
        let mut towers: Vec<Tower> = Vec::with_capacity(m);
        let mut e = m;
        while e > 0 {
            match choice[e].take() {
                None => {
                    towers.push(self.basic_tower(spine, e - 1));
                    e -= 1;
                }
                Some((p, c, floors)) => {
                    for edge in (p..e).rev() {
                        if edge == c {
                            towers.push(Tower {
                                edge,
                                kind: TowerKind::Crossing,
                                floors: floors.clone(),
                            });
                        } else {
                            towers.push(self.basic_tower(spine, edge));
                        }
                    }
                    e = p;
                }
            }
        }
        towers.reverse();
        Chain::new(spine.to_vec(), towers).expect("valid shape")
    }

    /// Tallest crossing tower on edge `c` whose total coverage is edges
    /// `p..=q` (spine positions `p` to `q + 1`), in global coordinates.
    fn crossing_floors(&mut self, spine: &[usize], p: usize, q: usize, c: usize) -> Option<Vec<Floor>> {
        let slice = spine[p..=q + 1].to_vec();
        let key = (slice, c - p);
        if let Some(hit) = self.crossing_memo.get(&key) {
            return hit.clone().map(|fs| shift(fs, p));
        }
        let found = tallest_crossing(self.inst, &key.0, key.1, self.limits.max_height);
        self.crossing_memo.insert(key, found.clone());
        found.map(|fs| shift(fs, p))
    }
}

fn shift(floors: Vec<Floor>, by: usize) -> Vec<Floor> {
    floors
        .into_iter()
        .map(|f| Floor {
            message: f.message,
            start: f.start + by,
            end: f.end + by,
        })
        .collect()
}

/// Tallest crossing tower on local edge `c` of `slice` whose top floor
/// covers the whole slice. Floor coverage is local to the slice.
fn tallest_crossing(inst: &Instance, slice: &[usize], c: usize, max_height: usize) -> Option<Vec<Floor>> {
    let last = slice.len() - 1;
    if last < 2 || max_height < 2 {
        return None;
    }
    let mut tower = CrossingSearch {
        inst,
        slice,
        max_height,
        floors: Vec::new(),
        best: Vec::new(),
    };
    let used_by_spine = MessageSet::EMPTY;
    for k in 0..inst.n() {
        if inst.interferes(k, slice[c]) && inst.interferes(k, slice[c + 1]) {
            tower.floors.push(Floor {
                message: k,
                start: c,
                end: c + 1,
            });
            tower.extend(used_by_spine.with(k));
            tower.floors.pop();
            if tower.best.len() >= max_height {
                break;
            }
        }
    }
    if tower.best.is_empty() {
        None
    } else {
        Some(tower.best)
    }
}

struct CrossingSearch<'a> {
    inst: &'a Instance,
    slice: &'a [usize],
    max_height: usize,
    floors: Vec<Floor>,
    best: Vec<Floor>,
}

impl CrossingSearch<'_> {
    fn full(&self) -> (usize, usize) {
        (0, self.slice.len() - 1)
    }

    fn covers(&self, k: usize, s: usize, t: usize) -> bool {
        self.inst.interferes(k, self.slice[s]) && self.inst.interferes(k, self.slice[t])
    }

    /// Coverages `(s, t) ⊇ (s0, t0)` for floor `k`: the full slice if valid,
    /// plus every inclusion-minimal valid one.
    fn coverages(&self, k: usize, s0: usize, t0: usize) -> Vec<(usize, usize)> {
        let (_, end) = self.full();
        let mut out = Vec::new();
        let mut bound = end + 1;
        for s in (0..=s0).rev() {
            if !self.inst.interferes(k, self.slice[s]) {
                continue;
            }
            if let Some(t) = (t0..bound).find(|&t| self.inst.interferes(k, self.slice[t])) {
                out.push((s, t));
                bound = t;
            }
        }
        if self.covers(k, 0, end) && !out.contains(&(0, end)) {
            out.push((0, end));
        }
        out
    }

    fn extend(&mut self, used: MessageSet) {
        let top = *self.floors.last().expect("tower has a floor");
        if (top.start, top.end) == self.full() && self.floors.len() >= 2 && self.floors.len() > self.best.len() {
            self.best = self.floors.clone();
        }
        if self.floors.len() >= self.max_height {
            return;
        }
        let open: Vec<usize> = (0..self.inst.n())
            .filter(|&k| !used.contains(k) && used.is_subset(self.inst.interfering(k)))
            .collect();
        if self.floors.len() + open.len() <= self.best.len() {
            return;
        }
        for k in open {
            for (s, t) in self.coverages(k, top.start, top.end) {
                self.floors.push(Floor {
                    message: k,
                    start: s,
                    end: t,
                });
                self.extend(used.with(k));
                self.floors.pop();
                if self.best.len() >= self.max_height {
                    return;
                }
            }
        }
    }
}
