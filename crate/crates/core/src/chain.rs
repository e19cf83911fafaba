//! Towers and weighted alignment chains, their verification, and the
//! closed-form single-server bounds they certify.
//!
//! A chain has a spine `i(1), ..., i(m+1)` of distinct messages and one tower
//! per spine edge. Every floor carries a coverage interval `(s, t)` of spine
//! positions. Positions are stored 0-based and in global spine coordinates;
//! certificates use 1-based positions. A basic tower on edge `j` has every
//! floor at `(j, j+1)`. A crossing tower starts at `(j, j+1)` and widens
//! monotonically upward; its top floor spans the tower's total coverage.
//!
//! Floor messages may repeat across towers and are counted with
//! multiplicity in `|K|`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::Instance;
use crate::rational::Rational;
use crate::set::MessageSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Floor {
    /// Floor message, 0-based.
    pub message: usize,
    /// Coverage start, a 0-based spine position.
    pub start: usize,
    /// Coverage end, a 0-based spine position.
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TowerKind {
    Basic,
    Crossing,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tower {
    /// 0-based spine edge between positions `edge` and `edge + 1`.
    pub edge: usize,
    pub kind: TowerKind,
    /// Bottom floor first.
    pub floors: Vec<Floor>,
}

impl Tower {
    pub fn basic(edge: usize, messages: &[usize]) -> Self {
        Tower {
            edge,
            kind: TowerKind::Basic,
            floors: messages
                .iter()
                .map(|&k| Floor {
                    message: k,
                    start: edge,
                    end: edge + 1,
                })
                .collect(),
        }
    }

    pub fn height(&self) -> usize {
        self.floors.len()
    }

    /// Total coverage as an inclusive range of edges `[s_top, t_top - 1]`.
    pub fn coverage(&self) -> (usize, usize) {
        match self.kind {
            TowerKind::Basic => (self.edge, self.edge),
            TowerKind::Crossing => {
                let top = self.floors.last().expect("towers have floors");
                (top.start, top.end - 1)
            }
        }
    }

    pub fn messages(&self) -> impl Iterator<Item = usize> + '_ {
        self.floors.iter().map(|f| f.message)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("malformed chain: {0}")]
    Malformed(String),
    #[error("chain fails verification: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("chain length must be at least 1, got {0}")]
    BadLength(i64),
    #[error("this bound needs a chain without crossing towers")]
    HasCrossing,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    spine: Vec<usize>,
    towers: Vec<Tower>,
}

impl Chain {
    /// Checks the shape that does not depend on an instance: at least one
    /// edge, one tower per edge in order, nonempty towers, and coverage
    /// positions inside the spine with `s < t`.
    pub fn new(spine: Vec<usize>, towers: Vec<Tower>) -> Result<Self, ChainError> {
        let malformed = |m: String| Err(ChainError::Malformed(m));
        if spine.len() < 2 {
            return malformed(format!("spine needs at least 2 messages, got {}", spine.len()));
        }
        let m = spine.len() - 1;
        if towers.len() != m {
            return malformed(format!("{m} spine edges but {} towers", towers.len()));
        }
        for (j, tower) in towers.iter().enumerate() {
            if tower.edge != j {
                return malformed(format!(
                    "tower {} is attached to edge {}, expected edge {}",
                    j + 1,
                    tower.edge + 1,
                    j + 1
                ));
            }
            if tower.floors.is_empty() {
                return malformed(format!("tower on edge {} has no floors", j + 1));
            }
            for (l, f) in tower.floors.iter().enumerate() {
                if f.start >= f.end || f.end > m {
                    return malformed(format!(
                        "edge {} floor {}: coverage ({}, {}) outside [1, {}] or empty",
                        j + 1,
                        l + 1,
                        f.start + 1,
                        f.end + 1,
                        m + 1
                    ));
                }
            }
        }
        Ok(Chain { spine, towers })
    }

    /// A chain of basic towers; `floors[j]` lists edge `j`'s floors bottom-up.
    pub fn singleton(spine: Vec<usize>, floors: Vec<Vec<usize>>) -> Result<Self, ChainError> {
        let towers = floors.iter().enumerate().map(|(j, ks)| Tower::basic(j, ks)).collect();
        Chain::new(spine, towers)
    }

    pub fn spine(&self) -> &[usize] {
        &self.spine
    }

    pub fn towers(&self) -> &[Tower] {
        &self.towers
    }

    /// Number of spine edges.
    pub fn m(&self) -> usize {
        self.spine.len() - 1
    }

    pub fn heights(&self) -> Vec<usize> {
        self.towers.iter().map(Tower::height).collect()
    }

    /// `Σ h_j`, i.e. `|K|` counted with multiplicity.
    pub fn total_height(&self) -> usize {
        self.towers.iter().map(Tower::height).sum()
    }

    /// Edges carrying a crossing tower (the set `M`).
    pub fn crossing_edges(&self) -> Vec<usize> {
        self.towers
            .iter()
            .filter(|t| t.kind == TowerKind::Crossing)
            .map(|t| t.edge)
            .collect()
    }

    /// Edges outside the total coverage of every crossing tower (`M'`).
    pub fn uncovered_edges(&self) -> Vec<usize> {
        let covered: Vec<(usize, usize)> = self
            .towers
            .iter()
            .filter(|t| t.kind == TowerKind::Crossing)
            .map(Tower::coverage)
            .collect();
        (0..self.m())
            .filter(|&j| !covered.iter().any(|&(a, b)| a <= j && j <= b))
            .collect()
    }

    pub fn is_singleton(&self) -> bool {
        self.towers.iter().all(|t| t.kind == TowerKind::Basic)
    }

    /// Plain alignment chain: basic towers of height 1.
    pub fn is_plain(&self) -> bool {
        self.is_singleton() && self.towers.iter().all(|t| t.height() == 1)
    }

    /// The same chain read right to left; verification and bounds are unchanged.
    pub fn reversed(&self) -> Chain {
        let m = self.m();
        let spine = self.spine.iter().rev().copied().collect();
        let towers = self
            .towers
            .iter()
            .rev()
            .map(|t| Tower {
                edge: m - 1 - t.edge,
                kind: t.kind,
                floors: t
                    .floors
                    .iter()
                    .map(|f| Floor {
                        message: f.message,
                        start: m - f.end,
                        end: m - f.start,
                    })
                    .collect(),
            })
            .collect();
        Chain { spine, towers }
    }

    /// Orientation with `i(1) < i(m+1)`.
    pub fn canonical(self) -> Chain {
        if self.spine[0] > self.spine[self.m()] {
            self.reversed()
        } else {
            self
        }
    }

    /// `1 <2,6> 3 <4,6> 5`; crossing floors print their coverage as `k@s-t`.
    pub fn render(&self) -> String {
        let mut out = (self.spine[0] + 1).to_string();
        for (j, t) in self.towers.iter().enumerate() {
            let floors: Vec<String> = t
                .floors
                .iter()
                .map(|f| match t.kind {
                    TowerKind::Basic => (f.message + 1).to_string(),
                    TowerKind::Crossing => {
                        format!("{}@{}-{}", f.message + 1, f.start + 1, f.end + 1)
                    }
                })
                .collect();
            let tag = match t.kind {
                TowerKind::Basic => "",
                TowerKind::Crossing => "c",
            };
            out.push_str(&format!(" <{}>{} {}", floors.join(","), tag, self.spine[j + 1] + 1));
        }
        out
    }

    pub fn to_certificate(&self) -> serde_json::Value {
        let cert = Certificate {
            spine: self.spine.iter().map(|i| i + 1).collect(),
            towers: self
                .towers
                .iter()
                .map(|t| TowerJson {
                    edge: t.edge + 1,
                    kind: t.kind,
                    floors: t
                        .floors
                        .iter()
                        .map(|f| FloorJson {
                            k: f.message + 1,
                            s: Some(f.start + 1),
                            t: Some(f.end + 1),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(cert).expect("certificate serializes")
    }

    pub fn from_certificate(value: &serde_json::Value) -> Result<Chain, ChainError> {
        let cert: Certificate =
            serde_json::from_value(value.clone()).map_err(|e| ChainError::Malformed(format!("certificate: {e}")))?;
        let malformed = |m: String| ChainError::Malformed(m);
        let spine = cert
            .spine
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| malformed("spine message 0 (indices are 1-based)".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut towers = Vec::with_capacity(cert.towers.len());
        for tj in cert.towers {
            let edge = tj
                .edge
                .checked_sub(1)
                .ok_or_else(|| malformed("edge 0 (edges are 1-based)".into()))?;
            let floors = tj
                .floors
                .iter()
                .map(|f| {
                    let message = f.k.checked_sub(1).ok_or_else(|| malformed("floor message 0".into()))?;
                    let start = match f.s {
                        Some(s) => s.checked_sub(1).ok_or_else(|| malformed("s = 0".into()))?,
                        None => edge,
                    };
                    let end = match f.t {
                        Some(t) => t.checked_sub(1).ok_or_else(|| malformed("t = 0".into()))?,
                        None => edge + 1,
                    };
                    Ok(Floor { message, start, end })
                })
                .collect::<Result<Vec<_>, ChainError>>()?;
            towers.push(Tower {
                edge,
                kind: tj.kind,
                floors,
            });
        }
        towers.sort_by_key(|t| t.edge);
        Chain::new(spine, towers)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct Certificate {
    spine: Vec<usize>,
    towers: Vec<TowerJson>,
}

fn basic_kind() -> TowerKind {
    TowerKind::Basic
}

#[derive(Serialize, Deserialize)]
struct TowerJson {
    edge: usize,
    #[serde(default = "basic_kind")]
    kind: TowerKind,
    floors: Vec<FloorJson>,
}

#[derive(Serialize, Deserialize)]
struct FloorJson {
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
}

/// Why a required membership is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MembershipRole {
    /// A ground message of a basic tower.
    Ground,
    /// A message on a lower floor of the same tower.
    LowerFloor,
    /// The message starting a crossing floor's coverage.
    CoverageStart,
    /// The message terminating a crossing floor's coverage.
    CoverageEnd,
}

/// A failed condition. Messages, edges and floors are 0-based in the fields
/// and 1-based in the `Display` text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    SpineRepeat {
        message: usize,
    },
    Terminal {
        first: usize,
        last: usize,
    },
    Membership {
        edge: usize,
        floor: usize,
        receiver: usize,
        message: usize,
        role: MembershipRole,
    },
    BasicCoverage {
        edge: usize,
        floor: usize,
    },
    CrossingAnchor {
        edge: usize,
    },
    CrossingLadder {
        edge: usize,
        floor: usize,
    },
    CrossingNotWider {
        edge: usize,
    },
    CoverageOverlap {
        first: usize,
        second: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::SpineRepeat { message } => {
                write!(f, "message {} appears twice on the spine", message + 1)
            }
            Violation::Terminal { first, last } => write!(
                f,
                "terminal condition: neither {} ∈ B_{} nor {} ∈ B_{}",
                first + 1,
                last + 1,
                last + 1,
                first + 1
            ),
            Violation::Membership {
                edge,
                floor,
                receiver,
                message,
                role,
            } => {
                let why = match role {
                    MembershipRole::Ground => "ground message",
                    MembershipRole::LowerFloor => "lower floor",
                    MembershipRole::CoverageStart => "coverage start",
                    MembershipRole::CoverageEnd => "coverage end",
                };
                write!(
                    f,
                    "edge {} floor {}: {} ∉ B_{} ({why})",
                    edge + 1,
                    floor + 1,
                    message + 1,
                    receiver + 1
                )
            }
            Violation::BasicCoverage { edge, floor } => write!(
                f,
                "edge {} floor {}: basic tower floors must cover exactly ({}, {})",
                edge + 1,
                floor + 1,
                edge + 1,
                edge + 2
            ),
            Violation::CrossingAnchor { edge } => write!(
                f,
                "edge {}: crossing tower's first floor must cover exactly ({}, {})",
                edge + 1,
                edge + 1,
                edge + 2
            ),
            Violation::CrossingLadder { edge, floor } => write!(
                f,
                "edge {} floor {}: coverage must contain the coverage of the floor below",
                edge + 1,
                floor + 1
            ),
            Violation::CrossingNotWider { edge } => write!(
                f,
                "edge {}: crossing tower's total coverage is not wider than its central edge",
                edge + 1
            ),
            Violation::CoverageOverlap { first, second } => write!(
                f,
                "total coverages of crossing towers on edges {} and {} overlap",
                first + 1,
                second + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Warning {
    /// A floor message also sits on the spine at a position its own
    /// memberships do not exclude.
    FloorOnSpine { edge: usize, floor: usize, message: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Warning::FloorOnSpine { edge, floor, message } => write!(
                f,
                "edge {} floor {}: floor message {} also appears on the spine",
                edge + 1,
                floor + 1,
                message + 1
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_messages_in_range(inst: &Instance, chain: &Chain) -> Result<(), ChainError> {
    let n = inst.n();
    let bad = |what: &str, x: usize| {
        Err(ChainError::Malformed(format!(
            "{what} message {} out of range [1, {n}]",
            x + 1
        )))
    };
    for &i in &chain.spine {
        if i >= n {
            return bad("spine", i);
        }
    }
    for t in &chain.towers {
        for f in &t.floors {
            if f.message >= n {
                return bad("floor", f.message);
            }
        }
    }
    Ok(())
}

/// Checks one basic tower: every floor is interfered by both ground messages
/// and by all lower floors.
pub fn verify_basic_tower(inst: &Instance, spine: &[usize], tower: &Tower) -> Result<Vec<Violation>, ChainError> {
    let j = tower.edge;
    if j + 1 >= spine.len() {
        return Err(ChainError::Malformed(format!(
            "edge {} not on a spine of {} messages",
            j + 1,
            spine.len()
        )));
    }
    for f in &tower.floors {
        if f.message >= inst.n() {
            return Err(ChainError::Malformed(format!(
                "floor message {} out of range",
                f.message + 1
            )));
        }
    }
    if spine.iter().any(|&i| i >= inst.n()) {
        return Err(ChainError::Malformed("spine message out of range".into()));
    }
    let mut out = Vec::new();
    let grounds = [spine[j], spine[j + 1]];
    for (l, f) in tower.floors.iter().enumerate() {
        let k = f.message;
        if f.start != j || f.end != j + 1 {
            out.push(Violation::BasicCoverage { edge: j, floor: l });
        }
        for &g in &grounds {
            if !inst.interferes(k, g) {
                out.push(Violation::Membership {
                    edge: j,
                    floor: l,
                    receiver: k,
                    message: g,
                    role: MembershipRole::Ground,
                });
            }
        }
        out.extend(lower_floor_violations(inst, tower, l));
    }
    Ok(out)
}

fn lower_floor_violations(inst: &Instance, tower: &Tower, l: usize) -> Vec<Violation> {
    let k = tower.floors[l].message;
    tower.floors[..l]
        .iter()
        .filter(|lower| !inst.interferes(k, lower.message))
        .map(|lower| Violation::Membership {
            edge: tower.edge,
            floor: l,
            receiver: k,
            message: lower.message,
            role: MembershipRole::LowerFloor,
        })
        .collect()
}

fn verify_crossing_tower(inst: &Instance, spine: &[usize], tower: &Tower) -> Vec<Violation> {
    let j = tower.edge;
    let mut out = Vec::new();
    let first = &tower.floors[0];
    if first.start != j || first.end != j + 1 {
        out.push(Violation::CrossingAnchor { edge: j });
    }
    for (l, f) in tower.floors.iter().enumerate() {
        let k = f.message;
        out.extend(lower_floor_violations(inst, tower, l));
        if !inst.interferes(k, spine[f.start]) {
            out.push(Violation::Membership {
                edge: j,
                floor: l,
                receiver: k,
                message: spine[f.start],
                role: MembershipRole::CoverageStart,
            });
        }
        if !inst.interferes(k, spine[f.end]) {
            out.push(Violation::Membership {
                edge: j,
                floor: l,
                receiver: k,
                message: spine[f.end],
                role: MembershipRole::CoverageEnd,
            });
        }
        let (lo, hi) = if l == 0 {
            (j, j + 1)
        } else {
            (tower.floors[l - 1].start, tower.floors[l - 1].end)
        };
        if l > 0 && (f.start > lo || f.end < hi) {
            out.push(Violation::CrossingLadder { edge: j, floor: l });
        }
    }
    let top = tower.floors.last().expect("nonempty");
    if top.start == j && top.end == j + 1 {
        out.push(Violation::CrossingNotWider { edge: j });
    }
    out
}

/// Checks every condition of a disjoint weighted alignment chain and lists
/// all violations.
pub fn verify_chain(inst: &Instance, chain: &Chain) -> Result<Verdict, ChainError> {
    check_messages_in_range(inst, chain)?;
    let spine = &chain.spine;
    let m = chain.m();
    let mut verdict = Verdict::default();

    let mut seen = MessageSet::EMPTY;
    let mut repeated = MessageSet::EMPTY;
    for &i in spine {
        if seen.contains(i) {
            repeated.insert(i);
        }
        seen.insert(i);
    }
    verdict
        .violations
        .extend(repeated.iter().map(|message| Violation::SpineRepeat { message }));

    let (first, last) = (spine[0], spine[m]);
    if !inst.interferes(last, first) && !inst.interferes(first, last) {
        verdict.violations.push(Violation::Terminal { first, last });
    }

    for tower in &chain.towers {
        match tower.kind {
            TowerKind::Basic => verdict.violations.extend(verify_basic_tower(inst, spine, tower)?),
            TowerKind::Crossing => verdict.violations.extend(verify_crossing_tower(inst, spine, tower)),
        }
        for (l, f) in tower.floors.iter().enumerate() {
            let forced = match tower.kind {
                TowerKind::Basic => [spine[tower.edge], spine[tower.edge + 1]],
                TowerKind::Crossing => [spine[f.start], spine[f.end]],
            };
            if seen.contains(f.message) && !forced.contains(&f.message) {
                verdict.warnings.push(Warning::FloorOnSpine {
                    edge: tower.edge,
                    floor: l,
                    message: f.message,
                });
            }
        }
    }

    let crossing: Vec<&Tower> = chain.towers.iter().filter(|t| t.kind == TowerKind::Crossing).collect();
    for (a, ta) in crossing.iter().enumerate() {
        for tb in &crossing[a + 1..] {
            let (a0, a1) = ta.coverage();
            let (b0, b1) = tb.coverage();
            if a0 <= b1 && b0 <= a1 {
                verdict.violations.push(Violation::CoverageOverlap {
                    first: ta.edge,
                    second: tb.edge,
                });
            }
        }
    }
    Ok(verdict)
}

/// A chain that passed [`verify_chain`] for some instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedChain {
    chain: Chain,
    warnings: Vec<Warning>,
}

impl VerifiedChain {
    pub fn new(inst: &Instance, chain: Chain) -> Result<Self, ChainError> {
        let verdict = verify_chain(inst, &chain)?;
        if !verdict.is_valid() {
            return Err(ChainError::Invalid(verdict.violations));
        }
        Ok(VerifiedChain {
            chain,
            warnings: verdict.warnings,
        })
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn into_chain(self) -> Chain {
        self.chain
    }
}

/// `m / (1 + m + Σ h_j)`.
pub fn cic_bound(chain: &VerifiedChain) -> Rational {
    chain_ratio(chain.chain())
}

pub(crate) fn chain_ratio(chain: &Chain) -> Rational {
    ratio(chain.m(), chain.total_height())
}

pub(crate) fn ratio(m: usize, total_height: usize) -> Rational {
    Rational::new(m as i64, (1 + m + total_height) as i64)
}

/// `Δ / (1 + 2Δ)` for a shortest alignment chain of length `Δ`.
pub fn internal_conflict_bound(delta: i64) -> Result<Rational, ChainError> {
    if delta < 1 {
        return Err(ChainError::BadLength(delta));
    }
    Ok(Rational::new(delta, 1 + 2 * delta))
}
