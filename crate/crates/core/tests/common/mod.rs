#![allow(dead_code)]

use chainbound::{verify_chain, CapacityMap, Chain, Form, Instance, MessageSet, Rational};
use rand::Rng;

pub const EXAMPLE1: &str = "(1|2,3,4,6), (2|4,5,6), (3|1,2,4,5,6), (4|1,2,6), (5|2,3,4,6), (6|-)";

pub const EXAMPLE2: &str = "(1|3,4,5,6,7,8,9,10), (2|3,4,5,6,7,8,9,10), (3|1,2,4,5,6,7,8,9,10), \
     (4|1,2,3,5,6,7,8,9,10), (5|1,3,6,7,8,9,10), (6|2,4,5,7,8,9,10), (7|1,2,5,6,8,9,10), \
     (8|1,3,6,7,9,10), (9|2,3,5,7,8,10), (10|1,2,5,6,8,9)";

/// Listed by interfering sets.
pub const EXAMPLE3_B: &str = "(1|6), (2|7,8), (3|8,11,17), (4|-), (5|-), (6|1), (7|1,2), \
     (8|1,2,3,4,7), (9|2,3), (10|1,4,9), (11|3,4,8), (12|5,6), (13|4,5), \
     (14|4,6,7,13,15,17), (15|-), (16|5,6,12), (17|8)";

pub const DIC_EXAMPLE: &str = "(1|2,3,4,5), (2|1,3,4,5), (3|2,4,5), (4|3,5), (5|1,4)";

/// Listed by interfering sets.
pub const EXAMPLE5_B: &str = "(1|2), (2|1,5,8), (3|-), (4|-), (5|2,4,8), (6|1,3), (7|3,4), (8|2,3,5), (9|1,4,6)";

pub fn example1() -> Instance {
    Instance::parse_text(EXAMPLE1, Form::A).unwrap()
}

pub fn example2() -> Instance {
    Instance::parse_text(EXAMPLE2, Form::A).unwrap()
}

pub fn example3() -> Instance {
    Instance::parse_text(EXAMPLE3_B, Form::B).unwrap()
}

pub fn dic_example() -> Instance {
    Instance::parse_text(DIC_EXAMPLE, Form::A).unwrap()
}

pub fn example5() -> Instance {
    Instance::parse_text(EXAMPLE5_B, Form::B).unwrap()
}

pub fn example1_certificate() -> serde_json::Value {
    serde_json::json!({
        "spine": [1, 3, 5],
        "towers": [
            {"edge": 1, "kind": "basic", "floors": [{"k": 2}, {"k": 6}]},
            {"edge": 2, "kind": "basic", "floors": [{"k": 4}, {"k": 6}]}
        ]
    })
}

pub fn example2_certificate() -> serde_json::Value {
    serde_json::json!({
        "spine": [1, 3, 4, 2],
        "towers": [
            {"edge": 1, "kind": "crossing", "floors": [{"k": 6, "s": 1, "t": 2}, {"k": 9, "s": 1, "t": 3}]},
            {"edge": 2, "kind": "basic", "floors": [{"k": 7}, {"k": 10}]},
            {"edge": 3, "kind": "basic", "floors": [{"k": 5}, {"k": 8}]}
        ]
    })
}

pub fn example3_certificate() -> serde_json::Value {
    serde_json::json!({
        "spine": [1, 2, 3, 4, 5, 6],
        "towers": [
            {"edge": 1, "kind": "basic", "floors": [{"k": 7}, {"k": 8}]},
            {"edge": 2, "kind": "crossing", "floors": [{"k": 9, "s": 2, "t": 3}, {"k": 10, "s": 1, "t": 4}]},
            {"edge": 3, "kind": "basic", "floors": [{"k": 8}, {"k": 11}]},
            {"edge": 4, "kind": "crossing", "floors": [{"k": 13, "s": 4, "t": 5}, {"k": 14, "s": 4, "t": 6}]},
            {"edge": 5, "kind": "basic", "floors": [{"k": 12}, {"k": 16}]}
        ]
    })
}

pub fn dic_certificate() -> serde_json::Value {
    serde_json::json!({
        "spine": [1, 2, 3],
        "towers": [
            {"edge": 1, "floors": [{"k": 4}]},
            {"edge": 2, "floors": [{"k": 5}]}
        ]
    })
}

pub fn set(xs: &[usize]) -> MessageSet {
    xs.iter().map(|x| x - 1).collect()
}

/// The two Zhang-Yeung instantiations used on Example 5, as (A, B, C, D).
pub fn example5_zy() -> [[MessageSet; 4]; 2] {
    [
        [set(&[1, 2, 4]), set(&[1, 2, 3]), set(&[2, 3, 4]), set(&[1, 3, 4])],
        [set(&[1, 2, 3]), set(&[1, 2, 4]), set(&[2, 3, 4]), set(&[1, 3, 4])],
    ]
}

/// Random instance: each `j ≠ i` is in `A_i` with probability `p`.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, p: f64) -> Instance {
    let side = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && rng.gen_bool(p)).collect())
        .collect();
    Instance::from_side_information(side).unwrap()
}

/// Cycle check by three-colour depth-first search on the subgraph induced by
/// `members`, with an edge `i → j` whenever receiver `j` knows `i`.
pub fn brute_acyclic(inst: &Instance, members: MessageSet) -> bool {
    fn visit(inst: &Instance, members: MessageSet, v: usize, colour: &mut [u8]) -> bool {
        colour[v] = 1;
        for w in members {
            if inst.side(w).contains(v) && (colour[w] == 1 || colour[w] == 0 && !visit(inst, members, w, colour)) {
                return false;
            }
        }
        colour[v] = 2;
        true
    }
    let mut colour = vec![0u8; inst.n()];
    members
        .iter()
        .all(|v| colour[v] != 0 || visit(inst, members, v, &mut colour))
}

/// Largest acyclic set by enumerating all `2ⁿ` subsets.
pub fn brute_mais(inst: &Instance) -> usize {
    (0u64..1 << inst.n())
        .map(MessageSet)
        .filter(|&s| brute_acyclic(inst, s))
        .map(|s| s.len())
        .max()
        .unwrap()
}

/// `Σ C_J` over every nonempty server set `J` meeting both `ta` and `tb`.
pub fn brute_capacity_sum(cap: &CapacityMap, ta: MessageSet, tb: MessageSet) -> Rational {
    (1u64..1 << cap.n())
        .map(MessageSet)
        .filter(|j| j.intersects(ta) && j.intersects(tb))
        .map(|j| cap.capacity(j))
        .sum()
}

/// Memberships `x ∈ B_k` as `(k, x)` that a valid chain depends on
/// individually: each floor needs the spine messages at both ends of its
/// coverage and every lower floor of its tower, and the terminal condition
/// counts when only one of its two alternatives holds.
pub fn required_memberships(inst: &Instance, chain: &Chain) -> Vec<(usize, usize)> {
    let spine = chain.spine();
    let mut out = Vec::new();
    for tower in chain.towers() {
        for (level, floor) in tower.floors.iter().enumerate() {
            let k = floor.message;
            out.push((k, spine[floor.start]));
            out.push((k, spine[floor.end]));
            for lower in &tower.floors[..level] {
                out.push((k, lower.message));
            }
        }
    }
    let (first, last) = (spine[0], spine[spine.len() - 1]);
    match (inst.interferes(last, first), inst.interferes(first, last)) {
        (true, false) => out.push((last, first)),
        (false, true) => out.push((first, last)),
        _ => {}
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Removes each required membership in turn and reports those whose removal
/// leaves the chain valid. Empty means every mutation was caught.
pub fn surviving_mutations(inst: &Instance, chain: &Chain) -> Vec<(usize, usize)> {
    required_memberships(inst, chain)
        .into_iter()
        .filter(|&(k, x)| k != x)
        .filter(|&(k, x)| {
            let mutated = inst.with_known(k, x);
            verify_chain(&mutated, chain).map(|v| v.is_valid()).unwrap_or(false)
        })
        .collect()
}

/// The worked example certificates with their instances.
pub fn example_certificates() -> Vec<(&'static str, Instance, Chain)> {
    vec![
        (
            "example 1",
            example1(),
            Chain::from_certificate(&example1_certificate()).unwrap(),
        ),
        (
            "example 2",
            example2(),
            Chain::from_certificate(&example2_certificate()).unwrap(),
        ),
        (
            "example 3",
            example3(),
            Chain::from_certificate(&example3_certificate()).unwrap(),
        ),
        (
            "distributed example",
            dic_example(),
            Chain::from_certificate(&dic_certificate()).unwrap(),
        ),
    ]
}
