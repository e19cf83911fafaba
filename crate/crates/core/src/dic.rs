//! Distributed index coding bounds evaluated on a verified chain.
//!
//! Every term is a sum of link capacities `C_J` over servers `J` meeting two
//! message sets. With a default capacity and sparse overrides the sum is a
//! closed-form server count times the default plus a correction per
//! qualifying override, so no evaluation touches all `2ⁿ − 1` servers.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::chain::{verify_chain, Chain, ChainError, Tower};
use crate::error::InstanceError;
use crate::instance::{CapacityMap, Instance};
use crate::rational::Rational;
use crate::set::MessageSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DicError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// `Σ C_J` over servers with `J ∩ T_a ≠ ∅` and `J ∩ T_b ≠ ∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ServerSum {
    #[serde(rename = "T_a", serialize_with = "crate::report::one_based")]
    pub ta: MessageSet,
    #[serde(rename = "T_b", serialize_with = "crate::report::one_based")]
    pub tb: MessageSet,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DicBound {
    pub bound: Rational,
    pub terms: Vec<ServerSum>,
}

fn nonempty_subsets(free: usize) -> BigInt {
    (BigInt::from(1) << free) - 1
}

/// Number of nonempty `J ⊆ [n]` meeting both `ta` and `tb`, by
/// inclusion–exclusion.
pub fn qualifying_servers(n: usize, ta: MessageSet, tb: MessageSet) -> BigInt {
    if ta.is_empty() || tb.is_empty() {
        return BigInt::from(0);
    }
    nonempty_subsets(n) - nonempty_subsets(n - ta.len()) - nonempty_subsets(n - tb.len())
        + nonempty_subsets(n - ta.union(tb).len())
}

pub fn capacity_sum(cap: &CapacityMap, ta: MessageSet, tb: MessageSet) -> Result<Rational, InstanceError> {
    let n = cap.n();
    for set in [ta, tb] {
        if let Some(bad) = set.difference(MessageSet::full(n)).first() {
            return Err(InstanceError::IndexOutOfRange { index: bad + 1, n });
        }
    }
    let count = qualifying_servers(n, ta, tb);
    let mut value = cap.default_capacity() * Rational::from_bigint(count);
    for (servers, c) in cap.overrides() {
        if servers.intersects(ta) && servers.intersects(tb) {
            value += c - cap.default_capacity();
        }
    }
    Ok(value)
}

fn term(cap: &CapacityMap, ta: MessageSet, tb: MessageSet) -> Result<ServerSum, DicError> {
    Ok(ServerSum {
        ta,
        tb,
        value: capacity_sum(cap, ta, tb)?,
    })
}

fn check(inst: &Instance, cap: &CapacityMap, chain: &Chain) -> Result<(), DicError> {
    if cap.n() != inst.n() {
        return Err(InstanceError::SizeMismatch {
            cap: cap.n(),
            inst: inst.n(),
        }
        .into());
    }
    let verdict = verify_chain(inst, chain)?;
    if !verdict.is_valid() {
        return Err(ChainError::Invalid(verdict.violations).into());
    }
    Ok(())
}

fn floors(tower: &Tower) -> MessageSet {
    tower.messages().collect()
}

fn finish(chain: &Chain, terms: Vec<ServerSum>) -> DicBound {
    let size = (chain.spine().len() + chain.total_height()) as i64;
    let total: Rational = terms.iter().map(|t| &t.value).sum();
    DicBound {
        bound: total / Rational::from_integer(size),
        terms,
    }
}

/// The bound for a chain of basic towers: one term per edge `j` with
/// `T_a = {i(j), i(j+1)} ∪ K(j)` and `T_b = {i(j), i(m+1)} ∪ K(j)`, divided by
/// `|I| + |K|`.
pub fn dic_bound_singleton(inst: &Instance, cap: &CapacityMap, chain: &Chain) -> Result<DicBound, DicError> {
    if !chain.is_singleton() {
        return Err(ChainError::HasCrossing.into());
    }
    check(inst, cap, chain)?;
    let spine = chain.spine();
    let last = spine[chain.m()];
    let mut terms = Vec::with_capacity(chain.m());
    for tower in chain.towers() {
        let j = tower.edge;
        let k = floors(tower);
        let ta = k.with(spine[j]).with(spine[j + 1]);
        let tb = k.with(spine[j]).with(last);
        terms.push(term(cap, ta, tb)?);
    }
    Ok(finish(chain, terms))
}

/// The bound for a disjoint chain. Crossing towers and edges outside every
/// crossing coverage contribute one term built from the top floor's coverage;
/// each widening step of a crossing tower adds one term per newly covered
/// edge. Terms are listed in that order, edge by edge.
pub fn dic_bound_disjoint(inst: &Instance, cap: &CapacityMap, chain: &Chain) -> Result<DicBound, DicError> {
    check(inst, cap, chain)?;
    let spine = chain.spine();
    let towers = chain.towers();
    let last = spine[chain.m()];
    let crossing = chain.crossing_edges();
    let mut heads = crossing.clone();
    heads.extend(chain.uncovered_edges());
    heads.sort_unstable();

    let mut terms = Vec::new();
    for &j in &heads {
        let tower = &towers[j];
        let k = floors(tower);
        let top = tower.floors.last().expect("towers have floors");
        let t1 = k.with(spine[top.start]).with(spine[top.end]);
        let t2 = k.with(spine[top.start]).with(last);
        terms.push(term(cap, t1, t2)?);
    }
    for &j in &crossing {
        let fl = &towers[j].floors;
        for l in 1..fl.len() {
            let (prev, cur) = (&fl[l - 1], &fl[l]);
            for e in cur.start..prev.start {
                let k = floors(&towers[e]);
                let t3 = k.with(spine[e]).with(spine[e + 1]);
                let t4 = k.with(spine[e]).with(spine[prev.start]);
                terms.push(term(cap, t3, t4)?);
            }
            for e in prev.end..cur.end {
                let k = floors(&towers[e]);
                let t3 = k.with(spine[e]).with(spine[e + 1]);
                let t5 = k.with(spine[e]).with(spine[cur.end]);
                terms.push(term(cap, t3, t5)?);
            }
        }
    }
    Ok(finish(chain, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Form;

    fn set(xs: &[usize]) -> MessageSet {
        xs.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn uniform_counts() {
        let cap = CapacityMap::uniform(5, Rational::one()).unwrap();
        assert_eq!(capacity_sum(&cap, set(&[1, 2, 4]), set(&[1, 3, 4])).unwrap(), 26);
        assert_eq!(capacity_sum(&cap, set(&[2, 3, 5]), set(&[2, 3, 5])).unwrap(), 28);
        assert_eq!(capacity_sum(&cap, MessageSet::EMPTY, set(&[1])).unwrap(), 0);
    }

    #[test]
    fn overrides_replace_the_default() {
        let mut cap = CapacityMap::uniform(3, Rational::one()).unwrap();
        cap.set(set(&[1]), Rational::new(5, 2)).unwrap();
        cap.set(set(&[2]), Rational::zero()).unwrap();
        // servers meeting {1}: {1},{1,2},{1,3},{1,2,3}
        assert_eq!(capacity_sum(&cap, set(&[1]), set(&[1])).unwrap(), Rational::new(11, 2));
    }

    #[test]
    fn out_of_range_sets_are_rejected() {
        let cap = CapacityMap::uniform(3, Rational::one()).unwrap();
        assert!(capacity_sum(&cap, set(&[4]), set(&[1])).is_err());
    }

    #[test]
    fn singleton_bound_rejects_crossing_chains() {
        let inst = Instance::parse_text("(1|-),(2|-),(3|-),(4|-),(5|-)", Form::A).unwrap();
        let chain = Chain::from_certificate(&serde_json::json!({
            "spine": [1, 2, 3],
            "towers": [
                {"edge": 1, "kind": "crossing", "floors": [{"k": 4, "s": 1, "t": 2}, {"k": 5, "s": 1, "t": 3}]},
                {"edge": 2, "floors": [{"k": 4}]}
            ]
        }))
        .unwrap();
        let cap = CapacityMap::centralized(5).unwrap();
        assert!(matches!(
            dic_bound_singleton(&inst, &cap, &chain),
            Err(DicError::Chain(ChainError::HasCrossing))
        ));
        let b = dic_bound_disjoint(&inst, &cap, &chain).unwrap();
        assert_eq!(b.bound, Rational::new(2, 6));
        assert_eq!(b.terms.len(), 2);
    }

    #[test]
    fn size_mismatch() {
        let inst = Instance::parse_text("(1|-),(2|-),(3|-)", Form::A).unwrap();
        let chain = Chain::singleton(vec![0, 1], vec![vec![2]]).unwrap();
        let cap = CapacityMap::centralized(4).unwrap();
        assert!(dic_bound_disjoint(&inst, &cap, &chain).is_err());
    }
}
