use serde::{Serialize, Serializer};

use crate::chain::Chain;
use crate::rational::Rational;
use crate::set::MessageSet;

pub(crate) fn one_based<S: Serializer>(set: &MessageSet, serializer: S) -> Result<S::Ok, S::Error> {
    set.to_one_based().serialize(serializer)
}

/// Outcome of a chain search: the smallest bound found and the chain that
/// certifies it. `bound == None` means no chain exists within the limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub bound: Option<Rational>,
    pub witness: Option<Chain>,
    /// True when the search covered its whole space within the node budget.
    pub exhaustive: bool,
    pub nodes: u64,
}

impl BoundReport {
    pub fn none(exhaustive: bool, nodes: u64) -> Self {
        BoundReport {
            bound: None,
            witness: None,
            exhaustive,
            nodes,
        }
    }

    /// `{"bound": "p/q" | "none", "exhaustive": bool, "witness": certificate | null}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bound": self.bound.as_ref().map(|b| b.to_string()).unwrap_or_else(|| "none".into()),
            "exhaustive": self.exhaustive,
            "nodes": self.nodes,
            "witness": self.witness.as_ref().map(|c| c.to_certificate()),
        })
    }
}
