//! Index coding instances and server capacity maps.
//!
//! An instance lists, for every receiver `i`, the side-information set `A_i`
//! of messages it already knows. The interfering set `B_i` is everything
//! else except `i` itself. Text input uses the `(i|j, k, ...)` notation,
//! either in A-form (listing `A_i`) or B-form (listing `B_i`); `-` marks an
//! empty list.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::InstanceError;
use crate::rational::Rational;
use crate::set::MessageSet;

pub const MAX_MESSAGES: usize = 64;

/// Which set each `(i|...)` entry lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    /// Side information `A_i`.
    A,
    /// Interfering messages `B_i`.
    B,
}

impl FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "a-form" => Ok(Form::A),
            "b" | "b-form" => Ok(Form::B),
            other => Err(format!("unknown form `{other}` (expected `a` or `b`)")),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    n: usize,
    side: Vec<MessageSet>,
    interfering: Vec<MessageSet>,
}

impl Instance {
    /// Builds an instance from 0-based side-information sets.
    pub fn from_side_information(side: Vec<MessageSet>) -> Result<Self, InstanceError> {
        let n = side.len();
        check_size(n)?;
        let full = MessageSet::full(n);
        for (i, a) in side.iter().enumerate() {
            if a.contains(i) {
                return Err(InstanceError::SelfReference {
                    entry: i + 1,
                    index: i + 1,
                });
            }
            if let Some(bad) = a.difference(full).first() {
                return Err(InstanceError::OutOfRange {
                    entry: i + 1,
                    index: bad + 1,
                    n,
                });
            }
        }
        let interfering = side.iter().enumerate().map(|(i, a)| a.with(i).complement(n)).collect();
        Ok(Instance { n, side, interfering })
    }

    /// Builds an instance from 0-based interfering sets; `A_i = [n] \ (B_i ∪ {i})`.
    pub fn from_interfering(interfering: Vec<MessageSet>) -> Result<Self, InstanceError> {
        let n = interfering.len();
        check_size(n)?;
        let full = MessageSet::full(n);
        let mut side = Vec::with_capacity(n);
        for (i, b) in interfering.iter().enumerate() {
            if b.contains(i) {
                return Err(InstanceError::SelfReference {
                    entry: i + 1,
                    index: i + 1,
                });
            }
            if let Some(bad) = b.difference(full).first() {
                return Err(InstanceError::OutOfRange {
                    entry: i + 1,
                    index: bad + 1,
                    n,
                });
            }
            side.push(b.with(i).complement(n));
        }
        Instance::from_side_information(side)
    }

    pub fn parse_text(text: &str, form: Form) -> Result<Self, InstanceError> {
        let sets = parse_entries(text)?;
        match form {
            Form::A => Instance::from_side_information(sets),
            Form::B => Instance::from_interfering(sets),
        }
    }

    /// Renders in the `(i|...)` notation; parses back to an identical instance.
    pub fn render(&self, form: Form) -> String {
        let sets = match form {
            Form::A => &self.side,
            Form::B => &self.interfering,
        };
        sets.iter()
            .enumerate()
            .map(|(i, s)| {
                let body = if s.is_empty() {
                    "-".to_string()
                } else {
                    s.to_one_based()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                format!("({}|{})", i + 1, body)
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn all(&self) -> MessageSet {
        MessageSet::full(self.n)
    }

    /// `A_i`, 0-based.
    #[inline]
    pub fn side(&self, i: usize) -> MessageSet {
        self.side[i]
    }

    /// `B_i`, 0-based.
    #[inline]
    pub fn interfering(&self, i: usize) -> MessageSet {
        self.interfering[i]
    }

    /// `B_i` for a 1-based index `i`.
    pub fn interfering_set(&self, i: usize) -> Result<MessageSet, InstanceError> {
        if i == 0 || i > self.n {
            return Err(InstanceError::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(self.interfering[i - 1])
    }

    /// Whether `x ∈ B_k` (0-based).
    #[inline]
    pub fn interferes(&self, k: usize, x: usize) -> bool {
        self.interfering[k].contains(x)
    }

    /// Whether the side-information graph restricted to `set` has no directed
    /// cycle. The graph has an edge `i -> j` iff `i ∈ A_j`.
    pub fn is_acyclic(&self, set: MessageSet) -> bool {
        let mut remaining = set;
        while !remaining.is_empty() {
            // a vertex that knows nothing else in the remaining set is a source
            match remaining.iter().find(|&v| !self.side[v].intersects(remaining)) {
                Some(v) => remaining.remove(v),
                None => return false,
            }
        }
        true
    }

    /// Orders an acyclic set so that every member's interfering set contains all
    /// earlier members. Returns `None` if the set is not acyclic.
    pub fn interference_order(&self, set: MessageSet) -> Option<Vec<usize>> {
        let mut order = Vec::with_capacity(set.len());
        let mut remaining = set;
        while !remaining.is_empty() {
            // the next element must not be known by any other remaining member
            let v = remaining
                .iter()
                .find(|&v| remaining.without(v).iter().all(|x| !self.side[x].contains(v)))?;
            order.push(v);
            remaining.remove(v);
        }
        Some(order)
    }

    /// A copy with `x` moved from `B_k` into `A_k` (0-based).
    pub fn with_known(&self, k: usize, x: usize) -> Instance {
        let mut side = self.side.clone();
        side[k].insert(x);
        Instance::from_side_information(side).expect("mutation keeps the instance valid")
    }

    /// A copy with `x` removed from `A_k` (0-based).
    pub fn without_known(&self, k: usize, x: usize) -> Instance {
        let mut side = self.side.clone();
        side[k].remove(x);
        Instance::from_side_information(side).expect("mutation keeps the instance valid")
    }

    /// Relabels message `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Instance {
        let mut side = vec![MessageSet::EMPTY; self.n];
        for i in 0..self.n {
            side[perm[i]] = self.side[i].iter().map(|x| perm[x]).collect();
        }
        Instance::from_side_information(side).expect("permutation keeps the instance valid")
    }

    pub fn to_json(&self, form: Form) -> serde_json::Value {
        let sets = match form {
            Form::A => &self.side,
            Form::B => &self.interfering,
        };
        let map: BTreeMap<String, Vec<usize>> = sets
            .iter()
            .enumerate()
            .map(|(i, s)| ((i + 1).to_string(), s.to_one_based()))
            .collect();
        let key = match form {
            Form::A => "A",
            Form::B => "B",
        };
        serde_json::json!({ "n": self.n, key: map })
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let raw: InstanceJson = serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))?;
        let (map, form) = match (raw.a, raw.b) {
            (Some(a), None) => (a, Form::A),
            (None, Some(b)) => (b, Form::B),
            _ => {
                return Err(InstanceError::Json(
                    "exactly one of \"A\" or \"B\" must be present".into(),
                ))
            }
        };
        check_size(raw.n)?;
        let mut sets = vec![None; raw.n];
        for (entry, (key, members)) in map.iter().enumerate() {
            let entry = entry + 1;
            let i: usize = key.trim().parse().map_err(|_| InstanceError::Syntax {
                entry,
                message: format!("key `{key}` is not an index"),
            })?;
            if i == 0 || i > raw.n {
                return Err(InstanceError::OutOfRange {
                    entry,
                    index: i,
                    n: raw.n,
                });
            }
            let mut set = MessageSet::EMPTY;
            for &x in members {
                if x == 0 || x > raw.n {
                    return Err(InstanceError::OutOfRange {
                        entry,
                        index: x,
                        n: raw.n,
                    });
                }
                set.insert(x - 1);
            }
            sets[i - 1] = Some(set);
        }
        // receivers missing from the map have an empty list
        let sets = sets.into_iter().map(|s| s.unwrap_or_default()).collect();
        match form {
            Form::A => Instance::from_side_information(sets),
            Form::B => Instance::from_interfering(sets),
        }
    }

    /// Reads either JSON (leading `{`) or the text notation in the given form.
    pub fn read(text: &str, form: Form) -> Result<Self, InstanceError> {
        if text.trim_start().starts_with('{') {
            Instance::from_json(text)
        } else {
            Instance::parse_text(text, form)
        }
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Instance[{}]", self.render(Form::A))
    }
}

#[derive(Deserialize)]
struct InstanceJson {
    n: usize,
    #[serde(rename = "A")]
    a: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(rename = "B")]
    b: Option<BTreeMap<String, Vec<usize>>>,
}

fn check_size(n: usize) -> Result<(), InstanceError> {
    if n == 0 {
        Err(InstanceError::Empty)
    } else if n > MAX_MESSAGES {
        Err(InstanceError::TooLarge(n))
    } else {
        Ok(())
    }
}

/// Parses `(i|list)` entries into 0-based sets indexed by `i`.
fn parse_entries(text: &str) -> Result<Vec<MessageSet>, InstanceError> {
    let mut raw: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut entry = 0;

    let syntax = |entry: usize, message: String| InstanceError::Syntax { entry, message };

    loop {
        while let Some(&(_, c)) = chars.peek() {
            if c.is_whitespace() || c == ',' {
                chars.next();
            } else {
                break;
            }
        }
        let Some((pos, c)) = chars.next() else { break };
        entry += 1;
        if c != '(' {
            return Err(syntax(entry, format!("expected `(` at byte {pos}, found `{c}`")));
        }
        let body_start = pos + 1;
        let mut body_end = None;
        for (p, c) in chars.by_ref() {
            if c == ')' {
                body_end = Some(p);
                break;
            }
            if c == '(' {
                return Err(syntax(entry, format!("unexpected `(` at byte {p}")));
            }
        }
        let Some(body_end) = body_end else {
            return Err(syntax(entry, "missing `)`".into()));
        };
        let body = &text[body_start..body_end];
        let Some((head, list)) = body.split_once('|') else {
            return Err(syntax(entry, format!("missing `|` in `({body})`")));
        };
        let index: usize = head
            .trim()
            .parse()
            .map_err(|_| syntax(entry, format!("`{}` is not a message index", head.trim())))?;
        let list = list.trim();
        let mut members = Vec::new();
        if list != "-" {
            for tok in list.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let x: usize = tok
                    .parse()
                    .map_err(|_| syntax(entry, format!("`{tok}` is not a message index")))?;
                if members.contains(&x) {
                    return Err(syntax(entry, format!("message {x} repeated in list")));
                }
                members.push(x);
            }
            if members.is_empty() {
                return Err(syntax(entry, "empty list (use `-`)".into()));
            }
        }
        raw.push((entry, index, members));
    }

    let n = raw.len();
    check_size(n)?;
    let mut sets: Vec<Option<MessageSet>> = vec![None; n];
    for (entry, index, members) in raw {
        if index == 0 || index > n {
            return Err(InstanceError::OutOfRange { entry, index, n });
        }
        if sets[index - 1].is_some() {
            return Err(InstanceError::Duplicate { entry, index });
        }
        let mut set = MessageSet::EMPTY;
        for x in members {
            if x == 0 || x > n {
                return Err(InstanceError::OutOfRange { entry, index: x, n });
            }
            if x == index {
                return Err(InstanceError::SelfReference { entry, index });
            }
            set.insert(x - 1);
        }
        sets[index - 1] = Some(set);
    }
    // every slot is filled: n entries, distinct, all in range
    Ok(sets.into_iter().map(|s| s.expect("filled")).collect())
}

/// Link capacities `C_J` for every nonempty server set `J ⊆ [n]`, stored as a
/// default plus sparse overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityMap {
    n: usize,
    default: Rational,
    overrides: BTreeMap<MessageSet, Rational>,
}

impl CapacityMap {
    pub fn new(n: usize, default: Rational) -> Result<Self, InstanceError> {
        check_size(n)?;
        if default.is_negative() {
            return Err(InstanceError::NegativeCapacity(default.to_string()));
        }
        Ok(CapacityMap {
            n,
            default,
            overrides: BTreeMap::new(),
        })
    }

    pub fn uniform(n: usize, capacity: Rational) -> Result<Self, InstanceError> {
        CapacityMap::new(n, capacity)
    }

    /// The single-server setting: `C_[n] = 1`, every other link 0.
    pub fn centralized(n: usize) -> Result<Self, InstanceError> {
        let mut cap = CapacityMap::new(n, Rational::zero())?;
        cap.set(MessageSet::full(n), Rational::one())?;
        Ok(cap)
    }

    /// Overrides `C_J`. Setting the same server twice replaces the value.
    pub fn set(&mut self, servers: MessageSet, capacity: Rational) -> Result<(), InstanceError> {
        if servers.is_empty() {
            return Err(InstanceError::EmptyServer);
        }
        if !servers.is_subset(MessageSet::full(self.n)) {
            let bad = servers.difference(MessageSet::full(self.n)).first().unwrap();
            return Err(InstanceError::IndexOutOfRange {
                index: bad + 1,
                n: self.n,
            });
        }
        if capacity.is_negative() {
            return Err(InstanceError::NegativeCapacity(capacity.to_string()));
        }
        self.overrides.insert(servers, capacity);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn default_capacity(&self) -> &Rational {
        &self.default
    }

    pub fn overrides(&self) -> impl Iterator<Item = (MessageSet, &Rational)> {
        self.overrides.iter().map(|(s, c)| (*s, c))
    }

    /// `C_J`; zero for the empty set.
    pub fn capacity(&self, servers: MessageSet) -> Rational {
        if servers.is_empty() {
            return Rational::zero();
        }
        self.overrides
            .get(&servers)
            .cloned()
            .unwrap_or_else(|| self.default.clone())
    }

    /// `Σ_{J∈N} C_J`, without enumerating servers.
    pub fn total_capacity(&self) -> Rational {
        let count = (BigInt::from(1) << self.n) - 1;
        let mut total = &self.default * Rational::from_bigint(count);
        for c in self.overrides.values() {
            total += c - &self.default;
        }
        total
    }

    /// Every `C_J` multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self, InstanceError> {
        let mut out = CapacityMap::new(self.n, &self.default * factor)?;
        for (s, c) in &self.overrides {
            out.set(*s, c * factor)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let overrides: Vec<_> = self
            .overrides
            .iter()
            .map(|(s, c)| serde_json::json!({ "servers": s.to_one_based(), "capacity": c }))
            .collect();
        serde_json::json!({ "n": self.n, "default": self.default, "overrides": overrides })
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let raw: CapacityJson = serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))?;
        let mut cap = CapacityMap::new(raw.n, raw.default)?;
        for o in raw.overrides {
            let mut set = MessageSet::EMPTY;
            for &x in &o.servers {
                if x == 0 || x > raw.n {
                    return Err(InstanceError::IndexOutOfRange { index: x, n: raw.n });
                }
                set.insert(x - 1);
            }
            if cap.overrides.contains_key(&set) {
                return Err(InstanceError::DuplicateServer(set.to_one_based()));
            }
            cap.set(set, o.capacity)?;
        }
        Ok(cap)
    }
}

#[derive(Deserialize, Serialize)]
struct CapacityJson {
    n: usize,
    default: Rational,
    #[serde(default)]
    overrides: Vec<OverrideJson>,
}

#[derive(Deserialize, Serialize)]
struct OverrideJson {
    servers: Vec<usize>,
    capacity: Rational,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> MessageSet {
        xs.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn parses_the_three_message_example() {
        let inst = Instance::parse_text("(1|-), (2|3), (3|2)", Form::A).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.side(0), MessageSet::EMPTY);
        assert_eq!(inst.side(1), set(&[3]));
        assert_eq!(inst.side(2), set(&[2]));
    }

    #[test]
    fn single_message() {
        let inst = Instance::parse_text("(1|-)", Form::A).unwrap();
        assert_eq!(inst.n(), 1);
        assert!(inst.interfering(0).is_empty());
        assert_eq!(inst.interfering_set(1).unwrap(), MessageSet::EMPTY);
        assert!(inst.interfering_set(2).is_err());
        assert!(inst.interfering_set(0).is_err());
    }

    #[test]
    fn errors_carry_entry_positions() {
        assert_eq!(
            Instance::parse_text("(1|2), (1|-)", Form::A),
            Err(InstanceError::Duplicate { entry: 2, index: 1 })
        );
        assert_eq!(
            Instance::parse_text("(1|3), (2|-)", Form::A),
            Err(InstanceError::OutOfRange {
                entry: 1,
                index: 3,
                n: 2
            })
        );
        assert_eq!(
            Instance::parse_text("(1|-), (2|2)", Form::B),
            Err(InstanceError::SelfReference { entry: 2, index: 2 })
        );
        assert!(matches!(
            Instance::parse_text("(1|-), 2|1)", Form::A),
            Err(InstanceError::Syntax { entry: 2, .. })
        ));
        assert!(matches!(
            Instance::parse_text("(1 -)", Form::A),
            Err(InstanceError::Syntax { entry: 1, .. })
        ));
        assert_eq!(Instance::parse_text("  ", Form::A), Err(InstanceError::Empty));
    }

    #[test]
    fn tolerates_wrapping_and_trailing_commas() {
        let a = Instance::parse_text("(1|2,\n 3,),\n(2|-),\n\t(3|1),", Form::A).unwrap();
        let b = Instance::parse_text("(1|2,3), (2|-), (3|1)", Form::A).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn acyclicity_basics() {
        let inst = Instance::parse_text("(1|2),(2|1)", Form::A).unwrap();
        assert!(!inst.is_acyclic(set(&[1, 2])));
        assert!(inst.is_acyclic(set(&[1])));
        assert!(inst.is_acyclic(MessageSet::EMPTY));
    }

    #[test]
    fn interference_order_puts_unknown_messages_first() {
        let inst = Instance::parse_text("(1|-), (2|1), (3|1,2)", Form::A).unwrap();
        // 3 knows 1 and 2, so 3 must come first; then 2, then 1
        assert_eq!(inst.interference_order(set(&[1, 2, 3])), Some(vec![2, 1, 0]));
        let cyclic = Instance::parse_text("(1|2),(2|1)", Form::A).unwrap();
        assert_eq!(cyclic.interference_order(set(&[1, 2])), None);
    }

    #[test]
    fn json_round_trip_both_forms() {
        let inst = Instance::parse_text("(1|-), (2|3), (3|2)", Form::A).unwrap();
        for form in [Form::A, Form::B] {
            let text = inst.to_json(form).to_string();
            assert_eq!(Instance::from_json(&text).unwrap(), inst);
        }
        assert!(Instance::from_json(r#"{"n": 2, "A": {"1": [3]}}"#).is_err());
        assert!(Instance::from_json(r#"{"n": 2}"#).is_err());
    }

    #[test]
    fn capacity_map_json_and_totals() {
        let text = r#"{"n": 3, "default": "1/2", "overrides": [{"servers": [1,2,3], "capacity": "2"}]}"#;
        let cap = CapacityMap::from_json(text).unwrap();
        assert_eq!(cap.capacity(set(&[1, 2, 3])), Rational::from_integer(2));
        assert_eq!(cap.capacity(set(&[1])), Rational::new(1, 2));
        // 7 servers at 1/2, one bumped to 2
        assert_eq!(cap.total_capacity(), Rational::new(5, 1));
        let back = CapacityMap::from_json(&cap.to_json().to_string()).unwrap();
        assert_eq!(back, cap);

        let dup = r#"{"n": 2, "default": "1", "overrides": [{"servers": [1], "capacity": "0"}, {"servers": [1], "capacity": "1"}]}"#;
        assert!(matches!(
            CapacityMap::from_json(dup),
            Err(InstanceError::DuplicateServer(_))
        ));
        let empty = r#"{"n": 2, "default": "1", "overrides": [{"servers": [], "capacity": "0"}]}"#;
        assert_eq!(CapacityMap::from_json(empty), Err(InstanceError::EmptyServer));
        let neg = r#"{"n": 2, "default": "-1"}"#;
        assert!(matches!(
            CapacityMap::from_json(neg),
            Err(InstanceError::NegativeCapacity(_))
        ));
    }

    #[test]
    fn total_capacity_for_large_n_is_exact() {
        let cap = CapacityMap::uniform(64, Rational::one()).unwrap();
        assert_eq!(cap.total_capacity().to_string(), u64::MAX.to_string());
    }
}
