//! Polymatroidal linear program over the normalized set function `g(S)`,
//! optionally tightened by instantiated Zhang–Yeung inequalities.
//!
//! Variables are `g(S)` for every nonempty `S ⊆ [n]` (with `g(∅) = 0`) and
//! the rates `R_i`. Constraints: `g(S) ≤ 1`; elemental monotonicity
//! `g([n] \ {i}) ≤ g([n])`; elemental submodularity
//! `g(S ∪ {i, j}) + g(S) ≤ g(S ∪ {i}) + g(S ∪ {j})`; decoding
//! `R_i + g(B) = g(B ∪ {i})` for `B ⊆ B_i`; and `R_i = R_1` for the
//! symmetric objective. All variables are nonnegative.
//!
//! Optima are exact: a floating simplex proposes a vertex and an exact
//! primal/dual certificate is checked against every constraint, with an exact
//! Bland's-rule simplex as the fallback.

mod simplex;
mod sparse;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::instance::Instance;
use crate::rational::Rational;
use crate::set::MessageSet;

use simplex::{Problem, Row};

/// Largest message count the model builder accepts.
pub const MAX_LP_MESSAGES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("n = {0} is too large for the LP oracle (at most {MAX_LP_MESSAGES} messages)")]
    TooLarge(usize),
    #[error("the model is infeasible")]
    Infeasible,
    #[error("the model is unbounded")]
    Unbounded,
    #[error("the model is infeasible at the origin, which the solver does not support")]
    OriginInfeasible,
    #[error("set {set:?} is not a subset of [{n}]")]
    BadSet { set: Vec<usize>, n: usize },
    #[error("coefficient {0} is not representable")]
    Coefficient(String),
    #[error("solver failure: {0}")]
    Numerical(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Maximize `Σ_i R_i`.
    Sum,
    /// Maximize `R_sym` with every `R_i = R_sym`.
    #[serde(rename = "sym")]
    Symmetric,
}

impl std::str::FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sum" => Ok(Objective::Sum),
            "sym" | "symmetric" => Ok(Objective::Symmetric),
            other => Err(format!("unknown objective `{other}` (expected sum or sym)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `g(S)` for a nonempty `S`.
    G(MessageSet),
    /// `R_i`, 0-based.
    R(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::G(s) => {
                let members: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "g({})", members.join(","))
            }
            Var::R(i) => write!(f, "R{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Capacity,
    Monotonicity,
    Submodularity,
    Decoding,
    Symmetry,
    NonShannon,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Capacity => "capacity",
            Family::Monotonicity => "monotonicity",
            Family::Submodularity => "submodularity",
            Family::Decoding => "decoding",
            Family::Symmetry => "symmetry",
            Family::NonShannon => "non_shannon",
        }
    }
}

/// `Σ terms ≥ constant`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearInequality {
    pub terms: BTreeMap<Var, Rational>,
    pub constant: Rational,
}

impl LinearInequality {
    fn add(&mut self, var: Var, coef: Rational) {
        let entry = self.terms.entry(var).or_insert_with(Rational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&var);
        }
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs: Vec<String> = self.terms.iter().map(|(v, c)| format!("{c}·{v}")).collect();
        write!(f, "{} >= {}", lhs.join(" + "), self.constant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub family: Family,
    pub terms: Vec<(Var, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    fn int(family: Family, terms: &[(Var, i64)], relation: Relation, rhs: i64) -> Self {
        Constraint {
            family,
            terms: terms
                .iter()
                .filter(|(_, c)| *c != 0)
                .map(|&(v, c)| (v, Rational::from_integer(c)))
                .collect(),
            relation,
            rhs: Rational::from_integer(rhs),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ModelOptions {
    /// Decoding constraints only for `B = ∅` and `B = B_i`. Faster and
    /// possibly looser.
    pub reduced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMModel {
    n: usize,
    objective: Objective,
    options: ModelOptions,
    interfering: Vec<MessageSet>,
    constraints: Vec<Constraint>,
}

fn g(s: MessageSet) -> Option<Var> {
    (!s.is_empty()).then_some(Var::G(s))
}

/// `c·g(s)` as a term list; empty for `g(∅) = 0`.
fn gterm(s: MessageSet, c: i64) -> Vec<(Var, i64)> {
    g(s).map(|v| vec![(v, c)]).unwrap_or_default()
}

pub fn build_pm_model(inst: &Instance, objective: Objective) -> Result<PMModel, LpError> {
    build_pm_model_with(inst, objective, ModelOptions::default())
}

pub fn build_pm_model_with(inst: &Instance, objective: Objective, options: ModelOptions) -> Result<PMModel, LpError> {
    let n = inst.n();
    if n > MAX_LP_MESSAGES {
        return Err(LpError::TooLarge(n));
    }
    let full = MessageSet::full(n);
    let mut cs = Vec::new();
    for s in full.subsets().skip(1) {
        cs.push(Constraint::int(Family::Capacity, &[(Var::G(s), 1)], Relation::Le, 1));
    }
    for i in 0..n {
        let mut terms = gterm(full.without(i), 1);
        terms.push((Var::G(full), -1));
        cs.push(Constraint::int(Family::Monotonicity, &terms, Relation::Le, 0));
    }
    for i in 0..n {
        for j in i + 1..n {
            let rest = full.without(i).without(j);
            for s in rest.subsets() {
                let mut terms = gterm(s.with(i).with(j), 1);
                terms.extend(gterm(s, 1));
                terms.push((Var::G(s.with(i)), -1));
                terms.push((Var::G(s.with(j)), -1));
                cs.push(Constraint::int(Family::Submodularity, &terms, Relation::Le, 0));
            }
        }
    }
    for i in 0..n {
        let bi = inst.interfering(i);
        for b in bi.subsets() {
            if options.reduced && !(b.is_empty() || b == bi) {
                continue;
            }
            let mut terms = vec![(Var::R(i), 1)];
            terms.extend(gterm(b, 1));
            terms.push((Var::G(b.with(i)), -1));
            cs.push(Constraint::int(Family::Decoding, &terms, Relation::Eq, 0));
        }
    }
    if objective == Objective::Symmetric {
        for i in 1..n {
            cs.push(Constraint::int(
                Family::Symmetry,
                &[(Var::R(i), 1), (Var::R(0), -1)],
                Relation::Eq,
                0,
            ));
        }
    }
    Ok(PMModel {
        n,
        objective,
        options,
        interfering: (0..n).map(|i| inst.interfering(i)).collect(),
        constraints: cs,
    })
}

impl PMModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn options(&self) -> ModelOptions {
        self.options
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// `g(S)` for nonempty `S` in mask order, then `R_1..R_n`.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = MessageSet::full(self.n).subsets().skip(1).map(Var::G).collect();
        vars.extend((0..self.n).map(Var::R));
        vars
    }

    fn var_index(&self, v: Var) -> usize {
        match v {
            Var::G(s) => s.bits() as usize - 1,
            Var::R(i) => (1usize << self.n) - 1 + i,
        }
    }

    fn objective_terms(&self) -> Vec<(Var, i64)> {
        match self.objective {
            Objective::Sum => (0..self.n).map(|i| (Var::R(i), 1)).collect(),
            Objective::Symmetric => vec![(Var::R(0), 1)],
        }
    }

    /// Adds `ineq` as a constraint of the non-Shannon family.
    pub fn add_inequality(&mut self, ineq: &LinearInequality) -> Result<(), LpError> {
        for v in ineq.terms.keys() {
            let ok = match *v {
                Var::G(s) => !s.is_empty() && s.is_subset(MessageSet::full(self.n)),
                Var::R(i) => i < self.n,
            };
            if !ok {
                return Err(LpError::Coefficient(format!("variable {v} is outside the model")));
            }
        }
        self.constraints.push(Constraint {
            family: Family::NonShannon,
            terms: ineq.terms.iter().map(|(v, c)| (*v, c.clone())).collect(),
            relation: Relation::Ge,
            rhs: ineq.constant.clone(),
        });
        Ok(())
    }

    /// Number of constraints per family.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.constraints {
            *counts.entry(c.family.name()).or_insert(0) += 1;
        }
        counts
    }

    /// Decoding rows with `B = ∅` or `B = B_i` are always active in the
    /// solver; the rest are added on demand.
    fn is_extreme_decoding(&self, c: &Constraint) -> bool {
        let Some(i) = c.terms.iter().find_map(|(v, _)| match v {
            Var::R(i) => Some(*i),
            Var::G(_) => None,
        }) else {
            return true;
        };
        let b = c
            .terms
            .iter()
            .find_map(|(v, coef)| match v {
                Var::G(s) if coef.is_positive() => Some(*s),
                _ => None,
            })
            .unwrap_or(MessageSet::EMPTY);
        b.is_empty() || b == self.interfering[i]
    }

    /// Rows `≤` with integer data; returns the rows and, per row, the
    /// constraint it came from and the factor taking the row's multiplier to
    /// the constraint's.
    fn to_problem(&self) -> Result<(Problem, Vec<(usize, Rational)>), LpError> {
        let mut rows = Vec::new();
        let mut origin = Vec::new();
        for (index, c) in self.constraints.iter().enumerate() {
            let mut scale = c.rhs.denom().clone();
            for (_, coef) in &c.terms {
                scale = scale.lcm(coef.denom());
            }
            let scale = Rational::from_bigint(scale);
            let to_int = |r: &Rational| -> Result<i64, LpError> {
                let v = r * &scale;
                v.numer()
                    .to_i64()
                    .filter(|_| v.is_integer())
                    .ok_or_else(|| LpError::Coefficient(r.to_string()))
            };
            let mut terms = Vec::with_capacity(c.terms.len());
            for (v, coef) in &c.terms {
                terms.push((self.var_index(*v), to_int(coef)?));
            }
            let rhs = to_int(&c.rhs)?;
            let lazy = match c.family {
                Family::Submodularity => true,
                Family::Decoding => !self.is_extreme_decoding(c),
                _ => false,
            };
            let negated = || -> Vec<(usize, i64)> { terms.iter().map(|&(j, a)| (j, -a)).collect() };
            if matches!(c.relation, Relation::Le | Relation::Eq) {
                rows.push(Row {
                    terms: terms.clone(),
                    rhs,
                    lazy,
                });
                origin.push((index, scale.clone()));
            }
            if matches!(c.relation, Relation::Ge | Relation::Eq) {
                rows.push(Row {
                    terms: negated(),
                    rhs: -rhs,
                    lazy,
                });
                origin.push((
                    index,
                    if c.relation == Relation::Eq {
                        -&scale
                    } else {
                        scale.clone()
                    },
                ));
            }
        }
        let objective = self
            .objective_terms()
            .into_iter()
            .map(|(v, c)| (self.var_index(v), c))
            .collect();
        Ok((
            Problem {
                num_vars: (1usize << self.n) - 1 + self.n,
                objective,
                rows,
            },
            origin,
        ))
    }

    /// Self-describing JSON for checking the model with an external solver.
    pub fn to_json(&self) -> serde_json::Value {
        let vars: Vec<String> = self.variables().iter().map(Var::to_string).collect();
        let terms_json = |terms: &[(Var, Rational)]| -> serde_json::Value {
            let map: BTreeMap<String, String> = terms.iter().map(|(v, c)| (v.to_string(), c.to_string())).collect();
            serde_json::to_value(map).expect("map serializes")
        };
        let constraints: Vec<serde_json::Value> = self
            .constraints
            .iter()
            .map(|c| {
                serde_json::json!({
                    "family": c.family,
                    "terms": terms_json(&c.terms),
                    "relation": c.relation,
                    "rhs": c.rhs.to_string(),
                })
            })
            .collect();
        let objective: Vec<(Var, Rational)> = self
            .objective_terms()
            .into_iter()
            .map(|(v, c)| (v, Rational::from_integer(c)))
            .collect();
        serde_json::json!({
            "n": self.n,
            "sense": "maximize",
            "objective": terms_json(&objective),
            "variables": vars,
            "bounds": "all variables >= 0",
            "constraints": constraints,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// Nonzero variable values.
    pub primal: Vec<(Var, Rational)>,
    /// Nonzero multipliers by constraint index. Inequalities carry a
    /// nonnegative multiplier; equalities a signed one.
    pub duals: Vec<(usize, Rational)>,
    pub pivots: u64,
    /// True when the exact simplex produced the answer, false when the
    /// floating solve's basis was certified exactly.
    pub exact_route: bool,
}

impl LpSolution {
    /// `{"value", "primal": {var: value}, "duals": [{"constraint", "family", "multiplier"}]}`
    /// with constraint indices into `model.constraints()`.
    pub fn to_json(&self, model: &PMModel) -> serde_json::Value {
        let primal: BTreeMap<String, String> = self
            .primal
            .iter()
            .map(|(v, x)| (v.to_string(), x.to_string()))
            .collect();
        let duals: Vec<serde_json::Value> = self
            .duals
            .iter()
            .map(|(i, y)| {
                serde_json::json!({
                    "constraint": i,
                    "family": model.constraints()[*i].family.name(),
                    "multiplier": y.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "value": self.value.to_string(),
            "primal": primal,
            "duals": duals,
        })
    }
}

fn finish(model: &PMModel, origin: &[(usize, Rational)], cert: simplex::Certificate) -> LpSolution {
    let vars = model.variables();
    let primal = vars.into_iter().zip(cert.x).filter(|(_, v)| !v.is_zero()).collect();
    let mut duals: BTreeMap<usize, Rational> = BTreeMap::new();
    for (row, y) in cert.y.into_iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        let (index, factor) = &origin[row];
        let entry = duals.entry(*index).or_insert_with(Rational::zero);
        *entry += y * factor;
    }
    LpSolution {
        value: cert.value,
        primal,
        duals: duals.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        pivots: cert.pivots,
        exact_route: cert.exact_route,
    }
}

/// Exact optimum with a certified primal/dual pair.
pub fn solve(model: &PMModel) -> Result<LpSolution, LpError> {
    let (problem, origin) = model.to_problem()?;
    let cert = simplex::solve(&problem)?;
    Ok(finish(model, &origin, cert))
}

/// Exact optimum computed entirely in rational arithmetic with Bland's rule.
/// Slower than [`solve`]; useful as an independent route on small models.
pub fn solve_exact(model: &PMModel) -> Result<LpSolution, LpError> {
    let (problem, origin) = model.to_problem()?;
    let cert = simplex::solve_exact(&problem)?;
    Ok(finish(model, &origin, cert))
}

/// The four arguments of a Zhang–Yeung instantiation. Each entry is the
/// missing set `S` of a random variable `(Y_[n], X_{S^c})`.
pub type ZyArguments = [MessageSet; 4];

/// Translates the Zhang–Yeung inequality
/// `3H(A,C) + 3H(A,D) + 3H(C,D) + H(B,C) + H(B,D)
///   ≥ 2H(C) + 2H(D) + H(A,B) + H(A) + H(B,C,D) + 4H(A,C,D)`
/// into `g`/`R` form. A joint entropy of several arguments has the
/// intersection of their missing sets as its missing set `S`, and
/// `H / r = Σ_{i ∉ S} R_i + g(S)`.
pub fn zy_instantiate(sets: ZyArguments, inst: &Instance) -> Result<LinearInequality, LpError> {
    let n = inst.n();
    let full = MessageSet::full(n);
    for s in sets {
        if !s.is_subset(full) {
            return Err(LpError::BadSet {
                set: s.to_one_based(),
                n,
            });
        }
    }
    let [a, b, c, d] = sets;
    let lhs: [(i64, MessageSet); 5] = [
        (3, a.intersection(c)),
        (3, a.intersection(d)),
        (3, c.intersection(d)),
        (1, b.intersection(c)),
        (1, b.intersection(d)),
    ];
    let rhs: [(i64, MessageSet); 6] = [
        (2, c),
        (2, d),
        (1, a.intersection(b)),
        (1, a),
        (1, b.intersection(c).intersection(d)),
        (4, a.intersection(c).intersection(d)),
    ];
    let mut ineq = LinearInequality::default();
    let mut entropy = |coef: i64, missing: MessageSet| {
        let coef = Rational::from_integer(coef);
        if let Some(v) = g(missing) {
            ineq.add(v, coef.clone());
        }
        for i in missing.complement(n) {
            ineq.add(Var::R(i), coef.clone());
        }
    };
    for (k, s) in lhs {
        entropy(k, s);
    }
    for (k, s) in rhs {
        entropy(-k, s);
    }
    Ok(ineq)
}

/// Optimum of the polymatroidal model plus the given instantiations.
pub fn zy_augmented_bound(
    inst: &Instance,
    instantiations: &[ZyArguments],
    objective: Objective,
) -> Result<Rational, LpError> {
    let mut model = build_pm_model(inst, objective)?;
    for &sets in instantiations {
        model.add_inequality(&zy_instantiate(sets, inst)?)?;
    }
    Ok(solve(&model)?.value)
}
