//! Every bound on one instance side by side, with the expected ordering
//! between them checked.

use serde_json::{json, Value};

use crate::instance::Instance;
use crate::lp::{self, LpError, Objective, MAX_LP_MESSAGES};
use crate::mais::{mais_bound, MaisResult};
use crate::rational::Rational;
use crate::report::BoundReport;
use crate::search::{min_alignment_chain, search_disjoint, search_singleton, SearchLimits, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareOptions {
    pub limits: SearchLimits,
    /// Solve the symmetric LP when `n` is at most this.
    pub lp_max_n: usize,
}

impl CompareOptions {
    /// `max_m = min(n − 1, 6)` raised to the shortest alignment chain length,
    /// `max_height = max(3, mais_size − 2)`, LP up to 12 messages.
    pub fn defaults(inst: &Instance) -> Self {
        let n = inst.n();
        let delta = min_alignment_chain(inst).map_or(0, |(_, d)| d);
        let mais = mais_bound(inst).mais_size;
        CompareOptions {
            limits: SearchLimits::new(n.saturating_sub(1).min(6).max(delta), 3.max(mais.saturating_sub(2)))
                .with_budget(DEFAULT_NODE_BUDGET),
            lp_max_n: MAX_LP_MESSAGES,
        }
    }
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Solved(Box<lp::LpSolution>, Box<lp::PMModel>),
    Skipped,
    Failed(LpError),
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub mais: MaisResult,
    pub delta: BoundReport,
    pub singleton: BoundReport,
    pub disjoint: BoundReport,
    pub lp: LpOutcome,
    pub limits: SearchLimits,
    /// Broken orderings between the bounds. Nonempty means a bug.
    pub violations: Vec<String>,
}

/// A missing chain bound is the trivial rate bound 1.
fn value(report: &BoundReport) -> Rational {
    report.bound.clone().unwrap_or_else(Rational::one)
}

pub fn compare(inst: &Instance, options: CompareOptions) -> Comparison {
    let mais = mais_bound(inst);
    let delta = crate::search::search_plain(inst);
    let singleton = search_singleton(inst, options.limits);
    let disjoint = search_disjoint(inst, options.limits);
    let lp = if inst.n() <= options.lp_max_n {
        match lp::build_pm_model(inst, Objective::Symmetric).and_then(|m| lp::solve(&m).map(|s| (s, m))) {
            Ok((solution, model)) => LpOutcome::Solved(Box::new(solution), Box::new(model)),
            Err(e) => LpOutcome::Failed(e),
        }
    } else {
        LpOutcome::Skipped
    };

    let (r_mais, r_delta, r_sw, r_dw) = (mais.bound.clone(), value(&delta), value(&singleton), value(&disjoint));
    let mut violations = Vec::new();
    let mut expect = |ok: bool, what: &str, a: &Rational, b: &Rational| {
        if !ok {
            violations.push(format!("{what} fails: {a} vs {b}"));
        }
    };
    expect(r_dw <= r_sw, "R_DW <= R_SW", &r_dw, &r_sw);
    expect(r_sw <= r_delta, "R_SW <= R_Delta", &r_sw, &r_delta);
    if delta.bound.is_some() {
        expect(r_sw <= r_mais, "R_SW <= R_MAIS", &r_sw, &r_mais);
    }
    if let LpOutcome::Solved(solution, _) = &lp {
        expect(solution.value <= r_dw, "LP <= R_DW", &solution.value, &r_dw);
        expect(solution.value <= r_mais, "LP <= R_MAIS", &solution.value, &r_mais);
    }
    Comparison {
        mais,
        delta,
        singleton,
        disjoint,
        lp,
        limits: options.limits,
        violations,
    }
}

impl Comparison {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let chain = |report: &BoundReport| {
            json!({
                "bound": value(report).to_string(),
                "exhaustive": report.exhaustive,
                "witness": report.witness.as_ref().map(|c| c.to_certificate()),
            })
        };
        let lp = match &self.lp {
            LpOutcome::Solved(solution, model) => {
                let mut v = solution.to_json(model);
                v["bound"] = json!(solution.value.to_string());
                v
            }
            LpOutcome::Skipped => json!({"bound": null, "skipped": true}),
            LpOutcome::Failed(e) => json!({"bound": null, "error": e.to_string()}),
        };
        json!({
            "R_MAIS": serde_json::to_value(&self.mais).expect("serializable"),
            "R_Delta": chain(&self.delta),
            "R_SW": chain(&self.singleton),
            "R_DW": chain(&self.disjoint),
            "LP": lp,
            "limits": {
                "max_m": self.limits.max_m,
                "max_height": self.limits.max_height,
                "node_budget": self.limits.node_budget,
            },
            "violations": self.violations,
        })
    }

    /// One line per bound.
    pub fn render(&self) -> String {
        let chain = |name: &str, report: &BoundReport| {
            let witness = report.witness.as_ref().map_or("no chain".to_string(), |c| c.render());
            let note = if report.exhaustive { "" } else { " (budget exhausted)" };
            format!("{name:<8}{}  {witness}{note}\n", value(report))
        };
        let mut out = format!(
            "R_MAIS  {}  acyclic set {:?}\n",
            self.mais.bound,
            self.mais.witness.to_one_based()
        );
        out += &chain("R_Delta", &self.delta);
        out += &chain("R_SW", &self.singleton);
        out += &chain("R_DW", &self.disjoint);
        out += &match &self.lp {
            LpOutcome::Solved(solution, _) => format!("LP      {}\n", solution.value),
            LpOutcome::Skipped => "LP      skipped\n".to_string(),
            LpOutcome::Failed(e) => format!("LP      failed: {e}\n"),
        };
        for v in &self.violations {
            out += &format!("violation: {v}\n");
        }
        out
    }
}
