//! Condensed-tableau simplex for `max c·x` subject to `A x ≤ b`, `x ≥ 0`,
//! `b ≥ 0`, generic over exact and floating scalars.
//!
//! Rows marked lazy start inactive and are added as cuts whenever the current
//! optimum violates them; the dual simplex then restores feasibility. Every
//! result is turned into an exact primal/dual pair and checked against all
//! rows before it is returned.

use std::fmt::Debug;

use crate::rational::Rational;

use super::sparse::solve_square;
use super::LpError;

/// One `Σ a_j x_j ≤ rhs` row with integer data.
#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
    pub lazy: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub num_vars: usize,
    pub objective: Vec<(usize, i64)>,
    pub rows: Vec<Row>,
}

/// Optimal primal point and row multipliers, both exact.
#[derive(Debug, Clone)]
pub(crate) struct Certificate {
    pub value: Rational,
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub pivots: u64,
    pub exact_route: bool,
}

pub(crate) trait Scalar: Clone + Debug {
    const EXACT: bool;
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn is_zero(&self) -> bool;
    /// Small enough to drop from tableau arithmetic.
    fn negligible(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn less(&self, o: &Self) -> bool;
    fn magnitude(&self) -> f64;
}

const EPS: f64 = 1e-9;

/// Tableau size below which lazy rows are activated up front.
const EAGER_CELLS: usize = 30_000_000;

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        self.abs() <= EPS
    }
    fn negligible(&self) -> bool {
        self.abs() <= 1e-12
    }
    fn is_pos(&self) -> bool {
        *self > EPS
    }
    fn is_neg(&self) -> bool {
        *self < -EPS
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn less(&self, o: &Self) -> bool {
        *self < o - 1e-12 * (1.0 + o.abs())
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Rational::zero()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }
    fn from_f64(v: f64) -> Self {
        Rational::from_f64(v).unwrap_or_else(Rational::zero)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn negligible(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn less(&self, o: &Self) -> bool {
        self < o
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
}

#[derive(Debug, Clone, Copy)]
enum Loc {
    Row(usize),
    Col(usize),
}

enum Stop {
    Optimal,
    Unbounded,
    Infeasible,
    IterationLimit,
}

/// Labels `0..num_vars` are structural variables; label `num_vars + r` is
/// the slack of tableau row `r`. Row `r` reads
/// `basic[r] = b[r] − Σ_j t[r][j] · nonbasic[j]`, and the objective is
/// `z + Σ_j d[j] · nonbasic[j]`.
struct Tableau<S> {
    nv: usize,
    t: Vec<S>,
    b: Vec<S>,
    /// Right-hand-side perturbation used against degenerate stalling;
    /// updated alongside `b` while `perturbed` is set.
    p: Vec<S>,
    perturbed: bool,
    d: Vec<S>,
    z: S,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    loc: Vec<Loc>,
    /// Problem row behind each tableau row.
    source: Vec<usize>,
    pivots: u64,
    bland: bool,
}

impl<S: Scalar> Tableau<S> {
    fn new(problem: &Problem) -> Self {
        let nv = problem.num_vars;
        let mut d = vec![S::zero(); nv];
        for &(j, c) in &problem.objective {
            d[j] = d[j].add(&S::from_i64(c));
        }
        Tableau {
            nv,
            t: Vec::new(),
            b: Vec::new(),
            p: Vec::new(),
            perturbed: false,
            d,
            z: S::zero(),
            basic: Vec::new(),
            nonbasic: (0..nv).collect(),
            loc: (0..nv).map(Loc::Col).collect(),
            source: Vec::new(),
            pivots: 0,
            bland: S::EXACT,
        }
    }

    fn rows(&self) -> usize {
        self.b.len()
    }

    /// Right-hand side used for pivoting decisions.
    fn rhs(&self, r: usize) -> S {
        if self.perturbed {
            self.b[r].add(&self.p[r])
        } else {
            self.b[r].clone()
        }
    }

    /// Shifts every right-hand side up by a small distinct amount.
    fn perturb(&mut self) {
        let rows = self.rows();
        self.p = (0..rows)
            .map(|r| {
                // deterministic spread in [1, 2) · 1e-6
                let u = ((r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 11) as f64 / (1u64 << 53) as f64;
                S::from_f64(1e-6 * (1.0 + u))
            })
            .collect();
        self.perturbed = true;
    }

    fn at(&self, r: usize, j: usize) -> &S {
        &self.t[r * self.nv + j]
    }

    /// Appends a problem row, rewritten in terms of the current nonbasic
    /// variables. Its slack becomes basic.
    fn add_row(&mut self, problem: &Problem, index: usize) {
        let row = &problem.rows[index];
        let nv = self.nv;
        let mut coef = vec![S::zero(); nv];
        let mut rhs = S::from_i64(row.rhs);
        for &(var, a) in &row.terms {
            let a = S::from_i64(a);
            match self.loc[var] {
                Loc::Col(j) => coef[j] = coef[j].add(&a),
                Loc::Row(i) => {
                    let base = i * nv;
                    for (k, c) in coef.iter_mut().enumerate() {
                        let v = &self.t[base + k];
                        if !v.negligible() {
                            *c = c.sub(&a.mul(v));
                        }
                    }
                    rhs = rhs.sub(&a.mul(&self.b[i]));
                }
            }
        }
        let r = self.rows();
        self.t.extend(coef);
        self.b.push(rhs);
        self.p.push(S::zero());
        let label = nv + r;
        self.basic.push(label);
        debug_assert_eq!(self.loc.len(), label);
        self.loc.push(Loc::Row(r));
        self.source.push(index);
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let nv = self.nv;
        let p = self.at(r, j).clone();
        let one = S::from_i64(1);
        let inv = one.div(&p);
        let base = r * nv;
        let mut nz: Vec<(usize, S)> = Vec::new();
        for k in 0..nv {
            if k == j {
                continue;
            }
            let v = &self.t[base + k];
            if !v.negligible() {
                let scaled = v.mul(&inv);
                self.t[base + k] = scaled.clone();
                nz.push((k, scaled));
            } else if !S::EXACT {
                self.t[base + k] = S::zero();
            }
        }
        self.t[base + j] = inv.clone();
        self.b[r] = self.b[r].mul(&inv);
        let br = self.b[r].clone();
        if self.perturbed {
            self.p[r] = self.p[r].mul(&inv);
        }
        let pr = self.p[r].clone();

        for i in 0..self.rows() {
            if i == r {
                continue;
            }
            let bi = i * nv;
            let f = self.t[bi + j].clone();
            if f.negligible() {
                if !S::EXACT {
                    self.t[bi + j] = S::zero();
                }
                continue;
            }
            for (k, v) in &nz {
                let cell = &mut self.t[bi + k];
                *cell = cell.sub(&f.mul(v));
            }
            self.b[i] = self.b[i].sub(&f.mul(&br));
            if self.perturbed {
                self.p[i] = self.p[i].sub(&f.mul(&pr));
            }
            self.t[bi + j] = S::zero().sub(&f.mul(&inv));
        }
        let f = self.d[j].clone();
        if !f.negligible() {
            for (k, v) in &nz {
                self.d[*k] = self.d[*k].sub(&f.mul(v));
            }
            self.z = self.z.add(&f.mul(&br));
        }
        self.d[j] = S::zero().sub(&f.mul(&inv));

        let entering = self.nonbasic[j];
        let leaving = self.basic[r];
        self.basic[r] = entering;
        self.nonbasic[j] = leaving;
        self.loc[entering] = Loc::Row(r);
        self.loc[leaving] = Loc::Col(j);
        self.pivots += 1;
    }

    fn primal(&mut self, limit: u64) -> Stop {
        let mut degenerate_streak = 0u32;
        loop {
            if self.pivots >= limit {
                return Stop::IterationLimit;
            }
            let enter = if self.bland || S::EXACT {
                (0..self.nv)
                    .filter(|&j| self.d[j].is_pos())
                    .min_by_key(|&j| self.nonbasic[j])
            } else {
                self.steepest()
            };
            let Some(j) = enter else {
                return Stop::Optimal;
            };
            let candidates: Vec<(usize, S, S)> = (0..self.rows())
                .filter(|&r| self.at(r, j).is_pos())
                .map(|r| {
                    let rhs = self.rhs(r);
                    let rhs = if rhs.is_pos() { rhs } else { S::zero() };
                    (r, rhs, self.at(r, j).clone())
                })
                .collect();
            let Some((r, ratio)) = self.choose(&candidates, |r| self.basic[r]) else {
                return Stop::Unbounded;
            };
            if !S::EXACT {
                if ratio.is_zero() {
                    degenerate_streak += 1;
                    self.bland |= degenerate_streak > 50;
                } else {
                    degenerate_streak = 0;
                    self.bland = false;
                }
            }
            self.pivot(r, j);
        }
    }

    /// Entering column with the largest `d_j² / (1 + ‖column j‖²)`.
    fn steepest(&self) -> Option<usize> {
        let mut norms = vec![1.0f64; self.nv];
        for row in self.t.chunks_exact(self.nv) {
            for (n, v) in norms.iter_mut().zip(row) {
                let m = v.magnitude();
                *n += m * m;
            }
        }
        (0..self.nv)
            .filter(|&j| self.d[j].is_pos())
            .map(|j| {
                let d = self.d[j].magnitude();
                (j, d * d / norms[j])
            })
            .fold(None, |best: Option<(usize, f64)>, (j, score)| match best {
                Some((_, s)) if s >= score => best,
                _ => Some((j, score)),
            })
            .map(|(j, _)| j)
    }

    /// Ratio test over `(index, numerator ≥ 0, pivot > 0)`: the smallest
    /// ratio, ties to the smallest label. Floating scalars use a two-pass
    /// test that prefers large pivots among near-minimal ratios.
    fn choose(&self, candidates: &[(usize, S, S)], label: impl Fn(usize) -> usize) -> Option<(usize, S)> {
        if S::EXACT {
            let mut best: Option<(usize, S)> = None;
            for (i, num, a) in candidates {
                let ratio = num.div(a);
                let better = match &best {
                    None => true,
                    Some((q, b)) => ratio.less(b) || !b.less(&ratio) && label(*i) < label(*q),
                };
                if better {
                    best = Some((*i, ratio));
                }
            }
            return best;
        }
        const PIVOT_TOL: f64 = 1e-7;
        const SLACK: f64 = 1e-9;
        let pool: Vec<&(usize, S, S)> = {
            let strong: Vec<_> = candidates.iter().filter(|c| c.2.magnitude() > PIVOT_TOL).collect();
            if strong.is_empty() {
                candidates.iter().collect()
            } else {
                strong
            }
        };
        let bound = pool
            .iter()
            .map(|(_, num, a)| (num.magnitude() + SLACK) / a.magnitude())
            .fold(f64::INFINITY, f64::min);
        let mut best: Option<(usize, f64, f64)> = None;
        for (i, num, a) in pool {
            let ratio = num.magnitude() / a.magnitude();
            if ratio > bound {
                continue;
            }
            let size = a.magnitude();
            let better = match best {
                None => true,
                Some((q, _, _)) if self.bland => label(*i) < label(q),
                Some((q, _, s)) => size > s || size == s && label(*i) < label(q),
            };
            if better {
                best = Some((*i, ratio, size));
            }
        }
        best.map(|(i, ratio, _)| (i, S::from_f64(ratio)))
    }

    fn dual(&mut self, limit: u64) -> Stop {
        let saved = self.bland;
        self.bland = S::EXACT;
        let mut degenerate_streak = 0u32;
        let stop = loop {
            if self.pivots >= limit {
                break Stop::IterationLimit;
            }
            let mut leave: Option<usize> = None;
            for r in 0..self.rows() {
                if !self.b[r].is_neg() {
                    continue;
                }
                leave = match leave {
                    None => Some(r),
                    Some(q) if self.bland => Some(if self.basic[r] < self.basic[q] { r } else { q }),
                    Some(q) => Some(if self.b[r].less(&self.b[q]) { r } else { q }),
                };
            }
            let Some(r) = leave else {
                break Stop::Optimal;
            };
            let candidates: Vec<(usize, S, S)> = (0..self.nv)
                .filter(|&j| self.at(r, j).is_neg())
                .map(|j| {
                    let dj = if self.d[j].is_neg() {
                        S::zero().sub(&self.d[j])
                    } else {
                        S::zero()
                    };
                    (j, dj, S::zero().sub(self.at(r, j)))
                })
                .collect();
            let Some((j, ratio)) = self.choose(&candidates, |j| self.nonbasic[j]) else {
                break Stop::Infeasible;
            };
            if !S::EXACT {
                if ratio.is_zero() {
                    degenerate_streak += 1;
                    self.bland |= degenerate_streak > 50;
                } else {
                    degenerate_streak = 0;
                    self.bland = false;
                }
            }
            self.pivot(r, j);
        };
        self.bland = saved;
        stop
    }

    fn primal_point(&self) -> Vec<S> {
        let mut x = vec![S::zero(); self.nv];
        for (r, &label) in self.basic.iter().enumerate() {
            if label < self.nv {
                x[label] = self.b[r].clone();
            }
        }
        x
    }

    /// Multipliers per tableau row.
    fn duals(&self) -> Vec<S> {
        let mut y = vec![S::zero(); self.rows()];
        for (j, &label) in self.nonbasic.iter().enumerate() {
            if label >= self.nv {
                y[label - self.nv] = S::zero().sub(&self.d[j]);
            }
        }
        y
    }
}

fn row_activity<S: Scalar>(row: &Row, x: &[S]) -> S {
    row.terms
        .iter()
        .fold(S::zero(), |acc, &(j, a)| acc.add(&S::from_i64(a).mul(&x[j])))
}

/// Inactive rows the point violates, most violated first.
fn violated<S: Scalar>(problem: &Problem, active: &[bool], x: &[S], batch: usize) -> Vec<usize> {
    let mut found: Vec<(f64, usize)> = problem
        .rows
        .iter()
        .enumerate()
        .filter(|(i, _)| !active[*i])
        .filter_map(|(i, row)| {
            let excess = row_activity(row, x).sub(&S::from_i64(row.rhs));
            excess.is_pos().then(|| (excess.magnitude(), i))
        })
        .collect();
    found.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    found.truncate(batch);
    found.into_iter().map(|(_, i)| i).collect()
}

fn cut_batch(problem: &Problem) -> usize {
    (problem.num_vars / 2).max(64)
}

/// Runs the cutting-plane loop until no row is violated.
fn optimize<S: Scalar>(
    problem: &Problem,
    tab: &mut Tableau<S>,
    active: &mut [bool],
    limit: u64,
) -> Result<(), LpError> {
    let status = |stop: Stop| match stop {
        Stop::Optimal => Ok(()),
        Stop::Unbounded => Err(LpError::Unbounded),
        Stop::Infeasible => Err(LpError::Infeasible),
        Stop::IterationLimit => Err(LpError::Numerical("iteration limit".into())),
    };
    loop {
        if !S::EXACT {
            tab.perturb();
            status(tab.primal(limit))?;
            tab.perturbed = false;
            status(tab.dual(limit))?;
        }
        status(tab.primal(limit))?;
        let cuts = violated(problem, active, &tab.primal_point(), cut_batch(problem));
        if cuts.is_empty() {
            return Ok(());
        }
        for i in cuts {
            active[i] = true;
            tab.add_row(problem, i);
        }
        status(tab.dual(limit))?;
    }
}

fn start<S: Scalar>(problem: &Problem) -> Result<(Tableau<S>, Vec<bool>), LpError> {
    if problem.rows.iter().any(|r| r.rhs < 0) {
        return Err(LpError::OriginInfeasible);
    }
    let mut tab = Tableau::<S>::new(problem);
    let mut active = vec![false; problem.rows.len()];
    // small enough to hold every row at once
    let eager = problem.rows.len() * problem.num_vars <= EAGER_CELLS;
    for (i, row) in problem.rows.iter().enumerate() {
        if eager || !row.lazy {
            active[i] = true;
            tab.add_row(problem, i);
        }
    }
    Ok((tab, active))
}

fn iteration_limit(problem: &Problem) -> u64 {
    200_000 + 50 * (problem.num_vars + problem.rows.len()) as u64
}

/// Checks `x` and `y` as an optimal pair for the full problem and returns
/// the optimum.
pub(crate) fn check_certificate(problem: &Problem, x: &[Rational], y: &[Rational]) -> Result<Rational, String> {
    if x.len() != problem.num_vars || y.len() != problem.rows.len() {
        return Err("certificate has the wrong shape".into());
    }
    if let Some(j) = x.iter().position(|v| v.is_negative()) {
        return Err(format!("variable {j} is negative"));
    }
    let mut reduced = vec![Rational::zero(); problem.num_vars];
    let mut dual_value = Rational::zero();
    for (i, row) in problem.rows.iter().enumerate() {
        if row_activity(row, x) > Rational::from_integer(row.rhs) {
            return Err(format!("row {i} is violated"));
        }
        if y[i].is_negative() {
            return Err(format!("multiplier of row {i} is negative"));
        }
        if y[i].is_zero() {
            continue;
        }
        for &(j, a) in &row.terms {
            reduced[j] += &y[i] * Rational::from_integer(a);
        }
        dual_value += &y[i] * Rational::from_integer(row.rhs);
    }
    let mut primal_value = Rational::zero();
    for &(j, c) in &problem.objective {
        reduced[j] -= &Rational::from_integer(c);
        primal_value += &x[j] * Rational::from_integer(c);
    }
    if let Some(j) = reduced.iter().position(|v| v.is_negative()) {
        return Err(format!("dual constraint of variable {j} is violated"));
    }
    if primal_value != dual_value {
        return Err(format!("duality gap: {primal_value} vs {dual_value}"));
    }
    Ok(primal_value)
}

fn expand_duals(problem: &Problem, source: &[usize], y_rows: Vec<Rational>) -> Vec<Rational> {
    let mut y = vec![Rational::zero(); problem.rows.len()];
    for (r, v) in y_rows.into_iter().enumerate() {
        y[source[r]] = v;
    }
    y
}

/// Exact vertex of the tableau's final basis: solve the tight rows for the
/// basic structural variables, and the transposed system for the multipliers.
fn exact_vertex(problem: &Problem, tab: &Tableau<f64>) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let nv = problem.num_vars;
    let structural: Vec<usize> = tab.basic.iter().copied().filter(|&l| l < nv).collect();
    let tight: Vec<usize> = tab
        .nonbasic
        .iter()
        .copied()
        .filter(|&l| l >= nv)
        .map(|l| l - nv)
        .collect();
    debug_assert_eq!(structural.len(), tight.len());
    let mut col_of = vec![usize::MAX; nv];
    for (k, &v) in structural.iter().enumerate() {
        col_of[v] = k;
    }
    let k = structural.len();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(k);
    let mut rows_t: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); k];
    let mut rhs = Vec::with_capacity(k);
    for (i, &r) in tight.iter().enumerate() {
        let row = &problem.rows[tab.source[r]];
        let mut entries = Vec::new();
        for &(j, a) in &row.terms {
            if col_of[j] != usize::MAX && a != 0 {
                entries.push((col_of[j], Rational::from_integer(a)));
                rows_t[col_of[j]].push((i, Rational::from_integer(a)));
            }
        }
        rows.push(entries);
        rhs.push(Rational::from_integer(row.rhs));
    }
    let mut c = vec![Rational::zero(); nv];
    for &(j, v) in &problem.objective {
        c[j] += Rational::from_integer(v);
    }
    let xs = solve_square(rows, rhs)?;
    let ys = solve_square(rows_t, structural.iter().map(|&v| c[v].clone()).collect())?;
    let mut x = vec![Rational::zero(); nv];
    for (kk, &v) in structural.iter().enumerate() {
        x[v] = xs[kk].clone();
    }
    let mut y = vec![Rational::zero(); problem.rows.len()];
    for (i, &r) in tight.iter().enumerate() {
        y[tab.source[r]] = ys[i].clone();
    }
    Some((x, y))
}

fn rationalize(values: &[f64]) -> Option<Vec<Rational>> {
    values
        .iter()
        .map(|&v| {
            if v.abs() <= 1e-9 {
                Some(Rational::zero())
            } else {
                Rational::approximate(v, 1_000_000)
            }
        })
        .collect()
}

/// Floating solve, then an exact certificate from the final basis; falls
/// back to the exact solver when no certificate can be built.
pub(crate) fn solve(problem: &Problem) -> Result<Certificate, LpError> {
    let (mut tab, mut active) = start::<f64>(problem)?;
    let limit = iteration_limit(problem);
    for _ in 0..4 {
        match optimize(problem, &mut tab, &mut active, limit) {
            Ok(()) => {}
            Err(LpError::Numerical(_)) | Err(LpError::Infeasible) => break,
            Err(e) => return Err(e),
        }
        let mut candidates = Vec::new();
        if let (Some(x), Some(y)) = (rationalize(&tab.primal_point()), rationalize(&tab.duals())) {
            candidates.push((x, expand_duals(problem, &tab.source, y)));
        }
        if let Some(pair) = exact_vertex(problem, &tab) {
            candidates.push(pair);
        }
        for (x, y) in &candidates {
            if let Ok(value) = check_certificate(problem, x, y) {
                return Ok(Certificate {
                    value,
                    x: x.clone(),
                    y: y.clone(),
                    pivots: tab.pivots,
                    exact_route: false,
                });
            }
        }
        // rows the exact vertex violates but the float check missed
        let Some((x, _)) = candidates.last() else { break };
        let missed = violated(problem, &active, x, cut_batch(problem));
        if missed.is_empty() {
            tab.bland = true;
            continue;
        }
        for i in missed {
            active[i] = true;
            tab.add_row(problem, i);
        }
        if !matches!(tab.dual(limit), Stop::Optimal) {
            break;
        }
    }
    solve_exact(problem)
}

/// Exact simplex with Bland's rule from the slack basis.
pub(crate) fn solve_exact(problem: &Problem) -> Result<Certificate, LpError> {
    let (mut tab, mut active) = start::<Rational>(problem)?;
    optimize(problem, &mut tab, &mut active, u64::MAX)?;
    let x = tab.primal_point();
    let y = expand_duals(problem, &tab.source, tab.duals());
    let value = check_certificate(problem, &x, &y).map_err(LpError::Numerical)?;
    Ok(Certificate {
        value,
        x,
        y,
        pivots: tab.pivots,
        exact_route: true,
    })
}
