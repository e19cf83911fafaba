//! One PASS/FAIL line per acceptance criterion. Every comparison is exact
//! rational equality or ordering (tolerance 0).

mod common;

use std::time::Instant;

use chainbound::lp::{self, Var};
use chainbound::{
    capacity_sum, cic_bound, dic_bound_disjoint, dic_bound_singleton, mais_bound, min_alignment_chain, search_disjoint,
    search_plain, search_singleton, verify_chain, zy_instantiate, BoundReport, CapacityMap, Chain, MessageSet,
    Objective, Rational, SearchLimits, VerifiedChain,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

fn verified_bound(inst: &chainbound::Instance, chain: &Chain) -> Result<Rational, String> {
    let verified = VerifiedChain::new(inst, chain.clone()).map_err(|e| e.to_string())?;
    Ok(cic_bound(&verified))
}

fn criterion_1() -> Outcome {
    let inst = example1();
    let mais = mais_bound(&inst);
    ensure!(mais.bound == q(1, 3), "mais_bound = {}", mais.bound);
    let (chain, delta) = min_alignment_chain(&inst).ok_or("no alignment chain")?;
    ensure!(delta == 1, "delta = {delta}");
    let plain = verified_bound(&inst, &chain)?;
    ensure!(plain == q(1, 3), "alignment chain bound = {plain}");
    let sw = search_singleton(&inst, SearchLimits::new(3, 2));
    ensure!(sw.bound == Some(q(2, 7)), "search_singleton = {:?}", sw.bound);
    let witness = sw.witness.ok_or("no witness")?;
    ensure!(
        verified_bound(&inst, &witness)? == q(2, 7),
        "witness does not verify to 2/7"
    );
    Ok(format!(
        "mais 1/3, delta 1 (1/3), singleton 2/7 via {}",
        witness.render()
    ))
}

fn criterion_2() -> Outcome {
    let inst = example2();
    let limits = SearchLimits::new(4, 2);
    let mais = mais_bound(&inst).bound;
    ensure!(mais == q(1, 3), "mais_bound = {mais}");
    let sw = search_singleton(&inst, limits).bound;
    ensure!(sw == Some(q(1, 3)), "search_singleton = {sw:?}");
    let dw = search_disjoint(&inst, limits).bound;
    ensure!(dw == Some(q(3, 10)), "search_disjoint = {dw:?}");
    let chain = Chain::from_certificate(&example2_certificate()).map_err(|e| e.to_string())?;
    let bound = verified_bound(&inst, &chain)?;
    ensure!(bound == q(3, 10), "certificate bound = {bound}");
    Ok("mais 1/3, singleton 1/3, disjoint 3/10, certificate 3/10".into())
}

fn criterion_3() -> Outcome {
    let inst = example3();
    let chain = Chain::from_certificate(&example3_certificate()).map_err(|e| e.to_string())?;
    let coverage: Vec<usize> = chain
        .crossing_edges()
        .iter()
        .map(|&j| {
            let (s, t) = chain.towers()[j].coverage();
            t - s + 1
        })
        .collect();
    ensure!(coverage == vec![3, 2], "coverage sizes {coverage:?}");
    let bound = verified_bound(&inst, &chain)?;
    ensure!(bound == q(5, 16), "cic_bound = {bound}");
    let dw = search_disjoint(&inst, SearchLimits::new(6, 2));
    let found = dw.bound.ok_or("search found nothing")?;
    ensure!(found <= q(5, 16), "search_disjoint = {found}");
    Ok(format!("certificate 5/16, search_disjoint {found}"))
}

fn criterion_4() -> Outcome {
    let inst = dic_example();
    let cap = CapacityMap::uniform(5, Rational::one()).map_err(|e| e.to_string())?;
    let chain = Chain::from_certificate(&dic_certificate()).map_err(|e| e.to_string())?;
    let result = dic_bound_singleton(&inst, &cap, &chain).map_err(|e| e.to_string())?;
    ensure!(result.bound == q(54, 5), "bound = {}", result.bound);
    let values: Vec<Rational> = result.terms.iter().map(|t| t.value.clone()).collect();
    ensure!(values == vec![q(26, 1), q(28, 1)], "terms {values:?}");
    for t in &result.terms {
        let brute = brute_capacity_sum(&cap, t.ta, t.tb);
        ensure!(brute == t.value, "enumeration gives {brute} for term {}", t.value);
    }
    Ok("54/5 with terms 26 and 28, both matching 31-server enumeration".into())
}

fn criterion_5() -> Outcome {
    let inst = example5();
    let start = Instant::now();
    let model = lp::build_pm_model(&inst, Objective::Sum).map_err(|e| e.to_string())?;
    let pure = lp::solve(&model).map_err(|e| e.to_string())?.value;
    ensure!(pure == q(19, 6), "PM optimum = {pure}");
    let with_zy = lp::zy_augmented_bound(&inst, &example5_zy(), Objective::Sum).map_err(|e| e.to_string())?;
    ensure!(with_zy == q(25, 8), "ZY optimum = {with_zy}");

    let g = |xs: &[usize]| Var::G(set(xs));
    let expected = [
        // 3g(2,4)+3g(1,4)+3g(3,4)+g(2,3)+g(1,3) ≥ 2g(2,3,4)+2g(1,3,4)+g(1,2)+g(1,2,4)+g(3)+4g(4)
        vec![
            (g(&[2, 4]), 3),
            (g(&[1, 4]), 3),
            (g(&[3, 4]), 3),
            (g(&[2, 3]), 1),
            (g(&[1, 3]), 1),
            (g(&[2, 3, 4]), -2),
            (g(&[1, 3, 4]), -2),
            (g(&[1, 2]), -1),
            (g(&[1, 2, 4]), -1),
            (g(&[3]), -1),
            (g(&[4]), -4),
        ],
        // 3g(2,3)+3g(1,3)+3g(3,4)+g(2,4)+g(1,4) ≥ 2g(2,3,4)+2g(1,3,4)+g(1,2)+g(1,2,3)+g(4)+4g(3)
        vec![
            (g(&[2, 3]), 3),
            (g(&[1, 3]), 3),
            (g(&[3, 4]), 3),
            (g(&[2, 4]), 1),
            (g(&[1, 4]), 1),
            (g(&[2, 3, 4]), -2),
            (g(&[1, 3, 4]), -2),
            (g(&[1, 2]), -1),
            (g(&[1, 2, 3]), -1),
            (g(&[4]), -1),
            (g(&[3]), -4),
        ],
    ];
    for (sets, want) in example5_zy().into_iter().zip(expected) {
        let ineq = zy_instantiate(sets, &inst).map_err(|e| e.to_string())?;
        let want: std::collections::BTreeMap<Var, Rational> =
            want.into_iter().map(|(v, c)| (v, Rational::from_integer(c))).collect();
        ensure!(
            ineq.terms == want && ineq.constant.is_zero(),
            "instantiation gives {ineq}"
        );
    }
    Ok(format!(
        "19/6, 25/8, both instantiations match term for term ({:.1?})",
        start.elapsed()
    ))
}

/// A missing chain bound is the trivial bound 1.
fn value(report: &BoundReport) -> Rational {
    report.bound.clone().unwrap_or_else(Rational::one)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut chains_checked = 0usize;
    for trial in 0..200 {
        let n = rng.gen_range(3..=6);
        let p = rng.gen_range(0.1..0.7);
        let inst = random_instance(&mut rng, n, p);
        let tag = format!("trial {trial} {}", inst.render(chainbound::Form::A));

        // (c)
        let mais = mais_bound(&inst);
        ensure!(
            mais.mais_size == brute_mais(&inst),
            "(c) {tag}: mais {}",
            mais.mais_size
        );

        // (a)
        let limits = SearchLimits::new(n - 1, n).with_budget(u64::MAX);
        let delta = search_plain(&inst);
        let sw = search_singleton(&inst, limits);
        let dw = search_disjoint(&inst, limits);
        ensure!(sw.exhaustive && dw.exhaustive, "(a) {tag}: not exhaustive");
        let (r_delta, r_sw, r_dw) = (value(&delta), value(&sw), value(&dw));
        ensure!(r_dw <= r_sw && r_sw <= r_delta, "(a) {tag}: {r_dw} {r_sw} {r_delta}");
        if delta.bound.is_some() {
            ensure!(r_sw <= mais.bound, "(a) {tag}: R_SW {r_sw} > R_MAIS {}", mais.bound);
        }

        // (b) and (e)
        let model = lp::build_pm_model(&inst, Objective::Symmetric).map_err(|e| e.to_string())?;
        let lp_value = lp::solve(&model).map_err(|e| format!("(b) {tag}: {e}"))?.value;
        ensure!(lp_value <= mais.bound, "(b) {tag}: LP {lp_value} > MAIS");
        let cic = CapacityMap::centralized(n).map_err(|e| e.to_string())?;
        for report in [&delta, &sw, &dw] {
            let Some(chain) = &report.witness else { continue };
            let bound = verified_bound(&inst, chain).map_err(|e| format!("{tag}: {e}"))?;
            ensure!(
                Some(&bound) == report.bound.as_ref(),
                "{tag}: reported bound differs from certificate"
            );
            ensure!(lp_value <= bound, "(b) {tag}: LP {lp_value} > chain {bound}");
            let dic = dic_bound_disjoint(&inst, &cic, chain).map_err(|e| e.to_string())?;
            ensure!(dic.bound == bound, "(e) {tag}: {} vs {bound}", dic.bound);
            chains_checked += 1;
        }
    }

    // (d)
    for trial in 0..200 {
        let n = rng.gen_range(1..=12);
        let full = 1u64 << n;
        let mut cap =
            CapacityMap::uniform(n, q(rng.gen_range(0..5), rng.gen_range(1..4))).map_err(|e| e.to_string())?;
        for _ in 0..rng.gen_range(0..6) {
            cap.set(
                MessageSet(rng.gen_range(1..full)),
                q(rng.gen_range(0..7), rng.gen_range(1..5)),
            )
            .map_err(|e| e.to_string())?;
        }
        let (ta, tb) = (MessageSet(rng.gen_range(0..full)), MessageSet(rng.gen_range(0..full)));
        let fast = capacity_sum(&cap, ta, tb).map_err(|e| e.to_string())?;
        let brute = brute_capacity_sum(&cap, ta, tb);
        ensure!(fast == brute, "(d) trial {trial}: {fast} vs {brute}");
    }
    Ok(format!("200 instances, {chains_checked} chains, 200 capacity sums"))
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    for (name, inst, chain) in example_certificates() {
        let verdict = verify_chain(&inst, &chain).map_err(|e| e.to_string())?;
        ensure!(
            verdict.is_valid(),
            "{name}: certificate invalid: {:?}",
            verdict.violations
        );
        let required = required_memberships(&inst, &chain);
        let survivors = surviving_mutations(&inst, &chain);
        ensure!(survivors.is_empty(), "{name}: mutations left valid: {survivors:?}");
        total += required.len();
    }
    Ok(format!(
        "{total} single-membership mutations over 4 certificates, all rejected"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("Example 1 bounds and witness", criterion_1),
        ("Example 2 searches and certificate", criterion_2),
        ("Example 3 certificate and search", criterion_3),
        ("distributed example bound", criterion_4),
        ("Example 5 LP with and without ZY", criterion_5),
        ("random property suite", criterion_6),
        ("certificate mutations", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [exact, tolerance 0]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [exact, tolerance 0]", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
