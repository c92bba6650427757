//! One line per acceptance criterion, with pinned tolerances and runtime
//! limits. Run with `cargo test -p roa-core --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roa_core::analysis::{growth_rate, l_formula, l_max_formula, maximize_h};
use roa_core::confuse::*;
use roa_core::full::{fooling_report, nfw_witness, subset_count, FoolingAlphabet};
use roa_core::gamma::{gamma, gen_b, Gadgets};
use roa_core::nbw::*;
use roa_core::ngbw::*;
use roa_core::rank::complement_rank;
use roa_core::*;

const H_TARGET: f64 = 0.7645;
const H_TOL: f64 = 1e-3;
const POINT: (f64, f64) = (0.7236, 0.5744);
const POINT_TOL: f64 = 1e-2;
const RATE_TOL: f64 = 0.05;

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Option<u64>) -> std::result::Result<(), String> {
    match limit {
        Some(s) if elapsed > Duration::from_secs(s) => Err(format!("took {elapsed:.2?}, limit {s} s")),
        _ => Ok(()),
    }
}

fn counting() -> Outcome {
    for (n, want) in [(2, 1u64), (3, 3), (4, 18)] {
        let (_, by_enum) = l_max(n).map_err(|e| e.to_string())?;
        let (_, by_formula) = l_max_formula(n).map_err(|e| e.to_string())?;
        ensure(by_enum == want, format!("L({n}) by enumeration = {by_enum}"))?;
        ensure(by_formula == BigUint::from(want), format!("L({n}) by formula = {by_formula}"))?;
    }
    for n in 2..=7 {
        for m in 1..n {
            let e = count_q_rankings(n, m).map_err(|e| e.to_string())?;
            let f = l_formula(n, m).map_err(|e| e.to_string())?;
            ensure(f == BigUint::from(e), format!("L({n},{m}): formula {f} vs enumeration {e}"))?;
        }
    }
    Ok("L(2)=1, L(3)=3, L(4)=18; formula = enumeration for n <= 7".into())
}

fn asymptotics() -> Outcome {
    let p = maximize_h(1e-3, 3).map_err(|e| e.to_string())?;
    ensure((p.h - H_TARGET).abs() <= H_TOL, format!("max h = {:.6}", p.h))?;
    ensure(
        (p.beta - POINT.0).abs() <= POINT_TOL && (p.gamma - POINT.1).abs() <= POINT_TOL,
        format!("maximizer ({:.4}, {:.4})", p.beta, p.gamma),
    )?;
    let r = growth_rate(128).map_err(|e| e.to_string())?;
    ensure((r - H_TARGET).abs() <= RATE_TOL, format!("L(128)^(1/128)/128 = {r:.5}"))?;
    Ok(format!("h = {:.5} at ({:.4}, {:.4}); L(128)^(1/128)/128 = {r:.5}", p.h, p.beta, p.gamma))
}

fn w_properties() -> Outcome {
    let mut counts = Vec::new();
    for (n, pairs) in [(3, 9), (4, 324)] {
        let fb = gen_fb(n).map_err(|e| e.to_string())?;
        let (m, _) = l_max(n).map_err(|e| e.to_string())?;
        let qs = q_rankings(n, m).map_err(|e| e.to_string())?;
        let mut checked = 0;
        for f in &qs {
            for g in &qs {
                let w = w_word(f, g).map_err(|e| e.to_string())?;
                let bad = check_w_properties(&fb, f, g, &w).map_err(|e| e.to_string())?;
                ensure(bad.is_none(), format!("n={n}: property {bad:?} fails for {f:?}, {g:?}"))?;
                checked += 1;
            }
        }
        ensure(checked == pairs, format!("n={n}: {checked} pairs, expected {pairs}"))?;
        counts.push(checked);
    }
    Ok(format!("properties (i)-(iii) hold on {} + {} pairs", counts[0], counts[1]))
}

fn hard_word_rejection() -> Outcome {
    let mut lens = Vec::new();
    for n in 2..=4 {
        let hw = hard_word(n).map_err(|e| e.to_string())?;
        let fb = gen_fb(n).map_err(|e| e.to_string())?;
        ensure(!lasso_member(&fb, &hw.lasso()).map_err(|e| e.to_string())?, format!("FB_{n} accepts α_{n}"))?;
        ensure(gamma(n).len() == 7, "|Γ| != 7")?;
        let period = Gadgets::new(n).substitute_all(&hw.symbols);
        let len = period.len();
        let w = LassoWord::new(vec![], period).map_err(|e| e.to_string())?;
        let b = gen_b(n).map_err(|e| e.to_string())?;
        ensure(!lasso_member(&b, &w).map_err(|e| e.to_string())?, format!("B_{n} accepts the Γ period"))?;
        lens.push((hw.period.len(), len));
    }
    Ok(format!("rejected for n = 2, 3, 4; period lengths (full, Γ) = {lens:?}"))
}

fn confuser() -> Outcome {
    let hw = hard_word(3).map_err(|e| e.to_string())?;
    let letters = period_letters(&hw);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut witnesses, mut direct, mut runs) = (0, 0, 0);
    while (witnesses < 20 || direct < 5) && runs < 2000 {
        let states = rng.gen_range(1..hw.len());
        let entries = letters.iter().map(|l| (l.clone(), random_relation(&mut rng, states, 0.6))).collect();
        let f = random_set(&mut rng, states, 0.5);
        let ca = Automaton::explicit(states, StateSet::singleton(0), entries, Acceptance::Buchi(f))
            .map_err(|e| e.to_string())?;
        runs += 1;
        match confuse_with(&ca, &hw).map_err(|e| format!("run {runs}: {e}"))? {
            ConfuseOutcome::Witness(w) => {
                ensure(verify_confusion(&ca, 3, &w).map_err(|e| e.to_string())?, format!("run {runs}: witness fails"))?;
                witnesses += 1;
            }
            ConfuseOutcome::NotApplicable(d) => {
                let ok = verify_direct_failure(&ca, 3, &d).map_err(|e| e.to_string())?;
                ensure(ok, format!("run {runs}: direct failure does not verify"))?;
                direct += 1;
            }
        }
    }
    ensure(witnesses >= 20, format!("only {witnesses} accepting candidates in {runs} runs"))?;
    Ok(format!("{runs} candidates: {witnesses} verified witnesses, {direct} verified direct failures"))
}

fn rank_complement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let words: Vec<Vec<LassoWord>> = (1..=3).map(|k| distinct_lassos(&letters(k), 6)).collect();
    let mut checks = 0usize;
    for i in 0..100 {
        let (n, k) = (1 + i % 4, 1 + (i / 4) % 3);
        let a = random_buchi(&mut rng, n, k);
        for tight in [false, true] {
            let c = complement_rank(&a, tight).map_err(|e| e.to_string())?;
            let disjoint = intersect_empty(&a, &c.automaton).map_err(|e| e.to_string())?;
            ensure(disjoint, format!("automaton {i} (tight={tight}): intersection non-empty"))?;
            for w in &words[k - 1] {
                let inside = buchi_oracle(&a, w);
                let outside = lasso_member(&c.automaton, w).map_err(|e| e.to_string())?;
                ensure(inside != outside, format!("automaton {i} (tight={tight}): XOR fails on {w:?}"))?;
                checks += 1;
            }
        }
    }
    let mut sizes = Vec::new();
    for n in 2..=3 {
        let c = complement_rank(&gen_b(n).map_err(|e| e.to_string())?, true).map_err(|e| e.to_string())?;
        let (_, l) = l_max(n).map_err(|e| e.to_string())?;
        ensure(c.automaton.states() as u64 >= l, format!("complement of B_{n} has fewer than L({n}) states"))?;
        sizes.push(c.automaton.states());
    }
    Ok(format!("200 complements, {checks} XOR checks; |complement of B_2|, |B_3| = {sizes:?}"))
}

fn nfw_fooling() -> Outcome {
    for n in 1..=6 {
        for alphabet in [FoolingAlphabet::Relations, FoolingAlphabet::Binary] {
            let r = fooling_report(n, alphabet).map_err(|e| e.to_string())?;
            ensure(r.verdict, format!("n={n} {alphabet:?}: pattern fails"))?;
            ensure(r.table.len() == 1 << (2 * n), format!("n={n}: table incomplete"))?;
            ensure(r.table.iter().all(|e| e.t1 != e.t2 || !e.accepted), format!("n={n}: u_T v_T accepted"))?;
        }
    }
    for n in 1..=10 {
        let count = subset_count(&nfw_witness(n).map_err(|e| e.to_string())?.an).map_err(|e| e.to_string())?;
        ensure(count == 1 << n, format!("A_{n}: {count} subsets"))?;
    }
    Ok("fooling pattern holds for n <= 6 on both alphabets; 2^n subsets for n <= 10".into())
}

fn ngbw_certification() -> Outcome {
    let mut bounds = Vec::new();
    for (n, k) in [(3, 2), (4, 2), (4, 3)] {
        let acc = build_acc(n, k).map_err(|e| e.to_string())?;
        acc.check().map_err(|e| format!("({n},{k}): {e}"))?;
        let fb = gen_fb_nk(n, k).map_err(|e| e.to_string())?;
        let rs = pgcl_enumerate(&acc);
        let mut ws = Vec::with_capacity(rs.len());
        for r in &rs {
            let w = seg_word(r, &acc).map_err(|e| e.to_string())?;
            let bad = check_seg_properties(&fb, &acc, r, &w).map_err(|e| e.to_string())?;
            ensure(bad.is_none(), format!("({n},{k}): seg property {bad:?} fails for {r:?}"))?;
            ws.push(w);
        }
        let cert = certify_conflict_set(&fb, &ws, &default_grid()).map_err(|e| e.to_string())?;
        ensure(cert.failure.is_none(), format!("({n},{k}): {:?}", cert.failure))?;
        let count = pgcl_count(&acc);
        ensure(cert.bound == Some(count as usize), format!("({n},{k}): bound {:?} vs count {count}", cert.bound))?;
        let lower = pgcl_lower_bound(n, k);
        ensure(count >= lower, format!("({n},{k}): count {count} below {lower}"))?;
        bounds.push(format!("({n},{k}) -> {count} >= {lower}"));
    }
    Ok(format!("grid-checked bounds {}", bounds.join(", ")))
}

#[test]
fn acceptance_criteria() {
    type Criterion = (u32, &'static str, fn() -> Outcome, Option<u64>);
    let criteria: Vec<Criterion> = vec![
        (1, "ranking counts", counting, Some(5)),
        (2, "asymptotic constant", asymptotics, Some(30)),
        (3, "w_{f,g} properties", w_properties, Some(60)),
        (4, "hard-word rejection", hard_word_rejection, Some(120)),
        (5, "confuser", confuser, None),
        (6, "rank complement", rank_complement, None),
        (7, "NFW fooling set", nfw_fooling, None),
        (8, "NGBW conflict sets", ngbw_certification, Some(600)),
    ];
    let mut failed = Vec::new();
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|m| within(elapsed, limit).map(|_| m));
        match &result {
            Ok(m) => println!("PASS criterion {id} ({name}) [{elapsed:.2?}]: {m}"),
            Err(m) => {
                println!("FAIL criterion {id} ({name}) [{elapsed:.2?}]: {m}");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("PASS criterion 9 (headline bounds): covered by the constructive checks of criteria 1-8");
    } else {
        println!("FAIL criterion 9 (headline bounds): depends on failed criteria {failed:?}");
        failed.push(9);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
