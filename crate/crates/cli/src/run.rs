use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roa_core::analysis::{growth_rate, l_formula, l_max_formula, maximize_h};
use roa_core::confuse::{confuse, verify_confusion, verify_direct_failure, ConfuseOutcome};
use roa_core::full::{
    binary_word, fooling_report, nfw_witness, subset_count, u_word, v_word, word_equiv, EquivMode, FoolingAlphabet,
};
use roa_core::gamma::{gamma_relations, gen_b, Gadgets};
use roa_core::nbw::{check_w_properties, count_q_rankings, gen_fb, hard_word, l_max, q_rankings, w_word, QRanking};
use roa_core::ngbw::{
    build_acc, certify_conflict_set, check_seg_properties, gen_fb_nk, is_gc_segment, pgcl_count, pgcl_enumerate,
    pgcl_lower_bound, seg_word, CertFailure, Exponents, PgclRanking,
};
use roa_core::rank::{complement_rank, count_tight};
use roa_core::{intersect_empty, lasso_member, Automaton, FiniteWord, LassoRun, LassoWord, Letter, StateSet};
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::format::{automaton_json, parse_automaton, read_file, sha256_hex, symbol_states, write_atomic, WordFile};
use crate::hoa::to_hoa;

/// How a successful invocation ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A candidate or claim was refuted, with a witness.
    Refuted,
}

fn emit(out: &Option<String>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_automaton(a: &Automaton, output: &Output) -> CliResult<()> {
    let text = match output.format {
        OutFormat::Roa => automaton_json(a)?,
        OutFormat::Hoa => to_hoa(a)?,
    };
    emit(&output.out, &text)
}

fn emit_json(out: &Option<String>, v: &Value) -> CliResult<()> {
    emit(out, &(serde_json::to_string_pretty(v).expect("json serializes") + "\n"))
}

fn load_automaton(path: &str) -> CliResult<(Automaton, String)> {
    let src = read_file(path)?;
    Ok((parse_automaton(&src, path)?, sha256_hex(src.as_bytes())))
}

fn load_word(path: &str, a: &Automaton) -> CliResult<(FiniteWord, FiniteWord)> {
    WordFile::parse(&read_file(path)?, path)?.resolve(symbol_states(a), path)
}

fn states(n: usize, v: &[usize]) -> CliResult<StateSet> {
    let mut s = StateSet::new();
    for &q in v {
        if q >= n {
            return Err(CliError::Usage(format!("state {q} out of range for n = {n}")));
        }
        s.insert(q);
    }
    Ok(s)
}

fn word_value(w: &LassoWord) -> Value {
    serde_json::to_value(WordFile::new(&w.prefix, &w.period)).expect("word serializes")
}

fn run_value(r: &LassoRun) -> Value {
    json!({ "stem": r.stem, "cycle": r.cycle })
}

fn certificate(kind: &str, inputs: Value, verdict: &str, witnesses: Vec<Value>, bound: Option<usize>) -> Value {
    json!({
        "format": "roa-cert-v1",
        "kind": kind,
        "inputs": inputs,
        "verdict": verdict,
        "witnesses": witnesses,
        "bound": bound,
    })
}

pub fn dispatch(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Gen(g) => gen(g),
        Command::Word(w) => word(w),
        Command::Check(c) => check(c),
        Command::Complement(Complement::Rank { automaton, tight, output }) => {
            let (a, _) = load_automaton(&automaton)?;
            emit_automaton(&complement_rank(&a, tight)?.automaton, &output)?;
            Ok(Outcome::Success)
        }
        Command::Verify(v) => verify(v),
        Command::Count(c) => count(c),
        Command::Analyze(Analyze::Asymptotic { step, refine, n }) => {
            let p = maximize_h(step, refine)?;
            println!("h={:.6} beta={:.6} gamma={:.6}", p.h, p.beta, p.gamma);
            println!("x={:.6} a={:.6} m={:.6}", p.x, p.a, p.m);
            if let Some(n) = n {
                println!("rate({n})={:.6}", growth_rate(n)?);
            }
            Ok(Outcome::Success)
        }
        Command::Export(Export::Hoa { automaton, output }) => {
            let (a, _) = load_automaton(&automaton)?;
            emit(&output.out, &to_hoa(&a)?)?;
            Ok(Outcome::Success)
        }
    }
}

fn gen(g: Gen) -> CliResult<Outcome> {
    match g {
        Gen::Fa { n, binary, output } => {
            let w = nfw_witness(n)?;
            emit_automaton(if binary { &w.an } else { &w.fa }, &output)?;
        }
        Gen::Fb { n, output } => emit_automaton(&gen_fb(n)?, &output)?,
        Gen::Fbnk { n, k, output } => emit_automaton(&gen_fb_nk(n, k)?, &output)?,
        Gen::B { n, output } => emit_automaton(&gen_b(n)?, &output)?,
        Gen::Gamma { n, output } => {
            if n < 2 {
                return Err(CliError::Usage("gamma needs n >= 2".into()));
            }
            let mut letters = serde_json::Map::new();
            for (name, r) in gamma_relations(n) {
                letters.insert(name.into(), json!(r.pairs().map(|(p, q)| [p, q]).collect::<Vec<_>>()));
            }
            emit_json(&output.out, &json!({ "format": "roa-letters-v1", "states": n, "letters": letters }))?;
        }
    }
    Ok(Outcome::Success)
}

fn word(w: Word) -> CliResult<Outcome> {
    let (file, out) = match w {
        Word::Hard { n, gamma, output } => {
            let hw = hard_word(n)?;
            let period = if gamma { Gadgets::new(n).substitute_all(&hw.symbols) } else { hw.period };
            (WordFile::new(&[], &period), output.out)
        }
        Word::Wfg { n, m, f, g, output } => {
            let m = match m {
                Some(m) => m,
                None => l_max(n)?.0,
            };
            let (f, g) = (QRanking::new(m, f)?, QRanking::new(m, g)?);
            if f.ranks.len() + 1 != n {
                return Err(CliError::Usage(format!("rankings must list {} ranks", n - 1)));
            }
            (WordFile::new(&w_word(&f, &g)?, &[]), output.out)
        }
        Word::Seg { n, k, f, g, output } => {
            let acc = build_acc(n, k)?;
            let r = PgclRanking::new(&acc, f, g)?;
            (WordFile::new(&seg_word(&r, &acc)?, &[]), output.out)
        }
        Word::Fooling { n, t1, t2, binary, output } => {
            let (t1, t2) = (states(n, &t1)?, states(n, &t2)?);
            let mut u = if binary { binary_word(n, &t1) } else { u_word(n, &t1) };
            u.extend(if binary { binary_word(n, &StateSet::full(n).difference(&t2)) } else { v_word(n, &t2) });
            (WordFile::new(&u, &[]), output.out)
        }
    };
    emit(&out, &file.to_json())?;
    Ok(Outcome::Success)
}

fn violations(found: usize, total: usize, what: &str) -> Outcome {
    println!("{what}={total} violations={found}");
    if found == 0 {
        Outcome::Success
    } else {
        Outcome::Refuted
    }
}

fn check(c: Check) -> CliResult<Outcome> {
    match c {
        Check::Member { automaton, word } => {
            let (a, _) = load_automaton(&automaton)?;
            let (u, v) = load_word(&word, &a)?;
            let accepted = if v.is_empty() { a.accepts_finite(&u)? } else { lasso_member(&a, &LassoWord::new(u, v)?)? };
            println!("{}", if accepted { "accepted" } else { "rejected" });
            Ok(Outcome::Success)
        }
        Check::Equiv { automaton, u, v, mode } => {
            let (a, _) = load_automaton(&automaton)?;
            let (wu, pu) = load_word(&u, &a)?;
            let (wv, pv) = load_word(&v, &a)?;
            if !pu.is_empty() || !pv.is_empty() {
                return Err(CliError::Usage("equivalence compares finite words; periods must be empty".into()));
            }
            let mode = match mode {
                Mode::Sim => EquivMode::Sim,
                Mode::Approx => EquivMode::Approx,
            };
            let eq = word_equiv(&a, &wu, &wv, mode)?;
            println!("{}", if eq { "equivalent" } else { "not equivalent" });
            Ok(Outcome::Success)
        }
        Check::SegProps { n, k } => {
            let acc = build_acc(n, k)?;
            let fb = gen_fb_nk(n, k)?;
            let mut bad = 0;
            let mut letters: Vec<Letter> = Vec::new();
            let rs = pgcl_enumerate(&acc);
            for r in &rs {
                let w = seg_word(r, &acc)?;
                if let Some(p) = check_seg_properties(&fb, &acc, r, &w)? {
                    println!("property {p} fails for f={:?} g={:?}", r.f, r.g);
                    bad += 1;
                } else if !is_gc_segment(&fb, &w)? {
                    println!("not a segment: f={:?} g={:?}", r.f, r.g);
                    bad += 1;
                }
                for l in w {
                    if !letters.contains(&l) {
                        letters.push(l);
                    }
                }
            }
            println!("letters={}", letters.len());
            Ok(violations(bad, rs.len(), "rankings"))
        }
        Check::WfgProps { n, m } => {
            let m = match m {
                Some(m) => m,
                None => l_max(n)?.0,
            };
            let fb = gen_fb(n)?;
            let qs = q_rankings(n, m)?;
            let mut bad = 0;
            for f in &qs {
                for g in &qs {
                    if let Some(p) = check_w_properties(&fb, f, g, &w_word(f, g)?)? {
                        println!("property {p} fails for f={:?} g={:?}", f.ranks, g.ranks);
                        bad += 1;
                    }
                }
            }
            Ok(violations(bad, qs.len() * qs.len(), "pairs"))
        }
    }
}

/// All lassos with `|u| + |v| <= max_len` over `letters`.
fn short_lassos(letters: &[Letter], max_len: usize) -> Vec<LassoWord> {
    let mut words: Vec<FiniteWord> = vec![Vec::new()];
    let mut by_len = vec![words.clone()];
    for _ in 0..max_len {
        words = words
            .iter()
            .flat_map(|w| letters.iter().map(move |l| [w.as_slice(), std::slice::from_ref(l)].concat()))
            .collect();
        by_len.push(words.clone());
    }
    let mut out = Vec::new();
    for total in 1..=max_len {
        for plen in 0..total {
            for u in &by_len[plen] {
                for v in &by_len[total - plen] {
                    out.push(LassoWord { prefix: u.clone(), period: v.clone() });
                }
            }
        }
    }
    out
}

fn verify(v: Verify) -> CliResult<Outcome> {
    match v {
        Verify::Complement { automaton, complement, max_len, samples, seed, output } => {
            let (a, ha) = load_automaton(&automaton)?;
            let (c, hc) = load_automaton(&complement)?;
            let letters = a.explicit_alphabet().ok_or(roa_core::Error::NotExplicit)?.letters().to_vec();
            if letters.is_empty() {
                return Err(CliError::Usage("automaton has no letters".into()));
            }
            let mut words = short_lassos(&letters, max_len);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let (p, q) = (rng.gen_range(0..=max_len), rng.gen_range(1..=max_len + 1));
                let mut pick = |len| (0..len).map(|_| letters[rng.gen_range(0..letters.len())].clone()).collect();
                let prefix = pick(p);
                words.push(LassoWord { prefix, period: pick(q) });
            }
            let mut witnesses = Vec::new();
            if !intersect_empty(&a, &c)? {
                witnesses.push(json!({ "reason": "languages intersect" }));
            }
            for w in &words {
                let (x, y) = (lasso_member(&a, w)?, lasso_member(&c, w)?);
                if x == y {
                    witnesses.push(json!({ "word": word_value(w), "in_automaton": x, "in_complement": y }));
                    break;
                }
            }
            let verdict = if witnesses.is_empty() { "certified" } else { "refuted" };
            let inputs = json!({
                "automaton": ha, "complement": hc,
                "max_len": max_len, "samples": samples, "seed": seed, "lassos": words.len(),
            });
            emit_json(&output.out, &certificate("complement-check", inputs, verdict, witnesses, None))?;
            eprintln!("{verdict}: {} lassos checked", words.len());
            Ok(if verdict == "certified" { Outcome::Success } else { Outcome::Refuted })
        }
        Verify::Confuse { n, candidate, output } => {
            let (ca, hash) = load_automaton(&candidate)?;
            let inputs = json!({ "n": n, "candidate": hash });
            let (verified, witness) = match confuse(&ca, n)? {
                ConfuseOutcome::Witness(w) => {
                    let ok = verify_confusion(&ca, n, &w)?;
                    let value = json!({
                        "outcome": "confusion",
                        "i": w.i, "j": w.j, "q_hat": w.q_hat, "t1": w.t1, "t2": w.t2,
                        "q_hats": w.q_hats.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "word": word_value(&w.word),
                        "source_run": run_value(&w.source),
                        "run": run_value(&w.run),
                    });
                    (ok, value)
                }
                ConfuseOutcome::NotApplicable(d) => {
                    let ok = verify_direct_failure(&ca, n, &d)?;
                    (ok, json!({ "outcome": "direct-failure", "word": word_value(&d.word) }))
                }
            };
            if !verified {
                return Err(roa_core::Error::Internal("confusion certificate failed its re-check".into()).into());
            }
            eprintln!("candidate refuted: {}", witness["outcome"].as_str().unwrap_or_default());
            emit_json(&output.out, &certificate("confusion", inputs, "certified", vec![witness], None))?;
            Ok(Outcome::Refuted)
        }
        Verify::Fooling { n, binary, output } => {
            let alphabet = if binary { FoolingAlphabet::Binary } else { FoolingAlphabet::Relations };
            let report = fooling_report(n, alphabet)?;
            let subsets = subset_count(&nfw_witness(n)?.an)?;
            let set = |s: &StateSet| s.iter().collect::<Vec<_>>();
            let witnesses: Vec<Value> = report
                .table
                .iter()
                .filter(|e| e.accepted == e.t1.difference(&e.t2).is_empty())
                .map(|e| json!({ "t1": set(&e.t1), "t2": set(&e.t2), "accepted": e.accepted }))
                .collect();
            let verdict = if report.verdict && subsets == 1 << n { "certified" } else { "refuted" };
            let inputs = json!({ "n": n, "alphabet": if binary { "binary" } else { "relations" }, "subsets": subsets });
            emit_json(&output.out, &certificate("fooling", inputs, verdict, witnesses, Some(1 << n)))?;
            Ok(if verdict == "certified" { Outcome::Success } else { Outcome::Refuted })
        }
        Verify::ConflictSet { n, k, grid, exponents, output } => {
            let grid: Vec<Exponents> = match exponents {
                Some(e) if e.len() == 3 => vec![(e[0], e[1], e[2])],
                Some(_) => return Err(CliError::Usage("--exponents takes k0,k1,k2".into())),
                None => {
                    let mut all = Vec::new();
                    for &a in &grid {
                        for &b in &grid {
                            all.extend(grid.iter().map(|&c| (a, b, c)));
                        }
                    }
                    all
                }
            };
            let acc = build_acc(n, k)?;
            let fb = gen_fb_nk(n, k)?;
            let rs = pgcl_enumerate(&acc);
            let ws = rs.iter().map(|r| seg_word(r, &acc)).collect::<roa_core::Result<Vec<_>>>()?;
            let cert = certify_conflict_set(&fb, &ws, &grid)?;
            let witnesses = match &cert.failure {
                None => Vec::new(),
                Some(CertFailure::NotGcSegment(i)) => vec![json!({ "not_a_segment": i })],
                Some(CertFailure::NoConflict { i, j, exponents }) => {
                    vec![json!({ "no_conflict": [i, j], "exponents": [exponents.0, exponents.1, exponents.2] })]
                }
            };
            let verdict = if cert.bound.is_some() { "certified" } else { "failed" };
            let inputs = json!({
                "n": n, "k": k, "segments": ws.len(),
                "grid": grid.iter().map(|e| [e.0, e.1, e.2]).collect::<Vec<_>>(),
                "applies_to": cert.applies_to(),
            });
            emit_json(&output.out, &certificate("conflict-set", inputs, verdict, witnesses, cert.bound))?;
            Ok(if cert.bound.is_some() { Outcome::Success } else { Outcome::Refuted })
        }
    }
}

fn count(c: Count) -> CliResult<Outcome> {
    match c {
        Count::Qrank { n, m } => {
            let ms: Vec<usize> = match m {
                Some(m) => vec![m],
                None => (1..n).collect(),
            };
            for m in ms {
                println!("m={m} enumerated={} formula={}", count_q_rankings(n, m)?, l_formula(n, m)?);
            }
        }
        Count::Pgcl { n, k } => {
            let acc = build_acc(n, k)?;
            println!("pgcl={} lower_bound={}", pgcl_count(&acc), pgcl_lower_bound(n, k));
        }
        Count::Tight { n, r#final } => {
            for (i, c) in count_tight(n, &states(n, &r#final)?)?.into_iter().enumerate() {
                println!("m={} tight={c}", i + 1);
            }
        }
        Count::L { n } => {
            let (m, l) = l_max_formula(n)?;
            println!("m*={m}, L={l}");
            if n <= 7 && l_max(n)? != (m, l.try_into().unwrap_or(u64::MAX)) {
                return Err(roa_core::Error::Internal("formula and enumeration disagree".into()).into());
            }
        }
    }
    Ok(Outcome::Success)
}
