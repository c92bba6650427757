//! The full generalized Büchi family `FB_{n,k}`, PGCL-rankings, the words
//! `seg_{f,g}`, and conflict-set certification.

use rayon::prelude::*;

use crate::automaton::{Acceptance, Alphabet, Automaton, FiniteWord, LassoWord};
use crate::error::{Error, Result};
use crate::lasso::{accepting_run, lasso_member, verify_lasso_run};
use crate::relation::{Letter, Relation};
use crate::run::{run_search, LassoRun, RunCount};
use crate::set::StateSet;

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// The acceptance sets `F_1..F_k` of `FB_{n,k}`, all inside
/// `S' = {s_0..s_{n-2}}`; `s_nf = s_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardAcc {
    pub n: usize,
    pub sets: Vec<StateSet>,
}

impl StandardAcc {
    pub fn k(&self) -> usize {
        self.sets.len()
    }

    /// `χ_q`: number of sets containing `q`.
    pub fn chi(&self, q: usize) -> usize {
        self.sets.iter().filter(|f| f.contains(q)).count()
    }

    /// `F_i` for `1 ≤ i ≤ k`.
    pub fn set(&self, i: u32) -> &StateSet {
        &self.sets[i as usize - 1]
    }

    /// Checks size, distinctness, the avoidance lower bound and the range
    /// of `k`. Returns a description of the first violation.
    pub fn check(&self) -> std::result::Result<(), String> {
        let (n, k) = (self.n, self.k());
        let h = (n - 1) / 2;
        if k <= 1 || k as u64 > binomial(n - 1, h) {
            return Err(format!("k = {k} outside 1 < k <= C({}, {h})", n - 1));
        }
        let main = StateSet::full(n - 1);
        for (i, f) in self.sets.iter().enumerate() {
            if f.len() != h || !f.is_subset(&main) {
                return Err(format!("F_{} is not a {h}-subset of S'", i + 1));
            }
            if self.sets[..i].contains(f) {
                return Err(format!("F_{} repeats an earlier set", i + 1));
            }
        }
        for q in 0..n - 1 {
            if k - self.chi(q) < k / 2 {
                return Err(format!("s_{q} is avoided by fewer than {} sets", k / 2));
            }
        }
        Ok(())
    }
}

/// The first `k` subsets of size `⌊(n-1)/2⌋` in colexicographic order,
/// repaired until every `|χ_p - χ_q| ≤ 1`.
pub fn build_acc(n: usize, k: usize) -> Result<StandardAcc> {
    if !(2..=64).contains(&n) {
        return Err(Error::OutOfRange(format!("n = {n} outside 2..=64")));
    }
    let h = (n - 1) / 2;
    let limit = binomial(n - 1, h);
    if k <= 1 || k as u64 > limit {
        return Err(Error::OutOfRange(format!("k = {k} outside 1 < k <= {limit}")));
    }
    let mut sets: Vec<StateSet> = Vec::with_capacity(k);
    let mut mask = (1u64 << h) - 1;
    while sets.len() < k {
        sets.push(StateSet::from_mask(mask));
        // next mask with the same popcount
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
    let mut acc = StandardAcc { n, sets };
    let bound = k * (n - 1) * (n - 1) + 1;
    for _ in 0..bound {
        let Some((p, q, i)) = repair_step(&acc) else {
            return Ok(acc);
        };
        acc.sets[i].remove(p);
        acc.sets[i].insert(q);
    }
    Err(Error::Internal("acceptance repair did not converge".into()))
}

fn repair_step(acc: &StandardAcc) -> Option<(usize, usize, usize)> {
    let m = acc.n - 1;
    let chi: Vec<usize> = (0..m).map(|q| acc.chi(q)).collect();
    for p in 0..m {
        for q in 0..m {
            if chi[p] < chi[q] + 2 {
                continue;
            }
            for (i, f) in acc.sets.iter().enumerate() {
                if !f.contains(p) || f.contains(q) {
                    continue;
                }
                let mut g = f.clone();
                g.remove(p);
                g.insert(q);
                if !acc.sets.contains(&g) {
                    return Some((p, q, i));
                }
            }
        }
    }
    None
}

/// `FB_{n,k}`: every state initial, acceptance `build_acc(n, k)`.
pub fn gen_fb_nk(n: usize, k: usize) -> Result<Automaton> {
    let acc = build_acc(n, k)?;
    Automaton::new(n, StateSet::full(n), Alphabet::ImplicitFull, Acceptance::GenBuchi(acc.sets))
}

/// `f` is a bijection `S' → {1..n-1}`, `g` maps `S'` to `{1..k}` with
/// `q ∉ F_{g(q)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PgclRanking {
    pub f: Vec<u32>,
    pub g: Vec<u32>,
}

impl PgclRanking {
    pub fn new(acc: &StandardAcc, f: Vec<u32>, g: Vec<u32>) -> Result<Self> {
        let m = acc.n - 1;
        if f.len() != m || g.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: f.len().max(g.len()) });
        }
        let mut seen = vec![false; m + 1];
        for &r in &f {
            if r == 0 || r as usize > m || std::mem::replace(&mut seen[r as usize], true) {
                return Err(Error::Invalid(format!("f = {f:?} is not a bijection onto 1..={m}")));
            }
        }
        for (q, &i) in g.iter().enumerate() {
            if i == 0 || i as usize > acc.k() || acc.set(i).contains(q) {
                return Err(Error::Invalid(format!("g(s_{q}) = {i} is not allowed")));
            }
        }
        Ok(PgclRanking { f, g })
    }

    /// The state of `S'` with `f`-value `r`.
    pub fn state_of(&self, r: u32) -> usize {
        self.f.iter().position(|&x| x == r).expect("f is a bijection")
    }
}

/// Every PGCL-ranking: `f` in lexicographic permutation order, then `g`
/// lexicographically.
pub fn pgcl_enumerate(acc: &StandardAcc) -> Vec<PgclRanking> {
    let m = acc.n - 1;
    let choices: Vec<Vec<u32>> =
        (0..m).map(|q| (1..=acc.k() as u32).filter(|&i| !acc.set(i).contains(q)).collect()).collect();
    let gs = product(&choices);
    let mut out = Vec::new();
    let mut f: Vec<u32> = (1..=m as u32).collect();
    loop {
        out.extend(gs.iter().map(|g| PgclRanking { f: f.clone(), g: g.clone() }));
        if !next_permutation(&mut f) {
            return out;
        }
    }
}

pub fn pgcl_count(acc: &StandardAcc) -> u64 {
    let m = acc.n - 1;
    let perms: u64 = (1..=m as u64).product();
    (0..m).map(|q| (acc.k() - acc.chi(q)) as u64).product::<u64>() * perms
}

/// `(n-1)! · ⌊k/2⌋^{n-1}`
pub fn pgcl_lower_bound(n: usize, k: usize) -> u64 {
    (1..n as u64).product::<u64>() * ((k / 2) as u64).pow(n as u32 - 1)
}

fn product(choices: &[Vec<u32>]) -> Vec<Vec<u32>> {
    choices.iter().fold(vec![Vec::new()], |acc, c| {
        acc.iter()
            .flat_map(|prefix| {
                c.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `Id(S') ∪ add ∖ remove`
fn edit_letter(n: usize, add: &[(usize, usize)], remove: &[(usize, usize)]) -> Letter {
    let mut r = Relation::identity_on(n, &StateSet::full(n - 1));
    for &(p, q) in add {
        r.insert(p, q).expect("state in range");
    }
    for &(p, q) in remove {
        r.remove(p, q);
    }
    Letter::rel(r)
}

/// `u_{n-1} v_{n-1} u_{n-2} v_{n-2} … v_2 u_1`
pub fn seg_word(r: &PgclRanking, acc: &StandardAcc) -> Result<FiniteWord> {
    let n = acc.n;
    let nf = n - 1;
    let mut w = Vec::new();
    for rank in (1..n as u32).rev() {
        let p = r.state_of(rank);
        let home = acc.set(r.g[p]);
        for i in (1..=acc.k() as u32).filter(|&i| i != r.g[p]) {
            let s = acc
                .set(i)
                .difference(home)
                .iter()
                .next()
                .ok_or_else(|| Error::Internal(format!("F_{i} is contained in F_{}", r.g[p])))?;
            w.push(edit_letter(n, &[(p, s), (s, nf)], &[(p, p), (s, s)]));
            w.push(edit_letter(n, &[(s, p), (nf, s)], &[(p, p), (s, s)]));
        }
        if rank >= 2 {
            let q = r.state_of(rank - 1);
            let s = home.iter().next().ok_or_else(|| Error::Internal("empty acceptance set".into()))?;
            w.push(edit_letter(n, &[(p, s), (s, nf)], &[(s, s)]));
            // when s = q the added edge s → q must survive
            let keep: &[(usize, usize)] = if s == q { &[] } else { &[(s, s)] };
            w.push(edit_letter(n, &[(s, q), (nf, s)], keep));
        }
    }
    Ok(w)
}

/// Checks properties (i)–(iii) of `seg_{f,g}` on `FB_{n,k}` by run
/// counting. Returns the first violated property, if any.
pub fn check_seg_properties(fb: &Automaton, acc: &StandardAcc, r: &PgclRanking, w: &[Letter]) -> Result<Option<u8>> {
    let m = acc.n - 1;
    let none = StateSet::new();
    for p in 0..m {
        for q in 0..m {
            let any = run_search(fb, p, q, w, &[], &none)?.count;
            let (fp, fq) = (r.f[p], r.f[q]);
            if fp < fq {
                if any != RunCount::Zero {
                    return Ok(Some(3));
                }
                continue;
            }
            if any != RunCount::One {
                return Ok(Some(if p == q { 1 } else { 2 }));
            }
            let ok = if p == q {
                let home = acc.set(r.g[p]);
                let others: Vec<StateSet> = acc.sets.iter().filter(|f| *f != home).cloned().collect();
                run_search(fb, p, q, w, &others, home)?.count == RunCount::One
            } else {
                run_search(fb, p, q, w, &acc.sets, &none)?.count == RunCount::One
            };
            if !ok {
                return Ok(Some(if p == q { 1 } else { 2 }));
            }
        }
    }
    Ok(None)
}

/// `w^ω ∉ L(B)`.
pub fn is_gc_segment(b: &Automaton, w: &[Letter]) -> Result<bool> {
    Ok(!lasso_member(b, &LassoWord::new(Vec::new(), w.to_vec())?)?)
}

pub type Exponents = (u32, u32, u32);

/// `{1,2}³`
pub fn default_grid() -> Vec<Exponents> {
    let mut g = Vec::with_capacity(8);
    for k0 in 1..=2 {
        for k1 in 1..=2 {
            for k2 in 1..=2 {
                g.push((k0, k1, k2));
            }
        }
    }
    g
}

fn power(w: &[Letter], k: u32) -> FiniteWord {
    w.iter().cloned().cycle().take(w.len() * k as usize).collect()
}

/// `w1^{k0} (w1^{k1} w2^{k2})^ω`
pub fn conflict_word(w1: &[Letter], w2: &[Letter], (k0, k1, k2): Exponents) -> Result<LassoWord> {
    let mut period = power(w1, k1);
    period.extend(power(w2, k2));
    LassoWord::new(power(w1, k0), period)
}

#[derive(Clone, Debug)]
pub struct GridPoint {
    pub exponents: Exponents,
    /// Accepting run over the grid word, or `None` if it is rejected.
    pub run: Option<LassoRun>,
}

#[derive(Clone, Debug)]
pub struct ConflictResult {
    pub conflict: bool,
    pub evidence: Vec<GridPoint>,
}

/// Membership of every grid word, with accepting runs as evidence.
pub fn conflict_check(b: &Automaton, w1: &[Letter], w2: &[Letter], grid: &[Exponents]) -> Result<ConflictResult> {
    if w1 == w2 {
        return Err(Error::Invalid("conflicting segments must be distinct".into()));
    }
    if grid.iter().any(|&(a, c, d)| a == 0 || c == 0 || d == 0) {
        return Err(Error::Invalid("grid exponents must be positive".into()));
    }
    let mut evidence = Vec::with_capacity(grid.len());
    for &e in grid {
        let word = conflict_word(w1, w2, e)?;
        let run = accepting_run(b, &word)?;
        if let Some(r) = &run {
            if !verify_lasso_run(b, &word, r)? {
                return Err(Error::Internal("accepting run failed verification".into()));
            }
        }
        evidence.push(GridPoint { exponents: e, run });
    }
    Ok(ConflictResult { conflict: evidence.iter().all(|g| g.run.is_some()), evidence })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertFailure {
    NotGcSegment(usize),
    NoConflict { i: usize, j: usize, exponents: Exponents },
}

/// The outcome of checking a candidate conflict set. `bound` is present
/// only when every segment and every ordered pair passed.
#[derive(Clone, Debug)]
pub struct ConflictCertificate {
    pub size: usize,
    pub gc: Vec<bool>,
    /// Ordered pairs `(i, j)` with their conflict verdicts.
    pub pairs: Vec<(usize, usize, bool)>,
    pub grid: Vec<Exponents>,
    pub bound: Option<usize>,
    pub failure: Option<CertFailure>,
}

impl ConflictCertificate {
    /// Automaton classes the bound applies to.
    pub fn applies_to(&self) -> &'static [&'static str] {
        &["NGBW complement", "NSW complement", "DRW for L(B)"]
    }
}

pub fn certify_conflict_set(b: &Automaton, ws: &[FiniteWord], grid: &[Exponents]) -> Result<ConflictCertificate> {
    if ws.is_empty() {
        return Err(Error::Invalid("empty segment set".into()));
    }
    for i in 0..ws.len() {
        if ws[..i].contains(&ws[i]) {
            return Err(Error::Invalid(format!("segment {i} repeats an earlier one")));
        }
    }
    let gc = ws.par_iter().map(|w| is_gc_segment(b, w)).collect::<Result<Vec<bool>>>()?;
    let mut cert = ConflictCertificate {
        size: ws.len(),
        gc: gc.clone(),
        pairs: Vec::new(),
        grid: grid.to_vec(),
        bound: None,
        failure: None,
    };
    if let Some(i) = gc.iter().position(|ok| !ok) {
        cert.failure = Some(CertFailure::NotGcSegment(i));
        return Ok(cert);
    }
    let idx: Vec<(usize, usize)> =
        (0..ws.len()).flat_map(|i| (0..ws.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let results = idx
        .par_iter()
        .map(|&(i, j)| {
            let r = conflict_check(b, &ws[i], &ws[j], grid)?;
            let miss = r.evidence.iter().find(|g| g.run.is_none()).map(|g| g.exponents);
            Ok((i, j, miss))
        })
        .collect::<Result<Vec<_>>>()?;
    for &(i, j, miss) in &results {
        cert.pairs.push((i, j, miss.is_none()));
        if let (Some(e), None) = (miss, &cert.failure) {
            cert.failure = Some(CertFailure::NoConflict { i, j, exponents: e });
        }
    }
    if cert.failure.is_none() {
        cert.bound = Some(ws.len());
    }
    Ok(cert)
}

/// A word of `L(B)` that a candidate complement also accepts.
#[derive(Clone, Debug)]
pub struct Collision {
    pub q_hat: usize,
    pub exponents: Exponents,
    pub word: LassoWord,
    pub run: LassoRun,
}

#[derive(Clone, Debug)]
pub enum CollisionOutcome {
    Counterexample(Box<Collision>),
    NoCollision,
    /// The candidate rejects `w_i^ω` for the given `i ∈ {1, 2}`.
    DirectFailure(u8),
}

/// States an accepting run visits at segment boundaries inside its cycle.
fn boundary_states(run: &LassoRun, l: usize) -> StateSet {
    let s = run.stem_end();
    (s..s + run.cycle_len()).filter(|x| x % l == 0).map(|x| run.state_at(x)).collect()
}

pub fn collision_extract(cb: &Automaton, b: &Automaton, w1: &[Letter], w2: &[Letter]) -> Result<CollisionOutcome> {
    let (l1, l2) = (w1.len(), w2.len());
    let Some(r1) = accepting_run(cb, &LassoWord::new(Vec::new(), w1.to_vec())?)? else {
        return Ok(CollisionOutcome::DirectFailure(1));
    };
    let Some(r2) = accepting_run(cb, &LassoWord::new(Vec::new(), w2.to_vec())?)? else {
        return Ok(CollisionOutcome::DirectFailure(2));
    };
    let Some(q_hat) = boundary_states(&r1, l1).intersection(&boundary_states(&r2, l2)).iter().next() else {
        return Ok(CollisionOutcome::NoCollision);
    };
    let hit = |r: &LassoRun, l: usize| {
        let s = r.stem_end();
        (s..s + r.cycle_len())
            .find(|&x| x % l == 0 && r.state_at(x) == q_hat)
            .map(|x| if x == 0 { r.cycle_len() } else { x })
            .expect("boundary state recurs")
    };
    let (x1, x2) = (hit(&r1, l1), hit(&r2, l2));
    let (c1, c2) = (r1.cycle_len(), r2.cycle_len());
    let exponents = ((x1 / l1) as u32, (c1 / l1) as u32, (c2 / l2) as u32);
    let word = conflict_word(w1, w2, exponents)?;
    let run = LassoRun {
        stem: (0..=x1).map(|x| r1.state_at(x)).collect(),
        cycle: (x1 + 1..=x1 + c1).map(|x| r1.state_at(x)).chain((x2 + 1..=x2 + c2).map(|x| r2.state_at(x))).collect(),
    };
    if !verify_lasso_run(cb, &word, &run)? {
        return Err(Error::Internal("spliced run is not accepting".into()));
    }
    if !lasso_member(b, &word)? {
        return Err(Error::Invalid("segments do not conflict on the extracted word".into()));
    }
    Ok(CollisionOutcome::Counterexample(Box::new(Collision { q_hat, exponents, word, run })))
}

/// Generalized Büchi as Streett: one pair `⟨F_i, S⟩` per set.
pub fn genbuchi_to_streett(b: &Automaton) -> Result<Automaton> {
    let Acceptance::GenBuchi(fs) = b.acceptance() else {
        return Err(Error::WrongAcceptance { expected: "genbuchi", found: b.acceptance().kind().name() });
    };
    let all = StateSet::full(b.states());
    b.with_acceptance(Acceptance::Streett(fs.iter().map(|f| (f.clone(), all.clone())).collect()))
}
