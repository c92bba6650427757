//! The full Büchi family `FB_n`, Q(m)-rankings, the words `w_{f,g}` and
//! the hard lasso `α_n`.

use crate::automaton::{Acceptance, Alphabet, Automaton, FiniteWord, LassoWord};
use crate::error::{Error, Result};
use crate::profile::transition_profile;
use crate::relation::{Letter, Relation};
use crate::set::StateSet;

/// `FB_n`: main states `s_0..s_{n-2}` (all initial) and the final state
/// `s_f = s_{n-1}`.
pub fn gen_fb(n: usize) -> Result<Automaton> {
    if n < 2 {
        return Err(Error::OutOfRange("FB_n needs n > 1".into()));
    }
    let main = StateSet::full(n - 1);
    Automaton::new(n, main, Alphabet::ImplicitFull, Acceptance::Buchi(StateSet::singleton(n - 1)))
}

/// A tight level ranking total on the main states of `FB_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QRanking {
    pub m: usize,
    /// `ranks[i]` is the rank of `s_i`, for `i < n-1`.
    pub ranks: Vec<u32>,
}

impl QRanking {
    pub fn new(m: usize, ranks: Vec<u32>) -> Result<Self> {
        if m == 0 || !is_q_ranking(m, &ranks) {
            return Err(Error::Invalid(format!("{ranks:?} is not a Q({m})-ranking")));
        }
        Ok(QRanking { m, ranks })
    }

    /// `Rank_h(r)`
    pub fn rank_set(&self, r: u32) -> StateSet {
        (0..self.ranks.len()).filter(|&q| self.ranks[q] == r).collect()
    }

    /// Attained ranks in descending order.
    pub fn attained_desc(&self) -> Vec<u32> {
        let mut rs = self.ranks.clone();
        rs.sort_unstable_by(|a, b| b.cmp(a));
        rs.dedup();
        rs
    }
}

fn is_q_ranking(m: usize, ranks: &[u32]) -> bool {
    let top = 2 * m as u32 - 1;
    let mut odd = 0u64;
    for &r in ranks {
        if r > top {
            return false;
        }
        if r % 2 == 1 {
            odd |= 1 << (r / 2);
        }
    }
    odd.count_ones() as usize == m
}

fn check_range(n: usize, m: usize) -> Result<()> {
    if n < 2 || m == 0 || m >= n || n > 16 {
        return Err(Error::OutOfRange(format!("need n in 2..=16 and 1 <= m < n, got n={n}, m={m}")));
    }
    Ok(())
}

/// Every Q(m)-ranking of `FB_n`, lexicographic in the rank vector.
pub fn q_rankings(n: usize, m: usize) -> Result<Vec<QRanking>> {
    check_range(n, m)?;
    let mut out = Vec::new();
    for_each_vector(n - 1, 2 * m as u32, |v| {
        if is_q_ranking(m, v) {
            out.push(QRanking { m, ranks: v.to_vec() });
        }
    });
    Ok(out)
}

/// `L(n, m)` by enumeration, without materializing the rankings.
pub fn count_q_rankings(n: usize, m: usize) -> Result<u64> {
    check_range(n, m)?;
    let mut count = 0;
    for_each_vector(n - 1, 2 * m as u32, |v| {
        if is_q_ranking(m, v) {
            count += 1;
        }
    });
    Ok(count)
}

/// Calls `f` on every vector in `[0, base)^len`, lexicographically.
fn for_each_vector(len: usize, base: u32, mut f: impl FnMut(&[u32])) {
    let mut v = vec![0u32; len];
    loop {
        f(&v);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < base {
                break;
            }
            v[i] = 0;
        }
    }
}

/// `(m*, L(n))`: the smallest `m` maximizing `L(n, m)`.
pub fn l_max(n: usize) -> Result<(usize, u64)> {
    let mut best = (0, 0);
    for m in 1..n {
        let c = count_q_rankings(n, m)?;
        if c > best.1 {
            best = (m, c);
        }
    }
    Ok(best)
}

/// `Id(S') ∪ {(q, s_f) : q ∈ T}`
pub fn t_to_f(n: usize, t: &StateSet) -> Relation {
    let mut r = Relation::identity_on(n, &StateSet::full(n - 1));
    for q in t.iter() {
        r.insert(q, n - 1).expect("state in range");
    }
    r
}

/// `Id(S') ∪ {(s_f, q) : q ∈ T}`
pub fn f_to_t(n: usize, t: &StateSet) -> Relation {
    let mut r = Relation::identity_on(n, &StateSet::full(n - 1));
    for q in t.iter() {
        r.insert(n - 1, q).expect("state in range");
    }
    r
}

/// `c(f,g) = {(p, q) : f(p) = g(q) odd}`
pub fn c_letter(n: usize, f: &QRanking, g: &QRanking) -> Relation {
    let pairs = (0..n - 1)
        .flat_map(|p| (0..n - 1).map(move |q| (p, q)))
        .filter(|&(p, q)| f.ranks[p] == g.ranks[q] && f.ranks[p] % 2 == 1);
    Relation::from_pairs(n, pairs).expect("states in range")
}

/// The letters `w_{f,g}` is built from, kept symbolic so that they can be
/// rewritten over other alphabets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessLetter {
    TtoF(StateSet),
    FtoT(StateSet),
    C(QRanking, QRanking),
}

impl WitnessLetter {
    pub fn relation(&self, n: usize) -> Relation {
        match self {
            WitnessLetter::TtoF(t) => t_to_f(n, t),
            WitnessLetter::FtoT(t) => f_to_t(n, t),
            WitnessLetter::C(f, g) => c_letter(n, f, g),
        }
    }

    pub fn letter(&self, n: usize) -> Letter {
        Letter::rel(self.relation(n))
    }
}

/// `u_h = d(h, r_1, r_2) · … · d(h, r_{k-1}, r_k)` over descending ranks.
fn u_h(h: &QRanking) -> Vec<WitnessLetter> {
    let ranks = h.attained_desc();
    ranks
        .windows(2)
        .flat_map(|w| [WitnessLetter::TtoF(h.rank_set(w[0])), WitnessLetter::FtoT(h.rank_set(w[1]))])
        .collect()
}

/// `w_{f,g} = u_f · c(f,g) · u_g`, symbolically.
pub fn w_symbolic(f: &QRanking, g: &QRanking) -> Result<Vec<WitnessLetter>> {
    if f.m != g.m || f.ranks.len() != g.ranks.len() {
        return Err(Error::Invalid("rankings differ in m or state count".into()));
    }
    let mut w = u_h(f);
    w.push(WitnessLetter::C(f.clone(), g.clone()));
    w.extend(u_h(g));
    Ok(w)
}

/// `w_{f,g}` as a word over `FB_n`'s letters.
pub fn w_word(f: &QRanking, g: &QRanking) -> Result<FiniteWord> {
    let n = f.ranks.len() + 1;
    Ok(w_symbolic(f, g)?.iter().map(|l| l.letter(n)).collect())
}

/// Checks the three reachability properties of `w` against the pair
/// `(f, g)` on `FB_n`. Returns the first violated property, if any.
pub fn check_w_properties(fb: &Automaton, f: &QRanking, g: &QRanking, w: &[Letter]) -> Result<Option<u8>> {
    let n = fb.states();
    let fset = StateSet::singleton(n - 1);
    let prof = transition_profile(fb, w, &[fset], None)?;
    for p in 0..n - 1 {
        for q in 0..n - 1 {
            let (a, b) = (f.ranks[p], g.ranks[q]);
            if prof.reach(p, q) != (a > b || (a == b && a % 2 == 1)) {
                return Ok(Some(1));
            }
            if prof.visits(p, q, 0) != (a > b) {
                return Ok(Some(2));
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            if prof.reach(p, q) && (p == n - 1 || q == n - 1) {
                return Ok(Some(3));
            }
        }
    }
    Ok(None)
}

/// The hard word `α_n = period^ω`.
#[derive(Clone, Debug)]
pub struct HardWord {
    pub n: usize,
    pub m: usize,
    /// `f_0 .. f_{L-1}`.
    pub rankings: Vec<QRanking>,
    pub symbols: Vec<WitnessLetter>,
    pub period: FiniteWord,
    /// `k_i`: offset of `w_{f_i, f_{i+1}}` inside the period.
    pub offsets: Vec<usize>,
}

impl HardWord {
    pub fn lasso(&self) -> LassoWord {
        LassoWord { prefix: Vec::new(), period: self.period.clone() }
    }

    pub fn len(&self) -> usize {
        self.rankings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rankings.is_empty()
    }
}

pub fn hard_word(n: usize) -> Result<HardWord> {
    let (m, _) = l_max(n)?;
    let rankings = q_rankings(n, m)?;
    let l = rankings.len();
    let mut symbols = Vec::new();
    let mut offsets = Vec::with_capacity(l);
    for i in 0..l {
        offsets.push(symbols.len());
        symbols.extend(w_symbolic(&rankings[i], &rankings[(i + 1) % l])?);
    }
    let period = symbols.iter().map(|s| s.letter(n)).collect();
    Ok(HardWord { n, m, rankings, symbols, period, offsets })
}
