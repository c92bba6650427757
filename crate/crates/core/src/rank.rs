//! Rank-based complementation of Büchi automata, level rankings, and a
//! validator for odd co-Büchi rankings over lasso words.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::automaton::{Acceptance, Automaton, LassoWord};
use crate::error::{Error, Result};
use crate::graph;
use crate::lasso::accepting_run;
use crate::relation::Relation;
use crate::set::StateSet;

const UNDEF: u8 = u8::MAX;
const MAX_STATES: usize = 16;

/// A partial map from states to ranks. Odd ranks are only allowed outside
/// the final set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelRanking {
    pub ranks: Vec<Option<u32>>,
}

impl LevelRanking {
    pub fn domain(&self) -> StateSet {
        (0..self.ranks.len()).filter(|&q| self.ranks[q].is_some()).collect()
    }

    pub fn is_level_ranking(&self, f: &StateSet) -> bool {
        self.ranks.iter().enumerate().all(|(q, r)| !matches!(r, Some(r) if r % 2 == 1 && f.contains(q)))
    }

    /// `Some(m)` when the ranking is a TL(m)-ranking: the largest rank is
    /// `2m-1` and every odd rank up to it is used.
    pub fn tightness(&self) -> Option<usize> {
        tightness(self.ranks.iter().flatten().copied())
    }
}

fn tightness(ranks: impl Iterator<Item = u32> + Clone) -> Option<usize> {
    let max = ranks.clone().max()?;
    if max % 2 == 0 {
        return None;
    }
    let mut odd = 0u64;
    for r in ranks.filter(|r| r % 2 == 1) {
        odd |= 1 << (r / 2);
    }
    let m = (max as usize).div_ceil(2);
    (odd.count_ones() as usize == m).then_some(m)
}

/// A state of the complement automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ComplementState {
    /// Subset phase: the set of states reachable so far.
    Subset(StateSet),
    /// Ranking phase: a guessed level ranking and the obligation set of
    /// even-ranked states still owing a visit to an odd rank.
    Ranking { g: LevelRanking, o: StateSet },
}

/// A complement automaton with the meaning of each of its states.
#[derive(Clone, Debug)]
pub struct RankComplement {
    pub automaton: Automaton,
    pub labels: Vec<ComplementState>,
    /// Largest rank a guessed ranking may use.
    pub max_rank: u32,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Subset(u64),
    Rank(Vec<u8>, u64),
}

struct Builder<'a> {
    n: usize,
    f: u64,
    succ: &'a [Vec<u64>],
    max_rank: u8,
    tight: bool,
}

impl Builder<'_> {
    fn image(&self, letter: usize, from: u64) -> u64 {
        let mut out = 0;
        let mut m = from;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= self.succ[letter][p];
        }
        out
    }

    fn accept_ranking(&self, g: &[u8]) -> bool {
        if !self.tight || g.iter().all(|&r| r == UNDEF) {
            return true;
        }
        let ranks = g.iter().filter(|&&r| r != UNDEF).map(|&r| r as u32);
        tightness(ranks).is_some()
    }

    /// Every level ranking on `dom` with `g(q) <= caps[q]`.
    fn rankings(&self, dom: u64, caps: &[u8]) -> Vec<Vec<u8>> {
        let states: Vec<usize> = (0..self.n).filter(|&q| dom >> q & 1 == 1).collect();
        let mut out = Vec::new();
        let mut cur = vec![UNDEF; self.n];
        self.fill(&states, 0, caps, &mut cur, &mut out);
        out
    }

    fn fill(&self, states: &[usize], i: usize, caps: &[u8], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == states.len() {
            if self.accept_ranking(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let q = states[i];
        let final_state = self.f >> q & 1 == 1;
        for r in 0..=caps[q] {
            if final_state && r % 2 == 1 {
                continue;
            }
            cur[q] = r;
            self.fill(states, i + 1, caps, cur, out);
        }
        cur[q] = UNDEF;
    }

    fn even_mask(&self, g: &[u8]) -> u64 {
        (0..self.n).filter(|&q| g[q] != UNDEF && g[q].is_multiple_of(2)).fold(0, |m, q| m | 1 << q)
    }

    fn successors(&self, key: &Key, letter: usize) -> Vec<Key> {
        match key {
            Key::Subset(s) => {
                let next = self.image(letter, *s);
                let caps = vec![self.max_rank; self.n];
                let mut out = vec![Key::Subset(next)];
                for g in self.rankings(next, &caps) {
                    let o = self.even_mask(&g);
                    out.push(Key::Rank(g, o));
                }
                out
            }
            Key::Rank(g, o) => {
                let dom = (0..self.n).filter(|&q| g[q] != UNDEF).fold(0u64, |m, q| m | 1 << q);
                let next = self.image(letter, dom);
                let mut caps = vec![0u8; self.n];
                for (q2, cap) in caps.iter_mut().enumerate() {
                    if next >> q2 & 1 == 1 {
                        *cap = (0..self.n)
                            .filter(|&q| g[q] != UNDEF && self.succ[letter][q] >> q2 & 1 == 1)
                            .map(|q| g[q])
                            .min()
                            .unwrap_or(0);
                    }
                }
                let moved = if *o == 0 { None } else { Some(self.image(letter, *o)) };
                self.rankings(next, &caps)
                    .into_iter()
                    .map(|g2| {
                        let even = self.even_mask(&g2);
                        let o2 = match moved {
                            None => even,
                            Some(m) => m & even,
                        };
                        Key::Rank(g2, o2)
                    })
                    .collect()
            }
        }
    }
}

fn mask_of(s: &StateSet) -> u64 {
    s.low_mask()
}

/// Complements a Büchi automaton over an explicit alphabet. The result
/// first tracks the reachable subset, then guesses a level ranking and
/// checks it locally; `tight` restricts guesses to tight level rankings.
pub fn complement_rank(a: &Automaton, tight: bool) -> Result<RankComplement> {
    let f = match a.acceptance() {
        Acceptance::Buchi(f) => f.clone(),
        other => return Err(Error::WrongAcceptance { expected: "nbw", found: other.kind().name() }),
    };
    let e = a.explicit_alphabet().ok_or(Error::NotExplicit)?;
    let n = a.states();
    if n > MAX_STATES {
        return Err(Error::OutOfRange(format!("rank complement supports at most {MAX_STATES} states")));
    }
    let succ: Vec<Vec<u64>> = e
        .transitions()
        .iter()
        .map(|t| (0..n).map(|p| t.successors(p).iter().fold(0u64, |m, &q| m | 1 << q)).collect())
        .collect();

    // Width of the run DAG: the largest reachable subset.
    let mut subsets = vec![mask_of(a.initial())];
    let mut seen: std::collections::HashSet<u64> = subsets.iter().copied().collect();
    let mut i = 0;
    while i < subsets.len() {
        for row in &succ {
            let next = (0..n).filter(|&p| subsets[i] >> p & 1 == 1).fold(0, |m, p| m | row[p]);
            if seen.insert(next) {
                subsets.push(next);
            }
        }
        i += 1;
    }
    let width = subsets.iter().map(|s| s.count_ones()).max().unwrap_or(0).max(1);
    let max_rank = (2 * width - 1) as u8;

    let builder = Builder { n, f: mask_of(&f), succ: &succ, max_rank, tight };
    let letters = e.len();
    let mut index: HashMap<Key, u32> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let mut rows: Vec<Vec<Vec<u32>>> = vec![Vec::new(); letters];
    let start = Key::Subset(mask_of(a.initial()));
    index.insert(start.clone(), 0);
    keys.push(start);
    let mut done = 0;
    while done < keys.len() {
        let frontier = &keys[done..];
        let expanded: Vec<Vec<Vec<Key>>> =
            frontier.par_iter().map(|k| (0..letters).map(|l| builder.successors(k, l)).collect()).collect();
        for per_letter in expanded {
            for (l, succs) in per_letter.into_iter().enumerate() {
                let mut row = Vec::with_capacity(succs.len());
                for k in succs {
                    let next = keys.len() as u32;
                    let id = *index.entry(k.clone()).or_insert_with(|| {
                        keys.push(k);
                        next
                    });
                    row.push(id);
                }
                rows[l].push(row);
            }
            done += 1;
        }
    }

    let total = keys.len();
    let accepting: StateSet =
        keys.iter().enumerate().filter(|(_, k)| matches!(k, Key::Rank(_, 0))).map(|(i, _)| i).collect();
    let entries = e
        .letters()
        .iter()
        .zip(rows)
        .map(|(l, mut r)| {
            r.resize(total, Vec::new());
            (l.clone(), Relation::from_rows(r))
        })
        .collect();
    let automaton = Automaton::explicit(total, StateSet::singleton(0), entries, Acceptance::Buchi(accepting))?;
    let to_set = |m: u64| StateSet::from_mask(m);
    let labels = keys
        .into_iter()
        .map(|k| match k {
            Key::Subset(s) => ComplementState::Subset(to_set(s)),
            Key::Rank(g, o) => ComplementState::Ranking {
                g: LevelRanking { ranks: g.iter().map(|&r| (r != UNDEF).then_some(r as u32)).collect() },
                o: to_set(o),
            },
        })
        .collect();
    Ok(RankComplement { automaton, labels, max_rank: max_rank as u32 })
}

/// One level ranking per position of a lasso word `u·v`; the level after
/// the last position is the one at position `|u|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRankingSlice {
    pub levels: Vec<LevelRanking>,
}

/// Why a slice fails to be an odd co-Büchi ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceVerdict {
    Valid,
    /// The reachable sets of the word are not periodic at this lasso shape.
    NotPeriodic,
    /// Condition (i): defined exactly on reachable vertices.
    Domain {
        pos: usize,
        state: usize,
    },
    /// Condition (ii): odd rank on a final state.
    OddFinal {
        pos: usize,
        state: usize,
    },
    /// Condition (iii): rank increases along an edge.
    Increase {
        pos: usize,
        from: usize,
        to: usize,
    },
    /// Some infinite path settles on an even rank.
    EvenCycle,
}

impl SliceVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, SliceVerdict::Valid)
    }
}

/// Checks a slice against the co-Büchi ranking conditions and oddness.
pub fn validate_c_ranking(a: &Automaton, w: &LassoWord, slice: &CRankingSlice) -> Result<SliceVerdict> {
    let n = a.states();
    let (pu, len) = (w.prefix.len(), w.prefix.len() + w.period.len());
    if slice.levels.len() != len {
        return Err(Error::DimensionMismatch { expected: len, found: slice.levels.len() });
    }
    if let Some(bad) = slice.levels.iter().find(|g| g.ranks.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.ranks.len() });
    }
    let f = match a.acceptance() {
        Acceptance::Buchi(f) => f.clone(),
        other => return Err(Error::WrongAcceptance { expected: "nbw", found: other.kind().name() }),
    };
    let rels = (0..len).map(|i| a.transition(w.letter_at(i))).collect::<Result<Vec<_>>>()?;
    let next = |pos: usize| if pos + 1 < len { pos + 1 } else { pu };

    let mut reach = vec![a.initial().clone()];
    for rel in &rels {
        let r = rel.image(reach.last().unwrap());
        reach.push(r);
    }
    if reach[len] != reach[pu] {
        return Ok(SliceVerdict::NotPeriodic);
    }
    for (pos, g) in slice.levels.iter().enumerate() {
        for q in 0..n {
            if g.ranks[q].is_some() != reach[pos].contains(q) {
                return Ok(SliceVerdict::Domain { pos, state: q });
            }
            if matches!(g.ranks[q], Some(r) if r % 2 == 1) && f.contains(q) {
                return Ok(SliceVerdict::OddFinal { pos, state: q });
            }
        }
    }
    // Vertex (pos, q) has index pos*n + q.
    let mut adj = vec![Vec::new(); len * n];
    for (pos, rel) in rels.iter().enumerate() {
        let np = next(pos);
        for (p, q) in rel.pairs() {
            let (Some(r1), Some(r2)) = (slice.levels[pos].ranks[p], slice.levels[np].ranks[q]) else {
                continue;
            };
            if r2 > r1 {
                return Ok(SliceVerdict::Increase { pos, from: p, to: q });
            }
            adj[pos * n + p].push((np * n + q) as u32);
        }
    }
    let even: Vec<bool> =
        (0..len * n).map(|v| matches!(slice.levels[v / n].ranks[v % n], Some(r) if r % 2 == 0)).collect();
    let even_cycle = graph::sccs(&adj, &even).iter().any(|c| graph::nontrivial(&adj, c));
    Ok(if even_cycle { SliceVerdict::EvenCycle } else { SliceVerdict::Valid })
}

/// Reads an odd co-Büchi ranking off an accepting run of the complement
/// over `w`. Returns the re-shaped lasso word the slice refers to. Levels
/// before the ranking phase get the even rank `max_rank + 1`.
pub fn slice_from_complement(
    a: &Automaton,
    comp: &RankComplement,
    w: &LassoWord,
) -> Result<Option<(LassoWord, CRankingSlice)>> {
    let Some(run) = accepting_run(&comp.automaton, w)? else {
        return Ok(None);
    };
    let s = run.stem_end();
    let c = run.cycle_len();
    let prefix: Vec<_> = (0..s).map(|i| w.letter_at(i).clone()).collect();
    let period: Vec<_> = (s..s + c).map(|i| w.letter_at(i).clone()).collect();
    let word = LassoWord::new(prefix, period)?;
    let n = a.states();
    let top = comp.max_rank + 1;
    let levels = (0..s + c)
        .map(|i| match &comp.labels[run.state_at(i)] {
            ComplementState::Ranking { g, .. } => g.clone(),
            ComplementState::Subset(set) => {
                LevelRanking { ranks: (0..n).map(|q| set.contains(q).then_some(top)).collect() }
            }
        })
        .collect();
    Ok(Some((word, CRankingSlice { levels })))
}

/// Number of TL(m)-rankings over `n` states with final set `f`, for
/// `m = 1..n-1`, by enumeration of partial maps.
pub fn count_tight(n: usize, f: &StateSet) -> Result<Vec<u64>> {
    if !(2..=8).contains(&n) {
        return Err(Error::OutOfRange("count_tight supports 2 <= n <= 8".into()));
    }
    Ok((1..n).map(|m| count_tight_m(n, m, f)).collect())
}

fn count_tight_m(n: usize, m: usize, f: &StateSet) -> u64 {
    let top = 2 * m as u32 - 1;
    // values: None or 0..=top
    let choices = top as u64 + 2;
    let total = choices.pow(n as u32);
    (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut c = code;
            let mut ranks = Vec::with_capacity(n);
            for q in 0..n {
                let v = c % choices;
                c /= choices;
                if v == 0 {
                    continue;
                }
                let r = v as u32 - 1;
                if r % 2 == 1 && f.contains(q) {
                    return false;
                }
                ranks.push(r);
            }
            tightness(ranks.iter().copied()) == Some(m)
        })
        .count() as u64
}
