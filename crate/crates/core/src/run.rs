//! Runs, Δ-graphs and constrained run search over finite words.

use crate::automaton::{Automaton, LassoWord};
use crate::error::{Error, Result};
use crate::relation::{Letter, Relation};
use crate::set::StateSet;

/// A finite run `ρ(0) .. ρ(l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub states: Vec<usize>,
}

impl Run {
    pub fn occ(&self) -> StateSet {
        self.states.iter().collect()
    }

    /// Visits `t` at some position, endpoints included.
    pub fn visits(&self, t: &StateSet) -> bool {
        self.states.iter().any(|&q| t.contains(q))
    }
}

/// A lasso-shaped infinite run. `stem` is `ρ(0..=s)`; `cycle` is
/// `ρ(s+1..=s+c)` with `ρ(s+c) = ρ(s)`, repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoRun {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl LassoRun {
    /// Position of the last stem state.
    pub fn stem_end(&self) -> usize {
        self.stem.len() - 1
    }

    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    pub fn state_at(&self, i: usize) -> usize {
        let s = self.stem_end();
        if i <= s {
            self.stem[i]
        } else {
            self.cycle[(i - s - 1) % self.cycle.len()]
        }
    }

    pub fn occ(&self) -> StateSet {
        self.stem.iter().chain(&self.cycle).collect()
    }

    pub fn inf(&self) -> StateSet {
        self.cycle.iter().collect()
    }

    /// Checks that this is a run of `a` over `word` from an initial state,
    /// with a cycle aligned to the word's period.
    pub fn verify(&self, a: &Automaton, word: &LassoWord) -> Result<bool> {
        if self.stem.is_empty() || self.cycle.is_empty() {
            return Ok(false);
        }
        let s = self.stem_end();
        if s < word.prefix.len() || !self.cycle.len().is_multiple_of(word.period.len()) {
            return Ok(false);
        }
        if self.cycle.last() != self.stem.last() || !a.initial().contains(self.stem[0]) {
            return Ok(false);
        }
        for i in 0..s + self.cycle.len() {
            let t = a.transition(word.letter_at(i))?;
            if !t.contains(self.state_at(i), self.state_at(i + 1)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The Δ-graph of a finite word: columns `0..=l`, edges per transition.
#[derive(Clone, Debug)]
pub struct DeltaGraph {
    n: usize,
    edges: Vec<Relation>,
}

impl DeltaGraph {
    pub fn new(a: &Automaton, w: &[Letter]) -> Result<Self> {
        Ok(DeltaGraph { n: a.states(), edges: a.resolve(w)?.into_iter().map(|c| c.into_owned()).collect() })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge `<p,i> -> <q,i+1>`.
    pub fn has_edge(&self, i: usize, p: usize, q: usize) -> bool {
        self.edges[i].contains(p, q)
    }

    /// Every path from `<p,0>` to `<q,l>`, by exhaustive search.
    pub fn all_paths(&self, p: usize, q: usize) -> Vec<Run> {
        let mut out = Vec::new();
        let mut path = vec![p];
        self.extend(&mut path, q, &mut out);
        out
    }

    fn extend(&self, path: &mut Vec<usize>, target: usize, out: &mut Vec<Run>) {
        let i = path.len() - 1;
        if i == self.edges.len() {
            if path[i] == target {
                out.push(Run { states: path.clone() });
            }
            return;
        }
        for r in 0..self.n {
            if self.has_edge(i, path[i], r) {
                path.push(r);
                self.extend(path, target, out);
                path.pop();
            }
        }
    }
}

/// Number of runs, saturating at two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RunCount {
    Zero,
    One,
    Many,
}

impl RunCount {
    fn from_sat(c: u8) -> Self {
        match c {
            0 => RunCount::Zero,
            1 => RunCount::One,
            _ => RunCount::Many,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunSearch {
    pub count: RunCount,
    pub witness: Option<Run>,
}

/// Counts runs `p -> q` over `w` that visit every set in `must_visit` and
/// never enter `must_avoid`, returning one witness when any exists.
pub fn run_search(
    a: &Automaton,
    p: usize,
    q: usize,
    w: &[Letter],
    must_visit: &[StateSet],
    must_avoid: &StateSet,
) -> Result<RunSearch> {
    let n = a.states();
    for s in [p, q] {
        if s >= n {
            return Err(Error::StateOutOfRange { state: s, states: n });
        }
    }
    if must_visit.len() > 16 {
        return Err(Error::OutOfRange("at most 16 visit constraints".into()));
    }
    let rels = a.resolve(w)?;
    let k = must_visit.len();
    let width = 1usize << k;
    let full = width - 1;
    let mark =
        |s: usize| must_visit.iter().enumerate().filter(|(_, t)| t.contains(s)).fold(0, |m, (i, _)| m | (1 << i));
    let marks: Vec<usize> = (0..n).map(mark).collect();

    // layers[i][state*width + mask] = (saturated count, predecessor index)
    let mut layers: Vec<Vec<(u8, u32)>> = Vec::with_capacity(rels.len() + 1);
    let mut first = vec![(0u8, u32::MAX); n * width];
    if !must_avoid.contains(p) {
        first[p * width + marks[p]] = (1, u32::MAX);
    }
    layers.push(first);
    for rel in &rels {
        let prev = layers.last().unwrap();
        let mut next = vec![(0u8, u32::MAX); n * width];
        for s in 0..n {
            for m in 0..width {
                let (c, _) = prev[s * width + m];
                if c == 0 {
                    continue;
                }
                for &t in rel.successors(s) {
                    let t = t as usize;
                    if must_avoid.contains(t) {
                        continue;
                    }
                    let slot = &mut next[t * width + (m | marks[t])];
                    if slot.0 == 0 {
                        slot.1 = (s * width + m) as u32;
                    }
                    slot.0 = (slot.0 + c).min(2);
                }
            }
        }
        layers.push(next);
    }
    let last = layers.last().unwrap();
    let count = last[q * width + full].0;
    let witness = (count > 0).then(|| {
        let mut idx = q * width + full;
        let mut states = Vec::with_capacity(layers.len());
        for layer in layers.iter().rev() {
            states.push(idx / width);
            idx = layer[idx].1 as usize;
        }
        states.reverse();
        Run { states }
    });
    Ok(RunSearch { count: RunCount::from_sat(count), witness })
}
