//! Membership of ultimately periodic words `u·v^ω`.
//!
//! Runs over a lasso word live in the product of the automaton with the
//! word positions `[0, |u|+|v|)`, where the last position wraps back to
//! `|u|`. An accepting run exists iff some reachable strongly connected
//! node set has an accepting projection, which each acceptance type finds
//! by filtering nodes and decomposing into components.

use crate::automaton::{Acceptance, Automaton, LassoWord};
use crate::error::{Error, Result};
use crate::graph;
use crate::run::LassoRun;
use crate::set::StateSet;

/// Reachable part of the product of an automaton with the positions of a
/// lasso word. Node `i` is the pair `nodes[i] = (position, state)`.
pub struct LassoProduct {
    nodes: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    sources: Vec<u32>,
}

impl LassoProduct {
    pub fn new(a: &Automaton, w: &LassoWord) -> Result<Self> {
        let len = w.prefix.len() + w.period.len();
        let rels = (0..len).map(|i| a.transition(w.letter_at(i))).collect::<Result<Vec<_>>>()?;
        let n = a.states();
        let mut index = vec![u32::MAX; len * n];
        let mut nodes = Vec::new();
        let mut adj: Vec<Vec<u32>> = Vec::new();
        let mut intern = |key: (u32, u32), nodes: &mut Vec<(u32, u32)>, adj: &mut Vec<Vec<u32>>| {
            let slot = &mut index[key.0 as usize * n + key.1 as usize];
            if *slot == u32::MAX {
                *slot = nodes.len() as u32;
                nodes.push(key);
                adj.push(Vec::new());
            }
            *slot
        };
        let sources: Vec<u32> = a.initial().iter().map(|q| intern((0, q as u32), &mut nodes, &mut adj)).collect();
        let mut next_node = 0;
        while next_node < nodes.len() {
            let (pos, p) = nodes[next_node];
            let np = if pos as usize + 1 < len { pos + 1 } else { w.prefix.len() as u32 };
            for &q in rels[pos as usize].successors(p as usize) {
                let t = intern((np, q), &mut nodes, &mut adj);
                adj[next_node].push(t);
            }
            next_node += 1;
        }
        Ok(LassoProduct { nodes, adj, sources })
    }

    /// Number of reachable product nodes.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn state(&self, node: u32) -> usize {
        self.nodes[node as usize].1 as usize
    }

    fn projection(&self, nodes: &[u32]) -> StateSet {
        nodes.iter().map(|&v| self.state(v)).collect()
    }

    fn all_nodes(&self) -> Vec<bool> {
        vec![true; self.adj.len()]
    }

    /// Nontrivial components of the reachable part restricted by `keep`.
    fn components(&self, alive: &[bool], keep: impl Fn(usize) -> bool) -> Vec<Vec<u32>> {
        let mask: Vec<bool> = (0..alive.len()).map(|v| alive[v] && keep(self.state(v as u32))).collect();
        graph::sccs(&self.adj, &mask).into_iter().filter(|c| graph::nontrivial(&self.adj, c)).collect()
    }

    /// A reachable strongly connected node set whose projection is accepting.
    fn good_component(&self, acc: &Acceptance) -> Result<Option<Vec<u32>>> {
        let alive = self.all_nodes();
        let found = match acc {
            Acceptance::Finite(_) => return Err(Error::WrongAcceptance { expected: "omega", found: "nfw" }),
            Acceptance::Buchi(f) => {
                self.components(&alive, |_| true).into_iter().find(|c| self.projection(c).intersects(f))
            }
            Acceptance::GenBuchi(fs) => self.components(&alive, |_| true).into_iter().find(|c| {
                let p = self.projection(c);
                fs.iter().all(|f| p.intersects(f))
            }),
            Acceptance::Rabin(pairs) => pairs.iter().find_map(|(g, b)| {
                self.components(&alive, |q| !b.contains(q)).into_iter().find(|c| self.projection(c).intersects(g))
            }),
            Acceptance::Streett(pairs) => self.streett(&alive, pairs),
            Acceptance::Muller(family) => family.iter().find_map(|t| {
                self.components(&alive, |q| t.contains(q)).into_iter().find(|c| &self.projection(c) == t)
            }),
            Acceptance::Parity(c) => {
                let mut ranks: Vec<u32> = c.iter().copied().filter(|d| d % 2 == 0).collect();
                ranks.sort_unstable();
                ranks.dedup();
                ranks.into_iter().find_map(|d| {
                    self.components(&alive, |q| c[q] >= d)
                        .into_iter()
                        .find(|comp| comp.iter().any(|&v| c[self.state(v)] == d))
                })
            }
        };
        Ok(found)
    }

    /// Emerson-Lei style refinement: drop bad states of violated pairs and
    /// decompose again until a component satisfies every pair.
    fn streett(&self, alive: &[bool], pairs: &[(StateSet, StateSet)]) -> Option<Vec<u32>> {
        let mut work = vec![alive.to_vec()];
        while let Some(mask) = work.pop() {
            for comp in self.components(&mask, |_| true) {
                let p = self.projection(&comp);
                let bad: Vec<&StateSet> =
                    pairs.iter().filter(|(g, b)| p.intersects(b) && !p.intersects(g)).map(|(_, b)| b).collect();
                if bad.is_empty() {
                    return Some(comp);
                }
                let mut sub = vec![false; mask.len()];
                for &v in &comp {
                    let q = self.state(v);
                    sub[v as usize] = bad.iter().all(|b| !b.contains(q));
                }
                work.push(sub);
            }
        }
        None
    }

    /// Turns an accepting component into a lasso run.
    fn run_through(&self, comp: &[u32]) -> LassoRun {
        let all = vec![true; self.adj.len()];
        let anchor = comp[0];
        let stem_nodes = graph::path(&self.adj, &all, &self.sources, anchor, false).expect("component is reachable");
        let cycle_nodes = graph::covering_cycle(&self.adj, comp);
        LassoRun {
            stem: stem_nodes.iter().map(|&v| self.state(v)).collect(),
            cycle: cycle_nodes.iter().map(|&v| self.state(v)).collect(),
        }
    }
}

/// `u·v^ω ∈ L(A)`.
pub fn lasso_member(a: &Automaton, w: &LassoWord) -> Result<bool> {
    Ok(LassoProduct::new(a, w)?.good_component(a.acceptance())?.is_some())
}

/// An accepting lasso run of `a` over `w`, if one exists. The stem ends at
/// or after the prefix and the cycle length is a multiple of the period.
pub fn accepting_run(a: &Automaton, w: &LassoWord) -> Result<Option<LassoRun>> {
    let prod = LassoProduct::new(a, w)?;
    Ok(prod.good_component(a.acceptance())?.map(|c| prod.run_through(&c)))
}

/// Checks that `run` is a run of `a` over `w` and that it is successful.
pub fn verify_lasso_run(a: &Automaton, w: &LassoWord, run: &LassoRun) -> Result<bool> {
    Ok(run.verify(a, w)? && a.acceptance().accepts_inf(&run.inf()))
}
