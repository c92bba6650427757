//! Transition profiles: the reachability matrix of a finite word, annotated
//! with which tracked state sets a connecting run can visit.

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::relation::{Letter, Relation};
use crate::set::StateSet;

/// Profile of a word over an `n`-state automaton.
///
/// `cells[p*n+q]` holds the maximal visit masks over runs `p -> q`; bit `i`
/// of a mask means the run visits `tracked[i]`. A cell is non-empty iff
/// `p -> q`. The avoidance matrix, when present, records whether some run
/// `p -> q` avoids the `avoid` set entirely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    n: usize,
    tracked: Vec<StateSet>,
    avoid: Option<StateSet>,
    cells: Vec<Vec<u64>>,
    avoid_ok: Vec<bool>,
}

fn insert_maximal(cell: &mut Vec<u64>, mask: u64) {
    if cell.iter().any(|&m| m & mask == mask) {
        return;
    }
    cell.retain(|&m| m & mask != m);
    cell.push(mask);
}

impl Profile {
    /// Monoid identity: the identity relation with empty marks.
    pub fn identity(n: usize, tracked: &[StateSet], avoid: Option<&StateSet>) -> Self {
        let mut cells = vec![Vec::new(); n * n];
        let mut avoid_ok = vec![false; n * n];
        for p in 0..n {
            cells[p * n + p].push(0);
            avoid_ok[p * n + p] = true;
        }
        Profile { n, tracked: tracked.to_vec(), avoid: avoid.cloned(), cells, avoid_ok }
    }

    fn mark(&self, q: usize) -> u64 {
        self.tracked.iter().enumerate().filter(|(_, t)| t.contains(q)).fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Profile of a single letter with transition relation `rel`.
    pub fn of_relation(rel: &Relation, tracked: &[StateSet], avoid: Option<&StateSet>) -> Self {
        let n = rel.dim();
        let mut p = Profile::identity(n, tracked, avoid);
        p.cells.iter_mut().for_each(Vec::clear);
        p.avoid_ok.iter_mut().for_each(|b| *b = false);
        for (a, b) in rel.pairs() {
            let mask = p.mark(a) | p.mark(b);
            p.cells[a * n + b].push(mask);
            p.avoid_ok[a * n + b] = match &p.avoid {
                Some(av) => !av.contains(a) && !av.contains(b),
                None => true,
            };
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn tracked(&self) -> &[StateSet] {
        &self.tracked
    }

    #[inline]
    pub fn reach(&self, p: usize, q: usize) -> bool {
        !self.cells[p * self.n + q].is_empty()
    }

    /// Some run `p -> q` visits `tracked[i]`.
    pub fn visits(&self, p: usize, q: usize, i: usize) -> bool {
        self.visits_all(p, q, 1 << i)
    }

    /// Some run `p -> q` visits every tracked set selected by `mask`.
    pub fn visits_all(&self, p: usize, q: usize, mask: u64) -> bool {
        self.cells[p * self.n + q].iter().any(|&m| m & mask == mask)
    }

    /// Maximal visit masks of the cell `(p, q)`.
    pub fn masks(&self, p: usize, q: usize) -> &[u64] {
        &self.cells[p * self.n + q]
    }

    /// Some run `p -> q` avoids the avoidance set (endpoints included).
    /// Always false when no avoidance set was requested.
    pub fn avoids(&self, p: usize, q: usize) -> bool {
        self.avoid.is_some() && self.avoid_ok[p * self.n + q]
    }

    /// Reachability as a relation.
    pub fn reach_relation(&self) -> Relation {
        let n = self.n;
        Relation::from_rows((0..n).map(|p| (0..n).filter(|&q| self.reach(p, q)).map(|q| q as u32).collect()).collect())
    }

    /// Column `j`: `{i : i -> j}`.
    pub fn column(&self, j: usize) -> StateSet {
        (0..self.n).filter(|&i| self.reach(i, j)).collect()
    }

    /// Profile of the concatenation `u·v` from the profiles of `u` and `v`.
    pub fn compose(&self, other: &Profile) -> Result<Profile> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.tracked != other.tracked || self.avoid != other.avoid {
            return Err(Error::Invalid("profiles track different state sets".into()));
        }
        let n = self.n;
        let mut cells = vec![Vec::new(); n * n];
        let mut avoid_ok = vec![false; n * n];
        for p in 0..n {
            for q in 0..n {
                let left = &self.cells[p * n + q];
                if left.is_empty() {
                    continue;
                }
                for r in 0..n {
                    let right = &other.cells[q * n + r];
                    if right.is_empty() {
                        continue;
                    }
                    let cell = &mut cells[p * n + r];
                    for &a in left {
                        for &b in right {
                            insert_maximal(cell, a | b);
                        }
                    }
                    if self.avoid_ok[p * n + q] && other.avoid_ok[q * n + r] {
                        avoid_ok[p * n + r] = true;
                    }
                }
            }
        }
        for c in &mut cells {
            c.sort_unstable();
        }
        Ok(Profile { n, tracked: self.tracked.clone(), avoid: self.avoid.clone(), cells, avoid_ok })
    }

    fn normalized(mut self) -> Self {
        for c in &mut self.cells {
            c.sort_unstable();
        }
        self
    }
}

/// Profile of `w` over `a`, tracking visits to each set of `tracked` and,
/// optionally, avoidance of `avoid`.
pub fn transition_profile(
    a: &Automaton,
    w: &[Letter],
    tracked: &[StateSet],
    avoid: Option<&StateSet>,
) -> Result<Profile> {
    if tracked.len() > 64 {
        return Err(Error::OutOfRange("at most 64 tracked sets".into()));
    }
    let mut acc = Profile::identity(a.states(), tracked, avoid);
    for rel in a.resolve(w)? {
        acc = acc.compose(&Profile::of_relation(&rel, tracked, avoid))?;
    }
    Ok(acc.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Acceptance, Alphabet};

    fn full(n: usize, f: &[usize]) -> Automaton {
        Automaton::new(n, StateSet::full(n), Alphabet::ImplicitFull, Acceptance::Buchi(f.iter().collect())).unwrap()
    }

    #[test]
    fn empty_word_is_identity_with_empty_marks() {
        let a = full(3, &[2]);
        let p = transition_profile(&a, &[], &[StateSet::singleton(2)], None).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.reach(i, j), i == j);
            }
            assert_eq!(p.masks(i, i), &[0]);
        }
    }

    #[test]
    fn identity_letter_on_single_state() {
        let a = full(3, &[2]);
        let w = vec![Letter::rel(Relation::identity_on(3, &StateSet::singleton(0)))];
        let p = transition_profile(&a, &w, &[StateSet::singleton(2)], None).unwrap();
        let pairs: Vec<_> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&(i, j)| p.reach(i, j)).collect();
        assert_eq!(pairs, vec![(0, 0)]);
        assert!(!p.visits(0, 0, 0));
    }

    #[test]
    fn compose_rejects_dimension_mismatch() {
        let a = Profile::identity(2, &[], None);
        let b = Profile::identity(3, &[], None);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn avoidance_tracks_forbidden_states() {
        let a = full(3, &[]);
        let rel = Relation::from_pairs(3, [(0, 1), (1, 2), (0, 0), (0, 2)]).unwrap();
        let w = vec![Letter::rel(rel.clone()), Letter::rel(rel)];
        let avoid = StateSet::singleton(1);
        let p = transition_profile(&a, &w, &[], Some(&avoid)).unwrap();
        assert!(p.reach(0, 2));
        assert!(p.avoids(0, 2)); // 0 -> 0 -> 2
        assert!(!p.avoids(1, 2));
    }
}
