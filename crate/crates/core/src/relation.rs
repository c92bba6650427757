//! Binary relations over state indices and the letters built from them.

use std::fmt;

use crate::error::{Error, Result};
use crate::set::StateSet;

/// A binary relation over `{0..n}` stored as sorted successor lists.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    succ: Vec<Vec<u32>>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { succ: vec![Vec::new(); n] }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Result<Self> {
        let mut r = Self::empty(n);
        for (p, q) in pairs {
            r.insert(p, q)?;
        }
        Ok(r)
    }

    /// Builds from successor sets, one per state.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let mut succ = rows;
        for row in &mut succ {
            row.sort_unstable();
            row.dedup();
        }
        Relation { succ }
    }

    /// `Id(T) = {(q,q) : q in T}`
    pub fn identity_on(n: usize, t: &StateSet) -> Self {
        let mut r = Self::empty(n);
        for q in t.iter().filter(|&q| q < n) {
            r.succ[q].push(q as u32);
        }
        r
    }

    pub fn identity(n: usize) -> Self {
        Self::identity_on(n, &StateSet::full(n))
    }

    /// `S x S`
    pub fn complete(n: usize) -> Self {
        Relation { succ: vec![(0..n as u32).collect(); n] }
    }

    pub fn dim(&self) -> usize {
        self.succ.len()
    }

    pub fn insert(&mut self, p: usize, q: usize) -> Result<bool> {
        let n = self.dim();
        for s in [p, q] {
            if s >= n {
                return Err(Error::StateOutOfRange { state: s, states: n });
            }
        }
        let row = &mut self.succ[p];
        match row.binary_search(&(q as u32)) {
            Ok(_) => Ok(false),
            Err(i) => {
                row.insert(i, q as u32);
                Ok(true)
            }
        }
    }

    pub fn remove(&mut self, p: usize, q: usize) -> bool {
        match self.succ.get_mut(p) {
            Some(row) => match row.binary_search(&(q as u32)) {
                Ok(i) => {
                    row.remove(i);
                    true
                }
                Err(_) => false,
            },
            None => false,
        }
    }

    #[inline]
    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.succ.get(p).is_some_and(|row| row.binary_search(&(q as u32)).is_ok())
    }

    #[inline]
    pub fn successors(&self, p: usize) -> &[u32] {
        &self.succ[p]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(p, row)| row.iter().map(move |&q| (p, q as usize)))
    }

    pub fn len(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.iter().all(Vec::is_empty)
    }

    /// Forward image of a state set.
    pub fn image(&self, from: &StateSet) -> StateSet {
        let mut out = StateSet::new();
        for p in from.iter().filter(|&p| p < self.dim()) {
            for &q in &self.succ[p] {
                out.insert(q as usize);
            }
        }
        out
    }

    /// Relational composition: first `self`, then `other`.
    pub fn then(&self, other: &Relation) -> Result<Relation> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let rows = self
            .succ
            .iter()
            .map(|row| {
                let mut out: Vec<u32> = row.iter().flat_map(|&m| other.succ[m as usize].iter().copied()).collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        Ok(Relation { succ: rows })
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let mut r = self.clone();
        for (p, q) in other.pairs() {
            r.insert(p, q)?;
        }
        Ok(r)
    }

    /// Every state has at most one successor.
    pub fn is_partial_function(&self) -> bool {
        self.succ.iter().all(|row| row.len() <= 1)
    }

    /// Every state has at least one successor.
    pub fn is_total(&self) -> bool {
        self.succ.iter().all(|row| !row.is_empty())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// An alphabet symbol. Named letters are matched by name; anonymous letters
/// denote the relation they carry (the letters of full automata).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub name: Option<String>,
    pub relation: Option<Relation>,
}

impl Letter {
    pub fn named(name: impl Into<String>) -> Self {
        Letter { name: Some(name.into()), relation: None }
    }

    pub fn rel(relation: Relation) -> Self {
        Letter { name: None, relation: Some(relation) }
    }

    pub fn named_rel(name: impl Into<String>, relation: Relation) -> Self {
        Letter { name: Some(name.into()), relation: Some(relation) }
    }

    pub fn describe(&self) -> String {
        match (&self.name, &self.relation) {
            (Some(n), _) => n.clone(),
            (None, Some(r)) => format!("{r:?}"),
            (None, None) => "<empty letter>".into(),
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `Id(T)` as an anonymous letter.
pub fn id_letter(n: usize, t: &StateSet) -> Letter {
    Letter::rel(Relation::identity_on(n, t))
}
