//! Automata over relation-valued letters.
//!
//! Every automaton interprets a letter as a transition relation over its own
//! states. Full automata use the letter's relation directly; explicit
//! automata look the letter up in a table; derived automata compute the
//! transition relation from the letter's relation with a rule (used for
//! constructions such as degeneralization of a full automaton).

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::relation::{Letter, Relation};
use crate::set::StateSet;

/// Acceptance conditions. `Finite` is the final-state condition of automata
/// over finite words; the other six are the common omega conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptance {
    Finite(StateSet),
    Buchi(StateSet),
    GenBuchi(Vec<StateSet>),
    /// Pairs `(G, B)`: some pair has `Inf ∩ G ≠ ∅` and `Inf ∩ B = ∅`.
    Rabin(Vec<(StateSet, StateSet)>),
    /// Pairs `(G, B)`: every pair with `Inf ∩ B ≠ ∅` has `Inf ∩ G ≠ ∅`.
    Streett(Vec<(StateSet, StateSet)>),
    Muller(Vec<StateSet>),
    /// Priority per state; min priority seen infinitely often must be even.
    Parity(Vec<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AcceptanceKind {
    Finite,
    Buchi,
    GenBuchi,
    Rabin,
    Streett,
    Muller,
    Parity,
}

impl AcceptanceKind {
    pub fn name(self) -> &'static str {
        match self {
            AcceptanceKind::Finite => "nfw",
            AcceptanceKind::Buchi => "buchi",
            AcceptanceKind::GenBuchi => "genbuchi",
            AcceptanceKind::Rabin => "rabin",
            AcceptanceKind::Streett => "streett",
            AcceptanceKind::Muller => "muller",
            AcceptanceKind::Parity => "parity",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "nfw" => AcceptanceKind::Finite,
            "buchi" => AcceptanceKind::Buchi,
            "genbuchi" => AcceptanceKind::GenBuchi,
            "rabin" => AcceptanceKind::Rabin,
            "streett" => AcceptanceKind::Streett,
            "muller" => AcceptanceKind::Muller,
            "parity" => AcceptanceKind::Parity,
            _ => return None,
        })
    }
}

impl Acceptance {
    pub fn kind(&self) -> AcceptanceKind {
        match self {
            Acceptance::Finite(_) => AcceptanceKind::Finite,
            Acceptance::Buchi(_) => AcceptanceKind::Buchi,
            Acceptance::GenBuchi(_) => AcceptanceKind::GenBuchi,
            Acceptance::Rabin(_) => AcceptanceKind::Rabin,
            Acceptance::Streett(_) => AcceptanceKind::Streett,
            Acceptance::Muller(_) => AcceptanceKind::Muller,
            Acceptance::Parity(_) => AcceptanceKind::Parity,
        }
    }

    /// Index `k` where defined.
    pub fn index(&self) -> Option<usize> {
        match self {
            Acceptance::GenBuchi(f) => Some(f.len()),
            Acceptance::Rabin(p) | Acceptance::Streett(p) => Some(p.len()),
            _ => None,
        }
    }

    /// Whether a run with infinity set `inf` is successful.
    pub fn accepts_inf(&self, inf: &StateSet) -> bool {
        match self {
            Acceptance::Finite(_) => false,
            Acceptance::Buchi(f) => inf.intersects(f),
            Acceptance::GenBuchi(fs) => fs.iter().all(|f| inf.intersects(f)),
            Acceptance::Rabin(pairs) => pairs.iter().any(|(g, b)| inf.intersects(g) && !inf.intersects(b)),
            Acceptance::Streett(pairs) => pairs.iter().all(|(g, b)| !inf.intersects(b) || inf.intersects(g)),
            Acceptance::Muller(family) => family.iter().any(|t| t == inf),
            Acceptance::Parity(c) => inf.iter().map(|q| c[q]).min().is_some_and(|p| p % 2 == 0),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let check = |s: &StateSet| {
            if s.bound() > n {
                Err(Error::StateOutOfRange { state: s.bound() - 1, states: n })
            } else {
                Ok(())
            }
        };
        match self {
            Acceptance::Finite(f) | Acceptance::Buchi(f) => check(f),
            Acceptance::GenBuchi(fs) => {
                if fs.is_empty() {
                    return Err(Error::EmptyAcceptance);
                }
                fs.iter().try_for_each(check)
            }
            Acceptance::Rabin(p) | Acceptance::Streett(p) => {
                if p.is_empty() {
                    return Err(Error::EmptyAcceptance);
                }
                p.iter().try_for_each(|(g, b)| check(g).and(check(b)))
            }
            Acceptance::Muller(fam) => fam.iter().try_for_each(check),
            Acceptance::Parity(c) => {
                if c.len() != n {
                    Err(Error::DimensionMismatch { expected: n, found: c.len() })
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// Maps a letter relation over `symbol_states` states to a transition
/// relation over the automaton's own states.
pub type TransitionRule = Arc<dyn Fn(&Relation) -> Relation + Send + Sync>;

#[derive(Clone)]
pub struct ExplicitAlphabet {
    letters: Vec<Letter>,
    transitions: Vec<Relation>,
    by_name: HashMap<String, usize>,
    by_relation: HashMap<Relation, usize>,
}

impl ExplicitAlphabet {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn transitions(&self) -> &[Relation] {
        &self.transitions
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Index of the table entry matching `letter`: by name when both carry
    /// one, otherwise by the denoted relation.
    pub fn lookup(&self, letter: &Letter) -> Option<usize> {
        if let Some(name) = &letter.name {
            if let Some(&i) = self.by_name.get(name) {
                return Some(i);
            }
        }
        letter.relation.as_ref().and_then(|r| self.by_relation.get(r).copied())
    }
}

#[derive(Clone)]
pub enum Alphabet {
    /// Every relation over the automaton's states is a letter.
    ImplicitFull,
    Explicit(ExplicitAlphabet),
    /// Letters are relations over `symbol_states` states; transitions are
    /// computed by `rule`.
    Derived {
        symbol_states: usize,
        rule: TransitionRule,
    },
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::ImplicitFull => f.write_str("ImplicitFull"),
            Alphabet::Explicit(e) => f.debug_list().entries(&e.letters).finish(),
            Alphabet::Derived { symbol_states, .. } => {
                write!(f, "Derived {{ symbol_states: {symbol_states} }}")
            }
        }
    }
}

/// An automaton `(Σ, S, I, Δ, Acc)` with `S = {0..states}`.
#[derive(Clone, Debug)]
pub struct Automaton {
    states: usize,
    initial: StateSet,
    alphabet: Alphabet,
    acceptance: Acceptance,
}

/// A finite word.
pub type FiniteWord = Vec<Letter>;

/// The ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    pub prefix: FiniteWord,
    pub period: FiniteWord,
}

impl LassoWord {
    pub fn new(prefix: FiniteWord, period: FiniteWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    /// Letter at position `i` of the infinite word.
    pub fn letter_at(&self, i: usize) -> &Letter {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Same omega-word with one period copied into the prefix.
    pub fn unrolled(&self) -> LassoWord {
        let mut prefix = self.prefix.clone();
        prefix.extend(self.period.iter().cloned());
        LassoWord { prefix, period: self.period.clone() }
    }

    /// The shortest representation of the same omega-word: a primitive
    /// period and a prefix that cannot be folded into it.
    pub fn canonical(&self) -> LassoWord {
        let p = self.period.len();
        let root =
            (1..=p).find(|&d| p.is_multiple_of(d) && (d..p).all(|i| self.period[i] == self.period[i - d])).unwrap_or(p);
        let mut period: FiniteWord = self.period[..root].to_vec();
        let mut prefix = self.prefix.clone();
        while prefix.last().is_some_and(|l| l == period.last().unwrap()) {
            prefix.pop();
            period.rotate_right(1);
        }
        LassoWord { prefix, period }
    }
}

impl Automaton {
    pub fn new(states: usize, initial: StateSet, alphabet: Alphabet, acceptance: Acceptance) -> Result<Self> {
        if initial.bound() > states {
            return Err(Error::StateOutOfRange { state: initial.bound() - 1, states });
        }
        acceptance.validate(states)?;
        if let Alphabet::Explicit(e) = &alphabet {
            for t in &e.transitions {
                if t.dim() != states {
                    return Err(Error::DimensionMismatch { expected: states, found: t.dim() });
                }
            }
        }
        Ok(Automaton { states, initial, alphabet, acceptance })
    }

    /// Explicit alphabet from `(symbol, transition relation)` entries.
    pub fn explicit(
        states: usize,
        initial: StateSet,
        letters: Vec<(Letter, Relation)>,
        acceptance: Acceptance,
    ) -> Result<Self> {
        let mut alpha = ExplicitAlphabet {
            letters: Vec::with_capacity(letters.len()),
            transitions: Vec::with_capacity(letters.len()),
            by_name: HashMap::new(),
            by_relation: HashMap::new(),
        };
        for (i, (letter, trans)) in letters.into_iter().enumerate() {
            if letter.name.is_none() && letter.relation.is_none() {
                return Err(Error::Invalid("letter without name or relation".into()));
            }
            if let Some(name) = &letter.name {
                if alpha.by_name.insert(name.clone(), i).is_some() {
                    return Err(Error::DuplicateLetter(name.clone()));
                }
            }
            if let Some(r) = &letter.relation {
                alpha.by_relation.entry(r.clone()).or_insert(i);
            }
            alpha.letters.push(letter);
            alpha.transitions.push(trans);
        }
        Self::new(states, initial, Alphabet::Explicit(alpha), acceptance)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn explicit_alphabet(&self) -> Option<&ExplicitAlphabet> {
        match &self.alphabet {
            Alphabet::Explicit(e) => Some(e),
            _ => None,
        }
    }

    pub fn with_acceptance(&self, acceptance: Acceptance) -> Result<Self> {
        Self::new(self.states, self.initial.clone(), self.alphabet.clone(), acceptance)
    }

    /// Transition relation of one letter.
    pub fn transition<'a>(&'a self, letter: &'a Letter) -> Result<Cow<'a, Relation>> {
        match &self.alphabet {
            Alphabet::ImplicitFull => {
                let r = letter.relation.as_ref().ok_or_else(|| Error::UnknownLetter(letter.describe()))?;
                if r.dim() != self.states {
                    return Err(Error::DimensionMismatch { expected: self.states, found: r.dim() });
                }
                Ok(Cow::Borrowed(r))
            }
            Alphabet::Explicit(e) => e
                .lookup(letter)
                .map(|i| Cow::Borrowed(&e.transitions[i]))
                .ok_or_else(|| Error::UnknownLetter(letter.describe())),
            Alphabet::Derived { symbol_states, rule } => {
                let r = letter.relation.as_ref().ok_or_else(|| Error::UnknownLetter(letter.describe()))?;
                if r.dim() != *symbol_states {
                    return Err(Error::DimensionMismatch { expected: *symbol_states, found: r.dim() });
                }
                Ok(Cow::Owned(rule(r)))
            }
        }
    }

    /// Resolves every letter of a word to its transition relation.
    pub fn resolve<'a>(&'a self, word: &'a [Letter]) -> Result<Vec<Cow<'a, Relation>>> {
        word.iter().map(|a| self.transition(a)).collect()
    }

    /// `|I| = 1` and every letter is a partial function.
    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() != 1 {
            return false;
        }
        match &self.alphabet {
            Alphabet::Explicit(e) => e.transitions.iter().all(Relation::is_partial_function),
            Alphabet::ImplicitFull => self.states <= 1,
            Alphabet::Derived { .. } => false,
        }
    }

    /// Every state has a successor under every letter (explicit alphabets).
    pub fn is_complete(&self) -> bool {
        match &self.alphabet {
            Alphabet::Explicit(e) => e.transitions.iter().all(Relation::is_total),
            _ => false,
        }
    }

    /// Restricts to the given named letters, each denoting a relation over
    /// the automaton's symbol space (`FB_n ↾ Γ`).
    pub fn restrict(&self, gamma: &[Letter]) -> Result<Automaton> {
        let mut entries = Vec::with_capacity(gamma.len());
        for letter in gamma {
            let trans = match &self.alphabet {
                Alphabet::Explicit(e) => {
                    let i = e.lookup(letter).ok_or_else(|| Error::UnknownLetter(letter.describe()))?;
                    e.transitions[i].clone()
                }
                _ => self.transition(letter)?.into_owned(),
            };
            entries.push((letter.clone(), trans));
        }
        Automaton::explicit(self.states, self.initial.clone(), entries, self.acceptance.clone())
    }

    /// States reachable from `I` over any letter; explicit alphabets only.
    pub fn reachable_states(&self) -> Result<StateSet> {
        let e = self.explicit_alphabet().ok_or(Error::NotExplicit)?;
        let mut seen = self.initial.clone();
        let mut stack: Vec<usize> = seen.iter().collect();
        while let Some(p) = stack.pop() {
            for t in &e.transitions {
                for &q in t.successors(p) {
                    if seen.insert(q as usize) {
                        stack.push(q as usize);
                    }
                }
            }
        }
        Ok(seen)
    }

    /// Accepts a finite word under `Finite` acceptance.
    pub fn accepts_finite(&self, word: &[Letter]) -> Result<bool> {
        let f = match &self.acceptance {
            Acceptance::Finite(f) => f,
            other => return Err(Error::WrongAcceptance { expected: "nfw", found: other.kind().name() }),
        };
        let mut cur = self.initial.clone();
        for t in self.resolve(word)? {
            cur = t.image(&cur);
        }
        Ok(cur.intersects(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_letter() -> Automaton {
        let a = Relation::from_pairs(2, [(0, 1), (1, 1)]).unwrap();
        let b = Relation::from_pairs(2, [(0, 0), (1, 0)]).unwrap();
        Automaton::explicit(
            2,
            StateSet::singleton(0),
            vec![(Letter::named("a"), a), (Letter::named("b"), b)],
            Acceptance::Buchi(StateSet::singleton(1)),
        )
        .unwrap()
    }

    #[test]
    fn explicit_lookup_and_determinism() {
        let a = two_letter();
        assert!(a.is_deterministic());
        assert!(a.is_complete());
        assert!(matches!(a.transition(&Letter::named("c")), Err(Error::UnknownLetter(_))));
        assert!(a.transition(&Letter::named("a")).unwrap().contains(0, 1));
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = Relation::identity(1);
        let res = Automaton::explicit(
            1,
            StateSet::singleton(0),
            vec![(Letter::named("a"), r.clone()), (Letter::named("a"), r)],
            Acceptance::Buchi(StateSet::new()),
        );
        assert!(matches!(res, Err(Error::DuplicateLetter(_))));
    }

    #[test]
    fn restrict_to_whole_alphabet_is_identity() {
        let a = two_letter();
        let letters = a.explicit_alphabet().unwrap().letters().to_vec();
        let b = a.restrict(&letters).unwrap();
        for l in &letters {
            assert_eq!(a.transition(l).unwrap(), b.transition(l).unwrap());
        }
    }

    #[test]
    fn implicit_full_uses_letter_relation() {
        let a = Automaton::new(3, StateSet::singleton(0), Alphabet::ImplicitFull, Acceptance::Buchi(StateSet::new()))
            .unwrap();
        assert!(a.transition(&Letter::rel(Relation::empty(3))).unwrap().is_empty());
        assert_eq!(a.transition(&Letter::rel(Relation::complete(3))).unwrap().len(), 9);
        assert!(matches!(a.transition(&Letter::rel(Relation::empty(2))), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn lasso_requires_period() {
        assert_eq!(LassoWord::new(vec![], vec![]), Err(Error::EmptyPeriod));
    }
}
