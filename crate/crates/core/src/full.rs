//! Full automata, the embedding of explicit automata into them, and the
//! fooling-set witness for finite-word complementation.

use crate::automaton::{Acceptance, Alphabet, Automaton, FiniteWord, LassoWord};
use crate::error::{Error, Result};
use crate::profile::transition_profile;
use crate::relation::{id_letter, Letter, Relation};
use crate::set::StateSet;

/// The full automaton over `n` states: every relation is a letter.
pub fn full_automaton(n: usize, initial: StateSet, acceptance: Acceptance) -> Result<Automaton> {
    if n == 0 {
        return Err(Error::OutOfRange("a full automaton needs at least one state".into()));
    }
    if initial.is_empty() {
        return Err(Error::EmptyInitial);
    }
    Automaton::new(n, initial, Alphabet::ImplicitFull, acceptance)
}

/// `u_T = Id(T)`
pub fn u_word(n: usize, t: &StateSet) -> FiniteWord {
    vec![id_letter(n, t)]
}

/// `v_T = Id(S \ T)`
pub fn v_word(n: usize, t: &StateSet) -> FiniteWord {
    vec![id_letter(n, &StateSet::full(n).difference(t))]
}

/// Sends each source letter to the relation it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    pub entries: Vec<(Letter, Relation)>,
}

impl LetterMap {
    pub fn image(&self, letter: &Letter) -> Result<Letter> {
        self.entries
            .iter()
            .find(|(l, _)| l == letter || (letter.name.is_some() && l.name == letter.name))
            .map(|(_, r)| Letter::rel(r.clone()))
            .ok_or_else(|| Error::UnknownLetter(letter.describe()))
    }

    pub fn translate(&self, w: &[Letter]) -> Result<FiniteWord> {
        w.iter().map(|l| self.image(l)).collect()
    }

    pub fn translate_lasso(&self, w: &LassoWord) -> Result<LassoWord> {
        LassoWord::new(self.translate(&w.prefix)?, self.translate(&w.period)?)
    }
}

/// The full automaton sharing states, initial set and acceptance with an
/// explicit-alphabet automaton, plus the letter translation between them.
pub fn embed(a1: &Automaton) -> Result<(Automaton, LetterMap)> {
    let e = a1.explicit_alphabet().ok_or(Error::NotExplicit)?;
    let map = LetterMap { entries: e.letters().iter().cloned().zip(e.transitions().iter().cloned()).collect() };
    let a2 = Automaton::new(a1.states(), a1.initial().clone(), Alphabet::ImplicitFull, a1.acceptance().clone())?;
    Ok((a2, map))
}

/// Pulls an automaton over relation letters back to the source alphabet of
/// `map`: source letter `a` moves like `map(a)` does.
pub fn pull_back(ca2: &Automaton, map: &LetterMap) -> Result<Automaton> {
    let mut entries = Vec::with_capacity(map.entries.len());
    for (letter, rel) in &map.entries {
        let t = ca2.transition(&Letter::rel(rel.clone()))?.into_owned();
        entries.push((letter.clone(), t));
    }
    Automaton::explicit(ca2.states(), ca2.initial().clone(), entries, ca2.acceptance().clone())
}

/// `a = {(s_{i+1}, s_i)} ∪ {(s_0, s_{n-1})}`
pub fn letter_a(n: usize) -> Relation {
    let pairs = (0..n.saturating_sub(1)).map(|i| (i + 1, i)).chain(std::iter::once((0, n - 1)));
    Relation::from_pairs(n, pairs).expect("states in range")
}

/// `b = Id(S \ {s_0})`
pub fn letter_b(n: usize) -> Relation {
    let mut s = StateSet::full(n);
    s.remove(0);
    Relation::identity_on(n, &s)
}

/// `c_i = Id(S \ {s_i})`
pub fn letter_c(n: usize, i: usize) -> Relation {
    let mut s = StateSet::full(n);
    s.remove(i);
    Relation::identity_on(n, &s)
}

/// `a^i b a^{n-i}`, equivalent to `c_i` over the full automaton.
pub fn c_substitute(n: usize, i: usize) -> FiniteWord {
    let a = Letter::named_rel("a", letter_a(n));
    let b = Letter::named_rel("b", letter_b(n));
    let mut w = vec![a.clone(); i];
    w.push(b);
    w.extend(std::iter::repeat_n(a, n - i));
    w
}

/// `w(T) = Π_{s_i ∉ T} a^i b a^{n-i}`, equivalent to `Id(T)`.
pub fn binary_word(n: usize, t: &StateSet) -> FiniteWord {
    (0..n).filter(|&i| !t.contains(i)).flat_map(|i| c_substitute(n, i)).collect()
}

/// The finite-word witness family: `FA_n` and its restriction `A_n` to `{a, b}`.
#[derive(Clone, Debug)]
pub struct NfwWitness {
    pub n: usize,
    pub fa: Automaton,
    pub an: Automaton,
}

pub fn nfw_witness(n: usize) -> Result<NfwWitness> {
    let all = StateSet::full(n);
    let fa = full_automaton(n, all.clone(), Acceptance::Finite(all))?;
    let an = fa.restrict(&[Letter::named_rel("a", letter_a(n)), Letter::named_rel("b", letter_b(n))])?;
    Ok(NfwWitness { n, fa, an })
}

/// Which alphabet the fooling words are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoolingAlphabet {
    /// `u_T = Id(T)`, `v_T = Id(S \ T)` over `FA_n`.
    Relations,
    /// `w(T)` and `w(S \ T)` over `A_n`.
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoolingEntry {
    pub t1: StateSet,
    pub t2: StateSet,
    pub accepted: bool,
}

/// Outcome of checking the fooling pattern `u_{T1} v_{T2} ∈ L` iff
/// `T1 \ T2 ≠ ∅` over every pair of subsets.
#[derive(Clone, Debug)]
pub struct FoolingReport {
    pub n: usize,
    pub alphabet: FoolingAlphabet,
    pub table: Vec<FoolingEntry>,
    pub verdict: bool,
}

pub fn fooling_report(n: usize, alphabet: FoolingAlphabet) -> Result<FoolingReport> {
    if n == 0 || n > 12 {
        return Err(Error::OutOfRange("fooling report supports 1 <= n <= 12".into()));
    }
    let wit = nfw_witness(n)?;
    let full = StateSet::full(n);
    let subsets: Vec<StateSet> = (0..1u64 << n).map(StateSet::from_mask).collect();
    type Spell = Box<dyn Fn(&StateSet) -> FiniteWord>;
    let (aut, u_of, v_of): (&Automaton, Spell, Spell) = match alphabet {
        FoolingAlphabet::Relations => (&wit.fa, Box::new(move |t| u_word(n, t)), Box::new(move |t| v_word(n, t))),
        FoolingAlphabet::Binary => {
            let f2 = full.clone();
            (&wit.an, Box::new(move |t| binary_word(n, t)), Box::new(move |t| binary_word(n, &f2.difference(t))))
        }
    };
    // Reach matrices of each half; the word is accepted iff some state
    // connects through both halves, since every state is initial and final.
    let reach = |w: &FiniteWord| -> Result<Relation> { Ok(transition_profile(aut, w, &[], None)?.reach_relation()) };
    let us: Vec<Relation> = subsets.iter().map(|t| reach(&u_of(t))).collect::<Result<_>>()?;
    let vs: Vec<Relation> = subsets.iter().map(|t| reach(&v_of(t))).collect::<Result<_>>()?;
    let mut table = Vec::with_capacity(subsets.len() * subsets.len());
    let mut verdict = true;
    for (i, t1) in subsets.iter().enumerate() {
        for (j, t2) in subsets.iter().enumerate() {
            let accepted = !us[i].then(&vs[j])?.is_empty();
            verdict &= accepted == !t1.difference(t2).is_empty();
            table.push(FoolingEntry { t1: t1.clone(), t2: t2.clone(), accepted });
        }
    }
    Ok(FoolingReport { n, alphabet, table, verdict })
}

/// How two finite words are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    /// Equal reachability over all states.
    Sim,
    /// Equal reachability and reachability through the Büchi set `F`,
    /// both restricted to pairs of non-final states.
    Approx,
}

pub fn word_equiv(a: &Automaton, u: &[Letter], v: &[Letter], mode: EquivMode) -> Result<bool> {
    match mode {
        EquivMode::Sim => {
            let pu = transition_profile(a, u, &[], None)?;
            let pv = transition_profile(a, v, &[], None)?;
            Ok(pu.reach_relation() == pv.reach_relation())
        }
        EquivMode::Approx => {
            let f = match a.acceptance() {
                Acceptance::Buchi(f) => f.clone(),
                other => return Err(Error::WrongAcceptance { expected: "nbw", found: other.kind().name() }),
            };
            let tracked = [f.clone()];
            let pu = transition_profile(a, u, &tracked, None)?;
            let pv = transition_profile(a, v, &tracked, None)?;
            let inner: Vec<usize> = (0..a.states()).filter(|q| !f.contains(*q)).collect();
            Ok(inner.iter().all(|&p| {
                inner.iter().all(|&q| pu.reach(p, q) == pv.reach(p, q) && pu.visits(p, q, 0) == pv.visits(p, q, 0))
            }))
        }
    }
}

/// Number of subsets reached by the subset construction of `a` from `I`,
/// counting the empty set. Explicit alphabets only.
pub fn subset_count(a: &Automaton) -> Result<usize> {
    let e = a.explicit_alphabet().ok_or(Error::NotExplicit)?;
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![a.initial().clone()];
    seen.insert(a.initial().clone());
    while let Some(s) = stack.pop() {
        for t in e.transitions() {
            let next = t.image(&s);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    Ok(seen.len())
}
