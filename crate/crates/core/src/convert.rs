//! Conversions between acceptance types and dualization of deterministic
//! automata.

use std::sync::Arc;

use crate::automaton::{Acceptance, AcceptanceKind, Alphabet, Automaton};
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::set::StateSet;

const MAX_POWERSET_STATES: usize = 20;

/// Lifts a base transition relation to the counter product used by
/// [`degeneralize`]. Node `(q, c)` has index `c*n + q`.
fn lift_counter(base: &Relation, fs: &[StateSet]) -> Relation {
    let n = base.dim();
    let k = fs.len();
    let mut rows = vec![Vec::new(); n * k];
    for c in 0..k {
        for (p, q) in base.pairs() {
            let next = if fs[c].contains(p) { (c + 1) % k } else { c };
            rows[c * n + p].push((next * n + q) as u32);
        }
    }
    Relation::from_rows(rows)
}

/// Counter construction from generalized Büchi to Büchi with `n·k` states.
pub fn degeneralize(a: &Automaton) -> Result<Automaton> {
    let fs = match a.acceptance() {
        Acceptance::GenBuchi(fs) => fs.clone(),
        other => return Err(Error::WrongAcceptance { expected: "gbw", found: other.kind().name() }),
    };
    let n = a.states();
    let k = fs.len();
    let initial: StateSet = a.initial().iter().collect();
    let last = k - 1;
    let finals: StateSet = fs[last].iter().map(|q| last * n + q).collect();
    let acceptance = Acceptance::Buchi(finals);
    match a.alphabet() {
        Alphabet::Explicit(e) => {
            let entries =
                e.letters().iter().zip(e.transitions()).map(|(l, t)| (l.clone(), lift_counter(t, &fs))).collect();
            Automaton::explicit(n * k, initial, entries, acceptance)
        }
        Alphabet::ImplicitFull => {
            let rule = Arc::new(move |r: &Relation| lift_counter(r, &fs));
            Automaton::new(n * k, initial, Alphabet::Derived { symbol_states: n, rule }, acceptance)
        }
        Alphabet::Derived { symbol_states, rule } => {
            let inner = rule.clone();
            let rule = Arc::new(move |r: &Relation| lift_counter(&inner(r), &fs));
            Automaton::new(n * k, initial, Alphabet::Derived { symbol_states: *symbol_states, rule }, acceptance)
        }
    }
}

fn powerset(n: usize) -> Result<impl Iterator<Item = StateSet>> {
    if n > MAX_POWERSET_STATES {
        return Err(Error::OutOfRange(format!("powerset acceptance limited to {MAX_POWERSET_STATES} states")));
    }
    Ok((0..1u64 << n).map(StateSet::from_mask))
}

/// Re-reads a Büchi condition as an equivalent condition of another type
/// over the same states.
pub fn buchi_to_type(a: &Automaton, target: AcceptanceKind) -> Result<Automaton> {
    let f = match a.acceptance() {
        Acceptance::Buchi(f) => f.clone(),
        other => return Err(Error::WrongAcceptance { expected: "nbw", found: other.kind().name() }),
    };
    let n = a.states();
    let acc = match target {
        AcceptanceKind::Buchi => Acceptance::Buchi(f),
        AcceptanceKind::GenBuchi => Acceptance::GenBuchi(vec![f]),
        AcceptanceKind::Rabin => Acceptance::Rabin(vec![(f, StateSet::new())]),
        AcceptanceKind::Streett => Acceptance::Streett(vec![(f, StateSet::full(n))]),
        AcceptanceKind::Muller => Acceptance::Muller(powerset(n)?.filter(|t| t.intersects(&f)).collect()),
        AcceptanceKind::Parity => Acceptance::Parity((0..n).map(|q| if f.contains(q) { 0 } else { 1 }).collect()),
        AcceptanceKind::Finite => return Err(Error::WrongAcceptance { expected: "omega", found: "nfw" }),
    };
    a.with_acceptance(acc)
}

/// Complements a deterministic, complete automaton by dualizing its
/// acceptance condition.
pub fn complement_det(a: &Automaton) -> Result<Automaton> {
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    if !a.is_complete() {
        return Err(Error::NotComplete);
    }
    let swap = |pairs: &[(StateSet, StateSet)]| -> Vec<(StateSet, StateSet)> {
        pairs.iter().map(|(g, b)| (b.clone(), g.clone())).collect()
    };
    let acc = match a.acceptance() {
        Acceptance::Rabin(p) => Acceptance::Streett(swap(p)),
        Acceptance::Streett(p) => Acceptance::Rabin(swap(p)),
        Acceptance::Parity(c) => Acceptance::Parity(c.iter().map(|d| d + 1).collect()),
        Acceptance::Muller(fam) => Acceptance::Muller(powerset(a.states())?.filter(|t| !fam.contains(t)).collect()),
        other => {
            return Err(Error::WrongAcceptance {
                expected: "rabin, streett, muller or parity",
                found: other.kind().name(),
            })
        }
    };
    a.with_acceptance(acc)
}
