//! Emptiness of Büchi languages and of their intersections.

use crate::automaton::{Acceptance, Automaton, ExplicitAlphabet};
use crate::error::{Error, Result};
use crate::graph;
use crate::set::StateSet;

/// Some reachable nontrivial component meets every set in `goals`.
fn has_fair_cycle(adj: &[Vec<u32>], sources: &[u32], goals: &[Vec<bool>]) -> bool {
    let alive = graph::reachable(adj, &vec![true; adj.len()], sources);
    graph::sccs(adj, &alive)
        .into_iter()
        .any(|c| graph::nontrivial(adj, &c) && goals.iter().all(|g| c.iter().any(|&v| g[v as usize])))
}

fn union_graph(e: &ExplicitAlphabet, n: usize) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); n];
    for t in e.transitions() {
        for (p, q) in t.pairs() {
            adj[p].push(q as u32);
        }
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    adj
}

/// `L(A) = ∅` for Büchi or generalized Büchi automata over explicit
/// alphabets.
pub fn is_empty(a: &Automaton) -> Result<bool> {
    let e = a.explicit_alphabet().ok_or(Error::NotExplicit)?;
    let n = a.states();
    let sets: Vec<&StateSet> = match a.acceptance() {
        Acceptance::Buchi(f) => vec![f],
        Acceptance::GenBuchi(fs) => fs.iter().collect(),
        other => return Err(Error::WrongAcceptance { expected: "nbw or gbw", found: other.kind().name() }),
    };
    let goals: Vec<Vec<bool>> = sets.iter().map(|f| (0..n).map(|q| f.contains(q)).collect()).collect();
    let sources: Vec<u32> = a.initial().iter().map(|q| q as u32).collect();
    Ok(!has_fair_cycle(&union_graph(e, n), &sources, &goals))
}

/// `L(A) ∩ L(B) = ∅` for Büchi automata over the same explicit alphabet.
pub fn intersect_empty(a: &Automaton, b: &Automaton) -> Result<bool> {
    let (fa, fb) = match (a.acceptance(), b.acceptance()) {
        (Acceptance::Buchi(fa), Acceptance::Buchi(fb)) => (fa, fb),
        (Acceptance::Buchi(_), other) | (other, _) => {
            return Err(Error::WrongAcceptance { expected: "nbw", found: other.kind().name() })
        }
    };
    let ea = a.explicit_alphabet().ok_or(Error::NotExplicit)?;
    let eb = b.explicit_alphabet().ok_or(Error::NotExplicit)?;
    if ea.len() != eb.len() {
        return Err(Error::AlphabetMismatch(format!("{} vs {} letters", ea.len(), eb.len())));
    }
    let (na, nb) = (a.states(), b.states());
    let mut adj = vec![Vec::new(); na * nb];
    for (letter, ta) in ea.letters().iter().zip(ea.transitions()) {
        let j = eb
            .lookup(letter)
            .ok_or_else(|| Error::AlphabetMismatch(format!("letter {} missing", letter.describe())))?;
        let tb = &eb.transitions()[j];
        for (p, p2) in ta.pairs() {
            for q in 0..nb {
                for &q2 in tb.successors(q) {
                    adj[p * nb + q].push((p2 * nb + q2 as usize) as u32);
                }
            }
        }
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    let sources: Vec<u32> =
        a.initial().iter().flat_map(|p| b.initial().iter().map(move |q| (p * nb + q) as u32)).collect();
    let goal_a: Vec<bool> = (0..na * nb).map(|v| fa.contains(v / nb)).collect();
    let goal_b: Vec<bool> = (0..na * nb).map(|v| fb.contains(v % nb)).collect();
    Ok(!has_fair_cycle(&adj, &sources, &[goal_a, goal_b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{Letter, Relation};

    fn aut(f: &[usize]) -> Automaton {
        let a = Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        let b = Relation::from_pairs(2, [(1, 0), (0, 0)]).unwrap();
        Automaton::explicit(
            2,
            StateSet::singleton(0),
            vec![(Letter::named("a"), a), (Letter::named("b"), b)],
            Acceptance::Buchi(f.iter().collect()),
        )
        .unwrap()
    }

    #[test]
    fn self_intersection_of_nonempty_language() {
        let a = aut(&[1]);
        assert!(!is_empty(&a).unwrap());
        assert!(!intersect_empty(&a, &a).unwrap());
    }

    #[test]
    fn empty_final_set_gives_empty_intersection() {
        assert!(intersect_empty(&aut(&[1]), &aut(&[])).unwrap());
        assert!(is_empty(&aut(&[])).unwrap());
    }

    #[test]
    fn mismatched_alphabets_rejected() {
        let c = Automaton::explicit(
            1,
            StateSet::singleton(0),
            vec![(Letter::named("z"), Relation::identity(1))],
            Acceptance::Buchi(StateSet::new()),
        )
        .unwrap();
        assert!(matches!(intersect_empty(&aut(&[1]), &c), Err(Error::AlphabetMismatch(_))));
    }
}
