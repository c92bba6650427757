//! Turning an undersized candidate complement of `FB_n` into a concrete
//! word on which it disagrees with the complement language.

use crate::automaton::{Automaton, LassoWord};
use crate::error::{Error, Result};
use crate::lasso::{accepting_run, lasso_member};
use crate::nbw::{gen_fb, hard_word, HardWord};
use crate::relation::Letter;
use crate::run::LassoRun;
use crate::set::StateSet;

/// An accepting run of the candidate over `α_n` that was pumped into a run
/// over a word of `L(FB_n)`.
#[derive(Clone, Debug)]
pub struct ConfusionWitness {
    pub i: usize,
    pub j: usize,
    pub q_hat: usize,
    pub t1: usize,
    pub t2: usize,
    /// `Q̂_0 .. Q̂_{L-1}`.
    pub q_hats: Vec<StateSet>,
    /// `α′ = u·v^ω`.
    pub word: LassoWord,
    /// Accepting run of the candidate over `α_n`.
    pub source: LassoRun,
    /// `ρ′` over `α′`.
    pub run: LassoRun,
}

/// The candidate rejects `α_n`, which lies outside `L(FB_n)`.
#[derive(Clone, Debug)]
pub struct DirectFailure {
    pub word: LassoWord,
}

#[derive(Clone, Debug)]
pub enum ConfuseOutcome {
    Witness(Box<ConfusionWitness>),
    NotApplicable(DirectFailure),
}

/// The distinct letters of `α_n`'s period, in order of first occurrence.
pub fn period_letters(hw: &HardWord) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in &hw.period {
        if !out.contains(l) {
            out.push(l.clone());
        }
    }
    out
}

pub fn confuse(ca: &Automaton, n: usize) -> Result<ConfuseOutcome> {
    confuse_with(ca, &hard_word(n)?)
}

pub fn confuse_with(ca: &Automaton, hw: &HardWord) -> Result<ConfuseOutcome> {
    let l = hw.len();
    if ca.states() >= l {
        return Err(Error::OutOfRange(format!(
            "candidate has {} states, needs fewer than L({}) = {l}",
            ca.states(),
            hw.n
        )));
    }
    let alpha = hw.lasso();
    let Some(rho) = accepting_run(ca, &alpha)? else {
        return Ok(ConfuseOutcome::NotApplicable(DirectFailure { word: alpha }));
    };
    let p = hw.period.len();
    let (s, c) = (rho.stem_end(), rho.cycle_len());
    let q_hats: Vec<StateSet> =
        hw.offsets.iter().map(|&k| (s..s + c).filter(|x| x % p == k).map(|x| rho.state_at(x)).collect()).collect();
    let (i, j, q_hat) = (0..l)
        .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
        .find_map(|(i, j)| q_hats[i].intersection(&q_hats[j]).iter().next().map(|q| (i, j, q)))
        .ok_or_else(|| Error::Internal("no collision among the boundary sets".into()))?;
    let (fi, fj) = (&hw.rankings[i].ranks, &hw.rankings[j].ranks);
    let (i, j) = if fi.iter().zip(fj).any(|(a, b)| a > b) { (i, j) } else { (j, i) };

    let hit = |lo: usize, k: usize| {
        (lo..lo + c)
            .find(|&x| x % p == k && rho.state_at(x) == q_hat)
            .ok_or_else(|| Error::Internal("boundary state does not recur".into()))
    };
    let t1 = hit(s + c, hw.offsets[i])?;
    let t2 = hit(t1 + c, hw.offsets[j])?;
    let word = LassoWord::new(
        (0..t1).map(|x| alpha.letter_at(x).clone()).collect(),
        (t1..t2).map(|x| alpha.letter_at(x).clone()).collect(),
    )?;
    let run = LassoRun {
        stem: (0..=t1).map(|x| rho.state_at(x)).collect(),
        cycle: (t1 + 1..=t2).map(|x| rho.state_at(x)).collect(),
    };
    Ok(ConfuseOutcome::Witness(Box::new(ConfusionWitness { i, j, q_hat, t1, t2, q_hats, word, source: rho, run })))
}

/// Re-checks a witness with membership oracles only: `α′ ∈ L(FB_n)`, `ρ′`
/// is an accepting run of the candidate over `α′`, and `ρ′` has the
/// source run's `Occ` and `Inf`.
pub fn verify_confusion(ca: &Automaton, n: usize, w: &ConfusionWitness) -> Result<bool> {
    Ok(lasso_member(&gen_fb(n)?, &w.word)?
        && w.run.verify(ca, &w.word)?
        && ca.acceptance().accepts_inf(&w.run.inf())
        && w.run.occ() == w.source.occ()
        && w.run.inf() == w.source.inf())
}

/// Re-checks a direct failure: neither `FB_n` nor the candidate accepts the
/// word, so the candidate misses a word of the complement.
pub fn verify_direct_failure(ca: &Automaton, n: usize, d: &DirectFailure) -> Result<bool> {
    Ok(!lasso_member(&gen_fb(n)?, &d.word)? && !lasso_member(ca, &d.word)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Acceptance;
    use crate::relation::Relation;

    fn one_state(hw: &HardWord, acc: Acceptance) -> Automaton {
        let letters = period_letters(hw).into_iter().map(|l| (l, Relation::identity(1))).collect();
        Automaton::explicit(1, StateSet::singleton(0), letters, acc).unwrap()
    }

    #[test]
    fn universal_candidate_is_confused() {
        let hw = hard_word(3).unwrap();
        let ca = one_state(&hw, Acceptance::Buchi(StateSet::singleton(0)));
        match confuse_with(&ca, &hw).unwrap() {
            ConfuseOutcome::Witness(w) => assert!(verify_confusion(&ca, 3, &w).unwrap()),
            ConfuseOutcome::NotApplicable(_) => panic!("universal candidate accepts α_3"),
        }
    }

    #[test]
    fn empty_candidate_fails_directly() {
        let hw = hard_word(3).unwrap();
        let ca = one_state(&hw, Acceptance::Buchi(StateSet::new()));
        match confuse_with(&ca, &hw).unwrap() {
            ConfuseOutcome::NotApplicable(d) => assert!(verify_direct_failure(&ca, 3, &d).unwrap()),
            ConfuseOutcome::Witness(_) => panic!("empty candidate accepts nothing"),
        }
    }

    #[test]
    fn oversized_candidate_is_refused() {
        let hw = hard_word(3).unwrap();
        let letters = period_letters(&hw).into_iter().map(|l| (l, Relation::identity(3))).collect();
        let ca = Automaton::explicit(3, StateSet::singleton(0), letters, Acceptance::Buchi(StateSet::full(3))).unwrap();
        assert!(confuse_with(&ca, &hw).is_err());
    }
}
