mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roa_core::confuse::*;
use roa_core::full::{word_equiv, EquivMode};
use roa_core::gamma::*;
use roa_core::nbw::*;
use roa_core::*;

#[test]
fn w_properties_hold_for_all_pairs() {
    for n in [3, 4] {
        let fb = gen_fb(n).unwrap();
        let (m, _) = l_max(n).unwrap();
        let qs = q_rankings(n, m).unwrap();
        for f in &qs {
            for g in &qs {
                let w = w_word(f, g).unwrap();
                assert_eq!(check_w_properties(&fb, f, g, &w).unwrap(), None, "{f:?} {g:?}");
            }
        }
    }
}

#[test]
fn equal_rankings_loop_on_odd_states_only() {
    let fb = gen_fb(4).unwrap();
    for f in q_rankings(4, 2).unwrap() {
        let p = transition_profile(&fb, &w_word(&f, &f).unwrap(), &[], None).unwrap();
        for q in 0..3 {
            assert_eq!(p.reach(q, q), f.ranks[q] % 2 == 1);
        }
    }
}

#[test]
fn mismatched_rankings_are_rejected() {
    let f = q_rankings(4, 1).unwrap().remove(0);
    let g = q_rankings(4, 2).unwrap().remove(0);
    assert!(w_word(&f, &g).is_err());
}

#[test]
fn hard_words_are_rejected() {
    for n in 2..=4 {
        let hw = hard_word(n).unwrap();
        assert!(!lasso_member(&gen_fb(n).unwrap(), &hw.lasso()).unwrap());
        let period = Gadgets::new(n).substitute_all(&hw.symbols);
        let w = LassoWord::new(vec![], period).unwrap();
        assert!(!lasso_member(&gen_b(n).unwrap(), &w).unwrap());
    }
}

#[test]
fn every_ranking_opens_one_segment() {
    let hw = hard_word(4).unwrap();
    let mut sorted = hw.rankings.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), hw.len());
    assert_eq!(hw.offsets.len(), hw.len());
}

#[test]
fn gamma_is_seven_letters_with_listed_relations() {
    for n in 2..=5 {
        let g = gamma(n);
        assert_eq!(g.len(), 7);
        let b = gen_b(n).unwrap();
        assert_eq!(b.explicit_alphabet().unwrap().len(), 7);
    }
    let rels = gamma_relations(4);
    let clear0 = &rels[1].1;
    assert!(!clear0.contains(0, 0) && clear0.contains(1, 1) && clear0.contains(3, 3));
    let clear_f = &rels[6].1;
    assert!(!clear_f.contains(3, 3) && clear_f.contains(2, 2));
}

#[test]
fn state_transfer_substitutes_are_equivalent() {
    for n in 2..=5 {
        let fb = gen_fb(n).unwrap();
        let gd = Gadgets::new(n);
        for mask in 0..1u64 << (n - 1) {
            let t = StateSet::from_mask(mask);
            let to_f = [Letter::rel(t_to_f(n, &t))];
            let from_f = [Letter::rel(f_to_t(n, &t))];
            assert!(word_equiv(&fb, &to_f, &gd.t_to_f(&t), EquivMode::Approx).unwrap());
            assert!(word_equiv(&fb, &from_f, &gd.f_to_t(&t), EquivMode::Approx).unwrap());
        }
    }
}

#[test]
fn c_substitutes_match_columns() {
    for n in 3..=4 {
        let fb = gen_fb(n).unwrap();
        let gd = Gadgets::new(n);
        let (m, _) = l_max(n).unwrap();
        let qs = q_rankings(n, m).unwrap();
        for f in &qs {
            for g in &qs {
                let target = [Letter::rel(c_letter(n, f, g))];
                assert_eq!(columns(&fb, &gd.c_word(f, g)).unwrap(), columns(&fb, &target).unwrap());
            }
        }
    }
}

#[test]
fn substituted_witness_words_keep_their_properties() {
    let n = 4;
    let fb = gen_fb(n).unwrap();
    let gd = Gadgets::new(n);
    let qs = q_rankings(n, 2).unwrap();
    for f in qs.iter().step_by(5) {
        for g in qs.iter().step_by(3) {
            let w = gd.substitute_all(&w_symbolic(f, g).unwrap());
            assert_eq!(check_w_properties(&fb, f, g, &w).unwrap(), None);
        }
    }
}

fn random_candidate(rng: &mut ChaCha8Rng, hw: &HardWord, states: usize) -> Automaton {
    let entries = period_letters(hw).into_iter().map(|l| (l, random_relation(rng, states, 0.6))).collect();
    let mut f = random_set(rng, states, 0.5);
    if rng.gen_bool(0.2) {
        f = StateSet::new();
    }
    Automaton::explicit(states, StateSet::singleton(0), entries, Acceptance::Buchi(f)).unwrap()
}

#[test]
fn confuser_always_reaches_a_verified_outcome() {
    let hw = hard_word(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut witnesses = 0;
    for i in 0..50 {
        let ca = random_candidate(&mut rng, &hw, 1 + i % 2);
        let accepts = lasso_member(&ca, &hw.lasso()).unwrap();
        match confuse_with(&ca, &hw).unwrap() {
            ConfuseOutcome::Witness(w) => {
                assert!(accepts);
                assert!(verify_confusion(&ca, 3, &w).unwrap());
                assert!(hw.rankings[w.i].ranks.iter().zip(&hw.rankings[w.j].ranks).any(|(a, b)| a > b));
                witnesses += 1;
            }
            ConfuseOutcome::NotApplicable(d) => {
                assert!(!accepts);
                assert!(verify_direct_failure(&ca, 3, &d).unwrap());
            }
        }
    }
    assert!(witnesses > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn connecting_words_concatenate(n in 3usize..5, picks in prop::collection::vec(any::<prop::sample::Index>(), 2..6)) {
        let (m, _) = l_max(n).unwrap();
        let qs = q_rankings(n, m).unwrap();
        let chain: Vec<&QRanking> = picks.iter().map(|i| &qs[i.index(qs.len())]).collect();
        let mut word = Vec::new();
        for pair in chain.windows(2) {
            word.extend(w_word(pair[0], pair[1]).unwrap());
        }
        let fb = gen_fb(n).unwrap();
        let prof = transition_profile(&fb, &word, &[StateSet::singleton(n - 1)], None).unwrap();
        let (first, last) = (chain[0], chain[chain.len() - 1]);
        for p in 0..n - 1 {
            for q in 0..n - 1 {
                let (a, b) = (first.ranks[p], last.ranks[q]);
                if a > b {
                    prop_assert!(prof.visits(p, q, 0));
                }
                if a == b && a % 2 == 1 {
                    prop_assert!(prof.reach(p, q));
                }
            }
        }
    }

    #[test]
    fn gadgets_act_on_columns(n in 2usize..6, base in prop::collection::vec(0usize..7, 0..6), i in 0usize..4, j in 0usize..4) {
        let (i, j) = (i % (n - 1), j % (n - 1));
        let fb = gen_fb(n).unwrap();
        let gd = Gadgets::new(n);
        let g = gamma(n);
        let w: Vec<Letter> = base.iter().map(|&k| g[k].clone()).collect();
        let before = columns(&fb, &w).unwrap();
        let with = |suffix: Vec<Letter>| {
            let mut x = w.clone();
            x.extend(suffix);
            columns(&fb, &x).unwrap()
        };
        let mut swapped = before.clone();
        swapped.swap(i, j);
        prop_assert_eq!(with(gd.swap(i, j)), swapped);
        let mut copied = before.clone();
        copied[i] = before[i].union(&before[j]);
        prop_assert_eq!(with(gd.copy(i, j)), copied);
        let mut cleared = before.clone();
        cleared[i] = StateSet::new();
        prop_assert_eq!(with(gd.clear(i)), cleared);
    }

    #[test]
    fn approx_is_a_congruence(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 3;
        let fb = gen_fb(n).unwrap();
        let gd = Gadgets::new(n);
        let t = random_set(&mut rng, n - 1, 0.5);
        let ctx = |rng: &mut ChaCha8Rng| -> Vec<Letter> {
            (0..rng.gen_range(0..3)).map(|_| Letter::rel(random_relation(rng, n, 0.4))).collect()
        };
        let (pre, post) = (ctx(&mut rng), ctx(&mut rng));
        let mut left = pre.clone();
        left.push(Letter::rel(t_to_f(n, &t)));
        left.extend(post.iter().cloned());
        let mut right = pre;
        right.extend(gd.t_to_f(&t));
        right.extend(post);
        prop_assert!(word_equiv(&fb, &left, &right, EquivMode::Approx).unwrap());
    }
}
