mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use roa_core::gamma::gen_b;
use roa_core::nbw::l_max;
use roa_core::rank::*;
use roa_core::*;

#[test]
fn complement_is_exact_on_small_automata() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let words = distinct_lassos(&letters(2), 5);
    for i in 0..16 {
        let a = random_buchi(&mut rng, 1 + i % 3, 2);
        let loose = complement_rank(&a, false).unwrap();
        let tight = complement_rank(&a, true).unwrap();
        assert!(intersect_empty(&a, &loose.automaton).unwrap());
        assert!(intersect_empty(&a, &tight.automaton).unwrap());
        for w in &words {
            let inside = buchi_oracle(&a, w);
            assert_ne!(inside, lasso_member(&loose.automaton, w).unwrap(), "{w:?}");
            assert_ne!(inside, lasso_member(&tight.automaton, w).unwrap(), "{w:?}");
        }
    }
}

#[test]
fn ranking_states_are_well_formed() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..10 {
        let a = random_buchi(&mut rng, 3, 2);
        let Acceptance::Buchi(f) = a.acceptance().clone() else { unreachable!() };
        for tight in [false, true] {
            let c = complement_rank(&a, tight).unwrap();
            for label in &c.labels {
                if let ComplementState::Ranking { g, o } = label {
                    assert!(g.is_level_ranking(&f));
                    assert!(o.is_subset(&g.domain()));
                    assert!(o.iter().all(|q| g.ranks[q].unwrap() % 2 == 0));
                    assert!(g.ranks.iter().flatten().all(|&r| r <= c.max_rank));
                    if tight {
                        assert!(g.domain().is_empty() || g.tightness().is_some());
                    }
                }
            }
        }
    }
}

#[test]
fn complement_runs_yield_valid_rankings() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let words = distinct_lassos(&letters(2), 4);
    for _ in 0..10 {
        let a = random_buchi(&mut rng, 3, 2);
        let c = complement_rank(&a, false).unwrap();
        for w in &words {
            match slice_from_complement(&a, &c, w).unwrap() {
                Some((shaped, slice)) => {
                    assert!(!lasso_member(&a, w).unwrap());
                    assert_eq!(validate_c_ranking(&a, &shaped, &slice).unwrap(), SliceVerdict::Valid);
                }
                None => assert!(lasso_member(&a, w).unwrap()),
            }
        }
    }
}

#[test]
fn accepted_words_have_no_valid_ranking() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let words = distinct_lassos(&letters(2), 3);
    for _ in 0..10 {
        let a = random_buchi(&mut rng, 3, 2);
        let Acceptance::Buchi(f) = a.acceptance().clone() else { unreachable!() };
        for w in words.iter().filter(|w| lasso_member(&a, w).unwrap()) {
            let len = w.prefix.len() + w.period.len();
            for top in 0..4u32 {
                let levels = (0..len)
                    .map(|_| LevelRanking {
                        ranks: (0..3).map(|q| Some(if f.contains(q) { top & !1 } else { top })).collect(),
                    })
                    .collect();
                let verdict = validate_c_ranking(&a, w, &CRankingSlice { levels }).unwrap();
                assert!(!verdict.is_valid());
            }
        }
    }
}

#[test]
fn complement_of_gamma_family_is_large() {
    for n in 2..=3 {
        let b = gen_b(n).unwrap();
        let c = complement_rank(&b, true).unwrap();
        let (_, l) = l_max(n).unwrap();
        assert!(c.automaton.states() as u64 >= l);
    }
}
