mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use roa_core::full::*;
use roa_core::*;

fn finite_words(alphabet: &[Letter], max: usize) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = vec![vec![]];
    let mut layer = out.clone();
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |l| {
                    let mut w2 = w.clone();
                    w2.push(l.clone());
                    w2
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn embedding_preserves_finite_language() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let words = finite_words(&letters(2), 4);
    for n in 1..=3 {
        for _ in 0..10 {
            let f = random_set(&mut rng, n, 0.5);
            let a1 = random_explicit(&mut rng, n, 2, Acceptance::Finite(f));
            let (a2, map) = embed(&a1).unwrap();
            for w in &words {
                let image = map.translate(w).unwrap();
                assert_eq!(a1.accepts_finite(w).unwrap(), a2.accepts_finite(&image).unwrap());
            }
        }
    }
}

#[test]
fn pull_back_recovers_language() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let words = distinct_lassos(&letters(2), 4);
    for _ in 0..10 {
        let a1 = random_buchi(&mut rng, 3, 2);
        let (a2, map) = embed(&a1).unwrap();
        let back = pull_back(&a2, &map).unwrap();
        for w in &words {
            assert_eq!(lasso_member(&a1, w).unwrap(), lasso_member(&back, w).unwrap());
            let image = map.translate_lasso(w).unwrap();
            assert_eq!(lasso_member(&a1, w).unwrap(), lasso_member(&a2, &image).unwrap());
        }
    }
}

#[test]
fn fooling_tables_match_simulation() {
    for n in 1..=4 {
        let wit = nfw_witness(n).unwrap();
        let full = StateSet::full(n);
        for alphabet in [FoolingAlphabet::Relations, FoolingAlphabet::Binary] {
            let report = fooling_report(n, alphabet).unwrap();
            assert!(report.verdict);
            for e in &report.table {
                let (aut, mut w) = match alphabet {
                    FoolingAlphabet::Relations => (&wit.fa, u_word(n, &e.t1)),
                    FoolingAlphabet::Binary => (&wit.an, binary_word(n, &e.t1)),
                };
                w.extend(match alphabet {
                    FoolingAlphabet::Relations => v_word(n, &e.t2),
                    FoolingAlphabet::Binary => binary_word(n, &full.difference(&e.t2)),
                });
                assert_eq!(aut.accepts_finite(&w).unwrap(), e.accepted);
                if e.t1 == e.t2 {
                    assert!(!e.accepted);
                }
            }
        }
    }
}

#[test]
fn reachable_subsets_are_all_subsets() {
    for n in 1..=8 {
        assert_eq!(subset_count(&nfw_witness(n).unwrap().an).unwrap(), 1 << n);
    }
}

#[test]
fn c_letters_match_binary_substitutes() {
    for n in 1..=5 {
        let fa = nfw_witness(n).unwrap().fa;
        for i in 0..n {
            let c = [Letter::rel(letter_c(n, i))];
            assert!(word_equiv(&fa, &c, &c_substitute(n, i), EquivMode::Sim).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substitution_is_a_congruence(n in 2usize..5, pre in prop::collection::vec(0usize..6, 0..4), post in prop::collection::vec(0usize..6, 0..4), i in 0usize..4) {
        let i = i % n;
        let fa = nfw_witness(n).unwrap().fa;
        let pool: Vec<Letter> = (0..n)
            .map(|j| Letter::rel(letter_c(n, j)))
            .chain([Letter::rel(letter_a(n)), Letter::rel(letter_b(n))])
            .collect();
        let pick = |v: &[usize]| v.iter().map(|&k| pool[k % pool.len()].clone()).collect::<Vec<_>>();
        let mut left = pick(&pre);
        let mut right = left.clone();
        left.push(Letter::rel(letter_c(n, i)));
        right.extend(c_substitute(n, i));
        left.extend(pick(&post));
        right.extend(pick(&post));
        prop_assert!(word_equiv(&fa, &left, &right, EquivMode::Sim).unwrap());
    }
}
