#![allow(dead_code)]

use rand::Rng;
use roa_core::{Acceptance, Automaton, LassoWord, Letter, Relation, StateSet};

pub const NAMES: [&str; 4] = ["a", "b", "c", "d"];

pub fn letters(k: usize) -> Vec<Letter> {
    NAMES[..k].iter().map(|s| Letter::named(*s)).collect()
}

pub fn random_relation<R: Rng>(rng: &mut R, n: usize, density: f64) -> Relation {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).filter(|_| rng.gen_bool(density)).collect();
    Relation::from_pairs(n, pairs).unwrap()
}

pub fn random_set<R: Rng>(rng: &mut R, n: usize, p: f64) -> StateSet {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// A random automaton over `k` named letters with the given acceptance.
pub fn random_explicit<R: Rng>(rng: &mut R, n: usize, k: usize, acc: Acceptance) -> Automaton {
    let mut init = random_set(rng, n, 0.4);
    if init.is_empty() {
        init.insert(rng.gen_range(0..n));
    }
    let entries = letters(k).into_iter().map(|l| (l, random_relation(rng, n, 0.35))).collect();
    Automaton::explicit(n, init, entries, acc).unwrap()
}

pub fn random_buchi<R: Rng>(rng: &mut R, n: usize, k: usize) -> Automaton {
    let f = random_set(rng, n, 0.4);
    random_explicit(rng, n, k, Acceptance::Buchi(f))
}

/// A random deterministic, complete automaton.
pub fn random_det<R: Rng>(rng: &mut R, n: usize, k: usize, acc: Acceptance) -> Automaton {
    let entries = letters(k)
        .into_iter()
        .map(|l| {
            let pairs: Vec<_> = (0..n).map(|p| (p, rng.gen_range(0..n))).collect();
            (l, Relation::from_pairs(n, pairs).unwrap())
        })
        .collect();
    Automaton::explicit(n, StateSet::singleton(0), entries, acc).unwrap()
}

fn words(alphabet: &[Letter], len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |l| {
                    let mut w2 = w.clone();
                    w2.push(l.clone());
                    w2
                })
            })
            .collect();
    }
    out
}

/// Every lasso `u·v^ω` with `|v| >= 1` and `|u| + |v| <= max_len`.
pub fn all_lassos(alphabet: &[Letter], max_len: usize) -> Vec<LassoWord> {
    let mut out = Vec::new();
    for total in 1..=max_len {
        for plen in 1..=total {
            for u in words(alphabet, total - plen) {
                for v in words(alphabet, plen) {
                    out.push(LassoWord::new(u.clone(), v).unwrap());
                }
            }
        }
    }
    out
}

/// [`all_lassos`] with words denoting the same omega-word removed.
pub fn distinct_lassos(alphabet: &[Letter], max_len: usize) -> Vec<LassoWord> {
    let mut seen = std::collections::HashSet::new();
    all_lassos(alphabet, max_len).into_iter().filter(|w| seen.insert(w.canonical())).collect()
}

type Matrix = Vec<Vec<bool>>;

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect()).collect()
}

/// Reflexive-transitive closure.
fn star(a: &Matrix) -> Matrix {
    let n = a.len();
    let mut c: Matrix = (0..n).map(|i| (0..n).map(|j| i == j || a[i][j]).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                c[i][j] = c[i][j] || (c[i][k] && c[k][j]);
            }
        }
    }
    c
}

/// Lasso membership for Büchi and generalized Büchi acceptance by boolean
/// matrix algebra over the period's profile: some state reachable at a
/// period boundary has, for every set, a loop over `v^+` through it.
pub fn buchi_oracle(a: &Automaton, w: &LassoWord) -> bool {
    let sets = match a.acceptance() {
        Acceptance::Buchi(f) => vec![f.clone()],
        Acceptance::GenBuchi(fs) => fs.clone(),
        other => panic!("oracle does not handle {other:?}"),
    };
    let n = a.states();
    let pu = roa_core::transition_profile(a, &w.prefix, &[], None).unwrap();
    let pv = roa_core::transition_profile(a, &w.period, &sets, None).unwrap();
    let reach_v: Matrix = (0..n).map(|p| (0..n).map(|q| pv.reach(p, q)).collect()).collect();
    let around = star(&reach_v);
    let at_boundary: Vec<bool> =
        (0..n).map(|q| a.initial().iter().any(|i| (0..n).any(|p| pu.reach(i, p) && around[p][q]))).collect();
    (0..n).any(|p| {
        at_boundary[p]
            && (0..sets.len()).all(|i| {
                let through: Matrix = (0..n).map(|x| (0..n).map(|y| pv.visits(x, y, i)).collect()).collect();
                mul(&mul(&around, &through), &around)[p][p]
            })
    })
}
