//! The seven-letter alphabet `Γ` and the gadget words that rewrite the
//! letters of `w_{f,g}` over it.

use crate::automaton::{Automaton, FiniteWord};
use crate::error::Result;
use crate::nbw::{gen_fb, QRanking, WitnessLetter};
use crate::relation::{Letter, Relation};
use crate::set::StateSet;

pub const GAMMA_NAMES: [&str; 7] = ["rotate", "clear0", "swap01", "copy01", "0toF", "Fto0", "clearF"];

/// Relations of `Γ` over `FB_n`'s states. Pairs naming `s_1` are dropped
/// when `n = 2`, since that state does not exist.
pub fn gamma_relations(n: usize) -> Vec<(&'static str, Relation)> {
    let f = n - 1;
    let main = StateSet::full(n - 1);
    let id_main = Relation::identity_on(n, &main);
    let id_all = Relation::identity(n);
    let pairs = |ps: &[(usize, usize)]| {
        Relation::from_pairs(n, ps.iter().copied().filter(|&(p, q)| p < n && q < n)).expect("states in range")
    };

    let mut rotate = pairs(&[(0, n - 2), (f, f)]);
    for i in 0..n.saturating_sub(2) {
        rotate.insert(i + 1, i).expect("state in range");
    }
    if n == 2 {
        // s_0 rotates onto itself
        rotate = pairs(&[(0, 0), (f, f)]);
    }
    let mut clear0 = id_all.clone();
    clear0.remove(0, 0);
    let mut swap01 = id_main.clone();
    swap01.remove(0, 0);
    if n > 2 {
        swap01.remove(1, 1);
        swap01.insert(0, 1).expect("state in range");
        swap01.insert(1, 0).expect("state in range");
    }
    let mut copy01 = id_main.clone();
    if n > 2 {
        copy01.insert(1, 0).expect("state in range");
    }
    let mut zero_to_f = id_all.clone();
    zero_to_f.insert(0, f).expect("state in range");
    let mut f_to_zero = id_all;
    f_to_zero.insert(f, 0).expect("state in range");

    vec![
        ("rotate", rotate),
        ("clear0", clear0),
        ("swap01", swap01),
        ("copy01", copy01),
        ("0toF", zero_to_f),
        ("Fto0", f_to_zero),
        ("clearF", id_main),
    ]
}

/// `Γ` as named letters.
pub fn gamma(n: usize) -> Vec<Letter> {
    gamma_relations(n).into_iter().map(|(name, r)| Letter::named_rel(name, r)).collect()
}

/// `B_n = FB_n ↾ Γ`.
pub fn gen_b(n: usize) -> Result<Automaton> {
    gen_fb(n)?.restrict(&gamma(n))
}

/// Builds gadget words over `Γ` for a fixed `n`.
pub struct Gadgets {
    n: usize,
    letters: Vec<Letter>,
}

impl Gadgets {
    pub fn new(n: usize) -> Self {
        Gadgets { n, letters: gamma(n) }
    }

    fn letter(&self, name: &str) -> Letter {
        let i = GAMMA_NAMES.iter().position(|&x| x == name).expect("known letter");
        self.letters[i].clone()
    }

    /// Number of main states.
    fn k(&self) -> usize {
        self.n - 1
    }

    pub fn rotate_pow(&self, i: usize) -> FiniteWord {
        vec![self.letter("rotate"); i % self.k().max(1)]
    }

    /// Exchanges `r_i` and `r_j`.
    pub fn swap(&self, i: usize, j: usize) -> FiniteWord {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Vec::new(),
            std::cmp::Ordering::Greater => self.swap(j, i),
            std::cmp::Ordering::Less if i + 1 == j => {
                let mut w = self.rotate_pow(i);
                w.push(self.letter("swap01"));
                w.extend(self.rotate_pow(self.k() - i));
                w
            }
            std::cmp::Ordering::Less => {
                let mut w = Vec::new();
                for x in i..j {
                    w.extend(self.swap(x, x + 1));
                }
                for x in (i..j - 1).rev() {
                    w.extend(self.swap(x, x + 1));
                }
                w
            }
        }
    }

    /// `r_i ← r_i ∪ r_j`.
    pub fn copy(&self, i: usize, j: usize) -> FiniteWord {
        if i == j {
            return Vec::new();
        }
        if i == 1 && j == 0 {
            return vec![self.letter("swap01"), self.letter("copy01"), self.letter("swap01")];
        }
        if j == 0 {
            // the general pattern would route r_i through slot 1
            let mut w = self.swap(0, i);
            w.extend(self.copy(0, i));
            w.extend(self.swap(0, i));
            return w;
        }
        let mut w = self.swap(0, i);
        w.extend(self.swap(1, j));
        w.push(self.letter("copy01"));
        w.extend(self.swap(1, j));
        w.extend(self.swap(0, i));
        w
    }

    /// `r_i ← ∅`.
    pub fn clear(&self, i: usize) -> FiniteWord {
        let mut w = self.swap(0, i);
        w.push(self.letter("clear0"));
        w.extend(self.swap(0, i));
        w
    }

    /// `clearF · Π_{s_i ∈ T} (rotate^i · 0toF · rotate^{n-1-i})`
    pub fn t_to_f(&self, t: &StateSet) -> FiniteWord {
        let mut w = vec![self.letter("clearF")];
        for i in t.iter() {
            w.extend(self.rotate_pow(i));
            w.push(self.letter("0toF"));
            w.extend(self.rotate_pow(self.k() - i));
        }
        w
    }

    /// `Π_{s_i ∈ T} (rotate^i · Fto0 · rotate^{n-1-i}) · clearF`
    pub fn f_to_t(&self, t: &StateSet) -> FiniteWord {
        let mut w = Vec::new();
        for i in t.iter() {
            w.extend(self.rotate_pow(i));
            w.push(self.letter("Fto0"));
            w.extend(self.rotate_pow(self.k() - i));
        }
        w.push(self.letter("clearF"));
        w
    }

    /// A word with the same reachability as `c(f,g)`.
    pub fn c_word(&self, f: &QRanking, g: &QRanking) -> FiniteWord {
        let k = self.k();
        let odd: Vec<u32> = (0..f.m as u32).map(|t| 2 * t + 1).collect();
        let mut w = Vec::new();
        // gather each odd class of f into its least member
        let leaders: Vec<usize> = odd
            .iter()
            .map(|&t| {
                let class: Vec<usize> = (0..k).filter(|&p| f.ranks[p] == t).collect();
                for &p in &class[1..] {
                    w.extend(self.copy(class[0], p));
                }
                class[0]
            })
            .collect();
        for x in 0..k {
            if !leaders.contains(&x) {
                w.extend(self.clear(x));
            }
        }
        // move each class to the least state g ranks with it
        let mut slot: Vec<Option<usize>> = vec![None; k];
        for (c, &l) in leaders.iter().enumerate() {
            slot[l] = Some(c);
        }
        for (c, &t) in odd.iter().enumerate() {
            let target = (0..k).find(|&j| g.ranks[j] == t).expect("g is tight");
            let cur = slot.iter().position(|&s| s == Some(c)).expect("class is placed");
            if cur != target {
                w.extend(self.swap(cur, target));
                slot.swap(cur, target);
            }
        }
        for (c, &t) in odd.iter().enumerate() {
            let home = slot.iter().position(|&s| s == Some(c)).expect("class is placed");
            for j in (0..k).filter(|&j| g.ranks[j] == t && j != home) {
                w.extend(self.copy(j, home));
            }
        }
        // c(f,g) has no pairs touching s_f
        w.push(self.letter("clearF"));
        w
    }

    /// Rewrites one witness letter over `Γ`.
    pub fn substitute(&self, l: &WitnessLetter) -> FiniteWord {
        match l {
            WitnessLetter::TtoF(t) => self.t_to_f(t),
            WitnessLetter::FtoT(t) => self.f_to_t(t),
            WitnessLetter::C(f, g) => self.c_word(f, g),
        }
    }

    pub fn substitute_all(&self, ls: &[WitnessLetter]) -> FiniteWord {
        ls.iter().flat_map(|l| self.substitute(l)).collect()
    }
}

/// `r_j(w) = {i : s_i -w-> s_j}` for every main state `j`.
pub fn columns(fb: &Automaton, w: &[Letter]) -> Result<Vec<StateSet>> {
    let p = crate::profile::transition_profile(fb, w, &[], None)?;
    let k = fb.states() - 1;
    Ok((0..k).map(|j| p.column(j).intersection(&StateSet::full(k))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::full::{word_equiv, EquivMode};
    use crate::nbw::{q_rankings, t_to_f};

    #[test]
    fn gadget_semantics_n4() {
        let fb = gen_fb(4).unwrap();
        let gd = Gadgets::new(4);
        let base = columns(&fb, &[]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = columns(&fb, &gd.swap(i, j)).unwrap();
                let mut exp = base.clone();
                exp.swap(i, j);
                assert_eq!(s, exp, "swap {i} {j}");
                let c = columns(&fb, &gd.copy(i, j)).unwrap();
                let mut exp = base.clone();
                exp[i] = base[i].union(&base[j]);
                assert_eq!(c, exp, "copy {i} {j}");
            }
            let c = columns(&fb, &gd.clear(i)).unwrap();
            assert!(c[i].is_empty());
        }
    }

    #[test]
    fn t_to_f_substitute_n3() {
        let fb = gen_fb(3).unwrap();
        let gd = Gadgets::new(3);
        for mask in 0..4u64 {
            let t = StateSet::from_mask(mask);
            let orig = vec![Letter::rel(t_to_f(3, &t))];
            assert!(word_equiv(&fb, &orig, &gd.t_to_f(&t), EquivMode::Approx).unwrap());
        }
    }

    #[test]
    fn c_word_columns_n4() {
        let fb = gen_fb(4).unwrap();
        let gd = Gadgets::new(4);
        let qs = q_rankings(4, 2).unwrap();
        for f in qs.iter().take(6) {
            for g in &qs {
                let target = vec![Letter::rel(crate::nbw::c_letter(4, f, g))];
                assert_eq!(columns(&fb, &gd.c_word(f, g)).unwrap(), columns(&fb, &target).unwrap());
            }
        }
    }
}
