#![allow(dead_code)]

use condorcet_core::bruhat::yang_baxter_neighbors;
use condorcet_core::heap::{commutation_classes, CommutationClass};
use condorcet_core::{Permutation, ReducedWord};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every permutation of `[n]` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Permutation::from_one_line(prefix).unwrap());
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                prefix.push(v);
                extend(prefix, used, out);
                prefix.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every commutation class of every permutation of `[n]`.
pub fn all_classes(n: usize) -> Vec<CommutationClass> {
    all_perms(n)
        .iter()
        .flat_map(|w| commutation_classes(w, 1_000_000).unwrap())
        .collect()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut entries: Vec<usize> = (1..=n).collect();
    entries.shuffle(rng);
    Permutation::from_one_line(&entries).unwrap()
}

/// A reduced word of a random permutation, scrambled by a random walk of
/// commuting and braid moves so that classes other than the canonical one
/// turn up.
pub fn random_word<R: Rng>(rng: &mut R, n: usize) -> ReducedWord {
    let mut word = random_perm(rng, n).reduced_word();
    for _ in 0..4 * word.len() {
        let letters = word.to_vec();
        let mut moves: Vec<ReducedWord> = yang_baxter_neighbors(&word).into_iter().map(|(_, w)| w).collect();
        for j in 0..letters.len().saturating_sub(1) {
            if letters[j].abs_diff(letters[j + 1]) >= 2 {
                let mut next = letters.clone();
                next.swap(j, j + 1);
                moves.push(ReducedWord::new(n, &next).unwrap());
            }
        }
        match moves.choose(rng) {
            Some(next) => word = next.clone(),
            None => break,
        }
    }
    word
}
