//! Seeded random words and diagrams for self-tests and fuzzing.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gauss::{Arrow, BraidGaussDiagram, Sign};
use crate::moves::{applicable_rewrites, rewrite_word, Rule};
use crate::word::{BraidWord, Letter, Permutation};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_letter<R: Rng>(rng: &mut R, n: usize, allow_tau: bool) -> Letter {
    let index = rng.gen_range(1..n);
    match rng.gen_range(0..if allow_tau { 3 } else { 2 }) {
        0 => Letter::sigma(index),
        1 => Letter::sigma_inv(index),
        _ => Letter::tau(index),
    }
}

/// A word of exactly `len` letters on `n ≥ 2` strands.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, len: usize, allow_tau: bool) -> BraidWord {
    let letters = (0..len).map(|_| random_letter(rng, n, allow_tau)).collect();
    BraidWord::new(n, letters).expect("indices in range")
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("a shuffle is a bijection")
}

/// `arrows` random arrows between distinct strands and a random end permutation.
pub fn random_diagram<R: Rng>(rng: &mut R, n: usize, arrows: usize) -> BraidGaussDiagram {
    let list = (0..arrows)
        .map(|_| {
            let from = rng.gen_range(1..=n);
            let mut to = rng.gen_range(1..n);
            if to >= from {
                to += 1;
            }
            let sign = if rng.gen_bool(0.5) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            Arrow::new(from, to, sign)
        })
        .collect();
    BraidGaussDiagram::new(n, list, random_permutation(rng, n)).expect("valid arrows")
}

/// Applies one uniformly chosen applicable rewrite from `rules`, if any applies.
pub fn random_rewrite<R: Rng>(rng: &mut R, w: &BraidWord, rules: &[Rule]) -> Option<BraidWord> {
    let options = applicable_rewrites(w, rules);
    let &(rule, position) = options.choose(rng)?;
    Some(rewrite_word(w, &rules[rule], position).expect("rule matched"))
}
