//! Words realizing a given braid-Gauss diagram.

use crate::gauss::{BraidGaussDiagram, Sign};
use crate::word::{BraidWord, Letter, Permutation};

/// Builds a word `w` whose diagram is `g` up to reparametrization.
///
/// Arrows are processed in the stored order. For each arrow the strand that
/// must take the upper slot of the crossing (the under-strand for a positive
/// arrow, the over-strand for a negative one) is slid by virtual crossings
/// until it sits right above its partner, then one `σ` is emitted. A τ-only
/// suffix finally fixes the end permutation.
pub fn realize(g: &BraidGaussDiagram) -> BraidWord {
    let n = g.n();
    // pos_of[strand] and strand_at[pos], both 1-based values with slot 0 unused
    let mut strand_at: Vec<usize> = (0..=n).collect();
    let mut pos_of: Vec<usize> = (0..=n).collect();
    let mut letters = Vec::new();

    fn swap(p: usize, strand_at: &mut [usize], pos_of: &mut [usize]) {
        strand_at.swap(p, p + 1);
        pos_of[strand_at[p]] = p;
        pos_of[strand_at[p + 1]] = p + 1;
    }

    for arrow in g.arrows() {
        let (upper, lower) = match arrow.sign {
            Sign::Positive => (arrow.to, arrow.from),
            Sign::Negative => (arrow.from, arrow.to),
        };
        let (pu, pl) = (pos_of[upper], pos_of[lower]);
        let crossing_at = if pu > pl {
            for p in (pl + 1..pu).rev() {
                letters.push(Letter::tau(p));
                swap(p, &mut strand_at, &mut pos_of);
            }
            pl
        } else {
            for p in pu..pl {
                letters.push(Letter::tau(p));
                swap(p, &mut strand_at, &mut pos_of);
            }
            pl - 1
        };
        debug_assert_eq!(strand_at[crossing_at], lower);
        debug_assert_eq!(strand_at[crossing_at + 1], upper);
        letters.push(match arrow.sign {
            Sign::Positive => Letter::sigma(crossing_at),
            Sign::Negative => Letter::sigma_inv(crossing_at),
        });
        swap(crossing_at, &mut strand_at, &mut pos_of);
    }

    // permutation still to realize: current position of each strand -> target
    let remaining: Vec<usize> = (1..=n).map(|pos| g.perm().apply(strand_at[pos])).collect();
    let remaining = Permutation::from_images(remaining).expect("a bijection on positions");
    letters.extend_from_slice(tau_word_for(&remaining).letters());
    BraidWord::new(n, letters).expect("indices stay in range")
}

/// A τ-only word with permutation `p`, from a bubble-sort decomposition.
pub fn tau_word_for(p: &Permutation) -> BraidWord {
    let n = p.n();
    // target slot of the strand currently in each slot
    let mut target: Vec<usize> = p.images().to_vec();
    let mut letters = Vec::new();
    loop {
        let mut swapped = false;
        for i in 0..n.saturating_sub(1) {
            if target[i] > target[i + 1] {
                target.swap(i, i + 1);
                letters.push(Letter::tau(i + 1));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    BraidWord::new(n, letters).expect("indices stay in range")
}
