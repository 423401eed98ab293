//! Machine-checkable self-test suites shared by the CLI and the test targets.

use rand::Rng;
use serde::Serialize;

use crate::gauss::{canonical_form, word_to_gauss};
use crate::realize::realize;
use crate::sample::{random_diagram, rng};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    /// Gauss text of every diagram that failed the round trip.
    pub failures: Vec<String>,
}

impl RoundtripReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// `canonical(G(realize(g))) == canonical(g)` on seeded random diagrams with
/// `2 ≤ n ≤ max_n` strands and at most `max_arrows` arrows.
pub fn roundtrip_suite(trials: usize, seed: u64, max_n: usize, max_arrows: usize) -> RoundtripReport {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(2..=max_n.max(2));
        let arrows = rng.gen_range(0..=max_arrows);
        let g = random_diagram(&mut rng, n, arrows);
        if canonical_form(&word_to_gauss(&realize(&g))) != canonical_form(&g) {
            failures.push(g.to_text());
        }
    }
    RoundtripReport {
        seed,
        trials,
        passed: trials - failures.len(),
        failures,
    }
}
