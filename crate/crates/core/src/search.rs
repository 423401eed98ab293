//! Bounded searches over the Omega-move graph of canonical Gauss forms.
//!
//! States are [`CanonicalGauss`] values keyed by their text serialization.
//! Layers are expanded in `(arrow count, key)` order; neighbor generation runs
//! in parallel but results are merged sequentially in that order, so verdicts
//! and traces do not depend on thread scheduling. Ω2 insertions are allowed up
//! to a fixed arrow-count cap, which makes the search incomplete: `Unknown` is
//! a normal outcome.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gauss::{canonical_form, word_to_gauss, BraidGaussDiagram, CanonicalGauss};
use crate::moves::{
    apply_omega, enumerate_omega2_deletions, enumerate_omega2_insertions, enumerate_omega3, MoveTrace, OmegaMoveSite,
};
use crate::realize::realize;
use crate::surface::canonical_genus;
use crate::word::{check_strands, BraidWord, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of state expansions.
    pub max_nodes: usize,
    /// Ω2 insertions may grow a state to this many arrows above the larger endpoint.
    pub insert_slack: usize,
    /// Wall-clock limit. Results under a time limit may vary between runs.
    pub time_limit_ms: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 10_000,
            insert_slack: 2,
            time_limit_ms: None,
        }
    }
}

impl Budget {
    pub fn with_nodes(max_nodes: usize) -> Self {
        Budget {
            max_nodes,
            ..Budget::default()
        }
    }
}

/// Why two diagrams cannot be Omega-equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    PermutationMismatch {
        left: Permutation,
        right: Permutation,
    },
    WritheMismatch {
        left: i64,
        right: i64,
    },
    /// Only issued for pure diagrams.
    PairWritheMismatch {
        i: usize,
        j: usize,
        left: i64,
        right: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Equivalent(MoveTrace),
    Inequivalent(Certificate),
    Unknown,
}

/// Checks the Omega-invariants: end permutation, total sign sum and, for pure
/// diagrams, the sign sum of every unordered strand pair.
pub fn inequivalence_certificate(a: &BraidGaussDiagram, b: &BraidGaussDiagram) -> Option<Certificate> {
    if a.perm() != b.perm() {
        return Some(Certificate::PermutationMismatch {
            left: a.perm().clone(),
            right: b.perm().clone(),
        });
    }
    if a.writhe() != b.writhe() {
        return Some(Certificate::WritheMismatch {
            left: a.writhe(),
            right: b.writhe(),
        });
    }
    if a.perm().is_identity() {
        for i in 1..=a.n() {
            for j in i + 1..=a.n() {
                let (left, right) = (a.pair_writhe(i, j), b.pair_writhe(i, j));
                if left != right {
                    return Some(Certificate::PairWritheMismatch { i, j, left, right });
                }
            }
        }
    }
    None
}

/// All states one move away, deduplicated, deletions first, then Ω3, then
/// insertions (only while the result stays within `cap` arrows).
pub fn neighbors(state: &CanonicalGauss, cap: usize) -> Vec<(OmegaMoveSite, CanonicalGauss)> {
    let mut sites = enumerate_omega2_deletions(state);
    sites.extend(enumerate_omega3(state));
    if state.arrows().len() + 2 <= cap {
        sites.extend(enumerate_omega2_insertions(state));
    }
    let mut seen = std::collections::HashSet::new();
    sites
        .into_iter()
        .filter_map(|site| {
            let next = canonical_form(&apply_omega(state, &site).expect("enumerated sites apply"));
            seen.insert(next.key()).then_some((site, next))
        })
        .collect()
}

struct Node {
    state: CanonicalGauss,
    parent: Option<(String, OmegaMoveSite)>,
}

struct Side {
    nodes: HashMap<String, Node>,
    frontier: Vec<String>,
    depth: usize,
}

impl Side {
    fn new(root: CanonicalGauss) -> Self {
        let key = root.key();
        let mut nodes = HashMap::new();
        nodes.insert(
            key.clone(),
            Node {
                state: root,
                parent: None,
            },
        );
        Side {
            nodes,
            frontier: vec![key],
            depth: 0,
        }
    }

    /// Sites leading from the root to `key`.
    fn path_from_root(&self, key: &str) -> Vec<OmegaMoveSite> {
        let mut sites = Vec::new();
        let mut cur = key;
        while let Some((parent, site)) = &self.nodes[cur].parent {
            sites.push(site.clone());
            cur = parent;
        }
        sites.reverse();
        sites
    }

    /// States from `key` back to the root, both ends included.
    fn chain_to_root(&self, key: &str) -> Vec<&CanonicalGauss> {
        let mut chain = vec![&self.nodes[key].state];
        let mut cur = key;
        while let Some((parent, _)) = &self.nodes[cur].parent {
            chain.push(&self.nodes[parent.as_str()].state);
            cur = parent;
        }
        chain
    }
}

struct Limits {
    max_nodes: usize,
    max_steps: Option<usize>,
    cap: usize,
    deadline: Option<Instant>,
}

/// A site on `from` whose result is `to`. Exists whenever `to → from` is one move.
fn step_between(from: &CanonicalGauss, to: &CanonicalGauss) -> OmegaMoveSite {
    neighbors(from, to.arrows().len())
        .into_iter()
        .find(|(_, next)| next == to)
        .map(|(site, _)| site)
        .expect("Omega moves are reversible")
}

/// Bidirectional layered search. `None` when the limits are hit or both
/// frontiers die out.
fn bidirectional(start: CanonicalGauss, goal: CanonicalGauss, limits: &Limits) -> Option<MoveTrace> {
    if start == goal {
        return Some(MoveTrace::default());
    }
    let mut sides = [Side::new(start), Side::new(goal)];
    let mut expanded = 0usize;
    loop {
        if sides[0].frontier.is_empty() && sides[1].frontier.is_empty() {
            return None;
        }
        if limits
            .max_steps
            .is_some_and(|m| sides[0].depth + sides[1].depth + 1 > m)
        {
            return None;
        }
        if limits.deadline.is_some_and(|d| Instant::now() >= d) || expanded >= limits.max_nodes {
            return None;
        }
        let which = match (sides[0].frontier.len(), sides[1].frontier.len()) {
            (0, _) => 1,
            (_, 0) => 0,
            (f, b) if b < f => 1,
            _ => 0,
        };
        let (this, other) = if which == 0 {
            let (a, b) = sides.split_at_mut(1);
            (&mut a[0], &b[0])
        } else {
            let (a, b) = sides.split_at_mut(1);
            (&mut b[0], &a[0])
        };

        let mut layer = std::mem::take(&mut this.frontier);
        layer.sort_by(|a, b| {
            let (sa, sb) = (&this.nodes[a].state, &this.nodes[b].state);
            (sa.arrows().len(), a).cmp(&(sb.arrows().len(), b))
        });
        let room = limits.max_nodes - expanded;
        let truncated = layer.len() > room;
        layer.truncate(room);
        expanded += layer.len();

        let expansions: Vec<Vec<(OmegaMoveSite, CanonicalGauss)>> = layer
            .par_iter()
            .map(|key| neighbors(&this.nodes[key].state, limits.cap))
            .collect();

        let mut next_frontier = Vec::new();
        for (key, found) in layer.iter().zip(expansions) {
            for (site, next) in found {
                let next_key = next.key();
                if this.nodes.contains_key(&next_key) {
                    continue;
                }
                this.nodes.insert(
                    next_key.clone(),
                    Node {
                        state: next,
                        parent: Some((key.clone(), site)),
                    },
                );
                if other.nodes.contains_key(&next_key) {
                    let (fwd, bwd) = if which == 0 { (&*this, other) } else { (other, &*this) };
                    return Some(join(fwd, bwd, &next_key));
                }
                next_frontier.push(next_key);
            }
        }
        this.frontier = next_frontier;
        this.depth += 1;
        if truncated {
            return None;
        }
    }
}

fn join(fwd: &Side, bwd: &Side, meet: &str) -> MoveTrace {
    let mut steps = fwd.path_from_root(meet);
    for pair in bwd.chain_to_root(meet).windows(2) {
        steps.push(step_between(pair[0], pair[1]));
    }
    MoveTrace { steps }
}

fn deadline(budget: &Budget) -> Option<Instant> {
    budget
        .time_limit_ms
        .map(|ms| Instant::now() + Duration::from_millis(ms))
}

pub fn r_equivalent_diagrams(g1: &BraidGaussDiagram, g2: &BraidGaussDiagram, budget: &Budget) -> Result<Verdict> {
    check_strands(g1.n(), g2.n())?;
    if let Some(cert) = inequivalence_certificate(g1, g2) {
        return Ok(Verdict::Inequivalent(cert));
    }
    let (start, goal) = (canonical_form(g1), canonical_form(g2));
    let limits = Limits {
        max_nodes: budget.max_nodes,
        max_steps: None,
        cap: start.arrows().len().max(goal.arrows().len()) + budget.insert_slack,
        deadline: deadline(budget),
    };
    Ok(match bidirectional(start, goal, &limits) {
        Some(trace) => Verdict::Equivalent(trace),
        None => Verdict::Unknown,
    })
}

/// Bounded search for full (Reidemeister and virtual) equivalence.
pub fn r_equivalent_bounded(w1: &BraidWord, w2: &BraidWord, budget: &Budget) -> Result<Verdict> {
    check_strands(w1.n(), w2.n())?;
    r_equivalent_diagrams(&word_to_gauss(w1), &word_to_gauss(w2), budget)
}

/// A trace of at most `max_steps` moves from `a` to `b`, if the search finds one.
pub fn connect_within(
    a: &BraidGaussDiagram,
    b: &BraidGaussDiagram,
    max_steps: usize,
    insert_slack: usize,
) -> Option<MoveTrace> {
    let (start, goal) = (canonical_form(a), canonical_form(b));
    let limits = Limits {
        max_nodes: usize::MAX,
        max_steps: Some(max_steps),
        cap: start.arrows().len().max(goal.arrows().len()) + insert_slack,
        deadline: None,
    };
    bidirectional(start, goal, &limits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinGenus {
    pub genus: usize,
    pub witness: BraidWord,
    /// Number of states whose genus was evaluated.
    pub explored: usize,
}

/// Least canonical genus over the states reachable from `w` within budget.
/// Never exceeds `canonical_genus(w)`; the witness is `w` itself unless a
/// state of strictly smaller genus turns up.
pub fn min_genus_bounded(w: &BraidWord, budget: &Budget) -> MinGenus {
    let mut best = MinGenus {
        genus: canonical_genus(w),
        witness: w.clone(),
        explored: 1,
    };
    let root = canonical_form(&word_to_gauss(w));
    let cap = root.arrows().len() + budget.insert_slack;
    let stop_at = deadline(budget);
    let mut seen = std::collections::HashSet::from([root.key()]);
    let mut layer = vec![root];
    while best.genus > 0 && !layer.is_empty() && best.explored < budget.max_nodes {
        if stop_at.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let expansions: Vec<Vec<CanonicalGauss>> = layer
            .par_iter()
            .map(|s| neighbors(s, cap).into_iter().map(|(_, next)| next).collect())
            .collect();
        let mut fresh: Vec<CanonicalGauss> = expansions
            .into_iter()
            .flatten()
            .filter(|s| seen.insert(s.key()))
            .collect();
        fresh.sort_by_cached_key(|s| (s.arrows().len(), s.key()));
        fresh.truncate(budget.max_nodes - best.explored);
        best.explored += fresh.len();

        let scored: Vec<(usize, BraidWord)> = fresh
            .par_iter()
            .map(|s| {
                let word = realize(s);
                (canonical_genus(&word), word)
            })
            .collect();
        for (genus, word) in scored {
            if genus < best.genus {
                best.genus = genus;
                best.witness = word;
            }
        }
        layer = fresh;
    }
    best
}
