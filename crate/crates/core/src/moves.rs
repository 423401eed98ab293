//! Rewrite systems at both levels: relations of the virtual braid group on
//! words, and Omega moves on braid-Gauss diagrams.
//!
//! Move sites refer to arrows by their index in the diagram's stored
//! linearization. Inside a [`MoveTrace`] every step indexes the canonical
//! linearization of the state it is applied to.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{canonical_form, Arrow, BraidGaussDiagram, CanonicalGauss, DependenceOrder, Sign};
use crate::word::{BraidWord, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `(i>j)(i>k)(j>k)` becomes `(j>k)(i>k)(i>j)`.
    Forward,
    /// The reverse replacement.
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "args", rename_all = "snake_case")]
pub enum OmegaMoveSite {
    /// Remove two arrows `(i>j:ε)(i>j:-ε)` that are adjacent on both strands.
    Omega2Delete { first: usize, second: usize },
    /// Insert `(from>to:sign)(from>to:-sign)` after the first `gap_from`
    /// arrows on strand `from` and the first `gap_to` arrows on strand `to`.
    Omega2Insert {
        from: usize,
        to: usize,
        sign: Sign,
        gap_from: usize,
        gap_to: usize,
    },
    /// Replace a consecutive uniform-sign triangle block.
    Omega3 { arrows: [usize; 3], direction: Direction },
}

/// Moves applied in order from a start diagram.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveTrace {
    pub steps: Vec<OmegaMoveSite>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies every step, canonicalizing after each one.
    pub fn replay(&self, start: &BraidGaussDiagram) -> Result<CanonicalGauss> {
        let mut current = canonical_form(start);
        for step in &self.steps {
            current = canonical_form(&apply_omega(&current, step)?);
        }
        Ok(current)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn enumerate_omega2_deletions(g: &BraidGaussDiagram) -> Vec<OmegaMoveSite> {
    let arrows = g.arrows();
    let order = DependenceOrder::new(arrows);
    let mut sites = Vec::new();
    for first in 0..arrows.len() {
        for second in first + 1..arrows.len() {
            let (a, b) = (arrows[first], arrows[second]);
            if a.from == b.from && a.to == b.to && a.sign != b.sign && order.is_convex(&[first, second]) {
                sites.push(OmegaMoveSite::Omega2Delete { first, second });
            }
        }
    }
    sites
}

fn triangle_direction(a: &Arrow, b: &Arrow, c: &Arrow) -> Option<Direction> {
    if a.sign != b.sign || b.sign != c.sign {
        return None;
    }
    // forward: a = i>j, b = i>k, c = j>k
    if a.from == b.from && a.to == c.from && b.to == c.to && a.to != b.to {
        return Some(Direction::Forward);
    }
    // backward: a = j>k, b = i>k, c = i>j
    if a.to == b.to && b.from == c.from && a.from == c.to && a.from != b.from {
        return Some(Direction::Backward);
    }
    None
}

pub fn enumerate_omega3(g: &BraidGaussDiagram) -> Vec<OmegaMoveSite> {
    let arrows = g.arrows();
    let order = DependenceOrder::new(arrows);
    let mut sites = Vec::new();
    for a in 0..arrows.len() {
        for b in a + 1..arrows.len() {
            if !arrows[a].depends_on(&arrows[b]) || arrows[a].sign != arrows[b].sign {
                continue;
            }
            for c in b + 1..arrows.len() {
                if let Some(direction) = triangle_direction(&arrows[a], &arrows[b], &arrows[c]) {
                    if order.is_convex(&[a, b, c]) {
                        sites.push(OmegaMoveSite::Omega3 {
                            arrows: [a, b, c],
                            direction,
                        });
                    }
                }
            }
        }
    }
    sites
}

/// Every feasible Ω2 insertion site.
pub fn enumerate_omega2_insertions(g: &BraidGaussDiagram) -> Vec<OmegaMoveSite> {
    let order = DependenceOrder::new(g.arrows());
    let occurrences = strand_occurrences(g);
    let mut sites = Vec::new();
    for from in 1..=g.n() {
        for to in 1..=g.n() {
            if from == to {
                continue;
            }
            for gap_from in 0..=occurrences[from].len() {
                for gap_to in 0..=occurrences[to].len() {
                    if insertion_feasible(&order, &occurrences, from, to, gap_from, gap_to) {
                        for sign in [Sign::Positive, Sign::Negative] {
                            sites.push(OmegaMoveSite::Omega2Insert {
                                from,
                                to,
                                sign,
                                gap_from,
                                gap_to,
                            });
                        }
                    }
                }
            }
        }
    }
    sites
}

/// `occurrences[s]` lists the indices of arrows touching strand `s`, in order.
fn strand_occurrences(g: &BraidGaussDiagram) -> Vec<Vec<usize>> {
    let mut occurrences = vec![Vec::new(); g.n() + 1];
    for (idx, a) in g.arrows().iter().enumerate() {
        occurrences[a.from].push(idx);
        occurrences[a.to].push(idx);
    }
    occurrences
}

fn insertion_bounds(
    occurrences: &[Vec<usize>],
    from: usize,
    to: usize,
    gap_from: usize,
    gap_to: usize,
) -> (Vec<usize>, Vec<usize>) {
    let mut after = Vec::new();
    let mut before = Vec::new();
    for (strand, gap) in [(from, gap_from), (to, gap_to)] {
        let occ = &occurrences[strand];
        if gap > 0 {
            after.push(occ[gap - 1]);
        }
        if gap < occ.len() {
            before.push(occ[gap]);
        }
    }
    (after, before)
}

fn insertion_feasible(
    order: &DependenceOrder,
    occurrences: &[Vec<usize>],
    from: usize,
    to: usize,
    gap_from: usize,
    gap_to: usize,
) -> bool {
    let (after, before) = insertion_bounds(occurrences, from, to, gap_from, gap_to);
    before
        .iter()
        .all(|&b| after.iter().all(|&a| a != b && !order.before(b, a)))
}

pub fn apply_omega(g: &BraidGaussDiagram, site: &OmegaMoveSite) -> Result<BraidGaussDiagram> {
    let arrows = g.arrows();
    let inapplicable = || Error::InapplicableSite(format!("{site:?}"));
    match *site {
        OmegaMoveSite::Omega2Delete { first, second } => {
            if first >= second || second >= arrows.len() {
                return Err(inapplicable());
            }
            let (a, b) = (arrows[first], arrows[second]);
            if a.from != b.from || a.to != b.to || a.sign == b.sign {
                return Err(inapplicable());
            }
            if !DependenceOrder::new(arrows).is_convex(&[first, second]) {
                return Err(inapplicable());
            }
            let kept = arrows
                .iter()
                .enumerate()
                .filter(|&(idx, _)| idx != first && idx != second)
                .map(|(_, a)| *a)
                .collect();
            Ok(g.with_arrows(kept))
        }
        OmegaMoveSite::Omega3 {
            arrows: [a, b, c],
            direction,
        } => {
            if !(a < b && b < c && c < arrows.len()) {
                return Err(inapplicable());
            }
            if triangle_direction(&arrows[a], &arrows[b], &arrows[c]) != Some(direction) {
                return Err(inapplicable());
            }
            let order = DependenceOrder::new(arrows);
            if !order.is_convex(&[a, b, c]) {
                return Err(inapplicable());
            }
            let between: Vec<usize> = (a + 1..c).filter(|&x| x != b).collect();
            let mut out = Vec::with_capacity(arrows.len());
            out.extend_from_slice(&arrows[..a]);
            out.extend(between.iter().filter(|&&x| order.before(x, c)).map(|&x| arrows[x]));
            out.extend([arrows[c], arrows[b], arrows[a]]);
            out.extend(between.iter().filter(|&&x| !order.before(x, c)).map(|&x| arrows[x]));
            out.extend_from_slice(&arrows[c + 1..]);
            Ok(g.with_arrows(out))
        }
        OmegaMoveSite::Omega2Insert {
            from,
            to,
            sign,
            gap_from,
            gap_to,
        } => {
            if from == to || from == 0 || to == 0 || from > g.n() || to > g.n() {
                return Err(inapplicable());
            }
            let occurrences = strand_occurrences(g);
            if gap_from > occurrences[from].len() || gap_to > occurrences[to].len() {
                return Err(inapplicable());
            }
            let order = DependenceOrder::new(arrows);
            if !insertion_feasible(&order, &occurrences, from, to, gap_from, gap_to) {
                return Err(inapplicable());
            }
            let (after, before) = insertion_bounds(&occurrences, from, to, gap_from, gap_to);
            let pair = [Arrow::new(from, to, sign), Arrow::new(from, to, sign.flip())];
            Ok(g.with_arrows(insert_pair(arrows, &order, &after, &before, pair)))
        }
    }
}

/// Places `pair` after every arrow in `after` and before every arrow in
/// `before`, moving only arrows that are forced to move.
fn insert_pair(
    arrows: &[Arrow],
    order: &DependenceOrder,
    after: &[usize],
    before: &[usize],
    pair: [Arrow; 2],
) -> Vec<Arrow> {
    let slot = after.iter().max().map_or(0, |&a| a + 1);
    // arrows below the slot that must follow the pair move past it, together
    // with everything that depends on them
    let must_follow = |x: usize| before.iter().any(|&b| b == x || order.before(b, x));
    let (moved, kept): (Vec<usize>, Vec<usize>) = (0..slot).partition(|&x| must_follow(x));
    let mut out = Vec::with_capacity(arrows.len() + 2);
    out.extend(kept.iter().map(|&x| arrows[x]));
    out.extend(pair);
    out.extend(moved.iter().map(|&x| arrows[x]));
    out.extend_from_slice(&arrows[slot..]);
    out
}

/// Relation families of the virtual braid group, plus the cancellation
/// `σ_i σ_i^{-1} = e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationFamily {
    /// `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}` (uniform exponent).
    SigmaBraid,
    SigmaFar,
    TauBraid,
    TauFar,
    /// `σ_i τ_{i+1} τ_i = τ_{i+1} τ_i σ_{i+1}`.
    MixedA,
    /// `τ_i τ_{i+1} σ_i = σ_{i+1} τ_i τ_{i+1}`.
    MixedB,
    MixedFar,
    TauSquare,
    SigmaCancel,
}

impl RelationFamily {
    /// Reidemeister moves change the diagram by one Omega move; every other
    /// family leaves the canonical form untouched.
    pub fn is_reidemeister(self) -> bool {
        matches!(self, RelationFamily::SigmaBraid | RelationFamily::SigmaCancel)
    }
}

/// One directed instance of a relation: `lhs` is replaced by `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub family: RelationFamily,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

/// All directed rule instances on `n` strands.
pub fn rules(n: usize) -> Vec<Rule> {
    use RelationFamily::*;
    let mut out = Vec::new();
    let mut both = |family, a: Vec<Letter>, b: Vec<Letter>| {
        out.push(Rule {
            family,
            lhs: a.clone(),
            rhs: b.clone(),
        });
        out.push(Rule { family, lhs: b, rhs: a });
    };
    let gens: Vec<usize> = (1..n).collect();
    let s = Letter::sigma_pow;
    let t = Letter::tau;
    for &i in &gens {
        for e in [1, -1] {
            if i + 1 < n {
                both(
                    SigmaBraid,
                    vec![s(i, e), s(i + 1, e), s(i, e)],
                    vec![s(i + 1, e), s(i, e), s(i + 1, e)],
                );
                both(MixedA, vec![s(i, e), t(i + 1), t(i)], vec![t(i + 1), t(i), s(i + 1, e)]);
                both(MixedB, vec![t(i), t(i + 1), s(i, e)], vec![s(i + 1, e), t(i), t(i + 1)]);
            }
            both(SigmaCancel, vec![s(i, e), s(i, -e)], vec![]);
        }
        if i + 1 < n {
            both(TauBraid, vec![t(i), t(i + 1), t(i)], vec![t(i + 1), t(i), t(i + 1)]);
        }
        both(TauSquare, vec![t(i), t(i)], vec![]);
    }
    for &i in &gens {
        for &j in &gens {
            if i.abs_diff(j) < 2 {
                continue;
            }
            if i < j {
                both(TauFar, vec![t(i), t(j)], vec![t(j), t(i)]);
            }
            for a in [1, -1] {
                both(MixedFar, vec![t(i), s(j, a)], vec![s(j, a), t(i)]);
                if i < j {
                    for b in [1, -1] {
                        both(SigmaFar, vec![s(i, a), s(j, b)], vec![s(j, b), s(i, a)]);
                    }
                }
            }
        }
    }
    out
}

impl Rule {
    pub fn matches(&self, w: &BraidWord, position: usize) -> bool {
        let letters = w.letters();
        position + self.lhs.len() <= letters.len() && letters[position..position + self.lhs.len()] == self.lhs[..]
    }
}

pub fn rewrite_word(w: &BraidWord, rule: &Rule, position: usize) -> Result<BraidWord> {
    if !rule.matches(w, position) {
        return Err(Error::PatternMismatch(position));
    }
    w.splice(position, position + rule.lhs.len(), &rule.rhs)
}

/// Every `(rule index, position)` at which a rule of `rules` matches `w`.
pub fn applicable_rewrites(w: &BraidWord, rules: &[Rule]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (idx, rule) in rules.iter().enumerate() {
        for position in 0..=w.len() {
            if rule.matches(w, position) {
                out.push((idx, position));
            }
        }
    }
    out
}
