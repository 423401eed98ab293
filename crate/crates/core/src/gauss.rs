//! Braid-Gauss diagrams and their reparametrization normal form.
//!
//! A diagram is stored as one linearization of its arrows (one arrow per time
//! slot) together with the end permutation. Two arrows commute under
//! reparametrization exactly when they touch disjoint strands, so the arrows
//! form a trace over that dependence relation. [`canonical_form`] picks the
//! lexicographically least linearization, which makes equality of traces plain
//! sequence equality.
//!
//! Crossing convention: in `σ_i^{+1}` the strand at position `i` over-passes
//! the strand at position `i + 1`; in `σ_i^{-1}` the strand at `i + 1` does.
//! Arrows point from the over-passing strand to the under-passing one.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{check_strands, BraidWord, Kind, Permutation};

/// Local writhe of a crossing. `Positive` orders before `Negative`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_exp(exp: i8) -> Self {
        if exp < 0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl From<Sign> for i8 {
    fn from(sign: Sign) -> i8 {
        sign.value() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// A signed arrow from the over-passing strand to the under-passing strand.
/// Strands are named 1-based by their starting slot.
///
/// The derived order is the canonical key `(from, to, sign)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub sign: Sign,
}

impl Arrow {
    pub fn new(from: usize, to: usize, sign: Sign) -> Self {
        Arrow { from, to, sign }
    }

    pub fn touches(&self, strand: usize) -> bool {
        self.from == strand || self.to == strand
    }

    /// Dependence: the two arrows share at least one strand.
    pub fn depends_on(&self, other: &Arrow) -> bool {
        self.touches(other.from) || self.touches(other.to)
    }

    fn relabel(&self, perm: &Permutation) -> Arrow {
        Arrow {
            from: perm.apply(self.from),
            to: perm.apply(self.to),
            sign: self.sign,
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}>{}:{})", self.from, self.to, self.sign)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson")]
pub struct BraidGaussDiagram {
    n: usize,
    perm: Permutation,
    arrows: Vec<Arrow>,
}

#[derive(Deserialize)]
struct DiagramJson {
    n: usize,
    perm: Permutation,
    arrows: Vec<Arrow>,
}

impl TryFrom<DiagramJson> for BraidGaussDiagram {
    type Error = Error;

    fn try_from(raw: DiagramJson) -> Result<Self> {
        BraidGaussDiagram::new(raw.n, raw.arrows, raw.perm)
    }
}

impl BraidGaussDiagram {
    pub fn new(n: usize, arrows: Vec<Arrow>, perm: Permutation) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoStrands);
        }
        check_strands(n, perm.n())?;
        for a in &arrows {
            if a.from == a.to || a.from == 0 || a.to == 0 || a.from > n || a.to > n {
                return Err(Error::InvalidArrow {
                    from: a.from,
                    to: a.to,
                    n,
                });
            }
        }
        Ok(BraidGaussDiagram { n, perm, arrows })
    }

    pub fn identity(n: usize) -> Self {
        BraidGaussDiagram {
            n,
            perm: Permutation::identity(n),
            arrows: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// Same diagram with a different linearization. The caller guarantees the
    /// new sequence is a reordering consistent with the dependence order, or
    /// a result of an Omega move.
    pub(crate) fn with_arrows(&self, arrows: Vec<Arrow>) -> Self {
        BraidGaussDiagram {
            n: self.n,
            perm: self.perm.clone(),
            arrows,
        }
    }

    pub fn writhe(&self) -> i64 {
        self.arrows.iter().map(|a| a.sign.value()).sum()
    }

    /// Sum of signs of arrows joining `i` and `j` in either direction.
    pub fn pair_writhe(&self, i: usize, j: usize) -> i64 {
        self.arrows
            .iter()
            .filter(|a| (a.from == i && a.to == j) || (a.from == j && a.to == i))
            .map(|a| a.sign.value())
            .sum()
    }

    /// Diagram of `β₁β₂` from the diagrams of `β₁` and `β₂`.
    pub fn compose(&self, other: &BraidGaussDiagram) -> Result<Self> {
        check_strands(self.n, other.n)?;
        let back = self.perm.inverse();
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|a| a.relabel(&back)));
        Ok(BraidGaussDiagram {
            n: self.n,
            perm: self.perm.then(&other.perm),
            arrows,
        })
    }

    pub fn inverse(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .rev()
            .map(|a| {
                let mut b = a.relabel(&self.perm);
                b.sign = b.sign.flip();
                b
            })
            .collect();
        BraidGaussDiagram {
            n: self.n,
            perm: self.perm.inverse(),
            arrows,
        }
    }

    pub fn canonical(&self) -> CanonicalGauss {
        canonical_form(self)
    }

    /// `n=<n>; perm=<σ(1)>,…,<σ(n)>; arrows=(f>t:±)…` in stored order.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::Format(format!("{what} in gauss text `{}`", text.trim()));
        let mut parts = text.trim().splitn(3, ';').map(str::trim);
        let n: usize = parts
            .next()
            .and_then(|p| p.strip_prefix("n="))
            .ok_or_else(|| bad("missing n="))?
            .parse()
            .map_err(|_| bad("bad strand count"))?;
        let perm: Permutation = parts
            .next()
            .and_then(|p| p.strip_prefix("perm="))
            .ok_or_else(|| bad("missing perm="))?
            .parse()?;
        let mut rest = parts
            .next()
            .and_then(|p| p.strip_prefix("arrows="))
            .ok_or_else(|| bad("missing arrows="))?;
        let mut arrows = Vec::new();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed arrow"))?;
            let (inner, tail) = (&body[..close], &body[close + 1..]);
            let (ends, sign) = inner.split_once(':').ok_or_else(|| bad("arrow without sign"))?;
            let (from, to) = ends.split_once('>').ok_or_else(|| bad("arrow without `>`"))?;
            let sign = match sign {
                "+" => Sign::Positive,
                "-" => Sign::Negative,
                _ => return Err(bad("bad arrow sign")),
            };
            let from = from.parse().map_err(|_| bad("bad arrow tail"))?;
            let to = to.parse().map_err(|_| bad("bad arrow head"))?;
            arrows.push(Arrow::new(from, to, sign));
            rest = tail;
        }
        BraidGaussDiagram::new(n, arrows, perm)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Accepts either the text format or JSON (leading `{`).
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

impl fmt::Display for BraidGaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; perm={}; arrows=", self.n, self.perm)?;
        for a in &self.arrows {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A diagram whose arrows are in canonical order. Equal values mean the
/// underlying diagrams differ by reparametrization only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CanonicalGauss(BraidGaussDiagram);

impl CanonicalGauss {
    pub fn as_diagram(&self) -> &BraidGaussDiagram {
        &self.0
    }

    pub fn into_diagram(self) -> BraidGaussDiagram {
        self.0
    }

    /// Bit-exact text serialization, used as a state key.
    pub fn key(&self) -> String {
        self.0.to_text()
    }
}

impl Deref for CanonicalGauss {
    type Target = BraidGaussDiagram;

    fn deref(&self) -> &BraidGaussDiagram {
        &self.0
    }
}

impl fmt::Display for CanonicalGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The map `G` from words to diagrams.
pub fn word_to_gauss(word: &BraidWord) -> BraidGaussDiagram {
    let mut strand_at: Vec<usize> = (1..=word.n()).collect();
    let mut arrows = Vec::with_capacity(word.sigma_count());
    for letter in word.letters() {
        let (lower, upper) = (letter.index() - 1, letter.index());
        if letter.kind() == Kind::Sigma {
            let (over, under) = if letter.exp() > 0 {
                (strand_at[lower], strand_at[upper])
            } else {
                (strand_at[upper], strand_at[lower])
            };
            arrows.push(Arrow::new(over, under, Sign::from_exp(letter.exp())));
        }
        strand_at.swap(lower, upper);
    }
    BraidGaussDiagram {
        n: word.n(),
        perm: word.permutation(),
        arrows,
    }
}

/// Greedy lexicographic normal form: repeatedly emit, among arrows with no
/// pending dependence-predecessor, the least one under `(from, to, sign)`.
pub fn canonical_form(g: &BraidGaussDiagram) -> CanonicalGauss {
    let mut pending: Vec<Arrow> = g.arrows.clone();
    let mut out = Vec::with_capacity(pending.len());
    let mut blocked = vec![false; g.n + 1];
    while !pending.is_empty() {
        blocked.iter_mut().for_each(|b| *b = false);
        let mut best: Option<usize> = None;
        for (idx, a) in pending.iter().enumerate() {
            if !blocked[a.from] && !blocked[a.to] && best.is_none_or(|b| *a < pending[b]) {
                best = Some(idx);
            }
            blocked[a.from] = true;
            blocked[a.to] = true;
        }
        let idx = best.expect("the first pending arrow is always available");
        out.push(pending.remove(idx));
    }
    CanonicalGauss(g.with_arrows(out))
}

/// Exact decision of virtual (vm) equivalence.
pub fn vm_equivalent(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    check_strands(w1.n(), w2.n())?;
    Ok(canonical_form(&word_to_gauss(w1)) == canonical_form(&word_to_gauss(w2)))
}

/// Transitive dependence order of a linearization: `before(a, b)` iff arrow
/// `a` must precede arrow `b` in every linearization.
pub(crate) struct DependenceOrder {
    len: usize,
    reach: Vec<bool>,
}

impl DependenceOrder {
    pub(crate) fn new(arrows: &[Arrow]) -> Self {
        let len = arrows.len();
        let mut reach = vec![false; len * len];
        for b in 0..len {
            for a in (0..b).rev() {
                if arrows[a].depends_on(&arrows[b]) {
                    reach[a * len + b] = true;
                }
                if reach[a * len + b] {
                    continue;
                }
                // a reaches b through some c strictly between them
                for c in a + 1..b {
                    if reach[a * len + c] && reach[c * len + b] {
                        reach[a * len + b] = true;
                        break;
                    }
                }
            }
        }
        DependenceOrder { len, reach }
    }

    pub(crate) fn before(&self, a: usize, b: usize) -> bool {
        self.reach[a * self.len + b]
    }

    /// No arrow outside `members` lies strictly between two of them. Members
    /// must be given in increasing index order.
    pub(crate) fn is_convex(&self, members: &[usize]) -> bool {
        let (first, last) = (members[0], members[members.len() - 1]);
        (first + 1..last)
            .filter(|x| !members.contains(x))
            .all(|x| !(self.before(first, x) && self.before(x, last)))
    }
}
