//! Virtual braid words over the generators `σ_i^{±1}` and `τ_i`.
//!
//! Strands are named by their starting slot. A "position" is the current
//! vertical slot `1..=n`, counted bottom to top, and every letter acts on the
//! positions `(index, index + 1)`. The word level is purely syntactic: no
//! letter is ever cancelled here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// A regular crossing.
    Sigma,
    /// A virtual crossing.
    Tau,
}

/// One generator letter. Tau letters always carry exponent `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    kind: Kind,
    index: usize,
    exp: i8,
}

impl Letter {
    pub fn sigma(index: usize) -> Self {
        Letter {
            kind: Kind::Sigma,
            index,
            exp: 1,
        }
    }

    pub fn sigma_inv(index: usize) -> Self {
        Letter {
            kind: Kind::Sigma,
            index,
            exp: -1,
        }
    }

    /// `σ_index^exp`; any negative `exp` is the inverse.
    pub fn sigma_pow(index: usize, exp: i8) -> Self {
        Letter {
            kind: Kind::Sigma,
            index,
            exp: if exp < 0 { -1 } else { 1 },
        }
    }

    pub fn tau(index: usize) -> Self {
        Letter {
            kind: Kind::Tau,
            index,
            exp: 1,
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn exp(&self) -> i8 {
        self.exp
    }

    pub fn is_sigma(&self) -> bool {
        self.kind == Kind::Sigma
    }

    pub fn inverse(&self) -> Self {
        match self.kind {
            Kind::Sigma => Letter {
                exp: -self.exp,
                ..*self
            },
            Kind::Tau => *self,
        }
    }

    fn parse_token(token: &str) -> Result<Self> {
        let mut chars = token.chars();
        let kind = match chars.next() {
            Some('s') => Kind::Sigma,
            Some('t') => Kind::Tau,
            _ => return Err(Error::UnknownToken(token.to_string())),
        };
        let rest = &token[1..];
        let (digits, inverse) = match rest.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if digits.is_empty() {
            return Err(Error::EmptyIndex(token.to_string()));
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::UnknownToken(token.to_string()));
        }
        let index: usize = digits.parse().map_err(|_| Error::UnknownToken(token.to_string()))?;
        Ok(match (kind, inverse) {
            (Kind::Sigma, false) => Letter::sigma(index),
            (Kind::Sigma, true) => Letter::sigma_inv(index),
            // τ_i is an involution
            (Kind::Tau, _) => Letter::tau(index),
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.exp) {
            (Kind::Sigma, 1) => write!(f, "s{}", self.index),
            (Kind::Sigma, _) => write!(f, "s{}'", self.index),
            (Kind::Tau, _) => write!(f, "t{}", self.index),
        }
    }
}

/// A permutation of `{1..n}` stored by its 1-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &image in &images {
            if image == 0 || image > n || seen[image - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[image - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `k` (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &image)| image == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (k, &image) in self.images.iter().enumerate() {
            images[image - 1] = k + 1;
        }
        Permutation { images }
    }

    /// `self` first, then `next`: the map `k ↦ next(self(k))`.
    pub fn then(&self, next: &Permutation) -> Self {
        assert_eq!(self.n(), next.n(), "permutation sizes differ");
        Permutation {
            images: self.images.iter().map(|&k| next.apply(k)).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{image}")?;
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(images).map_err(serde::de::Error::custom)
    }
}

/// A virtual braid word on `n` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoStrands);
        }
        for letter in &letters {
            if letter.index == 0 || letter.index >= n {
                return Err(Error::IndexOutOfRange { index: letter.index, n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "a braid needs at least one strand");
        BraidWord { n, letters: Vec::new() }
    }

    /// Parses the whitespace-separated token syntax `s3`, `s3'`, `t2`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoStrands);
        }
        let letters = text
            .split_whitespace()
            .map(Letter::parse_token)
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn sigma_count(&self) -> usize {
        self.letters.iter().filter(|l| l.is_sigma()).count()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        check_strands(self.n, other.n)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// The formal inverse: reversed, with σ exponents flipped.
    pub fn invert(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Image under the projection to `S_n`: `σ(k)` is the end position of
    /// the strand starting at `k`.
    pub fn permutation(&self) -> Permutation {
        let mut strand_at: Vec<usize> = (1..=self.n).collect();
        for letter in &self.letters {
            strand_at.swap(letter.index - 1, letter.index);
        }
        let mut images = vec![0; self.n];
        for (pos, &strand) in strand_at.iter().enumerate() {
            images[strand - 1] = pos + 1;
        }
        Permutation { images }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&WordJson::from(self)).expect("word serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: WordJson = serde_json::from_str(text)?;
        raw.try_into()
    }

    /// Replaces `letters[start..end]` with `replacement`. Indices are checked.
    pub(crate) fn splice(&self, start: usize, end: usize, replacement: &[Letter]) -> Result<Self> {
        let mut letters = Vec::with_capacity(self.letters.len() + replacement.len());
        letters.extend_from_slice(&self.letters[..start]);
        letters.extend_from_slice(replacement);
        letters.extend_from_slice(&self.letters[end..]);
        BraidWord::new(self.n, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_strands(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::StrandCountMismatch { left, right });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    n: usize,
    letters: Vec<LetterJson>,
}

#[derive(Serialize, Deserialize)]
struct LetterJson {
    kind: String,
    index: usize,
    exp: i8,
}

impl From<&BraidWord> for WordJson {
    fn from(word: &BraidWord) -> Self {
        WordJson {
            n: word.n,
            letters: word
                .letters
                .iter()
                .map(|l| LetterJson {
                    kind: match l.kind {
                        Kind::Sigma => "s".into(),
                        Kind::Tau => "t".into(),
                    },
                    index: l.index,
                    exp: l.exp,
                })
                .collect(),
        }
    }
}

impl TryFrom<WordJson> for BraidWord {
    type Error = Error;

    fn try_from(raw: WordJson) -> Result<Self> {
        let letters = raw
            .letters
            .into_iter()
            .map(|l| {
                if l.exp != 1 && l.exp != -1 {
                    return Err(Error::Format(format!("exponent {} is not ±1", l.exp)));
                }
                match l.kind.as_str() {
                    "s" => Ok(Letter::sigma_pow(l.index, l.exp)),
                    "t" => Ok(Letter::tau(l.index)),
                    other => Err(Error::UnknownToken(other.to_string())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(raw.n, letters)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma-separated 1-based images, e.g. `2,3,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPermutation(String::new()));
        }
        let images = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}
