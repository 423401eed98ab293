//! Pure virtual braids: the kernel of the projection to `S_n`, words in the
//! arrow generators `X_{i,j}^{±1}`, and a checker for the presentation of
//! `PV_n` by `A_{i,j}` with the triangle and commutation relations.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{canonical_form, Arrow, BraidGaussDiagram, Sign};
use crate::moves::MoveTrace;
use crate::search::connect_within;
use crate::word::{BraidWord, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PureLetter {
    pub i: usize,
    pub j: usize,
    pub exp: i8,
}

impl fmt::Display for PureLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{},{}", self.i, self.j)?;
        if self.exp < 0 {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A word in `X_{i,j}^{±1}`; `A_{i,j}` is the positive arrow `i>j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PureWord {
    n: usize,
    letters: Vec<PureLetter>,
}

impl PureWord {
    pub fn new(n: usize, letters: Vec<PureLetter>) -> Result<Self> {
        for l in &letters {
            if l.i == l.j || l.i == 0 || l.j == 0 || l.i > n || l.j > n {
                return Err(Error::InvalidArrow { from: l.i, to: l.j, n });
            }
            if l.exp != 1 && l.exp != -1 {
                return Err(Error::Format(format!("exponent {} is not ±1", l.exp)));
            }
        }
        Ok(PureWord { n, letters })
    }

    /// Product of positive generators `A_{i,j}`.
    pub fn positive(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        PureWord::new(n, pairs.iter().map(|&(i, j)| PureLetter { i, j, exp: 1 }).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[PureLetter] {
        &self.letters
    }

    pub fn to_diagram(&self) -> BraidGaussDiagram {
        let arrows = self
            .letters
            .iter()
            .map(|l| Arrow::new(l.i, l.j, Sign::from_exp(l.exp)))
            .collect();
        BraidGaussDiagram::new(self.n, arrows, Permutation::identity(self.n)).expect("validated letters")
    }
}

impl fmt::Display for PureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn is_pure(w: &BraidWord) -> bool {
    w.permutation().is_identity()
}

/// Reads the arrow linearization of a pure diagram as a word in `X*`.
pub fn to_pure_word(g: &BraidGaussDiagram) -> Result<PureWord> {
    if !g.perm().is_identity() {
        return Err(Error::NotPure);
    }
    let letters = g
        .arrows()
        .iter()
        .map(|a| PureLetter {
            i: a.from,
            j: a.to,
            exp: a.sign.value() as i8,
        })
        .collect();
    PureWord::new(g.n(), letters)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PvRelation {
    /// `A_{i,j} A_{i,k} A_{j,k} = A_{j,k} A_{i,k} A_{i,j}`
    Triangle,
    /// `A_{i,j} A_{k,l} = A_{k,l} A_{i,j}`
    Commutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvInstance {
    pub relation: PvRelation,
    pub instance: Vec<usize>,
    pub status: Status,
    pub trace: Option<MoveTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PvReport {
    pub instances: Vec<PvInstance>,
}

impl PvReport {
    pub fn all_passed(&self) -> bool {
        self.instances.iter().all(|i| i.status == Status::Pass)
    }

    pub fn count(&self, relation: PvRelation) -> usize {
        self.instances.iter().filter(|i| i.relation == relation).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Checks every instance of both relation families on `n` strands. Triangle
/// instances need an Omega-move witness of at most `depth` steps (without
/// insertions); commutation instances need equal canonical forms.
pub fn verify_pv_presentation(n: usize, depth: usize) -> PvReport {
    let mut jobs = Vec::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for k in (1..=n).filter(|&k| k != i && k != j) {
                jobs.push((PvRelation::Triangle, vec![i, j, k]));
                for l in (1..=n).filter(|&l| l != i && l != j && l != k) {
                    jobs.push((PvRelation::Commutation, vec![i, j, k, l]));
                }
            }
        }
    }
    jobs.sort();
    let instances = jobs
        .into_par_iter()
        .map(|(relation, idx)| check_instance(n, depth, relation, idx))
        .collect();
    PvReport { instances }
}

fn check_instance(n: usize, depth: usize, relation: PvRelation, instance: Vec<usize>) -> PvInstance {
    let (lhs, rhs) = match relation {
        PvRelation::Triangle => {
            let [i, j, k] = instance[..] else { unreachable!() };
            (vec![(i, j), (i, k), (j, k)], vec![(j, k), (i, k), (i, j)])
        }
        PvRelation::Commutation => {
            let [i, j, k, l] = instance[..] else { unreachable!() };
            (vec![(i, j), (k, l)], vec![(k, l), (i, j)])
        }
    };
    let lhs = PureWord::positive(n, &lhs).expect("distinct indices").to_diagram();
    let rhs = PureWord::positive(n, &rhs).expect("distinct indices").to_diagram();
    let trace = match relation {
        PvRelation::Commutation => (canonical_form(&lhs) == canonical_form(&rhs)).then(MoveTrace::default),
        PvRelation::Triangle => connect_within(&lhs, &rhs, depth, 0),
    };
    PvInstance {
        relation,
        instance,
        status: if trace.is_some() { Status::Pass } else { Status::Fail },
        trace,
    }
}
