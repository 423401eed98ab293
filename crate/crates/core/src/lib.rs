//! Virtual braids on `n` strands.
//!
//! Words in `σ_i^{±1}` and `τ_i` map to braid-Gauss diagrams; the canonical
//! linearization of a diagram decides virtual equivalence exactly. Omega
//! moves on diagrams model the Reidemeister moves, and a bounded search over
//! them looks for full equivalences. The thickened-surface realization of a
//! word gives its canonical genus.

pub mod error;
pub mod gauss;
pub mod moves;
pub mod pure;
pub mod realize;
pub mod sample;
pub mod search;
pub mod selftest;
pub mod surface;
pub mod word;

pub use error::{Error, Result};
pub use gauss::{canonical_form, vm_equivalent, word_to_gauss, Arrow, BraidGaussDiagram, CanonicalGauss, Sign};
pub use moves::{apply_omega, rewrite_word, MoveTrace, OmegaMoveSite};
pub use pure::{is_pure, to_pure_word, verify_pv_presentation, PureWord};
pub use realize::{realize, tau_word_for};
pub use search::{min_genus_bounded, r_equivalent_bounded, Budget, Certificate, Verdict};
pub use surface::{build_ribbon_graph, canonical_genus, RibbonGraph, SurfaceSummary};
pub use word::{BraidWord, Kind, Letter, Permutation};
