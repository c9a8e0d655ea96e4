//! Charge triples `(Z, phi, q)`, basic loops and their Maslov indices.

mod complex;
mod loops;
mod triple;
mod walcher;

pub use complex::{phase_matches, Complex, PHASE_TOLERANCE};
pub use loops::{basic_loops, chirality, maslov_index, maslov_indices, BasicLoop, Chirality, ChiralityReport};
pub use triple::{
    deformation_equivalent, normalize_phase, pair_to_triple, tau, validate_triple, ChargePair, ChargeTriple,
    TripleReport,
};
pub use walcher::{a2_lattice, half_sqrt3, walcher_triple};

use crate::catgraph::CatError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChargeError {
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error("`{0}` is missing on one side of the charge data and the presentation")]
    IdMismatch(String),
    #[error("lattice rank {expected} but a vector of length {found}")]
    LatticeRank { expected: usize, found: usize },
    #[error("central charge vanishes on every object")]
    TrivialCharge,
    #[error("propagated phases contradict the charge at `{0}`")]
    Inconsistent(String),
    #[error("presentation is not connective")]
    NotConnective,
    #[error("hexagon through `{0}` is not locally liftable")]
    NotLocallyLiftable(String),
    #[error("triples declare different arrow sets")]
    ArrowSetMismatch,
}
