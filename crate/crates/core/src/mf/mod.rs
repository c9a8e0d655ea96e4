//! Matrix factorizations, their hom complexes, cones and the A_n catalogs.

mod catalog;
mod cone;
mod factorization;
mod hom;
mod iso;
mod kl;

pub use catalog::{
    build_an_equivariant, display_name, object_id, Catalog, CatalogOptions, Identification, DEFAULT_BOUND, RCHARGE_SCALE,
};
pub use cone::{cone, Cone};
pub use factorization::{
    entry_allowed, entry_rcharge, monomial_pair, Grading, MatrixFactorization, MfDoc, RCharges, Side,
};
pub use hom::{hom_space, Coord, HomElement, HomSpace, Sparse};
pub use iso::{decompose, find_isomorphism, fingerprint, is_zero_object};
pub use kl::{kapustin_li_pair, kl_matrix};

use crate::polymat::{PolyError, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MfError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("differentials must be square matrices of equal size")]
    NotSquare,
    #[error("differentials and potential live in different rings")]
    ContextMismatch,
    #[error("delta0 * delta1 or delta1 * delta0 differs from w * I")]
    NotAFactorization,
    #[error("a differential entry violates the group weights")]
    NotEquivariant,
    #[error("a differential entry does not have R-charge 1")]
    NotHomogeneous,
    #[error("grading fields are incomplete or inconsistent")]
    IncompleteGrading,
    #[error("factorizations have different potentials")]
    MismatchedPotential,
    #[error("factorizations carry incompatible gradings")]
    MismatchedGrading,
    #[error("truncation bound {bound} is too small, need at least {needed}")]
    BoundTooSmall { bound: u32, needed: u32 },
    #[error("block shapes do not match the factorizations")]
    ShapeMismatch,
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("morphism is not closed under the hom differential")]
    NotClosed,
    #[error("morphism must have even parity")]
    OddMorphism,
    #[error("Kapustin-Li pairing is implemented for one variable only, got {0}")]
    UnsupportedArity(usize),
    #[error("Kapustin-Li pairing needs a monomial potential")]
    UnsupportedPotential,
    #[error("R-charge scale {0} does not give degree-1 differentials")]
    UnsupportedScale(Q),
    #[error("n must be at least 2 and d must divide n + 1, got n={n}, d={d}")]
    InvalidExample { n: u32, d: u32 },
}
