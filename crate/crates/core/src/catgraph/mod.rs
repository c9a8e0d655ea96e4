//! Finite presentations of cyclic categories as degree-weighted multigraphs.

mod diagram;
mod path;
mod presentation;

pub use diagram::{
    augment_with_composites, cycle_basis, cycle_basis_with, degree_matrix, diagram_connective, glue, is_liftable,
    is_liftable_with, potentials, r_matrix, simple_paths, Block, Diagram, Edge, GlueReport, LiftReport, Node, RMatrix,
    Simplicity, Vertex,
};
pub use path::{path_degree, path_degree_by, ConnectingPath, Direction, Step};
pub use presentation::{Arrow, CategoryPresentation, Composition, SourceInfo, Term};

use crate::polymat::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("shift is not an involution at `{0}`")]
    ShiftNotInvolution(String),
    #[error("identity arrow `{0}` must be an endomorphism of degree 0")]
    BadIdentity(String),
    #[error("shift of arrow `{0}` has wrong endpoints or degree")]
    ArrowShiftMismatch(String),
    #[error("triangle starting with `{0}` does not chain A -> B -> C -> A[1]")]
    BrokenTriangle(String),
    #[error("path breaks at step {0}")]
    BrokenChain(usize),
    #[error("edge `{0}` has a block that does not match its summands")]
    BadBlock(String),
    #[error("diagram is not liftable, witness loop degree {0}")]
    NotLiftable(Q),
    #[error("edge has summand pairs without connecting paths")]
    NotConnective,
    #[error("common part is not a sub-diagram of both sides")]
    NotSubdiagram,
    #[error("composite of `{0}` then `{1}` is not recorded")]
    MissingComposite(String, String),
}
