//! Axiom checks for stability data, HN certificates, equivalence, push-down
//! from lifts, and deformation of charges.

mod deform;
mod hn;
mod pushdown;
mod validate;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use deform::{
    basic_monodromy_loops, deform_along_path, derive_stability, rotation_path_to, monodromy_word, rotation_path, semistable_set, DeformEvent, Deformation, LoopOutcome,
    MonodromyReport, PathDoc, DEFAULT_HN_LENGTH,
};
pub use hn::{hn_isomorphic, hn_search, hn_search_object, verify_certificate, HNCertificate, HnFactor, HnStep, SearchOrder};
pub use pushdown::{push_down, push_down_with, ChoiceRule};
pub use validate::{stab_equivalent, validate_stability, EquivalenceReport, StabilityReport};

use crate::catgraph::CatError;
use crate::charge::{ChargeError, ChargeTriple};
use crate::mf::MfError;
use crate::polymat::Q;

/// `(triple, slicing, hn)`: phases of declared semistables and an HN
/// certificate for every other indecomposable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityCondition {
    pub triple: ChargeTriple,
    pub slicing: BTreeMap<String, Q>,
    #[serde(default)]
    pub hn: BTreeMap<String, HNCertificate>,
}

impl StabilityCondition {
    pub fn is_semistable(&self, obj: &str) -> bool {
        self.slicing.contains_key(obj)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StabError {
    #[error(transparent)]
    Charge(#[from] ChargeError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error("no HN filtration found for `{0}`")]
    NoFiltration(String),
    #[error("zero object has no HN filtration")]
    ZeroObject,
    #[error("object is not isomorphic to a catalog member")]
    NotInCatalog,
    #[error("argument of `{object}` jumps by at least half a turn at sample {sample}")]
    StepTooLarge { sample: usize, object: String },
    #[error("charge of `{object}` vanishes at sample {sample}")]
    ChargeVanished { sample: usize, object: String },
    #[error("loop {0} does not return to the starting charges")]
    LoopNotClosed(usize),
    #[error("sample {sample} has {found} charges, lattice rank is {expected}")]
    SampleRank { sample: usize, expected: usize, found: usize },
    #[error("bridgeland data fails: {0}")]
    InvalidBridgeland(String),
}
