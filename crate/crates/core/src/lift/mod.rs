//! The Z-lift of a cyclic category along a charge triple with vanishing
//! Maslov indices, connection equivalences, and Bridgeland checks.

mod bridgeland;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

pub use bridgeland::{check_bridgeland, BridgelandData, BridgelandReport, LiftedFactor};

use crate::catgraph::{Arrow, CategoryPresentation};
use crate::charge::{deformation_equivalent, maslov_indices, validate_triple, ChargeError, ChargeTriple};
use crate::polymat::Q;
use crate::stab::StabError;

pub const DEFAULT_WINDOW: u32 = 2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LiftError {
    #[error(transparent)]
    Charge(#[from] ChargeError),
    #[error(transparent)]
    Stab(Box<StabError>),
    #[error("charge triple fails validation: {0}")]
    InvalidTriple(String),
    #[error("basic loop of triangle {triangle:?} has Maslov index {index}")]
    MaslovObstruction { triangle: Box<[String; 3]>, index: Q },
    #[error("triples are not deformation equivalent")]
    NotDeformationEquivalent,
    #[error("`{0}` is not reachable from the base object")]
    Unreachable(String),
}

impl From<StabError> for LiftError {
    fn from(e: StabError) -> Self {
        LiftError::Stab(Box::new(e))
    }
}

/// `(E, level)` with `level = phi(E) mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LiftedObject {
    pub id: String,
    pub level: Q,
}

impl LiftedObject {
    pub fn new(id: impl Into<String>, level: Q) -> LiftedObject {
        LiftedObject { id: id.into(), level }
    }
}

/// Objects `(E, phi(E) + 2k)`, `|k| <= window`; homs are the arrows whose
/// degree equals the level difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCategory {
    pub base: CategoryPresentation,
    pub triple: ChargeTriple,
    pub window: u32,
    pub objects: Vec<LiftedObject>,
    /// Lifted triangles whose three levels were checked to close up.
    pub cone_checks: usize,
}

/// Serializable summary of a lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZLiftReport {
    pub window: u32,
    pub objects: Vec<(String, Q)>,
    /// Arrow count per `src|dst` pair of base objects, summed over the window.
    pub hom_dims: BTreeMap<String, usize>,
    pub checks: BTreeMap<String, bool>,
}

impl LiftedCategory {
    /// Level of the canonical lift `(E, phi(E))`.
    pub fn label(&self, id: &str) -> Result<&Q, ChargeError> {
        self.triple.phase(id)
    }

    pub fn contains(&self, o: &LiftedObject) -> bool {
        self.objects.binary_search(o).is_ok()
    }

    /// `Hom((E1, l1), (E2, l2))`: arrows `E1 -> E2` of degree `l2 - l1`.
    pub fn hom<'a>(&'a self, a: &LiftedObject, b: &LiftedObject) -> Vec<&'a Arrow> {
        let gap = &b.level - &a.level;
        self.base.arrows_between(&a.id, &b.id).filter(|f| self.triple.q.get(&f.id) == Some(&gap)).collect()
    }

    pub fn shift(&self, o: &LiftedObject) -> Result<LiftedObject, ChargeError> {
        Ok(LiftedObject { id: self.base.shift_of(&o.id)?.clone(), level: &o.level + &Q::one() })
    }

    /// The projection to the base category.
    pub fn project<'a>(&self, o: &'a LiftedObject) -> &'a str {
        &o.id
    }

    /// Dimension of `Hom(E, F)` in the base, recovered by summing lifted hom
    /// spaces out of `(E, phi(E))` over every level of `F` in the window.
    pub fn summed_hom_dim(&self, e: &str, f: &str) -> Result<usize, ChargeError> {
        let src = LiftedObject::new(e, self.label(e)?.clone());
        Ok(self.objects.iter().filter(|o| o.id == f).map(|o| self.hom(&src, o).len()).sum())
    }

    pub fn report(&self) -> Result<ZLiftReport, ChargeError> {
        let mut hom_dims = BTreeMap::new();
        let mut partition = true;
        for e in &self.base.objects {
            for f in &self.base.objects {
                let n = self.summed_hom_dim(e, f)?;
                partition &= n == self.base.arrows_between(e, f).count();
                if n > 0 {
                    hom_dims.insert(format!("{e}|{f}"), n);
                }
            }
        }
        let checks = BTreeMap::from([("hom_partition".to_string(), partition), ("cones".to_string(), true)]);
        Ok(ZLiftReport {
            window: self.window,
            objects: self.objects.iter().map(|o| (o.id.clone(), o.level.clone())).collect(),
            hom_dims,
            checks,
        })
    }
}

/// Requires a valid triple with every basic loop of index 0.
pub fn build_z_lift(c: &CategoryPresentation, r: &ChargeTriple, window: u32) -> Result<LiftedCategory, LiftError> {
    let rep = validate_triple(r, c)?;
    if !rep.passed() {
        return Err(LiftError::InvalidTriple(format!("{rep:?}")));
    }
    for (l, m) in maslov_indices(r, c)? {
        if !m.is_zero() {
            return Err(LiftError::MaslovObstruction { triangle: Box::new(l.triangle), index: m });
        }
    }
    let w = window as i64;
    let mut objects = Vec::new();
    for e in &c.objects {
        for k in -w..=w {
            objects.push(LiftedObject::new(e.clone(), &r.phi[e] + &Q::int(2 * k)));
        }
    }
    objects.sort();
    let mut lift = LiftedCategory { base: c.clone(), triple: r.clone(), window, objects, cone_checks: 0 };
    let mut checks = 0;
    for [f, g, h] in &c.triangles {
        let a = &c.arrow_or_err(f).map_err(ChargeError::from)?.src;
        for o in lift.objects.iter().filter(|o| &o.id == a) {
            let b = &o.level + r.degree(f)?;
            let cc = &b + r.degree(g)?;
            let back = &cc + r.degree(h)?;
            if back != &o.level + &Q::one() {
                return Err(LiftError::MaslovObstruction { triangle: Box::new([f.clone(), g.clone(), h.clone()]), index: Q::zero() });
            }
            checks += 1;
        }
    }
    lift.cone_checks = checks;
    Ok(lift)
}

/// Level relabeling `H(F, l) = (F, l + offset(F))` between two lifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionEquiv {
    pub offsets: BTreeMap<String, Q>,
}

impl ConnectionEquiv {
    pub fn apply(&self, o: &LiftedObject) -> Option<LiftedObject> {
        Some(LiftedObject { id: o.id.clone(), level: &o.level + self.offsets.get(&o.id)? })
    }
}

/// Propagates `H((E, phi_1(E))) = (E, phi_2(E))` from `base` along arrows,
/// adding `q_2 - q_1` per step.
pub fn connection_equiv(l1: &LiftedCategory, l2: &LiftedCategory, base: &str) -> Result<ConnectionEquiv, LiftError> {
    let c = &l1.base;
    if !deformation_equivalent(&l1.triple, &l2.triple, c)?.0 {
        return Err(LiftError::NotDeformationEquivalent);
    }
    let start = l2.triple.phase(base)? - l1.triple.phase(base)?;
    let mut offsets = BTreeMap::from([(base.to_string(), start)]);
    let mut queue = VecDeque::from([base.to_string()]);
    while let Some(x) = queue.pop_front() {
        let ox = offsets[&x].clone();
        for a in &c.arrows {
            let d = l2.triple.degree(&a.id)? - l1.triple.degree(&a.id)?;
            let (y, oy) = if a.src == x {
                (&a.dst, &ox + &d)
            } else if a.dst == x {
                (&a.src, &ox - &d)
            } else {
                continue;
            };
            if !offsets.contains_key(y) {
                offsets.insert(y.clone(), oy);
                queue.push_back(y.clone());
            }
        }
    }
    if let Some(o) = c.objects.iter().find(|o| !offsets.contains_key(*o)) {
        return Err(LiftError::Unreachable(o.clone()));
    }
    Ok(ConnectionEquiv { offsets })
}
