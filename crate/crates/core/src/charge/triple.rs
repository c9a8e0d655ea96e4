use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::complex::{phase_matches, Complex};
use super::ChargeError;
use crate::catgraph::{is_liftable, CategoryPresentation, ConnectingPath, Diagram};
use crate::polymat::Q;

/// Central charge factored through a lattice, phases in `(0, 2]`, degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeTriple {
    pub lattice_rank: usize,
    pub v: BTreeMap<String, Vec<i64>>,
    #[serde(rename = "Z")]
    pub z: Vec<Complex>,
    pub phi: BTreeMap<String, Q>,
    pub q: BTreeMap<String, Q>,
}

/// A charge triple without phases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargePair {
    pub lattice_rank: usize,
    pub v: BTreeMap<String, Vec<i64>>,
    #[serde(rename = "Z")]
    pub z: Vec<Complex>,
    pub q: BTreeMap<String, Q>,
}

/// Violations per condition; empty lists mean the condition holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    /// Objects `E` with `phi(E[1]) != phi(E) + 1 mod 2`.
    pub shift_phase: Vec<String>,
    /// Objects whose nonzero charge does not point along `phi`.
    pub polar_form: Vec<String>,
    /// Arrows with `q(f) != phi(dst) - phi(src) mod 2`.
    pub degree_phase: Vec<String>,
}

impl TripleReport {
    pub fn passed(&self) -> bool {
        self.shift_phase.is_empty() && self.polar_form.is_empty() && self.degree_phase.is_empty()
    }
}

/// Representative of `x` modulo 2 in `(0, 2]`.
pub fn normalize_phase(x: &Q) -> Q {
    x.reduce_half_open(&Q::int(2))
}

fn charge_of(z: &[Complex], v: &BTreeMap<String, Vec<i64>>, obj: &str) -> Result<Complex, ChargeError> {
    let vec = v.get(obj).ok_or_else(|| ChargeError::IdMismatch(obj.to_string()))?;
    Ok(vec.iter().zip(z).fold(Complex::zero(), |acc, (k, zi)| &acc + &zi.scale(&Q::int(*k))))
}

fn check_ids(
    rank: usize,
    v: &BTreeMap<String, Vec<i64>>,
    z: &[Complex],
    q: &BTreeMap<String, Q>,
    c: &CategoryPresentation,
) -> Result<(), ChargeError> {
    if z.len() != rank {
        return Err(ChargeError::LatticeRank { expected: rank, found: z.len() });
    }
    for (o, vec) in v {
        if vec.len() != rank {
            return Err(ChargeError::LatticeRank { expected: rank, found: vec.len() });
        }
        if !c.has_object(o) {
            return Err(ChargeError::IdMismatch(o.clone()));
        }
    }
    if let Some(o) = c.objects.iter().find(|o| !v.contains_key(*o)) {
        return Err(ChargeError::IdMismatch(o.clone()));
    }
    for a in q.keys() {
        c.arrow(a).ok_or_else(|| ChargeError::IdMismatch(a.clone()))?;
    }
    if let Some(a) = c.arrows.iter().find(|a| !q.contains_key(&a.id)) {
        return Err(ChargeError::IdMismatch(a.id.clone()));
    }
    Ok(())
}

impl ChargeTriple {
    pub fn charge(&self, obj: &str) -> Result<Complex, ChargeError> {
        charge_of(&self.z, &self.v, obj)
    }

    /// `m(E) = |Z(E)|`.
    pub fn mass(&self, obj: &str) -> Result<f64, ChargeError> {
        Ok(self.charge(obj)?.norm())
    }

    pub fn phase(&self, obj: &str) -> Result<&Q, ChargeError> {
        self.phi.get(obj).ok_or_else(|| ChargeError::IdMismatch(obj.to_string()))
    }

    pub fn degree(&self, arrow: &str) -> Result<&Q, ChargeError> {
        self.q.get(arrow).ok_or_else(|| ChargeError::IdMismatch(arrow.to_string()))
    }

    /// Checks that every object and arrow of `c` is covered and nothing else.
    pub fn check_ids(&self, c: &CategoryPresentation) -> Result<(), ChargeError> {
        check_ids(self.lattice_rank, &self.v, &self.z, &self.q, c)?;
        if let Some(o) = c.objects.iter().find(|o| !self.phi.contains_key(*o)) {
            return Err(ChargeError::IdMismatch(o.clone()));
        }
        if let Some(o) = self.phi.keys().find(|o| !c.has_object(o)) {
            return Err(ChargeError::IdMismatch(o.clone()));
        }
        Ok(())
    }

    pub fn to_pair(&self) -> ChargePair {
        ChargePair { lattice_rank: self.lattice_rank, v: self.v.clone(), z: self.z.clone(), q: self.q.clone() }
    }
}

impl ChargePair {
    pub fn charge(&self, obj: &str) -> Result<Complex, ChargeError> {
        charge_of(&self.z, &self.v, obj)
    }
}

pub fn validate_triple(r: &ChargeTriple, c: &CategoryPresentation) -> Result<TripleReport, ChargeError> {
    r.check_ids(c)?;
    let mut rep = TripleReport::default();
    for o in &c.objects {
        let phi = &r.phi[o];
        let shifted = &r.phi[c.shift_of(o)?];
        if !shifted.congruent(&(phi + &Q::one()), &Q::int(2)) {
            rep.shift_phase.push(o.clone());
        }
        if phi.is_positive() && phi <= &Q::int(2) {
            if !phase_matches(&r.charge(o)?, phi) {
                rep.polar_form.push(o.clone());
            }
        } else {
            rep.polar_form.push(o.clone());
        }
    }
    for a in &c.arrows {
        let gap = &r.phi[&a.dst] - &r.phi[&a.src];
        if !r.q[&a.id].congruent(&gap, &Q::int(2)) {
            rep.degree_phase.push(a.id.clone());
        }
    }
    Ok(rep)
}

/// Rebuilds phases from a root of nonzero charge by propagating `q` along
/// arrows and `+1` along shifts, then checks the result.
pub fn pair_to_triple(p: &ChargePair, c: &CategoryPresentation) -> Result<ChargeTriple, ChargeError> {
    check_ids(p.lattice_rank, &p.v, &p.z, &p.q, c)?;
    if !c.is_connective() {
        return Err(ChargeError::NotConnective);
    }
    let mut root = None;
    for o in &c.objects {
        if let Some(t) = p.charge(o)?.arg_turns() {
            root = Some((o.clone(), normalize_phase(&Q::approximate(t, 1e-12))));
            break;
        }
    }
    let (root, phi0) = root.ok_or(ChargeError::TrivialCharge)?;
    let mut adj: BTreeMap<&str, Vec<(&str, Q)>> = BTreeMap::new();
    for a in &c.arrows {
        let d = p.q[&a.id].clone();
        adj.entry(&a.src).or_default().push((&a.dst, d.clone()));
        adj.entry(&a.dst).or_default().push((&a.src, -d));
    }
    for (o, s) in &c.shift {
        adj.entry(o).or_default().push((s, Q::one()));
    }
    let mut phi: BTreeMap<String, Q> = BTreeMap::from([(root.clone(), phi0)]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let px = phi[&x].clone();
        for (y, dq) in adj.get(x.as_str()).into_iter().flatten() {
            if !phi.contains_key(*y) {
                phi.insert(y.to_string(), normalize_phase(&(&px + dq)));
                queue.push_back(y.to_string());
            }
        }
    }
    let t = ChargeTriple { lattice_rank: p.lattice_rank, v: p.v.clone(), z: p.z.clone(), phi, q: p.q.clone() };
    let rep = validate_triple(&t, c)?;
    if let Some(w) = rep.shift_phase.iter().chain(&rep.polar_form).chain(&rep.degree_phase).next() {
        return Err(ChargeError::Inconsistent(w.clone()));
    }
    Ok(t)
}

/// `(Z, phi, q) -> (-conj Z, 1 - phi, -q)`.
pub fn tau(r: &ChargeTriple) -> ChargeTriple {
    ChargeTriple {
        lattice_rank: r.lattice_rank,
        v: r.v.clone(),
        z: r.z.iter().map(|z| -&z.conj()).collect(),
        phi: r.phi.iter().map(|(o, p)| (o.clone(), normalize_phase(&(&Q::one() - p)))).collect(),
        q: r.q.iter().map(|(a, d)| (a.clone(), -d)).collect(),
    }
}

/// True iff `q1 - q2` has degree 0 on every loop of the full diagram;
/// otherwise a loop where it does not.
pub fn deformation_equivalent(
    r1: &ChargeTriple,
    r2: &ChargeTriple,
    c: &CategoryPresentation,
) -> Result<(bool, Option<ConnectingPath>), ChargeError> {
    if r1.q.keys().ne(r2.q.keys()) {
        return Err(ChargeError::ArrowSetMismatch);
    }
    let diff: BTreeMap<String, Q> = r1.q.iter().map(|(a, d)| (a.clone(), d - &r2.q[a])).collect();
    let arrows: Vec<String> = c.arrows.iter().map(|a| a.id.clone()).collect();
    let rep = is_liftable(&Diagram::induced(c, &c.objects, &arrows)?, c, &diff)?;
    Ok((rep.liftable, rep.witness.map(|w| w.0)))
}
