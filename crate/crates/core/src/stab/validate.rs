use serde::Serialize;

use super::hn::{hn_isomorphic, verify_certificate};
use super::{StabError, StabilityCondition};
use crate::catgraph::{is_liftable, potentials, CategoryPresentation, Diagram};
use crate::charge::{normalize_phase, validate_triple, TripleReport};
use crate::mf::Catalog;
use crate::polymat::Q;

/// Violations per axiom; empty lists mean the axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    /// Axioms 1 to 3.
    pub triple: TripleReport,
    /// Axiom 4: semistables whose shift is missing or has the wrong phase.
    pub slicing_shift: Vec<String>,
    /// Axiom 5: semistables of zero charge or with phase off the slice.
    pub slice_phase: Vec<String>,
    /// Axiom 6: arrows between semistables of negative degree.
    pub negative_arrows: Vec<String>,
    /// Declared semistables of zero charge, reported apart from axiom 6.
    pub zero_charge_members: Vec<String>,
    /// Axiom 7: `object: problem` for missing or failing certificates.
    pub hn: Vec<String>,
}

impl StabilityReport {
    /// Pass flag for each axiom, in order.
    pub fn conditions(&self) -> [bool; 7] {
        [
            self.triple.shift_phase.is_empty(),
            self.triple.polar_form.is_empty(),
            self.triple.degree_phase.is_empty(),
            self.slicing_shift.is_empty(),
            self.slice_phase.is_empty(),
            self.negative_arrows.is_empty(),
            self.hn.is_empty(),
        ]
    }

    pub fn passed(&self) -> bool {
        self.conditions().iter().all(|x| *x)
    }
}

pub fn validate_stability(
    s: &StabilityCondition,
    c: &CategoryPresentation,
    catalog: Option<&Catalog>,
) -> Result<StabilityReport, StabError> {
    let r = &s.triple;
    let mut rep = StabilityReport { triple: validate_triple(r, c)?, ..Default::default() };
    for (o, psi) in &s.slicing {
        if !c.has_object(o) {
            rep.slice_phase.push(o.clone());
            continue;
        }
        let t = c.shift_of(o)?;
        if s.slicing.get(t) != Some(&normalize_phase(&(psi + &Q::one()))) {
            rep.slicing_shift.push(o.clone());
        }
        let zero = r.charge(o)?.is_zero();
        if zero {
            rep.zero_charge_members.push(o.clone());
        }
        if zero || r.phase(o)? != psi {
            rep.slice_phase.push(o.clone());
        }
    }
    for a in c.proper_arrows() {
        if s.is_semistable(&a.src) && s.is_semistable(&a.dst) && r.degree(&a.id)?.is_negative() {
            rep.negative_arrows.push(a.id.clone());
        }
    }
    for o in &c.objects {
        if s.is_semistable(o) {
            continue;
        }
        let Some(cert) = s.hn.get(o) else {
            rep.hn.push(format!("{o}: no certificate"));
            continue;
        };
        if &cert.object != o {
            rep.hn.push(format!("{o}: certificate is for {}", cert.object));
            continue;
        }
        for p in verify_certificate(cert, s, c, catalog)? {
            rep.hn.push(format!("{o}: {p}"));
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// First failing clause, 1 to 4.
    pub failing_clause: Option<u8>,
    pub detail: String,
}

impl EquivalenceReport {
    fn fail(clause: u8, detail: impl Into<String>) -> EquivalenceReport {
        EquivalenceReport { equivalent: false, failing_clause: Some(clause), detail: detail.into() }
    }
}

/// Clauses: (1) equal slicings and charges, (2) equal arrow sets, (3)
/// isomorphic certificates for unstable objects, (4) equal degrees on paths
/// between semistables, i.e. `q1 - q2` has a potential constant on the
/// semistables of each component.
pub fn stab_equivalent(
    s1: &StabilityCondition,
    s2: &StabilityCondition,
    c: &CategoryPresentation,
) -> Result<EquivalenceReport, StabError> {
    let (r1, r2) = (&s1.triple, &s2.triple);
    if s1.slicing != s2.slicing {
        return Ok(EquivalenceReport::fail(1, "slicings differ"));
    }
    for o in &c.objects {
        if r1.charge(o)? != r2.charge(o)? {
            return Ok(EquivalenceReport::fail(1, format!("charges differ at {o}")));
        }
    }
    if r1.q.keys().ne(r2.q.keys()) {
        return Ok(EquivalenceReport::fail(2, "arrow sets differ"));
    }
    for o in c.objects.iter().filter(|o| !s1.is_semistable(o)) {
        let same = match (s1.hn.get(o), s2.hn.get(o)) {
            (Some(a), Some(b)) => hn_isomorphic(a, b),
            (None, None) => true,
            _ => false,
        };
        if !same {
            return Ok(EquivalenceReport::fail(3, format!("certificates differ at {o}")));
        }
    }
    let diff = r1.q.iter().map(|(a, d)| (a.clone(), d - &r2.q[a])).collect();
    let arrows: Vec<String> = c.arrows.iter().map(|a| a.id.clone()).collect();
    let d = Diagram::induced(c, &c.objects, &arrows)?;
    if let Some((_, deg)) = is_liftable(&d, c, &diff)?.witness {
        return Ok(EquivalenceReport::fail(4, format!("a loop changes degree by {deg}")));
    }
    let pot = potentials(&d, c, &diff)?;
    let mut seen: Vec<(usize, Q, &String)> = Vec::new();
    for o in c.objects.iter().filter(|o| s1.is_semistable(o)) {
        let n = d.node_index(o).ok_or_else(|| crate::catgraph::CatError::UnknownObject(o.clone()))?;
        let (comp, p) = &pot[&(n, 0)];
        if let Some((_, p0, o0)) = seen.iter().find(|(k, _, _)| k == comp) {
            if p0 != p {
                return Ok(EquivalenceReport::fail(4, format!("paths {o0} -> {o} change degree")));
            }
        } else {
            seen.push((*comp, p.clone(), o));
        }
    }
    Ok(EquivalenceReport { equivalent: true, failing_clause: None, detail: String::new() })
}
