use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LiftError, LiftedCategory};
use crate::charge::{normalize_phase, phase_matches};
use crate::mf::Catalog;
use crate::polymat::Q;
use crate::stab::{hn_search, verify_certificate, SearchOrder, StabilityCondition, DEFAULT_HN_LENGTH};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedFactor {
    pub object: String,
    pub level: Q,
}

/// Slicing of a lift: the phase of `(E, phi(E))` for each semistable `E`
/// (then `(E, phi(E) + t)` has phase `psi(E) + t`), and the HN factors of
/// `(E, phi(E))` for the others, highest phase first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgelandData {
    pub phases: BTreeMap<String, Q>,
    #[serde(default)]
    pub hn: BTreeMap<String, Vec<LiftedFactor>>,
}

impl BridgelandData {
    /// The canonical slicing of the lift of `s`: semistables keep their
    /// phase, HN factors sit at the levels fixed by the certificate diagram.
    pub fn from_stability(s: &StabilityCondition, l: &LiftedCategory) -> Result<BridgelandData, LiftError> {
        let mut hn = BTreeMap::new();
        for (e, cert) in &s.hn {
            let rel = cert.relative_levels(&l.base, &s.triple.q).map_err(crate::charge::ChargeError::from)?;
            let base = l.label(e)?;
            hn.insert(
                e.clone(),
                cert.factors.iter().zip(rel).map(|(f, r)| LiftedFactor { object: f.object.clone(), level: base + &r }).collect(),
            );
        }
        Ok(BridgelandData { phases: s.slicing.clone(), hn })
    }

    /// Every phase moved by `2k`. Factor objects stay put; only their
    /// phases move with the slicing.
    pub fn shifted(&self, k: i64) -> BridgelandData {
        let t = Q::int(2 * k);
        BridgelandData { phases: self.phases.iter().map(|(o, p)| (o.clone(), p + &t)).collect(), hn: self.hn.clone() }
    }

    /// Equal after one global shift `[2k]`.
    pub fn equal_up_to_even_shift(&self, other: &BridgelandData) -> bool {
        let Some((o, p)) = self.phases.iter().next() else { return self == other };
        let Some(q) = other.phases.get(o) else { return false };
        let d = q - p;
        if !(&d / &Q::int(2)).is_integer() {
            return false;
        }
        let k = (&d / &Q::int(2)).numer().to_string().parse::<i64>().unwrap_or(0);
        self.shifted(k) == *other
    }

    /// `psi(E) - phi(E)`: how far the phase of `(E, l)` sits above `l`.
    pub fn offset(&self, l: &LiftedCategory, e: &str) -> Option<Q> {
        Some(self.phases.get(e)? - l.label(e).ok()?)
    }
}

/// Violations per clause over the lift's window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BridgelandReport {
    pub window: u32,
    /// (a) semistables whose charge is zero or off their phase.
    pub charge_phase: Vec<String>,
    /// (b) semistables whose shift is not semistable one phase higher.
    pub shift: Vec<String>,
    /// (c) arrows from a semistable of higher phase to one of lower phase.
    pub hom_order: Vec<String>,
    /// (d) unstable objects without a valid HN chain.
    pub hn: Vec<String>,
}

impl BridgelandReport {
    pub fn clauses(&self) -> [bool; 4] {
        [self.charge_phase.is_empty(), self.shift.is_empty(), self.hom_order.is_empty(), self.hn.is_empty()]
    }

    pub fn passed(&self) -> bool {
        self.clauses().iter().all(|x| *x)
    }
}

pub fn check_bridgeland(
    l: &LiftedCategory,
    data: &BridgelandData,
    catalog: Option<&Catalog>,
) -> Result<BridgelandReport, LiftError> {
    let c = &l.base;
    let r = &l.triple;
    let mut rep = BridgelandReport { window: l.window, ..Default::default() };
    for (e, psi) in &data.phases {
        if !c.has_object(e) || r.charge(e)?.is_zero() || !phase_matches(&r.charge(e)?, psi) {
            rep.charge_phase.push(e.clone());
        }
        let t = c.shift_of(e).map_err(crate::charge::ChargeError::from)?;
        if data.offset(l, t) != data.offset(l, e) {
            rep.shift.push(e.clone());
        }
    }
    for a in c.proper_arrows() {
        let (Some(oa), Some(ob)) = (data.offset(l, &a.src), data.offset(l, &a.dst)) else { continue };
        if oa > &ob + r.degree(&a.id)? {
            rep.hom_order.push(a.id.clone());
        }
    }
    let slicing = data.phases.iter().map(|(o, p)| (o.clone(), normalize_phase(p))).collect();
    let s = StabilityCondition { triple: r.clone(), slicing, hn: BTreeMap::new() };
    for e in c.objects.iter().filter(|e| !data.phases.contains_key(*e)) {
        let Some(factors) = data.hn.get(e) else {
            rep.hn.push(format!("{e}: no HN factors"));
            continue;
        };
        let lifted: Option<Vec<Q>> = factors.iter().map(|f| Some(&data.offset(l, &f.object)? + &f.level)).collect();
        let Some(lifted) = lifted else {
            rep.hn.push(format!("{e}: a factor is not semistable"));
            continue;
        };
        if lifted.windows(2).any(|w| w[0] <= w[1]) {
            rep.hn.push(format!("{e}: factor phases do not decrease"));
            continue;
        }
        let cert = match hn_search(e, &s, c, SearchOrder::PhaseDescending, DEFAULT_HN_LENGTH.max(factors.len())) {
            Ok(cert) => cert,
            Err(err) => {
                rep.hn.push(format!("{e}: {err}"));
                continue;
            }
        };
        let problems = verify_certificate(&cert, &s, c, catalog)?;
        if !problems.is_empty() {
            rep.hn.push(format!("{e}: {}", problems.join("; ")));
            continue;
        }
        let rel = cert.relative_levels(c, &r.q).map_err(crate::charge::ChargeError::from)?;
        let label = l.label(e)?;
        let expected: Vec<LiftedFactor> =
            cert.factors.iter().zip(rel).map(|(f, x)| LiftedFactor { object: f.object.clone(), level: label + &x }).collect();
        if &expected != factors {
            rep.hn.push(format!("{e}: factors differ from the realized filtration"));
        }
    }
    Ok(rep)
}
