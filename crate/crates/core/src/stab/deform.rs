use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::hn::{hn_search, SearchOrder};
use super::{StabError, StabilityCondition};
use crate::catgraph::CategoryPresentation;
use crate::charge::{normalize_phase, ChargeTriple, Complex};
use crate::polymat::Q;

pub const DEFAULT_HN_LENGTH: usize = 3;

/// Charges of the lattice generators at each sample after the start.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDoc {
    pub samples: Vec<Vec<Complex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformEvent {
    pub sample: usize,
    pub object: String,
    pub event: String,
}

impl fmt::Display for DeformEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.sample, self.object, self.event)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Deformation {
    pub result: StabilityCondition,
    /// Change of the continuously tracked phase of each object.
    pub offsets: BTreeMap<String, Q>,
    pub events: Vec<DeformEvent>,
}

/// Objects of nonzero charge that survive the rule: `E` is unstable when a
/// triangle `A -f-> E -g-> B -> A[1]` with `A`, `B` semistable has
/// `q(f) + q(g) < 0`. Iterated to a fixed point.
pub fn semistable_set(r: &ChargeTriple, c: &CategoryPresentation) -> Result<BTreeSet<String>, StabError> {
    let mut base = BTreeSet::new();
    for o in &c.objects {
        if !r.charge(o)?.is_zero() {
            base.insert(o.clone());
        }
    }
    let mut triangles = Vec::new();
    for [f, g, _] in &c.triangles {
        let (fa, ga) = (c.arrow_or_err(f)?, c.arrow_or_err(g)?);
        triangles.push((fa.src.clone(), fa.dst.clone(), ga.dst.clone(), r.degree(f)? + r.degree(g)?));
    }
    let mut current = base.clone();
    for _ in 0..=c.objects.len() {
        let next: BTreeSet<String> = base
            .iter()
            .filter(|e| {
                !triangles
                    .iter()
                    .any(|(a, m, b, d)| m == *e && d.is_negative() && current.contains(a) && current.contains(b))
            })
            .cloned()
            .collect();
        if next == current {
            break;
        }
        current = next;
    }
    Ok(current)
}

fn derive_with(
    triple: ChargeTriple,
    stable: &BTreeSet<String>,
    c: &CategoryPresentation,
) -> Result<(StabilityCondition, Vec<String>), StabError> {
    let slicing = stable.iter().map(|o| (o.clone(), triple.phi[o].clone())).collect();
    let mut result = StabilityCondition { triple, slicing, hn: BTreeMap::new() };
    let mut missing = Vec::new();
    for o in c.objects.iter().filter(|o| !stable.contains(*o)) {
        match hn_search(o, &result, c, SearchOrder::PhaseDescending, DEFAULT_HN_LENGTH) {
            Ok(cert) => {
                result.hn.insert(o.clone(), cert);
            }
            Err(StabError::NoFiltration(_)) => missing.push(o.clone()),
            Err(e) => return Err(e),
        }
    }
    Ok((result, missing))
}

/// The stability condition a triple induces: semistables by
/// [`semistable_set`], certificates by search. Objects without a filtration
/// are returned separately and carry no certificate.
pub fn derive_stability(r: &ChargeTriple, c: &CategoryPresentation) -> Result<(StabilityCondition, Vec<String>), StabError> {
    let stable = semistable_set(r, c)?;
    derive_with(r.clone(), &stable, c)
}

fn with_offsets(r: &ChargeTriple, c: &CategoryPresentation, z: &[Complex], offsets: &BTreeMap<String, Q>) -> ChargeTriple {
    let mut out = r.clone();
    out.z = z.to_vec();
    for (o, d) in offsets {
        out.phi.insert(o.clone(), normalize_phase(&(&r.phi[o] + d)));
    }
    for a in &c.arrows {
        let d = &offsets[&a.dst] - &offsets[&a.src];
        out.q.insert(a.id.clone(), &r.q[&a.id] + &d);
    }
    out
}

/// Tracks every phase continuously along the samples, moving degrees by
/// `offset(dst) - offset(src)`, then re-derives slicing and certificates.
pub fn deform_along_path(
    s: &StabilityCondition,
    samples: &[Vec<Complex>],
    c: &CategoryPresentation,
) -> Result<Deformation, StabError> {
    let r = &s.triple;
    let mut tracked: BTreeMap<String, Q> = BTreeMap::new();
    for o in &c.objects {
        if r.charge(o)?.is_zero() {
            return Err(StabError::ChargeVanished { sample: 0, object: o.clone() });
        }
        tracked.insert(o.clone(), r.phase(o)?.clone());
    }
    let start: BTreeMap<String, Complex> =
        c.objects.iter().map(|o| Ok((o.clone(), r.charge(o)?))).collect::<Result<_, StabError>>()?;
    let mut events = Vec::new();
    let mut stable = semistable_set(r, c)?;
    let mut z = r.z.clone();
    for (k, sample) in samples.iter().enumerate() {
        if sample.len() != r.lattice_rank {
            return Err(StabError::SampleRank { sample: k, expected: r.lattice_rank, found: sample.len() });
        }
        let at = ChargeTriple { z: sample.clone(), ..r.clone() };
        for o in &c.objects {
            let zo = at.charge(o)?;
            let Some(t) = zo.arg_turns() else {
                return Err(StabError::ChargeVanished { sample: k, object: o.clone() });
            };
            let cur = &tracked[o];
            let lifts = ((cur.to_f64() - t) / 2.0).round();
            let next = t + 2.0 * lifts;
            if (next - cur.to_f64()).abs() >= 0.5 {
                return Err(StabError::StepTooLarge { sample: k, object: o.clone() });
            }
            let phi0 = &r.phi[o];
            let exact = if zo == start[o] {
                phi0 + &Q::int(2 * ((next - phi0.to_f64()) / 2.0).round() as i64)
            } else {
                &Q::approximate(t, 1e-12) + &Q::int(2 * lifts as i64)
            };
            tracked.insert(o.clone(), exact);
        }
        z = sample.clone();
        let offsets: BTreeMap<String, Q> = tracked.iter().map(|(o, p)| (o.clone(), p - &r.phi[o])).collect();
        let now = semistable_set(&with_offsets(r, c, &z, &offsets), c)?;
        for o in stable.difference(&now) {
            events.push(DeformEvent { sample: k, object: o.clone(), event: "destabilized".into() });
        }
        for o in now.difference(&stable) {
            events.push(DeformEvent { sample: k, object: o.clone(), event: "stabilized".into() });
        }
        stable = now;
    }
    let offsets: BTreeMap<String, Q> = tracked.iter().map(|(o, p)| (o.clone(), p - &r.phi[o])).collect();
    let triple = with_offsets(r, c, &z, &offsets);
    let (result, missing) = derive_with(triple, &stable, c)?;
    for o in missing {
        events.push(DeformEvent { sample: samples.len(), object: o, event: "no-filtration".into() });
    }
    Ok(Deformation { result, offsets, events })
}

/// Samples rotating generator `index` by `turns * pi` in `steps` equal steps.
pub fn rotation_path(z: &[Complex], index: usize, turns: f64, steps: usize) -> Vec<Vec<Complex>> {
    (1..=steps)
        .map(|k| {
            let mut s = z.to_vec();
            s[index] = z[index].rotate(turns * k as f64 / steps as f64);
            s
        })
        .collect()
}

/// Samples moving generator `index` to `target` through `turns * pi` of
/// argument, modulus interpolated linearly. The last sample is exactly
/// `target`.
pub fn rotation_path_to(z: &[Complex], index: usize, target: &Complex, turns: f64, steps: usize) -> Vec<Vec<Complex>> {
    let (r0, r1) = (z[index].norm(), target.norm());
    let mut out: Vec<Vec<Complex>> = (1..steps)
        .map(|k| {
            let t = k as f64 / steps as f64;
            let mut s = z.to_vec();
            let w = z[index].rotate(turns * t);
            let (x, y) = w.to_f64();
            let f = (r0 + (r1 - r0) * t) / r0;
            s[index] = Complex::from_f64(x * f, y * f).unwrap_or_default();
            s
        })
        .collect();
    let mut last = z.to_vec();
    last[index] = target.clone();
    out.push(last);
    out
}

/// Loop moving `w = sum coeffs_i z_i` (through generator `index`, the
/// others fixed): shrink to `eps |w|`, turn once counterclockwise, grow
/// back. Ends exactly at `z`.
fn shrink_turn_grow(z: &[Complex], index: usize, coeffs: &[i64], eps: f64) -> Vec<Vec<Complex>> {
    const RADIAL: usize = 16;
    const ANGULAR: usize = 32;
    let w0 = coeffs.iter().zip(z).fold(Complex::zero(), |acc, (k, zi)| &acc + &zi.scale(&Q::int(*k)));
    let rest = &w0 - &z[index].scale(&Q::int(coeffs[index]));
    let inv = Q::new(1, coeffs[index]);
    let place = |w: Complex| {
        let mut s = z.to_vec();
        s[index] = (&w - &rest).scale(&inv);
        s
    };
    let scaled = |r: f64, turn: f64| {
        let (x, y) = w0.to_f64();
        let (sn, cs) = (2.0 * std::f64::consts::PI * turn).sin_cos();
        Complex::from_f64(r * (cs * x - sn * y), r * (sn * x + cs * y)).unwrap_or_default()
    };
    let mut out = Vec::new();
    for k in 1..=RADIAL {
        out.push(place(scaled(1.0 - (1.0 - eps) * k as f64 / RADIAL as f64, 0.0)));
    }
    for k in 1..=ANGULAR {
        out.push(place(scaled(eps, k as f64 / ANGULAR as f64)));
    }
    for k in 1..RADIAL {
        out.push(place(scaled(eps + (1.0 - eps) * k as f64 / RADIAL as f64, 0.0)));
    }
    out.push(z.to_vec());
    out
}

/// Generator loops for a rank-2 lattice: `z_0` around the origin, `z_1`
/// around the origin, and `z_0 + z_1` around the origin with `z_1` fixed.
pub fn basic_monodromy_loops(z: &[Complex]) -> Vec<Vec<Vec<Complex>>> {
    const EPS: f64 = 0.25;
    vec![
        shrink_turn_grow(z, 0, &[1, 0], EPS),
        shrink_turn_grow(z, 1, &[0, 1], EPS),
        shrink_turn_grow(z, 0, &[1, 1], EPS),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopOutcome {
    /// Lifted phase change per object.
    pub offsets: BTreeMap<String, Q>,
    /// True when the base stability data come back unchanged.
    pub base_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyReport {
    pub per_loop: Vec<LoopOutcome>,
    pub composite: LoopOutcome,
    /// The common offset when every object moves by the same amount.
    pub lifted_offset: Option<Q>,
}

fn outcome(start: &StabilityCondition, end: &StabilityCondition, offsets: BTreeMap<String, Q>) -> LoopOutcome {
    let base_identity = start.triple == end.triple && start.slicing == end.slicing;
    LoopOutcome { offsets, base_identity }
}

/// Runs the loops in order, each starting where the previous ended.
pub fn monodromy_word(
    s: &StabilityCondition,
    loops: &[Vec<Vec<Complex>>],
    c: &CategoryPresentation,
) -> Result<MonodromyReport, StabError> {
    let mut cur = s.clone();
    let mut total: BTreeMap<String, Q> = c.objects.iter().map(|o| (o.clone(), Q::zero())).collect();
    let mut per_loop = Vec::new();
    for (i, l) in loops.iter().enumerate() {
        if l.last().is_some_and(|last| *last != s.triple.z) {
            return Err(StabError::LoopNotClosed(i));
        }
        let d = deform_along_path(&cur, l, c)?;
        for (o, x) in &d.offsets {
            *total.get_mut(o).expect("object") += x;
        }
        per_loop.push(outcome(&cur, &d.result, d.offsets));
        cur = d.result;
    }
    let first = total.values().next().cloned();
    let lifted_offset = first.filter(|f| total.values().all(|x| x == f));
    Ok(MonodromyReport { per_loop, composite: outcome(s, &cur, total), lifted_offset })
}
