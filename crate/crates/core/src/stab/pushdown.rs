use std::collections::BTreeMap;

use super::hn::{hn_search, SearchOrder};
use super::{StabError, StabilityCondition, DEFAULT_HN_LENGTH};
use crate::charge::normalize_phase;
use crate::lift::{check_bridgeland, BridgelandData, LiftedCategory};
use crate::mf::Catalog;
use crate::polymat::Q;

/// Which lift of an unstable object's phase represents it downstairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChoiceRule {
    /// The lift in `[l_last, l_last + 2)`, `l_last` the lowest factor phase.
    #[default]
    LastFactor,
    /// The lift in `(l_first - 2, l_first]`, `l_first` the highest factor phase.
    FirstFactor,
}

/// Smallest `x + 2k >= lo`.
fn lift_above(x: &Q, lo: &Q) -> Q {
    let two = Q::int(2);
    let mut k = ((lo - x) / &two).floor();
    let mut v = x + &(&two * &k);
    while &v < lo {
        k += &Q::one();
        v = x + &(&two * &k);
    }
    v
}

/// Largest `x + 2k <= hi`.
fn lift_below(x: &Q, hi: &Q) -> Q {
    let two = Q::int(2);
    let lo = hi - &two;
    let v = lift_above(x, &lo);
    if v == lo {
        hi.clone()
    } else {
        v
    }
}

pub fn push_down(l: &LiftedCategory, data: &BridgelandData, catalog: Option<&Catalog>) -> Result<StabilityCondition, StabError> {
    push_down_with(l, data, catalog, ChoiceRule::LastFactor)
}

/// Reads a stability condition off valid lifted data: every object's phase
/// and degree shift by its offset `psi - phi`, then HN filtrations are
/// searched afresh.
pub fn push_down_with(
    l: &LiftedCategory,
    data: &BridgelandData,
    catalog: Option<&Catalog>,
    rule: ChoiceRule,
) -> Result<StabilityCondition, StabError> {
    let rep = check_bridgeland(l, data, catalog).map_err(|e| StabError::InvalidBridgeland(e.to_string()))?;
    if !rep.passed() {
        return Err(StabError::InvalidBridgeland(format!("{rep:?}")));
    }
    let c = &l.base;
    let r = &l.triple;
    let mut off: BTreeMap<String, Q> = BTreeMap::new();
    for o in &c.objects {
        let phi = &r.phi[o];
        if let Some(psi) = data.phases.get(o) {
            off.insert(o.clone(), psi - phi);
            continue;
        }
        let factors = &data.hn[o];
        let lifted = |i: usize| -> Q {
            let f = &factors[i];
            &(&data.phases[&f.object] - &r.phi[&f.object]) + &f.level
        };
        let chosen = match rule {
            ChoiceRule::LastFactor => lift_above(phi, &lifted(factors.len() - 1)),
            ChoiceRule::FirstFactor => lift_below(phi, &lifted(0)),
        };
        off.insert(o.clone(), &chosen - phi);
    }
    let mut triple = r.clone();
    for o in &c.objects {
        triple.phi.insert(o.clone(), normalize_phase(&(&r.phi[o] + &off[o])));
    }
    for a in &c.arrows {
        triple.q.insert(a.id.clone(), &r.q[&a.id] + &(&off[&a.dst] - &off[&a.src]));
    }
    let slicing = data.phases.iter().map(|(o, p)| (o.clone(), normalize_phase(p))).collect();
    let mut s = StabilityCondition { triple, slicing, hn: BTreeMap::new() };
    for o in c.objects.iter().filter(|o| !data.phases.contains_key(*o)) {
        let cert = hn_search(o, &s, c, SearchOrder::PhaseDescending, DEFAULT_HN_LENGTH.max(data.hn[o].len()))?;
        s.hn.insert(o.clone(), cert);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_land_in_their_windows() {
        let x = Q::new(1, 6);
        assert_eq!(lift_above(&x, &Q::new(1, 3)), Q::new(13, 6));
        assert_eq!(lift_above(&x, &Q::new(1, 6)), Q::new(1, 6));
        assert_eq!(lift_above(&x, &Q::int(-3)), Q::new(-11, 6));
        assert_eq!(lift_below(&x, &Q::new(1, 6)), Q::new(1, 6));
        assert_eq!(lift_below(&x, &Q::new(1, 12)), Q::new(-11, 6));
    }
}
