use std::collections::BTreeMap;

use super::complex::Complex;
use super::triple::{normalize_phase, ChargeTriple};
use super::ChargeError;
use crate::catgraph::CategoryPresentation;
use crate::polymat::Q;

/// Lattice classes of the `A_2`, `Z/3` catalog in the basis
/// `v(M1_0), v(M1_1)`; `M1_0 + M1_1 + M1_2 = 0` and `M2_j = -M1_(j-1)`.
pub fn a2_lattice() -> BTreeMap<String, Vec<i64>> {
    let m1 = [vec![1, 0], vec![0, 1], vec![-1, -1]];
    let mut v = BTreeMap::new();
    for j in 0..3 {
        v.insert(format!("M1_{j}"), m1[j].clone());
        v.insert(format!("M2_{j}"), m1[(j + 2) % 3].iter().map(|x| -x).collect());
    }
    v
}

/// `sqrt(3)/2` rounded to the nearest double, stored exactly.
pub fn half_sqrt3() -> Q {
    Q::from_f64(3f64.sqrt() / 2.0).unwrap_or_default()
}

/// The Walcher point: `Z(M1_0) = e^{i pi/6}`, `Z(M1_1) = e^{5 i pi/6}`,
/// phases `phi(M1_j) = 1/6 + 2j/3`, `phi(M2_j) = phi(M1_j) + 1/3`, and
/// degrees equal to the presentation's R-charges.
pub fn walcher_triple(c: &CategoryPresentation) -> Result<ChargeTriple, ChargeError> {
    let v = a2_lattice();
    if c.objects.len() != v.len() || c.objects.iter().any(|o| !v.contains_key(o)) {
        return Err(ChargeError::IdMismatch("expected the A2 Z/3 catalog".into()));
    }
    let s = half_sqrt3();
    let z = vec![Complex::new(s.clone(), Q::new(1, 2)), Complex::new(-s, Q::new(1, 2))];
    let mut phi = BTreeMap::new();
    for j in 0..3 {
        let p = &Q::new(1, 6) + &Q::new(2 * j, 3);
        phi.insert(format!("M2_{j}"), normalize_phase(&(&p + &Q::new(1, 3))));
        phi.insert(format!("M1_{j}"), normalize_phase(&p));
    }
    Ok(ChargeTriple { lattice_rank: 2, v, z, phi, q: c.degrees() })
}
