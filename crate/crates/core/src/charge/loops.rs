use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::triple::ChargeTriple;
use super::ChargeError;
use crate::catgraph::{path_degree_by, CategoryPresentation, ConnectingPath, Direction};
use crate::polymat::Q;

/// Triangle `A -f-> B -g-> C -h-> A[1]` and a path `A ⇢ A[1]` inside its
/// hexagon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicLoop {
    pub triangle: [String; 3],
    pub witness_path: ConnectingPath,
}

impl BasicLoop {
    /// Witness `f, g, h` based at `A`.
    pub fn from_triangle(t: &[String; 3]) -> BasicLoop {
        BasicLoop { triangle: t.clone(), witness_path: ConnectingPath::new(t.iter().map(|a| (a.clone(), Direction::Forward))) }
    }

    /// The same loop based at `B` (`g, h, f[1]`) or `C` (`h, f[1], g[1]`).
    pub fn rebased(&self, c: &CategoryPresentation, at: usize) -> Result<BasicLoop, ChargeError> {
        let [f, g, h] = &self.triangle;
        let sh = |a: &String| {
            c.arrow_shift.get(a).cloned().ok_or_else(|| ChargeError::NotLocallyLiftable(a.clone()))
        };
        let steps = match at {
            0 => vec![f.clone(), g.clone(), h.clone()],
            1 => vec![g.clone(), h.clone(), sh(f)?],
            _ => vec![h.clone(), sh(f)?, sh(g)?],
        };
        Ok(BasicLoop {
            triangle: self.triangle.clone(),
            witness_path: ConnectingPath::new(steps.into_iter().map(|a| (a, Direction::Forward))),
        })
    }

    /// The six hexagon arrows `f, g, h, f[1], g[1], h[1]`.
    pub fn hexagon(&self, c: &CategoryPresentation) -> Result<Vec<String>, ChargeError> {
        let mut out = self.triangle.to_vec();
        for a in &self.triangle {
            out.push(c.arrow_shift.get(a).cloned().ok_or_else(|| ChargeError::NotLocallyLiftable(a.clone()))?);
        }
        Ok(out)
    }

    /// Objects `A, B, C, A[1], B[1], C[1]`.
    pub fn objects(&self, c: &CategoryPresentation) -> Result<Vec<String>, ChargeError> {
        let mut out = Vec::new();
        for a in &self.triangle {
            out.push(c.arrow_or_err(a)?.src.clone());
        }
        for i in 0..3 {
            out.push(c.shift_of(&out[i])?.clone());
        }
        Ok(out)
    }
}

/// One basic loop per recorded triangle.
pub fn basic_loops(c: &CategoryPresentation) -> Vec<BasicLoop> {
    c.triangles.iter().map(BasicLoop::from_triangle).collect()
}

/// `(q(witness) - 1) / 2`. The hexagon must close up: every arrow and its
/// shift carry degrees and shifting preserves them.
pub fn maslov_index(l: &BasicLoop, r: &ChargeTriple, c: &CategoryPresentation) -> Result<Q, ChargeError> {
    for (a, s) in l.triangle.iter().zip(l.hexagon(c)?.iter().skip(3)) {
        let (qa, qs) = (r.degree(a)?, r.degree(s)?);
        if qa != qs {
            return Err(ChargeError::NotLocallyLiftable(a.clone()));
        }
    }
    let (start, end) = l.witness_path.endpoints(c)?.ok_or_else(|| ChargeError::NotLocallyLiftable(String::new()))?;
    if c.shift_of(&start)? != &end {
        return Err(ChargeError::NotLocallyLiftable(l.triangle[0].clone()));
    }
    let deg = path_degree_by(c, &l.witness_path, &r.q)?;
    Ok((deg - Q::one()) / Q::int(2))
}

/// Maslov index of every basic loop, in triangle order.
pub fn maslov_indices(r: &ChargeTriple, c: &CategoryPresentation) -> Result<Vec<(BasicLoop, Q)>, ChargeError> {
    basic_loops(c)
        .into_iter()
        .map(|l| {
            let m = maslov_index(&l, r, c)?;
            Ok((l, m))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Left,
    Right,
    /// Arrows of degree 0.
    Neutral,
    /// Objects with indices of both signs.
    Mixed,
    /// Objects on no basic loop.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiralityReport {
    pub arrows: BTreeMap<String, Chirality>,
    pub objects: BTreeMap<String, Chirality>,
}

/// Arrows by the sign of `q`; objects left when every basic loop through
/// them has index `>= 0`, right when every one is `< 0`.
pub fn chirality(r: &ChargeTriple, c: &CategoryPresentation) -> Result<ChiralityReport, ChargeError> {
    let arrows = c
        .arrows
        .iter()
        .map(|a| {
            let q = r.degree(&a.id)?;
            let ch = if q.is_positive() {
                Chirality::Left
            } else if q.is_negative() {
                Chirality::Right
            } else {
                Chirality::Neutral
            };
            Ok((a.id.clone(), ch))
        })
        .collect::<Result<_, ChargeError>>()?;
    let mut seen: BTreeMap<String, Vec<Q>> = c.objects.iter().map(|o| (o.clone(), Vec::new())).collect();
    for (l, m) in maslov_indices(r, c)? {
        for o in l.objects(c)? {
            seen.entry(o).or_default().push(m.clone());
        }
    }
    let objects = seen
        .into_iter()
        .map(|(o, ms)| {
            let ch = if ms.is_empty() {
                Chirality::Undetermined
            } else if ms.iter().all(|m| !m.is_negative()) {
                Chirality::Left
            } else if ms.iter().all(|m| m.is_negative()) {
                Chirality::Right
            } else {
                Chirality::Mixed
            };
            (o, ch)
        })
        .collect();
    Ok(ChiralityReport { arrows, objects })
}
