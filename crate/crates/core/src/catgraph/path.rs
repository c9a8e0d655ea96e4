use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CatError, CategoryPresentation};
use crate::polymat::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> Q {
        match self {
            Direction::Forward => Q::one(),
            Direction::Backward => Q::int(-1),
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Step {
    pub arrow: String,
    pub dir: Direction,
}

/// Chain of arrows, each traversed forward or backward.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConnectingPath {
    pub steps: Vec<Step>,
}

impl ConnectingPath {
    pub fn new(steps: impl IntoIterator<Item = (impl Into<String>, Direction)>) -> ConnectingPath {
        ConnectingPath { steps: steps.into_iter().map(|(a, dir)| Step { arrow: a.into(), dir }).collect() }
    }

    pub fn reversed(&self) -> ConnectingPath {
        ConnectingPath {
            steps: self.steps.iter().rev().map(|s| Step { arrow: s.arrow.clone(), dir: s.dir.flip() }).collect(),
        }
    }

    pub fn concat(&self, other: &ConnectingPath) -> ConnectingPath {
        ConnectingPath { steps: self.steps.iter().chain(&other.steps).cloned().collect() }
    }

    /// `(start, end)` objects, checking that consecutive steps chain up.
    pub fn endpoints(&self, c: &CategoryPresentation) -> Result<Option<(String, String)>, CatError> {
        let mut ends: Option<(String, String)> = None;
        for (i, s) in self.steps.iter().enumerate() {
            let a = c.arrow_or_err(&s.arrow)?;
            let (from, to) = match s.dir {
                Direction::Forward => (&a.src, &a.dst),
                Direction::Backward => (&a.dst, &a.src),
            };
            ends = match ends {
                None => Some((from.clone(), to.clone())),
                Some((start, cur)) if &cur == from => Some((start, to.clone())),
                Some(_) => return Err(CatError::BrokenChain(i)),
            };
        }
        Ok(ends)
    }

    pub fn is_loop(&self, c: &CategoryPresentation) -> Result<bool, CatError> {
        Ok(self.endpoints(c)?.is_none_or(|(s, e)| s == e))
    }
}

/// Signed sum of the step degrees under `q`.
pub fn path_degree_by(
    c: &CategoryPresentation,
    p: &ConnectingPath,
    q: &BTreeMap<String, Q>,
) -> Result<Q, CatError> {
    p.endpoints(c)?;
    p.steps
        .iter()
        .map(|s| {
            let d = q.get(&s.arrow).ok_or_else(|| CatError::UnknownArrow(s.arrow.clone()))?;
            Ok(s.dir.sign() * d)
        })
        .sum()
}

/// Signed sum of the presentation's own arrow degrees.
pub fn path_degree(c: &CategoryPresentation, p: &ConnectingPath) -> Result<Q, CatError> {
    path_degree_by(c, p, &c.degrees())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catgraph::Arrow;

    fn two_arrows(d1: Q, d2: Q) -> CategoryPresentation {
        let a = |id: &str, d| Arrow { id: id.into(), src: "E".into(), dst: "F".into(), degree: d, label: String::new() };
        CategoryPresentation {
            objects: vec!["E".into(), "F".into()],
            shift: [("E", "E"), ("F", "F")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            arrows: vec![a("f", d1), a("g", d2)],
            ..Default::default()
        }
    }

    #[test]
    fn degree_examples() {
        let c = two_arrows(Q::new(1, 2), Q::new(1, 5));
        let fw = ConnectingPath::new([("f", Direction::Forward)]);
        assert_eq!(path_degree(&c, &fw).unwrap(), Q::new(1, 2));
        let back = ConnectingPath::new([("f", Direction::Forward), ("f", Direction::Backward)]);
        assert_eq!(path_degree(&c, &back).unwrap(), Q::zero());
        let mixed = ConnectingPath::new([("f", Direction::Forward), ("g", Direction::Backward)]);
        assert_eq!(path_degree(&c, &mixed).unwrap(), Q::new(3, 10));
        assert_eq!(path_degree(&c, &mixed.reversed()).unwrap(), Q::new(-3, 10));
    }

    #[test]
    fn broken_chain_is_rejected() {
        let c = two_arrows(Q::one(), Q::one());
        let p = ConnectingPath::new([("f", Direction::Forward), ("g", Direction::Forward)]);
        assert_eq!(path_degree(&c, &p), Err(CatError::BrokenChain(1)));
    }
}
