use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::CatError;
use crate::polymat::Q;

/// Homogeneous morphism generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub degree: Q,
    #[serde(default)]
    pub label: String,
}

impl Arrow {
    pub fn is_identity(&self) -> bool {
        self.label == "id"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub arrow: String,
    pub coeff: Q,
}

/// `second ∘ first` as a linear combination of arrows; an empty result means
/// the composite is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub first: String,
    pub second: String,
    pub result: Vec<Term>,
}

/// Where a presentation came from, so a backend can be rebuilt from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceInfo {
    pub example: String,
    pub bound: u32,
}

/// Finite presentation of a cyclic category.
///
/// Invariants checked by [`CategoryPresentation::validate`]: `shift` is an
/// involution on objects, arrow endpoints exist, identity arrows have degree
/// 0, `arrow_shift` maps `f` to an arrow between the shifted endpoints with
/// the same degree, and triangles `(f, g, h)` chain `A -> B -> C -> A[1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryPresentation {
    pub objects: Vec<String>,
    pub shift: BTreeMap<String, String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub arrow_shift: BTreeMap<String, String>,
    #[serde(default)]
    pub triangles: Vec<[String; 3]>,
    #[serde(default)]
    pub compositions: Vec<Composition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceInfo>,
}

impl CategoryPresentation {
    pub fn validate(&self) -> Result<(), CatError> {
        let objs: BTreeSet<&String> = self.objects.iter().collect();
        if objs.len() != self.objects.len() {
            return Err(CatError::DuplicateId(first_duplicate(&self.objects)));
        }
        for o in &self.objects {
            let s = self.shift.get(o).ok_or_else(|| CatError::UnknownObject(o.clone()))?;
            let back = self.shift.get(s).ok_or_else(|| CatError::UnknownObject(s.clone()))?;
            if back != o {
                return Err(CatError::ShiftNotInvolution(o.clone()));
            }
        }
        if self.shift.len() != self.objects.len() {
            let extra = self.shift.keys().find(|k| !objs.contains(k)).cloned().unwrap_or_default();
            return Err(CatError::UnknownObject(extra));
        }
        let ids: Vec<String> = self.arrows.iter().map(|a| a.id.clone()).collect();
        if ids.iter().collect::<BTreeSet<_>>().len() != ids.len() {
            return Err(CatError::DuplicateId(first_duplicate(&ids)));
        }
        for a in &self.arrows {
            for end in [&a.src, &a.dst] {
                if !objs.contains(end) {
                    return Err(CatError::UnknownObject(end.clone()));
                }
            }
            if a.is_identity() && (a.src != a.dst || !a.degree.is_zero()) {
                return Err(CatError::BadIdentity(a.id.clone()));
            }
        }
        for (f, g) in &self.arrow_shift {
            let (a, b) = (self.arrow_or_err(f)?, self.arrow_or_err(g)?);
            if b.src != self.shift[&a.src] || b.dst != self.shift[&a.dst] || a.degree != b.degree {
                return Err(CatError::ArrowShiftMismatch(f.clone()));
            }
        }
        for t in &self.triangles {
            let [f, g, h] = t.each_ref().map(|id| self.arrow_or_err(id));
            let (f, g, h) = (f?, g?, h?);
            if f.dst != g.src || g.dst != h.src || h.dst != self.shift[&f.src] {
                return Err(CatError::BrokenTriangle(f.id.clone()));
            }
        }
        for c in &self.compositions {
            let (f, g) = (self.arrow_or_err(&c.first)?, self.arrow_or_err(&c.second)?);
            if f.dst != g.src {
                return Err(CatError::BrokenChain(0));
            }
            for t in &c.result {
                let r = self.arrow_or_err(&t.arrow)?;
                if r.src != f.src || r.dst != g.dst {
                    return Err(CatError::BrokenChain(1));
                }
            }
        }
        Ok(())
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn arrow_or_err(&self, id: &str) -> Result<&Arrow, CatError> {
        self.arrow(id).ok_or_else(|| CatError::UnknownArrow(id.to_string()))
    }

    pub fn has_object(&self, id: &str) -> bool {
        self.objects.iter().any(|o| o == id)
    }

    pub fn shift_of(&self, id: &str) -> Result<&String, CatError> {
        self.shift.get(id).ok_or_else(|| CatError::UnknownObject(id.to_string()))
    }

    pub fn arrows_between<'a>(&'a self, src: &str, dst: &str) -> impl Iterator<Item = &'a Arrow> + 'a {
        let (src, dst) = (src.to_owned(), dst.to_owned());
        self.arrows.iter().filter(move |a| a.src == src && a.dst == dst)
    }

    /// Non-identity arrows.
    pub fn proper_arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(|a| !a.is_identity())
    }

    /// `second ∘ first` from the table, if recorded.
    pub fn compose(&self, first: &str, second: &str) -> Option<&[Term]> {
        self.compositions
            .iter()
            .find(|c| c.first == first && c.second == second)
            .map(|c| c.result.as_slice())
    }

    /// Arrow degrees keyed by id.
    pub fn degrees(&self) -> BTreeMap<String, Q> {
        self.arrows.iter().map(|a| (a.id.clone(), a.degree.clone())).collect()
    }

    /// Undirected connectivity of the object graph.
    pub fn is_connective(&self) -> bool {
        let Some(first) = self.objects.first() else { return true };
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for a in &self.arrows {
            adj.entry(&a.src).or_default().push(&a.dst);
            adj.entry(&a.dst).or_default().push(&a.src);
        }
        let mut seen = BTreeSet::from([first.as_str()]);
        let mut queue = VecDeque::from([first.as_str()]);
        while let Some(v) = queue.pop_front() {
            for &w in adj.get(v).into_iter().flatten() {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.objects.len()
    }
}

fn first_duplicate(ids: &[String]) -> String {
    let mut seen = BTreeSet::new();
    ids.iter().find(|i| !seen.insert(*i)).cloned().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(id: &str, s: &str, t: &str) -> Arrow {
        Arrow { id: id.into(), src: s.into(), dst: t.into(), degree: Q::zero(), label: String::new() }
    }

    fn pres(objects: &[&str], arrows: Vec<Arrow>) -> CategoryPresentation {
        CategoryPresentation {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            shift: objects.iter().map(|s| (s.to_string(), s.to_string())).collect(),
            arrows,
            ..Default::default()
        }
    }

    #[test]
    fn connectivity_examples() {
        assert!(pres(&["E"], vec![arrow("e", "E", "E")]).is_connective());
        assert!(!pres(&["E", "F"], vec![]).is_connective());
        assert!(pres(&["E", "F"], vec![arrow("f", "F", "E")]).is_connective());
    }

    #[test]
    fn shift_must_be_an_involution() {
        let mut p = pres(&["A", "B", "C"], vec![]);
        p.shift = [("A", "B"), ("B", "C"), ("C", "A")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(p.validate(), Err(CatError::ShiftNotInvolution("A".into())));
    }
}
