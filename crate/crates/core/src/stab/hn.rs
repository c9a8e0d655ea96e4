use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{StabError, StabilityCondition};
use crate::catgraph::{
    diagram_connective, is_liftable, path_degree_by, potentials, simple_paths, CatError, CategoryPresentation, Diagram,
    Simplicity, Term,
};
use crate::mf::{cone, is_zero_object, Catalog, MatrixFactorization};
use crate::polymat::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnFactor {
    pub object: String,
    pub phase: Q,
}

/// Step `i >= 2`: `h: Q_i -> E_(i-1)[1]` whose cone triangle, rotated,
/// reads `E_(i-1) -inclusion-> E_i -projection-> Q_i -h-> E_(i-1)[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnStep {
    pub connecting: String,
    pub inclusion: String,
    pub projection: String,
}

/// Filtration `0 = E_0 -> E_1 -> ... -> E_n = E` with semistable factors
/// `Q_i` and inter-factor path degrees `c_2, .., c_n`, all negative.
/// Factors are single indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HNCertificate {
    pub object: String,
    pub factors: Vec<HnFactor>,
    pub stages: Vec<String>,
    pub steps: Vec<HnStep>,
    pub gaps: Vec<Q>,
}

impl HNCertificate {
    pub fn trivial(object: &str, phase: Q) -> HNCertificate {
        HNCertificate {
            object: object.to_string(),
            factors: vec![HnFactor { object: object.to_string(), phase }],
            stages: vec![object.to_string()],
            steps: vec![],
            gaps: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Nodes: stages and factors; edges: inclusions and projections.
    pub fn diagram(&self, c: &CategoryPresentation) -> Result<Diagram, CatError> {
        let mut objects: Vec<String> = Vec::new();
        for o in self.stages.iter().chain(self.factors.iter().map(|f| &f.object)) {
            if !objects.contains(o) {
                objects.push(o.clone());
            }
        }
        let mut arrows: Vec<String> = Vec::new();
        for s in &self.steps {
            for a in [&s.inclusion, &s.projection] {
                if !arrows.contains(a) {
                    arrows.push(a.clone());
                }
            }
        }
        Diagram::induced(c, &objects, &arrows)
    }

    /// Level of each factor minus the level of the object, read off the
    /// diagram's potential.
    pub fn relative_levels(&self, c: &CategoryPresentation, q: &BTreeMap<String, Q>) -> Result<Vec<Q>, CatError> {
        let d = self.diagram(c)?;
        let pot = potentials(&d, c, q)?;
        let level = |o: &str| -> Result<Q, CatError> {
            let n = d.node_index(o).ok_or_else(|| CatError::UnknownObject(o.to_string()))?;
            Ok(pot[&(n, 0)].1.clone())
        };
        let base = level(&self.object)?;
        self.factors.iter().map(|f| Ok(level(&f.object)? - base.clone())).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOrder {
    /// Factors by descending phase then id, arrows by id.
    PhaseDescending,
    /// The reverse of both lists.
    Reversed,
}

/// `(g, h')` for every recorded triangle `(h, g, h')`.
fn triangle_tails(c: &CategoryPresentation) -> BTreeMap<&str, (&str, &str)> {
    let mut out = BTreeMap::new();
    for [h, g, k] in &c.triangles {
        out.entry(h.as_str()).or_insert((g.as_str(), k.as_str()));
    }
    out
}

/// Linear combination of arrows for the composite along `chain`, through the
/// composition table.
fn compose_chain(c: &CategoryPresentation, chain: &[String]) -> Result<Vec<Term>, CatError> {
    let Some(first) = chain.first() else { return Ok(vec![]) };
    let mut acc = vec![Term { arrow: first.clone(), coeff: Q::one() }];
    for g in &chain[1..] {
        let mut next: BTreeMap<String, Q> = BTreeMap::new();
        for t in &acc {
            let r = c.compose(&t.arrow, g).ok_or_else(|| CatError::MissingComposite(t.arrow.clone(), g.clone()))?;
            for u in r {
                *next.entry(u.arrow.clone()).or_insert_with(Q::zero) += &(&t.coeff * &u.coeff);
            }
        }
        acc = next.into_iter().filter(|(_, k)| !k.is_zero()).map(|(arrow, coeff)| Term { arrow, coeff }).collect();
    }
    Ok(acc)
}

/// Problems with `cert` under `s`; empty means verified. With a catalog,
/// each connecting cone is rebuilt and identified in the MF backend.
pub fn verify_certificate(
    cert: &HNCertificate,
    s: &StabilityCondition,
    c: &CategoryPresentation,
    catalog: Option<&Catalog>,
) -> Result<Vec<String>, StabError> {
    let mut bad = Vec::new();
    let n = cert.len();
    if n == 0 || cert.stages.len() != n || cert.steps.len() + 1 != n || cert.gaps.len() + 1 != n {
        bad.push("malformed certificate".to_string());
        return Ok(bad);
    }
    if cert.stages[n - 1] != cert.object || cert.stages[0] != cert.factors[0].object {
        bad.push("stages do not run from Q_1 to the object".to_string());
    }
    for f in &cert.factors {
        match s.slicing.get(&f.object) {
            Some(p) if *p == f.phase => {}
            _ => bad.push(format!("factor {} is not semistable of phase {}", f.object, f.phase)),
        }
    }
    let tails = triangle_tails(c);
    for (i, step) in cert.steps.iter().enumerate() {
        let (prev, q_i, e_i) = (&cert.stages[i], &cert.factors[i + 1].object, &cert.stages[i + 1]);
        let h = c.arrow_or_err(&step.connecting)?;
        if &h.src != q_i || &h.dst != c.shift_of(prev)? {
            bad.push(format!("{} is not a map Q_{} -> E_{}[1]", h.id, i + 2, i + 1));
            continue;
        }
        let Some(&(g, k)) = tails.get(h.id.as_str()) else {
            bad.push(format!("no triangle starts with {}", h.id));
            continue;
        };
        let x = &c.arrow_or_err(g)?.dst;
        let ok = c.shift_of(x)? == e_i
            && c.arrow_shift.get(g) == Some(&step.inclusion)
            && c.arrow_shift.get(k) == Some(&step.projection);
        if !ok {
            bad.push(format!("step {} does not match the cone triangle of {}", i + 2, h.id));
        }
        if let Some(cat) = catalog {
            let f = cat.arrow(&h.id).ok_or_else(|| CatError::UnknownArrow(h.id.clone()))?;
            let found = cat.identify(&cone(f)?.object)?;
            if found.map(|idn| idn.id) != Some(x.clone()) {
                bad.push(format!("cone of {} is not isomorphic to {}", h.id, x));
            }
        }
    }
    if !bad.is_empty() {
        return Ok(bad);
    }
    let q = &s.triple.q;
    let d = cert.diagram(c)?;
    if !diagram_connective(&d) {
        bad.push("diagram is not connective".to_string());
    }
    if let Some((_, deg)) = is_liftable(&d, c, q)?.witness {
        bad.push(format!("diagram has a loop of degree {deg}"));
        return Ok(bad);
    }
    for i in 1..n {
        let vertex = |o: &str| d.node_index(o).map(|k| (k, 0));
        let (Some(a), Some(b)) = (vertex(&cert.factors[i - 1].object), vertex(&cert.factors[i].object)) else {
            bad.push(format!("factor {} missing from diagram", i + 1));
            continue;
        };
        let paths = simple_paths(&d, a, b, Simplicity::Vertex);
        if paths.is_empty() {
            bad.push(format!("no path from Q_{i} to Q_{}", i + 1));
        }
        for p in paths {
            let deg = path_degree_by(c, &p, q)?;
            if deg != cert.gaps[i - 1] || !deg.is_negative() {
                bad.push(format!("path Q_{i} -> Q_{} has degree {deg}, gap {}", i + 1, cert.gaps[i - 1]));
            }
        }
    }
    let incl: Vec<String> = cert.steps.iter().map(|s| s.inclusion.clone()).collect();
    for i in 0..incl.len() {
        for j in i + 1..incl.len() {
            if compose_chain(c, &incl[i..=j])?.is_empty() {
                bad.push(format!("composite of inclusions {}..{} vanishes", i + 2, j + 2));
            }
        }
    }
    Ok(bad)
}

struct Search<'a> {
    c: &'a CategoryPresentation,
    s: &'a StabilityCondition,
    target: &'a str,
    max_len: usize,
    candidates: Vec<(String, Q)>,
    tails: BTreeMap<&'a str, (&'a str, &'a str)>,
    order: SearchOrder,
}

impl Search<'_> {
    fn extend(&self, cert: &mut HNCertificate) -> Result<Option<HNCertificate>, StabError> {
        if cert.len() >= 2 && cert.stages.last().map(String::as_str) == Some(self.target) {
            if let Some(done) = self.finish(cert)? {
                return Ok(Some(done));
            }
        }
        if cert.len() >= self.max_len {
            return Ok(None);
        }
        let prev = cert.stages.last().cloned().unwrap_or_default();
        let goal = self.c.shift_of(&prev)?.clone();
        for (qi, phase) in &self.candidates {
            let mut hs: Vec<&str> = self
                .c
                .arrows_between(qi, &goal)
                .filter(|a| !a.is_identity() && self.tails.contains_key(a.id.as_str()))
                .map(|a| a.id.as_str())
                .collect();
            if self.order == SearchOrder::Reversed {
                hs.reverse();
            }
            for h in hs {
                let (g, k) = self.tails[h];
                let x = &self.c.arrow_or_err(g)?.dst;
                let (Some(incl), Some(proj)) = (self.c.arrow_shift.get(g), self.c.arrow_shift.get(k)) else { continue };
                let e_new = self.c.shift_of(x)?.clone();
                if cert.stages.contains(&e_new) {
                    continue;
                }
                cert.factors.push(HnFactor { object: qi.clone(), phase: phase.clone() });
                cert.stages.push(e_new);
                cert.steps.push(HnStep { connecting: h.to_string(), inclusion: incl.clone(), projection: proj.clone() });
                let found = self.extend(cert)?;
                cert.factors.pop();
                cert.stages.pop();
                cert.steps.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    /// Fills in gaps from the diagram and keeps the certificate if it verifies.
    fn finish(&self, cert: &HNCertificate) -> Result<Option<HNCertificate>, StabError> {
        let mut out = cert.clone();
        out.object = self.target.to_string();
        let Ok(d) = out.diagram(self.c) else { return Ok(None) };
        if !is_liftable(&d, self.c, &self.s.triple.q)?.liftable {
            return Ok(None);
        }
        out.gaps.clear();
        for i in 1..out.len() {
            let (a, b) = (&out.factors[i - 1].object, &out.factors[i].object);
            let (Some(a), Some(b)) = (d.node_index(a), d.node_index(b)) else { return Ok(None) };
            let Some(p) = simple_paths(&d, (a, 0), (b, 0), Simplicity::Vertex).into_iter().next() else {
                return Ok(None);
            };
            out.gaps.push(path_degree_by(self.c, &p, &self.s.triple.q)?);
        }
        Ok(verify_certificate(&out, self.s, self.c, None)?.is_empty().then_some(out))
    }
}

/// First verified certificate in the given enumeration order, factors drawn
/// from the declared semistables. Semistable objects get the trivial one.
pub fn hn_search(
    obj: &str,
    s: &StabilityCondition,
    c: &CategoryPresentation,
    order: SearchOrder,
    max_len: usize,
) -> Result<HNCertificate, StabError> {
    if !c.has_object(obj) {
        return Err(CatError::UnknownObject(obj.to_string()).into());
    }
    if let Some(p) = s.slicing.get(obj) {
        return Ok(HNCertificate::trivial(obj, p.clone()));
    }
    let mut candidates: Vec<(String, Q)> = s.slicing.iter().map(|(o, p)| (o.clone(), p.clone())).collect();
    candidates.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    if order == SearchOrder::Reversed {
        candidates.reverse();
    }
    let search = Search { c, s, target: obj, max_len, candidates, tails: triangle_tails(c), order };
    for (q1, phase) in search.candidates.clone() {
        let mut cert = HNCertificate::trivial(&q1, phase);
        if let Some(found) = search.extend(&mut cert)? {
            return Ok(found);
        }
    }
    Err(StabError::NoFiltration(obj.to_string()))
}

/// [`hn_search`] for a factorization, identified in the catalog first.
pub fn hn_search_object(
    x: &MatrixFactorization,
    s: &StabilityCondition,
    catalog: &Catalog,
    order: SearchOrder,
    max_len: usize,
) -> Result<HNCertificate, StabError> {
    if is_zero_object(x)? {
        return Err(StabError::ZeroObject);
    }
    let id = catalog.identify(x)?.ok_or(StabError::NotInCatalog)?.id;
    hn_search(&id, s, &catalog.presentation, order, max_len)
}

/// Same object, factors, stages and connecting arrows (maps agree up to
/// the scalar of a basis arrow), and equal gaps.
pub fn hn_isomorphic(c1: &HNCertificate, c2: &HNCertificate) -> bool {
    c1.object == c2.object
        && c1.len() == c2.len()
        && c1.factors == c2.factors
        && c1.stages == c2.stages
        && c1.steps.iter().zip(&c2.steps).all(|(a, b)| a.connecting == b.connecting)
        && c1.gaps == c2.gaps
}
