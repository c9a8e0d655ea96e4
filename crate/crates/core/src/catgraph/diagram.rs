use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::path::{path_degree_by, ConnectingPath, Direction, Step};
use super::{CatError, CategoryPresentation};
use crate::polymat::Q;

/// Vertex of a diagram: a possibly decomposable object given by its
/// indecomposable summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub summands: Vec<String>,
}

/// Component of an edge between summand `from` of the source node and
/// summand `to` of the target node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub from: usize,
    pub to: usize,
    pub arrow: String,
    #[serde(default = "Q::one")]
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

/// Summand-level vertex `(node index, summand index)`.
pub type Vertex = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub liftable: bool,
    pub witness: Option<(ConnectingPath, Q)>,
}

/// Undirected multigraph on summands; each block is an edge `u -> v`.
struct SummandGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize, String)>,
}

impl Diagram {
    /// One single-summand node per object and one single-block edge per arrow.
    pub fn induced(c: &CategoryPresentation, objects: &[String], arrows: &[String]) -> Result<Diagram, CatError> {
        let nodes = objects.iter().map(|o| Node { id: o.clone(), summands: vec![o.clone()] }).collect();
        let edges = arrows
            .iter()
            .map(|id| {
                let a = c.arrow_or_err(id)?;
                Ok(Edge {
                    id: id.clone(),
                    src: a.src.clone(),
                    dst: a.dst.clone(),
                    blocks: vec![Block { from: 0, to: 0, arrow: id.clone(), coeff: Q::one() }],
                })
            })
            .collect::<Result<_, CatError>>()?;
        let d = Diagram { nodes, edges };
        d.validate(c)?;
        Ok(d)
    }

    /// The whole presentation as a diagram, identities excluded.
    pub fn full(c: &CategoryPresentation) -> Result<Diagram, CatError> {
        let arrows: Vec<String> = c.proper_arrows().map(|a| a.id.clone()).collect();
        Diagram::induced(c, &c.objects, &arrows)
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn validate(&self, c: &CategoryPresentation) -> Result<(), CatError> {
        let ids: BTreeSet<&String> = self.nodes.iter().map(|n| &n.id).collect();
        if ids.len() != self.nodes.len() {
            return Err(CatError::DuplicateId("node".into()));
        }
        for n in &self.nodes {
            for s in &n.summands {
                if !c.has_object(s) {
                    return Err(CatError::UnknownObject(s.clone()));
                }
            }
        }
        for e in &self.edges {
            let src = self.node_index(&e.src).ok_or_else(|| CatError::UnknownObject(e.src.clone()))?;
            let dst = self.node_index(&e.dst).ok_or_else(|| CatError::UnknownObject(e.dst.clone()))?;
            for b in &e.blocks {
                let a = c.arrow_or_err(&b.arrow)?;
                let ok = self.nodes[src].summands.get(b.from) == Some(&a.src)
                    && self.nodes[dst].summands.get(b.to) == Some(&a.dst);
                if !ok {
                    return Err(CatError::BadBlock(e.id.clone()));
                }
            }
        }
        Ok(())
    }

    fn graph(&self) -> SummandGraph {
        let mut vertices = Vec::new();
        let mut index = BTreeMap::new();
        for (ni, n) in self.nodes.iter().enumerate() {
            for si in 0..n.summands.len() {
                index.insert((ni, si), vertices.len());
                vertices.push((ni, si));
            }
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            let (Some(s), Some(t)) = (self.node_index(&e.src), self.node_index(&e.dst)) else { continue };
            for b in &e.blocks {
                if let (Some(&u), Some(&v)) = (index.get(&(s, b.from)), index.get(&(t, b.to))) {
                    edges.push((u, v, b.arrow.clone()));
                }
            }
        }
        SummandGraph { vertices, edges }
    }

    /// Summand vertices in node order.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.graph().vertices
    }

    /// Number of blocks, the edge count of the summand graph.
    pub fn block_count(&self) -> usize {
        self.graph().edges.len()
    }
}

struct Forest {
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    tree: BTreeSet<usize>,
}

fn spanning_forest(g: &SummandGraph, order: &[usize]) -> Forest {
    let n = g.vertices.len();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let next = uf[y];
            uf[y] = r;
            y = next;
        }
        r
    }
    let mut tree = BTreeSet::new();
    for &ei in order {
        let (u, v, _) = &g.edges[ei];
        let (ru, rv) = (find(&mut uf, *u), find(&mut uf, *v));
        if ru != rv {
            uf[ru] = rv;
            tree.insert(ei);
        }
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &ei in &tree {
        let (u, v, _) = &g.edges[ei];
        adj[*u].push((*v, ei));
        adj[*v].push((*u, ei));
    }
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, ei) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, ei));
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    Forest { parent, depth, tree }
}

/// Step crossing graph edge `ei` starting at vertex `from`.
fn step_from(g: &SummandGraph, ei: usize, from: usize) -> Step {
    let (u, _, a) = &g.edges[ei];
    let dir = if *u == from { Direction::Forward } else { Direction::Backward };
    Step { arrow: a.clone(), dir }
}

/// Tree path `a -> b` inside the forest (same component assumed).
fn tree_path(g: &SummandGraph, f: &Forest, a: usize, b: usize) -> Vec<Step> {
    let (mut x, mut y) = (a, b);
    let mut up = Vec::new();
    let mut down = Vec::new();
    while f.depth[x] > f.depth[y] {
        let (p, ei) = f.parent[x].expect("non-root");
        up.push(step_from(g, ei, x));
        x = p;
    }
    while f.depth[y] > f.depth[x] {
        let (p, ei) = f.parent[y].expect("non-root");
        down.push(step_from(g, ei, p));
        y = p;
    }
    while x != y {
        let (px, ex) = f.parent[x].expect("non-root");
        let (py, ey) = f.parent[y].expect("non-root");
        up.push(step_from(g, ex, x));
        down.push(step_from(g, ey, py));
        x = px;
        y = py;
    }
    up.extend(down.into_iter().rev());
    up
}

/// Fundamental cycle basis for the spanning forest grown by scanning blocks
/// in `order` (a permutation of block indices).
pub fn cycle_basis_with(d: &Diagram, order: &[usize]) -> Vec<ConnectingPath> {
    let g = d.graph();
    let f = spanning_forest(&g, order);
    let mut loops = Vec::new();
    for ei in 0..g.edges.len() {
        if f.tree.contains(&ei) {
            continue;
        }
        let (u, v, _) = &g.edges[ei];
        let mut steps = vec![step_from(&g, ei, *u)];
        steps.extend(tree_path(&g, &f, *v, *u));
        loops.push(ConnectingPath { steps });
    }
    loops
}

pub fn cycle_basis(d: &Diagram) -> Vec<ConnectingPath> {
    let n = d.graph().edges.len();
    cycle_basis_with(d, &(0..n).collect::<Vec<_>>())
}

pub fn is_liftable_with(
    d: &Diagram,
    c: &CategoryPresentation,
    q: &BTreeMap<String, Q>,
    order: &[usize],
) -> Result<LiftReport, CatError> {
    for l in cycle_basis_with(d, order) {
        let deg = path_degree_by(c, &l, q)?;
        if !deg.is_zero() {
            return Ok(LiftReport { liftable: false, witness: Some((l, deg)) });
        }
    }
    Ok(LiftReport { liftable: true, witness: None })
}

/// True iff every fundamental loop has degree zero under `q`.
pub fn is_liftable(d: &Diagram, c: &CategoryPresentation, q: &BTreeMap<String, Q>) -> Result<LiftReport, CatError> {
    let n = d.graph().edges.len();
    is_liftable_with(d, c, q, &(0..n).collect::<Vec<_>>())
}

/// Potential `pi(v)` with `q(arrow) = pi(dst) - pi(src)` on every block,
/// normalized to 0 at the first vertex of each component. Requires liftability.
pub fn potentials(
    d: &Diagram,
    c: &CategoryPresentation,
    q: &BTreeMap<String, Q>,
) -> Result<BTreeMap<Vertex, (usize, Q)>, CatError> {
    let report = is_liftable(d, c, q)?;
    if !report.liftable {
        return Err(CatError::NotLiftable(report.witness.map(|w| w.1).unwrap_or_default()));
    }
    let g = d.graph();
    let mut adj: Vec<Vec<(usize, Q)>> = vec![Vec::new(); g.vertices.len()];
    for (u, v, a) in &g.edges {
        let deg = q.get(a).ok_or_else(|| CatError::UnknownArrow(a.clone()))?;
        adj[*u].push((*v, deg.clone()));
        adj[*v].push((*u, -deg));
    }
    let mut pot: Vec<Option<(usize, Q)>> = vec![None; g.vertices.len()];
    let mut comp = 0;
    for root in 0..g.vertices.len() {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some((comp, Q::zero()));
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let px = pot[x].clone().expect("visited").1;
            for (y, dq) in &adj[x] {
                if pot[*y].is_none() {
                    pot[*y] = Some((comp, &px + dq));
                    queue.push_back(*y);
                }
            }
        }
        comp += 1;
    }
    Ok(g.vertices.iter().zip(pot).map(|(v, p)| (*v, p.expect("all visited"))).collect())
}

/// Entry `(j, i)`: degree of a connecting path from summand `i` of the
/// edge's source to summand `j` of its target, absent across components.
pub fn degree_matrix(
    edge_id: &str,
    d: &Diagram,
    c: &CategoryPresentation,
    q: &BTreeMap<String, Q>,
) -> Result<Vec<Vec<Option<Q>>>, CatError> {
    let e = d.edge(edge_id).ok_or_else(|| CatError::UnknownArrow(edge_id.to_string()))?;
    let s = d.node_index(&e.src).ok_or_else(|| CatError::UnknownObject(e.src.clone()))?;
    let t = d.node_index(&e.dst).ok_or_else(|| CatError::UnknownObject(e.dst.clone()))?;
    let pot = potentials(d, c, q)?;
    Ok((0..d.nodes[t].summands.len())
        .map(|j| {
            (0..d.nodes[s].summands.len())
                .map(|i| {
                    let (ca, pa) = &pot[&(s, i)];
                    let (cb, pb) = &pot[&(t, j)];
                    (ca == cb).then(|| pb - pa)
                })
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    /// `exp(2 pi i q)` as `(re, im)` pairs.
    pub entries: Vec<Vec<(f64, f64)>>,
    pub rank_one: bool,
}

/// Entrywise `exp(2 pi i q)` of the degree matrix. Rank one is decided
/// exactly: `q[j][k] - q[j'][k]` must not depend on `k` modulo 1.
pub fn r_matrix(edge_id: &str, d: &Diagram, c: &CategoryPresentation, q: &BTreeMap<String, Q>) -> Result<RMatrix, CatError> {
    let m = degree_matrix(edge_id, d, c, q)?;
    let full: Vec<Vec<Q>> = m
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or(CatError::NotConnective)?;
    let one = Q::one();
    let mut rank_one = true;
    for j in 1..full.len() {
        for k in 1..full[j].len() {
            let lhs = &full[j][k] - &full[0][k];
            let rhs = &full[j][0] - &full[0][0];
            if !lhs.congruent(&rhs, &one) {
                rank_one = false;
            }
        }
    }
    let tau = 2.0 * std::f64::consts::PI;
    let entries = full
        .iter()
        .map(|row| row.iter().map(|x| ((tau * x.to_f64()).cos(), (tau * x.to_f64()).sin())).collect())
        .collect();
    Ok(RMatrix { entries, rank_one })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Vertex,
    Edge,
}

/// All simple connecting paths between two summand vertices.
pub fn simple_paths(d: &Diagram, from: Vertex, to: Vertex, mode: Simplicity) -> Vec<ConnectingPath> {
    let g = d.graph();
    let Some(start) = g.vertices.iter().position(|v| *v == from) else { return vec![] };
    let Some(goal) = g.vertices.iter().position(|v| *v == to) else { return vec![] };
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertices.len()];
    for (ei, (u, v, _)) in g.edges.iter().enumerate() {
        adj[*u].push((*v, ei));
        if u != v {
            adj[*v].push((*u, ei));
        }
    }
    let mut out = Vec::new();
    let mut used_v = vec![false; g.vertices.len()];
    let mut used_e = vec![false; g.edges.len()];
    let mut stack = Vec::new();
    struct Search<'a> {
        g: &'a SummandGraph,
        adj: Vec<Vec<(usize, usize)>>,
        goal: usize,
        mode: Simplicity,
    }
    fn dfs(
        s: &Search<'_>,
        x: usize,
        used_v: &mut Vec<bool>,
        used_e: &mut Vec<bool>,
        stack: &mut Vec<Step>,
        out: &mut Vec<ConnectingPath>,
    ) {
        if x == s.goal && !stack.is_empty() {
            out.push(ConnectingPath { steps: stack.clone() });
            return;
        }
        for &(y, ei) in &s.adj[x] {
            if used_e[ei] || (s.mode == Simplicity::Vertex && used_v[y]) {
                continue;
            }
            used_e[ei] = true;
            let fresh = !used_v[y];
            used_v[y] = true;
            stack.push(step_from(s.g, ei, x));
            dfs(s, y, used_v, used_e, stack, out);
            stack.pop();
            if fresh {
                used_v[y] = false;
            }
            used_e[ei] = false;
        }
    }
    used_v[start] = true;
    let search = Search { g: &g, adj, goal, mode };
    dfs(&search, start, &mut used_v, &mut used_e, &mut stack, &mut out);
    out.sort();
    out.dedup();
    out
}

/// True iff the summand graph is connected.
pub fn diagram_connective(d: &Diagram) -> bool {
    let g = d.graph();
    if g.vertices.is_empty() {
        return true;
    }
    let f = spanning_forest(&g, &(0..g.edges.len()).collect::<Vec<_>>());
    f.tree.len() + 1 == g.vertices.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    /// Conclusion of the gluing lemma: both sides liftable, overlap connective.
    pub predicted: bool,
    pub verified: LiftReport,
}

/// Union of two diagrams sharing `common`.
pub fn glue(
    d1: &Diagram,
    d2: &Diagram,
    common: &Diagram,
    c: &CategoryPresentation,
    q: &BTreeMap<String, Q>,
) -> Result<(Diagram, GlueReport), CatError> {
    for side in [d1, d2] {
        let sub = common.nodes.iter().all(|n| side.nodes.contains(n))
            && common.edges.iter().all(|e| side.edges.contains(e));
        if !sub {
            return Err(CatError::NotSubdiagram);
        }
    }
    let mut out = d1.clone();
    for n in &d2.nodes {
        match out.nodes.iter().find(|m| m.id == n.id) {
            Some(m) if m != n => return Err(CatError::NotSubdiagram),
            Some(_) => {}
            None => out.nodes.push(n.clone()),
        }
    }
    for e in &d2.edges {
        match out.edges.iter().find(|m| m.id == e.id) {
            Some(m) if m != e => return Err(CatError::NotSubdiagram),
            Some(_) => {}
            None => out.edges.push(e.clone()),
        }
    }
    out.validate(c)?;
    let predicted = is_liftable(d1, c, q)?.liftable && is_liftable(d2, c, q)?.liftable && diagram_connective(common);
    let verified = is_liftable(&out, c, q)?;
    Ok((out, GlueReport { predicted, verified }))
}

/// Adds, for every pair of composable edges, the composite edge computed
/// blockwise from the composition table.
pub fn augment_with_composites(d: &Diagram, c: &CategoryPresentation) -> Result<Diagram, CatError> {
    let mut out = d.clone();
    for e1 in &d.edges {
        for e2 in d.edges.iter().filter(|e| e.src == e1.dst) {
            let mut acc: BTreeMap<(usize, usize, String), Q> = BTreeMap::new();
            for b1 in &e1.blocks {
                for b2 in e2.blocks.iter().filter(|b| b.from == b1.to) {
                    let terms = c
                        .compose(&b1.arrow, &b2.arrow)
                        .ok_or_else(|| CatError::MissingComposite(b1.arrow.clone(), b2.arrow.clone()))?;
                    for t in terms {
                        *acc.entry((b1.from, b2.to, t.arrow.clone())).or_insert_with(Q::zero) +=
                            &(&b1.coeff * &b2.coeff * &t.coeff);
                    }
                }
            }
            let blocks: Vec<Block> = acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((from, to, arrow), coeff)| Block { from, to, arrow, coeff })
                .collect();
            if !blocks.is_empty() {
                out.edges.push(Edge {
                    id: format!("{}*{}", e2.id, e1.id),
                    src: e1.src.clone(),
                    dst: e2.dst.clone(),
                    blocks,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catgraph::Arrow;

    fn pres(objects: &[&str], arrows: &[(&str, &str, &str, Q)]) -> CategoryPresentation {
        CategoryPresentation {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            shift: objects.iter().map(|s| (s.to_string(), s.to_string())).collect(),
            arrows: arrows
                .iter()
                .map(|(id, s, t, d)| Arrow { id: id.to_string(), src: s.to_string(), dst: t.to_string(), degree: d.clone(), label: String::new() })
                .collect(),
            ..Default::default()
        }
    }

    fn all(c: &CategoryPresentation) -> Diagram {
        Diagram::full(c).unwrap()
    }

    #[test]
    fn cycle_basis_sizes() {
        let tree = pres(&["A", "B", "C"], &[("f", "A", "B", Q::one()), ("g", "B", "C", Q::one())]);
        assert!(cycle_basis(&all(&tree)).is_empty());
        let par = pres(&["E", "F"], &[("f", "E", "F", Q::one()), ("g", "E", "F", Q::one())]);
        assert_eq!(cycle_basis(&all(&par)).len(), 1);
        let chord = pres(
            &["A", "B", "C"],
            &[("f", "A", "B", Q::one()), ("g", "B", "C", Q::one()), ("h", "A", "C", Q::one()), ("k", "C", "A", Q::one())],
        );
        assert_eq!(cycle_basis(&all(&chord)).len(), 2);
    }

    #[test]
    fn liftability_examples() {
        let eq = pres(&["E", "F"], &[("f", "E", "F", Q::new(1, 2)), ("g", "E", "F", Q::new(1, 2))]);
        assert!(is_liftable(&all(&eq), &eq, &eq.degrees()).unwrap().liftable);
        let ne = pres(&["E", "F"], &[("f", "E", "F", Q::new(1, 2)), ("g", "E", "F", Q::new(7, 10))]);
        let r = is_liftable(&all(&ne), &ne, &ne.degrees()).unwrap();
        assert!(!r.liftable);
        assert_eq!(r.witness.unwrap().1.abs(), Q::new(1, 5));
    }

    #[test]
    fn degree_and_r_matrices() {
        let c = pres(&["E", "F"], &[("f", "E", "F", Q::new(1, 3))]);
        let d = all(&c);
        assert_eq!(degree_matrix("f", &d, &c, &c.degrees()).unwrap(), vec![vec![Some(Q::new(1, 3))]]);
        assert!(r_matrix("f", &d, &c, &c.degrees()).unwrap().rank_one);
        let c2 = pres(&["A", "B", "C"], &[("f", "A", "B", Q::one())]);
        let d2 = Diagram {
            nodes: vec![
                Node { id: "X".into(), summands: vec!["A".into(), "C".into()] },
                Node { id: "Y".into(), summands: vec!["B".into()] },
            ],
            edges: vec![Edge { id: "e".into(), src: "X".into(), dst: "Y".into(), blocks: vec![Block { from: 0, to: 0, arrow: "f".into(), coeff: Q::one() }] }],
        };
        let m = degree_matrix("e", &d2, &c2, &c2.degrees()).unwrap();
        assert_eq!(m, vec![vec![Some(Q::one()), None]]);
        assert_eq!(r_matrix("e", &d2, &c2, &c2.degrees()), Err(CatError::NotConnective));
    }

    #[test]
    fn simple_path_readings() {
        let c = pres(
            &["A", "B", "C"],
            &[("f", "A", "B", Q::one()), ("g", "B", "C", Q::one()), ("h", "A", "C", Q::one())],
        );
        let d = all(&c);
        assert_eq!(simple_paths(&d, (0, 0), (2, 0), Simplicity::Vertex).len(), 2);
        assert_eq!(simple_paths(&d, (0, 0), (2, 0), Simplicity::Edge).len(), 2);
    }
}
