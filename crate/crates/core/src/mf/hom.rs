use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use super::factorization::{entry_allowed, entry_rcharge, MatrixFactorization, Side};
use super::MfError;
use crate::polymat::{total_degree, PolyMatrix, RationalMatrix, Subspace, TruncPoly, Q};

/// Morphism of the hom complex. `blocks[0]` leaves the even side of the
/// source, `blocks[1]` the odd side; a block leaving side `s` lands on side
/// `s + parity` of the target.
#[derive(Clone, PartialEq, Eq)]
pub struct HomElement {
    pub source: MatrixFactorization,
    pub target: MatrixFactorization,
    pub parity: u8,
    pub blocks: [PolyMatrix; 2],
    pub rcharge: Option<Q>,
}

/// One monomial coefficient of one block entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub from: Side,
    pub row: usize,
    pub col: usize,
    pub exps: Vec<u32>,
}

pub type Sparse = BTreeMap<Coord, Q>;

fn side_index(s: Side) -> usize {
    match s {
        Side::Even => 0,
        Side::Odd => 1,
    }
}

impl HomElement {
    pub fn zero(source: &MatrixFactorization, target: &MatrixFactorization, parity: u8) -> HomElement {
        let ctx = source.ctx();
        let (rs, rt) = (source.rank(), target.rank());
        HomElement {
            source: source.clone(),
            target: target.clone(),
            parity: parity % 2,
            blocks: [PolyMatrix::zeros(ctx, rt, rs), PolyMatrix::zeros(ctx, rt, rs)],
            rcharge: None,
        }
    }

    pub fn identity(x: &MatrixFactorization) -> HomElement {
        let id = PolyMatrix::identity(x.ctx(), x.rank());
        let rcharge = x.grading().and_then(|g| g.rcharges.as_ref()).map(|_| Q::zero());
        HomElement { source: x.clone(), target: x.clone(), parity: 0, blocks: [id.clone(), id], rcharge }
    }

    pub fn from_blocks(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        parity: u8,
        blocks: [PolyMatrix; 2],
    ) -> Result<HomElement, MfError> {
        for b in &blocks {
            if b.rows() != target.rank() || b.cols() != source.rank() {
                return Err(MfError::ShapeMismatch);
            }
            if b.ctx() != source.ctx() {
                return Err(MfError::ContextMismatch);
            }
        }
        let mut h = HomElement { source: source.clone(), target: target.clone(), parity: parity % 2, blocks, rcharge: None };
        h.rcharge = h.homogeneous_rcharge();
        Ok(h)
    }

    /// Block leaving side `s` of the source.
    pub fn component_from(&self, s: Side) -> &PolyMatrix {
        &self.blocks[side_index(s)]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(PolyMatrix::is_zero)
    }

    fn check_parallel(&self, other: &HomElement) -> Result<(), MfError> {
        if self.source != other.source || self.target != other.target || self.parity != other.parity {
            return Err(MfError::ShapeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &HomElement) -> Result<HomElement, MfError> {
        self.check_parallel(other)?;
        let blocks = [self.blocks[0].add(&other.blocks[0])?, self.blocks[1].add(&other.blocks[1])?];
        HomElement::from_blocks(&self.source, &self.target, self.parity, blocks)
    }

    pub fn scale(&self, c: &Q) -> HomElement {
        let blocks = [self.blocks[0].scale(c), self.blocks[1].scale(c)];
        let rcharge = if c.is_zero() { None } else { self.rcharge.clone() };
        HomElement { blocks, rcharge, ..self.clone() }
    }

    pub fn neg(&self) -> HomElement {
        self.scale(&Q::int(-1))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &HomElement) -> Result<HomElement, MfError> {
        if first.target != self.source {
            return Err(MfError::NotComposable);
        }
        let b0 = self.component_from(Side::Even.after_parity(first.parity)).mul(&first.blocks[0])?;
        let b1 = self.component_from(Side::Odd.after_parity(first.parity)).mul(&first.blocks[1])?;
        HomElement::from_blocks(&first.source, &self.target, self.parity + first.parity, [b0, b1])
    }

    /// `d f = delta_Y f - (-1)^|f| f delta_X`.
    pub fn differential(&self) -> Result<HomElement, MfError> {
        let sign = if self.parity == 0 { Q::int(-1) } else { Q::one() };
        let mut blocks = Vec::with_capacity(2);
        for s in [Side::Even, Side::Odd] {
            let left = self.target.delta_from(s.after_parity(self.parity)).mul(self.component_from(s))?;
            let right = self.component_from(s.flip()).mul(self.source.delta_from(s))?;
            blocks.push(left.add(&right.scale(&sign))?);
        }
        let b1 = blocks.pop().expect("two blocks");
        let b0 = blocks.pop().expect("two blocks");
        HomElement::from_blocks(&self.source, &self.target, self.parity + 1, [b0, b1])
    }

    pub fn is_closed(&self) -> Result<bool, MfError> {
        Ok(self.differential()?.is_zero())
    }

    /// `f[1] : T(X) -> T(Y)`, equal to `(-1)^|f| f` with the blocks swapped.
    pub fn shift(&self) -> HomElement {
        let sign = if self.parity == 0 { Q::one() } else { Q::int(-1) };
        HomElement {
            source: self.source.shift(),
            target: self.target.shift(),
            parity: self.parity,
            blocks: [self.blocks[1].scale(&sign), self.blocks[0].scale(&sign)],
            rcharge: self.rcharge.clone(),
        }
    }

    pub fn to_sparse(&self) -> Sparse {
        let mut out = Sparse::new();
        for s in [Side::Even, Side::Odd] {
            for (row, col, p) in self.component_from(s).entries() {
                for (e, c) in p.terms() {
                    out.insert(Coord { from: s, row, col, exps: e.clone() }, c.clone());
                }
            }
        }
        out
    }

    pub fn from_sparse(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        parity: u8,
        v: &Sparse,
    ) -> HomElement {
        let ctx = source.ctx();
        let mut h = HomElement::zero(source, target, parity);
        for (k, c) in v {
            let b = &mut h.blocks[side_index(k.from)];
            let cur = b.get(k.row, k.col).clone();
            let add = TruncPoly::monomial(ctx, k.exps.clone(), c.clone());
            b.set(k.row, k.col, cur.add(&add).expect("shared context"));
        }
        h.rcharge = h.homogeneous_rcharge();
        h
    }

    fn coord_rcharge(&self, k: &Coord) -> Option<Q> {
        coord_rcharge(&self.source, &self.target, self.parity, k)
    }

    /// Common R-charge of all terms, if the element is nonzero and homogeneous.
    pub fn homogeneous_rcharge(&self) -> Option<Q> {
        let set: BTreeSet<Option<Q>> = self.to_sparse().keys().map(|k| self.coord_rcharge(k)).collect();
        match set.into_iter().collect::<Vec<_>>().as_slice() {
            [Some(r)] => Some(r.clone()),
            _ => None,
        }
    }
}

impl std::fmt::Debug for HomElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hom[p={}, r={:?}]({:?}, {:?})", self.parity, self.rcharge, self.blocks[0], self.blocks[1])
    }
}

fn coord_rcharge(src: &MatrixFactorization, dst: &MatrixFactorization, parity: u8, k: &Coord) -> Option<Q> {
    let (gs, gd) = (src.grading()?, dst.grading()?);
    entry_rcharge(gs, k.from, k.col, gd, k.from.after_parity(parity), k.row, &k.exps)
}

fn coord_allowed(src: &MatrixFactorization, dst: &MatrixFactorization, parity: u8, k: &Coord) -> bool {
    match (src.grading(), dst.grading()) {
        (Some(gs), Some(gd)) => entry_allowed(gs, k.from, k.col, gd, k.from.after_parity(parity), k.row, &k.exps),
        _ => true,
    }
}

/// Coordinates of parity-`parity` maps with entries of total degree `< limit`,
/// invariant under the group when both ends are graded, ordered with high
/// degrees first.
fn coords(src: &MatrixFactorization, dst: &MatrixFactorization, parity: u8, limit: u32) -> Vec<Coord> {
    let monos = src.ctx().monomials_below(limit);
    let mut out = Vec::new();
    for from in [Side::Even, Side::Odd] {
        for row in 0..dst.rank() {
            for col in 0..src.rank() {
                for e in &monos {
                    let k = Coord { from, row, col, exps: e.clone() };
                    if coord_allowed(src, dst, parity, &k) {
                        out.push(k);
                    }
                }
            }
        }
    }
    out.sort_by_key(|k| (Reverse(total_degree(&k.exps)), k.clone()));
    out
}

/// Row index over the union of supports of a family of sparse vectors.
struct Rows {
    index: BTreeMap<Coord, usize>,
}

impl Rows {
    fn over<'a>(vs: impl IntoIterator<Item = &'a Sparse>) -> Rows {
        let mut keys = BTreeSet::new();
        for v in vs {
            keys.extend(v.keys().cloned());
        }
        Rows { index: keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect() }
    }

    fn dense(&self, v: &Sparse) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.index.len()];
        for (k, c) in v {
            out[self.index[k]] = c.clone();
        }
        out
    }

    fn matrix(&self, cols: &[&Sparse]) -> RationalMatrix {
        let dense: Vec<Vec<Q>> = cols.iter().map(|v| self.dense(v)).collect();
        RationalMatrix::from_columns(self.index.len(), &dense)
    }
}

/// Cohomology of the hom complex in one parity, with the data needed to
/// express closed maps in the chosen basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: MatrixFactorization,
    pub target: MatrixFactorization,
    pub parity: u8,
    basis: Vec<HomElement>,
    exact: Vec<Sparse>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[HomElement] {
        &self.basis
    }

    pub fn combination(&self, coeffs: &[Q]) -> HomElement {
        let mut acc = HomElement::zero(&self.source, &self.target, self.parity);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c)).expect("parallel basis elements");
            }
        }
        acc
    }

    /// Coefficients `c` with `f = sum c_i basis_i + d(h)`. `None` when `f`
    /// is not reachable inside the truncation (for instance not invariant).
    pub fn coordinates(&self, f: &HomElement) -> Result<Option<Vec<Q>>, MfError> {
        if f.source != self.source || f.target != self.target || f.parity != self.parity {
            return Err(MfError::ShapeMismatch);
        }
        if !f.is_closed()? {
            return Err(MfError::NotClosed);
        }
        let target = f.to_sparse();
        let basis: Vec<Sparse> = self.basis.iter().map(HomElement::to_sparse).collect();
        let cols: Vec<&Sparse> = basis.iter().chain(&self.exact).collect();
        let rows = Rows::over(cols.iter().copied().chain([&target]));
        let sol = rows.matrix(&cols).solve(&rows.dense(&target))?;
        Ok(sol.map(|v| v[..self.basis.len()].to_vec()))
    }

    pub fn is_exact(&self, f: &HomElement) -> Result<bool, MfError> {
        Ok(self.coordinates(f)?.is_some_and(|c| c.iter().all(Q::is_zero)))
    }

    /// Replaces one basis element by `f` (closed, not exact) keeping a basis;
    /// the element with the first nonzero coordinate is the one dropped.
    pub fn promote(&mut self, f: &HomElement) -> Result<bool, MfError> {
        let Some(c) = self.coordinates(f)? else { return Ok(false) };
        let Some(i) = c.iter().position(|x| !x.is_zero()) else { return Ok(false) };
        self.basis.remove(i);
        self.basis.insert(0, f.clone());
        Ok(true)
    }
}

/// Basis of `H^parity Hom(X, Y)`.
///
/// Unknowns are the monomial coefficients of entries of degree `< B - s`,
/// `s` the largest differential entry degree, so every product is exact.
/// Closed maps are the kernel of `d`; a class is the normal form of a kernel
/// vector modulo (closed ∩ exact). Graded inputs give homogeneous classes with
/// their R-charge; sectors are computed independently since `d` raises the
/// R-charge by exactly 1.
pub fn hom_space(x: &MatrixFactorization, y: &MatrixFactorization, parity: u8) -> Result<HomSpace, MfError> {
    if x.w() != y.w() {
        return Err(MfError::MismatchedPotential);
    }
    if x.grading().map(|g| g.group_order) != y.grading().map(|g| g.group_order) {
        return Err(MfError::MismatchedGrading);
    }
    let p = parity % 2;
    let s = x.max_degree().max(y.max_degree()).max(1);
    let bound = x.ctx().bound;
    if bound <= s {
        return Err(MfError::BoundTooSmall { bound, needed: s + 1 });
    }
    let limit = bound - s;
    let unit = |k: &Coord, par: u8| {
        let mut v = Sparse::new();
        v.insert(k.clone(), Q::one());
        HomElement::from_sparse(x, y, par, &v)
    };
    let vp = coords(x, y, p, limit);
    let vq = coords(x, y, 1 - p, limit);
    let exact: Vec<Sparse> = vq
        .iter()
        .map(|k| unit(k, 1 - p).differential().map(|e| e.to_sparse()))
        .collect::<Result<_, _>>()?;
    let d_vp: Vec<Sparse> = vp
        .iter()
        .map(|k| unit(k, p).differential().map(|e| e.to_sparse()))
        .collect::<Result<_, _>>()?;

    let mut sectors: BTreeMap<Option<Q>, Vec<usize>> = BTreeMap::new();
    for (i, k) in vp.iter().enumerate() {
        sectors.entry(coord_rcharge(x, y, p, k)).or_default().push(i);
    }
    let mut basis = Vec::new();
    for (sector, idx) in &sectors {
        let below = sector.as_ref().map(|r| r - &Q::one());
        let homotopies: Vec<&Sparse> = vq
            .iter()
            .zip(&exact)
            .filter(|(k, _)| sector.is_none() || coord_rcharge(x, y, 1 - p, k) == below)
            .map(|(_, e)| e)
            .collect();
        let dcols: Vec<&Sparse> = idx.iter().map(|&i| &d_vp[i]).collect();
        let z = Rows::over(dcols.iter().copied()).matrix(&dcols).kernel_basis();
        if z.is_empty() {
            continue;
        }
        let zs: Vec<Sparse> = z
            .iter()
            .map(|v| {
                idx.iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&i, c)| (vp[i].clone(), c.clone()))
                    .collect()
            })
            .collect();
        let neg: Vec<Sparse> = homotopies
            .iter()
            .map(|e| e.iter().map(|(k, c)| (k.clone(), -c)).collect())
            .collect();
        let cols: Vec<&Sparse> = zs.iter().chain(&neg).collect();
        let rows = Rows::over(cols.iter().copied());
        let meet = rows.matrix(&cols).kernel_basis();
        let meet_vecs = meet.iter().map(|m| {
            let mut acc = vec![Q::zero(); z[0].len()];
            for (a, zv) in m.iter().zip(&z) {
                if !a.is_zero() {
                    for (t, zc) in acc.iter_mut().zip(zv) {
                        *t += &(a * zc);
                    }
                }
            }
            acc
        });
        let exact_part = Subspace::spanned_by(idx.len(), meet_vecs);
        let mut span = exact_part.clone();
        for v in &z {
            if span.insert(v.clone()) {
                let nf = exact_part.reduce(v);
                let sp: Sparse = idx
                    .iter()
                    .zip(&nf)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&i, c)| (vp[i].clone(), c.clone()))
                    .collect();
                let mut h = HomElement::from_sparse(x, y, p, &sp);
                h.rcharge = sector.clone();
                basis.push(h);
            }
        }
    }
    Ok(HomSpace { source: x.clone(), target: y.clone(), parity: p, basis, exact })
}
