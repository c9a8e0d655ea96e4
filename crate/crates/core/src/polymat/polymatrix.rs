use serde::{Deserialize, Serialize};

use super::{PolyError, RingContext, TermDoc, TruncPoly, Q};

/// Matrix with [`TruncPoly`] entries over a shared context, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    ctx: RingContext,
    rows: usize,
    cols: usize,
    entries: Vec<TruncPoly>,
}

impl PolyMatrix {
    pub fn zeros(ctx: &RingContext, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { ctx: ctx.clone(), rows, cols, entries: vec![TruncPoly::zero(ctx); rows * cols] }
    }

    /// `p` times the identity.
    pub fn scalar(ctx: &RingContext, n: usize, p: &TruncPoly) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn identity(ctx: &RingContext, n: usize) -> PolyMatrix {
        PolyMatrix::scalar(ctx, n, &TruncPoly::one(ctx))
    }

    pub fn from_rows(ctx: &RingContext, rows: Vec<Vec<TruncPoly>>) -> Result<PolyMatrix, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::Ragged);
        }
        if rows.iter().flatten().any(|p| p.ctx() != ctx) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(PolyMatrix { ctx: ctx.clone(), rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: TruncPoly) {
        debug_assert_eq!(p.ctx(), &self.ctx);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &TruncPoly)> {
        self.entries.iter().enumerate().map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncPoly::is_zero)
    }

    /// Largest total degree among nonzero entries, if any.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(TruncPoly::degree).max()
    }

    fn same_shape(&self, other: &PolyMatrix) -> Result<(), PolyError> {
        if self.ctx != other.ctx {
            return Err(PolyError::ContextMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PolyError::ShapeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(PolyMatrix { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        self.scale(&Q::int(-1))
    }

    pub fn scale(&self, c: &Q) -> PolyMatrix {
        PolyMatrix { entries: self.entries.iter().map(|p| p.scale(c)).collect(), ..self.clone() }
    }

    pub fn scale_poly(&self, p: &TruncPoly) -> Result<PolyMatrix, PolyError> {
        let entries = self.entries.iter().map(|e| e.mul(p)).collect::<Result<_, _>>()?;
        Ok(PolyMatrix { entries, ..self.clone() })
    }

    /// Truncated product `self * other`.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.ctx != other.ctx {
            return Err(PolyError::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(PolyError::ShapeMismatch);
        }
        let mut out = PolyMatrix::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<TruncPoly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::ShapeMismatch);
        }
        (0..self.rows).try_fold(TruncPoly::zero(&self.ctx), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn derivative(&self, var: usize) -> PolyMatrix {
        PolyMatrix { entries: self.entries.iter().map(|p| p.derivative(var)).collect(), ..self.clone() }
    }

    /// Block matrix `[[a, b], [c, d]]`; block shapes must agree.
    pub fn block2(
        a: &PolyMatrix,
        b: &PolyMatrix,
        c: &PolyMatrix,
        d: &PolyMatrix,
    ) -> Result<PolyMatrix, PolyError> {
        let ctx = a.ctx.clone();
        if [b, c, d].iter().any(|m| m.ctx != ctx) {
            return Err(PolyError::ContextMismatch);
        }
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(PolyError::ShapeMismatch);
        }
        let (r0, c0) = (a.rows, a.cols);
        let mut out = PolyMatrix::zeros(&ctx, a.rows + c.rows, a.cols + b.cols);
        for (blk, ro, co) in [(a, 0, 0), (b, 0, c0), (c, r0, 0), (d, r0, c0)] {
            for (i, j, p) in blk.entries() {
                out.set(i + ro, j + co, p.clone());
            }
        }
        Ok(out)
    }

    /// Sub-block with rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ctx, nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn to_doc(&self) -> Vec<Vec<Vec<TermDoc>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_doc()).collect())
            .collect()
    }

    pub fn from_doc(
        ctx: &RingContext,
        rows: usize,
        cols: usize,
        doc: &[Vec<Vec<TermDoc>>],
    ) -> Result<PolyMatrix, PolyError> {
        if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
            return Err(PolyError::ShapeMismatch);
        }
        let rows = doc
            .iter()
            .map(|r| r.iter().map(|t| TruncPoly::from_doc(ctx, t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut m = PolyMatrix::from_rows(ctx, rows)?;
        m.cols = cols;
        Ok(m)
    }
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<&TruncPoly>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect();
        write!(f, "{:?}", rows)
    }
}

/// JSON shape for a polynomial matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<TermDoc>>>,
}

impl PolyMatrixDoc {
    pub fn from_matrix(m: &PolyMatrix) -> PolyMatrixDoc {
        PolyMatrixDoc { rows: m.rows, cols: m.cols, entries: m.to_doc() }
    }

    pub fn to_matrix(&self, ctx: &RingContext) -> Result<PolyMatrix, PolyError> {
        PolyMatrix::from_doc(ctx, self.rows, self.cols, &self.entries)
    }
}
