use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PolyError, Q};

/// Variables and total-degree truncation bound shared by every polynomial
/// in one computation. Arithmetic happens in `k[x_1..x_N] / (deg >= bound)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingContext {
    pub variables: Vec<String>,
    pub bound: u32,
}

impl RingContext {
    pub fn new(variables: &[&str], bound: u32) -> Result<RingContext, PolyError> {
        if bound == 0 {
            return Err(PolyError::InvalidBound);
        }
        if variables.is_empty() {
            return Err(PolyError::NoVariables);
        }
        Ok(RingContext {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            bound,
        })
    }

    pub fn univariate(bound: u32) -> RingContext {
        RingContext::new(&["x"], bound).expect("bound is checked by caller")
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// All exponent vectors of total degree `< limit`, ordered by (degree, lex).
    pub fn monomials_below(&self, limit: u32) -> Vec<Vec<u32>> {
        let n = self.nvars();
        let mut out = Vec::new();
        for deg in 0..limit {
            let mut cur = vec![0u32; n];
            compositions(deg, 0, &mut cur, &mut out);
        }
        out
    }
}

fn compositions(remaining: u32, idx: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if idx + 1 == cur.len() {
        cur[idx] = remaining;
        out.push(cur.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        cur[idx] = e;
        compositions(remaining - e, idx + 1, cur, out);
    }
    cur[idx] = 0;
}

pub fn total_degree(exps: &[u32]) -> u32 {
    exps.iter().sum()
}

/// Truncated multivariate polynomial with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero and every stored exponent vector
/// has total degree below the context bound.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    ctx: RingContext,
    terms: BTreeMap<Vec<u32>, Q>,
}

/// Serialized term: `{exponents: [..], coeff: "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponents: Vec<u32>,
    pub coeff: Q,
}

impl TruncPoly {
    pub fn zero(ctx: &RingContext) -> TruncPoly {
        TruncPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &RingContext, c: Q) -> TruncPoly {
        TruncPoly::monomial(ctx, vec![0; ctx.nvars()], c)
    }

    pub fn one(ctx: &RingContext) -> TruncPoly {
        TruncPoly::constant(ctx, Q::one())
    }

    /// `c * x^exps`, or zero when the monomial is truncated away.
    pub fn monomial(ctx: &RingContext, exps: Vec<u32>, c: Q) -> TruncPoly {
        assert_eq!(exps.len(), ctx.nvars(), "exponent arity");
        let mut p = TruncPoly::zero(ctx);
        if !c.is_zero() && total_degree(&exps) < ctx.bound {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Univariate convenience: `c * x^k` in the first variable.
    pub fn x_pow(ctx: &RingContext, k: u32, c: Q) -> TruncPoly {
        let mut e = vec![0; ctx.nvars()];
        e[0] = k;
        TruncPoly::monomial(ctx, e, c)
    }

    pub fn from_terms(
        ctx: &RingContext,
        terms: impl IntoIterator<Item = (Vec<u32>, Q)>,
    ) -> Result<TruncPoly, PolyError> {
        let mut p = TruncPoly::zero(ctx);
        for (e, c) in terms {
            if e.len() != ctx.nvars() {
                return Err(PolyError::ArityMismatch { expected: ctx.nvars(), found: e.len() });
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: &Q) {
        if c.is_zero() || total_degree(&e) >= self.ctx.bound {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    fn check(&self, other: &TruncPoly) -> Result<(), PolyError> {
        if self.ctx != other.ctx {
            return Err(PolyError::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncPoly) -> Result<TruncPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncPoly) -> Result<TruncPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncPoly {
        self.scale(&Q::int(-1))
    }

    pub fn scale(&self, c: &Q) -> TruncPoly {
        if c.is_zero() {
            return TruncPoly::zero(&self.ctx);
        }
        TruncPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Product with every monomial of total degree `>= bound` discarded.
    pub fn mul(&self, other: &TruncPoly) -> Result<TruncPoly, PolyError> {
        self.check(other)?;
        let mut out = TruncPoly::zero(&self.ctx);
        for (ea, ca) in &self.terms {
            let da = total_degree(ea);
            for (eb, cb) in &other.terms {
                if da + total_degree(eb) >= self.ctx.bound {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Formal partial derivative in variable `var`.
    pub fn derivative(&self, var: usize) -> TruncPoly {
        let mut out = TruncPoly::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, &(c * &Q::int(e[var] as i64)));
        }
        out
    }

    pub fn to_doc(&self) -> Vec<TermDoc> {
        self.terms
            .iter()
            .map(|(e, c)| TermDoc { exponents: e.clone(), coeff: c.clone() })
            .collect()
    }

    pub fn from_doc(ctx: &RingContext, doc: &[TermDoc]) -> Result<TruncPoly, PolyError> {
        for t in doc {
            if total_degree(&t.exponents) >= ctx.bound {
                return Err(PolyError::BeyondBound);
            }
        }
        TruncPoly::from_terms(ctx, doc.iter().map(|t| (t.exponents.clone(), t.coeff.clone())))
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}", c)?;
            for (v, k) in self.ctx.variables.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{}", v)?,
                    _ => write!(f, "*{}^{}", v, k)?,
                }
            }
        }
        Ok(())
    }
}
