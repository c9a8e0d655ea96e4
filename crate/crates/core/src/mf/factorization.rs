use serde::{Deserialize, Serialize};

use super::MfError;
use crate::polymat::{total_degree, PolyMatrix, PolyMatrixDoc, RingContext, TermDoc, TruncPoly, Q};

/// Equivariant data for a cyclic group of order `group_order` acting on each
/// variable with weight `1/group_order`.
///
/// A matrix entry `x^k` from basis vector `a` to basis vector `b` is allowed
/// iff `weight(b) == weight(a) + k/group_order (mod 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub group_order: u32,
    pub weights0: Vec<Q>,
    pub weights1: Vec<Q>,
    pub rcharges: Option<RCharges>,
}

/// R-charges of basis vectors. An entry `x^k` from `a` to `b` has R-charge
/// `r(b) + k * variable - r(a)`; both differentials have R-charge exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RCharges {
    pub variable: Q,
    pub basis0: Vec<Q>,
    pub basis1: Vec<Q>,
}

/// `E = E0 + E1` with `delta0: E0 -> E1`, `delta1: E1 -> E0`, matrices acting
/// on column vectors.
///
/// Invariant: `delta0 * delta1 == delta1 * delta0 == w * I` in the truncated
/// ring, and every entry respects the grading when one is present.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFactorization {
    w: TruncPoly,
    delta0: PolyMatrix,
    delta1: PolyMatrix,
    grading: Option<Grading>,
}

/// Which of the two summands a basis index lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Even,
    Odd,
}

impl Side {
    pub fn of(parity: u8) -> Side {
        if parity.is_multiple_of(2) {
            Side::Even
        } else {
            Side::Odd
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Even => Side::Odd,
            Side::Odd => Side::Even,
        }
    }

    pub fn after_parity(self, parity: u8) -> Side {
        if parity.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }
}

fn wrap_unit(q: &Q) -> Q {
    q - &q.floor()
}

impl Grading {
    pub fn weight(&self, side: Side, i: usize) -> &Q {
        match side {
            Side::Even => &self.weights0[i],
            Side::Odd => &self.weights1[i],
        }
    }

    pub fn rcharge(&self, side: Side, i: usize) -> Option<&Q> {
        self.rcharges.as_ref().map(|r| match side {
            Side::Even => &r.basis0[i],
            Side::Odd => &r.basis1[i],
        })
    }

    pub fn monomial_weight(&self, exps: &[u32]) -> Q {
        Q::new(total_degree(exps) as i64, self.group_order as i64)
    }

    fn swapped(&self) -> Grading {
        Grading {
            group_order: self.group_order,
            weights0: self.weights1.clone(),
            weights1: self.weights0.clone(),
            rcharges: self.rcharges.as_ref().map(|r| RCharges {
                variable: r.variable.clone(),
                basis0: r.basis1.clone(),
                basis1: r.basis0.clone(),
            }),
        }
    }
}

/// True when an entry `x^exps` from `(sa, a)` of `src` to `(sb, b)` of `dst`
/// is invariant under the group.
pub fn entry_allowed(
    src: &Grading,
    sa: Side,
    a: usize,
    dst: &Grading,
    sb: Side,
    b: usize,
    exps: &[u32],
) -> bool {
    let lhs = dst.weight(sb, b);
    let rhs = src.weight(sa, a) + &dst.monomial_weight(exps);
    lhs.congruent(&rhs, &Q::one())
}

/// R-charge of an entry `x^exps` from `(sa, a)` of `src` to `(sb, b)` of `dst`.
pub fn entry_rcharge(
    src: &Grading,
    sa: Side,
    a: usize,
    dst: &Grading,
    sb: Side,
    b: usize,
    exps: &[u32],
) -> Option<Q> {
    let ra = src.rcharge(sa, a)?;
    let rb = dst.rcharge(sb, b)?;
    let rho = &dst.rcharges.as_ref()?.variable;
    Some(rb + &(rho * &Q::int(total_degree(exps) as i64)) - ra)
}

impl MatrixFactorization {
    /// Validates `delta0 delta1 = delta1 delta0 = w I` and, when a grading is
    /// given, invariance and homogeneity of every entry.
    pub fn new(
        w: TruncPoly,
        delta0: PolyMatrix,
        delta1: PolyMatrix,
        grading: Option<Grading>,
    ) -> Result<MatrixFactorization, MfError> {
        let r = delta0.rows();
        if delta0.cols() != r || delta1.rows() != r || delta1.cols() != r {
            return Err(MfError::NotSquare);
        }
        if delta0.ctx() != w.ctx() || delta1.ctx() != w.ctx() {
            return Err(MfError::ContextMismatch);
        }
        let wi = PolyMatrix::scalar(w.ctx(), r, &w);
        if delta0.mul(&delta1)? != wi || delta1.mul(&delta0)? != wi {
            return Err(MfError::NotAFactorization);
        }
        if let Some(g) = &grading {
            check_grading(g, r, &delta0, &delta1)?;
        }
        let grading = grading.map(|mut g| {
            g.weights0 = g.weights0.iter().map(wrap_unit).collect();
            g.weights1 = g.weights1.iter().map(wrap_unit).collect();
            g
        });
        Ok(MatrixFactorization { w, delta0, delta1, grading })
    }

    pub fn w(&self) -> &TruncPoly {
        &self.w
    }

    pub fn ctx(&self) -> &RingContext {
        self.w.ctx()
    }

    pub fn rank(&self) -> usize {
        self.delta0.rows()
    }

    pub fn delta0(&self) -> &PolyMatrix {
        &self.delta0
    }

    pub fn delta1(&self) -> &PolyMatrix {
        &self.delta1
    }

    /// Differential leaving the given side.
    pub fn delta_from(&self, side: Side) -> &PolyMatrix {
        match side {
            Side::Even => &self.delta0,
            Side::Odd => &self.delta1,
        }
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    /// Largest entry degree of either differential.
    pub fn max_degree(&self) -> u32 {
        self.delta0.max_degree().into_iter().chain(self.delta1.max_degree()).max().unwrap_or(0)
    }

    /// `T(E0 -d0-> E1 -d1-> E0) = (E1 -(-d1)-> E0 -(-d0)-> E1)`; `T(T(X)) == X`.
    pub fn shift(&self) -> MatrixFactorization {
        MatrixFactorization {
            w: self.w.clone(),
            delta0: self.delta1.neg(),
            delta1: self.delta0.neg(),
            grading: self.grading.as_ref().map(Grading::swapped),
        }
    }

    /// Same factorization with the grading removed.
    pub fn forget_grading(&self) -> MatrixFactorization {
        MatrixFactorization { grading: None, ..self.clone() }
    }

    pub fn to_doc(&self) -> MfDoc {
        let g = self.grading.as_ref();
        let r = g.and_then(|g| g.rcharges.as_ref());
        MfDoc {
            variables: self.ctx().variables.clone(),
            bound: self.ctx().bound,
            potential: self.w.to_doc(),
            delta0: PolyMatrixDoc::from_matrix(&self.delta0).entries,
            delta1: PolyMatrixDoc::from_matrix(&self.delta1).entries,
            group_order: g.map(|g| g.group_order),
            weights0: g.map(|g| g.weights0.clone()),
            weights1: g.map(|g| g.weights1.clone()),
            variable_rcharge: r.map(|r| r.variable.clone()),
            rcharges0: r.map(|r| r.basis0.clone()),
            rcharges1: r.map(|r| r.basis1.clone()),
        }
    }

    pub fn from_doc(doc: &MfDoc) -> Result<MatrixFactorization, MfError> {
        let vars: Vec<&str> = doc.variables.iter().map(String::as_str).collect();
        let ctx = RingContext::new(&vars, doc.bound)?;
        let w = TruncPoly::from_doc(&ctx, &doc.potential)?;
        let r = doc.delta0.len();
        let d0 = PolyMatrix::from_doc(&ctx, r, r, &doc.delta0)?;
        let d1 = PolyMatrix::from_doc(&ctx, r, r, &doc.delta1)?;
        let grading = match (&doc.weights0, &doc.weights1) {
            (None, None) => None,
            (Some(w0), Some(w1)) => {
                let rcharges = match (&doc.variable_rcharge, &doc.rcharges0, &doc.rcharges1) {
                    (None, None, None) => None,
                    (Some(v), Some(r0), Some(r1)) => Some(RCharges {
                        variable: v.clone(),
                        basis0: r0.clone(),
                        basis1: r1.clone(),
                    }),
                    _ => return Err(MfError::IncompleteGrading),
                };
                Some(Grading {
                    group_order: doc.group_order.unwrap_or(1),
                    weights0: w0.clone(),
                    weights1: w1.clone(),
                    rcharges,
                })
            }
            _ => return Err(MfError::IncompleteGrading),
        };
        MatrixFactorization::new(w, d0, d1, grading)
    }
}

fn check_grading(g: &Grading, r: usize, d0: &PolyMatrix, d1: &PolyMatrix) -> Result<(), MfError> {
    if g.group_order == 0 {
        return Err(MfError::IncompleteGrading);
    }
    let lens_ok = g.weights0.len() == r
        && g.weights1.len() == r
        && g.rcharges.as_ref().is_none_or(|rc| rc.basis0.len() == r && rc.basis1.len() == r);
    if !lens_ok {
        return Err(MfError::IncompleteGrading);
    }
    for (side, m) in [(Side::Even, d0), (Side::Odd, d1)] {
        for (i, j, p) in m.entries() {
            for (e, _) in p.terms() {
                if !entry_allowed(g, side, j, g, side.flip(), i, e) {
                    return Err(MfError::NotEquivariant);
                }
                if let Some(rc) = entry_rcharge(g, side, j, g, side.flip(), i, e) {
                    if rc != Q::one() {
                        return Err(MfError::NotHomogeneous);
                    }
                }
            }
        }
    }
    Ok(())
}

impl std::fmt::Debug for MatrixFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MF(d0={:?}, d1={:?}", self.delta0, self.delta1)?;
        if let Some(g) = &self.grading {
            write!(f, ", w0={:?}, w1={:?}", g.weights0, g.weights1)?;
        }
        write!(f, ")")
    }
}

fn default_variables() -> Vec<String> {
    vec!["x".to_string()]
}

/// Serialized factorization. The grading fields travel together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfDoc {
    #[serde(default = "default_variables")]
    pub variables: Vec<String>,
    pub bound: u32,
    pub potential: Vec<TermDoc>,
    pub delta0: Vec<Vec<Vec<TermDoc>>>,
    pub delta1: Vec<Vec<Vec<TermDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights0: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights1: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable_rcharge: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rcharges0: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rcharges1: Option<Vec<Q>>,
}

/// `1x1` factorization `(x^a, x^b)` of `x^(a+b)` without grading.
pub fn monomial_pair(ctx: &RingContext, a: u32, b: u32) -> Result<MatrixFactorization, MfError> {
    let x = |k| TruncPoly::x_pow(ctx, k, Q::one());
    let m = |k| PolyMatrix::scalar(ctx, 1, &x(k));
    MatrixFactorization::new(x(a + b), m(a), m(b), None)
}
