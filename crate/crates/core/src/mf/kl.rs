use super::factorization::{MatrixFactorization, Side};
use super::hom::{HomElement, HomSpace};
use super::MfError;
use crate::polymat::{RationalMatrix, Q};

/// Residue pairing of `f: X -> Y` with `g: Y -> X` of complementary parity.
/// Only the underlying factorizations must match, so `g` may end at a
/// regrading of `X` (the equivariant dual partner).
///
/// General form for `N` variables:
/// `(-1)^(N(N+1)/2) / N! * Res[ str(d_1Q ... d_NQ g f) / (d_1 w, ..., d_N w) ]`.
/// For `N = 1` and `w = c x^m` this is
/// `-[x^(m-2)] str(dQ/dx * g * f) / (c m)`.
pub fn kapustin_li_pair(f: &HomElement, g: &HomElement) -> Result<Q, MfError> {
    let x: &MatrixFactorization = &f.source;
    let nvars = x.ctx().nvars();
    if nvars != 1 {
        return Err(MfError::UnsupportedArity(nvars));
    }
    let (x0, y0) = (x.forget_grading(), f.target.forget_grading());
    if (f.parity + g.parity) % 2 != 1 || g.source.forget_grading() != y0 || g.target.forget_grading() != x0 {
        return Err(MfError::NotComposable);
    }
    let terms: Vec<_> = x.w().terms().collect();
    let [(e, c)] = terms.as_slice() else {
        return Err(MfError::UnsupportedPotential);
    };
    let m = e[0];
    if m < 2 {
        return Err(MfError::UnsupportedPotential);
    }
    let f0 = HomElement::from_blocks(&x0, &y0, f.parity, f.blocks.clone())?;
    let g0 = HomElement::from_blocks(&y0, &x0, g.parity, g.blocks.clone())?;
    let gf = g0.after(&f0)?;
    let dq = [x.delta1().derivative(0), x.delta0().derivative(0)];
    // dQ after gf: even part leaves E0 through gf into E1 then back through d(delta1).
    let even = dq[0].mul(gf.component_from(Side::Even))?;
    let odd = dq[1].mul(gf.component_from(Side::Odd))?;
    let st = even.trace()?.sub(&odd.trace()?)?;
    let coeff = st.coeff(&[m - 2]);
    Ok(-(coeff / (*c * &Q::int(m as i64))))
}

/// Pairing matrix between two hom bases, rows indexed by `left`.
pub fn kl_matrix(left: &HomSpace, right: &HomSpace) -> Result<RationalMatrix, MfError> {
    let rows = left
        .basis()
        .iter()
        .map(|f| right.basis().iter().map(|g| kapustin_li_pair(f, g)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Ok(RationalMatrix::zeros(0, right.dim()));
    }
    Ok(RationalMatrix::from_rows(rows)?)
}
