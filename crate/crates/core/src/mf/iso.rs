use super::factorization::{MatrixFactorization, Side};
use super::hom::{hom_space, HomElement};
use super::MfError;
use crate::polymat::{RationalMatrix, Q};

/// True when `id_X` is null-homotopic.
pub fn is_zero_object(x: &MatrixFactorization) -> Result<bool, MfError> {
    Ok(hom_space(x, x, 0)?.dim() == 0)
}

/// `(dim Hom^0(c, x), dim Hom^1(c, x))` for each reference object `c`.
pub fn fingerprint(x: &MatrixFactorization, refs: &[&MatrixFactorization]) -> Result<Vec<(usize, usize)>, MfError> {
    refs.iter()
        .map(|c| Ok((hom_space(c, x, 0)?.dim(), hom_space(c, x, 1)?.dim())))
        .collect()
}

/// Mutually inverse even maps `(f: X -> Y, g: Y -> X)` up to homotopy, if
/// found. Candidates for `f` are the basis elements of `Hom^0(X, Y)` and
/// their sum; `g` is then one linear solve and the other composite is
/// checked directly.
pub fn find_isomorphism(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
) -> Result<Option<(HomElement, HomElement)>, MfError> {
    let hxx = hom_space(x, x, 0)?;
    let hyy = hom_space(y, y, 0)?;
    if hxx.dim() == 0 || hyy.dim() == 0 {
        let both = hxx.dim() == hyy.dim();
        return Ok(both.then(|| (HomElement::zero(x, y, 0), HomElement::zero(y, x, 0))));
    }
    let hxy = hom_space(x, y, 0)?;
    let hyx = hom_space(y, x, 0)?;
    if hxy.dim() == 0 || hyx.dim() == 0 {
        return Ok(None);
    }
    let mut candidates: Vec<HomElement> = hxy.basis().to_vec();
    if hxy.dim() > 1 {
        candidates.push(hxy.combination(&vec![Q::one(); hxy.dim()]));
    }
    let id_x = hxx.coordinates(&HomElement::identity(x))?.ok_or(MfError::NotClosed)?;
    let id_y = HomElement::identity(y);
    for f in candidates {
        let cols: Vec<Vec<Q>> = hyx
            .basis()
            .iter()
            .map(|g| hxx.coordinates(&g.after(&f)?).map(|c| c.unwrap_or_else(|| vec![Q::zero(); hxx.dim()])))
            .collect::<Result<_, MfError>>()?;
        let m = RationalMatrix::from_columns(hxx.dim(), &cols);
        let Some(b) = m.solve(&id_x)? else { continue };
        let g = hyx.combination(&b);
        let back = f.after(&g)?.add(&id_y.neg())?;
        if hyy.is_exact(&back)? {
            return Ok(Some((f, g)));
        }
    }
    Ok(None)
}

/// Constant part of an endomorphism, normalized so `id` maps to 1.
fn residue_scalar(phi: &HomElement) -> Q {
    let b = phi.component_from(Side::Even);
    let n = b.rows();
    let zero = vec![0; b.ctx().nvars()];
    let tr: Q = (0..n).map(|i| b.get(i, i).coeff(&zero)).sum();
    tr / Q::int(n as i64)
}

/// Multiplicity of each reference object as a summand of `x`, as the rank of
/// the pairing `Hom(c, x) x Hom(x, c) -> End(c) / rad`. The radical is
/// detected by the constant-term criterion, sound for local endomorphism
/// rings whose maximal ideal is generated in positive degree.
pub fn decompose(x: &MatrixFactorization, refs: &[&MatrixFactorization]) -> Result<Vec<usize>, MfError> {
    refs.iter()
        .map(|c| {
            let into = hom_space(c, x, 0)?;
            let out = hom_space(x, c, 0)?;
            if into.dim() == 0 || out.dim() == 0 {
                return Ok(0);
            }
            let rows: Vec<Vec<Q>> = into
                .basis()
                .iter()
                .map(|a| out.basis().iter().map(|b| Ok(residue_scalar(&b.after(a)?))).collect::<Result<_, MfError>>())
                .collect::<Result<_, _>>()?;
            Ok(RationalMatrix::from_rows(rows)?.rank())
        })
        .collect()
}
