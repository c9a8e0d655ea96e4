use super::factorization::{Grading, MatrixFactorization, RCharges, Side};
use super::hom::HomElement;
use super::MfError;
use crate::polymat::{PolyMatrix, Q};

/// Mapping cone of an even closed map with its canonical triangle
/// `X -f-> Y -incl-> C -proj-> X[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub object: MatrixFactorization,
    pub incl: HomElement,
    pub proj: HomElement,
}

/// `C = Y + X[1]` with `C0 = Y0 + X1`, `C1 = Y1 + X0` and
/// `delta_C = [[delta_Y, f], [0, -delta_X]]`.
///
/// The X-part R-charges are shifted by `q(f) - 1` so the glue has R-charge 1.
pub fn cone(f: &HomElement) -> Result<Cone, MfError> {
    if f.parity != 0 {
        return Err(MfError::OddMorphism);
    }
    if !f.is_closed()? {
        return Err(MfError::NotClosed);
    }
    let (x, y) = (&f.source, &f.target);
    let ctx = x.ctx();
    let (rx, ry) = (x.rank(), y.rank());
    let zero = PolyMatrix::zeros(ctx, rx, ry);
    let d0 = PolyMatrix::block2(y.delta0(), f.component_from(Side::Odd), &zero, &x.delta1().neg())?;
    let d1 = PolyMatrix::block2(y.delta1(), f.component_from(Side::Even), &zero, &x.delta0().neg())?;
    let grading = match (x.grading(), y.grading()) {
        (Some(gx), Some(gy)) => Some(cone_grading(gx, gy, f)),
        _ => None,
    };
    let object = MatrixFactorization::new(x.w().clone(), d0, d1, grading)?;

    let id = |n| PolyMatrix::identity(ctx, n);
    let incl_block = PolyMatrix::block2(&id(ry), &PolyMatrix::zeros(ctx, ry, 0), &PolyMatrix::zeros(ctx, rx, ry), &PolyMatrix::zeros(ctx, rx, 0))?;
    let incl = HomElement::from_blocks(y, &object, 0, [incl_block.clone(), incl_block])?;
    let proj_block = PolyMatrix::block2(&PolyMatrix::zeros(ctx, rx, ry), &id(rx), &PolyMatrix::zeros(ctx, 0, ry), &PolyMatrix::zeros(ctx, 0, rx))?;
    let proj = HomElement::from_blocks(&object, &x.shift(), 0, [proj_block.clone(), proj_block])?;
    Ok(Cone { object, incl, proj })
}

fn cone_grading(gx: &Grading, gy: &Grading, f: &HomElement) -> Grading {
    let cat = |a: &[Q], b: &[Q]| a.iter().chain(b).cloned().collect::<Vec<_>>();
    let rcharges = match (&gx.rcharges, &gy.rcharges) {
        (Some(rx), Some(ry)) if f.rcharge.is_some() || f.is_zero() => {
            let off = f.rcharge.clone().map_or(Q::zero(), |q| q - Q::one());
            let sh = |v: &[Q]| v.iter().map(|r| r + &off).collect::<Vec<_>>();
            Some(RCharges {
                variable: ry.variable.clone(),
                basis0: cat(&ry.basis0, &sh(&rx.basis1)),
                basis1: cat(&ry.basis1, &sh(&rx.basis0)),
            })
        }
        _ => None,
    };
    Grading {
        group_order: gy.group_order,
        weights0: cat(&gy.weights0, &gx.weights1),
        weights1: cat(&gy.weights1, &gx.weights0),
        rcharges,
    }
}
