//! Independent oracles shared by integration suites.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use cyclic_stab::charge::{walcher_triple, Complex};
use cyclic_stab::mf::{Catalog, CatalogOptions};
use cyclic_stab::polymat::Q;
use cyclic_stab::stab::{deform_along_path, derive_stability, rotation_path_to, Deformation, StabilityCondition};

/// Rank by plain Gaussian elimination over `BigRational`.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                let src = rows[r].clone();
                for (dst, v) in rows[i].iter_mut().zip(&src).skip(c) {
                    *dst -= v * &f;
                }
            }
        }
        r += 1;
    }
    r
}

/// Equivariant object `M_b^k` of `x^(n+1)`: `(x^b, x^(n+1-b))` with twist
/// weights `k/d` on the even and `(k+b)/d` on the odd side, in units of `1/d`.
#[derive(Clone, Copy, Debug)]
pub struct Obj {
    pub e: [u32; 2],
    pub w: [i64; 2],
}

pub fn obj(n: u32, d: u32, b: u32, k: u32) -> Obj {
    let d = d as i64;
    Obj { e: [b, n + 1 - b], w: [(k as i64).rem_euclid(d), (k as i64 + b as i64).rem_euclid(d)] }
}

/// Coordinates of parity-`p` maps `X -> Y`: (source side, monomial degree),
/// invariant for `Z/d` and of degree below `limit`.
fn coords(x: Obj, y: Obj, p: usize, d: i64, limit: u32) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for s in 0..2 {
        for k in 0..limit {
            if (y.w[(s + p) % 2] - x.w[s] - k as i64).rem_euclid(d) == 0 {
                out.push((s, k));
            }
        }
    }
    out
}

/// Image of the unit map `x^k` from side `s` under the hom differential, as
/// (target-of-component side index, degree, coefficient) entries. The
/// component leaving side `t` of X is indexed by `t`.
fn differential(x: Obj, y: Obj, p: usize, s: usize, k: u32) -> Vec<(usize, u32, i64)> {
    // d f = delta_Y f - (-1)^p f delta_X, with delta from side t to side t+1
    // equal to x^e[t] (signs of the stored objects do not change ranks).
    let sign = if p == 0 { -1 } else { 1 };
    vec![
        // delta_Y after f: leaves X side s, lands on Y side s+p, then Y side s+p+1.
        (s, k + y.e[(s + p) % 2], 1),
        // f after delta_X: leaves X side s+1, goes to X side s, then f.
        ((s + 1) % 2, k + x.e[(s + 1) % 2], sign),
    ]
}

/// `dim H^p Hom(X, Y)` with maps of degree below `limit`, computed exactly in
/// `k[x]` (no truncation of products).
pub fn hom_dim(x: Obj, y: Obj, p: usize, d: u32, limit: u32) -> usize {
    let d = d as i64;
    let vp = coords(x, y, p, d, limit);
    let vq = coords(x, y, 1 - p, d, limit);
    let top = limit + x.e[0].max(x.e[1]).max(y.e[0]).max(y.e[1]) + 1;
    let idx = |side: usize, deg: u32| side * top as usize + deg as usize;
    let dense = |entries: Vec<(usize, u32, i64)>| {
        let mut v = vec![BigRational::zero(); 2 * top as usize];
        for (s, k, c) in entries {
            v[idx(s, k)] += BigRational::from_integer(c.into());
        }
        v
    };
    // Closed maps: nullity of d on V_p.
    let dp: Vec<Vec<BigRational>> = vp.iter().map(|&(s, k)| dense(differential(x, y, p, s, k))).collect();
    let z = vp.len() - rank(dp);
    // Boundaries inside V_p: image of d on V_q, minus what leaves V_p.
    let images: Vec<Vec<BigRational>> = vq.iter().map(|&(s, k)| dense(differential(x, y, 1 - p, s, k))).collect();
    let b = rank(images.clone());
    let outside: Vec<Vec<BigRational>> = images
        .iter()
        .map(|v| {
            let mut w = v.clone();
            for s in 0..2 {
                for k in 0..limit {
                    w[idx(s, k)] = BigRational::zero();
                }
            }
            w
        })
        .collect();
    let inside = b - rank(outside);
    z - inside
}

pub fn one() -> BigRational {
    BigRational::one()
}

pub fn a2() -> Catalog {
    Catalog::build(2, 3, &CatalogOptions::default()).unwrap()
}

/// Stability condition at the Walcher point; every object is semistable.
pub fn walcher(c: &Catalog) -> StabilityCondition {
    let r = walcher_triple(&c.presentation).unwrap();
    let (s, missing) = derive_stability(&r, &c.presentation).unwrap();
    assert!(missing.is_empty());
    s
}

/// The deformation turning `Z(M1_1)` clockwise onto the positive real axis.
pub fn deformed(c: &Catalog) -> Deformation {
    let s = walcher(c);
    let target = Complex::new(Q::one(), Q::zero());
    let path = rotation_path_to(&s.triple.z, 1, &target, -5.0 / 6.0, 40);
    deform_along_path(&s, &path, &c.presentation).unwrap()
}
