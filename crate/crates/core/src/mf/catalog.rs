use std::collections::BTreeMap;

use super::cone::cone;
use super::factorization::{Grading, MatrixFactorization, RCharges};
use super::hom::{hom_space, HomElement, HomSpace};
use super::iso::find_isomorphism;
use super::MfError;
use crate::catgraph::{Arrow, CategoryPresentation, Composition, SourceInfo, Term};
use crate::polymat::{PolyMatrix, RingContext, TruncPoly, Q};

pub const DEFAULT_BOUND: u32 = 8;
pub const RCHARGE_SCALE: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogOptions {
    pub bound: u32,
    pub rcharge_scale: Q,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions { bound: DEFAULT_BOUND, rcharge_scale: Q::int(RCHARGE_SCALE) }
    }
}

/// Isomorphism pair between a catalog object and some factorization.
#[derive(Clone, Debug)]
pub struct Identification {
    pub id: String,
    /// `X -> catalog object`.
    pub to_catalog: HomElement,
    /// `catalog object -> X`.
    pub from_catalog: HomElement,
}

/// Indecomposables `M_a^j` of `w = x^(n+1)` with `Z/d` acting by weight
/// `1/d` on `x`, together with the presentation built from their hom spaces.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub n: u32,
    pub d: u32,
    pub options: CatalogOptions,
    pub presentation: CategoryPresentation,
    objects: BTreeMap<String, MatrixFactorization>,
    arrows: BTreeMap<String, HomElement>,
    homs: BTreeMap<(String, String), (HomSpace, Vec<String>)>,
    /// For each object `X`: maps `shift(X) -> T(X)` and back.
    shift_iso: BTreeMap<String, (HomElement, HomElement)>,
}

pub fn object_id(a: u32, j: u32) -> String {
    format!("M{a}_{j}")
}

/// `M_a^{j+1}` for id `Ma_j`; other ids pass through.
pub fn display_name(id: &str) -> String {
    let parsed = id
        .strip_prefix('M')
        .and_then(|r| r.split_once('_'))
        .and_then(|(a, j)| Some((a.parse::<u32>().ok()?, j.parse::<u32>().ok()?)));
    match parsed {
        Some((a, j)) => format!("M_{a}^{}", j + 1),
        None => id.to_string(),
    }
}

/// Presentation of the `A_n` catalog with `Z/d` equivariance.
pub fn build_an_equivariant(n: u32, d: u32) -> Result<CategoryPresentation, MfError> {
    Ok(Catalog::build(n, d, &CatalogOptions::default())?.presentation)
}

impl Catalog {
    pub fn build(n: u32, d: u32, options: &CatalogOptions) -> Result<Catalog, MfError> {
        if n < 2 || d == 0 || !(n + 1).is_multiple_of(d) {
            return Err(MfError::InvalidExample { n, d });
        }
        if options.rcharge_scale != Q::int(RCHARGE_SCALE) {
            return Err(MfError::UnsupportedScale(options.rcharge_scale.clone()));
        }
        let ctx = RingContext::new(&["x"], options.bound)?;
        let objects = base_objects(&ctx, n, d, &options.rcharge_scale)?;
        let mut cat = Catalog {
            n,
            d,
            options: options.clone(),
            presentation: CategoryPresentation::default(),
            objects,
            arrows: BTreeMap::new(),
            homs: BTreeMap::new(),
            shift_iso: BTreeMap::new(),
        };
        cat.presentation.objects = cat.objects.keys().cloned().collect();
        cat.presentation.source = Some(SourceInfo { example: format!("an-zd:{n},{d}"), bound: options.bound });
        cat.build_arrows()?;
        cat.build_shift()?;
        cat.build_compositions()?;
        cat.build_triangles()?;
        Ok(cat)
    }

    /// Rebuilds the catalog named by a presentation's `source` field.
    pub fn from_source(source: &SourceInfo, rcharge_scale: Q) -> Result<Catalog, MfError> {
        let spec = source.example.strip_prefix("an-zd:").unwrap_or(&source.example);
        let (n, d) = spec
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
            .ok_or(MfError::InvalidExample { n: 0, d: 0 })?;
        Catalog::build(n, d, &CatalogOptions { bound: source.bound, rcharge_scale })
    }

    pub fn object(&self, id: &str) -> Option<&MatrixFactorization> {
        self.objects.get(id)
    }

    pub fn objects(&self) -> impl Iterator<Item = (&String, &MatrixFactorization)> {
        self.objects.iter()
    }

    pub fn arrow(&self, id: &str) -> Option<&HomElement> {
        self.arrows.get(id)
    }

    /// `H^0 Hom(src, dst)` with the arrow id of each basis element.
    pub fn hom(&self, src: &str, dst: &str) -> Option<(&HomSpace, &[String])> {
        self.homs.get(&(src.to_string(), dst.to_string())).map(|(h, ids)| (h, ids.as_slice()))
    }

    /// Maps `shift(X) -> T(X)` and `T(X) -> shift(X)` for catalog object `X`.
    pub fn shift_iso(&self, id: &str) -> Option<&(HomElement, HomElement)> {
        self.shift_iso.get(id)
    }

    /// Writes a closed even map between catalog objects in terms of arrows.
    pub fn express(&self, f: &HomElement, src: &str, dst: &str) -> Result<Option<Vec<Term>>, MfError> {
        let Some((h, ids)) = self.hom(src, dst) else { return Ok(None) };
        let Some(c) = h.coordinates(f)? else { return Ok(None) };
        Ok(Some(
            ids.iter()
                .zip(c)
                .filter(|(_, c)| !c.is_zero())
                .map(|(a, coeff)| Term { arrow: a.clone(), coeff })
                .collect(),
        ))
    }

    /// Catalog object isomorphic to `x`, with the isomorphisms.
    pub fn identify(&self, x: &MatrixFactorization) -> Result<Option<Identification>, MfError> {
        for (id, c) in &self.objects {
            if c == x {
                let e = HomElement::identity(c);
                return Ok(Some(Identification { id: id.clone(), to_catalog: e.clone(), from_catalog: e }));
            }
        }
        for (id, c) in &self.objects {
            if hom_space(c, x, 0)?.dim() == 0 {
                continue;
            }
            if let Some((f, g)) = find_isomorphism(x, c)? {
                return Ok(Some(Identification { id: id.clone(), to_catalog: f, from_catalog: g }));
            }
        }
        Ok(None)
    }

    fn build_arrows(&mut self) -> Result<(), MfError> {
        let ids: Vec<String> = self.objects.keys().cloned().collect();
        for s in &ids {
            for t in &ids {
                let (x, y) = (&self.objects[s], &self.objects[t]);
                let mut h = hom_space(x, y, 0)?;
                if s == t {
                    h.promote(&HomElement::identity(x))?;
                }
                let mut names = Vec::new();
                for (k, b) in h.basis().iter().enumerate() {
                    let is_id = s == t && k == 0;
                    let id = if is_id {
                        format!("id:{s}")
                    } else if h.dim() == 1 || (s == t && h.dim() == 2) {
                        format!("{s}>{t}")
                    } else {
                        format!("{s}>{t}#{k}")
                    };
                    let degree = b.rcharge.clone().ok_or(MfError::MismatchedGrading)?;
                    let label = if is_id {
                        "id".to_string()
                    } else {
                        format!("{} -> {}", display_name(s), display_name(t))
                    };
                    self.presentation.arrows.push(Arrow { id: id.clone(), src: s.clone(), dst: t.clone(), degree, label });
                    self.arrows.insert(id.clone(), b.clone());
                    names.push(id);
                }
                self.homs.insert((s.clone(), t.clone()), (h, names));
            }
        }
        Ok(())
    }

    fn build_shift(&mut self) -> Result<(), MfError> {
        for (id, x) in &self.objects {
            let tx = x.shift();
            let ident = self.identify(&tx)?.ok_or(MfError::InvalidExample { n: self.n, d: self.d })?;
            self.presentation.shift.insert(id.clone(), ident.id.clone());
            self.shift_iso.insert(id.clone(), (ident.from_catalog, ident.to_catalog));
        }
        let mut arrow_shift = BTreeMap::new();
        for a in &self.presentation.arrows {
            let f = &self.arrows[&a.id];
            let (xs, ys) = (&self.presentation.shift[&a.src], &self.presentation.shift[&a.dst]);
            let u = &self.shift_iso[&a.src].0;
            let v = &self.shift_iso[&a.dst].1;
            let g = v.after(&f.shift())?.after(u)?;
            if let Some(terms) = self.express(&g, xs, ys)? {
                if let [t] = terms.as_slice() {
                    arrow_shift.insert(a.id.clone(), t.arrow.clone());
                }
            }
        }
        self.presentation.arrow_shift = arrow_shift;
        Ok(())
    }

    fn build_compositions(&mut self) -> Result<(), MfError> {
        let mut out = Vec::new();
        for f in &self.presentation.arrows {
            for g in self.presentation.arrows.iter().filter(|g| g.src == f.dst) {
                let result = if f.is_identity() {
                    vec![Term { arrow: g.id.clone(), coeff: Q::one() }]
                } else if g.is_identity() {
                    vec![Term { arrow: f.id.clone(), coeff: Q::one() }]
                } else {
                    let comp = self.arrows[&g.id].after(&self.arrows[&f.id])?;
                    match self.express(&comp, &f.src, &g.dst)? {
                        Some(t) => t,
                        None => continue,
                    }
                };
                out.push(Composition { first: f.id.clone(), second: g.id.clone(), result });
            }
        }
        self.presentation.compositions = out;
        Ok(())
    }

    /// Records `(f, g, h)` whenever the cone of a single arrow is a catalog
    /// object and both triangle maps are multiples of single arrows.
    fn build_triangles(&mut self) -> Result<(), MfError> {
        let mut triangles = Vec::new();
        let proper: Vec<Arrow> = self.presentation.proper_arrows().cloned().collect();
        for a in &proper {
            let c = cone(&self.arrows[&a.id])?;
            let Some(ident) = self.identify(&c.object)? else { continue };
            let g = ident.to_catalog.after(&c.incl)?;
            let back = &self.shift_iso[&a.src].1;
            let h = back.after(&c.proj.after(&ident.from_catalog)?)?;
            let xs = self.presentation.shift[&a.src].clone();
            let (Some(tg), Some(th)) = (self.express(&g, &a.dst, &ident.id)?, self.express(&h, &ident.id, &xs)?) else {
                continue;
            };
            if let ([tg], [th]) = (tg.as_slice(), th.as_slice()) {
                triangles.push([a.id.clone(), tg.arrow.clone(), th.arrow.clone()]);
            }
        }
        self.presentation.triangles = triangles;
        Ok(())
    }
}

/// Primary objects `(x^a, x^(n+1-a))` with weights `(j/d, (j+a)/d)` and
/// R-charges `(0, k - a rho)`, `k` half the R-charge of `w`; partners
/// `M_(n+1-a)^(j+a)` are stored as exact shifts so that `T(T(X)) == X`.
fn base_objects(
    ctx: &RingContext,
    n: u32,
    d: u32,
    scale: &Q,
) -> Result<BTreeMap<String, MatrixFactorization>, MfError> {
    let rho = scale / &Q::int(n as i64 + 1);
    let kappa = scale / &Q::int(2);
    let x = |k| PolyMatrix::scalar(ctx, 1, &TruncPoly::x_pow(ctx, k, Q::one()));
    let w = TruncPoly::x_pow(ctx, n + 1, Q::one());
    let mut out = BTreeMap::new();
    for a in 1..=n {
        if 2 * a > n + 1 {
            continue;
        }
        for j in 0..d {
            let grading = Grading {
                group_order: d,
                weights0: vec![Q::new(j as i64, d as i64)],
                weights1: vec![Q::new((j + a) as i64, d as i64)],
                rcharges: Some(RCharges {
                    variable: rho.clone(),
                    basis0: vec![Q::zero()],
                    basis1: vec![&kappa - &(&rho * &Q::int(a as i64))],
                }),
            };
            let m = MatrixFactorization::new(w.clone(), x(a), x(n + 1 - a), Some(grading))?;
            if 2 * a < n + 1 {
                out.insert(object_id(n + 1 - a, (j + a) % d), m.shift());
            }
            out.insert(object_id(a, j), m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_names_start_at_one() {
        assert_eq!(display_name("M1_0"), "M_1^1");
        assert_eq!(display_name("M2_2"), "M_2^3");
        assert_eq!(display_name("other"), "other");
    }

    #[test]
    fn rejects_bad_group_orders() {
        assert!(matches!(build_an_equivariant(2, 2), Err(MfError::InvalidExample { .. })));
        assert!(matches!(build_an_equivariant(1, 1), Err(MfError::InvalidExample { .. })));
    }
}
