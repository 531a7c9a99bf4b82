use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::GScheme;
use crate::fingroup::{Homomorphism, Subgroup};
use crate::gobject::{GGroup, GMorphism, Variant};
use crate::pointset::PointSet;
use crate::spectrum::{PrimeDef, Spectrum};
use crate::{Error, Result};

/// A morphism `X -> Y` acting pointwise on sections: the value of a pulled
/// back section at `x` is `value_maps[x]` applied to its value at `f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeMorphism {
    pub point_map: Vec<usize>,
    /// For each point `x` of `X`, a map from the local group of `f(x)` to
    /// the local group of `x`.
    pub value_maps: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismReport {
    pub continuous: bool,
    pub value_maps_are_g_morphisms: bool,
    pub sections_preserved: bool,
    pub squares_commute: bool,
    pub local: bool,
    pub failures: Vec<String>,
}

impl MorphismReport {
    pub fn passes(&self) -> bool {
        self.continuous && self.value_maps_are_g_morphisms && self.sections_preserved && self.squares_commute && self.local
    }
}

impl SchemeMorphism {
    pub fn identity(x: &GScheme) -> Self {
        SchemeMorphism {
            point_map: (0..x.len()).collect(),
            value_maps: (0..x.len()).map(|p| x.local(p).table.elements().collect()).collect(),
        }
    }

    pub fn preimage(&self, v: PointSet) -> PointSet {
        (0..self.point_map.len()).filter(|&p| v.contains(self.point_map[p])).collect()
    }

    /// Pulls a section tuple over `v` back to `f^-1(v)`.
    pub fn pull_values(&self, v: PointSet, values: &[u16]) -> Vec<u16> {
        let pre = self.preimage(v);
        pre.iter()
            .map(|p| {
                let fp = self.point_map[p];
                let k = v.iter().position(|q| q == fp).expect("image inside the open");
                self.value_maps[p][values[k] as usize] as u16
            })
            .collect()
    }

    /// `f♯(v): O_Y(v) -> O_X(f^-1 v)` as an index map.
    pub fn algebraic(&self, x: &GScheme, y: &GScheme, v: PointSet) -> Result<Vec<usize>> {
        let sy = y.sections(v)?;
        let sx = x.sections(self.preimage(v))?;
        (0..sy.order())
            .map(|s| {
                sx.index_of(&self.pull_values(v, sy.values(s)))
                    .ok_or_else(|| Error::Inconclusive(format!("pullback over {v:?} is not a section")))
            })
            .collect()
    }

    fn shape_ok(&self, x: &GScheme, y: &GScheme) -> Result<()> {
        if self.point_map.len() != x.len() || self.value_maps.len() != x.len() {
            return Err(Error::ArityMismatch { expected: x.len(), found: self.point_map.len() });
        }
        for (p, &fp) in self.point_map.iter().enumerate() {
            if fp >= y.len() {
                return Err(Error::ElementOutOfRange { index: fp, order: y.len() });
            }
            if self.value_maps[p].len() != y.local(fp).table.order() {
                return Err(Error::ArityMismatch { expected: y.local(fp).table.order(), found: self.value_maps[p].len() });
            }
        }
        Ok(())
    }

    /// Continuity, G-compatibility, well-defined pullbacks, commuting
    /// restriction squares and localness at every point.
    pub fn check(&self, x: &GScheme, y: &GScheme) -> Result<MorphismReport> {
        self.shape_ok(x, y)?;
        let mut r = MorphismReport::default();
        r.continuous = y.opens().iter().all(|&v| x.is_open(self.preimage(v)));
        if !r.continuous {
            r.failures.push("preimage of an open is not open".into());
        }
        r.value_maps_are_g_morphisms = (0..x.len()).all(|p| {
            let (lx, ly) = (x.local(p), y.local(self.point_map[p]));
            Homomorphism::new(&ly.table, &lx.table, self.value_maps[p].clone()).is_ok()
                && x.base().elements().all(|g| self.value_maps[p][ly.structure[g]] == lx.structure[g])
        });
        if !r.value_maps_are_g_morphisms {
            r.failures.push("a value map is not a morphism over G".into());
        }
        if !r.continuous || !r.value_maps_are_g_morphisms {
            return Ok(r);
        }
        let mut maps = Vec::new();
        r.sections_preserved = true;
        for &v in y.opens() {
            match self.algebraic(x, y, v) {
                Ok(m) => maps.push((v, m)),
                Err(e) => {
                    r.sections_preserved = false;
                    r.failures.push(format!("{e}"));
                }
            }
        }
        if r.sections_preserved {
            r.squares_commute = true;
            for (v, mv) in &maps {
                for (u, mu) in maps.iter().filter(|(u, _)| u.is_subset(*v)) {
                    let ry = y.restriction(*v, *u)?;
                    let rx = x.restriction(self.preimage(*v), self.preimage(*u))?;
                    if (0..mv.len()).any(|s| rx[mv[s]] != mu[ry[s]]) {
                        r.squares_commute = false;
                        r.failures.push(format!("square {u:?} ⊆ {v:?} does not commute"));
                    }
                }
            }
        }
        r.local = (0..x.len()).all(|p| {
            let fp = self.point_map[p];
            let stalk = y.stalk(fp);
            let (idx, idy) = (x.local(p).table.identity(), y.local(fp).table.identity());
            (0..stalk.order()).all(|s| {
                let v = stalk.value_at(s, fp);
                (self.value_maps[p][v] == idx) == (v == idy)
            })
        });
        if !r.local {
            r.failures.push("a stalk map does not pull back the distinguished prime".into());
        }
        Ok(r)
    }

    /// A passing morphism that is bijective on points, on local groups and
    /// on every section group, with a continuous inverse.
    pub fn is_isomorphism(&self, x: &GScheme, y: &GScheme) -> Result<bool> {
        if !self.check(x, y)?.passes() || x.len() != y.len() {
            return Ok(false);
        }
        let mut seen = PointSet::EMPTY;
        for &fp in &self.point_map {
            seen.insert(fp);
        }
        if seen != y.points() {
            return Ok(false);
        }
        for p in 0..x.len() {
            let mut v = self.value_maps[p].clone();
            v.sort_unstable();
            v.dedup();
            if v.len() != x.local(p).table.order() || v.len() != self.value_maps[p].len() {
                return Ok(false);
            }
        }
        let image = |u: PointSet| -> PointSet { u.iter().map(|p| self.point_map[p]).collect() };
        if !x.opens().iter().all(|&u| y.is_open(image(u))) {
            return Ok(false);
        }
        for &v in y.opens() {
            let m = self.algebraic(x, y, v)?;
            let mut sorted = m.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m.len() || m.len() != x.sections(self.preimage(v))?.order() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self` then `next`: `X -> Y -> Z`.
    pub fn then(&self, next: &SchemeMorphism) -> SchemeMorphism {
        let point_map = self.point_map.iter().map(|&p| next.point_map[p]).collect();
        let value_maps = (0..self.point_map.len())
            .map(|x| {
                let y = self.point_map[x];
                next.value_maps[y].iter().map(|&v| self.value_maps[x][v]).collect()
            })
            .collect();
        SchemeMorphism { point_map, value_maps }
    }
}

/// `(i_f, i_f♯): Spec(H') -> Spec(H)` for `f: H -> H'`. `x` is the affine
/// scheme of the target of `f`, `y` that of the source.
pub fn induced_morphism(f: &GMorphism, x: &GScheme, y: &GScheme) -> Result<SchemeMorphism> {
    let (Some(sx), Some(sy)) = (x.spectrum(), y.spectrum()) else {
        return Err(Error::Unsupported("induced morphisms need affine schemes".into()));
    };
    if sx.object() != &f.target || sy.object() != &f.source {
        return Err(Error::ContextMismatch);
    }
    let ax = x.affine_data()?;
    let ay = y.affine_data()?;
    let mut point_map = Vec::with_capacity(x.len());
    let mut value_maps = Vec::with_capacity(x.len());
    for (l, prime) in sx.primes().iter().enumerate() {
        let pre = f.map.preimage(prime);
        if pre.is_whole() {
            return Err(Error::NotProper);
        }
        let Some(p) = sy.index_of(&pre) else {
            return Err(Error::NotPrime(format!(
                "preimage {} of {} is not in the source spectrum",
                pre.label(f.source.carrier()),
                prime.label(f.target.carrier())
            )));
        };
        let qp = &ay.quotients[p];
        let ql = &ax.quotients[l];
        point_map.push(p);
        value_maps.push((0..qp.table.order()).map(|c| ql.project(f.map.apply(qp.lift(c)))).collect());
    }
    Ok(SchemeMorphism { point_map, value_maps })
}

/// The morphism induced by `H -> H/I` and how it sits in `Spec(H)`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: GScheme,
    pub target: GScheme,
    pub morphism: SchemeMorphism,
    pub report: MorphismReport,
    pub image: PointSet,
    /// The image is `V(I)`.
    pub image_is_vanishing_set: bool,
    /// Injective on points and a homeomorphism onto the image.
    pub embedding: bool,
    pub isomorphism: bool,
}

pub fn embed_quotient(obj: &GGroup, ideal: &Subgroup, variant: Variant, def: PrimeDef) -> Result<Embedding> {
    if ideal.is_whole() {
        return Err(Error::NotProper);
    }
    let (qobj, q) = obj.quotient(ideal)?;
    let f = GMorphism::new(obj.clone(), qobj.clone(), q.projection.images().to_vec())?;
    let sy = Spectrum::new(obj, variant, def)?;
    let sx = Spectrum::new(&qobj, variant, def)?;
    let y = GScheme::affine(&sy)?;
    let x = GScheme::affine(&sx)?;
    let morphism = induced_morphism(&f, &x, &y)?;
    let report = morphism.check(&x, &y)?;
    let image: PointSet = morphism.point_map.iter().copied().collect();
    let image_is_vanishing_set = sy.vanishing_set(ideal)?.members == image;
    let injective = image.len() == x.len();
    // every open of the source is the preimage of an open of the target
    let mut pulled: Vec<PointSet> = y.opens().iter().map(|&v| morphism.preimage(v)).collect();
    pulled.sort_by_key(|o| (o.len(), o.bits()));
    pulled.dedup();
    let embedding = report.passes() && injective && pulled == x.opens();
    let isomorphism = morphism.is_isomorphism(&x, &y)?;
    Ok(Embedding { source: x, target: y, morphism, report, image, image_is_vanishing_set, embedding, isomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{self, GroupTable};
    use crate::gobject::enumerate_g_morphisms;
    use alloc::sync::Arc;

    #[test]
    fn identity_passes() {
        let obj = GGroup::identity(Arc::new(GroupTable::symmetric(5)));
        let x = GScheme::affine(&Spectrum::new(&obj, Variant::T2, PrimeDef::Elementwise).unwrap()).unwrap();
        let id = SchemeMorphism::identity(&x);
        assert!(id.check(&x, &x).unwrap().passes());
        assert!(id.is_isomorphism(&x, &x).unwrap());
        let f = &enumerate_g_morphisms(&obj, &obj).unwrap()[0];
        assert_eq!(induced_morphism(f, &x, &x).unwrap(), id);
    }

    #[test]
    fn s5_onto_sign() {
        let s5 = Arc::new(GroupTable::symmetric(5));
        let obj = GGroup::identity(s5.clone());
        let a5 = fingroup::commutator_subgroup(&s5, &Subgroup::whole(&s5), &Subgroup::whole(&s5));
        let e = embed_quotient(&obj, &a5, Variant::T2, PrimeDef::Elementwise).unwrap();
        assert_eq!(e.source.len(), 1);
        assert!(e.report.passes());
        assert!(e.image_is_vanishing_set && e.embedding);
        assert!(!e.isomorphism);
        assert_eq!(e.image, PointSet::singleton(1));
    }

    #[test]
    fn radical_quotient_is_isomorphism() {
        let a5 = GroupTable::alternating(5);
        let obj = GGroup::identity(Arc::new(GroupTable::direct_product(&a5, &a5)));
        let one = Subgroup::trivial(obj.carrier());
        let e = embed_quotient(&obj, &one, Variant::T1, PrimeDef::Quotient).unwrap();
        assert!(e.isomorphism);
    }

    #[test]
    fn z4_onto_z2() {
        let z4 = Arc::new(GroupTable::cyclic(4));
        let obj = GGroup::identity(z4.clone());
        let two = fingroup::generate(&z4, [2]);
        let e = embed_quotient(&obj, &two, Variant::T2, PrimeDef::Elementwise).unwrap();
        assert!(e.report.passes(), "{:?}", e.report.failures);
        assert!(e.embedding);
        let spec = e.target.spectrum().unwrap();
        assert_eq!(spec.prime(e.morphism.point_map[0]), &two);
    }
}
