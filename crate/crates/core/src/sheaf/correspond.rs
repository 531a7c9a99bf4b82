use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{spectrum_is_irreducible, GScheme, LocalGroup, SchemeMorphism};
use crate::fingroup::{GroupTable, Subgroup};
use crate::gobject::{enumerate_g_morphisms, GGroup, GMorphism, Variant};
use crate::spectrum::{PrimeDef, Spectrum};
use crate::{Error, Result};

/// Search cap for point maps times value-map choices.
pub const MORPHISM_CAP: usize = 1 << 16;

fn local_ggroup(base: &alloc::sync::Arc<GroupTable>, l: &LocalGroup) -> Result<GGroup> {
    GGroup::new(base.clone(), l.table.clone(), l.structure.clone())
}

/// Every pointwise morphism `x -> y` that passes [`SchemeMorphism::check`].
pub fn enumerate_scheme_morphisms(x: &GScheme, y: &GScheme) -> Result<Vec<SchemeMorphism>> {
    if x.base() != y.base() {
        return Err(Error::ContextMismatch);
    }
    let (n, m) = (x.len(), y.len());
    let maps = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if m == 0 && n > 0 {
        return Ok(Vec::new());
    }
    if maps > MORPHISM_CAP as u128 {
        return Err(Error::TooLarge { cap: MORPHISM_CAP });
    }
    // value-map candidates for each (x point, y point)
    let mut choices: Vec<Vec<Vec<Vec<usize>>>> = Vec::with_capacity(n);
    for p in 0..n {
        let lx = local_ggroup(x.base(), x.local(p))?;
        let mut row = Vec::with_capacity(m);
        for q in 0..m {
            let ly = local_ggroup(y.base(), y.local(q))?;
            row.push(enumerate_g_morphisms(&ly, &lx)?.into_iter().map(|f| f.map.images().to_vec()).collect());
        }
        choices.push(row);
    }
    let mut out = Vec::new();
    let mut point_map = alloc::vec![0usize; n];
    let mut budget = MORPHISM_CAP;
    loop {
        let continuous = y.opens().iter().all(|&v| {
            x.is_open((0..n).filter(|&p| v.contains(point_map[p])).collect())
        });
        if continuous {
            let lists: Vec<&Vec<Vec<usize>>> = (0..n).map(|p| &choices[p][point_map[p]]).collect();
            if lists.iter().all(|l| !l.is_empty()) {
                let mut pick = alloc::vec![0usize; n];
                loop {
                    budget = budget.checked_sub(1).ok_or(Error::TooLarge { cap: MORPHISM_CAP })?;
                    let f = SchemeMorphism {
                        point_map: point_map.clone(),
                        value_maps: (0..n).map(|p| lists[p][pick[p]].clone()).collect(),
                    };
                    if f.check(x, y)?.passes() {
                        out.push(f);
                    }
                    if !advance(&mut pick, |i| lists[i].len()) {
                        break;
                    }
                }
            }
        }
        if !advance(&mut point_map, |_| m) {
            break;
        }
    }
    Ok(out)
}

/// Odometer step; `false` once every digit has wrapped.
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radix(i) {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// Round trip between scheme morphisms `x -> Spec(hobj)` and G-morphisms
/// from `O(Spec hobj)` to global sections of `x`.
#[derive(Clone, Debug)]
pub struct HomRoundtrip {
    pub g_morphisms: usize,
    pub scheme_morphisms: usize,
    /// Every G-morphism yields a passing scheme morphism.
    pub lift_valid: bool,
    /// Taking global sections of the lift gives back the G-morphism.
    pub sections_of_lift: bool,
    /// Lifting the global sections of a scheme morphism gives it back.
    pub lift_of_sections: bool,
    pub failures: Vec<String>,
}

impl HomRoundtrip {
    pub fn is_bijection(&self) -> bool {
        self.lift_valid && self.sections_of_lift && self.lift_of_sections && self.g_morphisms == self.scheme_morphisms
    }
}

/// The scheme morphism attached to `v: O(Y) -> O(X)`: a point `x` goes to
/// the prime of elements whose complete section vanishes at `x`.
fn lift(x: &GScheme, y: &GScheme, spec: &Spectrum, v: &GMorphism) -> Result<SchemeMorphism> {
    let h = spec.object().carrier();
    let l = y.complete_section_map(y.points())?;
    let gx = x.global_sections();
    let affine = y.affine_data()?;
    let mut point_map = Vec::with_capacity(x.len());
    let mut value_maps = Vec::with_capacity(x.len());
    for p in 0..x.len() {
        let id = x.local(p).table.identity();
        let value = |e: usize| gx.value_at(v.map.apply(l[e]), p);
        let q = Subgroup::from_mask(h.elements().map(|e| value(e) == id).collect());
        let qi = spec
            .index_of(&q)
            .ok_or_else(|| Error::NotPrime(format!("kernel at point {p} is {} and not a point", q.label(h))))?;
        let quo = &affine.quotients[qi];
        point_map.push(qi);
        value_maps.push((0..quo.table.order()).map(|c| value(quo.lift(c))).collect());
    }
    Ok(SchemeMorphism { point_map, value_maps })
}

/// Checks that global sections give a bijection between scheme morphisms
/// `x -> Spec(hobj)` and G-morphisms `O(Spec hobj) -> O(x)`.
pub fn scheme_hom_correspondence(x: &GScheme, hobj: &GGroup, variant: Variant, def: PrimeDef) -> Result<HomRoundtrip> {
    if x.base() != hobj.base() {
        return Err(Error::ContextMismatch);
    }
    if !x.is_locally_irreducible() {
        return Err(Error::Unsupported("source is not locally irreducible".into()));
    }
    let spec = Spectrum::new(hobj, variant, def)?;
    if !spectrum_is_irreducible(&spec) {
        return Err(Error::Unsupported("target spectrum is not irreducible".into()));
    }
    let y = GScheme::affine(&spec)?;
    let a = y.section_ggroup(y.points())?;
    let b = x.section_ggroup(x.points())?;
    let vs = enumerate_g_morphisms(&a, &b)?;
    let schemes = enumerate_scheme_morphisms(x, &y)?;
    let mut r = HomRoundtrip {
        g_morphisms: vs.len(),
        scheme_morphisms: schemes.len(),
        lift_valid: true,
        sections_of_lift: true,
        lift_of_sections: true,
        failures: Vec::new(),
    };
    for (i, v) in vs.iter().enumerate() {
        let f = match lift(x, &y, &spec, v) {
            Ok(f) => f,
            Err(e) => {
                r.lift_valid = false;
                r.failures.push(format!("morphism {i}: {e}"));
                continue;
            }
        };
        if !f.check(x, &y)?.passes() {
            r.lift_valid = false;
            r.failures.push(format!("morphism {i}: lift fails the morphism checks"));
            continue;
        }
        if f.algebraic(x, &y, y.points())? != v.map.images() {
            r.sections_of_lift = false;
            r.failures.push(format!("morphism {i}: global sections of the lift differ"));
        }
    }
    for (i, f) in schemes.iter().enumerate() {
        let images = f.algebraic(x, &y, y.points())?;
        let back = vs
            .iter()
            .find(|v| v.map.images() == images.as_slice())
            .map(|v| lift(x, &y, &spec, v))
            .transpose()?;
        if back.as_ref() != Some(f) {
            r.lift_of_sections = false;
            r.failures.push(format!("scheme morphism {i} is not recovered from its global sections"));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::PointSet;
    use alloc::sync::Arc;

    fn affine(h: GroupTable, v: Variant) -> (GGroup, GScheme) {
        let obj = GGroup::identity(Arc::new(h));
        let x = GScheme::affine(&Spectrum::new(&obj, v, PrimeDef::Elementwise).unwrap()).unwrap();
        (obj, x)
    }

    #[test]
    fn identity_is_enumerated() {
        let (_, x) = affine(GroupTable::symmetric(3), Variant::T1);
        let all = enumerate_scheme_morphisms(&x, &x).unwrap();
        assert!(all.contains(&SchemeMorphism::identity(&x)));
    }

    #[test]
    fn s5_self_correspondence() {
        let (obj, x) = affine(GroupTable::symmetric(5), Variant::T2);
        let r = scheme_hom_correspondence(&x, &obj, Variant::T2, PrimeDef::Elementwise).unwrap();
        assert!(r.is_bijection(), "{:?}", r.failures);
        assert_eq!(r.g_morphisms, 1);
    }

    #[test]
    fn glued_source() {
        let (obj, x) = affine(GroupTable::symmetric(5), Variant::T2);
        let g = PointSet::singleton(0);
        let iso = SchemeMorphism::identity(&x.restrict(g).unwrap());
        let d = super::super::glue(&x, &x, g, g, &iso).unwrap();
        let r = scheme_hom_correspondence(&d, &obj, Variant::T2, PrimeDef::Elementwise).unwrap();
        assert!(r.is_bijection(), "{:?}", r.failures);
    }

    #[test]
    fn reducible_target_rejected() {
        let (obj, x) = affine(GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2)), Variant::T2);
        assert!(scheme_hom_correspondence(&x, &obj, Variant::T2, PrimeDef::Elementwise).is_err());
    }
}
