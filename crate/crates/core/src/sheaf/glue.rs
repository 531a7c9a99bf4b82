use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{Chart, GScheme, SectionSet};
use crate::pointset::{PointSet, MAX_POINTS};
use crate::{Error, Result};

/// Glues `x1` and `x2` along opens `u1`, `u2` identified by `iso`, an
/// isomorphism from the restriction of `x1` to `u1` onto that of `x2` to
/// `u2`.
///
/// Points of the result are those of `x1` followed by those of `x2` outside
/// `u2`. A set is open when both preimages are open; sections are
/// compatible pairs, stored by their values.
pub fn glue(x1: &GScheme, x2: &GScheme, u1: PointSet, u2: PointSet, iso: &super::SchemeMorphism) -> Result<GScheme> {
    if x1.base() != x2.base() {
        return Err(Error::ContextMismatch);
    }
    let r1 = x1.restrict(u1)?;
    let r2 = x2.restrict(u2)?;
    if !iso.is_isomorphism(&r1, &r2)? {
        return Err(Error::NotIsomorphism("gluing data is not an isomorphism of the opens".into()));
    }
    let n1 = x1.len();
    let rest = x2.points().difference(u2);
    if n1 + rest.len() > MAX_POINTS {
        return Err(Error::TooLarge { cap: MAX_POINTS });
    }
    let u1_pts = u1.to_vec();
    let u2_pts = u2.to_vec();
    // x2 point -> glued point
    let mut j2 = alloc::vec![0; x2.len()];
    for (i, &p) in u1_pts.iter().enumerate() {
        j2[u2_pts[iso.point_map[i]]] = p;
    }
    for (k, q) in rest.iter().enumerate() {
        j2[q] = n1 + k;
    }
    let map2 = |b: PointSet| -> PointSet { b.iter().map(|q| j2[q]).collect() };

    let mut sections: BTreeMap<u64, SectionSet> = BTreeMap::new();
    for &a in x1.opens() {
        for &b in x2.opens() {
            if map2(b.intersection(u2)) != a.intersection(u1) {
                continue;
            }
            let w = a.union(map2(b));
            if sections.contains_key(&w.bits()) {
                continue;
            }
            sections.insert(w.bits(), glued_sections(x1, x2, a, b, u1, &u1_pts, iso, &j2, w)?);
        }
    }

    let mut labels: Vec<_> = x1.labels().iter().map(|l| format!("1/{l}")).collect();
    labels.extend(rest.iter().map(|q| format!("2/{}", x2.label(q))));
    let mut locals: Vec<_> = (0..n1).map(|p| x1.local(p).clone()).collect();
    locals.extend(rest.iter().map(|q| x2.local(q).clone()));
    let mut charts: Vec<Chart> = x1.charts().to_vec();
    for c in x2.charts() {
        let mut pairs: Vec<(usize, usize)> = c.points.iter().zip(&c.primes).map(|(q, &pr)| (j2[q], pr)).collect();
        pairs.sort_unstable();
        charts.push(Chart {
            points: pairs.iter().map(|&(p, _)| p).collect(),
            spectrum: c.spectrum.clone(),
            primes: pairs.iter().map(|&(_, pr)| pr).collect(),
        });
    }
    Ok(GScheme::from_parts(x1.base().clone(), labels, locals, sections.into_values().collect(), charts))
}

#[allow(clippy::too_many_arguments)]
fn glued_sections(
    x1: &GScheme,
    x2: &GScheme,
    a: PointSet,
    b: PointSet,
    u1: PointSet,
    u1_pts: &[usize],
    iso: &super::SchemeMorphism,
    j2: &[usize],
    w: PointSet,
) -> Result<SectionSet> {
    let s1 = x1.sections(a)?;
    let s2 = x2.sections(b)?;
    let overlap = a.intersection(u1);
    // key of a section of x2: its pulled-back values on the overlap, in x1 terms
    let mut by_key: BTreeMap<Vec<u16>, Vec<usize>> = BTreeMap::new();
    for t in 0..s2.order() {
        let key: Vec<u16> = overlap
            .iter()
            .map(|p| {
                let i = u1_pts.iter().position(|&q| q == p).unwrap();
                let q = b.iter().find(|&q| j2[q] == p).expect("overlap point lies in b");
                iso.value_maps[i][s2.value_at(t, q)] as u16
            })
            .collect();
        by_key.entry(key).or_default().push(t);
    }
    let mut tuples = Vec::new();
    for s in 0..s1.order() {
        let key: Vec<u16> = overlap.iter().map(|p| s1.value_at(s, p) as u16).collect();
        for &t in by_key.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
            let tuple: Vec<u16> = w
                .iter()
                .map(|p| {
                    if a.contains(p) {
                        s1.value_at(s, p) as u16
                    } else {
                        let q = b.iter().find(|&q| j2[q] == p).expect("point lies in b");
                        s2.value_at(t, q) as u16
                    }
                })
                .collect();
            tuples.push(tuple);
        }
    }
    Ok(SectionSet::new(w, tuples))
}
