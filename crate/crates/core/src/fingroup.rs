//! Finite groups given by full multiplication tables.
//!
//! Elements are indices `0..order`. The canonical order of a table is its
//! construction order; every set-valued result is emitted sorted.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use crate::{Error, Result};

/// Largest order a table may have (entries are stored as `u16`).
pub const MAX_ORDER: usize = u16::MAX as usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<usize>,
    id: usize,
    gens: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Validates a Cayley table given row by row.
    ///
    /// Associativity is checked with Light's test over a greedy generating
    /// set, so validation costs `O(n^2 * |gens|)`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidTable(format!("order {n} exceeds {MAX_ORDER}")));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::ElementOutOfRange { index: v, order: n });
                }
                mul.push(v as u16);
            }
        }
        Self::validate(n, mul, None)
    }

    fn validate(n: usize, mul: Vec<u16>, labels: Option<Vec<String>>) -> Result<Self> {
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let id = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        for a in 0..n {
            let b = (0..n)
                .find(|&b| at(a, b) == id)
                .ok_or_else(|| Error::InvalidTable(format!("element {a} has no inverse")))?;
            if at(b, a) != id {
                return Err(Error::InvalidTable(format!("inverse of {a} is not two-sided")));
            }
        }
        // Rows and columns must be permutations for right-multiplication closure to work.
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let v = at(a, b);
                if seen[v] {
                    return Err(Error::InvalidTable(format!("row {a} repeats element {v}")));
                }
                seen[v] = true;
            }
        }
        let table = Self::from_raw(n, mul, id, labels);
        for &g in &table.gens {
            for x in 0..n {
                for y in 0..n {
                    if table.mul(table.mul(x, g), y) != table.mul(x, table.mul(g, y)) {
                        return Err(Error::InvalidTable(format!("not associative at ({x}, {g}, {y})")));
                    }
                }
            }
        }
        Ok(table)
    }

    /// Builds a table that is already known to be a group.
    pub(crate) fn from_raw(n: usize, mul: Vec<u16>, id: usize, labels: Option<Vec<String>>) -> Self {
        let mut inv = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] as usize == id {
                    inv[a] = b;
                    break;
                }
            }
        }
        let mut table = GroupTable { order: n, mul, inv, id, gens: Vec::new(), labels };
        table.gens = table.greedy_generators();
        table
    }

    fn from_fn(n: usize, id: usize, labels: Option<Vec<String>>, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(f(a, b) as u16);
            }
        }
        Self::from_raw(n, mul, id, labels)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` written additively; element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n));
        let labels = (0..n).map(|k| k.to_string()).collect();
        Self::from_fn(n, 0, Some(labels), |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n`. Element `a + n*b` is `r^a s^b`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..2 * n)
            .map(|k| {
                let (a, b) = (k % n, k / n);
                match (a, b) {
                    (0, 0) => "1".to_string(),
                    (a, 0) => format!("r^{a}"),
                    (0, _) => "s".to_string(),
                    (a, _) => format!("r^{a}s"),
                }
            })
            .collect();
        Self::from_fn(2 * n, 0, Some(labels), |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b+d)
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            rot + n * ((b + d) % 2)
        })
    }

    /// Quaternion group in the order `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion8() -> Self {
        // unit product: (sign, unit) for units 1, i, j, k
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        Self::from_fn(8, 0, Some(labels), |x, y| {
            let (ux, sx) = (x / 2, x % 2 == 1);
            let (uy, sy) = (y / 2, y % 2 == 1);
            let (s, u) = UNIT[ux][uy];
            2 * u + usize::from(s ^ sx ^ sy)
        })
    }

    /// Element `(a, b)` has index `a * |right| + b`.
    pub fn direct_product(left: &GroupTable, right: &GroupTable) -> Self {
        let m = right.order;
        let n = left.order * m;
        assert!(n <= MAX_ORDER, "direct product too large");
        let labels = (0..n).map(|k| format!("({},{})", left.label(k / m), right.label(k % m))).collect();
        Self::from_fn(n, left.id * m + right.id, Some(labels), |x, y| {
            left.mul(x / m, y / m) * m + right.mul(x % m, y % m)
        })
    }

    /// Symmetric group on `n` points, permutations in lexicographic order of
    /// their image lists.
    pub fn symmetric(n: usize) -> Self {
        Self::from_permutation_list(all_permutations(n))
    }

    /// Alternating group on `n` points, lexicographic order.
    pub fn alternating(n: usize) -> Self {
        let perms = all_permutations(n).into_iter().filter(|p| is_even(p)).collect();
        Self::from_permutation_list(perms)
    }

    /// Closure of the given permutations of `0..degree` (as image lists),
    /// sorted lexicographically so the identity comes first.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        let identity: Vec<usize> = (0..degree).collect();
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&v| v >= degree || core::mem::replace(&mut seen[v], true)) {
                return Err(Error::InvalidTable(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = compose(&p, g);
                if !found.contains(&q) {
                    if found.len() >= MAX_ORDER {
                        return Err(Error::TooLarge { cap: MAX_ORDER });
                    }
                    found.insert(q.clone());
                    frontier.push(q);
                }
            }
        }
        Ok(Self::from_permutation_list(found.into_iter().collect()))
    }

    fn from_permutation_list(perms: Vec<Vec<usize>>) -> Self {
        let n = perms.len();
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                mul.push(index(&compose(a, b)) as u16);
            }
        }
        Self::from_raw(n, mul, 0, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a b a^-1 b^-1`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.id;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, &a)| self.gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// Greedy generating set: scan elements in canonical order, keep those not
    /// already generated.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = Subgroup::trivial(self);
        for e in self.elements() {
            if !current.contains(e) {
                gens.push(e);
                current = generate(self, gens.iter().copied());
                if current.order() == self.order {
                    break;
                }
            }
        }
        gens
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidTable("label count does not match order".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { index: a, order: self.order })
        }
    }
}

/// `(a * b)(i) = a(b(i))`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    // next lexicographic permutation
    while let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) {
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// Cycle notation on points `1..=n`, `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut out = String::new();
    let mut seen = vec![false; p.len()];
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut i = s;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{}", i + 1);
            first = false;
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A subgroup as a flat membership table over the parent's indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    mask: Vec<bool>,
    elems: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl Ord for Subgroup {
    /// Canonical order: by size, then by member list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems.len().cmp(&other.elems.len()).then_with(|| self.elems.cmp(&other.elems))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub fn trivial(h: &GroupTable) -> Self {
        let mut mask = vec![false; h.order()];
        mask[h.identity()] = true;
        Subgroup { mask, elems: vec![h.identity()] }
    }

    pub fn whole(h: &GroupTable) -> Self {
        Subgroup { mask: vec![true; h.order()], elems: h.elements().collect() }
    }

    /// Checks closure; the set must contain the identity.
    pub fn from_elements(h: &GroupTable, elems: &[usize]) -> Result<Self> {
        let mut mask = vec![false; h.order()];
        for &e in elems {
            h.check_element(e)?;
            mask[e] = true;
        }
        let sub = Self::from_mask(mask);
        if !sub.contains(h.identity()) {
            return Err(Error::InvalidTable("subset does not contain the identity".into()));
        }
        for &a in &sub.elems {
            for &b in &sub.elems {
                if !sub.contains(h.mul(a, b)) {
                    return Err(Error::InvalidTable("subset is not closed under multiplication".into()));
                }
            }
        }
        Ok(sub)
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let elems = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Subgroup { mask, elems }
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.mask[a]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.mask.len()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&e| other.contains(e))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect();
        Self::from_mask(mask)
    }

    pub fn label(&self, h: &GroupTable) -> String {
        let mut out = String::from("{");
        for (i, &e) in self.elems.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&h.label(e));
        }
        out.push('}');
        out
    }
}

/// Subgroup generated by `gens`.
pub fn generate<I: IntoIterator<Item = usize>>(h: &GroupTable, gens: I) -> Subgroup {
    let n = h.order();
    let mut mask = vec![false; n];
    mask[h.identity()] = true;
    let mut elems = vec![h.identity()];
    let mut used: Vec<usize> = Vec::new();
    for g in gens {
        if mask[g] {
            continue;
        }
        used.push(g);
        // Old elements are closed under the old generators: only old * g and
        // new * everything remain.
        let old = elems.len();
        for k in 0..old {
            let p = h.mul(elems[k], g);
            if !mask[p] {
                mask[p] = true;
                elems.push(p);
            }
        }
        let mut k = old;
        while k < elems.len() {
            let e = elems[k];
            for &u in &used {
                let p = h.mul(e, u);
                if !mask[p] {
                    mask[p] = true;
                    elems.push(p);
                }
            }
            k += 1;
        }
        if elems.len() == n {
            break;
        }
    }
    elems.sort_unstable();
    Subgroup { mask, elems }
}

/// Smallest normal subgroup containing `set`.
pub fn normal_closure(h: &GroupTable, set: &[usize]) -> Subgroup {
    let mut current = generate(h, set.iter().copied());
    loop {
        let mut extra = Vec::new();
        for &g in h.generators() {
            for &x in current.elements() {
                let c = h.conj(g, x);
                if !current.contains(c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return current;
        }
        current = generate(h, current.elements().iter().copied().chain(extra));
    }
}

/// `[L, L']`, generated by all `l l' l^-1 l'^-1`.
pub fn commutator_subgroup(h: &GroupTable, l: &Subgroup, l2: &Subgroup) -> Subgroup {
    let mut seen = vec![false; h.order()];
    let mut comms = Vec::new();
    for &a in l.elements() {
        for &b in l2.elements() {
            let c = h.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    generate(h, comms)
}

pub fn is_normal(h: &GroupTable, s: &Subgroup) -> bool {
    h.generators().iter().all(|&g| s.elements().iter().all(|&x| s.contains(h.conj(g, x))))
}

/// `AB` for normal `A`, built as a union of cosets `Ab`.
fn product_of_normals(h: &GroupTable, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut mask = a.mask.clone();
    for &y in b.elements() {
        if mask[y] {
            continue;
        }
        for &x in a.elements() {
            mask[h.mul(x, y)] = true;
        }
    }
    Subgroup::from_mask(mask)
}

/// Subgroup generated by `A ∪ B`; both must be normal.
pub fn subgroup_product(h: &GroupTable, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if !is_normal(h, a) || !is_normal(h, b) {
        return Err(Error::NotNormal);
    }
    Ok(product_of_normals(h, a, b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    images: Vec<usize>,
}

impl Homomorphism {
    /// Checks `m(xg) = m(x)m(g)` for all `x` and generators `g`, plus
    /// `m(1) = 1`; together these force multiplicativity.
    pub fn new(source: &GroupTable, target: &GroupTable, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        for &v in &images {
            target.check_element(v)?;
        }
        if images[source.identity()] != target.identity() {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        for x in source.elements() {
            for &g in source.generators() {
                if images[source.mul(x, g)] != target.mul(images[x], images[g]) {
                    return Err(Error::NotHomomorphism(format!("fails on ({x}, {g})")));
                }
            }
        }
        Ok(Homomorphism { images })
    }

    pub(crate) fn new_unchecked(images: Vec<usize>) -> Self {
        Homomorphism { images }
    }

    pub fn identity(h: &GroupTable) -> Self {
        Homomorphism { images: h.elements().collect() }
    }

    pub fn trivial(source: &GroupTable, target: &GroupTable) -> Self {
        Homomorphism { images: vec![target.identity(); source.order()] }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn kernel(&self, target: &GroupTable) -> Subgroup {
        Subgroup::from_mask(self.images.iter().map(|&v| v == target.identity()).collect())
    }

    pub fn image(&self, target: &GroupTable) -> Subgroup {
        let mut mask = vec![false; target.order()];
        for &v in &self.images {
            mask[v] = true;
        }
        Subgroup::from_mask(mask)
    }

    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.images.iter().map(|&v| sub.contains(v)).collect())
    }

    pub fn is_injective(&self, target: &GroupTable) -> bool {
        self.kernel(target).is_trivial()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism { images: self.images.iter().map(|&v| other.apply(v)).collect() }
    }
}

#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub kernel: Subgroup,
    pub table: GroupTable,
    pub projection: Homomorphism,
    /// Least member of each coset, indexed by coset.
    pub representatives: Vec<usize>,
}

impl QuotientGroup {
    /// Canonical representative of the coset of `h`.
    pub fn lift(&self, coset: usize) -> usize {
        self.representatives[coset]
    }

    pub fn project(&self, h: usize) -> usize {
        self.projection.apply(h)
    }
}

/// `H/N` with cosets ordered by least member.
pub fn quotient(h: &GroupTable, n: &Subgroup) -> Result<QuotientGroup> {
    if n.parent_order() != h.order() || !is_normal(h, n) {
        return Err(Error::NotNormal);
    }
    let mut proj = vec![usize::MAX; h.order()];
    let mut reps = Vec::new();
    for x in h.elements() {
        if proj[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &k in n.elements() {
            proj[h.mul(x, k)] = c;
        }
    }
    let m = reps.len();
    let mut mul = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            mul.push(proj[h.mul(a, b)] as u16);
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", h.label(r))).collect();
    let table = GroupTable::from_raw(m, mul, proj[h.identity()], Some(labels));
    Ok(QuotientGroup {
        kernel: n.clone(),
        table,
        projection: Homomorphism::new_unchecked(proj),
        representatives: reps,
    })
}

/// `L = L_1 ⊇ L_2 = [L_1, L] ⊇ ...` until it stabilizes.
pub fn lower_central_series(h: &GroupTable, l: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![l.clone()];
    loop {
        let next = commutator_subgroup(h, series.last().unwrap(), l);
        if &next == series.last().unwrap() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_nilpotent(h: &GroupTable, l: &Subgroup) -> bool {
    lower_central_series(h, l).last().unwrap().is_trivial()
}

pub fn center(h: &GroupTable, l: &Subgroup) -> Subgroup {
    let mut mask = vec![false; h.order()];
    for &z in l.elements() {
        mask[z] = l.elements().iter().all(|&x| h.commute(x, z));
    }
    Subgroup::from_mask(mask)
}

/// Conjugacy classes, each sorted, ordered by least member.
pub fn conjugacy_classes(h: &GroupTable) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; h.order()];
    let mut classes = Vec::new();
    for x in h.elements() {
        if assigned[x] {
            continue;
        }
        let mut class = Vec::new();
        for g in h.elements() {
            let c = h.conj(g, x);
            if !assigned[c] {
                assigned[c] = true;
                class.push(c);
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// All normal subgroups ordered by `(size, members)`.
///
/// Every normal subgroup is the join of the normal closures of the classes
/// it contains, so joining class closures to a fixpoint finds them all.
pub fn normal_subgroups(h: &GroupTable) -> Vec<Subgroup> {
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    found.insert(Subgroup::trivial(h));
    for class in conjugacy_classes(h) {
        found.insert(generate(h, class));
    }
    loop {
        let current: Vec<Subgroup> = found.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                if a.is_subset(b) || b.is_subset(a) {
                    continue;
                }
                let j = product_of_normals(h, a, b);
                if found.insert(j) {
                    grew = true;
                }
            }
        }
        if !grew {
            return found.into_iter().collect();
        }
    }
}

pub fn is_simple(h: &GroupTable) -> Result<bool> {
    if h.order() == 1 {
        return Err(Error::TrivialGroup);
    }
    Ok(normal_subgroups(h).len() == 2)
}
