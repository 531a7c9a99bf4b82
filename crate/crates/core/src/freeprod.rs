//! Words in the free product `G * F(X_1, ..., X_n)`.
//!
//! A reduced word alternates coefficient syllables (non-identity elements of
//! `G`) and letter syllables `X_i^e` with `e != 0`; adjacent letter syllables
//! carry distinct variables. Word length is the number of syllables.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use crate::fingroup::GroupTable;
use crate::gobject::{GGroup, Variant};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    Coef(usize),
    /// `X_var^exp` with `var` in `1..=n`.
    Letter { var: usize, exp: i32 },
}

impl Syllable {
    fn key(&self) -> (u8, usize, u32, bool) {
        match *self {
            Syllable::Coef(g) => (0, g, 0, false),
            Syllable::Letter { var, exp } => (1, var, exp.unsigned_abs(), exp < 0),
        }
    }

    fn same_kind(&self, other: &Syllable) -> bool {
        match (self, other) {
            (Syllable::Coef(_), Syllable::Coef(_)) => true,
            (Syllable::Letter { var: a, .. }, Syllable::Letter { var: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Ord for Syllable {
    /// Coefficients before letters; letters by variable, then `1, -1, 2, -2, ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Syllable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A reduced word. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Ord for Word {
    /// Shorter words first, then syllable-wise.
    fn cmp(&self, other: &Self) -> Ordering {
        self.syllables.len().cmp(&other.syllables.len()).then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The identity or a single coefficient syllable, i.e. an element of `G`.
    pub fn is_constant(&self) -> bool {
        matches!(self.syllables.as_slice(), [] | [Syllable::Coef(_)])
    }

    fn max_abs_exp(&self) -> u32 {
        self.syllables
            .iter()
            .map(|s| match s {
                Syllable::Letter { exp, .. } => exp.unsigned_abs(),
                Syllable::Coef(_) => 1,
            })
            .max()
            .unwrap_or(1)
    }
}

/// The ambient free product: coefficient group and number of variables.
#[derive(Clone, Debug)]
pub struct WordContext {
    group: Arc<GroupTable>,
    vars: usize,
}

impl PartialEq for WordContext {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl WordContext {
    pub fn new(group: Arc<GroupTable>, vars: usize) -> Self {
        WordContext { group, vars }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn identity(&self) -> Word {
        Word::default()
    }

    /// `c_g`
    pub fn constant(&self, g: usize) -> Result<Word> {
        self.reduce(&[Syllable::Coef(g)])
    }

    /// `X_i`
    pub fn variable(&self, var: usize) -> Result<Word> {
        self.reduce(&[Syllable::Letter { var, exp: 1 }])
    }

    fn check(&self, s: &Syllable) -> Result<()> {
        match *s {
            Syllable::Coef(g) => self.group.check_element(g),
            Syllable::Letter { var, .. } if var == 0 || var > self.vars => {
                Err(Error::VariableOutOfRange { var, vars: self.vars })
            }
            Syllable::Letter { .. } => Ok(()),
        }
    }

    /// Free-product normal form of an arbitrary syllable sequence.
    pub fn reduce(&self, raw: &[Syllable]) -> Result<Word> {
        for s in raw {
            self.check(s)?;
        }
        let mut out = Vec::with_capacity(raw.len());
        for &s in raw {
            self.push(&mut out, s);
        }
        Ok(Word { syllables: out })
    }

    fn push(&self, stack: &mut Vec<Syllable>, s: Syllable) {
        let s = match s {
            Syllable::Coef(g) if g == self.group.identity() => return,
            Syllable::Letter { exp: 0, .. } => return,
            s => s,
        };
        match stack.last().copied() {
            Some(top) if top.same_kind(&s) => {
                stack.pop();
                let merged = match (top, s) {
                    (Syllable::Coef(a), Syllable::Coef(b)) => Syllable::Coef(self.group.mul(a, b)),
                    (Syllable::Letter { var, exp: a }, Syllable::Letter { exp: b, .. }) => {
                        Syllable::Letter { var, exp: a + b }
                    }
                    _ => unreachable!(),
                };
                self.push(stack, merged);
            }
            _ => stack.push(s),
        }
    }

    pub fn mul(&self, a: &Word, b: &Word) -> Word {
        let mut out = a.syllables.clone();
        for &s in &b.syllables {
            self.push(&mut out, s);
        }
        Word { syllables: out }
    }

    pub fn inverse(&self, a: &Word) -> Word {
        let syllables = a
            .syllables
            .iter()
            .rev()
            .map(|&s| match s {
                Syllable::Coef(g) => Syllable::Coef(self.group.inv(g)),
                Syllable::Letter { var, exp } => Syllable::Letter { var, exp: -exp },
            })
            .collect();
        Word { syllables }
    }

    pub fn pow(&self, a: &Word, k: i64) -> Word {
        let base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// `u w u^-1`
    pub fn conjugate(&self, u: &Word, w: &Word) -> Word {
        self.mul(&self.mul(u, w), &self.inverse(u))
    }

    pub fn commutator(&self, a: &Word, b: &Word) -> Word {
        self.mul(&self.mul(a, b), &self.mul(&self.inverse(a), &self.inverse(b)))
    }

    pub fn commute(&self, a: &Word, b: &Word) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Image of `w` under `g -> f(g)`, `X_i -> assignment[i-1]`.
    pub fn evaluate(&self, w: &Word, target: &GGroup, assignment: &[usize]) -> Result<usize> {
        if target.base().as_ref() != self.group.as_ref() {
            return Err(Error::ContextMismatch);
        }
        if assignment.len() != self.vars {
            return Err(Error::ArityMismatch { expected: self.vars, found: assignment.len() });
        }
        let h = target.carrier();
        for &a in assignment {
            h.check_element(a)?;
        }
        Ok(self.fold(w, h, |g| target.act(g), assignment))
    }

    /// `e_x(w)` for `x` in `G^n`: evaluation in `G` itself.
    pub fn evaluate_at(&self, w: &Word, point: &[usize]) -> Result<usize> {
        if point.len() != self.vars {
            return Err(Error::ArityMismatch { expected: self.vars, found: point.len() });
        }
        for &a in point {
            self.group.check_element(a)?;
        }
        Ok(self.fold(w, &self.group, |g| g, point))
    }

    pub(crate) fn fold(&self, w: &Word, h: &GroupTable, act: impl Fn(usize) -> usize, point: &[usize]) -> usize {
        w.syllables.iter().fold(h.identity(), |acc, s| {
            let v = match *s {
                Syllable::Coef(g) => act(g),
                Syllable::Letter { var, exp } => h.pow(point[var - 1], exp as i64),
            };
            h.mul(acc, v)
        })
    }

    /// Distinct generators `c_g x c_g^-1` of `G(x)`, starting with `x`.
    pub fn span_generators(&self, x: &Word) -> Vec<Word> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let order = core::iter::once(self.group.identity()).chain(self.group.elements());
        for g in order {
            let c = Word { syllables: if g == self.group.identity() { Vec::new() } else { alloc::vec![Syllable::Coef(g)] } };
            let conj = self.conjugate(&c, x);
            if seen.insert(conj.clone()) {
                out.push(conj);
            }
        }
        out
    }

    /// The syllable alphabet in canonical order.
    fn alphabet(&self, max_exp: u32) -> Vec<Syllable> {
        let mut out: Vec<Syllable> =
            self.group.elements().filter(|&g| g != self.group.identity()).map(Syllable::Coef).collect();
        for var in 1..=self.vars {
            for e in 1..=max_exp as i32 {
                out.push(Syllable::Letter { var, exp: e });
                out.push(Syllable::Letter { var, exp: -e });
            }
        }
        out
    }

    /// All reduced words with at most `max_len` syllables and letter
    /// exponents bounded by `max_exp`, in canonical order (identity first).
    pub fn words_up_to(&self, max_len: usize, max_exp: u32) -> Vec<Word> {
        let alphabet = self.alphabet(max_exp);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        for len in 0..=max_len {
            enumerate(&alphabet, len, &mut cur, &mut out);
        }
        out
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(self.identity());
        }
        let mut raw = Vec::new();
        for token in text.split('*') {
            let token = token.trim();
            let (head, exp) = match token.split_once('^') {
                Some((h, e)) => {
                    let e: i32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    (h.trim(), e)
                }
                None => (token, 1),
            };
            let index = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse(format!("bad index in `{token}`")))
            };
            if let Some(k) = head.strip_prefix('g') {
                let g = index(k)?;
                self.group.check_element(g)?;
                let g = self.group.pow(g, exp as i64);
                raw.push(Syllable::Coef(g));
            } else if let Some(k) = head.strip_prefix('X') {
                raw.push(Syllable::Letter { var: index(k)?, exp });
            } else {
                return Err(Error::Parse(format!("unknown syllable `{token}`")));
            }
        }
        self.reduce(&raw)
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_identity() {
            return String::from("1");
        }
        let mut out = String::new();
        for (i, s) in w.syllables.iter().enumerate() {
            if i > 0 {
                out.push_str(" * ");
            }
            let _ = match *s {
                Syllable::Coef(g) => write!(out, "g{g}"),
                Syllable::Letter { var, exp: 1 } => write!(out, "X{var}"),
                Syllable::Letter { var, exp } => write!(out, "X{var}^{exp}"),
            };
        }
        out
    }
}

fn enumerate(alphabet: &[Syllable], len: usize, cur: &mut Vec<Syllable>, out: &mut Vec<Word>) {
    if cur.len() == len {
        out.push(Word { syllables: cur.clone() });
        return;
    }
    for &s in alphabet {
        if let Some(prev) = cur.last() {
            if prev.same_kind(&s) {
                continue;
            }
        }
        cur.push(s);
        enumerate(alphabet, len, cur, out);
        cur.pop();
    }
}

/// Evidence attached to a bounded witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every pair of span generators commutes; `pairs` pairs were reduced.
    Commuting { pairs: usize },
    /// Both spans are cyclic and no common non-trivial power was found with
    /// exponents up to `power_bound`.
    TrivialIntersection { power_bound: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub certificate: Certificate,
}

/// How an element of the free product generates its cyclic span.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Torsion {
    Identity,
    Finite(usize),
    Infinite,
}

/// Bounded search for divisor-of-zero witnesses, reusing one candidate list
/// across many queries.
pub struct DivisorSearch {
    ctx: WordContext,
    candidates: Vec<(Word, Vec<Word>)>,
}

impl DivisorSearch {
    pub fn new(ctx: &WordContext, max_len: usize, max_exp: u32) -> Self {
        let candidates = ctx
            .words_up_to(max_len, max_exp)
            .into_iter()
            .filter(|w| !w.is_identity())
            .map(|w| {
                let gens = ctx.span_generators(&w);
                (w, gens)
            })
            .collect();
        DivisorSearch { ctx: ctx.clone(), candidates }
    }

    pub fn candidates(&self) -> impl Iterator<Item = &Word> {
        self.candidates.iter().map(|(w, _)| w)
    }

    /// First candidate `y` (canonical order) that makes `x` a divisor of zero.
    ///
    /// `T2` is only decided when `G(x)` is certified cyclic; candidates whose
    /// span is not cyclic are skipped, and if one of them precedes the
    /// answer the result is inconclusive.
    pub fn witness(&self, x: &Word, variant: Variant) -> Result<Option<Witness>> {
        if x.is_identity() {
            return Err(Error::IdentityElement);
        }
        let gx = self.ctx.span_generators(x);
        match variant {
            Variant::T1 => {
                for (y, gy) in &self.candidates {
                    if all_commute(&self.ctx, &gx, gy) {
                        let pairs = gx.len() * gy.len();
                        return Ok(Some(Witness { word: y.clone(), certificate: Certificate::Commuting { pairs } }));
                    }
                }
                Ok(None)
            }
            Variant::T2 => {
                let tx = self.ctx.cyclic_torsion(x, &gx).ok_or_else(|| {
                    Error::Inconclusive(format!("span of {} is not certified cyclic", self.ctx.format(x)))
                })?;
                let mut skipped = false;
                for (y, gy) in &self.candidates {
                    let Some(ty) = self.ctx.cyclic_torsion(y, gy) else {
                        skipped = true;
                        continue;
                    };
                    if let Meet::Trivial(bound) = self.ctx.cyclic_meet(x, tx, y, ty) {
                        if skipped {
                            return Err(Error::Inconclusive(
                                "a candidate with non-cyclic span precedes the first witness".into(),
                            ));
                        }
                        return Ok(Some(Witness {
                            word: y.clone(),
                            certificate: Certificate::TrivialIntersection { power_bound: bound },
                        }));
                    }
                }
                if skipped {
                    Err(Error::Inconclusive("candidates with non-cyclic spans were skipped".into()))
                } else {
                    Ok(None)
                }
            }
        }
    }

}

/// Outcome of comparing two cyclic spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Meet {
    /// No common non-trivial power up to the bound.
    Trivial(u32),
    /// A non-trivial element of both spans.
    Common(Word),
}

impl WordContext {
    pub(crate) fn torsion(&self, w: &Word) -> Torsion {
        let s = &w.syllables;
        if s.is_empty() {
            return Torsion::Identity;
        }
        let (mut i, mut j) = (0, s.len() - 1);
        while j >= i + 2 && is_inverse(&self.group, &s[i], &s[j]) {
            i += 1;
            j -= 1;
        }
        match (i == j, s[i]) {
            (true, Syllable::Coef(c)) => Torsion::Finite(self.group.element_order(c)),
            _ => Torsion::Infinite,
        }
    }

    /// `Some(torsion)` when every span generator is a power of `w`.
    pub(crate) fn cyclic_torsion(&self, w: &Word, gens: &[Word]) -> Option<Torsion> {
        let t = self.torsion(w);
        let powers: Vec<Word> = match t {
            Torsion::Identity => return Some(t),
            Torsion::Finite(m) => (0..m as i64).map(|k| self.pow(w, k)).collect(),
            // Conjugates keep the cyclic length, so only w^{±1} can occur.
            Torsion::Infinite => alloc::vec![w.clone(), self.inverse(w)],
        };
        gens.iter().all(|g| powers.contains(g)).then_some(t)
    }

    /// Compares `<x>` and `<y>` for words with cyclic spans.
    pub(crate) fn cyclic_meet(&self, x: &Word, tx: Torsion, y: &Word, ty: Torsion) -> Meet {
        fn common(px: &[Word], mut ys: impl Iterator<Item = Word>) -> Option<Word> {
            ys.find(|w| px.contains(w))
        }
        match (tx, ty) {
            (Torsion::Identity, _) | (_, Torsion::Identity) => Meet::Trivial(0),
            (Torsion::Finite(_), Torsion::Infinite) | (Torsion::Infinite, Torsion::Finite(_)) => Meet::Trivial(0),
            (Torsion::Finite(m), Torsion::Finite(k)) => {
                let px: Vec<Word> = (1..m as i64).map(|a| self.pow(x, a)).collect();
                match common(&px, (1..k as i64).map(|b| self.pow(y, b))) {
                    Some(w) => Meet::Common(w),
                    None => Meet::Trivial(m.max(k) as u32),
                }
            }
            (Torsion::Infinite, Torsion::Infinite) => {
                let bound = ((x.len() + y.len()) as u32) * x.max_abs_exp().max(y.max_abs_exp()) + 1;
                let px: Vec<Word> = (1..=bound as i64).map(|a| self.pow(x, a)).collect();
                let ys = (1..=bound as i64).flat_map(|b| [self.pow(y, b), self.pow(y, -b)]);
                match common(&px, ys) {
                    Some(w) => Meet::Common(w),
                    None => Meet::Trivial(bound),
                }
            }
        }
    }

    /// Errors unless every syllable of `w` is valid in this context.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.syllables.iter().try_for_each(|s| self.check(s)).map_err(|_| Error::ContextMismatch)
    }
}

fn is_inverse(g: &GroupTable, a: &Syllable, b: &Syllable) -> bool {
    match (*a, *b) {
        (Syllable::Coef(x), Syllable::Coef(y)) => g.inv(x) == y,
        (Syllable::Letter { var: v, exp: e }, Syllable::Letter { var: w, exp: f }) => v == w && e == -f,
        _ => false,
    }
}

fn all_commute(ctx: &WordContext, gx: &[Word], gy: &[Word]) -> bool {
    gx.iter().all(|a| gy.iter().all(|b| ctx.commute(a, b)))
}

/// One-shot bounded witness search over words of length `<= max_len` with
/// letter exponents bounded by `max_exp`.
pub fn bounded_divisor_witness(
    ctx: &WordContext,
    x: &Word,
    variant: Variant,
    max_len: usize,
    max_exp: u32,
) -> Result<Option<Witness>> {
    if max_len == 0 {
        return Err(Error::Inconclusive("max_len must be at least 1".into()));
    }
    DivisorSearch::new(ctx, max_len, max_exp).witness(x, variant)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, vars: usize) -> WordContext {
        WordContext::new(Arc::new(GroupTable::cyclic(n)), vars)
    }

    #[test]
    fn reduce_cancels() {
        let ctx = WordContext::new(Arc::new(GroupTable::symmetric(3)), 1);
        let raw = [
            Syllable::Coef(1),
            Syllable::Coef(0),
            Syllable::Letter { var: 1, exp: 1 },
            Syllable::Letter { var: 1, exp: -1 },
            Syllable::Coef(2),
        ];
        let w = ctx.reduce(&raw).unwrap();
        assert_eq!(w.syllables(), &[Syllable::Coef(ctx.group().mul(1, 2))]);
    }

    #[test]
    fn reduce_z2_cancellation() {
        let ctx = z(2, 1);
        let u = ctx.parse("g1 * X1 * g1 * X1^-1").unwrap();
        let v = ctx.parse("X1 * g1 * X1^-1 * g1").unwrap();
        assert!(ctx.mul(&u, &v).is_identity());
        assert_eq!(ctx.conjugate(&ctx.constant(1).unwrap(), &u), v);
    }

    #[test]
    fn reduce_is_idempotent_and_checks_ranges() {
        let ctx = z(3, 2);
        let w = ctx.parse("g1 * X1^2 * g2 * X2^-1").unwrap();
        assert_eq!(ctx.reduce(w.syllables()).unwrap(), w);
        assert_eq!(
            ctx.reduce(&[Syllable::Letter { var: 3, exp: 1 }]),
            Err(Error::VariableOutOfRange { var: 3, vars: 2 })
        );
        assert!(ctx.reduce(&[Syllable::Coef(3)]).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let a5 = Arc::new(GroupTable::alternating(5));
        let ctx = WordContext::new(a5.clone(), 1);
        let target = GGroup::identity(a5.clone());
        let x = a5.elements().find(|&e| a5.label(e) == "(1 2)(3 4)").unwrap();
        let w = ctx.parse("X1^2").unwrap();
        assert_eq!(ctx.evaluate(&w, &target, &[x]).unwrap(), a5.identity());
        let c = ctx.constant(7).unwrap();
        assert_eq!(ctx.evaluate(&c, &target, &[x]).unwrap(), 7);
        assert_eq!(ctx.evaluate(&ctx.variable(1).unwrap(), &target, &[x]).unwrap(), x);
        assert_eq!(ctx.evaluate(&w, &target, &[]), Err(Error::ArityMismatch { expected: 1, found: 0 }));
    }

    #[test]
    fn word_enumeration_is_canonical() {
        let ctx = z(3, 1);
        let words = ctx.words_up_to(3, 1);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        assert!(words[0].is_identity());
        // length 1: 2 coefs + 2 letters; length 2: 2*2 + 2*2
        assert_eq!(words.iter().filter(|w| w.len() == 1).count(), 4);
        assert_eq!(words.iter().filter(|w| w.len() == 2).count(), 8);
        for w in &words {
            assert_eq!(&ctx.reduce(w.syllables()).unwrap(), w);
        }
    }

    #[test]
    fn witness_for_z2_self_commuting_word() {
        let ctx = z(2, 1);
        let x = ctx.parse("g1 * X1 * g1 * X1^-1").unwrap();
        let w = bounded_divisor_witness(&ctx, &x, Variant::T1, 4, 1).unwrap().unwrap();
        assert_eq!(w.word, x);
    }

    #[test]
    fn no_witness_for_variable_over_z3() {
        let ctx = z(3, 1);
        let x = ctx.variable(1).unwrap();
        assert_eq!(bounded_divisor_witness(&ctx, &x, Variant::T1, 5, 1).unwrap(), None);
    }

    #[test]
    fn constant_witness_over_z3() {
        let ctx = z(3, 1);
        let x = ctx.constant(1).unwrap();
        let w = bounded_divisor_witness(&ctx, &x, Variant::T1, 2, 1).unwrap().unwrap();
        assert_eq!(w.word, x);
    }

    #[test]
    fn t2_requires_cyclic_span() {
        let ctx = WordContext::new(Arc::new(GroupTable::symmetric(3)), 1);
        let x = ctx.variable(1).unwrap();
        assert!(matches!(bounded_divisor_witness(&ctx, &x, Variant::T2, 2, 1), Err(Error::Inconclusive(_))));
        // over Z/2 the span of g X g X^-1 is cyclic, and constants meet it trivially
        let ctx = z(2, 1);
        let x = ctx.parse("g1 * X1 * g1 * X1^-1").unwrap();
        let w = bounded_divisor_witness(&ctx, &x, Variant::T2, 1, 1).unwrap().unwrap();
        assert_eq!(w.word, ctx.constant(1).unwrap());
    }

    #[test]
    fn format_round_trips() {
        let ctx = z(3, 2);
        let w = ctx.parse("g2 * X1^2 * g1 * X2^-1").unwrap();
        assert_eq!(ctx.format(&w), "g2 * X1^2 * g1 * X2^-1");
        assert_eq!(ctx.parse(&ctx.format(&w)).unwrap(), w);
        assert!(ctx.parse("h1").is_err());
    }
}
