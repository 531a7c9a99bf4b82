//! Audit suites. Each suite runs a family of mechanical checks over the
//! catalog (or a single group given with `--G`) and reports one line per
//! instance: pass, fail, or finding. Findings record known disagreements
//! between alternative definitions and never fail a run.

use std::fmt;
use std::sync::Arc;

use gscheme_core::fingroup::{commutator_subgroup, normal_closure};
use gscheme_core::freeprod::DivisorSearch;
use gscheme_core::gobject::{is_integral, GMorphism};
use gscheme_core::sheaf::{
    embed_quotient, glue, induced_morphism, noetherian_sections, scheme_hom_correspondence, spectrum_is_irreducible,
    vanishing_sections_prime,
};
use gscheme_core::spectrum::is_prime;
use gscheme_core::variety::{
    coordinate_group, factorization_certificate, format_point, hom_variety_correspondence, intersection_identity,
    maximality_probe, point_ideal_contains, probe_ideal_primality, shifted_point_ideal_contains, union_identity,
    variety_of, MaximalityCertificate, VarietyTopology, DEFAULT_PROBE_LEN,
};
use gscheme_core::{
    fingroup, GGroup, GScheme, GroupTable, PointSet, PrimeDef, SchemeMorphism, Spectrum, Subgroup, Variant, Word,
    WordContext,
};

use crate::catalog::{self, Entry, Scope};
use crate::error::{CliError, CliResult};
use crate::export::{point_list, subgroup_label, variant_name};

pub const SUITES: [&str; 23] = [
    "prop2.1",
    "prop2.2",
    "prop2.3",
    "prop2.4",
    "prop2.5",
    "prop2.6",
    "cor2.2",
    "thm2.1-bounded",
    "prop3.1",
    "prop3.2",
    "prop3.3",
    "prop3.4",
    "prop3.5",
    "prop4.1",
    "thm4.1",
    "cor4.1",
    "prop5.1",
    "prop5.2",
    "cor5.1",
    "thm5.1",
    "thm5.2",
    "t1-defs-agree",
    "t2-defs-diverge",
];

const VARIANTS: [Variant; 2] = [Variant::T1, Variant::T2];

/// Default bound for the bounded divisor search.
pub const DEFAULT_SEARCH_LEN: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Finding,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Finding => "FINDING",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub subject: String,
    pub outcome: Outcome,
    pub detail: String,
    pub reproducer: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: Vec<Instance>,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.instances.iter().any(|i| i.outcome == Outcome::Fail)
    }

    pub fn count(&self, o: Outcome) -> usize {
        self.instances.iter().filter(|i| i.outcome == o).count()
    }

    pub fn findings(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| i.outcome == Outcome::Finding)
    }

    /// 0 when nothing failed, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            3
        } else {
            0
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "suite {}: {} pass, {} fail, {} finding\n",
            self.suite,
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Finding)
        );
        for i in &self.instances {
            out.push_str(&format!("  {:<7} {}: {}\n", i.outcome, i.subject, i.detail));
            if i.outcome != Outcome::Pass {
                out.push_str(&format!("          reproduce: {}\n", i.reproducer));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub scope: Scope,
    /// A single group replacing the catalog: its expression and table.
    pub group: Option<(String, GroupTable)>,
    pub max_len: Option<usize>,
    pub cap: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { scope: Scope::Small, group: None, max_len: None, cap: gscheme_core::variety::DEFAULT_CLOSURE_CAP }
    }
}

struct Ctx<'a> {
    suite: &'a str,
    opts: &'a AuditOptions,
    out: Vec<Instance>,
}

impl Ctx<'_> {
    fn entries(&self) -> Vec<Entry> {
        match &self.opts.group {
            Some((expr, h)) => vec![catalog::custom(expr, h.clone())],
            None => catalog::entries(self.opts.scope),
        }
    }

    fn reproducer(&self, selector: &str) -> String {
        let mut r = format!("gscheme check {} {selector}", self.suite);
        if let Some(n) = self.opts.max_len {
            r.push_str(&format!(" --max-len {n}"));
        }
        r
    }

    fn push(&mut self, subject: impl Into<String>, selector: &str, outcome: Outcome, detail: impl Into<String>) {
        let reproducer = self.reproducer(selector);
        self.out.push(Instance { subject: subject.into(), outcome, detail: detail.into(), reproducer });
    }

    /// Records `Pass` when `failures` is empty, else `Fail` with the first.
    fn verdict(&mut self, subject: String, selector: &str, checked: usize, failures: Vec<String>, note: &str) {
        if failures.is_empty() {
            let sep = if note.is_empty() { "" } else { "; " };
            self.push(subject, selector, Outcome::Pass, format!("{checked} checks{sep}{note}"));
        } else {
            let more = if failures.len() > 1 { format!(" (+{} more)", failures.len() - 1) } else { String::new() };
            self.push(subject, selector, Outcome::Fail, format!("{}{more}", failures[0]));
        }
    }

    fn error(&mut self, subject: String, selector: &str, e: impl fmt::Display) {
        self.push(subject, selector, Outcome::Fail, format!("error: {e}"));
    }

    /// Runs `check` on every entry under both variants with elementwise primes.
    fn per_spectrum(&mut self, mut check: impl FnMut(&Entry, &Spectrum) -> CliResult<(usize, Vec<String>, String)>) {
        for e in self.entries() {
            for v in VARIANTS {
                let subject = format!("{} {}", e.name, variant_name(v));
                let res = Spectrum::new(&e.obj, v, PrimeDef::Elementwise)
                    .map_err(CliError::from)
                    .and_then(|s| check(&e, &s));
                match res {
                    Ok((n, fails, note)) => self.verdict(subject, &e.selector, n, fails, &note),
                    Err(err) => self.error(subject, &e.selector, err),
                }
            }
        }
    }
}

pub fn run_suite(name: &str, opts: &AuditOptions) -> CliResult<SuiteReport> {
    let suite = SUITES.iter().find(|s| **s == name).ok_or_else(|| CliError::UnknownSuite(name.into()))?;
    let mut c = Ctx { suite, opts, out: Vec::new() };
    match name {
        "prop2.1" => prop2_1(&mut c),
        "prop2.2" => prop2_2(&mut c),
        "prop2.3" => prop2_3(&mut c),
        "prop2.4" => prop2_4(&mut c),
        "prop2.5" => prop2_5(&mut c),
        "prop2.6" => prop2_6(&mut c),
        "cor2.2" => cor2_2(&mut c),
        "thm2.1-bounded" => thm2_1(&mut c),
        "prop3.1" => prop3_1(&mut c),
        "prop3.2" => prop3_2(&mut c),
        "prop3.3" => prop3_3(&mut c),
        "prop3.4" => prop3_4(&mut c),
        "prop3.5" => prop3_5(&mut c),
        "prop4.1" => prop4_1(&mut c),
        "thm4.1" => thm4_1(&mut c),
        "cor4.1" => cor4_1(&mut c),
        "prop5.1" => prop5_1(&mut c),
        "prop5.2" => prop5_2(&mut c),
        "cor5.1" => cor5_1(&mut c),
        "thm5.1" => thm5_1(&mut c),
        "thm5.2" => thm5_2(&mut c),
        "t1-defs-agree" => t1_defs_agree(&mut c),
        "t2-defs-diverge" => t2_defs_diverge(&mut c),
        _ => unreachable!(),
    }
    Ok(SuiteReport { suite: name.into(), instances: c.out })
}

/// Runs every suite in order.
pub fn run_all(opts: &AuditOptions) -> CliResult<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, opts)).collect()
}

fn vset(s: &Spectrum, n: &Subgroup) -> CliResult<PointSet> {
    Ok(s.vanishing_set(n)?.members)
}

fn join(h: &GroupTable, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let elems: Vec<usize> = a.elements().iter().chain(b.elements()).copied().collect();
    normal_closure(h, &elems)
}

fn prop2_1(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let h = s.object().carrier();
        let normals = s.normals();
        let mut fails = Vec::new();
        let mut n = 0;
        for (i, a) in normals.iter().enumerate() {
            for b in &normals[i..] {
                let product = match s.variant() {
                    Variant::T1 => commutator_subgroup(h, a, b),
                    Variant::T2 => a.intersection(b),
                };
                let (va, vb) = (vset(s, a)?, vset(s, b)?);
                n += 2;
                if vset(s, &product)? != va.union(vb) {
                    fails.push(format!("V of product of {} and {} is not the union", subgroup_label(h, a), subgroup_label(h, b)));
                }
                if vset(s, &join(h, a, b))? != va.intersection(vb) {
                    fails.push(format!("V of the join of {} and {} is not the intersection", subgroup_label(h, a), subgroup_label(h, b)));
                }
            }
        }
        let all = normals.iter().fold(Subgroup::trivial(h), |acc, x| join(h, &acc, x));
        let meet = normals.iter().try_fold(s.points(), |acc, x| vset(s, x).map(|v| acc.intersection(v)))?;
        n += 1;
        if vset(s, &all)? != meet {
            fails.push("V of the join of all normal subgroups is not the intersection".into());
        }
        Ok((n, fails, String::new()))
    });
}

fn prop2_2(c: &mut Ctx) {
    for e in c.entries() {
        let subject = format!("{} t1", e.name);
        let res = Spectrum::new(&e.obj, Variant::T1, PrimeDef::Elementwise).map_err(CliError::from).and_then(|s| {
            let h = s.object().carrier();
            let mut fails = Vec::new();
            let mut n = 0;
            for (i, a) in s.normals().iter().enumerate() {
                for b in &s.normals()[i..] {
                    n += 1;
                    if vset(&s, &a.intersection(b))? != vset(&s, &commutator_subgroup(h, a, b))? {
                        fails.push(format!("{} and {}", subgroup_label(h, a), subgroup_label(h, b)));
                    }
                }
            }
            Ok((n, fails))
        });
        match res {
            Ok((n, fails)) => c.verdict(subject, &e.selector, n, fails, ""),
            Err(err) => c.error(subject, &e.selector, err),
        }
    }
}

fn prop2_3(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let h = s.object().carrier();
        let basics: Vec<PointSet> = h.elements().map(|x| s.basic_open(x)).collect::<Result<_, _>>()?;
        let opens = s.open_sets();
        let fails = opens
            .iter()
            .filter(|&&u| {
                let cover = basics.iter().filter(|b| b.is_subset(u)).fold(PointSet::EMPTY, |acc, b| acc.union(*b));
                cover != u
            })
            .map(|u| format!("open {} is not a union of basic opens", point_list(*u)))
            .collect();
        Ok((opens.len(), fails, String::new()))
    });
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(s) = stack.pop() {
        if s.len() >= 2 {
            out.push(s.clone());
        }
        if s.len() < max {
            for j in s[s.len() - 1] + 1..n {
                let mut t = s.clone();
                t.push(j);
                stack.push(t);
            }
        }
    }
    out.sort();
    out
}

fn prop2_4(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let h = s.object().carrier();
        let proper: Vec<&Subgroup> = s.normals().iter().filter(|n| !n.is_whole()).collect();
        let mut fails = Vec::new();
        let mut met = 0;
        for fam in subsets(proper.len(), 3) {
            let ideals: Vec<&Subgroup> = fam.iter().map(|&i| proper[i]).collect();
            let meet = ideals.iter().fold(Subgroup::whole(h), |acc, x| acc.intersection(x));
            let comaximal = ideals
                .iter()
                .enumerate()
                .all(|(i, a)| ideals[i + 1..].iter().all(|b| fingroup::subgroup_product(h, a, b).is_ok_and(|p| p.is_whole())));
            if !meet.is_trivial() || !comaximal {
                continue;
            }
            met += 1;
            let vs: Vec<PointSet> = ideals.iter().map(|x| vset(s, x)).collect::<CliResult<_>>()?;
            let cover = vs.iter().fold(PointSet::EMPTY, |a, b| a.union(*b));
            let disjoint = vs.iter().enumerate().all(|(i, a)| vs[i + 1..].iter().all(|b| a.intersection(*b).is_empty()));
            if cover != s.points() || !disjoint {
                let labels: Vec<String> = ideals.iter().map(|x| subgroup_label(h, x)).collect();
                fails.push(format!("family {} does not split the spectrum", labels.join(", ")));
            }
        }
        let note = if met == 0 {
            "hypothesis not met by any family of up to 3 ideals".into()
        } else {
            format!("hypothesis met by {met} families")
        };
        Ok((met, fails, note))
    });
}

fn prop2_5(c: &mut Ctx) {
    c.per_spectrum(|e, s| {
        let h = s.object().carrier();
        let mut fails = Vec::new();
        let mut met = 0;
        for n in s.normals().iter().filter(|n| !n.is_whole()) {
            let v = vset(s, n)?;
            if s.radical(v) != *n {
                continue;
            }
            met += 1;
            let prime = is_prime(&e.obj, n, s.variant(), s.prime_def())?;
            if s.is_irreducible(v) != prime {
                fails.push(format!("V({}) irreducible={} but prime={prime}", subgroup_label(h, n), s.is_irreducible(v)));
            }
        }
        let note = if met == 0 { "hypothesis not met: no radical ideal".into() } else { format!("hypothesis met by {met} ideals") };
        Ok((met, fails, note))
    });
}

fn prop2_6(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let mut fails = Vec::new();
        let mut n = 0;
        for comp in s.irreducible_components() {
            let Some(g) = comp.generic else { continue };
            for q in comp.closed.members.iter() {
                n += 1;
                if !s.minimal_open(q).contains(g) {
                    fails.push(format!("minimal open of P{q} misses generic point P{g}"));
                }
            }
        }
        Ok((n, fails, String::new()))
    });
}

fn cor2_2(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let rad = s.radical(s.points());
        let Some(r) = s.index_of(&rad) else {
            return Ok((0, Vec::new(), "hypothesis not met: radical is not prime".into()));
        };
        let mut fails = Vec::new();
        if s.closure(PointSet::singleton(r)) != s.points() {
            fails.push(format!("closure of the radical P{r} is not the whole spectrum"));
        }
        for p in 0..s.len() {
            if s.point_radical(p) != rad {
                fails.push(format!("rad(P{p}) differs from rad(H)"));
            }
        }
        Ok((1 + s.len(), fails, "radical is prime and dense".into()))
    });
}

fn thm2_1(c: &mut Ctx) {
    let max_len = c.opts.max_len.unwrap_or(DEFAULT_SEARCH_LEN);
    let groups: Vec<(String, GroupTable)> = match &c.opts.group {
        Some(g) => vec![g.clone()],
        None => vec![
            ("cyclic(3)".into(), GroupTable::cyclic(3)),
            ("sym(3)".into(), GroupTable::symmetric(3)),
            ("cyclic(2)".into(), GroupTable::cyclic(2)),
        ],
    };
    for (expr, g) in groups {
        let selector = format!("--G '{expr}'");
        let ctx = WordContext::new(Arc::new(g), 1);
        let search = DivisorSearch::new(&ctx, max_len, 1);
        let mut found: Vec<(Word, Word)> = Vec::new();
        let mut scanned = 0;
        let mut err = None;
        for x in search.candidates().filter(|w| !w.is_constant()) {
            scanned += 1;
            match search.witness(x, Variant::T1) {
                Ok(Some(w)) => found.push((x.clone(), w.word)),
                Ok(None) => {}
                Err(e) => {
                    err = Some(e);
                    break;
                }
            }
        }
        let subject = format!("{expr} length<={max_len}");
        if let Some(e) = err {
            c.error(subject, &selector, e);
            continue;
        }
        if ctx.group().order() == 2 {
            let known = ctx.parse("g1 * X1 * g1 * X1^-1").expect("valid literal");
            match found.iter().find(|(x, _)| *x == known) {
                Some((x, y)) => c.push(
                    subject,
                    &selector,
                    Outcome::Pass,
                    format!(
                        "witness {} for x = {}; {} of {scanned} non-constant words have witnesses",
                        ctx.format(y),
                        ctx.format(x),
                        found.len()
                    ),
                ),
                None => c.push(subject, &selector, Outcome::Fail, "no witness for g1 * X1 * g1 * X1^-1"),
            }
        } else if found.is_empty() {
            c.push(subject, &selector, Outcome::Pass, format!("no witness among {scanned} non-constant words"));
        } else {
            let (x, y) = &found[0];
            c.push(
                subject,
                &selector,
                Outcome::Fail,
                format!("{} words have witnesses, first x = {} with y = {}", found.len(), ctx.format(x), ctx.format(y)),
            );
        }
    }
}

/// Coefficient groups for the variety suites: identity-structured entries.
fn coefficient_groups(c: &Ctx) -> Vec<Entry> {
    c.entries().into_iter().filter(|e| e.obj.structure().images() == e.obj.carrier().elements().collect::<Vec<_>>()).collect()
}

fn prop3_1(c: &mut Ctx) {
    for e in coefficient_groups(c) {
        let g = e.obj.carrier().clone();
        let ctx = WordContext::new(g.clone(), 1);
        let subject = e.name.clone();
        let simple = match fingroup::is_simple(&g) {
            Ok(s) => s,
            Err(err) => {
                c.error(subject, &e.selector, err);
                continue;
            }
        };
        let res: CliResult<(usize, Vec<String>, String)> = (|| {
            let mut fails = Vec::new();
            let mut n = 0;
            if simple {
                // every probe outside I_x generates everything modulo I_x
                let x = [g.elements().last().expect("nonempty")];
                let probes = ctx.words_up_to(2, 1);
                for probe in &probes {
                    if point_ideal_contains(&ctx, &x, probe)? {
                        continue;
                    }
                    for t in g.elements() {
                        n += 1;
                        let target = ctx.constant(t)?;
                        let f = factorization_certificate(&ctx, &x, probe, &target)?;
                        if !f.verify(&ctx, &x)? {
                            fails.push(format!("certificate for {} from {} does not verify", ctx.format(&target), ctx.format(probe)));
                        }
                    }
                }
                Ok((n, fails, format!("simple: factorization certificates at x = {}", format_point(&g, &x))))
            } else {
                let nsub = fingroup::normal_subgroups(&g)
                    .into_iter()
                    .find(|s| !s.is_trivial() && !s.is_whole())
                    .expect("non-simple group has a proper normal subgroup");
                for xv in g.elements() {
                    let x = [xv];
                    n += 1;
                    match maximality_probe(&ctx, &x, &nsub)? {
                        MaximalityCertificate::Strict { inside, outside } => {
                            let ok = shifted_point_ideal_contains(&ctx, &x, &nsub, &inside)?
                                && !point_ideal_contains(&ctx, &x, &inside)?
                                && !shifted_point_ideal_contains(&ctx, &x, &nsub, &outside)?;
                            if !ok {
                                fails.push(format!("strictness certificate at {} does not verify", format_point(&g, &x)));
                            }
                        }
                        other => fails.push(format!("expected a strict certificate, got {other:?}")),
                    }
                }
                Ok((n, fails, format!("not simple: I_x strictly inside I_(N,x) for N = {}", subgroup_label(&g, &nsub))))
            }
        })();
        match res {
            Ok((n, fails, note)) => c.verdict(subject, &e.selector, n, fails, &note),
            Err(err) => c.error(subject, &e.selector, err),
        }
    }
}

/// Probe length scaled to the coefficient group unless `--max-len` is given.
fn probe_len(c: &Ctx, g: &GroupTable) -> usize {
    c.opts.max_len.unwrap_or(if g.order() <= 12 { DEFAULT_PROBE_LEN } else { 2 })
}

fn probes(ctx: &WordContext, len: usize) -> Vec<Word> {
    ctx.words_up_to(len, 1).into_iter().filter(|w| !w.is_identity()).collect()
}

fn prop3_2(c: &mut Ctx) {
    for e in coefficient_groups(c) {
        let g = e.obj.carrier().clone();
        for v in VARIANTS {
            let subject = format!("{} {}", e.name, variant_name(v));
            if !is_integral(&e.obj, v) {
                c.push(subject, &e.selector, Outcome::Pass, "hypothesis not met: G is not integral");
                continue;
            }
            let ctx = WordContext::new(g.clone(), 1);
            let len = probe_len(c, &g);
            let ps = probes(&ctx, len);
            let res: CliResult<(usize, Vec<String>, String)> = (|| {
                let mut fails = Vec::new();
                let (mut pairs, mut inconclusive) = (0, 0);
                for x in g.elements() {
                    let point = vec![x];
                    let r = probe_ideal_primality(&ctx, std::slice::from_ref(&point), v, &ps)?;
                    pairs += r.pairs;
                    inconclusive += r.inconclusive;
                    if let Some((a, b)) = r.violations.first() {
                        fails.push(format!("I_x at {} fails on {} and {}", format_point(&g, &point), ctx.format(a), ctx.format(b)));
                    }
                    let single = variety_of(&ctx, &[ctx.mul(&ctx.variable(1)?, &ctx.constant(g.inv(x))?)])?;
                    let f = coordinate_group(&single, c.opts.cap)?;
                    if !is_integral(&f.as_ggroup(), v) {
                        fails.push(format!("function group at {} is not integral", format_point(&g, &point)));
                    }
                }
                Ok((pairs, fails, format!("probe length {len}, {inconclusive} pairs inconclusive")))
            })();
            match res {
                Ok((n, fails, note)) => c.verdict(subject, &e.selector, n, fails, &note),
                Err(err) => c.error(subject, &e.selector, err),
            }
        }
    }
}

fn prop3_3(c: &mut Ctx) {
    let instances: Vec<(String, GroupTable, Variant, Vec<&str>)> = match &c.opts.group {
        Some((expr, g)) => VARIANTS.iter().map(|&v| (expr.clone(), g.clone(), v, vec!["X1", "g1", "g1 * X1", "X1^2"])).collect(),
        None => vec![
            ("cyclic(2)".into(), GroupTable::cyclic(2), Variant::T2, vec!["X1", "g1", "g1 * X1"]),
            ("alt(5)".into(), GroupTable::alternating(5), Variant::T1, vec!["X1", "X1^2", "X1^3", "X1^5", "g1 * X1"]),
        ],
    };
    for (expr, g, v, gens) in instances {
        let selector = format!("--G '{expr}'");
        let ctx = WordContext::new(Arc::new(g), 1);
        let words: Vec<Word> = match gens.iter().map(|w| ctx.parse(w)).collect::<Result<_, _>>() {
            Ok(w) => w,
            Err(err) => {
                c.error(expr.clone(), &selector, err);
                continue;
            }
        };
        for (i, s) in words.iter().enumerate() {
            for t in &words[i..] {
                let subject = format!("{expr} {} n({}) n({})", variant_name(v), ctx.format(s), ctx.format(t));
                match union_identity(&ctx, std::slice::from_ref(s), std::slice::from_ref(t), v) {
                    Ok(r) if !r.counterexamples.is_empty() => {
                        let pts: Vec<String> = r.counterexamples.iter().map(|x| format_point(ctx.group(), x)).collect();
                        c.push(
                            subject,
                            &selector,
                            Outcome::Fail,
                            format!("product-type variety contains {} outside the union (certified)", pts.join(", ")),
                        );
                    }
                    Ok(r) if !r.inconclusive.is_empty() => c.push(
                        subject,
                        &selector,
                        Outcome::Fail,
                        format!("{} points undecided", r.inconclusive.len()),
                    ),
                    Ok(r) => c.push(subject, &selector, Outcome::Pass, format!("{} points agree", r.agree)),
                    Err(err) => c.error(subject, &selector, err),
                }
            }
        }
        let families: Vec<Vec<Word>> = words.iter().map(|w| vec![w.clone()]).collect();
        let subject = format!("{expr} intersection of {} families", families.len());
        match intersection_identity(&ctx, &families) {
            Ok(true) => c.push(subject, &selector, Outcome::Pass, "intersection equals the variety of the union"),
            Ok(false) => c.push(subject, &selector, Outcome::Fail, "intersection differs from the variety of the union"),
            Err(err) => c.error(subject, &selector, err),
        }
    }
}

fn prop3_4(c: &mut Ctx) {
    let groups: Vec<(String, GroupTable)> = match &c.opts.group {
        Some(g) => vec![g.clone()],
        None => vec![("cyclic(2)".into(), GroupTable::cyclic(2)), ("cyclic(3)".into(), GroupTable::cyclic(3))],
    };
    for (expr, g) in groups {
        let selector = format!("--G '{expr}'");
        let obj = GGroup::identity(Arc::new(g.clone()));
        for v in VARIANTS {
            if !is_integral(&obj, v) {
                c.push(format!("{expr} {}", variant_name(v)), &selector, Outcome::Pass, "hypothesis not met: G is not integral");
                continue;
            }
            let ctx = WordContext::new(Arc::new(g.clone()), 1);
            let whole = variety_of(&ctx, &[]);
            let point = ctx.variable(1).map_err(CliError::from).and_then(|x| Ok(variety_of(&ctx, &[x])?));
            let (Ok(whole), Ok(point)) = (whole, point) else {
                c.error(expr.clone(), &selector, "could not build varieties");
                continue;
            };
            for (label, target) in [("G^1 -> G^1", &whole), ("G^1 -> {1}", &point)] {
                let subject = format!("{expr} {} {label}", variant_name(v));
                match hom_variety_correspondence(&whole, target, v, c.opts.cap) {
                    Ok(h) => {
                        let detail = format!("{} variety morphisms, {} G-morphisms", h.variety_morphisms.len(), h.g_morphisms.len());
                        let o = if h.is_bijection() { Outcome::Pass } else { Outcome::Fail };
                        c.push(subject, &selector, o, detail);
                    }
                    Err(err) => c.error(subject, &selector, err),
                }
            }
        }
    }
}

fn prop3_5(c: &mut Ctx) {
    for e in coefficient_groups(c) {
        let g = e.obj.carrier().clone();
        if g.order() > 60 {
            continue;
        }
        for v in VARIANTS {
            let subject = format!("{} {}", e.name, variant_name(v));
            if !is_integral(&e.obj, v) {
                c.push(subject, &e.selector, Outcome::Pass, "hypothesis not met: G is not integral");
                continue;
            }
            let ctx = WordContext::new(g.clone(), 1);
            let len = probe_len(c, &g);
            let res: CliResult<(usize, Vec<String>, String)> = (|| {
                let ps = probes(&ctx, len);
                let gens: Vec<Vec<Word>> = vec![vec![], vec![ctx.variable(1)?], vec![ctx.parse("X1^2")?]];
                let mut fails = Vec::new();
                let (mut pairs, mut irreducible) = (0, 0);
                for gs in &gens {
                    let var = variety_of(&ctx, gs)?;
                    if var.is_empty() || !VarietyTopology::new(&var, v, len)?.is_irreducible() {
                        continue;
                    }
                    irreducible += 1;
                    let r = probe_ideal_primality(&ctx, var.points(), v, &ps)?;
                    pairs += r.pairs;
                    if let Some((a, b)) = r.violations.first() {
                        fails.push(format!("I_V fails on {} and {}", ctx.format(a), ctx.format(b)));
                    }
                }
                Ok((pairs, fails, format!("{irreducible} irreducible varieties, probe length {len}")))
            })();
            match res {
                Ok((n, fails, note)) => c.verdict(subject, &e.selector, n, fails, &note),
                Err(err) => c.error(subject, &e.selector, err),
            }
        }
    }
}

fn prop4_1(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let x = GScheme::affine(s)?;
        let mut fails = Vec::new();
        let mut injective = 0;
        for p in 0..x.len() {
            let cmp = x.compare_complete_sections(x.minimal_open(p))?;
            if !cmp.surjective() {
                fails.push(format!("H -> stalk at P{p} is not surjective"));
            }
            if cmp.isomorphism() {
                injective += 1;
            }
        }
        Ok((x.len(), fails, format!("{injective} of {} stalk maps from H/rad(P) are injective", x.len())))
    });
}

fn thm4_1(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let comps = s.irreducible_components();
        let meet = comps.iter().fold(s.points(), |acc, k| acc.intersection(k.closed.members));
        if comps.is_empty() || meet.is_empty() {
            return Ok((0, Vec::new(), "hypothesis not met: components do not meet".into()));
        }
        let x = GScheme::affine(s)?;
        let cmp = x.compare_complete_sections(s.points())?;
        let fails = if cmp.isomorphism() && cmp.sections == cmp.quotient_order {
            Vec::new()
        } else {
            vec![format!("{} global sections, H/rad has order {}", cmp.sections, cmp.quotient_order)]
        };
        Ok((1, fails, format!("global sections = H/rad of order {}", cmp.quotient_order)))
    });
}

fn cor4_1(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        if !spectrum_is_irreducible(s) {
            return Ok((0, Vec::new(), "hypothesis not met: spectrum is reducible".into()));
        }
        let x = GScheme::affine(s)?;
        let opens: Vec<PointSet> = x.opens().iter().copied().filter(|u| !u.is_empty()).collect();
        let mut fails = Vec::new();
        let mut n = 0;
        for &u in &opens {
            for &v in opens.iter().filter(|v| v.is_subset(u)) {
                n += 1;
                let r = x.restriction(u, v)?;
                let mut img = r.clone();
                img.sort_unstable();
                img.dedup();
                if img.len() != r.len() || img.len() != x.sections(v)?.order() {
                    fails.push(format!("restriction {} -> {} is not bijective", point_list(u), point_list(v)));
                }
            }
        }
        Ok((n, fails, String::new()))
    });
}

fn prop5_1(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let x = GScheme::affine(s)?;
        let mut fails = Vec::new();
        let mut n = 0;
        for &u in x.opens() {
            for p in u.iter() {
                n += 1;
                if !vanishing_sections_prime(&x, u, p, s.variant(), s.prime_def())? {
                    fails.push(format!("sections over {} vanishing at P{p} are not prime", point_list(u)));
                }
            }
        }
        Ok((n, fails, String::new()))
    });
}

/// Preimages of primes of `H/N` that are not elementwise primes of `H`,
/// split into those explained by the `T2` definition divergence (quotient
/// prime but not elementwise prime) and the rest.
fn non_prime_preimages(obj: &GGroup, n: &Subgroup, v: Variant) -> CliResult<(Vec<Subgroup>, Vec<Subgroup>)> {
    let (qobj, q) = obj.quotient(n)?;
    let f = GMorphism::new(obj.clone(), qobj.clone(), q.projection.images().to_vec())?;
    let (mut divergent, mut other) = (Vec::new(), Vec::new());
    for prime in Spectrum::new(&qobj, v, PrimeDef::Elementwise)?.primes() {
        let pre = f.map.preimage(prime);
        if is_prime(obj, &pre, v, PrimeDef::Elementwise)? {
            continue;
        }
        if v == Variant::T2 && is_prime(obj, &pre, v, PrimeDef::Quotient)? {
            divergent.push(pre);
        } else {
            other.push(pre);
        }
    }
    Ok((divergent, other))
}

/// Quotient maps that fail only because a preimage of a prime is a
/// quotient prime but not an elementwise prime are findings.
fn prop5_2(c: &mut Ctx) {
    for e in c.entries() {
        for v in VARIANTS {
            let subject = format!("{} {}", e.name, variant_name(v));
            let res: CliResult<(usize, Vec<String>, Vec<String>)> = (|| {
                let s = Spectrum::new(&e.obj, v, PrimeDef::Elementwise)?;
                let h = s.object().carrier();
                let x = GScheme::affine(&s)?;
                let mut fails = Vec::new();
                let mut findings = Vec::new();
                let id = induced_morphism(&GMorphism::identity(&e.obj), &x, &x)?;
                if !id.check(&x, &x)?.passes() || id != SchemeMorphism::identity(&x) {
                    fails.push("identity does not induce the identity".into());
                }
                let mut n = 1;
                for nsub in s.normals().iter().filter(|n| !n.is_whole() && !n.is_trivial()) {
                    n += 1;
                    let label = subgroup_label(h, nsub);
                    let problem = match embed_quotient(&e.obj, nsub, v, PrimeDef::Elementwise) {
                        Ok(emb) if emb.report.passes() => continue,
                        Ok(emb) => emb.report.failures.join("; "),
                        Err(err) => err.to_string(),
                    };
                    let (divergent, other) = non_prime_preimages(&e.obj, nsub, v)?;
                    if !divergent.is_empty() && other.is_empty() {
                        let labels: Vec<String> = divergent.iter().map(|p| subgroup_label(h, p)).collect();
                        findings.push(format!(
                            "H -> H/{label}: preimage {} is a quotient prime but not an elementwise prime",
                            labels.join(", ")
                        ));
                    } else {
                        fails.push(format!("H -> H/{label}: {problem}"));
                    }
                }
                Ok((n, fails, findings))
            })();
            match res {
                Ok((n, fails, findings)) => {
                    for f in findings {
                        c.push(subject.clone(), &e.selector, Outcome::Finding, f);
                    }
                    c.verdict(subject, &e.selector, n, fails, "identity and every quotient map");
                }
                Err(err) => c.error(subject, &e.selector, err),
            }
        }
    }
}

fn cor5_1(c: &mut Ctx) {
    c.per_spectrum(|e, s| {
        if s.is_empty() {
            return Ok((0, Vec::new(), "hypothesis not met: empty spectrum".into()));
        }
        let rad = s.radical(s.points());
        let emb = embed_quotient(&e.obj, &rad, s.variant(), s.prime_def())?;
        let fails = if emb.isomorphism && emb.report.passes() {
            Vec::new()
        } else {
            vec![format!("Spec(H/rad) -> Spec(H) is not an isomorphism ({})", emb.report.failures.join("; "))]
        };
        Ok((1, fails, format!("I = rad = {}", subgroup_label(s.object().carrier(), &rad))))
    });
}

fn doubled(x: &GScheme) -> CliResult<Option<GScheme>> {
    let Some(spec) = x.spectrum() else { return Ok(None) };
    let generic: Vec<usize> = spec.dense_points();
    let Some(&g) = generic.first() else { return Ok(None) };
    let u = x.minimal_open(g);
    let iso = SchemeMorphism::identity(&x.restrict(u)?);
    Ok(Some(glue(x, x, u, u, &iso)?))
}

fn thm5_1(c: &mut Ctx) {
    let targets: Vec<(String, String, GGroup, Variant)> = match &c.opts.group {
        Some((expr, g)) => {
            VARIANTS.iter().map(|&v| (expr.clone(), format!("--G '{expr}'"), GGroup::identity(Arc::new(g.clone())), v)).collect()
        }
        None => {
            let mut t: Vec<_> = catalog::entries(c.opts.scope)
                .into_iter()
                .flat_map(|e| VARIANTS.map(|v| (e.name.clone(), e.selector.clone(), e.obj.clone(), v)))
                .collect();
            if c.opts.scope == Scope::Small {
                t.push(("S5".into(), "--catalog large".into(), GGroup::identity(Arc::new(GroupTable::symmetric(5))), Variant::T2));
            }
            t
        }
    };
    for (name, selector, obj, v) in targets {
        let res: CliResult<Vec<(String, Outcome, String)>> = (|| {
            let spec = Spectrum::new(&obj, v, PrimeDef::Elementwise)?;
            if !spectrum_is_irreducible(&spec) {
                return Ok(vec![(String::new(), Outcome::Pass, "hypothesis not met: spectrum is reducible".into())]);
            }
            let x = GScheme::affine(&spec)?;
            let mut sources = vec![("Spec".to_string(), x.clone())];
            if let Some(d) = doubled(&x)? {
                sources.push(("doubled".into(), d));
            }
            let mut out = Vec::new();
            for (label, src) in sources {
                let r = scheme_hom_correspondence(&src, &obj, v, PrimeDef::Elementwise)?;
                let detail = format!("{} G-morphisms, {} scheme morphisms", r.g_morphisms, r.scheme_morphisms);
                if r.is_bijection() {
                    out.push((label, Outcome::Pass, detail));
                } else {
                    out.push((label, Outcome::Fail, format!("{detail}: {}", r.failures.join("; "))));
                }
            }
            Ok(out)
        })();
        let base = format!("{name} {}", variant_name(v));
        match res {
            Ok(rows) => {
                for (label, o, d) in rows {
                    let subject = if label.is_empty() { base.clone() } else { format!("{base} {label}") };
                    c.push(subject, &selector, o, d);
                }
            }
            Err(err) => c.error(base, &selector, err),
        }
    }
}

fn thm5_2(c: &mut Ctx) {
    c.per_spectrum(|_, s| {
        let x = GScheme::affine(s)?;
        let ns = noetherian_sections(s)?;
        let fails = if ns.matches_global_sections(&x) {
            Vec::new()
        } else {
            vec![format!("{} compatible tuples, {} global sections", ns.order(), x.global_sections().order())]
        };
        Ok((1, fails, format!("{} global sections", ns.order())))
    });
}

fn t1_defs_agree(c: &mut Ctx) {
    for e in c.entries() {
        let h = e.obj.carrier().clone();
        let res: CliResult<(usize, Vec<String>)> = (|| {
            let mut fails = Vec::new();
            let normals: Vec<Subgroup> = fingroup::normal_subgroups(&h).into_iter().filter(|n| !n.is_whole()).collect();
            for n in &normals {
                let q = is_prime(&e.obj, n, Variant::T1, PrimeDef::Quotient)?;
                let el = is_prime(&e.obj, n, Variant::T1, PrimeDef::Elementwise)?;
                if q != el {
                    fails.push(format!("{}: quotient={q} elementwise={el}", subgroup_label(&h, n)));
                }
            }
            Ok((normals.len(), fails))
        })();
        match res {
            Ok((n, fails)) => c.verdict(e.name.clone(), &e.selector, n, fails, ""),
            Err(err) => c.error(e.name.clone(), &e.selector, err),
        }
    }
}

fn t2_defs_diverge(c: &mut Ctx) {
    for e in c.entries() {
        let h = e.obj.carrier().clone();
        let res: CliResult<Vec<(String, String)>> = (|| {
            let mut rows = Vec::new();
            for n in fingroup::normal_subgroups(&h).into_iter().filter(|n| !n.is_whole()) {
                let label = subgroup_label(&h, &n);
                let q = is_prime(&e.obj, &n, Variant::T2, PrimeDef::Quotient)?;
                let el = is_prime(&e.obj, &n, Variant::T2, PrimeDef::Elementwise)?;
                if q != el {
                    rows.push((
                        format!("{} I = {label}", e.name),
                        format!("T2 prime definitions disagree: quotient={q} elementwise={el}"),
                    ));
                }
                let t2 = q && el;
                let t1 = is_prime(&e.obj, &n, Variant::T1, PrimeDef::Quotient)?;
                if t2 && !t1 {
                    rows.push((format!("{} I = {label}", e.name), "T2-prime but not T1-prime".into()));
                }
            }
            Ok(rows)
        })();
        match res {
            Ok(rows) if rows.is_empty() => c.push(e.name.clone(), &e.selector, Outcome::Pass, "definitions agree"),
            Ok(rows) => {
                for (s, d) in rows {
                    c.push(s, &e.selector, Outcome::Finding, d);
                }
            }
            Err(err) => c.error(e.name.clone(), &e.selector, err),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts_for(expr: &str, g: GroupTable) -> AuditOptions {
        AuditOptions { group: Some((expr.into(), g)), ..AuditOptions::default() }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("prop9.9", &AuditOptions::default()), Err(CliError::UnknownSuite(_))));
    }

    #[test]
    fn subsets_are_ordered() {
        assert_eq!(subsets(3, 3), vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn prop2_1_on_small_groups() {
        let r = run_suite("prop2.1", &opts_for("sym(3)", GroupTable::symmetric(3))).unwrap();
        assert!(!r.failed(), "{}", r.render());
        assert_eq!(r.instances.len(), 2);
    }

    #[test]
    fn z2_witness_reported() {
        let r = run_suite(
            "thm2.1-bounded",
            &AuditOptions { max_len: Some(4), ..opts_for("cyclic(2)", GroupTable::cyclic(2)) },
        )
        .unwrap();
        assert!(!r.failed());
        assert!(r.instances[0].detail.contains("witness g1 * X1 * g1 * X1^-1"), "{}", r.render());
    }

    #[test]
    fn v4_divergence_is_a_finding() {
        let c2 = GroupTable::cyclic(2);
        let r = run_suite("t2-defs-diverge", &opts_for("v4", GroupTable::direct_product(&c2, &c2))).unwrap();
        assert!(!r.failed());
        assert!(r.findings().count() >= 1);
        assert_eq!(r.exit_code(), 0);
    }
}
