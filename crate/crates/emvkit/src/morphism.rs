//! Partial morphisms between EMV-algebras, and the calculus over them.
//!
//! A morphism is not a single map: it is a family of entries, each an
//! MV-homomorphism out of one idempotent interval `[0, a]`, glued by four
//! conditions — the domains cover the source (`domains-full`), the images of
//! the domain tops cover the target (`images-full`), entries agree where
//! their images nest (`compatible`), and any two entries sit under a third
//! (`directed`). Topless algebras make this unavoidable: there is no top to
//! anchor one global map, so covering families stand in for it.
//!
//! On top of validation the module implements the similarity relation ≈
//! (entrywise absorption into a larger entry), composition by matching image
//! tops into domains, standardness (pointwise maxima exist and are stable
//! under enlarging the family), the extraction of a total strong
//! homomorphism from a standard family, and the reverse construction of a
//! family from a strong homomorphism.
//!
//! ## Families and bounds
//!
//! Infinite families are closures from a level to a finite batch of
//! entries; `entries(level)` of a generated family is a monotone slice, and
//! every check that existentially quantifies over entries looks one level
//! beyond the one it verifies, so boundary elements are not starved of
//! their witnesses. Verdicts say `pass` only when the family is complete
//! and both carriers were swept exhaustively.

use std::sync::Arc;

use crate::emv::{self, Elem, Emv, FinSetBooleanEmv};
use crate::verdict::{DecidedBy, Verdict};
use crate::{Error, Result};

pub type EntryFn = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;
pub type EntryGen = Arc<dyn Fn(u32) -> Vec<Entry> + Send + Sync>;

/// One member of a morphism family: an idempotent domain top and the map on
/// `[0, dom]`. The closure may be total; only its restriction to the
/// interval ever means anything.
#[derive(Clone)]
pub struct Entry {
    pub key: String,
    pub dom: Elem,
    map: EntryFn,
}

impl Entry {
    pub fn new(key: impl Into<String>, dom: Elem, map: EntryFn) -> Self {
        Entry { key: key.into(), dom, map }
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        (self.map)(x)
    }

    /// The image of the domain top — the top of the entry's image interval.
    pub fn image_top(&self) -> Elem {
        self.apply(&self.dom)
    }

    pub fn map(&self) -> EntryFn {
        self.map.clone()
    }
}

impl std::fmt::Debug for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Entry").field("key", &self.key).field("dom", &self.dom).finish()
    }
}

#[derive(Clone)]
enum Family {
    Explicit(Vec<Entry>),
    Generated(EntryGen),
}

/// Whether `entries(level)` can ever be the whole family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Completeness {
    /// The explicit entry list is the entire family.
    Whole,
    /// Complete exactly when the source enumeration is exhaustive at the
    /// level (families indexed by the source's idempotents).
    TracksSource,
    /// Always a strict slice (families with their own infinite index set,
    /// and composites materialized at a bound).
    Bounded,
}

#[derive(Clone)]
pub struct EmvMorphism {
    source: Arc<Emv>,
    target: Arc<Emv>,
    name: String,
    family: Family,
    completeness: Completeness,
}

impl std::fmt::Debug for EmvMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EmvMorphism")
            .field("name", &self.name)
            .field("source", &self.source.kind())
            .field("target", &self.target.kind())
            .field("completeness", &self.completeness)
            .finish()
    }
}

impl EmvMorphism {
    /// An explicit family that is asserted to be the entire morphism.
    pub fn from_entries(
        source: Arc<Emv>,
        target: Arc<Emv>,
        name: impl Into<String>,
        entries: Vec<Entry>,
    ) -> Self {
        EmvMorphism {
            source,
            target,
            name: name.into(),
            family: Family::Explicit(entries),
            completeness: Completeness::Whole,
        }
    }

    /// An explicit family that is only a bounded slice of the morphism.
    pub fn from_entries_bounded(
        source: Arc<Emv>,
        target: Arc<Emv>,
        name: impl Into<String>,
        entries: Vec<Entry>,
    ) -> Self {
        EmvMorphism {
            source,
            target,
            name: name.into(),
            family: Family::Explicit(entries),
            completeness: Completeness::Bounded,
        }
    }

    /// A family generated per level whose index set is the source's
    /// idempotents, so it is complete whenever the source sweep is.
    pub fn generated_full(
        source: Arc<Emv>,
        target: Arc<Emv>,
        name: impl Into<String>,
        gen: EntryGen,
    ) -> Self {
        EmvMorphism {
            source,
            target,
            name: name.into(),
            family: Family::Generated(gen),
            completeness: Completeness::TracksSource,
        }
    }

    /// A family generated per level with its own unbounded index set.
    pub fn generated_bounded(
        source: Arc<Emv>,
        target: Arc<Emv>,
        name: impl Into<String>,
        gen: EntryGen,
    ) -> Self {
        EmvMorphism {
            source,
            target,
            name: name.into(),
            family: Family::Generated(gen),
            completeness: Completeness::Bounded,
        }
    }

    pub fn source(&self) -> &Arc<Emv> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Emv> {
        &self.target
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The entries visible at `level`; for explicit families the level is
    /// irrelevant.
    pub fn entries(&self, level: u32) -> Vec<Entry> {
        match &self.family {
            Family::Explicit(v) => v.clone(),
            Family::Generated(g) => g(level),
        }
    }

    pub fn is_complete_at(&self, level: u32) -> bool {
        match self.completeness {
            Completeness::Whole => true,
            Completeness::TracksSource => self.source.exhaustive_at(level),
            Completeness::Bounded => false,
        }
    }

    /// Apply the entry to `x` after checking `x` really lies in its domain.
    pub fn apply_entry(&self, e: &Entry, x: &Elem) -> Result<Elem> {
        self.source.validate_elem(x)?;
        if !self.source.le(x, &e.dom) {
            return Err(Error::Domain(format!(
                "{} is outside the domain of entry {}",
                self.source.format_elem(x),
                e.key
            )));
        }
        Ok(e.apply(x))
    }
}

/// A total map preserving 0, ∨, ∧, ⊕ and every λ, whose image idempotents
/// cover the target. The single-map counterpart of a standard family.
#[derive(Clone)]
pub struct StrongEmvHom {
    source: Arc<Emv>,
    target: Arc<Emv>,
    name: String,
    map: EntryFn,
}

impl std::fmt::Debug for StrongEmvHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StrongEmvHom")
            .field("name", &self.name)
            .field("source", &self.source.kind())
            .field("target", &self.target.kind())
            .finish()
    }
}

impl StrongEmvHom {
    pub fn new(
        source: Arc<Emv>,
        target: Arc<Emv>,
        name: impl Into<String>,
        map: EntryFn,
    ) -> Self {
        StrongEmvHom { source, target, name: name.into(), map }
    }

    pub fn source(&self) -> &Arc<Emv> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Emv> {
        &self.target
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        (self.map)(x)
    }

    pub fn map(&self) -> EntryFn {
        self.map.clone()
    }
}

pub(crate) fn kv(k: &str, v: String) -> (String, String) {
    (k.to_string(), v)
}

/// Move a sub-check's failure under a new clause, keeping its own clause as
/// the first witness item.
fn rewrap(mut v: Verdict, clause: &str) -> Verdict {
    if let Some(w) = &mut v.witness {
        let inner = std::mem::replace(&mut w.clause, clause.to_string());
        w.items.insert(0, kv("inner-clause", inner));
    }
    v
}

fn family_settle(fs: &[&EmvMorphism], level: u32) -> Verdict {
    let ex = fs.iter().all(|f| {
        f.is_complete_at(level)
            && f.source.exhaustive_at(level)
            && f.target.exhaustive_at(level)
    });
    Verdict::pass_at(level, ex)
        .decided(if ex { DecidedBy::Exhaustive } else { DecidedBy::BoundedSearch })
}

/// Check the four family conditions, after per-entry sanity: each domain must
/// be an idempotent source element (shape violations are errors, not
/// verdicts), each entry must be an MV-homomorphism on its interval
/// (`entry-hom` / `entry-range`), and then `domains-full`, `images-full`,
/// `compatible`, `directed` in that order — the first broken clause is
/// reported.
pub fn validate_morphism(f: &EmvMorphism, level: u32) -> Result<Verdict> {
    let src = f.source();
    let tgt = f.target();
    let ent = f.entries(level.saturating_add(1));

    for e in &ent {
        src.validate_elem(&e.dom)?;
        if !src.is_idempotent(&e.dom) {
            return Err(Error::InvalidInput(format!(
                "entry {}: domain {} is not idempotent",
                e.key,
                src.format_elem(&e.dom)
            )));
        }
        let top = e.image_top();
        tgt.validate_elem(&top)?;
        if !tgt.is_idempotent(&top) {
            return Ok(Verdict::fail(
                "entry-hom",
                vec![
                    kv("entry", e.key.clone()),
                    kv("image-top", tgt.format_elem(&top)),
                    kv("note", "image of the domain top is not idempotent".into()),
                ],
            ));
        }
        if !tgt.eq_elem(&e.apply(&src.zero()), &tgt.zero()) {
            return Ok(Verdict::fail(
                "entry-hom",
                vec![kv("entry", e.key.clone()), kv("note", "zero is not preserved".into())],
            ));
        }
        let probe = src.interval_probe(&e.dom, level);
        for x in &probe {
            let fx = e.apply(x);
            tgt.validate_elem(&fx)?;
            if !tgt.le(&fx, &top) {
                return Ok(Verdict::fail(
                    "entry-range",
                    vec![
                        kv("entry", e.key.clone()),
                        kv("x", src.format_elem(x)),
                        kv("f(x)", tgt.format_elem(&fx)),
                        kv("image-top", tgt.format_elem(&top)),
                    ],
                ));
            }
            let lx = src.lambda(&e.dom, x)?;
            let lhs = e.apply(&lx);
            let rhs = tgt.lambda(&top, &fx)?;
            if !tgt.eq_elem(&lhs, &rhs) {
                return Ok(Verdict::fail(
                    "entry-hom",
                    vec![
                        kv("entry", e.key.clone()),
                        kv("x", src.format_elem(x)),
                        kv("f(λx)", tgt.format_elem(&lhs)),
                        kv("λf(x)", tgt.format_elem(&rhs)),
                    ],
                ));
            }
        }
        for x in &probe {
            for y in &probe {
                let s = src.oplus(x, y);
                let lhs = e.apply(&s);
                let rhs = tgt.oplus(&e.apply(x), &e.apply(y));
                if !tgt.eq_elem(&lhs, &rhs) {
                    return Ok(Verdict::fail(
                        "entry-hom",
                        vec![
                            kv("entry", e.key.clone()),
                            kv("x", src.format_elem(x)),
                            kv("y", src.format_elem(y)),
                            kv("f(x⊕y)", tgt.format_elem(&lhs)),
                            kv("f(x)⊕f(y)", tgt.format_elem(&rhs)),
                        ],
                    ));
                }
            }
        }
    }

    let doms: Vec<Elem> = ent.iter().map(|e| e.dom.clone()).collect();
    let v = emv::is_full(src, &doms, level);
    if v.failed() {
        return Ok(rewrap(v, "domains-full"));
    }
    let imgs: Vec<Elem> = ent.iter().map(|e| e.image_top()).collect();
    let v = emv::is_full(tgt, &imgs, level);
    if v.failed() {
        return Ok(rewrap(v, "images-full"));
    }

    for (i, ei) in ent.iter().enumerate() {
        let ti = ei.image_top();
        for (j, ej) in ent.iter().enumerate() {
            if i == j || !tgt.le(&ti, &ej.image_top()) {
                continue;
            }
            let cap = src.meet(&ei.dom, &ej.dom);
            for x in src.interval_probe(&cap, level) {
                let lhs = ei.apply(&x);
                let rhs = tgt.meet(&ej.apply(&x), &ti);
                if !tgt.eq_elem(&lhs, &rhs) {
                    return Ok(Verdict::fail(
                        "compatible",
                        vec![
                            kv("entry-i", ei.key.clone()),
                            kv("entry-j", ej.key.clone()),
                            kv("x", src.format_elem(&x)),
                            kv("f_i(x)", tgt.format_elem(&lhs)),
                            kv("f_j(x)∧f_i(aᵢ)", tgt.format_elem(&rhs)),
                        ],
                    ));
                }
            }
        }
    }

    // pairs come from the level slice, witnesses may sit one level out —
    // a generated family must not fail simply because its boundary entries
    // have their dominators just beyond the window
    let near = f.entries(level);
    for ei in &near {
        let ti = ei.image_top();
        for ej in &near {
            let tj = ej.image_top();
            let dominated = ent.iter().any(|et| {
                let tt = et.image_top();
                src.le(&ei.dom, &et.dom)
                    && src.le(&ej.dom, &et.dom)
                    && tgt.le(&ti, &tt)
                    && tgt.le(&tj, &tt)
            });
            if !dominated {
                return Ok(Verdict::fail(
                    "directed",
                    vec![kv("entry-i", ei.key.clone()), kv("entry-j", ej.key.clone())],
                ));
            }
        }
    }

    Ok(family_settle(&[f], level))
}

/// The similarity relation ≈, in one direction: every f-entry is absorbed by
/// some g-entry — `dom_f ≤ dom_g` and `f(x) = g(x) ∧ f(a_f)` on the f-entry's
/// interval. Symmetry of ≈ across valid morphisms is a theorem, not part of
/// the definition, so callers who want both directions call twice.
pub fn similar(f: &EmvMorphism, g: &EmvMorphism, level: u32) -> Verdict {
    if f.source.as_ref() != g.source.as_ref() || f.target.as_ref() != g.target.as_ref() {
        return Verdict::not_a_competitor(
            "algebra-mismatch",
            vec![kv("f", f.name.clone()), kv("g", g.name.clone())],
        );
    }
    let src = f.source();
    let tgt = f.target();
    let gents = g.entries(level.saturating_add(1));
    for ei in f.entries(level) {
        let ti = ei.image_top();
        let probe = src.interval_probe(&ei.dom, level);
        let matched = gents.iter().any(|ej| {
            src.le(&ei.dom, &ej.dom)
                && probe.iter().all(|x| tgt.eq_elem(&ei.apply(x), &tgt.meet(&ej.apply(x), &ti)))
        });
        if !matched {
            return Verdict::fail("similar-unmatched", vec![kv("entry", ei.key.clone())]);
        }
    }
    family_settle(&[f, g], level)
}

/// `g` after `f`, materialized at `level`: one composite entry per pair of
/// an f-entry whose image top fits inside a g-domain. Always a bounded
/// family — composition does not try to re-index what the closures denote.
pub fn compose(g: &EmvMorphism, f: &EmvMorphism, level: u32) -> Result<EmvMorphism> {
    if f.target.as_ref() != g.source.as_ref() {
        return Err(Error::InvalidInput(format!(
            "cannot compose: {} maps into {} but {} starts at {}",
            f.name,
            f.target.kind(),
            g.name,
            g.source.kind()
        )));
    }
    if composite_entries(f, g, level).is_empty() {
        return Err(Error::BoundExhausted(format!(
            "no composable entry pairs between {} and {} at level {}",
            f.name, g.name, level
        )));
    }
    // generated, not materialized: a composite frozen at its build level
    // loses the boundary entries that later similarity checks reach for
    let fc = f.clone();
    let gc = g.clone();
    Ok(EmvMorphism::generated_bounded(
        f.source.clone(),
        g.target.clone(),
        format!("{}∘{}", g.name, f.name),
        Arc::new(move |q| composite_entries(&fc, &gc, q)),
    ))
}

fn composite_entries(f: &EmvMorphism, g: &EmvMorphism, level: u32) -> Vec<Entry> {
    let mid = f.target();
    let mut entries = Vec::new();
    let gents = g.entries(level.saturating_add(1));
    for ei in f.entries(level) {
        let ti = ei.image_top();
        for ej in &gents {
            if !mid.le(&ti, &ej.dom) {
                continue;
            }
            let mi = ei.map.clone();
            let mj = ej.map.clone();
            entries.push(Entry::new(
                format!("{}∘{}", ej.key, ei.key),
                ei.dom.clone(),
                Arc::new(move |x: &Elem| mj(&mi(x))),
            ));
        }
    }
    entries
}

/// Does every point have a maximum among its entry values, stably? For each
/// source element the set `{f_i(x) : x ≤ a_i}` must contain a greatest
/// member, and enlarging the family by one level must not change it — a
/// family whose "maximum" keeps growing with the bound is not standard, it
/// just hides its divergence.
pub fn is_standard(f: &EmvMorphism, level: u32) -> Verdict {
    let src = f.source();
    let tgt = f.target();
    // both slices sit beyond the swept elements, so boundary points are not
    // compared against a family that has not yet reached them
    let near = f.entries(level.saturating_add(1));
    let far = f.entries(level.saturating_add(2));
    let mut tested = false;
    for x in src.elements(level) {
        let vals = |ents: &[Entry]| -> Vec<Elem> {
            ents.iter().filter(|e| src.le(&x, &e.dom)).map(|e| e.apply(&x)).collect()
        };
        let s1 = vals(&near);
        if s1.is_empty() {
            continue;
        }
        tested = true;
        let max_of = |s: &[Elem]| -> Option<Elem> {
            s.iter().find(|v| s.iter().all(|w| tgt.le(w, v))).cloned()
        };
        let Some(m1) = max_of(&s1) else {
            let (a, b) = incomparable_pair(tgt, &s1);
            return Verdict::fail(
                "no-max-found",
                vec![
                    kv("x", src.format_elem(&x)),
                    kv("value-a", tgt.format_elem(&a)),
                    kv("value-b", tgt.format_elem(&b)),
                ],
            );
        };
        let s2 = vals(&far);
        match max_of(&s2) {
            Some(m2) if tgt.eq_elem(&m1, &m2) => {}
            Some(m2) => {
                return Verdict::fail(
                    "max-unstable",
                    vec![
                        kv("x", src.format_elem(&x)),
                        kv("at-level", tgt.format_elem(&m1)),
                        kv("one-deeper", tgt.format_elem(&m2)),
                    ],
                )
            }
            None => {
                let (a, b) = incomparable_pair(tgt, &s2);
                return Verdict::fail(
                    "no-max-found",
                    vec![
                        kv("x", src.format_elem(&x)),
                        kv("value-a", tgt.format_elem(&a)),
                        kv("value-b", tgt.format_elem(&b)),
                    ],
                );
            }
        }
    }
    if !tested {
        return Verdict::vacuous(level);
    }
    family_settle(&[f], level)
}

/// Two members of `s` with neither below the other; callers use it only when
/// a maximum is known to be missing, which guarantees such a pair exists
/// among the maximal elements.
fn incomparable_pair(m: &Emv, s: &[Elem]) -> (Elem, Elem) {
    for a in s {
        for b in s {
            if !m.le(a, b) && !m.le(b, a) {
                return (a.clone(), b.clone());
            }
        }
    }
    (s[0].clone(), s[0].clone())
}

/// Collapse a standard family into the single map `x ↦ max_i f_i(x)`. The
/// returned hom evaluates entries one level beyond `level`; feeding it
/// elements no entry dominates at that bound panics with a bound complaint,
/// so extract at the level you intend to probe.
pub fn extract_strong_hom(f: &EmvMorphism, level: u32) -> Result<StrongEmvHom> {
    let v = is_standard(f, level);
    if !v.passed() {
        return Err(Error::Precondition(format!("{} is not standard: {v}", f.name)));
    }
    let src = f.source.clone();
    let tgt = f.target.clone();
    let ent = f.entries(level.saturating_add(1));
    let name = format!("{}-max", f.name);
    let map: EntryFn = Arc::new(move |x: &Elem| {
        let vals: Vec<Elem> =
            ent.iter().filter(|e| src.le(x, &e.dom)).map(|e| e.apply(x)).collect();
        vals.iter()
            .find(|v| vals.iter().all(|w| tgt.le(w, v)))
            .cloned()
            .unwrap_or_else(|| {
                panic!(
                    "no entry dominates {} at the extraction bound; extract deeper",
                    src.format_elem(x)
                )
            })
    });
    Ok(StrongEmvHom::new(f.source.clone(), f.target.clone(), name, map))
}

/// Check a total map for strong-homomorphism laws: preservation of 0, ∨, ∧,
/// ⊕, of λ at every idempotent, and fullness of the image idempotents.
pub fn is_strong_hom(h: &StrongEmvHom, level: u32) -> Verdict {
    let src = h.source();
    let tgt = h.target();
    if !tgt.eq_elem(&h.apply(&src.zero()), &tgt.zero()) {
        return Verdict::fail("hom-zero", vec![]);
    }
    let elems = src.elements(level);
    for x in &elems {
        for y in &elems {
            for (name, sx, tx) in [
                ("∨", src.join(x, y), tgt.join(&h.apply(x), &h.apply(y))),
                ("∧", src.meet(x, y), tgt.meet(&h.apply(x), &h.apply(y))),
                ("⊕", src.oplus(x, y), tgt.oplus(&h.apply(x), &h.apply(y))),
            ] {
                let hx = h.apply(&sx);
                if !tgt.eq_elem(&hx, &tx) {
                    return Verdict::fail(
                        "hom-op",
                        vec![
                            kv("op", name.into()),
                            kv("x", src.format_elem(x)),
                            kv("y", src.format_elem(y)),
                            kv("h(x·y)", tgt.format_elem(&hx)),
                            kv("h(x)·h(y)", tgt.format_elem(&tx)),
                        ],
                    );
                }
            }
        }
    }
    let idems = src.idempotents(level);
    for b in &idems {
        let hb = h.apply(b);
        if !tgt.is_idempotent(&hb) {
            return Verdict::fail(
                "hom-lambda",
                vec![
                    kv("b", src.format_elem(b)),
                    kv("h(b)", tgt.format_elem(&hb)),
                    kv("note", "image of an idempotent is not idempotent".into()),
                ],
            );
        }
        for x in src.interval_probe(b, level) {
            let lhs = h.apply(&src.lambda(b, &x).expect("x was drawn from [0, b]"));
            let hx = h.apply(&x);
            let rhs = match tgt.lambda(&hb, &hx) {
                Ok(r) => r,
                Err(e) => {
                    return Verdict::fail(
                        "hom-lambda",
                        vec![kv("b", src.format_elem(b)), kv("error", e.to_string())],
                    )
                }
            };
            if !tgt.eq_elem(&lhs, &rhs) {
                return Verdict::fail(
                    "hom-lambda",
                    vec![
                        kv("b", src.format_elem(b)),
                        kv("x", src.format_elem(&x)),
                        kv("h(λx)", tgt.format_elem(&lhs)),
                        kv("λh(x)", tgt.format_elem(&rhs)),
                    ],
                );
            }
        }
    }
    let himgs: Vec<Elem> = idems.iter().map(|b| h.apply(b)).collect();
    let v = emv::is_full(tgt, &himgs, level);
    if v.failed() {
        return rewrap(v, "image-idempotents-full");
    }
    let ex = src.exhaustive_at(level) && tgt.exhaustive_at(level);
    Verdict::pass_at(level, ex)
        .decided(if ex { DecidedBy::Exhaustive } else { DecidedBy::BoundedSearch })
}

/// The family a strong homomorphism induces: one entry per source
/// idempotent, all running the same map.
pub fn morphism_from_strong_hom(h: &StrongEmvHom) -> EmvMorphism {
    let src = h.source.clone();
    let map = h.map.clone();
    EmvMorphism::generated_full(
        h.source.clone(),
        h.target.clone(),
        format!("{}-family", h.name),
        Arc::new(move |level| {
            src.idempotents(level)
                .into_iter()
                .map(|a| {
                    Entry::new(format!("at-{}", src.format_elem(&a)), a, map.clone())
                })
                .collect()
        }),
    )
}

/// Re-index a family over the given idempotents: each `b` in `k` borrows the
/// map of some entry whose domain contains it. Errors if an element of `k`
/// is sheltered by no entry at the bound.
pub fn restrict_morphism(f: &EmvMorphism, k: &[Elem], level: u32) -> Result<EmvMorphism> {
    let src = f.source();
    let ent = f.entries(level.saturating_add(1));
    let mut entries = Vec::with_capacity(k.len());
    for b in k {
        src.validate_elem(b)?;
        if !src.is_idempotent(b) {
            return Err(Error::InvalidInput(format!(
                "restriction index {} is not idempotent",
                src.format_elem(b)
            )));
        }
        let host = ent.iter().find(|e| src.le(b, &e.dom)).ok_or_else(|| {
            Error::BoundExhausted(format!(
                "no entry of {} contains {} at level {}",
                f.name,
                src.format_elem(b),
                level
            ))
        })?;
        entries.push(Entry::new(
            format!("{}|{}", host.key, src.format_elem(b)),
            b.clone(),
            host.map.clone(),
        ));
    }
    Ok(EmvMorphism::from_entries_bounded(
        f.source.clone(),
        f.target.clone(),
        format!("{}⇂", f.name),
        entries,
    ))
}

/// Do the entry values at `x` and `y` coincide? Compared entry by entry over
/// every entry whose domain contains both points; with no such entry at the
/// bound the question was never asked, and the verdict says `vacuous` rather
/// than pretending either answer.
pub fn morphism_eq_at(f: &EmvMorphism, x: &Elem, y: &Elem, level: u32) -> Result<Verdict> {
    let src = f.source();
    let tgt = f.target();
    src.validate_elem(x)?;
    src.validate_elem(y)?;
    let shared: Vec<Entry> = f
        .entries(level)
        .into_iter()
        .filter(|e| src.le(x, &e.dom) && src.le(y, &e.dom))
        .collect();
    if shared.is_empty() {
        return Ok(Verdict::vacuous(level));
    }
    for e in &shared {
        let fx = e.apply(x);
        let fy = e.apply(y);
        if !tgt.eq_elem(&fx, &fy) {
            return Ok(Verdict::fail(
                "values-disagree",
                vec![
                    kv("entry-x", e.key.clone()),
                    kv("entry-y", e.key.clone()),
                    kv("f(x)", tgt.format_elem(&fx)),
                    kv("f(y)", tgt.format_elem(&fy)),
                ],
            ));
        }
    }
    Ok(family_settle(&[f], level))
}

/// Is `f` similar to the identity? Checked twice: directly — every entry
/// must act as `x ↦ x ∧ f(a)` — and through [`similar`] against the identity
/// family. The two routes answering differently is an implementation bug
/// and reported as its own failure.
pub fn is_approx_identity(f: &EmvMorphism, level: u32) -> Verdict {
    if f.source.as_ref() != f.target.as_ref() {
        return Verdict::not_a_competitor(
            "endo-required",
            vec![kv("f", f.name.clone())],
        );
    }
    let src = f.source();
    let mut direct = None;
    'outer: for e in f.entries(level) {
        let t = e.image_top();
        for x in src.interval_probe(&e.dom, level) {
            let lhs = e.apply(&x);
            let rhs = src.meet(&x, &t);
            if !src.eq_elem(&lhs, &rhs) {
                direct = Some(Verdict::fail(
                    "identity-shape",
                    vec![
                        kv("entry", e.key.clone()),
                        kv("x", src.format_elem(&x)),
                        kv("f(x)", src.format_elem(&lhs)),
                        kv("x∧f(a)", src.format_elem(&rhs)),
                    ],
                ));
                break 'outer;
            }
        }
    }
    let via_similar = similar(f, &identity_morphism(f.source.clone()), level);
    let direct_passed = direct.is_none();
    if direct_passed != via_similar.passed() {
        return Verdict::fail(
            "oracle-disagreement",
            vec![
                kv("direct", direct_passed.to_string()),
                kv("via-similar", via_similar.to_string()),
            ],
        );
    }
    match direct {
        Some(fail) => fail,
        None => via_similar,
    }
}

/// Are `f` and `g` mutually inverse up to ≈? Composes both ways and runs the
/// approximate-identity check on each round trip.
pub fn is_approx_isomorphism(f: &EmvMorphism, g: &EmvMorphism, level: u32) -> Result<Verdict> {
    let back = compose(g, f, level)?;
    let forth = compose(f, g, level)?;
    let v1 = rewrap_pass(is_approx_identity(&back, level), "round-trip-source");
    let v2 = rewrap_pass(is_approx_identity(&forth, level), "round-trip-target");
    Ok(v1.and(v2))
}

fn rewrap_pass(v: Verdict, clause: &str) -> Verdict {
    if v.passed() {
        v
    } else {
        rewrap(v, clause)
    }
}

// --- stock morphisms -------------------------------------------------------

/// The identity family: every idempotent is a domain, every map is `x ↦ x`.
pub fn identity_morphism(m: Arc<Emv>) -> EmvMorphism {
    let inner = m.clone();
    EmvMorphism::generated_full(
        m.clone(),
        m,
        "id",
        Arc::new(move |level| {
            inner
                .idempotents(level)
                .into_iter()
                .map(|a| {
                    Entry::new(
                        format!("at-{}", inner.format_elem(&a)),
                        a,
                        Arc::new(|x: &Elem| x.clone()),
                    )
                })
                .collect()
        }),
    )
}

/// On finite sets: entry `i` lives on `[∅, {1..i}]` and deletes the point
/// `i`. A proper morphism that is similar to the identity without being the
/// identity — each entry forgets something, but always the thing its
/// successor entries remember.
pub fn setminus_morphism() -> EmvMorphism {
    let fs = Arc::new(Emv::FinSet(FinSetBooleanEmv::new()));
    EmvMorphism::generated_bounded(
        fs.clone(),
        fs,
        "setminus",
        Arc::new(move |level| {
            (1..=level.max(1))
                .map(|i| {
                    Entry::new(
                        format!("drop-{i}"),
                        Elem::set(1..=i),
                        Arc::new(move |x: &Elem| match x {
                            Elem::Set(s) => {
                                let mut t = s.clone();
                                t.remove(&i);
                                Elem::Set(t)
                            }
                            other => panic!("finite-set element expected, got {other:?}"),
                        }),
                    )
                })
                .collect()
        }),
    )
}

/// Every entry meets with a fixed idempotent `c`. Satisfies the pointwise
/// identity shape, yet is *not* a morphism on a topless algebra: all images
/// land below `c`, so image fullness fails — the standard cautionary
/// example for confusing "acts like the identity where defined" with
/// "valid".
pub fn meet_with_const_morphism(m: Arc<Emv>, c: Elem, name: impl Into<String>) -> EmvMorphism {
    let inner = m.clone();
    let name = name.into();
    EmvMorphism::generated_full(
        m.clone(),
        m,
        name,
        Arc::new(move |level| {
            let c = c.clone();
            let apply_on = inner.clone();
            inner
                .idempotents(level)
                .into_iter()
                .map(|a| {
                    let c = c.clone();
                    let alg = apply_on.clone();
                    Entry::new(
                        format!("at-{}", apply_on.format_elem(&a)),
                        a,
                        Arc::new(move |x: &Elem| alg.meet(x, &c)),
                    )
                })
                .collect()
        }),
    )
}

pub fn identity_strong_hom(m: Arc<Emv>) -> StrongEmvHom {
    StrongEmvHom::new(m.clone(), m, "id", Arc::new(|x: &Elem| x.clone()))
}

/// The automorphism of the finite-set algebra that transposes two points.
pub fn finset_swap_hom(i: u32, j: u32) -> StrongEmvHom {
    let fs = Arc::new(Emv::FinSet(FinSetBooleanEmv::new()));
    StrongEmvHom::new(
        fs.clone(),
        fs,
        format!("swap-{i}-{j}"),
        Arc::new(move |x: &Elem| match x {
            Elem::Set(s) => {
                let mut t = s.clone();
                match (t.remove(&i), t.remove(&j)) {
                    (true, false) => {
                        t.insert(j);
                    }
                    (false, true) => {
                        t.insert(i);
                    }
                    (true, true) => {
                        t.insert(i);
                        t.insert(j);
                    }
                    (false, false) => {}
                }
                Elem::Set(t)
            }
            other => panic!("finite-set element expected, got {other:?}"),
        }),
    )
}

/// A strong homomorphism between finite table algebras from an explicit
/// value row. Laws are not checked here; `is_strong_hom` is the checker.
pub fn table_strong_hom(
    source: Arc<Emv>,
    target: Arc<Emv>,
    name: impl Into<String>,
    values: Vec<u32>,
) -> Result<StrongEmvHom> {
    let (n, m) = match (source.as_ref(), target.as_ref()) {
        (Emv::Table(s), Emv::Table(t)) => (s.size(), t.size()),
        _ => {
            return Err(Error::InvalidInput(
                "value-row homomorphisms need table algebras on both sides".into(),
            ))
        }
    };
    if values.len() != n as usize || values.iter().any(|&v| v >= m) {
        return Err(Error::InvalidInput(format!(
            "value row must list {n} target indices below {m}"
        )));
    }
    Ok(StrongEmvHom::new(
        source,
        target,
        name,
        Arc::new(move |x: &Elem| match x {
            Elem::Idx(i) => Elem::Idx(values[*i as usize]),
            other => panic!("table element expected, got {other:?}"),
        }),
    ))
}

/// The automorphism of a direct sum that swaps two coordinates carrying the
/// same factor.
pub fn sum_coordinate_swap_hom(sum: Arc<Emv>, i: u32, j: u32) -> Result<StrongEmvHom> {
    let d = match sum.as_ref() {
        Emv::DirectSum(d) => d,
        _ => return Err(Error::InvalidInput("coordinate swaps need a direct sum".into())),
    };
    match (d.factor(i), d.factor(j)) {
        (Some(a), Some(b)) if a == b => {}
        _ => {
            return Err(Error::InvalidInput(format!(
                "coordinates {i} and {j} do not carry the same factor"
            )))
        }
    }
    Ok(StrongEmvHom::new(
        sum.clone(),
        sum,
        format!("swap-{i}-{j}"),
        Arc::new(move |x: &Elem| match x {
            Elem::Vec(v) => {
                let mut w = v.clone();
                let (vi, vj) = (v.get(i), v.get(j));
                w.set(i, vj);
                w.set(j, vi);
                Elem::Vec(w)
            }
            other => panic!("direct-sum element expected, got {other:?}"),
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emv::TableEmv;
    use crate::mv::FiniteMvAlgebra;

    fn table(mv: FiniteMvAlgebra) -> Arc<Emv> {
        Arc::new(Emv::Table(TableEmv::from_mv(&mv)))
    }

    fn chain(n: u32) -> Arc<Emv> {
        table(FiniteMvAlgebra::mk_chain(n).unwrap())
    }

    fn square() -> Arc<Emv> {
        table(FiniteMvAlgebra::mk_boolean(2).unwrap())
    }

    #[test]
    fn identity_validates_exhaustively_on_tables() {
        let m = chain(4);
        let f = identity_morphism(m);
        let v = validate_morphism(&f, 0).unwrap();
        assert!(matches!(v.status, crate::verdict::Status::Pass), "{v}");
    }

    #[test]
    fn setminus_validates_up_to_bound() {
        let f = setminus_morphism();
        let v = validate_morphism(&f, 3).unwrap();
        assert!(v.passed(), "{v}");
        assert!(matches!(v.status, crate::verdict::Status::PassUpToBound { .. }));
    }

    #[test]
    fn a_small_family_is_rejected_for_coverage_first() {
        let m = chain(3);
        let lonely = EmvMorphism::from_entries(
            m.clone(),
            m,
            "zero-only",
            vec![Entry::new("at-0", Elem::idx(0), Arc::new(|x: &Elem| x.clone()))],
        );
        let v = validate_morphism(&lonely, 0).unwrap();
        assert_eq!(v.clause(), Some("domains-full"), "{v}");
    }

    #[test]
    fn meeting_a_constant_fails_image_fullness() {
        let f = meet_with_const_morphism(
            Arc::new(Emv::FinSet(FinSetBooleanEmv::new())),
            Elem::set([1]),
            "cap-at-1",
        );
        let v = validate_morphism(&f, 3).unwrap();
        assert_eq!(v.clause(), Some("images-full"), "{v}");
        // and yet pointwise it is indistinguishable from the identity
        let v = is_approx_identity(&f, 3);
        assert!(v.passed(), "{v}");
    }

    #[test]
    fn undirected_family_is_caught_last() {
        let b = square();
        // x ∧ {a0} on all of B₂, against 0 ↦ 0, {a0} ↦ ⊤ on [0, {a0}]
        let whole = Entry::new(
            "meet-a0",
            Elem::idx(3),
            Arc::new(|x: &Elem| match x {
                Elem::Idx(i) => Elem::idx(i & 1),
                _ => unreachable!(),
            }),
        );
        let stretch = Entry::new(
            "stretch",
            Elem::idx(1),
            Arc::new(|x: &Elem| match x {
                Elem::Idx(0) => Elem::idx(0),
                Elem::Idx(1) => Elem::idx(3),
                _ => unreachable!(),
            }),
        );
        let f = EmvMorphism::from_entries(b.clone(), b, "undirected", vec![whole, stretch]);
        let v = validate_morphism(&f, 0).unwrap();
        assert_eq!(v.clause(), Some("directed"), "{v}");
    }

    #[test]
    fn incompatible_entries_are_caught() {
        let b = square();
        let small_id = Entry::new("id-on-a0", Elem::idx(1), Arc::new(|x: &Elem| x.clone()));
        let swap = Entry::new(
            "swap-atoms",
            Elem::idx(3),
            Arc::new(|x: &Elem| match x {
                Elem::Idx(1) => Elem::idx(2),
                Elem::Idx(2) => Elem::idx(1),
                other => other.clone(),
            }),
        );
        let f = EmvMorphism::from_entries(b.clone(), b, "twisted", vec![small_id, swap]);
        let v = validate_morphism(&f, 0).unwrap();
        assert_eq!(v.clause(), Some("compatible"), "{v}");
    }

    #[test]
    fn setminus_is_similar_to_the_identity_both_ways() {
        let f = setminus_morphism();
        let id = identity_morphism(f.source().clone());
        assert!(similar(&f, &id, 3).passed());
        assert!(similar(&id, &f, 3).passed());
    }

    #[test]
    fn eq_at_separates_sets_that_differ_deep_enough() {
        let f = setminus_morphism();
        let x = Elem::set([1]);
        let y = Elem::set([1, 2]);
        let v = morphism_eq_at(&f, &x, &y, 4).unwrap();
        assert!(v.failed());
        let w = v.witness.as_ref().unwrap();
        assert!(w.items.iter().any(|(_, val)| val == "drop-3"), "{v}");
        // a point equals itself at every entry, and the verdict stays bounded
        let v = morphism_eq_at(&f, &Elem::set([2]), &Elem::set([2]), 4).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn eq_at_reports_vacuity_when_no_entry_sees_both() {
        let m = chain(3);
        let lonely = EmvMorphism::from_entries(
            m.clone(),
            m,
            "zero-only",
            vec![Entry::new("at-0", Elem::idx(0), Arc::new(|x: &Elem| x.clone()))],
        );
        let v = morphism_eq_at(&lonely, &Elem::idx(1), &Elem::idx(2), 0).unwrap();
        assert!(matches!(v.status, crate::verdict::Status::Vacuous { .. }), "{v}");
    }

    #[test]
    fn setminus_is_standard_with_identity_maxima() {
        let f = setminus_morphism();
        let v = is_standard(&f, 3);
        assert!(v.passed(), "{v}");
        let h = extract_strong_hom(&f, 3).unwrap();
        for x in [Elem::set([]), Elem::set([1]), Elem::set([2, 3])] {
            assert!(h.source().eq_elem(&h.apply(&x), &x));
        }
        assert!(is_strong_hom(&h, 3).passed());
    }

    #[test]
    fn round_trip_between_families_and_homs() {
        let m = chain(4);
        let h = identity_strong_hom(m.clone());
        let f = morphism_from_strong_hom(&h);
        let v = validate_morphism(&f, 0).unwrap();
        assert!(matches!(v.status, crate::verdict::Status::Pass), "{v}");
        let h2 = extract_strong_hom(&f, 0).unwrap();
        for i in 0..4 {
            assert!(m.eq_elem(&h2.apply(&Elem::idx(i)), &Elem::idx(i)));
        }
    }

    #[test]
    fn composition_respects_algebra_identity() {
        let f = setminus_morphism();
        let g = identity_morphism(chain(3));
        assert!(compose(&g, &f, 3).is_err());
        let ff = compose(&f, &f, 3).unwrap();
        assert!(is_approx_identity(&ff, 3).passed());
    }

    #[test]
    fn approx_isomorphism_of_setminus_with_itself() {
        let f = setminus_morphism();
        let v = is_approx_isomorphism(&f, &f, 3).unwrap();
        assert!(v.passed(), "{v}");
    }

    #[test]
    fn restriction_reindexes_over_given_idempotents() {
        let f = setminus_morphism();
        let k = [Elem::set([1]), Elem::set([1, 2])];
        let r = restrict_morphism(&f, &k, 3).unwrap();
        let ents = r.entries(3);
        assert_eq!(ents.len(), 2);
        assert!(f.source().eq_elem(&ents[0].dom, &k[0]));
        // each borrowed map still meets with its image top, so the
        // identity-up-to-meet shape survives restriction
        let v = is_approx_identity(&r, 3);
        assert!(v.passed(), "{v}");
    }

    #[test]
    fn swap_homs_are_strong_and_their_families_validate() {
        let h = finset_swap_hom(1, 2);
        assert!(is_strong_hom(&h, 3).passed());
        let f = morphism_from_strong_hom(&h);
        assert!(validate_morphism(&f, 2).unwrap().passed());
        // but swapping is nobody's identity
        assert!(is_approx_identity(&f, 2).failed());
    }
}
