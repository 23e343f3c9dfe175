//! Free MV-algebras on at most two generators, with semantic term equality.
//!
//! Elements are raw terms; nothing is ever normalized. Equality is decided
//! by evaluation, twice over, through two independent routes:
//!
//! * a **chain sweep** — evaluate both terms under every assignment drawn
//!   from the equidistant chains with 2 up to [`MAX_CHAIN`] points;
//! * a **rational grid** — evaluate in [0,1] with ⊕ truncated addition and
//!   ¬ the reflection, over every assignment of fractions with denominator
//!   at most [`MAX_DENOM`].
//!
//! Either route alone separates all the desk-scale terms that appear here;
//! running both and comparing verdicts turns a silent evaluator bug into a
//! loud one. A disagreement panics — there is no meaningful way to continue
//! computing in a free algebra whose equality relation is broken. The
//! non-panicking [`FreeMv::oracles_agree`] exists so a test battery can
//! observe agreement as data rather than as the absence of a crash.
//!
//! Verdicts are cached per formatted pair, and bounded enumeration returns
//! semantically-deduplicated terms in a deterministic generation order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::Rational64;
use rand::Rng;

use crate::emv::{self, Elem, Emv, UnitElem};
use crate::morphism::{kv, similar, EmvMorphism, Entry};
use crate::mv::{FiniteMvAlgebra, MvTerm};
use crate::verdict::{DecidedBy, Verdict};
use crate::{env_bound, Error, Result};

/// Largest chain in the sweep oracle.
pub const MAX_CHAIN: u32 = 8;
/// Largest denominator in the grid oracle.
pub const MAX_DENOM: i64 = 12;

#[derive(Clone)]
pub struct FreeMv {
    names: Vec<String>,
    chains: Arc<Vec<FiniteMvAlgebra>>,
    grid: Arc<Vec<Rational64>>,
    eq_cache: Arc<Mutex<HashMap<(String, String), bool>>>,
    probe_cache: Arc<Mutex<HashMap<u32, Vec<Arc<MvTerm>>>>>,
}

impl fmt::Debug for FreeMv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeMv").field("names", &self.names).finish()
    }
}

/// The free MV-algebra over the named generators. Two generators keep every
/// oracle sweep affordable; more would square the grid again.
pub fn mk_free_mv(names: &[&str]) -> Result<FreeMv> {
    if names.len() > 2 {
        return Err(Error::InvalidInput(format!(
            "free algebras support at most 2 generators, got {}",
            names.len()
        )));
    }
    let mut seen = Vec::new();
    for n in names {
        if n.is_empty() || seen.contains(n) {
            return Err(Error::InvalidInput("generator names must be distinct and nonempty".into()));
        }
        seen.push(n);
    }
    let chains: Vec<FiniteMvAlgebra> =
        (2..=MAX_CHAIN).map(|k| FiniteMvAlgebra::mk_chain(k).expect("chain sizes are valid")).collect();
    let mut grid: Vec<Rational64> = Vec::new();
    for d in 1..=MAX_DENOM {
        for n in 0..=d {
            let q = Rational64::new(n, d);
            if !grid.contains(&q) {
                grid.push(q);
            }
        }
    }
    grid.sort();
    Ok(FreeMv {
        names: names.iter().map(|s| s.to_string()).collect(),
        chains: Arc::new(chains),
        grid: Arc::new(grid),
        eq_cache: Arc::new(Mutex::new(HashMap::new())),
        probe_cache: Arc::new(Mutex::new(HashMap::new())),
    })
}

/// Evaluate in [0,1]: ⊕ is addition truncated at 1, ¬ reflects.
pub fn eval_rational(t: &MvTerm, env: &[Rational64]) -> Result<Rational64> {
    let one = Rational64::new(1, 1);
    Ok(match t {
        MvTerm::Zero => Rational64::new(0, 1),
        MvTerm::One => one,
        MvTerm::Var(i) => *env
            .get(*i)
            .ok_or_else(|| Error::InvalidInput(format!("no assignment for variable x{i}")))?,
        MvTerm::Oplus(a, b) => {
            let s = eval_rational(a, env)? + eval_rational(b, env)?;
            if s > one {
                one
            } else {
                s
            }
        }
        MvTerm::Neg(a) => one - eval_rational(a, env)?,
    })
}

fn envs<T: Copy>(values: &[T], vars: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        let mut next = Vec::with_capacity(out.len() * values.len());
        for prefix in &out {
            for &v in values {
                let mut e = prefix.clone();
                e.push(v);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

impl FreeMv {
    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, i: usize) -> Result<Arc<MvTerm>> {
        if i < self.names.len() {
            Ok(MvTerm::var(i))
        } else {
            Err(Error::InvalidInput(format!(
                "variable index {i} out of range for {} generators",
                self.names.len()
            )))
        }
    }

    fn chain_verdict(&self, a: &MvTerm, b: &MvTerm) -> bool {
        let vars = self.var_count();
        for alg in self.chains.iter() {
            let points: Vec<u32> = (0..alg.size()).collect();
            for env in envs(&points, vars) {
                let ea = a.eval(alg, &env).expect("vars are in range by construction");
                let eb = b.eval(alg, &env).expect("vars are in range by construction");
                if ea != eb {
                    return false;
                }
            }
        }
        true
    }

    fn grid_verdict(&self, a: &MvTerm, b: &MvTerm) -> bool {
        let vars = self.var_count();
        for env in envs(&self.grid, vars) {
            let ea = eval_rational(a, &env).expect("vars are in range by construction");
            let eb = eval_rational(b, &env).expect("vars are in range by construction");
            if ea != eb {
                return false;
            }
        }
        true
    }

    /// Both oracle verdicts, no comparison, no panic.
    pub fn oracles_agree(&self, a: &MvTerm, b: &MvTerm) -> (bool, bool) {
        (self.chain_verdict(a, b), self.grid_verdict(a, b))
    }

    /// Semantic equality. Panics if the two oracles disagree: that means an
    /// evaluator is broken, and every downstream answer would be garbage.
    pub fn term_eq(&self, a: &MvTerm, b: &MvTerm) -> bool {
        let key = (a.fmt_with(&[]), b.fmt_with(&[]));
        if let Some(&v) = self.eq_cache.lock().unwrap().get(&key) {
            return v;
        }
        let (by_chains, by_grid) = self.oracles_agree(a, b);
        assert_eq!(
            by_chains,
            by_grid,
            "term-equality oracles disagree on {} vs {}: chain sweep says {}, rational grid says {}",
            key.0,
            key.1,
            by_chains,
            by_grid
        );
        self.eq_cache.lock().unwrap().insert(key, by_chains);
        by_chains
    }

    /// Deterministic, semantically-deduplicated term enumeration. The first
    /// entries are always 0, 1, and the generators; later rounds close under
    /// ¬, ⊕, ∨, ∧ until a level-dependent cap. Cached per level, so repeated
    /// calls are cheap and identical.
    pub fn probe_terms(&self, level: u32) -> Vec<Arc<MvTerm>> {
        if let Some(v) = self.probe_cache.lock().unwrap().get(&level) {
            return v.clone();
        }
        let cap = match level {
            0 => 6,
            1 => 10,
            2 => 16,
            _ => 24,
        };
        let mut terms: Vec<Arc<MvTerm>> = vec![MvTerm::zero(), MvTerm::one()];
        for i in 0..self.var_count() {
            terms.push(MvTerm::var(i));
        }
        let push_new = |terms: &mut Vec<Arc<MvTerm>>, t: Arc<MvTerm>| -> bool {
            if terms.len() >= cap {
                return false;
            }
            if terms.iter().all(|u| !self.term_eq(u, &t)) {
                terms.push(t);
            }
            true
        };
        'grow: loop {
            let snapshot = terms.clone();
            for a in &snapshot {
                if !push_new(&mut terms, MvTerm::neg(a.clone())) {
                    break 'grow;
                }
            }
            for a in &snapshot {
                for b in &snapshot {
                    for t in [
                        MvTerm::oplus(a.clone(), b.clone()),
                        MvTerm::vee(a.clone(), b.clone()),
                        MvTerm::wedge(a.clone(), b.clone()),
                    ] {
                        if !push_new(&mut terms, t) {
                            break 'grow;
                        }
                    }
                }
            }
            if terms.len() == snapshot.len() {
                break;
            }
        }
        self.probe_cache.lock().unwrap().insert(level, terms.clone());
        terms
    }
}

/// Where a lift lands: an algebra together with one value per generator.
#[derive(Clone)]
pub struct LiftTarget {
    algebra: Arc<Emv>,
    assign: Vec<Elem>,
}

impl LiftTarget {
    pub fn new(algebra: Arc<Emv>, assign: Vec<Elem>) -> Result<LiftTarget> {
        for v in &assign {
            algebra.validate_elem(v)?;
        }
        Ok(LiftTarget { algebra, assign })
    }

    pub fn algebra(&self) -> &Arc<Emv> {
        &self.algebra
    }

    pub fn assign(&self) -> &[Elem] {
        &self.assign
    }

    /// The idempotents in the level window that dominate every assigned
    /// value — the index set of the lifted family.
    pub fn caps(&self, level: u32) -> Vec<Elem> {
        self.algebra
            .idempotents(level)
            .into_iter()
            .filter(|a| self.assign.iter().all(|v| self.algebra.le(v, a)))
            .collect()
    }
}

/// Evaluate a term inside the MV-algebra `[0, cap]`: the constant one is the
/// cap, negation is λ_cap, and ⊕ is the ambient ⊕ — below an idempotent it
/// cannot escape the interval, so no truncation is needed.
fn eval_capped(m: &Emv, cap: &Elem, env: &[Elem], t: &MvTerm) -> Result<Elem> {
    Ok(match t {
        MvTerm::Zero => m.zero(),
        MvTerm::One => cap.clone(),
        MvTerm::Var(i) => env
            .get(*i)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("no value assigned to variable x{i}")))?,
        MvTerm::Oplus(u, v) => {
            let a = eval_capped(m, cap, env, u)?;
            let b = eval_capped(m, cap, env, v)?;
            m.oplus(&a, &b)
        }
        MvTerm::Neg(u) => {
            let a = eval_capped(m, cap, env, u)?;
            m.lambda(cap, &a)?
        }
    })
}

fn capped_entry(m: &Arc<Emv>, cap: &Elem, env: &[Elem]) -> Entry {
    let alg = m.clone();
    let cap2 = cap.clone();
    let env2 = env.to_vec();
    Entry::new(
        format!("cap-{}", m.format_elem(cap)),
        Elem::Term(MvTerm::one()),
        Arc::new(move |x: &Elem| match x {
            Elem::Term(t) => eval_capped(&alg, &cap2, &env2, t)
                .expect("capped evaluation is total on terms over the assigned generators"),
            other => panic!("free-algebra element expected, got {other:?}"),
        }),
    )
}

/// The evaluation lift: one entry per dominating idempotent `a`, each the
/// whole-algebra homomorphism that reads generators through the assignment
/// and computes inside `[0, a]`. Every cap sits above every assigned value,
/// which is exactly what makes the lift commute with the generator
/// injection on the nose rather than merely up to meet.
pub fn free_lift(free: &FreeMv, target: &LiftTarget) -> Result<EmvMorphism> {
    if target.assign.len() != free.var_count() {
        return Err(Error::InvalidInput(format!(
            "{} generators but {} assigned values",
            free.var_count(),
            target.assign.len()
        )));
    }
    if target.caps(env_bound()).is_empty() {
        return Err(Error::BoundExhausted(format!(
            "no idempotent of the target dominates all assigned values at level {}",
            env_bound()
        )));
    }
    let src = Arc::new(Emv::Free(free.clone()));
    let tgt = target.algebra.clone();
    let t2 = target.clone();
    Ok(EmvMorphism::generated_bounded(
        src,
        tgt.clone(),
        "φ",
        Arc::new(move |q| {
            t2.caps(q).iter().map(|a| capped_entry(&tgt, a, &t2.assign)).collect()
        }),
    ))
}

fn commute_settle(phi: &EmvMorphism, level: u32, tested: bool) -> Verdict {
    if !tested {
        Verdict::vacuous(level)
    } else if phi.is_complete_at(level) {
        Verdict::pass().decided(DecidedBy::Exhaustive)
    } else {
        Verdict::pass_up_to(level).decided(DecidedBy::BoundedSearch)
    }
}

fn generator_guard(phi: &EmvMorphism, free: &FreeMv, assign: &[Elem]) -> Option<Verdict> {
    if !matches!(phi.source().as_ref(), Emv::Free(f) if f.names() == free.names()) {
        return Some(Verdict::not_a_competitor(
            "source-mismatch",
            vec![kv("source", phi.source().kind().into())],
        ));
    }
    if assign.len() != free.var_count() {
        return Some(Verdict::not_a_competitor(
            "assignment-arity",
            vec![kv("generators", free.var_count().to_string()), kv("values", assign.len().to_string())],
        ));
    }
    None
}

/// Does the family send each generator to its assigned value, in every
/// entry whose domain covers the generator? This is commutation on the
/// nose; families indexed by idempotents *below* some assigned value
/// cannot pass it, which is what the up-to-meet variant is for.
pub fn strict_commutes(phi: &EmvMorphism, free: &FreeMv, assign: &[Elem], level: u32) -> Verdict {
    if let Some(v) = generator_guard(phi, free, assign) {
        return v;
    }
    let src = phi.source();
    let tgt = phi.target();
    let mut tested = false;
    for (i, want) in assign.iter().enumerate() {
        let gen = Elem::Term(MvTerm::var(i));
        for e in phi.entries(level.saturating_add(1)) {
            if !src.le(&gen, &e.dom) {
                continue;
            }
            tested = true;
            let got = e.apply(&gen);
            if !tgt.eq_elem(&got, want) {
                return Verdict::fail(
                    "strict-commutes",
                    vec![
                        kv("x", free.names()[i].clone()),
                        kv("entry", e.key.clone()),
                        kv("got", tgt.format_elem(&got)),
                        kv("want", tgt.format_elem(want)),
                    ],
                );
            }
        }
    }
    commute_settle(phi, level, tested)
}

/// Commutation up to meet: each entry must agree with the assignment after
/// capping it at the entry's own image top, `f(x) ∧ φ_i(a_i) = φ_i(τ(x))`.
/// Strict commutation implies this, never the other way around.
pub fn sim_commutes(phi: &EmvMorphism, free: &FreeMv, assign: &[Elem], level: u32) -> Verdict {
    if let Some(v) = generator_guard(phi, free, assign) {
        return v;
    }
    let src = phi.source();
    let tgt = phi.target();
    let mut tested = false;
    for (i, want) in assign.iter().enumerate() {
        let gen = Elem::Term(MvTerm::var(i));
        for e in phi.entries(level.saturating_add(1)) {
            if !src.le(&gen, &e.dom) {
                continue;
            }
            tested = true;
            let got = e.apply(&gen);
            let capped = tgt.meet(want, &e.image_top());
            if !tgt.eq_elem(&got, &capped) {
                return Verdict::fail(
                    "sim-commutes",
                    vec![
                        kv("x", free.names()[i].clone()),
                        kv("entry", e.key.clone()),
                        kv("f(x)∧top", tgt.format_elem(&capped)),
                        kv("φ(τx)", tgt.format_elem(&got)),
                    ],
                );
            }
        }
    }
    commute_settle(phi, level, tested)
}

/// The up-to-meet lift: where a proper algebra offers no idempotent above
/// the assigned values, evaluate in its unitization instead and cap the
/// result at *every* idempotent, `β_a(z) = φ(z) ∧ a`. Entries whose cap
/// sits below an assigned value truncate it — so β commutes only up to
/// meet, and that gap is the point. Targets that already have a top take
/// the on-the-nose lift, caps above the assignment and all.
pub fn weakly_free_lift(free: &FreeMv, m: &Arc<Emv>, assign: &[Elem]) -> Result<EmvMorphism> {
    if assign.len() != free.var_count() {
        return Err(Error::InvalidInput(format!(
            "{} generators but {} assigned values",
            free.var_count(),
            assign.len()
        )));
    }
    for v in assign {
        m.validate_elem(v)?;
    }
    match m.as_ref() {
        Emv::DirectSum(d) if d.repeats() => {
            let n = Arc::new(emv::unitize(m)?);
            let top_n = n.top().expect("unitizations have a top");
            let env: Vec<Elem> = assign
                .iter()
                .map(|v| match v {
                    Elem::Vec(s) => Elem::Unit(UnitElem::Low(s.clone())),
                    other => panic!("direct-sum element expected, got {other:?}"),
                })
                .collect();
            let src = Arc::new(Emv::Free(free.clone()));
            let tgt = m.clone();
            let m2 = m.clone();
            Ok(EmvMorphism::generated_bounded(
                src,
                tgt,
                "β",
                Arc::new(move |q| {
                    let mut out = Vec::new();
                    for a in m2.idempotents(q) {
                        let Elem::Vec(supp) = &a else { continue };
                        let nn = n.clone();
                        let tn = top_n.clone();
                        let env2 = env.clone();
                        let low_cap = Elem::Unit(UnitElem::Low(supp.clone()));
                        out.push(Entry::new(
                            format!("cap-{}", m2.format_elem(&a)),
                            Elem::Term(MvTerm::one()),
                            Arc::new(move |x: &Elem| match x {
                                Elem::Term(t) => {
                                    let v = eval_capped(&nn, &tn, &env2, t).expect(
                                        "unitized evaluation is total on terms over the assigned generators",
                                    );
                                    match nn.meet(&v, &low_cap) {
                                        Elem::Unit(UnitElem::Low(u)) => Elem::Vec(u),
                                        other => panic!("meeting with an ideal element must land in it, got {other:?}"),
                                    }
                                }
                                other => panic!("free-algebra element expected, got {other:?}"),
                            }),
                        ));
                    }
                    out
                }),
            ))
        }
        _ if m.top().is_some() => {
            free_lift(free, &LiftTarget::new(m.clone(), assign.to_vec())?)
        }
        _ => Err(Error::Unsupported(format!(
            "weakly free lifts need a repeating direct sum or an algebra with a top, not {}",
            m.kind()
        ))),
    }
}

/// Which commutation clause a lift is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMode {
    /// On the nose: `φ∘τ = f`.
    Free,
    /// Up to meet: `φ∘τ ∼ f`.
    WeaklyFree,
}

/// ≈-uniqueness of the lift: any family that commutes in the mode's sense
/// must be similar to the canonical one. In the strict mode the whole-
/// algebra entries of the competitor are additionally checked to carry it —
/// restricting to them stays within its ≈-class.
pub fn check_free_uniqueness(
    free: &FreeMv,
    target: &LiftTarget,
    h: &EmvMorphism,
    mode: LiftMode,
    level: u32,
) -> Result<Verdict> {
    let premise = match mode {
        LiftMode::Free => strict_commutes(h, free, target.assign(), level),
        LiftMode::WeaklyFree => sim_commutes(h, free, target.assign(), level),
    };
    if !premise.passed() {
        return Ok(Verdict::not_a_competitor(
            "commutation-premise",
            vec![kv("detail", premise.to_string())],
        ));
    }
    let lift = match mode {
        LiftMode::Free => free_lift(free, target)?,
        LiftMode::WeaklyFree => weakly_free_lift(free, target.algebra(), target.assign())?,
    };
    let mut v = similar(h, &lift, level).and(similar(&lift, h, level));
    if mode == LiftMode::Free {
        let src = h.source();
        let top = src.top().expect("free algebras have a top");
        if !h.entries(level.saturating_add(1)).iter().any(|e| src.eq_elem(&e.dom, &top)) {
            return Ok(Verdict::fail(
                "top-entry-missing",
                vec![kv("competitor", h.name().to_string())],
            ));
        }
        let h2 = h.clone();
        let src2 = src.clone();
        let top2 = top.clone();
        let restricted = EmvMorphism::generated_bounded(
            src.clone(),
            h.target().clone(),
            format!("{}⇂1", h.name()),
            Arc::new(move |q| {
                h2.entries(q).into_iter().filter(|e| src2.eq_elem(&e.dom, &top2)).collect()
            }),
        );
        v = v.and(similar(h, &restricted, level)).and(similar(&restricted, h, level));
    }
    Ok(if v.passed() {
        v
    } else {
        Verdict::fail("lift-unique", vec![kv("detail", v.to_string())])
    })
}

/// Distinct generators stay distinct in the term algebra: the equality
/// oracle must separate every pair of generator terms.
pub fn tau_injective(free: &FreeMv) -> Verdict {
    for i in 0..free.var_count() {
        for j in i + 1..free.var_count() {
            if free.term_eq(&MvTerm::var(i), &MvTerm::var(j)) {
                return Verdict::fail(
                    "tau-injective",
                    vec![
                        kv("x", free.names()[i].clone()),
                        kv("y", free.names()[j].clone()),
                    ],
                );
            }
        }
    }
    Verdict::pass().decided(DecidedBy::Exhaustive)
}

/// The least full subalgebra containing `G`, by fixpoint: seed with 0, the
/// top (cofinality forces it into every full subalgebra of a finite
/// algebra), and `G`; close under ∨, ∧, ⊕ and interval complements. Pass
/// means `G` generates the whole algebra; failure exhibits the proper full
/// subalgebra reached instead. Either way the result is cross-checked
/// against the independent subalgebra predicate.
pub fn check_generator_lemma(m: &Arc<Emv>, gens: &[Elem], level: u32) -> Result<Verdict> {
    if !m.exhaustive_at(level) {
        return Err(Error::Precondition(format!(
            "generator closure needs the whole carrier; {} is not exhausted at level {level}",
            m.kind()
        )));
    }
    let all = m.elements(level);
    let top = m
        .top()
        .ok_or_else(|| Error::Precondition("a finite algebra must have a top".into()))?;
    let mut s: Vec<Elem> = vec![m.zero(), top];
    for g in gens {
        m.validate_elem(g)?;
        s.push(g.clone());
    }
    let push_new = |s: &mut Vec<Elem>, x: Elem| {
        if !s.iter().any(|e| m.eq_elem(e, &x)) {
            s.push(x);
        }
    };
    loop {
        let before = s.len();
        let snapshot = s.clone();
        for x in &snapshot {
            for y in &snapshot {
                push_new(&mut s, m.join(x, y));
                push_new(&mut s, m.meet(x, y));
                push_new(&mut s, m.oplus(x, y));
            }
        }
        for b in &snapshot {
            if !m.is_idempotent(b) {
                continue;
            }
            for x in &snapshot {
                if m.le(x, b) {
                    push_new(&mut s, m.lambda(b, x)?);
                }
            }
        }
        if s.len() == before {
            break;
        }
    }
    let sub = emv::is_full_subalgebra(m, &s, level);
    if !sub.passed() {
        // the closure is full and closed by construction; a failing
        // cross-check means this function is broken, not the input
        return Ok(Verdict::fail(
            "closure-not-a-full-subalgebra",
            vec![kv("detail", sub.to_string())],
        ));
    }
    if s.len() == all.len() {
        return Ok(Verdict::pass().decided(DecidedBy::Exhaustive));
    }
    let mut items = vec![kv("size", s.len().to_string()), kv("of", all.len().to_string())];
    let mut shown = Vec::new();
    for e in s.iter().take(8) {
        shown.push(m.format_elem(e));
    }
    if s.len() > 8 {
        shown.push("…".into());
    }
    items.push(kv("members", shown.join(", ")));
    if let Some(missed) = all.iter().find(|x| !s.iter().any(|e| m.eq_elem(e, x))) {
        items.push(kv("outside", m.format_elem(missed)));
    }
    Ok(Verdict::fail("proper-full-subalgebra", items))
}

/// A random term, leaf-biased so depth stays honest: at `depth = 0` only
/// leaves are drawn; above that, two thirds of draws recurse.
pub fn random_term(rng: &mut impl Rng, vars: usize, depth: u32) -> Arc<MvTerm> {
    let leaf = depth == 0 || rng.random_range(0..3) == 0;
    if leaf {
        match rng.random_range(0..2 + vars as u32) {
            0 => MvTerm::zero(),
            1 => MvTerm::one(),
            i => MvTerm::var((i - 2) as usize),
        }
    } else {
        match rng.random_range(0..4) {
            0 => MvTerm::neg(random_term(rng, vars, depth - 1)),
            1 => MvTerm::oplus(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1)),
            2 => MvTerm::vee(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1)),
            _ => MvTerm::wedge(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FreeMv {
        mk_free_mv(&["x", "y"]).unwrap()
    }

    #[test]
    fn classical_identities_and_their_failures() {
        let f = f2();
        let x = MvTerm::var(0);
        let y = MvTerm::var(1);
        // involution and De Morgan hold
        assert!(f.term_eq(&MvTerm::neg(MvTerm::neg(x.clone())), &x));
        assert!(f.term_eq(
            &MvTerm::neg(MvTerm::vee(x.clone(), y.clone())),
            &MvTerm::wedge(MvTerm::neg(x.clone()), MvTerm::neg(y.clone())),
        ));
        // excluded middle and ⊕-idempotence do not
        assert!(!f.term_eq(&MvTerm::vee(x.clone(), MvTerm::neg(x.clone())), &MvTerm::one()));
        assert!(!f.term_eq(&MvTerm::oplus(x.clone(), x.clone()), &x));
    }

    #[test]
    fn oracle_verdicts_line_up() {
        let f = f2();
        let x = MvTerm::var(0);
        let y = MvTerm::var(1);
        let pairs = [
            (MvTerm::vee(x.clone(), y.clone()), MvTerm::vee(y.clone(), x.clone())),
            (MvTerm::oplus(x.clone(), MvTerm::one()), MvTerm::one()),
            (MvTerm::wedge(x.clone(), y.clone()), MvTerm::vee(x.clone(), y.clone())),
            (x.clone(), y.clone()),
        ];
        for (a, b) in pairs {
            let (c, g) = f.oracles_agree(&a, &b);
            assert_eq!(c, g, "{} vs {}", a, b);
        }
    }

    #[test]
    fn rational_evaluator_truncates() {
        let t = MvTerm::oplus(MvTerm::var(0), MvTerm::var(0));
        let half = Rational64::new(1, 2);
        assert_eq!(eval_rational(&t, &[half]).unwrap(), Rational64::new(1, 1));
        let third = Rational64::new(1, 3);
        assert_eq!(eval_rational(&t, &[third]).unwrap(), Rational64::new(2, 3));
    }

    #[test]
    fn probe_terms_are_distinct_and_stable() {
        let f = f2();
        let terms = f.probe_terms(1);
        assert!(terms.len() >= 4 && terms.len() <= 10, "{}", terms.len());
        for (i, a) in terms.iter().enumerate() {
            for b in &terms[i + 1..] {
                assert!(!f.term_eq(a, b), "{} and {} coincide", a, b);
            }
        }
        let again = f.probe_terms(1);
        assert_eq!(terms.len(), again.len());
        for (a, b) in terms.iter().zip(&again) {
            assert!(f.term_eq(a, b));
        }
    }

    #[test]
    fn single_generator_and_bad_inputs() {
        let f = mk_free_mv(&["t"]).unwrap();
        assert_eq!(f.var_count(), 1);
        assert!(f.var(1).is_err());
        assert!(mk_free_mv(&["a", "b", "c"]).is_err());
        assert!(mk_free_mv(&["a", "a"]).is_err());
        // no generators: just the two constants
        let f0 = mk_free_mv(&[]).unwrap();
        assert_eq!(f0.probe_terms(3).len(), 2);
    }

    use crate::emv::{DirectSumEmv, FinSupp, TableEmv};
    use crate::morphism::validate_morphism;

    fn chain3() -> Arc<Emv> {
        Arc::new(Emv::Table(TableEmv::from_mv(&FiniteMvAlgebra::mk_chain(3).unwrap())))
    }

    fn square() -> Arc<Emv> {
        let c2 = FiniteMvAlgebra::mk_chain(2).unwrap();
        let b2 = FiniteMvAlgebra::mk_product(&[&c2, &c2]).unwrap();
        Arc::new(Emv::Table(TableEmv::from_mv(&b2)))
    }

    fn two_sum() -> Arc<Emv> {
        Arc::new(Emv::DirectSum(
            DirectSumEmv::new(vec![FiniteMvAlgebra::mk_chain(2).unwrap()], true).unwrap(),
        ))
    }

    fn unit_at(i: u32) -> Elem {
        Elem::Vec(FinSupp::unit(i, 1))
    }

    #[test]
    fn lift_into_a_chain_commutes_strictly() {
        let f = mk_free_mv(&["x"]).unwrap();
        let m = chain3();
        let t = LiftTarget::new(m.clone(), vec![Elem::idx(1)]).unwrap();
        let phi = free_lift(&f, &t).unwrap();
        assert!(validate_morphism(&phi, 1).unwrap().passed());
        assert!(strict_commutes(&phi, &f, t.assign(), 1).passed());
        assert!(sim_commutes(&phi, &f, t.assign(), 1).passed());
        // evaluation through the assignment: ½⊙½ = 0 and ½⊕½ = 1 in the chain
        let x = MvTerm::var(0);
        let ent = &phi.entries(1)[0];
        assert_eq!(ent.apply(&Elem::Term(MvTerm::odot(x.clone(), x.clone()))), Elem::idx(0));
        assert_eq!(ent.apply(&Elem::Term(MvTerm::oplus(x.clone(), x.clone()))), Elem::idx(2));
    }

    #[test]
    fn a_remapped_entry_is_caught_with_its_witness() {
        let f = mk_free_mv(&["x"]).unwrap();
        let m = chain3();
        let t = LiftTarget::new(m.clone(), vec![Elem::idx(1)]).unwrap();
        let phi = free_lift(&f, &t).unwrap();
        // same family, but one entry sends the generator to 0 instead
        let inner = phi.clone();
        let fv = f.clone();
        let bad = EmvMorphism::generated_bounded(
            phi.source().clone(),
            phi.target().clone(),
            "φ-remapped",
            Arc::new(move |q| {
                inner
                    .entries(q)
                    .into_iter()
                    .map(|e| {
                        let fv2 = fv.clone();
                        Entry::new(e.key.clone(), e.dom.clone(), {
                            let orig = e.map();
                            Arc::new(move |z: &Elem| match z {
                                Elem::Term(tm) if fv2.term_eq(tm, &MvTerm::var(0)) => Elem::idx(0),
                                _ => orig(z),
                            })
                        })
                    })
                    .collect()
            }),
        );
        let v = sim_commutes(&bad, &f, t.assign(), 1);
        assert!(v.failed());
        assert_eq!(v.clause(), Some("sim-commutes"));
        assert!(strict_commutes(&bad, &f, t.assign(), 1).failed());
    }

    #[test]
    fn the_gap_between_equality_and_meet_on_a_proper_sum() {
        let f = mk_free_mv(&["x"]).unwrap();
        let m = two_sum();
        let assign = vec![unit_at(0)];
        let beta = weakly_free_lift(&f, &m, &assign).unwrap();
        assert!(validate_morphism(&beta, 2).unwrap().passed());
        assert!(sim_commutes(&beta, &f, &assign, 2).passed());
        // the entry capped at the second coordinate truncates f(x) to 0
        let strict = strict_commutes(&beta, &f, &assign, 2);
        assert!(strict.failed());
        assert_eq!(strict.clause(), Some("strict-commutes"));
        let at_e1 = beta
            .entries(2)
            .into_iter()
            .find(|e| {
                let t = e.image_top();
                m.eq_elem(&t, &unit_at(1))
            })
            .expect("the coordinate-1 cap is inside the window");
        assert_eq!(at_e1.apply(&Elem::Term(MvTerm::var(0))), Elem::Vec(FinSupp::zero()));
        // and a target that already has a top falls back to the strict lift
        let phi = weakly_free_lift(&f, &chain3(), &[Elem::idx(1)]).unwrap();
        assert!(strict_commutes(&phi, &f, &[Elem::idx(1)], 1).passed());
    }

    #[test]
    fn uniqueness_accepts_the_proof_constructions() {
        let f = mk_free_mv(&["x"]).unwrap();
        let m = square();
        // assign the atom (1,0): its caps are the atom itself and the top
        let t = LiftTarget::new(m.clone(), vec![Elem::idx(1)]).unwrap();
        assert_eq!(t.caps(0).len(), 2);
        let phi = free_lift(&f, &t).unwrap();
        assert!(check_free_uniqueness(&f, &t, &phi, LiftMode::Free, 1).unwrap().passed());
        // the competitor that keeps only the whole-algebra cap
        let inner = phi.clone();
        let m2 = m.clone();
        let top = m.top().unwrap();
        let top_only = EmvMorphism::generated_bounded(
            phi.source().clone(),
            m.clone(),
            "φ⇂top",
            Arc::new(move |q| {
                inner
                    .entries(q)
                    .into_iter()
                    .filter(|e| m2.eq_elem(&e.image_top(), &top))
                    .collect()
            }),
        );
        assert!(check_free_uniqueness(&f, &t, &top_only, LiftMode::Free, 1).unwrap().passed());
        // and the meet-with-cap replay of the proof, built from the top entry
        let inner = phi.clone();
        let m3 = m.clone();
        let t3 = t.clone();
        let topc = m.top().unwrap();
        let replay = EmvMorphism::generated_bounded(
            phi.source().clone(),
            m.clone(),
            "φ∧caps",
            Arc::new(move |q| {
                let Some(base) = inner
                    .entries(q)
                    .into_iter()
                    .find(|e| m3.eq_elem(&e.image_top(), &topc))
                else {
                    return Vec::new();
                };
                t3.caps(q)
                    .into_iter()
                    .map(|c| {
                        let alg = m3.clone();
                        let bm = base.map();
                        let cap = c.clone();
                        Entry::new(
                            format!("meet-{}", alg.format_elem(&c)),
                            base.dom.clone(),
                            Arc::new(move |z: &Elem| alg.meet(&bm(z), &cap)),
                        )
                    })
                    .collect()
            }),
        );
        assert!(check_free_uniqueness(&f, &t, &replay, LiftMode::Free, 1).unwrap().passed());
        // a family that fails the commutation premise is not a competitor
        let off = LiftTarget::new(m.clone(), vec![Elem::idx(2)]).unwrap();
        let other = free_lift(&f, &off).unwrap();
        let v = check_free_uniqueness(&f, &t, &other, LiftMode::Free, 1).unwrap();
        assert!(matches!(v.status, crate::verdict::Status::NotACompetitor));
    }

    #[test]
    fn weak_uniqueness_on_the_proper_sum() {
        let f = mk_free_mv(&["x"]).unwrap();
        let m = two_sum();
        let assign = vec![unit_at(0)];
        let t = LiftTarget::new(m.clone(), assign.clone()).unwrap();
        let beta = weakly_free_lift(&f, &m, &assign).unwrap();
        assert!(check_free_uniqueness(&f, &t, &beta, LiftMode::WeaklyFree, 2)
            .unwrap()
            .passed());
        // the strict-style family over dominating caps only also lands in β's class
        let gamma = free_lift(&f, &t).unwrap();
        assert!(check_free_uniqueness(&f, &t, &gamma, LiftMode::WeaklyFree, 2)
            .unwrap()
            .passed());
    }

    #[test]
    fn generators_and_the_subalgebras_they_reach() {
        let m = chain3();
        // the middle point generates the whole chain
        let v = check_generator_lemma(&m, &[Elem::idx(1)], 0).unwrap();
        assert!(v.passed());
        // nothing but the constants reaches only the two-element skeleton
        let v = check_generator_lemma(&m, &[], 0).unwrap();
        assert!(v.failed());
        assert_eq!(v.clause(), Some("proper-full-subalgebra"));
        let sq = square();
        // one atom plus the forced top generates everything
        assert!(check_generator_lemma(&sq, &[Elem::idx(1)], 0).unwrap().passed());
        assert!(check_generator_lemma(&sq, &[], 0).unwrap().failed());
    }

    #[test]
    fn generator_terms_stay_separated() {
        let f = f2();
        assert!(tau_injective(&f).passed());
        assert!(tau_injective(&mk_free_mv(&["t"]).unwrap()).passed());
    }
}
