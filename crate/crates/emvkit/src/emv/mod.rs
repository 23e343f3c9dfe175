//! EMV-algebras: distributive lattices with a compatible ⊕ whose idempotent
//! intervals `[0, b]` are MV-algebras and whose idempotents dominate every
//! element. A top element is optional; the interesting backends lack one.
//!
//! ## Design
//!
//! Elements are the plain-data [`Elem`] enum; an [`Emv`] value interprets
//! them. Infinite carriers (direct sums with a repeating pattern, finite
//! subsets of ℕ, unitizations, free algebras) expose deterministic bounded
//! enumerations `elements(level)` / `idempotents(level)`; checks over them
//! return `pass-up-to-bound` rather than `pass`.
//!
//! λ has two routes: a min-scan over the interval (the definitional one,
//! which doubles as an EMV3 probe and is the only route for raw tables) and
//! structural per-backend formulas used on hot paths. Tests pin the two
//! routes together.

mod checks;
mod direct_sum;
mod finset;
mod ideal;
mod pomonoid;
mod product;
mod table;
mod unitized;

pub use checks::{check_emv_axioms, is_full, is_full_subalgebra, unitize};
pub use direct_sum::{DirectSumEmv, FinSupp};
pub use finset::FinSetBooleanEmv;
pub use ideal::{is_ideal, is_maximal_ideal, Ideal};
pub use pomonoid::{check_alt_axioms, emv_from_pomonoid, AltOutcome, Pomonoid};
pub use product::ProductEmv;
pub use table::TableEmv;
pub use unitized::{UnitElem, UnitizedMv};

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::free::FreeMv;
use crate::mv::{FiniteMvAlgebra, MvTerm};
use crate::{Error, Result};

pub type NatSet = BTreeSet<u32>;

/// An element of some EMV-algebra. Which variants are meaningful, and what
/// they mean, depends on the interpreting [`Emv`] value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    /// Carrier index of a finite table algebra.
    Idx(u32),
    /// Finitely-supported element of a direct sum.
    Vec(FinSupp),
    /// Finite subset of `{1, 2, …}`.
    Set(NatSet),
    /// Element of a finite product, one coordinate per factor.
    Tuple(Vec<Elem>),
    /// Element of a unitized direct sum.
    Unit(UnitElem),
    /// Term of a free MV-algebra; equality is semantic, not structural.
    Term(Arc<MvTerm>),
}

impl Elem {
    pub fn idx(i: u32) -> Elem {
        Elem::Idx(i)
    }

    pub fn set(xs: impl IntoIterator<Item = u32>) -> Elem {
        Elem::Set(xs.into_iter().collect())
    }
}

/// One of the supported EMV-algebra backends.
#[derive(Debug, Clone)]
pub enum Emv {
    Table(TableEmv),
    DirectSum(DirectSumEmv),
    FinSet(FinSetBooleanEmv),
    Product(ProductEmv),
    Unitized(UnitizedMv),
    Free(FreeMv),
}

/// Structural sameness of algebras (not isomorphism): same backend, same
/// defining data. What composition and the CLI use to decide whether two
/// independently constructed handles denote one algebra.
impl PartialEq for Emv {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Emv::Table(a), Emv::Table(b)) => a == b,
            (Emv::DirectSum(a), Emv::DirectSum(b)) => a == b,
            (Emv::FinSet(_), Emv::FinSet(_)) => true,
            (Emv::Product(a), Emv::Product(b)) => {
                a.factors().len() == b.factors().len()
                    && a.factors().iter().zip(b.factors()).all(|(x, y)| **x == **y)
            }
            (Emv::Unitized(a), Emv::Unitized(b)) => a.base() == b.base(),
            (Emv::Free(a), Emv::Free(b)) => a.names() == b.names(),
            _ => false,
        }
    }
}

impl Emv {
    pub fn kind(&self) -> &'static str {
        match self {
            Emv::Table(_) => "table",
            Emv::DirectSum(_) => "direct-sum",
            Emv::FinSet(_) => "finset-boolean",
            Emv::Product(_) => "product",
            Emv::Unitized(_) => "unitized",
            Emv::Free(_) => "free-mv",
        }
    }

    /// Finite carrier, so `elements(level)` is eventually everything?
    pub fn is_finite(&self) -> bool {
        match self {
            Emv::Table(_) => true,
            Emv::DirectSum(d) => !d.repeats(),
            Emv::FinSet(_) => false,
            Emv::Product(p) => p.factors().iter().all(|f| f.is_finite()),
            Emv::Unitized(_) => false,
            Emv::Free(_) => false,
        }
    }

    /// Does `elements(level)` cover the whole carrier?
    pub fn exhaustive_at(&self, level: u32) -> bool {
        match self {
            Emv::Table(_) => true,
            Emv::DirectSum(d) => d.exhaustive_at(level),
            Emv::FinSet(_) => false,
            Emv::Product(p) => p.factors().iter().all(|f| f.exhaustive_at(level)),
            Emv::Unitized(_) => false,
            Emv::Free(_) => false,
        }
    }

    /// Shape/range check: is `x` a well-formed element of this algebra?
    pub fn validate_elem(&self, x: &Elem) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidInput(format!("bad element for {}: {why}", self.kind())));
        match (self, x) {
            (Emv::Table(t), Elem::Idx(i)) => {
                if *i < t.size() { Ok(()) } else { bad("index out of range") }
            }
            (Emv::DirectSum(d), Elem::Vec(v)) => d.validate_vec(v),
            (Emv::FinSet(_), Elem::Set(s)) => {
                if s.iter().all(|&k| k >= 1) { Ok(()) } else { bad("members start at 1") }
            }
            (Emv::Product(p), Elem::Tuple(t)) => {
                if t.len() != p.factors().len() {
                    return bad("wrong arity");
                }
                for (c, f) in t.iter().zip(p.factors()) {
                    f.validate_elem(c)?;
                }
                Ok(())
            }
            (Emv::Unitized(u), Elem::Unit(e)) => u.base().validate_vec(e.payload()),
            (Emv::Free(f), Elem::Term(t)) => {
                if t.arity() <= f.var_count() { Ok(()) } else { bad("unknown variable") }
            }
            _ => bad("wrong element shape"),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Emv::Table(t) => Elem::Idx(t.zero()),
            Emv::DirectSum(_) => Elem::Vec(FinSupp::zero()),
            Emv::FinSet(_) => Elem::Set(NatSet::new()),
            Emv::Product(p) => Elem::Tuple(p.factors().iter().map(|f| f.zero()).collect()),
            Emv::Unitized(_) => Elem::Unit(UnitElem::Low(FinSupp::zero())),
            Emv::Free(_) => Elem::Term(MvTerm::zero()),
        }
    }

    pub fn top(&self) -> Option<Elem> {
        match self {
            Emv::Table(t) => Some(Elem::Idx(t.top())),
            Emv::DirectSum(d) => d.top().map(Elem::Vec),
            Emv::FinSet(_) => None,
            Emv::Unitized(_) => Some(Elem::Unit(UnitElem::High(FinSupp::zero()))),
            Emv::Product(p) => {
                let mut tops = Vec::with_capacity(p.factors().len());
                for f in p.factors() {
                    tops.push(f.top()?);
                }
                Some(Elem::Tuple(tops))
            }
            Emv::Free(_) => Some(Elem::Term(MvTerm::one())),
        }
    }

    /// Element equality. Structural for every backend except free algebras,
    /// where it is decided by the evaluation oracles.
    pub fn eq_elem(&self, x: &Elem, y: &Elem) -> bool {
        match (self, x, y) {
            (Emv::Free(f), Elem::Term(a), Elem::Term(b)) => f.term_eq(a, b),
            (Emv::Product(p), Elem::Tuple(a), Elem::Tuple(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).zip(p.factors()).all(|((u, v), f)| f.eq_elem(u, v))
            }
            _ => x == y,
        }
    }

    pub fn join(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Emv::Table(t), Elem::Idx(a), Elem::Idx(b)) => Elem::Idx(t.join(*a, *b)),
            (Emv::DirectSum(d), Elem::Vec(a), Elem::Vec(b)) => Elem::Vec(d.join(a, b)),
            (Emv::FinSet(_), Elem::Set(a), Elem::Set(b)) => Elem::Set(a | b),
            (Emv::Product(p), Elem::Tuple(a), Elem::Tuple(b)) => Elem::Tuple(
                a.iter().zip(b).zip(p.factors()).map(|((u, v), f)| f.join(u, v)).collect(),
            ),
            (Emv::Unitized(u), Elem::Unit(a), Elem::Unit(b)) => Elem::Unit(u.join(a, b)),
            (Emv::Free(_), Elem::Term(a), Elem::Term(b)) => {
                Elem::Term(MvTerm::vee(a.clone(), b.clone()))
            }
            _ => panic!("join: element shape does not match algebra {}", self.kind()),
        }
    }

    pub fn meet(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Emv::Table(t), Elem::Idx(a), Elem::Idx(b)) => Elem::Idx(t.meet(*a, *b)),
            (Emv::DirectSum(d), Elem::Vec(a), Elem::Vec(b)) => Elem::Vec(d.meet(a, b)),
            (Emv::FinSet(_), Elem::Set(a), Elem::Set(b)) => Elem::Set(a & b),
            (Emv::Product(p), Elem::Tuple(a), Elem::Tuple(b)) => Elem::Tuple(
                a.iter().zip(b).zip(p.factors()).map(|((u, v), f)| f.meet(u, v)).collect(),
            ),
            (Emv::Unitized(u), Elem::Unit(a), Elem::Unit(b)) => Elem::Unit(u.meet(a, b)),
            (Emv::Free(_), Elem::Term(a), Elem::Term(b)) => {
                Elem::Term(MvTerm::wedge(a.clone(), b.clone()))
            }
            _ => panic!("meet: element shape does not match algebra {}", self.kind()),
        }
    }

    pub fn oplus(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Emv::Table(t), Elem::Idx(a), Elem::Idx(b)) => Elem::Idx(t.oplus(*a, *b)),
            (Emv::DirectSum(d), Elem::Vec(a), Elem::Vec(b)) => Elem::Vec(d.oplus(a, b)),
            (Emv::FinSet(_), Elem::Set(a), Elem::Set(b)) => Elem::Set(a | b),
            (Emv::Product(p), Elem::Tuple(a), Elem::Tuple(b)) => Elem::Tuple(
                a.iter().zip(b).zip(p.factors()).map(|((u, v), f)| f.oplus(u, v)).collect(),
            ),
            (Emv::Unitized(u), Elem::Unit(a), Elem::Unit(b)) => Elem::Unit(u.oplus(a, b)),
            (Emv::Free(_), Elem::Term(a), Elem::Term(b)) => {
                Elem::Term(MvTerm::oplus(a.clone(), b.clone()))
            }
            _ => panic!("oplus: element shape does not match algebra {}", self.kind()),
        }
    }

    /// Lattice order. For free algebras this is semantic (`x ∨ y = y`).
    pub fn le(&self, x: &Elem, y: &Elem) -> bool {
        match (self, x, y) {
            (Emv::Table(t), Elem::Idx(a), Elem::Idx(b)) => t.le(*a, *b),
            (Emv::DirectSum(d), Elem::Vec(a), Elem::Vec(b)) => d.le(a, b),
            (Emv::FinSet(_), Elem::Set(a), Elem::Set(b)) => a.is_subset(b),
            (Emv::Product(p), Elem::Tuple(a), Elem::Tuple(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).zip(p.factors()).all(|((u, v), f)| f.le(u, v))
            }
            (Emv::Unitized(u), Elem::Unit(a), Elem::Unit(b)) => u.le(a, b),
            (Emv::Free(_), _, _) => {
                let j = self.join(x, y);
                self.eq_elem(&j, y)
            }
            _ => panic!("le: element shape does not match algebra {}", self.kind()),
        }
    }

    pub fn is_idempotent(&self, x: &Elem) -> bool {
        let s = self.oplus(x, x);
        self.eq_elem(&s, x)
    }

    /// A canonical idempotent above `x`: the support indicator for direct
    /// sums, `x` itself for finite-set algebras, the top where one exists.
    pub fn dominating(&self, x: &Elem) -> Elem {
        match (self, x) {
            (Emv::Table(t), Elem::Idx(_)) => Elem::Idx(t.top()),
            (Emv::DirectSum(d), Elem::Vec(v)) => Elem::Vec(d.support_indicator(v)),
            (Emv::FinSet(_), Elem::Set(_)) => x.clone(),
            (Emv::Product(p), Elem::Tuple(t)) => {
                Elem::Tuple(t.iter().zip(p.factors()).map(|(c, f)| f.dominating(c)).collect())
            }
            (Emv::Unitized(u), Elem::Unit(e)) => Elem::Unit(u.dominating(e)),
            (Emv::Free(_), Elem::Term(_)) => Elem::Term(MvTerm::one()),
            _ => panic!("dominating: element shape does not match algebra {}", self.kind()),
        }
    }

    /// All idempotents reachable at this level, sorted. Complete for finite
    /// backends regardless of `level`.
    pub fn idempotents(&self, level: u32) -> Vec<Elem> {
        let mut out = match self {
            Emv::Table(t) => t.idempotents().into_iter().map(Elem::Idx).collect(),
            Emv::DirectSum(d) => d.idempotents(level).into_iter().map(Elem::Vec).collect(),
            Emv::FinSet(f) => f.subsets(level).into_iter().map(Elem::Set).collect(),
            Emv::Product(p) => {
                tuples(&p.factors().iter().map(|f| f.idempotents(level)).collect::<Vec<_>>())
            }
            Emv::Unitized(u) => u.idempotents(level).into_iter().map(Elem::Unit).collect(),
            Emv::Free(_) => vec![Elem::Term(MvTerm::zero()), Elem::Term(MvTerm::one())],
        };
        out.sort();
        out.dedup();
        out
    }

    /// Bounded, deterministic element enumeration, sorted (free algebras use
    /// their own deterministic generation order instead).
    pub fn elements(&self, level: u32) -> Vec<Elem> {
        match self {
            Emv::Table(t) => (0..t.size()).map(Elem::Idx).collect(),
            Emv::DirectSum(d) => {
                let mut out: Vec<Elem> = d.elements(level).into_iter().map(Elem::Vec).collect();
                out.sort();
                out
            }
            Emv::FinSet(f) => f.subsets(level).into_iter().map(Elem::Set).collect(),
            Emv::Product(p) => {
                let mut out =
                    tuples(&p.factors().iter().map(|f| f.elements(level)).collect::<Vec<_>>());
                out.sort();
                out
            }
            Emv::Unitized(u) => {
                let mut out: Vec<Elem> = u.elements(level).into_iter().map(Elem::Unit).collect();
                out.sort();
                out
            }
            Emv::Free(f) => f.probe_terms(level).into_iter().map(Elem::Term).collect(),
        }
    }

    /// The full interval `[0, a]` when it is finite; error otherwise.
    pub fn interval_elems(&self, a: &Elem) -> Result<Vec<Elem>> {
        let mut out = match (self, a) {
            (Emv::Table(t), Elem::Idx(b)) => {
                (0..t.size()).filter(|&x| t.le(x, *b)).map(Elem::Idx).collect::<Vec<_>>()
            }
            (Emv::DirectSum(d), Elem::Vec(v)) => {
                d.interval(v)?.into_iter().map(Elem::Vec).collect()
            }
            (Emv::FinSet(f), Elem::Set(s)) => f.power_set(s).into_iter().map(Elem::Set).collect(),
            (Emv::Product(p), Elem::Tuple(t)) => {
                let mut per = Vec::with_capacity(t.len());
                for (c, f) in t.iter().zip(p.factors()) {
                    per.push(f.interval_elems(c)?);
                }
                tuples(&per)
            }
            (Emv::Unitized(u), Elem::Unit(e)) => {
                u.low_interval(e)?.into_iter().map(Elem::Unit).collect()
            }
            (Emv::Free(f), Elem::Term(t)) => {
                if f.term_eq(t, &MvTerm::zero()) {
                    vec![Elem::Term(MvTerm::zero())]
                } else {
                    return Err(Error::Unsupported(
                        "interval of a free MV-algebra below a nonzero element is infinite".into(),
                    ));
                }
            }
            _ => {
                return Err(Error::InvalidInput(format!(
                    "interval bound has the wrong shape for {}",
                    self.kind()
                )))
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `[0, a]`, complete when finite, else the bounded slice of it.
    pub fn interval_probe(&self, a: &Elem, level: u32) -> Vec<Elem> {
        match self.interval_elems(a) {
            Ok(v) => v,
            Err(_) => {
                self.elements(level).into_iter().filter(|x| self.le(x, a)).collect()
            }
        }
    }

    /// Is `interval_elems(a)` the whole of `[0, a]`?
    pub fn interval_exhaustive(&self, a: &Elem) -> bool {
        self.interval_elems(a).is_ok()
    }

    /// λ_b(x): the least z in `[0, b]` with `x ⊕ z = b`. Structural formulas
    /// where the backend has them, min-scan for raw tables. `b` must be
    /// idempotent and `x ≤ b`.
    pub fn lambda(&self, b: &Elem, x: &Elem) -> Result<Elem> {
        self.lambda_guard(b, x)?;
        match (self, b, x) {
            (Emv::Table(_), _, _) => self.lambda_min_scan(b, x, 0),
            (Emv::DirectSum(d), Elem::Vec(bb), Elem::Vec(xx)) => Ok(Elem::Vec(d.lambda(bb, xx))),
            (Emv::FinSet(_), Elem::Set(bb), Elem::Set(xx)) => Ok(Elem::Set(bb - xx)),
            (Emv::Product(p), Elem::Tuple(bb), Elem::Tuple(xx)) => {
                let mut out = Vec::with_capacity(bb.len());
                for ((bc, xc), f) in bb.iter().zip(xx).zip(p.factors()) {
                    out.push(f.lambda(bc, xc)?);
                }
                Ok(Elem::Tuple(out))
            }
            (Emv::Unitized(u), Elem::Unit(bb), Elem::Unit(xx)) => Ok(Elem::Unit(u.lambda(bb, xx))),
            (Emv::Free(f), Elem::Term(bb), Elem::Term(xx)) => {
                if f.term_eq(bb, &MvTerm::one()) {
                    Ok(Elem::Term(MvTerm::neg(xx.clone())))
                } else {
                    // x ≤ b = 0 forces x = 0
                    Ok(Elem::Term(MvTerm::zero()))
                }
            }
            _ => Err(Error::InvalidInput("λ: element shapes do not match the algebra".into())),
        }
    }

    /// Definitional λ: scan `[0, b]` for solutions of `x ⊕ z = b` and take
    /// the unique minimal one. Reports EMV3 violations (no solution, or no
    /// least solution) as domain errors, which makes it the EMV3 probe.
    /// `level` only matters for backends whose intervals are infinite.
    pub fn lambda_min_scan(&self, b: &Elem, x: &Elem, level: u32) -> Result<Elem> {
        self.lambda_guard(b, x)?;
        let zs = self.interval_probe(b, level);
        let sols: Vec<&Elem> = zs
            .iter()
            .filter(|z| {
                let s = self.oplus(x, z);
                self.eq_elem(&s, b)
            })
            .collect();
        if sols.is_empty() {
            return Err(Error::Domain(format!(
                "EMV3 violation: no z in [0,{}] with {} ⊕ z = that bound",
                self.format_elem(b),
                self.format_elem(x)
            )));
        }
        let least = sols.iter().find(|z| sols.iter().all(|w| self.le(z, w)));
        match least {
            Some(z) => Ok((*z).clone()),
            None => Err(Error::Domain(format!(
                "EMV3 violation: solutions of {} ⊕ z = {} have no least member",
                self.format_elem(x),
                self.format_elem(b)
            ))),
        }
    }

    fn lambda_guard(&self, b: &Elem, x: &Elem) -> Result<()> {
        if !self.is_idempotent(b) {
            return Err(Error::Domain(format!("λ bound {} is not idempotent", self.format_elem(b))));
        }
        if !self.le(x, b) {
            return Err(Error::Domain(format!(
                "λ argument {} is not below the bound {}",
                self.format_elem(x),
                self.format_elem(b)
            )));
        }
        Ok(())
    }

    /// x ⊙ y computed inside any idempotent interval containing both; the
    /// canonical choice of interval is `dominating(x ∨ y)`.
    pub fn odot(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let a = self.dominating(&self.join(x, y));
        self.odot_with(&a, x, y)
    }

    /// x ⊙ y inside `[0, a]` for a caller-chosen idempotent `a ≥ x, y`; the
    /// result must not depend on the choice, which tests exploit.
    pub fn odot_with(&self, a: &Elem, x: &Elem, y: &Elem) -> Result<Elem> {
        if !self.is_idempotent(a) {
            return Err(Error::Domain(format!("⊙ bound {} is not idempotent", self.format_elem(a))));
        }
        if !self.le(x, a) || !self.le(y, a) {
            return Err(Error::Domain("⊙ bound does not dominate both arguments".into()));
        }
        let lx = self.lambda(a, x)?;
        let ly = self.lambda(a, y)?;
        let s = self.oplus(&lx, &ly);
        // λ_a of anything in [0,a]; x̄ ⊕ ȳ stays in [0,a] since a is idempotent
        self.lambda(a, &self.meet(&s, a))
    }

    /// x^k under ⊙. `x^0` is the top, so it is a domain error without one.
    pub fn power(&self, x: &Elem, k: u32) -> Result<Elem> {
        if k == 0 {
            return self.top().ok_or_else(|| {
                Error::Domain("x^0 = 1 needs a top element, and this algebra has none".into())
            });
        }
        let mut acc = x.clone();
        for _ in 1..k {
            acc = self.odot(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn format_elem(&self, x: &Elem) -> String {
        match (self, x) {
            (Emv::Table(t), Elem::Idx(i)) => t.label(*i),
            (Emv::DirectSum(d), Elem::Vec(v)) => d.format_vec(v),
            (Emv::FinSet(_), Elem::Set(s)) => format_set(s),
            (Emv::Product(p), Elem::Tuple(t)) => {
                let parts: Vec<String> =
                    t.iter().zip(p.factors()).map(|(c, f)| f.format_elem(c)).collect();
                format!("({})", parts.join(","))
            }
            (Emv::Unitized(u), Elem::Unit(e)) => u.format_unit(e),
            (Emv::Free(f), Elem::Term(t)) => t.fmt_with(f.names()),
            _ => format!("{x:?}"),
        }
    }

    /// The interval `[0, a]` materialized as a finite MV-algebra together
    /// with the index ↔ ambient-element translation.
    pub fn interval_mv(&self, a: &Elem) -> Result<IntervalMv> {
        if !self.is_idempotent(a) {
            return Err(Error::Domain(format!(
                "interval bound {} is not idempotent",
                self.format_elem(a)
            )));
        }
        let elems = self.interval_elems(a)?;
        let n = elems.len() as u32;
        let index_of = |x: &Elem| -> Result<u32> {
            elems
                .iter()
                .position(|e| self.eq_elem(e, x))
                .map(|i| i as u32)
                .ok_or_else(|| Error::Domain(format!("{} escaped [0, a]", self.format_elem(x))))
        };
        let mut oplus = vec![vec![0u32; n as usize]; n as usize];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let s = self.oplus(x, y);
                // x ⊕ y ≤ a ⊕ a = a, so this cannot actually escape
                oplus[i][j] = index_of(&self.meet(&s, a))?;
                if !self.eq_elem(&self.meet(&s, a), &s) {
                    return Err(Error::Domain(format!(
                        "[0, {}] is not closed under ⊕ at {} ⊕ {}",
                        self.format_elem(a),
                        self.format_elem(x),
                        self.format_elem(y)
                    )));
                }
            }
        }
        let mut neg = vec![0u32; n as usize];
        for (i, x) in elems.iter().enumerate() {
            neg[i] = index_of(&self.lambda(a, x)?)?;
        }
        let zero = index_of(&self.zero())?;
        let one = index_of(a)?;
        let labels = elems.iter().map(|e| self.format_elem(e)).collect();
        let alg = FiniteMvAlgebra::from_tables(oplus, neg, zero, one, Some(labels))?;
        Ok(IntervalMv { alg, elems })
    }
}

/// `[0, a]` of some ambient EMV-algebra as a standalone finite MV-algebra.
/// `elems[i]` is the ambient element behind index `i`.
#[derive(Debug, Clone)]
pub struct IntervalMv {
    pub alg: FiniteMvAlgebra,
    pub elems: Vec<Elem>,
}

impl IntervalMv {
    pub fn to_ambient(&self, i: u32) -> &Elem {
        &self.elems[i as usize]
    }

    pub fn index_of(&self, ambient: &Emv, x: &Elem) -> Option<u32> {
        self.elems.iter().position(|e| ambient.eq_elem(e, x)).map(|i| i as u32)
    }
}

/// All tuples over the given per-coordinate choice lists, last coordinate
/// fastest.
fn tuples(per: &[Vec<Elem>]) -> Vec<Elem> {
    let mut out = vec![Vec::new()];
    for choices in per {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in choices {
                let mut t = prefix.clone();
                t.push(c.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out.into_iter().map(Elem::Tuple).collect()
}

pub(crate) fn format_set(s: &NatSet) -> String {
    let parts: Vec<String> = s.iter().map(|k| k.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
