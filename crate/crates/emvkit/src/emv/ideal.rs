//! Ideals: downward-closed, ⊕-closed, nonempty subsets.
//!
//! The payoff predicate is maximality, checked by saturation: an ideal is
//! maximal when throwing in any outside element and closing under ⊕ and
//! downward floods the whole (bounded) carrier. The flagship instance is a
//! topless algebra sitting inside its unitization as the lower half — that
//! copy is a maximal ideal, which is what makes the top-adjoining
//! construction canonical rather than ad hoc.

use std::fmt;
use std::sync::Arc;

use super::{Elem, Emv};
use crate::verdict::{DecidedBy, Verdict};

type Pred = Arc<dyn Fn(&Elem) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Ideal {
    Explicit(Vec<Elem>),
    Pred(Pred, String),
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Explicit(v) => f.debug_tuple("Explicit").field(&v.len()).finish(),
            Ideal::Pred(_, name) => f.debug_tuple("Pred").field(name).finish(),
        }
    }
}

impl Ideal {
    pub fn explicit(members: impl IntoIterator<Item = Elem>) -> Self {
        Ideal::Explicit(members.into_iter().collect())
    }

    pub fn predicate(name: &str, p: impl Fn(&Elem) -> bool + Send + Sync + 'static) -> Self {
        Ideal::Pred(Arc::new(p), name.to_string())
    }

    pub fn contains(&self, m: &Emv, x: &Elem) -> bool {
        match self {
            Ideal::Explicit(v) => v.iter().any(|e| m.eq_elem(e, x)),
            Ideal::Pred(p, _) => p(x),
        }
    }

    /// The members visible at `level`.
    pub fn members(&self, m: &Emv, level: u32) -> Vec<Elem> {
        m.elements(level).into_iter().filter(|x| self.contains(m, x)).collect()
    }
}

fn settle(m: &Emv, level: u32) -> Verdict {
    let ex = m.exhaustive_at(level);
    Verdict::pass_at(level, ex)
        .decided(if ex { DecidedBy::Exhaustive } else { DecidedBy::BoundedSearch })
}

pub fn is_ideal(m: &Emv, i: &Ideal, level: u32) -> Verdict {
    if !i.contains(m, &m.zero()) {
        return Verdict::fail("ideal-zero", vec![]);
    }
    let elems = m.elements(level);
    for x in elems.iter().filter(|x| i.contains(m, x)) {
        for y in &elems {
            if m.le(y, x) && !i.contains(m, y) {
                return Verdict::fail(
                    "ideal-down",
                    vec![
                        ("member".into(), m.format_elem(x)),
                        ("below".into(), m.format_elem(y)),
                    ],
                );
            }
            if i.contains(m, y) {
                let s = m.oplus(x, y);
                if !i.contains(m, &s) {
                    return Verdict::fail(
                        "ideal-oplus",
                        vec![
                            ("x".into(), m.format_elem(x)),
                            ("y".into(), m.format_elem(y)),
                            ("sum".into(), m.format_elem(&s)),
                        ],
                    );
                }
            }
        }
    }
    settle(m, level)
}

/// Close `seed` under ⊕ and downward inside `universe`. Sums that leave the
/// universe are dropped, which keeps the check conservative: saturation can
/// only under-approximate, never over-claim.
fn saturate(m: &Emv, universe: &[Elem], seed: Vec<Elem>) -> Vec<Elem> {
    let mut set = seed;
    loop {
        let mut grew = false;
        let snapshot = set.clone();
        for x in &snapshot {
            for u in universe {
                if m.le(u, x) && !set.iter().any(|e| m.eq_elem(e, u)) {
                    set.push(u.clone());
                    grew = true;
                }
            }
            for y in &snapshot {
                let s = m.oplus(x, y);
                if universe.iter().any(|e| m.eq_elem(e, &s))
                    && !set.iter().any(|e| m.eq_elem(e, &s))
                {
                    set.push(s);
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

pub fn is_maximal_ideal(m: &Emv, i: &Ideal, level: u32) -> Verdict {
    let base = is_ideal(m, i, level);
    if base.failed() {
        return base;
    }
    let universe = m.elements(level);
    let inside = i.members(m, level);
    let outside: Vec<&Elem> = universe.iter().filter(|x| !i.contains(m, x)).collect();
    if outside.is_empty() {
        return Verdict::fail(
            "maximal-proper",
            vec![("note".into(), "ideal covers the whole carrier".into())],
        );
    }
    for y in outside {
        let mut seed = inside.clone();
        seed.push(y.clone());
        let closure = saturate(m, &universe, seed);
        if let Some(missing) =
            universe.iter().find(|u| !closure.iter().any(|e| m.eq_elem(e, u)))
        {
            return Verdict::fail(
                "maximal-saturates",
                vec![
                    ("adjoined".into(), m.format_elem(y)),
                    ("unreached".into(), m.format_elem(missing)),
                ],
            );
        }
    }
    base.and(settle(m, level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emv::checks::unitize;
    use crate::emv::{DirectSumEmv, TableEmv};
    use crate::mv::FiniteMvAlgebra;

    fn boolean_square() -> Emv {
        Emv::Table(TableEmv::from_mv(&FiniteMvAlgebra::mk_boolean(2).unwrap()))
    }

    #[test]
    fn ideal_clauses_fire() {
        let b = boolean_square();
        // indices: 0=∅, 1={a0}, 2={a1}, 3={a0,a1}
        let v = is_ideal(&b, &Ideal::explicit([Elem::idx(1)]), 0);
        assert_eq!(v.clause(), Some("ideal-zero"));
        let v = is_ideal(&b, &Ideal::explicit([Elem::idx(0), Elem::idx(3)]), 0);
        assert_eq!(v.clause(), Some("ideal-down"));
        let v = is_ideal(
            &b,
            &Ideal::explicit([Elem::idx(0), Elem::idx(1), Elem::idx(2)]),
            0,
        );
        assert_eq!(v.clause(), Some("ideal-oplus"));
        assert!(is_ideal(&b, &Ideal::explicit([Elem::idx(0), Elem::idx(1)]), 0).passed());
    }

    #[test]
    fn maximality_in_the_square() {
        let b = boolean_square();
        let atom = Ideal::explicit([Elem::idx(0), Elem::idx(1)]);
        assert!(is_maximal_ideal(&b, &atom, 0).passed());
        let zero_only = Ideal::explicit([Elem::idx(0)]);
        let v = is_maximal_ideal(&b, &zero_only, 0);
        assert_eq!(v.clause(), Some("maximal-saturates"));
        let whole = Ideal::explicit((0..4).map(Elem::idx));
        assert_eq!(is_maximal_ideal(&b, &whole, 0).clause(), Some("maximal-proper"));
    }

    #[test]
    fn lower_half_of_a_unitization_is_maximal() {
        let sum = DirectSumEmv::new(vec![FiniteMvAlgebra::mk_chain(3).unwrap()], true).unwrap();
        let n = unitize(&Emv::DirectSum(sum)).unwrap();
        let lows = Ideal::predicate("eventually-zero", |x| {
            matches!(x, Elem::Unit(u) if u.is_low())
        });
        let v = is_maximal_ideal(&n, &lows, 2);
        assert!(v.passed(), "{v}");
        assert!(matches!(v.status, crate::verdict::Status::PassUpToBound { .. }));
    }
}
