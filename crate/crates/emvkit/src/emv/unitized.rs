//! Unitization: a top element adjoined to a proper direct sum.
//!
//! The carrier doubles the sum M: a `Low(v)` for every v ∈ M, and a `High(v)`
//! standing for its complement — the vector that is `¬vᵢ` at coordinate `i`,
//! so eventually 1. Lows are eventually 0 and Highs eventually 1, so the two
//! halves never meet as long as the sum really is proper; the constructor
//! insists on that. The result is an MV-algebra with `0 = Low(0)` and
//! `1 = High(0)`, and `Low` embeds M onto a maximal ideal of it.
//!
//! All operations reduce to per-coordinate factor arithmetic on payloads:
//!
//! ```text
//! ¬Low(v)            = High(v)
//! Low(u)  ⊕ Low(v)   = Low(u ⊕ v)
//! High(u) ⊕ High(v)  = High(u ⊙ v)
//! Low(u)  ⊕ High(v)  = High(v ⊙ ¬u)
//! ```
//!
//! and joins/meets follow by De Morgan. Each right-hand payload is finitely
//! supported, which is what keeps the representation closed.

use super::direct_sum::{DirectSumEmv, FinSupp};
use crate::mv::FiniteMvAlgebra;
use crate::{Error, Result};

/// An element of a unitized sum: a vector of the sum, or the complement of
/// one. The payload of `High(v)` is `v`, not the cofinite vector it denotes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnitElem {
    Low(FinSupp),
    High(FinSupp),
}

impl UnitElem {
    pub fn payload(&self) -> &FinSupp {
        match self {
            UnitElem::Low(v) | UnitElem::High(v) => v,
        }
    }

    pub fn is_low(&self) -> bool {
        matches!(self, UnitElem::Low(_))
    }
}

#[derive(Debug, Clone)]
pub struct UnitizedMv {
    base: DirectSumEmv,
}

impl UnitizedMv {
    /// Adjoin a top to `base`. Requires a base with no top of its own —
    /// a repeating pattern with at least one nontrivial factor — since
    /// otherwise `Low` and `High` would collide semantically.
    pub fn new(base: DirectSumEmv) -> Result<Self> {
        if !base.repeats() {
            return Err(Error::Precondition(
                "unitization needs a topless base; a finite direct sum already has one".into(),
            ));
        }
        if !base.has_nontrivial_factor() {
            return Err(Error::Precondition(
                "unitization needs a nontrivial base; the one-element sum already has a top".into(),
            ));
        }
        Ok(UnitizedMv { base })
    }

    pub fn base(&self) -> &DirectSumEmv {
        &self.base
    }

    fn fac(&self, i: u32) -> &FiniteMvAlgebra {
        self.base.factor(i).expect("repeating pattern has every coordinate")
    }

    /// Payload combination over the union of supports.
    fn pointwise(
        &self,
        a: &FinSupp,
        b: &FinSupp,
        op: impl Fn(&FiniteMvAlgebra, u32, u32) -> u32,
    ) -> FinSupp {
        let coords: Vec<u32> = a.support().chain(b.support()).collect();
        let mut out = FinSupp::zero();
        for i in coords {
            out.set(i, op(self.fac(i), a.get(i), b.get(i)));
        }
        out
    }

    pub fn neg(&self, x: &UnitElem) -> UnitElem {
        match x {
            UnitElem::Low(v) => UnitElem::High(v.clone()),
            UnitElem::High(v) => UnitElem::Low(v.clone()),
        }
    }

    pub fn oplus(&self, x: &UnitElem, y: &UnitElem) -> UnitElem {
        use UnitElem::*;
        match (x, y) {
            (Low(u), Low(v)) => Low(self.pointwise(u, v, |f, a, b| f.oplus(a, b))),
            (High(u), High(v)) => High(self.pointwise(u, v, |f, a, b| f.odot(a, b))),
            (Low(u), High(v)) | (High(v), Low(u)) => {
                High(self.pointwise(v, u, |f, a, b| f.odot(a, f.neg(b))))
            }
        }
    }

    pub fn join(&self, x: &UnitElem, y: &UnitElem) -> UnitElem {
        use UnitElem::*;
        match (x, y) {
            (Low(u), Low(v)) => Low(self.pointwise(u, v, |f, a, b| f.vee(a, b))),
            (High(u), High(v)) => High(self.pointwise(u, v, |f, a, b| f.wedge(a, b))),
            // u ∨ ¬v = ¬(¬u ∧ v)
            (Low(u), High(v)) | (High(v), Low(u)) => {
                High(self.pointwise(v, u, |f, a, b| f.wedge(a, f.neg(b))))
            }
        }
    }

    pub fn meet(&self, x: &UnitElem, y: &UnitElem) -> UnitElem {
        use UnitElem::*;
        match (x, y) {
            (Low(u), Low(v)) => Low(self.pointwise(u, v, |f, a, b| f.wedge(a, b))),
            (High(u), High(v)) => High(self.pointwise(u, v, |f, a, b| f.vee(a, b))),
            (Low(u), High(v)) | (High(v), Low(u)) => {
                Low(self.pointwise(u, v, |f, a, b| f.wedge(a, f.neg(b))))
            }
        }
    }

    pub fn le(&self, x: &UnitElem, y: &UnitElem) -> bool {
        use UnitElem::*;
        match (x, y) {
            (Low(u), Low(v)) => self.base.le(u, v),
            // uᵢ ≤ ¬vᵢ everywhere; outside both supports that is 0 ≤ 1
            (Low(u), High(v)) => {
                let coords: Vec<u32> = u.support().chain(v.support()).collect();
                coords.into_iter().all(|i| {
                    let f = self.fac(i);
                    f.le(u.get(i), f.neg(v.get(i)))
                })
            }
            // a High is 1 cofinitely, a Low is 0 cofinitely, and some
            // cofinal coordinate is nontrivial
            (High(_), Low(_)) => false,
            (High(u), High(v)) => self.base.le(v, u),
        }
    }

    /// Idempotents have pointwise idempotent payloads under either tag,
    /// because factor idempotents are closed under ¬.
    pub fn is_idempotent_unit(&self, x: &UnitElem) -> bool {
        x.payload().iter().all(|(i, v)| self.fac(i).is_idempotent(v))
    }

    /// λ_b(x) = ¬x ∧ b; callers guard idempotence of `b` and `x ≤ b`.
    pub fn lambda(&self, b: &UnitElem, x: &UnitElem) -> UnitElem {
        self.meet(&self.neg(x), b)
    }

    /// An idempotent above `x`: the support indicator for Lows, the top for
    /// Highs.
    pub fn dominating(&self, x: &UnitElem) -> UnitElem {
        match x {
            UnitElem::Low(v) => UnitElem::Low(self.base.support_indicator(v)),
            UnitElem::High(_) => UnitElem::High(FinSupp::zero()),
        }
    }

    pub fn elements(&self, level: u32) -> Vec<UnitElem> {
        both_tags(self.base.elements(level))
    }

    pub fn idempotents(&self, level: u32) -> Vec<UnitElem> {
        both_tags(self.base.idempotents(level))
    }

    /// `[0, e]`: finite below a `Low`, infinite below any `High` (every
    /// far-out coordinate is free there).
    pub fn low_interval(&self, e: &UnitElem) -> Result<Vec<UnitElem>> {
        match e {
            UnitElem::Low(v) => {
                Ok(self.base.interval(v)?.into_iter().map(UnitElem::Low).collect())
            }
            UnitElem::High(_) => Err(Error::Unsupported(
                "the interval below a cofinite element is infinite".into(),
            )),
        }
    }

    /// The sub-MV-algebra of elements supported on the first `k` coordinates,
    /// as a finite table. Both tags over every base vector on those
    /// coordinates; the pointwise op formulas keep supports put, so this
    /// really is closed.
    pub fn bounded_slice(&self, k: u32) -> Result<FiniteMvAlgebra> {
        let vecs = self.base.elements(k);
        let n = vecs.len();
        if 2 * n > 512 {
            return Err(Error::InvalidInput(format!(
                "slice would have {} elements; cap is 512",
                2 * n
            )));
        }
        let elems: Vec<UnitElem> = both_tags(vecs);
        let index_of = |x: &UnitElem| -> Result<u32> {
            elems
                .iter()
                .position(|e| e == x)
                .map(|i| i as u32)
                .ok_or_else(|| Error::Domain(format!("{} escaped the slice", self.format_unit(x))))
        };
        let mut oplus = vec![vec![0u32; 2 * n]; 2 * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                oplus[i][j] = index_of(&self.oplus(x, y))?;
            }
        }
        let mut neg = vec![0u32; 2 * n];
        for (i, x) in elems.iter().enumerate() {
            neg[i] = index_of(&self.neg(x))?;
        }
        let zero = index_of(&UnitElem::Low(FinSupp::zero()))?;
        let one = index_of(&UnitElem::High(FinSupp::zero()))?;
        let labels = elems.iter().map(|e| self.format_unit(e)).collect();
        FiniteMvAlgebra::from_tables(oplus, neg, zero, one, Some(labels))
    }

    pub fn format_unit(&self, x: &UnitElem) -> String {
        match x {
            UnitElem::Low(v) => self.base.format_vec(v),
            UnitElem::High(v) => format!("¬{}", self.base.format_vec(v)),
        }
    }
}

/// Every vector under both tags, all `Low`s first.
fn both_tags(vecs: Vec<FinSupp>) -> Vec<UnitElem> {
    let highs: Vec<UnitElem> = vecs.iter().cloned().map(UnitElem::High).collect();
    vecs.into_iter().map(UnitElem::Low).chain(highs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::FiniteMvAlgebra;

    fn lukasiewicz_stream(n: u32) -> UnitizedMv {
        let sum = DirectSumEmv::new(vec![FiniteMvAlgebra::mk_chain(n).unwrap()], true).unwrap();
        UnitizedMv::new(sum).unwrap()
    }

    #[test]
    fn rejects_bases_with_a_top() {
        let finite = DirectSumEmv::new(vec![FiniteMvAlgebra::mk_chain(3).unwrap()], false).unwrap();
        assert!(UnitizedMv::new(finite).is_err());

        let trivialish = DirectSumEmv::new(
            vec![FiniteMvAlgebra::mk_boolean(0).unwrap(), FiniteMvAlgebra::mk_chain(2).unwrap()],
            true,
        );
        // a nontrivial factor somewhere in the pattern is enough
        assert!(UnitizedMv::new(trivialish.unwrap()).is_ok());
    }

    #[test]
    fn involution_and_de_morgan() {
        let n = lukasiewicz_stream(3);
        let x = UnitElem::Low(FinSupp::unit(0, 1));
        let y = UnitElem::High(FinSupp::unit(2, 1));
        assert_eq!(n.neg(&n.neg(&x)), x);
        let lhs = n.neg(&n.join(&x, &y));
        let rhs = n.meet(&n.neg(&x), &n.neg(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_tag_oplus_hits_top_exactly_when_it_should() {
        let n = lukasiewicz_stream(3);
        // ½ at coordinate 0, plus the complement of ½ at coordinate 0, is 1
        let x = UnitElem::Low(FinSupp::unit(0, 1));
        let y = UnitElem::High(FinSupp::unit(0, 1));
        assert_eq!(n.oplus(&x, &y), UnitElem::High(FinSupp::zero()));
        // but against the complement of 1 at coordinate 0 it stays short
        let z = UnitElem::High(FinSupp::unit(0, 2));
        assert_eq!(n.oplus(&x, &z), UnitElem::High(FinSupp::unit(0, 1)));
    }

    #[test]
    fn order_separates_the_tags() {
        let n = lukasiewicz_stream(3);
        let low = UnitElem::Low(FinSupp::unit(0, 2));
        let high = UnitElem::High(FinSupp::unit(0, 2));
        let top = UnitElem::High(FinSupp::zero());
        assert!(n.le(&low, &top));
        assert!(!n.le(&top, &low));
        assert!(!n.le(&low, &high)); // 1 ≰ ¬1 at coordinate 0
        assert!(n.le(&UnitElem::Low(FinSupp::unit(0, 1)), &UnitElem::High(FinSupp::unit(1, 2))));
    }

    #[test]
    fn slice_is_an_mv_algebra() {
        let n = lukasiewicz_stream(3);
        let slice = n.bounded_slice(2).unwrap();
        assert_eq!(slice.size(), 18);
        let verdict = slice.check_mv_axioms();
        assert!(verdict.passed(), "{verdict}");
    }

    #[test]
    fn interval_below_low_is_the_base_interval() {
        let n = lukasiewicz_stream(4);
        let v = FinSupp::from_entries([(0, 2), (3, 1)]);
        let ival = n.low_interval(&UnitElem::Low(v)).unwrap();
        assert_eq!(ival.len(), 6);
        assert!(ival.iter().all(|e| e.is_low()));
        assert!(n.low_interval(&UnitElem::High(FinSupp::zero())).is_err());
    }
}
