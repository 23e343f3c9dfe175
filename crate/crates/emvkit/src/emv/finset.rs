//! Finite subsets of {1, 2, 3, ...} as a Boolean EMV-algebra.
//!
//! Every element is idempotent, `⊕ = ∨ = ∪`, and there is no top: the
//! carrier is infinite but every element has finite support, so no set
//! dominates all others.  This is the standard desk example of a proper
//! EMV-algebra, and the complement measured inside `[0, B]` is plain set
//! difference `B ∖ A`.

use super::NatSet;
use crate::{Error, Result};

/// The algebra of finite subsets of the positive naturals.
///
/// Stateless: all structure is in the operations.  Bounded enumeration
/// at `level` ranges over subsets of `{1, ..., level}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinSetBooleanEmv;

impl FinSetBooleanEmv {
    pub fn new() -> Self {
        FinSetBooleanEmv
    }

    pub fn validate(&self, a: &NatSet) -> Result<()> {
        if a.contains(&0) {
            return Err(Error::InvalidInput(
                "finite-set elements are subsets of {1, 2, ...}; 0 is not a point".into(),
            ));
        }
        Ok(())
    }

    pub fn join(&self, a: &NatSet, b: &NatSet) -> NatSet {
        a.union(b).copied().collect()
    }

    pub fn meet(&self, a: &NatSet, b: &NatSet) -> NatSet {
        a.intersection(b).copied().collect()
    }

    /// In a Boolean algebra the truncated sum collapses to the join.
    pub fn oplus(&self, a: &NatSet, b: &NatSet) -> NatSet {
        self.join(a, b)
    }

    pub fn le(&self, a: &NatSet, b: &NatSet) -> bool {
        a.is_subset(b)
    }

    /// Complement of `a` inside `[0, b]`: set difference.
    pub fn lambda(&self, b: &NatSet, a: &NatSet) -> Result<NatSet> {
        if !self.le(a, b) {
            return Err(Error::Domain(format!(
                "{} is not below the bound {}",
                super::format_set(a),
                super::format_set(b)
            )));
        }
        Ok(b.difference(a).copied().collect())
    }

    /// All subsets of `{1, ..., level}`, in subset-mask order.
    pub fn subsets(&self, level: u32) -> Vec<NatSet> {
        let level = level.min(16);
        let mut out = Vec::with_capacity(1 << level);
        for mask in 0u32..(1 << level) {
            let mut s = NatSet::new();
            for i in 0..level {
                if mask & (1 << i) != 0 {
                    s.insert(i + 1);
                }
            }
            out.push(s);
        }
        out
    }

    /// All subsets of `s` — the interval `[∅, s]` — in mask order over the
    /// sorted members of `s`.
    pub fn power_set(&self, s: &NatSet) -> Vec<NatSet> {
        let members: Vec<u32> = s.iter().copied().collect();
        let k = members.len().min(16);
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1 << k) {
            let mut t = NatSet::new();
            for (pos, &m) in members.iter().enumerate().take(k) {
                if mask & (1 << pos) != 0 {
                    t.insert(m);
                }
            }
            out.push(t);
        }
        out
    }

    /// `{1, ..., i}`; the empty set when `i = 0`.
    pub fn chain_set(&self, i: u32) -> NatSet {
        (1..=i).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[u32]) -> NatSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn lambda_is_set_difference() {
        let m = FinSetBooleanEmv::new();
        let b = s(&[1, 2, 3]);
        assert_eq!(m.lambda(&b, &s(&[2])).unwrap(), s(&[1, 3]));
        assert_eq!(m.lambda(&b, &b).unwrap(), s(&[]));
        assert_eq!(m.lambda(&b, &s(&[])).unwrap(), b);
        assert!(m.lambda(&s(&[1]), &s(&[2])).is_err());
    }

    #[test]
    fn subsets_count_and_order() {
        let m = FinSetBooleanEmv::new();
        let all = m.subsets(3);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], s(&[]));
        assert_eq!(all[7], s(&[1, 2, 3]));
    }

    #[test]
    fn zero_is_not_a_point() {
        let m = FinSetBooleanEmv::new();
        assert!(m.validate(&s(&[0, 1])).is_err());
        assert!(m.validate(&s(&[1])).is_ok());
    }
}
