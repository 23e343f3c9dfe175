//! Direct sums of finite MV-algebras with finite support: the canonical
//! source of proper EMV-algebras. A sum is described by an explicit pattern
//! of factors which either stops (finite product) or repeats periodically
//! forever.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::mv::FiniteMvAlgebra;
use crate::{Error, Result};

/// Finitely-supported assignment `coordinate → nonzero factor element`.
/// Canonical: zero entries are never stored, so structural equality is
/// element equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSupp(BTreeMap<u32, u32>);

impl FinSupp {
    pub fn zero() -> Self {
        FinSupp(BTreeMap::new())
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (i, v) in entries {
            if v != 0 {
                m.insert(i, v);
            }
        }
        FinSupp(m)
    }

    /// `e_i(v)`: the vector with `v` at coordinate `i`.
    pub fn unit(i: u32, v: u32) -> Self {
        FinSupp::from_entries([(i, v)])
    }

    pub fn get(&self, i: u32) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: u32, v: u32) {
        if v == 0 {
            self.0.remove(&i);
        } else {
            self.0.insert(i, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.keys().copied()
    }

    pub fn max_coord(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&i, &v)| (i, v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectSumEmv {
    pattern: Vec<Arc<FiniteMvAlgebra>>,
    repeat: bool,
}

impl DirectSumEmv {
    /// `repeat = false` gives the finite sum of exactly the pattern factors
    /// (an MV-algebra); `repeat = true` repeats the pattern over all of ℕ,
    /// which is a proper EMV-algebra as soon as a factor is nontrivial.
    ///
    /// Every factor must place its zero at index 0 — that is what makes the
    /// "no stored zeros" normal form of [`FinSupp`] canonical.
    pub fn new(pattern: Vec<FiniteMvAlgebra>, repeat: bool) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::InvalidInput("direct sum needs a nonempty pattern".into()));
        }
        for f in &pattern {
            if f.zero() != 0 {
                return Err(Error::InvalidInput(
                    "direct-sum factors must have their zero at index 0".into(),
                ));
            }
        }
        Ok(DirectSumEmv { pattern: pattern.into_iter().map(Arc::new).collect(), repeat })
    }

    pub fn repeats(&self) -> bool {
        self.repeat
    }

    pub fn pattern(&self) -> &[Arc<FiniteMvAlgebra>] {
        &self.pattern
    }

    pub fn factor(&self, i: u32) -> Option<&FiniteMvAlgebra> {
        let len = self.pattern.len() as u32;
        if self.repeat {
            Some(&self.pattern[(i % len) as usize])
        } else if i < len {
            Some(&self.pattern[i as usize])
        } else {
            None
        }
    }

    /// Number of coordinates, when finite.
    pub fn coord_count(&self) -> Option<u32> {
        if self.repeat { None } else { Some(self.pattern.len() as u32) }
    }

    pub fn exhaustive_at(&self, level: u32) -> bool {
        matches!(self.coord_count(), Some(n) if level >= n)
    }

    /// Is any factor bigger than the one-point algebra?
    pub fn has_nontrivial_factor(&self) -> bool {
        self.pattern.iter().any(|f| f.size() > 1)
    }

    pub fn validate_vec(&self, v: &FinSupp) -> Result<()> {
        for (i, x) in v.iter() {
            let f = self.factor(i).ok_or_else(|| {
                Error::InvalidInput(format!("coordinate {i} out of range for this sum"))
            })?;
            if x >= f.size() {
                return Err(Error::InvalidInput(format!(
                    "entry {x} at coordinate {i} out of range for a factor of size {}",
                    f.size()
                )));
            }
            if x == 0 {
                return Err(Error::InvalidInput(format!(
                    "stored zero at coordinate {i} breaks the normal form"
                )));
            }
        }
        Ok(())
    }

    fn pointwise(&self, a: &FinSupp, b: &FinSupp, op: impl Fn(&FiniteMvAlgebra, u32, u32) -> u32) -> FinSupp {
        let mut out = FinSupp::zero();
        for i in a.support().chain(b.support()) {
            if let Some(f) = self.factor(i) {
                out.set(i, op(f, a.get(i), b.get(i)));
            }
        }
        out
    }

    pub fn oplus(&self, a: &FinSupp, b: &FinSupp) -> FinSupp {
        self.pointwise(a, b, |f, x, y| f.oplus(x, y))
    }

    pub fn join(&self, a: &FinSupp, b: &FinSupp) -> FinSupp {
        self.pointwise(a, b, |f, x, y| f.vee(x, y))
    }

    pub fn meet(&self, a: &FinSupp, b: &FinSupp) -> FinSupp {
        self.pointwise(a, b, |f, x, y| f.wedge(x, y))
    }

    pub fn le(&self, a: &FinSupp, b: &FinSupp) -> bool {
        a.iter().all(|(i, x)| match self.factor(i) {
            Some(f) => f.le(x, b.get(i)),
            None => false,
        })
    }

    /// λ_b(x) componentwise: inside each factor `λ_{b_i}(x_i) = ¬x_i ∧ b_i`.
    pub fn lambda(&self, b: &FinSupp, x: &FinSupp) -> FinSupp {
        let mut out = FinSupp::zero();
        for (i, bi) in b.iter() {
            if let Some(f) = self.factor(i) {
                out.set(i, f.wedge(f.neg(x.get(i)), bi));
            }
        }
        out
    }

    /// The least canonical dominating idempotent: factor tops on exactly the
    /// support of `v`.
    pub fn support_indicator(&self, v: &FinSupp) -> FinSupp {
        let mut out = FinSupp::zero();
        for (i, _) in v.iter() {
            if let Some(f) = self.factor(i) {
                out.set(i, f.one());
            }
        }
        out
    }

    pub fn top(&self) -> Option<FinSupp> {
        match self.coord_count() {
            Some(n) => {
                let mut out = FinSupp::zero();
                for i in 0..n {
                    let f = self.factor(i).unwrap();
                    out.set(i, f.one());
                }
                Some(out)
            }
            None => {
                if self.has_nontrivial_factor() {
                    None
                } else {
                    Some(FinSupp::zero()) // the one-point algebra
                }
            }
        }
    }

    fn coords_upto(&self, level: u32) -> Vec<u32> {
        let n = match self.coord_count() {
            Some(n) => n.min(level),
            None => level,
        };
        (0..n).collect()
    }

    /// All vectors whose coordinate `i` ranges over `choices(i, factor_i)`,
    /// over the given coordinates.
    fn combos(
        &self,
        coords: &[u32],
        choices: impl Fn(u32, &FiniteMvAlgebra) -> Vec<u32>,
    ) -> Vec<FinSupp> {
        let mut out = vec![FinSupp::zero()];
        for &i in coords {
            let f = match self.factor(i) {
                Some(f) => f,
                None => continue,
            };
            let opts = choices(i, f);
            let mut next = Vec::with_capacity(out.len() * opts.len());
            for prefix in &out {
                for &v in &opts {
                    let mut w = prefix.clone();
                    w.set(i, v);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// All elements supported on the first `level` coordinates.
    pub fn elements(&self, level: u32) -> Vec<FinSupp> {
        self.combos(&self.coords_upto(level), |_, f| (0..f.size()).collect())
    }

    /// All idempotents supported on the first `level` coordinates.
    pub fn idempotents(&self, level: u32) -> Vec<FinSupp> {
        self.combos(&self.coords_upto(level), |_, f| f.idempotents())
    }

    /// The full interval `[0, v]`: finite for every element of the sum.
    pub fn interval(&self, v: &FinSupp) -> Result<Vec<FinSupp>> {
        self.validate_vec(v)?;
        let coords: Vec<u32> = v.support().collect();
        Ok(self.combos(&coords, |i, f| (0..f.size()).filter(|&w| f.le(w, v.get(i))).collect()))
    }

    pub fn format_vec(&self, v: &FinSupp) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(i, x)| match self.factor(i) {
                Some(f) => format!("{i}:{}", f.label(x)),
                None => format!("{i}:#{x}"),
            })
            .collect();
        format!("⟨{}⟩", parts.join(","))
    }
}
