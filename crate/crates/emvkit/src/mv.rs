//! Finite MV-algebras given by operation tables, plus terms over them and
//! homomorphism search.
//!
//! Carriers are dense indices `0..n`; fraction or set labels are carried only
//! for printing. The natural order `x ≼ y  iff  ¬x ⊕ y = 1` is derived, never
//! stored.

use std::fmt;
use std::sync::Arc;

use crate::verdict::{DecidedBy, Verdict};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMvAlgebra {
    n: u32,
    /// Row-major `n × n` table for ⊕.
    oplus: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    labels: Option<Vec<String>>,
}

impl FiniteMvAlgebra {
    /// Table constructor. Validates shape (sizes, index ranges) only; run
    /// [`FiniteMvAlgebra::check_mv_axioms`] to validate the laws.
    pub fn from_tables(
        oplus: Vec<Vec<u32>>,
        neg: Vec<u32>,
        zero: u32,
        one: u32,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = oplus.len() as u32;
        if n == 0 {
            return Err(Error::InvalidInput("empty carrier".into()));
        }
        if neg.len() as u32 != n {
            return Err(Error::InvalidInput(format!(
                "negation table has {} entries for carrier of size {n}",
                neg.len()
            )));
        }
        if let Some(ls) = &labels {
            if ls.len() as u32 != n {
                return Err(Error::InvalidInput(format!(
                    "{} labels for carrier of size {n}",
                    ls.len()
                )));
            }
        }
        let mut flat = Vec::with_capacity((n * n) as usize);
        for row in &oplus {
            if row.len() as u32 != n {
                return Err(Error::InvalidInput(format!("ragged ⊕ table (row of {})", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidInput(format!("⊕ entry {v} out of range 0..{n}")));
                }
                flat.push(v);
            }
        }
        for &v in &neg {
            if v >= n {
                return Err(Error::InvalidInput(format!("¬ entry {v} out of range 0..{n}")));
            }
        }
        if zero >= n || one >= n {
            return Err(Error::InvalidInput("zero/one index out of range".into()));
        }
        Ok(FiniteMvAlgebra { n, oplus: flat, neg, zero, one, labels })
    }

    /// Łukasiewicz chain with `n` elements `0, 1/(n-1), …, 1`.
    pub fn mk_chain(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("chain needs at least 2 elements, got {n}")));
        }
        let mut oplus = vec![0u32; (n * n) as usize];
        let mut neg = vec![0u32; n as usize];
        for x in 0..n {
            neg[x as usize] = n - 1 - x;
            for y in 0..n {
                oplus[(x * n + y) as usize] = (x + y).min(n - 1);
            }
        }
        let labels = (0..n)
            .map(|k| {
                if k == 0 {
                    "0".to_string()
                } else if k == n - 1 {
                    "1".to_string()
                } else {
                    format!("{k}/{}", n - 1)
                }
            })
            .collect();
        Ok(FiniteMvAlgebra { n, oplus, neg, zero: 0, one: n - 1, labels: Some(labels) })
    }

    /// Boolean algebra on `atoms` generators; elements are bitmasks, ⊕ is union.
    pub fn mk_boolean(atoms: u32) -> Result<Self> {
        if atoms > 10 {
            return Err(Error::InvalidInput(format!("{atoms} atoms is past desk scale")));
        }
        let n = 1u32 << atoms;
        let full = n - 1;
        let mut oplus = vec![0u32; (n * n) as usize];
        let mut neg = vec![0u32; n as usize];
        for x in 0..n {
            neg[x as usize] = full & !x;
            for y in 0..n {
                oplus[(x * n + y) as usize] = x | y;
            }
        }
        let labels = (0..n)
            .map(|m| {
                let atoms: Vec<String> =
                    (0..atoms).filter(|a| m >> a & 1 == 1).map(|a| format!("a{a}")).collect();
                format!("{{{}}}", atoms.join(","))
            })
            .collect();
        Ok(FiniteMvAlgebra { n, oplus, neg, zero: 0, one: full, labels: Some(labels) })
    }

    /// Componentwise product; element `k` decodes mixed-radix over the factors.
    pub fn mk_product(factors: &[&FiniteMvAlgebra]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("product needs at least one factor".into()));
        }
        let n: u64 = factors.iter().map(|f| f.n as u64).product();
        if n > 4096 {
            return Err(Error::InvalidInput(format!("product carrier of {n} is past desk scale")));
        }
        let n = n as u32;
        let decode = |mut k: u32| -> Vec<u32> {
            let mut t = Vec::with_capacity(factors.len());
            for f in factors {
                t.push(k % f.n);
                k /= f.n;
            }
            t
        };
        let encode = |t: &[u32]| -> u32 {
            let mut k = 0u32;
            for (c, f) in t.iter().zip(factors).rev() {
                k = k * f.n + c;
            }
            k
        };
        let mut oplus = vec![0u32; (n * n) as usize];
        let mut neg = vec![0u32; n as usize];
        for x in 0..n {
            let tx = decode(x);
            let nx: Vec<u32> = tx.iter().zip(factors).map(|(&c, f)| f.neg(c)).collect();
            neg[x as usize] = encode(&nx);
            for y in 0..n {
                let ty = decode(y);
                let s: Vec<u32> =
                    tx.iter().zip(&ty).zip(factors).map(|((&a, &b), f)| f.oplus(a, b)).collect();
                oplus[(x * n + y) as usize] = encode(&s);
            }
        }
        let zero = encode(&factors.iter().map(|f| f.zero).collect::<Vec<_>>());
        let one = encode(&factors.iter().map(|f| f.one).collect::<Vec<_>>());
        let labels = (0..n)
            .map(|k| {
                let parts: Vec<String> =
                    decode(k).iter().zip(factors).map(|(&c, f)| f.label(c)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Ok(FiniteMvAlgebra { n, oplus, neg, zero, one, labels: Some(labels) })
    }

    pub fn size(&self) -> u32 {
        self.n
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn oplus(&self, x: u32, y: u32) -> u32 {
        self.oplus[(x * self.n + y) as usize]
    }

    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    pub fn odot(&self, x: u32, y: u32) -> u32 {
        self.neg(self.oplus(self.neg(x), self.neg(y)))
    }

    /// Join in the natural order: `y ⊕ ¬(y ⊕ ¬x)`.
    pub fn vee(&self, x: u32, y: u32) -> u32 {
        self.oplus(y, self.neg(self.oplus(y, self.neg(x))))
    }

    pub fn wedge(&self, x: u32, y: u32) -> u32 {
        self.neg(self.vee(self.neg(x), self.neg(y)))
    }

    /// Natural order: `x ≼ y` iff `¬x ⊕ y = 1`.
    pub fn le(&self, x: u32, y: u32) -> bool {
        self.oplus(self.neg(x), y) == self.one
    }

    pub fn is_idempotent(&self, x: u32) -> bool {
        self.oplus(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<u32> {
        (0..self.n).filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn label(&self, x: u32) -> String {
        match &self.labels {
            Some(ls) => ls[x as usize].clone(),
            None => format!("#{x}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn oplus_rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.oplus(x, y)).collect()).collect()
    }

    pub fn neg_row(&self) -> Vec<u32> {
        self.neg.clone()
    }

    /// Checks the commutative-monoid laws, involution, absorption by 1, the
    /// join-symmetry law `x⊕¬(x⊕¬y) = y⊕¬(y⊕¬x)`, and that the natural order
    /// is a bounded distributive lattice whose join and meet are the derived
    /// term operations.
    ///
    /// Axioms are checked in separate full passes, so the reported clause is
    /// the first *axiom* broken anywhere — not an artifact of loop
    /// interleaving. A corrupted ⊕-cell usually breaks several laws at once;
    /// the verdict names the most primitive of them.
    pub fn check_mv_axioms(&self) -> Verdict {
        let n = self.n;
        let w = |x: u32| self.label(x);
        for x in 0..n {
            if self.oplus(self.zero, x) != x {
                return Verdict::fail("oplus-zero", vec![("x".into(), w(x))]);
            }
        }
        for x in 0..n {
            if self.neg(self.neg(x)) != x {
                return Verdict::fail("involution", vec![("x".into(), w(x))]);
            }
        }
        for x in 0..n {
            if self.oplus(x, self.one) != self.one {
                return Verdict::fail("one-absorbing", vec![("x".into(), w(x))]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.oplus(x, y) != self.oplus(y, x) {
                    return Verdict::fail(
                        "oplus-comm",
                        vec![("x".into(), w(x)), ("y".into(), w(y))],
                    );
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.oplus(self.oplus(x, y), z) != self.oplus(x, self.oplus(y, z)) {
                        return Verdict::fail(
                            "oplus-assoc",
                            vec![("x".into(), w(x)), ("y".into(), w(y)), ("z".into(), w(z))],
                        );
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = self.oplus(x, self.neg(self.oplus(x, self.neg(y))));
                let rhs = self.oplus(y, self.neg(self.oplus(y, self.neg(x))));
                if lhs != rhs {
                    return Verdict::fail(
                        "join-symmetry",
                        vec![
                            ("x".into(), w(x)),
                            ("y".into(), w(y)),
                            ("x⊕¬(x⊕¬y)".into(), w(lhs)),
                            ("y⊕¬(y⊕¬x)".into(), w(rhs)),
                        ],
                    );
                }
            }
        }
        // Order axioms. Reflexivity, antisymmetry and bounds first.
        for x in 0..n {
            if !self.le(x, x) {
                return Verdict::fail("order-refl", vec![("x".into(), w(x))]);
            }
            if !self.le(self.zero, x) || !self.le(x, self.one) {
                return Verdict::fail("order-bounds", vec![("x".into(), w(x))]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.le(x, y) && self.le(y, x) {
                    return Verdict::fail(
                        "order-antisym",
                        vec![("x".into(), w(x)), ("y".into(), w(y))],
                    );
                }
            }
        }
        // The derived join must be the least upper bound (dually for meet);
        // transitivity is a consequence once that holds, but stays cheap to
        // check and gives sharper witnesses on corrupted tables.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.le(x, y) && self.le(y, z) && !self.le(x, z) {
                        return Verdict::fail(
                            "order-trans",
                            vec![("x".into(), w(x)), ("y".into(), w(y)), ("z".into(), w(z))],
                        );
                    }
                }
                let j = self.vee(x, y);
                if !self.le(x, j) || !self.le(y, j) {
                    return Verdict::fail(
                        "lattice-join",
                        vec![("x".into(), w(x)), ("y".into(), w(y)), ("x∨y".into(), w(j))],
                    );
                }
                let m = self.wedge(x, y);
                if !self.le(m, x) || !self.le(m, y) {
                    return Verdict::fail(
                        "lattice-meet",
                        vec![("x".into(), w(x)), ("y".into(), w(y)), ("x∧y".into(), w(m))],
                    );
                }
                for u in 0..n {
                    if self.le(x, u) && self.le(y, u) && !self.le(j, u) {
                        return Verdict::fail(
                            "lattice-join",
                            vec![
                                ("x".into(), w(x)),
                                ("y".into(), w(y)),
                                ("upper-bound".into(), w(u)),
                                ("x∨y".into(), w(j)),
                            ],
                        );
                    }
                    if self.le(u, x) && self.le(u, y) && !self.le(u, m) {
                        return Verdict::fail(
                            "lattice-meet",
                            vec![
                                ("x".into(), w(x)),
                                ("y".into(), w(y)),
                                ("lower-bound".into(), w(u)),
                                ("x∧y".into(), w(m)),
                            ],
                        );
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.wedge(x, self.vee(y, z));
                    let rhs = self.vee(self.wedge(x, y), self.wedge(x, z));
                    if lhs != rhs {
                        return Verdict::fail(
                            "distributivity",
                            vec![("x".into(), w(x)), ("y".into(), w(y)), ("z".into(), w(z))],
                        );
                    }
                }
            }
        }
        Verdict::pass()
    }
}

/// Does `h` (a total map `a → b` by index) preserve 0, 1, ⊕ and ¬?
pub fn is_mv_hom(h: &[u32], a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Result<Verdict> {
    if h.len() as u32 != a.size() {
        return Err(Error::InvalidInput(format!(
            "map has {} entries for a carrier of size {}",
            h.len(),
            a.size()
        )));
    }
    for &v in h {
        if v >= b.size() {
            return Err(Error::InvalidInput(format!("image {v} out of range")));
        }
    }
    let at = |x: u32| h[x as usize];
    if at(a.zero()) != b.zero() {
        return Ok(Verdict::fail("zero", vec![("h(0)".into(), b.label(at(a.zero())))]));
    }
    if at(a.one()) != b.one() {
        return Ok(Verdict::fail("one", vec![("h(1)".into(), b.label(at(a.one())))]));
    }
    for x in 0..a.size() {
        if at(a.neg(x)) != b.neg(at(x)) {
            return Ok(Verdict::fail(
                "negation",
                vec![
                    ("x".into(), a.label(x)),
                    ("h(¬x)".into(), b.label(at(a.neg(x)))),
                    ("¬h(x)".into(), b.label(b.neg(at(x)))),
                ],
            ));
        }
        for y in 0..a.size() {
            if at(a.oplus(x, y)) != b.oplus(at(x), at(y)) {
                return Ok(Verdict::fail(
                    "oplus",
                    vec![
                        ("x".into(), a.label(x)),
                        ("y".into(), a.label(y)),
                        ("h(x⊕y)".into(), b.label(at(a.oplus(x, y)))),
                        ("h(x)⊕h(y)".into(), b.label(b.oplus(at(x), at(y)))),
                    ],
                ));
            }
        }
    }
    Ok(Verdict::pass().decided(DecidedBy::Exhaustive))
}

/// All MV-homomorphisms `a → b`, by backtracking over the carrier in index
/// order. Constraints are checked as soon as both sides are assigned, so the
/// output is the lexicographically sorted list of all homomorphisms.
pub fn enumerate_mv_homs(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Vec<Vec<u32>> {
    let na = a.size();
    let nb = b.size();
    let mut out = Vec::new();
    let mut h: Vec<u32> = Vec::with_capacity(na as usize);

    fn consistent(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra, h: &[u32]) -> bool {
        let len = h.len() as u32;
        let k = len - 1;
        if k == a.zero() && h[k as usize] != b.zero() {
            return false;
        }
        if k == a.one() && h[k as usize] != b.one() {
            return false;
        }
        for i in 0..len {
            if a.neg(i) < len && h[a.neg(i) as usize] != b.neg(h[i as usize]) {
                // only pairs involving k are new, but re-checking is cheap
                return false;
            }
            for j in 0..len {
                let s = a.oplus(i, j);
                if s < len && h[s as usize] != b.oplus(h[i as usize], h[j as usize]) {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        a: &FiniteMvAlgebra,
        b: &FiniteMvAlgebra,
        nb: u32,
        h: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if h.len() as u32 == a.size() {
            out.push(h.clone());
            return;
        }
        for v in 0..nb {
            h.push(v);
            if consistent(a, b, h) {
                go(a, b, nb, h, out);
            }
            h.pop();
        }
    }

    go(a, b, nb, &mut h, &mut out);
    out
}

/// Terms in the language `0, 1, ⊕, ¬` with derived `∨, ∧, ⊙` expanded at
/// construction time. Variables are indices into an external name list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MvTerm {
    Zero,
    One,
    Var(usize),
    Oplus(Arc<MvTerm>, Arc<MvTerm>),
    Neg(Arc<MvTerm>),
}

impl MvTerm {
    pub fn var(i: usize) -> Arc<MvTerm> {
        Arc::new(MvTerm::Var(i))
    }

    pub fn zero() -> Arc<MvTerm> {
        Arc::new(MvTerm::Zero)
    }

    pub fn one() -> Arc<MvTerm> {
        Arc::new(MvTerm::One)
    }

    pub fn oplus(a: Arc<MvTerm>, b: Arc<MvTerm>) -> Arc<MvTerm> {
        Arc::new(MvTerm::Oplus(a, b))
    }

    pub fn neg(a: Arc<MvTerm>) -> Arc<MvTerm> {
        Arc::new(MvTerm::Neg(a))
    }

    /// `x ∨ y` as the term `y ⊕ ¬(y ⊕ ¬x)`.
    pub fn vee(a: Arc<MvTerm>, b: Arc<MvTerm>) -> Arc<MvTerm> {
        MvTerm::oplus(b.clone(), MvTerm::neg(MvTerm::oplus(b, MvTerm::neg(a))))
    }

    pub fn wedge(a: Arc<MvTerm>, b: Arc<MvTerm>) -> Arc<MvTerm> {
        MvTerm::neg(MvTerm::vee(MvTerm::neg(a), MvTerm::neg(b)))
    }

    pub fn odot(a: Arc<MvTerm>, b: Arc<MvTerm>) -> Arc<MvTerm> {
        MvTerm::neg(MvTerm::oplus(MvTerm::neg(a), MvTerm::neg(b)))
    }

    /// Smallest environment size that covers every variable.
    pub fn arity(&self) -> usize {
        match self {
            MvTerm::Zero | MvTerm::One => 0,
            MvTerm::Var(i) => i + 1,
            MvTerm::Oplus(a, b) => a.arity().max(b.arity()),
            MvTerm::Neg(a) => a.arity(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            MvTerm::Zero | MvTerm::One | MvTerm::Var(_) => 1,
            MvTerm::Oplus(a, b) => 1 + a.node_count() + b.node_count(),
            MvTerm::Neg(a) => 1 + a.node_count(),
        }
    }

    pub fn eval(&self, alg: &FiniteMvAlgebra, env: &[u32]) -> Result<u32> {
        match self {
            MvTerm::Zero => Ok(alg.zero()),
            MvTerm::One => Ok(alg.one()),
            MvTerm::Var(i) => env.get(*i).copied().ok_or_else(|| {
                Error::InvalidInput(format!("no assignment for variable x{i}"))
            }),
            MvTerm::Oplus(a, b) => Ok(alg.oplus(a.eval(alg, env)?, b.eval(alg, env)?)),
            MvTerm::Neg(a) => Ok(alg.neg(a.eval(alg, env)?)),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        match self {
            MvTerm::Zero => "0".into(),
            MvTerm::One => "1".into(),
            MvTerm::Var(i) => {
                names.get(*i).cloned().unwrap_or_else(|| format!("x{i}"))
            }
            MvTerm::Oplus(a, b) => format!("({} ⊕ {})", a.fmt_with(names), b.fmt_with(names)),
            MvTerm::Neg(a) => format!("¬{}", a.fmt_with(names)),
        }
    }
}

impl fmt::Display for MvTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force homomorphism filter: every total map, checked whole.
    /// Slow but obviously correct; the backtracking search must agree.
    fn brute_force_homs(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Vec<Vec<u32>> {
        let na = a.size() as usize;
        let nb = b.size() as u64;
        let total = nb.checked_pow(na as u32).expect("oracle only runs at desk scale");
        let mut out = Vec::new();
        for code in 0..total {
            let mut k = code;
            let mut h = Vec::with_capacity(na);
            for _ in 0..na {
                h.push((k % nb) as u32);
                k /= nb;
            }
            if is_mv_hom(&h, a, b).unwrap().passed() {
                out.push(h);
            }
        }
        // digit order of `code` is not lexicographic in h; the searcher's is
        out.sort();
        out
    }

    #[test]
    fn named_constructors_are_lawful() {
        for n in 2..=6 {
            assert!(FiniteMvAlgebra::mk_chain(n).unwrap().check_mv_axioms().passed(), "chain {n}");
        }
        for k in 0..=3 {
            assert!(
                FiniteMvAlgebra::mk_boolean(k).unwrap().check_mv_axioms().passed(),
                "boolean {k}"
            );
        }
        let l3 = FiniteMvAlgebra::mk_chain(3).unwrap();
        let l2 = FiniteMvAlgebra::mk_chain(2).unwrap();
        let p = FiniteMvAlgebra::mk_product(&[&l3, &l2]).unwrap();
        assert!(p.check_mv_axioms().passed());
        assert_eq!(p.size(), 6);
        assert_eq!(p.idempotents().len(), 4);
    }

    #[test]
    fn chain_rejects_undersized() {
        assert!(matches!(FiniteMvAlgebra::mk_chain(1), Err(Error::InvalidInput(_))));
        assert!(matches!(FiniteMvAlgebra::mk_chain(0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn corrupted_tables_fail_with_named_clause() {
        let l4 = FiniteMvAlgebra::mk_chain(4).unwrap();
        // break commutativity off the diagonal
        let mut t = l4.oplus_rows();
        t[1][2] = 1;
        let bad = FiniteMvAlgebra::from_tables(t, l4.neg_row(), 0, 3, None).unwrap();
        let v = bad.check_mv_axioms();
        assert!(v.failed());
        assert_eq!(v.clause(), Some("oplus-comm"));

        // break the involution
        let mut neg = l4.neg_row();
        neg[1] = 0;
        let bad = FiniteMvAlgebra::from_tables(l4.oplus_rows(), neg, 0, 3, None).unwrap();
        let v = bad.check_mv_axioms();
        assert!(v.failed());
        assert_eq!(v.clause(), Some("involution"));

        // break the neutral row
        let mut t = l4.oplus_rows();
        t[0][2] = 3;
        let bad = FiniteMvAlgebra::from_tables(t, l4.neg_row(), 0, 3, None).unwrap();
        let v = bad.check_mv_axioms();
        assert!(v.failed());
        assert_eq!(v.clause(), Some("oplus-zero"));
    }

    #[test]
    fn natural_order_matches_construction() {
        let l4 = FiniteMvAlgebra::mk_chain(4).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(l4.le(x, y), x <= y);
            }
        }
        let b3 = FiniteMvAlgebra::mk_boolean(3).unwrap();
        for x in 0..8u32 {
            for y in 0..8u32 {
                assert_eq!(b3.le(x, y), x & y == x, "subset order on masks");
            }
        }
    }

    #[test]
    fn derived_ops_on_chains_are_min_max() {
        let l5 = FiniteMvAlgebra::mk_chain(5).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(l5.vee(x, y), x.max(y));
                assert_eq!(l5.wedge(x, y), x.min(y));
                assert_eq!(l5.odot(x, y), (x + y).saturating_sub(4));
            }
        }
    }

    #[test]
    fn hom_enumeration_matches_brute_force() {
        let l2 = FiniteMvAlgebra::mk_chain(2).unwrap();
        let l3 = FiniteMvAlgebra::mk_chain(3).unwrap();
        let l4 = FiniteMvAlgebra::mk_chain(4).unwrap();
        let b2 = FiniteMvAlgebra::mk_boolean(2).unwrap();
        let pairs: Vec<(&FiniteMvAlgebra, &FiniteMvAlgebra)> = vec![
            (&l2, &l2),
            (&l2, &l4),
            (&l3, &l3),
            (&l3, &l2),
            (&l4, &l4),
            (&l2, &b2),
            (&b2, &l2),
            (&b2, &b2),
            (&l3, &b2),
        ];
        for (a, b) in pairs {
            assert_eq!(
                enumerate_mv_homs(a, b),
                brute_force_homs(a, b),
                "hom sets differ on ({}, {})",
                a.size(),
                b.size()
            );
        }
    }

    #[test]
    fn frozen_hom_counts() {
        let l2 = FiniteMvAlgebra::mk_chain(2).unwrap();
        let l3 = FiniteMvAlgebra::mk_chain(3).unwrap();
        let l4 = FiniteMvAlgebra::mk_chain(4).unwrap();
        // Ł3 → Ł3: only the identity
        assert_eq!(enumerate_mv_homs(&l3, &l3), vec![vec![0, 1, 2]]);
        // Ł2 → Ł4: exactly one hom (0 ↦ 0, 1 ↦ 1)
        assert_eq!(enumerate_mv_homs(&l2, &l4), vec![vec![0, 3]]);
        // Ł3 → Ł2: none (no image for the middle element)
        assert!(enumerate_mv_homs(&l3, &l2).is_empty());
    }

    #[test]
    fn is_mv_hom_rejects_bad_shapes() {
        let l3 = FiniteMvAlgebra::mk_chain(3).unwrap();
        assert!(is_mv_hom(&[0, 1], &l3, &l3).is_err());
        assert!(is_mv_hom(&[0, 1, 7], &l3, &l3).is_err());
        let v = is_mv_hom(&[0, 0, 2], &l3, &l3).unwrap();
        assert!(v.failed());
    }

    #[test]
    fn term_eval_and_derived_forms() {
        let l3 = FiniteMvAlgebra::mk_chain(3).unwrap();
        let x = MvTerm::var(0);
        let y = MvTerm::var(1);
        let t = MvTerm::vee(x.clone(), y.clone());
        let m = MvTerm::wedge(x.clone(), y.clone());
        let o = MvTerm::odot(x.clone(), y.clone());
        for a in 0..3 {
            for b in 0..3 {
                let env = [a, b];
                assert_eq!(t.eval(&l3, &env).unwrap(), l3.vee(a, b));
                assert_eq!(m.eval(&l3, &env).unwrap(), l3.wedge(a, b));
                assert_eq!(o.eval(&l3, &env).unwrap(), l3.odot(a, b));
            }
        }
        assert!(MvTerm::var(2).eval(&l3, &[0, 1]).is_err());
    }
}
