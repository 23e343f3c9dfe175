//! Congruences, kernels, and quotients.
//!
//! A congruence here is a concrete partition of the elements enumerated at
//! some level — for a finite algebra that is the whole story, for a proper
//! one it is a congruence of the finite subalgebra the window carves out
//! (all our enumeration windows are closed under the operations and under
//! λ at window idempotents). The checker wants three things: the partition
//! actually covers the window, every operation descends to classes, and λ
//! descends at every idempotent dominating both members of a pair.
//!
//! Generation runs a worklist to the least fixpoint; the test battery
//! compares it against the only oracle that cannot be wrong about this —
//! all partitions of the carrier, filtered by the checker.

use std::collections::HashMap;
use std::sync::Arc;

use crate::emv::{Elem, Emv, TableEmv};
use crate::morphism::{EmvMorphism, StrongEmvHom};
use crate::verdict::Verdict;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    classes: Vec<Vec<Elem>>,
    level: u32,
}

impl Congruence {
    /// Canonicalize and validate a partition of `m.elements(level)`: every
    /// window element in exactly one class, no strays, no empty classes.
    pub fn from_classes(m: &Emv, classes: Vec<Vec<Elem>>, level: u32) -> Result<Self> {
        let window = m.elements(level);
        let mut seen: HashMap<Elem, usize> = HashMap::new();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidInput("empty congruence class".into()));
            }
            for x in class {
                m.validate_elem(x)?;
                if !window.iter().any(|w| m.eq_elem(w, x)) {
                    return Err(Error::InvalidInput(format!(
                        "class member {} is outside the level-{level} window",
                        m.format_elem(x)
                    )));
                }
                if seen.insert(x.clone(), i).is_some() {
                    return Err(Error::InvalidInput(format!(
                        "{} appears in two classes",
                        m.format_elem(x)
                    )));
                }
            }
        }
        for w in &window {
            if !seen.contains_key(w) {
                return Err(Error::InvalidInput(format!(
                    "{} is not covered by any class",
                    m.format_elem(w)
                )));
            }
        }
        let mut classes: Vec<Vec<Elem>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort();
                c.dedup();
                c
            })
            .collect();
        classes.sort();
        Ok(Congruence { classes, level })
    }

    pub fn diagonal(m: &Emv, level: u32) -> Self {
        let mut classes: Vec<Vec<Elem>> =
            m.elements(level).into_iter().map(|x| vec![x]).collect();
        classes.sort();
        Congruence { classes, level }
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    pub fn class_index(&self, m: &Emv, x: &Elem) -> Option<usize> {
        self.classes.iter().position(|c| c.iter().any(|y| m.eq_elem(x, y)))
    }

    pub fn related(&self, m: &Emv, x: &Elem, y: &Elem) -> bool {
        match (self.class_index(m, x), self.class_index(m, y)) {
            (Some(i), Some(j)) => i == j,
            _ => false,
        }
    }
}

fn kv(k: &str, v: String) -> (String, String) {
    (k.to_string(), v)
}

/// Partition laws over the congruence's own window: coverage, descent of
/// ∨/∧/⊕ to classes, and descent of λ at every dominating idempotent.
pub fn is_congruence(m: &Emv, c: &Congruence) -> Verdict {
    let level = c.level;
    let window = m.elements(level);
    for x in &window {
        if c.class_index(m, x).is_none() {
            return Verdict::fail("cover", vec![kv("x", m.format_elem(x))]);
        }
    }
    for class in &c.classes {
        for x in class {
            if !window.iter().any(|w| m.eq_elem(w, x)) {
                return Verdict::fail(
                    "cover",
                    vec![kv("x", m.format_elem(x)), kv("note", "stray class member".into())],
                );
            }
        }
    }
    let ops: [(&str, fn(&Emv, &Elem, &Elem) -> Elem); 3] = [
        ("∨", Emv::join),
        ("∧", Emv::meet),
        ("⊕", Emv::oplus),
    ];
    for class in &c.classes {
        for x in class {
            for y in class {
                if m.eq_elem(x, y) {
                    continue;
                }
                for z in &window {
                    for (name, op) in &ops {
                        let a = op(m, x, z);
                        let b = op(m, y, z);
                        if !c.related(m, &a, &b) {
                            return Verdict::fail(
                                "compat-op",
                                vec![
                                    kv("op", (*name).into()),
                                    kv("x", m.format_elem(x)),
                                    kv("y", m.format_elem(y)),
                                    kv("z", m.format_elem(z)),
                                    kv("x·z", m.format_elem(&a)),
                                    kv("y·z", m.format_elem(&b)),
                                ],
                            );
                        }
                    }
                }
            }
        }
    }
    let idems = m.idempotents(level);
    for class in &c.classes {
        for x in class {
            for y in class {
                if m.eq_elem(x, y) {
                    continue;
                }
                for b in &idems {
                    if !m.le(x, b) || !m.le(y, b) {
                        continue;
                    }
                    let lx = m.lambda(b, x).expect("x was checked below b");
                    let ly = m.lambda(b, y).expect("y was checked below b");
                    if !c.related(m, &lx, &ly) {
                        return Verdict::fail(
                            "compat-lambda",
                            vec![
                                kv("b", m.format_elem(b)),
                                kv("x", m.format_elem(x)),
                                kv("y", m.format_elem(y)),
                                kv("λx", m.format_elem(&lx)),
                                kv("λy", m.format_elem(&ly)),
                            ],
                        );
                    }
                }
            }
        }
    }
    let ex = m.exhaustive_at(level);
    Verdict::pass_at(level, ex)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) -> bool {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri == rj {
            return false;
        }
        self.parent[ri.max(rj)] = ri.min(rj);
        true
    }
}

/// The least congruence of the window containing the seed pairs: union-find
/// plus a worklist that keeps forcing operation and λ descent until nothing
/// new merges.
pub fn generate_congruence(
    m: &Emv,
    seeds: &[(Elem, Elem)],
    level: u32,
) -> Result<Congruence> {
    let window = m.elements(level);
    let index: HashMap<Elem, usize> =
        window.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let lookup = |x: &Elem| -> Result<usize> {
        index.get(x).copied().ok_or_else(|| {
            Error::InvalidInput(format!(
                "{} is outside the level-{level} window",
                m.format_elem(x)
            ))
        })
    };
    let mut uf = UnionFind::new(window.len());
    for (x, y) in seeds {
        m.validate_elem(x)?;
        m.validate_elem(y)?;
        uf.union(lookup(x)?, lookup(y)?);
    }
    let idems = m.idempotents(level);
    loop {
        let mut changed = false;
        for i in 0..window.len() {
            for j in (i + 1)..window.len() {
                if uf.find(i) != uf.find(j) {
                    continue;
                }
                let (x, y) = (&window[i], &window[j]);
                for z in &window {
                    for op in [Emv::join, Emv::meet, Emv::oplus] {
                        let a = lookup(&op(m, x, z))?;
                        let b = lookup(&op(m, y, z))?;
                        changed |= uf.union(a, b);
                    }
                }
                for b in &idems {
                    if m.le(x, b) && m.le(y, b) {
                        let lx = lookup(&m.lambda(b, x).expect("below b"))?;
                        let ly = lookup(&m.lambda(b, y).expect("below b"))?;
                        changed |= uf.union(lx, ly);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: HashMap<usize, Vec<Elem>> = HashMap::new();
    for (i, x) in window.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(x.clone());
    }
    Congruence::from_classes(m, groups.into_values().collect(), level)
}

/// The kernel of a morphism family: points collapse when every entry that
/// sees both sends them to the same value. Errors if some pair of window
/// elements is seen by no entry at all — then the kernel is simply not
/// determined at this bound.
pub fn kernel(f: &EmvMorphism, level: u32) -> Result<Congruence> {
    let src = f.source();
    let tgt = f.target();
    let window = src.elements(level);
    let ent = f.entries(level.saturating_add(1));
    let mut uf = UnionFind::new(window.len());
    for i in 0..window.len() {
        for j in (i + 1)..window.len() {
            let (x, y) = (&window[i], &window[j]);
            let shared: Vec<_> =
                ent.iter().filter(|e| src.le(x, &e.dom) && src.le(y, &e.dom)).collect();
            if shared.is_empty() {
                return Err(Error::BoundExhausted(format!(
                    "no entry of {} sees both {} and {} at level {level}",
                    f.name(),
                    src.format_elem(x),
                    src.format_elem(y)
                )));
            }
            if shared.iter().all(|e| tgt.eq_elem(&e.apply(x), &e.apply(y))) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Elem>> = HashMap::new();
    for (i, x) in window.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(x.clone());
    }
    Congruence::from_classes(src, groups.into_values().collect(), level)
}

/// The class algebra. Operations are computed on representatives, which is
/// well-defined exactly because `is_congruence` passed — quotienting by a
/// partition that fails it is refused, not approximated.
pub fn quotient(m: &Emv, c: &Congruence) -> Result<TableEmv> {
    let v = is_congruence(m, c);
    if !v.passed() {
        return Err(Error::Precondition(format!("not a congruence: {v}")));
    }
    let reps: Vec<&Elem> = c.classes.iter().map(|class| &class[0]).collect();
    let idx_of = |x: &Elem| -> Result<u32> {
        c.class_index(m, x)
            .map(|i| i as u32)
            .ok_or_else(|| Error::Domain(format!("{} escaped the window", m.format_elem(x))))
    };
    let n = reps.len() as u32;
    let mut join = vec![vec![0u32; n as usize]; n as usize];
    let mut meet = join.clone();
    let mut oplus = join.clone();
    for (i, x) in reps.iter().enumerate() {
        for (j, y) in reps.iter().enumerate() {
            join[i][j] = idx_of(&m.join(x, y))?;
            meet[i][j] = idx_of(&m.meet(x, y))?;
            oplus[i][j] = idx_of(&m.oplus(x, y))?;
        }
    }
    let zero = idx_of(&m.zero())?;
    let labels = c.classes.iter().map(|class| format!("[{}]", m.format_elem(&class[0]))).collect();
    TableEmv::from_tables(join, meet, oplus, zero, Some(labels))
}

/// The projection onto the class algebra, as a total strong homomorphism
/// into the quotient table.
pub fn natural_projection(m: &Arc<Emv>, c: &Congruence) -> Result<StrongEmvHom> {
    let q = Arc::new(Emv::Table(quotient(m, c)?));
    let alg = m.clone();
    let cong = c.clone();
    Ok(StrongEmvHom::new(
        m.clone(),
        q,
        "π",
        Arc::new(move |x: &Elem| {
            let i = cong
                .class_index(&alg, x)
                .unwrap_or_else(|| panic!("{} escaped the window", alg.format_elem(x)));
            Elem::idx(i as u32)
        }),
    ))
}

/// All partitions of `0..n` as restricted-growth strings.
fn all_partitions(n: usize) -> Vec<Vec<Vec<u32>>> {
    fn go(code: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<Vec<u32>>>) {
        if code.len() == n {
            let mut blocks = vec![Vec::new(); max + 1];
            for (i, &b) in code.iter().enumerate() {
                blocks[b].push(i as u32);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max + 1 {
            code.push(b);
            go(code, max.max(b), n, out);
            code.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut code = vec![0usize];
    go(&mut code, 0, n, &mut out);
    out
}

/// Every congruence of a small finite algebra, by filtering all partitions
/// of the carrier. Bell-number work, so the carrier is capped hard; this is
/// the independent route the generated and kernel constructions are compared
/// against.
pub fn enumerate_congruences(m: &Emv) -> Result<Vec<Congruence>> {
    if !m.exhaustive_at(0) {
        return Err(Error::Unsupported(format!(
            "congruence enumeration needs a finite carrier, not {}",
            m.kind()
        )));
    }
    let elems = m.elements(0);
    if elems.len() > 10 {
        return Err(Error::InvalidInput(format!(
            "carrier of {} is past desk scale for partition sweeps",
            elems.len()
        )));
    }
    Ok(all_partitions(elems.len())
        .into_iter()
        .filter_map(|blocks| {
            let classes: Vec<Vec<Elem>> = blocks
                .into_iter()
                .map(|b| b.into_iter().map(|i| elems[i as usize].clone()).collect())
                .collect();
            let c = Congruence::from_classes(m, classes, 0).ok()?;
            is_congruence(m, &c).passed().then_some(c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism;
    use crate::mv::FiniteMvAlgebra;

    fn table(mv: FiniteMvAlgebra) -> Arc<Emv> {
        Arc::new(Emv::Table(TableEmv::from_mv(&mv)))
    }

    fn chain(n: u32) -> Arc<Emv> {
        table(FiniteMvAlgebra::mk_chain(n).unwrap())
    }

    fn boolean(k: u32) -> Arc<Emv> {
        table(FiniteMvAlgebra::mk_boolean(k).unwrap())
    }

    fn congruences_by_brute_force(m: &Emv) -> Vec<Congruence> {
        enumerate_congruences(m).unwrap()
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        assert_eq!(all_partitions(4).len(), 15);
        assert_eq!(all_partitions(6).len(), 203);
    }

    #[test]
    fn congruence_counts_match_ideal_counts() {
        // chains are simple; boolean algebras have one congruence per subset
        assert_eq!(congruences_by_brute_force(&chain(4)).len(), 2);
        assert_eq!(congruences_by_brute_force(&boolean(2)).len(), 4);
        assert_eq!(congruences_by_brute_force(&boolean(3)).len(), 8);
        let l2 = FiniteMvAlgebra::mk_chain(2).unwrap();
        let l3 = FiniteMvAlgebra::mk_chain(3).unwrap();
        let p = table(FiniteMvAlgebra::mk_product(&[&l2, &l3]).unwrap());
        assert_eq!(congruences_by_brute_force(&p).len(), 4);
    }

    #[test]
    fn generation_agrees_with_the_partition_oracle() {
        for m in [chain(4), boolean(2), boolean(3)] {
            let all = congruences_by_brute_force(&m);
            let elems = m.elements(0);
            for x in &elems {
                for y in &elems {
                    let gen =
                        generate_congruence(&m, &[(x.clone(), y.clone())], 0).unwrap();
                    assert!(all.contains(&gen), "worklist produced a non-congruence");
                    assert!(gen.related(&m, x, y));
                    // least: every congruence relating the seed contains gen
                    for c in all.iter().filter(|c| c.related(&m, x, y)) {
                        for a in &elems {
                            for b in &elems {
                                if gen.related(&m, a, b) {
                                    assert!(
                                        c.related(&m, a, b),
                                        "generated congruence is not least for seed \
                                         ({x:?},{y:?})"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chains_are_simple() {
        let m = chain(4);
        let c = generate_congruence(&m, &[(Elem::idx(0), Elem::idx(1))], 0).unwrap();
        assert_eq!(c.class_count(), 1, "collapsing any rung collapses the chain");
        let q = quotient(&m, &c).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn boolean_square_mod_an_atom_is_a_two_chain() {
        let m = boolean(2);
        let c = generate_congruence(&m, &[(Elem::idx(0), Elem::idx(1))], 0).unwrap();
        assert_eq!(c.class_count(), 2);
        assert!(c.related(&m, &Elem::idx(0), &Elem::idx(1)));
        assert!(c.related(&m, &Elem::idx(2), &Elem::idx(3)));
        let q = quotient(&m, &c).unwrap();
        assert_eq!(q.size(), 2);
        let qe = Emv::Table(q);
        assert!(crate::emv::check_emv_axioms(&qe, 0).passed());
    }

    #[test]
    fn quotient_refuses_a_non_congruence() {
        let m = chain(4);
        // {0,1},{2},{3} is an equivalence but ⊕ does not descend
        let c = Congruence::from_classes(
            &m,
            vec![
                vec![Elem::idx(0), Elem::idx(1)],
                vec![Elem::idx(2)],
                vec![Elem::idx(3)],
            ],
            0,
        )
        .unwrap();
        let v = is_congruence(&m, &c);
        assert!(v.failed());
        assert_eq!(v.clause(), Some("compat-op"));
        assert!(matches!(quotient(&m, &c), Err(Error::Precondition(_))));
    }

    #[test]
    fn kernel_of_a_collapsing_hom_gives_its_fibers() {
        let b2 = boolean(2);
        let l2 = chain(2);
        // kill the second atom: 0,{a0} ↦ 0 and {a1},⊤ ↦ 1
        let h = morphism::table_strong_hom(b2.clone(), l2, "kill-a1", vec![0, 0, 1, 1])
            .unwrap();
        assert!(morphism::is_strong_hom(&h, 0).passed());
        let f = morphism::morphism_from_strong_hom(&h);
        let k = kernel(&f, 0).unwrap();
        assert_eq!(k.class_count(), 2);
        assert!(k.related(&b2, &Elem::idx(0), &Elem::idx(1)));
        assert!(k.related(&b2, &Elem::idx(2), &Elem::idx(3)));
        assert!(is_congruence(&b2, &k).passed());
        let q = quotient(&b2, &k).unwrap();
        assert_eq!(q.size(), 2);
    }

    #[test]
    fn kernel_of_the_deleting_family_is_the_diagonal() {
        let f = morphism::setminus_morphism();
        let k = kernel(&f, 3).unwrap();
        assert!(k.is_diagonal(), "entries deep enough always separate distinct sets");
        assert!(is_congruence(f.source(), &k).passed());
    }

    #[test]
    fn natural_projection_is_a_strong_hom() {
        let m = boolean(2);
        let c = generate_congruence(&m, &[(Elem::idx(0), Elem::idx(2))], 0).unwrap();
        let pi = natural_projection(&m, &c).unwrap();
        assert!(morphism::is_strong_hom(&pi, 0).passed());
        assert_eq!(pi.apply(&Elem::idx(0)), pi.apply(&Elem::idx(2)));
    }

    #[test]
    fn generation_on_a_proper_algebra_stays_inside_the_window() {
        // a congruence of the finite-set algebra generated inside a window:
        // collapsing ∅ with {1} must at least absorb every set-difference
        // by {1}, i.e. X ~ X∖{1} throughout the window
        let f = morphism::setminus_morphism();
        let m = f.source().clone();
        let c =
            generate_congruence(&m, &[(Elem::set([]), Elem::set([1]))], 2).unwrap();
        assert!(is_congruence(&m, &c).passed());
        assert!(c.related(&m, &Elem::set([2]), &Elem::set([1, 2])));
        assert!(!c.related(&m, &Elem::set([]), &Elem::set([2])));
        assert_eq!(c.class_count(), 2);
    }
}
