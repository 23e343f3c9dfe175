//! Products, universal properties, and the functor laws.
//!
//! Morphism families compose and have identities only up to the similarity
//! relation, so every categorical statement here is a statement about
//! ≈-classes: composition must not care which representative it is handed,
//! the product cone must be commuted with up to ≈, and uniqueness of the
//! mediating arrow means unique ≈-class. Candidates that fail the
//! precondition of a universal-property comparison (they do not commute
//! with the cone) are reported as non-competitors rather than failures —
//! a cone has nothing to say about them.
//!
//! The two functor directions — a total strong homomorphism induces a
//! family, a standard family collapses to a strong homomorphism — are
//! checked as round-trip laws over enumeration windows.

use std::sync::Arc;

use crate::emv::{Elem, Emv, ProductEmv};
use crate::morphism::{
    self, compose, extract_strong_hom, identity_morphism, is_standard,
    morphism_from_strong_hom, similar, EmvMorphism, StrongEmvHom,
};
use crate::verdict::Verdict;
use crate::{Error, Result};

fn kv(k: &str, v: String) -> (String, String) {
    (k.to_string(), v)
}

pub fn product_emv(factors: Vec<Arc<Emv>>) -> Result<Arc<Emv>> {
    Ok(Arc::new(Emv::Product(ProductEmv::new(factors)?)))
}

/// The coordinate projection, total and strong.
pub fn projection_hom(p: &Arc<Emv>, i: u32) -> Result<StrongEmvHom> {
    let prod = match p.as_ref() {
        Emv::Product(prod) => prod,
        _ => return Err(Error::InvalidInput("projections need a product algebra".into())),
    };
    if i as usize >= prod.arity() {
        return Err(Error::InvalidInput(format!("no factor {i}")));
    }
    let target = prod.factor(i as usize).clone();
    Ok(StrongEmvHom::new(
        p.clone(),
        target,
        format!("π{i}"),
        Arc::new(move |x: &Elem| match x {
            Elem::Tuple(xs) => xs[i as usize].clone(),
            other => panic!("product element expected, got {other:?}"),
        }),
    ))
}

/// Pair total strong homomorphisms with a common source into the product:
/// `⟨h₁,…,h_k⟩(x) = (h₁(x),…,h_k(x))`.
pub fn tuple_strong_hom(hs: &[StrongEmvHom], p: &Arc<Emv>) -> Result<StrongEmvHom> {
    let prod = match p.as_ref() {
        Emv::Product(prod) => prod,
        _ => return Err(Error::InvalidInput("tupling needs a product algebra".into())),
    };
    if hs.is_empty() {
        return Err(Error::InvalidInput("nothing to tuple".into()));
    }
    if prod.arity() != hs.len() {
        return Err(Error::InvalidInput(format!(
            "{} maps into a {}-fold product",
            hs.len(),
            prod.arity()
        )));
    }
    for (i, h) in hs.iter().enumerate() {
        if h.source().as_ref() != hs[0].source().as_ref() {
            return Err(Error::InvalidInput("tupled maps must share a source".into()));
        }
        if h.target().as_ref() != prod.factor(i).as_ref() {
            return Err(Error::InvalidInput(format!(
                "map {i} does not land in factor {i}"
            )));
        }
    }
    let maps: Vec<_> = hs.iter().map(|h| h.map()).collect();
    let name = format!(
        "⟨{}⟩",
        hs.iter().map(|h| h.name().to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(StrongEmvHom::new(
        hs[0].source().clone(),
        p.clone(),
        name,
        Arc::new(move |x: &Elem| Elem::Tuple(maps.iter().map(|m| m(x)).collect())),
    ))
}

/// The canonical arrow into the product induced by a cone `f_i : M → N_i`:
/// entries are indexed by choice tuples of cone entries, each living on the
/// meet of the chosen domains and mapping `x ↦ (f₁(x),…,f_k(x))`.
pub fn mediating_morphism(fs: &[EmvMorphism], p: &Arc<Emv>) -> Result<EmvMorphism> {
    let prod = match p.as_ref() {
        Emv::Product(prod) => prod,
        _ => return Err(Error::InvalidInput("mediating arrows need a product target".into())),
    };
    if fs.is_empty() {
        return Err(Error::InvalidInput("empty cone".into()));
    }
    if prod.arity() != fs.len() {
        return Err(Error::InvalidInput(format!(
            "cone has {} legs for a {}-fold product",
            fs.len(),
            prod.arity()
        )));
    }
    let src = fs[0].source().clone();
    for (i, f) in fs.iter().enumerate() {
        if f.source().as_ref() != src.as_ref() {
            return Err(Error::InvalidInput("cone legs must share a source".into()));
        }
        if f.target().as_ref() != prod.factor(i).as_ref() {
            return Err(Error::InvalidInput(format!(
                "leg {i} does not land in factor {i}"
            )));
        }
    }
    let name = format!(
        "⟨{}⟩",
        fs.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join(",")
    );
    let legs: Vec<EmvMorphism> = fs.to_vec();
    let gen_src = src.clone();
    Ok(EmvMorphism::generated_bounded(
        src,
        p.clone(),
        name,
        Arc::new(move |q| tuple_entries(&legs, &gen_src, q)),
    ))
}

/// Cross product of the legs' entry slices at one level: each choice tuple
/// becomes an entry on the meet of the chosen domains.
fn tuple_entries(legs: &[EmvMorphism], src: &Arc<Emv>, level: u32) -> Vec<morphism::Entry> {
    let slices: Vec<Vec<morphism::Entry>> = legs.iter().map(|f| f.entries(level)).collect();
    if slices.iter().any(|s| s.is_empty()) {
        return Vec::new();
    }
    let mut choice = vec![0usize; slices.len()];
    let mut entries = Vec::new();
    loop {
        let picked: Vec<&morphism::Entry> =
            choice.iter().zip(&slices).map(|(&c, l)| &l[c]).collect();
        let dom = picked
            .iter()
            .skip(1)
            .fold(picked[0].dom.clone(), |acc, e| src.meet(&acc, &e.dom));
        let maps: Vec<morphism::EntryFn> = picked.iter().map(|e| e.map()).collect();
        let key = format!(
            "⟨{}⟩",
            picked.iter().map(|e| e.key.clone()).collect::<Vec<_>>().join(",")
        );
        entries.push(morphism::Entry::new(
            key,
            dom,
            Arc::new(move |x: &Elem| Elem::Tuple(maps.iter().map(|m| m(x)).collect())),
        ));
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                break;
            }
            choice[pos] += 1;
            if choice[pos] < slices[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == choice.len() {
            break;
        }
    }
    entries
}

/// Does `g` commute with the cone, i.e. `π_i ∘ g ≈ f_i` for every leg?
/// Similarity is checked in both directions so the verdict does not lean on
/// the symmetry theorem.
pub fn check_commutes(
    p: &Arc<Emv>,
    g: &EmvMorphism,
    fs: &[EmvMorphism],
    level: u32,
) -> Result<Verdict> {
    let mut acc = Verdict::pass();
    for (i, f) in fs.iter().enumerate() {
        let pi = morphism_from_strong_hom(&projection_hom(p, i as u32)?);
        let comp = compose(&pi, g, level)?;
        let fwd = similar(&comp, f, level);
        let bwd = similar(f, &comp, level);
        let leg = fwd.and(bwd);
        if !leg.passed() {
            return Ok(Verdict::fail(
                "commutes",
                vec![kv("leg", i.to_string()), kv("detail", leg.to_string())],
            ));
        }
        acc = acc.and(leg);
    }
    Ok(acc)
}

/// The universal property of the product over a finite candidate pool:
/// the canonical arrow must commute, and every pool member that commutes
/// must be similar to it. Returns the overall verdict together with one
/// verdict per candidate (non-commuting candidates are marked
/// not-a-competitor, and do not count against uniqueness).
pub fn check_product_universal(
    p: &Arc<Emv>,
    g: &EmvMorphism,
    fs: &[EmvMorphism],
    competitors: &[EmvMorphism],
    level: u32,
) -> Result<(Verdict, Vec<(String, Verdict)>)> {
    let own = check_commutes(p, g, fs, level)?;
    if !own.passed() {
        let wrapped = Verdict::fail(
            "mediating-commutes",
            vec![kv("arrow", g.name().to_string()), kv("detail", own.to_string())],
        );
        return Ok((wrapped, Vec::new()));
    }
    let mut per = Vec::new();
    let mut overall = own;
    for cand in competitors {
        let commutes = check_commutes(p, cand, fs, level)?;
        if !commutes.passed() {
            per.push((
                cand.name().to_string(),
                Verdict::not_a_competitor(
                    "does-not-commute",
                    vec![kv("detail", commutes.to_string())],
                ),
            ));
            continue;
        }
        let fwd = similar(cand, g, level);
        let bwd = similar(g, cand, level);
        let uniq = fwd.and(bwd);
        let v = if uniq.passed() {
            uniq
        } else {
            Verdict::fail(
                "mediating-unique",
                vec![kv("candidate", cand.name().to_string()), kv("detail", uniq.to_string())],
            )
        };
        overall = overall.and(v.clone());
        per.push((cand.name().to_string(), v));
    }
    Ok((overall, per))
}

/// Composition descends to ≈-classes: from `f ≈ f'` and `g ≈ g'` conclude
/// `g∘f ≈ g'∘f'`. The premises are re-checked; if they fail, the pair was
/// not a test of the law at all.
pub fn composition_well_defined(
    f: &EmvMorphism,
    f2: &EmvMorphism,
    g: &EmvMorphism,
    g2: &EmvMorphism,
    level: u32,
) -> Result<Verdict> {
    let pf = similar(f, f2, level).and(similar(f2, f, level));
    let pg = similar(g, g2, level).and(similar(g2, g, level));
    if !pf.passed() || !pg.passed() {
        return Ok(Verdict::not_a_competitor(
            "premise",
            vec![kv("f≈f'", pf.to_string()), kv("g≈g'", pg.to_string())],
        ));
    }
    let left = compose(g, f, level)?;
    let right = compose(g2, f2, level)?;
    let v = similar(&left, &right, level).and(similar(&right, &left, level));
    if v.passed() {
        Ok(v)
    } else {
        Ok(Verdict::fail(
            "composition-respects-similarity",
            vec![kv("detail", v.to_string())],
        ))
    }
}

/// `(h∘g)∘f ≈ h∘(g∘f)`.
pub fn composition_associative(
    h: &EmvMorphism,
    g: &EmvMorphism,
    f: &EmvMorphism,
    level: u32,
) -> Result<Verdict> {
    let left = compose(&compose(h, g, level)?, f, level)?;
    let right = compose(h, &compose(g, f, level)?, level)?;
    let v = similar(&left, &right, level).and(similar(&right, &left, level));
    if v.passed() {
        Ok(v)
    } else {
        Ok(Verdict::fail("composition-associative", vec![kv("detail", v.to_string())]))
    }
}

/// `id∘f ≈ f` and `f∘id ≈ f`.
pub fn identity_laws(f: &EmvMorphism, level: u32) -> Result<Verdict> {
    let id_src = identity_morphism(f.source().clone());
    let id_tgt = identity_morphism(f.target().clone());
    let left = compose(&id_tgt, f, level)?;
    let right = compose(f, &id_src, level)?;
    let lv = similar(&left, f, level).and(similar(f, &left, level));
    if !lv.passed() {
        return Ok(Verdict::fail("left-identity", vec![kv("detail", lv.to_string())]));
    }
    let rv = similar(&right, f, level).and(similar(f, &right, level));
    if !rv.passed() {
        return Ok(Verdict::fail("right-identity", vec![kv("detail", rv.to_string())]));
    }
    Ok(lv.and(rv))
}

/// Embedding a strong homomorphism as a family and collapsing it back must
/// reproduce the map pointwise.
pub fn hom_embedding_round_trip(h: &StrongEmvHom, level: u32) -> Result<Verdict> {
    let f = morphism_from_strong_hom(h);
    let back = extract_strong_hom(&f, level)?;
    let src = h.source();
    let tgt = h.target();
    for x in src.elements(level) {
        let a = h.apply(&x);
        let b = back.apply(&x);
        if !tgt.eq_elem(&a, &b) {
            return Ok(Verdict::fail(
                "round-trip-point",
                vec![
                    kv("x", src.format_elem(&x)),
                    kv("h(x)", tgt.format_elem(&a)),
                    kv("back(x)", tgt.format_elem(&b)),
                ],
            ));
        }
    }
    let ex = src.exhaustive_at(level) && tgt.exhaustive_at(level);
    Ok(Verdict::pass_at(level, ex))
}

/// Collapsing a standard family and re-embedding it must land in the same
/// ≈-class. Families that are not standard are not competitors here.
pub fn standard_round_trip(f: &EmvMorphism, level: u32) -> Result<Verdict> {
    let std_v = is_standard(f, level);
    if !std_v.passed() {
        return Ok(Verdict::not_a_competitor(
            "not-standard",
            vec![kv("detail", std_v.to_string())],
        ));
    }
    let h = extract_strong_hom(f, level)?;
    let back = morphism_from_strong_hom(&h);
    let v = similar(&back, f, level).and(similar(f, &back, level));
    if v.passed() {
        Ok(v)
    } else {
        Ok(Verdict::fail("standard-round-trip", vec![kv("detail", v.to_string())]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emv::{FinSetBooleanEmv, TableEmv};
    use crate::morphism::{
        finset_swap_hom, is_approx_isomorphism, is_strong_hom, setminus_morphism,
        table_strong_hom, validate_morphism,
    };
    use crate::mv::FiniteMvAlgebra;

    fn table(mv: FiniteMvAlgebra) -> Arc<Emv> {
        Arc::new(Emv::Table(TableEmv::from_mv(&mv)))
    }

    fn finset() -> Arc<Emv> {
        Arc::new(Emv::FinSet(FinSetBooleanEmv::new()))
    }

    /// The square as a cone over two copies of the two-chain: kill one atom
    /// for each leg.
    fn square_cone() -> (Arc<Emv>, Arc<Emv>, Vec<EmvMorphism>) {
        let b2 = table(FiniteMvAlgebra::mk_boolean(2).unwrap());
        let l2 = table(FiniteMvAlgebra::mk_chain(2).unwrap());
        let f1 = morphism_from_strong_hom(
            &table_strong_hom(b2.clone(), l2.clone(), "keep-a0", vec![0, 1, 0, 1]).unwrap(),
        );
        let f2 = morphism_from_strong_hom(
            &table_strong_hom(b2.clone(), l2.clone(), "keep-a1", vec![0, 0, 1, 1]).unwrap(),
        );
        let p = product_emv(vec![l2.clone(), l2]).unwrap();
        (b2, p, vec![f1, f2])
    }

    #[test]
    fn projections_are_strong_homs() {
        let l2 = table(FiniteMvAlgebra::mk_chain(2).unwrap());
        let l3 = table(FiniteMvAlgebra::mk_chain(3).unwrap());
        let p = product_emv(vec![l2, l3]).unwrap();
        for i in 0..2 {
            let pi = projection_hom(&p, i).unwrap();
            assert!(is_strong_hom(&pi, 0).passed(), "π{i}");
        }
        assert!(projection_hom(&p, 2).is_err());
    }

    #[test]
    fn mediating_arrow_commutes_and_validates() {
        let (_b2, p, fs) = square_cone();
        let g = mediating_morphism(&fs, &p).unwrap();
        assert!(validate_morphism(&g, 0).unwrap().passed());
        assert!(check_commutes(&p, &g, &fs, 0).unwrap().passed());
    }

    #[test]
    fn the_square_is_the_product_of_its_edges() {
        let (b2, p, fs) = square_cone();
        let g = mediating_morphism(&fs, &p).unwrap();
        // the mediating arrow is invertible: send (i,j) back to the mask
        let back = morphism_from_strong_hom(&StrongEmvHom::new(
            p.clone(),
            b2,
            "untuple",
            Arc::new(|x: &Elem| match x {
                Elem::Tuple(xs) => match (&xs[0], &xs[1]) {
                    (Elem::Idx(i), Elem::Idx(j)) => Elem::idx(i + 2 * j),
                    _ => panic!("chain coordinates expected"),
                },
            other => panic!("product element expected, got {other:?}"),
            }),
        ));
        assert!(validate_morphism(&back, 0).unwrap().passed());
        let v = is_approx_isomorphism(&g, &back, 0).unwrap();
        assert!(v.passed(), "{v}");
    }

    #[test]
    fn universal_property_with_a_candidate_pool() {
        let (_b2, p, fs) = square_cone();
        let g = mediating_morphism(&fs, &p).unwrap();
        // same class: the canonical arrow composed with the identity
        let same = compose(&identity_morphism(p.clone()), &g, 0).unwrap();
        // wrong: tuple the legs in swapped order
        let swapped = mediating_morphism(&[fs[1].clone(), fs[0].clone()], &p).unwrap();
        // wrong differently: factor through one leg twice
        let diag = mediating_morphism(&[fs[0].clone(), fs[0].clone()], &p).unwrap();
        let (overall, per) =
            check_product_universal(&p, &g, &fs, &[same, swapped, diag], 0).unwrap();
        assert!(overall.passed(), "{overall}");
        assert_eq!(per.len(), 3);
        assert!(per[0].1.passed(), "identity-composite must stay in class: {}", per[0].1);
        for (name, v) in &per[1..] {
            assert!(
                matches!(v.status, crate::verdict::Status::NotACompetitor),
                "{name}: {v}"
            );
        }
    }

    #[test]
    fn mediating_works_over_a_proper_source() {
        let fs_alg = finset();
        let legs = vec![setminus_morphism(), identity_morphism(fs_alg.clone())];
        let p = product_emv(vec![fs_alg.clone(), fs_alg]).unwrap();
        let g = mediating_morphism(&legs, &p).unwrap();
        assert!(validate_morphism(&g, 2).unwrap().passed());
        assert!(check_commutes(&p, &g, &legs, 2).unwrap().passed());
    }

    #[test]
    fn composition_laws_on_the_finite_set_pool() {
        let fs_alg = finset();
        let id = identity_morphism(fs_alg.clone());
        let sm = setminus_morphism();
        let swap = morphism_from_strong_hom(&finset_swap_hom(1, 2));
        // sm ≈ id, swap ≈ swap: composites must agree up to ≈
        assert!(composition_well_defined(&sm, &id, &swap, &swap, 2).unwrap().passed());
        // and a broken premise is flagged as such, not as a law failure
        let v = composition_well_defined(&swap, &id, &sm, &sm, 2).unwrap();
        assert!(matches!(v.status, crate::verdict::Status::NotACompetitor));
        assert!(composition_associative(&swap, &sm, &id, 2).unwrap().passed());
        assert!(identity_laws(&sm, 2).unwrap().passed());
        assert!(identity_laws(&swap, 2).unwrap().passed());
    }

    #[test]
    fn functor_round_trips() {
        assert!(hom_embedding_round_trip(&finset_swap_hom(1, 2), 2).unwrap().passed());
        assert!(standard_round_trip(&setminus_morphism(), 2).unwrap().passed());
        let l4 = table(FiniteMvAlgebra::mk_chain(4).unwrap());
        assert!(hom_embedding_round_trip(&morphism::identity_strong_hom(l4), 0)
            .unwrap()
            .passed());
    }
}
