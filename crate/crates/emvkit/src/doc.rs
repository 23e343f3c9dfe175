//! On-disk document formats: one JSON object per file.
//!
//! Algebras are described by construction (`chain`, `boolean`, …) rather than
//! by dumping a backend, so fixtures stay human-diffable and a document
//! decodes to exactly one value. Elements take the carrier's natural JSON
//! shape: an integer index for table algebras, a sorted list for finite sets,
//! a `{coordinate: index}` object for direct sums. Morphism families are
//! either explicit entry tables (finite carriers only) or named builtins with
//! parameters — arbitrary witness functions are not serializable, so infinite
//! families must come in by name.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::category::{product_emv, projection_hom};
use crate::congruence::Congruence;
use crate::emv::{DirectSumEmv, Elem, Emv, FinSetBooleanEmv, FinSupp, TableEmv};
use crate::free::{free_lift, mk_free_mv, LiftTarget};
use crate::morphism::{
    identity_morphism, morphism_from_strong_hom, restrict_morphism, setminus_morphism,
    sum_coordinate_swap_hom, EmvMorphism, Entry,
};
use crate::mv::FiniteMvAlgebra;
use crate::{env_bound, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraDoc {
    Chain {
        n: u32,
    },
    Boolean {
        atoms: u32,
    },
    /// Finite product of MV kinds; decodes to one flat table so its elements
    /// stay plain indices (row-major, first factor fastest).
    Product {
        factors: Vec<AlgebraDoc>,
    },
    /// Explicit tables. A `neg` row makes it an MV table (lattice ops
    /// derived); `join`+`meet` make it a bare EMV table, the shape quotients
    /// come out in. Both together are allowed and must agree.
    Table {
        oplus: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        neg: Option<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        join: Option<Vec<Vec<u32>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meet: Option<Vec<Vec<u32>>>,
        #[serde(default)]
        zero: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    DirectSum {
        pattern: Vec<AlgebraDoc>,
        repeat: bool,
    },
    FinsetBoolean,
}

impl AlgebraDoc {
    pub fn kind_name(&self) -> &'static str {
        match self {
            AlgebraDoc::Chain { .. } => "chain",
            AlgebraDoc::Boolean { .. } => "boolean",
            AlgebraDoc::Product { .. } => "product",
            AlgebraDoc::Table { .. } => "table",
            AlgebraDoc::DirectSum { .. } => "direct_sum",
            AlgebraDoc::FinsetBoolean => "finset_boolean",
        }
    }

    /// The MV view, for kinds that have one. Direct sums and the finite-set
    /// algebra are proper, so they land in [`Error::Unsupported`].
    pub fn to_mv(&self) -> Result<FiniteMvAlgebra> {
        match self {
            AlgebraDoc::Chain { n } => FiniteMvAlgebra::mk_chain(*n),
            AlgebraDoc::Boolean { atoms } => FiniteMvAlgebra::mk_boolean(*atoms),
            AlgebraDoc::Product { factors } => {
                let parts: Vec<FiniteMvAlgebra> =
                    factors.iter().map(|f| f.to_mv()).collect::<Result<_>>()?;
                let refs: Vec<&FiniteMvAlgebra> = parts.iter().collect();
                FiniteMvAlgebra::mk_product(&refs)
            }
            AlgebraDoc::Table { oplus, neg: Some(neg), zero, labels, .. } => {
                let one = *neg.get(*zero as usize).ok_or_else(|| {
                    Error::InvalidInput("zero index outside the negation row".into())
                })?;
                FiniteMvAlgebra::from_tables(oplus.clone(), neg.clone(), *zero, one, labels.clone())
            }
            _ => Err(Error::Unsupported(format!("a {} document has no MV table", self.kind_name()))),
        }
    }

    pub fn to_emv(&self) -> Result<Arc<Emv>> {
        let m = match self {
            AlgebraDoc::Chain { .. } | AlgebraDoc::Boolean { .. } | AlgebraDoc::Product { .. } => {
                Emv::Table(TableEmv::from_mv(&self.to_mv()?))
            }
            AlgebraDoc::Table { oplus, neg, join, meet, zero, labels } => match (join, meet) {
                (Some(j), Some(mt)) => {
                    let t = TableEmv::from_tables(
                        j.clone(),
                        mt.clone(),
                        oplus.clone(),
                        *zero,
                        labels.clone(),
                    )?;
                    if neg.is_some() {
                        let mv = TableEmv::from_mv(&self.to_mv()?);
                        if mv.join_rows() != t.join_rows() || mv.meet_rows() != t.meet_rows() {
                            return Err(Error::InvalidInput(
                                "explicit join/meet disagree with the lattice the neg row derives"
                                    .into(),
                            ));
                        }
                    }
                    Emv::Table(t)
                }
                (None, None) if neg.is_some() => Emv::Table(TableEmv::from_mv(&self.to_mv()?)),
                _ => {
                    return Err(Error::InvalidInput(
                        "a table document needs a neg row, or both join and meet".into(),
                    ))
                }
            },
            AlgebraDoc::DirectSum { pattern, repeat } => {
                let mvs: Vec<FiniteMvAlgebra> =
                    pattern.iter().map(|p| p.to_mv()).collect::<Result<_>>()?;
                Emv::DirectSum(DirectSumEmv::new(mvs, *repeat)?)
            }
            AlgebraDoc::FinsetBoolean => Emv::FinSet(FinSetBooleanEmv::new()),
        };
        Ok(Arc::new(m))
    }
}

/// Document for an algebra a command computed rather than read — quotients
/// and anything else that exists only as a bare table.
pub fn table_doc(t: &TableEmv) -> AlgebraDoc {
    AlgebraDoc::Table {
        oplus: t.oplus_rows(),
        neg: None,
        join: Some(t.join_rows()),
        meet: Some(t.meet_rows()),
        zero: t.zero(),
        labels: t.labels().map(|ls| ls.to_vec()),
    }
}

pub fn mv_table_doc(a: &FiniteMvAlgebra) -> AlgebraDoc {
    AlgebraDoc::Table {
        oplus: a.oplus_rows(),
        neg: Some(a.neg_row()),
        join: None,
        meet: None,
        zero: a.zero(),
        labels: a.labels().map(|ls| ls.to_vec()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemDoc {
    Index(u32),
    Members(Vec<u32>),
    /// Direct-sum coordinates; JSON object keys are strings, so the
    /// coordinate index rides in as one.
    Coords(BTreeMap<String, u32>),
}

pub fn decode_elem(m: &Emv, d: &ElemDoc) -> Result<Elem> {
    let e = match (m, d) {
        (Emv::Table(_), ElemDoc::Index(i)) => Elem::Idx(*i),
        (Emv::FinSet(_), ElemDoc::Members(ms)) => Elem::Set(ms.iter().copied().collect()),
        (Emv::DirectSum(_), ElemDoc::Coords(cs)) => {
            let mut pairs = Vec::with_capacity(cs.len());
            for (k, v) in cs {
                let i: u32 = k.parse().map_err(|_| {
                    Error::InvalidInput(format!("coordinate key {k:?} is not an index"))
                })?;
                pairs.push((i, *v));
            }
            Elem::Vec(FinSupp::from_entries(pairs))
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "element {d:?} does not fit a {} carrier",
                m.kind()
            )))
        }
    };
    m.validate_elem(&e)?;
    Ok(e)
}

pub fn encode_elem(m: &Emv, x: &Elem) -> Result<ElemDoc> {
    Ok(match (m, x) {
        (Emv::Table(_), Elem::Idx(i)) => ElemDoc::Index(*i),
        (Emv::FinSet(_), Elem::Set(s)) => ElemDoc::Members(s.iter().copied().collect()),
        (Emv::DirectSum(_), Elem::Vec(v)) => {
            ElemDoc::Coords(v.iter().map(|(i, c)| (i.to_string(), c)).collect())
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no document form for {} in a {}",
                m.format_elem(x),
                m.kind()
            )))
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    /// Idempotent domain top of this entry.
    pub a: ElemDoc,
    /// Graph of the entry over the whole of `[0, a]`, as `[x, f(x)]` rows.
    pub map: Vec<(ElemDoc, ElemDoc)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MorphismDoc {
    Family { source: AlgebraDoc, target: AlgebraDoc, entries: Vec<EntryDoc> },
    Builtin(BuiltinDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum BuiltinDoc {
    Identity { algebra: AlgebraDoc },
    /// `X ↦ X∖{i}` over the finite-set algebra; needs no parameters.
    Setminus,
    /// Identity re-indexed over the listed idempotents only.
    StrongRestrict { algebra: AlgebraDoc, caps: Vec<ElemDoc> },
    Projection { factors: Vec<AlgebraDoc>, index: u32 },
    /// Coordinate swap on a direct sum, applied in every window.
    Coordinatewise { pattern: Vec<AlgebraDoc>, repeat: bool, swap: (u32, u32) },
    /// The family a generator assignment induces out of a free algebra.
    FreeLift { gens: Vec<String>, target: AlgebraDoc, assign: Vec<ElemDoc> },
}

pub fn decode_morphism(doc: &MorphismDoc) -> Result<EmvMorphism> {
    match doc {
        MorphismDoc::Family { source, target, entries } => {
            let src = source.to_emv()?;
            let tgt = target.to_emv()?;
            let mut out = Vec::with_capacity(entries.len());
            for (k, e) in entries.iter().enumerate() {
                out.push(decode_entry(&src, &tgt, k, e)?);
            }
            Ok(EmvMorphism::from_entries(src, tgt, "family", out))
        }
        MorphismDoc::Builtin(b) => decode_builtin(b),
    }
}

fn decode_entry(src: &Arc<Emv>, tgt: &Arc<Emv>, k: usize, e: &EntryDoc) -> Result<Entry> {
    let at = |why: String| Error::InvalidInput(format!("entry {k}: {why}"));
    let dom = decode_elem(src, &e.a).map_err(|e| at(e.to_string()))?;
    if !src.is_idempotent(&dom) {
        return Err(at(format!("domain top {} is not idempotent", src.format_elem(&dom))));
    }
    let mut table: Vec<(Elem, Elem)> = Vec::with_capacity(e.map.len());
    for (xd, yd) in &e.map {
        let x = decode_elem(src, xd).map_err(|e| at(e.to_string()))?;
        let y = decode_elem(tgt, yd).map_err(|e| at(e.to_string()))?;
        if !src.le(&x, &dom) {
            return Err(at(format!(
                "map row at {} lies outside [0, {}]",
                src.format_elem(&x),
                src.format_elem(&dom)
            )));
        }
        if table.iter().any(|(seen, _)| src.eq_elem(seen, &x)) {
            return Err(at(format!("duplicate map row at {}", src.format_elem(&x))));
        }
        table.push((x, y));
    }
    for x in src.interval_elems(&dom)? {
        if !table.iter().any(|(seen, _)| src.eq_elem(seen, &x)) {
            return Err(at(format!("map table misses {}", src.format_elem(&x))));
        }
    }
    let key = format!("at-{}", src.format_elem(&dom));
    Ok(Entry::new(
        key,
        dom,
        Arc::new(move |x| {
            table
                .iter()
                .find(|(seen, _)| seen == x)
                .map(|(_, y)| y.clone())
                .unwrap_or_else(|| panic!("map table has no row at {x:?}"))
        }),
    ))
}

fn decode_builtin(b: &BuiltinDoc) -> Result<EmvMorphism> {
    match b {
        BuiltinDoc::Identity { algebra } => Ok(identity_morphism(algebra.to_emv()?)),
        BuiltinDoc::Setminus => Ok(setminus_morphism()),
        BuiltinDoc::StrongRestrict { algebra, caps } => {
            let m = algebra.to_emv()?;
            let id = identity_morphism(m.clone());
            let ks: Vec<Elem> = caps.iter().map(|c| decode_elem(&m, c)).collect::<Result<_>>()?;
            restrict_morphism(&id, &ks, env_bound())
        }
        BuiltinDoc::Projection { factors, index } => {
            let fs: Vec<Arc<Emv>> = factors.iter().map(|f| f.to_emv()).collect::<Result<_>>()?;
            let p = product_emv(fs)?;
            Ok(morphism_from_strong_hom(&projection_hom(&p, *index)?))
        }
        BuiltinDoc::Coordinatewise { pattern, repeat, swap } => {
            let mvs: Vec<FiniteMvAlgebra> =
                pattern.iter().map(|p| p.to_mv()).collect::<Result<_>>()?;
            let sum = Arc::new(Emv::DirectSum(DirectSumEmv::new(mvs, *repeat)?));
            Ok(morphism_from_strong_hom(&sum_coordinate_swap_hom(sum, swap.0, swap.1)?))
        }
        BuiltinDoc::FreeLift { gens, target, assign } => {
            let names: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let free = mk_free_mv(&names)?;
            let tgt = target.to_emv()?;
            let vals: Vec<Elem> =
                assign.iter().map(|a| decode_elem(&tgt, a)).collect::<Result<_>>()?;
            free_lift(&free, &LiftTarget::new(tgt, vals)?)
        }
    }
}

/// Tabulate a morphism into an explicit family document: one entry per
/// family member at `level`, the map written out over its whole interval.
/// Duplicated entries (same domain, same graph) collapse to one row, which
/// keeps composite output readable. Needs finite intervals on the source.
pub fn encode_morphism(
    f: &EmvMorphism,
    source: &AlgebraDoc,
    target: &AlgebraDoc,
    level: u32,
) -> Result<MorphismDoc> {
    let src = f.source();
    let tgt = f.target();
    let mut entries: Vec<EntryDoc> = Vec::new();
    for e in f.entries(level) {
        let mut map = Vec::new();
        for x in src.interval_elems(&e.dom)? {
            let y = e.apply(&x);
            map.push((encode_elem(src, &x)?, encode_elem(tgt, &y)?));
        }
        let row = EntryDoc { a: encode_elem(src, &e.dom)?, map };
        if !entries.contains(&row) {
            entries.push(row);
        }
    }
    Ok(MorphismDoc::Family { source: source.clone(), target: target.clone(), entries })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceDoc {
    pub algebra: AlgebraDoc,
    /// Sweep level the partition was taken at.
    pub level: u32,
    pub classes: Vec<Vec<ElemDoc>>,
}

pub fn decode_congruence(d: &CongruenceDoc) -> Result<(Arc<Emv>, Congruence)> {
    let m = d.algebra.to_emv()?;
    let classes: Vec<Vec<Elem>> = d
        .classes
        .iter()
        .map(|c| c.iter().map(|x| decode_elem(&m, x)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let c = Congruence::from_classes(&m, classes, d.level)?;
    Ok((m, c))
}

pub fn encode_congruence(m: &Emv, c: &Congruence, algebra: &AlgebraDoc) -> Result<CongruenceDoc> {
    let classes: Vec<Vec<ElemDoc>> = c
        .classes()
        .iter()
        .map(|cl| cl.iter().map(|x| encode_elem(m, x)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(CongruenceDoc { algebra: algebra.clone(), level: c.level(), classes })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    // serde_json's message carries line and column
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, v: &T) -> Result<()> {
    let mut text =
        serde_json::to_string_pretty(v).map_err(|e| Error::InvalidInput(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::validate_morphism;
    use crate::verdict::Status;

    fn fixture_docs() -> Vec<AlgebraDoc> {
        vec![
            AlgebraDoc::Chain { n: 4 },
            AlgebraDoc::Boolean { atoms: 2 },
            AlgebraDoc::Product {
                factors: vec![AlgebraDoc::Chain { n: 2 }, AlgebraDoc::Chain { n: 3 }],
            },
            mv_table_doc(&FiniteMvAlgebra::mk_chain(3).unwrap()),
            AlgebraDoc::DirectSum { pattern: vec![AlgebraDoc::Chain { n: 2 }], repeat: true },
            AlgebraDoc::FinsetBoolean,
        ]
    }

    #[test]
    fn every_fixture_doc_survives_the_wire() {
        for d in fixture_docs() {
            let text = serde_json::to_string(&d).unwrap();
            let back: AlgebraDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back, d, "wire loses {text}");
            d.to_emv().unwrap();
        }
    }

    #[test]
    fn docs_land_on_their_backends() {
        assert_eq!(AlgebraDoc::Chain { n: 4 }.to_emv().unwrap().kind(), "table");
        assert_eq!(
            AlgebraDoc::DirectSum { pattern: vec![AlgebraDoc::Chain { n: 2 }], repeat: true }
                .to_emv()
                .unwrap()
                .kind(),
            "direct-sum"
        );
        assert_eq!(AlgebraDoc::FinsetBoolean.to_emv().unwrap().kind(), "finset-boolean");
        assert!(AlgebraDoc::FinsetBoolean.to_mv().is_err());
        assert!(AlgebraDoc::DirectSum { pattern: vec![AlgebraDoc::Chain { n: 2 }], repeat: true }
            .to_mv()
            .is_err());
        // the product doc multiplies out: 2·3 elements
        let p = AlgebraDoc::Product {
            factors: vec![AlgebraDoc::Chain { n: 2 }, AlgebraDoc::Chain { n: 3 }],
        };
        assert_eq!(p.to_mv().unwrap().size(), 6);
    }

    #[test]
    fn a_quotient_style_table_doc_round_trips_through_decode() {
        let mv = FiniteMvAlgebra::mk_boolean(2).unwrap();
        let t = TableEmv::from_mv(&mv);
        let d = table_doc(&t);
        let m = d.to_emv().unwrap();
        assert_eq!(m.kind(), "table");
        assert!(d.to_mv().is_err(), "no neg row was written");
        // both payloads present and consistent is also accepted
        let full = AlgebraDoc::Table {
            oplus: t.oplus_rows(),
            neg: Some(mv.neg_row()),
            join: Some(t.join_rows()),
            meet: Some(t.meet_rows()),
            zero: t.zero(),
            labels: None,
        };
        full.to_emv().unwrap();
        full.to_mv().unwrap();
    }

    #[test]
    fn an_inconsistent_table_doc_is_refused() {
        let mv = FiniteMvAlgebra::mk_chain(3).unwrap();
        let t = TableEmv::from_mv(&mv);
        let wrong_join = vec![vec![2, 2, 2]; 3];
        let d = AlgebraDoc::Table {
            oplus: t.oplus_rows(),
            neg: Some(mv.neg_row()),
            join: Some(wrong_join),
            meet: Some(t.meet_rows()),
            zero: 0,
            labels: None,
        };
        assert!(d.to_emv().is_err());
        let bare = AlgebraDoc::Table {
            oplus: t.oplus_rows(),
            neg: None,
            join: None,
            meet: None,
            zero: 0,
            labels: None,
        };
        assert!(bare.to_emv().is_err(), "neither neg nor join/meet");
    }

    fn chain3_identity_family() -> MorphismDoc {
        MorphismDoc::Family {
            source: AlgebraDoc::Chain { n: 3 },
            target: AlgebraDoc::Chain { n: 3 },
            entries: vec![EntryDoc {
                a: ElemDoc::Index(2),
                map: vec![
                    (ElemDoc::Index(0), ElemDoc::Index(0)),
                    (ElemDoc::Index(1), ElemDoc::Index(1)),
                    (ElemDoc::Index(2), ElemDoc::Index(2)),
                ],
            }],
        }
    }

    #[test]
    fn an_explicit_family_decodes_and_validates() {
        let doc = chain3_identity_family();
        let f = decode_morphism(&doc).unwrap();
        assert!(validate_morphism(&f, 2).unwrap().passed());
        // and tabulating it lands back on the same document
        let re = encode_morphism(&f, &AlgebraDoc::Chain { n: 3 }, &AlgebraDoc::Chain { n: 3 }, 2)
            .unwrap();
        assert_eq!(re, doc);
    }

    #[test]
    fn family_decode_rejects_holes_rows_out_of_range_and_duplicates() {
        let base = chain3_identity_family();
        let MorphismDoc::Family { source, target, entries } = &base else { unreachable!() };
        let mut holed = entries.clone();
        match &mut holed[0] {
            EntryDoc { map, .. } => {
                map.pop();
            }
        }
        let d = MorphismDoc::Family {
            source: source.clone(),
            target: target.clone(),
            entries: holed,
        };
        let err = decode_morphism(&d).unwrap_err().to_string();
        assert!(err.contains("misses"), "got: {err}");

        let mut dup = entries.clone();
        dup[0].map.push((ElemDoc::Index(0), ElemDoc::Index(0)));
        let d = MorphismDoc::Family {
            source: source.clone(),
            target: target.clone(),
            entries: dup,
        };
        assert!(decode_morphism(&d).unwrap_err().to_string().contains("duplicate"));

        // non-idempotent domain top on the chain
        let d = MorphismDoc::Family {
            source: source.clone(),
            target: target.clone(),
            entries: vec![EntryDoc {
                a: ElemDoc::Index(1),
                map: vec![(ElemDoc::Index(0), ElemDoc::Index(0))],
            }],
        };
        assert!(decode_morphism(&d).unwrap_err().to_string().contains("idempotent"));

        // an element shaped for the wrong carrier
        let d = MorphismDoc::Family {
            source: source.clone(),
            target: target.clone(),
            entries: vec![EntryDoc { a: ElemDoc::Members(vec![1]), map: vec![] }],
        };
        assert!(decode_morphism(&d).is_err());
    }

    #[test]
    fn builtin_docs_decode_to_working_families() {
        let sm = decode_morphism(&MorphismDoc::Builtin(BuiltinDoc::Setminus)).unwrap();
        assert!(validate_morphism(&sm, 2).unwrap().passed());

        let id = decode_morphism(&MorphismDoc::Builtin(BuiltinDoc::Identity {
            algebra: AlgebraDoc::Boolean { atoms: 2 },
        }))
        .unwrap();
        assert!(validate_morphism(&id, 2).unwrap().passed());

        let restricted = decode_morphism(&MorphismDoc::Builtin(BuiltinDoc::StrongRestrict {
            algebra: AlgebraDoc::Boolean { atoms: 2 },
            caps: vec![ElemDoc::Index(1), ElemDoc::Index(3)],
        }))
        .unwrap();
        assert_eq!(restricted.entries(4).len(), 2);

        let pr = decode_morphism(&MorphismDoc::Builtin(BuiltinDoc::Projection {
            factors: vec![AlgebraDoc::Chain { n: 2 }, AlgebraDoc::Chain { n: 2 }],
            index: 1,
        }))
        .unwrap();
        assert!(validate_morphism(&pr, 2).unwrap().passed());

        let swap = decode_morphism(&MorphismDoc::Builtin(BuiltinDoc::Coordinatewise {
            pattern: vec![AlgebraDoc::Chain { n: 2 }],
            repeat: true,
            swap: (0, 1),
        }))
        .unwrap();
        assert!(validate_morphism(&swap, 2).unwrap().passed());

        let lift = decode_morphism(&MorphismDoc::Builtin(BuiltinDoc::FreeLift {
            gens: vec!["x".into()],
            target: AlgebraDoc::Chain { n: 3 },
            assign: vec![ElemDoc::Index(1)],
        }))
        .unwrap();
        let v = validate_morphism(&lift, 2).unwrap();
        assert!(matches!(v.status, Status::Pass | Status::PassUpToBound { .. }), "{v}");
    }

    #[test]
    fn builtin_docs_survive_the_wire() {
        let docs = vec![
            MorphismDoc::Builtin(BuiltinDoc::Setminus),
            MorphismDoc::Builtin(BuiltinDoc::Identity { algebra: AlgebraDoc::Chain { n: 4 } }),
            MorphismDoc::Builtin(BuiltinDoc::Projection {
                factors: vec![AlgebraDoc::Chain { n: 2 }, AlgebraDoc::Chain { n: 2 }],
                index: 0,
            }),
            MorphismDoc::Builtin(BuiltinDoc::Coordinatewise {
                pattern: vec![AlgebraDoc::Chain { n: 2 }],
                repeat: true,
                swap: (0, 1),
            }),
            MorphismDoc::Builtin(BuiltinDoc::FreeLift {
                gens: vec!["x".into()],
                target: AlgebraDoc::Chain { n: 3 },
                assign: vec![ElemDoc::Index(1)],
            }),
            chain3_identity_family(),
        ];
        for d in docs {
            let text = serde_json::to_string(&d).unwrap();
            let back: MorphismDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back, d, "wire loses {text}");
        }
    }

    #[test]
    fn sum_elements_ride_as_coordinate_objects() {
        let d = AlgebraDoc::DirectSum { pattern: vec![AlgebraDoc::Chain { n: 3 }], repeat: true };
        let m = d.to_emv().unwrap();
        let x = decode_elem(
            &m,
            &ElemDoc::Coords([("0".to_string(), 2u32), ("3".to_string(), 1u32)].into()),
        )
        .unwrap();
        let back = encode_elem(&m, &x).unwrap();
        let text = serde_json::to_string(&back).unwrap();
        assert_eq!(text, r#"{"0":2,"3":1}"#);
        assert!(decode_elem(&m, &ElemDoc::Coords([("x".to_string(), 1u32)].into())).is_err());
        assert!(decode_elem(&m, &ElemDoc::Coords([("0".to_string(), 9u32)].into())).is_err());
    }

    #[test]
    fn congruence_docs_round_trip() {
        let alg = AlgebraDoc::Boolean { atoms: 2 };
        let m = alg.to_emv().unwrap();
        // collapse the atom at index 1: {0,1}, {2,3}
        let classes = vec![
            vec![Elem::Idx(0), Elem::Idx(1)],
            vec![Elem::Idx(2), Elem::Idx(3)],
        ];
        let c = Congruence::from_classes(&m, classes, 2).unwrap();
        let doc = encode_congruence(&m, &c, &alg).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let back: CongruenceDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let (m2, c2) = decode_congruence(&back).unwrap();
        assert!(c2.related(&m2, &Elem::Idx(0), &Elem::Idx(1)));
        assert!(!c2.related(&m2, &Elem::Idx(0), &Elem::Idx(2)));
    }
}
