//! Finite EMV-algebras as raw ∨/∧/⊕ tables. The λ operation is always the
//! definitional min-scan here; there is no smaller structure to lean on.

use crate::mv::FiniteMvAlgebra;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEmv {
    n: u32,
    join: Vec<u32>,
    meet: Vec<u32>,
    oplus: Vec<u32>,
    zero: u32,
    labels: Option<Vec<String>>,
}

impl TableEmv {
    /// Shape-checked table constructor; laws are checked separately.
    pub fn from_tables(
        join: Vec<Vec<u32>>,
        meet: Vec<Vec<u32>>,
        oplus: Vec<Vec<u32>>,
        zero: u32,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = join.len() as u32;
        if n == 0 {
            return Err(Error::InvalidInput("empty carrier".into()));
        }
        if zero >= n {
            return Err(Error::InvalidInput("zero index out of range".into()));
        }
        if let Some(ls) = &labels {
            if ls.len() as u32 != n {
                return Err(Error::InvalidInput("label count mismatch".into()));
            }
        }
        let flatten = |t: &[Vec<u32>], name: &str| -> Result<Vec<u32>> {
            if t.len() as u32 != n {
                return Err(Error::InvalidInput(format!("{name} table is not {n}×{n}")));
            }
            let mut flat = Vec::with_capacity((n * n) as usize);
            for row in t {
                if row.len() as u32 != n {
                    return Err(Error::InvalidInput(format!("ragged {name} table")));
                }
                for &v in row {
                    if v >= n {
                        return Err(Error::InvalidInput(format!("{name} entry {v} out of range")));
                    }
                    flat.push(v);
                }
            }
            Ok(flat)
        };
        Ok(TableEmv {
            n,
            join: flatten(&join, "join")?,
            meet: flatten(&meet, "meet")?,
            oplus: flatten(&oplus, "oplus")?,
            zero,
            labels,
        })
    }

    /// View a finite MV-algebra as an EMV-algebra (its lattice is derived
    /// from the natural order).
    pub fn from_mv(mv: &FiniteMvAlgebra) -> Self {
        let n = mv.size();
        let mut join = Vec::with_capacity((n * n) as usize);
        let mut meet = Vec::with_capacity((n * n) as usize);
        let mut oplus = Vec::with_capacity((n * n) as usize);
        for x in 0..n {
            for y in 0..n {
                join.push(mv.vee(x, y));
                meet.push(mv.wedge(x, y));
                oplus.push(mv.oplus(x, y));
            }
        }
        let labels = (0..n).map(|x| mv.label(x)).collect();
        TableEmv { n, join, meet, oplus, zero: mv.zero(), labels: Some(labels) }
    }

    /// Build from closures over `0..n`; used for quotients and slices.
    pub fn from_ops(
        n: u32,
        join: impl Fn(u32, u32) -> u32,
        meet: impl Fn(u32, u32) -> u32,
        oplus: impl Fn(u32, u32) -> u32,
        zero: u32,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let jt: Vec<Vec<u32>> = (0..n).map(|x| (0..n).map(|y| join(x, y)).collect()).collect();
        let mt: Vec<Vec<u32>> = (0..n).map(|x| (0..n).map(|y| meet(x, y)).collect()).collect();
        let ot: Vec<Vec<u32>> = (0..n).map(|x| (0..n).map(|y| oplus(x, y)).collect()).collect();
        TableEmv::from_tables(jt, mt, ot, zero, labels)
    }

    pub fn size(&self) -> u32 {
        self.n
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn join(&self, x: u32, y: u32) -> u32 {
        self.join[(x * self.n + y) as usize]
    }

    pub fn meet(&self, x: u32, y: u32) -> u32 {
        self.meet[(x * self.n + y) as usize]
    }

    pub fn oplus(&self, x: u32, y: u32) -> u32 {
        self.oplus[(x * self.n + y) as usize]
    }

    pub fn le(&self, x: u32, y: u32) -> bool {
        self.join(x, y) == y
    }

    /// Fold of ∨ over the carrier; the top element of any lawful table.
    pub fn top(&self) -> u32 {
        (0..self.n).fold(self.zero, |acc, x| self.join(acc, x))
    }

    pub fn idempotents(&self) -> Vec<u32> {
        (0..self.n).filter(|&x| self.oplus(x, x) == x).collect()
    }

    pub fn label(&self, x: u32) -> String {
        match &self.labels {
            Some(ls) => ls[x as usize].clone(),
            None => format!("#{x}"),
        }
    }

    pub fn join_rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.join(x, y)).collect()).collect()
    }

    pub fn meet_rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.meet(x, y)).collect()).collect()
    }

    pub fn oplus_rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.oplus(x, y)).collect()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}
