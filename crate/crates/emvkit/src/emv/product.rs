//! Finite products of EMV-algebras, componentwise everything.
//!
//! Factors may be any backend, so a product can mix a finite table with a
//! proper direct sum; the product is proper exactly when some factor is.
//! The componentwise operations live in the `Emv` dispatch — this type only
//! carries the factor list.

use std::sync::Arc;

use super::Emv;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct ProductEmv {
    factors: Vec<Arc<Emv>>,
}

impl ProductEmv {
    pub fn new(factors: Vec<Arc<Emv>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("a product needs at least one factor".into()));
        }
        if factors.len() > 6 {
            return Err(Error::InvalidInput("products are capped at 6 factors".into()));
        }
        Ok(ProductEmv { factors })
    }

    pub fn factors(&self) -> &[Arc<Emv>] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &Arc<Emv> {
        &self.factors[i]
    }
}
