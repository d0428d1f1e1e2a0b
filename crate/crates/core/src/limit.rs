use crate::error::{Error, Result};

/// Default cap on the number of morphisms (or candidates) any single
/// enumeration may produce.
pub const DEFAULT_LIMIT: usize = 2_000_000;

/// Resource bound for enumerating constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limit(pub usize);

impl Default for Limit {
    fn default() -> Self {
        Limit(DEFAULT_LIMIT)
    }
}

impl Limit {
    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::ResourceBound {
                needed,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }

    /// Like [`Limit::check`], treating arithmetic overflow as exceeding the bound.
    pub fn check_opt(&self, needed: Option<u128>) -> Result<()> {
        self.check(needed.unwrap_or(u128::MAX))
    }
}
