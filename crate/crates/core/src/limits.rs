use crate::error::{Error, Result};

/// Size caps for materialized algebras and exhaustive configuration scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest domain the generic homomorphism search and power-algebra
    /// materialization will accept.
    pub domain: usize,
    /// Largest configuration space `|A^G|` scanned exhaustively.
    pub configs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            domain: 4096,
            configs: 65536,
        }
    }
}

impl Limits {
    pub fn check_domain(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.domain as u128 {
            return Err(Error::CapExceeded {
                what,
                needed,
                cap: self.domain,
            });
        }
        Ok(())
    }

    pub fn check_configs(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.configs as u128 {
            return Err(Error::CapExceeded {
                what,
                needed,
                cap: self.configs,
            });
        }
        Ok(())
    }
}

/// `base^exp` without overflow; saturates at `u128::MAX`.
pub fn power_size(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
