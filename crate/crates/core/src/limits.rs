use crate::error::{Error, Result};

/// Resource caps for the exhaustive engines. Exceeding one is reported as
/// [`Error::CapExceeded`] rather than attempted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe whose `2^n` interpretations are enumerated.
    pub max_atoms: usize,
    /// Largest base whose `2^|Σ|` subsets are enumerated.
    pub max_formulas: usize,
    /// Most compatible total pre-orders the oracle will visit.
    pub max_extensions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: 20,
            max_formulas: 20,
            max_extensions: 100_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_atoms(&self, n: usize) -> Result<()> {
        check("atom", n, self.max_atoms)
    }

    pub(crate) fn check_formulas(&self, n: usize) -> Result<()> {
        check("formula", n, self.max_formulas)
    }
}

fn check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::CapExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}
