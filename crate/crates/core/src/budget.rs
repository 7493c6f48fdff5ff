//! Enumeration caps shared by every exhaustive routine.

use crate::error::{Error, Result};

/// Environment variable that overrides every enumeration cap at once.
pub const BUDGET_ENV: &str = "IMPLAB_BUDGET";

/// Caps on the size of exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of preference profiles, `(m!)^n`.
    pub profiles: u128,
    /// Maximum number of pairwise SWF candidates, `(2^(2^n))^3`.
    pub swf_candidates: u128,
    /// Maximum number of auction sweep cells.
    pub sweep_cells: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            profiles: 10_000_000,
            swf_candidates: 1 << 24,
            sweep_cells: 100_000_000,
        }
    }
}

impl Budget {
    /// A budget with every cap set to `cap`.
    pub fn uniform(cap: u128) -> Self {
        Budget {
            profiles: cap,
            swf_candidates: cap,
            sweep_cells: cap,
        }
    }

    /// The default budget, overridden by `IMPLAB_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<u128>()
                .map(Budget::uniform)
                .map_err(|_| Error::Domain(format!("{BUDGET_ENV}={raw:?} is not a non-negative integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub(crate) fn check(what: &str, count: Option<u128>, cap: u128) -> Result<u128> {
        match count {
            Some(c) if c <= cap => Ok(c),
            Some(c) => Err(Error::BudgetExceeded {
                what: what.to_string(),
                count: c,
                cap,
            }),
            None => Err(Error::BudgetExceeded {
                what: what.to_string(),
                count: u128::MAX,
                cap,
            }),
        }
    }
}
