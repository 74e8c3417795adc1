use crate::error::{Error, Result};

/// Default enumeration cap: 2^24 evaluations per sweep.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// Environment variable that overrides [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "GOWERSLAB_CAP";

/// Work limits shared by every exhaustive kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of points (or tuples) a single exhaustive sweep may visit.
    pub enumeration: u64,
    /// Maximum number of candidates a witness search may try.
    pub search_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: DEFAULT_CAP,
            search_budget: 1 << 26,
        }
    }
}

impl Caps {
    pub fn with_enumeration(enumeration: u64) -> Self {
        Caps {
            enumeration,
            ..Caps::default()
        }
    }

    /// Defaults, with the enumeration cap taken from `GOWERSLAB_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut caps = Caps::default();
        if let Ok(raw) = std::env::var(CAP_ENV) {
            let cap: u64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("{CAP_ENV}={raw:?} is not a positive integer")))?;
            if cap == 0 {
                return Err(Error::invalid(format!("{CAP_ENV} must be positive")));
            }
            caps.enumeration = cap;
        }
        Ok(caps)
    }

    /// Fails with [`Error::DomainTooLarge`] when `required` exceeds the cap.
    pub fn check(&self, what: &str, required: u128) -> Result<()> {
        if required > self.enumeration as u128 {
            return Err(Error::DomainTooLarge {
                what: what.to_string(),
                required,
                cap: self.enumeration,
            });
        }
        Ok(())
    }

    pub fn check_budget(&self, what: &str, required: u128) -> Result<()> {
        if required > self.search_budget as u128 {
            return Err(Error::BudgetExceeded(format!(
                "{what} needs {required} candidates, budget is {}",
                self.search_budget
            )));
        }
        Ok(())
    }
}

/// `base^exp` without overflow, saturating at `u128::MAX`.
pub fn pow_u128(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base as u128) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}
