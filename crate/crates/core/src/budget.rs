use std::cell::Cell;

use crate::error::{Error, Result};

/// Cap on the number of search nodes a single enumeration may visit.
///
/// Enumerations that hit the cap fail with [`Error::SizeBudgetExceeded`]
/// instead of returning a truncated answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 5_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn unlimited() -> Self {
        Budget { limit: u64::MAX }
    }

    pub fn meter(&self, what: &'static str) -> Meter {
        Meter { limit: self.limit, used: Cell::new(0), what }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

/// Per-call counter handed to search loops.
#[derive(Debug)]
pub struct Meter {
    limit: u64,
    used: Cell<u64>,
    what: &'static str,
}

impl Meter {
    pub fn tick(&self) -> Result<()> {
        let used = self.used.get() + 1;
        self.used.set(used);
        if used > self.limit {
            Err(Error::SizeBudgetExceeded { what: self.what.to_string(), limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_fails_loudly_past_limit() {
        let m = Budget::new(2).meter("counting");
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        let err = m.tick().unwrap_err();
        assert_eq!(err, Error::SizeBudgetExceeded { what: "counting".into(), limit: 2 });
    }
}
