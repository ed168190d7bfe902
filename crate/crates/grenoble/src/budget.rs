use crate::error::{Error, Result};

/// Default number of expansion steps an enumeration may spend.
pub const DEFAULT_STEPS: u64 = 1_000_000;

/// Step meter shared by the enumeration routines.
///
/// Every partial-path extension costs one tick; running out is a hard error,
/// never a silently truncated result.
#[derive(Debug, Clone)]
pub struct Budget {
    initial: u64,
    remaining: u64,
}

impl Budget {
    pub fn new(steps: u64) -> Budget {
        Budget {
            initial: steps,
            remaining: steps,
        }
    }

    pub fn tick(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::BudgetExceeded { steps: self.initial });
        }
        self.remaining -= 1;
        Ok(())
    }

    pub fn spent(&self) -> u64 {
        self.initial - self.remaining
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_STEPS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustion_is_an_error() {
        let mut b = Budget::new(2);
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        match b.tick() {
            Err(Error::BudgetExceeded { steps: 2 }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn spent_tracks_ticks() {
        let mut b = Budget::new(10);
        b.tick().unwrap();
        b.tick().unwrap();
        assert_eq!(b.spent(), 2);
        assert_eq!(b.remaining(), 8);
    }
}
