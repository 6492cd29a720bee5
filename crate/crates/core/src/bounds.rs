use crate::error::{Error, Result};

/// Environment variable overriding [`Bounds::max_order`].
pub const BOUND_ENV: &str = "BRACEFORGE_BOUND";

/// Hard limits guarding the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group or brace order any enumeration accepts.
    pub max_order: usize,
    /// Largest holomorph `|G| * |Aut(G)|` a regular-subgroup search accepts.
    pub max_holomorph: usize,
    /// Largest automorphism group the backtracking search will collect.
    pub max_automorphisms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_order: 200,
            max_holomorph: 10_000,
            max_automorphisms: 50_000,
        }
    }
}

impl Bounds {
    /// Defaults, with `max_order` taken from `BRACEFORGE_BOUND` when set.
    pub fn from_env() -> Result<Self> {
        let mut bounds = Self::default();
        if let Ok(raw) = std::env::var(BOUND_ENV) {
            let value: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{BOUND_ENV}={raw:?} is not a positive integer")))?;
            if value == 0 {
                return Err(Error::InvalidInput(format!("{BOUND_ENV} must be positive")));
            }
            bounds.max_order = value;
        }
        Ok(bounds)
    }

    pub fn check_order(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.max_order {
            Err(Error::BoundExceeded {
                what,
                size,
                bound: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}
