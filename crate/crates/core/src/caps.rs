use crate::error::{Error, Result};

/// Environment variable overriding [`Caps::max_dim`].
pub const CAP_DIM_ENV: &str = "HOCHLAT_CAP_DIM";

/// Resource limits. Tensor powers grow like `|S|^(n+1)`, so every
/// construction that enumerates a basis checks its size against these first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest table (number of elements) any constructor will produce.
    pub max_elements: usize,
    /// Largest chain-space dimension that may be enumerated.
    pub max_dim: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_elements: 64, max_dim: 2_000_000 }
    }
}

impl Caps {
    /// Defaults, with `max_dim` taken from `HOCHLAT_CAP_DIM` when set.
    pub fn from_env() -> Result<Self> {
        let mut caps = Caps::default();
        if let Ok(raw) = std::env::var(CAP_DIM_ENV) {
            caps.max_dim = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{CAP_DIM_ENV}={raw:?} is not an integer")))?;
        }
        Ok(caps)
    }

    pub fn check_elements(&self, what: &str, size: u128) -> Result<()> {
        if size > self.max_elements as u128 {
            return Err(Error::ResourceLimit {
                what: what.to_string(),
                size,
                cap: self.max_elements as u128,
            });
        }
        Ok(())
    }

    pub fn check_dim(&self, what: &str, size: u128) -> Result<()> {
        if size > self.max_dim {
            return Err(Error::ResourceLimit { what: what.to_string(), size, cap: self.max_dim });
        }
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn tensor_dim(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
