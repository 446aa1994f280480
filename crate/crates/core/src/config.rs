//! Size caps for the exhaustive routines.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable read by [`Caps::from_env`], e.g. `"pg=10,tri=12"`.
pub const CAPS_ENV: &str = "FLIPCOUNT_CAPS";

/// Largest `N` each exhaustive routine accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Crossing-free graph enumeration.
    pub pg: usize,
    /// Triangulation enumeration.
    pub tri: usize,
    /// Exact maximum ps-flippable search.
    pub ps: usize,
    /// Exact maximum simultaneously flippable set.
    pub mis: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            pg: 9,
            tri: 11,
            ps: 12,
            mis: 16,
        }
    }
}

impl Caps {
    /// Defaults overridden by [`CAPS_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Applies `key=value` pairs separated by commas.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got {item:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("cap {key:?} needs a positive integer")))?;
            if value == 0 {
                return Err(Error::Config(format!("cap {key:?} must be positive")));
            }
            match key.trim() {
                "pg" => self.pg = value,
                "tri" => self.tri = value,
                "ps" => self.ps = value,
                "mis" => self.mis = value,
                other => return Err(Error::Config(format!("unknown cap {other:?}"))),
            }
        }
        Ok(self)
    }

    pub fn check(what: &'static str, n: usize, cap: usize) -> Result<()> {
        if n > cap {
            Err(Error::InstanceTooLarge { what, n, cap })
        } else {
            Ok(())
        }
    }
}

impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Caps::default().with_overrides(s)
    }
}
