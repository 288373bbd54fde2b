use std::fmt;
use std::str::FromStr;

use agemoa_core::Strategy;
use serde::{Deserialize, Serialize};

/// A population-update rule as named in configurations and CSV files. The
/// aging threshold is a per-cell parameter, not part of the name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Algorithm {
    Classic,
    StochasticUpdate,
    Aging,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::Classic,
        Algorithm::StochasticUpdate,
        Algorithm::Aging,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Classic => "classic",
            Algorithm::StochasticUpdate => "stochastic-update",
            Algorithm::Aging => "aging",
        }
    }

    pub fn strategy(self, tau: u64) -> Strategy {
        match self {
            Algorithm::Classic => Strategy::Classic,
            Algorithm::StochasticUpdate => Strategy::StochasticUpdate,
            Algorithm::Aging => Strategy::Aging { tau },
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "classic" => Ok(Algorithm::Classic),
            "stochastic-update" | "spu" => Ok(Algorithm::StochasticUpdate),
            "aging" => Ok(Algorithm::Aging),
            other => Err(format!(
                "unknown algorithm {other:?} (expected classic, stochastic-update or aging)"
            )),
        }
    }
}

impl TryFrom<String> for Algorithm {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<Algorithm> for String {
    fn from(a: Algorithm) -> String {
        a.label().to_string()
    }
}
