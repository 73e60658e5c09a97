use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tie::TieEvent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Hare,
    Dhondt,
    SainteLague,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Hare, Method::Dhondt, Method::SainteLague];

    pub fn name(self) -> &'static str {
        match self {
            Method::Hare => "hare",
            Method::Dhondt => "dhondt",
            Method::SainteLague => "sainte-lague",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// Quota table (highest averages) or lower quota plus largest remainders.
    Divisor,
    /// Round `M f_i` for a common multiplier `M`.
    Multiplicative,
    /// One seat at a time to the largest deficit.
    Sequential,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Divisor => "divisor",
            Form::Multiplicative => "multiplicative",
            Form::Sequential => "sequential",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Seats per party, aligned with the tally's party order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allocation {
    pub method: Method,
    pub form: Form,
    pub house_size: u64,
    pub seats: Vec<u64>,
    pub tie_events: Vec<TieEvent>,
}

impl Allocation {
    pub fn total(&self) -> u64 {
        self.seats.iter().sum()
    }
}
