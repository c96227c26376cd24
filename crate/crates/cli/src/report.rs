//! The JSON report every subcommand produces.

use std::collections::BTreeMap;

use padic_hyper::cyclotomic::CycloElement;
use padic_hyper::Padic;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL: &str = "padic-hyper";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Mismatch,
    PrecisionIndeterminate,
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
            Status::UsageError => 2,
            Status::PrecisionIndeterminate => 3,
        }
    }

    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Mismatch
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Padic,
    Cyclo,
    Rational,
    BooleanTable,
}

/// One p-adic number: `p^valuation · Σ digits[i] p^i + O(p^precision)`.
/// A value that is zero to its precision has no valuation and no digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicDigits {
    pub valuation: Option<i64>,
    pub digits: Vec<u32>,
    pub precision: i64,
}

impl PadicDigits {
    /// At most `n` leading digits of the unit part.
    pub fn new(x: &Padic, n: usize) -> Self {
        let mut digits = x.digits();
        digits.truncate(n);
        PadicDigits {
            valuation: x.valuation(),
            precision: match x.valuation() {
                Some(v) => v + digits.len() as i64,
                None => x.abs_precision(),
            },
            digits,
        }
    }

    pub fn to_padic(&self, p: u32) -> Padic {
        match self.valuation {
            Some(v) => Padic::from_digits(p, v, &self.digits),
            None => Padic::zero(p, self.precision),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Payload {
    pub kind: Option<Kind>,
    pub valuation: Option<i64>,
    pub digits: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    /// π-basis coordinates of a cyclotomic value.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coordinates: Vec<PadicDigits>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Value>,
}

impl Payload {
    pub fn padic(x: &Padic, n: usize) -> Self {
        Payload::from_digits(PadicDigits::new(x, n))
    }

    pub fn from_digits(d: PadicDigits) -> Self {
        Payload {
            kind: Some(Kind::Padic),
            valuation: d.valuation,
            digits: d.digits,
            precision: Some(d.precision),
            ..Payload::default()
        }
    }

    /// The leading coordinate goes in `valuation`/`digits`; all coordinates
    /// are listed.
    pub fn cyclo(x: &CycloElement, n: usize) -> Self {
        let coordinates: Vec<PadicDigits> =
            x.coeffs().iter().map(|c| PadicDigits::new(c, n)).collect();
        Payload {
            kind: Some(Kind::Cyclo),
            valuation: coordinates[0].valuation,
            digits: coordinates[0].digits.clone(),
            precision: Some(coordinates[0].precision),
            coordinates,
            ..Payload::default()
        }
    }

    pub fn table(rows: Vec<Value>) -> Self {
        Payload {
            kind: Some(Kind::BooleanTable),
            table: rows,
            ..Payload::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub truncation_indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tail_bounds: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cauchy_valuations: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilized_digits: Option<i64>,
    pub guard_digits: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cached: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn with_truncation(mut self, c: &padic_hyper::TruncationCertificate) -> Self {
        self.truncation_indices.push(c.truncation_index);
        self.tail_bounds.push(c.tail_bound);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Payload,
    pub certificate: Certificate,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.to_string(),
            params: BTreeMap::new(),
            result: Payload::default(),
            certificate: Certificate::default(),
            status: Status::Ok,
            message: None,
            elapsed_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
