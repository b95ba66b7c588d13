use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// First place where two sides of an identity disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub coordinates: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(
        coordinates: impl IntoIterator<Item = (&'static str, i64)>,
        lhs: impl ToString,
        rhs: impl ToString,
    ) -> Self {
        Self {
            coordinates: coordinates
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self
            .coordinates
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "at {}: {} != {}", at.join(", "), self.lhs, self.rhs)
    }
}

/// Outcome of one identity check. A failing verdict always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Self { witness: None }
    }

    pub fn fail(witness: Witness) -> Self {
        Self {
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<Witness> {
        self.witness
    }

    /// Keeps the first failure of a sequence of checks.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.passed() {
            next()
        } else {
            self
        }
    }

    /// Passes iff `lhs == rhs`; otherwise records both values at `coordinates`.
    pub fn compare<T: PartialEq + fmt::Display>(
        coordinates: impl IntoIterator<Item = (&'static str, i64)>,
        lhs: &T,
        rhs: &T,
    ) -> Verdict {
        if lhs == rhs {
            Verdict::pass()
        } else {
            Verdict::fail(Witness::new(coordinates, lhs, rhs))
        }
    }
}

impl FromIterator<Verdict> for Verdict {
    /// First failure wins.
    fn from_iter<I: IntoIterator<Item = Verdict>>(iter: I) -> Self {
        iter.into_iter()
            .find(|v| !v.passed())
            .unwrap_or_else(Verdict::pass)
    }
}
