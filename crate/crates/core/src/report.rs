//! Named identity failures shared by all validators.

use std::fmt;

use serde::Serialize;

/// One violated identity together with the basis tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: String,
    pub witness: Vec<String>,
    pub detail: String,
}

impl Violation {
    pub fn new(identity: impl Into<String>, witness: Vec<String>, detail: impl Into<String>) -> Self {
        Violation { identity: identity.into(), witness, detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({})", self.identity, self.witness.join(", "))?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}
