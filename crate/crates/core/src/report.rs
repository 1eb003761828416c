//! Named pass/fail records shared by the verification routines.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    /// `canonical`, `search` or `direct`: how the claim was discharged.
    pub method: String,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, method: &str, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            ok,
            method: method.to_string(),
            detail: detail.into(),
        }
    }

    pub fn direct(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check::new(name, ok, "direct", detail)
    }
}

pub fn all_ok(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.ok)
}
