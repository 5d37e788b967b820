//! Three-valued, bound-stamped outcomes shared by the checkers.

use serde::{Deserialize, Serialize};

/// `Pass { bound: Some(D) }` means "holds through degree D"; `bound: None`
/// marks an exact verdict. Failures carry a witness and are unconditional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass { bound: Option<u32> },
    Fail { witness: String },
    Unknown { reason: String },
}

impl Verdict {
    pub fn exact() -> Self {
        Verdict::Pass { bound: None }
    }

    pub fn through(bound: u32) -> Self {
        Verdict::Pass { bound: Some(bound) }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Verdict::Fail {
            witness: witness.into(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict::Unknown {
            reason: reason.into(),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    /// `Some(true)` for pass, `Some(false)` for fail.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Pass { .. } => Some(true),
            Verdict::Fail { .. } => Some(false),
            Verdict::Unknown { .. } => None,
        }
    }

    /// Conjunction: the first failure wins, then the first unknown, then the
    /// smallest bound.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut unknown = None;
        let mut bound: Option<Option<u32>> = None;
        for v in verdicts {
            match v {
                Verdict::Fail { .. } => return v,
                Verdict::Unknown { .. } => {
                    unknown.get_or_insert(v);
                }
                Verdict::Pass { bound: b } => {
                    bound = Some(match (bound.flatten(), b) {
                        (Some(x), Some(y)) => Some(x.min(y)),
                        (x, y) => x.or(y),
                    });
                }
            }
        }
        unknown.unwrap_or(Verdict::Pass {
            bound: bound.flatten(),
        })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass { bound: None } => write!(f, "pass"),
            Verdict::Pass { bound: Some(d) } => write!(f, "pass (through degree {d})"),
            Verdict::Fail { witness } => write!(f, "fail: {witness}"),
            Verdict::Unknown { reason } => write!(f, "unknown: {reason}"),
        }
    }
}
