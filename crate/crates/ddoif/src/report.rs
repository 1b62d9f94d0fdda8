//! Severity levels shared by the file-integrity and descriptor-validation
//! reports.

use std::fmt;

/// How serious a reported finding is.
///
/// `Error` findings make a report fail; `Warning` findings are advisory and
/// never affect the overall outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => f.write_str("warning"),
            Severity::Error => f.write_str("error"),
        }
    }
}
