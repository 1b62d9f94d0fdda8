//! One module per subcommand; each `run` returns the process exit code.

use std::fs;
use std::path::Path;

use ddoif::{parse_dictionary, Dictionary};

pub mod dict;
pub mod inspect;
pub mod pack;
pub mod unpack;
pub mod validate;

pub const EXIT_OK: i32 = 0;
/// Findings with Error severity (verification, validation, or lint).
pub const EXIT_FINDINGS: i32 = 1;
/// Input that fails to parse or decode.
pub const EXIT_MALFORMED: i32 = 2;
/// Unreadable/unwritable paths or bad invocation.
pub const EXIT_USAGE: i32 = 3;

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, i32> {
    fs::read(path).map_err(|err| {
        eprintln!("ddoif: cannot read {}: {err}", path.display());
        EXIT_USAGE
    })
}

pub fn read_text(path: &Path) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|err| {
        eprintln!("ddoif: cannot read {}: {err}", path.display());
        EXIT_USAGE
    })
}

/// Load and parse a dictionary file, auto-detecting its format from the
/// content (not the extension, which may lie).
pub fn load_dictionary(path: &Path) -> Result<Dictionary, i32> {
    let text = read_text(path)?;
    parse_dictionary(&text, None).map_err(|err| {
        eprintln!("ddoif: {}: {err}", path.display());
        EXIT_MALFORMED
    })
}
