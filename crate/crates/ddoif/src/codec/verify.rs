//! Non-throwing integrity audit of a `.ddof` byte sequence.
//!
//! Where [`decode_file`](super::decode_file) aborts at the first problem,
//! [`verify_file`] records every problem it can reach and keeps scanning:
//! framing damage (bad signature, truncation) ends the scan because the
//! remaining offsets are meaningless, but content damage (a CRC or UTF-8
//! failure) does not — the length fields still frame the following chunks,
//! so the scan resumes at the next boundary.

use std::fmt;

use crate::report::Severity;

use super::{classify_signature, compute_crc32, CodecError, FormatTag, HEADER_LEN, RESERVED_LEN};

/// Which region of the file a finding refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    /// The 10-byte signature.
    Header,
    /// The 16 reserved bytes.
    Reserved,
    /// The textual chunk.
    Text,
    /// Media chunk by zero-based index.
    Media(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Header => f.write_str("header"),
            Location::Reserved => f.write_str("reserved"),
            Location::Text => f.write_str("text"),
            Location::Media(i) => write!(f, "media[{i}]"),
        }
    }
}

/// Machine-readable classification of a finding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyCode {
    MagicMismatch,
    Truncated,
    CrcMismatch,
    TextEncoding,
    TrailingGarbage,
    InvalidFormatName,
    NonzeroReserved,
    ZeroLengthMedia,
}

impl fmt::Display for VerifyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyCode::MagicMismatch => "magic-mismatch",
            VerifyCode::Truncated => "truncated",
            VerifyCode::CrcMismatch => "crc-mismatch",
            VerifyCode::TextEncoding => "text-encoding",
            VerifyCode::TrailingGarbage => "trailing-garbage",
            VerifyCode::InvalidFormatName => "invalid-format-name",
            VerifyCode::NonzeroReserved => "nonzero-reserved",
            VerifyCode::ZeroLengthMedia => "zero-length-media",
        })
    }
}

/// One observation from the audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub location: Location,
    pub code: VerifyCode,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.severity, self.location, self.code, self.message
        )
    }
}

/// The audit result: all findings, in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub findings: Vec<Finding>,
}

impl VerificationReport {
    /// True iff no Error-severity findings (warnings do not fail a file).
    pub fn ok(&self) -> bool {
        self.error_count() == 0
    }

    pub fn error_count(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
            .count()
    }

    pub fn warning_count(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
            .count()
    }

    fn error(&mut self, location: Location, err: &CodecError) {
        self.findings.push(Finding {
            severity: Severity::Error,
            location,
            code: code_for(err),
            message: err.to_string(),
        });
    }

    fn warning(&mut self, location: Location, code: VerifyCode, message: impl Into<String>) {
        self.findings.push(Finding {
            severity: Severity::Warning,
            location,
            code,
            message: message.into(),
        });
    }
}

fn code_for(err: &CodecError) -> VerifyCode {
    match err {
        CodecError::MagicMismatch { .. } => VerifyCode::MagicMismatch,
        CodecError::Truncated { .. } => VerifyCode::Truncated,
        CodecError::CrcMismatch { .. } => VerifyCode::CrcMismatch,
        CodecError::TextEncoding { .. } => VerifyCode::TextEncoding,
        CodecError::TrailingGarbage { .. } => VerifyCode::TrailingGarbage,
        CodecError::InvalidFormatName { .. } => VerifyCode::InvalidFormatName,
        // SizeOverflow and Io cannot arise while scanning an in-memory
        // slice; fold them into Truncated rather than panic.
        CodecError::SizeOverflow { .. } | CodecError::Io(_) => VerifyCode::Truncated,
    }
}

/// Audit a byte sequence. Never fails; every problem becomes a finding.
pub fn verify_file(bytes: &[u8]) -> VerificationReport {
    let mut report = VerificationReport::default();

    if bytes.len() < 10 {
        report.error(
            Location::Header,
            &CodecError::truncated("signature", 10, bytes.len()),
        );
        return report;
    }
    let mut signature = [0u8; 10];
    signature.copy_from_slice(&bytes[..10]);
    if let Some(mangling) = classify_signature(&signature) {
        report.error(Location::Header, &CodecError::MagicMismatch { mangling });
        // A damaged signature shifts or garbles everything after it; no
        // further offset can be trusted.
        return report;
    }
    if bytes.len() < HEADER_LEN {
        report.error(
            Location::Reserved,
            &CodecError::truncated("reserved region", RESERVED_LEN, bytes.len() - 10),
        );
        return report;
    }
    if bytes[10..HEADER_LEN].iter().any(|&b| b != 0) {
        report.warning(
            Location::Reserved,
            VerifyCode::NonzeroReserved,
            "reserved bytes are not all zero (written by a newer revision?)",
        );
    }

    let mut pos = HEADER_LEN;
    if bytes.len() - pos < 4 {
        report.error(
            Location::Text,
            &CodecError::truncated("descriptor length", 4, bytes.len() - pos),
        );
        return report;
    }
    let n = u32::from_be_bytes(bytes[pos..pos + 4].try_into().unwrap()) as usize;
    pos += 4;
    if bytes.len() - pos < n {
        report.error(
            Location::Text,
            &CodecError::truncated("descriptor payload", n, bytes.len() - pos),
        );
        return report;
    }
    if let Err(e) = std::str::from_utf8(&bytes[pos..pos + n]) {
        // Content damage only; the length field still frames what follows.
        report.error(
            Location::Text,
            &CodecError::TextEncoding { detail: e.to_string() },
        );
    }
    pos += n;

    let mut index = 0usize;
    loop {
        let remaining = bytes.len() - pos;
        if remaining == 0 {
            break;
        }
        if remaining < 8 {
            report.error(
                Location::Media(index),
                &CodecError::TrailingGarbage {
                    offset: pos as u64,
                    len: remaining,
                },
            );
            break;
        }
        let mut tag_bytes = [0u8; 8];
        tag_bytes.copy_from_slice(&bytes[pos..pos + 8]);
        if let Err(e) = FormatTag::from_bytes(tag_bytes) {
            // The tag field is fixed-width, so a bad tag does not break
            // framing; report it and keep walking the chunk.
            report.error(Location::Media(index), &e);
        }
        if remaining < 12 {
            report.error(
                Location::Media(index),
                &CodecError::truncated(format!("media length (index {index})"), 4, remaining - 8),
            );
            break;
        }
        let m = u32::from_be_bytes(bytes[pos + 8..pos + 12].try_into().unwrap()) as usize;
        if remaining < 12 + m {
            report.error(
                Location::Media(index),
                &CodecError::truncated(format!("media buffer (index {index})"), m, remaining - 12),
            );
            break;
        }
        if remaining < 16 + m {
            report.error(
                Location::Media(index),
                &CodecError::truncated(
                    format!("media CRC (index {index})"),
                    4,
                    remaining - 12 - m,
                ),
            );
            break;
        }
        let buffer = &bytes[pos + 12..pos + 12 + m];
        let stored = u32::from_be_bytes(bytes[pos + 12 + m..pos + 16 + m].try_into().unwrap());
        let computed = compute_crc32(buffer);
        if stored != computed {
            report.error(
                Location::Media(index),
                &CodecError::CrcMismatch {
                    media_index: index,
                    stored,
                    computed,
                },
            );
        }
        if m == 0 {
            report.warning(
                Location::Media(index),
                VerifyCode::ZeroLengthMedia,
                "media buffer is empty",
            );
        }
        pos += 16 + m;
        index += 1;
    }
    report
}
