//! Codec error types, including signature-mangling classification.

use std::fmt;

use thiserror::Error;

use super::SIGNATURE;

/// How a wrong signature appears to have been damaged.
///
/// The 10-byte signature is designed so that the three classic transport
/// corruptions each leave a recognizable fingerprint: the leading 0x89
/// catches 7-bit channels, the embedded CRLF catches DOS→Unix conversion,
/// and the trailing LF catches Unix→DOS conversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureMangling {
    /// The CRLF pair at bytes 6–7 collapsed into a lone LF.
    CrlfToLf,
    /// A lone LF was expanded into CRLF (both naive rewrites of every LF
    /// and rewrites that leave existing CRLF pairs alone are recognized).
    LfToCrlf,
    /// Bit 7 was cleared, turning the leading 0x89 into 0x09.
    HighBitStripped,
    /// None of the known corruption fingerprints; probably not a DDOIF
    /// file at all.
    Unknown,
}

impl fmt::Display for SignatureMangling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignatureMangling::CrlfToLf => {
                "DOS-to-Unix line-ending conversion (CRLF rewritten to LF)"
            }
            SignatureMangling::LfToCrlf => {
                "Unix-to-DOS line-ending conversion (LF rewritten to CRLF)"
            }
            SignatureMangling::HighBitStripped => {
                "high-bit stripping, as by a 7-bit transmission channel"
            }
            SignatureMangling::Unknown => "no known corruption pattern; not a DDOIF file",
        })
    }
}

/// Classify the first ten bytes of an input that failed the signature
/// check. Returns `None` when the signature is in fact intact.
pub fn classify_signature(observed: &[u8; 10]) -> Option<SignatureMangling> {
    if *observed == SIGNATURE {
        return None;
    }
    // 0x89 is the only signature byte with the high bit set, so a stripped
    // stream differs in exactly the first byte.
    if observed[0] == 0x09 && observed[1..] == SIGNATURE[1..] {
        return Some(SignatureMangling::HighBitStripped);
    }
    // CRLF at 6-7 became LF: everything after slides forward one byte.
    if observed[..6] == SIGNATURE[..6]
        && observed[6] == 0x0A
        && observed[7] == 0x1A
        && observed[8] == 0x0A
    {
        return Some(SignatureMangling::CrlfToLf);
    }
    // Naive LF→CRLF: the LF at byte 7 gains a CR, pushing the rest back.
    if observed[..7] == SIGNATURE[..7]
        && observed[7] == 0x0D
        && observed[8] == 0x0A
        && observed[9] == 0x1A
    {
        return Some(SignatureMangling::LfToCrlf);
    }
    // CRLF-aware LF→CRLF: bytes 6-7 survive as a pair, but the final LF at
    // byte 9 gains a CR.
    if observed[..9] == SIGNATURE[..9] && observed[9] == 0x0D {
        return Some(SignatureMangling::LfToCrlf);
    }
    Some(SignatureMangling::Unknown)
}

/// Everything that can go wrong encoding or decoding a `.ddof` container.
#[derive(Debug, Error)]
pub enum CodecError {
    /// The 10-byte signature is wrong; the mangling says how.
    #[error("bad signature: {mangling}")]
    MagicMismatch { mangling: SignatureMangling },

    /// Input ended in the middle of the named field.
    #[error("truncated input: {field} needs {needed} bytes but only {available} remain")]
    Truncated {
        field: String,
        needed: usize,
        available: usize,
    },

    /// A media buffer's stored checksum disagrees with the recomputed one.
    #[error(
        "CRC mismatch at media index {media_index}: stored {stored:#010X}, computed {computed:#010X}"
    )]
    CrcMismatch {
        media_index: usize,
        stored: u32,
        computed: u32,
    },

    /// The textual chunk payload is not valid UTF-8.
    #[error("descriptor payload is not valid UTF-8: {detail}")]
    TextEncoding { detail: String },

    /// Bytes remain after the last complete chunk, but too few to start
    /// another (a media chunk header needs at least 8).
    #[error("{len} stray byte(s) at offset {offset} after the last complete chunk")]
    TrailingGarbage { offset: u64, len: usize },

    /// A length does not fit the 32-bit field that must carry it.
    #[error("{what} is {len} bytes, which exceeds the 32-bit length field")]
    SizeOverflow { what: String, len: usize },

    /// A media format tag violates the 8-byte zero-padded ASCII form.
    #[error("invalid media format name {name:?}: {detail}")]
    InvalidFormatName { name: String, detail: String },

    /// Underlying stream failure while iterating chunks.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CodecError {
    pub(crate) fn truncated(field: impl Into<String>, needed: usize, available: usize) -> Self {
        CodecError::Truncated {
            field: field.into(),
            needed,
            available,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mangle_crlf_to_lf(bytes: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(bytes.len());
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == 0x0D && bytes.get(i + 1) == Some(&0x0A) {
                out.push(0x0A);
                i += 2;
            } else {
                out.push(bytes[i]);
                i += 1;
            }
        }
        out
    }

    fn mangle_lf_to_crlf_naive(bytes: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(bytes.len() + 4);
        for &b in bytes {
            if b == 0x0A {
                out.push(0x0D);
            }
            out.push(b);
        }
        out
    }

    fn mangle_lf_to_crlf_aware(bytes: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(bytes.len() + 4);
        let mut prev = None;
        for &b in bytes {
            if b == 0x0A && prev != Some(0x0D) {
                out.push(0x0D);
            }
            out.push(b);
            prev = Some(b);
        }
        out
    }

    fn first_ten(bytes: &[u8]) -> [u8; 10] {
        let mut out = [0u8; 10];
        out.copy_from_slice(&bytes[..10]);
        out
    }

    #[test]
    fn intact_signature_classifies_as_none() {
        assert_eq!(classify_signature(&SIGNATURE), None);
    }

    #[test]
    fn crlf_to_lf_recognized() {
        let mangled = mangle_crlf_to_lf(&SIGNATURE);
        assert_eq!(mangled.len(), 9);
        let mut padded = mangled.clone();
        padded.push(0x00); // first reserved byte slides into view
        assert_eq!(
            classify_signature(&first_ten(&padded)),
            Some(SignatureMangling::CrlfToLf)
        );
    }

    #[test]
    fn lf_to_crlf_naive_recognized() {
        let mangled = mangle_lf_to_crlf_naive(&SIGNATURE);
        assert_eq!(mangled.len(), 12);
        assert_eq!(
            classify_signature(&first_ten(&mangled)),
            Some(SignatureMangling::LfToCrlf)
        );
    }

    #[test]
    fn lf_to_crlf_crlf_aware_recognized() {
        let mangled = mangle_lf_to_crlf_aware(&SIGNATURE);
        assert_eq!(mangled.len(), 11); // only the final lone LF gains a CR
        assert_eq!(
            classify_signature(&first_ten(&mangled)),
            Some(SignatureMangling::LfToCrlf)
        );
    }

    #[test]
    fn high_bit_stripping_recognized() {
        let mut stripped = SIGNATURE;
        for b in &mut stripped {
            *b &= 0x7F;
        }
        assert_eq!(stripped[0], 0x09);
        assert_eq!(
            classify_signature(&stripped),
            Some(SignatureMangling::HighBitStripped)
        );
    }

    #[test]
    fn arbitrary_bytes_classify_as_unknown() {
        assert_eq!(
            classify_signature(b"PK\x03\x04\x00\x00\x00\x00\x00\x00"),
            Some(SignatureMangling::Unknown)
        );
        assert_eq!(
            classify_signature(&[0xFF; 10]),
            Some(SignatureMangling::Unknown)
        );
    }

    #[test]
    fn classifications_are_mutually_exclusive() {
        // Every possible single-mangling of the true signature lands on
        // exactly its own class, never another.
        let crlf = first_ten(&{
            let mut v = mangle_crlf_to_lf(&SIGNATURE);
            v.push(0x00);
            v
        });
        let naive = first_ten(&mangle_lf_to_crlf_naive(&SIGNATURE));
        let aware = first_ten(&mangle_lf_to_crlf_aware(&SIGNATURE));
        let mut stripped = SIGNATURE;
        for b in &mut stripped {
            *b &= 0x7F;
        }
        assert_eq!(classify_signature(&crlf), Some(SignatureMangling::CrlfToLf));
        assert_eq!(classify_signature(&naive), Some(SignatureMangling::LfToCrlf));
        assert_eq!(classify_signature(&aware), Some(SignatureMangling::LfToCrlf));
        assert_eq!(
            classify_signature(&stripped),
            Some(SignatureMangling::HighBitStripped)
        );
    }
}
