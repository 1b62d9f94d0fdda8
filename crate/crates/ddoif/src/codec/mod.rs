//! Byte-exact encoder/decoder for `.ddof` container files.
//!
//! Layout, from byte 0:
//!
//! | bytes    | content                                             |
//! |----------|-----------------------------------------------------|
//! | 0–9      | signature `89 44 44 4F 49 46 0D 0A 1A 0A`           |
//! | 10–25    | reserved (written as zeros)                         |
//! | 26–29    | big-endian descriptor byte count N                  |
//! | 30–…     | N bytes of UTF-8 descriptor text                    |
//! | then per media chunk: 8-byte zero-padded ASCII format tag, big-endian
//! | byte count M, M payload bytes, big-endian CRC-32 of the payload.
//!
//! Every multi-byte integer is network byte order. End of input terminates
//! the chunk sequence; there is no chunk-count field. Total size is
//! therefore exactly `30 + N + Σ (16 + M_i)`.
//!
//! The signature mirrors the PNG design: 0x89 trips 7-bit channels, "DDOIF"
//! names the format for anyone opening the file in a text editor, CRLF and
//! the final LF catch the two directions of line-ending conversion, and
//! 0x1A stops accidental console listings under DOS-style shells.

mod crc32;
mod error;
mod stream;
mod verify;

pub use crc32::compute_crc32;
pub use error::{classify_signature, CodecError, SignatureMangling};
pub use stream::{iterate_chunks, Chunk, ChunkEntry, ChunkReader};
pub use verify::{verify_file, Finding, Location, VerificationReport, VerifyCode};

use crate::report::Severity;

/// The 10-byte file signature: 0x89, "DDOIF", CR, LF, 0x1A, LF.
pub const SIGNATURE: [u8; 10] = [0x89, 0x44, 0x44, 0x4F, 0x49, 0x46, 0x0D, 0x0A, 0x1A, 0x0A];

/// Bytes reserved after the signature for future revisions.
pub const RESERVED_LEN: usize = 16;

/// Length of signature plus reserved region; the first chunk starts here.
pub const HEADER_LEN: usize = SIGNATURE.len() + RESERVED_LEN;

/// Space a media chunk occupies beyond its buffer: tag (8) + length (4) +
/// CRC (4).
pub const MEDIA_OVERHEAD: usize = 16;

/// The fixed-size file prelude: signature and reserved region.
///
/// The writer always emits the reserved region as zeros; the reader records
/// whatever it observed, and nonzero reserved bytes are a warning (a newer
/// writer may be using them), never an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FileHeader {
    pub signature: [u8; 10],
    pub reserved: [u8; RESERVED_LEN],
}

impl FileHeader {
    /// The header every newly written file carries.
    pub fn canonical() -> Self {
        FileHeader {
            signature: SIGNATURE,
            reserved: [0; RESERVED_LEN],
        }
    }

    pub fn reserved_is_zero(&self) -> bool {
        self.reserved.iter().all(|&b| b == 0)
    }

    /// Validate the signature and build a header from raw prelude bytes.
    pub(crate) fn from_raw(
        signature: [u8; 10],
        reserved: [u8; RESERVED_LEN],
    ) -> Result<Self, CodecError> {
        if let Some(mangling) = classify_signature(&signature) {
            return Err(CodecError::MagicMismatch { mangling });
        }
        Ok(FileHeader { signature, reserved })
    }
}

impl Default for FileHeader {
    fn default() -> Self {
        FileHeader::canonical()
    }
}

/// The mandatory first chunk: the item descriptor as UTF-8 text.
///
/// An empty string means "no descriptor" and encodes as a zero length
/// field; the field itself is always present so media offsets stay
/// computable from the header alone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TextualChunk {
    pub text: String,
}

impl TextualChunk {
    pub fn new(text: impl Into<String>) -> Self {
        TextualChunk { text: text.into() }
    }

    /// Payload size in bytes (the value of the length field).
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }
}

/// An 8-byte media format tag: 1–8 printable ASCII characters, right-padded
/// with zero bytes.
///
/// Canonical tags are uppercase ("JPEG", "PNG", "STL"), but the on-disk
/// bytes are preserved verbatim so decode∘encode is the identity; use
/// [`FormatTag::matches`] for the case-insensitive comparison readers are
/// expected to perform. "JPG" and "JPEG" are distinct tags — no alias table
/// exists.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormatTag {
    raw: [u8; 8],
}

impl FormatTag {
    /// Build a tag from its textual name.
    pub fn new(name: &str) -> Result<Self, CodecError> {
        let bytes = name.as_bytes();
        if bytes.is_empty() || bytes.len() > 8 {
            return Err(CodecError::InvalidFormatName {
                name: name.to_owned(),
                detail: format!("tag must be 1-8 characters, got {}", bytes.len()),
            });
        }
        if let Some(&bad) = bytes.iter().find(|b| !(0x20..=0x7E).contains(*b)) {
            return Err(CodecError::InvalidFormatName {
                name: name.to_owned(),
                detail: format!("byte {bad:#04X} is not printable ASCII"),
            });
        }
        let mut raw = [0u8; 8];
        raw[..bytes.len()].copy_from_slice(bytes);
        Ok(FormatTag { raw })
    }

    /// Validate and adopt the raw 8 bytes of a tag field.
    pub fn from_bytes(raw: [u8; 8]) -> Result<Self, CodecError> {
        let lossy = || String::from_utf8_lossy(&raw).into_owned();
        let prefix_len = raw.iter().position(|&b| b == 0).unwrap_or(8);
        if prefix_len == 0 {
            return Err(CodecError::InvalidFormatName {
                name: lossy(),
                detail: "tag is empty (leading zero byte)".to_owned(),
            });
        }
        if let Some(&bad) = raw[..prefix_len].iter().find(|b| !(0x20..=0x7E).contains(*b)) {
            return Err(CodecError::InvalidFormatName {
                name: lossy(),
                detail: format!("byte {bad:#04X} is not printable ASCII"),
            });
        }
        if raw[prefix_len..].iter().any(|&b| b != 0) {
            return Err(CodecError::InvalidFormatName {
                name: lossy(),
                detail: "nonzero byte inside the zero padding".to_owned(),
            });
        }
        Ok(FormatTag { raw })
    }

    /// The raw 8-byte field as written to the file.
    pub fn as_bytes(&self) -> &[u8; 8] {
        &self.raw
    }

    /// The tag text without padding.
    pub fn name(&self) -> &str {
        let prefix_len = self.raw.iter().position(|&b| b == 0).unwrap_or(8);
        // Validated printable ASCII at construction.
        std::str::from_utf8(&self.raw[..prefix_len]).expect("tag is ASCII")
    }

    /// Case-insensitive comparison on the non-padding prefix:
    /// `"jpg"` matches `"JPG"`, but `"JPG"` never matches `"JPEG"`.
    pub fn matches(&self, name: &str) -> bool {
        self.name().eq_ignore_ascii_case(name)
    }
}

impl std::fmt::Display for FormatTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::fmt::Debug for FormatTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FormatTag({:?})", self.name())
    }
}

/// One media payload: format tag, opaque buffer, and its CRC-32.
///
/// The checksum is fixed at construction from the buffer, so a value in
/// hand always satisfies `crc == compute_crc32(buffer)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MediaChunk {
    format: FormatTag,
    buffer: Vec<u8>,
    crc: u32,
}

impl MediaChunk {
    /// Build a chunk from a tag name and payload bytes.
    pub fn new(tag: &str, buffer: Vec<u8>) -> Result<Self, CodecError> {
        Self::with_tag(FormatTag::new(tag)?, buffer)
    }

    /// Build a chunk from an already validated tag.
    pub fn with_tag(format: FormatTag, buffer: Vec<u8>) -> Result<Self, CodecError> {
        if buffer.len() > u32::MAX as usize {
            return Err(CodecError::SizeOverflow {
                what: format!("media buffer ({format})"),
                len: buffer.len(),
            });
        }
        let crc = compute_crc32(&buffer);
        Ok(MediaChunk { format, buffer, crc })
    }

    pub fn format(&self) -> &FormatTag {
        &self.format
    }

    pub fn buffer(&self) -> &[u8] {
        &self.buffer
    }

    pub fn into_buffer(self) -> Vec<u8> {
        self.buffer
    }

    /// Buffer size in bytes (the value of the length field).
    pub fn len(&self) -> usize {
        self.buffer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffer.is_empty()
    }

    /// CRC-32 of the buffer — and only the buffer, never the tag or length.
    pub fn crc(&self) -> u32 {
        self.crc
    }
}

/// A complete in-memory `.ddof` file: header, descriptor text, media.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdoifFile {
    pub header: FileHeader,
    pub descriptor: TextualChunk,
    pub media: Vec<MediaChunk>,
}

impl DdoifFile {
    /// A new file with the canonical header, the given descriptor text, and
    /// no media.
    pub fn new(descriptor_text: impl Into<String>) -> Self {
        DdoifFile {
            header: FileHeader::canonical(),
            descriptor: TextualChunk::new(descriptor_text),
            media: Vec::new(),
        }
    }

    /// An empty file: canonical header, zero-length descriptor, no media.
    /// Encodes to exactly 30 bytes.
    pub fn empty() -> Self {
        DdoifFile::new("")
    }

    /// Functional append: returns the file with `chunk` added last.
    pub fn append_media(mut self, chunk: MediaChunk) -> Self {
        self.media.push(chunk);
        self
    }

    pub fn descriptor_text(&self) -> &str {
        &self.descriptor.text
    }

    /// Exact size of the encoded file: `30 + N + Σ (16 + M_i)`.
    pub fn encoded_len(&self) -> usize {
        HEADER_LEN
            + 4
            + self.descriptor.len()
            + self
                .media
                .iter()
                .map(|m| MEDIA_OVERHEAD + m.len())
                .sum::<usize>()
    }
}

/// Serialize a file to bytes.
///
/// The reserved region is always written as zeros and every CRC is
/// recomputed from its buffer; nothing stale can leak into the output.
/// Deterministic: equal inputs yield bit-identical outputs.
pub fn encode_file(file: &DdoifFile) -> Result<Vec<u8>, CodecError> {
    let n = file.descriptor.len();
    if n > u32::MAX as usize {
        return Err(CodecError::SizeOverflow {
            what: "descriptor payload".to_owned(),
            len: n,
        });
    }
    let mut out = Vec::with_capacity(file.encoded_len());
    out.extend_from_slice(&SIGNATURE);
    out.extend_from_slice(&[0u8; RESERVED_LEN]);
    out.extend_from_slice(&(n as u32).to_be_bytes());
    out.extend_from_slice(file.descriptor.text.as_bytes());
    for chunk in &file.media {
        let m = chunk.len();
        if m > u32::MAX as usize {
            return Err(CodecError::SizeOverflow {
                what: format!("media buffer ({})", chunk.format()),
                len: m,
            });
        }
        out.extend_from_slice(chunk.format().as_bytes());
        out.extend_from_slice(&(m as u32).to_be_bytes());
        out.extend_from_slice(chunk.buffer());
        out.extend_from_slice(&compute_crc32(chunk.buffer()).to_be_bytes());
    }
    Ok(out)
}

/// Parse a complete in-memory file.
///
/// Strict inverse of [`encode_file`]: the input must end exactly at a chunk
/// boundary, every CRC must match, and the descriptor must be UTF-8. The
/// first failure aborts (use [`verify_file`] for a full damage report).
pub fn decode_file(bytes: &[u8]) -> Result<DdoifFile, CodecError> {
    let mut reader = iterate_chunks(bytes)?;
    let header = *reader.header();
    let mut descriptor = TextualChunk::default();
    let mut media = Vec::new();
    for entry in reader.by_ref() {
        match entry?.chunk {
            Chunk::Textual(t) => descriptor = t,
            Chunk::Media(m) => media.push(m),
        }
    }
    Ok(DdoifFile {
        header,
        descriptor,
        media,
    })
}

/// Validate and split off the 26-byte prelude.
///
/// Returns the header (reserved bytes verbatim) plus any warning findings —
/// currently just the nonzero-reserved warning, which is informational
/// because future revisions may legitimately use those bytes.
pub fn decode_header(bytes: &[u8]) -> Result<(FileHeader, Vec<Finding>), CodecError> {
    if bytes.len() < SIGNATURE.len() {
        return Err(CodecError::truncated("signature", SIGNATURE.len(), bytes.len()));
    }
    if bytes.len() < HEADER_LEN {
        return Err(CodecError::truncated(
            "reserved region",
            RESERVED_LEN,
            bytes.len() - SIGNATURE.len(),
        ));
    }
    let mut signature = [0u8; 10];
    signature.copy_from_slice(&bytes[..10]);
    let mut reserved = [0u8; RESERVED_LEN];
    reserved.copy_from_slice(&bytes[10..HEADER_LEN]);
    let header = FileHeader::from_raw(signature, reserved)?;
    let mut warnings = Vec::new();
    if !header.reserved_is_zero() {
        warnings.push(Finding {
            severity: Severity::Warning,
            location: Location::Reserved,
            code: VerifyCode::NonzeroReserved,
            message: "reserved bytes are not all zero (written by a newer revision?)".to_owned(),
        });
    }
    Ok((header, warnings))
}
