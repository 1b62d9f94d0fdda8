//! Toolkit for the DDOIF (Digital Data Exchange and Organisation in Fashion)
//! interchange format.
//!
//! A `.ddof` container carries everything known about a single fashion item:
//! a textual descriptor (the item's classes and attributes) followed by any
//! number of opaque media payloads (images, 3D models, video), each guarded
//! by a CRC-32 checksum. Item classes are drawn from a hierarchical
//! dictionary of fashion vocabulary that ships in YAML, JSON, and XML.
//!
//! The crate is organised into three modules mirroring that split:
//!
//! - [`dictionary`] — the vocabulary tree: parse/serialize in three text
//!   formats, path resolution, naming-convention lint, statistics, merging,
//!   and the built-in seed dictionary.
//! - [`codec`] — the byte-exact `.ddof` container codec: signature
//!   validation, chunk framing, CRC-32 integrity, streaming chunk iteration,
//!   and a non-throwing verification scan.
//! - [`descriptor`] — the item descriptor carried in the container's textual
//!   chunk, and its validation against a dictionary.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so anything here can be shared freely across
//! threads.
//!
//! ```
//! use ddoif::{seed_dictionary, ClassPath, DdoifFile, MediaChunk};
//!
//! let dict = seed_dictionary();
//! let path = ClassPath::parse("clothing/Dress/A-line Dress").unwrap();
//! assert!(dict.resolve(&path).is_ok());
//!
//! let file = DdoifFile::new(r#"{"classes":["clothing/Skirt"],"attributes":[]}"#)
//!     .append_media(MediaChunk::new("PNG", vec![1, 2, 3]).unwrap());
//! let bytes = ddoif::encode_file(&file).unwrap();
//! assert_eq!(ddoif::decode_file(&bytes).unwrap(), file);
//! ```

pub mod codec;
pub mod descriptor;
pub mod dictionary;
pub mod report;

pub use codec::{
    compute_crc32, decode_file, decode_header, encode_file, iterate_chunks, verify_file,
    Chunk, ChunkEntry, ChunkReader, CodecError, DdoifFile, FileHeader, FormatTag, MediaChunk,
    SignatureMangling, TextualChunk, VerificationReport, HEADER_LEN, SIGNATURE,
};
pub use descriptor::{
    parse_descriptor, serialize_descriptor, validate_descriptor, DescriptorError, ItemDescriptor,
    ValidationReport,
};
pub use dictionary::{
    class_stats, lint_names, merge_dictionaries, parse_dictionary, resolve_path, seed_dictionary,
    serialize_dictionary, ClassNode, ClassPath, ClassStats, Dictionary, DictionaryError,
    LintRule, LintViolation, TextFormat,
};
pub use report::Severity;
