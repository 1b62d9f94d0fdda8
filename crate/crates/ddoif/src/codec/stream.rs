//! Streaming, chunk-at-a-time access to a `.ddof` container.
//!
//! [`iterate_chunks`] validates the 26-byte prelude eagerly, then yields
//! the textual chunk followed by each media chunk in file order. Only one
//! chunk is resident at a time, so peak memory tracks the largest single
//! chunk rather than the whole file. Every media chunk is CRC-checked
//! before it is yielded.

use std::io::{ErrorKind, Read};

use super::{
    compute_crc32, CodecError, FileHeader, FormatTag, MediaChunk, TextualChunk, HEADER_LEN,
    RESERVED_LEN,
};

/// Buffers up to this size are allocated exactly from the length field;
/// larger ones grow incrementally so a lying length field on a short
/// stream cannot force a giant allocation.
const PREALLOC_CAP: usize = 1 << 24;

/// One chunk of the file body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chunk {
    Textual(TextualChunk),
    Media(MediaChunk),
}

/// A yielded chunk with the absolute byte offset of its first byte.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkEntry {
    pub offset: u64,
    pub chunk: Chunk,
}

enum State {
    Textual,
    Media,
    Done,
}

/// Lazy chunk iterator over any byte stream.
///
/// The reader owns the stream for its lifetime; iterating twice requires
/// two independent streams. After yielding an error the iterator is fused
/// and returns `None` forever.
pub struct ChunkReader<R> {
    inner: R,
    offset: u64,
    header: FileHeader,
    state: State,
    media_index: usize,
}

/// Open a chunk iterator on a stream positioned at byte 0 of a `.ddof`
/// file. The prelude (signature + reserved region) is read and validated
/// here; chunk errors surface lazily from the iterator.
pub fn iterate_chunks<R: Read>(mut stream: R) -> Result<ChunkReader<R>, CodecError> {
    let mut signature = [0u8; 10];
    read_field(&mut stream, &mut signature, || "signature".to_owned())?;
    let mut reserved = [0u8; RESERVED_LEN];
    read_field(&mut stream, &mut reserved, || "reserved region".to_owned())?;
    let header = FileHeader::from_raw(signature, reserved)?;
    Ok(ChunkReader {
        inner: stream,
        offset: HEADER_LEN as u64,
        header,
        state: State::Textual,
        media_index: 0,
    })
}

impl<R> ChunkReader<R> {
    /// The validated prelude, reserved bytes verbatim.
    pub fn header(&self) -> &FileHeader {
        &self.header
    }

    /// Absolute offset of the next unread byte.
    pub fn position(&self) -> u64 {
        self.offset
    }
}

impl<R: Read> ChunkReader<R> {
    fn next_textual(&mut self) -> Result<ChunkEntry, CodecError> {
        let start = self.offset;
        let mut len_bytes = [0u8; 4];
        self.read(&mut len_bytes, || "descriptor length".to_owned())?;
        let n = u32::from_be_bytes(len_bytes) as usize;
        let payload = self.read_buffer(n, || "descriptor payload".to_owned())?;
        let text = String::from_utf8(payload).map_err(|e| CodecError::TextEncoding {
            detail: e.utf8_error().to_string(),
        })?;
        Ok(ChunkEntry {
            offset: start,
            chunk: Chunk::Textual(TextualChunk { text }),
        })
    }

    fn next_media(&mut self) -> Result<Option<ChunkEntry>, CodecError> {
        let start = self.offset;
        let index = self.media_index;
        let mut tag_bytes = [0u8; 8];
        let got = read_full(&mut self.inner, &mut tag_bytes)?;
        self.offset += got as u64;
        match got {
            0 => return Ok(None), // clean end of file
            8 => {}
            partial => {
                return Err(CodecError::TrailingGarbage {
                    offset: start,
                    len: partial,
                })
            }
        }
        let format = FormatTag::from_bytes(tag_bytes)?;
        let mut len_bytes = [0u8; 4];
        self.read(&mut len_bytes, || format!("media length (index {index})"))?;
        let m = u32::from_be_bytes(len_bytes) as usize;
        let buffer = self.read_buffer(m, || format!("media buffer (index {index})"))?;
        let mut crc_bytes = [0u8; 4];
        self.read(&mut crc_bytes, || format!("media CRC (index {index})"))?;
        let stored = u32::from_be_bytes(crc_bytes);
        let computed = compute_crc32(&buffer);
        if stored != computed {
            return Err(CodecError::CrcMismatch {
                media_index: index,
                stored,
                computed,
            });
        }
        self.media_index += 1;
        // The CRC just verified equals the one the constructor recomputes.
        let chunk = MediaChunk::with_tag(format, buffer)?;
        Ok(Some(ChunkEntry {
            offset: start,
            chunk: Chunk::Media(chunk),
        }))
    }

    fn read(
        &mut self,
        buf: &mut [u8],
        field: impl FnOnce() -> String,
    ) -> Result<(), CodecError> {
        let got = read_field(&mut self.inner, buf, field);
        if let Ok(()) = got {
            self.offset += buf.len() as u64;
        } else if let Err(CodecError::Truncated { available, .. }) = &got {
            self.offset += *available as u64;
        }
        got
    }

    fn read_buffer(
        &mut self,
        len: usize,
        field: impl FnOnce() -> String,
    ) -> Result<Vec<u8>, CodecError> {
        let mut buffer;
        let got;
        if len <= PREALLOC_CAP {
            buffer = vec![0u8; len];
            got = read_full(&mut self.inner, &mut buffer)?;
            buffer.truncate(got);
        } else {
            buffer = Vec::new();
            (&mut self.inner).take(len as u64).read_to_end(&mut buffer)?;
            got = buffer.len();
        }
        self.offset += got as u64;
        if got < len {
            return Err(CodecError::truncated(field(), len, got));
        }
        Ok(buffer)
    }
}

impl<R: Read> Iterator for ChunkReader<R> {
    type Item = Result<ChunkEntry, CodecError>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.state {
            State::Textual => {
                self.state = State::Media;
                match self.next_textual() {
                    Ok(entry) => Some(Ok(entry)),
                    Err(err) => {
                        self.state = State::Done;
                        Some(Err(err))
                    }
                }
            }
            State::Media => match self.next_media() {
                Ok(Some(entry)) => Some(Ok(entry)),
                Ok(None) => {
                    self.state = State::Done;
                    None
                }
                Err(err) => {
                    self.state = State::Done;
                    Some(Err(err))
                }
            },
            State::Done => None,
        }
    }
}

/// Fill `buf` as far as the stream allows; returns bytes read (< len only
/// at end of stream).
fn read_full<R: Read>(stream: &mut R, buf: &mut [u8]) -> Result<usize, CodecError> {
    let mut filled = 0;
    while filled < buf.len() {
        match stream.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == ErrorKind::Interrupted => continue,
            Err(e) => return Err(CodecError::Io(e)),
        }
    }
    Ok(filled)
}

/// Fill `buf` exactly or fail with a [`CodecError::Truncated`] naming the
/// field.
fn read_field<R: Read>(
    stream: &mut R,
    buf: &mut [u8],
    field: impl FnOnce() -> String,
) -> Result<(), CodecError> {
    let got = read_full(stream, buf)?;
    if got < buf.len() {
        return Err(CodecError::truncated(field(), buf.len(), got));
    }
    Ok(())
}
