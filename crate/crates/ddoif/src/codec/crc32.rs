//! CRC-32/ISO-HDLC, the variant guarding every media buffer.
//!
//! Parameters: reflected polynomial 0xEDB88320, initial value all-ones,
//! input and output reflected, final complement. Check value:
//! `compute_crc32(b"123456789") == 0xCBF43926`. The checksum is stored in
//! the file in network byte order (big-endian), like every other multi-byte
//! integer in the container.

/// Reflected generator polynomial.
const POLY: u32 = 0xEDB8_8320;

/// Byte-indexed remainder table, built at compile time.
const TABLE: [u32; 256] = build_table();

const fn build_table() -> [u32; 256] {
    let mut table = [0u32; 256];
    let mut i = 0;
    while i < 256 {
        let mut crc = i as u32;
        let mut bit = 0;
        while bit < 8 {
            crc = if crc & 1 != 0 { (crc >> 1) ^ POLY } else { crc >> 1 };
            bit += 1;
        }
        table[i] = crc;
        i += 1;
    }
    table
}

/// CRC-32 of a buffer. Empty input yields 0.
pub fn compute_crc32(buffer: &[u8]) -> u32 {
    let mut crc = !0u32;
    for &byte in buffer {
        crc = (crc >> 8) ^ TABLE[((crc ^ byte as u32) & 0xFF) as usize];
    }
    !crc
}
