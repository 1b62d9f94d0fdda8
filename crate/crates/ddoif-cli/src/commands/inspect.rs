use std::path::Path;

use ddoif::{decode_header, verify_file, FormatTag};
use serde_json::json;

use super::{read_bytes, EXIT_FINDINGS, EXIT_MALFORMED, EXIT_OK};

struct MediaRow {
    index: usize,
    tag: String,
    length: u32,
    crc: u32,
    offset: usize,
}

/// Walk the media chunk headers without copying payloads. Tolerant of
/// content damage: CRC values are reported as stored, unparseable tags are
/// shown lossily. Stops at the first frame that does not fit in the file —
/// `verify_file` reports that damage separately.
fn scan(bytes: &[u8]) -> (Option<u32>, Vec<MediaRow>) {
    if bytes.len() < 30 {
        return (None, Vec::new());
    }
    let text_len = u32::from_be_bytes(bytes[26..30].try_into().unwrap());
    let mut rows = Vec::new();
    let Some(mut at) = 30usize.checked_add(text_len as usize) else {
        return (Some(text_len), rows);
    };
    let mut index = 0;
    while at.checked_add(16).is_some_and(|end| end <= bytes.len()) {
        let raw_tag: [u8; 8] = bytes[at..at + 8].try_into().unwrap();
        let tag = match FormatTag::from_bytes(raw_tag) {
            Ok(tag) => tag.name().to_string(),
            Err(_) => String::from_utf8_lossy(&raw_tag)
                .trim_end_matches('\0')
                .to_string(),
        };
        let length = u32::from_be_bytes(bytes[at + 8..at + 12].try_into().unwrap());
        let Some(crc_at) = (at + 12).checked_add(length as usize) else {
            break;
        };
        if crc_at + 4 > bytes.len() {
            break;
        }
        let crc = u32::from_be_bytes(bytes[crc_at..crc_at + 4].try_into().unwrap());
        rows.push(MediaRow {
            index,
            tag,
            length,
            crc,
            offset: at,
        });
        at = crc_at + 4;
        index += 1;
    }
    (Some(text_len), rows)
}

pub fn run(input: &Path, as_json: bool) -> i32 {
    let bytes = match read_bytes(input) {
        Ok(bytes) => bytes,
        Err(code) => return code,
    };
    // A broken signature means nothing after it can be trusted; bail out
    // rather than print a table of noise.
    let header = match decode_header(&bytes) {
        Ok((header, _)) => header,
        Err(err) => {
            eprintln!("ddoif: {}: {err}", input.display());
            return EXIT_MALFORMED;
        }
    };
    let report = verify_file(&bytes);
    let (descriptor_len, rows) = scan(&bytes);
    let descriptor_len = descriptor_len.unwrap_or(0);

    if as_json {
        let doc = json!({
            "file": input.display().to_string(),
            "size": bytes.len(),
            "signature_valid": true,
            "reserved_zero": header.reserved_is_zero(),
            "descriptor_length": descriptor_len,
            "media": rows.iter().map(|row| json!({
                "index": row.index,
                "tag": row.tag,
                "length": row.length,
                "crc": format!("{:#010X}", row.crc),
                "offset": row.offset,
            })).collect::<Vec<_>>(),
            "findings": report.findings.iter().map(|f| json!({
                "severity": f.severity.to_string(),
                "location": f.location.to_string(),
                "code": f.code.to_string(),
                "message": f.message,
            })).collect::<Vec<_>>(),
            "ok": report.ok(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("report is valid JSON"));
    } else {
        println!(
            "{}: {} bytes, descriptor {} bytes, {} media chunks",
            input.display(),
            bytes.len(),
            descriptor_len,
            rows.len()
        );
        println!("signature: valid");
        println!(
            "reserved: {}",
            if header.reserved_is_zero() {
                "all zero"
            } else {
                "nonzero bytes present"
            }
        );
        if !rows.is_empty() {
            println!("{:>5}  {:<8} {:>10}  {:<10} {:>10}", "index", "tag", "length", "crc", "offset");
            for row in &rows {
                println!(
                    "{:>5}  {:<8} {:>10}  {:#010X} {:>10}",
                    row.index, row.tag, row.length, row.crc, row.offset
                );
            }
        }
        if report.findings.is_empty() {
            println!("findings: none");
        } else {
            println!(
                "findings: {} error(s), {} warning(s)",
                report.error_count(),
                report.warning_count()
            );
            for finding in &report.findings {
                println!("  {finding}");
            }
        }
    }
    if report.ok() {
        EXIT_OK
    } else {
        EXIT_FINDINGS
    }
}
