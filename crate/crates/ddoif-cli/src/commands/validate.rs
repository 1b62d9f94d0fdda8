use std::path::Path;

use ddoif::{
    iterate_chunks, parse_descriptor, seed_dictionary, validate_descriptor, verify_file, Chunk,
};

use super::{load_dictionary, read_bytes, EXIT_FINDINGS, EXIT_MALFORMED, EXIT_OK};

pub fn run(input: &Path, dict_path: Option<&Path>, seed: bool) -> i32 {
    let bytes = match read_bytes(input) {
        Ok(bytes) => bytes,
        Err(code) => return code,
    };
    let dictionary = if seed {
        seed_dictionary()
    } else {
        match load_dictionary(dict_path.expect("clap guarantees --dict without --seed")) {
            Ok(dictionary) => dictionary,
            Err(code) => return code,
        }
    };

    let integrity = verify_file(&bytes);
    println!(
        "integrity: {} error(s), {} warning(s)",
        integrity.error_count(),
        integrity.warning_count()
    );
    for finding in &integrity.findings {
        println!("  {finding}");
    }

    // Pull the descriptor text out through the streaming reader: the first
    // item is always the textual chunk, and a failure there means the file
    // is undecodable no matter what else verify_file salvaged.
    let text = match iterate_chunks(&bytes[..]).map(|mut chunks| chunks.next()) {
        Ok(Some(Ok(entry))) => match entry.chunk {
            Chunk::Textual(textual) => textual.text,
            Chunk::Media(_) => unreachable!("first chunk is textual"),
        },
        Ok(Some(Err(err))) | Err(err) => {
            eprintln!("ddoif: {}: {err}", input.display());
            return EXIT_MALFORMED;
        }
        Ok(None) => unreachable!("reader always yields the textual chunk first"),
    };

    if !integrity.ok() {
        // The length fields or payloads are untrustworthy; judging the
        // descriptor against a dictionary would lend false confidence.
        println!("descriptor: skipped (integrity errors)");
        return EXIT_FINDINGS;
    }

    let descriptor = match parse_descriptor(&text) {
        Ok(descriptor) => descriptor,
        Err(err) => {
            eprintln!("ddoif: {}: descriptor: {err}", input.display());
            return EXIT_MALFORMED;
        }
    };
    let report = validate_descriptor(&descriptor, &dictionary);
    println!(
        "descriptor: {} error(s), {} warning(s)",
        report.error_count(),
        report.warning_count()
    );
    for finding in &report.findings {
        println!("  {finding}");
    }
    if report.ok() {
        EXIT_OK
    } else {
        EXIT_FINDINGS
    }
}
