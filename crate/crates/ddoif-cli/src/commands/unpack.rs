use std::fs;
use std::path::Path;

use ddoif::decode_file;

use super::{read_bytes, EXIT_MALFORMED, EXIT_OK, EXIT_USAGE};

pub fn run(input: &Path, output: &Path) -> i32 {
    let bytes = match read_bytes(input) {
        Ok(bytes) => bytes,
        Err(code) => return code,
    };
    let file = match decode_file(&bytes) {
        Ok(file) => file,
        Err(err) => {
            eprintln!("ddoif: {}: {err}", input.display());
            return EXIT_MALFORMED;
        }
    };

    if let Err(err) = fs::create_dir_all(output) {
        eprintln!("ddoif: cannot create {}: {err}", output.display());
        return EXIT_USAGE;
    }
    // The descriptor text goes out verbatim — no reformatting, so unpack
    // never alters what pack (or any other writer) stored.
    let descriptor_path = output.join("descriptor.json");
    if let Err(err) = fs::write(&descriptor_path, file.descriptor_text()) {
        eprintln!("ddoif: cannot write {}: {err}", descriptor_path.display());
        return EXIT_USAGE;
    }
    for (index, chunk) in file.media.iter().enumerate() {
        let name = format!("media-{index}.{}", chunk.format().name().to_ascii_lowercase());
        let path = output.join(&name);
        if let Err(err) = fs::write(&path, chunk.buffer()) {
            eprintln!("ddoif: cannot write {}: {err}", path.display());
            return EXIT_USAGE;
        }
    }
    println!(
        "unpacked descriptor.json and {} media file(s) into {}",
        file.media.len(),
        output.display()
    );
    EXIT_OK
}
