use std::fs;
use std::path::{Path, PathBuf};

use ddoif::{encode_file, parse_descriptor, serialize_descriptor, DdoifFile, MediaChunk, TextFormat};

use super::{read_text, EXIT_MALFORMED, EXIT_OK, EXIT_USAGE};

/// Extensions whose conventional tag is not just the uppercased extension.
const TAG_ALIASES: &[(&str, &str)] = &[
    ("jpg", "JPEG"),
    ("jpe", "JPEG"),
    ("tif", "TIFF"),
    ("mpg", "MPEG"),
    ("htm", "HTML"),
    ("yml", "YAML"),
];

/// Infer a media format tag from a file extension. Unknown here means: no
/// extension, or one that cannot be a tag (empty, longer than eight bytes,
/// or not ASCII alphanumeric).
fn tag_for(path: &Path) -> Option<String> {
    let ext = path.extension()?.to_str()?;
    if let Some((_, tag)) = TAG_ALIASES
        .iter()
        .find(|(alias, _)| ext.eq_ignore_ascii_case(alias))
    {
        return Some((*tag).to_string());
    }
    let upper = ext.to_ascii_uppercase();
    if (1..=8).contains(&upper.len()) && upper.bytes().all(|b| b.is_ascii_alphanumeric()) {
        Some(upper)
    } else {
        None
    }
}

fn parse_override(arg: &str) -> Result<(usize, String), String> {
    let Some((tag, index)) = arg.rsplit_once('@') else {
        return Err(format!("--format takes TAG@INDEX, got {arg:?}"));
    };
    if tag.is_empty() {
        return Err(format!("--format {arg:?} has an empty tag"));
    }
    let index = index
        .parse::<usize>()
        .map_err(|_| format!("--format index {index:?} is not a number"))?;
    Ok((index, tag.to_ascii_uppercase()))
}

pub fn run(descriptor: &Path, output: &Path, media: &[PathBuf], overrides: &[String]) -> i32 {
    let text = match read_text(descriptor) {
        Ok(text) => text,
        Err(code) => return code,
    };
    let parsed = match parse_descriptor(&text) {
        Ok(parsed) => parsed,
        Err(err) => {
            eprintln!("ddoif: {}: {err}", descriptor.display());
            return EXIT_MALFORMED;
        }
    };

    let mut tags: Vec<Option<String>> = media.iter().map(|path| tag_for(path)).collect();
    for arg in overrides {
        match parse_override(arg) {
            Ok((index, tag)) if index < tags.len() => tags[index] = Some(tag),
            Ok((index, _)) => {
                eprintln!(
                    "ddoif: --format index {index} out of range ({} media file(s))",
                    tags.len()
                );
                return EXIT_USAGE;
            }
            Err(message) => {
                eprintln!("ddoif: {message}");
                return EXIT_USAGE;
            }
        }
    }

    // The textual chunk always carries the canonical JSON form, whatever
    // format the descriptor file used.
    let mut file = DdoifFile::new(serialize_descriptor(&parsed, TextFormat::Json));
    for (path, tag) in media.iter().zip(&tags) {
        let Some(tag) = tag else {
            eprintln!(
                "ddoif: cannot infer a format tag for {}; pass --format TAG@INDEX",
                path.display()
            );
            return EXIT_MALFORMED;
        };
        let buffer = match fs::read(path) {
            Ok(buffer) => buffer,
            Err(err) => {
                eprintln!("ddoif: cannot read {}: {err}", path.display());
                return EXIT_USAGE;
            }
        };
        match MediaChunk::new(tag, buffer) {
            Ok(chunk) => file = file.append_media(chunk),
            Err(err) => {
                eprintln!("ddoif: {}: {err}", path.display());
                return EXIT_MALFORMED;
            }
        }
    }

    let bytes = match encode_file(&file) {
        Ok(bytes) => bytes,
        Err(err) => {
            eprintln!("ddoif: {err}");
            return EXIT_MALFORMED;
        }
    };
    if output.extension().and_then(|ext| ext.to_str()) != Some("ddof") {
        eprintln!(
            "ddoif: warning: {} does not have the .ddof extension",
            output.display()
        );
    }
    if let Err(err) = fs::write(output, &bytes) {
        eprintln!("ddoif: cannot write {}: {err}", output.display());
        return EXIT_USAGE;
    }
    println!(
        "packed {} chunk(s) (1 textual + {} media) into {}: {} bytes",
        1 + file.media.len(),
        file.media.len(),
        output.display(),
        bytes.len()
    );
    EXIT_OK
}
