//! Acceptance suite: eight numbered criteria covering the container codec,
//! the CRC conformance oracle, corruption detection, the dictionary round
//! trips with lint injection, seed fidelity, and the CLI validation
//! semantics. Each test prints one PASS/FAIL line (visible with
//! `--nocapture`) and enforces its wall-clock budget.

use std::fs;
use std::panic::AssertUnwindSafe;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, RngCore, SeedableRng};

use ddoif::dictionary::{lint_names, parse_dictionary, serialize_dictionary, TextFormat};
use ddoif::{
    compute_crc32, decode_file, encode_file, ClassNode, ClassPath, CodecError, DdoifFile,
    Dictionary, LintRule, MediaChunk, SignatureMangling,
};

// ---------------------------------------------------------------------------
// Harness

fn criterion(number: u32, what: &str, budget: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("PASS criterion {number}: {what} ({elapsed:.2?}, budget {budget:.0?})");
        }
        Ok(()) => {
            println!("FAIL criterion {number}: {what} ({elapsed:.2?} exceeds budget {budget:.0?})");
            panic!("criterion {number} exceeded its {budget:?} budget: {elapsed:?}");
        }
        Err(cause) => {
            println!("FAIL criterion {number}: {what}");
            std::panic::resume_unwind(cause);
        }
    }
}

fn ddoif_bin() -> &'static str {
    env!("CARGO_BIN_EXE_ddoif")
}

fn run_cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(ddoif_bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn ddoif")
}

// ---------------------------------------------------------------------------
// 1. Byte-exact header

#[test]
fn criterion_1_byte_exact_header() {
    criterion(1, "byte-exact header on a minimal file", Duration::from_secs(1), || {
        let bytes = encode_file(&DdoifFile::empty()).unwrap();
        let mut golden = vec![0x89, b'D', b'D', b'O', b'I', b'F', 0x0D, 0x0A, 0x1A, 0x0A];
        golden.extend_from_slice(&[0u8; 20]);
        assert_eq!(bytes.len(), 30);
        assert_eq!(bytes[..26], golden[..26], "signature + reserved bytes");
        assert_eq!(bytes, golden, "whole minimal file");
    });
}

// ---------------------------------------------------------------------------
// 2. Jacket reconstruction at desk scale (through the CLI)

#[test]
fn criterion_2_jacket_reconstruction() {
    criterion(2, "pack/unpack/inspect of a 10-image jacket", Duration::from_secs(2), || {
        let mut rng = StdRng::seed_from_u64(0x0DD0_1F02);
        let dir = tempfile::tempdir().unwrap();
        fs::write(
            dir.path().join("jacket.json"),
            r#"{"dictionary_version":"seed-0.1","classes":["clothing"],"attributes":[["colour","navy"],["size","40"]]}"#,
        )
        .unwrap();

        let mut names = Vec::new();
        let mut originals = Vec::new();
        for i in 0..10 {
            let name = if i % 2 == 0 { format!("view{i}.jpg") } else { format!("view{i}.png") };
            let len = rng.gen_range(1024..=102_400);
            let mut buffer = vec![0u8; len];
            rng.fill_bytes(&mut buffer);
            fs::write(dir.path().join(&name), &buffer).unwrap();
            names.push(name);
            originals.push(buffer);
        }

        let mut args = vec!["pack", "-d", "jacket.json", "-o", "jacket.ddof"];
        args.extend(names.iter().map(String::as_str));
        let out = run_cli(dir.path(), &args);
        assert_eq!(out.status.code(), Some(0), "pack: {}", String::from_utf8_lossy(&out.stderr));

        let out = run_cli(dir.path(), &["unpack", "jacket.ddof", "-o", "views"]);
        assert_eq!(out.status.code(), Some(0), "unpack: {}", String::from_utf8_lossy(&out.stderr));
        for (i, original) in originals.iter().enumerate() {
            let ext = if i % 2 == 0 { "jpeg" } else { "png" };
            let unpacked = fs::read(dir.path().join("views").join(format!("media-{i}.{ext}"))).unwrap();
            assert_eq!(&unpacked, original, "media {i} must be bit-identical");
        }

        let out = run_cli(dir.path(), &["inspect", "jacket.ddof", "--json"]);
        assert_eq!(out.status.code(), Some(0));
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let media = doc["media"].as_array().unwrap();
        assert_eq!(media.len(), 10, "inspect must report 10 chunks");
        let offsets: Vec<u64> = media.iter().map(|m| m["offset"].as_u64().unwrap()).collect();
        assert!(offsets.windows(2).all(|w| w[0] < w[1]), "offsets in order: {offsets:?}");
        for (i, m) in media.iter().enumerate() {
            let expected = if i % 2 == 0 { "JPEG" } else { "PNG" };
            assert_eq!(m["tag"], expected);
            assert_eq!(m["length"].as_u64().unwrap() as usize, originals[i].len());
        }
    });
}

// ---------------------------------------------------------------------------
// 3. CRC conformance against an independent oracle

/// Bit-at-a-time CRC-32/ISO-HDLC, written from the polynomial definition —
/// deliberately sharing no code with the library's table-driven version.
fn crc32_oracle(data: &[u8]) -> u32 {
    let mut crc = 0xFFFF_FFFFu32;
    for &byte in data {
        crc ^= u32::from(byte);
        for _ in 0..8 {
            crc = if crc & 1 != 0 { (crc >> 1) ^ 0xEDB8_8320 } else { crc >> 1 };
        }
    }
    !crc
}

#[test]
fn criterion_3_crc_conformance() {
    criterion(3, "CRC-32 check values and 1000-buffer oracle agreement", Duration::from_secs(5), || {
        assert_eq!(compute_crc32(b"123456789"), 0xCBF4_3926, "ISO-HDLC check value");
        assert_eq!(compute_crc32(b""), 0, "empty message");
        assert_eq!(crc32_oracle(b"123456789"), 0xCBF4_3926, "oracle self-check");

        let mut rng = StdRng::seed_from_u64(0x0DD0_1F03);
        for trial in 0..1000 {
            let len = rng.gen_range(0..=64 * 1024);
            let mut buffer = vec![0u8; len];
            rng.fill_bytes(&mut buffer);
            assert_eq!(
                compute_crc32(&buffer),
                crc32_oracle(&buffer),
                "trial {trial} ({len} bytes)"
            );
        }
    });
}

// ---------------------------------------------------------------------------
// 4. Corruption detection: bit flips and signature manglings

fn random_file(rng: &mut StdRng, max_media: usize, max_len: usize) -> DdoifFile {
    let mut file = DdoifFile::new(format!("{{\"seed\":{}}}", rng.gen::<u32>()));
    for _ in 0..rng.gen_range(1..=max_media) {
        let len = rng.gen_range(1..=max_len);
        let mut buffer = vec![0u8; len];
        rng.fill_bytes(&mut buffer);
        let tag = ["JPEG", "PNG", "MP4", "OBJ"][rng.gen_range(0..4)];
        file = file.append_media(MediaChunk::new(tag, buffer).unwrap());
    }
    file
}

/// Absolute byte ranges of every media buffer in the encoded form.
fn buffer_ranges(file: &DdoifFile) -> Vec<std::ops::Range<usize>> {
    let mut at = 30 + file.descriptor.len();
    let mut ranges = Vec::new();
    for chunk in &file.media {
        ranges.push(at + 12..at + 12 + chunk.len());
        at += 16 + chunk.len();
    }
    ranges
}

#[test]
fn criterion_4_corruption_detection() {
    criterion(4, "1000 bit flips and 3x300 manglings all detected", Duration::from_secs(30), || {
        let mut rng = StdRng::seed_from_u64(0x0DD0_1F04);

        let file = random_file(&mut rng, 6, 16 * 1024);
        let pristine = encode_file(&file).unwrap();
        let ranges = buffer_ranges(&file);
        for trial in 0..1000 {
            let which = rng.gen_range(0..ranges.len());
            let offset = rng.gen_range(ranges[which].clone());
            let bit = rng.gen_range(0..8);
            let mut corrupt = pristine.clone();
            corrupt[offset] ^= 1u8 << bit;
            match decode_file(&corrupt) {
                Err(CodecError::CrcMismatch { media_index, .. }) => {
                    assert_eq!(media_index, which, "trial {trial}: wrong chunk blamed");
                }
                other => panic!("trial {trial}: flip at {offset} bit {bit} gave {other:?}"),
            }
        }

        let manglings: [(Mangler, SignatureMangling); 3] = [
            (mangle_crlf_to_lf, SignatureMangling::CrlfToLf),
            (mangle_lf_to_crlf, SignatureMangling::LfToCrlf),
            (mangle_strip_bit7, SignatureMangling::HighBitStripped),
        ];
        for (transform, expected) in manglings {
            for trial in 0..300 {
                let file = random_file(&mut rng, 3, 2048);
                let mangled = transform(&encode_file(&file).unwrap());
                match decode_file(&mangled) {
                    Err(CodecError::MagicMismatch { mangling }) => {
                        assert_eq!(mangling, expected, "trial {trial}");
                    }
                    other => panic!("{expected:?} trial {trial}: got {other:?}"),
                }
            }
        }
    });
}

type Mangler = fn(&[u8]) -> Vec<u8>;

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

fn mangle_lf_to_crlf(bytes: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(bytes.len() + 16);
    for &b in bytes {
        if b == 0x0A {
            out.push(0x0D);
        }
        out.push(b);
    }
    out
}

fn mangle_strip_bit7(bytes: &[u8]) -> Vec<u8> {
    bytes.iter().map(|b| b & 0x7F).collect()
}

// ---------------------------------------------------------------------------
// 5. Round-trip property suite at acceptance scale

fn random_utf8(rng: &mut StdRng, max_chars: usize) -> String {
    let len = rng.gen_range(0..=max_chars);
    (0..len)
        .map(|_| match rng.gen_range(0..4u8) {
            0 => char::from(rng.gen_range(0x20..=0x7Eu8)),
            1 => char::from_u32(rng.gen_range(0xA0..=0x2FF)).unwrap(),
            2 => char::from_u32(rng.gen_range(0x4E00..=0x4FFF)).unwrap(),
            _ => ['\n', '\t', '"', '\\', '\u{1F9E5}'][rng.gen_range(0..5)],
        })
        .collect()
}

#[test]
fn criterion_5_round_trip_suite() {
    criterion(5, "500 random files survive decode(encode(f)) with the size law", Duration::from_secs(60), || {
        let mut rng = StdRng::seed_from_u64(0x0DD0_1F05);
        for trial in 0..500 {
            let mut file = DdoifFile::new(random_utf8(&mut rng, 512));
            for _ in 0..rng.gen_range(0..=8) {
                let len = rng.gen_range(0..=64 * 1024);
                let mut buffer = vec![0u8; len];
                rng.fill_bytes(&mut buffer);
                let tag = ["JPEG", "PNG", "MP4", "OBJ", "STL", "WAV"][rng.gen_range(0..6)];
                file = file.append_media(MediaChunk::new(tag, buffer).unwrap());
            }
            let bytes = encode_file(&file).unwrap();
            let expected = 30
                + file.descriptor.len()
                + file.media.iter().map(|m| 16 + m.len()).sum::<usize>();
            assert_eq!(bytes.len(), expected, "trial {trial}: size law");
            assert_eq!(decode_file(&bytes).unwrap(), file, "trial {trial}: round trip");
        }
    });
}

// ---------------------------------------------------------------------------
// 6. Dictionary round trips and lint injection at scale

/// Flat-arena description of a random tree: (parent, depth, name,
/// description). Depth is capped at 6 and names are globally unique, so the
/// base tree is sibling-unique and lint-clean.
struct Arena {
    nodes: Vec<(Option<usize>, usize, String, Option<String>)>,
}

fn random_arena(rng: &mut StdRng, max_nodes: usize) -> Arena {
    let target = rng.gen_range(1..=max_nodes);
    let mut nodes: Vec<(Option<usize>, usize, String, Option<String>)> = Vec::new();
    for id in 0..target {
        // Root with probability ~1/8, otherwise a child of any non-full node.
        let parent = if nodes.is_empty() || rng.gen_range(0..8) == 0 {
            None
        } else {
            // Rejection-sample a parent shallower than the depth cap.
            loop {
                let candidate = rng.gen_range(0..nodes.len());
                if nodes[candidate].1 < 6 {
                    break Some(candidate);
                }
            }
        };
        let depth = parent.map_or(1, |p| nodes[p].1 + 1);
        let name = if depth == 1 {
            format!("root {id}")
        } else {
            format!("Node {id}")
        };
        let description = if rng.gen_range(0..3) == 0 {
            Some(format!("Fancy <trim> & \"velvet\" n°{id}"))
        } else {
            None
        };
        nodes.push((parent, depth, name, description));
    }
    Arena { nodes }
}

impl Arena {
    fn build(&self) -> Dictionary {
        fn assemble(arena: &Arena, children: &[Vec<usize>], id: usize) -> ClassNode {
            ClassNode {
                name: arena.nodes[id].2.clone(),
                description: arena.nodes[id].3.clone(),
                children: children[id].iter().map(|&c| assemble(arena, children, c)).collect(),
            }
        }
        let mut children = vec![Vec::new(); self.nodes.len()];
        let mut roots = Vec::new();
        for (id, &(parent, ..)) in self.nodes.iter().enumerate() {
            match parent {
                Some(p) => children[p].push(id),
                None => roots.push(id),
            }
        }
        Dictionary {
            version: "acceptance-0".to_owned(),
            roots: roots.iter().map(|&r| assemble(self, &children, r)).collect(),
        }
    }

    fn path_of(&self, id: usize) -> Vec<String> {
        let mut segments = Vec::new();
        let mut cursor = Some(id);
        while let Some(current) = cursor {
            segments.push(self.nodes[current].2.clone());
            cursor = self.nodes[current].0;
        }
        segments.reverse();
        segments
    }

    /// Inject `k` single-finding violations, each in a distinct sibling set,
    /// and return the expected (rule, path-segments) multiset.
    fn inject(&mut self, rng: &mut StdRng, k: usize) -> Vec<(LintRule, Vec<String>)> {
        use std::collections::HashMap;
        let mut groups: HashMap<Option<usize>, Vec<usize>> = HashMap::new();
        for (id, &(parent, ..)) in self.nodes.iter().enumerate() {
            groups.entry(parent).or_default().push(id);
        }
        let mut parents: Vec<Option<usize>> = groups.keys().copied().collect();
        parents.sort(); // deterministic order before the shuffle
        for i in (1..parents.len()).rev() {
            parents.swap(i, rng.gen_range(0..=i));
        }

        let mut planned = Vec::new();
        let mut counter = self.nodes.len();
        for parent in parents.into_iter().take(k) {
            let members = &groups[&parent];
            let target = members[rng.gen_range(0..members.len())];
            let depth = self.nodes[target].1;
            counter += 1;
            let (rule, new_name) = match rng.gen_range(0..4u8) {
                0 if depth == 1 => (LintRule::RootNotLowercase, Some(format!("Root {counter}"))),
                0 => (LintRule::SubclassNotCapitalized, Some(format!("violation {counter}"))),
                1 if depth == 1 => (LintRule::IllegalCharacter, Some(format!("bad/name {counter}"))),
                1 => (LintRule::IllegalCharacter, Some(format!("Bad/Name {counter}"))),
                2 => (LintRule::EmptyName, Some(String::new())),
                _ => (LintRule::DuplicateSibling, None),
            };
            match new_name {
                Some(name) => self.nodes[target].2 = name,
                None => {
                    // Append a leaf duplicating the target's name.
                    self.nodes.push((parent, depth, self.nodes[target].2.clone(), None));
                }
            }
            planned.push((rule, target));
        }
        // Paths are resolved only now: a later rename may sit on an earlier
        // target's ancestor chain.
        planned
            .into_iter()
            .map(|(rule, target)| (rule, self.path_of(target)))
            .collect()
    }
}

#[test]
fn criterion_6_dictionary_round_trips_and_lint() {
    criterion(6, "200 random trees round-trip in 3 formats; injected lint findings exact", Duration::from_secs(60), || {
        let mut rng = StdRng::seed_from_u64(0x0DD0_1F06);
        for trial in 0..200 {
            let mut arena = random_arena(&mut rng, 1000);
            let dict = arena.build();
            assert!(dict.node_count() <= 1000);
            assert!(lint_names(&dict).is_empty(), "trial {trial}: base tree must be clean");

            // YAML -> XML -> JSON chain, then each format alone.
            let yaml = serialize_dictionary(&dict, TextFormat::Yaml);
            let a = parse_dictionary(&yaml, Some(TextFormat::Yaml)).unwrap();
            let xml = serialize_dictionary(&a, TextFormat::Xml);
            let b = parse_dictionary(&xml, Some(TextFormat::Xml)).unwrap();
            let json = serialize_dictionary(&b, TextFormat::Json);
            let c = parse_dictionary(&json, Some(TextFormat::Json)).unwrap();
            assert_eq!(c, dict, "trial {trial}: YAML-XML-JSON chain");

            // Lint completeness/soundness on k injected violations.
            let groups = 1 + arena.nodes.iter().filter_map(|n| n.0).collect::<std::collections::HashSet<_>>().len();
            let k = rng.gen_range(1..=groups.min(10));
            let mut expected = arena.inject(&mut rng, k);
            let mutated = arena.build();
            let mut found: Vec<(LintRule, Vec<String>)> = lint_names(&mutated)
                .into_iter()
                .map(|v| (v.rule, v.path.segments().to_vec()))
                .collect();
            let by_rule_then_path = |a: &(LintRule, Vec<String>), b: &(LintRule, Vec<String>)| {
                (a.0 as u8, &a.1).cmp(&(b.0 as u8, &b.1))
            };
            expected.sort_by(by_rule_then_path);
            found.sort_by(by_rule_then_path);
            assert_eq!(found.len(), k, "trial {trial}: exactly k findings");
            assert_eq!(found, expected, "trial {trial}: findings match injections");
        }
    });
}

// ---------------------------------------------------------------------------
// 7. Seed-dictionary fidelity

#[test]
fn criterion_7_seed_fidelity() {
    criterion(7, "seed dictionary paths, roots, and lint cleanliness", Duration::from_secs(1), || {
        let dict = ddoif::seed_dictionary();
        for path in [
            "clothing/Dress/A-line Dress",
            "clothing/Dress/Apron Dress",
            "clothing/Skirt",
        ] {
            let parsed = ClassPath::parse(path).unwrap();
            assert!(dict.resolve(&parsed).is_ok(), "{path} must resolve");
        }
        let roots: Vec<&str> = dict.roots.iter().map(|r| r.name.as_str()).collect();
        for required in ["clothing", "material", "fabric", "post-processing", "footwear", "anatomy"] {
            assert!(roots.contains(&required), "missing root {required}");
        }
        assert!(lint_names(&dict).is_empty(), "seed dictionary must lint clean");
    });
}

// ---------------------------------------------------------------------------
// 8. Validation semantics through the CLI

#[test]
fn criterion_8_validation_semantics() {
    criterion(8, "leaf/unknown/non-leaf descriptors through the CLI", Duration::from_secs(1), || {
        let dir = tempfile::tempdir().unwrap();
        let cases = [
            ("leaf", r#"{"classes":["clothing/Dress/A-line Dress"],"attributes":[]}"#, 0, None),
            ("unknown", r#"{"classes":["clothing/Onesie"],"attributes":[]}"#, 1, Some("error class[0] unknown-class")),
            ("nonleaf", r#"{"classes":["clothing/Dress"],"attributes":[]}"#, 0, Some("warning class[0] non-leaf-class")),
        ];
        for (label, descriptor, expected_code, expected_line) in cases {
            let desc_name = format!("{label}.json");
            let pack_name = format!("{label}.ddof");
            fs::write(dir.path().join(&desc_name), descriptor).unwrap();
            let out = run_cli(dir.path(), &["pack", "-d", &desc_name, "-o", &pack_name]);
            assert_eq!(out.status.code(), Some(0), "pack {label}");

            let out = run_cli(dir.path(), &["validate", &pack_name, "--seed"]);
            assert_eq!(out.status.code(), Some(expected_code), "{label} exit code");
            let text = String::from_utf8_lossy(&out.stdout);
            let findings: Vec<&str> = text
                .lines()
                .filter(|line| line.starts_with("  "))
                .collect();
            match expected_line {
                None => assert!(findings.is_empty(), "{label}: no findings, got {findings:?}"),
                Some(needle) => {
                    assert_eq!(findings.len(), 1, "{label}: exactly one finding, got {findings:?}");
                    assert!(findings[0].contains(needle), "{label}: {findings:?}");
                }
            }
        }
    });
}
