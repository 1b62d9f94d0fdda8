//! The item descriptor carried in a container's textual chunk, and its
//! validation against a dictionary.
//!
//! A descriptor lists the classes an item belongs to and free-form
//! key/value attributes, plus an optional tag naming the dictionary
//! edition it was authored against. Canonical JSON shape:
//!
//! ```json
//! {
//!   "dictionary_version": "seed-0.1",
//!   "classes": ["clothing/Dress/A-line Dress"],
//!   "attributes": [["colour", "navy"], ["size", "38"]]
//! }
//! ```
//!
//! YAML mirrors the same fields; XML uses
//! `<descriptor dictionary-version="..."><class>path</class>
//! <attribute key="...">value</attribute></descriptor>`. New `.ddof` files
//! are written with the JSON form.

use std::fmt;

use quick_xml::events::{BytesDecl, BytesStart, BytesText, Event};
use serde::Serialize;
use serde_json::Value;

use crate::dictionary::{detect_format, ClassPath, Dictionary, DictionaryError, TextFormat};
use crate::report::Severity;

/// Errors from reading descriptor documents.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DescriptorError {
    /// The document is not well-formed in its serialization format.
    #[error("{format} syntax error: {detail}")]
    Syntax { format: TextFormat, detail: String },
    /// Well-formed text that does not encode a descriptor (missing
    /// "classes", a malformed class path, a bad attribute pair).
    #[error("invalid descriptor structure: {detail}")]
    Structure { detail: String },
}

fn structure(detail: impl Into<String>) -> DescriptorError {
    DescriptorError::Structure { detail: detail.into() }
}

/// The classes and attributes of one fashion item.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ItemDescriptor {
    /// Class memberships, in authoring order.
    pub classes: Vec<ClassPath>,
    /// Key/value attribute pairs, in authoring order. Duplicate keys are
    /// allowed (multi-valued attributes) but validation warns about them.
    pub attributes: Vec<(String, String)>,
    /// Dictionary edition this descriptor was written against, if recorded.
    pub dictionary_version: Option<String>,
}

impl ItemDescriptor {
    pub fn new() -> Self {
        ItemDescriptor::default()
    }

    pub fn with_class(mut self, path: ClassPath) -> Self {
        self.classes.push(path);
        self
    }

    pub fn with_attribute(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.attributes.push((key.into(), value.into()));
        self
    }

    pub fn with_dictionary_version(mut self, version: impl Into<String>) -> Self {
        self.dictionary_version = Some(version.into());
        self
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// Parse a descriptor document, auto-detecting YAML/JSON/XML from the first
/// non-whitespace character.
pub fn parse_descriptor(text: &str) -> Result<ItemDescriptor, DescriptorError> {
    match detect_format(text) {
        TextFormat::Json => {
            let value: Value = serde_json::from_str(text).map_err(|e| DescriptorError::Syntax {
                format: TextFormat::Json,
                detail: e.to_string(),
            })?;
            descriptor_from_value(value)
        }
        TextFormat::Yaml => {
            let yaml: serde_yaml::Value =
                serde_yaml::from_str(text).map_err(|e| DescriptorError::Syntax {
                    format: TextFormat::Yaml,
                    detail: e.to_string(),
                })?;
            let value = serde_json::to_value(yaml).map_err(|e| {
                structure(format!("document does not map onto a descriptor: {e}"))
            })?;
            descriptor_from_value(value)
        }
        TextFormat::Xml => descriptor_from_xml(text),
    }
}

fn value_kind(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn class_path(text: &str) -> Result<ClassPath, DescriptorError> {
    ClassPath::parse(text).map_err(|e| match e {
        DictionaryError::InvalidPath { text, detail } => {
            structure(format!("malformed class path \"{text}\": {detail}"))
        }
        other => structure(other.to_string()),
    })
}

fn descriptor_from_value(value: Value) -> Result<ItemDescriptor, DescriptorError> {
    let obj = match value {
        Value::Object(map) => map,
        other => {
            return Err(structure(format!(
                "expected a top-level object with \"classes\", found {}",
                value_kind(&other)
            )))
        }
    };
    let dictionary_version = match obj.get("dictionary_version") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => {
            return Err(structure(format!(
                "\"dictionary_version\" must be a string, found {}",
                value_kind(other)
            )))
        }
    };
    let classes = match obj.get("classes") {
        Some(Value::Array(items)) => {
            let mut classes = Vec::with_capacity(items.len());
            for (i, item) in items.iter().enumerate() {
                match item {
                    Value::String(s) => classes.push(class_path(s)?),
                    other => {
                        return Err(structure(format!(
                            "classes[{i}] must be a string, found {}",
                            value_kind(other)
                        )))
                    }
                }
            }
            classes
        }
        Some(other) => {
            return Err(structure(format!(
                "\"classes\" must be an array, found {}",
                value_kind(other)
            )))
        }
        None => return Err(structure("descriptor has no \"classes\" list")),
    };
    let attributes = match obj.get("attributes") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => {
            let mut attributes = Vec::with_capacity(items.len());
            for (j, item) in items.iter().enumerate() {
                attributes.push(attribute_from_value(j, item)?);
            }
            attributes
        }
        Some(other) => {
            return Err(structure(format!(
                "\"attributes\" must be an array, found {}",
                value_kind(other)
            )))
        }
    };
    Ok(ItemDescriptor {
        classes,
        attributes,
        dictionary_version,
    })
}

fn attribute_from_value(index: usize, value: &Value) -> Result<(String, String), DescriptorError> {
    let pair = match value {
        Value::Array(pair) if pair.len() == 2 => pair,
        Value::Array(pair) => {
            return Err(structure(format!(
                "attributes[{index}] must be a [key, value] pair, found {} elements",
                pair.len()
            )))
        }
        other => {
            return Err(structure(format!(
                "attributes[{index}] must be a [key, value] pair, found {}",
                value_kind(other)
            )))
        }
    };
    let (key, value) = match (&pair[0], &pair[1]) {
        (Value::String(k), Value::String(v)) => (k.clone(), v.clone()),
        _ => {
            return Err(structure(format!(
                "attributes[{index}] key and value must both be strings"
            )))
        }
    };
    if key.is_empty() {
        return Err(structure(format!("attributes[{index}] has an empty key")));
    }
    Ok((key, value))
}

fn xml_syntax(err: impl fmt::Display) -> DescriptorError {
    DescriptorError::Syntax {
        format: TextFormat::Xml,
        detail: err.to_string(),
    }
}

fn descriptor_from_xml(text: &str) -> Result<ItemDescriptor, DescriptorError> {
    #[derive(PartialEq)]
    enum Where {
        BeforeRoot,
        InRoot,
        InClass,
        InAttribute,
        AfterRoot,
    }
    let mut reader = quick_xml::Reader::from_str(text);
    let mut descriptor = ItemDescriptor::new();
    let mut state = Where::BeforeRoot;
    let mut text_buf = String::new();
    let mut pending_key = String::new();

    loop {
        let event = reader.read_event().map_err(xml_syntax)?;
        match event {
            Event::Decl(_) | Event::Comment(_) | Event::PI(_) | Event::DocType(_) => {}
            Event::Start(ref start) | Event::Empty(ref start) => {
                let empty = matches!(event, Event::Empty(_));
                let tag = String::from_utf8_lossy(start.name().as_ref()).into_owned();
                match (&state, tag.as_str()) {
                    (Where::BeforeRoot, "descriptor") => {
                        descriptor.dictionary_version = xml_attr(start, "dictionary-version")?;
                        state = if empty { Where::AfterRoot } else { Where::InRoot };
                    }
                    (Where::InRoot, "class") => {
                        if empty {
                            return Err(structure("empty <class> element (a path is required)"));
                        }
                        text_buf.clear();
                        state = Where::InClass;
                    }
                    (Where::InRoot, "attribute") => {
                        let key = xml_attr(start, "key")?.ok_or_else(|| {
                            structure("<attribute> element has no key attribute")
                        })?;
                        if key.is_empty() {
                            return Err(structure("<attribute> element has an empty key"));
                        }
                        if empty {
                            descriptor.attributes.push((key, String::new()));
                        } else {
                            pending_key = key;
                            text_buf.clear();
                            state = Where::InAttribute;
                        }
                    }
                    (_, other) => {
                        return Err(structure(format!("unexpected element <{other}>")));
                    }
                }
            }
            Event::End(ref end) => {
                let tag = String::from_utf8_lossy(end.name().as_ref()).into_owned();
                match (&state, tag.as_str()) {
                    (Where::InClass, "class") => {
                        descriptor.classes.push(class_path(&text_buf)?);
                        state = Where::InRoot;
                    }
                    (Where::InAttribute, "attribute") => {
                        descriptor
                            .attributes
                            .push((std::mem::take(&mut pending_key), text_buf.clone()));
                        state = Where::InRoot;
                    }
                    (Where::InRoot, "descriptor") => {
                        state = Where::AfterRoot;
                    }
                    (_, other) => return Err(structure(format!("unmatched </{other}>"))),
                }
            }
            Event::Text(t) => {
                let content = t.unescape().map_err(xml_syntax)?;
                match state {
                    Where::InClass | Where::InAttribute => text_buf.push_str(&content),
                    _ if content.trim().is_empty() => {}
                    _ => {
                        return Err(structure(format!(
                            "stray text {:?} in descriptor document",
                            content.trim()
                        )))
                    }
                }
            }
            Event::CData(cdata) => {
                let content = String::from_utf8_lossy(&cdata).into_owned();
                match state {
                    Where::InClass | Where::InAttribute => text_buf.push_str(&content),
                    _ => return Err(structure("stray CDATA in descriptor document")),
                }
            }
            Event::Eof => break,
        }
    }
    match state {
        Where::AfterRoot => Ok(descriptor),
        Where::BeforeRoot => Err(structure("document has no <descriptor> element")),
        _ => Err(xml_syntax("unclosed element in descriptor document")),
    }
}

fn xml_attr(start: &BytesStart<'_>, key: &str) -> Result<Option<String>, DescriptorError> {
    for attr in start.attributes() {
        let attr = attr.map_err(xml_syntax)?;
        if attr.key.as_ref() == key.as_bytes() {
            let value = attr.unescape_value().map_err(xml_syntax)?;
            return Ok(Some(value.into_owned()));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Serialization

#[derive(Serialize)]
struct DescriptorDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    dictionary_version: Option<String>,
    classes: Vec<String>,
    attributes: Vec<(String, String)>,
}

impl From<&ItemDescriptor> for DescriptorDoc {
    fn from(d: &ItemDescriptor) -> Self {
        DescriptorDoc {
            dictionary_version: d.dictionary_version.clone(),
            classes: d.classes.iter().map(ClassPath::to_string).collect(),
            attributes: d.attributes.clone(),
        }
    }
}

/// Render a descriptor in the given format. Deterministic; parses back to
/// an equal value. JSON is the canonical form for the textual chunk of new
/// files.
pub fn serialize_descriptor(descriptor: &ItemDescriptor, format: TextFormat) -> String {
    let doc = DescriptorDoc::from(descriptor);
    match format {
        TextFormat::Json => {
            let mut out = serde_json::to_string_pretty(&doc).expect("JSON serialization");
            out.push('\n');
            out
        }
        TextFormat::Yaml => serde_yaml::to_string(&doc).expect("YAML serialization"),
        TextFormat::Xml => descriptor_to_xml(descriptor),
    }
}

fn descriptor_to_xml(descriptor: &ItemDescriptor) -> String {
    let mut writer = quick_xml::Writer::new_with_indent(Vec::new(), b' ', 2);
    writer
        .write_event(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)))
        .expect("write to Vec");
    let mut root = BytesStart::new("descriptor");
    if let Some(version) = &descriptor.dictionary_version {
        root.push_attribute(("dictionary-version", version.as_str()));
    }
    if descriptor.classes.is_empty() && descriptor.attributes.is_empty() {
        writer.write_event(Event::Empty(root)).expect("write to Vec");
    } else {
        writer.write_event(Event::Start(root)).expect("write to Vec");
        for class in &descriptor.classes {
            writer
                .write_event(Event::Start(BytesStart::new("class")))
                .expect("write to Vec");
            writer
                .write_event(Event::Text(BytesText::new(&class.to_string())))
                .expect("write to Vec");
            writer
                .write_event(Event::End(BytesStart::new("class").to_end()))
                .expect("write to Vec");
        }
        for (key, value) in &descriptor.attributes {
            let mut attr = BytesStart::new("attribute");
            attr.push_attribute(("key", key.as_str()));
            writer.write_event(Event::Start(attr)).expect("write to Vec");
            writer
                .write_event(Event::Text(BytesText::new(value)))
                .expect("write to Vec");
            writer
                .write_event(Event::End(BytesStart::new("attribute").to_end()))
                .expect("write to Vec");
        }
        writer
            .write_event(Event::End(BytesStart::new("descriptor").to_end()))
            .expect("write to Vec");
    }
    let mut out = String::from_utf8(writer.into_inner()).expect("XML output is UTF-8");
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// Validation

/// What a validation finding refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subject {
    /// The descriptor as a whole.
    Descriptor,
    /// `classes[i]`.
    Class(usize),
    /// `attributes[j]`.
    Attribute(usize),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Descriptor => f.write_str("descriptor"),
            Subject::Class(i) => write!(f, "class[{i}]"),
            Subject::Attribute(j) => write!(f, "attribute[{j}]"),
        }
    }
}

/// Machine-readable classification of a validation finding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationCode {
    /// A class path does not resolve in the dictionary.
    UnknownClass,
    /// A class path resolves to a node that has children — the item is
    /// typed at a coarse level, which may be intentional.
    NonLeafClass,
    /// An attribute key repeats an earlier one.
    DuplicateKey,
    /// The descriptor lists no classes at all.
    EmptyDescriptor,
    /// The descriptor was authored against a different dictionary edition.
    VersionMismatch,
}

impl fmt::Display for ValidationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValidationCode::UnknownClass => "unknown-class",
            ValidationCode::NonLeafClass => "non-leaf-class",
            ValidationCode::DuplicateKey => "duplicate-key",
            ValidationCode::EmptyDescriptor => "empty-descriptor",
            ValidationCode::VersionMismatch => "version-mismatch",
        })
    }
}

/// One observation from descriptor validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationFinding {
    pub severity: Severity,
    pub subject: Subject,
    pub code: ValidationCode,
    pub message: String,
}

impl fmt::Display for ValidationFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.severity, self.subject, self.code, self.message
        )
    }
}

/// The validation result: all findings in deterministic order (classes in
/// index order, then attributes, then descriptor-level findings).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<ValidationFinding>,
}

impl ValidationReport {
    /// True iff no Error-severity findings; warnings alone never fail a
    /// descriptor.
    pub fn ok(&self) -> bool {
        self.error_count() == 0
    }

    pub fn error_count(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
            .count()
    }

    pub fn warning_count(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
            .count()
    }

    fn push(
        &mut self,
        severity: Severity,
        subject: Subject,
        code: ValidationCode,
        message: String,
    ) {
        self.findings.push(ValidationFinding {
            severity,
            subject,
            code,
            message,
        });
    }
}

/// Check a descriptor against a dictionary.
///
/// Unknown classes are Errors; everything else — coarse (non-leaf)
/// classification, repeated attribute keys, an empty class list, an edition
/// mismatch — is a Warning. `ok` reflects Errors only.
pub fn validate_descriptor(descriptor: &ItemDescriptor, dict: &Dictionary) -> ValidationReport {
    let mut report = ValidationReport::default();

    for (i, path) in descriptor.classes.iter().enumerate() {
        match dict.resolve(path) {
            Ok(node) => {
                if !node.is_leaf() {
                    report.push(
                        Severity::Warning,
                        Subject::Class(i),
                        ValidationCode::NonLeafClass,
                        format!(
                            "\"{path}\" has {} subclasses; item is typed at a coarse level",
                            node.children.len()
                        ),
                    );
                }
            }
            Err(err) => {
                // The NotFound message carries the deepest resolved prefix.
                report.push(
                    Severity::Error,
                    Subject::Class(i),
                    ValidationCode::UnknownClass,
                    err.to_string(),
                );
            }
        }
    }

    for (j, (key, _)) in descriptor.attributes.iter().enumerate() {
        if descriptor.attributes[..j].iter().any(|(k, _)| k == key) {
            report.push(
                Severity::Warning,
                Subject::Attribute(j),
                ValidationCode::DuplicateKey,
                format!("attribute key \"{key}\" repeats an earlier one"),
            );
        }
    }

    if descriptor.classes.is_empty() {
        report.push(
            Severity::Warning,
            Subject::Descriptor,
            ValidationCode::EmptyDescriptor,
            "descriptor lists no classes".to_owned(),
        );
    }
    if let Some(version) = &descriptor.dictionary_version {
        if version != &dict.version {
            report.push(
                Severity::Warning,
                Subject::Descriptor,
                ValidationCode::VersionMismatch,
                format!(
                    "descriptor was authored against \"{version}\" but the dictionary is \"{}\"",
                    dict.version
                ),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use crate::dictionary::seed_dictionary;

    use super::*;

    fn path(text: &str) -> ClassPath {
        ClassPath::parse(text).unwrap()
    }

    #[test]
    fn parse_json_example() {
        let d = parse_descriptor(
            r#"{"classes":["clothing/Dress/A-line Dress"],"attributes":[["colour","navy"]]}"#,
        )
        .unwrap();
        assert_eq!(d.classes, vec![path("clothing/Dress/A-line Dress")]);
        assert_eq!(d.attributes, vec![("colour".to_owned(), "navy".to_owned())]);
        assert_eq!(d.dictionary_version, None);
    }

    #[test]
    fn parse_empty_descriptor() {
        let d = parse_descriptor(r#"{"classes":[],"attributes":[]}"#).unwrap();
        assert!(d.classes.is_empty());
        assert!(d.attributes.is_empty());
    }

    #[test]
    fn missing_classes_is_structural() {
        let err = parse_descriptor(r#"{"attributes":[]}"#).unwrap_err();
        assert!(matches!(err, DescriptorError::Structure { .. }));
        assert!(err.to_string().contains("classes"));
    }

    #[test]
    fn malformed_path_is_structural() {
        let err = parse_descriptor(r#"{"classes":["clothing//Dress"]}"#).unwrap_err();
        assert!(matches!(err, DescriptorError::Structure { .. }), "{err:?}");
        let err = parse_descriptor(r#"{"classes":[""]}"#).unwrap_err();
        assert!(matches!(err, DescriptorError::Structure { .. }));
    }

    #[test]
    fn bad_attribute_shapes_are_structural() {
        for text in [
            r#"{"classes":[],"attributes":[["just-key"]]}"#,
            r#"{"classes":[],"attributes":[["k","v","extra"]]}"#,
            r#"{"classes":[],"attributes":[[1,"v"]]}"#,
            r#"{"classes":[],"attributes":[["","v"]]}"#,
            r#"{"classes":[],"attributes":["flat"]}"#,
        ] {
            let err = parse_descriptor(text).unwrap_err();
            assert!(matches!(err, DescriptorError::Structure { .. }), "{text}");
        }
    }

    #[test]
    fn parse_yaml_and_xml_forms() {
        let yaml = "dictionary_version: seed-0.1\nclasses:\n  - clothing/Skirt\nattributes:\n  - - colour\n    - red\n";
        let d = parse_descriptor(yaml).unwrap();
        assert_eq!(d.dictionary_version.as_deref(), Some("seed-0.1"));
        assert_eq!(d.classes, vec![path("clothing/Skirt")]);
        assert_eq!(d.attributes, vec![("colour".to_owned(), "red".to_owned())]);

        let xml = "<descriptor dictionary-version=\"seed-0.1\"><class>clothing/Skirt</class><attribute key=\"colour\">red</attribute></descriptor>";
        assert_eq!(parse_descriptor(xml).unwrap(), d);
    }

    #[test]
    fn roundtrip_all_formats() {
        let d = ItemDescriptor::new()
            .with_class(path("clothing/Dress/A-line Dress"))
            .with_class(path("material"))
            .with_attribute("colour", "navy")
            .with_attribute("size", "38")
            .with_attribute("colour", "black")
            .with_dictionary_version("seed-0.1");
        for format in TextFormat::ALL {
            let text = serialize_descriptor(&d, format);
            let back = parse_descriptor(&text).unwrap();
            assert_eq!(back, d, "round-trip through {format}:\n{text}");
        }
    }

    #[test]
    fn roundtrip_empty_descriptor_all_formats() {
        let d = ItemDescriptor::new();
        for format in TextFormat::ALL {
            let text = serialize_descriptor(&d, format);
            let back = parse_descriptor(&text).unwrap();
            assert_eq!(back, d, "empty descriptor in {format}: {text:?}");
        }
    }

    #[test]
    fn roundtrip_preserves_empty_attribute_values() {
        let d = ItemDescriptor::new().with_attribute("care", "");
        for format in TextFormat::ALL {
            let text = serialize_descriptor(&d, format);
            assert_eq!(parse_descriptor(&text).unwrap(), d, "{format}");
        }
    }

    #[test]
    fn validate_leaf_class_is_clean() {
        let d = ItemDescriptor::new().with_class(path("clothing/Dress/A-line Dress"));
        let report = validate_descriptor(&d, &seed_dictionary());
        assert!(report.ok());
        assert!(report.findings.is_empty());
    }

    #[test]
    fn validate_unknown_class_reports_prefix() {
        let d = ItemDescriptor::new().with_class(path("clothing/Gown"));
        let report = validate_descriptor(&d, &seed_dictionary());
        assert!(!report.ok());
        assert_eq!(report.error_count(), 1);
        let finding = &report.findings[0];
        assert_eq!(finding.code, ValidationCode::UnknownClass);
        assert_eq!(finding.subject, Subject::Class(0));
        assert!(finding.message.contains("clothing"), "{}", finding.message);
    }

    #[test]
    fn validate_non_leaf_is_a_warning() {
        let d = ItemDescriptor::new().with_class(path("clothing/Dress"));
        let report = validate_descriptor(&d, &seed_dictionary());
        assert!(report.ok());
        assert_eq!(report.warning_count(), 1);
        assert_eq!(report.findings[0].code, ValidationCode::NonLeafClass);
    }

    #[test]
    fn validate_duplicate_keys_warn_beyond_first() {
        let d = ItemDescriptor::new()
            .with_class(path("clothing/Skirt"))
            .with_attribute("colour", "red")
            .with_attribute("colour", "blue")
            .with_attribute("colour", "green");
        let report = validate_descriptor(&d, &seed_dictionary());
        assert!(report.ok());
        let dups: Vec<&ValidationFinding> = report
            .findings
            .iter()
            .filter(|f| f.code == ValidationCode::DuplicateKey)
            .collect();
        assert_eq!(dups.len(), 2);
        assert_eq!(dups[0].subject, Subject::Attribute(1));
        assert_eq!(dups[1].subject, Subject::Attribute(2));
    }

    #[test]
    fn validate_empty_descriptor_warns() {
        let report = validate_descriptor(&ItemDescriptor::new(), &seed_dictionary());
        assert!(report.ok());
        assert_eq!(report.findings[0].code, ValidationCode::EmptyDescriptor);
    }

    #[test]
    fn validate_version_mismatch_warns() {
        let d = ItemDescriptor::new()
            .with_class(path("clothing/Skirt"))
            .with_dictionary_version("other-9.9");
        let report = validate_descriptor(&d, &seed_dictionary());
        assert!(report.ok());
        assert_eq!(report.findings[0].code, ValidationCode::VersionMismatch);

        let matching = d.clone().with_dictionary_version("seed-0.1");
        let report = validate_descriptor(&matching, &seed_dictionary());
        assert!(report.findings.is_empty());
    }

    #[test]
    fn report_order_is_deterministic() {
        let d = ItemDescriptor::new()
            .with_class(path("nope"))
            .with_class(path("clothing/Dress"))
            .with_attribute("a", "1")
            .with_attribute("a", "2")
            .with_dictionary_version("x");
        let r1 = validate_descriptor(&d, &seed_dictionary());
        let r2 = validate_descriptor(&d, &seed_dictionary());
        assert_eq!(r1, r2);
        let codes: Vec<ValidationCode> = r1.findings.iter().map(|f| f.code).collect();
        assert_eq!(
            codes,
            vec![
                ValidationCode::UnknownClass,
                ValidationCode::NonLeafClass,
                ValidationCode::DuplicateKey,
                ValidationCode::VersionMismatch,
            ]
        );
    }
}
