//! Reading and writing dictionaries as YAML, JSON, and XML text.
//!
//! All three serializations share one data model. The JSON shape is
//!
//! ```json
//! {
//!   "version": "seed-0.1",
//!   "classes": [
//!     { "name": "clothing", "description": "...", "children": [ ... ] }
//!   ]
//! }
//! ```
//!
//! YAML mirrors it field for field. XML nests `<class name="...">` elements
//! inside `<dictionary version="...">`, with an optional `<description>`
//! child per class.
//!
//! Parsing is deliberately lenient about naming conventions (a third-party
//! dictionary must load before it can be repaired; see
//! [`lint_names`](super::lint_names)) but strict about structure: a class
//! without a name or two siblings sharing one is rejected.

use std::fmt;
use std::str::FromStr;

use quick_xml::events::{BytesDecl, BytesStart, BytesText, Event};
use serde::Serialize;
use serde_json::Value;

use super::{ClassNode, Dictionary, DictionaryError, PATH_SEPARATOR};

/// A dictionary/descriptor text serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TextFormat {
    Yaml,
    Json,
    Xml,
}

impl TextFormat {
    pub const ALL: [TextFormat; 3] = [TextFormat::Yaml, TextFormat::Json, TextFormat::Xml];

    /// Conventional lowercase file extension.
    pub fn extension(self) -> &'static str {
        match self {
            TextFormat::Yaml => "yaml",
            TextFormat::Json => "json",
            TextFormat::Xml => "xml",
        }
    }
}

impl fmt::Display for TextFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TextFormat::Yaml => "YAML",
            TextFormat::Json => "JSON",
            TextFormat::Xml => "XML",
        })
    }
}

impl FromStr for TextFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "yaml" | "yml" => Ok(TextFormat::Yaml),
            "json" => Ok(TextFormat::Json),
            "xml" => Ok(TextFormat::Xml),
            other => Err(format!("unknown format \"{other}\" (expected yaml, json, or xml)")),
        }
    }
}

/// Guess the serialization from the first non-whitespace character:
/// `<` means XML, `{` or `[` means JSON, anything else is read as YAML
/// (JSON being a YAML subset, the fallback is safe for scalars).
pub fn detect_format(text: &str) -> TextFormat {
    match text.trim_start().chars().next() {
        Some('<') => TextFormat::Xml,
        Some('{') | Some('[') => TextFormat::Json,
        _ => TextFormat::Yaml,
    }
}

/// Parse dictionary text in the given format, or auto-detect with `None`.
///
/// Naming-convention violations load fine (lint finds them later); missing
/// names, non-dictionary documents, and duplicate sibling names are errors.
pub fn parse_dictionary(
    text: &str,
    format: Option<TextFormat>,
) -> Result<Dictionary, DictionaryError> {
    match format.unwrap_or_else(|| detect_format(text)) {
        TextFormat::Json => {
            let value: Value = serde_json::from_str(text).map_err(|e| DictionaryError::Syntax {
                format: TextFormat::Json,
                detail: e.to_string(),
            })?;
            dictionary_from_value(value)
        }
        TextFormat::Yaml => {
            let yaml: serde_yaml::Value =
                serde_yaml::from_str(text).map_err(|e| DictionaryError::Syntax {
                    format: TextFormat::Yaml,
                    detail: e.to_string(),
                })?;
            let value = serde_json::to_value(yaml).map_err(|e| DictionaryError::Structure {
                detail: format!("document does not map onto a dictionary: {e}"),
            })?;
            dictionary_from_value(value)
        }
        TextFormat::Xml => dictionary_from_xml(text),
    }
}

/// Render a dictionary in the given format.
///
/// Output is deterministic, preserves sibling order, and parses back to a
/// structurally equal dictionary.
pub fn serialize_dictionary(dict: &Dictionary, format: TextFormat) -> String {
    let doc = DictionaryDoc::from(dict);
    match format {
        TextFormat::Json => {
            let mut out = serde_json::to_string_pretty(&doc).expect("JSON serialization");
            out.push('\n');
            out
        }
        TextFormat::Yaml => serde_yaml::to_string(&doc).expect("YAML serialization"),
        TextFormat::Xml => dictionary_to_xml(dict),
    }
}

// ---------------------------------------------------------------------------
// Serialization document model (serde field order fixes the output layout)

#[derive(Serialize)]
struct DictionaryDoc {
    version: String,
    classes: Vec<ClassDoc>,
}

#[derive(Serialize)]
struct ClassDoc {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    children: Vec<ClassDoc>,
}

impl From<&Dictionary> for DictionaryDoc {
    fn from(dict: &Dictionary) -> Self {
        DictionaryDoc {
            version: dict.version.clone(),
            classes: dict.roots.iter().map(ClassDoc::from).collect(),
        }
    }
}

impl From<&ClassNode> for ClassDoc {
    fn from(node: &ClassNode) -> Self {
        ClassDoc {
            name: node.name.clone(),
            description: node.description.clone(),
            children: node.children.iter().map(ClassDoc::from).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// JSON/YAML reading via a shared Value walk

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

fn structure(detail: impl Into<String>) -> DictionaryError {
    DictionaryError::Structure { detail: detail.into() }
}

fn dictionary_from_value(value: Value) -> Result<Dictionary, DictionaryError> {
    let obj = match value {
        Value::Object(map) => map,
        // An empty YAML document scans as null; read it as the empty
        // dictionary rather than a shape error.
        Value::Null => return Ok(Dictionary::default()),
        other => {
            return Err(structure(format!(
                "expected a top-level object with \"classes\", found {}",
                value_kind(&other)
            )))
        }
    };
    let version = match obj.get("version") {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => {
            return Err(structure(format!(
                "\"version\" must be a string, found {}",
                value_kind(other)
            )))
        }
    };
    let mut path = Vec::new();
    let roots = match obj.get("classes") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => nodes_from_values(items, &mut path)?,
        Some(other) => {
            return Err(structure(format!(
                "\"classes\" must be an array, found {}",
                value_kind(other)
            )))
        }
    };
    Ok(Dictionary { version, roots })
}

fn nodes_from_values(
    items: &[Value],
    path: &mut Vec<String>,
) -> Result<Vec<ClassNode>, DictionaryError> {
    let mut nodes: Vec<ClassNode> = Vec::with_capacity(items.len());
    for item in items {
        let node = node_from_value(item, path)?;
        check_new_sibling(&nodes, &node.name, path)?;
        nodes.push(node);
    }
    Ok(nodes)
}

fn node_from_value(value: &Value, path: &mut Vec<String>) -> Result<ClassNode, DictionaryError> {
    let at = location(path);
    let obj = match value {
        Value::Object(map) => map,
        other => {
            return Err(structure(format!(
                "class entry {at} must be an object, found {}",
                value_kind(other)
            )))
        }
    };
    let name = match obj.get("name") {
        Some(Value::String(s)) => s.clone(),
        Some(other) => {
            return Err(structure(format!(
                "class name {at} must be a string, found {}",
                value_kind(other)
            )))
        }
        None => return Err(structure(format!("class entry {at} has no \"name\""))),
    };
    let description = match obj.get("description") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s.is_empty() => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => {
            return Err(structure(format!(
                "description of \"{name}\" must be a string, found {}",
                value_kind(other)
            )))
        }
    };
    path.push(name.clone());
    let children = match obj.get("children") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => nodes_from_values(items, path)?,
        Some(other) => {
            let kind = value_kind(other);
            path.pop();
            return Err(structure(format!(
                "children of \"{name}\" must be an array, found {kind}"
            )));
        }
    };
    path.pop();
    Ok(ClassNode { name, description, children })
}

fn location(path: &[String]) -> String {
    if path.is_empty() {
        "at the top level".to_owned()
    } else {
        format!("under \"{}\"", path.join(&PATH_SEPARATOR.to_string()))
    }
}

fn check_new_sibling(
    siblings: &[ClassNode],
    name: &str,
    path: &[String],
) -> Result<(), DictionaryError> {
    if siblings.iter().any(|n| n.name == name) {
        let parent = if path.is_empty() {
            "the top level".to_owned()
        } else {
            format!("\"{}\"", path.join(&PATH_SEPARATOR.to_string()))
        };
        return Err(DictionaryError::DuplicateSibling {
            name: name.to_owned(),
            parent,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// XML reading (event-driven; quick-xml)

fn xml_syntax(err: impl fmt::Display) -> DictionaryError {
    DictionaryError::Syntax {
        format: TextFormat::Xml,
        detail: err.to_string(),
    }
}

struct XmlFrame {
    name: String,
    description: Option<String>,
    children: Vec<ClassNode>,
}

fn dictionary_from_xml(text: &str) -> Result<Dictionary, DictionaryError> {
    let mut reader = quick_xml::Reader::from_str(text);
    let mut version = String::new();
    let mut roots: Vec<ClassNode> = Vec::new();
    let mut stack: Vec<XmlFrame> = Vec::new();
    let mut seen_root = false;
    let mut root_closed = false;
    let mut in_description = false;
    let mut description_buf = String::new();

    loop {
        let event = reader.read_event().map_err(xml_syntax)?;
        match event {
            Event::Decl(_) | Event::Comment(_) | Event::PI(_) | Event::DocType(_) => {}
            Event::Start(ref start) | Event::Empty(ref start) => {
                let empty = matches!(event, Event::Empty(_));
                let tag = String::from_utf8_lossy(start.name().as_ref()).into_owned();
                if in_description {
                    return Err(structure(format!(
                        "unexpected <{tag}> inside <description>"
                    )));
                }
                if root_closed {
                    return Err(structure(format!(
                        "unexpected <{tag}> after the closing </dictionary>"
                    )));
                }
                match tag.as_str() {
                    "dictionary" if !seen_root => {
                        seen_root = true;
                        version = xml_attribute(start, "version")?.unwrap_or_default();
                        if empty {
                            root_closed = true;
                        }
                    }
                    "dictionary" => {
                        return Err(structure("nested <dictionary> element"));
                    }
                    "class" if seen_root => {
                        let name = xml_attribute(start, "name")?.ok_or_else(|| {
                            structure(format!(
                                "<class> element {} has no name attribute",
                                location(&frame_path(&stack))
                            ))
                        })?;
                        if empty {
                            let node = ClassNode::new(name);
                            attach_xml_node(node, &mut stack, &mut roots)?;
                        } else {
                            stack.push(XmlFrame {
                                name,
                                description: None,
                                children: Vec::new(),
                            });
                        }
                    }
                    "description" if seen_root && !stack.is_empty() => {
                        let frame = stack.last().unwrap();
                        if frame.description.is_some() {
                            return Err(structure(format!(
                                "class \"{}\" has more than one <description>",
                                frame.name
                            )));
                        }
                        if empty {
                            // <description/> normalizes to no description.
                        } else {
                            in_description = true;
                            description_buf.clear();
                        }
                    }
                    other => {
                        return Err(structure(format!("unexpected element <{other}>")));
                    }
                }
            }
            Event::End(ref end) => {
                let tag = String::from_utf8_lossy(end.name().as_ref()).into_owned();
                match tag.as_str() {
                    "description" if in_description => {
                        in_description = false;
                        let frame = stack.last_mut().expect("description inside class");
                        if !description_buf.is_empty() {
                            frame.description = Some(std::mem::take(&mut description_buf));
                        }
                    }
                    "class" => {
                        let frame = stack.pop().ok_or_else(|| {
                            structure("unmatched </class>")
                        })?;
                        let node = ClassNode {
                            name: frame.name,
                            description: frame.description,
                            children: frame.children,
                        };
                        attach_xml_node(node, &mut stack, &mut roots)?;
                    }
                    "dictionary" if stack.is_empty() && seen_root => {
                        root_closed = true;
                    }
                    other => {
                        return Err(structure(format!("unmatched </{other}>")));
                    }
                }
            }
            Event::Text(text_event) => {
                let content = text_event.unescape().map_err(xml_syntax)?;
                if in_description {
                    description_buf.push_str(&content);
                } else if !content.trim().is_empty() {
                    return Err(structure(format!(
                        "stray text {:?} outside any <description>",
                        content.trim()
                    )));
                }
            }
            Event::CData(cdata) => {
                let content = String::from_utf8_lossy(&cdata).into_owned();
                if in_description {
                    description_buf.push_str(&content);
                } else if !content.trim().is_empty() {
                    return Err(structure("stray CDATA outside any <description>"));
                }
            }
            Event::Eof => break,
        }
    }
    if !seen_root {
        return Err(structure("document has no <dictionary> element"));
    }
    if !root_closed {
        // quick-xml flags unclosed elements itself when check_end_names is
        // on; this covers configurations where it is not.
        return Err(xml_syntax("unclosed <dictionary> element"));
    }
    Ok(Dictionary { version, roots })
}

fn frame_path(stack: &[XmlFrame]) -> Vec<String> {
    stack.iter().map(|f| f.name.clone()).collect()
}

fn attach_xml_node(
    node: ClassNode,
    stack: &mut [XmlFrame],
    roots: &mut Vec<ClassNode>,
) -> Result<(), DictionaryError> {
    let path = frame_path(stack);
    let siblings: &Vec<ClassNode> = match stack.last() {
        Some(frame) => &frame.children,
        None => roots,
    };
    check_new_sibling(siblings, &node.name, &path)?;
    match stack.last_mut() {
        Some(frame) => frame.children.push(node),
        None => roots.push(node),
    }
    Ok(())
}

fn xml_attribute(start: &BytesStart<'_>, key: &str) -> Result<Option<String>, DictionaryError> {
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
// XML writing

fn dictionary_to_xml(dict: &Dictionary) -> String {
    let mut writer = quick_xml::Writer::new_with_indent(Vec::new(), b' ', 2);
    writer
        .write_event(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)))
        .expect("write to Vec");
    let mut root = BytesStart::new("dictionary");
    root.push_attribute(("version", dict.version.as_str()));
    if dict.roots.is_empty() {
        writer.write_event(Event::Empty(root)).expect("write to Vec");
    } else {
        writer
            .write_event(Event::Start(root))
            .expect("write to Vec");
        for node in &dict.roots {
            write_class_xml(&mut writer, node);
        }
        writer
            .write_event(Event::End(BytesStart::new("dictionary").to_end()))
            .expect("write to Vec");
    }
    let mut out = String::from_utf8(writer.into_inner()).expect("XML output is UTF-8");
    out.push('\n');
    out
}

fn write_class_xml(writer: &mut quick_xml::Writer<Vec<u8>>, node: &ClassNode) {
    let mut start = BytesStart::new("class");
    start.push_attribute(("name", node.name.as_str()));
    if node.description.is_none() && node.children.is_empty() {
        writer.write_event(Event::Empty(start)).expect("write to Vec");
        return;
    }
    writer.write_event(Event::Start(start)).expect("write to Vec");
    if let Some(description) = &node.description {
        writer
            .write_event(Event::Start(BytesStart::new("description")))
            .expect("write to Vec");
        writer
            .write_event(Event::Text(BytesText::new(description)))
            .expect("write to Vec");
        writer
            .write_event(Event::End(BytesStart::new("description").to_end()))
            .expect("write to Vec");
    }
    for child in &node.children {
        write_class_xml(writer, child);
    }
    writer
        .write_event(Event::End(BytesStart::new("class").to_end()))
        .expect("write to Vec");
}
