//! The hierarchical DDOIF vocabulary tree.
//!
//! A [`Dictionary`] holds an ordered forest of [`ClassNode`]s. The first
//! level ("main classes") is written in lowercase; every deeper class
//! capitalizes the first letter of each word. Nodes are addressed by
//! [`ClassPath`], a `/`-separated route from a root to a target node
//! ("clothing/Dress/A-line Dress"). `/` is therefore banned from class
//! names, and sibling names must be unique so that resolution is
//! well-defined.
//!
//! Values are plain immutable data: cloning is deep, equality is structural
//! (names, descriptions, child order, version), and no operation mutates its
//! input.

mod formats;
mod lint;
mod seed;

pub use formats::{detect_format, parse_dictionary, serialize_dictionary, TextFormat};
pub use lint::{lint_names, LintRule, LintViolation};
pub use seed::seed_dictionary;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Character reserved as the [`ClassPath`] separator; never valid inside a
/// class name.
pub const PATH_SEPARATOR: char = '/';

/// Errors from dictionary parsing, path handling, and resolution.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DictionaryError {
    /// The document is not well-formed in its serialization format.
    #[error("{format} syntax error: {detail}")]
    Syntax { format: TextFormat, detail: String },
    /// The document is well-formed but does not encode a dictionary
    /// (for example, a class entry without a name).
    #[error("invalid dictionary structure: {detail}")]
    Structure { detail: String },
    /// Two siblings share a name, which would make path resolution
    /// ambiguous.
    #[error("duplicate sibling class \"{name}\" under {parent}")]
    DuplicateSibling { name: String, parent: String },
    /// The textual form of a class path is malformed.
    #[error("invalid class path \"{text}\": {detail}")]
    InvalidPath { text: String, detail: String },
    /// A path did not resolve; `resolved` is the deepest prefix that did.
    #[error("class \"{path}\" not found ({})", prefix_note(.resolved))]
    NotFound { path: ClassPath, resolved: Vec<String> },
}

fn prefix_note(resolved: &[String]) -> String {
    if resolved.is_empty() {
        "no prefix resolved".to_owned()
    } else {
        format!("deepest resolved prefix: \"{}\"", resolved.join("/"))
    }
}

/// One class in the vocabulary tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassNode {
    /// Class label, e.g. `"Dress"`. Non-empty and free of `/` in a
    /// well-formed dictionary; violations load anyway and are reported by
    /// [`lint_names`].
    pub name: String,
    /// Optional free text about the class. The empty string normalizes to
    /// `None` when parsing.
    pub description: Option<String>,
    /// Ordered subclasses; empty for a leaf.
    pub children: Vec<ClassNode>,
}

impl ClassNode {
    pub fn new(name: impl Into<String>) -> Self {
        ClassNode {
            name: name.into(),
            description: None,
            children: Vec::new(),
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = Some(description.into());
        self
    }

    pub fn with_children(mut self, children: Vec<ClassNode>) -> Self {
        self.children = children;
        self
    }

    /// Case-sensitive lookup of a direct child.
    pub fn child(&self, name: &str) -> Option<&ClassNode> {
        self.children.iter().find(|c| c.name == name)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of nodes in this subtree, including the node itself.
    pub fn subtree_size(&self) -> usize {
        1 + self.children.iter().map(ClassNode::subtree_size).sum::<usize>()
    }
}

/// A complete vocabulary: an ordered forest of first-level classes plus an
/// edition tag.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dictionary {
    /// Edition tag, e.g. `"seed-0.1"`. Empty when the source document
    /// carried none.
    pub version: String,
    /// Ordered first-level classes.
    pub roots: Vec<ClassNode>,
}

impl Dictionary {
    pub fn new(version: impl Into<String>) -> Self {
        Dictionary {
            version: version.into(),
            roots: Vec::new(),
        }
    }

    pub fn with_roots(mut self, roots: Vec<ClassNode>) -> Self {
        self.roots = roots;
        self
    }

    /// Case-sensitive lookup of a first-level class.
    pub fn root(&self, name: &str) -> Option<&ClassNode> {
        self.roots.iter().find(|r| r.name == name)
    }

    /// Total number of classes in the dictionary.
    pub fn node_count(&self) -> usize {
        self.roots.iter().map(ClassNode::subtree_size).sum()
    }

    /// Resolve a path to its node. See [`resolve_path`].
    pub fn resolve(&self, path: &ClassPath) -> Result<&ClassNode, DictionaryError> {
        resolve_path(self, path)
    }

    /// Depth-first (pre-order) enumeration of every node with its full path.
    pub fn iter(&self) -> DfsIter<'_> {
        DfsIter::new(&self.roots)
    }
}

/// Slash-separated address of a node, from a root down.
///
/// Always has at least one segment and never an empty one; construction
/// enforces this.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassPath {
    segments: Vec<String>,
}

impl ClassPath {
    /// Build a path from pre-split segments.
    pub fn new(segments: Vec<String>) -> Result<Self, DictionaryError> {
        let text = segments.join("/");
        if segments.is_empty() {
            return Err(DictionaryError::InvalidPath {
                text,
                detail: "a class path needs at least one segment".to_owned(),
            });
        }
        for segment in &segments {
            if segment.is_empty() {
                return Err(DictionaryError::InvalidPath {
                    text,
                    detail: "empty path segment".to_owned(),
                });
            }
            if segment.contains(PATH_SEPARATOR) {
                return Err(DictionaryError::InvalidPath {
                    text,
                    detail: format!("segment \"{segment}\" contains the reserved separator '/'"),
                });
            }
        }
        Ok(ClassPath { segments })
    }

    /// Parse the textual `a/b/c` form.
    pub fn parse(text: &str) -> Result<Self, DictionaryError> {
        if text.is_empty() {
            return Err(DictionaryError::InvalidPath {
                text: text.to_owned(),
                detail: "a class path needs at least one segment".to_owned(),
            });
        }
        let segments: Vec<String> = text.split(PATH_SEPARATOR).map(str::to_owned).collect();
        if segments.iter().any(String::is_empty) {
            return Err(DictionaryError::InvalidPath {
                text: text.to_owned(),
                detail: "empty path segment".to_owned(),
            });
        }
        Ok(ClassPath { segments })
    }

    pub fn segments(&self) -> &[String] {
        &self.segments
    }

    /// Depth of the addressed node; roots are at depth 1.
    pub fn depth(&self) -> usize {
        self.segments.len()
    }

    /// The path of this node's child with the given name.
    pub fn join(&self, segment: impl Into<String>) -> ClassPath {
        let mut segments = self.segments.clone();
        segments.push(segment.into());
        ClassPath { segments }
    }

    /// Internal constructor for callers that guarantee the invariants
    /// (used by the tree walker, whose segments come from real nodes).
    pub(crate) fn from_segments_unchecked(segments: Vec<String>) -> ClassPath {
        ClassPath { segments }
    }
}

impl fmt::Display for ClassPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.segments.join("/"))
    }
}

impl FromStr for ClassPath {
    type Err = DictionaryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassPath::parse(s)
    }
}

/// Walk a path down the tree, matching each segment case-sensitively one
/// level at a time.
///
/// On failure the returned [`DictionaryError::NotFound`] carries the deepest
/// prefix that did resolve.
pub fn resolve_path<'a>(
    dict: &'a Dictionary,
    path: &ClassPath,
) -> Result<&'a ClassNode, DictionaryError> {
    let mut resolved: Vec<String> = Vec::new();
    let mut level = &dict.roots;
    let mut current: Option<&ClassNode> = None;
    for segment in path.segments() {
        match level.iter().find(|n| &n.name == segment) {
            Some(node) => {
                resolved.push(node.name.clone());
                level = &node.children;
                current = Some(node);
            }
            None => {
                return Err(DictionaryError::NotFound {
                    path: path.clone(),
                    resolved,
                })
            }
        }
    }
    // Path construction guarantees at least one segment, so current is set.
    Ok(current.expect("non-empty path"))
}

/// Pre-order depth-first iterator over `(path, node)` pairs.
pub struct DfsIter<'a> {
    // Stack entries are (node, depth); depth is the node's level, 1-based.
    stack: Vec<(&'a ClassNode, usize)>,
    segments: Vec<String>,
}

impl<'a> DfsIter<'a> {
    fn new(roots: &'a [ClassNode]) -> Self {
        DfsIter {
            stack: roots.iter().rev().map(|r| (r, 1)).collect(),
            segments: Vec::new(),
        }
    }
}

impl<'a> Iterator for DfsIter<'a> {
    type Item = (ClassPath, &'a ClassNode);

    fn next(&mut self) -> Option<Self::Item> {
        let (node, depth) = self.stack.pop()?;
        self.segments.truncate(depth - 1);
        self.segments.push(node.name.clone());
        for child in node.children.iter().rev() {
            self.stack.push((child, depth + 1));
        }
        let path = ClassPath::from_segments_unchecked(self.segments.clone());
        Some((path, node))
    }
}

/// One row of the [`class_stats`] table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStats {
    pub name: String,
    /// Number of nodes bearing this name anywhere in the tree.
    pub occurrences: usize,
    /// Node count of the subtree(s) rooted at those nodes, including the
    /// nodes themselves; summed when the name occurs more than once.
    pub subtree_size: usize,
    /// Shallowest level at which the name occurs; roots are at depth 1.
    pub depth: usize,
}

/// Per-name occurrence statistics over the whole tree.
///
/// Rows are ordered by descending occurrence count, ties broken
/// lexicographically by name.
pub fn class_stats(dict: &Dictionary) -> Vec<ClassStats> {
    use std::collections::HashMap;

    let mut table: HashMap<&str, ClassStats> = HashMap::new();
    for root in &dict.roots {
        collect_stats(root, 1, &mut table);
    }
    let mut rows: Vec<ClassStats> = table.into_values().collect();
    rows.sort_by(|a, b| {
        b.occurrences
            .cmp(&a.occurrences)
            .then_with(|| a.name.cmp(&b.name))
    });
    rows
}

fn collect_stats<'a>(node: &'a ClassNode, depth: usize, table: &mut std::collections::HashMap<&'a str, ClassStats>) {
    let size = node.subtree_size();
    table
        .entry(&node.name)
        .and_modify(|row| {
            row.occurrences += 1;
            row.subtree_size += size;
            row.depth = row.depth.min(depth);
        })
        .or_insert_with(|| ClassStats {
            name: node.name.clone(),
            occurrences: 1,
            subtree_size: size,
            depth,
        });
    for child in &node.children {
        collect_stats(child, depth + 1, table);
    }
}

/// A description that `merge_dictionaries` replaced, kept so callers can
/// audit what the merge overwrote.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeNote {
    /// Path of the node whose description changed.
    pub path: ClassPath,
    /// The first operand's description before it was replaced.
    pub replaced_description: String,
}

/// Union of two dictionaries.
///
/// Nodes with equal paths are merged; when both carry a description the
/// second operand's wins. Subtrees present only in `b` are appended after
/// `a`'s children, preserving order. `merge(d, d)` is structurally equal to
/// `d`, and the empty dictionary is an identity on either side.
pub fn merge_dictionaries(a: &Dictionary, b: &Dictionary) -> Dictionary {
    merge_dictionaries_with_log(a, b).0
}

/// [`merge_dictionaries`], also returning one [`MergeNote`] per description
/// of `a` that a differing description of `b` replaced.
pub fn merge_dictionaries_with_log(a: &Dictionary, b: &Dictionary) -> (Dictionary, Vec<MergeNote>) {
    let mut log = Vec::new();
    let roots = merge_levels(&a.roots, &b.roots, &mut Vec::new(), &mut log);
    let version = if b.roots.is_empty() {
        a.version.clone()
    } else {
        b.version.clone()
    };
    (Dictionary { version, roots }, log)
}

fn merge_levels(
    a_level: &[ClassNode],
    b_level: &[ClassNode],
    path: &mut Vec<String>,
    log: &mut Vec<MergeNote>,
) -> Vec<ClassNode> {
    let mut merged: Vec<ClassNode> = a_level.to_vec();
    for b_node in b_level {
        if let Some(a_node) = merged.iter_mut().find(|n| n.name == b_node.name) {
            path.push(b_node.name.clone());
            if let Some(b_desc) = &b_node.description {
                if let Some(a_desc) = &a_node.description {
                    if a_desc != b_desc {
                        log.push(MergeNote {
                            path: ClassPath::from_segments_unchecked(path.clone()),
                            replaced_description: a_desc.clone(),
                        });
                    }
                }
                a_node.description = Some(b_desc.clone());
            }
            a_node.children = merge_levels(&a_node.children, &b_node.children, path, log);
            path.pop();
        } else {
            merged.push(b_node.clone());
        }
    }
    merged
}
