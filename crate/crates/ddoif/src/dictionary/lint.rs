//! Naming-convention checks for dictionary trees.
//!
//! The convention: first-level classes are written entirely in lowercase;
//! deeper classes capitalize the first letter of every whitespace-separated
//! word (only the first letter of a hyphenated compound counts, so
//! "A-line Dress" conforms). Names must be non-empty, free of the path
//! separator `/`, and unique among siblings.
//!
//! Violations are findings, not failures — a non-conforming dictionary
//! still loads and resolves, which is what makes repair possible.

use std::fmt;

use super::{ClassNode, ClassPath, Dictionary, PATH_SEPARATOR};

/// The five checks applied to every class name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LintRule {
    /// A first-level class contains uppercase letters.
    RootNotLowercase,
    /// A deeper class has a word starting with a lowercase letter.
    SubclassNotCapitalized,
    /// Two siblings share a name.
    DuplicateSibling,
    /// A class name is the empty string.
    EmptyName,
    /// A class name contains the reserved separator `/`.
    IllegalCharacter,
}

impl fmt::Display for LintRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LintRule::RootNotLowercase => "root-not-lowercase",
            LintRule::SubclassNotCapitalized => "subclass-not-capitalized",
            LintRule::DuplicateSibling => "duplicate-sibling",
            LintRule::EmptyName => "empty-name",
            LintRule::IllegalCharacter => "illegal-character",
        })
    }
}

/// One rule breach at one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LintViolation {
    /// Path of the offending node. For a duplicated sibling this equals the
    /// first occurrence's path — that ambiguity is the problem being
    /// reported.
    pub path: ClassPath,
    pub rule: LintRule,
    pub message: String,
}

/// Check every class name against the naming convention, returning findings
/// in depth-first order. Empty iff the dictionary conforms.
pub fn lint_names(dict: &Dictionary) -> Vec<LintViolation> {
    let mut violations = Vec::new();
    let mut path = Vec::new();
    lint_level(&dict.roots, 1, &mut path, &mut violations);
    violations
}

fn lint_level(
    level: &[ClassNode],
    depth: usize,
    path: &mut Vec<String>,
    out: &mut Vec<LintViolation>,
) {
    for (index, node) in level.iter().enumerate() {
        path.push(node.name.clone());
        let at = ClassPath::from_segments_unchecked(path.clone());
        lint_own_name(node, depth, &at, out);
        if level[..index].iter().any(|prev| prev.name == node.name) {
            out.push(LintViolation {
                path: at.clone(),
                rule: LintRule::DuplicateSibling,
                message: format!("name \"{}\" repeats among its siblings", node.name),
            });
        }
        lint_level(&node.children, depth + 1, path, out);
        path.pop();
    }
}

fn lint_own_name(node: &ClassNode, depth: usize, at: &ClassPath, out: &mut Vec<LintViolation>) {
    if node.name.is_empty() {
        out.push(LintViolation {
            path: at.clone(),
            rule: LintRule::EmptyName,
            message: "class name is empty".to_owned(),
        });
        // No casing to check on an empty name.
        return;
    }
    if node.name.contains(PATH_SEPARATOR) {
        out.push(LintViolation {
            path: at.clone(),
            rule: LintRule::IllegalCharacter,
            message: format!(
                "name \"{}\" contains the reserved path separator '/'",
                node.name
            ),
        });
    }
    if depth == 1 {
        if node.name.chars().any(char::is_uppercase) {
            out.push(LintViolation {
                path: at.clone(),
                rule: LintRule::RootNotLowercase,
                message: format!("first-level class \"{}\" should be all lowercase", node.name),
            });
        }
    } else if let Some(word) = first_uncapitalized_word(&node.name) {
        out.push(LintViolation {
            path: at.clone(),
            rule: LintRule::SubclassNotCapitalized,
            message: format!(
                "word \"{word}\" in \"{}\" should start with a capital letter",
                node.name
            ),
        });
    }
}

/// First whitespace-separated word whose leading character is a lowercase
/// letter, if any. Leading non-letters (digits, "3D"-style terms) pass, and
/// only the first letter of a hyphenated compound is inspected.
fn first_uncapitalized_word(name: &str) -> Option<&str> {
    name.split_whitespace()
        .find(|word| matches!(word.chars().next(), Some(c) if c.is_lowercase()))
}
