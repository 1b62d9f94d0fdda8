use std::path::Path;

use ddoif::{class_stats, lint_names, serialize_dictionary, TextFormat};

use super::{load_dictionary, EXIT_FINDINGS, EXIT_OK};

pub fn lint(path: &Path) -> i32 {
    let dictionary = match load_dictionary(path) {
        Ok(dictionary) => dictionary,
        Err(code) => return code,
    };
    let violations = lint_names(&dictionary);
    if violations.is_empty() {
        println!("{}: clean", path.display());
        return EXIT_OK;
    }
    for violation in &violations {
        println!("{}: {}: {}", violation.path, violation.rule, violation.message);
    }
    println!("{} violation(s)", violations.len());
    EXIT_FINDINGS
}

pub fn stats(path: &Path, top: Option<usize>) -> i32 {
    let dictionary = match load_dictionary(path) {
        Ok(dictionary) => dictionary,
        Err(code) => return code,
    };
    let rows = class_stats(&dictionary);
    let shown = top.unwrap_or(rows.len()).min(rows.len());
    println!("{:<28} {:>6} {:>8} {:>6}", "name", "count", "subtree", "depth");
    for row in &rows[..shown] {
        println!(
            "{:<28} {:>6} {:>8} {:>6}",
            row.name, row.occurrences, row.subtree_size, row.depth
        );
    }
    EXIT_OK
}

pub fn convert(path: &Path, to: TextFormat) -> i32 {
    let dictionary = match load_dictionary(path) {
        Ok(dictionary) => dictionary,
        Err(code) => return code,
    };
    print!("{}", serialize_dictionary(&dictionary, to));
    EXIT_OK
}
