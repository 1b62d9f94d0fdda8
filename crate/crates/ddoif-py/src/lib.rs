//! Python bindings for the ddoif toolkit.
//!
//! Thin wrappers: each Python class holds the corresponding Rust value and
//! defers to the library for every operation. Parse and codec failures
//! surface as `ValueError` with the library's error message.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ddoif::dictionary::TextFormat;

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_format(name: &str) -> PyResult<TextFormat> {
    name.parse::<TextFormat>().map_err(value_error)
}

/// A hierarchical class dictionary.
#[pyclass(module = "ddoif_py", frozen)]
struct Dictionary {
    inner: ddoif::Dictionary,
}

#[pymethods]
impl Dictionary {
    #[getter]
    fn version(&self) -> String {
        self.inner.version.clone()
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn root_names(&self) -> Vec<String> {
        self.inner.roots.iter().map(|r| r.name.clone()).collect()
    }

    /// All class paths in depth-first pre-order.
    fn paths(&self) -> Vec<String> {
        self.inner.iter().map(|(path, _)| path.to_string()).collect()
    }

    fn contains(&self, path: &str) -> bool {
        ddoif::ClassPath::parse(path)
            .map(|p| self.inner.resolve(&p).is_ok())
            .unwrap_or(false)
    }

    /// Description of the class at `path` (None when it has none).
    /// Raises ValueError when the path does not resolve.
    fn describe(&self, path: &str) -> PyResult<Option<String>> {
        let parsed = ddoif::ClassPath::parse(path).map_err(value_error)?;
        let node = self.inner.resolve(&parsed).map_err(value_error)?;
        Ok(node.description.clone())
    }

    /// Serialize to "yaml", "json", or "xml".
    fn serialize(&self, format: &str) -> PyResult<String> {
        Ok(ddoif::serialize_dictionary(&self.inner, parse_format(format)?))
    }

    /// Naming-convention violations as (path, rule, message) triples.
    fn lint(&self) -> Vec<(String, String, String)> {
        ddoif::lint_names(&self.inner)
            .into_iter()
            .map(|v| (v.path.to_string(), v.rule.to_string(), v.message))
            .collect()
    }

    /// Per-name statistics as (name, occurrences, subtree_size, depth),
    /// most frequent first.
    #[pyo3(signature = (top=None))]
    fn stats(&self, top: Option<usize>) -> Vec<(String, usize, usize, usize)> {
        let rows = ddoif::class_stats(&self.inner);
        let take = top.unwrap_or(rows.len()).min(rows.len());
        rows.into_iter()
            .take(take)
            .map(|r| (r.name, r.occurrences, r.subtree_size, r.depth))
            .collect()
    }

    /// Union of this dictionary and `other`; `other` wins description ties.
    fn merge(&self, other: PyRef<'_, Dictionary>) -> Dictionary {
        Dictionary {
            inner: ddoif::merge_dictionaries(&self.inner, &other.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Dictionary(version={:?}, classes={})",
            self.inner.version,
            self.inner.node_count()
        )
    }
}

/// An item descriptor: classes plus ordered key/value attributes.
#[pyclass(module = "ddoif_py", frozen)]
struct ItemDescriptor {
    inner: ddoif::ItemDescriptor,
}

#[pymethods]
impl ItemDescriptor {
    #[new]
    #[pyo3(signature = (classes, attributes=None, dictionary_version=None))]
    fn new(
        classes: Vec<String>,
        attributes: Option<Vec<(String, String)>>,
        dictionary_version: Option<String>,
    ) -> PyResult<Self> {
        let mut parsed = Vec::with_capacity(classes.len());
        for class in &classes {
            parsed.push(ddoif::ClassPath::parse(class).map_err(value_error)?);
        }
        Ok(ItemDescriptor {
            inner: ddoif::ItemDescriptor {
                classes: parsed,
                attributes: attributes.unwrap_or_default(),
                dictionary_version,
            },
        })
    }

    #[getter]
    fn classes(&self) -> Vec<String> {
        self.inner.classes.iter().map(|p| p.to_string()).collect()
    }

    #[getter]
    fn attributes(&self) -> Vec<(String, String)> {
        self.inner.attributes.clone()
    }

    #[getter]
    fn dictionary_version(&self) -> Option<String> {
        self.inner.dictionary_version.clone()
    }

    fn serialize(&self, format: &str) -> PyResult<String> {
        Ok(ddoif::serialize_descriptor(&self.inner, parse_format(format)?))
    }

    /// Check this descriptor against a dictionary.
    fn validate(&self, dictionary: PyRef<'_, Dictionary>) -> ValidationReport {
        ValidationReport {
            inner: ddoif::validate_descriptor(&self.inner, &dictionary.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "ItemDescriptor(classes={:?}, attributes={}, dictionary_version={:?})",
            self.classes(),
            self.inner.attributes.len(),
            self.inner.dictionary_version
        )
    }
}

/// Result of validating a descriptor against a dictionary.
#[pyclass(module = "ddoif_py", frozen)]
struct ValidationReport {
    inner: ddoif::ValidationReport,
}

#[pymethods]
impl ValidationReport {
    #[getter]
    fn ok(&self) -> bool {
        self.inner.ok()
    }

    /// Findings as (severity, subject, code, message) tuples.
    #[getter]
    fn findings(&self) -> Vec<(String, String, String, String)> {
        self.inner
            .findings
            .iter()
            .map(|f| {
                (
                    f.severity.to_string(),
                    f.subject.to_string(),
                    f.code.to_string(),
                    f.message.clone(),
                )
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "ValidationReport(ok={}, findings={})",
            self.inner.ok(),
            self.inner.findings.len()
        )
    }
}

/// Result of the non-throwing integrity audit of a `.ddof` byte string.
#[pyclass(module = "ddoif_py", frozen)]
struct VerificationReport {
    inner: ddoif::VerificationReport,
}

#[pymethods]
impl VerificationReport {
    #[getter]
    fn ok(&self) -> bool {
        self.inner.ok()
    }

    #[getter]
    fn error_count(&self) -> usize {
        self.inner.error_count()
    }

    #[getter]
    fn warning_count(&self) -> usize {
        self.inner.warning_count()
    }

    /// Findings as (severity, location, code, message) tuples.
    #[getter]
    fn findings(&self) -> Vec<(String, String, String, String)> {
        self.inner
            .findings
            .iter()
            .map(|f| {
                (
                    f.severity.to_string(),
                    f.location.to_string(),
                    f.code.to_string(),
                    f.message.clone(),
                )
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(ok={}, errors={}, warnings={})",
            self.inner.ok(),
            self.inner.error_count(),
            self.inner.warning_count()
        )
    }
}

/// An in-memory `.ddof` container.
#[pyclass(module = "ddoif_py")]
struct DdoifFile {
    inner: ddoif::DdoifFile,
}

#[pymethods]
impl DdoifFile {
    #[new]
    #[pyo3(signature = (descriptor_text=String::new()))]
    fn new(descriptor_text: String) -> Self {
        DdoifFile {
            inner: ddoif::DdoifFile::new(descriptor_text),
        }
    }

    #[getter]
    fn descriptor_text(&self) -> String {
        self.inner.descriptor_text().to_owned()
    }

    /// Append one media chunk; the CRC is computed here and never changes.
    fn append_media(&mut self, tag: &str, data: Vec<u8>) -> PyResult<()> {
        let chunk = ddoif::MediaChunk::new(tag, data).map_err(value_error)?;
        self.inner.media.push(chunk);
        Ok(())
    }

    /// Media chunks as (tag, payload, crc) tuples.
    fn media(&self) -> Vec<(String, Vec<u8>, u32)> {
        self.inner
            .media
            .iter()
            .map(|m| (m.format().name().to_owned(), m.buffer().to_vec(), m.crc()))
            .collect()
    }

    #[getter]
    fn media_count(&self) -> usize {
        self.inner.media.len()
    }

    #[getter]
    fn encoded_len(&self) -> usize {
        self.inner.encoded_len()
    }

    fn encode(&self) -> PyResult<Vec<u8>> {
        ddoif::encode_file(&self.inner).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!(
            "DdoifFile(descriptor={} bytes, media={})",
            self.inner.descriptor.len(),
            self.inner.media.len()
        )
    }
}

#[pyfunction]
fn compute_crc32(data: Vec<u8>) -> u32 {
    ddoif::compute_crc32(&data)
}

#[pyfunction]
#[pyo3(signature = (text, format=None))]
fn parse_dictionary(text: &str, format: Option<&str>) -> PyResult<Dictionary> {
    let format = format.map(parse_format).transpose()?;
    Ok(Dictionary {
        inner: ddoif::parse_dictionary(text, format).map_err(value_error)?,
    })
}

#[pyfunction]
fn seed_dictionary() -> Dictionary {
    Dictionary {
        inner: ddoif::seed_dictionary(),
    }
}

#[pyfunction]
fn parse_descriptor(text: &str) -> PyResult<ItemDescriptor> {
    Ok(ItemDescriptor {
        inner: ddoif::parse_descriptor(text).map_err(value_error)?,
    })
}

#[pyfunction]
fn decode_file(data: Vec<u8>) -> PyResult<DdoifFile> {
    Ok(DdoifFile {
        inner: ddoif::decode_file(&data).map_err(value_error)?,
    })
}

#[pyfunction]
fn verify_file(data: Vec<u8>) -> VerificationReport {
    VerificationReport {
        inner: ddoif::verify_file(&data),
    }
}

#[pymodule]
pub fn ddoif_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Dictionary>()?;
    m.add_class::<ItemDescriptor>()?;
    m.add_class::<ValidationReport>()?;
    m.add_class::<VerificationReport>()?;
    m.add_class::<DdoifFile>()?;
    m.add_function(wrap_pyfunction!(compute_crc32, m)?)?;
    m.add_function(wrap_pyfunction!(parse_dictionary, m)?)?;
    m.add_function(wrap_pyfunction!(seed_dictionary, m)?)?;
    m.add_function(wrap_pyfunction!(parse_descriptor, m)?)?;
    m.add_function(wrap_pyfunction!(decode_file, m)?)?;
    m.add_function(wrap_pyfunction!(verify_file, m)?)?;
    m.add("SIGNATURE", ddoif::SIGNATURE.to_vec())?;
    Ok(())
}
