//! Instance files: a JSON object `{"name": ..., "facets": [[...]], "classes": [[...]]}`,
//! or plain text with one whitespace- or comma-separated facet per line.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use rainbow_core::{validate_coloring, Coloring, ColoringViolation, ComplexError, SimplicialComplex};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    Complex { path: String, source: ComplexError },
    #[error("{path}: invalid coloring: {}", render(.violations))]
    Coloring { path: String, violations: Vec<ColoringViolation> },
    #[error("{path}: no facets")]
    Empty { path: String },
}

fn render(v: &[ColoringViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Vertex labels may be written as strings or as non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Text(String),
    Number(u64),
}

impl Label {
    pub fn into_string(self) -> String {
        match self {
            Label::Text(s) => s,
            Label::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub facets: Vec<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<Label>>>,
}

impl InstanceFile {
    pub fn from_complex(name: Option<String>, k: &SimplicialComplex, c: Option<&Coloring>) -> Self {
        let text = |vs: &[rainbow_core::VertexId]| vs.iter().map(|v| Label::Text(v.0.clone())).collect();
        InstanceFile {
            name,
            facets: k.facet_labels().iter().map(|f| text(f)).collect(),
            classes: c.map(|c| c.classes().iter().map(|cl| text(cl)).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: Option<String>,
    pub complex: SimplicialComplex,
    pub coloring: Option<Coloring>,
    /// Non-fatal coloring findings, such as empty classes.
    pub warnings: Vec<ColoringViolation>,
}

/// Reads `path`, or standard input when `path` is `-`.
pub fn read_source(path: &str) -> Result<String, InstanceError> {
    let io_err = |source| InstanceError::Io { path: path.to_string(), source };
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(Path::new(path)).map_err(io_err)
    }
}

pub fn parse_instance(path: &str) -> Result<Instance, InstanceError> {
    let text = read_source(path)?;
    parse_instance_str(path, &text)
}

/// `origin` only labels error messages.
pub fn parse_instance_str(origin: &str, text: &str) -> Result<Instance, InstanceError> {
    let file = if text.trim_start().starts_with('{') {
        serde_json::from_str::<InstanceFile>(text).map_err(|e| InstanceError::Parse {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?
    } else {
        parse_facet_lines(origin, text)?
    };
    build(origin, file)
}

/// One facet per line; `#` starts a comment; labels separated by commas
/// and/or whitespace, optionally wrapped in brackets.
pub fn parse_facet_lines(origin: &str, text: &str) -> Result<InstanceFile, InstanceError> {
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let stripped = line.trim().trim_start_matches(['[', '(', '{']).trim_end_matches([']', ')', '}']);
        if stripped.trim().is_empty() {
            continue;
        }
        if let Some(col) = stripped.find(['[', ']', '(', ')', '{', '}', '"']) {
            let offset = line.find(stripped).unwrap_or(0);
            return Err(InstanceError::Parse {
                path: origin.to_string(),
                line: i + 1,
                column: offset + col + 1,
                message: "unexpected delimiter inside a facet".into(),
            });
        }
        let facet: Vec<Label> = stripped
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| Label::Text(s.to_string()))
            .collect();
        facets.push(facet);
    }
    Ok(InstanceFile { name: None, facets, classes: None })
}

fn build(origin: &str, file: InstanceFile) -> Result<Instance, InstanceError> {
    if file.facets.is_empty() {
        return Err(InstanceError::Empty { path: origin.to_string() });
    }
    let facets: Vec<Vec<String>> =
        file.facets.into_iter().map(|f| f.into_iter().map(Label::into_string).collect()).collect();
    let complex = SimplicialComplex::from_facets(facets)
        .map_err(|source| InstanceError::Complex { path: origin.to_string(), source })?;
    let (coloring, warnings) = match file.classes {
        None => (None, Vec::new()),
        Some(classes) => {
            let c = Coloring::new(classes.into_iter().map(|cl| cl.into_iter().map(Label::into_string)));
            let (errors, warnings): (Vec<_>, Vec<_>) =
                validate_coloring(&complex, &c).into_iter().partition(ColoringViolation::is_error);
            if !errors.is_empty() {
                return Err(InstanceError::Coloring { path: origin.to_string(), violations: errors });
            }
            (Some(c), warnings)
        }
    };
    Ok(Instance { name: file.name, complex, coloring, warnings })
}
