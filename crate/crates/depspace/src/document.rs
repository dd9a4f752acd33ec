//! File formats: one JSON document family for spaces, graphs, and
//! matrices, with canonical serialization and a content hash.
//!
//! Canonical form of a space document: a single JSON line with fields
//! version, elements, delta, provenance (omitted when absent); elements
//! sorted, each delta member sorted, members sorted lexicographically.
//! The content hash is the SHA-256 of the canonical line with the
//! provenance field stripped, so regenerating a space with different
//! provenance text never changes its hash.

use crate::error::Error;
use crate::instances::{BinaryMatrixSpec, GraphSpec};
use crate::space::Space;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub version: u32,
    pub elements: Vec<String>,
    pub delta: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub version: u32,
    #[serde(rename = "vertex-count")]
    pub vertex_count: u64,
    pub edges: Vec<(u64, u64, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub version: u32,
    pub rows: Vec<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn check_version(found: u32) -> Result<(), Error> {
    if found != FORMAT_VERSION {
        return Err(Error::Version {
            found,
            supported: FORMAT_VERSION,
        });
    }
    Ok(())
}

fn syntax_error(e: serde_json::Error) -> Error {
    Error::Syntax {
        detail: e.to_string(),
    }
}

impl SpaceDocument {
    pub fn parse(text: &str) -> Result<SpaceDocument, Error> {
        let doc: SpaceDocument = serde_json::from_str(text).map_err(syntax_error)?;
        check_version(doc.version)?;
        Ok(doc)
    }

    pub fn to_space(&self) -> Result<Space, Error> {
        Space::new(self.elements.clone(), &self.delta)
    }

    pub fn from_space(space: &Space, provenance: Option<&str>) -> SpaceDocument {
        let mut delta: Vec<Vec<String>> =
            space.delta().iter().map(|&d| space.labels_of(d)).collect();
        delta.sort();
        SpaceDocument {
            version: FORMAT_VERSION,
            elements: space.labels().to_vec(),
            delta,
            provenance: provenance.map(str::to_string),
        }
    }
}

/// Parses and validates a space file.
pub fn parse_space(text: &str) -> Result<Space, Error> {
    SpaceDocument::parse(text)?.to_space()
}

/// The canonical single-line serialization, newline-terminated.
pub fn serialize_space(space: &Space, provenance: Option<&str>) -> String {
    let doc = SpaceDocument::from_space(space, provenance);
    let mut line = serde_json::to_string(&doc).expect("space documents always serialize");
    line.push('\n');
    line
}

/// SHA-256 hex of the canonical serialization without provenance.
pub fn space_hash(space: &Space) -> String {
    let line = serialize_space(space, None);
    let digest = Sha256::digest(line.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

pub fn parse_graph(text: &str) -> Result<GraphSpec, Error> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(syntax_error)?;
    check_version(doc.version)?;
    Ok(GraphSpec {
        vertex_count: doc.vertex_count,
        edges: doc.edges,
    })
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrixSpec, Error> {
    let doc: MatrixDocument = serde_json::from_str(text).map_err(syntax_error)?;
    check_version(doc.version)?;
    Ok(BinaryMatrixSpec {
        rows: doc.rows,
        labels: doc.labels,
    })
}
