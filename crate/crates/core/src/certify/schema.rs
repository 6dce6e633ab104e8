use serde_json::Value;

use crate::error::{Error, Result};

use super::CertificateDocument;

pub const SCHEMA_VERSION: u32 = 1;

pub fn to_value(doc: &CertificateDocument) -> Value {
    serde_json::to_value(doc).expect("certificates contain only integers, strings and bools")
}

/// Pretty-printed JSON with sorted keys and a trailing newline. Equal trees
/// give byte-identical text.
pub fn to_canonical_string(doc: &CertificateDocument) -> String {
    // Going through `Value` sorts object keys.
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("values always serialize");
    s.push('\n');
    s
}

/// Parses a certificate document, reporting the location of the first
/// schema violation.
pub fn from_str(text: &str) -> Result<CertificateDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: CertificateDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::SchemaViolation {
            path: if path == "." { "$".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::SchemaViolation {
            path: "schema_version".into(),
            message: format!("unsupported version {}", doc.schema_version),
        });
    }
    Ok(doc)
}
