//! Degeneration certificates for the stability of the Tschirnhausen bundle
//! of a general cover of a curve of genus `h ≥ 1`.
//!
//! A certificate is a tree. Leaves are covers whose verdict is decided
//! directly (an elliptic gluing construction, a genus-0 base, or an étale
//! cover); an internal node specializes the base to two curves meeting at a
//! node over which the cover is étale. Such a node is stable when one side is
//! stable and the other semistable.
//!
//! [`build_certificate`] produces trees, [`check_certificate`] re-derives every
//! number and verdict from scratch, and [`to_canonical_string`] /
//! [`from_str`] move them through the on-disk schema.

mod build;
mod check;
mod schema;

use serde::{Deserialize, Serialize};

use crate::numerics::NumericsRecord;
use crate::verdict::VerdictTag;

pub use build::{build_certificate, build_certificate_with};
pub use check::{check_certificate, check_document, CheckOutcome, Rejection, RejectionKind};
pub use schema::{from_str, to_canonical_string, to_value, SCHEMA_VERSION};

/// Claimed verdict of a subtree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub tag: VerdictTag,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub claimed: Claim,
    /// Invariants of the cover this subtree certifies.
    pub numerics: NumericsRecord,
    pub node: Node,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Node {
    /// Degree-`r` genus-`genus` cover of an elliptic curve built by
    /// identifying the listed sheet pairs of a cyclic étale cover.
    Elliptic {
        r: u64,
        genus: u64,
        gluing: Vec<[u64; 2]>,
    },
    /// General degree-`r` genus-`genus` cover of the projective line.
    P1 { r: u64, genus: u64 },
    /// Étale degree-`r` cover of a genus-`h` curve.
    Etale { r: u64, h: u64 },
    /// Cover of two curves meeting at one node.
    Glue {
        left: Box<Certificate>,
        right: Box<Certificate>,
        node_etale: bool,
        branch_split: [u64; 2],
    },
}

impl Node {
    pub fn kind(&self) -> &'static str {
        match self {
            Node::Elliptic { .. } => "elliptic",
            Node::P1 { .. } => "p1",
            Node::Etale { .. } => "etale",
            Node::Glue { .. } => "glue",
        }
    }
}

/// Top-level certificate file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema_version: u32,
    /// Declared characteristic of the ground field; `None` or `0` means
    /// characteristic zero.
    pub characteristic: Option<u64>,
    pub root: Certificate,
}

impl Certificate {
    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match &self.node {
            Node::Glue { left, right, .. } => 1 + left.size() + right.size(),
            _ => 1,
        }
    }
}
