use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::ellbundle::{glued_cover_ledger, GluingDatum};
use crate::numerics::{cover_numerics, destabilizer_scan, NumericsRecord};
use crate::p1split::general_p1_splitting;
use crate::verdict::{StabilityVerdict, VerdictTag};

use super::{Certificate, CertificateDocument, Node, SCHEMA_VERSION};

/// Leaves larger than this are refused rather than checked; it bounds the
/// work done on an untrusted file.
const LEAF_WORK_CAP: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RejectionKind {
    SchemaViolation,
    /// A numeric field disagrees with its recomputation.
    LedgerMismatch,
    BranchSplitMismatch,
    RamifiedNode,
    /// A gluing node claims stability without one stable child and one
    /// semistable child.
    RuleViolation,
    /// The claimed verdict is not the one the checker derives.
    ClaimMismatch,
    /// An elliptic leaf's gluing list is not the adjacent-pair list.
    GluingMismatch,
    /// Some identified pair contains a degree-0 subrepresentation.
    DirtyGluing,
    /// A gluing node whose composite cover has no branch points.
    UnbranchedComposite,
    CharacteristicTooSmall,
    InvalidCharacteristic,
    LimitExceeded,
}

impl RejectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectionKind::SchemaViolation => "SchemaViolation",
            RejectionKind::LedgerMismatch => "LedgerMismatch",
            RejectionKind::BranchSplitMismatch => "BranchSplitMismatch",
            RejectionKind::RamifiedNode => "RamifiedNode",
            RejectionKind::RuleViolation => "RuleViolation",
            RejectionKind::ClaimMismatch => "ClaimMismatch",
            RejectionKind::GluingMismatch => "GluingMismatch",
            RejectionKind::DirtyGluing => "DirtyGluing",
            RejectionKind::UnbranchedComposite => "UnbranchedComposite",
            RejectionKind::CharacteristicTooSmall => "CharacteristicTooSmall",
            RejectionKind::InvalidCharacteristic => "InvalidCharacteristic",
            RejectionKind::LimitExceeded => "LimitExceeded",
        }
    }
}

impl fmt::Display for RejectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The first violated invariant, located by a dotted path from the root
/// (`root.right.left`, or a field path for schema errors).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub kind: RejectionKind,
    pub path: String,
    pub detail: String,
}

impl Rejection {
    pub(crate) fn new(kind: RejectionKind, path: &str, detail: impl Into<String>) -> Self {
        Rejection {
            kind,
            path: path.to_string(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.path, self.detail)
    }
}

impl std::error::Error for Rejection {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub verdict: StabilityVerdict,
    /// Characteristic `p > r` was declared, so the verdict is labelled
    /// strong. Nothing about Frobenius is computed.
    pub strong: bool,
    pub nodes_checked: usize,
}

type Checked<T> = std::result::Result<T, Rejection>;

/// Checks a whole document: version, declared characteristic, then the tree.
pub fn check_document(doc: &CertificateDocument) -> Checked<CheckOutcome> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Rejection::new(
            RejectionKind::SchemaViolation,
            "schema_version",
            format!("expected {SCHEMA_VERSION}, found {}", doc.schema_version),
        ));
    }
    let r = doc.root.numerics.r;
    let strong = match doc.characteristic {
        None | Some(0) => false,
        Some(p) if !is_prime(p) => {
            return Err(Rejection::new(
                RejectionKind::InvalidCharacteristic,
                "characteristic",
                format!("{p} is not prime"),
            ))
        }
        Some(p) if p <= r => {
            return Err(Rejection::new(
                RejectionKind::CharacteristicTooSmall,
                "characteristic",
                format!("characteristic {p} does not exceed the degree {r}"),
            ))
        }
        Some(_) => true,
    };
    let verdict = check_certificate(&doc.root)?;
    let verdict = if strong {
        let tag = verdict.tag();
        let reason = format!(
            "{}; strongly {} in characteristic > r",
            verdict.reason(),
            tag.as_str().to_lowercase()
        );
        StabilityVerdict::new(tag, reason)
    } else {
        verdict
    };
    Ok(CheckOutcome {
        verdict,
        strong,
        nodes_checked: doc.root.size(),
    })
}

/// Re-derives every number and verdict in the tree bottom-up and returns the
/// root verdict, or the first violated invariant.
pub fn check_certificate(c: &Certificate) -> Checked<StabilityVerdict> {
    check_at(c, "root").map(|tag| {
        StabilityVerdict::new(
            tag,
            format!("{tag} for general α: {} node(s) re-derived", c.size()),
        )
    })
}

fn check_at(c: &Certificate, path: &str) -> Checked<VerdictTag> {
    check_record(&c.numerics, path)?;
    let derived = match &c.node {
        Node::Elliptic { r, genus, gluing } => check_elliptic(c, *r, *genus, gluing, path)?,
        Node::P1 { r, genus } => check_p1(c, *r, *genus, path)?,
        Node::Etale { r, h } => check_etale(c, *r, *h, path)?,
        Node::Glue {
            left,
            right,
            node_etale,
            branch_split,
        } => {
            let lt = check_at(left, &format!("{path}.left"))?;
            let rt = check_at(right, &format!("{path}.right"))?;
            check_glue(c, left, right, *node_etale, *branch_split, lt, rt, path)?
        }
    };
    if c.claimed.tag != derived {
        let kind = if matches!(c.node, Node::Glue { .. }) && c.claimed.tag == VerdictTag::Stable {
            RejectionKind::RuleViolation
        } else {
            RejectionKind::ClaimMismatch
        };
        return Err(Rejection::new(
            kind,
            path,
            format!("claimed {}, derived {derived}", c.claimed.tag),
        ));
    }
    if !c.claimed.reason.contains("for general α") {
        return Err(Rejection::new(
            RejectionKind::SchemaViolation,
            &format!("{path}.claimed.reason"),
            "reason lacks the genericity qualifier",
        ));
    }
    Ok(derived)
}

/// Internal consistency of a record on its own terms.
fn check_record(n: &NumericsRecord, path: &str) -> Checked<()> {
    let bad = |detail: String| Err(Rejection::new(RejectionKind::LedgerMismatch, path, detail));
    if n.r < 2 {
        return bad(format!("degree {} < 2", n.r));
    }
    if !n.b.is_multiple_of(2) {
        return bad(format!("branch degree {} is odd", n.b));
    }
    let lhs = n.g as i128 - 1;
    let rhs = n.r as i128 * (n.h as i128 - 1) + n.b as i128 / 2;
    if lhs != rhs {
        return bad(format!(
            "Riemann–Hurwitz fails: g − 1 = {lhs}, r(h − 1) + b/2 = {rhs}"
        ));
    }
    if n.tsch_rank != n.r - 1 {
        return bad(format!("rank {} ≠ r − 1 = {}", n.tsch_rank, n.r - 1));
    }
    if n.tsch_degree as i128 != -(n.b as i128 / 2) {
        return bad(format!("degree {} ≠ −b/2 = −{}", n.tsch_degree, n.b / 2));
    }
    let rank = n.tsch_rank as i128;
    let deg = n.tsch_degree as i128;
    let common = rank.gcd(&deg);
    let (num, den) = (deg / common, rank / common);
    if n.slope_num as i128 != num || n.slope_den as i128 != den {
        return bad(format!(
            "slope {}/{} is not the reduced form of {deg}/{rank}",
            n.slope_num, n.slope_den
        ));
    }
    Ok(())
}

/// The record must equal the numerics recomputed from `(r, g, h)`.
fn expect_numerics(c: &Certificate, r: u64, g: u64, h: u64, path: &str) -> Checked<NumericsRecord> {
    let expected = cover_numerics(r, g, h)
        .map_err(|e| Rejection::new(RejectionKind::LedgerMismatch, path, e.to_string()))?
        .record();
    if let Some(field) = c.numerics.first_difference(&expected) {
        return Err(Rejection::new(
            RejectionKind::LedgerMismatch,
            &format!("{path}.numerics.{field}"),
            format!("recorded {:?}, recomputed {:?}", c.numerics, expected),
        ));
    }
    Ok(expected)
}

fn within_cap(path: &str, cost: u128) -> Checked<()> {
    if cost > LEAF_WORK_CAP {
        return Err(Rejection::new(
            RejectionKind::LimitExceeded,
            path,
            format!("leaf too large to check ({cost} units)"),
        ));
    }
    Ok(())
}

fn check_elliptic(
    c: &Certificate,
    r: u64,
    genus: u64,
    gluing: &[[u64; 2]],
    path: &str,
) -> Checked<VerdictTag> {
    let n = expect_numerics(c, r, genus, 1, path)?;
    if n.b == 0 {
        return Err(Rejection::new(
            RejectionKind::LedgerMismatch,
            &format!("{path}.numerics.b"),
            "an elliptic leaf needs at least one identified pair",
        ));
    }
    let pairs = n.b / 2;
    if gluing.len() as u64 != pairs {
        return Err(Rejection::new(
            RejectionKind::GluingMismatch,
            &format!("{path}.node.gluing"),
            format!("{} pairs listed, b/2 = {pairs}", gluing.len()),
        ));
    }
    within_cap(path, r as u128 * pairs as u128)?;
    let datum = GluingDatum::new(r, gluing.iter().map(|p| (p[0], p[1])).collect()).map_err(|e| {
        Rejection::new(
            RejectionKind::GluingMismatch,
            &format!("{path}.node.gluing"),
            e.to_string(),
        )
    })?;
    let ledger = glued_cover_ledger(&datum)
        .map_err(|e| Rejection::new(RejectionKind::LedgerMismatch, path, e.to_string()))?;
    if ledger.numerics.record() != n {
        return Err(Rejection::new(
            RejectionKind::LedgerMismatch,
            path,
            "gluing ledger disagrees with the leaf numerics",
        ));
    }
    if let Some((i, p)) = ledger
        .pairs
        .iter()
        .enumerate()
        .find(|(_, p)| !p.subreps.is_empty())
    {
        return Err(Rejection::new(
            RejectionKind::DirtyGluing,
            &format!("{path}.node.gluing.{i}"),
            format!("pair {:?} contains characters {:?}", p.pair, p.subreps),
        ));
    }
    let canonical = GluingDatum::adjacent(r, pairs).expect("r ≥ 2 was checked");
    if let Some(i) = (0..gluing.len()).find(|&i| (gluing[i][0], gluing[i][1]) != canonical.pairs()[i]) {
        return Err(Rejection::new(
            RejectionKind::GluingMismatch,
            &format!("{path}.node.gluing.{i}"),
            format!("expected adjacent pair {:?}", canonical.pairs()[i]),
        ));
    }
    destabilizer_scan(r, pairs);
    Ok(if r == 2 || (r - 1).gcd(&pairs) == 1 {
        VerdictTag::Stable
    } else {
        VerdictTag::Semistable
    })
}

fn check_p1(c: &Certificate, r: u64, genus: u64, path: &str) -> Checked<VerdictTag> {
    expect_numerics(c, r, genus, 0, path)?;
    within_cap(path, r as u128 * (genus as u128 + 1))?;
    let split = general_p1_splitting(r, genus)
        .map_err(|e| Rejection::new(RejectionKind::LedgerMismatch, path, e.to_string()))?;
    Ok(if r == 2 {
        VerdictTag::Stable
    } else if split.is_perfectly_balanced() {
        VerdictTag::Semistable
    } else {
        VerdictTag::Balanced
    })
}

fn check_etale(c: &Certificate, r: u64, h: u64, path: &str) -> Checked<VerdictTag> {
    if h == 0 {
        return Err(Rejection::new(
            RejectionKind::LedgerMismatch,
            &format!("{path}.node.h"),
            "no connected étale cover of the projective line of degree ≥ 2",
        ));
    }
    let g = (r as u128 * (h as u128 - 1) + 1)
        .try_into()
        .map_err(|_| Rejection::new(RejectionKind::LimitExceeded, path, "genus overflows"))?;
    expect_numerics(c, r, g, h, path)?;
    Ok(if r == 2 {
        VerdictTag::Stable
    } else {
        VerdictTag::Semistable
    })
}

#[allow(clippy::too_many_arguments)]
fn check_glue(
    c: &Certificate,
    left: &Certificate,
    right: &Certificate,
    node_etale: bool,
    branch_split: [u64; 2],
    lt: VerdictTag,
    rt: VerdictTag,
    path: &str,
) -> Checked<VerdictTag> {
    let (n, ln, rn) = (&c.numerics, &left.numerics, &right.numerics);
    if !node_etale {
        return Err(Rejection::new(
            RejectionKind::RamifiedNode,
            &format!("{path}.node.node_etale"),
            "the cover must be étale over the node",
        ));
    }
    let mismatch = |field: &str, detail: String| {
        Err(Rejection::new(
            RejectionKind::LedgerMismatch,
            &format!("{path}.numerics.{field}"),
            detail,
        ))
    };
    if ln.r != n.r || rn.r != n.r {
        return mismatch("r", format!("degrees {} | {} | {}", n.r, ln.r, rn.r));
    }
    if branch_split != [ln.b, rn.b] {
        return Err(Rejection::new(
            RejectionKind::BranchSplitMismatch,
            &format!("{path}.node.branch_split"),
            format!("split {branch_split:?}, children carry [{}, {}]", ln.b, rn.b),
        ));
    }
    if branch_split[0] as u128 + branch_split[1] as u128 != n.b as u128 {
        return Err(Rejection::new(
            RejectionKind::BranchSplitMismatch,
            &format!("{path}.node.branch_split"),
            format!("split {branch_split:?} does not sum to b = {}", n.b),
        ));
    }
    if ln.h as u128 + rn.h as u128 != n.h as u128 {
        return mismatch("h", format!("{} ≠ {} + {}", n.h, ln.h, rn.h));
    }
    if ln.g as u128 + rn.g as u128 + n.r as u128 - 1 != n.g as u128 {
        return mismatch("g", format!("{} ≠ {} + {} + r − 1", n.g, ln.g, rn.g));
    }
    if n.b == 0 {
        return Err(Rejection::new(
            RejectionKind::UnbranchedComposite,
            path,
            "composite cover is étale; use the étale criterion",
        ));
    }
    let stable_and_semistable = |a: VerdictTag, b: VerdictTag| a == VerdictTag::Stable && b.is_semistable();
    if stable_and_semistable(lt, rt) || stable_and_semistable(rt, lt) {
        Ok(VerdictTag::Stable)
    } else if lt.is_semistable() && rt.is_semistable() {
        Ok(VerdictTag::Semistable)
    } else {
        Err(Rejection::new(
            RejectionKind::RuleViolation,
            path,
            format!("children {lt} and {rt} support no conclusion"),
        ))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d: &u64| d.saturating_mul(*d) <= p)
            .all(|d| !p.is_multiple_of(d))
}
