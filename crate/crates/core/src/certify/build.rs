use crate::ellbundle::elliptic_semistability_verdict;
use crate::error::{Error, Result};
use crate::numerics::{branch_count, cover_numerics};
use crate::p1split::general_p1_splitting;
use crate::verdict::VerdictTag;

use super::{Certificate, CertificateDocument, Claim, Node, SCHEMA_VERSION};

/// Certificate for the general degree-`r` genus-`g` cover of a genus-`h`
/// curve, in characteristic zero.
pub fn build_certificate(r: u64, g: u64, h: u64) -> Result<CertificateDocument> {
    build_certificate_with(r, g, h, None)
}

/// As [`build_certificate`], declaring the characteristic of the ground
/// field. A positive characteristic must exceed `r`.
pub fn build_certificate_with(
    r: u64,
    g: u64,
    h: u64,
    characteristic: Option<u64>,
) -> Result<CertificateDocument> {
    if r < 2 {
        return Err(Error::InvalidDegree { degree: r, min: 2 });
    }
    if let Some(p) = characteristic {
        if p != 0 && p <= r {
            return Err(Error::CharacteristicTooSmall { p, r });
        }
    }
    let b = branch_count(r, g, h)?;
    if b == 0 {
        return Err(Error::EmptyHurwitzSpace { r, g, h });
    }
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        characteristic,
        root: build_branched(r, b, h)?,
    })
}

/// Genus of a degree-`r` cover of a genus-`h` curve with branch degree `b`.
fn source_genus(r: u64, b: u64, h: u64) -> u64 {
    let g = r as i128 * (h as i128 - 1) + b as i128 / 2 + 1;
    u64::try_from(g).expect("caller passes realizable data")
}

fn build_branched(r: u64, b: u64, h: u64) -> Result<Certificate> {
    let g = source_genus(r, b, h);
    match h {
        0 => p1_leaf(r, g),
        1 => elliptic_leaf(r, g),
        _ => {
            // Specialize to an elliptic curve carrying two branch points
            // glued to a genus h−1 curve carrying the rest.
            let left = elliptic_leaf(r, 2)?;
            let right = if b == 2 {
                etale_leaf(r, h - 1)?
            } else {
                build_branched(r, b - 2, h - 1)?
            };
            let numerics = cover_numerics(r, g, h)?;
            Ok(Certificate {
                claimed: Claim {
                    tag: VerdictTag::Stable,
                    reason: format!(
                        "stable for general α: one component stable ({}), the other {} over an étale node",
                        left.claimed.tag, right.claimed.tag
                    ),
                },
                numerics: numerics.record(),
                node: Node::Glue {
                    branch_split: [left.numerics.b, right.numerics.b],
                    left: Box::new(left),
                    right: Box::new(right),
                    node_etale: true,
                },
            })
        }
    }
}

fn elliptic_leaf(r: u64, genus: u64) -> Result<Certificate> {
    let numerics = cover_numerics(r, genus, 1)?;
    let pairs = numerics.b() / 2;
    let ev = elliptic_semistability_verdict(r, pairs)?;
    let tag = if ev.coprime || r == 2 {
        VerdictTag::Stable
    } else {
        VerdictTag::Semistable
    };
    Ok(Certificate {
        claimed: Claim {
            tag,
            reason: ev.verdict.reason().to_string(),
        },
        numerics: numerics.record(),
        node: Node::Elliptic {
            r,
            genus,
            gluing: ev.ledger.pairs.iter().map(|p| [p.pair.0, p.pair.1]).collect(),
        },
    })
}

fn p1_leaf(r: u64, genus: u64) -> Result<Certificate> {
    let numerics = cover_numerics(r, genus, 0)?;
    let split = general_p1_splitting(r, genus)?;
    let tag = if r == 2 {
        VerdictTag::Stable
    } else if split.is_perfectly_balanced() {
        VerdictTag::Semistable
    } else {
        VerdictTag::Balanced
    };
    Ok(Certificate {
        claimed: Claim {
            tag,
            reason: format!("splitting type {split} for general α"),
        },
        numerics: numerics.record(),
        node: Node::P1 { r, genus },
    })
}

fn etale_leaf(r: u64, h: u64) -> Result<Certificate> {
    let numerics = cover_numerics(r, r * (h - 1) + 1, h)?;
    let tag = if r == 2 {
        VerdictTag::Stable
    } else {
        VerdictTag::Semistable
    };
    Ok(Certificate {
        claimed: Claim {
            tag,
            reason: "étale: semistable for general α".into(),
        },
        numerics: numerics.record(),
        node: Node::Etale { r, h },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_example() {
        let doc = build_certificate(3, 7, 2).unwrap();
        let root = &doc.root;
        assert_eq!(root.numerics.b, 6);
        assert_eq!(root.claimed.tag, VerdictTag::Stable);
        let Node::Glue {
            left,
            right,
            branch_split,
            node_etale,
        } = &root.node
        else {
            panic!("expected a glue node");
        };
        assert!(*node_etale);
        assert_eq!(*branch_split, [2, 4]);
        assert!(matches!(left.node, Node::Elliptic { genus: 2, .. }));
        assert_eq!(left.claimed.tag, VerdictTag::Stable);
        assert!(matches!(right.node, Node::Elliptic { genus: 3, .. }));
        assert_eq!(right.claimed.tag, VerdictTag::Semistable);
    }

    #[test]
    fn elliptic_root() {
        let doc = build_certificate(4, 3, 1).unwrap();
        assert!(matches!(doc.root.node, Node::Elliptic { .. }));
        // rank 3, degree -2: coprime
        assert_eq!(doc.root.claimed.tag, VerdictTag::Stable);
        let doc = build_certificate(4, 4, 1).unwrap();
        assert_eq!(doc.root.claimed.tag, VerdictTag::Semistable);
    }

    #[test]
    fn etale_right_piece() {
        // b = 2 leaves an unbranched cover of the genus h−1 component.
        let doc = build_certificate(3, 8, 3).unwrap();
        assert_eq!(doc.root.numerics.b, 2);
        let Node::Glue { right, .. } = &doc.root.node else {
            panic!()
        };
        assert!(matches!(right.node, Node::Etale { r: 3, h: 2 }));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            build_certificate(3, 4, 2),
            Err(Error::EmptyHurwitzSpace { .. })
        ));
        assert!(matches!(
            build_certificate(3, 1, 2),
            Err(Error::NoSuchCover { .. })
        ));
        assert!(matches!(
            build_certificate(1, 3, 2),
            Err(Error::InvalidDegree { .. })
        ));
        assert_eq!(
            build_certificate_with(5, 9, 2, Some(5)).unwrap_err(),
            Error::CharacteristicTooSmall { p: 5, r: 5 }
        );
    }

    #[test]
    fn reasons_carry_genericity_qualifier() {
        fn walk(c: &Certificate) {
            assert!(c.claimed.reason.contains("for general α"), "{}", c.claimed.reason);
            if let Node::Glue { left, right, .. } = &c.node {
                walk(left);
                walk(right);
            }
        }
        walk(&build_certificate(4, 10, 3).unwrap().root);
        walk(&build_certificate(4, 10, 0).unwrap().root);
    }
}
