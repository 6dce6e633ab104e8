//! Stability verdicts shared by every analysis.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictTag {
    Stable,
    /// Semistable, without a claim either way about stability.
    Semistable,
    StrictlySemistable,
    Unstable,
    /// A splitting type on the projective line with all gaps at most one.
    Balanced,
    NotApplicable,
}

impl VerdictTag {
    /// Position in the badness order `Stable < Semistable <
    /// StrictlySemistable < Balanced < Unstable`; `None` for `NotApplicable`.
    pub fn badness(self) -> Option<u8> {
        match self {
            VerdictTag::Stable => Some(0),
            VerdictTag::Semistable => Some(1),
            VerdictTag::StrictlySemistable => Some(2),
            VerdictTag::Balanced => Some(3),
            VerdictTag::Unstable => Some(4),
            VerdictTag::NotApplicable => None,
        }
    }

    /// True for verdicts that assert semistability.
    pub fn is_semistable(self) -> bool {
        matches!(
            self,
            VerdictTag::Stable | VerdictTag::Semistable | VerdictTag::StrictlySemistable
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictTag::Stable => "Stable",
            VerdictTag::Semistable => "Semistable",
            VerdictTag::StrictlySemistable => "StrictlySemistable",
            VerdictTag::Unstable => "Unstable",
            VerdictTag::Balanced => "Balanced",
            VerdictTag::NotApplicable => "NotApplicable",
        }
    }
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Structured evidence attached to a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// Characters `j` of `ℤ/r` whose eigenspaces give a degree-0 subbundle.
    CharacterSubset { characters: Vec<u64> },
    /// The Tschirnhausen bundle of the étale factor is a degree-0 summand.
    EtaleSummand {
        etale_degree: u64,
        primitive_degree: u64,
    },
    /// More than two orbits on ordered pairs: the standard representation
    /// splits off a proper subrepresentation.
    PairOrbits { orbits: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    tag: VerdictTag,
    reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

impl StabilityVerdict {
    pub fn new(tag: VerdictTag, reason: impl Into<String>) -> Self {
        StabilityVerdict {
            tag,
            reason: reason.into(),
            witness: None,
        }
    }

    /// Attaches a witness. Only negative verdicts carry one.
    pub fn with_witness(tag: VerdictTag, reason: impl Into<String>, witness: Witness) -> Self {
        assert!(
            matches!(tag, VerdictTag::StrictlySemistable | VerdictTag::Unstable),
            "witness attached to a {tag} verdict"
        );
        StabilityVerdict {
            tag,
            reason: reason.into(),
            witness: Some(witness),
        }
    }

    pub fn tag(&self) -> VerdictTag {
        self.tag
    }

    pub fn reason(&self) -> &str {
        &self.reason
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.tag, self.reason)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn badness_order() {
        use VerdictTag::*;
        assert!(Stable.badness() < StrictlySemistable.badness());
        assert!(StrictlySemistable.badness() < Unstable.badness());
        assert_eq!(NotApplicable.badness(), None);
    }

    #[test]
    #[should_panic]
    fn witness_only_on_negative_verdicts() {
        StabilityVerdict::with_witness(VerdictTag::Stable, "x", Witness::PairOrbits { orbits: 3 });
    }
}
