//! Bundles on an elliptic curve, tracked through their indecomposable
//! summands (rank, degree), and the degree ledger of the construction that
//! glues pairs of points in fibres of a cyclic étale cover.
//!
//! The elliptic curve itself is never represented; every statement used is
//! about ranks, degrees, torsion orders and characters of `ℤ/r`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{cover_numerics, destabilizer_scan, CoverNumerics, Slope};
use crate::repstab::{cyclic_diagonal_subreps, DiagonalDatum};
use crate::verdict::{StabilityVerdict, VerdictTag};

/// An indecomposable bundle: semistable of slope `degree / rank`, stable
/// iff `gcd(rank, degree) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub rank: u64,
    pub degree: i64,
    /// Order of a torsion line bundle, when the summand is one.
    pub torsion_order: Option<u64>,
}

impl Summand {
    pub fn new(rank: u64, degree: i64) -> Self {
        Summand {
            rank,
            degree,
            torsion_order: None,
        }
    }

    pub fn slope(&self) -> Slope {
        Slope::new(self.degree, self.rank as i64).expect("rank is positive")
    }

    pub fn is_stable(&self) -> bool {
        (self.rank as i64).gcd(&self.degree) == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalBundle {
    summands: Vec<Summand>,
    total_rank: u64,
    total_degree: i64,
}

impl FormalBundle {
    pub fn new(summands: Vec<Summand>) -> Result<Self> {
        if summands.is_empty() || summands.iter().any(|s| s.rank == 0) {
            return Err(Error::EmptyBundle);
        }
        let total_rank = summands.iter().map(|s| s.rank).sum();
        let total_degree = summands.iter().map(|s| s.degree).sum();
        Ok(FormalBundle {
            summands,
            total_rank,
            total_degree,
        })
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn rank(&self) -> u64 {
        self.total_rank
    }

    pub fn degree(&self) -> i64 {
        self.total_degree
    }

    pub fn slope(&self) -> Slope {
        Slope::new(self.total_degree, self.total_rank as i64).expect("rank is positive")
    }

    /// A sum of semistable bundles is semistable iff all slopes agree.
    pub fn is_semistable(&self) -> bool {
        let first = self.summands[0].slope();
        self.summands.iter().all(|s| s.slope() == first)
    }

    pub fn is_stable(&self) -> bool {
        self.summands.len() == 1 && self.summands[0].is_stable()
    }
}

/// Tschirnhausen bundle of the cyclic étale cover attached to an `r`-torsion
/// line bundle `ϑ`: `ϑ ⊕ ϑ² ⊕ … ⊕ ϑ^{r−1}`.
pub fn cyclic_tsch(r: u64) -> Result<FormalBundle> {
    if r < 2 {
        return Err(Error::InvalidDegree { degree: r, min: 2 });
    }
    let summands = (1..r)
        .map(|j| Summand {
            rank: 1,
            degree: 0,
            torsion_order: Some(r / j.gcd(&r)),
        })
        .collect();
    FormalBundle::new(summands)
}

/// Sheet pairs identified over `g` general points of the elliptic curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingDatum {
    r: u64,
    pairs: Vec<(u64, u64)>,
}

impl GluingDatum {
    pub fn new(r: u64, pairs: Vec<(u64, u64)>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidDegree { degree: r, min: 2 });
        }
        for &(q, q_prime) in &pairs {
            DiagonalDatum::new(r, q, q_prime)?;
        }
        Ok(GluingDatum { r, pairs })
    }

    /// Pairs `(i mod r, i + 1 mod r)` for `i < g`: consecutive sheets in the
    /// cyclic ordering.
    pub fn adjacent(r: u64, g: u64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidDegree { degree: r, min: 2 });
        }
        Self::new(r, (0..g).map(|i| (i % r, (i + 1) % r)).collect())
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub pair: (u64, u64),
    /// Characters whose eigenspace lies in the pair's diagonal.
    pub subreps: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedLedger {
    /// Numerics of the glued cover: rank `r − 1`, degree `−g`, branch
    /// degree `2g`, source genus `g + 1` for `g` identified pairs.
    pub numerics: CoverNumerics,
    pub pairs: Vec<PairReport>,
}

impl GluedLedger {
    /// No pair's diagonal contains a nonzero subrepresentation.
    pub fn is_clean(&self) -> bool {
        self.pairs.iter().all(|p| p.subreps.is_empty())
    }
}

/// Each identification is a negative elementary modification, dropping the
/// degree by one; cyclic-character arithmetic decides for every pair whether
/// a degree-0 subbundle survives inside the modified bundle.
pub fn glued_cover_ledger(d: &GluingDatum) -> Result<GluedLedger> {
    let g = d.pairs.len() as u64;
    let numerics = cover_numerics(d.r, g + 1, 1)?;
    debug_assert_eq!(numerics.tsch_degree(), -(g as i64));
    let pairs = d
        .pairs
        .iter()
        .map(|&(q, q_prime)| {
            let datum = DiagonalDatum::new(d.r, q, q_prime)?;
            Ok(PairReport {
                pair: (q, q_prime),
                subreps: cyclic_diagonal_subreps(datum),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GluedLedger { numerics, pairs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticVerdict {
    pub verdict: StabilityVerdict,
    pub ledger: GluedLedger,
    /// Always empty; kept as evidence.
    pub destabilizers: Vec<(u64, i64)>,
    /// `gcd(r − 1, g) = 1`, so semistable already means stable.
    pub coprime: bool,
}

/// Semistability of the Tschirnhausen bundle of a general degree-`r` cover
/// of an elliptic curve obtained from `g ≥ 1` identified pairs.
pub fn elliptic_semistability_verdict(r: u64, g: u64) -> Result<EllipticVerdict> {
    if g == 0 {
        return Err(Error::InvalidDegree { degree: 0, min: 1 });
    }
    let ledger = glued_cover_ledger(&GluingDatum::adjacent(r, g)?)?;
    assert!(ledger.is_clean(), "adjacent pairs always give a clean report");
    let destabilizers = destabilizer_scan(r, g);
    let coprime = (r - 1).gcd(&g) == 1;
    let mut reason = format!(
        "semistable for general α: rank {}, degree -{g}; no degree-0 subrepresentation in any adjacent diagonal; destabilizer window empty",
        r - 1
    );
    if r == 2 {
        reason.push_str("; rank 1, stable for trivial reasons");
    } else if coprime {
        reason.push_str("; rank and degree coprime, so also stable");
    }
    Ok(EllipticVerdict {
        verdict: StabilityVerdict::new(VerdictTag::Semistable, reason),
        ledger,
        destabilizers,
        coprime,
    })
}
