//! Riemann–Hurwitz bookkeeping for a degree-`r` cover `X → Y` and the rank,
//! degree and slope of its Tschirnhausen bundle.
//!
//! With `g = g(X)`, `h = g(Y)` and `b` the degree of the branch divisor,
//! `g − 1 = r(h − 1) + b/2`, and the dual Tschirnhausen bundle has rank
//! `r − 1` and degree `−b/2`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::{StabilityVerdict, VerdictTag, Witness};

/// An exact slope `degree / rank`, stored in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    /// `None` when `den == 0`.
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = num.gcd(&den);
        let sign = if den < 0 { -1 } else { 1 };
        Some(Slope {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Degree of the branch divisor, `b = 2g − 2 − r(2h − 2)`.
pub fn branch_count(r: u64, g: u64, h: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidDegree { degree: 0, min: 1 });
    }
    let b = 2 * g as i128 - 2 - r as i128 * (2 * h as i128 - 2);
    assert!(b % 2 == 0, "branch degree parity tripwire: b = {b}");
    if b < 0 {
        return Err(Error::NoSuchCover { r, g, h, b });
    }
    u64::try_from(b).map_err(|_| Error::Overflow("branch_count"))
}

/// Invariants of a cover and of its (dual) Tschirnhausen bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverNumerics {
    r: u64,
    g: u64,
    h: u64,
    b: u64,
    tsch_rank: u64,
    tsch_degree: i64,
    slope: Slope,
}

impl CoverNumerics {
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn g(&self) -> u64 {
        self.g
    }
    pub fn h(&self) -> u64 {
        self.h
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn tsch_rank(&self) -> u64 {
        self.tsch_rank
    }
    /// Degree of `Tsch∨`, i.e. `−b/2`.
    pub fn tsch_degree(&self) -> i64 {
        self.tsch_degree
    }
    pub fn slope(&self) -> Slope {
        self.slope
    }
    pub fn is_etale(&self) -> bool {
        self.b == 0
    }

    /// `g − 1 = r(h − 1) + b/2`, checked in wide integers.
    pub fn satisfies_riemann_hurwitz(&self) -> bool {
        self.g as i128 - 1 == self.r as i128 * (self.h as i128 - 1) + self.b as i128 / 2
    }

    pub fn record(&self) -> NumericsRecord {
        NumericsRecord {
            r: self.r,
            g: self.g,
            h: self.h,
            b: self.b,
            tsch_rank: self.tsch_rank,
            tsch_degree: self.tsch_degree,
            slope_num: self.slope.num,
            slope_den: self.slope.den,
        }
    }
}

/// Plain-integer form of [`CoverNumerics`] as it appears in certificates.
/// No invariants are enforced; checkers compare it against a recomputation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsRecord {
    pub r: u64,
    pub g: u64,
    pub h: u64,
    pub b: u64,
    pub tsch_rank: u64,
    pub tsch_degree: i64,
    pub slope_num: i64,
    pub slope_den: i64,
}

impl NumericsRecord {
    /// Name of the first field that differs from `other`.
    pub fn first_difference(&self, other: &NumericsRecord) -> Option<&'static str> {
        let fields: [(&'static str, bool); 8] = [
            ("r", self.r == other.r),
            ("g", self.g == other.g),
            ("h", self.h == other.h),
            ("b", self.b == other.b),
            ("tsch_rank", self.tsch_rank == other.tsch_rank),
            ("tsch_degree", self.tsch_degree == other.tsch_degree),
            ("slope_num", self.slope_num == other.slope_num),
            ("slope_den", self.slope_den == other.slope_den),
        ];
        fields.iter().find(|(_, same)| !same).map(|(name, _)| *name)
    }
}

/// Full numerics of a degree-`r ≥ 2` cover of a genus-`h` curve by a
/// genus-`g` curve.
pub fn cover_numerics(r: u64, g: u64, h: u64) -> Result<CoverNumerics> {
    let b = branch_count(r, g, h)?;
    if r == 1 {
        return Err(Error::DegenerateRank);
    }
    let tsch_degree = -i64::try_from(b / 2).map_err(|_| Error::Overflow("tsch_degree"))?;
    let tsch_rank = r - 1;
    let rank = i64::try_from(tsch_rank).map_err(|_| Error::Overflow("tsch_rank"))?;
    let numerics = CoverNumerics {
        r,
        g,
        h,
        b,
        tsch_rank,
        tsch_degree,
        slope: Slope::new(tsch_degree, rank).expect("rank is positive"),
    };
    debug_assert!(numerics.satisfies_riemann_hurwitz());
    Ok(numerics)
}

/// A cover factoring as a primitive degree-`r2` map followed by an étale
/// degree-`r1` map. When the composite is branched, the étale factor's
/// degree-0 bundle sits inside a negative-degree bundle and destabilizes it.
pub fn factorization_instability(r1: u64, r2: u64, branched: bool) -> Result<StabilityVerdict> {
    if r1 < 2 || r2 < 2 {
        return Err(Error::TrivialFactorization { r1, r2 });
    }
    if branched {
        Ok(StabilityVerdict::with_witness(
            VerdictTag::Unstable,
            format!(
                "degree-0 summand Tsch∨(α^ét) of rank {} inside a negative-slope bundle of rank {}",
                r1 - 1,
                r1 * r2 - 1
            ),
            Witness::EtaleSummand {
                etale_degree: r1,
                primitive_degree: r2,
            },
        ))
    } else {
        Ok(StabilityVerdict::new(
            VerdictTag::NotApplicable,
            "étale composite: both degrees are 0, decide with the étale criterion",
        ))
    }
}

/// Candidate destabilizing pairs `(rank k, degree d)` of a subbundle `F` of
/// the rank-`r−1`, degree-`−g` bundle from the elliptic gluing construction:
/// `1 ≤ k ≤ r−2`, `g | d` and `−g < (r−1)d/k < 0`.
pub fn destabilizer_candidates(r: u64, g: u64) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    if r < 2 || g == 0 {
        return out;
    }
    let (r, g) = (r as i128, g as i128);
    for k in 1..=r - 2 {
        for d in -g + 1..0 {
            let in_window = -g * k < (r - 1) * d && (r - 1) * d < 0;
            if in_window && d % g == 0 {
                out.push((k as u64, d as i64));
            }
        }
    }
    out
}

/// The destabilizer window is always empty; a nonempty result means the
/// arithmetic is broken and aborts.
pub fn destabilizer_scan(r: u64, g: u64) -> Vec<(u64, i64)> {
    let found = destabilizer_candidates(r, g);
    assert!(
        found.is_empty(),
        "destabilizer window not empty for r={r}, g={g}: {found:?}"
    );
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_counts() {
        for r in 1..10 {
            assert_eq!(branch_count(r, 0, 0).unwrap(), 2 * r - 2);
        }
        assert_eq!(branch_count(3, 3, 1).unwrap(), 4);
        assert_eq!(
            branch_count(2, 0, 1).unwrap_err(),
            Error::NoSuchCover {
                r: 2,
                g: 0,
                h: 1,
                b: -2
            }
        );
    }

    #[test]
    fn numerics_examples() {
        let n = cover_numerics(3, 3, 1).unwrap();
        assert_eq!((n.b(), n.tsch_rank(), n.tsch_degree()), (4, 2, -2));
        assert_eq!(n.slope(), Slope::new(-1, 1).unwrap());

        for h in 1..4 {
            for r in 2..6 {
                let n = cover_numerics(r, h * r - r + 1, h).unwrap();
                assert!(n.is_etale());
                assert_eq!(n.tsch_degree(), 0);
            }
        }

        let n = cover_numerics(5, 0, 0).unwrap();
        assert_eq!((n.tsch_rank(), n.tsch_degree()), (4, -4));
        assert_eq!(n.slope().to_string(), "-1");

        assert_eq!(cover_numerics(1, 0, 0).unwrap_err(), Error::DegenerateRank);
        assert!(matches!(cover_numerics(2, 0, 1), Err(Error::NoSuchCover { .. })));
    }

    #[test]
    fn slopes_reduce() {
        let s = Slope::new(4, -6).unwrap();
        assert_eq!((s.numerator(), s.denominator()), (-2, 3));
        assert_eq!(s.to_string(), "-2/3");
        assert!(Slope::new(1, 0).is_none());
        assert_eq!(Slope::new(0, 5).unwrap(), Slope::new(0, 1).unwrap());
    }

    #[test]
    fn factorizations() {
        assert_eq!(
            factorization_instability(2, 3, true).unwrap().tag(),
            VerdictTag::Unstable
        );
        assert_eq!(
            factorization_instability(2, 2, false).unwrap().tag(),
            VerdictTag::NotApplicable
        );
        assert_eq!(
            factorization_instability(1, 5, true).unwrap_err(),
            Error::TrivialFactorization { r1: 1, r2: 5 }
        );
    }

    #[test]
    fn destabilizer_examples() {
        assert!(destabilizer_scan(4, 5).is_empty());
        assert!(destabilizer_scan(2, 10).is_empty());
        assert!(destabilizer_scan(10, 1).is_empty());
    }

    #[test]
    fn destabilizer_window_without_divisibility_is_inhabited() {
        // Dropping the divisibility constraint leaves real candidates, so the
        // emptiness above is not vacuous.
        let (r, g) = (4i128, 5i128);
        let any = (1..=r - 2).any(|k| (-g + 1..0).any(|d| -g * k < (r - 1) * d));
        assert!(any);
    }
}
