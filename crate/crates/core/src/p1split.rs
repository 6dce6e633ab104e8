//! Splitting types of vector bundles on the projective line and the
//! degeneration recursion that computes the splitting type of the
//! Tschirnhausen bundle of a general cover of `P¹`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::branch_count;

/// `O(e₁) ⊕ … ⊕ O(e_k)` with `e₁ ≥ … ≥ e_k`, `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SplittingType {
    degrees: Vec<i64>,
    total_degree: i64,
}

impl SplittingType {
    /// Sorts the entries into canonical non-increasing order.
    pub fn new(mut degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptySplitting);
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let total_degree = degrees.iter().sum();
        Ok(SplittingType {
            degrees,
            total_degree,
        })
    }

    /// `O(value)^{⊕rank}`.
    pub fn uniform(rank: usize, value: i64) -> Result<Self> {
        Self::new(vec![value; rank])
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.total_degree
    }

    fn max(&self) -> i64 {
        self.degrees[0]
    }

    fn min(&self) -> i64 {
        *self.degrees.last().unwrap()
    }

    pub fn is_balanced(&self) -> bool {
        self.max() - self.min() <= 1
    }

    pub fn is_perfectly_balanced(&self) -> bool {
        self.max() == self.min()
    }

    /// The common entry of a perfectly balanced type.
    pub fn constant_value(&self) -> Option<i64> {
        self.is_perfectly_balanced().then(|| self.max())
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// The unique balanced type of the given rank and degree.
pub fn balanced_type(rank: usize, degree: i64) -> Result<SplittingType> {
    if rank == 0 {
        return Err(Error::EmptySplitting);
    }
    let k = rank as i64;
    let floor = degree.div_euclid(k);
    let high = degree.rem_euclid(k) as usize;
    let mut degrees = vec![floor + 1; high];
    degrees.resize(rank, floor);
    SplittingType::new(degrees)
}

/// Kernel of a general surjection onto a skyscraper at a point: lowers one
/// maximal entry by one.
pub fn generic_negative_modification(t: &SplittingType) -> SplittingType {
    let mut degrees = t.degrees.clone();
    let last_max = degrees.iter().rposition(|&e| e == t.max()).unwrap();
    // Lowering the last copy of the maximum keeps the sequence sorted.
    degrees[last_max] -= 1;
    let out = SplittingType::new(degrees).unwrap();
    debug_assert_eq!(out.total_degree, t.total_degree - 1);
    out
}

/// General deformation of a bundle on two projective lines meeting at a
/// node, when one side is perfectly balanced of value `c`: the other side's
/// entries shift by `c`.
pub fn glue_deform(a: &SplittingType, b: &SplittingType) -> Result<SplittingType> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    let (other, shift) = match (b.constant_value(), a.constant_value()) {
        (Some(c), _) => (a, c),
        (None, Some(c)) => (b, c),
        (None, None) => return Err(Error::NeitherPerfectlyBalanced),
    };
    SplittingType::new(other.degrees.iter().map(|e| e + shift).collect())
}

/// Dual Tschirnhausen bundle of a general degree-`r` cover of `P¹` whose
/// connected part has degree `d` and the remaining `r − d` sheets map
/// isomorphically: `O^{r−d} ⊕ O(−1)^{d−1}` (the connected part has genus 0).
fn disconnected_type(r: usize, connected_degree: usize) -> SplittingType {
    let mut degrees = vec![0; r - connected_degree];
    degrees.resize(r - 1, -1);
    SplittingType::new(degrees).unwrap()
}

/// Degeneration recursion on the branch count `b` for degree-`r` covers of
/// `P¹`. The base case `b = 2r − 2` is a genus-0 cover with type
/// `O(−1)^{r−1}`; larger `b` puts `2r − 2` branch points on one line
/// and the rest on the other. Unrolled so deep recursions cannot exhaust the
/// stack.
fn split_by_degeneration(r: usize, b: u64) -> SplittingType {
    let base_b = 2 * r as u64 - 2;
    let base = SplittingType::uniform(r - 1, -1).unwrap();
    let mut rest = b;
    let mut peeled = 0u64;
    while rest > base_b {
        rest -= base_b;
        peeled += 1;
    }
    let mut acc = if rest == base_b {
        base.clone()
    } else {
        // A genus-0 connected piece with `rest` branch points has degree
        // rest/2 + 1 < r.
        disconnected_type(r, (rest / 2 + 1) as usize)
    };
    for _ in 0..peeled {
        acc = glue_deform(&base, &acc).expect("the base side is perfectly balanced");
    }
    acc
}

/// Splitting type of the dual Tschirnhausen bundle of a general degree-`r`
/// genus-`g` cover of `P¹`, by degeneration; cross-checked against the
/// closed form `balanced_type(r − 1, −(g + r − 1))`.
pub fn general_p1_splitting(r: u64, g: u64) -> Result<SplittingType> {
    if r < 2 {
        return Err(Error::InvalidDegree { degree: r, min: 2 });
    }
    let b = branch_count(r, g, 0)?;
    let recursive = split_by_degeneration(r as usize, b);
    let degree = -i64::try_from(g + r - 1).map_err(|_| Error::Overflow("general_p1_splitting"))?;
    let closed = balanced_type(r as usize - 1, degree)?;
    assert_eq!(
        recursive, closed,
        "degeneration and closed form disagree for r={r}, g={g}"
    );
    Ok(recursive)
}
