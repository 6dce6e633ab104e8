//! Stability of Tschirnhausen bundles of étale covers.
//!
//! For an étale cover with monodromy group `G ⊂ S_r` the bundle is always
//! semistable, and it is stable exactly when the standard representation
//! restricted to `G` is irreducible, i.e. when `∑_g F(g)² = 2|G|`. For
//! transitive `G` that sum equals `|G|` times the number of orbits on ordered
//! pairs, which gives a second, enumeration-free route to the same bit.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permcore::PermGroup;
use crate::verdict::{StabilityVerdict, VerdictTag, Witness};

/// `∑_g F(g)²` by enumerating every element.
pub fn character_sum(group: &PermGroup) -> Result<u64> {
    let mut total = 0u64;
    group.for_each_element(group.limits().enumeration_cap, |g| {
        let f = g.fixed_point_count() as u64;
        total += f * f;
    })?;
    Ok(total)
}

/// Outcome of the irreducibility test with the values of both routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityCheck {
    pub irreducible: bool,
    #[serde(serialize_with = "serialize_biguint")]
    pub order: BigUint,
    /// `None` when the order exceeds the enumeration cap.
    pub character_sum: Option<u64>,
    pub pair_orbits: u64,
}

impl IrreducibilityCheck {
    pub fn single_oracle(&self) -> bool {
        self.character_sum.is_none()
    }
}

pub(crate) fn serialize_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn require_transitive(group: &PermGroup) -> Result<()> {
    match group.orbit_count_points() {
        1 => Ok(()),
        orbits => Err(Error::IntransitiveGroup { orbits }),
    }
}

/// Decides irreducibility of the standard representation restricted to a
/// transitive group, by character sum and by pair orbits.
pub fn standard_rep_irreducible(group: &PermGroup) -> Result<IrreducibilityCheck> {
    require_transitive(group)?;
    let order = group.order()?;
    let pair_orbits = group.orbit_count_ordered_pairs();
    let by_orbits = pair_orbits == 2 || group.degree() == 1;

    let character_sum = match character_sum(group) {
        Ok(sum) => Some(sum),
        Err(Error::OrderExceedsCap { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(sum) = character_sum {
        let order = order.to_u64().expect("enumerated orders fit in u64");
        let by_sum = group.degree() == 1 || sum == 2 * order;
        if by_sum != by_orbits || sum != order * pair_orbits as u64 {
            return Err(Error::OracleDisagreement {
                character_sum: sum,
                twice_order: 2 * order,
                pair_orbits,
            });
        }
    }
    Ok(IrreducibilityCheck {
        irreducible: by_orbits,
        order,
        character_sum,
        pair_orbits: pair_orbits as u64,
    })
}

/// Report for an étale cover: the verdict and the values behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaleReport {
    pub verdict: StabilityVerdict,
    pub check: IrreducibilityCheck,
}

/// Stable iff the standard representation is irreducible on `G`; otherwise
/// strictly semistable. Never unstable.
pub fn etale_stability(group: &PermGroup) -> Result<EtaleReport> {
    let check = standard_rep_irreducible(group)?;
    let oracles = if check.single_oracle() {
        "single-oracle: pair orbits only, order exceeds enumeration cap"
    } else {
        "character sum and pair orbits agree"
    };
    let verdict = if group.degree() == 1 {
        StabilityVerdict::new(VerdictTag::NotApplicable, "degree-1 cover: rank-0 bundle")
    } else if check.irreducible {
        StabilityVerdict::new(
            VerdictTag::Stable,
            format!("standard representation irreducible on G (2-transitive); {oracles}"),
        )
    } else {
        StabilityVerdict::with_witness(
            VerdictTag::StrictlySemistable,
            format!("standard representation reducible on G; {oracles}"),
            Witness::PairOrbits {
                orbits: check.pair_orbits,
            },
        )
    };
    Ok(EtaleReport { verdict, check })
}

/// Two sheets `q ≠ q′` of a degree-`r` cyclic cover; `Δ_{q,q′}` is the
/// hyperplane of fibre functions taking equal values on them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalDatum {
    r: u64,
    q: u64,
    q_prime: u64,
}

impl DiagonalDatum {
    pub fn new(r: u64, q: u64, q_prime: u64) -> Result<Self> {
        if r < 2 || q >= r || q_prime >= r || q == q_prime {
            return Err(Error::InvalidPair { r, q, q_prime });
        }
        Ok(DiagonalDatum { r, q, q_prime })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_prime(&self) -> u64 {
        self.q_prime
    }
}

/// Characters `j ∈ {1, …, r−1}` of `ℤ/r` whose eigenspace in the standard
/// representation lies inside `Δ_{q,q′}`.
///
/// The eigenvector of character `j` has coordinate `ζ^{ja}` on sheet `a`, so
/// it lies in the diagonal iff `j(q − q′) ≡ 0 (mod r)`. The returned set
/// spans the largest subrepresentation inside the diagonal; it is empty iff
/// `gcd(q − q′, r) = 1`.
pub fn cyclic_diagonal_subreps(d: DiagonalDatum) -> Vec<u64> {
    let diff = (d.q + d.r - d.q_prime) % d.r;
    (1..d.r).filter(|j| (j * diff).is_multiple_of(d.r)).collect()
}

/// Same as [`cyclic_diagonal_subreps`] but as a cheap emptiness test.
pub fn diagonal_is_clean(d: DiagonalDatum) -> bool {
    let diff = (d.q + d.r - d.q_prime) % d.r;
    diff.gcd(&d.r) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupzoo::*;

    #[test]
    fn character_sums() {
        assert_eq!(character_sum(&symmetric_group(3).unwrap()).unwrap(), 12);
        assert_eq!(character_sum(&cyclic_group(4).unwrap()).unwrap(), 16);
        assert_eq!(character_sum(&alternating_group(4).unwrap()).unwrap(), 24);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(standard_rep_irreducible(&pgl2(7).unwrap()).unwrap().irreducible);
        assert!(
            !standard_rep_irreducible(&cyclic_group(5).unwrap())
                .unwrap()
                .irreducible
        );
        assert!(
            standard_rep_irreducible(&symmetric_group(2).unwrap())
                .unwrap()
                .irreducible
        );
    }

    #[test]
    fn intransitive_is_rejected() {
        let g = PermGroup::from_cycle_strings(&["(1 2)"], 4).unwrap();
        assert_eq!(
            standard_rep_irreducible(&g).unwrap_err(),
            Error::IntransitiveGroup { orbits: 3 }
        );
        assert!(etale_stability(&g).is_err());
    }

    #[test]
    fn etale_examples() {
        assert_eq!(
            etale_stability(&agl1(8).unwrap()).unwrap().verdict.tag(),
            VerdictTag::Stable
        );
        let c6 = etale_stability(&cyclic_group(6).unwrap()).unwrap();
        assert_eq!(c6.verdict.tag(), VerdictTag::StrictlySemistable);
        assert_eq!(c6.verdict.witness(), Some(&Witness::PairOrbits { orbits: 6 }));
        assert_eq!(
            etale_stability(&alternating_group(5).unwrap())
                .unwrap()
                .verdict
                .tag(),
            VerdictTag::Stable
        );
    }

    #[test]
    fn single_oracle_fallback() {
        use crate::permcore::GroupLimits;
        let g = symmetric_group(9).unwrap().with_limits(GroupLimits {
            max_degree: 100,
            enumeration_cap: 1000,
        });
        let report = etale_stability(&g).unwrap();
        assert!(report.check.single_oracle());
        assert_eq!(report.verdict.tag(), VerdictTag::Stable);
        assert!(report.verdict.reason().contains("single-oracle"));
    }

    #[test]
    fn diagonal_examples() {
        assert!(cyclic_diagonal_subreps(DiagonalDatum::new(7, 1, 0).unwrap()).is_empty());
        assert_eq!(
            cyclic_diagonal_subreps(DiagonalDatum::new(4, 2, 0).unwrap()),
            vec![2]
        );
        assert_eq!(
            cyclic_diagonal_subreps(DiagonalDatum::new(6, 3, 0).unwrap()),
            vec![2, 4]
        );
        assert_eq!(
            cyclic_diagonal_subreps(DiagonalDatum::new(6, 0, 3).unwrap()),
            vec![2, 4]
        );
    }

    #[test]
    fn diagonal_datum_validation() {
        assert!(DiagonalDatum::new(4, 1, 1).is_err());
        assert!(DiagonalDatum::new(4, 4, 1).is_err());
        assert!(DiagonalDatum::new(1, 0, 0).is_err());
    }
}
