use num_integer::Integer;
use num_rational::Ratio;
use proptest::prelude::*;
use tsch_core::ellbundle::{cyclic_tsch, elliptic_semistability_verdict, glued_cover_ledger, GluingDatum};
use tsch_core::numerics::{
    branch_count, cover_numerics, destabilizer_candidates, factorization_instability, Slope,
};
use tsch_core::p1split::{
    balanced_type, general_p1_splitting, generic_negative_modification, glue_deform, SplittingType,
};
use tsch_core::repstab::{cyclic_diagonal_subreps, diagonal_is_clean, DiagonalDatum};
use tsch_core::{Error, VerdictTag};

/// All non-increasing sequences of length `k` with entries in `lo..=hi`.
fn sequences(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (lo..=hi).rev() {
        for mut tail in sequences(k - 1, lo, first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

proptest! {
    #[test]
    fn slope_order_matches_rationals(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500, flip in any::<bool>()) {
        let (b, d) = if flip { (-b, d) } else { (b, -d) };
        let s = Slope::new(a, b).unwrap();
        let t = Slope::new(c, d).unwrap();
        let (x, y) = (Ratio::new(a, b), Ratio::new(c, d));
        prop_assert_eq!(s.cmp(&t), x.cmp(&y));
        prop_assert_eq!(s == t, x == y);
        prop_assert_eq!((s.numerator(), s.denominator()), (*x.numer(), *x.denom()));
    }

    #[test]
    fn riemann_hurwitz_ledger(r in 2u64..200, h in 0u64..12, extra in 0u64..400) {
        // Every realizable genus is r(h − 1) + 1 + b/2 for some b ≥ 0.
        let g = (r * h + 1 + extra).saturating_sub(r);
        match cover_numerics(r, g, h) {
            Ok(n) => {
                prop_assert!(n.satisfies_riemann_hurwitz());
                prop_assert_eq!(2 * n.tsch_degree(), -(n.b() as i64));
                prop_assert_eq!(n.tsch_rank(), r - 1);
                prop_assert_eq!(n.slope(), Slope::new(n.tsch_degree(), r as i64 - 1).unwrap());
            }
            Err(Error::NoSuchCover { b, .. }) => prop_assert!(b < 0),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn modification_drops_degree(v in proptest::collection::vec(-20i64..20, 1..8)) {
        let t = SplittingType::new(v).unwrap();
        let m = generic_negative_modification(&t);
        prop_assert_eq!(m.total_degree(), t.total_degree() - 1);
        prop_assert_eq!(m.rank(), t.rank());
        // a general modification never unbalances a balanced type
        if t.is_balanced() {
            prop_assert!(m.is_balanced());
        }
    }

    #[test]
    fn gluing_shifts_by_constant(v in proptest::collection::vec(-20i64..20, 1..8), c in -10i64..10) {
        let t = SplittingType::new(v).unwrap();
        let flat = SplittingType::uniform(t.rank(), c).unwrap();
        let glued = glue_deform(&t, &flat).unwrap();
        prop_assert_eq!(glued.total_degree(), t.total_degree() + c * t.rank() as i64);
        prop_assert_eq!(glue_deform(&flat, &t).unwrap(), glued);
    }

    #[test]
    fn diagonal_criterion(r in 2u64..400, q in 0u64..400, qp in 0u64..400) {
        let (q, qp) = (q % r, qp % r);
        prop_assume!(q != qp);
        let d = DiagonalDatum::new(r, q, qp).unwrap();
        // direct enumeration of characters j with ζ^{jq} = ζ^{jq′}
        let direct: Vec<u64> = (1..r).filter(|j| (j * q) % r == (j * qp) % r).collect();
        prop_assert_eq!(cyclic_diagonal_subreps(d), direct.clone());
        prop_assert_eq!(diagonal_is_clean(d), direct.is_empty());
        prop_assert_eq!(direct.is_empty(), q.abs_diff(qp).gcd(&r) == 1);
    }

    #[test]
    fn destabilizers_against_rationals(r in 2u64..40, g in 1u64..80) {
        // F of rank k and degree d (g | d) destabilizes iff μ(F) ≥ μ(E) = −g/(r−1),
        // and it only matters when d < 0 because degree-0 pieces are ruled out separately.
        let mu = Ratio::new(-(g as i64), r as i64 - 1);
        let mut brute = Vec::new();
        for k in 1..r.saturating_sub(1) {
            for d in (-(g as i64) * k as i64)..0 {
                if d % g as i64 == 0 && Ratio::new(d, k as i64) > mu && -(g as i64) < d {
                    brute.push((k, d));
                }
            }
        }
        prop_assert_eq!(destabilizer_candidates(r, g), brute.clone());
        prop_assert!(brute.is_empty());
    }
}

#[test]
fn balanced_type_is_unique() {
    for rank in 1..=6usize {
        for degree in -12i64..=12 {
            let lo = degree.div_euclid(rank as i64) - 3;
            let hi = degree.div_euclid(rank as i64) + 3;
            let found: Vec<_> = sequences(rank, lo, hi)
                .into_iter()
                .filter(|s| s.iter().sum::<i64>() == degree)
                .map(|s| SplittingType::new(s).unwrap())
                .filter(|t| t.is_balanced())
                .collect();
            assert_eq!(
                found,
                vec![balanced_type(rank, degree).unwrap()],
                "rank {rank}, degree {degree}"
            );
        }
    }
}

#[test]
fn p1_recursion_matches_closed_form() {
    for r in 2..=16u64 {
        assert_eq!(
            general_p1_splitting(r, 0).unwrap(),
            SplittingType::uniform(r as usize - 1, -1).unwrap()
        );
        for g in 0..=60 {
            let t = general_p1_splitting(r, g).unwrap();
            assert_eq!(t, balanced_type(r as usize - 1, -((g + r - 1) as i64)).unwrap());
            assert_eq!(-2 * t.total_degree(), branch_count(r, g, 0).unwrap() as i64);
        }
    }
    // deep recursions stay on the heap
    assert!(general_p1_splitting(3, 200_000).unwrap().is_perfectly_balanced());
}

#[test]
fn adjacent_ledgers_are_clean() {
    for r in 2..=200u64 {
        for g in 1..=10u64 {
            let l = glued_cover_ledger(&GluingDatum::adjacent(r, g).unwrap()).unwrap();
            assert_eq!(l.numerics.tsch_degree(), -(g as i64));
            assert_eq!(l.numerics.b(), 2 * g);
            assert!(l.is_clean());
        }
    }
}

#[test]
fn elliptic_verdicts_are_semistable() {
    for r in 2..=30u64 {
        for g in 1..=30u64 {
            let v = elliptic_semistability_verdict(r, g).unwrap();
            assert_eq!(v.verdict.tag(), VerdictTag::Semistable);
            assert_eq!(v.coprime, (r - 1).gcd(&g) == 1);
        }
    }
}

#[test]
fn cyclic_bundle_and_factorizations() {
    for r in 2..=30u64 {
        let b = cyclic_tsch(r).unwrap();
        assert_eq!((b.rank(), b.degree()), (r - 1, 0));
        assert!(b.is_semistable());
        assert_eq!(b.is_stable(), r == 2);
    }
    let v = factorization_instability(2, 3, true).unwrap();
    assert_eq!(v.tag(), VerdictTag::Unstable);
    assert!(v.witness().is_some());
    assert_eq!(
        factorization_instability(2, 3, false).unwrap().tag(),
        VerdictTag::NotApplicable
    );
    assert!(factorization_instability(1, 3, true).is_err());
}
