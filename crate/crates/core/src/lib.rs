//! Exact stability analysis for Tschirnhausen bundles of curve covers.
//!
//! Everything is integer arithmetic: permutation groups through
//! Schreier–Sims, bundle invariants through Riemann–Hurwitz, splitting types
//! on the projective line, and degree bookkeeping on elliptic curves. Covers
//! of higher-genus curves are handled by checkable degeneration certificates.

pub mod certify;
pub mod ellbundle;
pub mod error;
pub mod groupzoo;
pub mod numerics;
pub mod p1split;
pub mod permcore;
pub mod repstab;
pub mod verdict;

pub use error::{Error, Result};
pub use permcore::{GroupLimits, PermGroup, Permutation};
pub use verdict::{StabilityVerdict, VerdictTag, Witness};
