//! Permutations and finitely generated permutation groups: exact order via a
//! stabilizer chain, element enumeration, and orbit counts on points and on
//! ordered pairs.

mod group;
mod perm;

pub use group::{GroupLimits, PermGroup};
pub use perm::Permutation;
