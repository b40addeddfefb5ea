//! Permutations, permutation groups with a base and strong generating set,
//! and the Sylow-2 machinery used by the cover constructions.

mod group;
mod permutation;
pub(crate) mod s3;
mod sylow;

use thiserror::Error;

pub use group::PermGroup;
pub use permutation::Permutation;
pub use s3::s3_factor_count;
pub use sylow::{
    conjugate_subgroup, find_conjugator, normalizer_is_self, normalizer_is_self_by_enumeration,
    normalizer_is_self_structural, sylow2, sylow2_by_growth, sylow2_seeded, two_part,
    NormalizerMethod, SubgroupWitness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a bijection: {0:?}")]
    NotABijection(Vec<u32>),
    #[error("malformed cycle notation: {0}")]
    BadCycle(String),
    #[error("a group needs at least one generator to fix its degree")]
    NoGenerators,
    #[error("group of order {0} exceeds the enumeration bound {1}")]
    TooLarge(String, u64),
    #[error("group is not presented as a subgroup of a product of S3 blocks")]
    NotS3Product,
    #[error("subgroup generator is not a member of the ambient group")]
    NotSubgroup,
    #[error("element is not a member of the group")]
    NotMember,
    #[error("Sylow growth stalled at order {reached}, below the 2-part {target}")]
    SylowStalled { reached: String, target: String },
    #[error("subgroup is not a 2-group")]
    NotTwoGroup,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
