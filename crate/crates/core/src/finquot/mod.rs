//! Finite quotients of surface groups: target groups, exhaustive and lazy
//! enumeration of homomorphisms, and a character-sum count to check them.

mod hom;
mod psl2;
mod target;

use thiserror::Error;

use crate::perm::PermError;

pub use hom::{
    count_homs_oracle, enumerate_epis, enumerate_homs, first_epi, tuple_count, FiniteHom, HomIter,
    HomRecord,
};
pub use psl2::{
    borel_generators, borel_subgroup, is_prime, mobius, outer_diagonal, primitive_root,
    psl2_elements, psl2_group,
};
pub use target::{FiniteTarget, TargetKind, MAX_TARGET_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinquotError {
    #[error("{0} is not a prime at least 5")]
    BadPrime(u64),
    #[error("enumeration needs {needed} tuples, over the cap of {cap}; use a lazy search instead")]
    BudgetExceeded { needed: String, cap: u64 },
    #[error("target {0} is too large for a multiplication table")]
    TargetTooLarge(String),
    #[error("no character degree list is stored for this target")]
    NoDegreeList,
    #[error("character sum is not an integer: {0}")]
    NonIntegral(String),
    #[error("images do not satisfy the surface relator")]
    RelatorViolated,
    #[error("an image tuple of length {0} does not describe a genus at least 2")]
    WrongGenus(usize),
    #[error("not an element of the target: {0}")]
    BadElement(String),
    #[error("no epimorphism onto {0}")]
    NoEpimorphism(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}
