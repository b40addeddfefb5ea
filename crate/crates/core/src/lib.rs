pub mod alpha;
pub mod autact;
pub mod config;
pub mod finquot;
pub mod forge;
pub mod perm;
pub mod surface;

mod linalg;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/permutation-groups.md")]
    mod permutation_groups {}
    #[doc = include_str!("../../../book/src/surface-words.md")]
    mod surface_words {}
    #[doc = include_str!("../../../book/src/finite-quotients.md")]
    mod finite_quotients {}
    #[doc = include_str!("../../../book/src/automorphism-orbits.md")]
    mod automorphism_orbits {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/restriction.md")]
    mod restriction {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
