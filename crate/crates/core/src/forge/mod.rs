//! Cover construction: the product of an automorphism orbit of finite
//! quotients, its image `G`, a self-normalizing subgroup `H` whose
//! conjugacy class every automorphism preserves, and the certificate that
//! records each check.

mod certificate;
mod image;
mod relabel;
mod routes;
mod search;

use thiserror::Error;

use crate::alpha::AlphaError;
use crate::autact::AutActError;
use crate::finquot::{FinquotError, TargetKind};
use crate::perm::PermError;
use crate::surface::SurfaceError;

pub use certificate::{
    CharacteristicCheck, Check, Checks, CoverCertificate, HallEvidence, Method, OrderMethod, Route, SeedMaterial,
    Stage, Status, Timing, CERTIFICATE_VERSION, GENERATOR_SET,
};
pub use image::{build_subdirect_image, SubdirectImage};
pub use relabel::{coset_action, gamma_set_isomorphic, Relabel};
pub use routes::{default_seed, forge_certificate_hall, forge_certificate_s3, ForgeOptions};
pub use search::{minimal_degree_search, search_candidates, Candidate, RouteKind, SearchEntry, SearchReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForgeError {
    #[error("seed homomorphism is not surjective")]
    NotSurjective,
    #[error("route needs target {expected} but the seed maps to {found}")]
    WrongTarget { expected: String, found: TargetKind },
    #[error("genus {0} is below 2")]
    GenusTooSmall(usize),
    #[error("collection is empty")]
    EmptyCollection,
    #[error("factor {0} has a different genus or target")]
    MixedFactors(usize),
    #[error("factor {0} is not surjective")]
    FactorNotSurjective(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unknown route {0:?}")]
    BadRoute(String),
    #[error("malformed certificate: {0}")]
    BadCertificate(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Finquot(#[from] FinquotError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Alpha(#[from] AlphaError),
    #[error(transparent)]
    AutAct(AutActError),
}

impl From<AutActError> for ForgeError {
    fn from(e: AutActError) -> Self {
        match e {
            AutActError::OrbitTooLarge(cap) => ForgeError::BudgetExceeded(format!("orbit exceeds {cap} members")),
            AutActError::NotSurjective => ForgeError::NotSurjective,
            other => ForgeError::AutAct(other),
        }
    }
}
