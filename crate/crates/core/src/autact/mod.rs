//! The action of `Aut(Γ_g)` on homomorphisms to finite groups by
//! precomposition, orbit closure, and the closure check that certifies a
//! product kernel as invariant.

mod autgen;
mod orbit;

use thiserror::Error;

pub use autgen::{is_symplectic_mod2, standard_autgens, AutGen};
pub use orbit::{certify_characteristic, orbit, precompose, Characteristic, OrbitRecord, OrbitSummary};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutActError {
    #[error("homomorphism has genus {0} but the automorphism has genus {1}")]
    GenusMismatch(usize, usize),
    #[error("precomposing by {0} breaks the relator; the automorphism is not well defined")]
    RelatorViolated(String),
    #[error("orbit seed is not surjective")]
    NotSurjective,
    #[error("orbit exceeds the cap of {0} members")]
    OrbitTooLarge(usize),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finquot::{enumerate_epis, FiniteTarget, TargetKind};

    fn c2_epis() -> Vec<crate::finquot::FiniteHom> {
        let t = Arc::new(FiniteTarget::new(TargetKind::Cyclic2).unwrap());
        enumerate_epis(2, &t, 1000).unwrap()
    }

    #[test]
    fn c2_orbit_is_all_fifteen_epis() {
        let epis = c2_epis();
        let gens = standard_autgens(2);
        for seed in &epis {
            let rec = orbit(seed, &gens, false, 1000).unwrap();
            assert_eq!(rec.k(), 15);
            assert!(rec.members().contains(seed));
            assert_eq!(rec.members(), &epis[..]);
            assert!(certify_characteristic(&rec, &gens).unwrap().holds);
        }
    }

    #[test]
    fn deleting_a_member_is_detected() {
        let gens = standard_autgens(2);
        let rec = orbit(&c2_epis()[0], &gens, false, 1000).unwrap();
        let broken = rec.without_member(3);
        let c = certify_characteristic(&broken, &gens).unwrap();
        assert!(!c.holds);
        assert!(c.witness.is_some());
    }

    #[test]
    fn identity_precomposition() {
        let h = &c2_epis()[5];
        assert_eq!(&precompose(h, &AutGen::identity(2)).unwrap(), h);
    }

    #[test]
    fn non_surjective_seed_is_rejected() {
        let t = Arc::new(FiniteTarget::new(TargetKind::Cyclic2).unwrap());
        let trivial = crate::finquot::FiniteHom::new(t, vec![0; 4]).unwrap();
        assert!(matches!(
            orbit(&trivial, &standard_autgens(2), false, 10),
            Err(AutActError::NotSurjective)
        ));
    }
}
