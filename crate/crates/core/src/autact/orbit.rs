use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{AutActError, AutGen};
use crate::finquot::{FiniteHom, HomRecord};

/// `ρ ∘ σ`: each generator goes to `ρ` evaluated on its image under `σ`.
pub fn precompose(rho: &FiniteHom, sigma: &AutGen) -> Result<FiniteHom, AutActError> {
    if sigma.genus() != rho.genus() {
        return Err(AutActError::GenusMismatch(rho.genus(), sigma.genus()));
    }
    let images = sigma.images.iter().map(|w| rho.eval(w)).collect();
    FiniteHom::new(std::sync::Arc::clone(rho.target()), images)
        .map_err(|_| AutActError::RelatorViolated(sigma.name.clone()))
}

fn class_key(h: &FiniteHom, modded: bool) -> FiniteHom {
    if modded {
        h.canonical()
    } else {
        h.clone()
    }
}

/// A set of homomorphisms closed under precomposition by a generator set,
/// optionally taken up to postcomposition by target automorphisms (then each
/// member is the least element of its class).
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    seed: FiniteHom,
    members: Vec<FiniteHom>,
    modded_by_target_auts: bool,
    generator_labels: Vec<String>,
}

/// Serialized orbit summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub seed: HomRecord,
    pub k: usize,
    pub modded_by_target_auts: bool,
    pub generators: Vec<String>,
}

impl OrbitRecord {
    pub fn seed(&self) -> &FiniteHom {
        &self.seed
    }

    pub fn members(&self) -> &[FiniteHom] {
        &self.members
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn modded_by_target_auts(&self) -> bool {
        self.modded_by_target_auts
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    /// The first `k` members, keeping the seed. The result is usually not
    /// closed.
    pub fn truncated(&self, k: usize) -> OrbitRecord {
        let mut members = vec![self.seed.clone()];
        members.extend(self.members.iter().filter(|m| **m != self.seed).take(k.saturating_sub(1)).cloned());
        members.sort_by(|x, y| x.images().cmp(y.images()));
        OrbitRecord {
            members,
            ..self.clone()
        }
    }

    /// The record with member `i` removed (for negative tests).
    pub fn without_member(&self, i: usize) -> OrbitRecord {
        let mut members = self.members.clone();
        members.remove(i);
        OrbitRecord {
            members,
            ..self.clone()
        }
    }

    pub fn summary(&self) -> OrbitSummary {
        OrbitSummary {
            seed: self.seed.to_record(),
            k: self.k(),
            modded_by_target_auts: self.modded_by_target_auts,
            generators: self.generator_labels.clone(),
        }
    }
}

/// Breadth-first closure of `{ρ}` under precomposition by `gens`. Members are
/// returned sorted by image tuple, so the result does not depend on which
/// member was the seed.
pub fn orbit(rho: &FiniteHom, gens: &[AutGen], mod_target_auts: bool, cap: usize) -> Result<OrbitRecord, AutActError> {
    if !rho.is_surjective() {
        return Err(AutActError::NotSurjective);
    }
    let seed = class_key(rho, mod_target_auts);
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    seen.insert(seed.images().to_vec(), ());
    let mut members = vec![seed.clone()];
    let mut i = 0;
    while i < members.len() {
        let current = members[i].clone();
        i += 1;
        for sigma in gens {
            let next = class_key(&precompose(&current, sigma)?, mod_target_auts);
            if seen.insert(next.images().to_vec(), ()).is_none() {
                if members.len() >= cap {
                    return Err(AutActError::OrbitTooLarge(cap));
                }
                members.push(next);
            }
        }
    }
    members.sort_by(|x, y| x.images().cmp(y.images()));
    Ok(OrbitRecord {
        seed,
        members,
        modded_by_target_auts: mod_target_auts,
        generator_labels: gens.iter().map(|g| g.name.clone()).collect(),
    })
}

/// Outcome of checking that a record is closed under a generator set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characteristic {
    pub holds: bool,
    pub generators: Vec<String>,
    /// For each generator `σ`, the index map `i ↦ j` with
    /// `members[j] = members[i] ∘ σ` (up to class when modded). Empty when
    /// closure fails.
    pub evidence: Vec<Vec<u32>>,
    /// `(member index, generator label)` of the first escape, if any.
    pub witness: Option<(usize, String)>,
}

/// Checks that precomposing any member by any generator lands back in the
/// record. When this holds, the kernel of the product of all members is
/// invariant under the generators.
pub fn certify_characteristic(rec: &OrbitRecord, gens: &[AutGen]) -> Result<Characteristic, AutActError> {
    let index: HashMap<&[u32], usize> =
        rec.members.iter().enumerate().map(|(i, m)| (m.images(), i)).collect();
    let mut evidence = Vec::with_capacity(gens.len());
    for sigma in gens {
        let mut perm = Vec::with_capacity(rec.k());
        for (i, m) in rec.members.iter().enumerate() {
            let next = class_key(&precompose(m, sigma)?, rec.modded_by_target_auts);
            match index.get(next.images()) {
                Some(&j) => perm.push(j as u32),
                None => {
                    return Ok(Characteristic {
                        holds: false,
                        generators: gens.iter().map(|g| g.name.clone()).collect(),
                        evidence: Vec::new(),
                        witness: Some((i, sigma.name.clone())),
                    })
                }
            }
        }
        evidence.push(perm);
    }
    Ok(Characteristic {
        holds: true,
        generators: gens.iter().map(|g| g.name.clone()).collect(),
        evidence,
        witness: None,
    })
}
