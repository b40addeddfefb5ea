//! Restriction of automorphisms of `Γ_g` to a finite-index subgroup that they
//! preserve, expressed in Reidemeister–Schreier generators.
//!
//! Automorphisms of the subgroup are stored extensionally: one Schreier word
//! per Schreier generator. Two such maps are equal when the expansions into
//! `Γ_g` agree under the Dehn word problem.

mod table;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autact::{standard_autgens, AutGen};
use crate::finquot::{FiniteHom, FiniteTarget, FinquotError, TargetKind};
use crate::surface::{SurfacePresentation, SurfaceWord};

pub use table::{CosetTable, RsWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphaError {
    #[error("subgroup does not live in the target of the homomorphism")]
    NotASubgroup,
    #[error("coset action is not transitive")]
    NotTransitive,
    #[error("word is not in the subgroup; it ends at coset {coset}")]
    NotInSubgroup { coset: u32 },
    #[error("CHARACTERISTIC-VIOLATION: {automorphism} sends Schreier generator {generator} to coset {coset}")]
    CharacteristicViolation {
        automorphism: String,
        generator: String,
        coset: u32,
    },
    #[error("automorphism has genus {0} but the table has genus {1}")]
    GenusMismatch(usize, usize),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown cover {0:?}")]
    UnknownCover(String),
    #[error(transparent)]
    Finquot(#[from] FinquotError),
}

/// `α(φ)`: the value on each Schreier generator, in Schreier generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutImage {
    pub source: String,
    pub values: Vec<RsWord>,
}

/// Serialized form: Schreier generator label to image word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutImageRecord {
    pub source: String,
    pub index: usize,
    pub values: BTreeMap<String, String>,
}

impl AutImage {
    pub fn identity(t: &CosetTable) -> AutImage {
        AutImage {
            source: "id".into(),
            values: (0..t.schreier_count()).map(RsWord::letter).collect(),
        }
    }

    /// Image of an arbitrary Schreier word.
    pub fn apply(&self, v: &RsWord) -> RsWord {
        v.0.iter().fold(RsWord::default(), |acc, &s| {
            let w = &self.values[s.unsigned_abs() as usize - 1];
            acc.concat(&if s > 0 { w.clone() } else { w.inverse() })
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AutImage) -> AutImage {
        AutImage {
            source: format!("{}*{}", self.source, other.source),
            values: other.values.iter().map(|v| self.apply(v)).collect(),
        }
    }

    pub fn to_record(&self, t: &CosetTable) -> AutImageRecord {
        AutImageRecord {
            source: self.source.clone(),
            index: t.index(),
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| (t.schreier_label(i), t.format_rs(v)))
                .collect(),
        }
    }
}

/// Whether two Schreier words stand for the same element of `Γ_g`.
pub fn rs_equal(t: &CosetTable, p: &SurfacePresentation, u: &RsWord, v: &RsWord) -> bool {
    u == v || p.words_equal(&t.expand(u), &t.expand(v))
}

/// Restricts `φ` to the subgroup: each Schreier generator is expanded into
/// `Γ_g`, mapped by `φ` and rewritten.
pub fn alpha_apply(t: &CosetTable, phi: &AutGen) -> Result<AutImage, AlphaError> {
    if phi.genus() != t.genus() {
        return Err(AlphaError::GenusMismatch(phi.genus(), t.genus()));
    }
    let values = (0..t.schreier_count())
        .map(|i| {
            let image = phi.apply(&t.schreier_word(i));
            t.rewrite(&image).map_err(|e| match e {
                AlphaError::NotInSubgroup { coset } => AlphaError::CharacteristicViolation {
                    automorphism: phi.name.clone(),
                    generator: t.schreier_label(i),
                    coset,
                },
                other => other,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(AutImage {
        source: phi.name.clone(),
        values,
    })
}

/// Every value expands to `φ` of the expanded generator.
pub fn autimage_consistent(t: &CosetTable, p: &SurfacePresentation, phi: &AutGen, img: &AutImage) -> bool {
    img.values.len() == t.schreier_count()
        && img
            .values
            .iter()
            .enumerate()
            .all(|(i, v)| p.words_equal(&t.expand(v), &phi.apply(&t.schreier_word(i))))
}

/// Two images agree generator-wise after expansion.
pub fn autimages_equal(t: &CosetTable, p: &SurfacePresentation, x: &AutImage, y: &AutImage) -> bool {
    x.values.len() == y.values.len() && x.values.iter().zip(&y.values).all(|(u, v)| rs_equal(t, p, u, v))
}

/// `α(φ ∘ ψ) = α(φ) ∘ α(ψ)`.
pub fn homomorphism_law_holds(
    t: &CosetTable,
    p: &SurfacePresentation,
    phi: &AutGen,
    psi: &AutGen,
) -> Result<bool, AlphaError> {
    let lhs = alpha_apply(t, &phi.compose(psi, p))?;
    let rhs = alpha_apply(t, phi)?.compose(&alpha_apply(t, psi)?);
    Ok(autimages_equal(t, p, &lhs, &rhs))
}

/// Conjugation by `v` inside the subgroup, as an [`AutImage`].
pub fn inner_image(t: &CosetTable, v: &RsWord) -> AutImage {
    AutImage {
        source: format!("inn({})", t.format_rs(v)),
        values: (0..t.schreier_count())
            .map(|i| v.concat(&RsWord::letter(i)).concat(&v.inverse()))
            .collect(),
    }
}

/// For `u` in the subgroup, `α(inn_u) = inn_{rewrite(u)}`.
pub fn inner_compatibility_holds(
    t: &CosetTable,
    p: &SurfacePresentation,
    u: &SurfaceWord,
) -> Result<bool, AlphaError> {
    let v = t.rewrite(u)?;
    let lhs = alpha_apply(t, &AutGen::inner(t.genus(), u, format!("inn({u})")))?;
    Ok(autimages_equal(t, p, &lhs, &inner_image(t, &v)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub holds: bool,
    pub index: usize,
    pub checked_generators: usize,
}

/// Conjugation by each Schreier generator restricts to the corresponding
/// inner automorphism of the subgroup, so the image of `α` contains the
/// subgroup's inner automorphisms, at index `d` in `Γ_g`.
pub fn verify_finite_index_containment(t: &CosetTable, p: &SurfacePresentation) -> Result<Containment, AlphaError> {
    let mut holds = t.relator_acts_trivially();
    for i in 0..t.schreier_count() {
        holds &= inner_compatibility_holds(t, p, &t.schreier_word(i))?;
    }
    Ok(Containment {
        holds,
        index: t.index(),
        checked_generators: t.schreier_count(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Injectivity {
    /// `α(φ)` fixes every Schreier generator.
    pub alpha_trivial: bool,
    /// `φ` fixes every standard generator.
    pub phi_trivial: bool,
    /// `alpha_trivial ⇒ phi_trivial`.
    pub holds: bool,
    /// Per standard generator `x`: least `m ≤ bound` with `x^m` in the
    /// subgroup, and whether `φ` fixes that power.
    pub roots: Vec<(String, Option<usize>, bool)>,
}

/// Checks on one `φ` that a trivial restriction forces a trivial `φ`, along
/// with the root data the argument runs on: each generator has a power in
/// the subgroup, which a trivial restriction fixes.
pub fn verify_injectivity_mechanism(
    t: &CosetTable,
    p: &SurfacePresentation,
    phi: &AutGen,
    bound: usize,
) -> Result<Injectivity, AlphaError> {
    let img = alpha_apply(t, phi)?;
    let alpha_trivial = autimages_equal(t, p, &img, &AutImage::identity(t));
    let gens = p.generators();
    let phi_trivial = gens.iter().all(|x| p.words_equal(&phi.apply(x), x));
    let roots = gens
        .iter()
        .map(|x| {
            let m = (1..=bound).find(|&m| t.trace(0, &x.pow(m as i64)) == 0);
            let fixed = m.is_some_and(|m| {
                let xm = x.pow(m as i64);
                p.words_equal(&phi.apply(&xm), &xm)
            });
            (x.to_string(), m, fixed)
        })
        .collect();
    Ok(Injectivity {
        alpha_trivial,
        phi_trivial,
        holds: !alpha_trivial || phi_trivial,
        roots,
    })
}

/// `Γ_2 → C₂⁴` sending each generator to its own basis vector; the kernel is
/// the mod-2 homology cover, of index 16.
pub fn homology_cover(g: usize) -> Result<FiniteHom, AlphaError> {
    let target = Arc::new(FiniteTarget::new(TargetKind::ElementaryAbelian2(2 * g as u32))?);
    let gens = target.generators().to_vec();
    Ok(FiniteHom::from_perms(target, &gens)?)
}

/// Named covers accepted on the command line.
pub fn named_cover(name: &str, g: usize) -> Result<CosetTable, AlphaError> {
    match name {
        "homology2" if g == 2 => CosetTable::for_kernel(homology_cover(2)?),
        "homology" => CosetTable::for_kernel(homology_cover(g)?),
        "c2" => {
            let target = Arc::new(FiniteTarget::new(TargetKind::Cyclic2)?);
            let mut images = vec![0u32; 2 * g];
            images[0] = 1;
            CosetTable::for_kernel(FiniteHom::new(target, images)?)
        }
        "trivial" => {
            let target = Arc::new(FiniteTarget::new(TargetKind::Trivial)?);
            CosetTable::for_kernel(FiniteHom::new(target, vec![0; 2 * g])?)
        }
        _ => Err(AlphaError::UnknownCover(name.to_string())),
    }
}

/// A word of the subgroup: a random word of length `len` followed by the
/// inverse transversal word of the coset it reaches.
pub fn random_subgroup_word<R: Rng + ?Sized>(t: &CosetTable, rng: &mut R, len: usize) -> SurfaceWord {
    let rank = 2 * t.genus() as i32;
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let x = rng.random_range(1..=rank);
        letters.push(if rng.random_bool(0.5) { x } else { -x });
    }
    let w = SurfaceWord::from_letters(letters);
    let c = t.trace(0, &w);
    w.concat(&t.rep(c).inverse())
}

/// Named verification suites run by [`run_suites`].
pub const SUITES: [&str; 5] = ["consistency", "homomorphism", "inner", "containment", "injectivity"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub checked: usize,
    pub failures: usize,
}

/// Runs the named suites against the standard generators of the table's
/// genus. `inner_samples` random subgroup words are drawn from `seed`.
pub fn run_suites(
    t: &CosetTable,
    p: &SurfacePresentation,
    names: &[&str],
    inner_samples: usize,
    seed: u64,
) -> Result<Vec<SuiteResult>, AlphaError> {
    let gens = standard_autgens(t.genus());
    let mut out = Vec::new();
    for &name in names {
        let outcomes: Vec<bool> = match name {
            "consistency" => gens
                .iter()
                .map(|f| Ok(autimage_consistent(t, p, f, &alpha_apply(t, f)?)))
                .collect::<Result<_, AlphaError>>()?,
            "homomorphism" => {
                let mut v = Vec::new();
                for f in &gens {
                    for h in &gens {
                        v.push(homomorphism_law_holds(t, p, f, h)?);
                    }
                }
                v
            }
            "inner" => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..inner_samples)
                    .map(|i| {
                        let u = random_subgroup_word(t, &mut rng, 1 + i % 10);
                        inner_compatibility_holds(t, p, &u)
                    })
                    .collect::<Result<_, _>>()?
            }
            "containment" => vec![verify_finite_index_containment(t, p)?.holds],
            "injectivity" => gens
                .iter()
                .map(|f| Ok(verify_injectivity_mechanism(t, p, f, 2 * t.index().max(1))?.holds))
                .collect::<Result<_, AlphaError>>()?,
            other => return Err(AlphaError::UnknownSuite(other.to_string())),
        };
        let failures = outcomes.iter().filter(|ok| !**ok).count();
        out.push(SuiteResult {
            name: name.to_string(),
            pass: failures == 0,
            checked: outcomes.len(),
            failures,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;

    fn p2() -> SurfacePresentation {
        SurfacePresentation::new(2).unwrap()
    }

    #[test]
    fn index_two_table() {
        let t = named_cover("c2", 2).unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(t.schreier_count(), 7);
        assert!(t.relator_acts_trivially());
        assert!(t.rep(0).is_empty());
        for c in 0..2 {
            assert_eq!(t.trace(0, t.rep(c)), c);
        }
    }

    #[test]
    fn trivial_cover_keeps_the_generators() {
        let t = named_cover("trivial", 2).unwrap();
        assert_eq!(t.index(), 1);
        let words: Vec<String> = t.schreier_words().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["a1", "b1", "a2", "b2"]);
        let c = verify_finite_index_containment(&t, &p2()).unwrap();
        assert!(c.holds);
        assert_eq!(c.index, 1);
    }

    #[test]
    fn homology_table() {
        let t = named_cover("homology2", 2).unwrap();
        assert_eq!(t.index(), 16);
        assert_eq!(t.schreier_count(), 2 * 2 * 16 - 15);
        assert!(t.relator_acts_trivially());
        for w in t.schreier_words() {
            assert_eq!(t.trace(0, &w), 0);
        }
    }

    #[test]
    fn rewriting_generators_and_products() {
        let p = p2();
        let t = named_cover("homology2", 2).unwrap();
        for i in 0..t.schreier_count() {
            assert_eq!(t.rewrite(&t.schreier_word(i)).unwrap(), RsWord::letter(i));
        }
        assert_eq!(t.rewrite(&SurfaceWord::empty()).unwrap(), RsWord::default());
        let w = t.schreier_word(3).concat(&t.schreier_word(10));
        let v = t.rewrite(&w).unwrap();
        assert!(p.words_equal(&t.expand(&v), &w));
        assert!(matches!(
            t.rewrite(&SurfaceWord::letter(1)),
            Err(AlphaError::NotInSubgroup { coset: c }) if c != 0
        ));
    }

    #[test]
    fn identity_and_twists() {
        let p = p2();
        let t = named_cover("homology2", 2).unwrap();
        let id = alpha_apply(&t, &AutGen::identity(2)).unwrap();
        assert_eq!(id, AutImage::identity(&t));
        let twist = &standard_autgens(2)[0];
        let img = alpha_apply(&t, twist).unwrap();
        assert!(autimage_consistent(&t, &p, twist, &img));
        let inj = verify_injectivity_mechanism(&t, &p, twist, 4).unwrap();
        assert!(!inj.alpha_trivial && inj.holds);
        assert!(inj.roots.iter().all(|(_, m, _)| *m == Some(2)));
    }

    #[test]
    fn inner_by_outside_word_is_not_trivial() {
        let p = p2();
        let t = named_cover("homology2", 2).unwrap();
        let u = SurfaceWord::letter(1);
        assert!(t.rewrite(&u).is_err());
        let inj = verify_injectivity_mechanism(&t, &p, &AutGen::inner(2, &u, "inn_a1"), 4).unwrap();
        assert!(!inj.alpha_trivial);
        assert!(!inj.phi_trivial);
    }

    #[test]
    fn non_preserved_subgroup_is_a_violation() {
        // ρ⁻¹(⟨(0 1)⟩) for ρ onto S₃ is not normal, so some generator moves it.
        let target = Arc::new(FiniteTarget::new(TargetKind::Symmetric3).unwrap());
        let rho = crate::finquot::first_epi(2, &target).unwrap();
        let sub = PermGroup::with_degree(3, vec![crate::perm::Permutation::from_cycles(3, &[&[0, 1]]).unwrap()])
            .unwrap();
        let t = CosetTable::new(rho, sub).unwrap();
        assert_eq!(t.index(), 3);
        let violations = standard_autgens(2)
            .iter()
            .filter(|f| matches!(alpha_apply(&t, f), Err(AlphaError::CharacteristicViolation { .. })))
            .count();
        assert!(violations > 0);
    }

    #[test]
    fn record_uses_labels() {
        let t = named_cover("c2", 2).unwrap();
        let rec = AutImage::identity(&t).to_record(&t);
        assert_eq!(rec.values.len(), 7);
        assert!(rec.values.iter().all(|(k, v)| k == v));
    }
}
