use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::certificate::*;
use super::image::{build_subdirect_image, SubdirectImage};
use super::ForgeError;
use crate::autact::{certify_characteristic, orbit, standard_autgens, Characteristic, OrbitRecord};
use crate::config::Budgets;
use crate::finquot::{
    borel_generators, borel_subgroup, first_epi, outer_diagonal, FiniteHom, FiniteTarget, TargetKind,
};
use crate::perm::{
    find_conjugator, normalizer_is_self, normalizer_is_self_by_enumeration, sylow2_seeded, NormalizerMethod,
    PermGroup, SubgroupWitness,
};
use crate::surface::cover_genus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgeOptions {
    pub budgets: Budgets,
    pub seed: u64,
    /// Keep only this many orbit members. The result is generally not
    /// closed under automorphisms and is flagged as such.
    pub truncate: Option<usize>,
}

impl Default for ForgeOptions {
    fn default() -> Self {
        ForgeOptions {
            budgets: Budgets::default(),
            seed: 0,
            truncate: None,
        }
    }
}

/// The lexicographically first epimorphism for a route.
pub fn default_seed(g: usize, route: Route) -> Result<FiniteHom, ForgeError> {
    let kind = match route {
        Route::SylowS3 => TargetKind::Symmetric3,
        Route::HallPsl2(p) => TargetKind::Psl2(p),
    };
    Ok(first_epi(g, &Arc::new(FiniteTarget::new(kind)?))?)
}

fn precheck(seed: &FiniteHom, expected: &str, ok: bool) -> Result<(), ForgeError> {
    if !ok {
        return Err(ForgeError::WrongTarget {
            expected: expected.into(),
            found: seed.target().kind(),
        });
    }
    if seed.genus() < 2 {
        return Err(ForgeError::GenusTooSmall(seed.genus()));
    }
    if !seed.is_surjective() {
        return Err(ForgeError::NotSurjective);
    }
    Ok(())
}

fn collect_orbit(seed: &FiniteHom, modded: bool, opts: &ForgeOptions) -> Result<(OrbitRecord, Characteristic), ForgeError> {
    let gens = standard_autgens(seed.genus());
    let full = orbit(seed, &gens, modded, opts.budgets.orbit_cap)?;
    let rec = match opts.truncate {
        Some(n) if n < full.k() => full.truncated(n.max(1)),
        _ => full,
    };
    let chr = certify_characteristic(&rec, &gens)?;
    Ok((rec, chr))
}

fn skeleton(route: Route, seed: &FiniteHom, rec: &OrbitRecord, chr: Characteristic, opts: &ForgeOptions) -> CoverCertificate {
    CoverCertificate {
        version: CERTIFICATE_VERSION,
        route,
        status: Status::Invalid,
        failing_stage: None,
        notes: Vec::new(),
        genus_in: seed.genus() as u64,
        k: rec.k(),
        orbit: rec.summary(),
        g_order: None,
        order_method: OrderMethod::Unknown,
        h_order: None,
        degree: None,
        genus_out: None,
        checks: Checks {
            a: Check::not_run(),
            b: Check::not_run(),
            characteristic: CharacteristicCheck {
                pass: chr.holds,
                gens: GENERATOR_SET.into(),
                generator_labels: chr.generators,
                evidence: chr.evidence,
                witness: chr.witness,
            },
        },
        k_trivial: false,
        hall: None,
        seed_material: SeedMaterial {
            rng_seed: opts.seed,
            conjugacy_seed: None,
            generator_set: GENERATOR_SET.into(),
        },
        timing: Timing::default(),
    }
}

fn set_orders(cert: &mut CoverCertificate, g_order: BigUint, h_order: BigUint) -> Result<(), ForgeError> {
    let d = &g_order / &h_order;
    cert.genus_out = Some(cover_genus(cert.genus_in, &d)?);
    cert.degree = Some(d);
    cert.g_order = Some(g_order);
    cert.h_order = Some(h_order);
    Ok(())
}

/// Sets the status from the checks. A failed check makes the certificate
/// INVALID; otherwise a skipped stage makes it PARTIAL.
fn conclude(cert: &mut CoverCertificate, skipped: Option<Stage>, start: Instant) {
    let degree_ok = cert.degree.as_ref().is_none_or(|d| *d > BigUint::one());
    let failures = [
        (Stage::CheckA, cert.checks.a.method != Method::NotRun && !cert.checks.a.pass),
        (Stage::CheckB, cert.checks.b.method != Method::NotRun && !cert.checks.b.pass),
        (Stage::Characteristic, !cert.checks.characteristic.pass),
        (Stage::Degree, !degree_ok),
    ];
    if let Some((stage, _)) = failures.iter().find(|(_, bad)| *bad) {
        cert.status = Status::Invalid;
        cert.failing_stage = Some(*stage);
    } else if let Some(stage) = skipped {
        cert.status = Status::Partial;
        cert.failing_stage = Some(stage);
    } else {
        cert.status = Status::Valid;
        cert.failing_stage = None;
    }
    cert.timing.total_ms = start.elapsed().as_millis() as u64;
}

fn fail(mut cert: CoverCertificate, stage: Stage, note: String, start: Instant) -> CoverCertificate {
    cert.status = Status::Invalid;
    cert.failing_stage = Some(stage);
    cert.notes.push(note);
    cert.timing.total_ms = start.elapsed().as_millis() as u64;
    cert
}

/// The S₃ route: `G` is the image of the full orbit product in S₃ᵏ and `H` a
/// Sylow 2-subgroup of it, so all conjugates of `H` are Sylow and condition
/// (b) reduces to Sylow conjugacy.
pub fn forge_certificate_s3(seed: &FiniteHom, opts: &ForgeOptions) -> Result<CoverCertificate, ForgeError> {
    let start = Instant::now();
    precheck(seed, "s3", seed.target().kind() == TargetKind::Symmetric3)?;
    let (rec, chr) = collect_orbit(seed, false, opts)?;
    let cert = skeleton(Route::SylowS3, seed, &rec, chr, opts);
    let image = build_subdirect_image(&rec, opts.budgets.bsgs_point_cap)?;
    finish_s3(cert, &image, opts, start)
}

fn finish_s3(
    mut cert: CoverCertificate,
    image: &SubdirectImage,
    opts: &ForgeOptions,
    start: Instant,
) -> Result<CoverCertificate, ForgeError> {
    let bound = opts.budgets.enumeration_bound;
    let Some(g) = image.group() else {
        cert.notes.push(format!(
            "{} points exceed the stabilizer chain cap of {}; only factor surjectivity was checked",
            image.degree(),
            opts.budgets.bsgs_point_cap
        ));
        conclude(&mut cert, Some(Stage::Subdirect), start);
        return Ok(cert);
    };
    cert.order_method = OrderMethod::Bsgs;
    let h = match sylow2_seeded(g, opts.seed, bound) {
        Ok(h) => h,
        Err(e) => return Ok(fail(cert, Stage::Sylow, e.to_string(), start)),
    };
    set_orders(&mut cert, g.order().clone(), h.sub().order().clone())?;
    match normalizer_is_self(&h, bound) {
        Ok((pass, method)) => {
            cert.checks.a = Check {
                pass,
                method: match method {
                    NormalizerMethod::Enumeration => Method::Enumeration,
                    NormalizerMethod::Structural => Method::Structural,
                },
            };
        }
        Err(e) => return Ok(fail(cert, Stage::CheckA, e.to_string(), start)),
    }
    cert.k_trivial = cert.checks.a.pass;
    let other_seed = opts.seed.wrapping_add(1);
    cert.seed_material.conjugacy_seed = Some(other_seed);
    let conjugate = sylow2_seeded(g, other_seed, bound)
        .and_then(|h2| find_conjugator(g, h.sub(), h2.sub(), bound).map(|x| x.is_some()));
    match conjugate {
        Ok(pass) => {
            cert.checks.b = Check {
                pass,
                method: Method::SylowConjugacy,
            }
        }
        Err(e) => return Ok(fail(cert, Stage::CheckB, e.to_string(), start)),
    }
    conclude(&mut cert, None, start);
    Ok(cert)
}

/// First pair of members with equal canonical forms under target
/// automorphisms.
fn equivalent_pair(members: &[FiniteHom]) -> Option<(usize, usize)> {
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    for (j, m) in members.iter().enumerate() {
        if let Some(&i) = seen.get(m.canonical().images()) {
            return Some((i, j));
        }
        seen.insert(m.canonical().images().to_vec(), j);
    }
    None
}

/// The product of Borel subgroups, one per block.
fn borel_product(p: u64, n: usize) -> Vec<crate::perm::Permutation> {
    let m = p as usize + 1;
    let mut gens = Vec::new();
    for j in 0..n {
        gens.extend(borel_generators(p).iter().map(|x| x.shifted(j * m, n * m)));
    }
    gens
}

/// The PSL₂(F_p) route: members are pairwise inequivalent epimorphisms onto a
/// simple group, so `G` is the full product, and `H` is the product of Borel
/// subgroups.
pub fn forge_certificate_hall(seed: &FiniteHom, opts: &ForgeOptions) -> Result<CoverCertificate, ForgeError> {
    let start = Instant::now();
    let p = match seed.target().kind() {
        TargetKind::Psl2(p) => p,
        _ => 0,
    };
    precheck(seed, "psl2(p)", p != 0)?;
    let (rec, chr) = collect_orbit(seed, true, opts)?;
    let mut cert = skeleton(Route::HallPsl2(p), seed, &rec, chr, opts);
    let target = seed.target();
    let n = rec.k();
    let pair = equivalent_pair(rec.members());
    let borel = borel_subgroup(p)?;
    let borel_order = borel.sub().order_u64().expect("small");
    let psl = Arc::clone(borel.ambient_arc());
    let delta = outer_diagonal(p);
    let moved = PermGroup::with_degree(
        psl.degree(),
        borel.sub().generators().iter().map(|x| delta.conjugate(x)).collect(),
    )?;
    let outer_ok = !psl.contains(&delta)?
        && find_conjugator(&psl, borel.sub(), &moved, opts.budgets.enumeration_bound)?.is_some();
    cert.hall = Some(HallEvidence {
        prime: p,
        n,
        collection_complete: opts.truncate.is_none_or(|t| t >= n) && cert.checks.characteristic.pass,
        inequivalent: pair.is_none() && target.is_nonabelian_simple(),
        equivalent_pair: pair,
        borel_order,
        outer_maps_borel_to_conjugate: outer_ok,
    });
    if let Some((i, j)) = pair {
        let note = format!("members {i} and {j} are equivalent under target automorphisms");
        return Ok(fail(cert, Stage::HallHypothesis, note, start));
    }
    let q = BigUint::from(target.order());
    let expected = q.pow(n as u32);
    let bounded = n <= opts.budgets.product_factor_cap && n * (p as usize + 1) <= opts.budgets.bsgs_point_cap;
    let mut skipped = None;
    let mut built = None;
    if bounded {
        let image = build_subdirect_image(&rec, opts.budgets.bsgs_point_cap)?;
        let g = Arc::clone(image.group().expect("within cap"));
        if *g.order() != expected {
            let note = format!("product order {} differs from |Q|^n = {expected}", g.order());
            cert.g_order = Some(g.order().clone());
            cert.order_method = OrderMethod::Bsgs;
            return Ok(fail(cert, Stage::Surjectivity, note, start));
        }
        cert.order_method = OrderMethod::Bsgs;
        built = Some(g);
    } else {
        cert.order_method = OrderMethod::HallLemma;
        cert.notes.push(format!(
            "{n} factors exceed the direct product check budget; the order follows from pairwise inequivalence"
        ));
        skipped = Some(Stage::Surjectivity);
    }
    set_orders(&mut cert, expected, BigUint::from(borel_order).pow(n as u32))?;
    let bound = opts.budgets.enumeration_bound;
    let factor_ok = normalizer_is_self_by_enumeration(&borel, bound)?;
    cert.checks.a = Check {
        pass: factor_ok,
        method: Method::FactorWise,
    };
    if let Some(g) = built.filter(|g| g.order().to_u64().is_some_and(|x| x <= bound)) {
        let h = PermGroup::with_degree(g.degree(), borel_product(p, n))?;
        let w = SubgroupWitness::new(g, h)?;
        let whole = normalizer_is_self_by_enumeration(&w, bound)?;
        if whole != factor_ok {
            return Ok(fail(
                cert,
                Stage::CheckA,
                "factor-wise and enumerated normalizer checks disagree".into(),
                start,
            ));
        }
        cert.checks.a.method = Method::Enumeration;
    }
    cert.k_trivial = cert.checks.a.pass;
    cert.checks.b = Check {
        pass: outer_ok,
        method: Method::Explicit,
    };
    conclude(&mut cert, skipped, start);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(truncate: Option<usize>) -> ForgeOptions {
        ForgeOptions {
            truncate,
            ..ForgeOptions::default()
        }
    }

    #[test]
    fn unit_pipeline() {
        let seed = default_seed(2, Route::SylowS3).unwrap();
        let c = forge_certificate_s3(&seed, &opts(Some(1))).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.g_order, Some(6u32.into()));
        assert_eq!(c.h_order, Some(2u32.into()));
        assert_eq!(c.degree, Some(3u32.into()));
        assert_eq!(c.genus_out, Some(4u32.into()));
        assert!(c.checks.a.pass && c.checks.b.pass);
        assert!(!c.checks.characteristic.pass);
        assert_eq!(c.status, Status::Invalid);
        assert_eq!(c.failing_stage, Some(Stage::Characteristic));
    }

    #[test]
    fn hall_small_collections() {
        let seed = default_seed(2, Route::HallPsl2(5)).unwrap();
        let one = forge_certificate_hall(&seed, &opts(Some(1))).unwrap();
        assert_eq!(one.degree, Some(6u32.into()));
        assert_eq!(one.genus_out, Some(7u32.into()));
        let two = forge_certificate_hall(&seed, &opts(Some(2))).unwrap();
        assert_eq!(two.g_order, Some(3600u32.into()));
        assert_eq!(two.h_order, Some(100u32.into()));
        assert_eq!(two.degree, Some(36u32.into()));
        assert_eq!(two.genus_out, Some(37u32.into()));
        assert_eq!(two.checks.a.method, Method::Enumeration);
        assert!(two.checks.a.pass && two.checks.b.pass);
        assert_eq!(two.status, Status::Invalid);
        assert_eq!(two.failing_stage, Some(Stage::Characteristic));
    }

    #[test]
    fn wrong_target_and_non_surjective_seed() {
        let s3 = default_seed(2, Route::SylowS3).unwrap();
        assert!(matches!(
            forge_certificate_hall(&s3, &opts(None)),
            Err(ForgeError::WrongTarget { .. })
        ));
        let trivial = FiniteHom::new(Arc::clone(s3.target()), vec![0; 4]).unwrap();
        assert_eq!(forge_certificate_s3(&trivial, &opts(None)), Err(ForgeError::NotSurjective));
    }
}
