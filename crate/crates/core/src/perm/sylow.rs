use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::s3::{s3_factor_count, S3Structure, TwoSubgroupShape};
use super::{PermError, PermGroup, Permutation};

/// A subgroup together with the group it lives in.
#[derive(Clone, Debug)]
pub struct SubgroupWitness {
    ambient: Arc<PermGroup>,
    sub: PermGroup,
    index: BigUint,
}

impl SubgroupWitness {
    /// Checks that every generator of `sub` lies in `ambient`.
    pub fn new(ambient: Arc<PermGroup>, sub: PermGroup) -> Result<Self, PermError> {
        if sub.degree() != ambient.degree() {
            return Err(PermError::DegreeMismatch(ambient.degree(), sub.degree()));
        }
        if !ambient.contains_group(&sub) {
            return Err(PermError::NotSubgroup);
        }
        let index = ambient.order() / sub.order();
        debug_assert!((ambient.order() % sub.order()).is_zero());
        Ok(SubgroupWitness {
            ambient,
            sub,
            index,
        })
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn ambient_arc(&self) -> &Arc<PermGroup> {
        &self.ambient
    }

    pub fn sub(&self) -> &PermGroup {
        &self.sub
    }

    pub fn index(&self) -> &BigUint {
        &self.index
    }
}

/// Which decision procedure answered a normalizer question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizerMethod {
    Enumeration,
    Structural,
}

/// The largest power of two dividing `n` (`n > 0`).
pub fn two_part(n: &BigUint) -> BigUint {
    let tz = n.trailing_zeros().unwrap_or(0);
    BigUint::one() << tz
}

/// A Sylow 2-subgroup, using seed 0.
pub fn sylow2(g: &Arc<PermGroup>, bound: u64) -> Result<SubgroupWitness, PermError> {
    sylow2_seeded(g, 0, bound)
}

/// A Sylow 2-subgroup. Subgroups of S₃ᵏ are handled by linear algebra; other
/// groups fall back to [`sylow2_by_growth`], which needs `|g| ≤ bound`.
/// Different seeds may give different (conjugate) subgroups.
pub fn sylow2_seeded(g: &Arc<PermGroup>, seed: u64, bound: u64) -> Result<SubgroupWitness, PermError> {
    if s3_factor_count(g).is_none() {
        return sylow2_by_growth(g, seed, bound);
    }
    let st = S3Structure::analyze(g)?;
    if st.order() != *g.order() {
        return Err(PermError::Inconsistent(format!(
            "block structure gives order {} but the stabilizer chain gives {}",
            st.order(),
            g.order()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, gens) = st.sylow2(&mut rng)?;
    let sub = PermGroup::with_degree(g.degree(), gens)?;
    let w = SubgroupWitness::new(Arc::clone(g), sub)?;
    let target = two_part(g.order());
    if *w.sub.order() != target {
        return Err(PermError::SylowStalled {
            reached: w.sub.order().to_string(),
            target: target.to_string(),
        });
    }
    Ok(w)
}

fn normalizes(p: &PermGroup, x: &Permutation) -> bool {
    p.generators()
        .iter()
        .all(|h| p.contains_unchecked(&x.conjugate(h)))
}

/// Grows a 2-subgroup one step at a time: while `P` is not Sylow, some
/// `x ∈ N_G(P) \ P` has `x² ∈ P`, and `⟨P, x⟩` doubles `P`.
pub fn sylow2_by_growth(g: &Arc<PermGroup>, seed: u64, bound: u64) -> Result<SubgroupWitness, PermError> {
    let target = two_part(g.order());
    let mut elements = g.elements(bound)?;
    elements.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut p = PermGroup::trivial(g.degree());
    while *p.order() != target {
        let step = elements.iter().find(|x| {
            !p.contains_unchecked(x) && p.contains_unchecked(&x.pow(2)) && normalizes(&p, x)
        });
        let Some(x) = step else {
            return Err(PermError::SylowStalled {
                reached: p.order().to_string(),
                target: target.to_string(),
            });
        };
        let mut gens = p.generators().to_vec();
        gens.push(x.clone());
        p = PermGroup::with_degree(g.degree(), gens)?;
    }
    SubgroupWitness::new(Arc::clone(g), p)
}

/// Decides `N_G(H) = H`, scanning all of `G` when `|G| ≤ bound` and using
/// the block structure of S₃ᵏ otherwise.
pub fn normalizer_is_self(
    w: &SubgroupWitness,
    bound: u64,
) -> Result<(bool, NormalizerMethod), PermError> {
    match w.ambient.order().to_u64() {
        Some(n) if n <= bound => Ok((
            normalizer_is_self_by_enumeration(w, bound)?,
            NormalizerMethod::Enumeration,
        )),
        _ => Ok((normalizer_is_self_structural(w)?, NormalizerMethod::Structural)),
    }
}

pub fn normalizer_is_self_by_enumeration(w: &SubgroupWitness, bound: u64) -> Result<bool, PermError> {
    let elements = w.ambient.elements(bound)?;
    Ok(elements
        .iter()
        .all(|x| w.sub.contains_unchecked(x) || !normalizes(&w.sub, x)))
}

/// Structural decision for a 2-subgroup `H` of a block group `G ≤ S₃ᵏ`.
///
/// An element normalizing `H` must centralize each reflection `X_j` used by
/// `H`, and the centralizer of a reflection in S₃ is `{1, X_j}`; the count of
/// such elements of `G` is compared with `|H|`.
pub fn normalizer_is_self_structural(w: &SubgroupWitness) -> Result<bool, PermError> {
    let k = s3_factor_count(&w.ambient).ok_or(PermError::NotS3Product)?;
    let shape = TwoSubgroupShape::of(w.sub.generators(), k)?;
    if *w.sub.order() > shape.order_bound() {
        return Err(PermError::NotTwoGroup);
    }
    let st = S3Structure::analyze(&w.ambient)?;
    Ok(st.normalizer_order(&shape) == *w.sub.order())
}

/// `x h x⁻¹` as a fresh group.
pub fn conjugate_subgroup(
    g: &PermGroup,
    h: &PermGroup,
    x: &Permutation,
) -> Result<PermGroup, PermError> {
    if !g.contains(x)? {
        return Err(PermError::NotMember);
    }
    if h.degree() != g.degree() {
        return Err(PermError::DegreeMismatch(g.degree(), h.degree()));
    }
    if !g.contains_group(h) {
        return Err(PermError::NotSubgroup);
    }
    let gens = h.generators().iter().map(|y| x.conjugate(y)).collect();
    PermGroup::with_degree(h.degree(), gens)
}

/// Some `x ∈ G` with `x H₁ x⁻¹ = H₂`, or `None` if the two are not
/// conjugate. Small groups are scanned; Sylow subgroups of block groups are
/// matched by solving for a translation.
pub fn find_conjugator(
    g: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
    bound: u64,
) -> Result<Option<Permutation>, PermError> {
    if h1.order() != h2.order() {
        return Ok(None);
    }
    if g.order().to_u64().is_some_and(|n| n <= bound) {
        let elements = g.elements(bound)?;
        return Ok(elements.into_iter().find(|x| {
            h1.generators()
                .iter()
                .all(|y| h2.contains_unchecked(&x.conjugate(y)))
        }));
    }
    let k = s3_factor_count(g).ok_or(PermError::NotS3Product)?;
    if *h1.order() != two_part(g.order()) {
        return Err(PermError::NotTwoGroup);
    }
    let st = S3Structure::analyze(g)?;
    let s1 = TwoSubgroupShape::of(h1.generators(), k)?;
    let s2 = TwoSubgroupShape::of(h2.generators(), k)?;
    let Some(x) = st.sylow_conjugator(&s1, &s2) else {
        return Ok(None);
    };
    let ok = g.contains(&x)?
        && h1
            .generators()
            .iter()
            .all(|y| h2.contains_unchecked(&x.conjugate(y)));
    Ok(ok.then_some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn member_set(g: &PermGroup, bound: u64) -> Result<HashSet<Permutation>, PermError> {
        Ok(g.elements(bound)?.into_iter().collect())
    }

    const BOUND: u64 = 1_000_000;

    fn s3_block(j: usize, k: usize) -> Vec<Permutation> {
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        vec![t.shifted(3 * j, 3 * k), c.shifted(3 * j, 3 * k)]
    }

    fn s3() -> Arc<PermGroup> {
        Arc::new(PermGroup::from_generators(s3_block(0, 1)).unwrap())
    }

    fn sub(g: &Arc<PermGroup>, gens: Vec<Permutation>) -> SubgroupWitness {
        SubgroupWitness::new(Arc::clone(g), PermGroup::with_degree(g.degree(), gens).unwrap()).unwrap()
    }

    #[test]
    fn sylow_of_s3() {
        let g = s3();
        let w = sylow2(&g, BOUND).unwrap();
        assert_eq!(*w.sub().order(), BigUint::from(2u32));
        assert_eq!(*w.index(), BigUint::from(3u32));
        // Enumeration oracle: the elements of order dividing 2 in H.
        let members = member_set(w.sub(), BOUND).unwrap();
        assert!(members.iter().all(|x| x.pow(2).is_identity()));
    }

    #[test]
    fn sylow_of_s3_squared() {
        let mut gens = s3_block(0, 2);
        gens.extend(s3_block(1, 2));
        let g = Arc::new(PermGroup::from_generators(gens).unwrap());
        assert_eq!(g.elements(BOUND).unwrap().len(), 36);
        let w = sylow2(&g, BOUND).unwrap();
        assert_eq!(*w.sub().order(), BigUint::from(4u32));
        assert_eq!(*w.index(), BigUint::from(9u32));
    }

    #[test]
    fn odd_order_group_has_trivial_sylow() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let g = Arc::new(PermGroup::from_generators(vec![c]).unwrap());
        let w = sylow2(&g, BOUND).unwrap();
        assert!(w.sub().is_trivial());
        assert_eq!(*w.index(), BigUint::from(5u32));
    }

    #[test]
    fn growth_handles_a5() {
        let a = Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let g = Arc::new(PermGroup::from_generators(vec![a, b]).unwrap());
        let w = sylow2(&g, BOUND).unwrap();
        assert_eq!(*w.sub().order(), BigUint::from(4u32));
        assert_eq!(*w.index(), BigUint::from(15u32));
    }

    #[test]
    fn normalizers_in_s3() {
        let g = s3();
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert!(normalizer_is_self_by_enumeration(&sub(&g, vec![t.clone()]), BOUND).unwrap());
        assert!(normalizer_is_self_structural(&sub(&g, vec![t])).unwrap());
        assert!(!normalizer_is_self_by_enumeration(&sub(&g, vec![c.clone()]), BOUND).unwrap());
        assert!(matches!(
            normalizer_is_self_structural(&sub(&g, vec![c])),
            Err(PermError::NotTwoGroup)
        ));
        let whole = sub(&g, g.generators().to_vec());
        assert!(normalizer_is_self(&whole, BOUND).unwrap().0);
    }

    #[test]
    fn structural_path_needs_blocks() {
        let a = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let g = Arc::new(PermGroup::from_generators(vec![a.clone()]).unwrap());
        let w = sub(&g, vec![a.pow(2)]);
        assert!(matches!(
            normalizer_is_self_structural(&w),
            Err(PermError::NotS3Product)
        ));
    }

    #[test]
    fn conjugating_a_transposition_subgroup() {
        let g = s3();
        let h = PermGroup::from_generators(vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        let x = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let c = conjugate_subgroup(&g, &h, &x).unwrap();
        let expect =
            PermGroup::from_generators(vec![Permutation::from_cycles(3, &[&[0, 2]]).unwrap()]).unwrap();
        assert!(c.same_elements(&expect));
        assert!(conjugate_subgroup(&g, &h, &Permutation::identity(3)).unwrap().same_elements(&h));
        let outside = PermGroup::from_generators(vec![Permutation::from_cycles(4, &[&[0, 3]]).unwrap()]).unwrap();
        assert!(matches!(
            conjugate_subgroup(&outside, &h, &Permutation::identity(4)),
            Err(PermError::DegreeMismatch(4, 3))
        ));
        let not_in =
            conjugate_subgroup(&PermGroup::from_generators(vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap(), &h, &x);
        assert!(matches!(not_in, Err(PermError::NotMember)));
    }

    #[test]
    fn seeds_give_conjugate_sylows() {
        let mut gens = s3_block(0, 3);
        gens.extend(s3_block(1, 3));
        gens.extend(s3_block(2, 3));
        let g = Arc::new(PermGroup::from_generators(gens).unwrap());
        let a = sylow2_seeded(&g, 1, BOUND).unwrap();
        for seed in 2..8 {
            let b = sylow2_seeded(&g, seed, BOUND).unwrap();
            let x = find_conjugator(&g, a.sub(), b.sub(), BOUND).unwrap().unwrap();
            let moved = conjugate_subgroup(&g, a.sub(), &x).unwrap();
            assert!(moved.same_elements(b.sub()));
            // The structural search agrees with the scan.
            let y = find_conjugator(&g, a.sub(), b.sub(), 1).unwrap().unwrap();
            assert!(conjugate_subgroup(&g, a.sub(), &y).unwrap().same_elements(b.sub()));
        }
    }
}
