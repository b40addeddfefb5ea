use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::{FiniteTarget, FinquotError, TargetKind};
use crate::perm::{PermGroup, Permutation};
use crate::surface::SurfaceWord;

/// A homomorphism from the genus-`g` surface group to a finite target,
/// recorded by the images of `a₁, b₁, …, a_g, b_g` as element indices.
#[derive(Clone, Debug)]
pub struct FiniteHom {
    target: Arc<FiniteTarget>,
    images: Vec<u32>,
}

impl PartialEq for FiniteHom {
    fn eq(&self, other: &Self) -> bool {
        self.target.kind() == other.target.kind() && self.images == other.images
    }
}

impl Eq for FiniteHom {}

impl std::hash::Hash for FiniteHom {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

/// Serialized form: the target tag and each image in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomRecord {
    pub target: TargetKind,
    pub images: Vec<String>,
}

/// Evaluates `[x₁,y₁]…[x_g,y_g]`.
fn relator_value(target: &FiniteTarget, images: &[u32]) -> u32 {
    images
        .chunks(2)
        .fold(0, |acc, c| target.mul(acc, target.commutator(c[0], c[1])))
}

impl FiniteHom {
    /// Checks the relator; the genus is half the tuple length.
    pub fn new(target: Arc<FiniteTarget>, images: Vec<u32>) -> Result<Self, FinquotError> {
        if images.len() < 4 || images.len() % 2 != 0 {
            return Err(FinquotError::WrongGenus(images.len()));
        }
        if images.iter().any(|&x| x as usize >= target.order()) {
            return Err(FinquotError::BadElement(format!("{images:?}")));
        }
        if relator_value(&target, &images) != 0 {
            return Err(FinquotError::RelatorViolated);
        }
        Ok(FiniteHom { target, images })
    }

    pub(crate) fn new_unchecked(target: Arc<FiniteTarget>, images: Vec<u32>) -> Self {
        debug_assert_eq!(relator_value(&target, &images), 0);
        FiniteHom { target, images }
    }

    pub fn from_perms(target: Arc<FiniteTarget>, perms: &[Permutation]) -> Result<Self, FinquotError> {
        let images = perms
            .iter()
            .map(|p| target.index_of(p).ok_or_else(|| FinquotError::BadElement(p.to_string())))
            .collect::<Result<_, _>>()?;
        FiniteHom::new(target, images)
    }

    pub fn target(&self) -> &Arc<FiniteTarget> {
        &self.target
    }

    pub fn genus(&self) -> usize {
        self.images.len() / 2
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn image_perms(&self) -> Vec<Permutation> {
        self.images.iter().map(|&i| self.target.element(i).clone()).collect()
    }

    /// Image of a word; letters multiply left to right.
    pub fn eval(&self, w: &SurfaceWord) -> u32 {
        w.letters().iter().fold(0, |acc, &x| {
            let img = self.images[x.unsigned_abs() as usize - 1];
            let img = if x > 0 { img } else { self.target.inv(img) };
            self.target.mul(acc, img)
        })
    }

    /// The relator re-evaluated with permutation composition.
    pub fn relator_holds(&self) -> bool {
        let perms = self.image_perms();
        let id = Permutation::identity(self.target.degree());
        let value = perms.chunks(2).fold(id, |acc, c| {
            let comm = &(&(&c[0] * &c[1]) * &c[0].inverse()) * &c[1].inverse();
            &acc * &comm
        });
        value.is_identity()
    }

    /// The image subgroup, with its own stabilizer chain.
    pub fn image_group(&self) -> PermGroup {
        PermGroup::with_degree(self.target.degree(), self.image_perms())
            .expect("images share the target degree")
    }

    /// Surjectivity, decided by the order of the image's stabilizer chain.
    pub fn is_surjective(&self) -> bool {
        *self.image_group().order() == BigUint::from(self.target.order())
    }

    /// `τ ∘ self` for the stored automorphism with index `aut`.
    pub fn postcompose(&self, aut: usize) -> FiniteHom {
        let a = &self.target.automorphisms()[aut];
        FiniteHom {
            target: Arc::clone(&self.target),
            images: self.images.iter().map(|&x| a[x as usize]).collect(),
        }
    }

    /// Least member of the class `{τ ∘ self}` over stored automorphisms.
    pub fn canonical(&self) -> FiniteHom {
        FiniteHom {
            target: Arc::clone(&self.target),
            images: self.target.canonical_tuple(&self.images),
        }
    }

    pub fn to_record(&self) -> HomRecord {
        HomRecord {
            target: self.target.kind(),
            images: self.image_perms().iter().map(|p| p.to_cycle_string()).collect(),
        }
    }

    pub fn from_record(target: Arc<FiniteTarget>, rec: &HomRecord) -> Result<Self, FinquotError> {
        if rec.target != target.kind() {
            return Err(FinquotError::BadElement(format!("target {} vs {}", rec.target, target.kind())));
        }
        let perms = rec
            .images
            .iter()
            .map(|s| Permutation::parse_cycles(target.degree(), s))
            .collect::<Result<Vec<_>, _>>()?;
        FiniteHom::from_perms(target, &perms)
    }
}

/// `|Q|^{2g}`, the raw tuple count of an exhaustive enumeration.
pub fn tuple_count(g: usize, target: &FiniteTarget) -> BigUint {
    BigUint::from(target.order()).pow(2 * g as u32)
}

fn check_budget(g: usize, target: &FiniteTarget, cap: u64) -> Result<(), FinquotError> {
    if g < 2 {
        return Err(FinquotError::WrongGenus(2 * g));
    }
    let needed = tuple_count(g, target);
    if needed > BigUint::from(cap) {
        return Err(FinquotError::BudgetExceeded {
            needed: needed.to_string(),
            cap,
        });
    }
    Ok(())
}

/// Lazily walks every homomorphism in lexicographic order of image tuples.
///
/// The first `g − 1` commutator pairs run over all tuples; the last pair is
/// looked up by its required commutator value.
pub struct HomIter {
    target: Arc<FiniteTarget>,
    /// Pairs `(x, y)` grouped by `[x, y]`, each group in lexicographic order.
    by_commutator: Vec<Vec<(u32, u32)>>,
    prefix: Vec<u32>,
    /// Partial relator values: `partial[i]` covers the first `i` pairs.
    partial: Vec<u32>,
    tail: usize,
    started: bool,
    done: bool,
}

impl HomIter {
    pub fn new(g: usize, target: Arc<FiniteTarget>) -> Result<Self, FinquotError> {
        if g < 2 {
            return Err(FinquotError::WrongGenus(2 * g));
        }
        let n = target.order() as u32;
        let mut by_commutator = vec![Vec::new(); n as usize];
        for x in 0..n {
            for y in 0..n {
                by_commutator[target.commutator(x, y) as usize].push((x, y));
            }
        }
        Ok(HomIter {
            target,
            by_commutator,
            prefix: vec![0; 2 * (g - 1)],
            partial: vec![0; g],
            tail: 0,
            started: false,
            done: false,
        })
    }

    fn refresh_partial(&mut self, from_pair: usize) {
        for i in from_pair..self.partial.len() - 1 {
            let c = self.target.commutator(self.prefix[2 * i], self.prefix[2 * i + 1]);
            self.partial[i + 1] = self.target.mul(self.partial[i], c);
        }
    }

    /// Advances the prefix odometer; false when exhausted.
    fn bump_prefix(&mut self) -> bool {
        let n = self.target.order() as u32;
        for pos in (0..self.prefix.len()).rev() {
            self.prefix[pos] += 1;
            if self.prefix[pos] < n {
                self.refresh_partial(pos / 2);
                return true;
            }
            self.prefix[pos] = 0;
        }
        false
    }

    fn needed(&self) -> u32 {
        self.target.inv(*self.partial.last().expect("g ≥ 2"))
    }
}

impl Iterator for HomIter {
    type Item = FiniteHom;

    fn next(&mut self) -> Option<FiniteHom> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.refresh_partial(0);
        } else {
            self.tail += 1;
        }
        loop {
            let bucket = &self.by_commutator[self.needed() as usize];
            if let Some(&(x, y)) = bucket.get(self.tail) {
                let mut images = self.prefix.clone();
                images.extend([x, y]);
                return Some(FiniteHom::new_unchecked(Arc::clone(&self.target), images));
            }
            self.tail = 0;
            if !self.bump_prefix() {
                self.done = true;
                return None;
            }
        }
    }
}

/// Every homomorphism `Γ_g → Q`, in lexicographic order.
pub fn enumerate_homs(g: usize, target: &Arc<FiniteTarget>, tuple_cap: u64) -> Result<Vec<FiniteHom>, FinquotError> {
    check_budget(g, target, tuple_cap)?;
    Ok(HomIter::new(g, Arc::clone(target))?.collect())
}

/// The surjective homomorphisms among [`enumerate_homs`].
pub fn enumerate_epis(g: usize, target: &Arc<FiniteTarget>, tuple_cap: u64) -> Result<Vec<FiniteHom>, FinquotError> {
    check_budget(g, target, tuple_cap)?;
    Ok(HomIter::new(g, Arc::clone(target))?
        .filter(|h| target.generated_order(h.images()) == target.order() && h.is_surjective())
        .collect())
}

/// The lexicographically first epimorphism, found lazily.
pub fn first_epi(g: usize, target: &Arc<FiniteTarget>) -> Result<FiniteHom, FinquotError> {
    HomIter::new(g, Arc::clone(target))?
        .find(|h| target.generated_order(h.images()) == target.order())
        .ok_or(FinquotError::NoEpimorphism(target.kind().to_string()))
}

/// `|Hom(Γ_g, Q)| = |Q|^{2g−1} Σ_χ χ(1)^{2−2g}`, evaluated exactly.
pub fn count_homs_oracle(g: usize, kind: TargetKind, order: u64) -> Result<BigUint, FinquotError> {
    let degrees = kind.character_degrees().ok_or(FinquotError::NoDegreeList)?;
    let e = 2 * g as u32 - 2;
    let sum = degrees.iter().fold(BigRational::zero(), |acc, &d| {
        acc + BigRational::new(BigInt::one(), BigInt::from(d).pow(e))
    });
    let total = sum * BigRational::from_integer(BigInt::from(order).pow(2 * g as u32 - 1));
    if !total.is_integer() {
        return Err(FinquotError::NonIntegral(total.to_string()));
    }
    total
        .to_integer()
        .to_biguint()
        .ok_or_else(|| FinquotError::NonIntegral(total.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn target(kind: TargetKind) -> Arc<FiniteTarget> {
        Arc::new(FiniteTarget::new(kind).unwrap())
    }

    #[test]
    fn s3_genus_two_counts() {
        let t = target(TargetKind::Symmetric3);
        let homs = enumerate_homs(2, &t, 100_000_000).unwrap();
        assert_eq!(homs.len(), 486);
        assert!(homs[0].images().iter().all(|&x| x == 0));
        assert!(homs.windows(2).all(|w| w[0].images() < w[1].images()));
        assert!(homs.iter().all(FiniteHom::relator_holds));
        let epis = enumerate_epis(2, &t, 100_000_000).unwrap();
        assert_eq!(epis.len(), 360);
        assert!(epis.iter().all(|h| h.images().iter().any(|&x| x != 0)));
    }

    #[test]
    fn brute_force_agrees_on_s3() {
        // Independent oracle: every tuple, relator checked by composition.
        let t = target(TargetKind::Symmetric3);
        let mut count = 0;
        for code in 0..6u32.pow(4) {
            let images = vec![code % 6, code / 6 % 6, code / 36 % 6, code / 216];
            let h = FiniteHom { target: Arc::clone(&t), images };
            if h.relator_holds() {
                count += 1;
            }
        }
        assert_eq!(count, 486);
    }

    #[test]
    fn abelian_targets() {
        let t = target(TargetKind::Cyclic2);
        assert_eq!(enumerate_homs(2, &t, 1000).unwrap().len(), 16);
        assert_eq!(enumerate_epis(2, &t, 1000).unwrap().len(), 15);
        assert_eq!(count_homs_oracle(2, TargetKind::Cyclic2, 2).unwrap(), BigUint::from(16u32));
        assert_eq!(count_homs_oracle(3, TargetKind::Trivial, 1).unwrap(), BigUint::one());
    }

    #[test]
    fn oracle_values() {
        assert_eq!(count_homs_oracle(2, TargetKind::Symmetric3, 6).unwrap(), BigUint::from(486u32));
        assert_eq!(
            count_homs_oracle(2, TargetKind::Alternating5, 60).unwrap(),
            BigUint::from(286_140u32)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let t = target(TargetKind::Alternating5);
        assert!(matches!(
            enumerate_homs(2, &t, 1000),
            Err(FinquotError::BudgetExceeded { .. })
        ));
        assert!(matches!(enumerate_homs(1, &t, 1000), Err(FinquotError::WrongGenus(2))));
    }

    #[test]
    fn first_epi_is_lexicographically_first() {
        let t = target(TargetKind::Symmetric3);
        let all = enumerate_epis(2, &t, 1_000_000).unwrap();
        assert_eq!(first_epi(2, &t).unwrap(), all[0]);
    }

    #[test]
    fn records_round_trip() {
        let t = target(TargetKind::Psl2(5));
        let h = first_epi(2, &t).unwrap();
        let rec = h.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: HomRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteHom::from_record(Arc::clone(&t), &back).unwrap(), h);
    }

    #[test]
    fn relator_violations_are_rejected() {
        let t = target(TargetKind::Symmetric3);
        let x = t.index_of(&Permutation::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let y = t.index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap();
        assert!(matches!(
            FiniteHom::new(Arc::clone(&t), vec![x, y, 0, 0]),
            Err(FinquotError::RelatorViolated)
        ));
        assert!(FiniteHom::new(t, vec![x, y, y, x]).is_ok());
    }
}
