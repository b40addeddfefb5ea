//! Subgroups of the product S₃ᵏ, acting on 3k points in consecutive blocks
//! of three (factor `j` owns points `3j, 3j+1, 3j+2`).
//!
//! Each S₃ factor is identified with the affine maps `x ↦ ±x + v` of Z/3, so
//! an element of S₃ᵏ is a pair `(v, s)` with `v ∈ F₃ᵏ` (translation parts)
//! and `s ∈ F₂ᵏ` (reflection flags). Reflections are the elements of order
//! two, so every 2-subgroup of S₃ᵏ has the shape `{(X|ₛ, s) : s ∈ E}` for some
//! choice of reflection `X_j` per factor. The routines here turn Sylow and
//! normalizer questions into linear algebra over F₂ and F₃.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};

use super::{PermError, PermGroup, Permutation};
use crate::linalg::{self, RowSpace};

/// Largest sign group we are willing to enumerate.
const MAX_SIGN_CLASSES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Affine {
    pub v: Vec<u8>,
    pub s: Vec<u8>,
}

impl Affine {
    fn identity(k: usize) -> Self {
        Affine {
            v: vec![0; k],
            s: vec![0; k],
        }
    }

    /// `self ∘ other`.
    fn mul(&self, other: &Affine) -> Affine {
        let v = self
            .v
            .iter()
            .zip(&self.s)
            .zip(&other.v)
            .map(|((&a, &s), &b)| if s == 0 { (a + b) % 3 } else { (a + 3 - b) % 3 })
            .collect();
        let s = self.s.iter().zip(&other.s).map(|(a, b)| a ^ b).collect();
        Affine { v, s }
    }

    fn inverse(&self) -> Affine {
        let v = self
            .v
            .iter()
            .zip(&self.s)
            .map(|(&a, &s)| if s == 0 { (3 - a) % 3 } else { a })
            .collect();
        Affine {
            v,
            s: self.s.clone(),
        }
    }
}

/// Number of S₃ factors if `degree` is a multiple of three and every
/// generator preserves each block.
pub fn s3_factor_count(group: &PermGroup) -> Option<usize> {
    if group.degree() % 3 != 0 || group.degree() == 0 {
        return None;
    }
    let k = group.degree() / 3;
    group
        .generators()
        .iter()
        .all(|g| (0..k).all(|j| g.restrict_block(3 * j, 3).is_some()))
        .then_some(k)
}

pub(crate) fn decode(p: &Permutation) -> Option<Affine> {
    if p.degree() % 3 != 0 {
        return None;
    }
    let k = p.degree() / 3;
    let mut v = Vec::with_capacity(k);
    let mut s = Vec::with_capacity(k);
    for j in 0..k {
        let b = p.restrict_block(3 * j, 3)?;
        let t = b.apply(0) as u8;
        let one = b.apply(1) as u8;
        v.push(t);
        s.push(if one == (t + 1) % 3 { 0 } else { 1 });
    }
    Some(Affine { v, s })
}

pub(crate) fn encode(a: &Affine) -> Permutation {
    let k = a.v.len();
    let mut images = Vec::with_capacity(3 * k);
    for j in 0..k {
        for x in 0..3u8 {
            let y = if a.s[j] == 0 { (x + a.v[j]) % 3 } else { (3 - x + a.v[j]) % 3 };
            images.push((3 * j) as u32 + y as u32);
        }
    }
    Permutation::from_images_unchecked(images)
}

/// The exact sequence `1 → N → G → E → 1` where `E ≤ F₂ᵏ` records reflection
/// flags and `N = G ∩ C₃ᵏ` is an F₃-subspace.
#[derive(Clone, Debug)]
pub(crate) struct S3Structure {
    pub k: usize,
    /// For each sign vector in E, the translation part of one element of G.
    pub coset_reps: HashMap<Vec<u8>, Vec<u8>>,
    /// Sign vectors forming an F₂-basis of E, in discovery order.
    pub sign_basis: Vec<Vec<u8>>,
    pub kernel: RowSpace,
}

impl S3Structure {
    pub(crate) fn analyze(group: &PermGroup) -> Result<Self, PermError> {
        let k = s3_factor_count(group).ok_or(PermError::NotS3Product)?;
        let gens: Vec<Affine> = group
            .generators()
            .iter()
            .map(|g| decode(g).ok_or(PermError::NotS3Product))
            .collect::<Result<_, _>>()?;
        let mut reps: HashMap<Vec<u8>, Affine> = HashMap::new();
        let mut order: Vec<Vec<u8>> = Vec::new();
        let id = Affine::identity(k);
        reps.insert(id.s.clone(), id.clone());
        order.push(id.s.clone());
        let mut kernel = RowSpace::new(3, k);
        let mut i = 0;
        while i < order.len() {
            let rep = reps[&order[i]].clone();
            i += 1;
            // Left multiplication, so that r⁻¹·x·rep lies in N (Schreier).
            for x in &gens {
                let y = x.mul(&rep);
                match reps.get(&y.s) {
                    Some(r) => {
                        let n = r.inverse().mul(&y);
                        debug_assert!(n.s.iter().all(|&b| b == 0));
                        kernel.insert(&n.v);
                    }
                    None => {
                        if reps.len() >= MAX_SIGN_CLASSES {
                            return Err(PermError::TooLarge(
                                format!("2^{}+ sign classes", 20),
                                MAX_SIGN_CLASSES as u64,
                            ));
                        }
                        order.push(y.s.clone());
                        reps.insert(y.s.clone(), y);
                    }
                }
            }
        }
        let mut basis_space = RowSpace::new(2, k);
        let sign_basis = order
            .iter()
            .filter(|s| basis_space.insert(s))
            .cloned()
            .collect();
        let coset_reps = reps.into_iter().map(|(s, a)| (s, a.v)).collect();
        Ok(S3Structure {
            k,
            coset_reps,
            sign_basis,
            kernel,
        })
    }

    pub(crate) fn order(&self) -> BigUint {
        BigUint::from(self.coset_reps.len()) * BigUint::from(3u32).pow(self.kernel.rank() as u32)
    }

    /// Factors that carry a reflection somewhere in E.
    pub(crate) fn covered(&self) -> Vec<bool> {
        let mut c = vec![false; self.k];
        for s in &self.sign_basis {
            for (cj, &sj) in c.iter_mut().zip(s) {
                *cj |= sj == 1;
            }
        }
        c
    }

    /// Whether `(v, ·)` with `v` prescribed on `mask` can be reached from
    /// `base + N`, i.e. `(target - base)|mask ∈ N|mask`.
    fn kernel_projection(&self, mask: &[bool]) -> RowSpace {
        let mut proj = RowSpace::new(3, self.k);
        for (_, row) in self.kernel.pivot_rows() {
            let r: Vec<u8> = row
                .iter()
                .zip(mask)
                .map(|(&x, &m)| if m { x } else { 0 })
                .collect();
            proj.insert(&r);
        }
        proj
    }

    /// Chooses reflections `X` with `(X|ₑ, e) ∈ G` for every `e ∈ E` and
    /// returns `X` together with the Sylow 2-subgroup it spans.
    pub(crate) fn sylow2<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Vec<u8>, Vec<Permutation>), PermError> {
        let k = self.k;
        // R_j: echelon row with pivot j, if any.
        let mut pivot_row: Vec<Option<&[u8]>> = vec![None; k];
        for (p, row) in self.kernel.pivot_rows() {
            pivot_row[p] = Some(row);
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for e in &self.sign_basis {
            let rhs = self.kernel.reduce(&self.coset_reps[e]);
            for c in 0..k {
                if pivot_row[c].is_some() {
                    continue;
                }
                // reduce(D_e X)_c = Σ_j e_j (δ_jc − R_j[c]) X_j
                let row: Vec<u8> = (0..k)
                    .map(|j| {
                        if e[j] == 0 {
                            return 0;
                        }
                        let delta = u8::from(j == c);
                        let r = pivot_row[j].map_or(0, |r| r[c]);
                        (delta + 3 - r) % 3
                    })
                    .collect();
                a.push(row);
                b.push(rhs[c]);
            }
        }
        let x = linalg::solve(3, &a, &b, k, rng).ok_or(PermError::SylowStalled {
            reached: "0".into(),
            target: self.two_part().to_string(),
        })?;
        let gens = self
            .sign_basis
            .iter()
            .map(|e| {
                encode(&Affine {
                    v: e.iter().zip(&x).map(|(&ej, &xj)| ej * xj).collect(),
                    s: e.clone(),
                })
            })
            .collect();
        Ok((x, gens))
    }

    pub(crate) fn two_part(&self) -> BigUint {
        BigUint::from(self.coset_reps.len())
    }

    /// `|N_G(H)|` for a 2-subgroup `H` described by its reflections.
    ///
    /// With `J` the factors on which `H` is non-trivial and `X_j` its
    /// reflection there, `y ∈ N_G(H)` forces `y_j` into the centralizer
    /// `{1, X_j}` of `X_j` for every `j ∈ J`, and conversely any such `y`
    /// centralizes `H`. Counting those `y` coset by coset of `N` is linear
    /// algebra.
    pub(crate) fn normalizer_order(&self, refl: &TwoSubgroupShape) -> BigUint {
        let mask = &refl.support;
        let proj = self.kernel_projection(mask);
        let feasible = self
            .coset_reps
            .iter()
            .filter(|(e, w)| {
                let diff: Vec<u8> = (0..self.k)
                    .map(|j| {
                        if !mask[j] {
                            0
                        } else {
                            let t = e[j] * refl.reflection[j];
                            (t + 3 - w[j]) % 3
                        }
                    })
                    .collect();
                proj.contains(&diff)
            })
            .count();
        let free = self.kernel.rank() - proj.rank();
        BigUint::from(feasible) * BigUint::from(3u32).pow(free as u32)
    }

    /// A translation `n ∈ N` with `n H₁ n⁻¹ = H₂`, for two Sylow subgroups.
    pub(crate) fn sylow_conjugator(
        &self,
        h1: &TwoSubgroupShape,
        h2: &TwoSubgroupShape,
    ) -> Option<Permutation> {
        let covered = self.covered();
        let target: Vec<u8> = (0..self.k)
            .map(|j| {
                if covered[j] {
                    (h1.reflection[j] + 3 - h2.reflection[j]) % 3
                } else {
                    0
                }
            })
            .collect();
        // Solve Σ c_r row_r = target on the covered coordinates.
        let rows: Vec<&[u8]> = self.kernel.pivot_rows().map(|(_, r)| r).collect();
        let a: Vec<Vec<u8>> = (0..self.k)
            .filter(|&j| covered[j])
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect();
        let b: Vec<u8> = (0..self.k).filter(|&j| covered[j]).map(|j| target[j]).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let coeffs = linalg::solve(3, &a, &b, rows.len(), &mut rng)?;
        let mut n = vec![0u8; self.k];
        for (c, r) in coeffs.iter().zip(&rows) {
            for (x, &y) in n.iter_mut().zip(r.iter()) {
                *x = (*x + c * y) % 3;
            }
        }
        Some(encode(&Affine {
            v: n,
            s: vec![0; self.k],
        }))
    }
}

/// Reflection data of a 2-subgroup of S₃ᵏ.
#[derive(Clone, Debug)]
pub(crate) struct TwoSubgroupShape {
    pub support: Vec<bool>,
    pub reflection: Vec<u8>,
}

impl TwoSubgroupShape {
    /// Reads off `J` and the reflections `X_j` from the generators, failing
    /// if they do not generate a 2-group.
    pub(crate) fn of(gens: &[Permutation], k: usize) -> Result<Self, PermError> {
        let mut support = vec![false; k];
        let mut reflection = vec![0u8; k];
        for g in gens {
            let a = decode(g).ok_or(PermError::NotS3Product)?;
            if a.v.len() != k {
                return Err(PermError::NotS3Product);
            }
            for j in 0..k {
                match a.s[j] {
                    0 if a.v[j] != 0 => return Err(PermError::NotTwoGroup),
                    0 => {}
                    _ => {
                        if support[j] && reflection[j] != a.v[j] {
                            return Err(PermError::NotTwoGroup);
                        }
                        support[j] = true;
                        reflection[j] = a.v[j];
                    }
                }
            }
        }
        Ok(TwoSubgroupShape {
            support,
            reflection,
        })
    }

    pub(crate) fn order_bound(&self) -> BigUint {
        BigUint::one() << self.support.iter().filter(|&&b| b).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_encoding_is_a_homomorphism() {
        let all: Vec<Affine> = (0..3u8)
            .flat_map(|v| (0..2u8).map(move |s| Affine { v: vec![v], s: vec![s] }))
            .collect();
        let perms: Vec<Permutation> = all.iter().map(encode).collect();
        let distinct: std::collections::HashSet<_> = perms.iter().cloned().collect();
        assert_eq!(distinct.len(), 6);
        for (a, pa) in all.iter().zip(&perms) {
            assert_eq!(decode(pa).as_ref(), Some(a));
            assert!(encode(&a.mul(&a.inverse())).is_identity());
            for (b, pb) in all.iter().zip(&perms) {
                assert_eq!(encode(&a.mul(b)), pa * pb);
            }
        }
    }

    #[test]
    fn structure_of_s3_squared() {
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let gens = vec![t.shifted(0, 6), c.shifted(0, 6), t.shifted(3, 6), c.shifted(3, 6)];
        let g = PermGroup::from_generators(gens).unwrap();
        let st = S3Structure::analyze(&g).unwrap();
        assert_eq!(st.order(), *g.order());
        assert_eq!(st.two_part(), BigUint::from(4u32));
        assert_eq!(st.kernel.rank(), 2);
    }

    #[test]
    fn structure_matches_closure_on_random_block_groups() {
        use rand::seq::IndexedRandom;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s3: Vec<Permutation> = (0..3u8)
            .flat_map(|v| (0..2u8).map(move |s| encode(&Affine { v: vec![v], s: vec![s] })))
            .collect();
        for _ in 0..60 {
            let k = rng.random_range(1..=4);
            let n_gens = rng.random_range(1..=3);
            let gens: Vec<Permutation> = (0..n_gens)
                .map(|_| {
                    let mut images = Vec::new();
                    for j in 0..k {
                        let b = s3.choose(&mut rng).unwrap();
                        images.extend(b.images().iter().map(|&x| 3 * j as u32 + x));
                    }
                    Permutation::from_images(images).unwrap()
                })
                .collect();
            let g = PermGroup::from_generators(gens).unwrap();
            let st = S3Structure::analyze(&g).unwrap();
            let closure = g.elements(1 << 20).unwrap().len();
            assert_eq!(st.order(), BigUint::from(closure));
        }
    }

    #[test]
    fn rejects_mixed_blocks() {
        let g = PermGroup::from_generators(vec![Permutation::from_cycles(6, &[&[2, 3]]).unwrap()])
            .unwrap();
        assert!(s3_factor_count(&g).is_none());
        assert!(matches!(S3Structure::analyze(&g), Err(PermError::NotS3Product)));
    }
}
