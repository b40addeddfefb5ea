//! PSL₂(F_p) and PGL₂(F_p) acting on the projective line `P¹(F_p)`.
//!
//! Point `x < p` is `[x : 1]` and point `p` is `∞ = [1 : 0]`.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::FinquotError;
use crate::perm::{PermGroup, Permutation, SubgroupWitness};

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub(crate) fn check_prime(p: u64) -> Result<(), FinquotError> {
    if p < 5 || !is_prime(p) || p > 1 << 15 {
        return Err(FinquotError::BadPrime(p));
    }
    Ok(())
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2).
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// The Möbius map `x ↦ (ax + b)/(cx + d)` as a permutation of `P¹(F_p)`.
/// The matrix must be invertible.
pub fn mobius(p: u64, m: [u64; 4]) -> Permutation {
    let [a, b, c, d] = m.map(|x| x % p);
    debug_assert_ne!((a * d + p * p - b * c) % p, 0);
    let inf = p as u32;
    let images = (0..=p)
        .map(|x| {
            let (num, den) = if x == p {
                (a, c)
            } else {
                ((a * x + b) % p, (c * x + d) % p)
            };
            if den == 0 {
                inf
            } else {
                (num * inv_mod(den, p) % p) as u32
            }
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

/// Every element of PSL₂(F_p), found by running over all determinant-one
/// matrices; `±M` give the same permutation.
pub fn psl2_elements(p: u64) -> Result<Vec<Permutation>, FinquotError> {
    check_prime(p)?;
    let mut out = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                // Solve ad − bc = 1 for d when a ≠ 0; otherwise bc = −1.
                if a != 0 {
                    let d = (1 + b * c) % p * inv_mod(a, p) % p;
                    out.insert(mobius(p, [a, b, c, d]));
                } else if b * c % p == p - 1 {
                    for d in 0..p {
                        out.insert(mobius(p, [a, b, c, d]));
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// PSL₂(F_p) generated by `S = [[0,−1],[1,0]]` and `T = [[1,1],[0,1]]`.
pub fn psl2_group(p: u64) -> Result<PermGroup, FinquotError> {
    check_prime(p)?;
    let s = mobius(p, [0, p - 1, 1, 0]);
    let t = mobius(p, [1, 1, 0, 1]);
    Ok(PermGroup::from_generators(vec![s, t])?)
}

pub fn primitive_root(p: u64) -> u64 {
    let order = |g: u64| {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = x * g % p;
            k += 1;
        }
        k
    };
    (2..p).find(|&g| order(g) == p - 1).expect("prime fields are cyclic")
}

/// `x ↦ g·x` for a non-square `g`: an element of PGL₂ outside PSL₂, fixing
/// `0` and `∞`.
pub fn outer_diagonal(p: u64) -> Permutation {
    mobius(p, [primitive_root(p), 0, 0, 1])
}

/// The upper triangular subgroup, i.e. the stabilizer of `∞`, generated by
/// `T` and `diag(r, r⁻¹)` for a primitive root `r`.
pub fn borel_generators(p: u64) -> Vec<Permutation> {
    let r = primitive_root(p);
    vec![
        mobius(p, [1, 1, 0, 1]),
        mobius(p, [r, 0, 0, inv_mod(r, p)]),
    ]
}

/// The Borel subgroup `H₀` of PSL₂(F_p), order `p(p−1)/2`, index `p+1`.
pub fn borel_subgroup(p: u64) -> Result<SubgroupWitness, FinquotError> {
    let g = Arc::new(psl2_group(p)?);
    let h = PermGroup::from_generators(borel_generators(p))?;
    Ok(SubgroupWitness::new(g, h)?)
}
