use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::psl2::{self, check_prime};
use super::FinquotError;
use crate::perm::{PermGroup, Permutation};

/// Largest target for which a multiplication table is built.
pub const MAX_TARGET_ORDER: usize = 2500;

/// The finite groups that homomorphisms from a surface group may land in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "kebab-case")]
pub enum TargetKind {
    Trivial,
    Cyclic2,
    /// `(Z/2)^r`, realized on `2r` points.
    ElementaryAbelian2(u32),
    Symmetric3,
    Alternating5,
    Psl2(u64),
}

impl TargetKind {
    /// Degrees of the irreducible complex characters, where known.
    pub fn character_degrees(&self) -> Option<Vec<u64>> {
        Some(match *self {
            TargetKind::Trivial => vec![1],
            TargetKind::Cyclic2 => vec![1, 1],
            TargetKind::ElementaryAbelian2(r) => vec![1; 1 << r],
            TargetKind::Symmetric3 => vec![1, 1, 2],
            TargetKind::Alternating5 => vec![1, 3, 3, 4, 5],
            TargetKind::Psl2(q) => {
                let mut d = vec![1, q];
                if q % 4 == 1 {
                    d.extend([(q + 1) / 2; 2]);
                    d.extend(std::iter::repeat_n(q + 1, ((q - 5) / 4) as usize));
                    d.extend(std::iter::repeat_n(q - 1, ((q - 1) / 4) as usize));
                } else {
                    d.extend([(q - 1) / 2; 2]);
                    d.extend(std::iter::repeat_n(q + 1, ((q - 3) / 4) as usize));
                    d.extend(std::iter::repeat_n(q - 1, ((q - 3) / 4) as usize));
                }
                d
            }
        })
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetKind::Trivial => write!(f, "trivial"),
            TargetKind::Cyclic2 => write!(f, "c2"),
            TargetKind::ElementaryAbelian2(r) => write!(f, "c2^{r}"),
            TargetKind::Symmetric3 => write!(f, "s3"),
            TargetKind::Alternating5 => write!(f, "a5"),
            TargetKind::Psl2(p) => write!(f, "psl2({p})"),
        }
    }
}

fn cycles(n: usize, c: &[&[u32]]) -> Permutation {
    Permutation::from_cycles(n, c).expect("literal cycles are valid")
}

/// A finite group realized by permutations, with its elements indexed in
/// lexicographic order of image arrays (so the identity is element `0`), a
/// multiplication table, and the automorphisms this crate knows about.
#[derive(Clone, Debug)]
pub struct FiniteTarget {
    kind: TargetKind,
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    /// `mul[i * n + j]` is the index of `elements[i] ∘ elements[j]`.
    mul: Vec<u32>,
    inv: Vec<u32>,
    /// Each automorphism as a map on element indices; entry 0 is the identity.
    automorphisms: Vec<Vec<u32>>,
    generators: Vec<Permutation>,
}

impl FiniteTarget {
    pub fn new(kind: TargetKind) -> Result<Self, FinquotError> {
        let (degree, generators, elements, outer): (usize, Vec<Permutation>, Vec<Permutation>, Vec<Permutation>) =
            match kind {
                TargetKind::Trivial => (1, vec![], vec![Permutation::identity(1)], vec![]),
                TargetKind::Cyclic2 => {
                    let t = cycles(2, &[&[0, 1]]);
                    (2, vec![t.clone()], vec![], vec![])
                }
                TargetKind::ElementaryAbelian2(r) => {
                    if r == 0 || r > 11 {
                        return Err(FinquotError::TargetTooLarge(format!("c2^{r}")));
                    }
                    let n = 2 * r as usize;
                    let gens = (0..r).map(|i| cycles(n, &[&[2 * i, 2 * i + 1]])).collect();
                    (n, gens, vec![], vec![])
                }
                TargetKind::Symmetric3 => {
                    let gens = vec![cycles(3, &[&[0, 1]]), cycles(3, &[&[0, 1, 2]])];
                    (3, gens.clone(), vec![], vec![])
                }
                TargetKind::Alternating5 => {
                    let gens = vec![cycles(5, &[&[0, 1, 2]]), cycles(5, &[&[0, 1, 2, 3, 4]])];
                    (5, gens, vec![], vec![cycles(5, &[&[0, 1]])])
                }
                TargetKind::Psl2(p) => {
                    check_prime(p)?;
                    let n = p * (p * p - 1) / 2;
                    if n as usize > MAX_TARGET_ORDER {
                        return Err(FinquotError::TargetTooLarge(kind.to_string()));
                    }
                    let group = psl2::psl2_group(p)?;
                    let elements = psl2::psl2_elements(p)?;
                    (
                        p as usize + 1,
                        group.generators().to_vec(),
                        elements,
                        vec![psl2::outer_diagonal(p)],
                    )
                }
            };
        let group = PermGroup::with_degree(degree, generators.clone())?;
        let mut elements = if elements.is_empty() {
            group.elements(MAX_TARGET_ORDER as u64)?
        } else {
            elements
        };
        elements.sort();
        elements.dedup();
        if BigUint::from(elements.len()) != *group.order() {
            return Err(FinquotError::Perm(crate::perm::PermError::Inconsistent(format!(
                "{kind}: {} listed elements, generated order {}",
                elements.len(),
                group.order()
            ))));
        }
        let n = elements.len();
        let index: HashMap<Permutation, u32> =
            elements.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect();
        let mut mul = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                mul[i * n + j] = index[&(x * y)];
            }
        }
        let inv = elements.iter().map(|x| index[&x.inverse()]).collect();
        // Inner automorphisms plus those induced by the extra conjugators.
        let mut conjugators = elements.clone();
        for o in &outer {
            conjugators.extend(elements.iter().map(|x| o * x));
        }
        let mut automorphisms: Vec<Vec<u32>> = conjugators
            .iter()
            .map(|c| elements.iter().map(|x| index[&c.conjugate(x)]).collect())
            .collect();
        automorphisms.sort();
        automorphisms.dedup();
        Ok(FiniteTarget {
            kind,
            degree,
            elements,
            index,
            mul,
            inv,
            automorphisms,
            generators,
        })
    }

    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, x: &Permutation) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.mul[i as usize * self.elements.len() + j as usize]
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let xy = self.mul(x, y);
        let xyx = self.mul(xy, self.inv(x));
        self.mul(xyx, self.inv(y))
    }

    pub fn automorphisms(&self) -> &[Vec<u32>] {
        &self.automorphisms
    }

    /// Order of the subgroup generated by the given elements, by closure
    /// over the multiplication table.
    pub fn generated_order(&self, gens: &[u32]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        queue.len()
    }

    /// Least image of a tuple under the stored automorphisms.
    pub fn canonical_tuple(&self, tuple: &[u32]) -> Vec<u32> {
        self.automorphisms
            .iter()
            .map(|a| tuple.iter().map(|&x| a[x as usize]).collect::<Vec<u32>>())
            .min()
            .expect("the identity automorphism is stored")
    }

    /// Degrees of the irreducible complex characters, where known.
    pub fn character_degrees(&self) -> Option<Vec<u64>> {
        self.kind.character_degrees()
    }

    /// Whether the realized group is simple and non-abelian, checked by
    /// closing each non-identity conjugacy class under conjugation.
    pub fn is_nonabelian_simple(&self) -> bool {
        let n = self.order();
        if n < 2 || (0..n as u32).all(|x| (0..n as u32).all(|y| self.mul(x, y) == self.mul(y, x))) {
            return false;
        }
        (1..n as u32).all(|x| {
            // Normal closure of x.
            let class: Vec<u32> = (0..n as u32)
                .map(|c| self.mul(self.mul(c, x), self.inv(c)))
                .collect();
            self.generated_order(&class) == n
        })
    }
}
