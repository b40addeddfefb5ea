use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PermError;

/// A bijection of the points `0..n`, stored by its image array.
///
/// Composition follows the right-to-left convention used everywhere in this
/// crate: `(p ∘ q)(x) = p(q(x))`, so `q` is applied first. The `*` operator on
/// references is the same composition: `&p * &q == p ∘ q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting anything that is
    /// not a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotABijection(images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of `0..degree` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let xi = x as usize;
                if xi >= degree || touched[xi] {
                    return Err(PermError::BadCycle(format!("{cycles:?}")));
                }
                touched[xi] = true;
                images[xi] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// First point moved by this permutation, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.first_moved_from(0)
    }

    pub(crate) fn first_moved_from(&self, start: usize) -> Option<u32> {
        self.images[start..]
            .iter()
            .enumerate()
            .find(|&(i, &x)| (i + start) as u32 != x)
            .map(|(i, _)| (i + start) as u32)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self * other)
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Self) -> Self {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in other.images.iter().enumerate() {
            out[self.images[i] as usize] = self.images[x as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        self.to_string()
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` on `degree` points.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::BadCycle(s.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| PermError::BadCycle(s.to_string()))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(u32::from_str)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PermError::BadCycle(s.to_string()))?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    /// Places `self` on the points `offset..offset + self.degree()` of a
    /// permutation of `degree` points, fixing everything else.
    pub fn shifted(&self, offset: usize, degree: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }

    /// The restriction of `self` to the block `offset..offset + len`,
    /// relabelled to `0..len`. Returns `None` if the block is not invariant.
    pub fn restrict_block(&self, offset: usize, len: usize) -> Option<Self> {
        let mut images = Vec::with_capacity(len);
        for i in offset..offset + len {
            let x = self.images[i] as usize;
            if x < offset || x >= offset + len {
                return None;
            }
            images.push((x - offset) as u32);
        }
        Some(Permutation { images })
    }
}

impl<'a> Mul<&'a Permutation> for &'a Permutation {
    type Output = Permutation;

    /// `self ∘ rhs`; panics on a degree mismatch.
    fn mul(self, rhs: &'a Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        Permutation {
            images: rhs
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = PermError;

    fn try_from(images: Vec<u32>) -> Result<Self, Self::Error> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(3, cycles).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let q = p(&[&[0, 1, 2]]);
        let id = Permutation::identity(3);
        assert_eq!(id.compose(&q).unwrap(), q);
        assert_eq!(q.compose(&id).unwrap(), q);
    }

    #[test]
    fn inverse_cancels() {
        let q = p(&[&[0, 2, 1]]);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
        assert!(q.inverse().compose(&q).unwrap().is_identity());
    }

    #[test]
    fn transposition_after_three_cycle() {
        // Pointwise oracle for (0 1) ∘ (0 1 2): apply (0 1 2), then (0 1).
        let t = p(&[&[0, 1]]);
        let c = p(&[&[0, 1, 2]]);
        let oracle: Vec<u32> = (0..3).map(|x| t.apply(c.apply(x))).collect();
        assert_eq!(oracle, vec![0, 2, 1]);
        let tc = t.compose(&c).unwrap();
        assert_eq!(tc.images(), &oracle[..]);
        assert_eq!(tc.to_string(), "(1 2)");
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(PermError::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn cycle_strings_round_trip() {
        let q = Permutation::from_cycles(6, &[&[0, 3, 1], &[4, 5]]).unwrap();
        let s = q.to_cycle_string();
        assert_eq!(s, "(0 3 1)(4 5)");
        assert_eq!(Permutation::parse_cycles(6, &s).unwrap(), q);
        assert_eq!(
            Permutation::parse_cycles(4, "()").unwrap(),
            Permutation::identity(4)
        );
        assert!(Permutation::parse_cycles(4, "(0 1").is_err());
    }

    #[test]
    fn order_and_power() {
        let q = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(q.order(), 6);
        assert!(q.pow(6).is_identity());
        assert!(!q.pow(3).is_identity());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = p(&[&[1, 2]]);
        let h = p(&[&[0, 1]]);
        assert_eq!(x.conjugate(&h), p(&[&[0, 2]]));
        assert_eq!(x.conjugate(&h), &(&x * &h) * &x.inverse());
    }

    #[test]
    fn blocks() {
        let q = p(&[&[0, 1, 2]]);
        let big = q.shifted(3, 9);
        assert_eq!(big.apply(3), 4);
        assert_eq!(big.apply(0), 0);
        assert_eq!(big.restrict_block(3, 3).unwrap(), q);
        let mixed = Permutation::from_cycles(6, &[&[2, 3]]).unwrap();
        assert!(mixed.restrict_block(0, 3).is_none());
    }
}
