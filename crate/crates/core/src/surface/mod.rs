//! Closed surface groups `⟨a₁, b₁, …, a_g, b_g | [a₁,b₁]…[a_g,b_g]⟩`, their
//! word problem, and the genus of a finite cover.

mod word;

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use word::{a, b, free_reduce, SurfaceWord};
pub(crate) use word::push_reduced;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u64),
    #[error("cover degree must be at least 1")]
    ZeroDegree,
    #[error("malformed word `{0}`")]
    BadWord(String),
    #[error("word uses generator {used} but the genus only has {available}")]
    ForeignGenerator { used: u32, available: u32 },
}

/// The standard one-relator presentation of `π₁(Σ_g)`, `g ≥ 2`.
///
/// The relator has length `4g` and every letter occurs in it exactly once, so
/// two relator subwords overlap in at most one letter. That small overlap is
/// what makes Dehn's algorithm a complete word-problem solver here.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct SurfacePresentation {
    genus: usize,
    relator: SurfaceWord,
    /// The relator and its inverse, as cyclic words.
    cyclic: [Vec<i32>; 2],
    /// Adjacent pair `(x, y)` to `(which cyclic word, index of x)`.
    pairs: HashMap<(i32, i32), (usize, usize)>,
}

impl PartialEq for SurfacePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus
    }
}

impl Eq for SurfacePresentation {}

impl SurfacePresentation {
    pub fn new(genus: u64) -> Result<Self, SurfaceError> {
        if genus < 2 {
            return Err(SurfaceError::GenusTooSmall(genus));
        }
        let g = genus as usize;
        let letters: Vec<i32> = (1..=g).flat_map(|i| [a(i), b(i), -a(i), -b(i)]).collect();
        let relator = SurfaceWord::from_letters(letters.clone());
        let inv: Vec<i32> = letters.iter().rev().map(|&x| -x).collect();
        let cyclic = [letters, inv];
        let mut pairs = HashMap::new();
        for (r, word) in cyclic.iter().enumerate() {
            let l = word.len();
            for i in 0..l {
                let prev = pairs.insert((word[i], word[(i + 1) % l]), (r, i));
                debug_assert!(prev.is_none(), "pieces have length one");
            }
        }
        Ok(SurfacePresentation {
            genus: g,
            relator,
            cyclic,
            pairs,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of generators, `2g`.
    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> &SurfaceWord {
        &self.relator
    }

    /// The `i`-th generator as a word, `i` in `1..=2g`.
    pub fn generator(&self, i: usize) -> SurfaceWord {
        SurfaceWord::letter(i as i32)
    }

    pub fn generators(&self) -> Vec<SurfaceWord> {
        (1..=self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Ensures every letter of `w` is a generator of this presentation.
    pub fn check_word(&self, w: &SurfaceWord) -> Result<(), SurfaceError> {
        let used = w.max_generator();
        if used as usize > self.rank() {
            return Err(SurfaceError::ForeignGenerator {
                used,
                available: self.rank() as u32,
            });
        }
        Ok(())
    }

    /// Dehn replacements on a linear word: any subword longer than half the
    /// relator is replaced by the shorter complement. Never lengthens and
    /// never changes the element.
    fn dehn_linear(&self, w: &[i32]) -> Vec<i32> {
        let l = 4 * self.genus;
        let half = 2 * self.genus;
        let mut w = free_reduce(&SurfaceWord::from_letters(w.to_vec())).letters().to_vec();
        let mut i = 0;
        while i + half < w.len() {
            let Some(&(r, o)) = self.pairs.get(&(w[i], w[i + 1])) else {
                i += 1;
                continue;
            };
            let rel = &self.cyclic[r];
            let mut m = 2;
            while m < l && i + m < w.len() && w[i + m] == rel[(o + m) % l] {
                m += 1;
            }
            if m <= half {
                i += 1;
                continue;
            }
            // w[i..i+m] = u with u·c a cyclic relator word, so u = c⁻¹.
            let replacement = (m..l).rev().map(|t| -rel[(o + t) % l]);
            let mut next: Vec<i32> = w[..i].to_vec();
            let mut low = i;
            for x in replacement.chain(w[i + m..].iter().copied()) {
                push_reduced(&mut next, x);
                low = low.min(next.len());
            }
            w = next;
            i = low.saturating_sub(l);
        }
        w
    }

    /// Dehn's algorithm, alternating linear replacements with cyclic
    /// reduction. The result is empty iff `w` is trivial; otherwise it is a
    /// word for a conjugate of `w`.
    pub fn dehn_reduce(&self, w: &SurfaceWord) -> SurfaceWord {
        let mut w = w.letters().to_vec();
        loop {
            w = self.dehn_linear(&w);
            let mut cut = 0;
            while w.len() >= 2 * (cut + 1) && w[cut] == -w[w.len() - 1 - cut] {
                cut += 1;
            }
            if cut == 0 {
                return SurfaceWord::from_letters(w);
            }
            w = w[cut..w.len() - cut].to_vec();
        }
    }

    /// Whether `w` represents the identity.
    pub fn is_trivial(&self, w: &SurfaceWord) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    /// Whether `u` and `v` represent the same element.
    pub fn words_equal(&self, u: &SurfaceWord, v: &SurfaceWord) -> bool {
        self.is_trivial(&u.concat(&v.inverse()))
    }

    /// A word for the same element, no longer than `w` (not a normal form).
    pub fn shorten(&self, w: &SurfaceWord) -> SurfaceWord {
        SurfaceWord::from_letters(self.dehn_linear(w.letters()))
    }
}

impl TryFrom<u64> for SurfacePresentation {
    type Error = SurfaceError;

    fn try_from(g: u64) -> Result<Self, Self::Error> {
        SurfacePresentation::new(g)
    }
}

impl From<SurfacePresentation> for u64 {
    fn from(p: SurfacePresentation) -> Self {
        p.genus as u64
    }
}

/// Genus of a connected unbranched degree-`d` cover of a genus-`g` surface:
/// `d(g − 1) + 1`.
pub fn cover_genus(g: u64, d: &BigUint) -> Result<BigUint, SurfaceError> {
    if g < 2 {
        return Err(SurfaceError::GenusTooSmall(g));
    }
    if *d == BigUint::ZERO {
        return Err(SurfaceError::ZeroDegree);
    }
    Ok(d * BigUint::from(g - 1) + 1u32)
}
