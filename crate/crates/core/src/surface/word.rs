use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SurfaceError;

/// A word in the generators `a₁, b₁, …, a_g, b_g` of a surface group.
///
/// Letters are signed generator indices: `a_i` is `2i − 1`, `b_i` is `2i`,
/// and a negative letter is the inverse. Zero never occurs. The text form
/// writes `a1`, `b1`, … with a capital letter for an inverse (`A1` is
/// `a₁⁻¹`), and `1` for the empty word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SurfaceWord {
    letters: Vec<i32>,
}

pub fn a(i: usize) -> i32 {
    2 * i as i32 - 1
}

pub fn b(i: usize) -> i32 {
    2 * i as i32
}

impl SurfaceWord {
    pub fn empty() -> Self {
        SurfaceWord::default()
    }

    /// Wraps letters without reducing them. Panics on a zero letter.
    pub fn from_letters(letters: Vec<i32>) -> Self {
        assert!(letters.iter().all(|&x| x != 0), "zero is not a letter");
        SurfaceWord { letters }
    }

    pub fn letter(x: i32) -> Self {
        SurfaceWord::from_letters(vec![x])
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, `0` for the empty word.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        SurfaceWord {
            letters: self.letters.iter().rev().map(|&x| -x).collect(),
        }
    }

    /// Concatenation, freely reduced at the seam.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = self.letters.clone();
        for &x in &other.letters {
            push_reduced(&mut out, x);
        }
        SurfaceWord { letters: out }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(SurfaceWord::empty(), |acc, _| acc.concat(&base))
    }

    pub fn free_reduce(&self) -> Self {
        free_reduce(self)
    }

    /// Replaces each generator `x` by `images[x]` (1-based by index), and
    /// each inverse by the inverse image.
    pub fn substitute(&self, images: &[SurfaceWord]) -> Self {
        let mut out = Vec::new();
        for &x in &self.letters {
            let img = &images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                for &y in &img.letters {
                    push_reduced(&mut out, y);
                }
            } else {
                for &y in img.letters.iter().rev() {
                    push_reduced(&mut out, -y);
                }
            }
        }
        SurfaceWord { letters: out }
    }

    /// Exponent sum of each generator, for generators `1..=n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0i64; n];
        for &x in &self.letters {
            out[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        out
    }
}

pub(crate) fn push_reduced(out: &mut Vec<i32>, x: i32) {
    if out.last() == Some(&-x) {
        out.pop();
    } else {
        out.push(x);
    }
}

/// Cancels adjacent letter–inverse pairs until none remain.
pub fn free_reduce(w: &SurfaceWord) -> SurfaceWord {
    let mut out = Vec::with_capacity(w.len());
    for &x in &w.letters {
        push_reduced(&mut out, x);
    }
    SurfaceWord { letters: out }
}

fn letter_name(x: i32) -> String {
    let i = x.unsigned_abs();
    let (lower, upper) = if i % 2 == 1 { ('a', 'A') } else { ('b', 'B') };
    let c = if x > 0 { lower } else { upper };
    format!("{c}{}", i.div_ceil(2))
}

impl fmt::Display for SurfaceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for &x in &self.letters {
            f.write_str(&letter_name(x))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SurfaceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurfaceWord({self})")
    }
}

impl FromStr for SurfaceWord {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(SurfaceWord::empty());
        }
        let bad = || SurfaceError::BadWord(s.to_string());
        let mut letters = Vec::new();
        let mut chars = s.chars().filter(|c| !c.is_whitespace() && *c != '*').peekable();
        while let Some(c) = chars.next() {
            let (is_b, inverse) = match c {
                'a' => (false, false),
                'A' => (false, true),
                'b' => (true, false),
                'B' => (true, true),
                _ => return Err(bad()),
            };
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let i: usize = digits.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            let x = if is_b { b(i) } else { a(i) };
            letters.push(if inverse { -x } else { x });
        }
        Ok(SurfaceWord { letters })
    }
}

impl TryFrom<String> for SurfaceWord {
    type Error = SurfaceError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<SurfaceWord> for String {
    fn from(w: SurfaceWord) -> Self {
        w.to_string()
    }
}
