use serde::{Deserialize, Serialize};

use crate::surface::{a, b, SurfacePresentation, SurfaceWord};

/// An automorphism of `Γ_g` given by the images of the `2g` standard
/// generators, carried together with the images of its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGen {
    pub name: String,
    pub images: Vec<SurfaceWord>,
    pub inverse_images: Vec<SurfaceWord>,
}

fn word(letters: &[i32]) -> SurfaceWord {
    SurfaceWord::from_letters(letters.to_vec())
}

/// `[a_i, b_i]`.
fn handle(i: usize) -> SurfaceWord {
    word(&[a(i), b(i), -a(i), -b(i)])
}

impl AutGen {
    pub fn identity(g: usize) -> Self {
        let gens: Vec<SurfaceWord> = (1..=2 * g as i32).map(SurfaceWord::letter).collect();
        AutGen {
            name: "id".into(),
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    pub fn genus(&self) -> usize {
        self.images.len() / 2
    }

    /// Image of an arbitrary word, freely reduced.
    pub fn apply(&self, w: &SurfaceWord) -> SurfaceWord {
        w.substitute(&self.images)
    }

    pub fn apply_inverse(&self, w: &SurfaceWord) -> SurfaceWord {
        w.substitute(&self.inverse_images)
    }

    pub fn inverse(&self) -> AutGen {
        let name = match self.name.strip_suffix("^-1") {
            Some(base) => base.to_string(),
            None => format!("{}^-1", self.name),
        };
        AutGen {
            name,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// `self ∘ other`: first `other`, then `self`. Image words are shortened
    /// with Dehn steps, which keeps the element and the length in check.
    pub fn compose(&self, other: &AutGen, p: &SurfacePresentation) -> AutGen {
        let images = other.images.iter().map(|w| p.shorten(&self.apply(w))).collect();
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| p.shorten(&other.apply_inverse(w)))
            .collect();
        AutGen {
            name: format!("{}*{}", self.name, other.name),
            images,
            inverse_images,
        }
    }

    /// `x ↦ u x u⁻¹`.
    pub fn inner(g: usize, u: &SurfaceWord, name: impl Into<String>) -> AutGen {
        let conj = |v: &SurfaceWord, w: &SurfaceWord| v.concat(w).concat(&v.inverse());
        let gens: Vec<SurfaceWord> = (1..=2 * g as i32).map(SurfaceWord::letter).collect();
        AutGen {
            name: name.into(),
            images: gens.iter().map(|x| conj(u, x)).collect(),
            inverse_images: gens.iter().map(|x| conj(&u.inverse(), x)).collect(),
        }
    }

    /// The relator maps to a trivial word, so the map is an endomorphism.
    pub fn is_well_defined(&self, p: &SurfacePresentation) -> bool {
        self.images.len() == p.rank()
            && self.inverse_images.len() == p.rank()
            && p.is_trivial(&self.apply(p.relator()))
            && p.is_trivial(&self.apply_inverse(p.relator()))
    }

    /// Both composites with the stored inverse fix every generator.
    pub fn inverse_pair_holds(&self, p: &SurfacePresentation) -> bool {
        p.generators().iter().all(|x| {
            p.words_equal(&self.apply(&self.apply_inverse(x)), x)
                && p.words_equal(&self.apply_inverse(&self.apply(x)), x)
        })
    }

    /// Action on `H₁(Γ; F₂) = F₂^{2g}`: row `i` is the image of generator `i`.
    pub fn mod2_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.images.len();
        self.images
            .iter()
            .map(|w| w.exponent_sums(n).iter().map(|&e| e.rem_euclid(2) as u8).collect())
            .collect()
    }
}

/// Whether `M J Mᵀ = J` over F₂ for the intersection form `J` pairing `a_i`
/// with `b_i`.
pub fn is_symplectic_mod2(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    let j = |r: usize, c: usize| u8::from(r / 2 == c / 2 && r != c);
    (0..n).all(|r| {
        (0..n).all(|c| {
            let mut acc = 0u8;
            for x in 0..n {
                for y in 0..n {
                    acc ^= m[r][x] & j(x, y) & m[c][y];
                }
            }
            acc == j(r, c)
        })
    })
}

/// A generating set of automorphisms for genus `g`:
///
/// * `ta{i}`, `tb{i}`: twists `b_i ↦ b_i a_i` and `a_i ↦ a_i b_i`;
/// * `mix{i}`: a twist about a curve meeting handles `i` and `i + 1`;
/// * `rot`: cyclic rotation of the handles;
/// * `rev`: the orientation-reversing swap `a_i ↔ b_{g+1−i}`;
/// * `inn_{x}`: conjugation by each generator `x`.
pub fn standard_autgens(g: usize) -> Vec<AutGen> {
    assert!(g >= 2, "genus at least 2");
    let id = AutGen::identity(g);
    let mut out = Vec::new();
    for i in 1..=g {
        let mut t = id.clone();
        t.name = format!("ta{i}");
        t.images[b(i) as usize - 1] = word(&[b(i), a(i)]);
        t.inverse_images[b(i) as usize - 1] = word(&[b(i), -a(i)]);
        out.push(t);
        let mut t = id.clone();
        t.name = format!("tb{i}");
        t.images[a(i) as usize - 1] = word(&[a(i), b(i)]);
        t.inverse_images[a(i) as usize - 1] = word(&[a(i), -b(i)]);
        out.push(t);
    }
    for i in 1..g {
        out.push(mix(g, i));
    }
    out.push(rotation(g));
    out.push(reversal(g));
    for x in 1..=2 * g as i32 {
        let u = SurfaceWord::letter(x);
        out.push(AutGen::inner(g, &u, format!("inn_{u}")));
    }
    out
}

/// Twist coupling handles `i` and `i + 1`. It fixes every `a`, rewrites
/// `b_i` and `b_{i+1}`, and conjugates the other handles by `w = a_{i+1}⁻¹ a_i⁻¹`,
/// so the relator is sent to a conjugate of itself.
fn mix(g: usize, i: usize) -> AutGen {
    let j = i + 1;
    let w = word(&[-a(j), -a(i)]);
    let wi = w.inverse();
    let mut f = AutGen::identity(g);
    f.name = format!("mix{i}");
    for h in (1..=g).filter(|&h| h != i && h != j) {
        for x in [a(h), b(h)] {
            let xw = SurfaceWord::letter(x);
            f.images[x as usize - 1] = w.concat(&xw).concat(&wi);
            f.inverse_images[x as usize - 1] = wi.concat(&xw).concat(&w);
        }
    }
    f.images[b(i) as usize - 1] = word(&[-a(i), -a(j), b(i), a(i), a(i)]);
    f.images[b(j) as usize - 1] = word(&[-a(j), -a(i), b(j), a(j), a(j)]);
    f.inverse_images[b(i) as usize - 1] = word(&[a(j), a(i), b(i), -a(i), -a(i)]);
    f.inverse_images[b(j) as usize - 1] = word(&[a(i), a(j), b(j), -a(j), -a(j)]);
    f
}

/// `a_i ↦ a_{i+1}`, `b_i ↦ b_{i+1}` for `i < g`, with the last handle
/// brought round to the first and conjugated so the relator is fixed.
fn rotation(g: usize) -> AutGen {
    let mut f = AutGen::identity(g);
    f.name = "rot".into();
    // W = C_2 … C_g and V = C_1 … C_{g−1}.
    let big_w = (2..=g).fold(SurfaceWord::empty(), |acc, h| acc.concat(&handle(h)));
    let big_v = (1..g).fold(SurfaceWord::empty(), |acc, h| acc.concat(&handle(h)));
    for i in 1..g {
        f.images[a(i) as usize - 1] = SurfaceWord::letter(a(i + 1));
        f.images[b(i) as usize - 1] = SurfaceWord::letter(b(i + 1));
        f.inverse_images[a(i + 1) as usize - 1] = SurfaceWord::letter(a(i));
        f.inverse_images[b(i + 1) as usize - 1] = SurfaceWord::letter(b(i));
    }
    for x in [a(1), b(1)] {
        let last = x + 2 * (g as i32 - 1);
        f.images[last as usize - 1] = big_w.inverse().concat(&SurfaceWord::letter(x)).concat(&big_w);
        f.inverse_images[x as usize - 1] =
            big_v.concat(&SurfaceWord::letter(last)).concat(&big_v.inverse());
    }
    f
}

/// `a_i ↦ b_{g+1−i}`, `b_i ↦ a_{g+1−i}`; sends the relator to its inverse.
fn reversal(g: usize) -> AutGen {
    let mut f = AutGen::identity(g);
    f.name = "rev".into();
    for i in 1..=g {
        let k = g + 1 - i;
        f.images[a(i) as usize - 1] = SurfaceWord::letter(b(k));
        f.images[b(i) as usize - 1] = SurfaceWord::letter(a(k));
    }
    f.inverse_images = f.images.clone();
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_automorphisms() {
        for g in 2..=4 {
            let p = SurfacePresentation::new(g as u64).unwrap();
            let gens = standard_autgens(g);
            assert_eq!(gens.len(), 4 * g + (g - 1) + 2);
            for f in &gens {
                assert!(f.is_well_defined(&p), "{} genus {g}", f.name);
                assert!(f.inverse_pair_holds(&p), "{} genus {g}", f.name);
                assert!(is_symplectic_mod2(&f.mod2_matrix()), "{} genus {g}", f.name);
            }
        }
    }

    #[test]
    fn genus_two_has_eleven_generators() {
        let names: Vec<String> = standard_autgens(2).into_iter().map(|f| f.name).collect();
        assert_eq!(
            names,
            ["ta1", "tb1", "ta2", "tb2", "mix1", "rot", "rev", "inn_a1", "inn_b1", "inn_a2", "inn_b2"]
        );
    }

    #[test]
    fn composition_and_inverse() {
        let p = SurfacePresentation::new(2).unwrap();
        let gens = standard_autgens(2);
        let f = gens[0].compose(&gens[4], &p);
        assert!(f.is_well_defined(&p));
        assert!(f.inverse_pair_holds(&p));
        let ff = f.compose(&f.inverse(), &p);
        for (x, y) in ff.images.iter().zip(p.generators()) {
            assert!(p.words_equal(x, &y));
        }
        assert_eq!(gens[0].inverse().inverse(), gens[0]);
    }

    #[test]
    fn non_symplectic_matrix_is_detected() {
        let mut m = vec![vec![0u8; 4]; 4];
        m[0][0] = 1;
        m[1][1] = 1;
        m[2][2] = 1;
        assert!(!is_symplectic_mod2(&m));
    }
}
