use std::collections::HashMap;
use std::fmt;

use super::AlphaError;
use crate::finquot::FiniteHom;
use crate::perm::{PermGroup, Permutation};
use crate::surface::{push_reduced, SurfaceWord};

/// The action of `Γ_g` on the right cosets of `Γ̃ = ρ⁻¹(H)`, where `ρ` is a
/// surjection onto a finite group and `H` a subgroup of it. Coset `0` is
/// `Γ̃` itself; letters act on the right.
#[derive(Clone, Debug)]
pub struct CosetTable {
    hom: FiniteHom,
    sub: PermGroup,
    /// `action[x − 1][c]` is the coset `c · x` for generator `x`.
    action: Vec<Vec<u32>>,
    inverse_action: Vec<Vec<u32>>,
    /// Spanning-tree edge into each coset: `parent · letter = c`.
    tree: Vec<Option<(u32, i32)>>,
    reps: Vec<SurfaceWord>,
    /// Non-tree table entries `(c, x)`, indexing the Schreier generators.
    schreier: Vec<(u32, i32)>,
    schreier_index: HashMap<(u32, i32), usize>,
}

/// A word in the Schreier generators: signed, 1-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RsWord(pub Vec<i32>);

impl RsWord {
    pub fn letter(i: usize) -> Self {
        RsWord(vec![i as i32 + 1])
    }

    pub fn inverse(&self) -> Self {
        RsWord(self.0.iter().rev().map(|&x| -x).collect())
    }

    pub fn concat(&self, other: &RsWord) -> RsWord {
        let mut out = self.0.clone();
        for &x in &other.0 {
            push_reduced(&mut out, x);
        }
        RsWord(out)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

impl CosetTable {
    /// Builds the table by breadth-first search over positive letters, which
    /// also fixes the spanning tree and the transversal words.
    pub fn new(hom: FiniteHom, sub: PermGroup) -> Result<Self, AlphaError> {
        let target = hom.target();
        if sub.degree() != target.degree() {
            return Err(AlphaError::NotASubgroup);
        }
        if !sub.generators().iter().all(|x| target.index_of(x).is_some()) {
            return Err(AlphaError::NotASubgroup);
        }
        let rank = 2 * hom.genus();
        let images = hom.image_perms();
        let key = |q: &Permutation| sub.canonical_right_coset_rep(q);
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        let identity = Permutation::identity(target.degree());
        index.insert(key(&identity), 0);
        let mut elements = vec![identity];
        let mut tree = vec![None];
        let mut reps = vec![SurfaceWord::empty()];
        let mut action = vec![Vec::new(); rank];
        let mut c = 0;
        while c < elements.len() {
            let q = elements[c].clone();
            for x in 1..=rank {
                let next = &q * &images[x - 1];
                let k = key(&next);
                let j = match index.get(&k) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len() as u32;
                        index.insert(k, j);
                        elements.push(next);
                        tree.push(Some((c as u32, x as i32)));
                        reps.push(reps[c].concat(&SurfaceWord::letter(x as i32)));
                        j
                    }
                };
                action[x - 1].push(j);
            }
            c += 1;
        }
        let d = elements.len();
        if d * sub.order_u64().unwrap_or(u64::MAX) as usize != target.order() {
            return Err(AlphaError::NotTransitive);
        }
        let inverse_action = action
            .iter()
            .map(|row| {
                let mut inv = vec![0u32; d];
                for (c, &j) in row.iter().enumerate() {
                    inv[j as usize] = c as u32;
                }
                inv
            })
            .collect();
        let mut schreier = Vec::new();
        let mut schreier_index = HashMap::new();
        for c in 0..d as u32 {
            for x in 1..=rank as i32 {
                let j = action[x as usize - 1][c as usize];
                if tree[j as usize] != Some((c, x)) {
                    schreier_index.insert((c, x), schreier.len());
                    schreier.push((c, x));
                }
            }
        }
        Ok(CosetTable {
            hom,
            sub,
            action,
            inverse_action,
            tree,
            reps,
            schreier,
            schreier_index,
        })
    }

    /// The kernel of `hom`, i.e. the subgroup `H` is trivial.
    pub fn for_kernel(hom: FiniteHom) -> Result<Self, AlphaError> {
        let degree = hom.target().degree();
        CosetTable::new(hom, PermGroup::trivial(degree))
    }

    pub fn hom(&self) -> &FiniteHom {
        &self.hom
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.sub
    }

    pub fn genus(&self) -> usize {
        self.hom.genus()
    }

    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, c: u32) -> &SurfaceWord {
        &self.reps[c as usize]
    }

    pub fn tree_edge(&self, c: u32) -> Option<(u32, i32)> {
        self.tree[c as usize]
    }

    /// Coset reached from `c` by reading the signed letter `x`.
    pub fn step(&self, c: u32, x: i32) -> u32 {
        if x > 0 {
            self.action[x as usize - 1][c as usize]
        } else {
            self.inverse_action[(-x) as usize - 1][c as usize]
        }
    }

    pub fn trace(&self, c: u32, w: &SurfaceWord) -> u32 {
        w.letters().iter().fold(c, |c, &x| self.step(c, x))
    }

    /// Each generator's action as a permutation of the cosets.
    pub fn permutations(&self) -> Vec<Permutation> {
        self.action
            .iter()
            .map(|row| Permutation::from_images(row.clone()).expect("generators act bijectively"))
            .collect()
    }

    /// The relator fixes every coset.
    pub fn relator_acts_trivially(&self) -> bool {
        let relator: Vec<i32> = (1..=self.genus())
            .flat_map(|i| {
                let (a, b) = (2 * i as i32 - 1, 2 * i as i32);
                [a, b, -a, -b]
            })
            .collect();
        let relator = SurfaceWord::from_letters(relator);
        (0..self.index() as u32).all(|c| self.trace(c, &relator) == c)
    }

    pub fn schreier_count(&self) -> usize {
        self.schreier.len()
    }

    /// `(c, x)` of Schreier generator `i`.
    pub fn schreier_entry(&self, i: usize) -> (u32, i32) {
        self.schreier[i]
    }

    /// Label of Schreier generator `i`, e.g. `c03.b1`.
    pub fn schreier_label(&self, i: usize) -> String {
        let (c, x) = self.schreier[i];
        let width = (self.index().max(2) - 1).to_string().len();
        format!("c{c:0width$}.{}", SurfaceWord::letter(x))
    }

    /// `t_c · x · t_{c·x}⁻¹` for Schreier generator `i`.
    pub fn schreier_word(&self, i: usize) -> SurfaceWord {
        let (c, x) = self.schreier[i];
        let j = self.step(c, x);
        self.reps[c as usize]
            .concat(&SurfaceWord::letter(x))
            .concat(&self.reps[j as usize].inverse())
    }

    pub fn schreier_words(&self) -> Vec<SurfaceWord> {
        (0..self.schreier_count()).map(|i| self.schreier_word(i)).collect()
    }

    /// Reidemeister–Schreier rewriting of a word lying in `Γ̃`.
    pub fn rewrite(&self, w: &SurfaceWord) -> Result<RsWord, AlphaError> {
        let mut c = 0u32;
        let mut out = Vec::new();
        for &x in w.letters() {
            if x > 0 {
                if let Some(&i) = self.schreier_index.get(&(c, x)) {
                    push_reduced(&mut out, i as i32 + 1);
                }
                c = self.step(c, x);
            } else {
                let prev = self.step(c, x);
                if let Some(&i) = self.schreier_index.get(&(prev, -x)) {
                    push_reduced(&mut out, -(i as i32 + 1));
                }
                c = prev;
            }
        }
        if c != 0 {
            return Err(AlphaError::NotInSubgroup { coset: c });
        }
        Ok(RsWord(out))
    }

    /// The word in `Γ` that a Schreier word stands for.
    pub fn expand(&self, v: &RsWord) -> SurfaceWord {
        v.0.iter().fold(SurfaceWord::empty(), |acc, &s| {
            let w = self.schreier_word(s.unsigned_abs() as usize - 1);
            acc.concat(&if s > 0 { w } else { w.inverse() })
        })
    }

    pub fn format_rs(&self, v: &RsWord) -> String {
        if v.is_empty() {
            return "1".into();
        }
        v.0.iter()
            .map(|&s| {
                let label = self.schreier_label(s.unsigned_abs() as usize - 1);
                if s > 0 {
                    label
                } else {
                    format!("{label}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for RsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&s| if s > 0 { format!("s{s}") } else { format!("s{}^-1", -s) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
