use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::{PermError, Permutation};

/// One level of the stabilizer chain: the orbit of the base point under the
/// pointwise stabilizer of all earlier base points, with a transversal.
#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    /// Orbit points in discovery order; `orbit[0]` is the base point.
    orbit: Vec<u32>,
    /// For each orbit point other than the base point, `u` and `u⁻¹` where
    /// `u` maps the base point to it.
    transversal: HashMap<u32, (Permutation, Permutation)>,
}

impl Level {
    fn new(base_point: u32) -> Self {
        Level {
            base_point,
            orbit: vec![base_point],
            transversal: HashMap::new(),
        }
    }

    fn contains(&self, point: u32) -> bool {
        point == self.base_point || self.transversal.contains_key(&point)
    }

    fn rep(&self, point: u32, degree: usize) -> Permutation {
        if point == self.base_point {
            Permutation::identity(degree)
        } else {
            self.transversal[&point].0.clone()
        }
    }
}

/// A strong generator together with the range of stabilizer-chain levels
/// whose generating set it belongs to.
#[derive(Clone, Debug)]
struct Strong {
    perm: Permutation,
    lo: usize,
    /// Index of the first base point this generator moves.
    depth: usize,
}

/// A permutation group given by generators, with a base and strong
/// generating set computed by the deterministic Schreier–Sims algorithm.
///
/// The base is chosen greedily: whenever a new base point is needed, the
/// smallest point moved by the offending element is used. The result is
/// therefore a pure function of the generator list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Strong>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        }
    }

    /// Builds the group generated by `generators` (all of one degree).
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self, PermError> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or(PermError::NoGenerators)?;
        PermGroup::with_degree(degree, generators)
    }

    /// Like [`PermGroup::from_generators`] but accepts an empty list.
    pub fn with_degree(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut group = PermGroup::trivial(degree);
        group.generators = generators.clone();
        group.schreier_sims(generators);
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Exact group order: the product of the fundamental orbit lengths.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> Vec<&Permutation> {
        self.strong.iter().map(|s| &s.perm).collect()
    }

    pub fn fundamental_orbits(&self) -> Vec<&[u32]> {
        self.levels.iter().map(|l| l.orbit.as_slice()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &Permutation) -> bool {
        let (_, residue) = self.sift(p.clone(), 0);
        residue.is_identity()
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree
            && other.generators.iter().all(|g| self.contains_unchecked(g))
    }

    /// Whether the two groups have the same elements.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.contains_group(other)
    }

    /// Sifts `p` starting at `from`; `p` must fix the first `from` base
    /// points. Returns the level where sifting stopped (the base length if it
    /// went all the way through) and the residue.
    fn sift(&self, mut p: Permutation, from: usize) -> (usize, Permutation) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let image = p.apply(level.base_point);
            if image == level.base_point {
                continue;
            }
            match level.transversal.get(&image) {
                Some((_, u_inv)) => p = u_inv * &p,
                None => return (l, p),
            }
        }
        (self.levels.len(), p)
    }

    fn in_level(&self, s: &Strong, l: usize) -> bool {
        s.lo <= l && l <= s.depth
    }

    fn depth_of(&self, p: &Permutation) -> Option<usize> {
        self.levels
            .iter()
            .position(|l| p.apply(l.base_point) != l.base_point)
    }

    fn push_strong(&mut self, perm: Permutation, lo: usize) -> usize {
        let depth = match self.depth_of(&perm) {
            Some(d) => d,
            None => {
                let point = perm.first_moved().expect("identity passed as strong generator");
                self.levels.push(Level::new(point));
                self.levels.len() - 1
            }
        };
        self.strong.push(Strong { perm, lo, depth });
        depth
    }

    /// Closes the orbit at level `l` under its generators, keeping existing
    /// transversal entries.
    fn close_orbit(&mut self, l: usize) {
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&i| self.in_level(&self.strong[i], l))
            .collect();
        let degree = self.degree;
        let mut queue: VecDeque<u32> = self.levels[l].orbit.iter().copied().collect();
        while let Some(beta) = queue.pop_front() {
            let u_beta = self.levels[l].rep(beta, degree);
            for &gi in &gens {
                let s = &self.strong[gi].perm;
                let gamma = s.apply(beta);
                if !self.levels[l].contains(gamma) {
                    let u_gamma = s * &u_beta;
                    let inv = u_gamma.inverse();
                    let level = &mut self.levels[l];
                    level.transversal.insert(gamma, (u_gamma, inv));
                    level.orbit.push(gamma);
                    queue.push_back(gamma);
                }
            }
        }
    }

    fn schreier_sims(&mut self, generators: Vec<Permutation>) {
        let mut seen = HashSet::new();
        for g in generators {
            if !g.is_identity() && seen.insert(g.clone()) {
                self.push_strong(g, 0);
            }
        }
        for l in 0..self.levels.len() {
            self.close_orbit(l);
        }
        let mut tested: Vec<HashSet<(u32, usize)>> = vec![HashSet::new(); self.levels.len()];
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let l = i as usize;
            let mut idx = 0;
            while idx < self.levels[l].orbit.len() {
                let beta = self.levels[l].orbit[idx];
                idx += 1;
                for gi in 0..self.strong.len() {
                    if !self.in_level(&self.strong[gi], l) || !tested[l].insert((beta, gi)) {
                        continue;
                    }
                    let s = &self.strong[gi].perm;
                    let gamma = s.apply(beta);
                    let level = &self.levels[l];
                    let mut schreier = if beta == level.base_point {
                        s.clone()
                    } else {
                        s * &level.transversal[&beta].0
                    };
                    if gamma != level.base_point {
                        schreier = &level.transversal[&gamma].1 * &schreier;
                    }
                    let (_, residue) = self.sift(schreier, l + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    let depth = self.push_strong(residue, l + 1);
                    if tested.len() < self.levels.len() {
                        tested.resize_with(self.levels.len(), HashSet::new);
                    }
                    for m in l + 1..=depth {
                        self.close_orbit(m);
                    }
                    i = depth as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        self.order = self
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    /// Lists every element, provided the order is at most `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>, PermError> {
        let n = match self.order_u64() {
            Some(n) if n <= bound => n,
            _ => return Err(PermError::TooLarge(self.order.to_string(), bound)),
        };
        let mut out = Vec::with_capacity(n as usize);
        out.push(Permutation::identity(self.degree));
        // Elements are u_0 ∘ u_1 ∘ … ∘ u_m, so extend by the deepest level first.
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &beta in &level.orbit {
                if beta == level.base_point {
                    next.extend(out.iter().cloned());
                } else {
                    let u = &level.transversal[&beta].0;
                    next.extend(out.iter().map(|x| u * x));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// A uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let beta = level.orbit[rng.random_range(0..level.orbit.len())];
            if beta != level.base_point {
                acc = &level.transversal[&beta].0 * &acc;
            }
        }
        acc
    }

    /// The unique element of the left coset `g·self` whose sequence of base
    /// images is lexicographically least.
    pub fn canonical_left_coset_rep(&self, g: &Permutation) -> Permutation {
        let mut rep = g.clone();
        for level in &self.levels {
            let best = *level
                .orbit
                .iter()
                .min_by_key(|&&beta| rep.apply(beta))
                .expect("orbit contains its base point");
            if best != level.base_point {
                rep = &rep * &level.transversal[&best].0;
            }
        }
        rep
    }

    /// Canonical representative of the right coset `self·g`.
    pub fn canonical_right_coset_rep(&self, g: &Permutation) -> Permutation {
        self.canonical_left_coset_rep(&g.inverse()).inverse()
    }

    /// The orbit of `point` under the generators.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    /// Closure oracle: multiply out until nothing new appears.
    fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
        let n = gens[0].degree();
        let mut set = HashSet::new();
        set.insert(Permutation::identity(n));
        let mut frontier = vec![Permutation::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g * &x;
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn s3_has_order_six() {
        let g = PermGroup::from_generators(vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])])
            .unwrap();
        assert_eq!(g.order(), &BigUint::from(6u32));
    }

    #[test]
    fn identity_generates_trivial_group() {
        let g = PermGroup::from_generators(vec![Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), &BigUint::one());
        assert!(g.contains(&Permutation::identity(4)).unwrap());
    }

    #[test]
    fn a5_matches_closure() {
        let gens = vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])];
        let oracle = closure(&gens);
        assert_eq!(oracle.len(), 60);
        let g = PermGroup::from_generators(gens).unwrap();
        assert_eq!(g.order(), &BigUint::from(60u32));
        for x in &oracle {
            assert!(g.contains(x).unwrap());
        }
        let elems: HashSet<_> = g.elements(1000).unwrap().into_iter().collect();
        assert_eq!(elems, oracle);
    }

    #[test]
    fn five_cycle_not_in_transposition_group() {
        let g = PermGroup::from_generators(vec![cyc(5, &[&[0, 1]])]).unwrap();
        assert_eq!(closure(g.generators()).len(), 2);
        assert!(!g.contains(&cyc(5, &[&[0, 1, 2, 3, 4]])).unwrap());
        assert!(g.contains(&cyc(5, &[&[0, 1]])).unwrap());
    }

    #[test]
    fn membership_degree_mismatch() {
        let g = PermGroup::from_generators(vec![cyc(3, &[&[0, 1]])]).unwrap();
        assert!(g.contains(&Permutation::identity(4)).is_err());
        assert!(PermGroup::from_generators(vec![]).is_err());
    }

    #[test]
    fn random_groups_match_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.random_range(2..8usize);
            let k = rng.random_range(1..4usize);
            let gens: Vec<Permutation> = (0..k)
                .map(|_| {
                    let mut v: Vec<u32> = (0..n as u32).collect();
                    for i in (1..n).rev() {
                        let j = rng.random_range(0..=i);
                        v.swap(i, j);
                    }
                    Permutation::from_images(v).unwrap()
                })
                .collect();
            let oracle = closure(&gens);
            let g = PermGroup::from_generators(gens).unwrap();
            assert_eq!(g.order(), &BigUint::from(oracle.len()));
            for _ in 0..10 {
                let x = g.random_element(&mut rng);
                assert!(oracle.contains(&x));
            }
        }
    }

    #[test]
    fn canonical_coset_reps_identify_cosets() {
        let s4 = PermGroup::from_generators(vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])])
            .unwrap();
        let h = PermGroup::from_generators(vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[2, 3]])]).unwrap();
        let mut reps = HashSet::new();
        for g in s4.elements(100).unwrap() {
            let r = h.canonical_right_coset_rep(&g);
            // r lies in the right coset h·g
            assert!(h.contains(&(&r * &g.inverse())).unwrap());
            reps.insert(r);
        }
        assert_eq!(reps.len(), 6);
    }
}
