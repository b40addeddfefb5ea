use super::ForgeError;
use crate::alpha::CosetTable;
use crate::finquot::FiniteHom;
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relabel {
    /// `f` with `f(x·s) = f(x)·s` for every generator `s`; `f(0)` is the
    /// matched base point.
    Isomorphic(Vec<u32>),
    NotIsomorphic,
    /// The degree exceeds the search bound; nothing was decided.
    Skipped,
}

impl Relabel {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Relabel::Isomorphic(_))
    }
}

/// Action of the `2g` generators on the right cosets of `ρ⁻¹(sub)`.
pub fn coset_action(hom: &FiniteHom, sub: &PermGroup) -> Result<Vec<Permutation>, ForgeError> {
    Ok(CosetTable::new(hom.clone(), sub.clone())?.permutations())
}

/// Decides whether two transitive actions of the same generators are
/// isomorphic, by trying each image of point `0` and propagating.
pub fn gamma_set_isomorphic(first: &[Permutation], second: &[Permutation], bound: usize) -> Relabel {
    let d = first.first().map_or(0, |x| x.degree());
    if first.len() != second.len()
        || first.iter().chain(second).any(|x| x.degree() != d)
    {
        return Relabel::NotIsomorphic;
    }
    if d > bound {
        return Relabel::Skipped;
    }
    if d == 0 {
        return Relabel::Isomorphic(Vec::new());
    }
    (0..d as u32)
        .find_map(|base| propagate(first, second, base))
        .map_or(Relabel::NotIsomorphic, Relabel::Isomorphic)
}

fn propagate(first: &[Permutation], second: &[Permutation], base: u32) -> Option<Vec<u32>> {
    let d = first[0].degree();
    let mut f = vec![u32::MAX; d];
    let mut used = vec![false; d];
    f[0] = base;
    used[base as usize] = true;
    let mut queue = vec![0u32];
    while let Some(x) = queue.pop() {
        for (s, t) in first.iter().zip(second) {
            let (y, fy) = (s.apply(x), t.apply(f[x as usize]));
            if f[y as usize] == u32::MAX {
                if used[fy as usize] {
                    return None;
                }
                f[y as usize] = fy;
                used[fy as usize] = true;
                queue.push(y);
            } else if f[y as usize] != fy {
                return None;
            }
        }
    }
    f.iter().all(|&x| x != u32::MAX).then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(cycles: &[&[u32]], n: usize) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn self_and_degree_mismatch() {
        let a = vec![perm(&[&[0, 1, 2]], 3), perm(&[&[0, 1]], 3)];
        assert!(gamma_set_isomorphic(&a, &a, 10).is_isomorphic());
        let b = vec![perm(&[&[0, 1]], 2), perm(&[], 2)];
        assert_eq!(gamma_set_isomorphic(&a, &b, 10), Relabel::NotIsomorphic);
        assert_eq!(gamma_set_isomorphic(&a, &a, 2), Relabel::Skipped);
    }

    #[test]
    fn relabelled_action_is_found() {
        let a = vec![perm(&[&[0, 1, 2, 3]], 4), perm(&[&[0, 2]], 4)];
        let r = perm(&[&[0, 3], &[1, 2]], 4);
        let b: Vec<Permutation> = a.iter().map(|x| r.conjugate(x)).collect();
        let Relabel::Isomorphic(f) = gamma_set_isomorphic(&a, &b, 10) else {
            panic!("conjugate actions are isomorphic");
        };
        for (s, t) in a.iter().zip(&b) {
            for x in 0..4u32 {
                assert_eq!(f[s.apply(x) as usize], t.apply(f[x as usize]));
            }
        }
        let c = vec![perm(&[&[0, 1, 2, 3]], 4), perm(&[&[0, 1]], 4)];
        assert_eq!(gamma_set_isomorphic(&a, &c, 10), Relabel::NotIsomorphic);
    }
}
