//! Row reduction over the prime fields F₂ and F₃, just enough for the
//! structural computations on subgroups of S₃ᵏ.

use rand::Rng;

/// A subspace of F_pⁿ kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub(crate) struct RowSpace {
    p: u8,
    dim: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| (a as u16 * b as u16) % p as u16 == 1).expect("nonzero element")
}

impl RowSpace {
    pub(crate) fn new(p: u8, dim: usize) -> Self {
        RowSpace {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `(pivot column, row)` pairs of the echelon basis.
    pub(crate) fn pivot_rows(&self) -> impl Iterator<Item = (usize, &[u8])> {
        self.pivots.iter().copied().zip(self.rows.iter().map(|r| r.as_slice()))
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub(crate) fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.p as u16;
        let mut v = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u16 + (p - c as u16) * r as u16) % p) as u8;
                }
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let p = self.p as u16;
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv_mod(v[piv], self.p) as u16;
        for x in v.iter_mut() {
            *x = ((*x as u16 * s) % p) as u8;
        }
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = ((*x as u16 + (p - c as u16) * r as u16) % p) as u8;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(at, v);
        self.pivots.insert(at, piv);
        true
    }
}

/// Solves `A x = b` over F_p. Free variables are drawn from `rng`, so
/// different generators give different (equally valid) solutions.
pub(crate) fn solve<R: Rng + ?Sized>(
    p: u8,
    a: &[Vec<u8>],
    b: &[u8],
    unknowns: usize,
    rng: &mut R,
) -> Option<Vec<u8>> {
    let pw = p as u16;
    let mut rows: Vec<Vec<u8>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let s = inv_mod(rows[r][col], p) as u16;
        for x in rows[r].iter_mut() {
            *x = ((*x as u16 * s) % pw) as u8;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = row[col] as u16;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u16 + (pw - c) * y as u16) % pw) as u8;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[unknowns] != 0) {
        return None;
    }
    let mut x = vec![0u8; unknowns];
    let is_pivot: Vec<bool> = (0..unknowns).map(|c| pivots.contains(&c)).collect();
    for (c, free) in is_pivot.iter().enumerate() {
        if !free {
            x[c] = rng.random_range(0..p);
        }
    }
    for (i, &col) in pivots.iter().enumerate() {
        let row = &rows[i];
        let mut val = row[unknowns] as u16;
        for c in 0..unknowns {
            if c != col && !is_pivot[c] && row[c] != 0 {
                val += (pw - row[c] as u16) * x[c] as u16;
            }
        }
        x[col] = (val % pw) as u8;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn span_membership_over_f3() {
        let mut s = RowSpace::new(3, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1]));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[2, 1, 0]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn solutions_satisfy_the_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = vec![vec![1, 1, 0, 2], vec![0, 1, 1, 1]];
        let b = vec![2, 1];
        for _ in 0..20 {
            let x = solve(3, &a, &b, 4, &mut rng).unwrap();
            for (row, &rhs) in a.iter().zip(&b) {
                let lhs: u16 = row.iter().zip(&x).map(|(&r, &v)| r as u16 * v as u16).sum();
                assert_eq!((lhs % 3) as u8, rhs);
            }
        }
        assert!(solve(2, &[vec![1, 1], vec![1, 1]], &[0, 1], 2, &mut rng).is_none());
    }
}
