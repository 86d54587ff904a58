//! Linear algebra over a prime field `F_p`: canonical subspaces, matrices
//! and complete flags.

use crate::error::{Error, Result};

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Smallest generator of the multiplicative group of `F_p`.
pub fn primitive_root(p: u8) -> u8 {
    (1..p)
        .find(|&g| {
            let mut x = 1u32;
            (1..p - 1).all(|_| {
                x = x * g as u32 % p as u32;
                x != 1
            })
        })
        .unwrap_or(1)
}

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).expect("nonzero element of a field")
}

/// Reduced row echelon form over `F_p`, zero rows dropped.
pub fn rref(mut rows: Vec<Vec<u8>>, p: u8) -> Vec<Vec<u8>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..n {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, pivot);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = (*x as u32 * inv as u32 % p as u32) as u8;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col] as u32;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    let sub = f * y as u32 % p as u32;
                    *x = ((*x as u32 + p as u32 - sub) % p as u32) as u8;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// A subspace of `F_p^n`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace(pub Vec<Vec<u8>>);

impl Subspace {
    pub fn span(rows: Vec<Vec<u8>>, p: u8) -> Subspace {
        Subspace(rref(rows, p))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, other: &Subspace, p: u8) -> bool {
        let mut rows = self.0.clone();
        rows.extend(other.0.iter().cloned());
        rref(rows, p).len() == self.dim()
    }

    pub fn sum(&self, other: &Subspace, p: u8) -> Subspace {
        let mut rows = self.0.clone();
        rows.extend(other.0.iter().cloned());
        Subspace::span(rows, p)
    }

    /// All vectors of the subspace.
    pub fn vectors(&self, n: usize, p: u8) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; n]];
        for row in &self.0 {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for v in &out {
                for c in 0..p as u32 {
                    next.push(v.iter().zip(row).map(|(&a, &b)| ((a as u32 + c * b as u32) % p as u32) as u8).collect());
                }
            }
            out = next;
        }
        out
    }

    pub fn intersect(&self, other: &Subspace, n: usize, p: u8) -> Subspace {
        let common: Vec<Vec<u8>> = self
            .vectors(n, p)
            .into_iter()
            .filter(|v| other.contains(&Subspace(vec![v.clone()]), p))
            .collect();
        Subspace::span(common, p)
    }
}

/// All subspaces of dimension `k` in `F_p^n`, by pivot pattern and free entries.
pub fn subspaces(n: usize, k: usize, p: u8) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    fn choose(start: usize, n: usize, k: usize, pivots: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if pivots.len() == k {
            f(pivots);
            return;
        }
        for c in start..n {
            pivots.push(c);
            choose(c + 1, n, k, pivots, f);
            pivots.pop();
        }
    }
    choose(0, n, k, &mut pivots, &mut |piv| {
        // free positions: (row, col) with col > pivot of row and col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as usize).pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![0u8; n]; k];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, c) in &free {
                rows[r][c] = (code % p as usize) as u8;
                code /= p as usize;
            }
            out.push(Subspace(rows));
        }
    });
    out.sort();
    out
}

/// Square matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FMatrix {
    pub n: usize,
    pub entries: Vec<u8>,
}

impl FMatrix {
    pub fn identity(n: usize) -> FMatrix {
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        FMatrix { n, entries }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u8], p: u8) -> Vec<u8> {
        (0..self.n)
            .map(|i| {
                let s: u32 = (0..self.n).map(|j| self.entries[i * self.n + j] as u32 * v[j] as u32).sum();
                (s % p as u32) as u8
            })
            .collect()
    }

    pub fn image(&self, s: &Subspace, p: u8) -> Subspace {
        Subspace::span(s.0.iter().map(|v| self.apply(v, p)).collect(), p)
    }
}

/// Generators of `GL(n, p)`: the transvections `I + E_{i,i+1}`, `I + E_{i+1,i}`
/// and, for `p > 2`, `diag(ζ, 1, …, 1)` with `ζ` primitive.
pub fn gl_generators(n: usize, p: u8) -> Vec<FMatrix> {
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut up = FMatrix::identity(n);
        up.entries[i * n + i + 1] = 1;
        gens.push(up);
        let mut down = FMatrix::identity(n);
        down.entries[(i + 1) * n + i] = 1;
        gens.push(down);
    }
    if p > 2 {
        let mut d = FMatrix::identity(n);
        d.entries[0] = primitive_root(p);
        gens.push(d);
    }
    gens
}

/// Index of a nonzero vector among the `p^n − 1` nonzero vectors.
pub fn vector_index(v: &[u8], p: u8) -> u32 {
    v.iter().rev().fold(0u32, |acc, &x| acc * p as u32 + x as u32) - 1
}

pub fn vector_of_index(i: u32, n: usize, p: u8) -> Vec<u8> {
    let mut code = i + 1;
    (0..n)
        .map(|_| {
            let x = (code % p as u32) as u8;
            code /= p as u32;
            x
        })
        .collect()
}

/// A complete flag `V_1 ⊂ … ⊂ V_{n−1}`.
pub type Flag = Vec<Subspace>;

/// Number of complete flags in `F_p^n`: `∏ (p^i − 1)/(p − 1)`.
pub fn flag_count(n: usize, p: u64) -> u128 {
    (1..=n as u32).map(|i| (0..i).map(|j| (p as u128).pow(j)).sum::<u128>()).product()
}

pub fn enumerate_flags(n: usize, p: u8) -> Result<Vec<Flag>> {
    if n < 2 {
        return Err(Error::Precondition("flags need dimension at least 2".into()));
    }
    let by_dim: Vec<Vec<Subspace>> = (1..n).map(|k| subspaces(n, k, p)).collect();
    let mut out = Vec::new();
    let mut current: Flag = Vec::with_capacity(n - 1);
    fn extend(by_dim: &[Vec<Subspace>], p: u8, current: &mut Flag, out: &mut Vec<Flag>) {
        let k = current.len();
        if k == by_dim.len() {
            out.push(current.clone());
            return;
        }
        for s in &by_dim[k] {
            if k == 0 || s.contains(&current[k - 1], p) {
                current.push(s.clone());
                extend(by_dim, p, current, out);
                current.pop();
            }
        }
    }
    extend(&by_dim, p, &mut current, &mut out);
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Subspaces as sets of vectors spanned by every k-tuple of vectors.
    fn brute_force_subspace_count(n: usize, k: usize, p: u8) -> usize {
        let all: Vec<Vec<u8>> = (0..(p as u32).pow(n as u32))
            .map(|mut c| {
                (0..n)
                    .map(|_| {
                        let x = (c % p as u32) as u8;
                        c /= p as u32;
                        x
                    })
                    .collect()
            })
            .collect();
        let mut found: HashSet<Vec<Vec<u8>>> = HashSet::new();
        let mut idx = vec![0usize; k];
        loop {
            let mut span: HashSet<Vec<u8>> = HashSet::from([vec![0u8; n]]);
            for &i in &idx {
                let mut next = HashSet::new();
                for v in &span {
                    for c in 0..p as u32 {
                        next.insert(
                            v.iter().zip(&all[i]).map(|(&a, &b)| ((a as u32 + c * b as u32) % p as u32) as u8).collect(),
                        );
                    }
                }
                span = next;
            }
            if span.len() == (p as usize).pow(k as u32) {
                let mut set: Vec<Vec<u8>> = span.into_iter().collect();
                set.sort();
                found.insert(set);
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    return found.len();
                }
                idx[pos] += 1;
                if idx[pos] < all.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn subspace_counts_match_brute_force() {
        for &(n, k, p) in &[(3, 1, 2), (3, 2, 2), (3, 1, 3), (3, 2, 3), (4, 2, 2)] {
            assert_eq!(subspaces(n, k, p).len(), brute_force_subspace_count(n, k, p), "n={n} k={k} p={p}");
        }
    }

    #[test]
    fn flag_counts() {
        assert_eq!(enumerate_flags(3, 2).unwrap().len(), 21);
        assert_eq!(enumerate_flags(3, 3).unwrap().len(), 52);
        assert_eq!(enumerate_flags(4, 2).unwrap().len(), 315);
        assert_eq!(flag_count(3, 2), 21);
        assert_eq!(flag_count(3, 3), 52);
        assert_eq!(flag_count(4, 2), 315);
    }

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5));
        assert!(!is_prime(4) && !is_prime(1) && !is_prime(9));
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::span(vec![vec![1, 0, 0]], 2);
        let b = Subspace::span(vec![vec![0, 1, 0]], 2);
        let ab = a.sum(&b, 2);
        assert_eq!(ab.dim(), 2);
        let c = Subspace::span(vec![vec![0, 1, 0], vec![0, 0, 1]], 2);
        assert_eq!(ab.intersect(&c, 3, 2), b);
    }

    #[test]
    fn vector_indices_round_trip() {
        for i in 0..26 {
            assert_eq!(vector_index(&vector_of_index(i, 3, 3), 3), i);
        }
    }
}
