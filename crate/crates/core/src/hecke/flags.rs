//! The G-set of complete flags in `F_q^n` under `GL(n, q)` and the spans
//! of flags that differ in exactly one slot.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{EquivariantMap, GSet, Group, Perm, PermGroup, DEFAULT_CAP};
use crate::spans::GSetSpan;

use super::field::{
    enumerate_flags, flag_count, gl_generators, is_prime, vector_index, vector_of_index, FMatrix, Flag,
};

/// Default ceiling on the number of flags enumerated.
pub const DEFAULT_MAX_FLAGS: usize = 100_000;

/// Complete flags in `F_q^n` with the action of `GL(n, q)`.
#[derive(Clone, Debug)]
pub struct FlagComplex {
    n: usize,
    q: u8,
    flags: Vec<Flag>,
    index: HashMap<Flag, u32>,
    matrices: Vec<FMatrix>,
    gset: GSet,
}

impl FlagComplex {
    /// Flags of `F_q^{rank+1}`, the flag variety of type `A_rank`.
    pub fn new(rank: usize, q: u64) -> Result<FlagComplex> {
        FlagComplex::with_cap(rank, q, DEFAULT_MAX_FLAGS)
    }

    pub fn with_cap(rank: usize, q: u64, max_flags: usize) -> Result<FlagComplex> {
        FlagComplex::with_limits(rank, q, max_flags, DEFAULT_CAP)
    }

    /// As [`FlagComplex::with_cap`], also bounding enumeration of `GL(n, q)`.
    pub fn with_limits(rank: usize, q: u64, max_flags: usize, group_cap: usize) -> Result<FlagComplex> {
        if !is_prime(q) || q > u8::MAX as u64 {
            return Err(Error::UnsupportedField { q });
        }
        if rank == 0 {
            return Err(Error::Precondition("rank must be at least 1".into()));
        }
        let n = rank + 1;
        let count = flag_count(n, q);
        if count > max_flags as u128 {
            return Err(Error::FlagCap { count: count.min(usize::MAX as u128) as usize, cap: max_flags });
        }
        let p = q as u8;
        let flags = enumerate_flags(n, p)?;
        let index: HashMap<Flag, u32> = flags.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let matrices = gl_generators(n, p);
        let degree = (q as usize).pow(n as u32) - 1;
        let perms = matrices
            .iter()
            .map(|m| Perm::new((0..degree as u32).map(|i| vector_index(&m.apply(&vector_of_index(i, n, p), p), p)).collect()))
            .collect::<Result<Vec<_>>>()?;
        let group: Group = Arc::new(PermGroup::with_cap(degree, perms, group_cap)?);
        let action = matrices
            .iter()
            .map(|m| {
                flags
                    .iter()
                    .map(|f| {
                        let image: Flag = f.iter().map(|s| m.image(s, p)).collect();
                        index[&image]
                    })
                    .collect()
            })
            .collect();
        let gset = GSet::new(group, flags.len(), action)?;
        Ok(FlagComplex { n, q: p, flags, index, matrices, gset })
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn flag(&self, i: u32) -> &Flag {
        &self.flags[i as usize]
    }

    pub fn index_of(&self, f: &Flag) -> Option<u32> {
        self.index.get(f).copied()
    }

    pub fn matrices(&self) -> &[FMatrix] {
        &self.matrices
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn group(&self) -> &Group {
        self.gset.group()
    }

    /// Flag `i` with slot `d` (1-based, `V_d`) replaced by that of flag `j`.
    pub fn with_slot(&self, i: u32, d: usize, j: u32) -> Option<u32> {
        let mut f = self.flags[i as usize].clone();
        f[d - 1] = self.flags[j as usize][d - 1].clone();
        self.index_of(&f)
    }

    fn check_dot(&self, d: usize) -> Result<()> {
        if d == 0 || d >= self.n {
            return Err(Error::Precondition(format!("dot {d} outside 1..={}", self.n - 1)));
        }
        Ok(())
    }

    /// Pairs `(f, f')` of flags differing exactly in slot `d`, sorted.
    pub fn generator_pairs(&self, d: usize) -> Result<Vec<(u32, u32)>> {
        self.check_dot(d)?;
        let mut groups: HashMap<Vec<&crate::hecke::field::Subspace>, Vec<u32>> = HashMap::new();
        for (i, f) in self.flags.iter().enumerate() {
            let key: Vec<_> = f.iter().enumerate().filter(|&(k, _)| k != d - 1).map(|(_, s)| s).collect();
            groups.entry(key).or_default().push(i as u32);
        }
        let mut pairs: Vec<(u32, u32)> = groups
            .values()
            .flat_map(|g| g.iter().flat_map(move |&a| g.iter().filter(move |&&b| b != a).map(move |&b| (a, b))))
            .collect();
        pairs.sort_unstable();
        Ok(pairs)
    }
}

/// The span of flags that differ exactly in slot `d`, with a fast inverse
/// from pairs of flags to apex points.
#[derive(Clone, Debug)]
pub struct GeneratorSpan {
    pub dot: usize,
    pub span: GSetSpan,
    pairs: Vec<(u32, u32)>,
}

impl GeneratorSpan {
    /// Apex point `(f, f')`: the right leg gives `f`, the left leg `f'`.
    pub fn point(&self, from: u32, to: u32) -> Option<u32> {
        self.pairs.binary_search(&(from, to)).ok().map(|i| i as u32)
    }

    pub fn pair(&self, point: u32) -> (u32, u32) {
        self.pairs[point as usize]
    }
}

pub fn generator_span(fc: &FlagComplex, d: usize) -> Result<GeneratorSpan> {
    let pairs = fc.generator_pairs(d)?;
    let x = fc.gset();
    let action = (0..x.group().generators().len())
        .map(|g| {
            pairs
                .iter()
                .map(|&(a, b)| pairs.binary_search(&(x.act(g, a), x.act(g, b))).expect("pairs are invariant") as u32)
                .collect()
        })
        .collect();
    let apex = GSet::new(x.group().clone(), pairs.len(), action)?;
    let left = EquivariantMap::new(apex.clone(), x.clone(), pairs.iter().map(|p| p.1).collect())?;
    let right = EquivariantMap::new(apex, x.clone(), pairs.iter().map(|p| p.0).collect())?;
    Ok(GeneratorSpan { dot: d, span: GSetSpan::new(left, right)?, pairs })
}
