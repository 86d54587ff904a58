//! The generator matrices of the Hecke algebra of `A_2` in the basis
//! `1, s1, s2s1, w0, s1s2, s2`, compared with matrices computed from flags
//! and with the Coxeter presentation.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{mat_mul, rat, QMatrix};
use crate::groups::orbits;

use super::algebra::structure_constants;
use super::flags::{generator_span, FlagComplex};

/// Left multiplication by `T_{s1}` and `T_{s2}` at parameter `q`.
pub fn reference_matrices(q: i64) -> (QMatrix, QMatrix) {
    let p = QMatrix::from_ints(&[
        vec![0, q, 0, 0, 0, 0],
        vec![1, q - 1, 0, 0, 0, 0],
        vec![0, 0, 0, q, 0, 0],
        vec![0, 0, 1, q - 1, 0, 0],
        vec![0, 0, 0, 0, q - 1, 1],
        vec![0, 0, 0, 0, q, 0],
    ]);
    let l = QMatrix::from_ints(&[
        vec![0, 0, 0, 0, 0, q],
        vec![0, 0, q, 0, 0, 0],
        vec![0, 1, q - 1, 0, 0, 0],
        vec![0, 0, 0, q - 1, 1, 0],
        vec![0, 0, 0, q, 0, 0],
        vec![1, 0, 0, 0, 0, q - 1],
    ]);
    (p, l)
}

/// Reduced words of the reference basis.
pub const REFERENCE_BASIS: [&[usize]; 6] = [&[], &[1], &[2, 1], &[1, 2, 1], &[1, 2], &[2]];

/// `A² = (q−1)A + q` for both generators and `PLP = LPL`.
pub fn reference_relations_hold(p: &QMatrix, l: &QMatrix, q: i64) -> Result<bool> {
    let quadratic = |a: &QMatrix| -> Result<bool> {
        let rhs = a.scale(&rat(q - 1)).add(&QMatrix::identity(a.rows()).scale(&rat(q)))?;
        Ok(mat_mul(a, a)? == rhs)
    };
    let plp = mat_mul(&mat_mul(p, l)?, p)?;
    let lpl = mat_mul(&mat_mul(l, p)?, l)?;
    Ok(quadratic(p)? && quadratic(l)? && plp == lpl)
}

/// Permutations of `{0, …, n−1}` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Element of the symmetric group `S_n` as the images of `0..n`.
type Weyl = Vec<u8>;

fn simple(n: usize, i: usize) -> Weyl {
    let mut w: Weyl = (0..n as u8).collect();
    w.swap(i - 1, i);
    w
}

/// `a ∘ b`.
fn compose(a: &Weyl, b: &Weyl) -> Weyl {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn length(w: &Weyl) -> usize {
    (0..w.len()).flat_map(|i| (i + 1..w.len()).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count()
}

/// A reduced word for `w`, leftmost letter first.
fn reduced_word(w: &Weyl) -> Vec<usize> {
    let n = w.len();
    let mut w = w.clone();
    let mut word = Vec::new();
    while length(&w) > 0 {
        let i = (1..n).find(|&i| length(&compose(&simple(n, i), &w)) < length(&w)).expect("descent exists");
        word.push(i);
        w = compose(&simple(n, i), &w);
    }
    word
}

type HeckeElement = BTreeMap<Weyl, i64>;

/// `T_s · h` by the Coxeter presentation at parameter `q`.
fn left_mul_simple(n: usize, i: usize, h: &HeckeElement, q: i64) -> HeckeElement {
    let s = simple(n, i);
    let mut out = HeckeElement::new();
    for (w, &c) in h {
        let sw = compose(&s, w);
        if length(&sw) > length(w) {
            *out.entry(sw).or_insert(0) += c;
        } else {
            *out.entry(w.clone()).or_insert(0) += (q - 1) * c;
            *out.entry(sw).or_insert(0) += q * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// All elements of `S_{rank+1}` and, for each pair, `T_v · T_u` as
/// coefficients over the elements: `c[u][v][w]`.
pub fn coxeter_structure_constants(rank: usize, q: i64) -> (Vec<Weyl>, Vec<Vec<Vec<i64>>>) {
    let n = rank + 1;
    let elements: Vec<Weyl> = permutations(n).into_iter().map(|p| p.into_iter().map(|x| x as u8).collect()).collect();
    let position: HashMap<&Weyl, usize> = elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut c = vec![vec![vec![0i64; elements.len()]; elements.len()]; elements.len()];
    for (u, wu) in elements.iter().enumerate() {
        for (v, wv) in elements.iter().enumerate() {
            let mut h = HeckeElement::from([(wu.clone(), 1)]);
            for &i in reduced_word(wv).iter().rev() {
                h = left_mul_simple(n, i, &h, q);
            }
            for (w, coeff) in h {
                c[u][v][position[&w]] = coeff;
            }
        }
    }
    (elements, c)
}

#[derive(Clone, Debug, Serialize)]
pub struct Alignment {
    /// Orbit index for each reference basis vector, for every matching relabelling.
    pub matching_permutations: Vec<Vec<usize>>,
    /// Reduced word of the Weyl element labelling each orbit.
    pub orbit_words: Vec<Vec<usize>>,
    /// A matching relabelling sends basis vector `k` to the orbit labelled by its reduced word.
    pub labels_match: bool,
    pub coxeter_ok: bool,
}

impl Alignment {
    pub fn ok(&self) -> bool {
        self.matching_permutations.len() == 1 && self.labels_match && self.coxeter_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceMatrixReport {
    pub q: u64,
    pub reference_relations_ok: bool,
    /// Present when `q` is prime, so that flags over `F_q` exist.
    pub alignment: Option<Alignment>,
    pub pass: bool,
}

/// Labels orbits of pairs of flags by Weyl group elements: the diagonal is
/// the identity and `O_s ∘ O_w` is the single orbit `sw` whenever the
/// length goes up.
fn weyl_labels(rank: usize, c: &[Vec<Vec<u64>>], generator_orbits: &[usize], diagonal: usize) -> Option<Vec<Weyl>> {
    let n = rank + 1;
    let count = c.len();
    let mut label: Vec<Option<Weyl>> = vec![None; count];
    label[diagonal] = Some((0..n as u8).collect());
    let mut queue = vec![diagonal];
    while let Some(o) = queue.pop() {
        let w = label[o].clone().expect("labelled");
        for (k, &s_orbit) in generator_orbits.iter().enumerate() {
            let sw = compose(&simple(n, k + 1), &w);
            if length(&sw) <= length(&w) {
                continue;
            }
            let row = &c[o][s_orbit];
            let support: Vec<usize> = (0..count).filter(|&t| row[t] != 0).collect();
            if support.len() != 1 || row[support[0]] != 1 {
                return None;
            }
            match &label[support[0]] {
                Some(existing) if *existing != sw => return None,
                Some(_) => {}
                None => {
                    label[support[0]] = Some(sw);
                    queue.push(support[0]);
                }
            }
        }
    }
    label.into_iter().collect()
}

fn word_element(n: usize, word: &[usize]) -> Weyl {
    word.iter().rev().fold((0..n as u8).collect(), |w, &i| compose(&simple(n, i), &w))
}

type Constants = Vec<Vec<Vec<u64>>>;

/// Orbit structure constants, generator orbits and diagonal orbit of a flag complex.
fn flag_algebra(fc: &FlagComplex) -> Result<(Constants, Vec<usize>, usize)> {
    let x = fc.gset();
    let c = structure_constants(x, x, x)?;
    let pairs = orbits(&crate::groups::product_gset(x, x)?);
    let nx = x.size() as u32;
    let generator_orbits: Vec<usize> = (1..=fc.rank())
        .map(|d| {
            let s = generator_span(fc, d)?;
            let (a, b) = s.pair(0);
            Ok(pairs.orbit_of[(a * nx + b) as usize] as usize)
        })
        .collect::<Result<_>>()?;
    Ok((c, generator_orbits, pairs.orbit_of[0] as usize))
}

/// Computes the left-regular matrices of the two generators from the
/// flags of `F_q^3` and searches the relabellings of orbits that turn
/// them into the reference matrices.
pub fn align_with_flags(q: u64) -> Result<Alignment> {
    let fc = FlagComplex::new(2, q)?;
    let (c, generator_orbits, diagonal) = flag_algebra(&fc)?;
    let dim = c.len();
    if dim != 6 {
        return Err(Error::Precondition(format!("expected 6 orbits on pairs of flags, found {dim}")));
    }
    let regular = |s: usize| {
        QMatrix::from_ints(&(0..dim).map(|u| (0..dim).map(|w| c[w][s][u] as i64).collect()).collect::<Vec<_>>())
    };
    let (cp, cl) = (regular(generator_orbits[0]), regular(generator_orbits[1]));
    let (p, l) = reference_matrices(q as i64);
    let matching_permutations: Vec<Vec<usize>> =
        permutations(dim).into_iter().filter(|perm| cp.permuted(perm) == p && cl.permuted(perm) == l).collect();
    let labels = weyl_labels(2, &c, &generator_orbits, diagonal);
    let orbit_words = labels.as_ref().map(|ls| ls.iter().map(reduced_word).collect()).unwrap_or_default();
    let labels_match = labels.as_ref().is_some_and(|ls| {
        matching_permutations
            .iter()
            .any(|perm| perm.iter().enumerate().all(|(k, &o)| ls[o] == word_element(3, REFERENCE_BASIS[k])))
    });
    let coxeter_ok = labels.as_ref().is_some_and(|ls| coxeter_agrees(2, q as i64, &c, ls));
    Ok(Alignment { matching_permutations, orbit_words, labels_match, coxeter_ok })
}

/// Checks the reference relations at `q` and, for prime `q`, aligns the
/// reference matrices with the Hecke algebra computed from flags.
pub fn reference_matrix_check(q: u64) -> Result<ReferenceMatrixReport> {
    let (p, l) = reference_matrices(q as i64);
    let reference_relations_ok = reference_relations_hold(&p, &l, q as i64)?;
    let alignment = if super::field::is_prime(q) { Some(align_with_flags(q)?) } else { None };
    let pass = reference_relations_ok && alignment.as_ref().is_none_or(Alignment::ok);
    Ok(ReferenceMatrixReport { q, reference_relations_ok, alignment, pass })
}

/// Structure constants of orbits on pairs of flags equal those of the
/// Coxeter presentation under the Weyl labelling.
fn coxeter_agrees(rank: usize, q: i64, c: &[Vec<Vec<u64>>], labels: &[Weyl]) -> bool {
    let (elements, cox) = coxeter_structure_constants(rank, q);
    let index: HashMap<&Weyl, usize> = elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let Some(to_cox) = labels.iter().map(|w| index.get(w).copied()).collect::<Option<Vec<usize>>>() else {
        return false;
    };
    (0..c.len()).all(|u| {
        (0..c.len()).all(|v| (0..c.len()).all(|w| c[u][v][w] as i64 == cox[to_cox[u]][to_cox[v]][to_cox[w]]))
    })
}

/// Multiplication data of `S_{rank+1}` with the Hecke deformation rule.
#[derive(Clone, Debug)]
pub struct CoxeterData {
    pub elements: Vec<Vec<u8>>,
    pub reduced_words: Vec<Vec<usize>>,
    pub lengths: Vec<usize>,
    /// `c[u][v][w]`: coefficient of `T_w` in `T_v · T_u`.
    pub constants: Vec<Vec<Vec<i64>>>,
}

pub fn coxeter_oracle(rank: usize, q: i64) -> Result<CoxeterData> {
    if rank == 0 || rank > 4 {
        return Err(Error::Precondition(format!("Coxeter oracle supports ranks 1..=4, not {rank}")));
    }
    let (elements, constants) = coxeter_structure_constants(rank, q);
    Ok(CoxeterData {
        reduced_words: elements.iter().map(reduced_word).collect(),
        lengths: elements.iter().map(length).collect(),
        elements,
        constants,
    })
}

/// Flag structure constants against the Coxeter presentation in any rank.
pub fn coxeter_check(complex: &FlagComplex) -> Result<bool> {
    let (c, generator_orbits, diagonal) = flag_algebra(complex)?;
    let labels = weyl_labels(complex.rank(), &c, &generator_orbits, diagonal);
    Ok(labels.is_some_and(|ls| coxeter_agrees(complex.rank(), complex.q() as i64, &c, &ls)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_relations_for_small_q() {
        for q in 2..6 {
            let (p, l) = reference_matrices(q);
            assert!(reference_relations_hold(&p, &l, q).unwrap());
        }
    }

    #[test]
    fn reference_matrices_are_the_coxeter_left_regular_representation() {
        let (elements, c) = coxeter_structure_constants(2, 3);
        let index = |word: &[usize]| elements.iter().position(|e| *e == word_element(3, word)).unwrap();
        let basis: Vec<usize> = REFERENCE_BASIS.iter().map(|w| index(w)).collect();
        let (p, l) = reference_matrices(3);
        for (gen, m) in [(index(&[1]), &p), (index(&[2]), &l)] {
            for (j, &bj) in basis.iter().enumerate() {
                for (i, &bi) in basis.iter().enumerate() {
                    assert_eq!(rat(c[bj][gen][bi]), *m.get(i, j));
                }
            }
        }
    }

    #[test]
    fn coxeter_oracle_in_rank_two() {
        let d = coxeter_oracle(2, 2).unwrap();
        assert_eq!(d.elements.len(), 6);
        assert_eq!(d.lengths.iter().max(), Some(&3));
        assert!(coxeter_oracle(5, 2).is_err());
    }

    #[test]
    fn q_one_is_the_group_algebra() {
        let (p, l) = reference_matrices(1);
        assert_eq!(mat_mul(&p, &p).unwrap(), QMatrix::identity(6));
        assert_eq!(mat_mul(&l, &l).unwrap(), QMatrix::identity(6));
        let r = reference_matrix_check(1).unwrap();
        assert!(r.pass && r.alignment.is_none());
    }

    #[test]
    fn coxeter_lengths() {
        assert_eq!(length(&vec![2, 1, 0]), 3);
        assert_eq!(reduced_word(&vec![2, 1, 0]).len(), 3);
        assert_eq!(permutations(3).len(), 6);
    }

    #[test]
    fn flags_reproduce_reference_matrices() {
        for q in [2, 3] {
            let r = reference_matrix_check(q).unwrap();
            assert!(r.pass, "{r:?}");
            let a = r.alignment.unwrap();
            assert_eq!(a.matching_permutations.len(), 1);
        }
    }

    #[test]
    fn rank_three_matches_coxeter() {
        assert!(coxeter_check(&FlagComplex::new(3, 2).unwrap()).unwrap());
    }

    #[test]
    fn q_five_aligns_from_generators() {
        let r = reference_matrix_check(5).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
