//! Hecke hom groupoids `(X×Y)//G`, the composition span between them,
//! intertwiner bases and structure constants.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::degroup::{degroupoidify_span, product_class_order, vector_of, GroupoidOver};
use crate::error::{Error, Result};
use crate::exactnum::{kronecker_vec, nullspace, rank, ratio, QMatrix, QVector, Rat};
use crate::groupoids::{action_groupoid, product_groupoid, Groupoid, GroupoidFunctor};
use crate::groups::{orbits, product_gset, EquivariantMap, GSet, Orbits};
use crate::spans::GroupoidSpan;

/// Unknown count above which intertwiners are not recomputed by linear algebra.
pub const NULLSPACE_LIMIT: usize = 500;

/// `(X×Y)//G`, whose iso classes are the `G`-orbits on pairs.
pub fn hecke_hom(x: &GSet, y: &GSet) -> Result<Groupoid> {
    action_groupoid(&product_gset(x, y)?)
}

/// The span `(X×Y)//G × (Y×Z)//G ← (X×Y×Z)//G → (X×Z)//G`.
#[derive(Clone, Debug)]
pub struct CompositionSpan {
    pub span: GroupoidSpan,
    pub xy: Groupoid,
    pub yz: Groupoid,
    pub xz: Groupoid,
}

pub fn hecke_composition_span(x: &GSet, y: &GSet, z: &GSet) -> Result<CompositionSpan> {
    let xy_set = product_gset(x, y)?;
    let yz_set = product_gset(y, z)?;
    let xz_set = product_gset(x, z)?;
    let xyz_set = product_gset(&xy_set, z)?;
    let (ny, nz) = (y.size() as u32, z.size() as u32);
    let n = xyz_set.size() as u32;
    let to_xy = EquivariantMap::new(xyz_set.clone(), xy_set.clone(), (0..n).map(|p| p / nz).collect())?;
    let to_yz = EquivariantMap::new(xyz_set.clone(), yz_set.clone(), (0..n).map(|p| (p / nz) % ny * nz + p % nz).collect())?;
    let to_xz = EquivariantMap::new(xyz_set.clone(), xz_set.clone(), (0..n).map(|p| p / nz / ny * nz + p % nz).collect())?;
    let xy = action_groupoid(&xy_set)?;
    let yz = action_groupoid(&yz_set)?;
    let xz = action_groupoid(&xz_set)?;
    let apex = action_groupoid(&xyz_set)?;
    let product = product_groupoid(&xy, &yz);
    let right = GroupoidFunctor::pairing(
        &GroupoidFunctor::induced(&to_xy, &apex, &xy)?,
        &GroupoidFunctor::induced(&to_yz, &apex, &yz)?,
        &product,
    )?;
    let left = GroupoidFunctor::induced(&to_xz, &apex, &xz)?;
    Ok(CompositionSpan { span: GroupoidSpan::new(left, right)?, xy, yz, xz })
}

/// `D` of the composition span with columns in Kronecker order of the classes
/// of `(X×Y)//G` and `(Y×Z)//G`.
pub fn composition_matrix(c: &CompositionSpan) -> Result<QMatrix> {
    let d = degroupoidify_span(&c.span)?;
    let order = product_class_order(c.span.right_foot())?;
    let mut out = QMatrix::zeros(d.rows(), d.cols());
    for i in 0..d.rows() {
        for (j, &k) in order.iter().enumerate() {
            out.set(i, k, d.get(i, j).clone());
        }
    }
    Ok(out)
}

/// Orbit indicator `M_O` with `M_O[y][x] = 1` iff `(x, y) ∈ O`.
pub fn orbit_matrix(nx: usize, ny: usize, orbit: &[u32]) -> Vec<Vec<u64>> {
    let mut m = vec![vec![0u64; nx]; ny];
    for &p in orbit {
        m[p as usize % ny][p as usize / ny] = 1;
    }
    m
}

/// The intertwiners `C^X → C^Y` given by the orbits on `X×Y`. When
/// `|X||Y|` is at most [`NULLSPACE_LIMIT`] their span is checked against the
/// solutions of the equivariance equations.
pub fn intertwiner_basis(x: &GSet, y: &GSet) -> Result<Vec<QMatrix>> {
    let basis = orbit_indicators(x, y)?;
    if let Some((dim, false)) = check_intertwiners(x, y)? {
        return Err(Error::Precondition(format!(
            "orbit indicators ({}) and equivariant solutions ({dim}) span different spaces",
            basis.len()
        )));
    }
    Ok(basis)
}

fn orbit_indicators(x: &GSet, y: &GSet) -> Result<Vec<QMatrix>> {
    let xy = product_gset(x, y)?;
    Ok(orbits(&xy)
        .orbits
        .iter()
        .map(|o| QMatrix::from_ints(&to_i64(&orbit_matrix(x.size(), y.size(), o))))
        .collect())
}

fn to_i64(m: &[Vec<u64>]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect()
}

/// Solutions of `M ρ_X(g) = ρ_Y(g) M` for every generator, as flattened
/// `M[y][x]` at index `y·|X| + x`.
pub fn intertwiner_nullspace(x: &GSet, y: &GSet) -> Result<Vec<QVector>> {
    if !x.same_group(y) {
        return Err(Error::GroupMismatch);
    }
    let (nx, ny) = (x.size(), y.size());
    let unknowns = nx * ny;
    let gens = x.group().generators().len();
    let mut entries = vec![Rat::zero(); gens * unknowns * unknowns];
    for g in 0..gens {
        for yy in 0..ny as u32 {
            for xx in 0..nx as u32 {
                let row = g * unknowns + yy as usize * nx + xx as usize;
                let moved = y.act(g, yy) as usize * nx + x.act(g, xx) as usize;
                let here = yy as usize * nx + xx as usize;
                if moved != here {
                    entries[row * unknowns + moved] += Rat::one();
                    entries[row * unknowns + here] -= Rat::one();
                }
            }
        }
    }
    Ok(nullspace(&QMatrix::new(gens * unknowns, unknowns, entries)?))
}

/// Dimension of the space of intertwiners when `|X||Y|` is small enough for
/// an independent linear-algebra check, and whether that space agrees with
/// the span of the orbit indicators.
pub fn check_intertwiners(x: &GSet, y: &GSet) -> Result<Option<(usize, bool)>> {
    if x.size() * y.size() > NULLSPACE_LIMIT {
        return Ok(None);
    }
    let solutions = intertwiner_nullspace(x, y)?;
    let indicators: Vec<QVector> = orbit_indicators(x, y)?
        .iter()
        .map(|m| QVector::new(m.entries().to_vec()))
        .collect();
    let n = x.size() * y.size();
    let a = QMatrix::from_columns(n, &indicators)?;
    let b = QMatrix::from_columns(n, &solutions)?;
    let both: Vec<QVector> = indicators.iter().chain(solutions.iter()).cloned().collect();
    let joint = rank(&QMatrix::from_columns(n, &both)?);
    let agree = rank(&a) == indicators.len() && rank(&b) == solutions.len() && joint == solutions.len()
        && joint == indicators.len();
    Ok(Some((solutions.len(), agree)))
}

/// `c[u][v][w]`: coefficient of `O_w` in `O_v ∘ O_u` (first `u`, then `v`),
/// counted as `#{y : (x_w, y) ∈ O_u, (y, z_w) ∈ O_v}`.
pub fn structure_constants(x: &GSet, y: &GSet, z: &GSet) -> Result<Vec<Vec<Vec<u64>>>> {
    let oxy = orbits(&product_gset(x, y)?);
    let oyz = orbits(&product_gset(y, z)?);
    let oxz = orbits(&product_gset(x, z)?);
    let (ny, nz) = (y.size() as u32, z.size() as u32);
    let mut c = vec![vec![vec![0u64; oxz.len()]; oyz.len()]; oxy.len()];
    for (w, orbit) in oxz.orbits.iter().enumerate() {
        let (xw, zw) = (orbit[0] / nz, orbit[0] % nz);
        for yy in 0..ny {
            let u = oxy.orbit_of[(xw * ny + yy) as usize] as usize;
            let v = oyz.orbit_of[(yy * nz + zw) as usize] as usize;
            c[u][v][w] += 1;
        }
    }
    Ok(c)
}

/// The same constants read from products of orbit matrices, or `None` when
/// some product is not a combination of orbit matrices.
pub fn structure_constants_by_matrices(x: &GSet, y: &GSet, z: &GSet) -> Result<Option<Vec<Vec<Vec<u64>>>>> {
    let (nx, ny, nz) = (x.size(), y.size(), z.size());
    let oxy = orbits(&product_gset(x, y)?);
    let oyz = orbits(&product_gset(y, z)?);
    let oxz = orbits(&product_gset(x, z)?);
    let mxz: Vec<Vec<Vec<u64>>> = oxz.orbits.iter().map(|o| orbit_matrix(nx, nz, o)).collect();
    let mut c = vec![vec![vec![0u64; oxz.len()]; oyz.len()]; oxy.len()];
    for (u, ou) in oxy.orbits.iter().enumerate() {
        let mu = orbit_matrix(nx, ny, ou);
        for (v, ov) in oyz.orbits.iter().enumerate() {
            let mv = orbit_matrix(ny, nz, ov);
            let mut prod = vec![vec![0u64; nx]; nz];
            for (zz, row) in prod.iter_mut().enumerate() {
                for (yy, &a) in mv[zz].iter().enumerate() {
                    if a != 0 {
                        for (xx, out) in row.iter_mut().enumerate() {
                            *out += a * mu[yy][xx];
                        }
                    }
                }
            }
            for (w, ow) in oxz.orbits.iter().enumerate() {
                let p = ow[0] as usize;
                c[u][v][w] = prod[p % nz][p / nz];
            }
            let mut recombined = vec![vec![0u64; nx]; nz];
            for (w, m) in mxz.iter().enumerate() {
                for zz in 0..nz {
                    for xx in 0..nx {
                        recombined[zz][xx] += c[u][v][w] * m[zz][xx];
                    }
                }
            }
            if recombined != prod {
                return Ok(None);
            }
        }
    }
    Ok(Some(c))
}

/// Automorphism order of each class, `|G| / |O|`.
fn class_orders(g: &Groupoid) -> Vec<usize> {
    g.components().iter().map(|c| c.group.order()).collect()
}

fn scaled_basis_vector(dim: usize, i: usize, aut: usize) -> QVector {
    let mut e = vec![Rat::zero(); dim];
    e[i] = ratio(1, aut as i64);
    QVector::new(e)
}

/// The class vector of the identity span on `X`, `Σ [Δ-orbit] / |Aut|`.
pub fn unit_vector(x: &GSet, xx: &Groupoid) -> Result<QVector> {
    let xg = action_groupoid(x)?;
    let n = x.size() as u32;
    let diagonal = EquivariantMap::new(x.clone(), product_gset(x, x)?, (0..n).map(|p| p * n + p).collect())?;
    let f = GroupoidFunctor::induced(&diagonal, &xg, xx)?;
    Ok(vector_of(&GroupoidOver::new(f)))
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub x: usize,
    pub y: usize,
    pub classes: usize,
    pub orbits: usize,
    pub intertwiner_dim: Option<usize>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleCheck {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// Columns `(u, v)` where `D(comp)(e_u/|A_u| ⊗ e_v/|A_v|) ≠ Σ c^w e_w/|A_w|`.
    pub mismatched_columns: usize,
    pub constants_agree: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainClaimReport {
    pub pairs: Vec<PairCheck>,
    pub triples: Vec<TripleCheck>,
    pub unit_ok: bool,
    /// `(a·b)·c = a·(b·c)` on basis classes of `(X×X)//G` for every `X`.
    pub associative: bool,
    pub pass: bool,
}

/// The product of classes `u` then `v` of `(X×X)//G`, read from the
/// degroupoidified composition span with inputs scaled to class vectors.
pub struct HeckeMultiplication {
    d: QMatrix,
    aut: Vec<usize>,
}

impl HeckeMultiplication {
    pub fn new(x: &GSet) -> Result<HeckeMultiplication> {
        let comp = hecke_composition_span(x, x, x)?;
        Ok(HeckeMultiplication { d: composition_matrix(&comp)?, aut: class_orders(&comp.xy) })
    }

    pub fn dim(&self) -> usize {
        self.aut.len()
    }

    /// Class vector `e_u / |A_u|`.
    pub fn basis(&self, u: usize) -> QVector {
        scaled_basis_vector(self.dim(), u, self.aut[u])
    }

    /// `b ∘ a` on class vectors.
    pub fn multiply(&self, a: &QVector, b: &QVector) -> Result<QVector> {
        self.d.mul_vec(&kronecker_vec(a, b))
    }

    pub fn is_associative(&self) -> Result<bool> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.multiply(&self.basis(a), &self.basis(b))?;
                for c in 0..n {
                    let left = self.multiply(&ab, &self.basis(c))?;
                    let bc = self.multiply(&self.basis(b), &self.basis(c))?;
                    if left != self.multiply(&self.basis(a), &bc)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Compares the degroupoidified Hecke hom groupoids and composition spans
/// with intertwiner spaces and their composition, for every pair and triple
/// of the given `G`-sets.
pub fn verify_main_claim(sets: &[GSet]) -> Result<MainClaimReport> {
    let first = sets.first().ok_or_else(|| Error::Precondition("no G-sets given".into()))?;
    if sets.iter().any(|s| !s.same_group(first)) {
        return Err(Error::GroupMismatch);
    }
    let mut pairs = Vec::new();
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate() {
            let classes = hecke_hom(x, y)?.component_count();
            let orbit_count = orbits(&product_gset(x, y)?).len();
            let check = check_intertwiners(x, y)?;
            let ok = classes == orbit_count && check.is_none_or(|(dim, agree)| agree && dim == classes);
            pairs.push(PairCheck { x: i, y: j, classes, orbits: orbit_count, intertwiner_dim: check.map(|c| c.0), ok });
        }
    }
    let mut triples = Vec::new();
    let mut unit_ok = true;
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate() {
            for (k, z) in sets.iter().enumerate() {
                let comp = hecke_composition_span(x, y, z)?;
                let d = composition_matrix(&comp)?;
                let counted = structure_constants(x, y, z)?;
                let by_matrices = structure_constants_by_matrices(x, y, z)?;
                let constants_agree = by_matrices.as_ref() == Some(&counted);
                let (axy, ayz, axz) = (class_orders(&comp.xy), class_orders(&comp.yz), class_orders(&comp.xz));
                let oracle = by_matrices.unwrap_or(counted);
                let mut mismatched = 0;
                for u in 0..axy.len() {
                    for v in 0..ayz.len() {
                        let input = kronecker_vec(
                            &scaled_basis_vector(axy.len(), u, axy[u]),
                            &scaled_basis_vector(ayz.len(), v, ayz[v]),
                        );
                        let expected = QVector::new(
                            (0..axz.len()).map(|w| ratio(oracle[u][v][w] as i64, axz[w] as i64)).collect(),
                        );
                        if d.mul_vec(&input)? != expected {
                            mismatched += 1;
                        }
                    }
                }
                if i == j {
                    unit_ok &= unit_acts_trivially(&d, &unit_vector(x, &comp.xy)?, &ayz, true)?;
                }
                if j == k {
                    unit_ok &= unit_acts_trivially(&d, &unit_vector(y, &comp.yz)?, &axy, false)?;
                }
                triples.push(TripleCheck {
                    x: i,
                    y: j,
                    z: k,
                    mismatched_columns: mismatched,
                    constants_agree,
                    ok: mismatched == 0 && constants_agree,
                });
            }
        }
    }
    let mut associative = true;
    for x in sets {
        associative &= HeckeMultiplication::new(x)?.is_associative()?;
    }
    let pass = unit_ok && associative && pairs.iter().all(|p| p.ok) && triples.iter().all(|t| t.ok);
    Ok(MainClaimReport { pairs, triples, unit_ok, associative, pass })
}

/// `D(comp)(unit ⊗ e_v) = e_v` (unit on the left) or `D(comp)(e_u ⊗ unit) = e_u`.
fn unit_acts_trivially(d: &QMatrix, unit: &QVector, other: &[usize], unit_first: bool) -> Result<bool> {
    for (v, &aut) in other.iter().enumerate() {
        let e = scaled_basis_vector(other.len(), v, aut);
        let input = if unit_first { kronecker_vec(unit, &e) } else { kronecker_vec(&e, unit) };
        if d.mul_vec(&input)? != e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orbits of `X×Y` in the order used for classes of `(X×Y)//G`.
pub fn pair_orbits(x: &GSet, y: &GSet) -> Result<Orbits> {
    Ok(orbits(&product_gset(x, y)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::PermGroup;
    use std::sync::Arc;

    fn s3_sets() -> Vec<GSet> {
        let g = Arc::new(PermGroup::symmetric(3));
        vec![GSet::point(g.clone()), GSet::natural(g.clone()), GSet::regular(g).unwrap()]
    }

    #[test]
    fn natural_s3_hom_has_two_classes() {
        let s = s3_sets();
        assert_eq!(hecke_hom(&s[1], &s[1]).unwrap().component_count(), 2);
        assert_eq!(check_intertwiners(&s[1], &s[1]).unwrap(), Some((2, true)));
        assert_eq!(check_intertwiners(&s[2], &s[2]).unwrap(), Some((6, true)));
    }

    #[test]
    fn structure_constants_of_natural_s3() {
        let s = s3_sets();
        let c = structure_constants(&s[1], &s[1], &s[1]).unwrap();
        // orbits: diagonal (0) and off-diagonal (1); J = I + O so O·O = 2I + O
        assert_eq!(c[1][1], vec![2, 1]);
        assert_eq!(c[0][1], vec![0, 1]);
        assert_eq!(Some(c), structure_constants_by_matrices(&s[1], &s[1], &s[1]).unwrap());
    }

    #[test]
    fn trivial_group_intertwiners_are_all_matrices() {
        let g = Arc::new(PermGroup::trivial());
        let x = GSet::trivial(g, 2);
        assert_eq!(intertwiner_basis(&x, &x).unwrap().len(), 4);
        assert_eq!(check_intertwiners(&x, &x).unwrap(), Some((4, true)));
    }

    #[test]
    fn one_point_feet_give_the_unit_matrix() {
        let g = Arc::new(PermGroup::symmetric(3));
        let pt = GSet::point(g);
        let comp = hecke_composition_span(&pt, &pt, &pt).unwrap();
        // the diagonal pt//G → pt//(G×G) has |G| classes over the point
        assert_eq!(composition_matrix(&comp).unwrap(), QMatrix::from_ints(&[vec![6]]));
        let m = HeckeMultiplication::new(&pt).unwrap();
        assert_eq!(m.multiply(&m.basis(0), &m.basis(0)).unwrap(), m.basis(0));
        let r = verify_main_claim(&[pt]).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn flag_hom_groupoid() {
        let fc = crate::hecke::FlagComplex::new(2, 2).unwrap();
        let h = hecke_hom(fc.gset(), fc.gset()).unwrap();
        assert_eq!(h.object_count(), 441);
        assert_eq!(h.component_count(), 6);
        assert_eq!(h.cardinality(), ratio(441, 168));
    }

    #[test]
    fn main_claim_for_s3() {
        let r = verify_main_claim(&s3_sets()).unwrap();
        assert_eq!(r.triples.len(), 27);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn main_claim_for_a2_flags() {
        let fc = crate::hecke::FlagComplex::new(2, 2).unwrap();
        let r = verify_main_claim(&[fc.gset().clone()]).unwrap();
        assert_eq!(r.pairs[0].classes, 6);
        assert_eq!(r.pairs[0].intertwiner_dim, Some(6));
        assert!(r.pass, "{r:?}");
    }
}
