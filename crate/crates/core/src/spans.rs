//! Spans of G-sets and of groupoids, their composition, sums, fiber
//! matrices, decomposition into irreducibles and isomorphism testing.
//!
//! A span from `X` to `Y` is `Y ←left− S −right→ X`. Composites of G-set
//! spans keep the atomic spans they were built from and use tuples of
//! atomic apex points as their apex, so composition is strictly associative.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{rat, QMatrix};
use crate::groupoids::{
    action_groupoid, product_groupoid, weak_pullback, Groupoid, GroupoidFunctor,
};
use crate::groups::{orbits, product_gset, EquivariantMap, GSet};

/// An atomic span, one factor of a composite.
#[derive(Clone, Debug)]
pub struct Atom {
    pub apex: GSet,
    pub left: EquivariantMap,
    pub right: EquivariantMap,
}

/// A span of G-sets `Y ←left− S −right→ X`.
#[derive(Clone)]
pub struct GSetSpan {
    apex: GSet,
    left: EquivariantMap,
    right: EquivariantMap,
    atoms: Arc<[Atom]>,
    /// Flat row-major tuples of atomic apex points, lexicographically sorted.
    tuples: Arc<[u32]>,
}

impl fmt::Debug for GSetSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GSetSpan")
            .field("apex", &self.apex.size())
            .field("left_foot", &self.left.target().size())
            .field("right_foot", &self.right.target().size())
            .field("arity", &self.atoms.len())
            .finish()
    }
}

impl GSetSpan {
    pub fn new(left: EquivariantMap, right: EquivariantMap) -> Result<GSetSpan> {
        if !left.source().same_as(right.source()) {
            return Err(Error::FootMismatch("legs do not share an apex".into()));
        }
        let apex = left.source().clone();
        let atom = Atom { apex: apex.clone(), left: left.clone(), right: right.clone() };
        let tuples: Vec<u32> = (0..apex.size() as u32).collect();
        Ok(GSetSpan { apex, left, right, atoms: vec![atom].into(), tuples: tuples.into() })
    }

    pub fn identity(x: &GSet) -> GSetSpan {
        GSetSpan::new(EquivariantMap::identity(x), EquivariantMap::identity(x)).expect("shared apex")
    }

    pub fn apex(&self) -> &GSet {
        &self.apex
    }

    pub fn left(&self) -> &EquivariantMap {
        &self.left
    }

    pub fn right(&self) -> &EquivariantMap {
        &self.right
    }

    pub fn left_foot(&self) -> &GSet {
        self.left.target()
    }

    pub fn right_foot(&self) -> &GSet {
        self.right.target()
    }

    pub fn path_arity(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Atomic apex points making up apex point `i`.
    pub fn tuple(&self, i: u32) -> &[u32] {
        let n = self.atoms.len();
        &self.tuples[i as usize * n..(i as usize + 1) * n]
    }

    /// Apex point with the given tuple of atomic points.
    pub fn point_of_tuple(&self, t: &[u32]) -> Option<u32> {
        find_tuple(&self.tuples, self.atoms.len(), t)
    }

    /// The `arity + 1` foot points visited by apex point `i`, starting in the right foot.
    pub fn path(&self, i: u32) -> Vec<u32> {
        let t = self.tuple(i);
        let mut path = Vec::with_capacity(t.len() + 1);
        path.push(self.atoms[0].right.apply(t[0]));
        for (atom, &s) in self.atoms.iter().zip(t) {
            path.push(atom.left.apply(s));
        }
        path
    }

    /// Apex point whose path is `path`, for composites of spans whose
    /// apexes embed in pairs of feet.
    pub fn point_of_path(&self, path: &[u32]) -> Option<u32> {
        if path.len() != self.atoms.len() + 1 {
            return None;
        }
        let mut t = Vec::with_capacity(self.atoms.len());
        for (i, atom) in self.atoms.iter().enumerate() {
            let s = (0..atom.apex.size() as u32)
                .find(|&s| atom.right.apply(s) == path[i] && atom.left.apply(s) == path[i + 1])?;
            t.push(s);
        }
        self.point_of_tuple(&t)
    }

    /// The same span with its legs exchanged.
    pub fn transpose(&self) -> GSetSpan {
        GSetSpan::new(self.right.clone(), self.left.clone()).expect("shared apex")
    }

    /// Entry `(y, x)` is the number of apex points over `y` and `x`.
    pub fn fiber_matrix(&self) -> QMatrix {
        let (ny, nx) = (self.left_foot().size(), self.right_foot().size());
        let mut counts = vec![0i64; ny * nx];
        for p in 0..self.apex.size() as u32 {
            counts[self.left.apply(p) as usize * nx + self.right.apply(p) as usize] += 1;
        }
        QMatrix::new(ny, nx, counts.into_iter().map(rat).collect()).expect("shape")
    }

    /// Orbits of the apex with restricted legs, ordered by minimal apex point.
    pub fn decompose_irreducible(&self) -> Vec<GSetSpan> {
        let orb = orbits(&self.apex);
        orb.orbits.iter().map(|o| self.restrict(o)).collect()
    }

    /// Sub-span on an invariant set of apex points (sorted).
    fn restrict(&self, points: &[u32]) -> GSetSpan {
        let local: HashMap<u32, u32> = points.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
        let group = self.apex.group().clone();
        let action = (0..group.generators().len())
            .map(|g| points.iter().map(|&p| local[&self.apex.act(g, p)]).collect())
            .collect();
        let apex = GSet::from_parts(group, points.len(), action);
        let left = EquivariantMap::new_unchecked(
            apex.clone(),
            self.left_foot().clone(),
            points.iter().map(|&p| self.left.apply(p)).collect(),
        );
        let right = EquivariantMap::new_unchecked(
            apex,
            self.right_foot().clone(),
            points.iter().map(|&p| self.right.apply(p)).collect(),
        );
        GSetSpan::new(left, right).expect("shared apex")
    }

    /// Sorted (orbit size, fiber matrix) pairs, one per apex orbit.
    pub fn orbit_types(&self) -> Vec<(usize, Vec<String>)> {
        let mut types: Vec<(usize, Vec<String>)> = self
            .decompose_irreducible()
            .iter()
            .map(|s| (s.apex.size(), s.fiber_matrix().entries().iter().map(|r| r.to_string()).collect()))
            .collect();
        types.sort();
        types
    }

    /// True if apex points are determined by their pair of feet points.
    pub fn is_relation(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..self.apex.size() as u32).all(|p| seen.insert((self.left.apply(p), self.right.apply(p))))
    }
}

fn find_tuple(tuples: &[u32], arity: usize, t: &[u32]) -> Option<u32> {
    let n = tuples.len() / arity.max(1);
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match tuples[mid * arity..(mid + 1) * arity].cmp(t) {
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Some(mid as u32),
        }
    }
    None
}

/// `t ∘ s` for `s: X → Y` and `t: Y → Z`, by pullback over `Y`.
pub fn compose_gset_spans(t: &GSetSpan, s: &GSetSpan) -> Result<GSetSpan> {
    if !s.left_foot().same_as(t.right_foot()) {
        return Err(Error::FootMismatch("middle feet differ".into()));
    }
    let mut over: Vec<Vec<u32>> = vec![Vec::new(); t.right_foot().size()];
    for p in 0..t.apex.size() as u32 {
        over[t.right.apply(p) as usize].push(p);
    }
    let (ns, nt) = (s.atoms.len(), t.atoms.len());
    let arity = ns + nt;
    let mut tuples = Vec::new();
    let mut left_images = Vec::new();
    let mut right_images = Vec::new();
    for a in 0..s.apex.size() as u32 {
        for &b in &over[s.left.apply(a) as usize] {
            tuples.extend_from_slice(s.tuple(a));
            tuples.extend_from_slice(t.tuple(b));
            left_images.push(t.left.apply(b));
            right_images.push(s.right.apply(a));
        }
    }
    let atoms: Vec<Atom> = s.atoms.iter().chain(t.atoms.iter()).cloned().collect();
    let count = left_images.len();
    let group = s.apex.group().clone();
    let action = (0..group.generators().len())
        .map(|g| {
            let mut buf = vec![0u32; arity];
            (0..count)
                .map(|i| {
                    for (j, atom) in atoms.iter().enumerate() {
                        buf[j] = atom.apex.act(g, tuples[i * arity + j]);
                    }
                    find_tuple(&tuples, arity, &buf).expect("pullback is invariant")
                })
                .collect()
        })
        .collect();
    let apex = GSet::from_parts(group, count, action);
    let left = EquivariantMap::new_unchecked(apex.clone(), t.left_foot().clone(), left_images);
    let right = EquivariantMap::new_unchecked(apex.clone(), s.right_foot().clone(), right_images);
    Ok(GSetSpan { apex, left, right, atoms: atoms.into(), tuples: tuples.into() })
}

/// Composite of a sequence, `spans[0]` applied first.
pub fn compose_path(spans: &[GSetSpan]) -> Result<GSetSpan> {
    let (first, rest) = spans.split_first().ok_or_else(|| Error::Precondition("empty composite".into()))?;
    rest.iter().try_fold(first.clone(), |acc, t| compose_gset_spans(t, &acc))
}

/// Disjoint union of spans with common feet; summands keep their order.
pub fn coproduct(spans: &[GSetSpan]) -> Result<GSetSpan> {
    let first = spans.first().ok_or_else(|| Error::Precondition("empty coproduct".into()))?;
    for s in spans {
        if !s.left_foot().same_as(first.left_foot()) || !s.right_foot().same_as(first.right_foot()) {
            return Err(Error::FootMismatch("coproduct summands have different feet".into()));
        }
    }
    let apexes: Vec<GSet> = spans.iter().map(|s| s.apex.clone()).collect();
    let apex = GSet::disjoint_union(&apexes)?;
    let left = spans.iter().flat_map(|s| s.left.images().iter().copied()).collect();
    let right = spans.iter().flat_map(|s| s.right.images().iter().copied()).collect();
    GSetSpan::new(
        EquivariantMap::new_unchecked(apex.clone(), first.left_foot().clone(), left),
        EquivariantMap::new_unchecked(apex, first.right_foot().clone(), right),
    )
}

/// `n × s`, the coproduct of `n` copies; copy `c` holds points `c·|S|..`.
pub fn scalar_multiple(n: usize, s: &GSetSpan) -> Result<GSetSpan> {
    if n == 0 {
        let group = s.apex.group().clone();
        let apex = GSet::trivial(group, 0);
        return GSetSpan::new(
            EquivariantMap::new_unchecked(apex.clone(), s.left_foot().clone(), vec![]),
            EquivariantMap::new_unchecked(apex, s.right_foot().clone(), vec![]),
        );
    }
    coproduct(&vec![s.clone(); n])
}

/// Product of maps `A×B → C×D` between product G-sets.
pub fn product_map(f: &EquivariantMap, g: &EquivariantMap, source: &GSet, target: &GSet) -> EquivariantMap {
    let nb = g.source().size() as u32;
    let nd = g.target().size() as u32;
    let images = (0..source.size() as u32).map(|p| f.apply(p / nb) * nd + g.apply(p % nb)).collect();
    EquivariantMap::new_unchecked(source.clone(), target.clone(), images)
}

/// `s × t` with diagonal actions on apex and feet.
pub fn product_span(s: &GSetSpan, t: &GSetSpan) -> Result<GSetSpan> {
    let apex = product_gset(s.apex(), t.apex())?;
    let ly = product_gset(s.left_foot(), t.left_foot())?;
    let rx = product_gset(s.right_foot(), t.right_foot())?;
    GSetSpan::new(product_map(&s.left, &t.left, &apex, &ly), product_map(&s.right, &t.right, &apex, &rx))
}

/// A map of spans: an equivariant map of apexes commuting with both legs.
#[derive(Clone, Debug)]
pub struct SpanMap {
    source: GSetSpan,
    target: GSetSpan,
    images: Vec<u32>,
}

impl SpanMap {
    pub fn new(source: GSetSpan, target: GSetSpan, images: Vec<u32>) -> Result<SpanMap> {
        if images.len() != source.apex.size() || images.iter().any(|&y| y as usize >= target.apex.size()) {
            return Err(Error::Shape("span map images do not fit the apexes".into()));
        }
        if !source.left_foot().same_as(target.left_foot()) || !source.right_foot().same_as(target.right_foot()) {
            return Err(Error::FootMismatch("span map between spans with different feet".into()));
        }
        for (x, &y) in images.iter().enumerate() {
            let x = x as u32;
            if target.left.apply(y) != source.left.apply(x) || target.right.apply(y) != source.right.apply(x) {
                return Err(Error::NotEquivariant(format!("apex point {x} does not commute with the legs")));
            }
        }
        for g in 0..source.apex.group().generators().len() {
            for (x, &y) in images.iter().enumerate() {
                if target.apex.act(g, y) != images[source.apex.act(g, x as u32) as usize] {
                    return Err(Error::NotEquivariant(format!("generator {g} at apex point {x}")));
                }
            }
        }
        Ok(SpanMap { source, target, images })
    }

    pub fn identity(s: &GSetSpan) -> SpanMap {
        SpanMap { source: s.clone(), target: s.clone(), images: (0..s.apex.size() as u32).collect() }
    }

    pub fn source(&self) -> &GSetSpan {
        &self.source
    }

    pub fn target(&self) -> &GSetSpan {
        &self.target
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.apex.size() != self.target.apex.size() {
            return false;
        }
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn inverse(&self) -> Result<SpanMap> {
        if !self.is_bijective() {
            return Err(Error::Precondition("span map is not invertible".into()));
        }
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Ok(SpanMap { source: self.target.clone(), target: self.source.clone(), images: inv })
    }

    /// `second ∘ self`.
    pub fn then(&self, second: &SpanMap) -> Result<SpanMap> {
        if self.images.iter().any(|&y| y as usize >= second.images.len()) {
            return Err(Error::Shape("span maps are not composable".into()));
        }
        Ok(SpanMap {
            source: self.source.clone(),
            target: second.target.clone(),
            images: self.images.iter().map(|&y| second.images[y as usize]).collect(),
        })
    }
}

struct OrbitInfo {
    points: Vec<u32>,
    stabilizer: Vec<u32>,
}

fn orbit_infos(s: &GSetSpan) -> Result<Vec<OrbitInfo>> {
    orbits(&s.apex)
        .orbits
        .into_iter()
        .map(|points| {
            let stabilizer = s.apex.stabilizer_indices(points[0])?;
            Ok(OrbitInfo { points, stabilizer })
        })
        .collect()
}

/// A point of orbit `b` of `t` onto which the representative of orbit `a` of
/// `s` can be sent: same leg images and same stabilizer.
fn alignment(s: &GSetSpan, a: &OrbitInfo, t: &GSetSpan, b: &OrbitInfo) -> Result<Option<u32>> {
    if a.points.len() != b.points.len() {
        return Ok(None);
    }
    let r = a.points[0];
    let legs = (s.left.apply(r), s.right.apply(r));
    for &p in &b.points {
        if (t.left.apply(p), t.right.apply(p)) != legs {
            continue;
        }
        // equal orders, so containment is equality
        let mut fixes = true;
        for &g in &a.stabilizer {
            if t.apex.act_element(g, p)? != p {
                fixes = false;
                break;
            }
        }
        if fixes {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if !seen[v] {
            seen[v] = true;
            if match_right[v].is_none() || augment(match_right[v].unwrap(), adj, seen, match_right) {
                match_right[v] = Some(u);
                return true;
            }
        }
    }
    false
}

/// Searches for an isomorphism of spans `s ≅ t` over the same feet.
///
/// Orbits are matched when some point of the target orbit has the same leg
/// images and stabilizer as the source representative; a perfect matching
/// of orbits then extends to an equivariant bijection.
pub fn span_iso(s: &GSetSpan, t: &GSetSpan) -> Result<Option<SpanMap>> {
    if !s.left_foot().same_as(t.left_foot()) || !s.right_foot().same_as(t.right_foot()) {
        return Err(Error::FootMismatch("span_iso needs common feet".into()));
    }
    if s.apex.size() != t.apex.size() {
        return Ok(None);
    }
    s.apex.group().enumerate()?;
    let (so, to) = (orbit_infos(s)?, orbit_infos(t)?);
    if so.len() != to.len() {
        return Ok(None);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); so.len()];
    let mut target_point: HashMap<(usize, usize), u32> = HashMap::new();
    for (i, a) in so.iter().enumerate() {
        for (j, b) in to.iter().enumerate() {
            if let Some(p) = alignment(s, a, t, b)? {
                adj[i].push(j);
                target_point.insert((i, j), p);
            }
        }
    }
    let mut match_right = vec![None; to.len()];
    for u in 0..so.len() {
        let mut seen = vec![false; to.len()];
        if !augment(u, &adj, &mut seen, &mut match_right) {
            return Ok(None);
        }
    }
    let mut images = vec![u32::MAX; s.apex.size()];
    let gens = s.apex.group().generators().len();
    for (j, m) in match_right.iter().enumerate() {
        let i = m.expect("perfect matching");
        let r = so[i].points[0];
        images[r as usize] = target_point[&(i, j)];
        let mut queue = std::collections::VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            for g in 0..gens {
                let y = s.apex.act(g, x);
                if images[y as usize] == u32::MAX {
                    images[y as usize] = t.apex.act(g, images[x as usize]);
                    queue.push_back(y);
                }
            }
        }
    }
    let map = SpanMap::new(s.clone(), t.clone(), images)?;
    if !map.is_bijective() {
        return Err(Error::Precondition("orbit matching produced a non-bijective map".into()));
    }
    Ok(Some(map))
}

/// A span of groupoids `H ←left− S −right→ G`.
#[derive(Clone, Debug)]
pub struct GroupoidSpan {
    pub apex: Groupoid,
    pub left: GroupoidFunctor,
    pub right: GroupoidFunctor,
}

impl GroupoidSpan {
    pub fn new(left: GroupoidFunctor, right: GroupoidFunctor) -> Result<GroupoidSpan> {
        if !left.source().ptr_eq(right.source()) {
            return Err(Error::FootMismatch("legs do not share an apex".into()));
        }
        Ok(GroupoidSpan { apex: left.source().clone(), left, right })
    }

    pub fn identity(g: &Groupoid) -> GroupoidSpan {
        let id = GroupoidFunctor::identity(g);
        GroupoidSpan { apex: g.clone(), left: id.clone(), right: id }
    }

    pub fn left_foot(&self) -> &Groupoid {
        self.left.target()
    }

    pub fn right_foot(&self) -> &Groupoid {
        self.right.target()
    }

    /// The action-groupoid span of a G-set span, landing in the given
    /// action groupoids of its feet.
    pub fn from_gset_span(s: &GSetSpan, left_foot: &Groupoid, right_foot: &Groupoid) -> Result<GroupoidSpan> {
        let apex = action_groupoid(s.apex())?;
        let left = GroupoidFunctor::induced(s.left(), &apex, left_foot)?;
        let right = GroupoidFunctor::induced(s.right(), &apex, right_foot)?;
        GroupoidSpan::new(left, right)
    }
}

/// `t ∘ s` through the weak pullback of `s.left` and `t.right`.
pub fn compose_groupoid_spans(t: &GroupoidSpan, s: &GroupoidSpan) -> Result<GroupoidSpan> {
    if !s.left_foot().ptr_eq(t.right_foot()) {
        return Err(Error::FootMismatch("middle feet differ".into()));
    }
    let wp = weak_pullback(&s.left, &t.right)?;
    let left = wp.right_proj.then(&t.left)?;
    let right = wp.left_proj.then(&s.right)?;
    GroupoidSpan::new(left, right)
}

/// `s × t` with product feet built fresh.
pub fn product_groupoid_span(s: &GroupoidSpan, t: &GroupoidSpan) -> Result<GroupoidSpan> {
    let apex = product_groupoid(&s.apex, &t.apex);
    let lf = product_groupoid(s.left_foot(), t.left_foot());
    let rf = product_groupoid(s.right_foot(), t.right_foot());
    let left = GroupoidFunctor::product(&s.left, &t.left, &apex, &lf)?;
    let right = GroupoidFunctor::product(&s.right, &t.right, &apex, &rf)?;
    GroupoidSpan::new(left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::mat_mul;
    use crate::groups::{Group, PermGroup};

    fn s3() -> Group {
        let g = Arc::new(PermGroup::symmetric(3));
        g.enumerate().unwrap();
        g
    }

    /// X = 3 points, span X ← X×X → X by the two projections.
    fn pair_span(g: &Group) -> GSetSpan {
        let x = GSet::natural(g.clone());
        let xx = product_gset(&x, &x).unwrap();
        let l = EquivariantMap::new(xx.clone(), x.clone(), (0..9).map(|p| p / 3).collect()).unwrap();
        let r = EquivariantMap::new(xx, x, (0..9).map(|p| p % 3).collect()).unwrap();
        GSetSpan::new(l, r).unwrap()
    }

    #[test]
    fn identity_fiber_matrix() {
        let x = GSet::natural(s3());
        assert_eq!(GSetSpan::identity(&x).fiber_matrix(), QMatrix::identity(3));
    }

    #[test]
    fn composition_multiplies_fiber_matrices() {
        let g = s3();
        let s = pair_span(&g);
        let st = compose_gset_spans(&s, &s).unwrap();
        assert_eq!(st.apex().size(), 27);
        assert_eq!(st.fiber_matrix(), mat_mul(&s.fiber_matrix(), &s.fiber_matrix()).unwrap());
        let id = GSetSpan::identity(s.right_foot());
        let sid = compose_gset_spans(&s, &id).unwrap();
        assert_eq!(sid.apex().size(), s.apex().size());
        assert!(span_iso(&sid, &s).unwrap().is_some());
    }

    #[test]
    fn strict_associativity() {
        let g = s3();
        let s = pair_span(&g);
        let id = GSetSpan::identity(s.right_foot());
        let a = compose_gset_spans(&compose_gset_spans(&s, &id).unwrap(), &s).unwrap();
        let b = compose_gset_spans(&s, &compose_gset_spans(&id, &s).unwrap()).unwrap();
        assert_eq!(a.path_arity(), 3);
        assert_eq!(a.tuples, b.tuples);
        assert_eq!(a.left().images(), b.left().images());
        for gen in 0..2 {
            assert_eq!(a.apex().generator_action(gen), b.apex().generator_action(gen));
        }
    }

    #[test]
    fn coproducts_add() {
        let g = s3();
        let s = pair_span(&g);
        let two = scalar_multiple(2, &s).unwrap();
        assert_eq!(two.fiber_matrix(), s.fiber_matrix().scale(&rat(2)));
        assert!(span_iso(&scalar_multiple(1, &s).unwrap(), &s).unwrap().is_some());
        let sum = coproduct(&[s.clone(), GSetSpan::identity(s.right_foot())]).unwrap();
        assert_eq!(sum.fiber_matrix(), s.fiber_matrix().add(&QMatrix::identity(3)).unwrap());
    }

    #[test]
    fn decomposition_and_reassembly() {
        let g = s3();
        let s = pair_span(&g);
        let parts = s.decompose_irreducible();
        // diagonal and off-diagonal pairs
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].apex().size(), 3);
        assert_eq!(parts[1].apex().size(), 6);
        let back = coproduct(&parts).unwrap();
        let iso = span_iso(&back, &s).unwrap().unwrap();
        assert!(iso.is_bijective());
        let id = GSetSpan::identity(s.right_foot());
        assert_eq!(id.decompose_irreducible().len(), 1);
    }

    #[test]
    fn iso_detects_difference() {
        let g = s3();
        let s = pair_span(&g);
        let id = GSetSpan::identity(s.right_foot());
        let sum = coproduct(&[id.clone(), id.clone(), id.clone()]).unwrap();
        // same apex size 9, different fiber matrices
        assert!(span_iso(&sum, &s).unwrap().is_none());
    }

    #[test]
    fn product_fiber_is_kronecker() {
        let g = s3();
        let s = pair_span(&g);
        let id = GSetSpan::identity(s.right_foot());
        let p = product_span(&s, &id).unwrap();
        assert_eq!(p.fiber_matrix(), crate::exactnum::kronecker(&s.fiber_matrix(), &id.fiber_matrix()));
    }

    #[test]
    fn span_map_validation() {
        let g = s3();
        let s = pair_span(&g);
        assert!(SpanMap::new(s.clone(), s.clone(), (0..9).collect()).is_ok());
        let mut bad: Vec<u32> = (0..9).collect();
        bad.swap(0, 1);
        assert!(SpanMap::new(s.clone(), s, bad).is_err());
    }
}
