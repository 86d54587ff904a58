//! Finite set-valued presheaves on groupoids, pullback and left pushforward
//! along functors, linearization of spans, and the correspondence between
//! presheaves on `(X×Y)//G` and spans of G-sets from `X` to `Y`.
//!
//! A presheaf is stored on the normal form of its base: the right action
//! `ρ(a)` of each vertex group on the set at the root and, for each object,
//! the bijection `P(t_x): P(x) → P(root)`. Then
//! `P(x, a, y) = P(t_x)⁻¹ ∘ ρ(a) ∘ P(t_y) : P(y) → P(x)`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::groupoids::{Groupoid, GroupoidFunctor, Morphism};
use crate::groups::{EquivariantMap, GSet};
use crate::spans::{GSetSpan, GroupoidSpan};

#[derive(Clone, Debug)]
pub struct Presheaf {
    base: Groupoid,
    sizes: Vec<usize>,
    /// Per component, per vertex element, the permutation `ρ(a)` of `P(root)`.
    vertex: Vec<Vec<Vec<u32>>>,
    /// Per object, `P(t_x)` as images of the points of `P(x)` in `P(root)`.
    transport: Vec<Vec<u32>>,
}

fn invert(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

fn is_bijection(p: &[u32], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter().all(|&x| (x as usize) < n && !std::mem::replace(&mut seen[x as usize], true))
}

impl Presheaf {
    /// Builds a presheaf from set sizes and its action on transports and root
    /// vertex groups; `action(m)` lists the images of `P(tgt m)` in `P(src m)`.
    pub fn from_fn<F>(base: &Groupoid, sizes: Vec<usize>, action: F) -> Result<Presheaf>
    where
        F: Fn(Morphism) -> Result<Vec<u32>>,
    {
        if sizes.len() != base.object_count() {
            return Err(Error::Shape("one set size per object required".into()));
        }
        let mut vertex = Vec::with_capacity(base.component_count());
        let mut transport = vec![Vec::new(); base.object_count()];
        for (ci, comp) in base.components().iter().enumerate() {
            let root = comp.root();
            let n = sizes[root as usize];
            for &x in &comp.objects {
                if sizes[x as usize] != n {
                    return Err(Error::Precondition(format!("isomorphic objects {root} and {x} have sets of different size")));
                }
                let t = action(base.transport(x))?;
                if !is_bijection(&t, n) {
                    return Err(Error::Precondition(format!("transport to {x} does not act bijectively")));
                }
                transport[x as usize] = t;
            }
            let mut rho = Vec::with_capacity(comp.group.order());
            for a in 0..comp.group.order() as u32 {
                let r = action(base.vertex(ci as u32, a))?;
                if !is_bijection(&r, n) {
                    return Err(Error::Precondition("vertex element does not act bijectively".into()));
                }
                rho.push(r);
            }
            vertex.push(rho);
        }
        Ok(Presheaf { base: base.clone(), sizes, vertex, transport })
    }

    /// Every set has `n` points and every morphism acts trivially.
    pub fn constant(base: &Groupoid, n: usize) -> Presheaf {
        Presheaf::from_fn(base, vec![n; base.object_count()], |_| Ok((0..n as u32).collect()))
            .expect("constant presheaf")
    }

    pub fn empty(base: &Groupoid) -> Presheaf {
        Presheaf::constant(base, 0)
    }

    pub fn base(&self) -> &Groupoid {
        &self.base
    }

    pub fn size(&self, x: u32) -> usize {
        self.sizes[x as usize]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `ρ(a)`, the action of a root vertex element on `P(root)`.
    pub fn vertex_action(&self, c: u32, a: u32) -> &[u32] {
        &self.vertex[c as usize][a as usize]
    }

    /// `P(m)(s)` for `s ∈ P(tgt m)`.
    pub fn act(&self, m: Morphism, s: u32) -> u32 {
        self.action(m)[s as usize]
    }

    /// `P(m)` as a list of images of `P(tgt m)` in `P(src m)`.
    pub fn action(&self, m: Morphism) -> Vec<u32> {
        let c = self.base.component_of(m.src);
        let inv_src = invert(&self.transport[m.src as usize]);
        let rho = &self.vertex[c as usize][m.elem as usize];
        self.transport[m.tgt as usize].iter().map(|&r| inv_src[rho[r as usize] as usize]).collect()
    }

    /// Identity acts trivially and `ρ(b·a) = ρ(a) ∘ ρ(b)`, exhaustively on
    /// vertex groups of order ≤ 200.
    pub fn verify(&self) -> Result<()> {
        for (ci, comp) in self.base.components().iter().enumerate() {
            let rho = &self.vertex[ci];
            let n = self.sizes[comp.root() as usize] as u32;
            if rho[0].iter().enumerate().any(|(i, &v)| v != i as u32) {
                return Err(Error::Precondition("identity does not act trivially".into()));
            }
            if self.transport[comp.root() as usize].iter().enumerate().any(|(i, &v)| v != i as u32) {
                return Err(Error::Precondition("root transport does not act trivially".into()));
            }
            let order = comp.group.order() as u32;
            let step = if order <= 200 { 1 } else { order / 200 };
            for a in (0..order).step_by(step as usize) {
                for b in 0..order {
                    let ba = comp.group.mul(b, a) as usize;
                    for s in 0..n {
                        let lhs = rho[ba][s as usize];
                        let rhs = rho[a as usize][rho[b as usize][s as usize] as usize];
                        if lhs != rhs {
                            return Err(Error::Precondition(format!("action not contravariant at ({a}, {b})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `f*p = p ∘ f`.
pub fn pullback_presheaf(f: &GroupoidFunctor, p: &Presheaf) -> Result<Presheaf> {
    if !f.target().ptr_eq(&p.base) {
        return Err(Error::Functor("presheaf does not live on the functor's target".into()));
    }
    let sizes = (0..f.source().object_count() as u32).map(|x| p.size(f.apply_object(x))).collect();
    Presheaf::from_fn(f.source(), sizes, |m| Ok(p.action(f.apply(m))))
}

/// Elements of `(f_! p)(h)`: triples `(g, α: f g → h, s ∈ p(g))`.
struct CommaElements {
    /// Source objects over the class of `h`, with offsets into the element list.
    objects: Vec<u32>,
    offsets: Vec<usize>,
}

impl CommaElements {
    fn index(&self, i: usize, alpha: u32, s: u32, p: &Presheaf) -> usize {
        self.offsets[i] + alpha as usize * p.size(self.objects[i]) + s as usize
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Quotient of the comma elements at `h`: class of each element and a
/// minimal representative `(g, α, s)` per class, classes in increasing order.
fn pushforward_classes(f: &GroupoidFunctor, p: &Presheaf, h: u32) -> (CommaElements, Vec<u32>, Vec<(u32, u32, u32)>) {
    let (src, tgt) = (f.source(), f.target());
    let order = tgt.aut_order(h);
    let objects: Vec<u32> =
        (0..src.object_count() as u32).filter(|&g| tgt.isomorphic(f.apply_object(g), h)).collect();
    let mut offsets = Vec::with_capacity(objects.len() + 1);
    let mut total = 0usize;
    for &g in &objects {
        offsets.push(total);
        total += order * p.size(g);
    }
    offsets.push(total);
    let slot: HashMap<u32, usize> = objects.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let elems = CommaElements { objects, offsets };
    let mut parent: Vec<usize> = (0..total).collect();
    let union = |a: usize, b: usize, parent: &mut Vec<usize>| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    };
    // (g, α, p(u)(s')) ~ (g', α ∘ f(u)⁻¹, s') for u: g → g'
    let relate = |u: Morphism, parent: &mut Vec<usize>| {
        let (i, j) = (slot[&u.src], slot[&u.tgt]);
        let fu_inv = tgt.inverse(f.apply(u));
        let pu = p.action(u);
        for alpha in 0..order as u32 {
            let a = Morphism { src: f.apply_object(u.src), elem: alpha, tgt: h };
            let a2 = tgt.compose_unchecked(a, fu_inv);
            for s2 in 0..p.size(u.tgt) as u32 {
                let x = elems.index(i, alpha, pu[s2 as usize], p);
                let y = elems.index(j, a2.elem, s2, p);
                union(x, y, parent);
            }
        }
    };
    for &g in &elems.objects.clone() {
        let c = src.component_of(g);
        if src.component(c).root() == g {
            for a in 1..src.component(c).group.order() as u32 {
                relate(src.vertex(c, a), &mut parent);
            }
        } else {
            relate(src.transport(g), &mut parent);
        }
    }
    let mut class_of = vec![0u32; total];
    let mut reps = Vec::new();
    let mut class_of_root: HashMap<usize, u32> = HashMap::new();
    for (i, &g) in elems.objects.iter().enumerate() {
        for alpha in 0..order as u32 {
            for s in 0..p.size(g) as u32 {
                let x = elems.index(i, alpha, s, p);
                let r = find(&mut parent, x);
                let id = *class_of_root.entry(r).or_insert_with(|| {
                    reps.push((g, alpha, s));
                    (reps.len() - 1) as u32
                });
                class_of[x] = id;
            }
        }
    }
    (elems, class_of, reps)
}

/// Left adjoint to pullback: `(f_! p)(h)` is the set of comma elements
/// `(g, α: f g → h, s)` modulo the morphisms of the comma category.
pub fn left_pushforward(f: &GroupoidFunctor, p: &Presheaf) -> Result<Presheaf> {
    if !f.source().ptr_eq(&p.base) {
        return Err(Error::Functor("presheaf does not live on the functor's source".into()));
    }
    let tgt = f.target();
    let data: Vec<_> = (0..tgt.object_count() as u32).map(|h| pushforward_classes(f, p, h)).collect();
    let sizes = data.iter().map(|d| d.2.len()).collect();
    Presheaf::from_fn(tgt, sizes, |m| {
        // m: x → y acts from (f_!p)(y) to (f_!p)(x): (g, α, s) ↦ (g, m⁻¹ ∘ α, s)
        let minv = tgt.inverse(m);
        let (elems, class_of, _) = &data[m.src as usize];
        let slot: HashMap<u32, usize> = elems.objects.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let reps = &data[m.tgt as usize].2;
        Ok(reps
            .iter()
            .map(|&(g, alpha, s)| {
                let a = Morphism { src: f.apply_object(g), elem: alpha, tgt: m.tgt };
                let moved = tgt.compose_unchecked(minv, a);
                class_of[elems.index(slot[&g], moved.elem, s, p)]
            })
            .collect())
    })
}

/// `q_! p*` for the span `H ←q− S −p→ G`.
pub fn linearize_span(s: &GroupoidSpan, p: &Presheaf) -> Result<Presheaf> {
    left_pushforward(&s.left, &pullback_presheaf(&s.right, p)?)
}

/// The action of a root vertex group as a left action on `P(root)`:
/// `a · s = ρ(a⁻¹)(s)`.
fn left_action(p: &Presheaf, c: u32) -> impl Fn(u32, u32) -> u32 + '_ {
    let group = &p.base.component(c).group;
    move |a, s| p.vertex[c as usize][group.inv(a) as usize][s as usize]
}

fn orbits_of(n: usize, order: usize, act: &dyn Fn(u32, u32) -> u32) -> Vec<Vec<u32>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n as u32 {
        if seen[s as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        for a in 0..order as u32 {
            let t = act(a, s);
            if !seen[t as usize] {
                seen[t as usize] = true;
                orbit.push(t);
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

fn stabilizer_of(order: usize, act: &dyn Fn(u32, u32) -> u32, s: u32) -> Vec<u32> {
    (0..order as u32).filter(|&a| act(a, s) == s).collect()
}

/// A natural isomorphism `p ≅ q`, as bijections `p(x) → q(x)` per object.
pub fn presheaf_iso(p: &Presheaf, q: &Presheaf) -> Result<Option<Vec<Vec<u32>>>> {
    if !p.base.ptr_eq(&q.base) {
        return Err(Error::Precondition("presheaves on different groupoids".into()));
    }
    let base = &p.base;
    let mut maps = vec![Vec::new(); base.object_count()];
    for (ci, comp) in base.components().iter().enumerate() {
        let c = ci as u32;
        let root = comp.root();
        let n = p.size(root);
        if q.size(root) != n {
            return Ok(None);
        }
        let order = comp.group.order();
        let (ap, aq) = (left_action(p, c), left_action(q, c));
        let (op, oq) = (orbits_of(n, order, &ap), orbits_of(n, order, &aq));
        // match orbits greedily by stabilizer: orbits with equal stabilizer
        // sets at some point are isomorphic A-sets
        let mut used = vec![false; oq.len()];
        let mut at_root = vec![u32::MAX; n];
        for orbit in &op {
            let r = orbit[0];
            let stab = stabilizer_of(order, &ap, r);
            let mut found = None;
            'search: for (j, other) in oq.iter().enumerate() {
                if used[j] || other.len() != orbit.len() {
                    continue;
                }
                for &t in other {
                    if stab.iter().all(|&a| aq(a, t) == t) {
                        found = Some((j, t));
                        break 'search;
                    }
                }
            }
            let Some((j, t)) = found else { return Ok(None) };
            used[j] = true;
            for a in 0..order as u32 {
                at_root[ap(a, r) as usize] = aq(a, t);
            }
        }
        for &x in &comp.objects {
            // φ_x = Q(t_x)⁻¹ ∘ φ_root ∘ P(t_x)
            let qinv = invert(&q.transport[x as usize]);
            maps[x as usize] =
                p.transport[x as usize].iter().map(|&r| qinv[at_root[r as usize] as usize]).collect();
        }
    }
    Ok(Some(maps))
}

/// Checks that per-object bijections form a natural transformation.
pub fn is_natural_iso(p: &Presheaf, q: &Presheaf, maps: &[Vec<u32>]) -> bool {
    let base = &p.base;
    if maps.len() != base.object_count() {
        return false;
    }
    for x in 0..base.object_count() as u32 {
        if !is_bijection(&maps[x as usize], p.size(x)) || q.size(x) != p.size(x) {
            return false;
        }
    }
    // naturality on transports and vertex groups generates all morphisms
    let check = |m: Morphism| {
        let (pm, qm) = (p.action(m), q.action(m));
        (0..p.size(m.tgt)).all(|s| maps[m.src as usize][pm[s] as usize] == qm[maps[m.tgt as usize][s] as usize])
    };
    base.components().iter().enumerate().all(|(ci, comp)| {
        comp.objects.iter().all(|&x| check(base.transport(x)))
            && (0..comp.group.order() as u32).all(|a| check(base.vertex(ci as u32, a)))
    })
}

/// Number of natural transformations `p → q`.
pub fn hom_count(p: &Presheaf, q: &Presheaf) -> Result<BigUint> {
    if !p.base.ptr_eq(&q.base) {
        return Err(Error::Precondition("presheaves on different groupoids".into()));
    }
    let mut total = BigUint::one();
    for (ci, comp) in p.base.components().iter().enumerate() {
        let c = ci as u32;
        let order = comp.group.order();
        let (ap, aq) = (left_action(p, c), left_action(q, c));
        for orbit in orbits_of(p.size(comp.root()), order, &ap) {
            let stab = stabilizer_of(order, &ap, orbit[0]);
            let targets =
                (0..q.size(comp.root()) as u32).filter(|&t| stab.iter().all(|&a| aq(a, t) == t)).count();
            total *= BigUint::from(targets);
        }
    }
    Ok(total)
}

/// Checks that `base` is the action groupoid of a product G-set `X × Y`
/// and returns the two factors.
fn product_factors_of(base: &Groupoid) -> Result<(GSet, GSet)> {
    let data = base.action_data().ok_or_else(|| Error::Precondition("base is not an action groupoid".into()))?;
    data.gset
        .factors()
        .cloned()
        .ok_or_else(|| Error::Precondition("base is not the action groupoid of a product G-set".into()))
}

/// The presheaf on `(X×Y)//G` with `P(x, y)` the apex points over `x` and
/// `y` (in increasing order); `(g, (x, y))` acts by `s ↦ g⁻¹ s`.
pub fn span_to_presheaf(s: &GSetSpan, base: &Groupoid) -> Result<Presheaf> {
    let (x, y) = product_factors_of(base)?;
    if !x.same_as(s.right_foot()) || !y.same_as(s.left_foot()) {
        return Err(Error::FootMismatch("span feet are not the factors of the base".into()));
    }
    let ny = y.size() as u32;
    let mut fibers: Vec<Vec<u32>> = vec![Vec::new(); base.object_count()];
    for p in 0..s.apex().size() as u32 {
        fibers[(s.right().apply(p) * ny + s.left().apply(p)) as usize].push(p);
    }
    let position: Vec<u32> = {
        let mut pos = vec![0u32; s.apex().size()];
        for f in &fibers {
            for (i, &p) in f.iter().enumerate() {
                pos[p as usize] = i as u32;
            }
        }
        pos
    };
    let e = s.apex().group().enumerate()?;
    let sizes = fibers.iter().map(Vec::len).collect();
    Presheaf::from_fn(base, sizes, |m| {
        let (g, _) = base.action_label(m)?;
        let ginv = e.inv(g);
        fibers[m.tgt as usize]
            .iter()
            .map(|&p| Ok(position[s.apex().act_element(ginv, p)? as usize]))
            .collect()
    })
}

/// The span with apex the pairs `(o, s)`, `s ∈ P(o)`, in lexicographic
/// order; `g · (o, s) = (g·o, P((g, o))⁻¹ s)`. The left leg goes to `Y`,
/// the right leg to `X`.
pub fn presheaf_to_span(p: &Presheaf) -> Result<GSetSpan> {
    let base = &p.base;
    let (x, y) = product_factors_of(base)?;
    let data = base.action_data().expect("checked above");
    let e = data.gset.group().enumerate()?;
    let mut offsets = Vec::with_capacity(base.object_count() + 1);
    let mut total = 0u32;
    for o in 0..base.object_count() as u32 {
        offsets.push(total);
        total += p.size(o) as u32;
    }
    let ny = y.size() as u32;
    let mut left = Vec::with_capacity(total as usize);
    let mut right = Vec::with_capacity(total as usize);
    for o in 0..base.object_count() as u32 {
        for _ in 0..p.size(o) {
            left.push(o % ny);
            right.push(o / ny);
        }
    }
    let group = data.gset.group().clone();
    let mut action = Vec::with_capacity(group.generators().len());
    for gen in 0..group.generators().len() {
        let g = e.generator_index(gen);
        let mut images = vec![0u32; total as usize];
        for o in 0..base.object_count() as u32 {
            let m = base.action_morphism(g, o)?;
            let inv = invert(&p.action(m));
            for s in 0..p.size(o) as u32 {
                images[(offsets[o as usize] + s) as usize] = offsets[m.tgt as usize] + inv[s as usize];
            }
        }
        action.push(images);
    }
    let apex = GSet::new(group, total as usize, action)?;
    GSetSpan::new(EquivariantMap::new(apex.clone(), y, left)?, EquivariantMap::new(apex, x, right)?)
}

/// Outcome of both Grothendieck round trips started from a span.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RoundTrip {
    pub apex: usize,
    /// `presheaf_to_span(span_to_presheaf(s)) ≅ s` as spans.
    pub span_ok: bool,
    /// `span_to_presheaf(presheaf_to_span(P)) ≅ P` by a natural isomorphism, for `P = span_to_presheaf(s)`.
    pub presheaf_ok: bool,
}

pub fn grothendieck_round_trip(s: &GSetSpan, base: &Groupoid) -> Result<RoundTrip> {
    let p = span_to_presheaf(s, base)?;
    let back = presheaf_to_span(&p)?;
    let span_ok = crate::spans::span_iso(s, &back)?.is_some();
    let again = span_to_presheaf(&back, base)?;
    let presheaf_ok = match presheaf_iso(&p, &again)? {
        Some(maps) => is_natural_iso(&p, &again, &maps),
        None => false,
    };
    Ok(RoundTrip { apex: s.apex().size(), span_ok, presheaf_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoids::{action_groupoid, terminal, GroupoidFunctor};
    use crate::groups::{product_gset, Group, PermGroup};
    use crate::spans::span_iso;
    use std::sync::Arc;

    fn group(g: PermGroup) -> Group {
        let g = Arc::new(g);
        g.enumerate().unwrap();
        g
    }

    /// The presheaf on X//G whose set at x is `fiber(x)` of an equivariant map into X.
    fn regular_on_point(g: Group) -> (Groupoid, Presheaf) {
        let pt = action_groupoid(&GSet::point(g.clone())).unwrap();
        let reg = GSet::regular(g.clone()).unwrap();
        let e = g.enumerate().unwrap();
        let n = e.order();
        let p = Presheaf::from_fn(&pt, vec![n], |m| {
            let (el, _) = pt.action_label(m)?;
            // P(g): s ↦ g⁻¹ s
            Ok((0..n as u32).map(|s| reg.act_element(e.inv(el), s).unwrap()).collect())
        })
        .unwrap();
        (pt, p)
    }

    #[test]
    fn constant_presheaf_is_valid() {
        let g = group(PermGroup::symmetric(3));
        let x = action_groupoid(&GSet::natural(g)).unwrap();
        let p = Presheaf::constant(&x, 2);
        p.verify().unwrap();
        let id = GroupoidFunctor::identity(&x);
        let back = pullback_presheaf(&id, &p).unwrap();
        assert_eq!(back.sizes(), p.sizes());
    }

    #[test]
    fn pushforward_to_terminal_takes_orbits() {
        let g = group(PermGroup::cyclic(2));
        let (pt, p) = regular_on_point(g);
        p.verify().unwrap();
        let t = terminal();
        let f = GroupoidFunctor::to_terminal(&pt, &t).unwrap();
        let q = left_pushforward(&f, &p).unwrap();
        assert_eq!(q.sizes(), &[1]);
    }

    #[test]
    fn pushforward_along_identity() {
        let g = group(PermGroup::symmetric(3));
        let (pt, p) = regular_on_point(g);
        let q = left_pushforward(&GroupoidFunctor::identity(&pt), &p).unwrap();
        q.verify().unwrap();
        let iso = presheaf_iso(&p, &q).unwrap().unwrap();
        assert!(is_natural_iso(&p, &q, &iso));
    }

    #[test]
    fn pullback_at_a_point() {
        let g = group(PermGroup::symmetric(3));
        let x = action_groupoid(&GSet::natural(g)).unwrap();
        let p = Presheaf::constant(&x, 3);
        let f = GroupoidFunctor::point(&x, 1).unwrap();
        assert_eq!(pullback_presheaf(&f, &p).unwrap().sizes(), &[3]);
    }

    #[test]
    fn grothendieck_round_trip_small() {
        let g = group(PermGroup::symmetric(3));
        let x = GSet::natural(g.clone());
        let xx = product_gset(&x, &x).unwrap();
        let base = action_groupoid(&xx).unwrap();
        let s = GSetSpan::identity(&x);
        let p = span_to_presheaf(&s, &base).unwrap();
        p.verify().unwrap();
        // supported on the diagonal with singleton fibers
        for o in 0..9u32 {
            assert_eq!(p.size(o), usize::from(o / 3 == o % 3));
        }
        let back = presheaf_to_span(&p).unwrap();
        assert!(span_iso(&back, &s).unwrap().is_some());
        let again = span_to_presheaf(&back, &base).unwrap();
        let iso = presheaf_iso(&p, &again).unwrap().unwrap();
        assert!(is_natural_iso(&p, &again, &iso));
    }

    #[test]
    fn empty_presheaf_gives_empty_span() {
        let g = group(PermGroup::symmetric(3));
        let x = GSet::natural(g.clone());
        let base = action_groupoid(&product_gset(&x, &x).unwrap()).unwrap();
        let s = presheaf_to_span(&Presheaf::empty(&base)).unwrap();
        assert_eq!(s.apex().size(), 0);
    }

    #[test]
    fn hom_counts() {
        let g = group(PermGroup::cyclic(2));
        let (pt, p) = regular_on_point(g);
        let one = Presheaf::constant(&pt, 1);
        // maps from the free Z2-set to a point: 1; from a point to the free set: 0
        assert_eq!(hom_count(&p, &one).unwrap(), BigUint::from(1u32));
        assert_eq!(hom_count(&one, &p).unwrap(), BigUint::from(0u32));
        assert_eq!(hom_count(&p, &p).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn non_product_base_rejected() {
        let g = group(PermGroup::symmetric(3));
        let x = action_groupoid(&GSet::natural(g)).unwrap();
        assert!(presheaf_to_span(&Presheaf::constant(&x, 1)).is_err());
    }
}
