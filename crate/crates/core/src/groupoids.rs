//! Finite groupoids, functors, action groupoids, cardinality, full inverse
//! images, weak pullbacks and products.
//!
//! A groupoid is stored in normal form. Each connected component has its
//! objects in increasing order, its minimal object as root, a chosen
//! morphism `t_x: root → x` for every object (the transport) and a vertex
//! group `A = Aut(root)`. The morphism written `(x, a, y)` is
//! `t_y ∘ a ∘ t_x⁻¹ : x → y`, so every morphism is named exactly once and
//!
//! ```text
//! (y, b, z) ∘ (x, a, y) = (x, b·a, z)        (x, a, y)⁻¹ = (y, a⁻¹, x)
//! ```
//!
//! Morphisms also have dense integer ids, enumerated component by component.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::{ratio, Rat};
use crate::groups::{EquivariantMap, GSet, Group};

/// Action groupoids with more than this many morphisms are refused.
pub const DEFAULT_MORPHISM_LIMIT: u64 = 10_000_000;

/// Groups of at most this order get a materialized multiplication table.
const TABULATE_LIMIT: usize = 256;

/// Finite group with elements `0..order`, 0 being the identity.
#[derive(Clone)]
pub enum FiniteGroup {
    Trivial,
    /// An enumerated permutation group; elements are enumeration indices.
    Perm(Group),
    Table { order: usize, mul: Arc<[u32]>, inv: Arc<[u32]> },
    /// Pairs `(a, b)` encoded as `a·|B| + b`.
    Product(Arc<FiniteGroup>, Arc<FiniteGroup>),
    /// Subgroup given by sorted parent elements, identity first.
    Sub { parent: Arc<FiniteGroup>, elems: Arc<[u32]>, index: Arc<SubIndex> },
    /// A small group with its multiplication table cached; same element names.
    Cached { inner: Arc<FiniteGroup>, mul: Arc<[u32]>, inv: Arc<[u32]> },
}

pub enum SubIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u32, u32>),
}

impl SubIndex {
    fn get(&self, x: u32) -> Option<u32> {
        match self {
            SubIndex::Dense(v) => v.get(x as usize).copied().filter(|&i| i != u32::MAX),
            SubIndex::Sparse(m) => m.get(&x).copied(),
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

impl FiniteGroup {
    pub fn perm(group: Group) -> Result<FiniteGroup> {
        group.enumerate()?;
        Ok(FiniteGroup::Perm(group))
    }

    pub fn product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup {
        match (&a, &b) {
            (FiniteGroup::Trivial, _) => b,
            (_, FiniteGroup::Trivial) => a,
            _ => FiniteGroup::Product(Arc::new(a), Arc::new(b)).tabulated(),
        }
    }

    /// Subgroup on the given parent elements; they must be closed under the
    /// parent multiplication.
    pub fn subgroup(parent: FiniteGroup, mut elems: Vec<u32>) -> Result<FiniteGroup> {
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) {
            return Err(Error::Precondition("subgroup must contain the identity".into()));
        }
        if elems.len() == parent.order() {
            return Ok(parent);
        }
        if elems.len() == 1 {
            return Ok(FiniteGroup::Trivial);
        }
        let index = if parent.order() <= 1 << 22 {
            let mut v = vec![u32::MAX; parent.order()];
            for (i, &e) in elems.iter().enumerate() {
                v[e as usize] = i as u32;
            }
            SubIndex::Dense(v)
        } else {
            SubIndex::Sparse(elems.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect())
        };
        Ok(FiniteGroup::Sub { parent: Arc::new(parent), elems: elems.into(), index: Arc::new(index) }
            .tabulated())
    }

    /// Replaces small composite groups by a table, keeping element names.
    fn tabulated(self) -> FiniteGroup {
        let n = self.order();
        if n > TABULATE_LIMIT
            || matches!(self, FiniteGroup::Table { .. } | FiniteGroup::Trivial | FiniteGroup::Cached { .. })
        {
            return self;
        }
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                mul.push(self.mul(a, b));
            }
        }
        let inv: Vec<u32> = (0..n as u32).map(|a| self.inv(a)).collect();
        FiniteGroup::Cached { inner: Arc::new(self), mul: mul.into(), inv: inv.into() }
    }

    /// The group with any cached table stripped.
    pub fn base(&self) -> &FiniteGroup {
        match self {
            FiniteGroup::Cached { inner, .. } => inner,
            g => g,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            FiniteGroup::Trivial => 1,
            FiniteGroup::Perm(g) => g.enumerated().map(|e| e.order()).unwrap_or(0),
            FiniteGroup::Table { order, .. } => *order,
            FiniteGroup::Product(a, b) => a.order() * b.order(),
            FiniteGroup::Sub { elems, .. } => elems.len(),
            FiniteGroup::Cached { inv, .. } => inv.len(),
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            FiniteGroup::Trivial => 0,
            FiniteGroup::Perm(g) => g.enumerated().expect("enumerated at construction").mul(a, b),
            FiniteGroup::Table { order, mul, .. } => mul[a as usize * order + b as usize],
            FiniteGroup::Cached { mul, inv, .. } => mul[a as usize * inv.len() + b as usize],
            FiniteGroup::Product(x, y) => {
                let n = y.order() as u32;
                x.mul(a / n, b / n) * n + y.mul(a % n, b % n)
            }
            FiniteGroup::Sub { parent, elems, index } => index
                .get(parent.mul(elems[a as usize], elems[b as usize]))
                .expect("subgroup closed under multiplication"),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        match self {
            FiniteGroup::Trivial => 0,
            FiniteGroup::Perm(g) => g.enumerated().expect("enumerated at construction").inv(a),
            FiniteGroup::Table { inv, .. } | FiniteGroup::Cached { inv, .. } => inv[a as usize],
            FiniteGroup::Product(x, y) => {
                let n = y.order() as u32;
                x.inv(a / n) * n + y.inv(a % n)
            }
            FiniteGroup::Sub { parent, elems, index } => {
                index.get(parent.inv(elems[a as usize])).expect("subgroup closed under inverse")
            }
        }
    }

    /// Checks closure, identity and inverses of a Sub by brute force.
    pub fn check_closed(parent: &FiniteGroup, elems: &[u32]) -> bool {
        let set: std::collections::HashSet<u32> = elems.iter().copied().collect();
        set.contains(&0)
            && elems.iter().all(|&a| {
                set.contains(&parent.inv(a)) && elems.iter().all(|&b| set.contains(&parent.mul(a, b)))
            })
    }
}

/// A morphism `t_tgt ∘ elem ∘ t_src⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub src: u32,
    pub elem: u32,
    pub tgt: u32,
}

#[derive(Clone, Debug)]
pub struct Component {
    /// Sorted; the first entry is the root.
    pub objects: Vec<u32>,
    pub group: FiniteGroup,
}

impl Component {
    pub fn root(&self) -> u32 {
        self.objects[0]
    }
}

/// Labelling data for an action groupoid `X//G`.
#[derive(Clone)]
pub struct ActionData {
    pub gset: GSet,
    /// Group element `τ_x` with `τ_x · root = x`; it names the transport of `x`.
    pub transversal: Vec<u32>,
}

#[derive(Clone)]
pub enum Origin {
    Plain,
    Action(ActionData),
    Product(Groupoid, Groupoid),
}

struct GroupoidData {
    comp_of: Vec<u32>,
    pos: Vec<u32>,
    components: Vec<Component>,
    offsets: Vec<u64>,
    origin: Origin,
}

/// A finite groupoid in normal form; cheap to clone.
#[derive(Clone)]
pub struct Groupoid(Arc<GroupoidData>);

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Groupoid")
            .field("objects", &self.object_count())
            .field("components", &self.component_count())
            .field("morphisms", &self.morphism_count())
            .finish()
    }
}

impl Groupoid {
    /// Builds a groupoid from its components, which must partition `0..n`.
    pub fn from_components(n: usize, mut components: Vec<Component>, origin: Origin) -> Result<Groupoid> {
        let mut comp_of = vec![u32::MAX; n];
        let mut pos = vec![0u32; n];
        for c in components.iter_mut() {
            c.objects.sort_unstable();
            if c.objects.is_empty() {
                return Err(Error::Precondition("empty component".into()));
            }
        }
        components.sort_by_key(Component::root);
        for (ci, c) in components.iter().enumerate() {
            for (p, &x) in c.objects.iter().enumerate() {
                if x as usize >= n || comp_of[x as usize] != u32::MAX {
                    return Err(Error::Precondition(format!("object {x} misplaced in components")));
                }
                comp_of[x as usize] = ci as u32;
                pos[x as usize] = p as u32;
            }
        }
        if comp_of.contains(&u32::MAX) {
            return Err(Error::Precondition("components do not cover every object".into()));
        }
        let mut offsets = Vec::with_capacity(components.len() + 1);
        let mut total = 0u64;
        for c in &components {
            offsets.push(total);
            let k = c.objects.len() as u64;
            total += k * k * c.group.order() as u64;
        }
        offsets.push(total);
        Ok(Groupoid(Arc::new(GroupoidData { comp_of, pos, components, offsets, origin })))
    }

    /// `n` objects and identities only.
    pub fn discrete(n: usize) -> Groupoid {
        let comps = (0..n as u32)
            .map(|x| Component { objects: vec![x], group: FiniteGroup::Trivial })
            .collect();
        Groupoid::from_components(n, comps, Origin::Plain).expect("valid partition")
    }

    /// The one-object groupoid with the given automorphism group.
    pub fn one_object(group: FiniteGroup) -> Groupoid {
        Groupoid::from_components(1, vec![Component { objects: vec![0], group }], Origin::Plain)
            .expect("valid partition")
    }

    pub fn object_count(&self) -> usize {
        self.0.comp_of.len()
    }

    pub fn component_count(&self) -> usize {
        self.0.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.0.components
    }

    pub fn component(&self, c: u32) -> &Component {
        &self.0.components[c as usize]
    }

    #[inline]
    pub fn component_of(&self, x: u32) -> u32 {
        self.0.comp_of[x as usize]
    }

    #[inline]
    pub fn position(&self, x: u32) -> u32 {
        self.0.pos[x as usize]
    }

    pub fn root_of(&self, x: u32) -> u32 {
        self.component(self.component_of(x)).root()
    }

    pub fn group_of(&self, x: u32) -> &FiniteGroup {
        &self.component(self.component_of(x)).group
    }

    pub fn aut_order(&self, x: u32) -> usize {
        self.group_of(x).order()
    }

    pub fn origin(&self) -> &Origin {
        &self.0.origin
    }

    pub fn action_data(&self) -> Option<&ActionData> {
        match &self.0.origin {
            Origin::Action(a) => Some(a),
            _ => None,
        }
    }

    pub fn product_factors(&self) -> Option<(&Groupoid, &Groupoid)> {
        match &self.0.origin {
            Origin::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn ptr_eq(&self, other: &Groupoid) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn isomorphic(&self, x: u32, y: u32) -> bool {
        self.component_of(x) == self.component_of(y)
    }

    pub fn identity(&self, x: u32) -> Morphism {
        Morphism { src: x, elem: 0, tgt: x }
    }

    /// The chosen morphism from the root of the component to `x`.
    pub fn transport(&self, x: u32) -> Morphism {
        Morphism { src: self.root_of(x), elem: 0, tgt: x }
    }

    /// `(root, a, root)`, the vertex group element `a` at the root of component `c`.
    pub fn vertex(&self, c: u32, a: u32) -> Morphism {
        let r = self.component(c).root();
        Morphism { src: r, elem: a, tgt: r }
    }

    pub fn is_morphism(&self, m: Morphism) -> bool {
        (m.src as usize) < self.object_count()
            && (m.tgt as usize) < self.object_count()
            && self.isomorphic(m.src, m.tgt)
            && (m.elem as usize) < self.aut_order(m.src)
    }

    /// `second ∘ first`.
    pub fn compose(&self, second: Morphism, first: Morphism) -> Result<Morphism> {
        if first.tgt != second.src {
            return Err(Error::Precondition(format!(
                "cannot compose: target {} differs from source {}",
                first.tgt, second.src
            )));
        }
        Ok(self.compose_unchecked(second, first))
    }

    #[inline]
    pub fn compose_unchecked(&self, second: Morphism, first: Morphism) -> Morphism {
        Morphism { src: first.src, elem: self.group_of(first.src).mul(second.elem, first.elem), tgt: second.tgt }
    }

    pub fn inverse(&self, m: Morphism) -> Morphism {
        Morphism { src: m.tgt, elem: self.group_of(m.src).inv(m.elem), tgt: m.src }
    }

    pub fn morphism_count(&self) -> u64 {
        *self.0.offsets.last().unwrap_or(&0)
    }

    pub fn morphism_id(&self, m: Morphism) -> u64 {
        let c = self.component_of(m.src);
        let comp = self.component(c);
        let k = comp.objects.len() as u64;
        let order = comp.group.order() as u64;
        let (ps, pt) = (self.position(m.src) as u64, self.position(m.tgt) as u64);
        self.0.offsets[c as usize] + (ps * k + pt) * order + m.elem as u64
    }

    pub fn morphism(&self, id: u64) -> Result<Morphism> {
        if id >= self.morphism_count() {
            return Err(Error::Precondition(format!("no morphism with id {id}")));
        }
        let c = self.0.offsets.partition_point(|&o| o <= id) - 1;
        let comp = &self.0.components[c];
        let k = comp.objects.len() as u64;
        let order = comp.group.order() as u64;
        let local = id - self.0.offsets[c];
        let elem = (local % order) as u32;
        let pair = local / order;
        Ok(Morphism { src: comp.objects[(pair / k) as usize], elem, tgt: comp.objects[(pair % k) as usize] })
    }

    /// All morphisms `x → y`.
    pub fn hom(&self, x: u32, y: u32) -> Vec<Morphism> {
        if !self.isomorphic(x, y) {
            return Vec::new();
        }
        (0..self.aut_order(x) as u32).map(|elem| Morphism { src: x, elem, tgt: y }).collect()
    }

    pub fn cardinality(&self) -> Rat {
        groupoid_cardinality(self)
    }

    /// Full subgroupoid on the given components, objects renumbered in
    /// increasing order. Returns the groupoid and the old index of each new object.
    pub fn restrict_to_components(&self, comps: &[u32]) -> (Groupoid, Vec<u32>) {
        let mut keep = vec![false; self.component_count()];
        for &c in comps {
            keep[c as usize] = true;
        }
        let old: Vec<u32> =
            (0..self.object_count() as u32).filter(|&x| keep[self.component_of(x) as usize]).collect();
        let mut new_of = HashMap::with_capacity(old.len());
        for (i, &x) in old.iter().enumerate() {
            new_of.insert(x, i as u32);
        }
        let components = self
            .components()
            .iter()
            .enumerate()
            .filter(|(c, _)| keep[*c])
            .map(|(_, comp)| Component {
                objects: comp.objects.iter().map(|x| new_of[x]).collect(),
                group: comp.group.clone(),
            })
            .collect();
        let g = Groupoid::from_components(old.len(), components, Origin::Plain).expect("valid restriction");
        (g, old)
    }

    /// Exhaustive check of the groupoid axioms when there are at most
    /// `exhaustive_limit` composable triples, sampled otherwise.
    pub fn verify_axioms<R: Rng>(&self, rng: &mut R, exhaustive_limit: u64, samples: usize) -> Result<()> {
        let fail = |what: &str, m: Morphism| Err(Error::Precondition(format!("{what} fails at {m:?}")));
        let triples: u64 = self
            .components()
            .iter()
            .map(|c| {
                let k = c.objects.len() as u64;
                k.pow(4).saturating_mul((c.group.order() as u64).pow(3))
            })
            .fold(0u64, u64::saturating_add);
        let check_triple = |f: Morphism, g: Morphism, h: Morphism| -> bool {
            let left = self.compose_unchecked(h, self.compose_unchecked(g, f));
            let right = self.compose_unchecked(self.compose_unchecked(h, g), f);
            left == right
        };
        let check_single = |m: Morphism| -> bool {
            let inv = self.inverse(m);
            self.compose_unchecked(inv, m) == self.identity(m.src)
                && self.compose_unchecked(m, inv) == self.identity(m.tgt)
                && self.compose_unchecked(m, self.identity(m.src)) == m
                && self.compose_unchecked(self.identity(m.tgt), m) == m
                && self.morphism(self.morphism_id(m)).ok() == Some(m)
        };
        if triples <= exhaustive_limit {
            for comp in self.components() {
                let n = comp.group.order() as u32;
                for &x in &comp.objects {
                    for &y in &comp.objects {
                        for a in 0..n {
                            let f = Morphism { src: x, elem: a, tgt: y };
                            if !check_single(f) {
                                return fail("identity or inverse law", f);
                            }
                            for &z in &comp.objects {
                                for b in 0..n {
                                    let g = Morphism { src: y, elem: b, tgt: z };
                                    for &w in &comp.objects {
                                        for c in 0..n {
                                            let h = Morphism { src: z, elem: c, tgt: w };
                                            if !check_triple(f, g, h) {
                                                return fail("associativity", f);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        } else {
            for _ in 0..samples {
                let comp = &self.components()[rng.gen_range(0..self.component_count())];
                let pick = |rng: &mut R| comp.objects[rng.gen_range(0..comp.objects.len())];
                let n = comp.group.order() as u32;
                let (x, y, z, w) = (pick(rng), pick(rng), pick(rng), pick(rng));
                let f = Morphism { src: x, elem: rng.gen_range(0..n), tgt: y };
                let g = Morphism { src: y, elem: rng.gen_range(0..n), tgt: z };
                let h = Morphism { src: z, elem: rng.gen_range(0..n), tgt: w };
                if !check_single(f) {
                    return fail("identity or inverse law", f);
                }
                if !check_triple(f, g, h) {
                    return fail("associativity", f);
                }
            }
        }
        Ok(())
    }

    /// For a product groupoid, the morphism `(f, g)`.
    pub fn pair_morphism(&self, f: Morphism, g: Morphism) -> Result<Morphism> {
        let (a, b) = self.product_factors().ok_or_else(|| Error::Functor("not a product groupoid".into()))?;
        let nb = b.object_count() as u32;
        let order_b = b.aut_order(g.src) as u32;
        let _ = a;
        Ok(Morphism { src: f.src * nb + g.src, elem: f.elem * order_b + g.elem, tgt: f.tgt * nb + g.tgt })
    }

    /// For a product groupoid, the two components of a morphism.
    pub fn split_morphism(&self, m: Morphism) -> Result<(Morphism, Morphism)> {
        let (_, b) = self.product_factors().ok_or_else(|| Error::Functor("not a product groupoid".into()))?;
        let nb = b.object_count() as u32;
        let (gs, gt) = (m.src % nb, m.tgt % nb);
        let order_b = b.aut_order(gs) as u32;
        Ok((
            Morphism { src: m.src / nb, elem: m.elem / order_b, tgt: m.tgt / nb },
            Morphism { src: gs, elem: m.elem % order_b, tgt: gt },
        ))
    }

    /// For an action groupoid, the pair `(g, x)` naming a morphism `x → g·x`.
    pub fn action_label(&self, m: Morphism) -> Result<(u32, u32)> {
        let data = self.action_data().ok_or_else(|| Error::Precondition("not an action groupoid".into()))?;
        let e = data.gset.group().enumerate()?;
        let a = sub_parent_elem(self.group_of(m.src), m.elem);
        let t = &data.transversal;
        let g = e.mul(e.mul(t[m.tgt as usize], a), e.inv(t[m.src as usize]));
        Ok((g, m.src))
    }

    /// For an action groupoid, the morphism named by `(g, x)`.
    pub fn action_morphism(&self, g: u32, x: u32) -> Result<Morphism> {
        let data = self.action_data().ok_or_else(|| Error::Precondition("not an action groupoid".into()))?;
        let e = data.gset.group().enumerate()?;
        let y = data.gset.act_element(g, x)?;
        let t = &data.transversal;
        let a = e.mul(e.mul(e.inv(t[y as usize]), g), t[x as usize]);
        let elem = sub_index(self.group_of(x), a)
            .ok_or_else(|| Error::Precondition("label does not lie in the vertex group".into()))?;
        Ok(Morphism { src: x, elem, tgt: y })
    }
}

/// Parent element of a vertex group of an action groupoid.
fn sub_parent_elem(group: &FiniteGroup, a: u32) -> u32 {
    match group.base() {
        FiniteGroup::Sub { elems, .. } => elems[a as usize],
        _ => a,
    }
}

fn sub_index(group: &FiniteGroup, parent_elem: u32) -> Option<u32> {
    match group.base() {
        FiniteGroup::Sub { index, .. } => index.get(parent_elem),
        FiniteGroup::Trivial => (parent_elem == 0).then_some(0),
        g => ((parent_elem as usize) < g.order()).then_some(parent_elem),
    }
}

/// The terminal groupoid: one object, one morphism.
pub fn terminal() -> Groupoid {
    Groupoid::discrete(1)
}

/// `X//G`, objects the points of `X` and morphisms the pairs `(g, x): x → g·x`.
pub fn action_groupoid(x: &GSet) -> Result<Groupoid> {
    action_groupoid_with_limit(x, DEFAULT_MORPHISM_LIMIT)
}

pub fn action_groupoid_with_limit(x: &GSet, limit: u64) -> Result<Groupoid> {
    let group = x.group().clone();
    let e = group.enumerate()?;
    let morphisms = e.order() as u64 * x.size() as u64;
    if morphisms > limit {
        return Err(Error::TooLarge { morphisms, limit });
    }
    let orbits = crate::groups::orbits(x);
    let mut transversal = vec![u32::MAX; x.size()];
    let mut components = Vec::with_capacity(orbits.len());
    let whole = FiniteGroup::perm(group.clone())?;
    for orbit in &orbits.orbits {
        let root = orbit[0];
        transversal[root as usize] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for s in 0..group.generators().len() {
                let q = x.act(s, p);
                if transversal[q as usize] == u32::MAX {
                    transversal[q as usize] = e.mul(e.generator_index(s), transversal[p as usize]);
                    queue.push_back(q);
                }
            }
        }
        let stab = x.stabilizer_indices(root)?;
        components
            .push(Component { objects: orbit.clone(), group: FiniteGroup::subgroup(whole.clone(), stab)? });
    }
    Groupoid::from_components(
        x.size(),
        components,
        Origin::Action(ActionData { gset: x.clone(), transversal }),
    )
}

/// Sum over components of `1/|Aut(root)|`.
pub fn groupoid_cardinality(g: &Groupoid) -> Rat {
    g.components().iter().fold(Rat::zero(), |acc, c| acc + ratio(1, c.group.order() as i64))
}

/// Connected components, ordered by their minimal object.
pub fn iso_classes(g: &Groupoid) -> Vec<Vec<u32>> {
    g.components().iter().map(|c| c.objects.clone()).collect()
}

/// Components of the source lying over the class of `x`.
pub fn inverse_image_components(p: &GroupoidFunctor, x: u32) -> Vec<u32> {
    let target_class = p.target().component_of(x);
    p.source()
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| p.target().component_of(p.apply_object(c.root())) == target_class)
        .map(|(i, _)| i as u32)
        .collect()
}

/// The full subgroupoid of objects `v` with `p(v) ≅ x`.
pub fn full_inverse_image(p: &GroupoidFunctor, x: u32) -> Groupoid {
    p.source().restrict_to_components(&inverse_image_components(p, x)).0
}

/// Product groupoid; the object `(a, b)` is `a·|B| + b`.
pub fn product_groupoid(g: &Groupoid, h: &Groupoid) -> Groupoid {
    let nb = h.object_count() as u32;
    let mut components = Vec::with_capacity(g.component_count() * h.component_count());
    for ca in g.components() {
        for cb in h.components() {
            let mut objects = Vec::with_capacity(ca.objects.len() * cb.objects.len());
            for &a in &ca.objects {
                for &b in &cb.objects {
                    objects.push(a * nb + b);
                }
            }
            components.push(Component { objects, group: FiniteGroup::product(ca.group.clone(), cb.group.clone()) });
        }
    }
    Groupoid::from_components(
        g.object_count() * h.object_count(),
        components,
        Origin::Product(g.clone(), h.clone()),
    )
    .expect("valid product partition")
}

/// Disjoint union, objects of later summands shifted past earlier ones.
pub fn disjoint_union(parts: &[Groupoid]) -> Groupoid {
    let mut components = Vec::new();
    let mut offset = 0u32;
    for g in parts {
        for c in g.components() {
            components.push(Component {
                objects: c.objects.iter().map(|x| x + offset).collect(),
                group: c.group.clone(),
            });
        }
        offset += g.object_count() as u32;
    }
    Groupoid::from_components(offset as usize, components, Origin::Plain).expect("valid union")
}

/// A functor, stored through its effect on objects, on transports and on
/// vertex groups: `F(x, a, y) = (Fx, e_y · φ(a) · e_x⁻¹, Fy)` where
/// `F(t_x) = (F root, e_x, F x)` and `F(root, a, root) = (F root, φ(a), F root)`.
#[derive(Clone)]
pub struct GroupoidFunctor {
    source: Groupoid,
    target: Groupoid,
    object_map: Arc<[u32]>,
    transport: Arc<[u32]>,
    homs: Arc<[Vec<u32>]>,
}

impl fmt::Debug for GroupoidFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupoidFunctor")
            .field("source", &self.source)
            .field("target", &self.target)
            .finish()
    }
}

impl GroupoidFunctor {
    /// Builds a functor from its action on transports and root vertex groups.
    pub fn from_fn<F>(source: &Groupoid, target: &Groupoid, f: F) -> Result<GroupoidFunctor>
    where
        F: Fn(Morphism) -> Result<Morphism>,
    {
        let mut object_map = vec![0u32; source.object_count()];
        let mut transport = vec![0u32; source.object_count()];
        let mut homs = Vec::with_capacity(source.component_count());
        for (ci, comp) in source.components().iter().enumerate() {
            let root = comp.root();
            let froot = f(source.identity(root))?.tgt;
            for &x in &comp.objects {
                let m = f(source.transport(x))?;
                if m.src != froot || !target.is_morphism(m) {
                    return Err(Error::Functor(format!("image of transport to {x} is not a morphism from F(root)")));
                }
                object_map[x as usize] = m.tgt;
                transport[x as usize] = m.elem;
            }
            let mut phi = Vec::with_capacity(comp.group.order());
            for a in 0..comp.group.order() as u32 {
                let m = f(source.vertex(ci as u32, a))?;
                if m.src != froot || m.tgt != froot || !target.is_morphism(m) {
                    return Err(Error::Functor(format!("vertex element {a} not sent to an automorphism")));
                }
                phi.push(m.elem);
            }
            homs.push(phi);
        }
        Ok(GroupoidFunctor {
            source: source.clone(),
            target: target.clone(),
            object_map: object_map.into(),
            transport: transport.into(),
            homs: homs.into(),
        })
    }

    pub fn source(&self) -> &Groupoid {
        &self.source
    }

    pub fn target(&self) -> &Groupoid {
        &self.target
    }

    pub fn object_map(&self) -> &[u32] {
        &self.object_map
    }

    #[inline]
    pub fn apply_object(&self, x: u32) -> u32 {
        self.object_map[x as usize]
    }

    /// `φ(a)` for the vertex group of component `c`.
    pub fn vertex_image(&self, c: u32, a: u32) -> u32 {
        self.homs[c as usize][a as usize]
    }

    /// `e_x`, the image of the transport of `x`.
    pub fn transport_image(&self, x: u32) -> u32 {
        self.transport[x as usize]
    }

    pub fn apply(&self, m: Morphism) -> Morphism {
        let c = self.source.component_of(m.src);
        let (fx, fy) = (self.apply_object(m.src), self.apply_object(m.tgt));
        let t = self.target.group_of(fx);
        let ex_inv = t.inv(self.transport[m.src as usize]);
        let elem = t.mul(t.mul(self.transport[m.tgt as usize], self.homs[c as usize][m.elem as usize]), ex_inv);
        Morphism { src: fx, elem, tgt: fy }
    }

    pub fn identity(g: &Groupoid) -> GroupoidFunctor {
        GroupoidFunctor::from_fn(g, g, Ok).expect("identity is a functor")
    }

    /// The unique functor to the terminal groupoid.
    pub fn to_terminal(g: &Groupoid, terminal: &Groupoid) -> Result<GroupoidFunctor> {
        if terminal.object_count() != 1 || terminal.aut_order(0) != 1 {
            return Err(Error::Functor("target is not terminal".into()));
        }
        GroupoidFunctor::from_fn(g, terminal, |_| Ok(Morphism { src: 0, elem: 0, tgt: 0 }))
    }

    /// The functor from the terminal groupoid picking out `x`.
    pub fn point(g: &Groupoid, x: u32) -> Result<GroupoidFunctor> {
        if x as usize >= g.object_count() {
            return Err(Error::Functor(format!("object {x} out of range")));
        }
        GroupoidFunctor::from_fn(&terminal(), g, |_| Ok(g.identity(x)))
    }

    /// `second ∘ self`.
    pub fn then(&self, second: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if !self.target.ptr_eq(&second.source) {
            return Err(Error::Functor("functors are not composable".into()));
        }
        GroupoidFunctor::from_fn(&self.source, &second.target, |m| Ok(second.apply(self.apply(m))))
    }

    /// `⟨F, G⟩` into the product groupoid `product = F.target × G.target`.
    pub fn pairing(f: &GroupoidFunctor, g: &GroupoidFunctor, product: &Groupoid) -> Result<GroupoidFunctor> {
        let (a, b) = product.product_factors().ok_or_else(|| Error::Functor("not a product groupoid".into()))?;
        if !f.source.ptr_eq(&g.source) || !f.target.ptr_eq(a) || !g.target.ptr_eq(b) {
            return Err(Error::Functor("pairing needs a common source and matching factors".into()));
        }
        GroupoidFunctor::from_fn(&f.source, product, |m| product.pair_morphism(f.apply(m), g.apply(m)))
    }

    /// `F × G` between product groupoids.
    pub fn product(
        f: &GroupoidFunctor,
        g: &GroupoidFunctor,
        source: &Groupoid,
        target: &Groupoid,
    ) -> Result<GroupoidFunctor> {
        let (sa, sb) = source.product_factors().ok_or_else(|| Error::Functor("source is not a product".into()))?;
        let (ta, tb) = target.product_factors().ok_or_else(|| Error::Functor("target is not a product".into()))?;
        if !f.source.ptr_eq(sa) || !g.source.ptr_eq(sb) || !f.target.ptr_eq(ta) || !g.target.ptr_eq(tb) {
            return Err(Error::Functor("product factors do not match".into()));
        }
        GroupoidFunctor::from_fn(source, target, |m| {
            let (x, y) = source.split_morphism(m)?;
            target.pair_morphism(f.apply(x), g.apply(y))
        })
    }

    pub fn projection_left(product: &Groupoid) -> Result<GroupoidFunctor> {
        let (a, _) = product.product_factors().ok_or_else(|| Error::Functor("not a product groupoid".into()))?;
        GroupoidFunctor::from_fn(product, a, |m| Ok(product.split_morphism(m)?.0))
    }

    pub fn projection_right(product: &Groupoid) -> Result<GroupoidFunctor> {
        let (_, b) = product.product_factors().ok_or_else(|| Error::Functor("not a product groupoid".into()))?;
        GroupoidFunctor::from_fn(product, b, |m| Ok(product.split_morphism(m)?.1))
    }

    /// The functor `X//G → Y//G` induced by an equivariant map,
    /// `(g, x) ↦ (g, f(x))`.
    pub fn induced(map: &EquivariantMap, source: &Groupoid, target: &Groupoid) -> Result<GroupoidFunctor> {
        let (sd, td) = match (source.action_data(), target.action_data()) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(Error::Functor("induced functors need action groupoids".into())),
        };
        if sd.gset.size() != map.source().size() || td.gset.size() != map.target().size() {
            return Err(Error::Functor("map does not match the action groupoids".into()));
        }
        GroupoidFunctor::from_fn(source, target, |m| {
            let (g, x) = source.action_label(m)?;
            target.action_morphism(g, map.apply(x))
        })
    }

    /// Checks that the stored data defines a functor: roots have identity
    /// transports, vertex maps are homomorphisms and components land in
    /// components. Exhaustive on vertex groups of order ≤ 1000.
    pub fn verify(&self) -> Result<()> {
        for (ci, comp) in self.source.components().iter().enumerate() {
            let froot = self.apply_object(comp.root());
            if self.transport[comp.root() as usize] != 0 {
                return Err(Error::Functor(format!("transport of root {} not sent to identity", comp.root())));
            }
            for &x in &comp.objects {
                if !self.target.isomorphic(self.apply_object(x), froot) {
                    return Err(Error::Functor(format!("object {x} leaves the image component")));
                }
            }
            let src = &comp.group;
            let tgt = self.target.group_of(froot);
            let phi = &self.homs[ci];
            if phi[0] != 0 {
                return Err(Error::Functor("identity not preserved".into()));
            }
            let n = src.order() as u32;
            let step = if n <= 1000 { 1 } else { (n / 1000).max(1) };
            for a in (0..n).step_by(step as usize) {
                for b in 0..n {
                    if phi[src.mul(a, b) as usize] != tgt.mul(phi[a as usize], phi[b as usize]) {
                        return Err(Error::Functor(format!("composition not preserved at ({a}, {b})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Functors agree on every morphism; checked on transports and vertex groups.
    pub fn same_as(&self, other: &GroupoidFunctor) -> bool {
        self.source.ptr_eq(&other.source)
            && self.target.ptr_eq(&other.target)
            && self.object_map == other.object_map
            && self.transport == other.transport
            && self.homs == other.homs
    }
}

/// Weak pullback of `p: H → I` and `q: K → I`.
#[derive(Clone, Debug)]
pub struct WeakPullback {
    pub apex: Groupoid,
    /// Projection to `H`.
    pub left_proj: GroupoidFunctor,
    /// Projection to `K`.
    pub right_proj: GroupoidFunctor,
    /// Object `i` is `(h, k, α)` with `α = (p h, labels[i].2, q k)`.
    pub object_labels: Vec<(u32, u32, u32)>,
}

impl WeakPullback {
    pub fn alpha(&self, p: &GroupoidFunctor, q: &GroupoidFunctor, object: u32) -> Morphism {
        let (h, k, c) = self.object_labels[object as usize];
        Morphism { src: p.apply_object(h), elem: c, tgt: q.apply_object(k) }
    }

    /// `q(f') ∘ α = α' ∘ p(f)` for an apex morphism `m` with projections `f, f'`.
    pub fn square_commutes(&self, p: &GroupoidFunctor, q: &GroupoidFunctor, m: Morphism) -> bool {
        let f = self.left_proj.apply(m);
        let f2 = self.right_proj.apply(m);
        let i = p.target();
        let lhs = i.compose_unchecked(q.apply(f2), self.alpha(p, q, m.src));
        let rhs = i.compose_unchecked(self.alpha(p, q, m.tgt), p.apply(f));
        lhs == rhs
    }
}

struct DoubleCosets {
    coset_of: Vec<u32>,
    /// `(a, a')` taking the coset minimum to each element.
    witness: Vec<(u32, u32)>,
    minimum: Vec<u32>,
    stabilizer: Vec<Vec<u32>>,
}

/// Orbits of `A_h × A_k` on `A_D` under `b ↦ φ_q(a')·b·φ_p(a)⁻¹`.
fn double_cosets(
    d: &FiniteGroup,
    ah: &FiniteGroup,
    ak: &FiniteGroup,
    phi_p: &[u32],
    phi_q: &[u32],
) -> DoubleCosets {
    let n = d.order();
    let nk = ak.order() as u32;
    let mut coset_of = vec![u32::MAX; n];
    let mut witness = vec![(0, 0); n];
    let mut minimum = Vec::new();
    let mut stabilizer = Vec::new();
    let inv_p: Vec<u32> = phi_p.iter().map(|&x| d.inv(x)).collect();
    for b in 0..n as u32 {
        if coset_of[b as usize] != u32::MAX {
            continue;
        }
        let id = minimum.len() as u32;
        minimum.push(b);
        let mut stab = Vec::new();
        for a in 0..ah.order() as u32 {
            let right = d.mul(b, inv_p[a as usize]);
            for a2 in 0..nk {
                let beta = d.mul(phi_q[a2 as usize], right);
                if coset_of[beta as usize] == u32::MAX {
                    coset_of[beta as usize] = id;
                    witness[beta as usize] = (a, a2);
                }
                if beta == b {
                    stab.push(a * nk + a2);
                }
            }
        }
        stabilizer.push(stab);
    }
    DoubleCosets { coset_of, witness, minimum, stabilizer }
}

/// Weak pullback of `p: H → I` and `q: K → I`: objects are triples
/// `(h, k, α: p h → q k)` in lexicographic order and morphisms are pairs
/// `(f, f')` with `q(f') ∘ α = α' ∘ p(f)`.
/// Component pair of a weak pullback object.
type Key = (u32, u32);

pub fn weak_pullback(p: &GroupoidFunctor, q: &GroupoidFunctor) -> Result<WeakPullback> {
    if !p.target().ptr_eq(q.target()) {
        return Err(Error::Functor("weak pullback needs a common codomain".into()));
    }
    let (h_g, k_g, i_g) = (p.source(), q.source(), p.target());
    // objects of K grouped by the component of I they land in
    let mut k_over: Vec<Vec<u32>> = vec![Vec::new(); i_g.component_count()];
    for k in 0..k_g.object_count() as u32 {
        k_over[i_g.component_of(q.apply_object(k)) as usize].push(k);
    }
    let mut cosets: HashMap<(u32, u32), DoubleCosets> = HashMap::new();
    let mut labels = Vec::new();
    // per apex object: (component key, coset id, witness)
    let mut placement: Vec<(Key, u32, (u32, u32))> = Vec::new();
    for h in 0..h_g.object_count() as u32 {
        let ph = p.apply_object(h);
        let d_comp = i_g.component_of(ph);
        let d = &i_g.component(d_comp).group;
        let ch = h_g.component_of(h);
        let eh = p.transport_image(h);
        for &k in &k_over[d_comp as usize] {
            let ck = k_g.component_of(k);
            let ek_inv = d.inv(q.transport_image(k));
            let key = (ch, ck);
            let dc = cosets.entry(key).or_insert_with(|| {
                double_cosets(
                    d,
                    &h_g.component(ch).group,
                    &k_g.component(ck).group,
                    &p.homs[ch as usize],
                    &q.homs[ck as usize],
                )
            });
            for c in 0..d.order() as u32 {
                let beta = d.mul(d.mul(ek_inv, c), eh);
                labels.push((h, k, c));
                placement.push((key, dc.coset_of[beta as usize], dc.witness[beta as usize]));
            }
        }
    }
    // group apex objects into components, ordered by first appearance = minimal object
    let mut comp_index: HashMap<((u32, u32), u32), u32> = HashMap::new();
    let mut comp_objects: Vec<Vec<u32>> = Vec::new();
    let mut comp_key: Vec<((u32, u32), u32)> = Vec::new();
    for (obj, (key, coset, _)) in placement.iter().enumerate() {
        let id = *comp_index.entry((*key, *coset)).or_insert_with(|| {
            comp_objects.push(Vec::new());
            comp_key.push((*key, *coset));
            (comp_objects.len() - 1) as u32
        });
        comp_objects[id as usize].push(obj as u32);
    }
    let mut components = Vec::with_capacity(comp_objects.len());
    for (objects, (key, coset)) in comp_objects.into_iter().zip(&comp_key) {
        let ah = h_g.component(key.0).group.clone();
        let ak = k_g.component(key.1).group.clone();
        let stab = cosets[key].stabilizer[*coset as usize].clone();
        let group = FiniteGroup::subgroup(FiniteGroup::Product(Arc::new(ah), Arc::new(ak)), stab)?;
        components.push(Component { objects, group });
    }
    let apex = Groupoid::from_components(labels.len(), components, Origin::Plain)?;
    debug_assert!(apex.components().iter().all(|c| {
        let (h, k, c0) = labels[c.root() as usize];
        let key = (h_g.component_of(h), k_g.component_of(k));
        h == h_g.component(key.0).root() && k == k_g.component(key.1).root() && {
            let dc = &cosets[&key];
            dc.minimum[dc.coset_of[c0 as usize] as usize] == c0
        }
    }));
    let stab_pair = |x: u32, s: u32| -> (u32, u32) {
        let comp = apex.component(apex.component_of(x));
        let (h, k, _) = labels[x as usize];
        let _ = h;
        let nk = k_g.aut_order(k) as u32;
        let pair = match comp.group.base() {
            FiniteGroup::Sub { elems, .. } => elems[s as usize],
            _ => s,
        };
        (pair / nk, pair % nk)
    };
    let build_proj = |left: bool| -> Result<GroupoidFunctor> {
        let target = if left { h_g } else { k_g };
        let mut object_map = Vec::with_capacity(labels.len());
        let mut transport = Vec::with_capacity(labels.len());
        for (obj, &(h, k, _)) in labels.iter().enumerate() {
            let w = placement[obj].2;
            object_map.push(if left { h } else { k });
            transport.push(if left { w.0 } else { w.1 });
        }
        let homs: Vec<Vec<u32>> = apex
            .components()
            .iter()
            .map(|c| {
                let root = c.root();
                (0..c.group.order() as u32)
                    .map(|s| {
                        let (a, a2) = stab_pair(root, s);
                        if left {
                            a
                        } else {
                            a2
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(GroupoidFunctor {
            source: apex.clone(),
            target: target.clone(),
            object_map: object_map.into(),
            transport: transport.into(),
            homs: homs.into(),
        })
    };
    let left_proj = build_proj(true)?;
    let right_proj = build_proj(false)?;
    Ok(WeakPullback { apex, left_proj, right_proj, object_labels: labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{PermGroup, Perm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(n: usize) -> Group {
        let g = Arc::new(PermGroup::cyclic(n));
        g.enumerate().unwrap();
        g
    }

    fn s3() -> Group {
        let g = Arc::new(PermGroup::symmetric(3));
        g.enumerate().unwrap();
        g
    }

    fn pt_mod(g: Group) -> Groupoid {
        action_groupoid(&GSet::point(g)).unwrap()
    }

    #[test]
    fn discrete_from_trivial_group() {
        let g = Arc::new(PermGroup::trivial());
        let x = action_groupoid(&GSet::trivial(g, 4)).unwrap();
        assert_eq!(x.object_count(), 4);
        assert_eq!(x.morphism_count(), 4);
        assert_eq!(iso_classes(&x).len(), 4);
    }

    #[test]
    fn free_z2_action() {
        let g = z(2);
        let x = action_groupoid(&GSet::natural(g)).unwrap();
        assert_eq!(x.object_count(), 2);
        assert_eq!(x.morphism_count(), 4);
        assert_eq!(x.component_count(), 1);
        assert_eq!(x.cardinality(), ratio(1, 1));
    }

    #[test]
    fn point_mod_s3() {
        let x = pt_mod(s3());
        assert_eq!(x.object_count(), 1);
        assert_eq!(x.morphism_count(), 6);
        assert_eq!(x.cardinality(), ratio(1, 6));
    }

    #[test]
    fn union_cardinality() {
        let u = disjoint_union(&[terminal(), pt_mod(z(2))]);
        assert_eq!(u.cardinality(), ratio(3, 2));
    }

    #[test]
    fn product_of_cyclic_points() {
        let p = product_groupoid(&pt_mod(z(2)), &pt_mod(z(3)));
        assert_eq!(p.object_count(), 1);
        assert_eq!(p.morphism_count(), 6);
        assert_eq!(p.cardinality(), ratio(1, 6));
        let q = product_groupoid(&p, &terminal());
        assert_eq!(q.object_count(), p.object_count());
    }

    #[test]
    fn morphism_ids_round_trip() {
        let x = action_groupoid(&GSet::natural(s3())).unwrap();
        for id in 0..x.morphism_count() {
            assert_eq!(x.morphism_id(x.morphism(id).unwrap()), id);
        }
        assert!(x.morphism(x.morphism_count()).is_err());
    }

    #[test]
    fn axioms_hold_for_constructors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = action_groupoid(&GSet::natural(s3())).unwrap();
        x.verify_axioms(&mut rng, 1_000_000, 0).unwrap();
        let p = product_groupoid(&x, &pt_mod(z(2)));
        p.verify_axioms(&mut rng, 0, 2000).unwrap();
    }

    #[test]
    fn action_labels_biject() {
        let g = s3();
        let x = GSet::natural(g.clone());
        let xg = action_groupoid(&x).unwrap();
        let mut seen = std::collections::HashSet::new();
        for id in 0..xg.morphism_count() {
            let m = xg.morphism(id).unwrap();
            let (el, p) = xg.action_label(m).unwrap();
            assert_eq!(x.act_element(el, p).unwrap(), m.tgt);
            assert_eq!(xg.action_morphism(el, p).unwrap(), m);
            seen.insert((el, p));
        }
        assert_eq!(seen.len(), 18);
    }

    #[test]
    fn composition_matches_group_product() {
        let g = s3();
        let e = g.enumerate().unwrap();
        let x = GSet::natural(g.clone());
        let xg = action_groupoid(&x).unwrap();
        for a in 0..6u32 {
            for b in 0..6u32 {
                for p in 0..3u32 {
                    let f = xg.action_morphism(a, p).unwrap();
                    let h = xg.action_morphism(b, f.tgt).unwrap();
                    let composite = xg.compose(h, f).unwrap();
                    assert_eq!(xg.action_label(composite).unwrap(), (e.mul(b, a), p));
                }
            }
        }
    }

    #[test]
    fn functor_constructions_verify() {
        let g = s3();
        let x = GSet::natural(g.clone());
        let xg = action_groupoid(&x).unwrap();
        let pt = pt_mod(g.clone());
        let f = GroupoidFunctor::induced(
            &EquivariantMap::new(x.clone(), GSet::point(g.clone()), vec![0; 3]).unwrap(),
            &xg,
            &pt,
        )
        .unwrap();
        f.verify().unwrap();
        GroupoidFunctor::identity(&xg).verify().unwrap();
        let p = product_groupoid(&xg, &xg);
        let diag = GroupoidFunctor::pairing(&GroupoidFunctor::identity(&xg), &GroupoidFunctor::identity(&xg), &p)
            .unwrap();
        diag.verify().unwrap();
        let back = diag.then(&GroupoidFunctor::projection_left(&p).unwrap()).unwrap();
        assert!(back.same_as(&GroupoidFunctor::identity(&xg)));
        // a functor on all morphisms agrees with the stored description
        for id in 0..xg.morphism_count() {
            let m = xg.morphism(id).unwrap();
            let (el, _) = xg.action_label(m).unwrap();
            let image = f.apply(m);
            assert_eq!(pt.action_label(image).unwrap().0, el);
        }
    }

    #[test]
    fn full_inverse_images() {
        let g = s3();
        let x = action_groupoid(&GSet::natural(g.clone())).unwrap();
        let id = GroupoidFunctor::identity(&x);
        assert_eq!(full_inverse_image(&id, 2).object_count(), 3);
        let t = terminal();
        let to_t = GroupoidFunctor::to_terminal(&x, &t).unwrap();
        assert_eq!(full_inverse_image(&to_t, 0).cardinality(), x.cardinality());
    }

    #[test]
    fn pullback_of_identities_on_pt_mod_z2() {
        let pz = pt_mod(z(2));
        let id = GroupoidFunctor::identity(&pz);
        let wp = weak_pullback(&id, &id).unwrap();
        assert_eq!(wp.apex.object_count(), 2);
        // equivalent to pt//Z2: two isomorphic objects with two automorphisms each
        assert_eq!(wp.apex.morphism_count(), 8);
        assert_eq!(wp.apex.cardinality(), ratio(1, 2));
        assert_eq!(brute_force_pullback(&id, &id), (2, 8, ratio(1, 2)));
    }

    /// Enumerates triples and commuting squares directly; returns object
    /// count, morphism count and cardinality.
    fn brute_force_pullback(p: &GroupoidFunctor, q: &GroupoidFunctor) -> (usize, u64, Rat) {
        let (hg, kg, ig) = (p.source(), q.source(), p.target());
        let mut objects = Vec::new();
        for h in 0..hg.object_count() as u32 {
            for k in 0..kg.object_count() as u32 {
                for alpha in ig.hom(p.apply_object(h), q.apply_object(k)) {
                    objects.push((h, k, alpha));
                }
            }
        }
        let n = objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut morphisms = 0u64;
        let mut autos = vec![0u64; n];
        for (i, &(h, k, a)) in objects.iter().enumerate() {
            for (j, &(h2, k2, a2)) in objects.iter().enumerate() {
                for f in hg.hom(h, h2) {
                    for f2 in kg.hom(k, k2) {
                        let lhs = ig.compose(q.apply(f2), a).unwrap();
                        let rhs = ig.compose(a2, p.apply(f)).unwrap();
                        if lhs == rhs {
                            morphisms += 1;
                            if i == j {
                                autos[i] += 1;
                            }
                            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                            parent[ri] = rj;
                        }
                    }
                }
            }
        }
        let mut card = Rat::zero();
        for (i, &a) in autos.iter().enumerate() {
            if find(&mut parent, i) == i {
                card += ratio(1, a as i64);
            }
        }
        (n, morphisms, card)
    }

    #[test]
    fn pullback_matches_brute_force_on_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = s3();
        let xs = [GSet::natural(g.clone()), GSet::regular(g.clone()).unwrap(), GSet::point(g.clone())];
        for _ in 0..6 {
            let i = rng.gen_range(0..3);
            let (a, b) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let target = action_groupoid(&xs[i]).unwrap();
            let mut functor_into = |src: &GSet| -> Option<GroupoidFunctor> {
                let maps = all_equivariant_maps(src, &xs[i]);
                if maps.is_empty() {
                    return None;
                }
                let m = maps[rng.gen_range(0..maps.len())].clone();
                let sg = action_groupoid(src).unwrap();
                Some(GroupoidFunctor::induced(&m, &sg, &target).unwrap())
            };
            let (Some(p), Some(q)) = (functor_into(&xs[a]), functor_into(&xs[b])) else { continue };
            let wp = weak_pullback(&p, &q).unwrap();
            let (n, m, card) = brute_force_pullback(&p, &q);
            assert_eq!(wp.apex.object_count(), n);
            assert_eq!(wp.apex.morphism_count(), m);
            assert_eq!(wp.apex.cardinality(), card);
            let swapped = weak_pullback(&q, &p).unwrap();
            assert_eq!(swapped.apex.cardinality(), card);
        }
    }

    fn all_equivariant_maps(x: &GSet, y: &GSet) -> Vec<EquivariantMap> {
        let mut out = Vec::new();
        let mut images = vec![0u32; x.size()];
        fn rec(i: usize, x: &GSet, y: &GSet, images: &mut Vec<u32>, out: &mut Vec<EquivariantMap>) {
            if i == x.size() {
                if let Ok(m) = EquivariantMap::new(x.clone(), y.clone(), images.clone()) {
                    out.push(m);
                }
                return;
            }
            for v in 0..y.size() as u32 {
                images[i] = v;
                rec(i + 1, x, y, images, out);
            }
        }
        if y.size().pow(x.size() as u32) <= 50_000 {
            rec(0, x, y, &mut images, &mut out);
        }
        out
    }

    #[test]
    fn pullback_projections_commute() {
        let g = s3();
        let x = GSet::natural(g.clone());
        let xg = action_groupoid(&x).unwrap();
        let pt = pt_mod(g.clone());
        let f = GroupoidFunctor::induced(
            &EquivariantMap::new(x.clone(), GSet::point(g.clone()), vec![0; 3]).unwrap(),
            &xg,
            &pt,
        )
        .unwrap();
        let wp = weak_pullback(&f, &f).unwrap();
        wp.left_proj.verify().unwrap();
        wp.right_proj.verify().unwrap();
        for id in 0..wp.apex.morphism_count() {
            assert!(wp.square_commutes(&f, &f, wp.apex.morphism(id).unwrap()));
        }
        // X ×_pt X = X × X as a G-set: 9/6
        assert_eq!(wp.apex.cardinality(), ratio(3, 2));
    }

    #[test]
    fn too_large_action_groupoid() {
        let g = Arc::new(PermGroup::symmetric(5));
        let x = GSet::regular(g).unwrap();
        let r = action_groupoid_with_limit(&x, 1000);
        assert!(matches!(r, Err(Error::TooLarge { morphisms: 14400, limit: 1000 })));
    }

    #[test]
    fn subgroup_closure_oracle() {
        let g = s3();
        let whole = FiniteGroup::perm(g.clone()).unwrap();
        let e = g.enumerate().unwrap();
        let t = e.index_of(&Perm::from_cycles(3, &[vec![1, 2]]).unwrap()).unwrap();
        assert!(FiniteGroup::check_closed(&whole, &[0, t]));
        let r = e.index_of(&Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()).unwrap();
        assert!(!FiniteGroup::check_closed(&whole, &[0, t, r]));
    }
}
