//! Finite permutation groups, finite G-sets and equivariant maps.
//!
//! Composition convention, used everywhere in the crate: a permutation is an
//! array of images and `a.compose(&b)` is `a ∘ b`, i.e. apply `b` first.
//! Group elements are referred to by their index in the breadth-first
//! enumeration, where index 0 is the identity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Multiplication tables are materialized up to this group order.
const TABLE_LIMIT: usize = 2048;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u32).collect())
    }

    /// Product of cycles, applied right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut result = Perm::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut img: Vec<u32> = (0..degree as u32).collect();
            let mut seen = HashSet::new();
            for (k, &a) in cycle.iter().enumerate() {
                if a as usize >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} out of range for degree {degree}"
                    )));
                }
                if !seen.insert(a) {
                    return Err(Error::InvalidPermutation(format!("point {a} repeated in cycle")));
                }
                img[a as usize] = cycle[(k + 1) % cycle.len()];
            }
            result = Perm(img).compose(&result);
        }
        Ok(result)
    }

    /// Disjoint cycle decomposition, fixed points omitted.
    pub fn to_cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.0[x] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.to_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Full element list of an enumerated group.
pub struct Enumeration {
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    /// `elements[e] = generators[tree[e].1] ∘ elements[tree[e].0]`; unused at 0.
    tree: Vec<(u32, u32)>,
    inverse: Vec<u32>,
    generator_index: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl Enumeration {
    fn build(degree: usize, generators: &[Perm], cap: usize) -> Result<Enumeration> {
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut tree = vec![(0u32, 0u32)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (g, gen) in generators.iter().enumerate() {
                let next = gen.compose(&elements[e]);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::EnumerationLimit { cap });
                }
                index.insert(next.clone(), elements.len() as u32);
                elements.push(next);
                tree.push((e as u32, g as u32));
                queue.push_back(elements.len() - 1);
            }
        }
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generator_index = generators.iter().map(|g| index[g]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)]);
                }
            }
            t
        });
        Ok(Enumeration { elements, index, tree, inverse, generator_index, table })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Index of `a ∘ b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn generator_index(&self, g: usize) -> u32 {
        self.generator_index[g]
    }

    /// Breadth-first tree: element `e` is generator `tree(e).1` applied after `tree(e).0`.
    pub fn tree(&self, e: usize) -> (u32, u32) {
        self.tree[e]
    }
}

/// A finite permutation group given by generators; the element list is
/// computed on first use and cached.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    enumeration: OnceLock<Enumeration>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.enumeration.get().map(Enumeration::order))
            .finish()
    }
}

pub type Group = Arc<PermGroup>;

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        Self::with_cap(degree, generators, DEFAULT_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} instead of {degree}",
                    g.degree()
                )));
            }
        }
        Ok(PermGroup { degree, generators, cap, enumeration: OnceLock::new() })
    }

    /// Group whose enumeration is the given closed element set.
    pub fn from_elements(degree: usize, elements: &[Perm]) -> Result<PermGroup> {
        let target: HashSet<&Perm> = elements.iter().collect();
        let mut gens: Vec<Perm> = Vec::new();
        let mut reached: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
        for p in elements {
            if reached.contains(p) {
                continue;
            }
            gens.push(p.clone());
            let mut frontier: Vec<Perm> = reached.iter().cloned().collect();
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = g.compose(&x);
                    if reached.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
        if reached.len() != target.len() || reached.iter().any(|p| !target.contains(p)) {
            return Err(Error::Precondition("element set is not closed under composition".into()));
        }
        let group = PermGroup::new(degree, gens)?;
        group.enumerate()?;
        Ok(group)
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let gens =
            if n >= 2 { vec![Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap()] } else { vec![] };
        PermGroup::new(n.max(1), gens).unwrap()
    }

    pub fn trivial() -> PermGroup {
        PermGroup::new(1, vec![]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn enumerate(&self) -> Result<&Enumeration> {
        if let Some(e) = self.enumeration.get() {
            return Ok(e);
        }
        let e = Enumeration::build(self.degree, &self.generators, self.cap)?;
        Ok(self.enumeration.get_or_init(|| e))
    }

    /// The enumeration, if it has already been computed.
    pub fn enumerated(&self) -> Result<&Enumeration> {
        self.enumeration.get().ok_or(Error::NotEnumerated)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.enumerate()?.order())
    }

    pub fn same_as(&self, other: &PermGroup) -> bool {
        std::ptr::eq(self, other)
            || (self.degree == other.degree && self.generators == other.generators)
    }
}

/// Enumerates the group generated by `generators` by breadth-first closure.
pub fn group_closure(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<PermGroup> {
    let group = PermGroup::with_cap(degree, generators, cap)?;
    group.enumerate()?;
    Ok(group)
}

struct GSetData {
    size: usize,
    group: Group,
    action: Vec<Vec<u32>>,
    factors: Option<(GSet, GSet)>,
}

/// A finite set with an action of a [`PermGroup`], given by the images of
/// each generator.
#[derive(Clone)]
pub struct GSet(Arc<GSetData>);

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GSet").field("size", &self.0.size).finish()
    }
}

impl GSet {
    pub fn new(group: Group, size: usize, action: Vec<Vec<u32>>) -> Result<GSet> {
        if action.len() != group.generators().len() {
            return Err(Error::Precondition(format!(
                "{} generator actions given for {} generators",
                action.len(),
                group.generators().len()
            )));
        }
        for imgs in &action {
            if imgs.len() != size {
                return Err(Error::InvalidPermutation(format!(
                    "generator action has {} images for {size} points",
                    imgs.len()
                )));
            }
            Perm::new(imgs.clone())?;
        }
        Ok(GSet(Arc::new(GSetData { size, group, action, factors: None })))
    }

    /// Builds a G-set without validating; callers guarantee bijectivity.
    pub(crate) fn from_parts(group: Group, size: usize, action: Vec<Vec<u32>>) -> GSet {
        GSet(Arc::new(GSetData { size, group, action, factors: None }))
    }

    pub fn point(group: Group) -> GSet {
        Self::trivial(group, 1)
    }

    /// `n` points, every element acting as the identity.
    pub fn trivial(group: Group, n: usize) -> GSet {
        let action = vec![(0..n as u32).collect(); group.generators().len()];
        Self::from_parts(group, n, action)
    }

    /// The points `0..degree` permuted by the group itself.
    pub fn natural(group: Group) -> GSet {
        let action = group.generators().iter().map(|g| g.images().to_vec()).collect();
        Self::from_parts(group.clone(), group.degree(), action)
    }

    /// Left multiplication on element indices.
    pub fn regular(group: Group) -> Result<GSet> {
        let e = group.enumerate()?;
        let action = (0..group.generators().len())
            .map(|g| {
                let gi = e.generator_index(g);
                (0..e.order() as u32).map(|x| e.mul(gi, x)).collect()
            })
            .collect();
        Ok(Self::from_parts(group.clone(), e.order(), action))
    }

    /// Left cosets `gK` of the subgroup with the given element indices,
    /// ordered by their minimal element index.
    pub fn cosets(group: Group, subgroup: &[u32]) -> Result<GSet> {
        let e = group.enumerate()?;
        let n = e.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut count = 0u32;
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            for &k in subgroup {
                coset_of[e.mul(g, k) as usize] = count;
            }
            count += 1;
        }
        if count as usize * subgroup.len() != n {
            return Err(Error::Precondition("coset sizes do not partition the group".into()));
        }
        let mut rep = vec![0u32; count as usize];
        for g in (0..n as u32).rev() {
            rep[coset_of[g as usize] as usize] = g;
        }
        let action = (0..group.generators().len())
            .map(|s| {
                let si = e.generator_index(s);
                rep.iter().map(|&r| coset_of[e.mul(si, r) as usize]).collect()
            })
            .collect();
        Ok(Self::from_parts(group.clone(), count as usize, action))
    }

    pub fn disjoint_union(parts: &[GSet]) -> Result<GSet> {
        let group = match parts.first() {
            Some(p) => p.group().clone(),
            None => return Err(Error::Precondition("empty disjoint union needs a group".into())),
        };
        if parts.iter().any(|p| !p.same_group(&parts[0])) {
            return Err(Error::GroupMismatch);
        }
        let size = parts.iter().map(GSet::size).sum();
        let action = (0..group.generators().len())
            .map(|g| {
                let mut imgs = Vec::with_capacity(size);
                let mut offset = 0u32;
                for p in parts {
                    imgs.extend(p.generator_action(g).iter().map(|&x| x + offset));
                    offset += p.size() as u32;
                }
                imgs
            })
            .collect();
        Ok(Self::from_parts(group, size, action))
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn group(&self) -> &Group {
        &self.0.group
    }

    pub fn generator_action(&self, g: usize) -> &[u32] {
        &self.0.action[g]
    }

    #[inline]
    pub fn act(&self, generator: usize, x: u32) -> u32 {
        self.0.action[generator][x as usize]
    }

    /// Same group, same points, same generator images.
    pub fn same_as(&self, other: &GSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.same_group(other) && self.0.size == other.0.size && self.0.action == other.0.action)
    }

    pub fn same_group(&self, other: &GSet) -> bool {
        Arc::ptr_eq(&self.0.group, &other.0.group) || self.0.group.same_as(&other.0.group)
    }

    /// For a product G-set, its two factors.
    pub fn factors(&self) -> Option<&(GSet, GSet)> {
        self.0.factors.as_ref()
    }

    /// Image of `point` under every group element, indexed by element.
    pub fn element_images(&self, point: u32) -> Result<Vec<u32>> {
        let e = self.group().enumerate()?;
        let mut images = vec![point; e.order()];
        for idx in 1..e.order() {
            let (parent, g) = e.tree(idx);
            images[idx] = self.act(g as usize, images[parent as usize]);
        }
        Ok(images)
    }

    /// Row-major `|G| x |X|` table of `g · x`.
    pub fn element_action_table(&self) -> Result<Vec<u32>> {
        let e = self.group().enumerate()?;
        let n = self.size();
        let mut table = vec![0u32; e.order() * n];
        table[..n].iter_mut().enumerate().for_each(|(i, t)| *t = i as u32);
        for idx in 1..e.order() {
            let (parent, g) = e.tree(idx);
            let (before, after) = table.split_at_mut(idx * n);
            let prow = &before[parent as usize * n..(parent as usize + 1) * n];
            for (slot, &x) in after[..n].iter_mut().zip(prow) {
                *slot = self.act(g as usize, x);
            }
        }
        Ok(table)
    }

    /// Checks that the generator images define a group action by comparing,
    /// for every element and generator, the two ways of acting by their
    /// product. Exhaustive over the enumerated group.
    pub fn check_action(&self) -> Result<()> {
        let e = self.group().enumerate()?;
        let table = self.element_action_table()?;
        let n = self.size();
        for idx in 0..e.order() {
            for g in 0..self.group().generators().len() {
                let prod = e.mul(e.generator_index(g), idx as u32) as usize;
                for x in 0..n {
                    if table[prod * n + x] != self.act(g, table[idx * n + x]) {
                        return Err(Error::NotEquivariant(format!(
                            "generator {g} does not act compatibly at point {x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Sampled version of [`check_action`](Self::check_action): random words
    /// are evaluated through the generator images and through composition in
    /// the group, and must act identically.
    pub fn check_action_sampled<R: Rng>(&self, rng: &mut R, words: usize, max_len: usize) -> Result<()> {
        let gens = self.group().generators();
        if gens.is_empty() {
            return Ok(());
        }
        let e = self.group().enumerate()?;
        for _ in 0..words {
            let len = rng.gen_range(1..=max_len.max(1));
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..gens.len())).collect();
            let mut element = 0u32;
            for &g in &word {
                element = e.mul(e.generator_index(g), element);
            }
            let x = rng.gen_range(0..self.size().max(1)) as u32;
            if self.size() == 0 {
                continue;
            }
            let direct = word.iter().fold(x, |p, &g| self.act(g, p));
            let via_group = self.act_element(element, x)?;
            if direct != via_group {
                return Err(Error::NotEquivariant(format!("word {word:?} acts inconsistently on {x}")));
            }
        }
        Ok(())
    }

    /// `g · x` for an arbitrary element index, walking the enumeration tree.
    pub fn act_element(&self, element: u32, x: u32) -> Result<u32> {
        let e = self.group().enumerate()?;
        let mut path = Vec::new();
        let mut cur = element as usize;
        while cur != 0 {
            let (parent, g) = e.tree(cur);
            path.push(g);
            cur = parent as usize;
        }
        Ok(path.iter().rev().fold(x, |p, &g| self.act(g as usize, p)))
    }

    /// Element indices fixing `point`; identity first.
    pub fn stabilizer_indices(&self, point: u32) -> Result<Vec<u32>> {
        let images = self.element_images(point)?;
        Ok((0..images.len() as u32).filter(|&g| images[g as usize] == point).collect())
    }
}

/// Partition of the points of a G-set into orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    /// Orbit index of each point.
    pub orbit_of: Vec<u32>,
    /// Points of each orbit in increasing order; orbits sorted by minimal point.
    pub orbits: Vec<Vec<u32>>,
}

impl Orbits {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Minimal point of each orbit.
    pub fn representatives(&self) -> Vec<u32> {
        self.orbits.iter().map(|o| o[0]).collect()
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Orbits from the generators alone, by union-find.
pub fn orbits(x: &GSet) -> Orbits {
    let n = x.size();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    for g in 0..x.group().generators().len() {
        for p in 0..n as u32 {
            let a = find(&mut parent, p);
            let b = find(&mut parent, x.act(g, p));
            if a != b {
                // keep the smaller root so roots are orbit minima
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let mut root_index: HashMap<u32, u32> = HashMap::new();
    for p in 0..n as u32 {
        let r = find(&mut parent, p);
        let idx = *root_index.entry(r).or_insert_with(|| {
            orbits.push(Vec::new());
            (orbits.len() - 1) as u32
        });
        orbit_of[p as usize] = idx;
        orbits[idx as usize].push(p);
    }
    Orbits { orbit_of, orbits }
}

/// The subgroup fixing `point`, enumerated.
pub fn stabilizer(x: &GSet, point: u32) -> Result<PermGroup> {
    let e = x.group().enumerated()?;
    let elems: Vec<Perm> =
        x.stabilizer_indices(point)?.into_iter().map(|i| e.element(i).clone()).collect();
    PermGroup::from_elements(x.group().degree(), &elems)
}

/// `X × Y` with the diagonal action; the pair `(a, b)` is point `a·|Y| + b`.
pub fn product_gset(x: &GSet, y: &GSet) -> Result<GSet> {
    if !x.same_group(y) {
        return Err(Error::GroupMismatch);
    }
    let (nx, ny) = (x.size(), y.size());
    let action = (0..x.group().generators().len())
        .map(|g| {
            let mut imgs = Vec::with_capacity(nx * ny);
            for a in 0..nx as u32 {
                let ga = x.act(g, a) * ny as u32;
                for b in 0..ny as u32 {
                    imgs.push(ga + y.act(g, b));
                }
            }
            imgs
        })
        .collect();
    Ok(GSet(Arc::new(GSetData {
        size: nx * ny,
        group: x.group().clone(),
        action,
        factors: Some((x.clone(), y.clone())),
    })))
}

/// A G-equivariant function between G-sets.
#[derive(Clone, Debug)]
pub struct EquivariantMap {
    source: GSet,
    target: GSet,
    images: Vec<u32>,
}

impl EquivariantMap {
    pub fn new(source: GSet, target: GSet, images: Vec<u32>) -> Result<EquivariantMap> {
        if !source.same_group(&target) {
            return Err(Error::GroupMismatch);
        }
        if images.len() != source.size() {
            return Err(Error::Shape(format!(
                "{} images for {} points",
                images.len(),
                source.size()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y as usize >= target.size()) {
            return Err(Error::Shape(format!("image {bad} outside target of size {}", target.size())));
        }
        let map = EquivariantMap { source, target, images };
        map.check_equivariance()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: GSet, target: GSet, images: Vec<u32>) -> EquivariantMap {
        EquivariantMap { source, target, images }
    }

    pub fn identity(x: &GSet) -> EquivariantMap {
        EquivariantMap { source: x.clone(), target: x.clone(), images: (0..x.size() as u32).collect() }
    }

    /// `g · f(x) = f(g · x)` for every generator `g` and point `x`.
    pub fn check_equivariance(&self) -> Result<()> {
        for g in 0..self.source.group().generators().len() {
            for x in 0..self.source.size() as u32 {
                if self.target.act(g, self.apply(x)) != self.apply(self.source.act(g, x)) {
                    return Err(Error::NotEquivariant(format!("generator {g} at point {x}")));
                }
            }
        }
        Ok(())
    }

    /// Same check over every enumerated group element.
    pub fn check_equivariance_all_elements(&self) -> Result<bool> {
        let src = self.source.element_action_table()?;
        let tgt = self.target.element_action_table()?;
        let (ns, nt) = (self.source.size(), self.target.size());
        let order = self.source.group().enumerate()?.order();
        Ok((0..order).all(|g| {
            (0..ns).all(|x| {
                tgt[g * nt + self.images[x] as usize] == self.images[src[g * ns + x] as usize]
            })
        }))
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }
}
