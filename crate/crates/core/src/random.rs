//! Seeded generators of random groups, G-sets, equivariant maps and spans
//! for property checks.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use serde::Serialize;

use crate::degroup::{check_functoriality, check_monoidal};
use crate::error::{Error, Result};
use crate::exactnum::{rat_to_string, ratio};
use crate::groupoids::{action_groupoid, groupoid_cardinality};
use crate::groups::{orbits, EquivariantMap, GSet, Group, Perm, PermGroup};
use crate::spans::{GSetSpan, GroupoidSpan};

fn random_perm<R: Rng>(rng: &mut R, degree: usize) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    images.shuffle(rng);
    Perm::new(images).expect("a shuffle is a permutation")
}

/// A permutation group of order at most `max_order`, generated by one to
/// three random permutations of at most five points.
pub fn random_group<R: Rng>(rng: &mut R, max_order: usize) -> Group {
    loop {
        let degree = rng.gen_range(1..=5);
        let gens = (0..rng.gen_range(1..=3)).map(|_| random_perm(rng, degree)).collect();
        let g = PermGroup::with_cap(degree, gens, max_order.max(1)).expect("valid generators");
        if g.order().is_ok() {
            return Arc::new(g);
        }
    }
}

/// Element indices of the subgroup generated by the given elements.
pub fn subgroup_closure(group: &Group, generators: &[u32]) -> Result<Vec<u32>> {
    let e = group.enumerate()?;
    let identity = e.index_of(&Perm::identity(group.degree())).ok_or(Error::NotEnumerated)?;
    let mut seen = BTreeSet::from([identity]);
    let mut frontier = vec![identity];
    while let Some(a) = frontier.pop() {
        for &g in generators {
            let b = e.mul(g, a);
            if seen.insert(b) {
                frontier.push(b);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A disjoint union of coset spaces `G/H` for random subgroups `H`, with at
/// most `max_size` points (at least one orbit unless `max_size` is 0).
pub fn random_gset<R: Rng>(rng: &mut R, group: &Group, max_size: usize) -> Result<GSet> {
    let order = group.order()?;
    let mut parts = Vec::new();
    let mut size = 0;
    let orbit_count = rng.gen_range(1..=3);
    for _ in 0..orbit_count * 4 {
        if parts.len() == orbit_count {
            break;
        }
        let k = rng.gen_range(0..=2);
        let gens: Vec<u32> = (0..k).map(|_| rng.gen_range(0..order as u32)).collect();
        let h = subgroup_closure(group, &gens)?;
        let part_size = order / h.len();
        if size + part_size <= max_size {
            parts.push(GSet::cosets(group.clone(), &h)?);
            size += part_size;
        }
    }
    if parts.is_empty() {
        return Ok(GSet::trivial(group.clone(), max_size.min(1)));
    }
    GSet::disjoint_union(&parts)
}

/// A random equivariant map, or `None` when some orbit of `x` has no
/// possible image in `y`.
pub fn random_map<R: Rng>(rng: &mut R, x: &GSet, y: &GSet) -> Result<Option<EquivariantMap>> {
    let mut images = vec![u32::MAX; x.size()];
    for orbit in orbits(x).orbits {
        let r = orbit[0];
        let stab = x.stabilizer_indices(r)?;
        let mut candidates = Vec::new();
        for p in 0..y.size() as u32 {
            let mut fixed = true;
            for &g in &stab {
                if y.act_element(g, p)? != p {
                    fixed = false;
                    break;
                }
            }
            if fixed {
                candidates.push(p);
            }
        }
        let Some(&target) = candidates.choose(rng) else { return Ok(None) };
        images[r as usize] = target;
        let mut frontier = vec![r];
        while let Some(a) = frontier.pop() {
            for g in 0..x.group().generators().len() {
                let b = x.act(g, a);
                if images[b as usize] == u32::MAX {
                    images[b as usize] = y.act(g, images[a as usize]);
                    frontier.push(b);
                }
            }
        }
    }
    EquivariantMap::new(x.clone(), y.clone(), images).map(Some)
}

/// One orbit `G/H` mapped onto the orbits of `x0` and `y0`, where `H` lies
/// in the joint stabilizer; the point with stabilizer exactly `H` goes to
/// the pair.
fn pair_orbit(x: &GSet, y: &GSet, x0: u32, y0: u32, h: &[u32]) -> Result<(GSet, Vec<u32>, Vec<u32>)> {
    let orbit = GSet::cosets(x.group().clone(), h)?;
    let mut wanted = h.to_vec();
    wanted.sort_unstable();
    let mut base = None;
    for p in 0..orbit.size() as u32 {
        if orbit.stabilizer_indices(p)? == wanted {
            base = Some(p);
            break;
        }
    }
    let base = base.ok_or_else(|| Error::Precondition("no coset has the chosen stabilizer".into()))?;
    let (mut left, mut right) = (vec![u32::MAX; orbit.size()], vec![u32::MAX; orbit.size()]);
    left[base as usize] = y0;
    right[base as usize] = x0;
    let mut frontier = vec![base];
    while let Some(a) = frontier.pop() {
        for g in 0..x.group().generators().len() {
            let b = orbit.act(g, a);
            if left[b as usize] == u32::MAX {
                left[b as usize] = y.act(g, left[a as usize]);
                right[b as usize] = x.act(g, right[a as usize]);
                frontier.push(b);
            }
        }
    }
    Ok((orbit, left, right))
}

/// A random span `y ← S → x` with one to three apex orbits of at most
/// `max_apex` points in total. Each orbit is `G/H` for a random subgroup
/// `H` of the stabilizer of a random pair; when no orbit fits, the apex is
/// a single orbit of pairs of smallest size.
pub fn random_span<R: Rng>(rng: &mut R, x: &GSet, y: &GSet, max_apex: usize) -> Result<GSetSpan> {
    if !x.same_group(y) {
        return Err(Error::GroupMismatch);
    }
    if x.size() == 0 || y.size() == 0 {
        return Err(Error::Precondition("random spans need nonempty feet".into()));
    }
    let group = x.group();
    let order = group.order()?;
    let joint = |x0: u32, y0: u32| -> Result<Vec<u32>> {
        let sy: BTreeSet<u32> = y.stabilizer_indices(y0)?.into_iter().collect();
        Ok(x.stabilizer_indices(x0)?.into_iter().filter(|g| sy.contains(g)).collect())
    };
    let mut parts = Vec::new();
    let mut size = 0;
    let orbit_count = rng.gen_range(1..=3);
    for _ in 0..orbit_count * 4 {
        if parts.len() == orbit_count {
            break;
        }
        let (x0, y0) = (rng.gen_range(0..x.size() as u32), rng.gen_range(0..y.size() as u32));
        let k = joint(x0, y0)?;
        let picks: Vec<u32> = (0..rng.gen_range(0..=2)).map(|_| *k.choose(rng).expect("identity stabilizes")).collect();
        let h = subgroup_closure(group, &picks)?;
        if size + order / h.len() <= max_apex {
            size += order / h.len();
            parts.push(pair_orbit(x, y, x0, y0, &h)?);
        }
    }
    if parts.is_empty() {
        let mut best: Option<(usize, u32, u32, Vec<u32>)> = None;
        for x0 in 0..x.size() as u32 {
            for y0 in 0..y.size() as u32 {
                let k = joint(x0, y0)?;
                if best.as_ref().is_none_or(|b| k.len() > b.3.len()) {
                    best = Some((order / k.len(), x0, y0, k));
                }
            }
        }
        let (_, x0, y0, k) = best.expect("nonempty feet");
        parts.push(pair_orbit(x, y, x0, y0, &k)?);
    }
    let apex = GSet::disjoint_union(&parts.iter().map(|p| p.0.clone()).collect::<Vec<_>>())?;
    let left = parts.iter().flat_map(|p| p.1.iter().copied()).collect();
    let right = parts.iter().flat_map(|p| p.2.iter().copied()).collect();
    GSetSpan::new(EquivariantMap::new(apex.clone(), y.clone(), left)?, EquivariantMap::new(apex, x.clone(), right)?)
}

/// Outcome of a batch of randomized checks.
#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub pass: bool,
}

impl TrialReport {
    fn new() -> TrialReport {
        TrialReport { trials: 0, failures: 0, first_failure: None, pass: true }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            self.pass = false;
            self.first_failure.get_or_insert_with(describe);
        }
    }
}

/// `|X//G| = |X|/|G|` for random groups of order ≤ 120 and G-sets of ≤ 30 points.
pub fn cardinality_trials<R: Rng>(rng: &mut R, count: usize) -> Result<TrialReport> {
    let mut report = TrialReport::new();
    for _ in 0..count {
        let g = random_group(rng, 120);
        let x = random_gset(rng, &g, 30)?;
        let got = groupoid_cardinality(&action_groupoid(&x)?);
        let expected = ratio(x.size() as i64, g.order()? as i64);
        report.record(got == expected, || {
            format!("|X| = {}, |G| = {}: got {}", x.size(), g.order().unwrap_or(0), rat_to_string(&got))
        });
    }
    Ok(report)
}

fn groupoid_spans<R: Rng>(rng: &mut R, count: usize, max_order: usize, max_foot: usize, max_apex: usize) -> Result<Vec<GroupoidSpan>> {
    let g = random_group(rng, max_order);
    let feet = (0..=count).map(|_| random_gset(rng, &g, max_foot)).collect::<Result<Vec<_>>>()?;
    let groupoids = feet.iter().map(action_groupoid).collect::<Result<Vec<_>>>()?;
    (0..count)
        .map(|k| {
            let s = random_span(rng, &feet[k], &feet[k + 1], max_apex)?;
            GroupoidSpan::from_gset_span(&s, &groupoids[k + 1], &groupoids[k])
        })
        .collect()
}

/// `D(T∘S) = D(T)·D(S)` for random composable spans over groups of order ≤ 24.
pub fn functoriality_trials<R: Rng>(rng: &mut R, count: usize) -> Result<TrialReport> {
    let mut report = TrialReport::new();
    for trial in 0..count {
        let spans = groupoid_spans(rng, 2, 24, 8, 12)?;
        let check = check_functoriality(&spans[1], &spans[0])?;
        report.record(check.pass, || format!("trial {trial}"));
    }
    Ok(report)
}

/// `D(S×T) = D(S) ⊗ D(T)` for random spans over a common group.
pub fn monoidal_trials<R: Rng>(rng: &mut R, count: usize) -> Result<TrialReport> {
    let mut report = TrialReport::new();
    for trial in 0..count {
        let g = random_group(rng, 12);
        let feet = (0..4).map(|_| random_gset(rng, &g, 5)).collect::<Result<Vec<_>>>()?;
        let groupoids = feet.iter().map(action_groupoid).collect::<Result<Vec<_>>>()?;
        let s = random_span(rng, &feet[0], &feet[1], 6)?;
        let t = random_span(rng, &feet[2], &feet[3], 6)?;
        let s = GroupoidSpan::from_gset_span(&s, &groupoids[1], &groupoids[0])?;
        let t = GroupoidSpan::from_gset_span(&t, &groupoids[3], &groupoids[2])?;
        let check = check_monoidal(&s, &t)?;
        report.record(check.pass, || format!("trial {trial}"));
    }
    Ok(report)
}
