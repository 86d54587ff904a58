use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use groupoidify::degroup::degroupoidify_span;
use groupoidify::exactnum::{mat_mul, nullspace, rank, rat, QMatrix, Rat};
use groupoidify::groupoids::{action_groupoid, groupoid_cardinality, iso_classes, weak_pullback, GroupoidFunctor};
use groupoidify::groups::{orbits, product_gset, EquivariantMap, GSet, Group};
use groupoidify::hecke::algebra::{unit_vector, HeckeMultiplication};
use groupoidify::hecke::{check_intertwiners, hecke_hom};
use groupoidify::presheaves::{grothendieck_round_trip, presheaf_iso, presheaf_to_span, pullback_presheaf, span_to_presheaf, Presheaf};
use groupoidify::random::{random_group, random_gset, random_map, random_span};
use groupoidify::spans::{compose_gset_spans, coproduct, span_iso, GSetSpan, GroupoidSpan};
use num_traits::{One, Signed, Zero};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(-4i64..5, rows * cols)
        .prop_map(move |v| QMatrix::from_ints(&v.chunks(cols).map(<[i64]>::to_vec).collect::<Vec<_>>()))
}

fn world(seed: u64, max_order: usize, max_size: usize, sets: usize) -> (ChaCha8Rng, Group, Vec<GSet>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_group(&mut rng, max_order);
    let xs = (0..sets).map(|_| random_gset(&mut rng, &g, max_size).unwrap()).collect();
    (rng, g, xs)
}

fn paths(s: &GSetSpan) -> Vec<Vec<u32>> {
    (0..s.apex().size() as u32).map(|i| s.path(i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_form_a_field(a in small_rat(), b in small_rat(), c in small_rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip()).is_one());
        }
        prop_assert!(a.denom().is_positive());
    }

    #[test]
    fn matrix_product_is_associative(
        (a, b, c) in (1usize..5, 1usize..5, 1usize..5, 1usize..5)
            .prop_flat_map(|(m, n, k, l)| (int_matrix(m, n), int_matrix(n, k), int_matrix(k, l)))
    ) {
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn nullspace_vectors_are_solutions(m in (1usize..6, 1usize..7).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        let basis = nullspace(&m);
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        prop_assert_eq!(basis.len() + rank(&m), m.cols());
    }

    #[test]
    fn orbit_stabilizer(seed in any::<u64>()) {
        let (_, g, xs) = world(seed, 120, 30, 1);
        let x = &xs[0];
        let order = g.order().unwrap();
        let o = orbits(x);
        for p in 0..x.size() as u32 {
            let orbit = o.orbits[o.orbit_of[p as usize] as usize].len();
            prop_assert_eq!(orbit * x.stabilizer_indices(p).unwrap().len(), order);
        }
    }

    #[test]
    fn orbits_from_generators_match_elements(seed in any::<u64>()) {
        let (_, _, xs) = world(seed, 120, 30, 1);
        let x = &xs[0];
        let o = orbits(x);
        for p in 0..x.size() as u32 {
            let from_elements: BTreeSet<u32> = x.element_images(p).unwrap().into_iter().collect();
            let from_generators: BTreeSet<u32> = o.orbits[o.orbit_of[p as usize] as usize].iter().copied().collect();
            prop_assert_eq!(from_elements, from_generators);
        }
    }

    #[test]
    fn equivariance_on_generators_matches_elements(seed in any::<u64>(), nudge in any::<bool>()) {
        let (mut rng, g, xs) = world(seed, 60, 12, 2);
        let (x, y) = (&xs[0], &xs[1]);
        let Some(f) = random_map(&mut rng, x, y).unwrap() else { return Ok(()) };
        let mut images = f.images().to_vec();
        if nudge && y.size() > 1 {
            let p = rng.gen_range(0..images.len());
            images[p] = rng.gen_range(0..y.size() as u32);
        }
        let by_generators = EquivariantMap::new(x.clone(), y.clone(), images.clone()).is_ok();
        let order = g.order().unwrap() as u32;
        let mut by_elements = true;
        for e in 0..order {
            for p in 0..x.size() as u32 {
                if y.act_element(e, images[p as usize]).unwrap() != images[x.act_element(e, p).unwrap() as usize] {
                    by_elements = false;
                }
            }
        }
        prop_assert_eq!(by_generators, by_elements);
    }

    #[test]
    fn action_groupoid_cardinality_and_classes(seed in any::<u64>()) {
        let (mut rng, g, xs) = world(seed, 120, 30, 1);
        let x = &xs[0];
        let h = action_groupoid(x).unwrap();
        prop_assert_eq!(groupoid_cardinality(&h), Rat::new((x.size() as i64).into(), (g.order().unwrap() as i64).into()));
        prop_assert_eq!(iso_classes(&h).len(), orbits(x).len());
        prop_assert!(h.verify_axioms(&mut rng, 10_000, 200).is_ok());
    }

    #[test]
    fn weak_pullback_is_symmetric(seed in any::<u64>()) {
        let (mut rng, _, xs) = world(seed, 24, 8, 3);
        let (Some(f), Some(g)) = (random_map(&mut rng, &xs[0], &xs[2]).unwrap(), random_map(&mut rng, &xs[1], &xs[2]).unwrap()) else {
            return Ok(());
        };
        let hs: Vec<_> = xs.iter().map(|x| action_groupoid(x).unwrap()).collect();
        let p = GroupoidFunctor::induced(&f, &hs[0], &hs[2]).unwrap();
        let q = GroupoidFunctor::induced(&g, &hs[1], &hs[2]).unwrap();
        let pq = weak_pullback(&p, &q).unwrap();
        let qp = weak_pullback(&q, &p).unwrap();
        prop_assert_eq!(groupoid_cardinality(&pq.apex), groupoid_cardinality(&qp.apex));
    }

    #[test]
    fn span_composition_is_strictly_associative(seed in any::<u64>()) {
        let (mut rng, _, xs) = world(seed, 12, 5, 4);
        let s = random_span(&mut rng, &xs[0], &xs[1], 6).unwrap();
        let t = random_span(&mut rng, &xs[1], &xs[2], 6).unwrap();
        let u = random_span(&mut rng, &xs[2], &xs[3], 6).unwrap();
        let a = compose_gset_spans(&compose_gset_spans(&u, &t).unwrap(), &s).unwrap();
        let b = compose_gset_spans(&u, &compose_gset_spans(&t, &s).unwrap()).unwrap();
        prop_assert_eq!(a.apex().size(), b.apex().size());
        prop_assert_eq!(
            (0..a.apex().size() as u32).map(|i| a.tuple(i).to_vec()).collect::<Vec<_>>(),
            (0..b.apex().size() as u32).map(|i| b.tuple(i).to_vec()).collect::<Vec<_>>()
        );
        prop_assert_eq!(paths(&a), paths(&b));
    }

    #[test]
    fn composite_fiber_matrix_is_product(seed in any::<u64>()) {
        let (mut rng, _, xs) = world(seed, 12, 6, 3);
        let s = random_span(&mut rng, &xs[0], &xs[1], 8).unwrap();
        let t = random_span(&mut rng, &xs[1], &xs[2], 8).unwrap();
        let ts = compose_gset_spans(&t, &s).unwrap();
        prop_assert_eq!(ts.fiber_matrix(), mat_mul(&t.fiber_matrix(), &s.fiber_matrix()).unwrap());
        if s.is_relation() && t.is_relation() {
            // relation composition counted with multiplicity
            let fm = ts.fiber_matrix();
            let (nx, nz) = (xs[0].size() as u32, xs[2].size() as u32);
            for x in 0..nx {
                for z in 0..nz {
                    let witnesses = (0..xs[1].size() as u32)
                        .filter(|&y| (0..s.apex().size() as u32).any(|p| s.right().apply(p) == x && s.left().apply(p) == y)
                            && (0..t.apex().size() as u32).any(|p| t.right().apply(p) == y && t.left().apply(p) == z))
                        .count();
                    prop_assert_eq!(fm.get(z as usize, x as usize), &rat(witnesses as i64));
                }
            }
        }
    }

    #[test]
    fn span_iso_implies_matching_invariants(seed in any::<u64>()) {
        let (mut rng, _, xs) = world(seed, 12, 4, 2);
        let s = random_span(&mut rng, &xs[0], &xs[1], 6).unwrap();
        let t = random_span(&mut rng, &xs[0], &xs[1], 6).unwrap();
        if span_iso(&s, &t).unwrap().is_some() {
            prop_assert_eq!(s.fiber_matrix(), t.fiber_matrix());
            prop_assert_eq!(s.orbit_types(), t.orbit_types());
        }
        prop_assert!(span_iso(&s, &s).unwrap().is_some());
        let rebuilt = coproduct(&s.decompose_irreducible()).unwrap();
        prop_assert!(span_iso(&s, &rebuilt).unwrap().is_some());
    }

    #[test]
    fn degroupoidified_entries_are_bounded(seed in any::<u64>()) {
        let (mut rng, g, xs) = world(seed, 24, 8, 2);
        let s = random_span(&mut rng, &xs[0], &xs[1], 12).unwrap();
        let hs: Vec<_> = xs.iter().map(|x| action_groupoid(x).unwrap()).collect();
        let d = degroupoidify_span(&GroupoidSpan::from_gset_span(&s, &hs[1], &hs[0]).unwrap()).unwrap();
        let order: num_bigint::BigInt = (g.order().unwrap() as i64).into();
        for e in d.entries() {
            prop_assert!(!e.is_negative());
            prop_assert!((&order % e.denom()).is_zero());
        }
        let id = degroupoidify_span(&GroupoidSpan::identity(&hs[0])).unwrap();
        prop_assert_eq!(id, QMatrix::identity(orbits(&xs[0]).len()));
    }

    #[test]
    fn grothendieck_round_trips_and_fiber_counts(seed in any::<u64>()) {
        let (mut rng, _, xs) = world(seed, 12, 5, 2);
        let s = random_span(&mut rng, &xs[0], &xs[1], 10).unwrap();
        let base = action_groupoid(&product_gset(&xs[0], &xs[1]).unwrap()).unwrap();
        let p = span_to_presheaf(&s, &base).unwrap();
        let ny = xs[1].size() as u32;
        for x in 0..xs[0].size() as u32 {
            for y in 0..ny {
                let fiber = (0..s.apex().size() as u32).filter(|&a| s.right().apply(a) == x && s.left().apply(a) == y).count();
                prop_assert_eq!(p.size(x * ny + y), fiber);
            }
        }
        let t = grothendieck_round_trip(&s, &base).unwrap();
        prop_assert!(t.span_ok && t.presheaf_ok);
        let empty = presheaf_to_span(&Presheaf::empty(&base)).unwrap();
        prop_assert_eq!(empty.apex().size(), 0);
        let back = span_to_presheaf(&empty, &base).unwrap();
        prop_assert!(presheaf_iso(&Presheaf::empty(&base), &back).unwrap().is_some());
    }

    #[test]
    fn pullback_is_functorial(seed in any::<u64>()) {
        let (mut rng, _, xs) = world(seed, 12, 5, 4);
        let z = product_gset(&xs[2], &xs[3]).unwrap();
        let (Some(f), Some(g)) = (random_map(&mut rng, &xs[0], &xs[1]).unwrap(), random_map(&mut rng, &xs[1], &z).unwrap()) else {
            return Ok(());
        };
        let hx = action_groupoid(&xs[0]).unwrap();
        let hy = action_groupoid(&xs[1]).unwrap();
        let hz = action_groupoid(&z).unwrap();
        let s = random_span(&mut rng, &xs[2], &xs[3], 8).unwrap();
        let p = span_to_presheaf(&s, &hz).unwrap();
        let ff = GroupoidFunctor::induced(&f, &hx, &hy).unwrap();
        let gg = GroupoidFunctor::induced(&g, &hy, &hz).unwrap();
        let once = pullback_presheaf(&ff.then(&gg).unwrap(), &p).unwrap();
        let twice = pullback_presheaf(&ff, &pullback_presheaf(&gg, &p).unwrap()).unwrap();
        prop_assert!(presheaf_iso(&once, &twice).unwrap().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_dimensions_agree(seed in any::<u64>()) {
        let (_, _, xs) = world(seed, 24, 8, 2);
        let (x, y) = (&xs[0], &xs[1]);
        let classes = hecke_hom(x, y).unwrap().component_count();
        prop_assert_eq!(classes, orbits(&product_gset(x, y).unwrap()).len());
        let (dim, agree) = check_intertwiners(x, y).unwrap().expect("small enough");
        prop_assert!(agree);
        prop_assert_eq!(dim, classes);
    }

    #[test]
    fn hecke_multiplication_is_associative_and_unital(seed in any::<u64>()) {
        let (_, _, xs) = world(seed, 12, 5, 1);
        let x = &xs[0];
        let m = HeckeMultiplication::new(x).unwrap();
        prop_assert!(m.is_associative().unwrap());
        let xx = hecke_hom(x, x).unwrap();
        let unit = unit_vector(x, &xx).unwrap();
        for u in 0..m.dim() {
            prop_assert_eq!(m.multiply(&unit, &m.basis(u)).unwrap(), m.basis(u));
            prop_assert_eq!(m.multiply(&m.basis(u), &unit).unwrap(), m.basis(u));
        }
    }
}
