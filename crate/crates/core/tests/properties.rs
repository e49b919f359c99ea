use std::sync::Arc;

use proptest::prelude::*;

use latkit::closure::lattice_roundtrip;
use latkit::format::{write_lattice, write_map, write_umap, Workspace};
use latkit::lattice::{direct_product, find_isomorphism, random_moore_lattice, LatticeRef, Limits};
use latkit::maps::{check_adjunction, compose, dualize, hom_set, left_adjoint, right_adjoint, undualize, HomClass, LatticeMap};
use latkit::state::{causal_to_map, close_relation, relation_of};
use latkit::transition::{coherence_check, is_based, is_strongly_isotone, power_map, underlying_map};
use latkit::weak::{partial_to_upper, pointed_extend, restrict_codomain, upper_to_partial, weak_meet_maps};

fn moore(seed: u64, points: usize) -> LatticeRef {
    Arc::new(random_moore_lattice(seed, points, 3, &Limits::default()).unwrap())
}

fn lattice() -> impl Strategy<Value = LatticeRef> {
    (any::<u64>(), 1usize..=3).prop_map(|(seed, n)| moore(seed, n))
}

/// A join map between two random lattices, picked by index from the Hom-set.
fn join_map() -> impl Strategy<Value = LatticeMap> {
    (lattice(), lattice(), any::<prop::sample::Index>()).prop_map(|(a, b, i)| {
        let maps = hom_set(&a, &b, HomClass::Join, &Limits::default()).unwrap();
        maps[i.index(maps.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tables_are_bounds(l in lattice()) {
        l.verify_tables().unwrap();
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
            }
        }
    }

    #[test]
    fn right_adjoint_laws(f in join_map()) {
        let g = right_adjoint(&f).unwrap();
        prop_assert!(check_adjunction(&f, &g).unwrap());
        prop_assert!(g.profile().meets);
        prop_assert_eq!(compose(&f, &compose(&g, &f).unwrap()).unwrap(), f.clone());
        prop_assert_eq!(left_adjoint(&g).unwrap(), f.clone());
        prop_assert_eq!(undualize(&dualize(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn hom_order_is_reversed(a in lattice(), b in lattice(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let maps = hom_set(&a, &b, HomClass::Join, &Limits::default()).unwrap();
        let (f, h) = (&maps[i.index(maps.len())], &maps[j.index(maps.len())]);
        let (fs, hs) = (right_adjoint(f).unwrap(), right_adjoint(h).unwrap());
        prop_assert_eq!(f.pointwise_leq(h), hs.pointwise_leq(&fs));
    }

    #[test]
    fn power_maps_are_coherent_and_based(f in join_map()) {
        let lim = Limits::default();
        let p = power_map(&f, &lim).unwrap();
        prop_assert!(coherence_check(&f, &p).unwrap());
        prop_assert!(is_strongly_isotone(&p));
        prop_assert!(is_based(&p, &lim).unwrap());
        prop_assert_eq!(underlying_map(&p).unwrap(), f);
    }

    #[test]
    fn weak_roundtrips(a in lattice(), b in lattice(), i in any::<prop::sample::Index>()) {
        let gs = weak_meet_maps(&b, &a, &Limits::default()).unwrap();
        let g = &gs[i.index(gs.len())];
        let alpha = restrict_codomain(g).unwrap().alpha;
        let upper = partial_to_upper(&alpha).unwrap();
        prop_assert!(upper == pointed_extend(g).unwrap().upper);
        prop_assert_eq!(upper_to_partial(&upper).unwrap(), alpha);
    }

    #[test]
    fn atomistic_lattices_roundtrip(l in lattice()) {
        prop_assume!(l.is_atomistic());
        prop_assert!(lattice_roundtrip(&l).unwrap().isomorphism);
    }

    #[test]
    fn generated_causal_relations_roundtrip(a in lattice(), b in lattice(), seeds in prop::collection::vec((0usize..64, 0usize..64), 0..3)) {
        let seeds: Vec<(usize, usize)> = seeds.into_iter().map(|(x, y)| (x % a.size(), y % b.size())).collect();
        let r = close_relation(&a, &b, &seeds).unwrap();
        for &(x, y) in &seeds {
            prop_assert!(r.holds(x, y));
        }
        let g = causal_to_map(&r).unwrap();
        prop_assert_eq!(relation_of(&g).unwrap(), r);
    }

    #[test]
    fn product_projections_are_join_maps(a in lattice(), b in lattice()) {
        let p = direct_product(&[a, b], &Limits::default()).unwrap();
        for pr in &p.projections {
            prop_assert!(pr.profile().joins && pr.profile().meets);
            prop_assert!(pr.is_surjective());
        }
    }

    #[test]
    fn written_files_parse_back(f in join_map()) {
        let lim = Limits::default();
        let (a, b) = (f.dom(), f.cod());
        prop_assume!(a.name() != b.name());
        let text = write_lattice(a, None) + &write_lattice(b, None) + &write_map("f", &f) + &write_umap("p", &power_map(&f, &lim).unwrap());
        let ws = Workspace::from_text(&text, &lim).unwrap();
        let back = &ws.maps["f"];
        prop_assert_eq!(back.values(), f.values());
        prop_assert!(find_isomorphism(back.dom(), a).is_some());
        let p = power_map(&f, &lim).unwrap();
        prop_assert_eq!(ws.umaps["p"].images(), p.images());
    }
}
