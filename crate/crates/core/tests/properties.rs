use std::f64::consts::{FRAC_PI_3, PI};

use approx::assert_relative_eq;
use proptest::prelude::*;
use udgplanar::augmentation::{algorithm2, algorithm3, compose_blocks};
use udgplanar::crossing::{algorithm1, classify, tie_length_bound, CrossingKind};
use udgplanar::fixtures::{gen_random, Precondition};
use udgplanar::geometry::{angle_at, orientation, properly_cross};
use udgplanar::oracle::exists_planar_subgraph;
use udgplanar::spanning::{euclidean_mst, nearest_neighbor_forest, snn_edges};
use udgplanar::udg::{build_udg, min_radius_for};
use udgplanar::{audit, Point, PointSet, Property, Segment};

fn point() -> impl Strategy<Value = Point> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point::new(x, y))
}

fn cloud(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((0.0..4.0f64, 0.0..4.0f64), 3..max)
        .prop_filter_map("duplicate points", |c| PointSet::from_coords(&c).ok())
}

proptest! {
    #[test]
    fn orientation_flips_with_argument_swap(p in point(), q in point(), r in point()) {
        prop_assert_eq!(orientation(p, q, r), orientation(p, r, q).reversed());
        prop_assert_eq!(orientation(p, q, r), orientation(q, r, p));
    }

    #[test]
    fn crossing_is_symmetric(ps in cloud(5)) {
        prop_assume!(ps.len() >= 4);
        let (s, t) = (Segment::new(0, 1), Segment::new(2, 3));
        prop_assert_eq!(properly_cross(s, t, &ps), properly_cross(t, s, &ps));
        prop_assert!(!properly_cross(s, Segment::new(1, 2), &ps));
    }

    #[test]
    fn angle_is_symmetric_and_scale_free(v in point(), a in point(), b in point(), k in 0.01..100.0f64) {
        prop_assume!(v.dist(&a) > 1e-6 && v.dist(&b) > 1e-6);
        let th = angle_at(v, a, b).unwrap();
        prop_assert!((0.0..=PI).contains(&th));
        prop_assert_eq!(th, angle_at(v, b, a).unwrap());
        let scale = |p: Point| Point::new(v.x + k * (p.x - v.x), v.y + k * (p.y - v.y));
        prop_assert!((angle_at(v, scale(a), scale(b)).unwrap() - th).abs() < 1e-9);
    }

    #[test]
    fn triangle_inequality(a in point(), b in point(), c in point()) {
        prop_assert!(a.dist(&c) <= a.dist(&b) + b.dist(&c) + 1e-12);
    }

    #[test]
    fn unit_disk_graph_grows_with_radius(ps in cloud(25), r in 0.1..2.0f64, extra in 0.0..1.0f64) {
        let small = build_udg(&ps, r).unwrap();
        let large = build_udg(&ps, r + extra).unwrap();
        prop_assert!(small.segments().iter().all(|&s| large.contains(s)));
    }

    #[test]
    fn minimum_radius_is_tight(ps in cloud(12)) {
        for prop in [Property::Connected, Property::TwoEdgeConnected] {
            let r = min_radius_for(&ps, prop).unwrap();
            prop_assert!(prop.holds_for(&build_udg(&ps, r).unwrap()));
            prop_assert!(!prop.holds_for(&build_udg(&ps, r * (1.0 - 1e-6)).unwrap()));
        }
    }

    #[test]
    fn tie_bound_grows_with_angle(a in FRAC_PI_3..PI, b in FRAC_PI_3..PI) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(tie_length_bound(lo).unwrap() <= tie_length_bound(hi).unwrap() + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn forest_structure(seed in 0u64..10_000, n in 5usize..60) {
        let ps = gen_random(n, seed, Precondition::ConnectedMinDeg2).unwrap();
        let nng = nearest_neighbor_forest(&ps, 1.0).unwrap();
        let mst = euclidean_mst(&ps, 1.0).unwrap();
        prop_assert_eq!(mst.edges().len(), n - 1);
        prop_assert!(nng.edges().iter().all(|&s| mst.contains(s)));
        for f in [&nng, &mst] {
            prop_assert!(f.coloring_is_proper());
        }
        for v in 0..n {
            let nb = mst.neighbors(v);
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    prop_assert!(ps.angle_at(v, a, b) >= FRAC_PI_3 - 1e-9);
                }
            }
        }
        for e in snn_edges(&ps, &nng).unwrap() {
            let first = nng.neighbors(e.tail)[0];
            prop_assert!(nng.is_leaf(e.tail));
            prop_assert!(e.head != first && e.length <= 1.0 + 1e-9);
            prop_assert!(ps.dist(e.tail, first) <= e.length + 1e-9);
            let closer = (0..n)
                .filter(|&w| w != e.tail && w != first && w != e.head)
                .filter(|&w| ps.dist(e.tail, w) < e.length - 1e-9)
                .count();
            prop_assert_eq!(closer, 0);
        }
    }

    #[test]
    fn classified_crossings_meet_their_definitions(ps in cloud(9)) {
        let segs: Vec<Segment> = ps.pairs_by_distance().into_iter().map(|(_, s)| s).collect();
        for (i, &s) in segs.iter().enumerate() {
            for &t in &segs[i + 1..] {
                let Some(rec) = classify(s, t, &ps) else { continue };
                prop_assert!(properly_cross(s, t, &ps));
                match rec.kind {
                    CrossingKind::Tie { tip, v, x, y } => {
                        let d = ps.dist(tip, v);
                        prop_assert!(ps.dist(tip, x) > d && ps.dist(tip, y) > d);
                        prop_assert!(ps.dist(tip, x) > ps.dist(x, y));
                    }
                    CrossingKind::Bow { u, v, x, y } => {
                        prop_assert!(ps.dist(u, y) <= ps.dist(u, v) && ps.dist(u, v) < ps.dist(u, x));
                        prop_assert!(ps.dist(v, x) <= ps.dist(x, y) && ps.dist(x, y) < ps.dist(u, x));
                    }
                    CrossingKind::Other => {}
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn min_degree_two_construction(seed in 0u64..100_000, n in 5usize..80) {
        let ps = gen_random(n, seed, Precondition::MinDeg2).unwrap();
        let rep = audit(&algorithm1(&ps).unwrap());
        prop_assert!(rep.is_planar && rep.min_degree >= 2);
        prop_assert!(rep.max_edge_length <= 2.0 + 1e-9);
    }

    #[test]
    fn connected_construction(seed in 0u64..100_000, n in 5usize..80) {
        let ps = gen_random(n, seed, Precondition::ConnectedMinDeg2).unwrap();
        let rep = audit(&algorithm2(&ps).unwrap());
        prop_assert!(rep.is_planar && rep.is_two_edge_connected);
        prop_assert!(rep.max_edge_length <= 5f64.sqrt() + 1e-9);
    }

    #[test]
    fn biconnected_construction(seed in 0u64..100_000, n in 5usize..80) {
        let ps = gen_random(n, seed, Precondition::TwoVertexConnected).unwrap();
        let rep = audit(&algorithm3(&ps).unwrap());
        prop_assert!(rep.is_planar && rep.is_two_edge_connected);
        prop_assert!(rep.max_edge_length <= 2.0 + 1e-9);
    }

    #[test]
    fn block_construction(seed in 0u64..100_000, n in 5usize..80) {
        let ps = gen_random(n, seed, Precondition::TwoEdgeConnected).unwrap();
        let rep = audit(&compose_blocks(&ps).unwrap());
        prop_assert!(rep.is_planar && rep.is_two_edge_connected);
        prop_assert!(rep.max_edge_length <= 2.0 + 1e-9);
    }

    #[test]
    fn oracle_is_monotone_and_witnessed(seed in 0u64..100_000, n in 4usize..8) {
        let ps = gen_random(n, seed, Precondition::TwoEdgeConnected).unwrap();
        let mut seen = false;
        for r in [1.0, 1.3, 1.7] {
            let found = exists_planar_subgraph(&ps, r, Property::TwoEdgeConnected).unwrap();
            prop_assert!(!seen || found.is_some());
            if let Some(w) = found {
                seen = true;
                let rep = audit(&w);
                prop_assert!(rep.is_planar && rep.is_two_edge_connected);
                prop_assert!(rep.max_edge_length <= r + 1e-9);
            }
        }
    }
}

#[test]
fn tie_bound_reference_values() {
    assert_relative_eq!(tie_length_bound(PI).unwrap(), 5f64.sqrt(), epsilon = 1e-12);
    assert_relative_eq!(tie_length_bound(5.0 * PI / 6.0).unwrap(), 1.9318516525781366, epsilon = 1e-12);
    assert!(tie_length_bound(0.5).is_err());
}
