use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use flipcount::flippability::flippable_set;
use flipcount::generators::gen_random;
use flipcount::geometry::{convex_hull, orientation};
use flipcount::{Point, PointSet, Triangulation};

fn coord() -> impl Strategy<Value = i64> {
    -1_000_000i64..1_000_000
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orientation_is_antisymmetric(p in point(), q in point(), r in point()) {
        let o = orientation(p, q, r);
        prop_assert_eq!(orientation(q, p, r), o.reversed());
        prop_assert_eq!(orientation(q, r, p), o);
        prop_assert_eq!(orientation(r, p, q), o);
    }

    #[test]
    fn hull_is_invariant_under_relabeling(seed in any::<u64>(), n in 3usize..12, shift in 1usize..11) {
        let ps = gen_random(n, seed).unwrap();
        let pts = ps.points().to_vec();
        let k = shift % n;
        let rotated: Vec<Point> = pts[k..].iter().chain(&pts[..k]).copied().collect();
        let original: BTreeSet<Point> = convex_hull(&pts).into_iter().map(|v| pts[v]).collect();
        let relabeled: BTreeSet<Point> = convex_hull(&rotated).into_iter().map(|v| rotated[v]).collect();
        prop_assert_eq!(original, relabeled);
    }

    #[test]
    fn flipping_twice_is_the_identity(seed in any::<u64>(), n in 4usize..11) {
        let ps = Arc::new(gen_random(n, seed).unwrap());
        let t = Triangulation::build_initial(Arc::clone(&ps));
        for e in flippable_set(&t) {
            let once = t.flip(e).unwrap();
            let partner = t.flip_partner(e).unwrap().unwrap();
            prop_assert!(once.contains(partner) && !once.contains(e));
            prop_assert!(once.is_flippable(partner).unwrap());
            let twice = once.flip(partner).unwrap();
            prop_assert_eq!(twice.canonical_key(), t.canonical_key());
            prop_assert_eq!(once.edge_count(), t.edge_count());
        }
    }

    #[test]
    fn point_files_round_trip(seed in any::<u64>(), n in 3usize..15) {
        let ps = gen_random(n, seed).unwrap();
        let back: PointSet = ps.to_point_file().parse().unwrap();
        prop_assert_eq!(back, ps);
    }
}
