use bernoulli_core::geom::{hausdorff, segment_distance, support_excess, DEFAULT_ARC_RES, EPS_GEOM};
use bernoulli_core::{ConvexPolygon, Direction, Point};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use std::f64::consts::{PI, TAU};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, rng_seed: RngSeed::Fixed(0x5_eed0_f9e0), ..ProptestConfig::default() }
}

fn polygon() -> impl Strategy<Value = ConvexPolygon> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 3..40).prop_filter_map("degenerate hull", |pts| {
        let pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        ConvexPolygon::hull(&pts).ok().filter(|p| p.area() > 0.05)
    })
}

fn directions(n: usize) -> impl Iterator<Item = Direction> {
    (0..n).map(move |k| Direction::new(TAU * (k as f64 + 0.37) / n as f64))
}

/// Brute-force Hausdorff distance between densely sampled boundaries.
fn sampled_hausdorff(a: &ConvexPolygon, b: &ConvexPolygon, n: usize) -> f64 {
    let dist_to = |p: Point, poly: &ConvexPolygon| {
        if poly.contains(p) {
            0.0
        } else {
            poly.edges().map(|(s, e)| segment_distance(p, s, e)).fold(f64::MAX, f64::min)
        }
    };
    let one =
        |x: &ConvexPolygon, y: &ConvexPolygon| x.resample(n).into_iter().map(|p| dist_to(p, y)).fold(0.0, f64::max);
    one(a, b).max(one(b, a))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn dilation_adds_radius_to_support(v in polygon(), r in 0.05f64..1.5) {
        let d = v.dilate(r);
        let slack = r * (1.0 - (DEFAULT_ARC_RES / 2.0).cos()) + EPS_GEOM;
        for dir in directions(180) {
            let diff = d.support(dir) - v.support(dir) - r;
            prop_assert!(diff.abs() <= slack, "diff {diff:e}");
        }
        prop_assert!(d.contains_polygon(&v));
    }

    #[test]
    fn minkowski_sum_adds_supports(a in polygon(), b in polygon()) {
        let sum = a.minkowski_sum(&b);
        for dir in directions(180) {
            let diff = sum.support(dir) - a.support(dir) - b.support(dir);
            prop_assert!(diff.abs() <= 1e-12 * (1.0 + sum.diameter()), "diff {diff:e}");
        }
        prop_assert!(sum.extreme_points().len() <= a.extreme_points().len() + b.extreme_points().len());
    }

    #[test]
    fn closing_recovers_the_body(v in polygon(), r in 0.05f64..1.0) {
        let closed = v.dilate(r).erode(r).unwrap();
        prop_assert!(hausdorff(&closed, &v) <= 1e3 * EPS_GEOM);
    }

    #[test]
    fn opening_is_anti_extensive(v in polygon(), frac in 0.05f64..0.9) {
        // Inradius lower bound: erosion by a small fraction of the minimal width is safe.
        let width = directions(360).map(|d| v.support(d) + v.support(d.opposite())).fold(f64::MAX, f64::min);
        let r = frac * width / 6.0;
        if let Ok(e) = v.erode(r) {
            prop_assert!(v.contains_polygon(&e.dilate(r)));
            prop_assert!(v.contains_polygon(&e));
        }
    }

    #[test]
    fn operations_preserve_inclusion(v in polygon(), s in 1.05f64..1.5, r in 0.05f64..0.5) {
        let c = v.centroid();
        let w = ConvexPolygon::new(v.vertices().iter().map(|&p| c + (p - c) * s).collect()).unwrap();
        prop_assert!(w.contains_polygon(&v));
        for dir in directions(90) {
            prop_assert!(v.support(dir) <= w.support(dir) + EPS_GEOM);
        }
        prop_assert!(w.dilate(r).contains_polygon(&v.dilate(r)));
        if let (Ok(ev), Ok(ew)) = (v.erode(r), w.erode(r)) {
            prop_assert!(ew.contains_polygon(&ev));
        }
        prop_assert!(support_excess(&v, &w) <= EPS_GEOM);
    }

    #[test]
    fn facets_minimize_the_linear_functional(v in polygon(), t in 0.0f64..TAU) {
        let n = Direction::new(t);
        let u = n.vector();
        let f = v.facet_of(n);
        let m = v.vertices().iter().map(|p| p.dot(u)).fold(f64::MAX, f64::min);
        for p in [f.start, f.end, f.point_at(0.5)] {
            prop_assert!((p.dot(u) - m).abs() <= 1e-8);
        }
        // Edge normals expose full edges.
        for i in 0..v.len() {
            let e = v.facet_of(Direction::from_vector(v.edge_inner_normal(i)).unwrap());
            prop_assert!((e.length() - v.vertex(i).dist(v.vertex(i + 1))).abs() <= 1e-8);
        }
    }

    #[test]
    fn extreme_points_reconstruct_the_body(v in polygon()) {
        let ext = v.extreme_points();
        let rebuilt = ConvexPolygon::hull(&ext).unwrap();
        prop_assert!(hausdorff(&rebuilt, &v) <= EPS_GEOM);
        // Every vertex of a polygon is exposed.
        prop_assert_eq!(v.exposed_points_default().len(), ext.len());
    }

    #[test]
    fn hausdorff_matches_dense_sampling(a in polygon(), b in polygon()) {
        let exact = hausdorff(&a, &b);
        let sampled = sampled_hausdorff(&a, &b, 4000);
        prop_assert!(sampled <= exact + 1e-9);
        prop_assert!(exact - sampled <= 1e-2 * (1.0 + exact));
        prop_assert!((hausdorff(&b, &a) - exact).abs() <= 1e-12);
    }
}

#[test]
fn redundant_midpoint_is_not_extreme() {
    let sq = ConvexPolygon::new(vec![
        Point::new(-1.0, -1.0),
        Point::new(0.0, -1.0),
        Point::new(1.0, -1.0),
        Point::new(1.0, 1.0),
        Point::new(-1.0, 1.0),
    ])
    .unwrap();
    assert_eq!(sq.len(), 5);
    let ext = sq.extreme_points();
    assert_eq!(ext.len(), 4);
    assert!(!ext.contains(&Point::new(0.0, -1.0)));
    assert!(!sq.exposed_points_default().contains(&Point::new(0.0, -1.0)));
}

/// Convex hull of a fine disk approximation and the external point `(2, 0)`.
fn disk_point_hull(n: usize) -> ConvexPolygon {
    let mut pts: Vec<Point> =
        (0..n).map(|k| Point::new((TAU * k as f64 / n as f64).cos(), (TAU * k as f64 / n as f64).sin())).collect();
    pts.push(Point::new(2.0, 0.0));
    ConvexPolygon::hull(&pts).unwrap()
}

#[test]
fn disk_point_hull_extreme_points() {
    let n = 64;
    let body = disk_point_hull(n);
    let ext = body.extreme_points();
    assert!(ext.contains(&Point::new(2.0, 0.0)));
    // Tangent lines from (2, 0) touch the unit circle at angle ±π/3.
    for p in &ext {
        if *p == Point::new(2.0, 0.0) {
            continue;
        }
        let angle = p.y.atan2(p.x).abs();
        assert!(angle >= PI / 3.0 - 1e-12, "arc vertex inside the tangency chord: {p:?}");
    }
    let expected = (0..n)
        .filter(|k| {
            let t = TAU * *k as f64 / n as f64;
            let t = if t > PI { TAU - t } else { t };
            t > PI / 3.0 + 1e-12
        })
        .count();
    // Vertices strictly beyond the tangency angles plus the apex; a vertex exactly at the
    // tangency (when 6 divides n) is collinear with the apex and dropped by the hull.
    assert!(ext.len() == expected + 1 || ext.len() == expected + 3);
}

#[test]
fn straszewicz_distance_shrinks_with_resolution() {
    let tangency = [Point::new(0.5, 3f64.sqrt() / 2.0), Point::new(0.5, -(3f64.sqrt()) / 2.0)];
    let mut prev = f64::MAX;
    for n in [64, 256, 1024] {
        let exposed = disk_point_hull(n).exposed_points_default();
        let d =
            tangency.iter().map(|t| exposed.iter().map(|p| p.dist(*t)).fold(f64::MAX, f64::min)).fold(0.0, f64::max);
        assert!(d <= TAU * 2.0 / n as f64, "N = {n}: {d}");
        assert!(d < prev);
        prev = d;
    }
}

#[test]
fn identical_and_nested_squares() {
    let a = ConvexPolygon::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap();
    let b = ConvexPolygon::rectangle(-2.0, -2.0, 2.0, 2.0).unwrap();
    assert_eq!(hausdorff(&a, &a), 0.0);
    assert!((hausdorff(&a, &b) - 2f64.sqrt()).abs() < 1e-12);
    assert!((sampled_hausdorff(&a, &b, 8000) - 2f64.sqrt()).abs() < 1e-3);
}
