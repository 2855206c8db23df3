use std::f64::consts::PI;

use nncurv::convex::shapes::{cube, regular_polygon};
use nncurv::convex::symmetrize;
use nncurv::intrinsic::{
    double_metric, envelopes, realize_disc, realize_sphere, sheet_swap, MetricSample, Resolution,
    SheetTag, Site, Space,
};
use nncurv::{ConvexBody, Direction, Vec3};
use proptest::prelude::*;

const RES: Resolution = Resolution {
    mesh_level: 3,
    sample_level: 1,
    boundary_res: 48,
};

fn solid() -> impl Strategy<Value = ConvexBody> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 5..12).prop_filter_map(
        "flat",
        |p| {
            let pts: Vec<Vec3> = p.into_iter().map(|(x, y, z)| Vec3::new(x, y, z)).collect();
            ConvexBody::from_points(&pts).ok().filter(|b| b.dim() == 3)
        },
    )
}

fn polygon() -> impl Strategy<Value = ConvexBody> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3..10).prop_filter_map("collinear", |p| {
        let pts: Vec<Vec3> = p.into_iter().map(|(x, y)| Vec3::new(x, y, 0.0)).collect();
        ConvexBody::from_points(&pts).ok().filter(|b| b.dim() == 2)
    })
}

fn any_body() -> impl Strategy<Value = ConvexBody> {
    (
        1usize..4,
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 6..10),
    )
        .prop_filter_map("degenerate", |(dim, p)| {
            let pts: Vec<Vec3> = p
                .into_iter()
                .map(|(x, y, z)| match dim {
                    1 => Vec3::new(x, 0.0, 0.0),
                    2 => Vec3::new(x, y, 0.0),
                    _ => Vec3::new(x, y, z),
                })
                .collect();
            ConvexBody::from_points(&pts)
                .ok()
                .filter(|b| b.dim() == dim)
        })
}

fn assert_metric(s: &MetricSample) {
    assert!(
        s.metric_defect() <= s.tau_tri(),
        "defect {}",
        s.metric_defect()
    );
}

#[test]
fn simplex_envelopes() {
    let e = envelopes(
        &nncurv::convex::shapes::simplex(),
        &Direction::z(),
        &Vec3::new(0.25, 0.25, 0.0),
    )
    .unwrap();
    assert!(e.phi1.abs() < 1e-12 && (e.phi2 - 0.5).abs() < 1e-12);
}

#[test]
fn square_cross_sheet() {
    let sq = ConvexBody::from_points(&[
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(1.0, 1.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
    ])
    .unwrap();
    let p = Vec3::new(0.25, 0.5, 0.0);
    let s = double_metric(
        &sq,
        &[Site::on(p, SheetTag::Sheet1), Site::on(p, SheetTag::Sheet2)],
    )
    .unwrap();
    assert!((s.d(0, 1) - 0.5).abs() < 1e-12);
}

#[test]
fn half_disc_center_crossing() {
    let disc = regular_polygon(64, 1.0);
    let half = Space::disc(&disc, &Direction::x()).unwrap();
    let c = Vec3::new(0.5, 0.0, 0.0);
    let s = half
        .sample(
            &[Site::on(c, SheetTag::Sheet1), Site::on(c, SheetTag::Sheet2)],
            &Resolution::default(),
        )
        .unwrap();
    assert!((s.d(0, 1) - 1.0).abs() < 1e-2, "{}", s.d(0, 1));
    assert!(realize_disc(&disc, &Direction::x(), &Resolution::default()).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn surface_metric_axioms(b in solid()) {
        let s = realize_sphere(&b, &RES).unwrap();
        assert_metric(&s);
        for i in 0..s.len() {
            for j in 0..s.len() {
                let e = (s.point(i).pos - s.point(j).pos).norm();
                prop_assert!(s.d(i, j) >= e - 1e-9);
            }
        }
    }

    #[test]
    fn collapsing_bound(b in any_body()) {
        let s = realize_sphere(&b, &RES).unwrap();
        assert_metric(&s);
        prop_assert!(s.diameter() <= PI * b.diameter() * 1.02 + 1e-9);
    }

    #[test]
    fn double_restricts_to_euclidean(k in polygon()) {
        let s = realize_sphere(&k, &RES).unwrap();
        assert_metric(&s);
        for i in 0..s.len() {
            for j in 0..s.len() {
                let (p, q) = (s.point(i), s.point(j));
                if p.sheet == q.sheet || p.sheet == Some(SheetTag::Boundary) || q.sheet == Some(SheetTag::Boundary) {
                    prop_assert_eq!(s.d(i, j), (p.pos - q.pos).norm());
                }
            }
        }
        let swap = sheet_swap(&s).unwrap();
        for i in 0..s.len() {
            prop_assert_eq!(swap[swap[i]], i);
            for j in 0..s.len() {
                prop_assert!((s.d(swap[i], swap[j]) - s.d(i, j)).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn cap_paths_are_longer(b in solid()) {
        let b = symmetrize(&b.centered(), &Direction::z());
        let cap = realize_disc(&b, &Direction::z(), &RES).unwrap();
        assert_metric(&cap);
        let sites: Vec<Site> = cap.points().to_vec();
        let full = Space::Surface(b.clone()).sample(&sites, &RES).unwrap();
        for i in 0..cap.len() {
            for j in 0..cap.len() {
                prop_assert!(cap.d(i, j) >= full.d(i, j) - 1e-9);
            }
        }
    }
}

#[test]
fn cube_geodesics_settle() {
    let sites = [
        Vec3::new(0.0, 0.0, 1.0),
        Vec3::new(0.0, 0.0, -1.0),
        Vec3::new(1.0, 1.0, 1.0),
        Vec3::new(-1.0, -1.0, -1.0),
    ];
    let s = nncurv::intrinsic::boundary_metric(&cube(1.0), 4, &sites).unwrap();
    assert!((s.d(0, 1) - 4.0).abs() < 0.08);
    assert!((s.d(2, 3) - 20f64.sqrt()).abs() < 0.02 * 20f64.sqrt());
}
