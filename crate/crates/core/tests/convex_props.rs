use nalgebra::Rotation3;
use nncurv::convex::shapes::{cube, icosphere, simplex};
use nncurv::convex::{
    central_project, gauge_inclusion_eps, hausdorff_distance, minkowski_combine, symmetrize,
    TAU_STEINER,
};
use nncurv::moduli::body_homotopy;
use nncurv::{ConvexBody, Direction, Mat3, Vec3};
use proptest::prelude::*;

fn cloud(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec3>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), n)
        .prop_map(|v| v.into_iter().map(|(x, y, z)| Vec3::new(x, y, z)).collect())
}

fn body() -> impl Strategy<Value = ConvexBody> {
    cloud(5..14).prop_filter_map("degenerate cloud", |p| {
        ConvexBody::from_points(&p).ok().filter(|b| b.dim() == 3)
    })
}

fn orthogonal() -> impl Strategy<Value = Mat3> {
    (-3.2..3.2f64, -1.6..1.6f64, -3.2..3.2f64, any::<bool>()).prop_map(|(a, b, c, flip)| {
        let r = Rotation3::from_euler_angles(a, b, c).into_inner();
        if flip {
            r * Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0))
        } else {
            r
        }
    })
}

#[test]
fn cube_corner_gap() {
    let d = hausdorff_distance(&cube(1.0), &cube(2.0));
    assert!((d - 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn simplex_steiner_matches_quadrature() {
    let s = simplex().steiner();
    let q = nncurv::convex::steiner_quadrature(&simplex(), 6);
    assert!((s - q).norm() < 1e-3, "{s} vs {q}");
}

#[test]
fn rotated_cube_gauge_is_symmetric() {
    let rot = Rotation3::from_euler_angles(0.0, 0.0, std::f64::consts::FRAC_PI_4).into_inner();
    let a = cube(1.0);
    let b = a.rotate(&rot);
    let e1 = gauge_inclusion_eps(&a, &b).unwrap();
    let e2 = gauge_inclusion_eps(&b, &a).unwrap();
    assert!((e1 - e2).abs() < 1e-12);
    assert!((e1 - (2f64.sqrt() - 1.0)).abs() < 1e-9, "{e1}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn steiner_additive(a in body(), b in body()) {
        let sum = minkowski_combine(1.0, &a, 1.0, &b).unwrap();
        let gap = (sum.steiner() - a.steiner() - b.steiner()).norm();
        prop_assert!(gap <= 2.0 * TAU_STEINER, "gap {gap}");
    }

    #[test]
    fn steiner_equivariant(a in body(), q in orthogonal(), t in cloud(1..2)) {
        let moved = a.rotate(&q).translate(&t[0]);
        let gap = (moved.steiner() - (q * a.steiner() + t[0])).norm();
        prop_assert!(gap <= TAU_STEINER, "gap {gap}");
    }

    #[test]
    fn symmetric_bodies_are_centered(a in body()) {
        let sym = minkowski_combine(0.5, &a, 0.5, &a.negate()).unwrap();
        prop_assert!(sym.steiner().norm() <= TAU_STEINER);
        let z = symmetrize(&a, &Direction::z());
        prop_assert!(z.is_reflection_symmetric(&Direction::z()));
    }

    #[test]
    fn hausdorff_is_a_metric(a in body(), b in body(), c in body()) {
        let ab = hausdorff_distance(&a, &b);
        prop_assert_eq!(ab, hausdorff_distance(&b, &a));
        prop_assert!(hausdorff_distance(&a, &a) == 0.0);
        let ac = hausdorff_distance(&a, &c);
        let cb = hausdorff_distance(&c, &b);
        prop_assert!(ab <= ac + cb + 1e-12);
    }

    #[test]
    fn homotopy_continuity(d1 in body(), d2 in body(), t in 0.0..1.0f64, s in 0.0..1.0f64) {
        let ball = icosphere(2, 1.0);
        let (d1, d2) = (d1.centered(), d2.centered());
        let h1 = body_homotopy(t, &d1, &ball).unwrap();
        let h2 = body_homotopy(s, &d2, &ball).unwrap();
        let lhs = hausdorff_distance(&h1, &h2);
        let rhs = (t - s).abs() * (2.0 + d1.diameter() + d2.diameter()) + (1.0 - s) * hausdorff_distance(&d1, &d2);
        prop_assert!(lhs <= rhs + 1e-9, "{lhs} > {rhs}");
    }

    #[test]
    fn central_projection_ignores_scale(a in body(), x in cloud(1..2), lambda in 0.01..50.0f64) {
        let a = a.centered();
        prop_assume!(x[0].norm() > 1e-3 && a.is_centered());
        let p = central_project(&a, &x[0]).unwrap();
        let q = central_project(&a, &(x[0] * lambda)).unwrap();
        prop_assert!((p - q).norm() <= 1e-9 * a.diameter());
    }

    #[test]
    fn gauge_eps_symmetric(a in body(), s in 0.5..1.5f64) {
        let a = a.centered();
        prop_assume!(a.depth(&Vec3::zeros()) > 1e-3);
        let b = minkowski_combine(s, &a, 0.0, &a).unwrap();
        let e1 = gauge_inclusion_eps(&a, &b).unwrap();
        let e2 = gauge_inclusion_eps(&b, &a).unwrap();
        prop_assert!((e1 - e2).abs() < 1e-12);
    }
}
