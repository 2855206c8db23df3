use std::f64::consts::PI;

use nalgebra::Rotation3;
use nncurv::approx::{
    align_spans, approx_boundaries, approx_doubles, approx_segments, approx_to_segment,
};
use nncurv::convex::shapes::{cuboid, segment};
use nncurv::intrinsic::Resolution;
use nncurv::{ConvexBody, Direction, Mat3, Vec3};
use proptest::prelude::*;

const RES: Resolution = Resolution {
    mesh_level: 4,
    sample_level: 1,
    boundary_res: 48,
};

fn cloud(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec3>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), n)
        .prop_map(|v| v.into_iter().map(|(x, y, z)| Vec3::new(x, y, z)).collect())
}

fn symmetric_solid() -> impl Strategy<Value = ConvexBody> {
    cloud(3..7).prop_filter_map("flat", |p| {
        let mut pts = p.clone();
        pts.extend(p.iter().map(|v| -v));
        ConvexBody::from_points(&pts)
            .ok()
            .filter(|b| b.dim() == 3 && b.halfspaces().iter().all(|h| h.offset > 0.1))
    })
}

fn solid() -> impl Strategy<Value = ConvexBody> {
    cloud(5..9).prop_filter_map("flat", |p| {
        ConvexBody::from_points(&p)
            .ok()
            .filter(|b| b.dim() == 3)
            .map(|b| b.centered())
    })
}

#[test]
fn segment_scaling() {
    let l = segment(-Vec3::x(), Vec3::x());
    let (c, cert) = approx_segments(&l, &l.scale(1.2), &RES).unwrap();
    assert!((cert.eps - 0.2).abs() < 1e-12);
    assert!((cert.nu - 1.76).abs() < 1e-12);
    assert!((cert.dis_f - 0.4).abs() < 1e-9);
    let mid = c
        .source
        .find(&nncurv::intrinsic::Site::at(Vec3::zeros()), 1e-12)
        .unwrap();
    assert!(c.target.point(c.forward[mid]).pos.norm() < 1e-12);
}

#[test]
fn thin_rectangle_to_segment() {
    let (_, cert) = approx_to_segment(&cuboid(1.0, 0.05, 0.0), &Direction::x(), &RES).unwrap();
    assert!((cert.nu - 4.0 * cert.eps).abs() < 1e-12);
    assert!(cert.holds());
    assert!(!cert.backward_certified);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn scaled_boundaries_stay_below_bound(b in symmetric_solid(), lambda in 1.0..1.5f64) {
        let (_, cert) = approx_boundaries(&b, &b.scale(lambda), &RES).unwrap();
        prop_assert!(cert.holds(), "{cert:?}");
        prop_assert!(cert.equivariant);
        prop_assert!(cert.equiv_defect.unwrap() <= cert.allowance);
        let loose = (lambda - 1.0) * PI * b.diameter() / 2.0 + cert.allowance;
        prop_assert!(cert.dis_f <= loose);
        prop_assert!(cert.dis_f <= cert.nu + cert.allowance);
    }

    #[test]
    fn asymmetric_inputs_never_flagged(b in solid(), lambda in 1.0..1.3f64) {
        prop_assume!(!b.is_symmetric());
        prop_assume!(b.halfspaces().iter().all(|h| h.offset > 0.05));
        let (_, cert) = approx_boundaries(&b, &b.scale(lambda), &RES).unwrap();
        prop_assert!(!cert.equivariant);
        prop_assert!(cert.equiv_defect.is_none());
    }

    #[test]
    fn scaled_doubles(pts in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3..6), lambda in 1.0..1.2f64) {
        let mut v: Vec<Vec3> = pts.iter().map(|&(x, y)| Vec3::new(x, y, 0.0)).collect();
        v.extend(pts.iter().map(|&(x, y)| Vec3::new(-x, -y, 0.0)));
        let k = ConvexBody::from_points(&v).unwrap();
        prop_assume!(k.dim() == 2 && k.halfspaces().iter().all(|h| h.offset > 0.1));
        let (_, cert) = approx_doubles(&k, &k.scale(lambda), &RES).unwrap();
        prop_assert!(cert.holds(), "{cert:?}");
        prop_assert!(cert.equivariant);
    }

    #[test]
    fn alignment_is_orthogonal(b in solid(), a in -0.2..0.2f64, c in -0.2..0.2f64) {
        let rot = Rotation3::from_euler_angles(a, 0.0, c).into_inner();
        let target = b.rotate(&rot);
        let phi = align_spans(&b, &target, None).unwrap();
        prop_assert!((phi.transpose() * phi - Mat3::identity()).norm() <= 1e-12);
        prop_assert!((phi.determinant().abs() - 1.0).abs() <= 1e-12);
    }
}
