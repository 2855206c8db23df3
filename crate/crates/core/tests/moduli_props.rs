use nalgebra::{Matrix2, Rotation3};
use nncurv::convex::hausdorff_distance;
use nncurv::moduli::{
    body_class_check, cd_density_check, cstar_distance, cstar_quotient_distance,
    flat_quotient_distance, flat_quotient_distance_with, interval_contract, lattice_reduce,
    o3_match_distance, structure_invariants, BodyClass, BodyClassRep, ConcaveDensity, DiscCase,
    FlatKind, FlatStructure, LatticeBasis, StripQuotient, Vec2,
};
use nncurv::{ConvexBody, Direction, Vec3};
use proptest::prelude::*;

const GRID: usize = 65;

fn basis() -> impl Strategy<Value = LatticeBasis> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_filter_map(
        "thin lattice",
        |(a, b, c, d)| {
            let (v1, v2) = (Vec2::new(a, b), Vec2::new(c, d));
            if (a * d - b * c).abs() < 0.2 {
                return None;
            }
            LatticeBasis::new(v1, v2).ok()
        },
    )
}

/// Products of elementary integer moves, each with determinant ±1.
fn unimodular() -> impl Strategy<Value = Matrix2<f64>> {
    prop::collection::vec((0..3usize, -2i32..=2), 0..6).prop_map(|moves| {
        moves.into_iter().fold(Matrix2::identity(), |m, (kind, k)| {
            let e = match kind {
                0 => Matrix2::new(0.0, 1.0, 1.0, 0.0),
                1 => Matrix2::new(1.0, k as f64, 0.0, 1.0),
                _ => Matrix2::new(1.0, 0.0, k as f64, 1.0),
            };
            e * m
        })
    })
}

fn concave() -> impl Strategy<Value = ConcaveDensity> {
    prop::collection::vec((0.1..3.0f64, -2.0..2.0f64), 1..4).prop_map(|lines| {
        ConcaveDensity::from_fn(GRID, 2.5, |t| {
            lines
                .iter()
                .map(|&(a, b)| {
                    if b < 0.0 {
                        a - b * (1.0 - t)
                    } else {
                        a + b * t
                    }
                })
                .fold(f64::INFINITY, f64::min)
        })
        .unwrap()
    })
}

fn structure() -> impl Strategy<Value = FlatStructure> {
    (
        0..5usize,
        basis(),
        0.2..3.0f64,
        0.2..3.0f64,
        any::<bool>(),
        0.1..4.0f64,
    )
        .prop_map(|(kind, lat, r, b, neg, a)| {
            match kind {
                0 => FlatStructure::circle(r, a),
                1 => FlatStructure::torus(&lat, a),
                2 => FlatStructure::klein(if neg { -r } else { r }, b, a),
                3 => FlatStructure::mobius(r, b, a),
                _ => FlatStructure::cylinder(r, b, a),
            }
            .unwrap()
        })
}

/// Periodic coordinates range over several periods; the strip coordinate of
/// the Möbius band and the cylinder stays in `[0, 1]`.
fn coords(kind: FlatKind) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, kind.point_dim()).prop_map(move |mut c| {
        match kind {
            FlatKind::Mobius => c[0] = (c[0] + 3.0) / 6.0,
            FlatKind::Cylinder => c[1] = (c[1] + 3.0) / 6.0,
            _ => {}
        }
        c
    })
}

fn solid() -> impl Strategy<Value = ConvexBody> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 5..10).prop_filter_map(
        "flat",
        |p| {
            let pts: Vec<Vec3> = p.into_iter().map(|(x, y, z)| Vec3::new(x, y, z)).collect();
            ConvexBody::from_points(&pts)
                .ok()
                .filter(|b| b.dim() == 3)
                .map(|b| b.centered())
        },
    )
}

#[test]
fn standard_lattice_is_fixed() {
    let b = LatticeBasis::new(Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0)).unwrap();
    assert_eq!(lattice_reduce(&b).unwrap().entries(), [1.0, 0.0, 0.0, 1.0]);
}

#[test]
fn clamp_density_distance() {
    let f = ConcaveDensity::constant(GRID, 2.0, 1.0).unwrap();
    let g = ConcaveDensity::from_fn(GRID, 2.0, |t| 1.0 + 0.5 * (2.0 * t).min(1.0)).unwrap();
    let d = cstar_distance(&f, &g).unwrap();
    assert!(d > 0.0 && d < 2.0);
    assert_eq!(cstar_distance(&f, &f).unwrap(), 0.0);
}

#[test]
fn strip_coordinate_range() {
    let m = FlatStructure::mobius(1.0, 1.0, 1.0).unwrap();
    assert!(flat_quotient_distance(&m, &[1.5, 0.0], &[0.0, 0.0]).is_err());
    let c = FlatStructure::circle(1.0, 1.0).unwrap();
    assert!((flat_quotient_distance(&c, &[0.1], &[7.8]).unwrap() - 0.3).abs() < 1e-12);
}

#[test]
fn collapsed_and_solid_discs() {
    let seg =
        ConvexBody::from_points(&[Vec3::new(0.0, 0.0, -1.0), Vec3::new(0.0, 0.0, 1.0)]).unwrap();
    let v = body_class_check(&BodyClassRep {
        kind: BodyClass::Disc,
        body: seg,
        axis: Some(Direction::z()),
    });
    assert!(v.collapsed && !v.valid);
    assert_eq!(v.case, Some(DiscCase::HalfSegment));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lattice_canonical_form(b in basis(), u in unimodular(), angle in -3.2..3.2f64, flip in any::<bool>()) {
        let rot = Rotation3::from_euler_angles(0.0, 0.0, angle).into_inner();
        let o = Matrix2::new(rot[(0, 0)], rot[(0, 1)], rot[(1, 0)], rot[(1, 1)])
            * if flip { Matrix2::new(1.0, 0.0, 0.0, -1.0) } else { Matrix2::identity() };
        let (v1, v2) = (b.v1, b.v2);
        let w1 = o * (v1 * u[(0, 0)] + v2 * u[(0, 1)]);
        let w2 = o * (v1 * u[(1, 0)] + v2 * u[(1, 1)]);
        let r1 = lattice_reduce(&b).unwrap().entries();
        let r2 = lattice_reduce(&LatticeBasis::new(w1, w2).unwrap()).unwrap().entries();
        for k in 0..4 {
            prop_assert!((r1[k] - r2[k]).abs() <= 1e-9, "{r1:?} vs {r2:?}");
        }
    }

    #[test]
    fn cstar_quotient_pseudometric(f in concave(), g in concave(), h in concave()) {
        let fg = cstar_quotient_distance(&f, &g).unwrap();
        prop_assert_eq!(fg, cstar_quotient_distance(&g, &f).unwrap());
        prop_assert!(fg <= cstar_quotient_distance(&f, &h).unwrap() + cstar_quotient_distance(&h, &g).unwrap() + 1e-12);
        prop_assert_eq!(fg, cstar_quotient_distance(&f.flipped(), &g).unwrap());
        prop_assert_eq!(fg, cstar_quotient_distance(&f, &g.flipped()).unwrap());
        prop_assert_eq!(cstar_quotient_distance(&f, &f.flipped()).unwrap(), 0.0);
    }

    #[test]
    fn contraction_stays_admissible(f in concave(), t in 0.0..1.0f64) {
        prop_assert!(cd_density_check(&f).concave);
        let h = interval_contract(t, &f).unwrap();
        let report = cd_density_check(&h);
        prop_assert!(report.concave && report.positive);
        let start = interval_contract(0.0, &f).unwrap();
        prop_assert_eq!(start.values(), f.values());
        prop_assert!(interval_contract(1.0, &f).unwrap().values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn strip_descriptions_agree(r in 0.1..5.0f64, b in 0.1..5.0f64, a in 0.1..5.0f64, sx in 0.2..5.0f64, st in 0.2..5.0f64, neg in any::<bool>(), twisted in any::<bool>()) {
        let q = StripQuotient { width: r / sx, glide: if neg { -b / st } else { b / st }, sx, st, density: a * sx * st, twisted };
        let inv = structure_invariants(&q.structure().unwrap());
        for (got, want) in inv.iter().zip([a, b, r]) {
            prop_assert!((got - want).abs() <= 1e-12 * want.max(1.0));
        }
    }

    #[test]
    fn flat_metric_axioms((s, pts) in structure().prop_flat_map(|s| {
        let k = s.kind();
        (Just(s), prop::collection::vec(coords(k), 3))
    })) {
        let d = |i: usize, j: usize| flat_quotient_distance(&s, &pts[i], &pts[j]).unwrap();
        prop_assert!(d(0, 0) <= 1e-9);
        prop_assert!((d(0, 1) - d(1, 0)).abs() <= 1e-9);
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
        prop_assert_eq!(d(0, 1), flat_quotient_distance_with(&s, &pts[0], &pts[1], 1).unwrap());
        prop_assert!(d(0, 1) <= s.params().iter().map(|p| p.abs()).sum::<f64>() + 1e-9);
    }

    #[test]
    fn o3_matching_finds_rotations(b in solid(), x in -3.2..3.2f64, y in -1.6..1.6f64, z in -3.2..3.2f64) {
        let rot = Rotation3::from_euler_angles(x, y, z).into_inner();
        let moved = b.rotate(&rot);
        let m = o3_match_distance(&b, &moved);
        prop_assert!(m <= 1e-6 * b.diameter(), "{m}");
        prop_assert!(m <= hausdorff_distance(&b, &moved) + 1e-12);
    }

    #[test]
    fn disc_pairs_get_one_case(b in solid()) {
        let body = nncurv::convex::symmetrize(&b, &Direction::z()).centered();
        let v = body_class_check(&BodyClassRep { kind: BodyClass::Disc, body, axis: Some(Direction::z()) });
        prop_assert!(v.valid, "{:?}", v.failures);
        prop_assert_eq!(v.case, Some(DiscCase::Cap));
    }
}
