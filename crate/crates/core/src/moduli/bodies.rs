//! Convex bodies representing structures on the sphere, the projective plane
//! and the disc.

use nalgebra::{Rotation3, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convex::{
    hausdorff_distance, minkowski_combine, ConvexBody, Direction, Mat3, Vec3, TAU_GEOM, TAU_SYM,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyClass {
    Sphere,
    Rp2,
    Disc,
}

#[derive(Clone, Debug)]
pub struct BodyClassRep {
    pub kind: BodyClass,
    pub body: ConvexBody,
    pub axis: Option<Direction>,
}

/// Which realization a disc pair `(D, α)` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiscCase {
    /// Solid body: the cap `∂D ∩ {⟨α,x⟩ >= 0}`.
    #[serde(rename = "i")]
    Cap,
    /// `α ⊥ Span(D)`: the flat body itself.
    #[serde(rename = "ii")]
    Flat,
    /// Planar body with `α` in its span: half of the double.
    #[serde(rename = "iii")]
    HalfDouble,
    /// Segment along `α`: the half segment.
    #[serde(rename = "iv")]
    HalfSegment,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub valid: bool,
    /// Dimension below two.
    pub collapsed: bool,
    pub case: Option<DiscCase>,
    pub failures: Vec<String>,
}

/// Checks membership in the class: dimension two or three, Steiner point at
/// the origin, `D = -D` for the projective plane, and for the disc
/// `r_α(D) = D` with `α` in `Span(D)` or orthogonal to it.
pub fn body_class_check(rep: &BodyClassRep) -> ClassVerdict {
    let d = &rep.body;
    let tol = TAU_SYM * d.diameter() + TAU_GEOM;
    let mut failures = Vec::new();
    let collapsed = d.dim() < 2;
    if collapsed {
        failures.push(format!("collapsed: dimension {}", d.dim()));
    }
    if !d.is_centered() {
        failures.push(format!(
            "steiner point at distance {:.3e} from the origin",
            d.steiner().norm()
        ));
    }
    let mut case = None;
    match rep.kind {
        BodyClass::Sphere => {}
        BodyClass::Rp2 => {
            let defect = d.symmetry_defect();
            if defect > tol {
                failures.push(format!("d_H(D, -D) = {defect:.3e}"));
            }
        }
        BodyClass::Disc => match &rep.axis {
            None => failures.push("disc needs an axis".into()),
            Some(alpha) => {
                if !d.is_reflection_symmetric(alpha) {
                    failures.push("body is not symmetric under the reflection".into());
                }
                let a = alpha.vec();
                let out = d.span_distance(&a);
                let in_span = out <= 1e-7;
                let orthogonal = d
                    .span_basis()
                    .iter()
                    .take(d.dim())
                    .all(|b| b.dot(&a).abs() <= 1e-7);
                case = match (d.dim(), in_span, orthogonal) {
                    (3, _, _) => Some(DiscCase::Cap),
                    (_, _, true) => Some(DiscCase::Flat),
                    (2, true, _) => Some(DiscCase::HalfDouble),
                    (1, true, _) => Some(DiscCase::HalfSegment),
                    _ => {
                        failures.push("axis neither in the span nor orthogonal to it".into());
                        None
                    }
                };
            }
        },
    }
    ClassVerdict {
        valid: failures.is_empty(),
        collapsed,
        case,
        failures,
    }
}

/// `t·B + (1 - t)·D` with `B` standing for the unit ball.
pub fn body_homotopy(t: f64, body: &ConvexBody, ball: &ConvexBody) -> Result<ConvexBody> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterRange(format!("t = {t} outside [0, 1]")));
    }
    if t == 0.0 {
        return Ok(body.clone());
    }
    if t == 1.0 {
        return Ok(ball.clone());
    }
    minkowski_combine(t, ball, 1.0 - t, body)
}

fn inertia_frame(body: &ConvexBody) -> Mat3 {
    let mut m = Mat3::zeros();
    for v in body.vertices() {
        m += v * v.transpose();
    }
    let eig = SymmetricEigen::new(m);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    Mat3::from_columns(&[
        eig.eigenvectors.column(order[0]),
        eig.eigenvectors.column(order[1]),
        eig.eigenvectors.column(order[2]),
    ])
}

fn signed_permutations() -> Vec<Mat3> {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::with_capacity(48);
    for p in perms {
        for s in 0..8 {
            let mut m = Mat3::zeros();
            for (row, &col) in p.iter().enumerate() {
                m[(row, col)] = if s >> row & 1 == 1 { -1.0 } else { 1.0 };
            }
            out.push(m);
        }
    }
    out
}

/// Upper bound for `min_φ d_H(D1, φ D2)` over orthogonal `φ`.
///
/// Candidates are the identity and the maps taking the principal axes of the
/// vertex second moment of `D2` to those of `D1` under each of the 48 signed
/// permutations; the best one is refined by coordinate descent over small
/// rotations. Near-degenerate moments make the axes arbitrary and the bound
/// may then be loose.
pub fn o3_match_distance(d1: &ConvexBody, d2: &ConvexBody) -> f64 {
    let e1 = inertia_frame(d1);
    let e2 = inertia_frame(d2);
    let mut candidates = vec![Mat3::identity()];
    candidates.extend(
        signed_permutations()
            .into_iter()
            .map(|p| e1 * p * e2.transpose()),
    );
    let cost = |phi: &Mat3| hausdorff_distance(d1, &d2.rotate(phi));
    let scores: Vec<f64> = candidates.par_iter().map(cost).collect();
    let (mut bi, mut best) = (0, scores[0]);
    for (i, &s) in scores.iter().enumerate() {
        if s < best {
            bi = i;
            best = s;
        }
    }
    let mut phi = candidates[bi];
    let mut step = 0.05;
    let axes = [Vec3::x(), Vec3::y(), Vec3::z()];
    while step > 1e-7 && best > 0.0 {
        let mut improved = false;
        for ax in &axes {
            for sgn in [1.0, -1.0] {
                let r = Rotation3::from_scaled_axis(ax * (sgn * step)).into_inner();
                let trial = r * phi;
                let s = cost(&trial);
                if s < best {
                    best = s;
                    phi = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::shapes::{cube, cuboid, segment};

    fn rep(kind: BodyClass, body: ConvexBody, axis: Option<Direction>) -> ClassVerdict {
        body_class_check(&BodyClassRep { kind, body, axis })
    }

    #[test]
    fn disc_cases() {
        let v = rep(BodyClass::Disc, cube(1.0), Some(Direction::z()));
        assert!(v.valid);
        assert_eq!(v.case, Some(DiscCase::Cap));
        let sq = cuboid(1.0, 1.0, 0.0);
        assert_eq!(
            rep(BodyClass::Disc, sq.clone(), Some(Direction::z())).case,
            Some(DiscCase::Flat)
        );
        let v = rep(BodyClass::Disc, sq.clone(), Some(Direction::x()));
        assert!(v.valid);
        assert_eq!(v.case, Some(DiscCase::HalfDouble));
        let tilted = Direction::new(Vec3::new(1.0, 0.0, 1.0)).unwrap();
        assert!(!rep(BodyClass::Disc, sq, Some(tilted)).valid);
        let seg = segment(Vec3::new(0.0, 0.0, -1.0), Vec3::new(0.0, 0.0, 1.0));
        let v = rep(BodyClass::Disc, seg, Some(Direction::z()));
        assert!(v.collapsed && !v.valid);
        assert_eq!(v.case, Some(DiscCase::HalfSegment));
    }

    #[test]
    fn sphere_and_projective() {
        assert!(rep(BodyClass::Sphere, cube(1.0), None).valid);
        assert!(!rep(BodyClass::Sphere, cube(1.0).translate(&Vec3::x()), None).valid);
        assert!(rep(BodyClass::Rp2, cube(1.0), None).valid);
        let wedge = ConvexBody::from_points(&[
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(-0.5, 0.8, 0.0),
            Vec3::new(-0.5, -0.8, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ])
        .unwrap()
        .centered();
        assert!(rep(BodyClass::Sphere, wedge.clone(), None).valid);
        assert!(!rep(BodyClass::Rp2, wedge, None).valid);
    }

    #[test]
    fn matching() {
        let b = cuboid(1.0, 0.6, 0.3);
        assert_eq!(o3_match_distance(&b, &b), 0.0);
        let r = Rotation3::from_euler_angles(0.3, -0.7, 1.1).into_inner();
        assert!(o3_match_distance(&b, &b.rotate(&r)) <= 1e-6 * b.diameter());
        let d = o3_match_distance(&cube(1.0), &cube(2.0));
        assert!((d - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn homotopy_endpoints() {
        let ball = crate::convex::shapes::icosphere(1, 1.0);
        let c = cube(0.5);
        assert_eq!(
            hausdorff_distance(&body_homotopy(0.0, &c, &ball).unwrap(), &c),
            0.0
        );
        assert_eq!(
            hausdorff_distance(&body_homotopy(1.0, &c, &ball).unwrap(), &ball),
            0.0
        );
        assert!(body_homotopy(-0.1, &c, &ball).is_err());
    }
}
