use super::{ConvexBody, Direction, Subspace, Vec3};
use crate::error::{Error, Result};

/// Exact Hausdorff distance. The distance to a convex set is a convex
/// function, so each one-sided term is attained at a vertex.
pub fn hausdorff_distance(a: &ConvexBody, b: &ConvexBody) -> f64 {
    let ab = a
        .vertices()
        .iter()
        .map(|v| b.distance(v))
        .fold(0.0, f64::max);
    let ba = b
        .vertices()
        .iter()
        .map(|v| a.distance(v))
        .fold(0.0, f64::max);
    ab.max(ba)
}

/// `aA + bB` as the hull of all scaled vertex sums.
pub fn minkowski_combine(
    a: f64,
    body_a: &ConvexBody,
    b: f64,
    body_b: &ConvexBody,
) -> Result<ConvexBody> {
    if a < 0.0 || b < 0.0 || a.is_nan() || b.is_nan() {
        return Err(Error::NegativeScale);
    }
    let mut pts = Vec::with_capacity(body_a.vertices().len() * body_b.vertices().len());
    for u in body_a.vertices() {
        for w in body_b.vertices() {
            pts.push(u * a + w * b);
        }
    }
    ConvexBody::from_points(&pts)
}

/// Vertex-wise `r_α(x) = x - 2⟨α,x⟩α`.
pub fn reflect(body: &ConvexBody, alpha: &Direction) -> ConvexBody {
    let a = alpha.vec();
    let r = super::Mat3::identity() - a * a.transpose() * 2.0;
    body.rotate(&r)
}

/// `D^α = (D + r_α D) / 2`.
pub fn symmetrize(body: &ConvexBody, alpha: &Direction) -> ConvexBody {
    minkowski_combine(0.5, body, 0.5, &reflect(body, alpha)).expect("nonnegative weights")
}

/// The unique boundary point of a centered body on the ray through `x`.
pub fn central_project(body: &ConvexBody, x: &Vec3) -> Result<Vec3> {
    if !body.is_centered() {
        return Err(Error::NotCentered);
    }
    if x.norm() == 0.0 {
        return Err(Error::RayUndefined);
    }
    let q = body.gauge(x)?;
    if q <= 0.0 {
        return Err(Error::RayUndefined);
    }
    Ok(x / q)
}

/// What to project onto.
#[derive(Clone, Copy, Debug)]
pub enum ProjectTarget<'a> {
    Subspace(Subspace),
    Body(&'a ConvexBody),
}

/// Nearest point of the target to `x`.
pub fn ortho_project(target: ProjectTarget<'_>, x: &Vec3) -> Vec3 {
    match target {
        ProjectTarget::Subspace(s) => s.project(x),
        ProjectTarget::Body(b) => b.nearest_point(x),
    }
}

/// Image of a whole body under orthogonal projection onto a subspace.
pub fn project_body(body: &ConvexBody, target: &Subspace) -> ConvexBody {
    let pts: Vec<Vec3> = body.vertices().iter().map(|v| target.project(v)).collect();
    ConvexBody::from_points(&pts).expect("projection of a nonempty body")
}

/// Smallest `ε ≥ 0` with `(1-ε)A ⊆ B ⊆ (1+ε)A` and the same with `A`, `B`
/// exchanged. Values below 1e-12 are reported as 0.
///
/// With `m = max_{v ∈ vert B} q_A(v)`, `B ⊆ (1+ε)A` iff `ε ≥ m - 1` and
/// `(1-ε)B ⊆ A` iff `ε ≥ 1 - 1/m`; the first dominates, so only the two
/// maximal gauge ratios matter.
pub fn gauge_inclusion_eps(a: &ConvexBody, b: &ConvexBody) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Incomparable);
    }
    if !a.is_centered() || !b.is_centered() {
        return Err(Error::NotCentered);
    }
    if a.dim() == 0 {
        return Ok(0.0);
    }
    if a.dim() < 3 {
        let tol = 1e-7 * a.diameter().max(b.diameter()).max(1.0);
        let same = a.span_basis().iter().all(|u| b.span_distance(u) <= tol)
            && b.span_basis().iter().all(|u| a.span_distance(u) <= tol);
        if !same {
            return Err(Error::Incomparable);
        }
    }
    let max_ratio = |outer: &ConvexBody, inner: &ConvexBody| -> Result<f64> {
        let mut m: f64 = 0.0;
        for v in inner.vertices() {
            let p = outer.span_projection(v);
            m = m.max(outer.gauge(&p)?);
        }
        Ok(m)
    };
    let m_ab = max_ratio(a, b)?;
    let m_ba = max_ratio(b, a)?;
    let eps = (m_ab - 1.0).max(m_ba - 1.0);
    // ratios within rounding of 1 mean equal bodies
    Ok(if eps <= 1e-12 { 0.0 } else { eps })
}

impl ConvexBody {
    /// Orthogonal projection onto the linear span.
    pub fn span_projection(&self, x: &Vec3) -> Vec3 {
        self.span_basis()
            .iter()
            .fold(Vec3::zeros(), |acc, u| acc + u * u.dot(x))
    }
}

#[cfg(test)]
mod tests {
    use super::super::shapes::{cube, icosphere, regular_polygon, segment, simplex};
    use super::*;

    #[test]
    fn hausdorff_cubes() {
        let d = hausdorff_distance(&cube(1.0), &cube(2.0));
        assert!((d - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(hausdorff_distance(&cube(1.0), &cube(1.0)), 0.0);
        let s = segment(-Vec3::x(), Vec3::x());
        let p = ConvexBody::from_points(&[Vec3::zeros()]).unwrap();
        assert!((hausdorff_distance(&s, &p) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn minkowski_cubes() {
        let unit = ConvexBody::from_points(
            &cube(0.5)
                .vertices()
                .iter()
                .map(|v| v + Vec3::repeat(0.5))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let sum = minkowski_combine(1.0, &unit, 1.0, &unit).unwrap();
        let expect = cube(1.0).translate(&Vec3::repeat(1.0));
        assert!(hausdorff_distance(&sum, &expect) < 1e-12);
        assert_eq!(
            minkowski_combine(-1.0, &unit, 1.0, &unit).unwrap_err(),
            Error::NegativeScale
        );
    }

    #[test]
    fn homotopy_endpoints() {
        let ball = icosphere(1, 1.0);
        let d = simplex();
        let h0 = minkowski_combine(0.0, &ball, 1.0, &d).unwrap();
        let h1 = minkowski_combine(1.0, &ball, 0.0, &d).unwrap();
        assert_eq!(hausdorff_distance(&h0, &d), 0.0);
        assert_eq!(hausdorff_distance(&h1, &ball), 0.0);
    }

    #[test]
    fn reflections() {
        let p = ConvexBody::from_points(&[Vec3::new(1.0, 2.0, 3.0)]).unwrap();
        let r = reflect(&p, &Direction::z());
        assert!((r.vertices()[0] - Vec3::new(1.0, 2.0, -3.0)).norm() < 1e-15);
        let alpha = Direction::new(Vec3::new(0.3, -0.4, 0.5)).unwrap();
        let s = simplex();
        assert!(hausdorff_distance(&reflect(&reflect(&s, &alpha), &alpha), &s) < 1e-12);
        assert!(hausdorff_distance(&reflect(&cube(1.0), &Direction::z()), &cube(1.0)) < 1e-15);
    }

    #[test]
    fn symmetrized_segment() {
        let s = segment(Vec3::zeros(), Vec3::z());
        let sym = symmetrize(&s, &Direction::z());
        let expect = segment(-Vec3::z() * 0.5, Vec3::z() * 0.5);
        assert!(hausdorff_distance(&sym, &expect) < 1e-15);
        let d = symmetrize(&simplex(), &Direction::z());
        assert!(d.is_reflection_symmetric(&Direction::z()));
    }

    #[test]
    fn central_projection() {
        let c = cube(1.0);
        assert!(
            (central_project(&c, &Vec3::new(2.0, 0.0, 0.0)).unwrap() - Vec3::x()).norm() < 1e-15
        );
        assert!(
            (central_project(&c, &Vec3::repeat(3.0)).unwrap() - Vec3::repeat(1.0)).norm() < 1e-15
        );
        assert_eq!(
            central_project(&c, &Vec3::zeros()),
            Err(Error::RayUndefined)
        );
        let off = c.translate(&Vec3::new(0.5, 0.0, 0.0));
        assert_eq!(central_project(&off, &Vec3::x()), Err(Error::NotCentered));
        let ico = icosphere(3, 2.0);
        let p = central_project(&ico, &Vec3::new(0.1, 0.0, 0.0)).unwrap();
        assert!((p - Vec3::new(2.0, 0.0, 0.0)).norm() < 1e-12);
        let poly = regular_polygon(6, 1.0);
        let p = central_project(&poly, &Vec3::new(0.0, 0.3, 0.0)).unwrap();
        assert!((poly.gauge(&p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projections() {
        let x = Vec3::new(1.0, 2.0, 3.0);
        assert_eq!(
            ortho_project(ProjectTarget::Subspace(Subspace::Plane(Direction::z())), &x),
            Vec3::new(1.0, 2.0, 0.0)
        );
        assert_eq!(
            ortho_project(ProjectTarget::Subspace(Subspace::Line(Direction::x())), &x),
            Vec3::new(1.0, 0.0, 0.0)
        );
        let c = cube(1.0);
        let q = ortho_project(ProjectTarget::Body(&c), &Vec3::new(2.0, 2.0, 0.0));
        assert!((q - Vec3::new(1.0, 1.0, 0.0)).norm() < 1e-12);
        let k = project_body(&c, &Subspace::Plane(Direction::z()));
        assert_eq!(k.dim(), 2);
        assert_eq!(k.vertices().len(), 4);
    }

    #[test]
    fn gauge_eps() {
        let a = icosphere(2, 1.0);
        let b = a.scale(1.1);
        assert!((gauge_inclusion_eps(&a, &b).unwrap() - 0.1).abs() < 1e-12);
        assert!((gauge_inclusion_eps(&b, &a).unwrap() - 0.1).abs() < 1e-12);
        assert_eq!(gauge_inclusion_eps(&a, &a).unwrap(), 0.0);
        let sq = regular_polygon(4, 1.0);
        assert_eq!(gauge_inclusion_eps(&a, &sq), Err(Error::Incomparable));
        let sq2 = sq.rotate(&nalgebra::Rotation3::from_euler_angles(0.5, 0.0, 0.0).into_inner());
        assert_eq!(gauge_inclusion_eps(&sq, &sq2), Err(Error::Incomparable));
    }
}
