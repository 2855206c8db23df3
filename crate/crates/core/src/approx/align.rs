use crate::convex::{orthogonal_unit, ConvexBody, Direction, Mat3, Vec3};
use crate::error::{Error, Result};

fn reject(x: &Vec3, basis: &[Vec3]) -> Vec3 {
    basis.iter().fold(*x, |acc, b| acc - b * b.dot(&acc))
}

/// Extends `basis` to an orthonormal basis of R³ using `hints`, in order.
fn complete(mut basis: Vec<Vec3>, hints: &[Vec3]) -> Vec<Vec3> {
    for h in hints {
        if basis.len() == 3 {
            break;
        }
        let r = reject(h, &basis);
        if r.norm() > 1e-6 {
            basis.push(r.normalize());
        }
    }
    while basis.len() < 3 {
        let r = if basis.len() == 2 {
            basis[0].cross(&basis[1])
        } else {
            orthogonal_unit(&basis[0])
        };
        basis.push(r.normalize());
    }
    basis
}

/// Orthogonal map `φ` with `φ⁻¹(Span(target)) ⊆ Span(body)` that tends to the
/// identity as the two bodies approach each other.
///
/// With `w_1..w_k` a basis of the target span and `r` the inradius of the
/// target about the origin, `u_i` is the point of `body` nearest to `r·w_i`;
/// Gram–Schmidt on the `u_i` gives `v_1..v_k` in the span of `body`, which are
/// completed by projecting the remaining `w_i`. Then `φ(v_i) = w_i`.
///
/// With an axis pair, `α_target` is made one of the `w_i` and `α` the
/// matching `v_i`, so that `φ(α) = α_target` exactly.
pub fn align_spans(
    body: &ConvexBody,
    target: &ConvexBody,
    axis: Option<(Direction, Direction)>,
) -> Result<Mat3> {
    let k = target.dim();
    if k == 0 {
        return Ok(Mat3::identity());
    }
    if k > body.dim() {
        return Err(Error::InvalidInput("target has larger dimension".into()));
    }
    let tol = 1e-7;
    let span_t: Vec<Vec3> = target.span_basis()[..k].to_vec();
    let in_t = |x: &Vec3| reject(x, &span_t).norm() <= tol;

    let mut w: Vec<Vec3> = Vec::new();
    let mut slot = None;
    if let Some((_, at)) = axis {
        let a = at.vec();
        if in_t(&a) {
            slot = Some(0);
            w.push(a);
        } else if reject(&a, &span_t).norm() >= 1.0 - tol {
            slot = Some(k);
        } else {
            return Err(Error::NotAlphaSymmetric);
        }
    }
    let w_span = complete(w, &span_t);
    let w = match slot {
        Some(s) if s == k => {
            let a = axis.unwrap().1.vec();
            let mut v = w_span[..k].to_vec();
            v.push(a);
            complete(v, &[])
        }
        _ => w_span,
    };

    let r = target
        .halfspaces()
        .iter()
        .map(|h| h.offset)
        .fold(f64::INFINITY, f64::min);
    if !(r > 0.0) {
        return Err(Error::NotCentered);
    }
    let r = 0.5 * r;
    let u: Vec<Vec3> = (0..k).map(|i| body.nearest_point(&(w[i] * r))).collect();

    let mut v: Vec<Vec3> = Vec::new();
    match (slot, axis) {
        (Some(0), Some((a, _))) => {
            v.push(a.vec());
            for ui in &u[1..] {
                v.push(reject(ui, &v).normalize());
            }
        }
        (Some(_), Some((a, _))) => {
            let a = a.vec();
            let pre = [a];
            for ui in &u {
                let r = reject(&reject(ui, &pre), &v);
                v.push(r.normalize());
            }
            v.push(a);
        }
        _ => {
            for ui in &u {
                v.push(reject(ui, &v).normalize());
            }
        }
    }
    if v.iter().any(|x| !x.iter().all(|c| c.is_finite())) {
        return Err(Error::Degenerate);
    }
    let hints: Vec<Vec3> = w[v.len()..].to_vec();
    let v = if v.len() == 2 && hints.len() == 1 {
        let mut v = v;
        let c = v[0].cross(&v[1]);
        v.push(if c.dot(&hints[0]) < 0.0 { -c } else { c });
        v
    } else {
        complete(v, &hints)
    };

    let mut phi = Mat3::zeros();
    for i in 0..3 {
        phi += w[i] * v[i].transpose();
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::shapes::{cube, cuboid};
    use nalgebra::Rotation3;

    #[test]
    fn identity_on_equal_bodies() {
        let c = cube(1.0);
        let phi = align_spans(&c, &c, None).unwrap();
        assert!((phi - Mat3::identity()).norm() < 1e-9);
        let p = ConvexBody::from_points(&[Vec3::zeros()]).unwrap();
        assert_eq!(align_spans(&c, &p, None).unwrap(), Mat3::identity());
    }

    #[test]
    fn tilted_cube_onto_square() {
        let rot = Rotation3::from_euler_angles(1e-3, 0.0, 0.0).into_inner();
        let c = cube(1.0).rotate(&rot);
        let sq = cuboid(1.0, 1.0, 0.0);
        let phi = align_spans(&c, &sq, None).unwrap();
        assert!((phi - Mat3::identity()).norm() <= 1e-2);
        assert!((phi.transpose() * phi - Mat3::identity()).norm() < 1e-12);
        let flat = cuboid(1.0, 1.0, 0.0).rotate(&rot);
        let phi = align_spans(&flat, &sq, Some((Direction::x(), Direction::x()))).unwrap();
        assert!((phi * Vec3::x() - Vec3::x()).norm() == 0.0);
        for v in flat.vertices() {
            assert!((phi * v).z.abs() < 1e-12);
        }
        let phi = align_spans(&c, &cube(1.0), Some((Direction::z(), Direction::z()))).unwrap();
        assert_eq!(phi * Vec3::z(), Vec3::z());
    }
}
