//! Seeded random bodies.

use nalgebra::{Quaternion, UnitQuaternion};
use nncurv::convex::shapes::segment;
use nncurv::{ConvexBody, Mat3, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_vector(rng: &mut Rand) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn rotation(rng: &mut Rand) -> Mat3 {
    loop {
        let q = Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = q.norm();
        if n > 0.1 && n <= 1.0 {
            return UnitQuaternion::from_quaternion(q)
                .to_rotation_matrix()
                .into_inner();
        }
    }
}

/// Orthogonal map, a reflection half of the time.
pub fn orthogonal(rng: &mut Rand) -> Mat3 {
    let r = rotation(rng);
    if rng.gen_bool(0.5) {
        r * Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0))
    } else {
        r
    }
}

fn ellipsoid_points(rng: &mut Rand, n: usize, radii: Vec3) -> Vec<Vec3> {
    (0..n)
        .map(|_| {
            let u = unit_vector(rng);
            u.component_mul(&radii) * rng.gen_range(0.8..1.0)
        })
        .collect()
}

/// `D = -D` with `2·pairs` random vertices near an ellipsoid, randomly rotated.
pub fn symmetric_solid(rng: &mut Rand, pairs: usize, radii: Vec3) -> ConvexBody {
    let mut pts = ellipsoid_points(rng, pairs, radii);
    let neg: Vec<Vec3> = pts.iter().map(|p| -p).collect();
    pts.extend(neg);
    let q = rotation(rng);
    let pts: Vec<Vec3> = pts.iter().map(|p| q * p).collect();
    ConvexBody::from_points(&pts).expect("random symmetric body")
}

/// Random body translated to have its Steiner point at the origin.
pub fn centered_solid(rng: &mut Rand, n: usize) -> ConvexBody {
    let pts = ellipsoid_points(rng, n, Vec3::new(1.0, 0.8, 0.6));
    ConvexBody::from_points(&pts)
        .expect("random body")
        .centered()
}

/// Symmetric polygon in the `xy` plane.
pub fn symmetric_polygon(rng: &mut Rand, pairs: usize, radius: f64) -> ConvexBody {
    let mut pts = Vec::new();
    for _ in 0..pairs {
        let t: f64 = rng.gen_range(0.0..std::f64::consts::PI);
        let r = radius * rng.gen_range(0.8..1.0);
        let p = Vec3::new(r * t.cos(), r * t.sin(), 0.0);
        pts.push(p);
        pts.push(-p);
    }
    ConvexBody::from_points(&pts).expect("random polygon")
}

/// Asymmetric polygon in the `xy` plane, centered.
pub fn centered_polygon(rng: &mut Rand, n: usize, radius: f64) -> ConvexBody {
    let pts: Vec<Vec3> = (0..n)
        .map(|_| {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = radius * rng.gen_range(0.5..1.0);
            Vec3::new(r * t.cos(), r * t.sin(), 0.0)
        })
        .collect();
    ConvexBody::from_points(&pts)
        .expect("random polygon")
        .centered()
}

/// Centered segment of half-length `h` along a random direction.
pub fn centered_segment(rng: &mut Rand, h: f64) -> ConvexBody {
    let u = unit_vector(rng) * h;
    segment(-u, u)
}

/// Random body of dimension `dim` in 1..=3, centered.
pub fn body_of_dim(rng: &mut Rand, dim: usize) -> ConvexBody {
    let q = rotation(rng);
    match dim {
        1 => {
            let h = rng.gen_range(0.3..1.5);
            centered_segment(rng, h)
        }
        2 => {
            let n = rng.gen_range(3..9);
            let r = rng.gen_range(0.3..1.5);
            centered_polygon(rng, n, r).rotate(&q)
        }
        _ => {
            let n = rng.gen_range(5..16);
            centered_solid(rng, n).scale(rng.gen_range(0.3..1.5))
        }
    }
}
