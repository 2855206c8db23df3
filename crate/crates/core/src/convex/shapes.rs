//! Standard bodies.

use std::collections::HashMap;

use super::{ConvexBody, Vec3};

/// Unit icosphere: icosahedron refined `level` times by edge midpoints
/// pushed to the sphere. Level 4 has 2562 nodes.
pub fn icosphere_mesh(level: u32) -> (Vec<Vec3>, Vec<[usize; 3]>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v: Vec<Vec3> = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vec3::new(x, y, z).normalize())
    .collect();
    let mut f: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(f.len() * 4);
        let mut midpoint = |a: usize, b: usize, v: &mut Vec<Vec3>| -> usize {
            let key = (a.min(b), a.max(b));
            *mid.entry(key).or_insert_with(|| {
                v.push(((v[a] + v[b]) * 0.5).normalize());
                v.len() - 1
            })
        };
        for t in &f {
            let ab = midpoint(t[0], t[1], &mut v);
            let bc = midpoint(t[1], t[2], &mut v);
            let ca = midpoint(t[2], t[0], &mut v);
            next.push([t[0], ab, ca]);
            next.push([t[1], bc, ab]);
            next.push([t[2], ca, bc]);
            next.push([ab, bc, ca]);
        }
        f = next;
    }
    (v, f)
}

/// Icosphere polytope of the given radius.
pub fn icosphere(level: u32, radius: f64) -> ConvexBody {
    let (v, _) = icosphere_mesh(level);
    let pts: Vec<Vec3> = v.iter().map(|p| p * radius).collect();
    ConvexBody::from_points(&pts).expect("icosphere")
}

/// `[-hx,hx]×[-hy,hy]×[-hz,hz]`.
pub fn cuboid(hx: f64, hy: f64, hz: f64) -> ConvexBody {
    let mut pts = Vec::with_capacity(8);
    for &x in &[-hx, hx] {
        for &y in &[-hy, hy] {
            for &z in &[-hz, hz] {
                pts.push(Vec3::new(x, y, z));
            }
        }
    }
    ConvexBody::from_points(&pts).expect("cuboid")
}

/// `[-h,h]³`.
pub fn cube(h: f64) -> ConvexBody {
    cuboid(h, h, h)
}

/// Regular `n`-gon in the plane z = 0 with circumradius `radius`, a vertex on
/// the positive x-axis.
pub fn regular_polygon(n: usize, radius: f64) -> ConvexBody {
    let pts: Vec<Vec3> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            Vec3::new(radius * a.cos(), radius * a.sin(), 0.0)
        })
        .collect();
    ConvexBody::from_points(&pts).expect("polygon")
}

/// `conv{0, e1, e2, e3}`.
pub fn simplex() -> ConvexBody {
    ConvexBody::from_points(&[Vec3::zeros(), Vec3::x(), Vec3::y(), Vec3::z()]).expect("simplex")
}

pub fn segment(a: Vec3, b: Vec3) -> ConvexBody {
    ConvexBody::from_points(&[a, b]).expect("segment")
}

/// Cuts every vertex off at the given depth along its edges.
pub fn trimmed(body: &ConvexBody, depth: f64) -> ConvexBody {
    let v = body.vertices();
    let mut pts = Vec::new();
    for (a, b) in body.edges() {
        let d = v[b] - v[a];
        let len = d.norm();
        let s = (depth / len).min(0.5);
        pts.push(v[a] + d * s);
        pts.push(v[b] - d * s);
    }
    if pts.is_empty() {
        return body.clone();
    }
    ConvexBody::from_points(&pts).expect("trimmed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosphere_counts() {
        let (v, f) = icosphere_mesh(4);
        assert_eq!(v.len(), 2562);
        assert_eq!(f.len(), 20 * 256);
        let b = icosphere(2, 2.0);
        assert_eq!(b.vertices().len(), 162);
        assert!((b.diameter() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn trimmed_cube() {
        let t = trimmed(&cube(1.0), 0.05);
        assert_eq!(t.vertices().len(), 24);
        assert!(t.is_symmetric());
    }
}
