//! Steiner point.
//!
//! For a polytope the support-function integral `(3/4π) ∫ h_D(u) u dσ(u)`
//! equals the vertex average weighted by the normalized solid angles of the
//! normal cones, which is what [`steiner_exact`] evaluates. The quadrature
//! form is kept for cross-checking.

use std::collections::HashMap;
use std::f64::consts::PI;

use super::geom::solid_angle;
use super::shapes::icosphere_mesh;
use super::{ConvexBody, Mat3, Vec3};

/// Normal-cone solid angle at every vertex of a solid body.
pub(crate) fn vertex_solid_angles(body: &ConvexBody) -> Vec<f64> {
    let n = body.vertices.len();
    let mut around: Vec<Vec<(usize, usize, Vec3)>> = vec![Vec::new(); n];
    for f in &body.facets {
        let m = f.ring.len();
        for k in 0..m {
            let v = f.ring[k];
            let prev = f.ring[(k + m - 1) % m];
            let next = f.ring[(k + 1) % m];
            around[v].push((prev, next, f.normal));
        }
    }
    let mut out = vec![0.0; n];
    for (v, entries) in around.iter().enumerate() {
        if entries.len() < 3 {
            continue;
        }
        let by_prev: HashMap<usize, usize> =
            entries.iter().enumerate().map(|(i, e)| (e.0, i)).collect();
        let mut order = vec![0usize];
        let mut cur = 0usize;
        while order.len() < entries.len() {
            match by_prev.get(&entries[cur].1) {
                Some(&nx) if nx != 0 => {
                    order.push(nx);
                    cur = nx;
                }
                _ => break,
            }
        }
        let normals: Vec<Vec3> = if order.len() == entries.len() {
            order.iter().map(|&i| entries[i].2).collect()
        } else {
            azimuth_sorted(entries.iter().map(|e| e.2).collect())
        };
        let mut total = 0.0;
        for k in 1..normals.len() - 1 {
            total += solid_angle(&normals[0], &normals[k], &normals[k + 1]);
        }
        out[v] = total.abs();
    }
    out
}

fn azimuth_sorted(mut ns: Vec<Vec3>) -> Vec<Vec3> {
    let m = ns.iter().fold(Vec3::zeros(), |a, n| a + n).normalize();
    let e1 = super::geom::orthogonal_unit(&m);
    let e2 = m.cross(&e1);
    ns.sort_by(|a, b| {
        let ta = a.dot(&e2).atan2(a.dot(&e1));
        let tb = b.dot(&e2).atan2(b.dot(&e1));
        ta.partial_cmp(&tb).unwrap()
    });
    ns
}

pub(crate) fn steiner_exact(body: &ConvexBody) -> Vec3 {
    let v = &body.vertices;
    match body.dim {
        0 => v[0],
        1 => (v[0] + v[1]) * 0.5,
        2 => {
            let n = v.len();
            let mut acc = Vec3::zeros();
            let mut wsum = 0.0;
            for i in 0..n {
                let e_in = v[i] - v[(i + n - 1) % n];
                let e_out = v[(i + 1) % n] - v[i];
                let w = e_in.cross(&e_out).norm().atan2(e_in.dot(&e_out));
                acc += v[i] * w;
                wsum += w;
            }
            acc / wsum
        }
        _ => {
            let w = vertex_solid_angles(body);
            let total: f64 = w.iter().sum();
            v.iter()
                .zip(&w)
                .fold(Vec3::zeros(), |a, (p, &wi)| a + p * wi)
                / total
        }
    }
}

/// Quadrature estimate of the Steiner point over the icosphere nodes of the
/// given subdivision level, with spherical vertex-area weights and the
/// second-moment normalization that makes the map exact on points.
pub fn steiner_quadrature(body: &ConvexBody, level: u32) -> Vec3 {
    let (nodes, tris) = icosphere_mesh(level);
    let mut w = vec![0.0; nodes.len()];
    for t in &tris {
        let a = solid_angle(&nodes[t[0]], &nodes[t[1]], &nodes[t[2]]).abs() / 3.0;
        for &i in t {
            w[i] += a;
        }
    }
    let mut m = Mat3::zeros();
    let mut b = Vec3::zeros();
    for (u, &wi) in nodes.iter().zip(&w) {
        m += u * u.transpose() * wi;
        b += u * (body.support(u) * wi);
    }
    debug_assert!((w.iter().sum::<f64>() - 4.0 * PI).abs() < 1e-9);
    m.try_inverse()
        .expect("icosphere second moment is isotropic")
        * b
}
