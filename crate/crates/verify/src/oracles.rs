//! Reference computations that share no code path with the library routines
//! they check.

use std::collections::HashMap;

use nalgebra::{Matrix2, Rotation3, Vector2};
use nncurv::moduli::{FlatKind, FlatStructure, LatticeBasis};
use nncurv::{ConvexBody, Mat3, Vec3};

/// Shortest path on the surface of a solid polytope by unfolding face
/// sequences of at most `max_faces` faces into the plane of the first.
/// A straight segment in the unfolding is a surface path when it crosses the
/// shared edges in order; the shortest of them is the geodesic distance once
/// `max_faces` covers the faces met by a shortest path.
pub fn unfold_distance(body: &ConvexBody, p: &Vec3, q: &Vec3, max_faces: usize) -> f64 {
    let tol = 1e-9 * body.diameter().max(1.0);
    let facets = body.facets();
    let verts = body.vertices();
    let on = |f: usize, x: &Vec3| {
        let fc = &facets[f];
        if (fc.normal.dot(x) - fc.offset).abs() > tol {
            return false;
        }
        let m = fc.ring.len();
        (0..m).all(|k| {
            let a = verts[fc.ring[k]];
            let b = verts[fc.ring[(k + 1) % m]];
            (b - a).cross(&fc.normal).dot(&(x - a)) <= tol * (b - a).norm()
        })
    };
    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        let m = f.ring.len();
        for k in 0..m {
            let (a, b) = (f.ring[k], f.ring[(k + 1) % m]);
            edge_faces.entry((a.min(b), a.max(b))).or_default().push(fi);
        }
    }
    let q_faces: Vec<bool> = (0..facets.len()).map(|f| on(f, q)).collect();
    let mut best = f64::INFINITY;

    struct Step {
        face: usize,
        rot: Mat3,
        shift: Vec3,
    }
    fn crosses(p: &Vec3, q: &Vec3, portals: &[(Vec3, Vec3)], n: &Vec3, tol: f64) -> bool {
        let d = q - p;
        let mut last = -tol;
        for (a, b) in portals {
            let e = b - a;
            let denom = d.cross(&e).dot(n);
            if denom.abs() < 1e-15 {
                return false;
            }
            let w = a - p;
            let s = w.cross(&e).dot(n) / denom;
            let u = w.cross(&d).dot(n) / denom;
            if s < last - tol || s > 1.0 + tol || u < -tol || u > 1.0 + tol {
                return false;
            }
            last = s;
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn walk(
        path: &mut Vec<Step>,
        portals: &mut Vec<(Vec3, Vec3)>,
        ctx: &(
            &ConvexBody,
            &HashMap<(usize, usize), Vec<usize>>,
            &[bool],
            Vec3,
            Vec3,
            Vec3,
            f64,
            usize,
        ),
        best: &mut f64,
    ) {
        let (body, edge_faces, q_faces, p, q, n0, tol, max_faces) = ctx;
        let cur = path.last().expect("nonempty path");
        let (face, rot, shift) = (cur.face, cur.rot, cur.shift);
        if q_faces[face] {
            let q2 = rot * q + shift;
            let len = (q2 - p).norm();
            if len < *best && crosses(p, &q2, portals, n0, *tol) {
                *best = len;
            }
        }
        if path.len() >= *max_faces {
            return;
        }
        let facets = body.facets();
        let verts = body.vertices();
        let ring = &facets[face].ring;
        for k in 0..ring.len() {
            let (a, b) = (ring[k], ring[(k + 1) % ring.len()]);
            for &g in &edge_faces[&(a.min(b), a.max(b))] {
                if path.iter().any(|s| s.face == g) {
                    continue;
                }
                let hinge = Rotation3::rotation_between(&facets[g].normal, &facets[face].normal)
                    .map(|r| r.into_inner())
                    .unwrap_or_else(Mat3::identity);
                let va = verts[a];
                let rot_g = rot * hinge;
                let shift_g = rot * (va - hinge * va) + shift;
                portals.push((rot * verts[a] + shift, rot * verts[b] + shift));
                path.push(Step {
                    face: g,
                    rot: rot_g,
                    shift: shift_g,
                });
                walk(path, portals, ctx, best);
                path.pop();
                portals.pop();
            }
        }
    }

    for f0 in 0..facets.len() {
        if !on(f0, p) {
            continue;
        }
        let ctx = (
            body,
            &edge_faces,
            q_faces.as_slice(),
            *p,
            *q,
            facets[f0].normal,
            tol,
            max_faces,
        );
        let mut path = vec![Step {
            face: f0,
            rot: Mat3::identity(),
            shift: Vec3::zeros(),
        }];
        let mut portals = Vec::new();
        walk(&mut path, &mut portals, &ctx, &mut best);
    }
    best
}

/// Chord `{s : x + s·v ∈ B}` of a solid body by clipping against its
/// facet planes.
pub fn clip_chord(body: &ConvexBody, x: &Vec3, v: &Vec3) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for f in body.facets() {
        let rate = f.normal.dot(v);
        let slack = f.offset - f.normal.dot(x);
        if rate.abs() < 1e-15 {
            if slack < -1e-12 {
                return None;
            }
        } else if rate > 0.0 {
            hi = hi.min(slack / rate);
        } else {
            lo = lo.max(slack / rate);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Distance between two points of the double of a planar polygon with
/// vertices `ring` (in order), by ternary search on every edge for the
/// best crossing point.
pub fn double_distance(ring: &[Vec3], x: &Vec3, y: &Vec3, same_sheet: bool) -> f64 {
    if same_sheet {
        return (x - y).norm();
    }
    let mut best = f64::INFINITY;
    for k in 0..ring.len() {
        let (a, b) = (ring[k], ring[(k + 1) % ring.len()]);
        let len = |t: f64| {
            let p = a + (b - a) * t;
            (x - p).norm() + (p - y).norm()
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if len(m1) <= len(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best = best.min(len(0.5 * (lo + hi))).min(len(0.0)).min(len(1.0));
    }
    best
}

/// Prokhorov distance by scanning `ε = 0, step, 2·step, ...`; returns the
/// first feasible grid value, which is within `step` above the true one.
pub fn prokhorov_grid(
    d: &dyn Fn(usize, usize) -> f64,
    mu: &[(usize, f64)],
    nu: &[(usize, f64)],
    step: f64,
) -> f64 {
    let side = |a: &[(usize, f64)], b: &[(usize, f64)], eps: f64| {
        for mask in 1u32..(1 << a.len()) {
            let chosen: Vec<usize> = (0..a.len()).filter(|k| mask >> k & 1 == 1).collect();
            let mass: f64 = chosen.iter().map(|&k| a[k].1).sum();
            let near: f64 = b
                .iter()
                .filter(|(j, _)| chosen.iter().any(|&k| d(a[k].0, *j) <= eps))
                .map(|(_, m)| m)
                .sum();
            if mass > near + eps + 1e-12 {
                return false;
            }
        }
        true
    };
    let mut k = 0u64;
    loop {
        let eps = k as f64 * step;
        if side(mu, nu, eps) && side(nu, mu, eps) {
            return eps;
        }
        k += 1;
    }
}

/// Coefficient range that contains every lattice vector no longer than the
/// longer basis vector: by Cramer's rule `|m|, |n| <= R·max|v_i| / |det|`.
pub fn covering_range(b: &LatticeBasis) -> i64 {
    let r = b.v1.norm().max(b.v2.norm());
    (r * r / b.det().abs()).ceil() as i64
}

/// Successive minima of a planar lattice by trying every coefficient pair in
/// `[-range, range]²`.
pub fn successive_minima(b: &LatticeBasis, range: i64) -> (f64, f64) {
    let mut vecs: Vec<Vector2<f64>> = Vec::new();
    for i in -range..=range {
        for j in -range..=range {
            if i != 0 || j != 0 {
                vecs.push(b.v1 * i as f64 + b.v2 * j as f64);
            }
        }
    }
    vecs.sort_by(|x, y| x.norm().total_cmp(&y.norm()));
    let first = vecs[0];
    let second = vecs
        .iter()
        .find(|v| (first.x * v.y - first.y * v.x).abs() > 1e-9 * first.norm() * v.norm())
        .expect("independent vector in range");
    (first.norm(), second.norm())
}

/// The `C*` series recomputed term by term from grid coordinates.
pub fn cstar_series(f: &[f64], g: &[f64], terms: u32) -> f64 {
    let m = (f.len() - 1) as f64;
    let mut total = 0.0;
    for k in 0..terms {
        let w = 2f64.powi(-(k as i32));
        let mut dk: f64 = 0.0;
        for i in 0..f.len() {
            let t = i as f64 / m;
            if t >= w - 1e-12 && t <= 1.0 - w + 1e-12 {
                dk = dk.max((f[i] - g[i]).abs());
            }
        }
        total += w * dk.min(1.0);
    }
    total
}

type Iso2 = (Matrix2<f64>, Vector2<f64>);

/// Deck generators acting on metric coordinates, and the map from the
/// structure's point coordinates to metric coordinates.
fn deck(s: &FlatStructure) -> (Vec<Iso2>, Box<dyn Fn(&[f64]) -> Vector2<f64>>) {
    let p = s.params().to_vec();
    let id = Matrix2::identity();
    let flip = Matrix2::new(-1.0, 0.0, 0.0, 1.0);
    match s.kind() {
        FlatKind::Circle => (
            vec![(id, Vector2::new(p[0], 0.0))],
            Box::new(|x: &[f64]| Vector2::new(x[0], 0.0)),
        ),
        FlatKind::Torus => (
            vec![
                (id, Vector2::new(p[0], p[1])),
                (id, Vector2::new(p[2], p[3])),
            ],
            Box::new(|x: &[f64]| Vector2::new(x[0], x[1])),
        ),
        FlatKind::Klein => (
            vec![
                (id, Vector2::new(p[0], 0.0)),
                (flip, Vector2::new(0.0, p[1])),
            ],
            Box::new(|x: &[f64]| Vector2::new(x[0], x[1])),
        ),
        FlatKind::Mobius => {
            let (r, b) = (p[0], p[1]);
            (
                vec![(flip, Vector2::new(r, b))],
                Box::new(move |x: &[f64]| Vector2::new(r * x[0], b * x[1])),
            )
        }
        FlatKind::Cylinder => {
            let (r, b) = (p[0], p[1]);
            (
                vec![(id, Vector2::new(b, 0.0))],
                Box::new(move |x: &[f64]| Vector2::new(b * x[0], r * x[1])),
            )
        }
    }
}

/// Quotient distance by breadth-first enumeration of deck words of length
/// at most `depth`.
pub fn orbit_distance(s: &FlatStructure, p: &[f64], q: &[f64], depth: usize) -> f64 {
    let (gens, to_metric) = deck(s);
    let mut moves: Vec<Iso2> = Vec::new();
    for (a, t) in &gens {
        let inv = a.try_inverse().expect("isometry");
        moves.push((*a, *t));
        moves.push((inv, -(inv * t)));
    }
    let key = |g: &Iso2| {
        let r = |x: f64| (x * 1e6).round() as i64;
        [
            r(g.0[(0, 0)]),
            r(g.0[(0, 1)]),
            r(g.0[(1, 0)]),
            r(g.0[(1, 1)]),
            r(g.1.x),
            r(g.1.y),
        ]
    };
    let mut seen = HashMap::new();
    let start: Iso2 = (Matrix2::identity(), Vector2::zeros());
    seen.insert(key(&start), ());
    let mut layer = vec![start];
    let mut all = vec![start];
    for _ in 0..depth {
        let mut next = Vec::new();
        for g in &layer {
            for m in &moves {
                let h = (m.0 * g.0, m.0 * g.1 + m.1);
                if seen.insert(key(&h), ()).is_none() {
                    next.push(h);
                    all.push(h);
                }
            }
        }
        layer = next;
    }
    let (pm, qm) = (to_metric(p), to_metric(q));
    all.iter()
        .map(|(a, t)| (pm - (a * qm + t)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Exact Steiner point of a segment or polygon from closed forms: the
/// midpoint, and for a polygon the exterior-angle weighted vertex average.
pub fn steiner_low_dim(body: &ConvexBody) -> Option<Vec3> {
    let v = body.vertices();
    match body.dim() {
        0 => Some(v[0]),
        1 => Some((v[0] + v[1]) * 0.5),
        2 => {
            let n = v.len();
            let mut s = Vec3::zeros();
            for i in 0..n {
                let a = (v[i] - v[(i + n - 1) % n]).normalize();
                let b = (v[(i + 1) % n] - v[i]).normalize();
                let turn = a.dot(&b).clamp(-1.0, 1.0).acos();
                s += v[i] * (turn / std::f64::consts::TAU);
            }
            Some(s)
        }
        _ => None,
    }
}
