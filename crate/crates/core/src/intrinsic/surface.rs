//! Shortest paths on polyhedral surfaces.
//!
//! Every face is convex and flat, so the straight segment between two points
//! of a face is the shortest path inside it. A geodesic crosses from face to
//! face through edges; the graph path is restricted to cross at subdivision
//! nodes, which costs O(h) per crossing for spacing h.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use rayon::prelude::*;

use crate::convex::{ConvexBody, Vec3};

pub(crate) struct Face {
    pub ring: Vec<usize>,
    pub normal: Vec3,
    pub offset: f64,
}

/// Flat convex faces sharing corner indices.
pub(crate) struct PolySurface {
    pub verts: Vec<Vec3>,
    pub faces: Vec<Face>,
}

impl PolySurface {
    pub fn of_body(body: &ConvexBody) -> PolySurface {
        PolySurface {
            verts: body.vertices().to_vec(),
            faces: body
                .facets()
                .iter()
                .map(|f| Face {
                    ring: f.ring.clone(),
                    normal: f.normal,
                    offset: f.offset,
                })
                .collect(),
        }
    }

    /// The part of the surface in `{⟨alpha,x⟩ >= 0}`. Cut points are shared
    /// between the two faces of each cut edge.
    pub fn clipped(&self, alpha: &Vec3, tol: f64) -> PolySurface {
        let mut verts = self.verts.clone();
        let mut cut: HashMap<(usize, usize), usize> = HashMap::new();
        let side: Vec<f64> = self.verts.iter().map(|v| alpha.dot(v)).collect();
        let inside = |i: usize| side[i] >= -tol;
        let mut faces = Vec::new();
        for f in &self.faces {
            let m = f.ring.len();
            let mut ring = Vec::with_capacity(m + 2);
            for k in 0..m {
                let a = f.ring[k];
                let b = f.ring[(k + 1) % m];
                if inside(a) {
                    ring.push(a);
                }
                if inside(a) != inside(b) && side[a].abs() > tol && side[b].abs() > tol {
                    let key = (a.min(b), a.max(b));
                    let id = *cut.entry(key).or_insert_with(|| {
                        let t = side[a] / (side[a] - side[b]);
                        verts.push(self.verts[a] + (self.verts[b] - self.verts[a]) * t);
                        verts.len() - 1
                    });
                    ring.push(id);
                }
            }
            ring.dedup();
            if ring.len() > 1 && ring[0] == ring[ring.len() - 1] {
                ring.pop();
            }
            if ring.len() >= 3 {
                let area = polygon_area(
                    &ring.iter().map(|&i| verts[i]).collect::<Vec<_>>(),
                    &f.normal,
                );
                if area > tol * tol {
                    faces.push(Face {
                        ring,
                        normal: f.normal,
                        offset: f.offset,
                    });
                }
            }
        }
        PolySurface { verts, faces }
    }

    /// Distinct undirected edges.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = Vec::new();
        for f in &self.faces {
            let m = f.ring.len();
            for k in 0..m {
                let (a, b) = (f.ring[k], f.ring[(k + 1) % m]);
                e.push((a.min(b), a.max(b)));
            }
        }
        e.sort_unstable();
        e.dedup();
        e
    }

    /// True when `x` lies on face `f` within `tol`.
    pub fn on_face(&self, f: usize, x: &Vec3, tol: f64) -> bool {
        let face = &self.faces[f];
        if (face.normal.dot(x) - face.offset).abs() > tol {
            return false;
        }
        let m = face.ring.len();
        (0..m).all(|k| {
            let a = self.verts[face.ring[k]];
            let b = self.verts[face.ring[(k + 1) % m]];
            (b - a).cross(&face.normal).normalize().dot(&(x - a)) <= tol
        })
    }

    /// Faces containing `x`.
    pub fn faces_of(&self, x: &Vec3, tol: f64) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.on_face(f, x, tol))
            .collect()
    }
}

pub(crate) fn polygon_area(ring: &[Vec3], normal: &Vec3) -> f64 {
    let mut s = Vec3::zeros();
    for i in 0..ring.len() {
        s += ring[i].cross(&ring[(i + 1) % ring.len()]);
    }
    0.5 * s.dot(normal)
}

/// Number of pieces an edge of length `len` is cut into at spacing `h`: the
/// smallest power of two giving pieces no longer than `h`, so refinements are
/// nested.
pub(crate) fn pieces(len: f64, h: f64) -> usize {
    if h <= 0.0 || len <= h {
        return 1;
    }
    let k = (len / h).log2().ceil().max(0.0) as u32;
    1usize << k.min(20)
}

#[derive(Copy, Clone, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

enum Anchor {
    Node(usize),
    Interior(usize),
}

/// Shortest-path metric between surface points.
///
/// The graph joins every pair of nodes sharing a face, where nodes are the
/// face corners, a nested subdivision of each edge, and every point that lies
/// on an edge. A point inside a face is joined to all nodes of that face and
/// to the other points of the same face. Such a point is never needed as an
/// intermediate stop (the direct chord is shorter), so one Dijkstra run over
/// the nodes per source gives exact shortest paths in the whole graph, and the
/// result satisfies the triangle inequality.
pub(crate) fn surface_distances(
    surface: &PolySurface,
    spacing: f64,
    sites: &[Vec3],
    tol: f64,
) -> Option<Vec<f64>> {
    let edges = surface.edges();
    let mut extra: Vec<Vec<f64>> = vec![Vec::new(); edges.len()];
    let mut face_of: Vec<Option<usize>> = vec![None; sites.len()];
    for (si, s) in sites.iter().enumerate() {
        let faces = surface.faces_of(s, tol);
        if faces.is_empty() {
            return None;
        }
        let mut on_edge = false;
        for (ei, &(a, b)) in edges.iter().enumerate() {
            let (pa, pb) = (surface.verts[a], surface.verts[b]);
            let q = crate::convex::closest_on_segment(s, &pa, &pb);
            if (q - s).norm() <= tol {
                let len = (pb - pa).norm();
                extra[ei].push((q - pa).norm() / len);
                on_edge = true;
            }
        }
        if !on_edge {
            face_of[si] = Some(faces[0]);
        }
    }

    let mut nodes = surface.verts.clone();
    let mut along: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (ei, &(a, b)) in edges.iter().enumerate() {
        let (pa, pb) = (surface.verts[a], surface.verts[b]);
        let len = (pb - pa).norm();
        let n = pieces(len, spacing);
        let mut ts: Vec<f64> = (1..n).map(|k| k as f64 / n as f64).collect();
        ts.extend(
            extra[ei]
                .iter()
                .copied()
                .filter(|&t| t * len > tol && (1.0 - t) * len > tol),
        );
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|x, y| (*x - *y) * len <= tol);
        let mut ids = vec![a];
        for t in ts {
            nodes.push(pa + (pb - pa) * t);
            ids.push(nodes.len() - 1);
        }
        ids.push(b);
        along.insert((a, b), ids);
    }
    let mut face_nodes: Vec<Vec<usize>> = Vec::with_capacity(surface.faces.len());
    for f in &surface.faces {
        let m = f.ring.len();
        let mut ids = Vec::new();
        for k in 0..m {
            let (a, b) = (f.ring[k], f.ring[(k + 1) % m]);
            let e = &along[&(a.min(b), a.max(b))];
            if a < b {
                ids.extend_from_slice(&e[..e.len() - 1]);
            } else {
                ids.extend(e[1..].iter().rev());
            }
        }
        face_nodes.push(ids);
    }
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nodes.len()];
    for ids in &face_nodes {
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let w = (nodes[a] - nodes[b]).norm();
                adj[a].push((b, w));
                adj[b].push((a, w));
            }
        }
    }
    for list in &mut adj {
        list.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)));
        list.dedup_by(|x, y| x.0 == y.0);
    }

    let anchors: Vec<Anchor> = sites
        .iter()
        .zip(&face_of)
        .map(|(s, f)| match f {
            Some(f) => Anchor::Interior(*f),
            None => {
                let mut best = (0, f64::INFINITY);
                for (i, p) in nodes.iter().enumerate() {
                    let d = (p - s).norm();
                    if d < best.1 {
                        best = (i, d);
                    }
                }
                Anchor::Node(best.0)
            }
        })
        .collect();
    let attach: Vec<Vec<(usize, f64)>> = anchors
        .iter()
        .zip(sites)
        .map(|(a, s)| match a {
            Anchor::Node(m) => vec![(*m, 0.0)],
            Anchor::Interior(f) => face_nodes[*f]
                .iter()
                .map(|&m| (m, (nodes[m] - s).norm()))
                .collect(),
        })
        .collect();

    let n = sites.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let dist = dijkstra(&adj, &attach[i]);
            (0..n)
                .map(|j| {
                    if i == j {
                        return 0.0;
                    }
                    let mut best = attach[j]
                        .iter()
                        .map(|&(m, w)| dist[m] + w)
                        .fold(f64::INFINITY, f64::min);
                    if let (Anchor::Interior(fi), Anchor::Interior(fj)) = (&anchors[i], &anchors[j])
                    {
                        if fi == fj {
                            best = best.min((sites[i] - sites[j]).norm());
                        }
                    }
                    best
                })
                .collect()
        })
        .collect();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = rows[i][j].min(rows[j][i]);
        }
    }
    if out.iter().any(|d| !d.is_finite()) {
        return None;
    }
    Some(out)
}

fn dijkstra(adj: &[Vec<(usize, f64)>], seeds: &[(usize, f64)]) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    for &(n, d) in seeds {
        if d < dist[n] {
            dist[n] = d;
            heap.push(Entry(d, n));
        }
    }
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Entry(nd, v));
            }
        }
    }
    dist
}
