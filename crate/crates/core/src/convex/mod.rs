//! Convex polytopes in R³.
//!
//! A [`ConvexBody`] stores only extreme vertices together with the facet
//! structure needed for exact point queries: nearest points, gauges, ray
//! intersections. Everything is rebuilt from scratch by
//! [`ConvexBody::from_points`]; bodies are immutable afterwards.

mod geom;
mod hull;
mod ops;
pub mod shapes;
mod steiner;

pub use ops::{
    central_project, gauge_inclusion_eps, hausdorff_distance, minkowski_combine, ortho_project,
    project_body, reflect, symmetrize, ProjectTarget,
};
pub use steiner::steiner_quadrature;

pub(crate) use geom::{closest_on_segment, orthogonal_unit};

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};

pub type Vec3 = nalgebra::Vector3<f64>;
pub type Mat3 = nalgebra::Matrix3<f64>;

/// Absolute geometric tolerance for unit-scale bodies.
pub const TAU_GEOM: f64 = 1e-9;
/// Rank threshold relative to the diameter.
pub const TAU_RANK: f64 = 1e-9;
/// Steiner-point tolerance relative to the diameter.
pub const TAU_STEINER: f64 = 1e-6;
/// Symmetry tolerance relative to the diameter.
pub const TAU_SYM: f64 = 1e-7;

/// A unit vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction(Vec3);

impl Direction {
    pub fn new(v: Vec3) -> Result<Direction> {
        let n = v.norm();
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n <= TAU_GEOM {
            return Err(Error::InvalidInput("zero direction".into()));
        }
        Ok(Direction(v / n))
    }

    pub fn x() -> Direction {
        Direction(Vec3::x())
    }

    pub fn y() -> Direction {
        Direction(Vec3::y())
    }

    pub fn z() -> Direction {
        Direction(Vec3::z())
    }

    pub fn vec(&self) -> Vec3 {
        self.0
    }
}

/// A line or plane through the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Subspace {
    Line(Direction),
    /// Plane given by its unit normal.
    Plane(Direction),
}

impl Subspace {
    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &Vec3) -> Vec3 {
        match self {
            Subspace::Line(d) => d.0 * d.0.dot(x),
            Subspace::Plane(n) => x - n.0 * n.0.dot(x),
        }
    }
}

/// A facet polygon: vertex indices counter-clockwise seen from outside.
#[derive(Clone, Debug)]
pub struct Facet {
    pub ring: Vec<usize>,
    pub normal: Vec3,
    pub offset: f64,
}

/// `{y in span : normal·y <= offset}` with unit `normal`.
#[derive(Clone, Copy, Debug)]
pub struct HalfSpace {
    pub normal: Vec3,
    pub offset: f64,
}

#[derive(Clone, Debug)]
pub struct ConvexBody {
    vertices: Vec<Vec3>,
    dim: usize,
    diameter: f64,
    steiner: Vec3,
    origin: Vec3,
    axes: [Vec3; 3],
    facets: Vec<Facet>,
    halfspaces: Vec<HalfSpace>,
    triangles: Vec<[usize; 3]>,
    span: Vec<Vec3>,
}

fn bbox_diag(points: &[Vec3]) -> f64 {
    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (hi - lo).norm()
}

fn dedup(points: &[Vec3], tol: f64) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::with_capacity(points.len());
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.partial_cmp(&points[b].x).unwrap());
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        let p = points[i];
        let mut dup = false;
        for &j in kept.iter().rev() {
            if p.x - out[j].x > tol {
                break;
            }
            if (out[j] - p).norm() <= tol {
                dup = true;
                break;
            }
        }
        if !dup {
            kept.push(out.len());
            out.push(p);
        }
    }
    out
}

fn principal_frame(points: &[Vec3]) -> (Vec3, [Vec3; 3], [f64; 3]) {
    let n = points.len() as f64;
    let origin = points.iter().fold(Vec3::zeros(), |a, p| a + p) / n;
    let mut cov = Mat3::zeros();
    for p in points {
        let d = p - origin;
        cov += d * d.transpose();
    }
    let eig = SymmetricEigen::new(cov);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let mut axes = [Vec3::zeros(); 3];
    for (k, &i) in order.iter().enumerate() {
        axes[k] = eig.eigenvectors.column(i).into_owned().normalize();
    }
    axes[2] = axes[0].cross(&axes[1]).normalize();
    let mut extents = [0.0; 3];
    for k in 0..3 {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            let t = (p - origin).dot(&axes[k]);
            lo = lo.min(t);
            hi = hi.max(t);
        }
        extents[k] = hi - lo;
    }
    (origin, axes, extents)
}

fn newell(points: &[Vec3]) -> Vec3 {
    let mut n = Vec3::zeros();
    for i in 0..points.len() {
        let a = points[i];
        let b = points[(i + 1) % points.len()];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    n.normalize()
}

fn tri_normal(p: &[Vec3], t: &[usize; 3]) -> Vec3 {
    (p[t[1]] - p[t[0]]).cross(&(p[t[2]] - p[t[0]])).normalize()
}

/// Vertices whose incident facet normals span R³.
fn extreme_subset(pts: &[Vec3], tris: &[[usize; 3]]) -> Vec<Vec3> {
    let mut normals: Vec<Vec<Vec3>> = vec![Vec::new(); pts.len()];
    for t in tris {
        let n = tri_normal(pts, t);
        for &v in t {
            normals[v].push(n);
        }
    }
    let mut out = Vec::new();
    for (i, ns) in normals.iter().enumerate() {
        if ns.is_empty() {
            continue;
        }
        let n1 = ns[0];
        let n2 = *ns
            .iter()
            .max_by(|a, b| n1.cross(a).norm().partial_cmp(&n1.cross(b).norm()).unwrap())
            .unwrap();
        let c = n1.cross(&n2);
        let det = ns.iter().map(|n| c.dot(n).abs()).fold(0.0, f64::max);
        if det > 1e-12 {
            out.push(pts[i]);
        }
    }
    out
}

/// Groups coplanar neighbouring triangles into facet polygons.
fn merge_facets(pts: &[Vec3], tris: &[[usize; 3]]) -> Vec<Facet> {
    use std::collections::HashMap;
    let normals: Vec<Vec3> = tris.iter().map(|t| tri_normal(pts, t)).collect();
    let mut edge_tri: HashMap<(usize, usize), usize> = HashMap::new();
    for (ti, t) in tris.iter().enumerate() {
        for k in 0..3 {
            edge_tri.insert((t[k], t[(k + 1) % 3]), ti);
        }
    }
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut i = i;
        while p[i] != r {
            let n = p[i];
            p[i] = r;
            i = n;
        }
        r
    }
    for (ti, t) in tris.iter().enumerate() {
        for k in 0..3 {
            if let Some(&tj) = edge_tri.get(&(t[(k + 1) % 3], t[k])) {
                let (a, b) = (normals[ti], normals[tj]);
                if a.dot(&b) > 0.0 && a.cross(&b).norm() < 1e-9 {
                    let (ra, rb) = (find(&mut parent, ti), find(&mut parent, tj));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for ti in 0..tris.len() {
        let r = find(&mut parent, ti);
        let g = *slot.entry(r).or_insert_with(|| {
            groups.push((r, Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(ti);
    }
    let mut facets = Vec::with_capacity(groups.len());
    for (_, members) in groups {
        let mut inside: std::collections::HashSet<(usize, usize)> =
            std::collections::HashSet::new();
        for &ti in &members {
            let t = tris[ti];
            for k in 0..3 {
                inside.insert((t[k], t[(k + 1) % 3]));
            }
        }
        let mut next: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &inside {
            if !inside.contains(&(b, a)) {
                next.insert(a, b);
            }
        }
        let start = *next.keys().min().unwrap();
        let mut ring = vec![start];
        let mut cur = next[&start];
        while cur != start && ring.len() <= next.len() {
            ring.push(cur);
            cur = next[&cur];
        }
        let poly: Vec<Vec3> = ring.iter().map(|&i| pts[i]).collect();
        let normal = newell(&poly);
        let offset = poly.iter().map(|p| normal.dot(p)).sum::<f64>() / poly.len() as f64;
        facets.push(Facet {
            ring,
            normal,
            offset,
        });
    }
    facets
}

impl ConvexBody {
    /// Convex hull of `points`, reduced to extreme vertices.
    pub fn from_points(points: &[Vec3]) -> Result<ConvexBody> {
        if points.is_empty() {
            return Err(Error::EmptyBody);
        }
        if points
            .iter()
            .any(|p| !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()))
        {
            return Err(Error::NonFinite);
        }
        let scale = bbox_diag(points);
        let tol = TAU_GEOM * scale.max(1.0);
        let pts = dedup(points, tol);
        let (origin, axes, extents) = principal_frame(&pts);
        let thr = TAU_RANK * scale;
        let mut dim = if pts.len() == 1 {
            0
        } else {
            extents.iter().filter(|&&e| e > thr).count()
        };

        let mut body = ConvexBody {
            vertices: Vec::new(),
            dim,
            diameter: 0.0,
            steiner: Vec3::zeros(),
            origin,
            axes,
            facets: Vec::new(),
            halfspaces: Vec::new(),
            triangles: Vec::new(),
            span: Vec::new(),
        };

        if dim == 3 {
            match hull3(&pts, tol) {
                Some(tris) => {
                    let ext = extreme_subset(&pts, &tris);
                    match hull3(&ext, tol) {
                        Some(tris) => {
                            body.facets = merge_facets(&ext, &tris);
                            body.vertices = ext;
                        }
                        None => dim = 2,
                    }
                }
                None => dim = 2,
            }
        }
        if dim == 2 {
            let coords: Vec<(f64, f64)> = pts
                .iter()
                .map(|p| ((p - origin).dot(&axes[0]), (p - origin).dot(&axes[1])))
                .collect();
            let ring = hull::hull2(&coords, tol * scale.max(1.0));
            if ring.len() >= 3 {
                body.vertices = ring.iter().map(|&i| pts[i]).collect();
            } else {
                dim = 1;
            }
        }
        if dim == 1 {
            let t: Vec<f64> = pts.iter().map(|p| (p - origin).dot(&axes[0])).collect();
            let lo = (0..pts.len())
                .min_by(|&a, &b| t[a].partial_cmp(&t[b]).unwrap())
                .unwrap();
            let hi = (0..pts.len())
                .max_by(|&a, &b| t[a].partial_cmp(&t[b]).unwrap())
                .unwrap();
            body.vertices = vec![pts[lo], pts[hi]];
        }
        if dim == 0 {
            body.vertices = vec![pts[0]];
        }
        body.dim = dim;
        body.finish();
        Ok(body)
    }

    fn finish(&mut self) {
        let v = &self.vertices;
        let mut diam: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                diam = diam.max((v[i] - v[j]).norm());
            }
        }
        self.diameter = diam;
        self.origin = v.iter().fold(Vec3::zeros(), |a, p| a + p) / v.len() as f64;
        self.halfspaces.clear();
        self.triangles.clear();
        match self.dim {
            3 => {
                for f in &self.facets {
                    self.halfspaces.push(HalfSpace {
                        normal: f.normal,
                        offset: f.offset,
                    });
                    for k in 1..f.ring.len() - 1 {
                        self.triangles.push([f.ring[0], f.ring[k], f.ring[k + 1]]);
                    }
                }
            }
            2 => {
                let normal = self.axes[2];
                let n = v.len();
                for i in 0..n {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    let out = (b - a).cross(&normal).normalize();
                    self.halfspaces.push(HalfSpace {
                        normal: out,
                        offset: out.dot(&a),
                    });
                }
            }
            1 => {
                let u = (v[1] - v[0]).normalize();
                self.axes[0] = u;
                self.halfspaces.push(HalfSpace {
                    normal: u,
                    offset: u.dot(&v[1]),
                });
                self.halfspaces.push(HalfSpace {
                    normal: -u,
                    offset: -u.dot(&v[0]),
                });
            }
            _ => {}
        }
        self.steiner = steiner::steiner_exact(self);
        let mut span: Vec<Vec3> = self.axes[..self.dim].to_vec();
        let mut off = self.origin;
        for a in &span {
            off -= a * a.dot(&off);
        }
        if self.dim < 3 && off.norm() > self.tol() {
            span.push(off.normalize());
        }
        self.span = span;
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn steiner(&self) -> Vec3 {
        self.steiner
    }

    /// Orthonormal frame; the first `dim` axes span the affine hull
    /// directions, and for planar bodies the third axis is the normal that
    /// orients the vertex ring counter-clockwise.
    pub fn axes(&self) -> &[Vec3; 3] {
        &self.axes
    }

    /// Facet polygons (solid bodies only).
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Fan triangulation of the facets (solid bodies only).
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Relative H-representation inside the affine hull.
    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    /// Orthonormal basis of the linear span of the body.
    pub fn span_basis(&self) -> &[Vec3] {
        &self.span
    }

    /// Geometric tolerance scaled to the body.
    pub fn tol(&self) -> f64 {
        TAU_GEOM * self.diameter.max(1.0)
    }

    pub fn centroid(&self) -> Vec3 {
        self.origin
    }

    /// Distance from `x` to the linear span.
    pub fn span_distance(&self, x: &Vec3) -> f64 {
        let mut r = *x;
        for a in &self.span {
            r -= a * a.dot(&r);
        }
        r.norm()
    }

    /// Component of `x` orthogonal to the affine hull directions.
    fn affine_offset(&self, x: &Vec3) -> Vec3 {
        let mut r = x - self.vertices[0];
        for a in &self.axes[..self.dim] {
            r -= a * a.dot(&r);
        }
        r
    }

    pub fn support(&self, u: &Vec3) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Nearest point of the body to `x`.
    pub fn nearest_point(&self, x: &Vec3) -> Vec3 {
        let v = &self.vertices;
        match self.dim {
            0 => v[0],
            1 => closest_on_segment(x, &v[0], &v[1]),
            2 => {
                let p = x - self.affine_offset(x);
                if self.halfspaces.iter().all(|h| h.normal.dot(&p) <= h.offset) {
                    return p;
                }
                let n = v.len();
                let mut best = v[0];
                let mut bd = f64::INFINITY;
                for i in 0..n {
                    let h = &self.halfspaces[i];
                    if h.normal.dot(&p) <= h.offset {
                        continue;
                    }
                    let q = closest_on_segment(&p, &v[i], &v[(i + 1) % n]);
                    let d = (q - p).norm_squared();
                    if d < bd {
                        bd = d;
                        best = q;
                    }
                }
                best
            }
            _ => {
                let mut best = *x;
                let mut bd = f64::INFINITY;
                for f in &self.facets {
                    if f.normal.dot(x) <= f.offset {
                        continue;
                    }
                    for k in 1..f.ring.len() - 1 {
                        let q = geom::closest_on_triangle(
                            x,
                            &v[f.ring[0]],
                            &v[f.ring[k]],
                            &v[f.ring[k + 1]],
                        );
                        let d = (q - x).norm_squared();
                        if d < bd {
                            bd = d;
                            best = q;
                        }
                    }
                }
                best
            }
        }
    }

    /// Euclidean distance from `x` to the body.
    pub fn distance(&self, x: &Vec3) -> f64 {
        (x - self.nearest_point(x)).norm()
    }

    /// Distance from a point of the affine hull to the relative boundary,
    /// negative outside.
    pub fn depth(&self, x: &Vec3) -> f64 {
        match self.dim {
            0 => -(x - self.vertices[0]).norm(),
            _ => self
                .halfspaces
                .iter()
                .map(|h| h.offset - h.normal.dot(x))
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn contains(&self, x: &Vec3, tol: f64) -> bool {
        self.distance(x) <= tol
    }

    /// True when the Steiner point is the origin within `TAU_STEINER`.
    pub fn is_centered(&self) -> bool {
        self.steiner.norm() <= TAU_STEINER * self.diameter + TAU_GEOM
    }

    /// Minkowski gauge `q(x) = inf{λ > 0 : x ∈ λD}`; the origin must lie in
    /// the relative interior and `x` in the span.
    pub fn gauge(&self, x: &Vec3) -> Result<f64> {
        if self.dim == 0 {
            return Err(Error::Degenerate);
        }
        if self.halfspaces.iter().any(|h| h.offset <= self.tol()) {
            return Err(Error::NotCentered);
        }
        if self.dim < 3 && self.affine_offset(x).norm() > self.tol() * x.norm().max(1.0) {
            return Err(Error::RayUndefined);
        }
        Ok(self
            .halfspaces
            .iter()
            .map(|h| h.normal.dot(x) / h.offset)
            .fold(0.0, f64::max))
    }

    /// Image under an orthogonal map; facet structure is carried over.
    pub fn rotate(&self, q: &Mat3) -> ConvexBody {
        let flip = q.determinant() < 0.0;
        let mut b = self.clone();
        b.vertices = self.vertices.iter().map(|v| q * v).collect();
        for f in &mut b.facets {
            f.normal = q * f.normal;
            if flip {
                f.ring.reverse();
            }
        }
        b.axes = [q * self.axes[0], q * self.axes[1], q * self.axes[2]];
        if self.dim == 2 {
            b.axes[2] = b.axes[0].cross(&b.axes[1]);
        }
        b.finish();
        b
    }

    /// Image under a general linear map (hull recomputed).
    pub fn transform(&self, m: &Mat3) -> Result<ConvexBody> {
        let pts: Vec<Vec3> = self.vertices.iter().map(|v| m * v).collect();
        ConvexBody::from_points(&pts)
    }

    pub fn translate(&self, t: &Vec3) -> ConvexBody {
        let pts: Vec<Vec3> = self.vertices.iter().map(|v| v + t).collect();
        ConvexBody::from_points(&pts).expect("translate keeps a nonempty finite vertex set")
    }

    /// Homothety about the origin, `s > 0`.
    pub fn scale(&self, s: f64) -> ConvexBody {
        let pts: Vec<Vec3> = self.vertices.iter().map(|v| v * s).collect();
        ConvexBody::from_points(&pts).expect("scaling keeps a nonempty finite vertex set")
    }

    /// Translate so that the Steiner point is at the origin.
    pub fn centered(&self) -> ConvexBody {
        self.translate(&-self.steiner)
    }

    /// `-D`.
    pub fn negate(&self) -> ConvexBody {
        self.rotate(&(-Mat3::identity()))
    }

    /// Hausdorff distance between `D` and `-D`.
    pub fn symmetry_defect(&self) -> f64 {
        hausdorff_distance(self, &self.negate())
    }

    /// `D = -D` within `TAU_SYM`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect() <= TAU_SYM * self.diameter + TAU_GEOM
    }

    /// `r_α(D) = D` within `TAU_SYM`.
    pub fn is_reflection_symmetric(&self, alpha: &Direction) -> bool {
        hausdorff_distance(self, &reflect(self, alpha)) <= TAU_SYM * self.diameter + TAU_GEOM
    }

    /// Edges as vertex index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self.dim {
            0 => Vec::new(),
            1 => vec![(0, 1)],
            2 => (0..self.vertices.len())
                .map(|i| (i, (i + 1) % self.vertices.len()))
                .collect(),
            _ => {
                let mut e = Vec::new();
                for f in &self.facets {
                    for k in 0..f.ring.len() {
                        let (a, b) = (f.ring[k], f.ring[(k + 1) % f.ring.len()]);
                        if a < b {
                            e.push((a, b));
                        }
                    }
                }
                e.sort_unstable();
                e
            }
        }
    }
}

use hull::hull3;
