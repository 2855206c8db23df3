//! Intrinsic metrics sampled as finite metric spaces.
//!
//! A [`Space`] names one of the length spaces built from a convex body: the
//! boundary surface of a solid, the double of a planar body, a segment, a
//! point, and the disc pieces cut out by a mirror plane. [`Space::sample`]
//! evaluates the metric on a list of [`Site`]s and returns a
//! [`MetricSample`].

mod planar;
mod surface;

use serde::{Deserialize, Serialize};

use crate::convex::{central_project, closest_on_segment, ConvexBody, Direction, Vec3};
use crate::error::{Error, Result};

pub(crate) use planar::Ring;
use surface::{pieces, surface_distances, PolySurface};

/// Which copy of a planar body a point of its double lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SheetTag {
    Sheet1,
    Sheet2,
    /// Glued points, shared by both sheets.
    Boundary,
}

impl SheetTag {
    pub fn swapped(self) -> SheetTag {
        match self {
            SheetTag::Sheet1 => SheetTag::Sheet2,
            SheetTag::Sheet2 => SheetTag::Sheet1,
            SheetTag::Boundary => SheetTag::Boundary,
        }
    }
}

/// A point of a sampled space. `sheet` is set only for doubles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Site {
    pub pos: Vec3,
    pub sheet: Option<SheetTag>,
}

impl Site {
    pub fn at(pos: Vec3) -> Site {
        Site { pos, sheet: None }
    }

    pub fn on(pos: Vec3, sheet: SheetTag) -> Site {
        Site {
            pos,
            sheet: Some(sheet),
        }
    }

    /// The image under `x ↦ -x`; on a double the sheets are exchanged as
    /// well, which is the antipodal map of a symmetric double.
    pub fn antipode(&self) -> Site {
        Site {
            pos: -self.pos,
            sheet: self.sheet.map(SheetTag::swapped),
        }
    }

    pub fn sheet_swapped(&self) -> Site {
        Site {
            pos: self.pos,
            sheet: self.sheet.map(SheetTag::swapped),
        }
    }

    /// Euclidean distance, infinite between the interiors of different sheets.
    pub fn gap(&self, other: &Site) -> f64 {
        let compatible = match (self.sheet, other.sheet) {
            (Some(a), Some(b)) => a == b || a == SheetTag::Boundary || b == SheetTag::Boundary,
            _ => true,
        };
        if compatible {
            (self.pos - other.pos).norm()
        } else {
            f64::INFINITY
        }
    }

    /// Same sheet and position within `tol`.
    pub fn same(&self, other: &Site, tol: f64) -> bool {
        self.sheet == other.sheet && (self.pos - other.pos).norm() <= tol
    }
}

/// Removes repeated sites, keeping the first occurrence of each.
pub fn dedup_sites(sites: &[Site], tol: f64) -> Vec<Site> {
    let mut order: Vec<usize> = (0..sites.len()).collect();
    order.sort_by(|&a, &b| sites[a].pos.x.total_cmp(&sites[b].pos.x).then(a.cmp(&b)));
    let mut keep = vec![true; sites.len()];
    for (k, &i) in order.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        for &j in &order[k + 1..] {
            if sites[j].pos.x - sites[i].pos.x > tol {
                break;
            }
            if keep[j] && sites[i].same(&sites[j], tol) {
                keep[i.max(j)] = false;
                if j < i {
                    break;
                }
            }
        }
    }
    sites
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(s, _)| *s)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceKind {
    #[serde(rename = "point")]
    Point,
    #[serde(rename = "segment")]
    Segment,
    #[serde(rename = "boundary3d")]
    Boundary3d,
    #[serde(rename = "double2d")]
    Double2d,
    #[serde(rename = "disc-boundary-cap")]
    DiscBoundaryCap,
    #[serde(rename = "disc-flat")]
    DiscFlat,
    #[serde(rename = "disc-half-double")]
    DiscHalfDouble,
}

impl SpaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::Point => "point",
            SpaceKind::Segment => "segment",
            SpaceKind::Boundary3d => "boundary3d",
            SpaceKind::Double2d => "double2d",
            SpaceKind::DiscBoundaryCap => "disc-boundary-cap",
            SpaceKind::DiscFlat => "disc-flat",
            SpaceKind::DiscHalfDouble => "disc-half-double",
        }
    }
}

/// Discretization knobs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Resolution {
    /// Geodesic graph edge spacing is `diam / 2^mesh_level`.
    pub mesh_level: u32,
    /// Default sites are spaced `diam / 2^(sample_level+1)` apart.
    pub sample_level: u32,
    /// Number of default sites along the boundary of a planar body.
    pub boundary_res: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution {
            mesh_level: 4,
            sample_level: 2,
            boundary_res: 128,
        }
    }
}

impl Resolution {
    pub(crate) fn site_spacing(&self, diam: f64) -> f64 {
        diam / f64::powi(2.0, self.sample_level as i32 + 1)
    }

    pub(crate) fn mesh_spacing(&self, diam: f64) -> f64 {
        diam / f64::powi(2.0, self.mesh_level as i32)
    }
}

/// A finite metric space: labeled points and a full distance matrix.
#[derive(Clone, Debug)]
pub struct MetricSample {
    pub kind: SpaceKind,
    pub mesh_level: u32,
    points: Vec<Site>,
    dist: Vec<f64>,
}

impl MetricSample {
    pub fn new(
        kind: SpaceKind,
        mesh_level: u32,
        points: Vec<Site>,
        dist: Vec<f64>,
    ) -> Result<MetricSample> {
        if dist.len() != points.len() * points.len() {
            return Err(Error::InvalidInput("distance matrix size".into()));
        }
        if dist.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::InvalidInput(
                "distances must be finite and nonnegative".into(),
            ));
        }
        Ok(MetricSample {
            kind,
            mesh_level,
            points,
            dist,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Site] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Site {
        &self.points[i]
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.points.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.points.len();
        &self.dist[i * n..(i + 1) * n]
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Index of the nearest site on the same sheet as `s`, if within `tol`.
    pub fn find(&self, s: &Site, tol: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in self.points.iter().enumerate() {
            if p.sheet != s.sheet {
                continue;
            }
            let d = (p.pos - s.pos).norm();
            if d <= tol && best.map_or(true, |(_, b)| d < b) {
                best = Some((i, d));
            }
        }
        best.map(|b| b.0)
    }

    /// Index and Euclidean gap of the nearest compatible site.
    pub fn nearest(&self, s: &Site) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (i, p) in self.points.iter().enumerate() {
            let g = p.gap(s);
            if g < best.1 {
                best = (i, g);
            }
        }
        best
    }

    /// Largest violation of the metric axioms: nonzero diagonal, asymmetry,
    /// or triangle excess `d(i,k) - d(i,j) - d(j,k)`.
    pub fn metric_defect(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            worst = worst.max(self.d(i, i).abs());
            for j in 0..n {
                worst = worst.max((self.d(i, j) - self.d(j, i)).abs());
            }
        }
        for j in 0..n {
            let rj = self.row(j);
            for i in 0..n {
                let dij = self.d(i, j);
                let ri = self.row(i);
                for k in 0..n {
                    worst = worst.max(ri[k] - dij - rj[k]);
                }
            }
        }
        worst
    }

    /// Triangle tolerance `1e-9 · max entry`.
    pub fn tau_tri(&self) -> f64 {
        1e-9 * self.diameter()
    }
}

/// A length space realized by a convex body.
#[derive(Clone, Debug)]
pub enum Space {
    Point(Vec3),
    Segment(Vec3, Vec3),
    /// Boundary of a solid body with its intrinsic metric.
    Surface(ConvexBody),
    /// `∂D ∩ {⟨α,·⟩ >= 0}` with paths confined to the cap.
    Cap(ConvexBody, Direction),
    /// Two copies of a planar body glued along the boundary.
    Double(ConvexBody),
    /// Both sheets over `K ∩ {⟨α,·⟩ >= 0}` inside the double of `K`.
    HalfDouble(ConvexBody, Direction),
    /// A planar body with the Euclidean metric.
    Flat(ConvexBody),
}

impl Space {
    /// `∂D`, the double, the segment or the point, by dimension.
    pub fn sphere(body: &ConvexBody) -> Space {
        let v = body.vertices();
        match body.dim() {
            0 => Space::Point(v[0]),
            1 => Space::Segment(v[0], v[1]),
            2 => Space::Double(body.clone()),
            _ => Space::Surface(body.clone()),
        }
    }

    /// The disc cut out of `body` by the mirror `α`; the body must be
    /// symmetric under the reflection in `α^⊥`.
    pub fn disc(body: &ConvexBody, alpha: &Direction) -> Result<Space> {
        if body.dim() == 0 {
            return Err(Error::Degenerate);
        }
        if !body.is_reflection_symmetric(alpha) {
            return Err(Error::NotAlphaSymmetric);
        }
        let a = alpha.vec();
        let tol = 1e-7;
        let along = body
            .span_basis()
            .iter()
            .map(|u| u.dot(&a).powi(2))
            .sum::<f64>()
            .sqrt();
        match body.dim() {
            3 => Ok(Space::Cap(body.clone(), *alpha)),
            2 => {
                if (along - 1.0).abs() <= tol {
                    Ok(Space::HalfDouble(body.clone(), *alpha))
                } else if along <= tol {
                    Ok(Space::Flat(body.clone()))
                } else {
                    Err(Error::NotAlphaSymmetric)
                }
            }
            _ => {
                let v = body.vertices();
                if (along - 1.0).abs() <= tol {
                    let top = if a.dot(&v[0]) > a.dot(&v[1]) {
                        v[0]
                    } else {
                        v[1]
                    };
                    let mid = (v[0] + v[1]) * 0.5;
                    Ok(Space::Segment(mid, top))
                } else if along <= tol {
                    Ok(Space::Segment(v[0], v[1]))
                } else {
                    Err(Error::NotAlphaSymmetric)
                }
            }
        }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            Space::Point(_) => SpaceKind::Point,
            Space::Segment(..) => SpaceKind::Segment,
            Space::Surface(_) => SpaceKind::Boundary3d,
            Space::Cap(..) => SpaceKind::DiscBoundaryCap,
            Space::Double(_) => SpaceKind::Double2d,
            Space::HalfDouble(..) => SpaceKind::DiscHalfDouble,
            Space::Flat(_) => SpaceKind::DiscFlat,
        }
    }

    pub fn is_double(&self) -> bool {
        matches!(self, Space::Double(_) | Space::HalfDouble(..))
    }

    /// Diameter of the underlying body.
    pub fn extent(&self) -> f64 {
        match self {
            Space::Point(_) => 0.0,
            Space::Segment(a, b) => (b - a).norm(),
            Space::Surface(b)
            | Space::Cap(b, _)
            | Space::Double(b)
            | Space::HalfDouble(b, _)
            | Space::Flat(b) => b.diameter(),
        }
    }

    /// Matching tolerance for sites, `1e-9 · max(diam, 1)`.
    pub fn site_tol(&self) -> f64 {
        1e-9 * self.extent().max(1.0)
    }

    fn ring(body: &ConvexBody) -> Ring {
        Ring::new(body.vertices().to_vec(), body.axes()[2])
    }

    fn poly_surface(&self) -> Option<PolySurface> {
        match self {
            Space::Surface(b) => Some(PolySurface::of_body(b)),
            Space::Cap(b, a) => Some(PolySurface::of_body(b).clipped(&a.vec(), self.site_tol())),
            _ => None,
        }
    }

    /// Moves `s` onto the space. Points further than `0.01·diam` away are
    /// refused.
    pub fn snap(&self, s: &Site) -> Result<Site> {
        let reach = 0.01 * self.extent() + self.site_tol();
        let checked = |p: Vec3| -> Result<Vec3> {
            if (p - s.pos).norm() > reach {
                Err(Error::NotOnSurface)
            } else {
                Ok(p)
            }
        };
        match self {
            Space::Point(p) => Ok(Site::at(checked(*p)?)),
            Space::Segment(a, b) => Ok(Site::at(checked(closest_on_segment(&s.pos, a, b))?)),
            Space::Surface(b) | Space::Cap(b, _) => {
                let p = checked(surface_snap(b, &s.pos))?;
                if let Space::Cap(_, alpha) = self {
                    if alpha.vec().dot(&p) < -self.site_tol() {
                        return Err(Error::NotOnSurface);
                    }
                }
                Ok(Site::at(p))
            }
            Space::Flat(b) => Ok(Site::at(checked(b.nearest_point(&s.pos))?)),
            Space::Double(b) | Space::HalfDouble(b, _) => {
                let p = checked(b.nearest_point(&s.pos))?;
                if let Space::HalfDouble(_, alpha) = self {
                    if alpha.vec().dot(&p) < -self.site_tol() {
                        return Err(Error::NotOnSurface);
                    }
                }
                let ring = Space::ring(b);
                let depth = ring.depth(&p);
                let tol = self.site_tol();
                if depth <= tol {
                    return Ok(Site::on(p, SheetTag::Boundary));
                }
                match s.sheet {
                    Some(SheetTag::Boundary) => {
                        if depth > reach {
                            return Err(Error::NotOnSurface);
                        }
                        Ok(Site::on(
                            b.nearest_point(&(p + boundary_push(&ring, &p))),
                            SheetTag::Boundary,
                        ))
                    }
                    Some(t) => Ok(Site::on(p, t)),
                    None => Ok(Site::on(p, SheetTag::Sheet1)),
                }
            }
        }
    }

    /// Default site set at the given resolution.
    pub fn default_sites(&self, res: &Resolution) -> Vec<Site> {
        let h = res.site_spacing(self.extent());
        let out: Vec<Site> = match self {
            Space::Point(p) => vec![Site::at(*p)],
            Space::Segment(a, b) => {
                let n = 1usize << (res.sample_level + 2);
                (0..=n)
                    .map(|k| Site::at(a + (b - a) * (k as f64 / n as f64)))
                    .collect()
            }
            Space::Surface(_) | Space::Cap(..) => {
                let surf = self.poly_surface().expect("solid space");
                surface_sites(&surf, h).into_iter().map(Site::at).collect()
            }
            Space::Double(b) | Space::HalfDouble(b, _) | Space::Flat(b) => {
                let ring = Space::ring(b);
                let spacing = ring.perimeter() / res.boundary_res.max(3) as f64;
                let tol = self.site_tol();
                let (region, two_sheets) = match self {
                    Space::HalfDouble(_, a) => (ring.clip(&a.vec(), tol), true),
                    Space::Double(_) => (ring.clone(), true),
                    _ => (ring.clone(), false),
                };
                let mut out = Vec::new();
                let mut push = |p: Vec3, on_boundary: bool| {
                    if !two_sheets {
                        out.push(Site::at(p));
                    } else if on_boundary {
                        out.push(Site::on(p, SheetTag::Boundary));
                    } else {
                        out.push(Site::on(p, SheetTag::Sheet1));
                        out.push(Site::on(p, SheetTag::Sheet2));
                    }
                };
                for p in region.boundary_points(spacing) {
                    push(p, ring.depth(&p) <= tol);
                }
                for p in region.interior_grid(h) {
                    push(p, false);
                }
                out
            }
        };
        dedup_sites(&out, self.site_tol())
    }

    /// Intrinsic distances between the given sites, after snapping.
    pub fn sample(&self, sites: &[Site], res: &Resolution) -> Result<MetricSample> {
        let sites: Vec<Site> = sites.iter().map(|s| self.snap(s)).collect::<Result<_>>()?;
        let n = sites.len();
        let dist: Vec<f64> = match self {
            Space::Point(_) => vec![0.0; n * n],
            Space::Segment(..) | Space::Flat(_) => {
                let mut d = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        d[i * n + j] = (sites[i].pos - sites[j].pos).norm();
                    }
                }
                d
            }
            Space::Double(b) | Space::HalfDouble(b, _) => double_distances(&Space::ring(b), &sites),
            Space::Surface(_) | Space::Cap(..) => {
                let surf = self.poly_surface().expect("solid space");
                let pos: Vec<Vec3> = sites.iter().map(|s| s.pos).collect();
                let face_tol = 1e-7 * self.extent().max(1.0);
                surface_distances(&surf, res.mesh_spacing(self.extent()), &pos, face_tol)
                    .ok_or(Error::NotOnSurface)?
            }
        };
        MetricSample::new(self.kind(), res.mesh_level, sites, dist)
    }

    /// [`Space::sample`] on the default sites.
    pub fn realize(&self, res: &Resolution) -> Result<MetricSample> {
        self.sample(&self.default_sites(res), res)
    }
}

/// Outward offset from `p` to the nearest edge line of the ring.
fn boundary_push(ring: &Ring, p: &Vec3) -> Vec3 {
    let m = ring.pts.len();
    let mut best = (f64::INFINITY, Vec3::zeros());
    for i in 0..m {
        let (a, b) = (ring.pts[i], ring.pts[(i + 1) % m]);
        let out = (b - a).cross(&ring.normal).normalize();
        let d = -out.dot(&(p - a));
        if d < best.0 {
            best = (d, out * d);
        }
    }
    best.1
}

fn surface_snap(body: &ConvexBody, x: &Vec3) -> Vec3 {
    if body.is_centered() && x.norm() > body.tol() {
        if let Ok(p) = central_project(body, x) {
            return p;
        }
    }
    let q = body.nearest_point(x);
    if (q - x).norm() > 0.0 {
        return q;
    }
    let f = body
        .facets()
        .iter()
        .max_by(|a, b| (a.normal.dot(x) - a.offset).total_cmp(&(b.normal.dot(x) - b.offset)))
        .expect("solid body has facets");
    x - f.normal * (f.normal.dot(x) - f.offset)
}

fn surface_sites(surf: &PolySurface, h: f64) -> Vec<Vec3> {
    let mut used: Vec<usize> = surf
        .faces
        .iter()
        .flat_map(|f| f.ring.iter().copied())
        .collect();
    used.sort_unstable();
    used.dedup();
    let mut out: Vec<Vec3> = used.into_iter().map(|i| surf.verts[i]).collect();
    for (a, b) in surf.edges() {
        let (pa, pb) = (surf.verts[a], surf.verts[b]);
        let n = pieces((pb - pa).norm(), h);
        for k in 1..n {
            out.push(pa + (pb - pa) * (k as f64 / n as f64));
        }
    }
    for f in &surf.faces {
        let ring = Ring::new(f.ring.iter().map(|&i| surf.verts[i]).collect(), f.normal);
        out.extend(ring.interior_grid(h));
    }
    out
}

fn double_distances(ring: &Ring, sites: &[Site]) -> Vec<f64> {
    use rayon::prelude::*;
    let n = sites.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, b) = (&sites[i], &sites[j]);
                    if j < i {
                        return 0.0;
                    }
                    let cross = matches!(
                        (a.sheet, b.sheet),
                        (Some(SheetTag::Sheet1), Some(SheetTag::Sheet2))
                            | (Some(SheetTag::Sheet2), Some(SheetTag::Sheet1))
                    );
                    if cross {
                        ring.through_boundary(&a.pos, &b.pos)
                    } else {
                        (a.pos - b.pos).norm()
                    }
                })
                .collect()
        })
        .collect();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            d[i * n + j] = rows[i][j];
            d[j * n + i] = rows[i][j];
        }
    }
    d
}

/// Endpoints of the chord `(x + Rv) ∩ B` as offsets along `v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelopes {
    /// Lower (convex) envelope.
    pub phi1: f64,
    /// Upper (concave) envelope.
    pub phi2: f64,
}

/// Clips the line through `x` (projected to `v^⊥`) against every facet plane.
pub fn envelopes(body: &ConvexBody, v: &Direction, x: &Vec3) -> Result<Envelopes> {
    if body.dim() != 3 {
        return Err(Error::NeedsSolid);
    }
    let v = v.vec();
    let x0 = x - v * v.dot(x);
    let tol = body.tol();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for h in body.halfspaces() {
        let a = h.normal.dot(&v);
        let c = h.offset - h.normal.dot(&x0);
        if a.abs() < 1e-14 {
            if c < -tol {
                return Err(Error::OutsideShadow);
            }
        } else if a > 0.0 {
            hi = hi.min(c / a);
        } else {
            lo = lo.max(c / a);
        }
    }
    if lo > hi + tol {
        return Err(Error::OutsideShadow);
    }
    if lo > hi {
        let m = 0.5 * (lo + hi);
        lo = m;
        hi = m;
    }
    Ok(Envelopes { phi1: lo, phi2: hi })
}

/// Intrinsic metric of `∂B` at the given basepoints.
pub fn boundary_metric(
    body: &ConvexBody,
    mesh_level: u32,
    basepoints: &[Vec3],
) -> Result<MetricSample> {
    if body.dim() != 3 {
        return Err(Error::NeedsSolid);
    }
    let res = Resolution {
        mesh_level,
        ..Resolution::default()
    };
    let sites: Vec<Site> = basepoints.iter().map(|p| Site::at(*p)).collect();
    Space::Surface(body.clone()).sample(&sites, &res)
}

/// Metric of the double of a planar body at the given points.
pub fn double_metric(polygon: &ConvexBody, basepoints: &[Site]) -> Result<MetricSample> {
    if polygon.dim() != 2 {
        return Err(Error::NeedsPlanar);
    }
    Space::Double(polygon.clone()).sample(basepoints, &Resolution::default())
}

/// The sphere realization of a body, sampled on default sites.
pub fn realize_sphere(body: &ConvexBody, res: &Resolution) -> Result<MetricSample> {
    Space::sphere(body).realize(res)
}

/// The disc realization of a body and mirror direction, sampled on default
/// sites.
pub fn realize_disc(
    body: &ConvexBody,
    alpha: &Direction,
    res: &Resolution,
) -> Result<MetricSample> {
    Space::disc(body, alpha)?.realize(res)
}

/// Permutation exchanging the two sheets of a sampled double; boundary
/// points are fixed.
pub fn sheet_swap(sample: &MetricSample) -> Result<Vec<usize>> {
    if !matches!(sample.kind, SpaceKind::Double2d | SpaceKind::DiscHalfDouble) {
        return Err(Error::NotADouble);
    }
    let tol = 1e-9
        * sample
            .points()
            .iter()
            .map(|p| p.pos.norm())
            .fold(1.0, f64::max);
    sample
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| match p.sheet {
            Some(SheetTag::Boundary) | None => Ok(i),
            Some(_) => sample
                .find(&p.sheet_swapped(), tol)
                .ok_or_else(|| Error::InvalidInput("sample not closed under sheet swap".into())),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::shapes::{cube, regular_polygon, segment};

    #[test]
    fn cube_geodesics() {
        let pts = [
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(0.0, 0.0, -1.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(-1.0, -1.0, -1.0),
        ];
        let m = boundary_metric(&cube(1.0), 4, &pts).unwrap();
        assert!((m.d(0, 1) - 4.0).abs() < 1e-9);
        assert!((m.d(0, 2) - 2.0).abs() < 1e-9);
        assert!((m.d(3, 4) - 20f64.sqrt()).abs() < 1e-9);
        assert_eq!(
            boundary_metric(&regular_polygon(4, 1.0), 4, &pts).unwrap_err(),
            Error::NeedsSolid
        );
        assert_eq!(
            boundary_metric(&cube(1.0), 4, &[Vec3::new(0.0, 0.0, 3.0)]).unwrap_err(),
            Error::NotOnSurface
        );
    }

    #[test]
    fn disc_double() {
        let k = regular_polygon(64, 1.0);
        let c = Vec3::zeros();
        let m = double_metric(
            &k,
            &[Site::on(c, SheetTag::Sheet1), Site::on(c, SheetTag::Sheet2)],
        )
        .unwrap();
        assert!((m.d(0, 1) - 2.0).abs() < 0.01);
        let full = realize_sphere(&k, &Resolution::default()).unwrap();
        let swap = sheet_swap(&full).unwrap();
        for i in 0..full.len() {
            assert_eq!(swap[swap[i]], i);
            for j in 0..full.len() {
                assert!((full.d(swap[i], swap[j]) - full.d(i, j)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn envelope_values() {
        let e = envelopes(&cube(1.0), &Direction::z(), &Vec3::new(1.0, 1.0, 0.0)).unwrap();
        assert!((e.phi1 + 1.0).abs() < 1e-12 && (e.phi2 - 1.0).abs() < 1e-12);
        let s = crate::convex::shapes::simplex();
        let e = envelopes(&s, &Direction::z(), &Vec3::new(0.25, 0.25, 0.0)).unwrap();
        assert!(e.phi1.abs() < 1e-12 && (e.phi2 - 0.5).abs() < 1e-12);
        assert_eq!(
            envelopes(&cube(1.0), &Direction::z(), &Vec3::new(2.0, 0.0, 0.0)),
            Err(Error::OutsideShadow)
        );
    }

    #[test]
    fn dispatch() {
        let p = ConvexBody::from_points(&[Vec3::zeros()]).unwrap();
        let m = realize_sphere(&p, &Resolution::default()).unwrap();
        assert_eq!((m.len(), m.diameter()), (1, 0.0));
        let s = realize_sphere(&segment(-Vec3::x(), Vec3::x()), &Resolution::default()).unwrap();
        assert_eq!(s.kind, SpaceKind::Segment);
        assert!((s.diameter() - 2.0).abs() < 1e-15);
        assert_eq!(
            realize_sphere(
                &cube(1.0),
                &Resolution {
                    sample_level: 0,
                    ..Default::default()
                }
            )
            .unwrap()
            .kind,
            SpaceKind::Boundary3d
        );
    }

    #[test]
    fn cap_and_disc_cases() {
        let cap = Space::disc(&cube(1.0), &Direction::z()).unwrap();
        let m = cap
            .sample(
                &[
                    Site::at(Vec3::new(0.0, 0.0, 1.0)),
                    Site::at(Vec3::new(1.0, 0.0, 0.0)),
                ],
                &Resolution::default(),
            )
            .unwrap();
        assert!((m.d(0, 1) - 2.0).abs() < 1e-9);
        let sq = crate::convex::shapes::cuboid(0.5, 0.5, 0.0);
        assert_eq!(
            Space::disc(&sq, &Direction::z()).unwrap().kind(),
            SpaceKind::DiscFlat
        );
        assert_eq!(
            Space::disc(&sq, &Direction::x()).unwrap().kind(),
            SpaceKind::DiscHalfDouble
        );
        let half = Space::disc(&regular_polygon(64, 1.0), &Direction::y()).unwrap();
        let a = Vec3::new(0.0, 0.5, 0.0);
        let m = half
            .sample(
                &[Site::on(a, SheetTag::Sheet1), Site::on(a, SheetTag::Sheet2)],
                &Resolution::default(),
            )
            .unwrap();
        assert!((m.d(0, 1) - 1.0).abs() < 0.01);
        assert_eq!(
            Space::disc(&crate::convex::shapes::simplex(), &Direction::z()).unwrap_err(),
            Error::NotAlphaSymmetric
        );
    }
}
