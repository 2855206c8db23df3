//! Planar convex polygons: clipping, site grids and the double metric.

use crate::convex::Vec3;

/// Polygon in a plane of R³, counter-clockwise around `normal`.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub pts: Vec<Vec3>,
    pub normal: Vec3,
}

impl Ring {
    pub fn new(mut pts: Vec<Vec3>, normal: Vec3) -> Ring {
        if super::surface::polygon_area(&pts, &normal) < 0.0 {
            pts.reverse();
        }
        Ring { pts, normal }
    }

    fn edge(&self, i: usize) -> (Vec3, Vec3) {
        (self.pts[i], self.pts[(i + 1) % self.pts.len()])
    }

    /// Distance to the relative boundary, negative outside.
    pub fn depth(&self, x: &Vec3) -> f64 {
        (0..self.pts.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                let out = (b - a).cross(&self.normal).normalize();
                -out.dot(&(x - a))
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Part in `{⟨alpha,x⟩ >= 0}`.
    pub fn clip(&self, alpha: &Vec3, tol: f64) -> Ring {
        let m = self.pts.len();
        let mut out = Vec::with_capacity(m + 2);
        for k in 0..m {
            let (a, b) = self.edge(k);
            let (sa, sb) = (alpha.dot(&a), alpha.dot(&b));
            if sa >= -tol {
                out.push(a);
            }
            if (sa >= -tol) != (sb >= -tol) && sa.abs() > tol && sb.abs() > tol {
                out.push(a + (b - a) * (sa / (sa - sb)));
            }
        }
        out.dedup_by(|p, q| (*p - *q).norm() <= tol);
        Ring {
            pts: out,
            normal: self.normal,
        }
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.pts.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                (b - a).norm()
            })
            .sum()
    }

    /// Points along the boundary, corners included, with consecutive gaps at
    /// most `spacing`.
    pub fn boundary_points(&self, spacing: f64) -> Vec<Vec3> {
        let mut out = Vec::new();
        for i in 0..self.pts.len() {
            let (a, b) = self.edge(i);
            let n = ((b - a).norm() / spacing).ceil().max(1.0) as usize;
            for k in 0..n {
                out.push(a + (b - a) * (k as f64 / n as f64));
            }
        }
        out
    }

    /// Square grid of the given spacing through the vertex average, keeping
    /// points deeper than a quarter spacing.
    pub fn interior_grid(&self, spacing: f64) -> Vec<Vec3> {
        let c = self.pts.iter().fold(Vec3::zeros(), |s, p| s + p) / self.pts.len() as f64;
        let e1 = (self.pts[1] - self.pts[0]).normalize();
        let e2 = self.normal.cross(&e1);
        let mut reach: f64 = 0.0;
        for p in &self.pts {
            reach = reach.max((p - c).norm());
        }
        let k = (reach / spacing).ceil() as i64;
        let mut out = Vec::new();
        for i in -k..=k {
            for j in -k..=k {
                let p = c + e1 * (i as f64 * spacing) + e2 * (j as f64 * spacing);
                if self.depth(&p) > 0.25 * spacing {
                    out.push(p);
                }
            }
        }
        out
    }

    /// `inf_{z ∈ ∂K} |x-z| + |z-y|` for `x`, `y` in the polygon. On each edge
    /// the sum is convex along the edge line and minimized where the segment
    /// from `x` to the mirror image of `y` meets it; the constrained minimum
    /// is the clamped point.
    pub fn through_boundary(&self, x: &Vec3, y: &Vec3) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.pts.len() {
            let (a, b) = self.edge(i);
            let d = b - a;
            let len = d.norm();
            let u = d / len;
            let w = y - a;
            let mirror = a + u * (2.0 * u.dot(&w)) - w;
            let out = u.cross(&self.normal);
            let sx = out.dot(&(x - a));
            let sy = out.dot(&(mirror - a));
            let t = if (sy - sx).abs() > 1e-300 {
                let p = x + (mirror - x) * (sx / (sx - sy));
                u.dot(&(p - a)) / len
            } else {
                u.dot(&(x - a)) / len
            };
            let z = a + d * t.clamp(0.0, 1.0);
            best = best.min((x - z).norm() + (z - y).norm());
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Ring {
        Ring::new(
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(1.0, 1.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
            ],
            Vec3::z(),
        )
    }

    #[test]
    fn out_and_back() {
        let s = square();
        let p = Vec3::new(0.25, 0.5, 0.0);
        assert!((s.through_boundary(&p, &p) - 0.5).abs() < 1e-15);
        let q = Vec3::new(0.75, 0.5, 0.0);
        // the left edge beats the bottom one: 1 < sqrt(1.25)
        assert!((s.through_boundary(&p, &q) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clip_and_grid() {
        let s = square().clip(&Vec3::new(-1.0, 0.0, 0.0).normalize(), 1e-12);
        assert!(s.pts.len() < 3);
        let h = Ring::new(
            square()
                .pts
                .iter()
                .map(|p| p - Vec3::new(0.5, 0.5, 0.0))
                .collect(),
            Vec3::z(),
        )
        .clip(&Vec3::x(), 1e-12);
        assert_eq!(h.pts.len(), 4);
        assert!((h.perimeter() - 3.0).abs() < 1e-12);
        let g = square().interior_grid(0.1);
        assert!(g.iter().all(|p| square().depth(p) > 0.025));
        assert!(g.len() > 50);
    }
}
