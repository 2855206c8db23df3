//! Quickhull in three dimensions over a point slice.
//!
//! Returns outward-oriented triangles indexing into the input. Points within
//! `eps` of a face plane count as inside, so nearly coplanar clusters collapse
//! onto the enclosing face instead of producing slivers.

use std::collections::HashMap;

use super::Vec3;

struct Face {
    v: [usize; 3],
    n: Vec3,
    d: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Face {
    fn new(pts: &[Vec3], a: usize, b: usize, c: usize) -> Face {
        let n = (pts[b] - pts[a]).cross(&(pts[c] - pts[a]));
        let len = n.norm();
        let n = if len > 0.0 { n / len } else { n };
        Face {
            v: [a, b, c],
            n,
            d: n.dot(&pts[a]),
            outside: Vec::new(),
            alive: true,
        }
    }

    fn dist(&self, p: &Vec3) -> f64 {
        self.n.dot(p) - self.d
    }
}

fn farthest<I: Iterator<Item = usize>>(it: I, f: impl Fn(usize) -> f64) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for i in it {
        let v = f(i);
        if best.map_or(true, |(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best
}

/// Triangulated hull of `pts`, or `None` when the points do not span three
/// dimensions at tolerance `eps`.
pub(crate) fn hull3(pts: &[Vec3], eps: f64) -> Option<Vec<[usize; 3]>> {
    let n = pts.len();
    if n < 4 {
        return None;
    }
    let i0 = (0..n)
        .min_by(|&a, &b| {
            pts[a]
                .x
                .partial_cmp(&pts[b].x)
                .unwrap()
                .then(pts[a].y.partial_cmp(&pts[b].y).unwrap())
        })
        .unwrap();
    let (i1, d1) = farthest(0..n, |i| (pts[i] - pts[i0]).norm())?;
    if d1 <= eps {
        return None;
    }
    let dir = (pts[i1] - pts[i0]) / d1;
    let (i2, d2) = farthest(0..n, |i| {
        let w = pts[i] - pts[i0];
        (w - dir * w.dot(&dir)).norm()
    })?;
    if d2 <= eps {
        return None;
    }
    let base = Face::new(pts, i0, i1, i2);
    let (i3, d3) = farthest(0..n, |i| base.dist(&pts[i]).abs())?;
    if d3 <= eps {
        return None;
    }

    let mut faces: Vec<Face> = Vec::new();
    let simplex = [i0, i1, i2, i3];
    for &(a, b, c, o) in &[(0, 1, 2, 3), (0, 3, 1, 2), (1, 3, 2, 0), (2, 3, 0, 1)] {
        let (a, b, c, o) = (simplex[a], simplex[b], simplex[c], simplex[o]);
        let mut f = Face::new(pts, a, b, c);
        if f.dist(&pts[o]) > 0.0 {
            f = Face::new(pts, a, c, b);
        }
        faces.push(f);
    }
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            edges.insert((f.v[k], f.v[(k + 1) % 3]), fi);
        }
    }
    for i in 0..n {
        if simplex.contains(&i) {
            continue;
        }
        assign(&mut faces, 0..4, i, pts, eps);
    }

    let mut cursor = 0usize;
    loop {
        while cursor < faces.len() && (!faces[cursor].alive || faces[cursor].outside.is_empty()) {
            cursor += 1;
        }
        if cursor >= faces.len() {
            break;
        }
        let fi = cursor;
        let (eye, _) = farthest(faces[fi].outside.iter().copied(), |i| {
            faces[fi].dist(&pts[i])
        })
        .unwrap();
        let ep = pts[eye];

        let mut visible = vec![fi];
        let mut is_visible: HashMap<usize, bool> = HashMap::new();
        is_visible.insert(fi, true);
        let mut k = 0;
        while k < visible.len() {
            let f = visible[k];
            k += 1;
            let v = faces[f].v;
            for e in 0..3 {
                let (a, b) = (v[e], v[(e + 1) % 3]);
                if let Some(&g) = edges.get(&(b, a)) {
                    if is_visible.contains_key(&g) {
                        continue;
                    }
                    let vis = faces[g].alive && faces[g].dist(&ep) > eps;
                    is_visible.insert(g, vis);
                    if vis {
                        visible.push(g);
                    }
                }
            }
        }

        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &f in &visible {
            let v = faces[f].v;
            for e in 0..3 {
                let (a, b) = (v[e], v[(e + 1) % 3]);
                let across = edges.get(&(b, a)).copied();
                if across.map_or(true, |g| !is_visible.get(&g).copied().unwrap_or(false)) {
                    horizon.push((a, b));
                }
            }
        }

        let mut orphans: Vec<usize> = Vec::new();
        for &f in &visible {
            faces[f].alive = false;
            orphans.extend(faces[f].outside.drain(..).filter(|&i| i != eye));
            let v = faces[f].v;
            for e in 0..3 {
                let key = (v[e], v[(e + 1) % 3]);
                if edges.get(&key) == Some(&f) {
                    edges.remove(&key);
                }
            }
        }

        let first_new = faces.len();
        for &(a, b) in &horizon {
            let f = Face::new(pts, a, b, eye);
            let id = faces.len();
            for e in 0..3 {
                edges.insert((f.v[e], f.v[(e + 1) % 3]), id);
            }
            faces.push(f);
        }
        let end = faces.len();
        for i in orphans {
            assign(&mut faces, first_new..end, i, pts, eps);
        }
        cursor = cursor.min(first_new);
    }

    Some(faces.iter().filter(|f| f.alive).map(|f| f.v).collect())
}

fn assign(faces: &mut [Face], range: std::ops::Range<usize>, i: usize, pts: &[Vec3], eps: f64) {
    let mut best: Option<(usize, f64)> = None;
    for fi in range {
        if !faces[fi].alive {
            continue;
        }
        let d = faces[fi].dist(&pts[i]);
        if d > eps && best.map_or(true, |(_, b)| d > b) {
            best = Some((fi, d));
        }
    }
    if let Some((fi, _)) = best {
        faces[fi].outside.push(i);
    }
}

/// Andrew's monotone chain on planar coordinates; counter-clockwise indices,
/// collinear points removed.
pub(crate) fn hull2(pts: &[(f64, f64)], eps: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| {
        pts[a]
            .0
            .partial_cmp(&pts[b].0)
            .unwrap()
            .then(pts[a].1.partial_cmp(&pts[b].1).unwrap())
    });
    if idx.len() < 3 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| {
        let (ox, oy) = pts[o];
        (pts[a].0 - ox) * (pts[b].1 - oy) - (pts[a].1 - oy) * (pts[b].0 - ox)
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= eps {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= eps {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
