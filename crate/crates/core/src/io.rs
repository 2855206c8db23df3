//! JSON forms of bodies, directions and metric samples.
//!
//! Bodies are `{"vertices": [[x, y, z], ...]}`, directions `[x, y, z]`
//! (normalized on load) and samples
//! `{"kind", "mesh_level", "points": [{"id", "pos", "sheet"}], "dist": [[...]]}`.
//! Floats are written in shortest round-trip form.

use serde::{Deserialize, Serialize};

use crate::convex::{ConvexBody, Direction, Vec3};
use crate::error::{Error, Result};
use crate::intrinsic::{MetricSample, SheetTag, Site, SpaceKind};

#[derive(Serialize, Deserialize)]
struct BodyJson {
    vertices: Vec<[f64; 3]>,
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    id: usize,
    pos: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sheet: Option<SheetTag>,
}

#[derive(Serialize, Deserialize)]
struct SampleJson {
    kind: SpaceKind,
    #[serde(default)]
    mesh_level: u32,
    points: Vec<PointJson>,
    dist: Vec<Vec<f64>>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::InvalidInput(e.to_string())
}

fn arr(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

pub fn body_to_json(body: &ConvexBody) -> String {
    let j = BodyJson {
        vertices: body.vertices().iter().map(arr).collect(),
    };
    serde_json::to_string(&j).expect("plain data serializes")
}

pub fn body_from_json(text: &str) -> Result<ConvexBody> {
    let j: BodyJson = serde_json::from_str(text).map_err(parse_err)?;
    let pts: Vec<Vec3> = j
        .vertices
        .iter()
        .map(|p| Vec3::new(p[0], p[1], p[2]))
        .collect();
    ConvexBody::from_points(&pts)
}

pub fn direction_from_json(text: &str) -> Result<Direction> {
    let v: [f64; 3] = serde_json::from_str(text).map_err(parse_err)?;
    Direction::new(Vec3::new(v[0], v[1], v[2]))
}

pub fn sample_to_json(sample: &MetricSample) -> String {
    let n = sample.len();
    let j = SampleJson {
        kind: sample.kind,
        mesh_level: sample.mesh_level,
        points: sample
            .points()
            .iter()
            .enumerate()
            .map(|(id, s)| PointJson {
                id,
                pos: arr(&s.pos),
                sheet: s.sheet,
            })
            .collect(),
        dist: (0..n).map(|i| sample.row(i).to_vec()).collect(),
    };
    serde_json::to_string(&j).expect("plain data serializes")
}

pub fn sample_from_json(text: &str) -> Result<MetricSample> {
    let j: SampleJson = serde_json::from_str(text).map_err(parse_err)?;
    let n = j.points.len();
    let mut points = vec![None; n];
    for p in &j.points {
        if p.id >= n || points[p.id].is_some() {
            return Err(Error::InvalidInput(format!(
                "point id {} repeated or out of range",
                p.id
            )));
        }
        points[p.id] = Some(Site {
            pos: Vec3::new(p.pos[0], p.pos[1], p.pos[2]),
            sheet: p.sheet,
        });
    }
    if j.dist.len() != n || j.dist.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("distance matrix must be square".into()));
    }
    let points = points
        .into_iter()
        .map(|p| p.expect("every id filled"))
        .collect();
    MetricSample::new(j.kind, j.mesh_level, points, j.dist.concat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::shapes::{cube, regular_polygon};
    use crate::intrinsic::double_metric;

    #[test]
    fn body_roundtrip() {
        let c = cube(0.1);
        let back = body_from_json(&body_to_json(&c)).unwrap();
        assert_eq!(back.vertices(), c.vertices());
        assert!(body_from_json("{\"vertices\": []}").is_err());
        assert!(body_from_json("not json").is_err());
        let d = direction_from_json("[0, 0, 2]").unwrap();
        assert_eq!(d.vec(), Vec3::z());
        assert!(direction_from_json("[0, 0, 0]").is_err());
    }

    #[test]
    fn sample_roundtrip() {
        let p = regular_polygon(8, 1.0);
        let sites = [
            Site::on(Vec3::zeros(), SheetTag::Sheet1),
            Site::on(Vec3::zeros(), SheetTag::Sheet2),
        ];
        let s = double_metric(&p, &sites).unwrap();
        let text = sample_to_json(&s);
        assert!(text.contains("\"sheet\":\"sheet1\""));
        let back = sample_from_json(&text).unwrap();
        assert_eq!(back.points(), s.points());
        assert_eq!(back.d(0, 1), s.d(0, 1));
    }
}
