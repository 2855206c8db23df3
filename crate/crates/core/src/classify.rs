//! The ten surfaces and curves carrying a structure, sorted by dimension and
//! splitting degree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceType {
    Point,
    Interval,
    Circle,
    Torus,
    Klein,
    Mobius,
    Cylinder,
    Sphere,
    Rp2,
    Disc,
}

impl SurfaceType {
    pub const ALL: [SurfaceType; 10] = [
        SurfaceType::Point,
        SurfaceType::Interval,
        SurfaceType::Circle,
        SurfaceType::Torus,
        SurfaceType::Klein,
        SurfaceType::Mobius,
        SurfaceType::Cylinder,
        SurfaceType::Sphere,
        SurfaceType::Rp2,
        SurfaceType::Disc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SurfaceType::Point => "point",
            SurfaceType::Interval => "interval",
            SurfaceType::Circle => "circle",
            SurfaceType::Torus => "torus",
            SurfaceType::Klein => "klein",
            SurfaceType::Mobius => "mobius",
            SurfaceType::Cylinder => "cylinder",
            SurfaceType::Sphere => "sphere",
            SurfaceType::Rp2 => "rp2",
            SurfaceType::Disc => "disc",
        }
    }

    /// Parses a name, ignoring case, spaces, `-` and `_`. Accepted aliases:
    /// `segment`; `s1`; `t2`, `flat-torus`; `klein-bottle`, `k2`;
    /// `mobius-band`, `möbius`; `annulus`; `s2`, `2-sphere`;
    /// `projective-plane`, `rp²`; `disk`, `closed-disc`.
    pub fn parse(name: &str) -> Option<SurfaceType> {
        let key: String = name
            .trim()
            .to_lowercase()
            .chars()
            .filter(|c| !matches!(c, ' ' | '-' | '_'))
            .collect();
        Some(match key.as_str() {
            "point" => SurfaceType::Point,
            "interval" | "segment" => SurfaceType::Interval,
            "circle" | "s1" => SurfaceType::Circle,
            "torus" | "t2" | "flattorus" => SurfaceType::Torus,
            "klein" | "kleinbottle" | "k2" => SurfaceType::Klein,
            "mobius" | "möbius" | "mobiusband" | "möbiusband" => SurfaceType::Mobius,
            "cylinder" | "annulus" => SurfaceType::Cylinder,
            "sphere" | "s2" | "2sphere" => SurfaceType::Sphere,
            "rp2" | "rp²" | "projectiveplane" => SurfaceType::Rp2,
            "disc" | "disk" | "closeddisc" | "closeddisk" => SurfaceType::Disc,
            _ => return None,
        })
    }
}

/// Spaces of dimension `dim` with splitting degree `k`.
pub fn classify(dim: u32, k: u32) -> Result<Vec<SurfaceType>> {
    use SurfaceType::*;
    if dim > 2 {
        return Err(Error::ParameterRange(format!(
            "dimension {dim} outside 0..=2"
        )));
    }
    if k > dim {
        return Err(Error::InvalidSplittingDegree);
    }
    Ok(match (dim, k) {
        (0, 0) => vec![Point],
        (1, 0) => vec![Interval],
        (1, 1) => vec![Circle],
        (2, 0) => vec![Sphere, Rp2, Disc],
        (2, 1) => vec![Cylinder, Mobius],
        _ => vec![Torus, Klein],
    })
}

pub fn admissible(name: &str) -> bool {
    SurfaceType::parse(name).is_some()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub dim: u32,
    pub k: u32,
    pub spaces: Vec<SurfaceType>,
}

/// Every cell of the table.
pub fn table() -> Vec<TableRow> {
    let mut rows = Vec::new();
    for dim in 0..=2 {
        for k in 0..=dim {
            rows.push(TableRow {
                dim,
                k,
                spaces: classify(dim, k).expect("cell in range"),
            });
        }
    }
    rows
}
