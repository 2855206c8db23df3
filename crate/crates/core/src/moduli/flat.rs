//! Flat structures in dimension one and two: circles, tori, Klein bottles,
//! Möbius bands and cylinders, with their quotient metrics and moduli
//! coordinates.

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::convex::TAU_GEOM;
use crate::error::{Error, Result};

pub type Vec2 = Vector2<f64>;

/// A basis of a lattice in R².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeBasis {
    pub v1: Vec2,
    pub v2: Vec2,
}

impl LatticeBasis {
    pub fn new(v1: Vec2, v2: Vec2) -> Result<LatticeBasis> {
        if !v1.iter().chain(v2.iter()).all(|c| c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let det = v1.x * v2.y - v1.y * v2.x;
        if det.abs() <= TAU_GEOM * (v1.norm() * v2.norm()).max(1.0) {
            return Err(Error::DegenerateLattice);
        }
        Ok(LatticeBasis { v1, v2 })
    }

    pub fn det(&self) -> f64 {
        self.v1.x * self.v2.y - self.v1.y * self.v2.x
    }

    /// `[v1.x, v1.y, v2.x, v2.y]`.
    pub fn entries(&self) -> [f64; 4] {
        [self.v1.x, self.v1.y, self.v2.x, self.v2.y]
    }
}

/// Canonical representative of the lattice up to isometries of the plane.
///
/// Lagrange–Gauss reduction gives `|v1| <= |v2|` and `|⟨v1,v2⟩| <= |v1|²/2`;
/// replacing `v2` by `-v2` makes the product nonnegative. The output is then
/// determined by the Gram matrix: `v1 = (|v1|, 0)` and `v2` in the upper half
/// plane. On the ties `|v1| = |v2|` and `⟨v1,v2⟩ = |v1|²/2` both choices have
/// the same Gram matrix, so the output does not depend on them.
pub fn lattice_reduce(basis: &LatticeBasis) -> Result<LatticeBasis> {
    let b = LatticeBasis::new(basis.v1, basis.v2)?;
    let (v1, v2) = gauss(b.v1, b.v2);
    let l1 = v1.norm();
    let x = v1.dot(&v2) / l1;
    let y = (v2.norm_squared() - x * x).max(0.0).sqrt();
    Ok(LatticeBasis {
        v1: Vec2::new(l1, 0.0),
        v2: Vec2::new(x, y),
    })
}

/// Lagrange–Gauss reduction in the original frame, with `⟨v1,v2⟩ >= 0`.
fn gauss(mut v1: Vec2, mut v2: Vec2) -> (Vec2, Vec2) {
    for _ in 0..10_000 {
        if v2.norm_squared() < v1.norm_squared() {
            std::mem::swap(&mut v1, &mut v2);
        }
        let mu = (v1.dot(&v2) / v1.norm_squared()).round();
        if mu == 0.0 {
            break;
        }
        v2 -= v1 * mu;
    }
    if v1.dot(&v2) < 0.0 {
        v2 = -v2;
    }
    (v1, v2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlatKind {
    Circle,
    Torus,
    Klein,
    Mobius,
    Cylinder,
}

impl FlatKind {
    pub fn name(&self) -> &'static str {
        match self {
            FlatKind::Circle => "circle",
            FlatKind::Torus => "torus",
            FlatKind::Klein => "klein",
            FlatKind::Mobius => "mobius",
            FlatKind::Cylinder => "cylinder",
        }
    }

    fn arity(&self) -> usize {
        match self {
            FlatKind::Circle => 1,
            FlatKind::Torus => 4,
            _ => 2,
        }
    }

    /// Number of coordinates of a point.
    pub fn point_dim(&self) -> usize {
        if *self == FlatKind::Circle {
            1
        } else {
            2
        }
    }
}

/// A flat structure with measure `a·ℋ`.
///
/// Parameters and point coordinates by kind:
///
/// * circle `[L]`: `R/LZ`, point `[s]`.
/// * torus `[v1x, v1y, v2x, v2y]`: `R²/Λ`, point `[x, y]`.
/// * klein `[d1, d2]` (nonzero, signs allowed): `R²` modulo the group
///   generated by `x ↦ x + (d1, 0)` and `(x, y) ↦ (-x, y + d2)`, point `[x, y]`.
/// * mobius `[r, b]`: `[0,1] × R` with metric `r·dx̄ × b·dt` modulo
///   `(x̄, t) ↦ (1 - x̄, t + 1)`, point `[x̄, t]`.
/// * cylinder `[r, b]`: `b·S¹ × r·[0,1]` with `S¹` of perimeter one, point `[θ, x]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFlat", into = "RawFlat")]
pub struct FlatStructure {
    kind: FlatKind,
    a: f64,
    params: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawFlat {
    kind: FlatKind,
    a: f64,
    params: Vec<f64>,
}

impl TryFrom<RawFlat> for FlatStructure {
    type Error = Error;
    fn try_from(r: RawFlat) -> Result<Self> {
        FlatStructure::new(r.kind, r.a, r.params)
    }
}

impl From<FlatStructure> for RawFlat {
    fn from(s: FlatStructure) -> Self {
        RawFlat {
            kind: s.kind,
            a: s.a,
            params: s.params,
        }
    }
}

impl FlatStructure {
    pub fn new(kind: FlatKind, a: f64, params: Vec<f64>) -> Result<FlatStructure> {
        if params.len() != kind.arity() {
            return Err(Error::InvalidInput(format!(
                "{} takes {} parameters",
                kind.name(),
                kind.arity()
            )));
        }
        if !a.is_finite() || params.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(a > 0.0) {
            return Err(Error::ParameterRange("mass scale must be positive".into()));
        }
        match kind {
            FlatKind::Torus => {
                LatticeBasis::new(
                    Vec2::new(params[0], params[1]),
                    Vec2::new(params[2], params[3]),
                )?;
            }
            FlatKind::Klein => {
                if params.iter().any(|p| p.abs() <= TAU_GEOM) {
                    return Err(Error::ParameterRange(
                        "klein lengths must be nonzero".into(),
                    ));
                }
            }
            _ => {
                if params.iter().any(|&p| !(p > 0.0)) {
                    return Err(Error::ParameterRange(format!(
                        "{} lengths must be positive",
                        kind.name()
                    )));
                }
            }
        }
        Ok(FlatStructure { kind, a, params })
    }

    pub fn circle(perimeter: f64, a: f64) -> Result<FlatStructure> {
        FlatStructure::new(FlatKind::Circle, a, vec![perimeter])
    }

    pub fn torus(basis: &LatticeBasis, a: f64) -> Result<FlatStructure> {
        FlatStructure::new(FlatKind::Torus, a, basis.entries().to_vec())
    }

    pub fn klein(d1: f64, d2: f64, a: f64) -> Result<FlatStructure> {
        FlatStructure::new(FlatKind::Klein, a, vec![d1, d2])
    }

    pub fn mobius(r: f64, b: f64, a: f64) -> Result<FlatStructure> {
        FlatStructure::new(FlatKind::Mobius, a, vec![r, b])
    }

    pub fn cylinder(r: f64, b: f64, a: f64) -> Result<FlatStructure> {
        FlatStructure::new(FlatKind::Cylinder, a, vec![r, b])
    }

    pub fn kind(&self) -> FlatKind {
        self.kind
    }

    pub fn mass_scale(&self) -> f64 {
        self.a
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    fn basis(&self) -> LatticeBasis {
        let p = &self.params;
        LatticeBasis {
            v1: Vec2::new(p[0], p[1]),
            v2: Vec2::new(p[2], p[3]),
        }
    }

    /// Diameter and mass of the soul, for the kinds that split off a line.
    pub fn soul(&self) -> Option<(f64, f64)> {
        match self.kind {
            FlatKind::Mobius | FlatKind::Cylinder => {
                Some((self.params[0], self.a * self.params[0]))
            }
            _ => None,
        }
    }

    /// Diameter of the Albanese circle `R/bZ`.
    pub fn albanese_diameter(&self) -> Option<f64> {
        match self.kind {
            FlatKind::Mobius | FlatKind::Cylinder => Some(0.5 * self.params[1]),
            _ => None,
        }
    }
}

/// Diameter estimate over translation length, plus two.
fn window(diam: f64, step: f64) -> i64 {
    (diam / step).ceil() as i64 + 2
}

/// Quotient distance between `p` and `q`: the least ambient distance from
/// `p` to a deck image of `q`.
///
/// The deck group is enumerated over `|k| <= ceil(D / τ) + 2` per generator,
/// with `D` an upper bound for the diameter of a fundamental domain and `τ`
/// the translation length. Any image further out is at distance more than
/// `D` and cannot be the minimizer. Both points are first moved into a
/// fundamental domain of the translation subgroup, so periodic coordinates
/// may take any value. The strip coordinate of the Möbius band and the
/// cylinder must lie in `[0, 1]`.
pub fn flat_quotient_distance(s: &FlatStructure, p: &[f64], q: &[f64]) -> Result<f64> {
    flat_quotient_distance_with(s, p, q, 0)
}

/// [`flat_quotient_distance`] with the deck window enlarged by `extra`.
pub fn flat_quotient_distance_with(
    s: &FlatStructure,
    p: &[f64],
    q: &[f64],
    extra: i64,
) -> Result<f64> {
    let dim = s.kind.point_dim();
    if p.len() != dim || q.len() != dim {
        return Err(Error::InvalidInput(format!(
            "{} points have {dim} coordinates",
            s.kind.name()
        )));
    }
    if p.iter().chain(q).any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let prm = &s.params;
    let strip = match s.kind {
        FlatKind::Mobius => Some(0),
        FlatKind::Cylinder => Some(1),
        _ => None,
    };
    if let Some(i) = strip {
        if [p[i], q[i]]
            .iter()
            .any(|c| !(-TAU_GEOM..=1.0 + TAU_GEOM).contains(c))
        {
            return Err(Error::ParameterRange(format!(
                "{} strip coordinate outside [0, 1]",
                s.kind.name()
            )));
        }
    }
    let (p, q) = (fold_periods(s, p), fold_periods(s, q));
    let mut best = f64::INFINITY;
    match s.kind {
        FlatKind::Circle => {
            let l = prm[0];
            let w = window(0.5 * l, l) + extra;
            for k in -w..=w {
                best = best.min((p[0] - q[0] - k as f64 * l).abs());
            }
        }
        FlatKind::Torus => {
            let raw = s.basis();
            let (v1, v2) = gauss(raw.v1, raw.v2);
            let b = LatticeBasis { v1, v2 };
            let delta = Vec2::new(p[0] - q[0], p[1] - q[1]);
            let delta = reduce_mod(&b, reduce_mod(&raw, delta));
            let w = window(b.v1.norm() + b.v2.norm(), b.v1.norm()) + extra;
            for i in -w..=w {
                for j in -w..=w {
                    best = best.min((delta - b.v1 * i as f64 - b.v2 * j as f64).norm());
                }
            }
        }
        FlatKind::Klein => {
            let (d1, d2) = (prm[0].abs(), prm[1].abs());
            let diam = d1 + d2;
            let (wk, wm) = (window(diam, d1) + extra, window(diam, d2) + extra);
            for m in -wm..=wm {
                let x = if m % 2 == 0 { q[0] } else { -q[0] };
                let y = q[1] + m as f64 * d2;
                for k in -wk..=wk {
                    best =
                        best.min(((x + k as f64 * d1 - p[0]).powi(2) + (y - p[1]).powi(2)).sqrt());
                }
            }
        }
        FlatKind::Mobius => {
            let (r, b) = (prm[0], prm[1]);
            let w = window(r + b, b) + extra;
            for k in -w..=w {
                let x = if k % 2 == 0 { q[0] } else { 1.0 - q[0] };
                let t = q[1] + k as f64;
                best = best.min(((r * (x - p[0])).powi(2) + (b * (t - p[1])).powi(2)).sqrt());
            }
        }
        FlatKind::Cylinder => {
            let (r, b) = (prm[0], prm[1]);
            let w = window(0.5, 1.0) + extra;
            let mut circ = f64::INFINITY;
            for k in -w..=w {
                circ = circ.min((p[0] - q[0] - k as f64).abs());
            }
            best = ((b * circ).powi(2) + (r * (p[1] - q[1])).powi(2)).sqrt();
        }
    }
    Ok(best)
}

/// Moves a point by the pure translations of the deck group into a fixed
/// period box.
fn fold_periods(s: &FlatStructure, p: &[f64]) -> Vec<f64> {
    let prm = &s.params;
    match s.kind {
        FlatKind::Circle => vec![p[0].rem_euclid(prm[0])],
        FlatKind::Torus => p.to_vec(),
        FlatKind::Klein => vec![
            p[0].rem_euclid(prm[0].abs()),
            p[1].rem_euclid(2.0 * prm[1].abs()),
        ],
        FlatKind::Mobius => vec![p[0], p[1].rem_euclid(2.0)],
        FlatKind::Cylinder => vec![p[0].rem_euclid(1.0), p[1]],
    }
}

fn reduce_mod(b: &LatticeBasis, x: Vec2) -> Vec2 {
    let det = b.det();
    let c1 = (x.x * b.v2.y - x.y * b.v2.x) / det;
    let c2 = (b.v1.x * x.y - b.v1.y * x.x) / det;
    x - b.v1 * c1.round() - b.v2 * c2.round()
}

/// Moduli coordinates of a structure.
///
/// * circle: `(Diam, Mass) = (L/2, aL)`.
/// * torus: `(a, |v1|, x, y)` from the canonical basis `(|v1|, 0), (x, y)`.
/// * klein: `(a, |d1|, |d2|)`.
/// * mobius and cylinder: `(a, b, r)` as `(Mass(S)/Diam(S), 2·Diam(A), Diam(S))`
///   with `S` the soul and `A` the Albanese circle.
pub fn structure_invariants(s: &FlatStructure) -> Vec<f64> {
    let p = &s.params;
    match s.kind {
        FlatKind::Circle => vec![0.5 * p[0], s.a * p[0]],
        FlatKind::Torus => {
            let b = lattice_reduce(&s.basis()).expect("validated lattice");
            vec![s.a, b.v1.x, b.v2.x, b.v2.y]
        }
        FlatKind::Klein => vec![s.a, p[0].abs(), p[1].abs()],
        FlatKind::Mobius | FlatKind::Cylinder => {
            let (diam_s, mass_s) = s.soul().expect("split kinds have a soul");
            let diam_a = s
                .albanese_diameter()
                .expect("split kinds have an Albanese circle");
            vec![mass_s / diam_s, 2.0 * diam_a, diam_s]
        }
    }
}

/// A strip `[0, width] × R` with coordinate metric `(sx·dx)² + (st·dt)²`,
/// measure `density·dx·dt`, and deck generator `(x, t) ↦ (x, t + glide)`,
/// composed with `x ↦ width - x` when `twisted`. Different descriptions of
/// one structure differ by the coordinate scales and the sign of the glide.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripQuotient {
    pub width: f64,
    pub glide: f64,
    pub sx: f64,
    pub st: f64,
    pub density: f64,
    pub twisted: bool,
}

impl StripQuotient {
    pub fn structure(&self) -> Result<FlatStructure> {
        let r = self.sx * self.width;
        let b = self.st * self.glide.abs();
        let a = self.density / (self.sx * self.st);
        if self.twisted {
            FlatStructure::mobius(r, b, a)
        } else {
            FlatStructure::cylinder(r, b, a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(a: [f64; 4]) -> LatticeBasis {
        LatticeBasis::new(Vec2::new(a[0], a[1]), Vec2::new(a[2], a[3])).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(
            lattice_reduce(&basis([1.0, 0.0, 0.0, 1.0])).unwrap(),
            basis([1.0, 0.0, 0.0, 1.0])
        );
        assert_eq!(
            lattice_reduce(&basis([1.0, 0.0, 1.0, 1.0])).unwrap(),
            basis([1.0, 0.0, 0.0, 1.0])
        );
        assert_eq!(
            lattice_reduce(&basis([0.0, 2.0, 2.0, 0.0])).unwrap(),
            basis([2.0, 0.0, 0.0, 2.0])
        );
        let hex = lattice_reduce(&basis([1.0, 0.0, -0.5, 0.75f64.sqrt()])).unwrap();
        assert!((hex.v2.x - 0.5).abs() < 1e-12);
        assert_eq!(
            LatticeBasis::new(Vec2::new(1.0, 2.0), Vec2::new(2.0, 4.0)),
            Err(Error::DegenerateLattice)
        );
    }

    #[test]
    fn quotient_examples() {
        let t = FlatStructure::torus(&basis([1.0, 0.0, 0.0, 1.0]), 1.0).unwrap();
        assert!(
            (flat_quotient_distance(&t, &[0.0, 0.0], &[0.6, 0.0]).unwrap() - 0.4).abs() < 1e-12
        );
        let c = FlatStructure::cylinder(1.0, 1.0, 1.0).unwrap();
        let d = flat_quotient_distance(&c, &[0.0, 0.0], &[0.5, 1.0]).unwrap();
        assert!((d - 1.25f64.sqrt()).abs() < 1e-12);
        let m = FlatStructure::mobius(1.0, 1.0, 1.0).unwrap();
        assert!(
            (flat_quotient_distance(&m, &[0.0, 0.0], &[1.0, 0.0]).unwrap() - 1.0).abs() < 1e-12
        );
        assert!(flat_quotient_distance(&m, &[0.0, 0.0], &[0.0, 0.5]).unwrap() <= 0.5 + 1e-12);
        let k = FlatStructure::klein(1.0, 1.0, 1.0).unwrap();
        assert!(flat_quotient_distance(&k, &[0.1, 0.0], &[0.9, 0.0]).unwrap() <= 0.2 + 1e-12);
        assert!((flat_quotient_distance(&k, &[0.1, 0.2], &[-0.1, 1.2]).unwrap()).abs() < 1e-12);
        assert!(flat_quotient_distance(&k, &[0.1], &[0.2]).is_err());
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(
            structure_invariants(&FlatStructure::circle(2.0, 3.0).unwrap()),
            vec![1.0, 6.0]
        );
        assert_eq!(
            structure_invariants(&FlatStructure::mobius(3.0, 2.0, 1.0).unwrap()),
            vec![1.0, 2.0, 3.0]
        );
        assert_eq!(
            structure_invariants(&FlatStructure::klein(-2.0, 5.0, 1.0).unwrap())[1..],
            [2.0, 5.0]
        );
        let q = StripQuotient {
            width: 6.0,
            glide: -4.0,
            sx: 0.5,
            st: 0.5,
            density: 0.25,
            twisted: true,
        };
        assert_eq!(
            structure_invariants(&q.structure().unwrap()),
            vec![1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn json_shape() {
        let s = FlatStructure::mobius(1.0, 2.0, 3.0).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "{\"kind\":\"mobius\",\"a\":3.0,\"params\":[1.0,2.0]}");
        assert_eq!(serde_json::from_str::<FlatStructure>(&j).unwrap(), s);
        assert!(serde_json::from_str::<FlatStructure>(
            "{\"kind\":\"torus\",\"a\":1,\"params\":[1,0,2,0]}"
        )
        .is_err());
    }
}
