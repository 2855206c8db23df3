//! Explicit correspondences between realized spaces of convex bodies.
//!
//! Each constructor returns a [`Lemma`]: the point maps `f` and `g` between
//! two [`Space`]s, the closeness parameter `ε` and the distortion bound `ν`.
//! [`Lemma::correspond`] samples both spaces so that the maps send sample
//! points to sample points, and measures the result.

mod align;

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::convex::{
    central_project, gauge_inclusion_eps, project_body, ConvexBody, Direction, Subspace, Vec3,
};
use crate::error::{Error, Result};
use crate::gh::{self, GroupAction};
use crate::intrinsic::{dedup_sites, envelopes, MetricSample, Resolution, SheetTag, Site, Space};

pub use align::align_spans;

/// Point map between two spaces.
pub type PointMap = Arc<dyn Fn(&Site) -> Site + Send + Sync>;

/// Discretization allowance as a fraction of the larger body diameter.
pub const MESH_ALLOWANCE: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaKind {
    #[serde(rename = "3to3")]
    Boundaries,
    #[serde(rename = "3to2")]
    Flatten,
    #[serde(rename = "3to1")]
    SolidToSegment,
    #[serde(rename = "2to1")]
    PlanarToSegment,
    #[serde(rename = "2to2")]
    Doubles,
    #[serde(rename = "1to1")]
    Segments,
    #[serde(rename = "composed")]
    Composed,
}

impl LemmaKind {
    pub fn name(&self) -> &'static str {
        match self {
            LemmaKind::Boundaries => "3to3",
            LemmaKind::Flatten => "3to2",
            LemmaKind::SolidToSegment => "3to1",
            LemmaKind::PlanarToSegment => "2to1",
            LemmaKind::Doubles => "2to2",
            LemmaKind::Segments => "1to1",
            LemmaKind::Composed => "composed",
        }
    }
}

/// A pair of maps between two spaces with its certified bound.
#[derive(Clone)]
pub struct Lemma {
    pub kind: LemmaKind,
    pub source: Space,
    pub target: Space,
    pub forward: PointMap,
    /// `None` when only the forward distortion is controlled; the sampled
    /// backward map is then the nearest preimage.
    pub backward: Option<PointMap>,
    pub eps: f64,
    pub nu: f64,
    /// Both maps commute with the `±1` actions.
    pub equivariant: bool,
}

/// Sampled maps between two finite metric spaces.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub kind: LemmaKind,
    pub source: MetricSample,
    pub target: MetricSample,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
    pub backward_certified: bool,
}

impl Correspondence {
    /// Checks that both maps are total with valid ids.
    pub fn new(
        kind: LemmaKind,
        source: MetricSample,
        target: MetricSample,
        forward: Vec<usize>,
        backward: Vec<usize>,
        backward_certified: bool,
    ) -> Result<Correspondence> {
        if forward.len() != source.len() || backward.len() != target.len() {
            return Err(Error::InvalidInput("maps must be total".into()));
        }
        if forward.iter().any(|&j| j >= target.len()) || backward.iter().any(|&i| i >= source.len())
        {
            return Err(Error::InvalidInput("map id out of range".into()));
        }
        Ok(Correspondence {
            kind,
            source,
            target,
            forward,
            backward,
            backward_certified,
        })
    }

    /// Identity correspondence of a sample with itself.
    pub fn identity(sample: &MetricSample) -> Correspondence {
        let id: Vec<usize> = (0..sample.len()).collect();
        Correspondence {
            kind: LemmaKind::Composed,
            source: sample.clone(),
            target: sample.clone(),
            forward: id.clone(),
            backward: id,
            backward_certified: true,
        }
    }
}

/// Bound and measured values of one sampled correspondence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: LemmaKind,
    pub eps: f64,
    pub nu: f64,
    pub dis_f: f64,
    pub dis_g: f64,
    pub roundtrip: f64,
    pub equivariant: bool,
    /// Defect under the `±1` actions, measured when `equivariant` is set.
    pub equiv_defect: Option<f64>,
    pub backward_certified: bool,
    /// Discretization allowance `MESH_ALLOWANCE · max diameter`.
    pub allowance: f64,
    /// Largest displacement used to close the sampled backward map.
    pub snap: f64,
}

impl Certificate {
    /// All certified measured values within `nu + allowance`.
    pub fn holds(&self) -> bool {
        let cap = self.nu + self.allowance;
        let mut ok = self.dis_f <= cap;
        if self.backward_certified {
            ok &= self.dis_g <= cap && self.roundtrip <= cap;
        }
        if let Some(d) = self.equiv_defect {
            ok &= d <= self.allowance;
        }
        ok
    }
}

fn closed(space: &Space, sites: &[Site], antipodes: bool) -> Result<Vec<Site>> {
    let mut out = Vec::with_capacity(sites.len() * 2);
    for s in sites {
        let p = space.snap(s)?;
        out.push(p);
        if antipodes {
            out.push(space.snap(&p.antipode())?);
        }
    }
    Ok(dedup_sites(&out, space.site_tol()))
}

fn locate(sample: &MetricSample, s: &Site, tol: f64) -> Result<usize> {
    sample
        .find(s, tol)
        .ok_or_else(|| Error::InvalidInput("image missing from sample".into()))
}

impl Lemma {
    fn image(&self, s: &Site) -> Result<Site> {
        self.target.snap(&(self.forward)(s))
    }

    fn preimage(&self, g: &PointMap, t: &Site) -> Result<Site> {
        self.source.snap(&g(t))
    }

    /// Samples both spaces on their default sites closed under the maps and
    /// returns the sampled correspondence with its certificate.
    ///
    /// Target sites are `T0 ∪ f(S0)`, source sites `S0 ∪ g(T1)`, and the
    /// target gets `f` of the new source sites as well. The backward map on
    /// that last layer is the nearest source site; the displacement is
    /// reported as `snap`. With `equivariant` set every layer is closed under
    /// the antipodal map.
    pub fn correspond(&self, res: &Resolution) -> Result<(Correspondence, Certificate)> {
        let eq = self.equivariant;
        let (ts, tt) = (self.source.site_tol(), self.target.site_tol());
        let s0 = closed(&self.source, &self.source.default_sites(res), eq)?;
        let t0 = closed(&self.target, &self.target.default_sites(res), eq)?;
        let f_s0: Vec<Site> = s0.iter().map(|s| self.image(s)).collect::<Result<_>>()?;
        let mut t1 = t0.clone();
        t1.extend_from_slice(&f_s0);
        let t1 = dedup_sites(&t1, tt);

        let mut snap: f64 = 0.0;
        let corr = match &self.backward {
            Some(g) => {
                let g_t1: Vec<Site> = t1
                    .iter()
                    .map(|t| self.preimage(g, t))
                    .collect::<Result<_>>()?;
                let mut s1 = s0.clone();
                s1.extend_from_slice(&g_t1);
                let s1 = dedup_sites(&s1, ts);
                let f_new: Vec<Site> = s1[s0.len()..]
                    .iter()
                    .map(|s| self.image(s))
                    .collect::<Result<_>>()?;
                let mut t2 = t1.clone();
                t2.extend_from_slice(&f_new);
                let t2 = dedup_sites(&t2, tt);

                let source = self.source.sample(&s1, res)?;
                let target = self.target.sample(&t2, res)?;
                let s_tol = 10.0 * ts;
                let t_tol = 10.0 * tt;
                let mut forward = Vec::with_capacity(s1.len());
                for img in f_s0.iter().chain(&f_new) {
                    forward.push(locate(&target, img, t_tol)?);
                }
                let mut backward = vec![usize::MAX; t2.len()];
                for (j, img) in g_t1.iter().enumerate() {
                    backward[j] = locate(&source, img, s_tol)?;
                }
                for j in t1.len()..t2.len() {
                    if backward[j] != usize::MAX {
                        continue;
                    }
                    let img = self.preimage(g, target.point(j))?;
                    let (i, gap) = source.nearest(&img);
                    snap = snap.max(gap);
                    backward[j] = i;
                    if eq {
                        if let (Some(jm), Some(im)) = (
                            target.find(&target.point(j).antipode(), t_tol),
                            source.find(&source.point(i).antipode(), s_tol),
                        ) {
                            if backward[jm] == usize::MAX {
                                backward[jm] = im;
                            }
                        }
                    }
                }
                Correspondence::new(self.kind, source, target, forward, backward, true)?
            }
            None => {
                let source = self.source.sample(&s0, res)?;
                let target = self.target.sample(&t1, res)?;
                let t_tol = 10.0 * tt;
                let forward: Vec<usize> = f_s0
                    .iter()
                    .map(|img| locate(&target, img, t_tol))
                    .collect::<Result<_>>()?;
                let backward = nearest_preimage(&target, &forward);
                Correspondence::new(self.kind, source, target, forward, backward, false)?
            }
        };

        let (dis_f, dis_g) = gh::distortion(&corr);
        let (rf, rg) = gh::roundtrip(&corr);
        let equiv_defect = if eq {
            let a = GroupAction::antipodal(&corr.source)?;
            let b = GroupAction::antipodal(&corr.target)?;
            Some(gh::equivariance_defect(&corr, &a, &b, &[0])?)
        } else {
            None
        };
        let allowance = MESH_ALLOWANCE * self.source.extent().max(self.target.extent());
        let cert = Certificate {
            kind: self.kind,
            eps: self.eps,
            nu: self.nu,
            dis_f,
            dis_g,
            roundtrip: rf.max(rg),
            equivariant: eq,
            equiv_defect,
            backward_certified: corr.backward_certified,
            allowance,
            snap,
        };
        Ok((corr, cert))
    }

    /// `(f₂∘f₁, g₁∘g₂)` from the source of `self` to the target of `next`.
    /// The bound is `4(ν₁ + ν₂)`.
    pub fn then(&self, next: &Lemma) -> Lemma {
        let (f1, f2) = (self.forward.clone(), next.forward.clone());
        let backward = match (&self.backward, &next.backward) {
            (Some(g1), Some(g2)) => {
                let (g1, g2) = (g1.clone(), g2.clone());
                Some(Arc::new(move |t: &Site| g1(&g2(t))) as PointMap)
            }
            _ => None,
        };
        Lemma {
            kind: LemmaKind::Composed,
            source: self.source.clone(),
            target: next.target.clone(),
            forward: Arc::new(move |s: &Site| f2(&f1(s))),
            backward,
            eps: self.eps + next.eps,
            nu: 4.0 * (self.nu + next.nu),
            equivariant: self.equivariant && next.equivariant,
        }
    }
}

/// For every target point, a source point whose image is nearest to it.
pub fn nearest_preimage(target: &MetricSample, forward: &[usize]) -> Vec<usize> {
    (0..target.len())
        .map(|j| {
            let row = target.row(j);
            let mut best = (0, f64::INFINITY);
            for (i, &fi) in forward.iter().enumerate() {
                if row[fi] < best.1 {
                    best = (i, row[fi]);
                }
            }
            best.0
        })
        .collect()
}

fn check_eps(eps: f64) -> Result<f64> {
    if eps >= 1.0 {
        Err(Error::HypothesisViolated(format!(
            "closeness {eps} is not below 1"
        )))
    } else {
        Ok(eps)
    }
}

fn keep_sheet(s: &Site, pos: Vec3) -> Site {
    Site {
        pos,
        sheet: s.sheet,
    }
}

/// Central projections between the boundaries of two solid bodies.
pub fn boundaries_lemma(b: &ConvexBody, b2: &ConvexBody) -> Result<Lemma> {
    if b.dim() != 3 || b2.dim() != 3 {
        return Err(Error::NeedsSolid);
    }
    let eps = check_eps(gauge_inclusion_eps(b, b2)?)?;
    let (f_body, g_body) = (b2.clone(), b.clone());
    Ok(Lemma {
        kind: LemmaKind::Boundaries,
        source: Space::Surface(b.clone()),
        target: Space::Surface(b2.clone()),
        forward: Arc::new(move |s| Site::at(central_project(&f_body, &s.pos).unwrap_or(s.pos))),
        backward: Some(Arc::new(move |t| {
            Site::at(central_project(&g_body, &t.pos).unwrap_or(t.pos))
        })),
        eps,
        nu: 6.0 * (b.diameter() + b2.diameter()) * eps,
        equivariant: b.is_symmetric() && b2.is_symmetric(),
    })
}

/// Vertical projection of `∂B` onto the double of its shadow along `v`.
pub fn flatten_lemma(b: &ConvexBody, v: &Direction) -> Result<Lemma> {
    if b.dim() != 3 {
        return Err(Error::NeedsSolid);
    }
    let k = project_body(b, &Subspace::Plane(*v));
    let eps = b
        .vertices()
        .iter()
        .map(|x| x.dot(&v.vec()).abs())
        .fold(0.0, f64::max);
    let target = Space::Double(k.clone());
    let tol = target.site_tol();
    let (bf, bg, kf, kg, vf, vg) = (b.clone(), b.clone(), k.clone(), k, *v, *v);
    let forward: PointMap = Arc::new(move |y| {
        let w = vf.vec();
        let x = y.pos - w * w.dot(&y.pos);
        if kf.depth(&x) <= tol {
            return Site::on(x, SheetTag::Boundary);
        }
        match envelopes(&bf, &vf, &x) {
            Ok(e) => {
                let h = w.dot(&y.pos);
                let sheet = if (h - e.phi1).abs() <= (h - e.phi2).abs() {
                    SheetTag::Sheet1
                } else {
                    SheetTag::Sheet2
                };
                Site::on(x, sheet)
            }
            Err(_) => Site::on(kf.nearest_point(&x), SheetTag::Boundary),
        }
    });
    let backward: PointMap = Arc::new(move |t| {
        let w = vg.vec();
        let x = kg.nearest_point(&t.pos);
        let e = match envelopes(&bg, &vg, &x) {
            Ok(e) => e,
            Err(_) => return Site::at(bg.nearest_point(&x)),
        };
        let h = match t.sheet {
            Some(SheetTag::Sheet1) => e.phi1,
            Some(SheetTag::Sheet2) => e.phi2,
            _ => 0.5 * (e.phi1 + e.phi2),
        };
        Site::at(x + w * h)
    });
    Ok(Lemma {
        kind: LemmaKind::Flatten,
        source: Space::Surface(b.clone()),
        target,
        forward,
        backward: Some(backward),
        eps,
        nu: 10.0 * eps,
        equivariant: b.is_symmetric(),
    })
}

/// Projection of the sphere realization onto the line spanned by `v`.
pub fn to_segment_lemma(d: &ConvexBody, v: &Direction) -> Result<Lemma> {
    let w = v.vec();
    let (kind, factor) = match d.dim() {
        3 => (LemmaKind::SolidToSegment, 8.0 + PI),
        2 => {
            if d.span_distance(&w) > 1e-7 {
                return Err(Error::AxisOutsideSpan);
            }
            (LemmaKind::PlanarToSegment, 4.0)
        }
        _ => return Err(Error::InvalidInput("body must be planar or solid".into())),
    };
    let l = project_body(d, &Subspace::Line(*v));
    let eps = d
        .vertices()
        .iter()
        .map(|x| (x - w * w.dot(x)).norm())
        .fold(0.0, f64::max);
    let lv = l.vertices();
    let (a, b) = if lv.len() == 2 {
        (lv[0], lv[1])
    } else {
        (lv[0], lv[0])
    };
    Ok(Lemma {
        kind,
        source: Space::sphere(d),
        target: Space::Segment(a, b),
        forward: Arc::new(move |s| Site::at(w * w.dot(&s.pos))),
        backward: None,
        eps,
        nu: factor * eps,
        equivariant: d.is_symmetric(),
    })
}

/// Radial contraction between the doubles of two planar bodies.
pub fn doubles_lemma(k: &ConvexBody, k2: &ConvexBody) -> Result<Lemma> {
    if k.dim() != 2 || k2.dim() != 2 {
        return Err(Error::NeedsPlanar);
    }
    let eps = check_eps(gauge_inclusion_eps(k, k2)?)?;
    let radial = |onto: ConvexBody, eps: f64| -> PointMap {
        Arc::new(move |s: &Site| match s.sheet {
            Some(SheetTag::Boundary) => Site::on(
                central_project(&onto, &s.pos).unwrap_or(s.pos),
                SheetTag::Boundary,
            ),
            _ => keep_sheet(s, s.pos * (1.0 - eps)),
        })
    };
    Ok(Lemma {
        kind: LemmaKind::Doubles,
        source: Space::Double(k.clone()),
        target: Space::Double(k2.clone()),
        forward: radial(k2.clone(), eps),
        backward: Some(radial(k.clone(), eps)),
        eps,
        nu: 4.0 * (k.diameter() + k2.diameter()) * eps,
        equivariant: k.is_symmetric() && k2.is_symmetric(),
    })
}

/// Scaling by `1 - ε` between two centered segments on one line.
pub fn segments_lemma(l: &ConvexBody, l2: &ConvexBody) -> Result<Lemma> {
    if l.dim() != 1 || l2.dim() != 1 {
        return Err(Error::InvalidInput("segments expected".into()));
    }
    let eps = check_eps(gauge_inclusion_eps(l, l2)?)?;
    let c = 1.0 - eps;
    Ok(Lemma {
        kind: LemmaKind::Segments,
        source: Space::sphere(l),
        target: Space::sphere(l2),
        forward: Arc::new(move |s| Site::at(s.pos * c)),
        backward: Some(Arc::new(move |t| Site::at(t.pos * c))),
        eps,
        nu: 2.0 * (l.diameter() + l2.diameter()) * eps,
        equivariant: l.is_symmetric() && l2.is_symmetric(),
    })
}

pub fn approx_boundaries(
    b: &ConvexBody,
    b2: &ConvexBody,
    res: &Resolution,
) -> Result<(Correspondence, Certificate)> {
    boundaries_lemma(b, b2)?.correspond(res)
}

pub fn approx_flatten(
    b: &ConvexBody,
    v: &Direction,
    res: &Resolution,
) -> Result<(Correspondence, Certificate)> {
    flatten_lemma(b, v)?.correspond(res)
}

pub fn approx_to_segment(
    d: &ConvexBody,
    v: &Direction,
    res: &Resolution,
) -> Result<(Correspondence, Certificate)> {
    to_segment_lemma(d, v)?.correspond(res)
}

pub fn approx_doubles(
    k: &ConvexBody,
    k2: &ConvexBody,
    res: &Resolution,
) -> Result<(Correspondence, Certificate)> {
    doubles_lemma(k, k2)?.correspond(res)
}

pub fn approx_segments(
    l: &ConvexBody,
    l2: &ConvexBody,
    res: &Resolution,
) -> Result<(Correspondence, Certificate)> {
    segments_lemma(l, l2)?.correspond(res)
}

/// Upper bound `π · Diam(D)` for the diameter of the sphere realization.
pub fn collapse_bound(d: &ConvexBody) -> f64 {
    PI * d.diameter()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::shapes::{cube, cuboid, icosphere, regular_polygon, segment};

    fn coarse() -> Resolution {
        Resolution {
            mesh_level: 4,
            sample_level: 1,
            boundary_res: 48,
        }
    }

    #[test]
    fn scaled_spheres() {
        let b = icosphere(1, 1.0);
        let (c, cert) = approx_boundaries(&b, &b.scale(1.1), &coarse()).unwrap();
        assert!((cert.eps - 0.1).abs() < 1e-12);
        assert!((cert.nu - 6.0 * (b.diameter() * 2.1) * 0.1).abs() < 1e-12);
        assert!(cert.holds(), "{cert:?}");
        assert!(cert.dis_f < 0.1 * PI + cert.allowance);
        assert_eq!(cert.snap, 0.0);
        assert!(cert.equiv_defect.unwrap() < 1e-9);
        assert_eq!(c.forward.len(), c.source.len());
        let (_, same) = approx_boundaries(&b, &b, &coarse()).unwrap();
        assert_eq!((same.eps, same.nu), (0.0, 0.0));
        assert!(same.dis_f < 1e-9 && same.roundtrip < 1e-9);
    }

    #[test]
    fn hypothesis_checks() {
        let b = cube(1.0);
        assert!(matches!(
            boundaries_lemma(&b, &b.scale(2.5)),
            Err(Error::HypothesisViolated(_))
        ));
        assert_eq!(
            boundaries_lemma(&b, &b.translate(&Vec3::x())).err(),
            Some(Error::NotCentered)
        );
        assert_eq!(
            flatten_lemma(&regular_polygon(5, 1.0), &Direction::z()).err(),
            Some(Error::NeedsSolid)
        );
        let sq = cuboid(1.0, 0.5, 0.0);
        assert_eq!(
            to_segment_lemma(&sq, &Direction::z()).err(),
            Some(Error::AxisOutsideSpan)
        );
    }

    #[test]
    fn slab_flattening() {
        let slab = cuboid(1.0, 1.0, 0.05);
        let (c, cert) = approx_flatten(&slab, &Direction::z(), &coarse()).unwrap();
        assert!((cert.eps - 0.05).abs() < 1e-12 && (cert.nu - 0.5).abs() < 1e-12);
        assert!(cert.holds(), "{cert:?}");
        assert!(cert.equivariant && cert.equiv_defect.unwrap() < 1e-9);
        for (j, &i) in c.backward.iter().enumerate() {
            assert_eq!(c.forward[i], j);
        }
    }

    #[test]
    fn segments_and_doubles() {
        let l = segment(-Vec3::x(), Vec3::x());
        let (c, cert) = approx_segments(&l, &l.scale(1.2), &coarse()).unwrap();
        assert!((cert.nu - 1.76).abs() < 1e-12);
        assert!((cert.dis_f - 0.4).abs() < 1e-9);
        let mid = c.source.find(&Site::at(Vec3::zeros()), 1e-12).unwrap();
        assert!(c.target.point(c.forward[mid]).pos.norm() < 1e-15);
        let k = regular_polygon(32, 1.0);
        let (_, cert) = approx_doubles(&k, &k.scale(1.05), &coarse()).unwrap();
        assert!((cert.eps - 0.05).abs() < 1e-12);
        assert!(cert.holds(), "{cert:?}");
        assert!(cert.equiv_defect.unwrap() < 1e-9);
    }

    #[test]
    fn thin_bodies() {
        let h = 0.05;
        let (_, cert) = approx_to_segment(&cuboid(1.0, h, h), &Direction::x(), &coarse()).unwrap();
        assert!((cert.eps - h * 2f64.sqrt()).abs() < 1e-12);
        assert!(cert.holds(), "{cert:?}");
        assert!(!cert.backward_certified);
        let (_, cert) =
            approx_to_segment(&cuboid(1.0, h, 0.0), &Direction::x(), &coarse()).unwrap();
        assert_eq!(cert.kind, LemmaKind::PlanarToSegment);
        assert!((cert.nu - 4.0 * h).abs() < 1e-12);
        assert!(cert.holds(), "{cert:?}");
    }

    #[test]
    fn collapse_values() {
        assert_eq!(
            collapse_bound(&ConvexBody::from_points(&[Vec3::zeros()]).unwrap()),
            0.0
        );
        assert!((collapse_bound(&segment(-Vec3::x(), Vec3::x())) - 2.0 * PI).abs() < 1e-15);
    }
}
