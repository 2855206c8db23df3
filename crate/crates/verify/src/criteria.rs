//! The acceptance criteria, each a seeded property check over generated
//! inputs.

use std::f64::consts::PI;
use std::time::Instant;

use nncurv::approx::{
    boundaries_lemma, collapse_bound, doubles_lemma, flatten_lemma, segments_lemma,
    to_segment_lemma, Certificate, Lemma, MESH_ALLOWANCE,
};
use nncurv::classify::{classify, SurfaceType};
use nncurv::convex::shapes::{cube, icosphere, regular_polygon, segment, trimmed};
use nncurv::convex::{hausdorff_distance, minkowski_combine, TAU_GEOM, TAU_STEINER};
use nncurv::gh::{eq_mgh_check, prokhorov_distance, Actions, DiscreteMeasure, GroupAction};
use nncurv::intrinsic::{
    boundary_metric, double_metric, realize_sphere, sheet_swap, MetricSample, Resolution, SheetTag,
    Site, Space, SpaceKind,
};
use nncurv::moduli::{
    body_homotopy, cd_density_check, cstar_quotient_distance, interval_contract, lattice_reduce,
    structure_invariants, ConcaveDensity, FlatStructure, LatticeBasis, StripQuotient, Vec2,
};
use nncurv::{ConvexBody, Direction, Mat3, Vec3};
use rand::Rng;
use serde::Serialize;

use crate::gen::{self, Rand};
use crate::oracles;

/// Outcome of one criterion. `seconds` is excluded from serialized reports
/// so that they depend on the seed only.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    /// Largest measured-to-allowed ratio over the cases, where meaningful.
    pub worst_ratio: f64,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({} cases, {} failures, worst ratio {:.3}, {:.2}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.cases,
            self.failures,
            self.worst_ratio,
            self.seconds,
            self.detail
        )
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    worst: f64,
    notes: Vec<String>,
}

impl Tally {
    /// Records `measured <= allowed`.
    fn bound(&mut self, label: &str, measured: f64, allowed: f64) {
        self.cases += 1;
        let ratio = if allowed > 0.0 {
            measured / allowed
        } else if measured <= 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        self.worst = self.worst.max(ratio);
        if !(measured <= allowed) {
            self.failures += 1;
            if self.notes.len() < 5 {
                self.notes
                    .push(format!("{label}: {measured:.6e} > {allowed:.6e}"));
            }
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < 5 {
                self.notes.push(label.to_string());
            }
        }
    }

    fn error(&mut self, label: &str, e: impl std::fmt::Display) {
        self.check(&format!("{label}: {e}"), false);
    }

    fn finish(
        self,
        id: u32,
        title: &'static str,
        start: Instant,
        extra: Option<String>,
    ) -> CriterionResult {
        let mut detail = self.notes.join("; ");
        if let Some(x) = extra {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&x);
        }
        CriterionResult {
            id,
            title,
            passed: self.failures == 0 && self.cases > 0,
            cases: self.cases,
            failures: self.failures,
            worst_ratio: self.worst,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

/// Knobs shared by the criteria.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub res: Resolution,
    pub lemma_cases: usize,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> SuiteConfig {
        SuiteConfig {
            seed,
            res: Resolution::default(),
            lemma_cases: 20,
        }
    }
}

fn sub_rng(cfg: &SuiteConfig, id: u64) -> Rand {
    gen::rng(cfg.seed.wrapping_mul(1_000_003).wrapping_add(id))
}

/// Certificate bound check: forward distortion always, backward distortion
/// and roundtrip when the backward map is certified.
fn record_certificate(t: &mut Tally, label: &str, c: &Certificate) {
    let cap = c.nu + c.allowance;
    t.bound(&format!("{label} dis_f"), c.dis_f, cap);
    if c.backward_certified {
        t.bound(&format!("{label} dis_g"), c.dis_g, cap);
        t.bound(&format!("{label} roundtrip"), c.roundtrip, cap);
    }
}

fn slab(k: &ConvexBody, h: f64) -> ConvexBody {
    let s = segment(Vec3::new(0.0, 0.0, -h), Vec3::new(0.0, 0.0, h));
    minkowski_combine(1.0, k, 1.0, &s).expect("slab")
}

fn stretched_symmetric_polygon(rng: &mut Rand, pairs: usize, scale: Vec3) -> ConvexBody {
    let k = gen::symmetric_polygon(rng, pairs, 1.0);
    let m = Mat3::from_diagonal(&scale);
    k.transform(&m).expect("polygon")
}

/// Lemma instances of every family: `(family, lemma)`.
fn lemma_family(rng: &mut Rand, family: usize, i: usize) -> nncurv::Result<Lemma> {
    match family {
        0 => {
            let pairs = rng.gen_range(6..12);
            let radii = Vec3::new(
                rng.gen_range(0.7..1.2),
                rng.gen_range(0.7..1.2),
                rng.gen_range(0.7..1.2),
            );
            let b = gen::symmetric_solid(rng, pairs, radii);
            let b2 = if i % 2 == 0 {
                b.scale(rng.gen_range(1.0..1.3))
            } else {
                trimmed(&b, rng.gen_range(0.01..0.08) * b.diameter())
            };
            boundaries_lemma(&b, &b2)
        }
        1 => {
            let h = [0.2, 0.1, 0.05][i % 3];
            let count = rng.gen_range(4..8);
            let radius = rng.gen_range(0.7..1.2);
            let k = gen::symmetric_polygon(rng, count, radius);
            let q = gen::rotation(rng);
            let b = slab(&k, h).rotate(&q);
            flatten_lemma(&b, &Direction::new(q * Vec3::z())?)
        }
        2 => {
            let q = gen::rotation(rng);
            let count = rng.gen_range(4..10);
            let radius = rng.gen_range(0.7..1.2);
            let k = gen::symmetric_polygon(rng, count, radius);
            let k2 = if i % 2 == 0 {
                k.scale(rng.gen_range(1.0..1.2))
            } else {
                let mut moved: Vec<Vec3> = k
                    .vertices()
                    .iter()
                    .map(|p| *p * (1.0 + rng.gen_range(0.0..0.05)))
                    .collect();
                let neg: Vec<Vec3> = moved.iter().map(|p| -p).collect();
                moved.extend(neg);
                ConvexBody::from_points(&moved)?
            };
            doubles_lemma(&k.rotate(&q), &k2.rotate(&q))
        }
        3 => {
            let u = gen::unit_vector(rng);
            let h = rng.gen_range(0.3..1.5);
            let h2 = h * rng.gen_range(0.8..1.25);
            segments_lemma(&segment(-u * h, u * h), &segment(-u * h2, u * h2))
        }
        _ => {
            let q = gen::rotation(rng);
            let h = rng.gen_range(0.02..0.1);
            let v = Direction::new(q * Vec3::x())?;
            let d = if i % 2 == 0 {
                let count = rng.gen_range(5..10);
                gen::symmetric_solid(rng, count, Vec3::new(1.0, 1.0, 1.0))
                    .transform(&Mat3::from_diagonal(&Vec3::new(1.0, h, h)))?
            } else {
                let count = rng.gen_range(3..8);
                stretched_symmetric_polygon(rng, count, Vec3::new(1.0, h, 1.0))
            };
            to_segment_lemma(&d.rotate(&q), &v)
        }
    }
}

const FAMILIES: [&str; 5] = ["3to3", "3to2", "2to2", "1to1", "thin"];

/// Twenty seeded instances of each lemma family at the suite resolution.
pub fn criterion_1(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    for (fam, name) in FAMILIES.iter().enumerate() {
        let mut rng = sub_rng(cfg, 100 + fam as u64);
        for i in 0..cfg.lemma_cases {
            let label = format!("{name}#{i}");
            match lemma_family(&mut rng, fam, i).and_then(|l| l.correspond(&cfg.res)) {
                Ok((_, c)) => record_certificate(&mut t, &label, &c),
                Err(e) => t.error(&label, e),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    t.check(&format!("runtime {secs:.1}s over 120s"), secs < 120.0);
    t.finish(1, "lemma distortion bounds", start, None)
}

/// Cube `[-1,1]³` geodesic distances against unfolding.
pub fn cube_pairs() -> Vec<(Vec3, Vec3)> {
    vec![
        (Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, -1.0)),
        (Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 0.0)),
        (Vec3::new(-1.0, -1.0, -1.0), Vec3::new(1.0, 1.0, 1.0)),
        (Vec3::new(0.3, -0.7, 1.0), Vec3::new(-1.0, 0.2, -0.45)),
        (Vec3::new(0.9, 0.1, 1.0), Vec3::new(-0.35, 1.0, 0.6)),
    ]
}

/// Largest relative error over [`cube_pairs`] at a mesh level.
pub fn cube_error(level: u32) -> nncurv::Result<f64> {
    let c = cube(1.0);
    let mut worst: f64 = 0.0;
    for (p, q) in cube_pairs() {
        let s = boundary_metric(&c, level, &[p, q])?;
        let exact = oracles::unfold_distance(&c, &p, &q, 6);
        worst = worst.max((s.d(0, 1) - exact).abs() / exact);
    }
    Ok(worst)
}

pub fn criterion_2(_cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let c = cube(1.0);
    let fixed = [(0usize, 4.0), (1, 2.0), (2, 2.0 * 5f64.sqrt())];
    let pairs = cube_pairs();
    for (k, want) in fixed {
        let (p, q) = pairs[k];
        let oracle = oracles::unfold_distance(&c, &p, &q, 6);
        t.bound(&format!("oracle pair {k}"), (oracle - want).abs(), 1e-12);
    }
    let mut errs = Vec::new();
    for level in 2..=5 {
        match cube_error(level) {
            Ok(e) => {
                if level >= 4 {
                    t.bound(&format!("level {level}"), e, 0.02);
                }
                errs.push(e);
            }
            Err(e) => t.error(&format!("level {level}"), e),
        }
    }
    for w in errs.windows(2) {
        t.check(
            &format!("error increased {:.3e} -> {:.3e}", w[0], w[1]),
            w[1] <= w[0] + 1e-12,
        );
    }
    let secs = start.elapsed().as_secs_f64();
    t.check(&format!("runtime {secs:.1}s over 30s"), secs < 30.0);
    let errs: Vec<String> = errs.iter().map(|e| format!("{e:.2e}")).collect();
    t.finish(
        2,
        "cube geodesics against unfolding",
        start,
        Some(format!("errors by level 2..5: {}", errs.join(", "))),
    )
}

pub fn criterion_3(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = sub_rng(cfg, 3);
    for i in 0..50 {
        let d = gen::body_of_dim(&mut rng, 1 + i % 3);
        match realize_sphere(&d, &cfg.res) {
            Ok(s) => t.bound(
                &format!("body {i}"),
                s.diameter(),
                collapse_bound(&d) + MESH_ALLOWANCE * d.diameter(),
            ),
            Err(e) => t.error(&format!("body {i}"), e),
        }
    }
    t.finish(3, "collapsing diameter bound", start, None)
}

pub fn criterion_4(_cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let k = regular_polygon(64, 1.0);
    let mut sites = vec![
        Site::on(Vec3::zeros(), SheetTag::Sheet1),
        Site::on(Vec3::zeros(), SheetTag::Sheet2),
    ];
    for i in 0..12 {
        let a = i as f64 * 0.7;
        let r = 0.15 + 0.06 * i as f64;
        let p = Vec3::new(r * a.cos(), r * a.sin(), 0.0);
        for sheet in [SheetTag::Sheet1, SheetTag::Sheet2] {
            sites.push(Site::on(p, sheet));
        }
    }
    match double_metric(&k, &sites) {
        Ok(s) => {
            t.bound("center to center", (s.d(0, 1) - 2.0).abs(), 0.005 * 2.0);
            let ring: Vec<Vec3> = k.vertices().to_vec();
            for i in 0..s.len() {
                for j in 0..s.len() {
                    let (a, b) = (s.point(i), s.point(j));
                    let same = a.sheet == b.sheet;
                    let want = oracles::double_distance(&ring, &a.pos, &b.pos, same);
                    if same {
                        t.bound(
                            &format!("same sheet {i},{j}"),
                            (s.d(i, j) - want).abs(),
                            1e-12,
                        );
                    } else {
                        t.bound(
                            &format!("cross sheet {i},{j}"),
                            (s.d(i, j) - want).abs(),
                            1e-9,
                        );
                    }
                }
            }
            match sheet_swap(&s) {
                Ok(perm) => {
                    let mut worst: f64 = 0.0;
                    for i in 0..s.len() {
                        for j in 0..s.len() {
                            worst = worst.max((s.d(perm[i], perm[j]) - s.d(i, j)).abs());
                        }
                    }
                    t.bound("sheet swap isometry", worst, 1e-9);
                }
                Err(e) => t.error("sheet swap", e),
            }
        }
        Err(e) => t.error("double metric", e),
    }
    t.finish(4, "double metric of the 64-gon", start, None)
}

pub fn criterion_5(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = sub_rng(cfg, 5);
    let ball = icosphere(1, 1.0);
    for i in 0..200 {
        let d1 = gen::body_of_dim(&mut rng, 2 + i % 2);
        let d2 = gen::body_of_dim(&mut rng, 2 + (i / 2) % 2);
        let (s, u): (f64, f64) = (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0));
        let (h1, h2) = match (body_homotopy(s, &d1, &ball), body_homotopy(u, &d2, &ball)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                t.error(&format!("sample {i}"), e);
                continue;
            }
        };
        let lhs = hausdorff_distance(&h1, &h2);
        let rhs = (s - u).abs() * (2.0 + d1.diameter() + d2.diameter())
            + (1.0 - u) * hausdorff_distance(&d1, &d2)
            + 1e-9;
        t.bound(&format!("sample {i}"), lhs, rhs);
        if i < 20 {
            let h0 = body_homotopy(0.0, &d1, &ball).expect("endpoint");
            t.check("H(0, D) = D", h0.vertices() == d1.vertices());
            let h1 = body_homotopy(1.0, &d1, &ball).expect("endpoint");
            t.check("H(1, D) = B", h1.vertices() == ball.vertices());
        }
    }
    t.finish(5, "ball homotopy continuity", start, None)
}

pub fn criterion_6(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = sub_rng(cfg, 6);
    for i in 0..50 {
        let shift = gen::unit_vector(&mut rng) * rng.gen_range(0.0..2.0);
        let a = gen::body_of_dim(&mut rng, 1 + i % 3).translate(&shift);
        let b = gen::body_of_dim(&mut rng, 1 + (i / 3) % 3);
        let sum = match minkowski_combine(1.0, &a, 1.0, &b) {
            Ok(s) => s,
            Err(e) => {
                t.error(&format!("pair {i}"), e);
                continue;
            }
        };
        let tau = TAU_STEINER * sum.diameter() + TAU_GEOM;
        t.bound(
            &format!("additivity {i}"),
            (sum.steiner() - a.steiner() - b.steiner()).norm(),
            2.0 * tau,
        );
        let phi = gen::orthogonal(&mut rng);
        let moved = a.rotate(&phi).translate(&shift);
        let tau_a = TAU_STEINER * a.diameter() + TAU_GEOM;
        t.bound(
            &format!("equivariance {i}"),
            (moved.steiner() - (phi * a.steiner() + shift)).norm(),
            2.0 * tau_a,
        );
        let count = rng.gen_range(4..10);
        let sym = gen::symmetric_solid(&mut rng, count, Vec3::new(1.0, 0.7, 0.5));
        t.bound(
            &format!("symmetric {i}"),
            sym.steiner().norm(),
            TAU_STEINER * sym.diameter() + TAU_GEOM,
        );
    }
    t.finish(6, "Steiner point axioms", start, None)
}

fn asymmetric_lemma(rng: &mut Rand, family: usize) -> nncurv::Result<Lemma> {
    match family {
        0 => {
            let count = rng.gen_range(6..12);
            let b = gen::centered_solid(rng, count);
            boundaries_lemma(&b, &b.scale(1.1))
        }
        1 => {
            let count = rng.gen_range(4..8);
            let k = gen::centered_polygon(rng, count, 1.0);
            let b = slab(&k, 0.1).centered();
            flatten_lemma(&b, &Direction::z())
        }
        2 => {
            let count = rng.gen_range(4..8);
            let k = gen::centered_polygon(rng, count, 1.0);
            doubles_lemma(&k, &k.scale(1.1))
        }
        _ => {
            let d = gen::centered_solid(rng, 8)
                .transform(&Mat3::from_diagonal(&Vec3::new(1.0, 0.05, 0.05)))?
                .centered();
            to_segment_lemma(&d, &Direction::x())
        }
    }
}

pub fn criterion_7(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    for (fam, name) in FAMILIES.iter().enumerate() {
        let mut rng = sub_rng(cfg, 700 + fam as u64);
        for i in 0..5 {
            let label = format!("{name}#{i}");
            match lemma_family(&mut rng, fam, i).and_then(|l| l.correspond(&cfg.res)) {
                Ok((_, c)) => match c.equiv_defect {
                    Some(d) if c.equivariant => t.bound(&label, d, c.allowance),
                    _ => t.check(&format!("{label} symmetric input not flagged"), false),
                },
                Err(e) => t.error(&label, e),
            }
        }
    }
    for fam in 0..4 {
        let mut rng = sub_rng(cfg, 750 + fam as u64);
        for i in 0..5 {
            match asymmetric_lemma(&mut rng, fam) {
                Ok(l) => t.check(&format!("asymmetric {fam}#{i} flagged"), !l.equivariant),
                Err(e) => t.error(&format!("asymmetric {fam}#{i}"), e),
            }
        }
    }
    t.finish(7, "equivariance under the antipodal maps", start, None)
}

fn euclidean_sample(pts: &[Vec3]) -> MetricSample {
    let n = pts.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = (pts[i] - pts[j]).norm();
        }
    }
    MetricSample::new(
        SpaceKind::DiscFlat,
        0,
        pts.iter().map(|p| Site::at(*p)).collect(),
        d,
    )
    .expect("sample")
}

fn random_weights(rng: &mut Rand, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

pub fn criterion_8(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = sub_rng(cfg, 8);
    for i in 0..60 {
        let n = 6;
        let scale = rng.gen_range(0.1..1.5);
        let pts: Vec<Vec3> = (0..n)
            .map(|_| gen::unit_vector(&mut rng) * scale * rng.gen_range(0.0..1.0))
            .collect();
        let s = euclidean_sample(&pts);
        let p = rng.gen_range(1..n);
        let q = rng.gen_range(1..=(n - p));
        let mut ids: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            ids.swap(k, rng.gen_range(0..=k));
        }
        let wmu = random_weights(&mut rng, p);
        let mu_atoms: Vec<(usize, f64)> = ids[..p].iter().copied().zip(wmu).collect();
        let qids: Vec<usize> = (0..q).map(|_| rng.gen_range(0..n)).collect();
        let mut nu_atoms: Vec<(usize, f64)> = Vec::new();
        for (id, w) in qids.into_iter().zip(random_weights(&mut rng, q)) {
            match nu_atoms.iter_mut().find(|(j, _)| *j == id) {
                Some(e) => e.1 += w,
                None => nu_atoms.push((id, w)),
            }
        }
        let mu = DiscreteMeasure::new(mu_atoms.clone(), n).expect("measure");
        let nu = DiscreteMeasure::new(nu_atoms.clone(), n).expect("measure");
        match prokhorov_distance(&s, &mu, &nu) {
            Ok(got) => {
                let grid = oracles::prokhorov_grid(&|a, b| s.d(a, b), &mu_atoms, &nu_atoms, 1e-4);
                t.bound(&format!("case {i}"), (got - grid).abs(), 2e-4);
            }
            Err(e) => t.error(&format!("case {i}"), e),
        }
    }
    for d in [0.0, 0.25, 0.999, 1.0, 1.7, 3.0] {
        let s = euclidean_sample(&[Vec3::zeros(), Vec3::new(d, 0.0, 0.0)]);
        let a = DiscreteMeasure::new(vec![(0, 1.0)], 2).expect("measure");
        let b = DiscreteMeasure::new(vec![(1, 1.0)], 2).expect("measure");
        match prokhorov_distance(&s, &a, &b) {
            Ok(got) => t.bound(
                &format!("dirac pair at {d}"),
                (got - d.min(1.0)).abs(),
                1e-9,
            ),
            Err(e) => t.error("dirac pair", e),
        }
    }
    t.finish(8, "Prokhorov distance against grid search", start, None)
}

/// Three symmetric atom pairs at the central projections of `±e_i`, with
/// weights proportional to the support numbers.
fn axis_measure(sample: &MetricSample, body: &ConvexBody) -> nncurv::Result<DiscreteMeasure> {
    let mut atoms: Vec<(usize, f64)> = Vec::new();
    for e in [Vec3::x(), Vec3::y(), Vec3::z()] {
        for s in [1.0, -1.0] {
            let u = e * s;
            let p = nncurv::convex::central_project(body, &u)?;
            let (i, _) = sample.nearest(&Site::at(p));
            let w = body.support(&u);
            match atoms.iter_mut().find(|(j, _)| *j == i) {
                Some(a) => a.1 += w,
                None => atoms.push((i, w)),
            }
        }
    }
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    DiscreteMeasure::new(
        atoms.into_iter().map(|(i, w)| (i, w / total)).collect(),
        sample.len(),
    )
}

fn measured_eps(l: &Lemma, res: &Resolution) -> nncurv::Result<f64> {
    let (c, _) = l.correspond(res)?;
    let (ks, kt) = match (&l.source, &l.target) {
        (Space::Surface(a), Space::Surface(b)) => (a.clone(), b.clone()),
        _ => {
            return Err(nncurv::Error::InvalidInput(
                "boundary lemmas expected".into(),
            ))
        }
    };
    let ms = axis_measure(&c.source, &ks)?;
    let mt = axis_measure(&c.target, &kt)?;
    let a = GroupAction::antipodal(&c.source)?;
    let b = GroupAction::antipodal(&c.target)?;
    let r = eq_mgh_check(
        &c,
        0.0,
        Some(Actions {
            source: &a,
            target: &b,
            pairing: &[0],
        }),
        &ms,
        &mt,
    )?;
    Ok(r.eps_star())
}

/// Distortion of each link and of the composite along one chain of sampled
/// sites `S → f₁(S) → f₂(f₁(S))`.
fn chain_distortions(
    l12: &Lemma,
    l23: &Lemma,
    res: &Resolution,
) -> nncurv::Result<(f64, f64, f64)> {
    let s = l12.source.default_sites(res);
    let s = l12.source.sample(&s, res)?;
    let t_sites: Vec<Site> = s.points().iter().map(|x| (l12.forward)(x)).collect();
    let t = l12.target.sample(&t_sites, res)?;
    let u_sites: Vec<Site> = t.points().iter().map(|x| (l23.forward)(x)).collect();
    let u = l23.target.sample(&u_sites, res)?;
    let n = s.len();
    let (mut d1, mut d2, mut d3): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            d1 = d1.max((t.d(i, j) - s.d(i, j)).abs());
            d2 = d2.max((u.d(i, j) - t.d(i, j)).abs());
            d3 = d3.max((u.d(i, j) - s.d(i, j)).abs());
        }
    }
    Ok((d1, d2, d3))
}

pub fn criterion_9(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = sub_rng(cfg, 9);
    let res = Resolution {
        sample_level: 1,
        ..cfg.res
    };
    for i in 0..30 {
        let count = rng.gen_range(5..9);
        let b1 = gen::symmetric_solid(&mut rng, count, Vec3::new(1.0, 0.8, 0.7));
        let b2 = if i % 2 == 0 {
            b1.scale(rng.gen_range(1.0..1.1))
        } else {
            trimmed(&b1, 0.05 * b1.diameter())
        };
        let b3 = b2.scale(rng.gen_range(1.0..1.1));
        let run = || -> nncurv::Result<(f64, f64, f64, (f64, f64, f64))> {
            let l12 = boundaries_lemma(&b1, &b2)?;
            let l23 = boundaries_lemma(&b2, &b3)?;
            let l13 = l12.then(&l23);
            let e12 = measured_eps(&l12, &res)?;
            let e23 = measured_eps(&l23, &res)?;
            let e13 = measured_eps(&l13, &res)?;
            Ok((e12, e23, e13, chain_distortions(&l12, &l23, &res)?))
        };
        match run() {
            Ok((e12, e23, e13, (d1, d2, d3))) => {
                t.bound(&format!("triple {i}"), e13, 4.0 * (e12 + e23));
                t.bound(&format!("chain {i}"), d3, d1 + d2 + 1e-12);
            }
            Err(e) => t.error(&format!("triple {i}"), e),
        }
    }
    t.finish(9, "modified triangle inequality", start, None)
}

fn entries_close(a: &LatticeBasis, b: &LatticeBasis, tol: f64) -> bool {
    a.entries()
        .iter()
        .zip(b.entries())
        .all(|(x, y)| (x - y).abs() <= tol)
}

fn random_unimodular(rng: &mut Rand) -> [[f64; 2]; 2] {
    let mut m = [[1.0, 0.0], [0.0, 1.0]];
    for _ in 0..rng.gen_range(2..6) {
        let k = rng.gen_range(-2i32..=2) as f64;
        let e = if rng.gen_bool(0.5) {
            [[1.0, k], [0.0, 1.0]]
        } else {
            [[1.0, 0.0], [k, 1.0]]
        };
        let mut out = [[0.0; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = m[r][0] * e[0][c] + m[r][1] * e[1][c];
            }
        }
        m = out;
    }
    if rng.gen_bool(0.5) {
        m = [[m[0][1], m[0][0]], [m[1][1], m[1][0]]];
    }
    m
}

pub fn criterion_10(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = sub_rng(cfg, 10);
    let mut done = 0;
    while done < 100 {
        let v1 = Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let v2 = Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let Ok(b) = LatticeBasis::new(v1, v2) else {
            continue;
        };
        if b.det().abs() < 0.2 {
            continue;
        }
        done += 1;
        let reduced = lattice_reduce(&b).expect("independent");
        let (l1, l2) = oracles::successive_minima(&b, oracles::covering_range(&b));
        t.bound(
            &format!("minimality {done}"),
            (reduced.v1.norm() - l1)
                .abs()
                .max((reduced.v2.norm() - l2).abs()),
            1e-9,
        );
        let u = random_unimodular(&mut rng);
        let w1 = b.v1 * u[0][0] + b.v2 * u[1][0];
        let w2 = b.v1 * u[0][1] + b.v2 * u[1][1];
        let ang: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (c, s) = (ang.cos(), ang.sin());
        let flip = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let o = |v: Vec2| Vec2::new(c * v.x - s * v.y * flip, s * v.x + c * v.y * flip);
        let moved = LatticeBasis::new(o(w1), o(w2)).expect("unimodular image");
        let r2 = lattice_reduce(&moved).expect("independent");
        t.check(
            &format!(
                "canonical form {done}: {:?} vs {:?}",
                reduced.entries(),
                r2.entries()
            ),
            entries_close(&reduced, &r2, 1e-9),
        );
    }
    let std = LatticeBasis::new(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).expect("basis");
    let skew = LatticeBasis::new(Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0)).expect("basis");
    let r = lattice_reduce(&skew).expect("basis");
    t.check(
        "(1,0),(1,1) reduces to the standard basis",
        entries_close(&r, &std, 1e-12),
    );
    let (l1, l2) = oracles::successive_minima(&skew, 3);
    t.check(
        "standard basis is minimal over [-3,3]²",
        (l1 - 1.0).abs() < 1e-12 && (l2 - 1.0).abs() < 1e-12,
    );
    t.finish(10, "lattice canonical form", start, None)
}

/// The dimension and splitting-degree table, written out independently.
pub const TABLE: [(u32, u32, &[&str]); 6] = [
    (0, 0, &["point"]),
    (1, 0, &["interval"]),
    (1, 1, &["circle"]),
    (2, 0, &["sphere", "rp2", "disc"]),
    (2, 1, &["cylinder", "mobius"]),
    (2, 2, &["torus", "klein"]),
];

pub fn criterion_11(cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = sub_rng(cfg, 11);
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(1.0);
    for i in 0..50 {
        let (l, a) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        let inv = structure_invariants(&FlatStructure::circle(l, a).expect("circle"));
        t.bound(
            &format!("circle {i}"),
            rel(inv[0], l / 2.0).max(rel(inv[1], a * l)),
            1e-12,
        );

        let (a, b, r) = (
            rng.gen_range(0.1..5.0),
            rng.gen_range(0.1..5.0),
            rng.gen_range(0.1..5.0),
        );
        for twisted in [true, false] {
            let (sx, st) = (rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0));
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let q = StripQuotient {
                width: r / sx,
                glide: sign * b / st,
                sx,
                st,
                density: a * sx * st,
                twisted,
            };
            match q.structure() {
                Ok(s) => {
                    let inv = structure_invariants(&s);
                    let err = rel(inv[0], a).max(rel(inv[1], b)).max(rel(inv[2], r));
                    t.bound(
                        &format!("{} {i}", if twisted { "mobius" } else { "cylinder" }),
                        err,
                        1e-12,
                    );
                }
                Err(e) => t.error("strip", e),
            }
        }

        let d1 = rng.gen_range(0.1..5.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let d2 = rng.gen_range(0.1..5.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let inv = structure_invariants(&FlatStructure::klein(d1, d2, 1.0).expect("klein"));
        t.check(
            &format!("klein {i}"),
            inv[1] == d1.abs() && inv[2] == d2.abs(),
        );
    }
    let inv = structure_invariants(&FlatStructure::klein(-2.0, 5.0, 1.0).expect("klein"));
    t.check("klein diag(-2,5)", inv[1..] == [2.0, 5.0]);
    for (dim, k, names) in TABLE {
        let want: Vec<SurfaceType> = names
            .iter()
            .map(|n| SurfaceType::parse(n).expect("known name"))
            .collect();
        t.check(
            &format!("table cell ({dim},{k})"),
            classify(dim, k).ok() == Some(want),
        );
    }
    t.check(
        "k > dim rejected",
        classify(0, 1).is_err() && classify(1, 2).is_err(),
    );
    t.finish(11, "moduli invariant roundtrips", start, None)
}

pub fn criterion_12(_cfg: &SuiteConfig) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let g = 129;
    let one = ConcaveDensity::constant(g, 2.0, 1.0).expect("density");
    let lin = ConcaveDensity::from_fn(g, 2.0, |x| x).expect("density");
    let sq = ConcaveDensity::from_fn(g, 2.0, |x| x * x).expect("density");
    t.check("g = 1 passes", cd_density_check(&one).passes());
    t.check("g = t passes", cd_density_check(&lin).passes());
    let r = cd_density_check(&sq);
    t.check("g = t² fails concavity", !r.concave && r.positive);
    let flip = ConcaveDensity::from_fn(g, 2.0, |x| 1.0 - x).expect("density");
    t.check(
        "d(t, 1-t) = 0",
        cstar_quotient_distance(&lin, &flip) == Ok(0.0),
    );
    let inputs = [
        lin.clone(),
        ConcaveDensity::from_fn(g, 3.0, |x| (PI * x).sin()).expect("density"),
        ConcaveDensity::from_fn(g, 2.5, |x| 4.0 * x * (1.0 - x) + 0.1).expect("density"),
        ConcaveDensity::from_fn(g, 2.0, |x| (1.0 + x).min(1.5)).expect("density"),
    ];
    for (k, f) in inputs.iter().enumerate() {
        t.check(&format!("input {k} valid"), cd_density_check(f).passes());
        t.check(
            &format!("input {k} t = 0"),
            interval_contract(0.0, f).ok().as_ref() == Some(f),
        );
        t.check(
            &format!("input {k} t = 1"),
            interval_contract(1.0, f)
                .map(|h| h.values().iter().all(|&v| v == 1.0))
                .unwrap_or(false),
        );
        for s in 1..20 {
            let h = interval_contract(s as f64 / 20.0, f).expect("t in range");
            t.check(
                &format!("input {k} step {s}"),
                cd_density_check(&h).passes(),
            );
        }
    }
    t.finish(12, "interval moduli", start, None)
}

pub const ALL: [fn(&SuiteConfig) -> CriterionResult; 12] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
];
