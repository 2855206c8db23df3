//! Independent oracles, seeded generators and the acceptance suite.

pub mod criteria;
pub mod gen;
pub mod oracles;

use serde::Serialize;

use nncurv::approx::flatten_lemma;
use nncurv::convex::shapes::cuboid;
use nncurv::Direction;

pub use criteria::{CriterionResult, SuiteConfig};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs the selected criteria (all when `only` is empty).
pub fn run_suite(cfg: &SuiteConfig, only: &[u32]) -> SuiteReport {
    let criteria: Vec<CriterionResult> = criteria::ALL
        .iter()
        .enumerate()
        .filter(|(i, _)| only.is_empty() || only.contains(&(*i as u32 + 1)))
        .map(|(_, run)| run(cfg))
        .collect();
    let passed = criteria.iter().filter(|c| c.passed).count();
    SuiteReport {
        seed: cfg.seed,
        passed,
        failed: criteria.len() - passed,
        criteria,
    }
}

/// One row of a sweep: the swept parameter, the measured value, the bound
/// it is compared with, and the discretization allowance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotRow {
    pub parameter: f64,
    pub measured: f64,
    pub bound: f64,
    pub allowance: f64,
}

/// Opposite face centers of the cube `[-1,1]³` by mesh level, against the
/// unfolding value.
pub fn mesh_sweep(levels: std::ops::RangeInclusive<u32>) -> nncurv::Result<Vec<PlotRow>> {
    let c = nncurv::convex::shapes::cube(1.0);
    let (p, q) = criteria::cube_pairs()[0];
    let exact = oracles::unfold_distance(&c, &p, &q, 6);
    levels
        .map(|level| {
            let s = nncurv::intrinsic::boundary_metric(&c, level, &[p, q])?;
            Ok(PlotRow {
                parameter: level as f64,
                measured: s.d(0, 1),
                bound: exact,
                allowance: 0.02 * exact,
            })
        })
        .collect()
}

/// Flattening distortion of the slab `[-1,1]² × [-h,h]` against `10h`.
pub fn flatten_sweep(
    hs: &[f64],
    res: &nncurv::intrinsic::Resolution,
) -> nncurv::Result<Vec<PlotRow>> {
    hs.iter()
        .map(|&h| {
            let (_, c) = flatten_lemma(&cuboid(1.0, 1.0, h), &Direction::z())?.correspond(res)?;
            Ok(PlotRow {
                parameter: h,
                measured: c.dis_f,
                bound: c.nu,
                allowance: c.allowance,
            })
        })
        .collect()
}
