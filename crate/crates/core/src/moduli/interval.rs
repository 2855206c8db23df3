//! Concave densities on the unit interval and the `C*` metric.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible grid.
pub const MIN_GRID: usize = 65;
/// Number of series terms in [`cstar_distance`]; the tail is below `2^-19`.
pub const CSTAR_TERMS: u32 = 20;

/// Samples of `g` on the uniform grid `t_i = i / (G - 1)` together with the
/// dimension bound `N`. The measure is `g^(N-1) dt`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDensity", into = "RawDensity")]
pub struct ConcaveDensity {
    values: Vec<f64>,
    n: f64,
}

#[derive(Serialize, Deserialize)]
struct RawDensity {
    #[serde(rename = "N")]
    n: f64,
    grid: Vec<f64>,
}

impl TryFrom<RawDensity> for ConcaveDensity {
    type Error = Error;
    fn try_from(r: RawDensity) -> Result<Self> {
        ConcaveDensity::new(r.grid, r.n)
    }
}

impl From<ConcaveDensity> for RawDensity {
    fn from(d: ConcaveDensity) -> Self {
        RawDensity {
            n: d.n,
            grid: d.values,
        }
    }
}

impl ConcaveDensity {
    /// Checks the grid size, the exponent and finiteness. Concavity and
    /// positivity are reported by [`cd_density_check`].
    pub fn new(values: Vec<f64>, n: f64) -> Result<ConcaveDensity> {
        if values.len() < MIN_GRID {
            return Err(Error::InvalidInput(format!(
                "grid has {} points, need {MIN_GRID}",
                values.len()
            )));
        }
        if !(n > 1.0) || !n.is_finite() {
            return Err(Error::ParameterRange(format!("exponent {n} must exceed 1")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ConcaveDensity { values, n })
    }

    /// Samples `f` at `grid` points.
    pub fn from_fn(grid: usize, n: f64, f: impl Fn(f64) -> f64) -> Result<ConcaveDensity> {
        let h = 1.0 / (grid.max(2) - 1) as f64;
        ConcaveDensity::new((0..grid).map(|i| f(i as f64 * h)).collect(), n)
    }

    pub fn constant(grid: usize, n: f64, c: f64) -> Result<ConcaveDensity> {
        ConcaveDensity::from_fn(grid, n, |_| c)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn exponent(&self) -> f64 {
        self.n
    }

    pub fn grid(&self) -> usize {
        self.values.len()
    }

    pub fn t(&self, i: usize) -> f64 {
        i as f64 / (self.values.len() - 1) as f64
    }

    /// `t ↦ g(1 - t)`.
    pub fn flipped(&self) -> ConcaveDensity {
        let mut values = self.values.clone();
        values.reverse();
        ConcaveDensity { values, n: self.n }
    }

    /// The density `f = g^(N-1)` of the measure.
    pub fn measure_density(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|g| g.max(0.0).powf(self.n - 1.0))
            .collect()
    }
}

fn trapezoid(f: &[f64]) -> f64 {
    let h = 1.0 / (f.len() - 1) as f64;
    let inner: f64 = f[1..f.len() - 1].iter().sum();
    h * (inner + 0.5 * (f[0] + f[f.len() - 1]))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub concave: bool,
    pub positive: bool,
    pub sup_bound: bool,
    /// Largest second difference `g_{i-1} - 2g_i + g_{i+1}`.
    pub max_second_difference: f64,
    pub min_interior: f64,
    pub sup_f: f64,
    pub l1_f: f64,
    pub failures: Vec<String>,
}

impl DensityReport {
    pub fn passes(&self) -> bool {
        self.concave && self.positive && self.sup_bound
    }
}

/// Concavity, positivity on the open interval and `sup f <= N ∫ f` for
/// `f = g^(N-1)`, the integral taken by the trapezoid rule.
pub fn cd_density_check(g: &ConcaveDensity) -> DensityReport {
    let v = &g.values;
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tau_conc = 1e-9 * scale.max(f64::MIN_POSITIVE);
    let max_second_difference = v
        .windows(3)
        .map(|w| w[0] - 2.0 * w[1] + w[2])
        .fold(f64::NEG_INFINITY, f64::max);
    let min_interior = v[1..v.len() - 1]
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let f = g.measure_density();
    let sup_f = f.iter().copied().fold(0.0, f64::max);
    let l1_f = trapezoid(&f);
    let tau = 1e-9 * sup_f.max(1.0);

    let concave = max_second_difference <= tau_conc;
    let positive = min_interior > 0.0;
    let sup_bound = sup_f <= g.n * l1_f + tau;
    let mut failures = Vec::new();
    if !concave {
        failures.push(format!(
            "second difference {max_second_difference:.3e} exceeds {tau_conc:.3e}"
        ));
    }
    if !positive {
        failures.push(format!(
            "interior minimum {min_interior:.3e} is not positive"
        ));
    }
    if !sup_bound {
        failures.push(format!(
            "sup f = {sup_f:.6} exceeds N·|f|_1 = {:.6}",
            g.n * l1_f
        ));
    }
    DensityReport {
        concave,
        positive,
        sup_bound,
        max_second_difference,
        min_interior,
        sup_f,
        l1_f,
        failures,
    }
}

/// `Σ_k 2^-k min(1, d_k)` for `k < CSTAR_TERMS`, with `d_k` the largest
/// difference over grid points in `[2^-k, 1 - 2^-k]` (zero on an empty
/// window, in particular for `k = 0`).
pub fn cstar_distance(f: &ConcaveDensity, g: &ConcaveDensity) -> Result<f64> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let m = f.grid() - 1;
    let mut total = 0.0;
    for k in 0..CSTAR_TERMS {
        let w = 0.5f64.powi(k as i32);
        let lo = (w * m as f64 - 1e-9).ceil().max(0.0) as usize;
        let hi = ((1.0 - w) * m as f64 + 1e-9).floor();
        if hi < 0.0 || (hi as usize) < lo {
            continue;
        }
        let dk = (lo..=hi as usize)
            .map(|i| (f.values[i] - g.values[i]).abs())
            .fold(0.0, f64::max);
        total += w * dk.min(1.0);
    }
    Ok(total)
}

/// Distance on the quotient by `t ↦ 1 - t`.
pub fn cstar_quotient_distance(f: &ConcaveDensity, g: &ConcaveDensity) -> Result<f64> {
    Ok(cstar_distance(f, g)?.min(cstar_distance(f, &g.flipped())?))
}

/// `t·1 + (1 - t)·f`.
pub fn interval_contract(t: f64, f: &ConcaveDensity) -> Result<ConcaveDensity> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterRange(format!("t = {t} outside [0, 1]")));
    }
    let values = if t == 0.0 {
        f.values.clone()
    } else if t == 1.0 {
        vec![1.0; f.grid()]
    } else {
        f.values.iter().map(|v| t + (1.0 - t) * v).collect()
    };
    Ok(ConcaveDensity { values, n: f.n })
}
