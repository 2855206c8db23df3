//! Distortion, roundtrip and equivariance defects of sampled correspondences,
//! and the Prokhorov distance between finite measures.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::Correspondence;
use crate::error::{Error, Result};
use crate::intrinsic::{sheet_swap, MetricSample};

/// Largest number of atoms handled by [`prokhorov_distance`].
pub const EXACT_ATOMS: usize = 12;

fn map_distortion(src: &MetricSample, dst: &MetricSample, f: &[usize]) -> f64 {
    (0..src.len())
        .into_par_iter()
        .map(|i| {
            let (rs, rd) = (src.row(i), dst.row(f[i]));
            (0..src.len())
                .map(|j| (rd[f[j]] - rs[j]).abs())
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
}

/// `(Dis f, Dis g)` over all sampled pairs.
pub fn distortion(c: &Correspondence) -> (f64, f64) {
    (
        map_distortion(&c.source, &c.target, &c.forward),
        map_distortion(&c.target, &c.source, &c.backward),
    )
}

/// `(max d(g∘f(x), x), max d(f∘g(y), y))`.
pub fn roundtrip(c: &Correspondence) -> (f64, f64) {
    let rf = (0..c.source.len())
        .map(|i| c.source.d(c.backward[c.forward[i]], i))
        .fold(0.0, f64::max);
    let rg = (0..c.target.len())
        .map(|j| c.target.d(c.forward[c.backward[j]], j))
        .fold(0.0, f64::max);
    (rf, rg)
}

/// A finite group acting on the points of a sample by permutations.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction {
    pub generators: Vec<Vec<usize>>,
    pub order: usize,
}

impl GroupAction {
    /// Checks that each generator is a permutation whose `order`-th power is
    /// the identity.
    pub fn new(generators: Vec<Vec<usize>>, order: usize, n: usize) -> Result<GroupAction> {
        if order == 0 {
            return Err(Error::InvalidInput("group order must be positive".into()));
        }
        for g in &generators {
            let mut seen = vec![false; n];
            if g.len() != n
                || g.iter()
                    .any(|&j| j >= n || std::mem::replace(&mut seen[j], true))
            {
                return Err(Error::InvalidInput("generator is not a permutation".into()));
            }
            for i in 0..n {
                let mut j = i;
                for _ in 0..order {
                    j = g[j];
                }
                if j != i {
                    return Err(Error::InvalidInput("generator order mismatch".into()));
                }
            }
        }
        Ok(GroupAction { generators, order })
    }

    /// `x ↦ -x`, with sheets exchanged on doubles.
    pub fn antipodal(sample: &MetricSample) -> Result<GroupAction> {
        let tol = 1e-7
            * sample
                .points()
                .iter()
                .map(|p| p.pos.norm())
                .fold(1.0, f64::max);
        let perm: Vec<usize> = sample
            .points()
            .iter()
            .map(|p| {
                sample.find(&p.antipode(), tol).ok_or_else(|| {
                    Error::InvalidInput("sample not closed under the antipodal map".into())
                })
            })
            .collect::<Result<_>>()?;
        GroupAction::new(vec![perm], 2, sample.len())
    }

    /// Exchange of the two sheets of a double.
    pub fn sheet_swap(sample: &MetricSample) -> Result<GroupAction> {
        GroupAction::new(vec![sheet_swap(sample)?], 2, sample.len())
    }

    /// Largest `|d(γx, γy) - d(x, y)|`; zero for an action by isometries.
    pub fn isometry_defect(&self, sample: &MetricSample) -> f64 {
        let n = sample.len();
        let mut worst: f64 = 0.0;
        for g in &self.generators {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((sample.d(g[i], g[j]) - sample.d(i, j)).abs());
                }
            }
        }
        worst
    }
}

/// Largest `d(f(γx), φ(γ)f(x))`, together with `d(g(φ(γ)y), γg(y))` when
/// the backward map is certified. Generator `i` of `a` is paired with
/// generator `pairing[i]` of `b`.
pub fn equivariance_defect(
    c: &Correspondence,
    a: &GroupAction,
    b: &GroupAction,
    pairing: &[usize],
) -> Result<f64> {
    if a.order != b.order
        || pairing.len() != a.generators.len()
        || pairing.iter().any(|&k| k >= b.generators.len())
    {
        return Err(Error::GroupMismatch);
    }
    let mut worst: f64 = 0.0;
    for (ga, &k) in a.generators.iter().zip(pairing) {
        let gb = &b.generators[k];
        for i in 0..c.source.len() {
            worst = worst.max(c.target.d(c.forward[ga[i]], gb[c.forward[i]]));
        }
        if c.backward_certified {
            for j in 0..c.target.len() {
                worst = worst.max(c.source.d(c.backward[gb[j]], ga[c.backward[j]]));
            }
        }
    }
    Ok(worst)
}

/// Finitely many weighted points of a sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    pub atoms: Vec<(usize, f64)>,
}

impl DiscreteMeasure {
    /// Merges repeated ids; masses must be nonnegative with positive total.
    pub fn new(atoms: Vec<(usize, f64)>, n: usize) -> Result<DiscreteMeasure> {
        if atoms
            .iter()
            .any(|&(i, m)| i >= n || !(m >= 0.0) || !m.is_finite())
        {
            return Err(Error::InvalidInput("atom id or mass invalid".into()));
        }
        let mut merged: Vec<(usize, f64)> = Vec::new();
        for (i, m) in atoms {
            match merged.iter_mut().find(|(j, _)| *j == i) {
                Some(e) => e.1 += m,
                None => merged.push((i, m)),
            }
        }
        let out = DiscreteMeasure { atoms: merged };
        if !(out.mass() > 0.0) {
            return Err(Error::InvalidInput("measure has no mass".into()));
        }
        Ok(out)
    }

    /// Equal masses summing to `total` on the given ids.
    pub fn uniform(ids: &[usize], total: f64, n: usize) -> Result<DiscreteMeasure> {
        let m = total / ids.len().max(1) as f64;
        DiscreteMeasure::new(ids.iter().map(|&i| (i, m)).collect(), n)
    }

    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// Image measure under a point map; atoms move, they never split.
    pub fn pushforward(&self, map: &[usize]) -> DiscreteMeasure {
        let mut merged: Vec<(usize, f64)> = Vec::new();
        for &(i, m) in &self.atoms {
            let j = map[i];
            match merged.iter_mut().find(|(k, _)| *k == j) {
                Some(e) => e.1 += m,
                None => merged.push((j, m)),
            }
        }
        DiscreteMeasure { atoms: merged }
    }
}

/// Every `A ⊆ supp μ` satisfies `μ(A) ≤ ν(A^ε) + ε`, with `A^ε` the closed
/// `ε`-neighbourhood.
fn one_sided(sample: &MetricSample, mu: &DiscreteMeasure, nu: &DiscreteMeasure, eps: f64) -> bool {
    let (p, q) = (mu.atoms.len(), nu.atoms.len());
    let near: Vec<u32> = mu
        .atoms
        .iter()
        .map(|&(i, _)| {
            nu.atoms
                .iter()
                .enumerate()
                .filter(|(_, &(j, _))| sample.d(i, j) <= eps)
                .fold(0u32, |m, (k, _)| m | (1 << k))
        })
        .collect();
    let mut nu_mass = vec![0.0; 1 << q];
    for mask in 1usize..1 << q {
        let low = mask.trailing_zeros() as usize;
        nu_mass[mask] = nu_mass[mask & (mask - 1)] + nu.atoms[low].1;
    }
    let mut mu_mass = vec![0.0; 1 << p];
    let mut hood = vec![0u32; 1 << p];
    for mask in 1usize..1 << p {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        mu_mass[mask] = mu_mass[rest] + mu.atoms[low].1;
        hood[mask] = hood[rest] | near[low];
        if mu_mass[mask] > nu_mass[hood[mask] as usize] + eps + 1e-15 {
            return false;
        }
    }
    true
}

/// Prokhorov distance between two measures on one sample, by exhaustive
/// subset checks and bisection to `1e-10`. At most [`EXACT_ATOMS`] atoms in
/// total; any `ε` at least the larger mass is feasible.
pub fn prokhorov_distance(
    sample: &MetricSample,
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
) -> Result<f64> {
    if mu.atoms.len() + nu.atoms.len() > EXACT_ATOMS {
        return Err(Error::ExactModeLimit);
    }
    let feasible = |e: f64| one_sided(sample, mu, nu, e) && one_sided(sample, nu, mu, e);
    if feasible(0.0) {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, mu.mass().max(nu.mass()).max(1.0));
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Measured defects of a correspondence against the approximation
/// conditions. Absent fields were not evaluated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub eps: f64,
    pub dis_f: f64,
    pub dis_g: f64,
    pub roundtrip_f: f64,
    pub roundtrip_g: f64,
    pub equiv_defect: Option<f64>,
    pub prokhorov_f: Option<f64>,
    pub prokhorov_g: Option<f64>,
    pub passes: bool,
    /// `min(1/24, eps_star)`.
    pub capped: f64,
}

impl ApproxReport {
    fn build(
        eps: f64,
        (dis_f, dis_g): (f64, f64),
        (roundtrip_f, roundtrip_g): (f64, f64),
        equiv_defect: Option<f64>,
        prokhorov: Option<(f64, f64)>,
    ) -> ApproxReport {
        let mut r = ApproxReport {
            eps,
            dis_f,
            dis_g,
            roundtrip_f,
            roundtrip_g,
            equiv_defect,
            prokhorov_f: prokhorov.map(|p| p.0),
            prokhorov_g: prokhorov.map(|p| p.1),
            passes: false,
            capped: 0.0,
        };
        r.passes = r.passes_at(eps);
        r.capped = r.eps_star().min(1.0 / 24.0);
        r
    }

    /// Smallest `ε` at which every evaluated condition holds.
    pub fn eps_star(&self) -> f64 {
        [
            Some(self.dis_f),
            Some(self.dis_g),
            Some(self.roundtrip_f),
            Some(self.roundtrip_g),
            self.equiv_defect,
            self.prokhorov_f,
            self.prokhorov_g,
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }

    pub fn passes_at(&self, eps: f64) -> bool {
        self.eps_star() <= eps
    }
}

/// Distortion and roundtrip conditions only.
pub fn gh_approx_check(c: &Correspondence, eps: f64) -> ApproxReport {
    ApproxReport::build(eps, distortion(c), roundtrip(c), None, None)
}

/// Group actions on source and target with the generator pairing.
pub struct Actions<'a> {
    pub source: &'a GroupAction,
    pub target: &'a GroupAction,
    pub pairing: &'a [usize],
}

/// All four conditions: distortion, roundtrip, equivariance and closeness
/// of the pushed-forward measures.
pub fn eq_mgh_check(
    c: &Correspondence,
    eps: f64,
    actions: Option<Actions<'_>>,
    mu_source: &DiscreteMeasure,
    mu_target: &DiscreteMeasure,
) -> Result<ApproxReport> {
    let equiv = match actions {
        Some(a) => Some(equivariance_defect(c, a.source, a.target, a.pairing)?),
        None => None,
    };
    let pf = prokhorov_distance(&c.target, &mu_source.pushforward(&c.forward), mu_target)?;
    let pg = prokhorov_distance(&c.source, &mu_target.pushforward(&c.backward), mu_source)?;
    Ok(ApproxReport::build(
        eps,
        distortion(c),
        roundtrip(c),
        equiv,
        Some((pf, pg)),
    ))
}
