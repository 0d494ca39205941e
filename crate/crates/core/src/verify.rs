//! Finite-depth numerical checks of the decomposition identities.
//!
//! Every check builds both sides of an identity from independent
//! enumerations and measures their Hausdorff distance. Reports print as
//! `claim_id status discrepancy tolerance depth seconds`.

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cloud::{ApproxSet, PointCloud, DEDUP_TOL};
use crate::error::{Error, Result};
use crate::group::{GeneratorSet, RationalAngle, RevolvingGroup};
use crate::ifs::{attractor_exhaustive, IfsSpec};
use crate::series::{self, star_ifs, CloudMode};
use crate::words::gr_unit;

/// Above this many points the grid search replaces brute force.
pub const GRID_THRESHOLD: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub claim_id: String,
    pub params: String,
    pub depth: usize,
    pub tolerance: f64,
    pub discrepancy: f64,
    pub passed: bool,
    pub seconds: f64,
}

impl VerificationReport {
    fn new(claim_id: &str, params: String, depth: usize, tolerance: f64, discrepancy: f64, start: Instant) -> Self {
        VerificationReport {
            claim_id: claim_id.to_string(),
            params,
            depth,
            tolerance,
            discrepancy,
            passed: discrepancy <= tolerance,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {:.6e} {:.6e} {} {:.3}",
            self.claim_id,
            self.status(),
            self.discrepancy,
            self.tolerance,
            self.depth,
            self.seconds
        )
    }
}

pub fn summary_line(reports: &[VerificationReport]) -> String {
    let passed = reports.iter().filter(|r| r.passed).count();
    format!(
        "summary {} passed={} failed={}",
        if passed == reports.len() { "PASS" } else { "FAIL" },
        passed,
        reports.len() - passed
    )
}

fn check_nonempty(a: &[Complex64], b: &[Complex64]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        Err(Error::EmptyCloud)
    } else {
        Ok(())
    }
}

/// Exact Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    check_nonempty(a, b)?;
    if a.len().max(b.len()) > GRID_THRESHOLD {
        hausdorff_grid(a, b)
    } else {
        hausdorff_brute(a, b)
    }
}

/// `O(|A|·|B|)` reference implementation.
pub fn hausdorff_brute(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    check_nonempty(a, b)?;
    Ok(directed_brute(a, b).max(directed_brute(b, a)))
}

/// Hausdorff distance through a uniform grid on each target set.
pub fn hausdorff_grid(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    check_nonempty(a, b)?;
    Ok(directed_grid(a, b).max(directed_grid(b, a)))
}

pub fn directed_hausdorff(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    check_nonempty(a, b)?;
    Ok(if a.len().max(b.len()) > GRID_THRESHOLD {
        directed_grid(a, b)
    } else {
        directed_brute(a, b)
    })
}

fn directed_brute(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut cmax = 0.0f64;
    for p in a {
        let mut best = f64::INFINITY;
        for q in b {
            let d = (p - q).norm_sqr();
            if d < best {
                best = d;
                // p cannot raise the maximum any more.
                if best <= cmax {
                    break;
                }
            }
        }
        cmax = cmax.max(best);
    }
    cmax.sqrt()
}

struct Grid<'a> {
    points: &'a [Complex64],
    x0: f64,
    y0: f64,
    h: f64,
    nx: i64,
    ny: i64,
    // CSR layout: points of cell c are order[start[c]..start[c + 1]].
    start: Vec<usize>,
    order: Vec<u32>,
}

impl<'a> Grid<'a> {
    fn new(points: &'a [Complex64]) -> Self {
        let (x0, x1, y0, y1) = points.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
            |(a, b, c, d), z| (a.min(z.re), b.max(z.re), c.min(z.im), d.max(z.im)),
        );
        let (w, ht) = (x1 - x0, y1 - y0);
        let n = points.len() as f64;
        let mut h = (w * ht / n).sqrt();
        if h.is_nan() || h <= 0.0 {
            h = w.max(ht) / n;
        }
        if h.is_nan() || h <= 0.0 {
            h = 1.0;
        }
        let nx = ((w / h).floor() as i64 + 1).max(1);
        let ny = ((ht / h).floor() as i64 + 1).max(1);
        let mut grid = Grid {
            points,
            x0,
            y0,
            h,
            nx,
            ny,
            start: vec![0; (nx * ny) as usize + 1],
            order: vec![0; points.len()],
        };
        let cells: Vec<usize> = points
            .iter()
            .map(|z| {
                let (i, j) = grid.cell(*z);
                (j.clamp(0, ny - 1) * nx + i.clamp(0, nx - 1)) as usize
            })
            .collect();
        for &c in &cells {
            grid.start[c + 1] += 1;
        }
        for c in 0..grid.start.len() - 1 {
            grid.start[c + 1] += grid.start[c];
        }
        let mut fill = grid.start.clone();
        for (idx, &c) in cells.iter().enumerate() {
            grid.order[fill[c]] = idx as u32;
            fill[c] += 1;
        }
        grid
    }

    fn cell(&self, z: Complex64) -> (i64, i64) {
        (
            ((z.re - self.x0) / self.h).floor() as i64,
            ((z.im - self.y0) / self.h).floor() as i64,
        )
    }

    fn scan(&self, i: i64, j: i64, p: Complex64, best: &mut f64) {
        let c = (j * self.nx + i) as usize;
        for &idx in &self.order[self.start[c]..self.start[c + 1]] {
            let d = (p - self.points[idx as usize]).norm_sqr();
            if d < *best {
                *best = d;
            }
        }
    }

    /// Squared distance from `p` to the set, or any value `≤ cutoff` once
    /// one is found.
    fn nearest_sqr(&self, p: Complex64, cutoff: f64) -> f64 {
        let (ci, cj) = self.cell(p);
        let r0 = [0, -ci, ci - (self.nx - 1), -cj, cj - (self.ny - 1)]
            .into_iter()
            .max()
            .unwrap_or(0);
        let r_max = [ci, self.nx - 1 - ci, cj, self.ny - 1 - cj]
            .into_iter()
            .map(i64::abs)
            .max()
            .unwrap_or(0)
            + r0;
        let mut best = f64::INFINITY;
        let mut r = r0;
        while r <= r_max {
            // Every point in ring r lies at least (r − 1)·h away.
            let lower = ((r - 1).max(0) as f64) * self.h;
            if best <= lower * lower {
                break;
            }
            let (ilo, ihi) = ((ci - r).max(0), (ci + r).min(self.nx - 1));
            for j in [cj - r, cj + r] {
                if (0..self.ny).contains(&j) {
                    for i in ilo..=ihi {
                        self.scan(i, j, p, &mut best);
                    }
                }
                if r == 0 {
                    break;
                }
            }
            if r > 0 {
                let (jlo, jhi) = ((cj - r + 1).max(0), (cj + r - 1).min(self.ny - 1));
                for i in [ci - r, ci + r] {
                    if (0..self.nx).contains(&i) {
                        for j in jlo..=jhi {
                            self.scan(i, j, p, &mut best);
                        }
                    }
                }
            }
            if best <= cutoff {
                break;
            }
            r += 1;
        }
        best
    }
}

fn directed_grid(a: &[Complex64], b: &[Complex64]) -> f64 {
    let grid = Grid::new(b);
    a.par_chunks(4096)
        .map(|chunk| {
            let mut cmax = 0.0f64;
            for &p in chunk {
                cmax = cmax.max(grid.nearest_sqr(p, cmax));
            }
            cmax
        })
        .reduce(|| 0.0, f64::max)
        .sqrt()
}

/// `(hausdorff(A, B) ≤ ε, hausdorff(A, B))`.
pub fn set_match(a: &[Complex64], b: &[Complex64], eps: f64) -> Result<(bool, f64)> {
    let d = hausdorff(a, b)?;
    Ok((d <= eps, d))
}

fn rotated_cloud(base: &PointCloud, rotations: &[Complex64]) -> Vec<Complex64> {
    let mut c = PointCloud::new(base.rotated_union(rotations), base.meta.clone());
    c.dedup(DEDUP_TOL);
    c.points
}

fn group_rotations(grp: &RevolvingGroup) -> Vec<Complex64> {
    grp.elements().map(|g| grp.to_complex(g)).collect()
}

/// `X_{α,S}` (every Δ-word, free first element) against `∪_γ γ·T_{α,S}`
/// (every coding word, then rotated), at equal depth.
pub fn check_main_theorem(spec: &IfsSpec, depth: usize, eps: f64, cap: u64) -> Result<VerificationReport> {
    check_main_theorem_between(spec, spec, depth, eps, cap)
}

/// As [`check_main_theorem`] with separate specs for the two sides.
pub fn check_main_theorem_between(
    x_spec: &IfsSpec,
    t_spec: &IfsSpec,
    depth: usize,
    eps: f64,
    cap: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let x = series::cloud_x_direct(x_spec, depth, cap)?;
    let t = attractor_exhaustive(t_spec, depth, cap)?;
    let union = rotated_cloud(&t, &group_rotations(t_spec.group()));
    let d = hausdorff(&x.points, &union)?;
    Ok(VerificationReport::new(
        "main_theorem",
        format!(
            "alpha={} S={} |X|={} |union|={}",
            x_spec.alpha(),
            x_spec.generator_set(),
            x.len(),
            union.len()
        ),
        depth,
        eps,
        d,
        start,
    ))
}

/// `X*_{α,S}` (every Δ₀-word) against `∪_γ γ·T*_{α,S}`.
pub fn check_corollary(
    alpha: Complex64,
    grp: &RevolvingGroup,
    depth: usize,
    eps: f64,
    cap: u64,
) -> Result<VerificationReport> {
    if grp.num_generators() < 2 {
        return Err(Error::Degenerate(
            "the Δ₀ decomposition needs at least one nonzero angle".into(),
        ));
    }
    let start = Instant::now();
    let lhs = series::cloud_xstar(alpha, grp, depth, CloudMode::Exhaustive, cap)?;
    let t = attractor_exhaustive(&star_ifs(alpha, grp)?, depth, cap)?;
    let union = rotated_cloud(&t, &group_rotations(grp));
    let d = hausdorff(&lhs.points, &union)?;
    Ok(VerificationReport::new(
        "corollary",
        format!("alpha={alpha} S={} |X*|={} |union|={}", grp.generator_set(), lhs.len(), union.len()),
        depth,
        eps,
        d,
        start,
    ))
}

fn single_angle_group(theta: RationalAngle) -> Result<RevolvingGroup> {
    if theta.is_zero() {
        return Err(Error::ZeroRevolvingAngle);
    }
    RevolvingGroup::new(GeneratorSet::new(vec![RationalAngle::ZERO, theta])?)
}

/// `X_{α,θ}` (every GR word) against `∪_{l<p} e^{ilθ}·M_{α,θ}`.
pub fn check_kawamura_allen(
    alpha: Complex64,
    theta: RationalAngle,
    depth: usize,
    eps: f64,
    cap: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let grp = single_angle_group(theta)?;
    let lhs = series::cloud_grs(alpha, theta, depth, CloudMode::Exhaustive, cap)?;
    let m = attractor_exhaustive(&star_ifs(alpha, &grp)?, depth, cap)?;
    let rotations: Vec<Complex64> = (0..theta.denominator()).map(|l| gr_unit(theta, l)).collect();
    let union = rotated_cloud(&m, &rotations);
    let d = hausdorff(&lhs.points, &union)?;
    Ok(VerificationReport::new(
        "kawamura_allen",
        format!("alpha={alpha} theta={theta} |X|={} |union|={}", lhs.len(), union.len()),
        depth,
        eps,
        d,
        start,
    ))
}

/// `X_{α,θ}` against `X_{α,S}` with `S = {0, θ}` and `c = (0, α)`, where
/// `δ_n = α⁻¹·γ_n·s_n`.
pub fn check_single_angle_reduction(
    alpha: Complex64,
    theta: RationalAngle,
    depth: usize,
    eps: f64,
    cap: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let grp = single_angle_group(theta)?;
    let lhs = series::cloud_grs(alpha, theta, depth, CloudMode::Exhaustive, cap)?;
    let rhs = series::cloud_x_direct(&star_ifs(alpha, &grp)?, depth, cap)?;
    let d = hausdorff(&lhs.points, &rhs.points)?;
    Ok(VerificationReport::new(
        "reduction",
        format!("alpha={alpha} theta={theta} |X_theta|={} |X|={}", lhs.len(), rhs.len()),
        depth,
        eps,
        d,
        start,
    ))
}

/// One-sided check for sampled clouds: every sampled point of `X_{α,S}`
/// lies within `tail_bound(reference_depth) + ε` of `∪_γ γ·T_{α,S}` taken
/// exhaustively at `reference_depth`.
pub fn check_sampled_containment(
    spec: &IfsSpec,
    sample_depth: usize,
    samples: usize,
    seed: u64,
    reference_depth: usize,
    eps: f64,
    cap: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let sampled = series::cloud_x(spec, sample_depth, CloudMode::Sampled { samples, seed }, cap)?;
    let t = attractor_exhaustive(spec, reference_depth, cap)?;
    let union = rotated_cloud(&t, &group_rotations(spec.group()));
    let d = directed_hausdorff(&sampled.points, &union)?;
    let tolerance = spec.tail_bound(reference_depth) + spec.tail_bound(sample_depth) + eps;
    Ok(VerificationReport::new(
        "sampled_containment",
        format!("alpha={} S={} samples={samples} seed={seed}", spec.alpha(), spec.generator_set()),
        reference_depth,
        tolerance,
        d,
        start,
    ))
}

/// Closure of `{e^{iθ_j}}` under complex multiplication, deduplicated at `1e-9`.
pub fn brute_force_closure(set: &GeneratorSet) -> Vec<Complex64> {
    let gens: Vec<Complex64> = set.angles()[1..].iter().map(|a| a.to_complex()).collect();
    let one = Complex64::new(1.0, 0.0);
    let mut seen = ApproxSet::new(1e-9);
    seen.insert(one);
    let mut elements = vec![one];
    let mut frontier = vec![one];
    while let Some(z) = frontier.pop() {
        for g in &gens {
            let w = z * g;
            let w = w / w.norm();
            if seen.insert(w) {
                elements.push(w);
                frontier.push(w);
            }
        }
    }
    elements
}

/// `|Δ|` from the lcm formula against the size of the brute-force closure.
pub fn check_group_order(set: &GeneratorSet) -> Result<VerificationReport> {
    let start = Instant::now();
    let grp = RevolvingGroup::new(set.clone())?;
    let closure = brute_force_closure(set).len() as u64;
    let d = closure.abs_diff(grp.order()) as f64;
    Ok(VerificationReport::new(
        "group_order",
        format!("S={set} lcm={} closure={closure}", grp.order()),
        0,
        0.0,
        d,
        start,
    ))
}
