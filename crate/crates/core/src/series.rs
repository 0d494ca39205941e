//! Partial sums of the sequence-parametrized sets.
//!
//! * `X_{α,S}`: `Σ_{n=1}^{N} α^{n−1}·s_n·γ_n` over Δ-words `(γ_n)` of length
//!   `N + 1` (the last element only fixes `s_N`).
//! * `X*_{α,S}`: `Σ_{n=1}^{N} δ_n·α^n` over Δ₀-words of length `N`.
//! * `X_{α,θ}`: `Σ_{n=1}^{N} δ_n·α^n` over GR words of length `N`.
//!
//! "Depth N" always means N series terms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloud::{CloudMeta, Generation, PointCloud, DEDUP_TOL};
use crate::error::{Error, Result};
use crate::group::{GroupElement, RationalAngle, RevolvingGroup};
use crate::ifs::{self, check_cap, IfsSpec, Partial};
use crate::words::{
    self, constant_sequence, count_dzrc, count_grc, DeltaWord, DeltaZeroWord, GrWord,
};

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesSpec {
    /// `X_{α,S}` with the constants of an IFS.
    Delta(IfsSpec),
    /// `X*_{α,S}`.
    DeltaZero { alpha: Complex64, group: RevolvingGroup },
    /// `X_{α,θ}`.
    Grs { alpha: Complex64, theta: RationalAngle },
}

impl SeriesSpec {
    pub fn delta_zero(alpha: Complex64, group: RevolvingGroup) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(SeriesSpec::DeltaZero { alpha, group })
    }

    pub fn grs(alpha: Complex64, theta: RationalAngle) -> Result<Self> {
        check_alpha(alpha)?;
        if theta.is_zero() {
            return Err(Error::ZeroRevolvingAngle);
        }
        Ok(SeriesSpec::Grs { alpha, theta })
    }

    pub fn alpha(&self) -> Complex64 {
        match self {
            SeriesSpec::Delta(spec) => spec.alpha(),
            SeriesSpec::DeltaZero { alpha, .. } | SeriesSpec::Grs { alpha, .. } => *alpha,
        }
    }

    /// Largest coefficient modulus in the term-wise bound (`|α|` for the
    /// zero-capable sets, whose terms are `δ_n·α·α^{n−1}`).
    pub fn max_coefficient(&self) -> f64 {
        match self {
            SeriesSpec::Delta(spec) => spec.max_constant(),
            _ => self.alpha().norm(),
        }
    }

    pub fn tail_bound(&self, depth: usize) -> f64 {
        ifs::tail_bound(self.max_coefficient(), self.alpha().norm(), depth)
    }

    pub fn bounding_radius(&self) -> f64 {
        self.max_coefficient() / (1.0 - self.alpha().norm())
    }

    /// The IFS whose rotated copies tile this set: the spec itself for
    /// `X_{α,S}`, and `ψ₀ = αz`, `ψ_k = αe^{iθ_k}z + α` otherwise.
    pub fn tile_ifs(&self) -> Result<IfsSpec> {
        match self {
            SeriesSpec::Delta(spec) => Ok(spec.clone()),
            SeriesSpec::DeltaZero { alpha, group } => star_ifs(*alpha, group),
            SeriesSpec::Grs { alpha, theta } => {
                let group = RevolvingGroup::new(crate::group::GeneratorSet::new(vec![
                    RationalAngle::ZERO,
                    *theta,
                ])?)?;
                star_ifs(*alpha, &group)
            }
        }
    }

    /// Order of the rotation group of the decomposition.
    pub fn rotation_count(&self) -> u64 {
        match self {
            SeriesSpec::Delta(spec) => spec.group().order(),
            SeriesSpec::DeltaZero { group, .. } => group.order(),
            SeriesSpec::Grs { theta, .. } => theta.denominator(),
        }
    }

    /// Cloud of the set at the given depth, dispatching on the kind.
    pub fn cloud(&self, depth: usize, mode: CloudMode, cap: u64) -> Result<PointCloud> {
        match self {
            SeriesSpec::Delta(spec) => cloud_x(spec, depth, mode, cap),
            SeriesSpec::DeltaZero { alpha, group } => cloud_xstar(*alpha, group, depth, mode, cap),
            SeriesSpec::Grs { alpha, theta } => cloud_grs(*alpha, *theta, depth, mode, cap),
        }
    }
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    let r = alpha.norm();
    if r < 1.0 {
        Ok(())
    } else {
        Err(Error::NotContracting(r))
    }
}

/// `ψ₀(z) = αz`, `ψ_k(z) = αe^{iθ_k}z + α` for `k ≥ 1`.
pub fn star_ifs(alpha: Complex64, group: &RevolvingGroup) -> Result<IfsSpec> {
    let mut constants = vec![alpha; group.num_generators()];
    constants[0] = Complex64::new(0.0, 0.0);
    IfsSpec::with_group(alpha, group.clone(), constants)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloudMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

/// `Σ_{n=1}^{N} α^{n−1}·s_n·γ_n` for a Δ-word of length `N + 1`.
pub fn eval_delta_word(spec: &IfsSpec, w: &DeltaWord) -> Result<Complex64> {
    let s = constant_sequence(w, spec.group(), spec.constants())?;
    let grp = spec.group();
    Ok(s.iter()
        .zip(w.elements())
        .fold(Partial::start(), |acc, (&s_n, &g)| {
            acc.push(spec.alpha(), s_n, grp.to_complex(g))
        })
        .sum)
}

/// `Σ δ_n·α^n`.
pub fn eval_grs_word(alpha: Complex64, w: &GrWord) -> Complex64 {
    (0..w.len())
        .fold(Partial::start(), |acc, n| acc.push(alpha, alpha, w.value(n)))
        .sum
}

/// `Σ δ_n·α^n` with `Zero` contributing nothing.
pub fn eval_dzrc_word(alpha: Complex64, grp: &RevolvingGroup, w: &DeltaZeroWord) -> Complex64 {
    w.entries()
        .iter()
        .fold(Partial::start(), |acc, s| {
            let v = s.unit().map_or(Complex64::new(0.0, 0.0), |g| grp.to_complex(g));
            acc.push(alpha, alpha, v)
        })
        .sum
}

fn meta(depth: usize, mode: CloudMode, source: &str) -> CloudMeta {
    CloudMeta {
        depth,
        generation: match mode {
            CloudMode::Exhaustive => Generation::Exhaustive,
            CloudMode::Sampled { .. } => Generation::Sampled,
        },
        source: source.into(),
    }
}

fn finish(points: Vec<Complex64>, depth: usize, mode: CloudMode, source: &str) -> PointCloud {
    let mut cloud = PointCloud::new(points, meta(depth, mode, source));
    match mode {
        CloudMode::Exhaustive => cloud.dedup(DEDUP_TOL),
        CloudMode::Sampled { .. } => cloud.canonicalize(),
    }
    cloud
}

fn rotations(grp: &RevolvingGroup) -> Vec<Complex64> {
    grp.elements().map(|g| grp.to_complex(g)).collect()
}

/// `X_{α,S}` at depth `N`.
///
/// Exhaustive mode sums over the words of `W₁` (first element `1`), which
/// is a walk of the coding tree, and then applies each of the `|Δ|`
/// rotations: a Δ-word starting at `γ` is `γ` times one starting at `1`.
pub fn cloud_x(spec: &IfsSpec, depth: usize, mode: CloudMode, cap: u64) -> Result<PointCloud> {
    let grp = spec.group();
    let points = match mode {
        CloudMode::Exhaustive => {
            let count = ifs::pow_count(spec.len(), depth).saturating_mul(grp.order() as u128);
            check_cap(count, cap)?;
            let base = PointCloud::new(ifs::coding_sums(spec, depth, cap)?, meta(depth, mode, ""));
            base.rotated_union(&rotations(grp))
        }
        CloudMode::Sampled { samples, seed } => {
            // Same draws as `random_drc` followed by `eval_delta_word`,
            // without building the word.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let mut g = grp.element(rng.random_range(0..grp.order())).expect("in range");
                    let mut acc = Partial::start();
                    for _ in 0..depth {
                        (acc, g) = ifs::step(spec, acc, g, rng.random_range(0..spec.len()));
                    }
                    acc.sum
                })
                .collect()
        }
    };
    Ok(finish(points, depth, mode, "X"))
}

/// `X_{α,S}` at depth `N` from every Δ-word with free first element,
/// without the rotation shortcut of [`cloud_x`].
pub fn cloud_x_direct(spec: &IfsSpec, depth: usize, cap: u64) -> Result<PointCloud> {
    let words = words::enumerate_drc(spec.group(), depth + 1, None, cap)?;
    let points = words
        .iter()
        .map(|w| eval_delta_word(spec, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(points, depth, CloudMode::Exhaustive, "X direct"))
}

/// `X*_{α,S}` at depth `N` over Δ₀-words.
pub fn cloud_xstar(
    alpha: Complex64,
    grp: &RevolvingGroup,
    depth: usize,
    mode: CloudMode,
    cap: u64,
) -> Result<PointCloud> {
    check_alpha(alpha)?;
    let points = match mode {
        CloudMode::Exhaustive => {
            check_cap(count_dzrc(grp, depth), cap)?;
            let mut out = Vec::new();
            dz_sums(alpha, grp, Partial::start(), None, depth, &mut out);
            out
        }
        CloudMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| eval_dzrc_word(alpha, grp, &words::random_dzrc(grp, depth, &mut rng)))
                .collect()
        }
    };
    Ok(finish(points, depth, mode, "X*"))
}

fn dz_sums(
    alpha: Complex64,
    grp: &RevolvingGroup,
    acc: Partial,
    last: Option<GroupElement>,
    remaining: usize,
    out: &mut Vec<Complex64>,
) {
    if remaining == 0 {
        out.push(acc.sum);
        return;
    }
    let zero = Complex64::new(0.0, 0.0);
    dz_sums(alpha, grp, acc.push(alpha, alpha, zero), last, remaining - 1, out);
    let mut visit = |g: GroupElement| {
        let next = acc.push(alpha, alpha, grp.to_complex(g));
        dz_sums(alpha, grp, next, Some(g), remaining - 1, out);
    };
    match last {
        None => grp.elements().for_each(&mut visit),
        Some(prev) => (1..grp.num_generators()).for_each(|k| visit(grp.rotate(prev, k))),
    }
}

/// `X_{α,θ}` at depth `N` over GR words.
pub fn cloud_grs(
    alpha: Complex64,
    theta: RationalAngle,
    depth: usize,
    mode: CloudMode,
    cap: u64,
) -> Result<PointCloud> {
    check_alpha(alpha)?;
    if theta.is_zero() {
        return Err(Error::ZeroRevolvingAngle);
    }
    let points = match mode {
        CloudMode::Exhaustive => {
            check_cap(count_grc(theta, depth), cap)?;
            let mut out = Vec::new();
            gr_sums(alpha, theta, Partial::start(), None, depth, &mut out);
            out
        }
        CloudMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| words::random_grc(theta, depth, &mut rng).map(|w| eval_grs_word(alpha, &w)))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(finish(points, depth, mode, "X_theta"))
}

fn gr_sums(
    alpha: Complex64,
    theta: RationalAngle,
    acc: Partial,
    last: Option<u64>,
    remaining: usize,
    out: &mut Vec<Complex64>,
) {
    if remaining == 0 {
        out.push(acc.sum);
        return;
    }
    let p = theta.denominator();
    let zero = Complex64::new(0.0, 0.0);
    gr_sums(alpha, theta, acc.push(alpha, alpha, zero), last, remaining - 1, out);
    let mut visit = |k: u64| {
        let next = acc.push(alpha, alpha, words::gr_unit(theta, k));
        gr_sums(alpha, theta, next, Some(k), remaining - 1, out);
    };
    match last {
        None => (0..p).for_each(&mut visit),
        Some(prev) => visit((prev + 1) % p),
    }
}
