//! Rotating similarity systems `ψ_k(z) = α·e^{iθ_k}·z + c_k` and their
//! coding-sequence evaluation.
//!
//! A coding word `x₁ … x_N` is evaluated as the partial sum
//! `Σ c_{x_n} · α^{n−1} · e^{i Σ_{j<n} θ_{x_j}}`, which equals
//! `ψ_{x₁} ∘ … ∘ ψ_{x_N}(0)`. The rotation is tracked as an exact group
//! exponent and only turned into a complex number when a term is added.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cloud::{CloudMeta, Generation, PointCloud, DEDUP_TOL};
use crate::error::{Error, Result};
use crate::group::{GeneratorSet, GroupElement, RevolvingGroup};
use crate::words::CodingWord;

/// Iterates discarded before the chaos game starts recording points.
pub const BURN_IN: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct IfsSpec {
    alpha: Complex64,
    group: RevolvingGroup,
    constants: Vec<Complex64>,
}

impl IfsSpec {
    pub fn new(alpha: Complex64, set: GeneratorSet, constants: Vec<Complex64>) -> Result<Self> {
        Self::with_group(alpha, RevolvingGroup::new(set)?, constants)
    }

    pub fn with_group(alpha: Complex64, group: RevolvingGroup, constants: Vec<Complex64>) -> Result<Self> {
        let r = alpha.norm();
        if r.is_nan() || r >= 1.0 {
            return Err(Error::NotContracting(r));
        }
        if constants.len() != group.num_generators() {
            return Err(Error::ConstantCount {
                expected: group.num_generators(),
                got: constants.len(),
            });
        }
        Ok(IfsSpec {
            alpha,
            group,
            constants,
        })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn group(&self) -> &RevolvingGroup {
        &self.group
    }

    pub fn generator_set(&self) -> &GeneratorSet {
        self.group.generator_set()
    }

    pub fn constants(&self) -> &[Complex64] {
        &self.constants
    }

    /// Number of maps `m`.
    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }

    pub fn max_constant(&self) -> f64 {
        self.constants.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Radius of the origin-centred disk containing every partial sum.
    pub fn bounding_radius(&self) -> f64 {
        self.max_constant() / (1.0 - self.alpha.norm())
    }

    /// `max|c|·|α|^N / (1 − |α|)`: distance from a depth-`N` partial sum to
    /// any of its infinite extensions.
    pub fn tail_bound(&self, depth: usize) -> f64 {
        tail_bound(self.max_constant(), self.alpha.norm(), depth)
    }

    /// Same system with one constant replaced.
    pub fn with_constant(&self, k: usize, c: Complex64) -> IfsSpec {
        let mut out = self.clone();
        out.constants[k] = c;
        out
    }
}

pub fn tail_bound(max_constant: f64, ratio: f64, depth: usize) -> f64 {
    max_constant * ratio.powi(depth as i32) / (1.0 - ratio)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub ratio: Complex64,
    pub offset: Complex64,
}

impl AffineMap {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.ratio * z + self.offset
    }

    pub fn fixed_point(&self) -> Complex64 {
        self.offset / (Complex64::new(1.0, 0.0) - self.ratio)
    }
}

/// `ψ_k` with ratio `α·e^{iθ_k}` and offset `c_k`.
pub fn maps_from_spec(spec: &IfsSpec) -> Vec<AffineMap> {
    spec.generator_set()
        .angles()
        .iter()
        .zip(&spec.constants)
        .map(|(theta, &c)| AffineMap {
            ratio: spec.alpha * theta.to_complex(),
            offset: c,
        })
        .collect()
}

/// Running state of `Σ α^{n−1}·coef_n·rot_n`. Every evaluation path in the
/// crate pushes terms through this so equal inputs give bit-equal sums.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Partial {
    pub sum: Complex64,
    pub scale: Complex64,
}

impl Partial {
    pub fn start() -> Self {
        Partial {
            sum: Complex64::new(0.0, 0.0),
            scale: Complex64::new(1.0, 0.0),
        }
    }

    #[inline]
    pub fn push(self, alpha: Complex64, coef: Complex64, rot: Complex64) -> Self {
        Partial {
            sum: self.sum + self.scale * (coef * rot),
            scale: self.scale * alpha,
        }
    }
}

/// Depth-`N` partial sum for coding word `x`.
pub fn eval_coding(spec: &IfsSpec, x: &CodingWord) -> Result<Complex64> {
    check_digits(spec, x)?;
    let mut acc = Partial::start();
    let mut g = GroupElement::IDENTITY;
    for &d in x.digits() {
        acc = acc.push(spec.alpha, spec.constants[d], spec.group.to_complex(g));
        g = spec.group.rotate(g, d);
    }
    Ok(acc.sum)
}

/// `ψ_{x₁} ∘ … ∘ ψ_{x_N}(0)`.
pub fn eval_composed(spec: &IfsSpec, x: &CodingWord) -> Result<Complex64> {
    check_digits(spec, x)?;
    let maps = maps_from_spec(spec);
    Ok(x.digits()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |z, &d| maps[d].apply(z)))
}

/// `Σ c_{x_n} Π_k α_k^{I_k(x, n−1)}` with `α_k = α·e^{iθ_k}`, using digit counts.
pub fn eval_product_form(spec: &IfsSpec, x: &CodingWord) -> Result<Complex64> {
    check_digits(spec, x)?;
    let ratios: Vec<Complex64> = maps_from_spec(spec).iter().map(|m| m.ratio).collect();
    Ok((1..=x.len())
        .map(|n| {
            let product: Complex64 = ratios
                .iter()
                .enumerate()
                .map(|(k, r)| r.powi(count_digit(x, k, n - 1) as i32))
                .product();
            spec.constants[x.digits()[n - 1]] * product
        })
        .sum())
}

/// `I_k(x, n)`: occurrences of digit `k` among `x₁ … x_n`.
pub fn count_digit(x: &CodingWord, k: usize, n: usize) -> usize {
    x.digits()[..n.min(x.len())].iter().filter(|&&d| d == k).count()
}

fn check_digits(spec: &IfsSpec, x: &CodingWord) -> Result<()> {
    match x.digits().iter().find(|&&d| d >= spec.len()) {
        Some(&digit) => Err(Error::DigitOutOfRange { digit, m: spec.len() }),
        None => Ok(()),
    }
}

pub(crate) fn pow_count(m: usize, n: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(m as u128))
}

pub(crate) fn check_cap(count: u128, cap: u64) -> Result<()> {
    if count > cap as u128 {
        Err(Error::CapExceeded { count, cap })
    } else {
        Ok(())
    }
}

/// Prefix depth at which enumeration fans out to worker threads.
fn split_depth(m: usize, n: usize) -> usize {
    let mut d = 0;
    let mut width = 1usize;
    while d < n && width < 256 {
        width = width.saturating_mul(m);
        d += 1;
    }
    d
}

/// Partial sums for every coding word of length `n`, in lexicographic order
/// of the words (digit `x₁` most significant).
pub fn coding_sums(spec: &IfsSpec, n: usize, cap: u64) -> Result<Vec<Complex64>> {
    let m = spec.len();
    check_cap(pow_count(m, n), cap)?;
    let split = split_depth(m, n);
    let mut prefixes = vec![(Partial::start(), GroupElement::IDENTITY)];
    for _ in 0..split {
        prefixes = prefixes
            .into_iter()
            .flat_map(|(acc, g)| (0..m).map(move |d| (acc, g, d)))
            .map(|(acc, g, d)| step(spec, acc, g, d))
            .collect();
    }
    let rest = n - split;
    Ok(prefixes
        .into_par_iter()
        .flat_map_iter(|(acc, g)| {
            let mut out = Vec::with_capacity(pow_count(m, rest) as usize);
            coding_dfs(spec, acc, g, rest, &mut out);
            out
        })
        .collect())
}

#[inline]
pub(crate) fn step(spec: &IfsSpec, acc: Partial, g: GroupElement, d: usize) -> (Partial, GroupElement) {
    (
        acc.push(spec.alpha, spec.constants[d], spec.group.to_complex(g)),
        spec.group.rotate(g, d),
    )
}

fn coding_dfs(spec: &IfsSpec, acc: Partial, g: GroupElement, remaining: usize, out: &mut Vec<Complex64>) {
    if remaining == 0 {
        out.push(acc.sum);
        return;
    }
    for d in 0..spec.len() {
        let (a, h) = step(spec, acc, g, d);
        coding_dfs(spec, a, h, remaining - 1, out);
    }
}

/// `{eval_coding(x) : |x| = N}`, deduplicated within `1e-12`.
pub fn attractor_exhaustive(spec: &IfsSpec, depth: usize, cap: u64) -> Result<PointCloud> {
    let mut cloud = PointCloud::new(
        coding_sums(spec, depth, cap)?,
        CloudMeta {
            depth,
            generation: Generation::Exhaustive,
            source: "attractor".into(),
        },
    );
    cloud.dedup(DEDUP_TOL);
    Ok(cloud)
}

/// Chaos game from `z = 0`: uniform random map per iterate, first
/// [`BURN_IN`] iterates discarded.
pub fn attractor_sampled(spec: &IfsSpec, n_points: usize, seed: u64) -> PointCloud {
    let maps = maps_from_spec(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = Complex64::new(0.0, 0.0);
    for _ in 0..BURN_IN {
        z = maps[rng.random_range(0..maps.len())].apply(z);
    }
    let points = (0..n_points)
        .map(|_| {
            z = maps[rng.random_range(0..maps.len())].apply(z);
            z
        })
        .collect();
    PointCloud::new(
        points,
        CloudMeta {
            depth: 0,
            generation: Generation::Sampled,
            source: "attractor".into(),
        },
    )
}
