use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for merging coincident points.
pub const DEDUP_TOL: f64 = 1e-12;

/// Points kept on a hash grid of cell size `tol`; membership means
/// "within `tol` of a stored point".
#[derive(Debug, Clone)]
pub struct ApproxSet {
    tol: f64,
    cells: HashMap<(i64, i64), Vec<Complex64>>,
    len: usize,
}

impl ApproxSet {
    pub fn new(tol: f64) -> Self {
        assert!(tol > 0.0, "tolerance must be positive");
        ApproxSet {
            tol,
            cells: HashMap::new(),
            len: 0,
        }
    }

    fn cell(&self, z: Complex64) -> (i64, i64) {
        ((z.re / self.tol).floor() as i64, (z.im / self.tol).floor() as i64)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let (cx, cy) = self.cell(z);
        (cx - 1..=cx + 1).any(|x| {
            (cy - 1..=cy + 1).any(|y| {
                self.cells
                    .get(&(x, y))
                    .is_some_and(|v| v.iter().any(|k| (k - z).norm() <= self.tol))
            })
        })
    }

    /// Returns `false` if a point within `tol` is already present.
    pub fn insert(&mut self, z: Complex64) -> bool {
        if self.contains(z) {
            return false;
        }
        let key = self.cell(z);
        self.cells.entry(key).or_default().push(z);
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generation {
    Exhaustive,
    Sampled,
}

impl fmt::Display for Generation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generation::Exhaustive => "exhaustive",
            Generation::Sampled => "sampled",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CloudMeta {
    pub depth: usize,
    pub generation: Generation,
    pub source: String,
}

/// A finite set of points approximating an attractor or a series set.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Complex64>,
    pub meta: CloudMeta,
}

pub(crate) fn lex_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl PointCloud {
    pub fn new(points: Vec<Complex64>, meta: CloudMeta) -> Self {
        PointCloud { points, meta }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sorts by real then imaginary part.
    pub fn canonicalize(&mut self) {
        self.points.sort_unstable_by(lex_cmp);
    }

    /// Sorts, then drops every point within `tol` of an earlier kept point.
    pub fn dedup(&mut self, tol: f64) {
        self.canonicalize();
        if tol <= 0.0 {
            self.points.dedup();
            return;
        }
        let mut seen = ApproxSet::new(tol);
        let mut kept = Vec::with_capacity(self.points.len());
        for &z in &self.points {
            if seen.insert(z) {
                kept.push(z);
            }
        }
        self.points = kept;
    }

    /// `{γ·z : z ∈ self, γ ∈ rotations}`, in rotation-major order.
    pub fn rotated_union(&self, rotations: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.points.len() * rotations.len());
        for r in rotations {
            out.extend(self.points.iter().map(|z| r * z));
        }
        out
    }

    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `(re_min, re_max, im_min, im_max)`, or `None` for an empty cloud.
    pub fn bounding_box(&self) -> Option<(f64, f64, f64, f64)> {
        let first = self.points.first()?;
        Some(self.points.iter().fold(
            (first.re, first.re, first.im, first.im),
            |(a, b, c, d), z| (a.min(z.re), b.max(z.re), c.min(z.im), d.max(z.im)),
        ))
    }

    /// One `re,im` line per point, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for z in &self.points {
            writeln!(out, "{:.16e},{:.16e}", z.re, z.im)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R, meta: CloudMeta) -> Result<Self> {
        let mut points = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| Error::Csv {
                line: i + 1,
                reason: reason.to_string(),
            };
            let (re, im) = line.split_once(',').ok_or_else(|| bad("expected re,im"))?;
            let re: f64 = re.trim().parse().map_err(|_| bad("real part is not a number"))?;
            let im: f64 = im.trim().parse().map_err(|_| bad("imaginary part is not a number"))?;
            points.push(Complex64::new(re, im));
        }
        Ok(PointCloud { points, meta })
    }
}
