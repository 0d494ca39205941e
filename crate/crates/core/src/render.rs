//! Density rasterization of point clouds and binary PGM (P5) output.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bounds {
    /// Bounding box of the cloud padded by 5% on each side.
    Auto,
    Explicit {
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mapping {
    Linear,
    #[default]
    Log,
}

impl FromStr for Mapping {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Mapping::Linear),
            "log" => Ok(Mapping::Log),
            _ => Err(Error::Config(format!("unknown intensity mapping {s:?} (expected linear or log)"))),
        }
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mapping::Linear => "linear",
            Mapping::Log => "log",
        })
    }
}

/// How the cloud behind an image is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Depth(usize),
    Samples(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    pub width: usize,
    pub height: usize,
    pub bounds: Bounds,
    pub mapping: Mapping,
    pub resolution: Resolution,
    pub seed: u64,
}

impl RenderConfig {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        let cfg = RenderConfig {
            width,
            height,
            bounds: Bounds::Auto,
            mapping: Mapping::default(),
            resolution: Resolution::Samples(1_000_000),
            seed: 0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Config("image width and height must be at least 1".into()));
        }
        if let Bounds::Explicit {
            re_min,
            re_max,
            im_min,
            im_max,
        } = self.bounds
        {
            if !(re_min < re_max && im_min < im_max) {
                return Err(Error::Config("explicit bounds must satisfy min < max".into()));
            }
        }
        Ok(())
    }
}

/// Per-pixel hit counts, row-major with row 0 at the top (largest imaginary part).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub counts: Vec<u64>,
}

impl Raster {
    pub fn new(width: usize, height: usize) -> Self {
        Raster {
            width,
            height,
            counts: vec![0; width * height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.counts[y * self.width + x]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// Adds another raster of the same shape bin by bin.
    pub fn merge(&mut self, other: &Raster) {
        assert_eq!((self.width, self.height), (other.width, other.height));
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }
}

/// Resolves `cfg.bounds` against a cloud. AUTO requires a nonempty cloud.
pub fn resolve_bounds(cloud: &PointCloud, bounds: Bounds) -> Result<(f64, f64, f64, f64)> {
    match bounds {
        Bounds::Explicit {
            re_min,
            re_max,
            im_min,
            im_max,
        } => Ok((re_min, re_max, im_min, im_max)),
        Bounds::Auto => {
            let (a, b, c, d) = cloud.bounding_box().ok_or(Error::EmptyCloud)?;
            let pad = |lo: f64, hi: f64| {
                let span = if hi > lo { hi - lo } else { 1.0 };
                (lo - 0.05 * span, hi + 0.05 * span)
            };
            let (a, b) = pad(a, b);
            let (c, d) = pad(c, d);
            Ok((a, b, c, d))
        }
    }
}

pub fn rasterize(cloud: &PointCloud, cfg: &RenderConfig) -> Result<Raster> {
    cfg.validate()?;
    let (re_min, re_max, im_min, im_max) = resolve_bounds(cloud, cfg.bounds)?;
    let mut raster = Raster::new(cfg.width, cfg.height);
    let (w, h) = (cfg.width as f64, cfg.height as f64);
    let sx = w / (re_max - re_min);
    let sy = h / (im_max - im_min);
    for z in &cloud.points {
        if !(re_min..=re_max).contains(&z.re) || !(im_min..=im_max).contains(&z.im) {
            continue;
        }
        let x = (((z.re - re_min) * sx) as usize).min(cfg.width - 1);
        let y = (((im_max - z.im) * sy) as usize).min(cfg.height - 1);
        raster.counts[y * cfg.width + x] += 1;
    }
    Ok(raster)
}

fn intensity(hits: u64, max: u64, mapping: Mapping) -> u8 {
    if max == 0 {
        return 0;
    }
    let v = match mapping {
        Mapping::Linear => 255.0 * hits as f64 / max as f64,
        Mapping::Log => 255.0 * (hits as f64).ln_1p() / (max as f64).ln_1p(),
    };
    v.floor().clamp(0.0, 255.0) as u8
}

pub fn encode_ppm(r: &Raster, mapping: Mapping) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", r.width, r.height);
    let max = r.max();
    let mut out = Vec::with_capacity(header.len() + r.counts.len());
    out.extend_from_slice(header.as_bytes());
    out.extend(r.counts.iter().map(|&c| intensity(c, max, mapping)));
    out
}

pub fn write_ppm(r: &Raster, path: &Path, mapping: Mapping) -> Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    f.write_all(&encode_ppm(r, mapping))?;
    f.flush()?;
    Ok(())
}
