//! Named specs for the classic dragons and tilings.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GeneratorSet, RationalAngle, RevolvingGroup};
use crate::ifs::IfsSpec;
use crate::series::SeriesSpec;

#[derive(Debug, Clone, PartialEq)]
enum Entry {
    Ready(SeriesSpec),
    Rejected(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub citation: &'static str,
    /// Exhaustive depth used by `render --depth` defaults and tests.
    pub depth: usize,
    entry: Entry,
}

impl Preset {
    pub fn is_rejected(&self) -> bool {
        matches!(self.entry, Entry::Rejected(_))
    }

    pub fn spec(&self) -> Result<&SeriesSpec> {
        match &self.entry {
            Entry::Ready(spec) => Ok(spec),
            Entry::Rejected(reason) => Err(Error::RejectedPreset {
                name: self.name.to_string(),
                reason: reason.clone(),
            }),
        }
    }

    /// The IFS whose rotated copies make up the preset's set.
    pub fn tile_ifs(&self) -> Result<IfsSpec> {
        self.spec()?.tile_ifs()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn delta(alpha: Complex64, angles: &[(i64, u64)], constants: Vec<Complex64>) -> SeriesSpec {
    let set = GeneratorSet::from_fractions(angles).expect("preset angles are valid");
    SeriesSpec::Delta(IfsSpec::new(alpha, set, constants).expect("preset spec is valid"))
}

fn fudge_alpha() -> Complex64 {
    c(0.5, -(3f64.sqrt()) / 6.0)
}

/// Why the terdragon layout falls outside the decomposition.
fn terdragon_reason() -> String {
    let a = RationalAngle::new(1, 3).expect("valid angle");
    let err = GeneratorSet::new(vec![RationalAngle::ZERO, a, RationalAngle::ZERO])
        .expect_err("terdragon repeats the zero angle");
    format!("its maps use the zero rotation twice ({err})")
}

pub fn registry() -> Vec<Preset> {
    let half = 0.5;
    vec![
        Preset {
            name: "heighway",
            summary: "Heighway dragon: alpha=(1+i)/2, S={0, pi/2}, c=(0, 1)",
            citation: "Edgar, Measure, Topology, and Fractal Geometry (1990)",
            depth: 16,
            entry: Entry::Ready(delta(c(half, half), &[(0, 1), (1, 4)], vec![c(0.0, 0.0), c(1.0, 0.0)])),
        },
        Preset {
            name: "twindragon",
            summary: "Twindragon: alpha=(1+i)/2, S={0, pi}, c=(0, 1)",
            citation: "Edgar, Measure, Topology, and Fractal Geometry (1990)",
            depth: 16,
            entry: Entry::Ready(delta(c(half, half), &[(0, 1), (1, 2)], vec![c(0.0, 0.0), c(1.0, 0.0)])),
        },
        Preset {
            name: "fudgeflake",
            summary: "Fudgeflake: alpha=1/2-(sqrt3/6)i, S={0, pi/3, -2pi/3}, c=(0, alpha, conj alpha)",
            citation: "Mandelbrot, The Fractal Geometry of Nature (1982), p. 72",
            depth: 10,
            entry: Entry::Ready(delta(
                fudge_alpha(),
                &[(0, 1), (1, 6), (-1, 3)],
                vec![c(0.0, 0.0), fudge_alpha(), fudge_alpha().conj()],
            )),
        },
        Preset {
            name: "paperfold",
            summary: "paper-folding dragon: alpha=(1-i)/2, S={0, -pi/2}, c=(0, alpha)",
            citation: "Mizutani and Ito (1987)",
            depth: 16,
            entry: Entry::Ready(delta(c(half, -half), &[(0, 1), (-1, 4)], vec![c(0.0, 0.0), c(half, -half)])),
        },
        Preset {
            name: "levy",
            summary: "four Levy dragons: revolving series with alpha=(1-i)/2, theta=pi/2",
            citation: "Kawamura (2002)",
            depth: 14,
            entry: Entry::Ready(
                SeriesSpec::grs(c(half, -half), RationalAngle::new(1, 4).expect("valid angle"))
                    .expect("valid spec"),
            ),
        },
        Preset {
            name: "tetradragon",
            summary: "Tetradragon: zero-allowed series with alpha=(1-i)/2, S={0, -pi/2}",
            citation: "Mizutani and Ito (1987)",
            depth: 12,
            entry: Entry::Ready(
                SeriesSpec::delta_zero(
                    c(half, -half),
                    RevolvingGroup::from_fractions(&[(0, 1), (-1, 4)]).expect("valid group"),
                )
                .expect("valid spec"),
            ),
        },
        Preset {
            name: "terdragon",
            summary: "Terdragon: alpha=1/2-(sqrt3/6)i, rotations (0, 2pi/3, 0)",
            citation: "Edgar, Measure, Topology, and Fractal Geometry (1990), p. 163",
            depth: 0,
            entry: Entry::Rejected(terdragon_reason()),
        },
    ]
}

pub fn find(name: &str) -> Result<Preset> {
    registry()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}
