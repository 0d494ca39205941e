//! Revolving sequences, revolving groups and the self-similar sets they
//! parametrize.
//!
//! A generator set `S = {0, θ₁, …, θ_{m−1}}` of rational angles defines the
//! cyclic group `Δ` of rotations it generates. Walks on `Δ` (and their
//! zero-padded variants) index power series `Σ α^{n−1} s_n γ_n` whose sums
//! form a union of `|Δ|` rotated copies of an IFS attractor. This crate
//! enumerates and samples those words, evaluates the series and the IFS
//! side independently, and measures how well the two agree.

pub mod cloud;
pub mod config;
pub mod error;
pub mod group;
pub mod ifs;
pub mod presets;
pub mod render;
pub mod series;
pub mod verify;
pub mod words;

pub use cloud::{CloudMeta, Generation, PointCloud};
pub use config::{Kind, SpecConfig};
pub use error::{Error, Result};
pub use group::{GeneratorSet, GroupElement, RationalAngle, RevolvingGroup};
pub use ifs::IfsSpec;
pub use presets::Preset;
pub use render::{Bounds, Mapping, Raster, RenderConfig};
pub use series::{CloudMode, SeriesSpec};
pub use verify::VerificationReport;
pub use words::{CodingWord, DeltaWord, DeltaZeroWord, GrWord, Slot};

pub use num_complex::Complex64;
