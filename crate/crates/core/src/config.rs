//! YAML spec files.
//!
//! ```yaml
//! kind: delta          # delta | delta_zero | grs
//! alpha: [0.5, 0.5]
//! angles: [{q: 0, p: 1}, {q: 1, p: 4}]
//! constants: [[0.0, 0.0], [1.0, 0.0]]
//! ```
//!
//! `constants` is required for `delta` and must be absent otherwise; `grs`
//! takes exactly two angles, the second being the revolving angle.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GeneratorSet, RationalAngle, RevolvingGroup};
use crate::ifs::IfsSpec;
use crate::series::SeriesSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    #[default]
    Delta,
    DeltaZero,
    Grs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecConfig {
    #[serde(default)]
    pub kind: Kind,
    pub alpha: [f64; 2],
    pub angles: Vec<RationalAngle>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<[f64; 2]>,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl SpecConfig {
    pub fn from_spec(spec: &SeriesSpec) -> Self {
        match spec {
            SeriesSpec::Delta(ifs) => SpecConfig {
                kind: Kind::Delta,
                alpha: pair(ifs.alpha()),
                angles: ifs.generator_set().angles().to_vec(),
                constants: ifs.constants().iter().copied().map(pair).collect(),
            },
            SeriesSpec::DeltaZero { alpha, group } => SpecConfig {
                kind: Kind::DeltaZero,
                alpha: pair(*alpha),
                angles: group.angles().to_vec(),
                constants: Vec::new(),
            },
            SeriesSpec::Grs { alpha, theta } => SpecConfig {
                kind: Kind::Grs,
                alpha: pair(*alpha),
                angles: vec![RationalAngle::ZERO, *theta],
                constants: Vec::new(),
            },
        }
    }

    pub fn to_spec(&self) -> Result<SeriesSpec> {
        let alpha = Complex64::new(self.alpha[0], self.alpha[1]);
        if self.kind != Kind::Delta && !self.constants.is_empty() {
            return Err(Error::Config(
                "constants are only allowed for kind: delta".into(),
            ));
        }
        let set = GeneratorSet::new(self.angles.clone())?;
        match self.kind {
            Kind::Delta => {
                let constants = self
                    .constants
                    .iter()
                    .map(|c| Complex64::new(c[0], c[1]))
                    .collect();
                Ok(SeriesSpec::Delta(IfsSpec::new(alpha, set, constants)?))
            }
            Kind::DeltaZero => SeriesSpec::delta_zero(alpha, RevolvingGroup::new(set)?),
            Kind::Grs => {
                if set.len() != 2 {
                    return Err(Error::Config(format!(
                        "kind: grs takes angles [0, theta], got {} angles",
                        set.len()
                    )));
                }
                SeriesSpec::grs(alpha, set.angles()[1])
            }
        }
    }

    pub fn from_yaml(text: &str) -> Result<Self> {
        serde_yaml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_yaml(&self) -> String {
        serde_yaml::to_string(self).expect("spec config always serializes")
    }
}

pub fn load_spec(path: &Path) -> Result<SeriesSpec> {
    let text = std::fs::read_to_string(path)?;
    SpecConfig::from_yaml(&text)?.to_spec()
}

pub fn save_spec(spec: &SeriesSpec, path: &Path) -> Result<()> {
    std::fs::write(path, SpecConfig::from_spec(spec).to_yaml())?;
    Ok(())
}
