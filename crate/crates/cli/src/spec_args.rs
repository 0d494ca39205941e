use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use revolve::config::load_spec;
use revolve::presets;
use revolve::{Complex64, GeneratorSet, IfsSpec, RationalAngle, RevolvingGroup, SeriesSpec};

/// Where a spec comes from: a preset, a config file, or explicit flags.
#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Named preset (see `revolve presets`)
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// YAML spec file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Generator angles as fractions of a full turn, first one 0: `0 1/2 1/3`
    /// or `0,-1/4` (use commas or `--angles=` when an angle is negative)
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub angles: Vec<RationalAngle>,
    /// Contraction ratio as `re,im`
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: Option<Complex64>,
    /// Constant of the next map as `re,im`; repeat once per angle
    #[arg(long = "constant", value_parser = parse_complex, allow_hyphen_values = true)]
    pub constants: Vec<Complex64>,
}

pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("{s:?} is not a complex number (expected re,im)"))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None => Ok(Complex64::new(num(s)?, 0.0)),
    }
}

fn generator_set_of(spec: &SeriesSpec) -> GeneratorSet {
    match spec {
        SeriesSpec::Delta(ifs) => ifs.generator_set().clone(),
        SeriesSpec::DeltaZero { group, .. } => group.generator_set().clone(),
        SeriesSpec::Grs { theta, .. } => {
            GeneratorSet::new(vec![RationalAngle::ZERO, *theta]).expect("a nonzero angle gives a valid set")
        }
    }
}

impl SpecArgs {
    /// The spec named by `--preset` or `--config`, if either is given.
    pub fn named(&self) -> Result<Option<SeriesSpec>> {
        if let Some(name) = &self.preset {
            let p = presets::find(name)?;
            return Ok(Some(p.spec()?.clone()));
        }
        if let Some(path) = &self.config {
            let spec = load_spec(path).with_context(|| format!("loading {}", path.display()))?;
            return Ok(Some(spec));
        }
        Ok(None)
    }

    pub fn generator_set(&self) -> Result<GeneratorSet> {
        if let Some(spec) = self.named()? {
            return Ok(generator_set_of(&spec));
        }
        if self.angles.is_empty() {
            bail!("no generator set given: pass --angles, --preset or --config");
        }
        Ok(GeneratorSet::new(self.angles.clone())?)
    }

    pub fn group(&self) -> Result<RevolvingGroup> {
        Ok(RevolvingGroup::new(self.generator_set()?)?)
    }

    /// The single revolving angle, from `--angles θ`, `--angles 0 θ` or a
    /// spec with exactly one nonzero angle.
    pub fn theta(&self) -> Result<RationalAngle> {
        let angles = match self.named()? {
            Some(spec) => generator_set_of(&spec).angles().to_vec(),
            None => self.angles.clone(),
        };
        let nonzero: Vec<_> = angles.iter().filter(|a| !a.is_zero()).collect();
        match nonzero.as_slice() {
            [theta] if angles.len() <= 2 => Ok(**theta),
            _ => bail!("expected exactly one nonzero revolving angle, got {} angles", angles.len()),
        }
    }

    pub fn alpha(&self) -> Result<Complex64> {
        if let Some(spec) = self.named()? {
            return Ok(spec.alpha());
        }
        self.alpha.context("no contraction ratio given: pass --alpha re,im, --preset or --config")
    }

    /// The IFS side of a spec: the spec's own IFS for `delta` specs and
    /// the tile IFS otherwise.
    pub fn ifs(&self) -> Result<IfsSpec> {
        if let Some(spec) = self.named()? {
            return Ok(spec.tile_ifs()?);
        }
        if self.constants.is_empty() {
            bail!("no constants given: pass --constant once per angle, --preset or --config");
        }
        Ok(IfsSpec::new(self.alpha()?, self.generator_set()?, self.constants.clone())?)
    }

    pub fn series(&self) -> Result<SeriesSpec> {
        if let Some(spec) = self.named()? {
            return Ok(spec);
        }
        Ok(SeriesSpec::Delta(self.ifs()?))
    }
}
