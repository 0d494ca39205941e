//! Shared inputs for the criterion benches.

use revolve::{presets, Complex64, IfsSpec};

/// The tile IFS of a registry preset.
pub fn preset_ifs(name: &str) -> IfsSpec {
    presets::find(name)
        .and_then(|p| p.tile_ifs())
        .unwrap_or_else(|e| panic!("preset {name}: {e}"))
}

/// A deterministic spiral of `n` points, used as a Hausdorff input.
pub fn spiral(n: usize, turn: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let t = k as f64 / n as f64;
            Complex64::from_polar(t, turn * t * std::f64::consts::TAU)
        })
        .collect()
}
