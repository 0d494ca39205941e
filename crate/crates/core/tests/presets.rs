use revolve::series::cloud_x;
use revolve::verify::{check_main_theorem, check_sampled_containment, hausdorff};
use revolve::words::DEFAULT_CAP;
use revolve::{presets, CloudMode};

fn diameter(points: &[revolve::Complex64]) -> f64 {
    let (a, b, c, d) = points.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), z| (a.min(z.re), b.max(z.re), c.min(z.im), d.max(z.im)),
    );
    (b - a).hypot(d - c)
}

#[test]
fn main_theorem_discrepancy_is_rounding_sized() {
    for p in presets::registry().iter().filter(|p| !p.is_rejected()) {
        let spec = p.tile_ifs().unwrap();
        let depth = if spec.len() > 2 { 6 } else { 9 };
        let r = check_main_theorem(&spec, depth, 1e-10, DEFAULT_CAP).unwrap();
        let cloud = cloud_x(&spec, depth, CloudMode::Exhaustive, DEFAULT_CAP).unwrap();
        let limit = 100.0 * f64::EPSILON * diameter(&cloud.points);
        assert!(r.passed, "{}: {r}", p.name);
        assert!(r.discrepancy <= limit, "{}: {} > {limit}", p.name, r.discrepancy);
    }
}

#[test]
fn checks_are_deterministic_and_monotone_in_tolerance() {
    let spec = presets::find("fudgeflake").unwrap().tile_ifs().unwrap();
    let a = check_main_theorem(&spec, 5, 0.0, DEFAULT_CAP).unwrap();
    let b = check_main_theorem(&spec, 5, 0.0, DEFAULT_CAP).unwrap();
    assert_eq!(a.discrepancy, b.discrepancy);
    let mut eps = a.discrepancy;
    for _ in 0..5 {
        assert!(check_main_theorem(&spec, 5, eps, DEFAULT_CAP).unwrap().passed);
        eps = eps * 10.0 + 1e-18;
    }
}

#[test]
fn sampled_points_lie_near_the_rotated_tiles() {
    for p in presets::registry().iter().filter(|p| !p.is_rejected()) {
        let spec = p.tile_ifs().unwrap();
        let r = check_sampled_containment(&spec, 40, 2000, 11, 7, 1e-10, DEFAULT_CAP).unwrap();
        assert!(r.passed, "{}: {r}", p.name);
    }
}

#[test]
fn series_cloud_matches_tile_decomposition_for_every_preset() {
    // X, X* and X_θ at depth N against the rotated tile IFS at depth N.
    for p in presets::registry().iter().filter(|p| !p.is_rejected()) {
        let spec = p.spec().unwrap();
        let tile = spec.tile_ifs().unwrap();
        let depth = 6;
        let lhs = spec.cloud(depth, CloudMode::Exhaustive, DEFAULT_CAP).unwrap();
        let t = revolve::ifs::attractor_exhaustive(&tile, depth, DEFAULT_CAP).unwrap();
        let rotations: Vec<_> = match spec {
            revolve::SeriesSpec::Grs { theta, .. } => {
                let r = theta.to_complex();
                (0..theta.denominator()).map(|l| r.powu(l as u32)).collect()
            }
            _ => tile.group().elements().map(|g| tile.group().to_complex(g)).collect(),
        };
        let union = t.rotated_union(&rotations);
        let d = hausdorff(&lhs.points, &union).unwrap();
        assert!(d <= 1e-10, "{}: {d:e}", p.name);
    }
}
