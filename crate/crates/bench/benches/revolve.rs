use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use revolve::ifs::{attractor_exhaustive, attractor_sampled, coding_sums};
use revolve::render::{rasterize, RenderConfig};
use revolve::series::{cloud_grs, cloud_x};
use revolve::verify::{hausdorff_brute, hausdorff_grid};
use revolve::words::{enumerate_drc, DEFAULT_CAP};
use revolve::{CloudMode, RationalAngle};
use revolve_bench::{preset_ifs, spiral};

fn exhaustive(c: &mut Criterion) {
    let mut g = c.benchmark_group("exhaustive");
    for (name, depth) in [("heighway", 14), ("fudgeflake", 9)] {
        let spec = preset_ifs(name);
        g.bench_with_input(BenchmarkId::new("coding_sums", name), &depth, |b, &d| {
            b.iter(|| coding_sums(&spec, d, DEFAULT_CAP).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("attractor_dedup", name), &depth, |b, &d| {
            b.iter(|| attractor_exhaustive(&spec, d, DEFAULT_CAP).unwrap())
        });
    }
    let spec = preset_ifs("fudgeflake");
    g.bench_function("cloud_x/fudgeflake/7", |b| {
        b.iter(|| cloud_x(&spec, 7, CloudMode::Exhaustive, DEFAULT_CAP).unwrap())
    });
    let theta = RationalAngle::new(1, 4).unwrap();
    g.bench_function("cloud_grs/levy/12", |b| {
        b.iter(|| cloud_grs(revolve::Complex64::new(0.5, -0.5), theta, 12, CloudMode::Exhaustive, DEFAULT_CAP).unwrap())
    });
    g.finish();
}

fn sampled(c: &mut Criterion) {
    let mut g = c.benchmark_group("sampled");
    let n = 100_000;
    g.throughput(Throughput::Elements(n as u64));
    let spec = preset_ifs("heighway");
    g.bench_function("chaos_game", |b| b.iter(|| attractor_sampled(&spec, n, black_box(0))));
    g.bench_function("random_words_depth48", |b| {
        b.iter(|| cloud_x(&spec, 48, CloudMode::Sampled { samples: n, seed: black_box(0) }, DEFAULT_CAP).unwrap())
    });
    let cloud = attractor_sampled(&spec, n, 0);
    let cfg = RenderConfig::new(512, 512).unwrap();
    g.bench_function("rasterize_512", |b| b.iter(|| rasterize(&cloud, &cfg).unwrap()));
    g.finish();
}

fn hausdorff(c: &mut Criterion) {
    let mut g = c.benchmark_group("hausdorff");
    for n in [1_000, 20_000] {
        let a = spiral(n, 5.0);
        let b = spiral(n + 7, 5.01);
        g.bench_with_input(BenchmarkId::new("grid", n), &n, |bch, _| bch.iter(|| hausdorff_grid(&a, &b).unwrap()));
        if n <= 1_000 {
            g.bench_with_input(BenchmarkId::new("brute", n), &n, |bch, _| {
                bch.iter(|| hausdorff_brute(&a, &b).unwrap())
            });
        }
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let grp = preset_ifs("fudgeflake").group().clone();
    c.bench_function("enumerate_drc/fudgeflake/9", |b| {
        b.iter(|| enumerate_drc(&grp, 9, None, DEFAULT_CAP).unwrap())
    });
}

criterion_group!(benches, exhaustive, sampled, hausdorff, enumeration);
criterion_main!(benches);
