use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use revolve::config::save_spec;
use revolve::ifs::{attractor_exhaustive, attractor_sampled};
use revolve::render::{rasterize, write_ppm, Bounds, Mapping, RenderConfig, Resolution};
use revolve::verify::{self, summary_line, VerificationReport};
use revolve::words::{
    self, count_drc, count_dzrc, count_grc, enumerate_drc, enumerate_dzrc, enumerate_grc, validate_drc,
    validate_dzrc, validate_grc, Grammar, DEFAULT_CAP,
};
use revolve::{presets, CloudMode, DeltaWord, DeltaZeroWord, GrWord};

mod spec_args;

use spec_args::SpecArgs;

#[derive(Debug, Parser)]
#[command(name = "revolve", version, about = "Revolving-sequence fractals: enumerate, verify, render")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render a preset or config to a binary PGM (P5) density image
    Render(RenderArgs),
    /// List every word of a grammar up to the cap
    Enumerate(EnumerateArgs),
    /// Check a word against a grammar
    Validate(ValidateArgs),
    /// Run a finite-depth check and print report lines
    Verify(VerifyArgs),
    /// List the preset registry
    Presets {
        /// Also write each usable preset as `<DIR>/<name>.yaml`
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
    /// Print group order, contraction ratio and bounding disk of a spec
    Info {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Grc,
    Drc,
    Dzrc,
}

#[derive(Debug, clap::Args)]
struct RenderArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Exhaustive cloud at this depth instead of random sampling
    #[arg(long, conflicts_with = "samples")]
    depth: Option<usize>,
    /// Number of random points [default: 1000000]
    #[arg(long)]
    samples: Option<usize>,
    /// Series terms per sampled point
    #[arg(long, default_value_t = 48)]
    sample_depth: usize,
    /// Image size, `W` or `WxH`
    #[arg(long, default_value = "1024", value_parser = parse_size)]
    size: (usize, usize),
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "log")]
    mapping: Mapping,
    /// Explicit view as `re_min,re_max,im_min,im_max`
    #[arg(long, value_parser = parse_bounds, allow_hyphen_values = true)]
    bounds: Option<Bounds>,
    /// Also write the point cloud as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Render the single tile attractor instead of the full set
    #[arg(long)]
    attractor: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

#[derive(Debug, clap::Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long)]
    length: usize,
    #[command(flatten)]
    spec: SpecArgs,
    /// Fix the first element to this exponent (drc only)
    #[arg(long)]
    first: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Print only the number of words
    #[arg(long)]
    count: bool,
    /// Print this many seeded random words instead
    #[arg(long, conflicts_with_all = ["count", "first"])]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, clap::Args)]
struct ValidateArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Comma-separated entries: group exponents, `z` for a zero entry
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Claim {
    Main,
    Corollary,
    Ka,
    Group,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    claim: Claim,
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

fn parse_size(s: &str) -> std::result::Result<(usize, usize), String> {
    let dim = |t: &str| match t.trim().parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("{s:?} is not a size (expected W or WxH, both positive)")),
    };
    match s.split_once('x') {
        Some((w, h)) => Ok((dim(w)?, dim(h)?)),
        None => dim(s).map(|w| (w, w)),
    }
}

fn parse_bounds(s: &str) -> std::result::Result<Bounds, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| format!("{s:?} is not re_min,re_max,im_min,im_max"))?;
    match v[..] {
        [re_min, re_max, im_min, im_max] if re_min < re_max && im_min < im_max => Ok(Bounds::Explicit {
            re_min,
            re_max,
            im_min,
            im_max,
        }),
        _ => Err(format!("{s:?} needs four values with min < max")),
    }
}

fn render(args: &RenderArgs) -> Result<bool> {
    let (width, height) = args.size;
    let resolution = match (args.depth, args.samples) {
        (Some(d), _) => Resolution::Depth(d),
        (None, Some(n)) => Resolution::Samples(n),
        (None, None) => Resolution::Samples(1_000_000),
    };
    let cfg = RenderConfig {
        width,
        height,
        bounds: args.bounds.unwrap_or(Bounds::Auto),
        mapping: args.mapping,
        resolution,
        seed: args.seed,
    };
    cfg.validate()?;
    if args.spec.preset.is_none() && args.spec.config.is_none() {
        bail!("render needs --preset or --config");
    }
    let spec = args.spec.series()?;
    let cloud = if args.attractor {
        let ifs = spec.tile_ifs()?;
        match resolution {
            Resolution::Depth(d) => attractor_exhaustive(&ifs, d, args.cap)?,
            Resolution::Samples(n) => attractor_sampled(&ifs, n, args.seed),
        }
    } else {
        match resolution {
            Resolution::Depth(d) => spec.cloud(d, CloudMode::Exhaustive, args.cap)?,
            Resolution::Samples(n) => spec.cloud(
                args.sample_depth,
                CloudMode::Sampled {
                    samples: n,
                    seed: args.seed,
                },
                args.cap,
            )?,
        }
    };
    if cloud.is_empty() {
        bail!("nothing to render: the point cloud is empty");
    }
    let raster = rasterize(&cloud, &cfg)?;
    write_ppm(&raster, &args.out, cfg.mapping).with_context(|| format!("writing {}", args.out.display()))?;
    if let Some(path) = &args.csv {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        cloud.write_csv(BufWriter::new(f))?;
    }
    println!(
        "wrote {} ({}x{}, {} points, {} in view)",
        args.out.display(),
        width,
        height,
        cloud.len(),
        raster.total()
    );
    Ok(true)
}

fn enumerate(args: &EnumerateArgs) -> Result<bool> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let n = args.length;
    if args.first.is_some() && !matches!(args.mode, Mode::Drc) {
        bail!("--first only applies to --mode drc");
    }
    if let Some(k) = args.random {
        let grp;
        let grammar = match args.mode {
            Mode::Grc => Grammar::Grc(args.spec.theta()?),
            Mode::Drc => {
                grp = args.spec.group()?;
                Grammar::Drc(&grp)
            }
            Mode::Dzrc => {
                grp = args.spec.group()?;
                Grammar::Dzrc(&grp)
            }
        };
        for i in 0..k as u64 {
            writeln!(out, "{}", words::sample_random(&grammar, n, args.seed.wrapping_add(i))?)?;
        }
        out.flush()?;
        return Ok(true);
    }
    match args.mode {
        Mode::Grc => {
            let theta = args.spec.theta()?;
            if args.count {
                writeln!(out, "{}", count_grc(theta, n))?;
            } else {
                for w in enumerate_grc(theta, n, args.cap)? {
                    writeln!(out, "{w}")?;
                }
            }
        }
        Mode::Drc => {
            let grp = args.spec.group()?;
            let first = args.first.map(|e| grp.element(e)).transpose()?;
            if args.count {
                writeln!(out, "{}", count_drc(&grp, n, first.is_some()))?;
            } else {
                for w in enumerate_drc(&grp, n, first, args.cap)? {
                    writeln!(out, "{w}")?;
                }
            }
        }
        Mode::Dzrc => {
            let grp = args.spec.group()?;
            if args.count {
                writeln!(out, "{}", count_dzrc(&grp, n))?;
            } else {
                for w in enumerate_dzrc(&grp, n, args.cap)? {
                    writeln!(out, "{w}")?;
                }
            }
        }
    }
    out.flush()?;
    Ok(true)
}

fn validate(args: &ValidateArgs) -> Result<bool> {
    let parsed = match args.mode {
        Mode::Grc => {
            let theta = args.spec.theta()?;
            GrWord::parse(&args.word, theta).map(|w| validate_grc(&w))
        }
        Mode::Drc => {
            let grp = args.spec.group()?;
            DeltaWord::parse(&args.word, &grp).map(|w| validate_drc(&w, &grp))
        }
        Mode::Dzrc => {
            let grp = args.spec.group()?;
            DeltaZeroWord::parse(&args.word, &grp).map(|w| validate_dzrc(&w, &grp))
        }
    };
    Ok(match parsed {
        Ok(true) => {
            println!("valid");
            true
        }
        Ok(false) => {
            println!("invalid: a step breaks the grammar's rotation rule");
            false
        }
        Err(e) => {
            println!("invalid: {e}");
            false
        }
    })
}

fn print_report(out: &mut impl Write, r: &VerificationReport) -> io::Result<()> {
    writeln!(out, "{r}")?;
    writeln!(out, "# {}", r.params)
}

fn verify_cmd(args: &VerifyArgs) -> Result<bool> {
    let spec = &args.spec;
    let (n, eps, cap) = (args.depth, args.tol, args.cap);
    if eps.is_nan() || eps < 0.0 {
        bail!("--tol must be a non-negative number, got {eps}");
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut reports = Vec::new();
    match args.claim {
        Claim::Main => reports.push(verify::check_main_theorem(&spec.ifs()?, n, eps, cap)?),
        Claim::Corollary => reports.push(verify::check_corollary(spec.alpha()?, &spec.group()?, n, eps, cap)?),
        Claim::Ka => {
            let (alpha, theta) = (spec.alpha()?, spec.theta()?);
            let ka = verify::check_kawamura_allen(alpha, theta, n, eps, cap)?;
            let tail = revolve::ifs::tail_bound(alpha.norm(), alpha.norm(), n);
            writeln!(out, "# tail bound at depth {n}: {tail:.6e}")?;
            reports.push(ka);
            reports.push(verify::check_single_angle_reduction(alpha, theta, n, eps, cap)?);
        }
        Claim::Group => {
            let set = spec.generator_set()?;
            let r = verify::check_group_order(&set)?;
            let grp = revolve::RevolvingGroup::new(set)?;
            writeln!(out, "# |Delta| = {}", grp.order())?;
            for g in grp.elements() {
                let z = grp.to_complex(g);
                writeln!(out, "# exp(2 pi i {}/{}) = {:+.6} {:+.6}i", g.exponent(), grp.order(), z.re, z.im)?;
            }
            reports.push(r);
        }
    }
    for r in &reports {
        print_report(&mut out, r)?;
    }
    writeln!(out, "{}", summary_line(&reports))?;
    Ok(reports.iter().all(|r| r.passed))
}

fn presets_cmd(export: Option<&PathBuf>) -> Result<bool> {
    if let Some(dir) = export {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for p in presets::registry() {
        println!("{:<12} {}", p.name, p.summary);
        match p.spec() {
            Ok(spec) => {
                println!("{:<12} depth {}; {}", "", p.depth, p.citation);
                if let Some(dir) = export {
                    let path = dir.join(format!("{}.yaml", p.name));
                    save_spec(spec, &path).with_context(|| format!("writing {}", path.display()))?;
                }
            }
            Err(e) => println!("{:<12} REJECTED: {e}; {}", "", p.citation),
        }
    }
    Ok(true)
}

fn info(spec_args: &SpecArgs) -> Result<bool> {
    let spec = spec_args.series()?;
    let ifs = spec.tile_ifs()?;
    let grp = ifs.group();
    let kind = match &spec {
        revolve::SeriesSpec::Delta(_) => "delta",
        revolve::SeriesSpec::DeltaZero { .. } => "delta_zero",
        revolve::SeriesSpec::Grs { .. } => "grs",
    };
    let a = spec.alpha();
    println!("kind: {kind}");
    println!("angles: {}", grp.generator_set());
    println!("m: {}", grp.num_generators());
    println!("L = |Delta|: {}", grp.order());
    println!("rotated copies: {}", spec.rotation_count());
    println!("alpha: {}{:+}i", a.re, a.im);
    println!("contraction ratio |alpha|: {}", a.norm());
    println!("bounding disk: |z| <= {}", spec.bounding_radius());
    if let Some(name) = &spec_args.preset {
        let d = presets::find(name)?.depth;
        println!("default depth: {d} (tail bound {:.3e})", spec.tail_bound(d));
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Render(a) => render(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Validate(a) => validate(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Presets { export } => presets_cmd(export.as_ref()),
        Command::Info { spec } => info(spec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
