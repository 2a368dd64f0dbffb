//! `darboux7r` command line: factorizations, verification, linkages and
//! their simulation, point paths, mobility and SVG plots.

mod plot;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use darboux7r::darboux::{fiv_chains, sample_parameters, translation_quotient};
use darboux7r::json::{factorizations_from_json, ToJson};
use darboux7r::linkage::{build_linkage, DEFAULT_RANK_TOL};
use darboux7r::{
    darboux_c, factor_fi, factor_fii, factor_fiii, trace_point, DarbouxParams, Error, Factorization,
    FactorizationLabel, Linkage, MotionPoly, Rational, Scalar,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

type Q = Rational;

#[derive(Parser)]
#[command(name = "darboux7r", version, about = "Darboux motion factorizations and 7R linkages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a factorization of the Darboux motion as exact JSON.
    Factor(FactorArgs),
    /// Check factorizations exactly, either computed or read from a file.
    Verify(VerifyArgs),
    /// Build a closed 7R linkage from two factorizations.
    Linkage(LinkageArgs),
    /// Joint angles and coupler pose along the motion.
    Simulate(SampleArgs),
    /// Fit and classify coupler point paths.
    Trace(TraceArgs),
    /// Instantaneous degrees of freedom along the motion.
    Mobility(SampleArgs),
    /// Draw the linkage in orthographic projection as SVG.
    Plot(PlotArgs),
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Required except for FIV, whose parameters are fixed.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    b: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    c: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    x: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    y: String,
}

#[derive(Args)]
struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(long = "type", value_name = "FI|FII|FIII|FIV")]
    kind: String,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Factorization JSON (one object or an array).
    #[arg(long)]
    from_file: Option<PathBuf>,
    #[arg(long = "type", value_name = "FI|FII|FIII|FIV")]
    kind: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct LinkageArgs {
    #[arg(long = "type", value_name = "FI+FII|FI+FIII|FIV")]
    kind: String,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Clone)]
struct RangeArgs {
    #[arg(long, default_value_t = 21)]
    samples: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
    t_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    t_max: f64,
}

impl RangeArgs {
    fn values(&self) -> anyhow::Result<Vec<f64>> {
        if self.samples == 0 {
            bail!(Usage("--samples must be positive".into()));
        }
        if self.t_min.is_nan() || self.t_max.is_nan() || self.t_min > self.t_max {
            bail!(Usage("--t-min must not exceed --t-max".into()));
        }
        if self.samples == 1 {
            return Ok(vec![0.0f64.clamp(self.t_min, self.t_max)]);
        }
        let step = (self.t_max - self.t_min) / (self.samples - 1) as f64;
        Ok((0..self.samples).map(|i| self.t_min + step * i as f64).collect())
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long = "type", value_name = "FI+FII|FI+FIII|FIV")]
    kind: String,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Relative singular value cutoff for the screw rank.
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum MotionKind {
    /// The Darboux motion itself (the coupler motion of every linkage).
    Darboux,
    /// The circular translation left after dividing off the FI rotation.
    Translation,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Point of the moving frame as `x,y,z`; may be repeated.
    #[arg(long, allow_hyphen_values = true)]
    point: Vec<String>,
    /// Additional random points in [-5, 5]³.
    #[arg(long, default_value_t = 0)]
    random_points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "darboux")]
    motion: MotionKind,
    /// Samples over a full turn, `t = tan(φ/2)`.
    #[arg(long, default_value_t = 24)]
    samples: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long = "type", value_name = "FI+FII|FI+FIII|FIV")]
    kind: String,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    range: RangeArgs,
    /// Projection direction `x,y,z`.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0,1")]
    view: String,
    #[arg(long, value_enum, default_value = "svg")]
    format: Format,
    #[command(flatten)]
    out: OutArgs,
}

/// Bad flags or parameters; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Verification did not hold; exits with status 1.
#[derive(Debug)]
struct Failed;

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Failed {}

fn parse_scalar(name: &str, s: &str) -> anyhow::Result<Q> {
    Q::parse_literal(s).ok_or_else(|| anyhow!(Usage(format!("--{name}: cannot parse {s:?} as a rational"))))
}

fn params(p: &ParamArgs) -> anyhow::Result<DarbouxParams<Q>> {
    let a = p.a.as_deref().ok_or_else(|| anyhow!(Usage("--a is required".into())))?;
    Ok(DarbouxParams::new(parse_scalar("a", a)?, parse_scalar("b", &p.b)?, parse_scalar("c", &p.c)?)
        .with_offsets(parse_scalar("x", &p.x)?, parse_scalar("y", &p.y)?))
}

fn triple(name: &str, s: &str) -> anyhow::Result<[f64; 3]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Usage(format!("--{name}: expected x,y,z, got {s:?}")))?;
    parts.try_into().map_err(|_| anyhow!(Usage(format!("--{name}: expected three numbers, got {s:?}"))))
}

/// Core errors caused by the inputs are usage errors.
fn lift(e: Error) -> anyhow::Error {
    match e {
        Error::DegenerateParams | Error::SingularChoice(_) | Error::Invalid(_) | Error::InsufficientSamples { .. } => {
            anyhow!(Usage(e.to_string()))
        }
        other => anyhow!(other),
    }
}

fn factorizations(kind: &str, args: &ParamArgs) -> anyhow::Result<Vec<Factorization<Q>>> {
    let label: FactorizationLabel = kind.parse().map_err(|e: Error| anyhow!(Usage(e.to_string())))?;
    Ok(match label {
        FactorizationLabel::FI => vec![factor_fi(&params(args)?).map_err(lift)?],
        FactorizationLabel::FII => vec![factor_fii(&params(args)?).map_err(lift)?],
        FactorizationLabel::FIII => vec![factor_fiii(&params(args)?).map_err(lift)?],
        FactorizationLabel::FIV => {
            let (fi, fiv) = fiv_chains();
            vec![fi, fiv]
        }
    })
}

fn linkage(kind: &str, args: &ParamArgs) -> anyhow::Result<Linkage<Q>> {
    let (a, b) = match kind.trim().to_ascii_uppercase().as_str() {
        "FI+FII" => {
            let p = params(args)?;
            (factor_fi(&p).map_err(lift)?, factor_fii(&p).map_err(lift)?)
        }
        "FI+FIII" => {
            let p = params(args)?;
            (factor_fi(&p).map_err(lift)?, factor_fiii(&p).map_err(lift)?)
        }
        "FIV" | "FI+FIV" => fiv_chains(),
        other => bail!(Usage(format!("unknown linkage type {other:?}; expected FI+FII, FI+FIII or FIV"))),
    };
    build_linkage(&a, &b).map_err(lift)
}

fn emit(out: &OutArgs, text: &str) -> anyhow::Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let newline: &[u8] = if text.ends_with('\n') { b"" } else { b"\n" };
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.write_all(newline)) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn cmd_factor(args: &FactorArgs) -> anyhow::Result<()> {
    let fs = factorizations(&args.kind, &args.params)?;
    let v = if fs.len() == 1 { fs[0].to_json() } else { Value::Array(fs.iter().map(|f| f.to_json()).collect()) };
    emit(&args.out, &pretty(&v))
}

fn verify_one(f: &Factorization<Q>) -> (bool, String) {
    let label = f.label;
    let p = &f.params;
    let head = format!("{label} (a={}, b={}, c={}, x={}, y={})", p.a, p.b, p.c, p.x, p.y);
    if label != FactorizationLabel::FIV && p.validate().is_err() {
        return (false, format!("FAIL {head}: parameter a must be nonzero"));
    }
    match f.residual() {
        Ok(r) if r.is_zero() => {
            (true, format!("PASS {head}: product of {} factors equals ({})·C", f.factors.len(), f.cofactor))
        }
        Ok(r) => (false, format!("FAIL {head}: product - cofactor·C = {r}")),
        Err(e) => (false, format!("FAIL {head}: {e}")),
    }
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<()> {
    let fs = match (&args.from_file, &args.kind) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| anyhow!(Usage(format!("invalid JSON: {e}"))))?;
            factorizations_from_json::<Q>(&v).map_err(|e| anyhow!(Usage(e.to_string())))?
        }
        (None, Some(kind)) => factorizations(kind, &args.params)?,
        (None, None) => bail!(Usage("verify needs --from-file or --type".into())),
    };
    let mut ok = true;
    let mut report = String::new();
    for f in &fs {
        let (pass, line) = verify_one(f);
        ok &= pass;
        report.push_str(&line);
        report.push('\n');
    }
    emit(&args.out, &report)?;
    if ok {
        Ok(())
    } else {
        Err(anyhow!(Failed))
    }
}

fn cmd_linkage(args: &LinkageArgs) -> anyhow::Result<()> {
    let l = linkage(&args.kind, &args.params)?;
    emit(&args.out, &pretty(&l.to_json()))
}

fn fmt_row(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(|x| format!("{x:.12e}")).collect::<Vec<_>>().join(",")
}

fn cmd_simulate(args: &SampleArgs) -> anyhow::Result<()> {
    if args.format == Format::Svg {
        bail!(Usage("simulate writes csv or json".into()));
    }
    let l: Linkage<f64> = linkage(&args.kind, &args.params)?.to_real();
    let ts = args.range.values()?;
    let samples = ts.iter().map(|&t| l.sample(t)).collect::<Result<Vec<_>, _>>().map_err(lift)?;
    let worst = samples.iter().map(|s| s.closure_residual()).fold(0.0, f64::max);
    eprintln!("max closure residual {worst:.3e}");
    let text = match args.format {
        Format::Csv => {
            let n = l.joint_count();
            let mut header: Vec<String> = vec!["t".into()];
            header.extend((1..=n).map(|i| format!("theta{i}")));
            header.extend((0..8).map(|i| format!("h{i}")));
            let mut text = header.join(",") + "\n";
            for s in &samples {
                let row = std::iter::once(s.t).chain(s.joint_angles.iter().copied()).chain(s.coupler_pose().coeffs());
                text.push_str(&fmt_row(row));
                text.push('\n');
            }
            text
        }
        _ => pretty(&serde_json::to_value(&samples)?),
    };
    emit(&args.out, &text)
}

fn cmd_mobility(args: &SampleArgs) -> anyhow::Result<()> {
    if args.format == Format::Svg {
        bail!(Usage("mobility writes csv or json".into()));
    }
    let l: Linkage<f64> = linkage(&args.kind, &args.params)?.to_real();
    let reports = args
        .range
        .values()?
        .into_iter()
        .map(|t| l.mobility_at(t, args.tol))
        .collect::<Result<Vec<_>, _>>()
        .map_err(lift)?;
    let text = match args.format {
        Format::Csv => {
            let mut text = String::from("t,joint_count,numeric_rank,dof,sigma_min_over_max\n");
            for r in &reports {
                let sv = &r.singular_values;
                let ratio = sv.last().copied().unwrap_or(0.0) / sv.first().copied().unwrap_or(1.0);
                text.push_str(&format!("{:.12e},{},{},{},{ratio:.3e}\n", r.t, r.joint_count, r.numeric_rank, r.dof));
            }
            text
        }
        _ => pretty(&serde_json::to_value(&reports)?),
    };
    emit(&args.out, &text)
}

fn cmd_trace(args: &TraceArgs) -> anyhow::Result<()> {
    let mut points = args.point.iter().map(|s| triple("point", s)).collect::<anyhow::Result<Vec<_>>>()?;
    let mut rng = StdRng::seed_from_u64(args.seed);
    points.extend(
        (0..args.random_points).map(|_| [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)]),
    );
    if points.is_empty() {
        bail!(Usage("trace needs --point or --random-points".into()));
    }
    let p = params(&args.params)?;
    let motion: MotionPoly<f64> = match args.motion {
        MotionKind::Darboux => darboux_c(&p).map_err(lift)?,
        MotionKind::Translation => {
            let root = factor_fi(&p).map_err(lift)?.factors[2].linear_root().expect("monic linear factor");
            translation_quotient(&p, &root.dual.x, &root.dual.y).map_err(lift)?
        }
    }
    .map(|x| x.to_f64());
    let ts = sample_parameters(args.samples);
    let reports = points.iter().map(|pt| trace_point(&motion, pt, &ts)).collect::<Result<Vec<_>, _>>().map_err(lift)?;
    emit(&args.out, &pretty(&json!(reports)))
}

fn cmd_plot(args: &PlotArgs) -> anyhow::Result<()> {
    if args.format != Format::Svg {
        bail!(Usage("plot writes svg".into()));
    }
    let view = triple("view", &args.view)?;
    if view.iter().all(|x| *x == 0.0) {
        bail!(Usage("--view must be a nonzero direction".into()));
    }
    let l: Linkage<f64> = linkage(&args.kind, &args.params)?.to_real();
    let ts = args.range.values()?;
    let svg = plot::render(&l, &ts, view).map_err(lift)?;
    emit(&args.out, &svg)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Factor(a) => cmd_factor(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Linkage(a) => cmd_linkage(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Trace(a) => cmd_trace(a),
        Command::Mobility(a) => cmd_mobility(a),
        Command::Plot(a) => cmd_plot(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Failed>() => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
