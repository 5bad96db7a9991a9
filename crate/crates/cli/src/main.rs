use std::f64::consts::TAU;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use delaunay::check::{run_checks, DEFAULT_SEED};
use delaunay::io::{profile_samples, write_obj, write_profile_csv, ProfileSample};
use delaunay::mesh::{assemble_composite_nodoid, sample_parameters, tessellate_sampled, CompositeOptions, Sampling, DEFAULT_JOIN_TOL};
use delaunay::roulettes::family_constant_length;
use delaunay::solver::{constant_volume_family, fit, FitKind, FitRequest};
use delaunay::{ConicSpec, PatchDomain, RouletteKind, RouletteSpec, SurfaceSpec};

/// Delaunay surfaces of revolution traced by the foci of rolling conics.
#[derive(Parser)]
#[command(name = "delaunay", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a meridian and write `t,g,f,H,K` rows.
    Profile(ProfileArgs),
    /// Tessellate a surface patch to OBJ.
    Mesh(MeshArgs),
    /// Print the curvature bundle at one parameter value as JSON.
    Curvature(CurvatureArgs),
    /// Run the invariant suite on one surface.
    Check(CheckArgs),
    /// Fit a surface to a volume and boundary radius.
    Fit(FitArgs),
    /// Write a family of meridians as CSV.
    Family(FamilyArgs),
    /// Assemble a composite nodoid from alternating roulette pieces.
    Composite(CompositeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Catenary,
    Undulary1,
    Undulary2,
    Nodary1,
    Nodary2,
}

impl From<KindArg> for RouletteKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Catenary => RouletteKind::Catenary,
            KindArg::Undulary1 => RouletteKind::Undulary1,
            KindArg::Undulary2 => RouletteKind::Undulary2,
            KindArg::Nodary1 => RouletteKind::Nodary1,
            KindArg::Nodary2 => RouletteKind::Nodary2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplingArg {
    UniformT,
    UniformArcLength,
}

impl From<SamplingArg> for Sampling {
    fn from(s: SamplingArg) -> Self {
        match s {
            SamplingArg::UniformT => Sampling::UniformT,
            SamplingArg::UniformArcLength => Sampling::UniformArcLength,
        }
    }
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Semi-axis `a` (ignored for the catenary).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
}

impl SurfaceArgs {
    fn surface(&self) -> Result<SurfaceSpec> {
        Ok(SurfaceSpec::new(RouletteSpec::from_parts(self.kind.into(), self.a, self.b)?))
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ProfileArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    t_min: f64,
    #[arg(long)]
    t_max: f64,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[arg(long, value_enum, default_value = "uniform-t")]
    sampling: SamplingArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct MeshArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    t_min: f64,
    #[arg(long)]
    t_max: f64,
    #[arg(long, default_value_t = 0.0)]
    v_min: f64,
    #[arg(long, default_value_t = TAU)]
    v_max: f64,
    #[arg(long, default_value_t = 64)]
    nt: usize,
    #[arg(long, default_value_t = 64)]
    nv: usize,
    #[arg(long, value_enum, default_value = "uniform-t")]
    sampling: SamplingArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CurvatureArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    t: f64,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FitKindArg {
    Nodoid,
    Unduloid,
    Catenoid,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long, value_enum)]
    kind: FitKindArg,
    #[arg(long, allow_negative_numbers = true)]
    volume: f64,
    #[arg(long, allow_negative_numbers = true)]
    radius: f64,
    /// Half-width of the parameter interval (not used for catenoids).
    #[arg(long, allow_negative_numbers = true)]
    t0: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyType {
    ConstantLength,
    ConstantVolume,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long = "type", value_enum)]
    family: FamilyType,
    /// Common semi-axis of the constant-length family.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 5)]
    ellipses: usize,
    #[arg(long, default_value_t = 5)]
    hyperbolas: usize,
    /// Nodaries are sampled on [−T, T].
    #[arg(long = "T", default_value_t = 6.0)]
    t_max: f64,
    #[arg(long, default_value_t = 1.0)]
    volume: f64,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Comma-separated t0 values of the constant-volume family.
    #[arg(long, value_delimiter = ',', default_value = "0.8,1.0,1.2")]
    t0: Vec<f64>,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompositeArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long = "T")]
    t_max: f64,
    #[arg(long, default_value_t = 1)]
    periods: usize,
    #[arg(long)]
    closed: bool,
    #[arg(long, default_value_t = 64)]
    nt: usize,
    #[arg(long, default_value_t = 64)]
    nv: usize,
    #[arg(long, default_value_t = DEFAULT_JOIN_TOL)]
    join_tol: f64,
    #[arg(long, value_enum, default_value = "uniform-t")]
    sampling: SamplingArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Bad input detected by the front end itself.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn is_input_error(err: &anyhow::Error) -> bool {
    err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<delaunay::Error>().is_some_and(|e| e.is_input_error())
}

fn open_sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn profile(args: &ProfileArgs) -> Result<()> {
    let surface = args.surface.surface()?;
    if args.t_min >= args.t_max {
        return Err(usage(format!("need --t-min < --t-max, got {} and {}", args.t_min, args.t_max)));
    }
    let ts = sample_parameters(&surface.roulette, args.t_min, args.t_max, args.samples, args.sampling.into())?;
    let rows = profile_samples(&surface, &ts)?;
    write_profile_csv(&rows, open_sink(&args.out)?)?;
    Ok(())
}

fn mesh(args: &MeshArgs) -> Result<()> {
    let surface = args.surface.surface()?;
    let patch = PatchDomain::new(args.t_min, args.t_max, args.v_min, args.v_max)?;
    let mesh = tessellate_sampled(&surface, &patch, args.nt, args.nv, args.sampling.into())?;
    write_obj(&mesh, open_sink(&args.out)?)?;
    Ok(())
}

fn curvature(args: &CurvatureArgs) -> Result<()> {
    let surface = args.surface.surface()?;
    print_json(&surface.curvatures_from_jet(args.t)?)
}

fn check(args: &CheckArgs) -> Result<bool> {
    let report = run_checks(&args.surface.surface()?, args.seed)?;
    print_json(&report)?;
    Ok(report.passed)
}

fn fit_command(args: &FitArgs) -> Result<()> {
    let kind = match args.kind {
        FitKindArg::Nodoid => FitKind::Nodoid,
        FitKindArg::Unduloid => FitKind::Unduloid,
        FitKindArg::Catenoid => FitKind::Catenoid,
    };
    print_json(&fit(&FitRequest::new(kind, args.volume, args.radius, args.t0)?)?)
}

fn kind_name(kind: RouletteKind) -> String {
    serde_json::to_value(kind).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

fn write_member_rows(sink: &mut dyn Write, member: usize, label: &str, roulette: &RouletteSpec, rows: &[ProfileSample]) -> Result<()> {
    let a = roulette.conic().a().unwrap_or(0.0);
    for r in rows {
        writeln!(
            sink,
            "{member},{label},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            kind_name(roulette.kind()),
            a,
            roulette.conic().b(),
            r.t,
            r.g,
            r.f,
            r.H,
            r.K
        )?;
    }
    Ok(())
}

const FAMILY_HEADER: &str = "member,role,kind,a,b,t,g,f,H,K";

fn family(args: &FamilyArgs) -> Result<()> {
    if args.samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let mut sink = open_sink(&args.out)?;
    writeln!(sink, "{FAMILY_HEADER}")?;
    match args.family {
        FamilyType::ConstantLength => {
            if !(args.t_max > 0.0) {
                return Err(usage("--T must be positive"));
            }
            let members = family_constant_length(args.a, args.ellipses, args.hyperbolas)?;
            for (k, m) in members.iter().enumerate() {
                let (lo, hi) = m.parameter_range();
                let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (-args.t_max, args.t_max) };
                for (label, roulette) in [("first", &m.first), ("second", &m.second)] {
                    let ts = sample_parameters(roulette, lo, hi, args.samples, Sampling::UniformT)?;
                    let rows = profile_samples(&SurfaceSpec::new(*roulette), &ts)?;
                    write_member_rows(&mut sink, k, label, roulette, &rows)?;
                }
            }
            sink.flush()?;
        }
        FamilyType::ConstantVolume => {
            let entries = constant_volume_family(args.volume, args.radius, &args.t0)?;
            let mut summary = Vec::new();
            for (k, entry) in entries.iter().enumerate() {
                let role = serde_json::to_value(entry.role)?;
                let role = role.as_str().unwrap_or_default();
                match &entry.outcome {
                    Ok(fit) => {
                        let roulette = fit.roulette();
                        let ts = sample_parameters(&roulette, -fit.t0, fit.t0, args.samples, Sampling::UniformT)?;
                        let rows = profile_samples(&SurfaceSpec::new(roulette), &ts)?;
                        write_member_rows(&mut sink, k, role, &roulette, &rows)?;
                        summary.push(json!({ "member": k, "role": role, "t0": entry.t0, "status": "converged", "fit": fit }));
                    }
                    Err(e) => {
                        summary.push(json!({ "member": k, "role": role, "t0": entry.t0, "status": "failed", "error": e.to_string() }));
                    }
                }
            }
            sink.flush()?;
            drop(sink);
            if args.out.is_some() {
                print_json(&summary)?;
            } else {
                eprintln!("{}", serde_json::to_string(&summary)?);
            }
        }
    }
    Ok(())
}

fn composite(args: &CompositeArgs) -> Result<()> {
    let conic = ConicSpec::hyperbola(args.a, args.b)?;
    let opts = CompositeOptions {
        t_max: args.t_max,
        periods: args.periods,
        closed: args.closed,
        nt: args.nt,
        nv: args.nv,
        join_tol: args.join_tol,
        sampling: args.sampling.into(),
    };
    let comp = assemble_composite_nodoid(&conic, &opts)?;
    write_obj(&comp.mesh, open_sink(&args.out)?)?;
    let summary = json!({
        "join_gap": comp.join_gap,
        "vertices": comp.mesh.vertices.len(),
        "faces": comp.mesh.faces.len(),
        "boundary_loops": comp.mesh.boundary_loops(),
        "mesh_volume": comp.reference_volume.map(|_| comp.mesh.signed_volume()),
        "reference_volume": comp.reference_volume,
    });
    if args.out.is_some() {
        print_json(&summary)
    } else {
        eprintln!("{summary}");
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Profile(a) => profile(a).map(|_| true),
        Command::Mesh(a) => mesh(a).map(|_| true),
        Command::Curvature(a) => curvature(a).map(|_| true),
        Command::Check(a) => check(a),
        Command::Fit(a) => fit_command(a).map(|_| true),
        Command::Family(a) => family(a).map(|_| true),
        Command::Composite(a) => composite(a).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: invariant checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_input_error(&e) { 2 } else { 1 })
        }
    }
}
