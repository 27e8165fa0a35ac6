#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use btda::bounds::{
    beta_fn, sample_size, sample_size_value, sweep_eps, sweep_gamma, theta, BoundQuery,
};
use btda::criteria::{compare_all, MuReachProfile, CSV_HEADER};
use btda::density::{certify_density, check_preconditions, Verdict};
use btda::manifold::semicircle_example_points;
use btda::persistence::{rips_barcode, Engine, Reduction, RipsConfig, DEFAULT_SIMPLEX_CAP};
use btda::pipeline::{run_pipeline, PipelineConfig};
use btda::plot::{barcode_svg, line_plot};
use btda::{Error, ManifoldKind, ManifoldSpec, PointCloud};

const SIMPLEX_CAP_VAR: &str = "BTDA_SIMPLEX_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "btda",
    version,
    about = "Sampling bounds and homology checks for manifolds with boundary"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Scale {
    /// Rips edge lengths
    Diameter,
    /// Radii of the union of balls (half the diameter)
    Radius,
}

impl Scale {
    fn factor(self) -> f64 {
        match self {
            Scale::Diameter => 1.0,
            Scale::Radius => 0.5,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Scale::Diameter => "diameter",
            Scale::Radius => "ball radius",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Implicit,
    Twist,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample size n* for a manifold, offset radius and confidence
    Bound {
        #[arg(long)]
        manifold: ManifoldKind,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// n* over gamma = 0.05..0.95 at fixed eps
    SweepGamma {
        #[arg(long)]
        manifold: ManifoldKind,
        #[arg(long)]
        eps: f64,
        /// CSV destination (stdout if absent)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// n* over eps = 0.15..0.50 (eps < delta/2) at fixed gamma
    SweepEps {
        #[arg(long)]
        manifold: ManifoldKind,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Seeded uniform sample
    Sample {
        #[arg(long)]
        manifold: ManifoldKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify that a cloud is eps-dense in a manifold
    Density {
        #[arg(long)]
        manifold: ManifoldKind,
        #[arg(long)]
        cloud: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0.005)]
        mesh_h: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rips persistence barcode of a cloud
    Persistence {
        #[arg(long)]
        cloud: PathBuf,
        /// Largest edge length (diameter scale)
        #[arg(long)]
        r_max: f64,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
        /// Scale of the CSV values and the SVG axis
        #[arg(long, value_enum, default_value = "diameter")]
        scale: Scale,
        #[arg(long, default_value_t = 20)]
        top_k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compare reconstruction criteria on a cloud
    Criteria {
        #[arg(long)]
        manifold: ManifoldKind,
        #[arg(long, conflicts_with = "example", required_unless_present = "example")]
        cloud: Option<PathBuf>,
        /// Use the 8 equally spaced semicircle points
        #[arg(long)]
        example: bool,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1e-4)]
        mesh_h: f64,
        /// mu-reach profile as hi:value pieces
        #[arg(long, default_value = "1:1,inf:0")]
        profile: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sample n*, certify density, compute persistence and check H1
    Pipeline {
        #[arg(long)]
        manifold: ManifoldKind,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Override the sample size
        #[arg(long)]
        n: Option<usize>,
        /// Rips edge threshold (diameter scale), default 2*eps
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 0.01)]
        mesh_h: f64,
        #[arg(long, default_value_t = 3.0)]
        factor: f64,
        #[arg(long, value_enum, default_value = "diameter")]
        scale: Scale,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn check_eps(spec: &ManifoldSpec, eps: f64) -> Outcome {
    if !(eps > 0.0) || !eps.is_finite() {
        return usage(format!("eps > 0 violated: eps={eps}"));
    }
    if eps >= spec.delta / 2.0 {
        return usage(format!(
            "eps < delta/2 violated: eps={eps}, delta/2={}",
            spec.delta / 2.0
        ));
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Outcome {
    if !(gamma > 0.0 && gamma < 1.0) {
        return usage(format!("0 < gamma < 1 violated: gamma={gamma}"));
    }
    Ok(())
}

fn check_mesh(spec: &ManifoldSpec, eps: f64, h: f64) -> Outcome {
    if !(h > 0.0) || h >= eps / 4.0 || h >= spec.delta {
        return usage(format!(
            "0 < mesh_h < eps/4 violated: mesh_h={h}, eps={eps}"
        ));
    }
    Ok(())
}

fn simplex_cap() -> Result<u64, Failure> {
    match std::env::var(SIMPLEX_CAP_VAR) {
        Ok(v) => v.trim().parse().or_else(|_| {
            usage(format!(
                "{SIMPLEX_CAP_VAR} must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_SIMPLEX_CAP),
    }
}

fn read_cloud(path: &Path, spec: Option<&ManifoldSpec>) -> Result<PointCloud, Failure> {
    let file =
        fs::File::open(path).or_else(|e| usage(format!("cannot open {}: {e}", path.display())))?;
    let cloud = PointCloud::read_from(io::BufReader::new(file))
        .or_else(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    if cloud.is_empty() {
        return usage(format!("{} holds no points", path.display()));
    }
    if let Some(spec) = spec {
        if cloud.dim() != spec.ambient_dim {
            return usage(format!(
                "{} has dimension {}, {} lives in R^{}",
                path.display(),
                cloud.dim(),
                spec.name(),
                spec.ambient_dim
            ));
        }
    }
    Ok(cloud)
}

/// Outputs are buffered and written only once everything succeeded, each
/// through a temporary file renamed into place.
#[derive(Default)]
struct Outputs {
    files: Vec<(PathBuf, String)>,
    stdout: String,
}

impl Outputs {
    fn emit(&mut self, path: Option<&PathBuf>, content: String) {
        match path {
            Some(p) => self.files.push((p.clone(), content)),
            None => self.stdout.push_str(&content),
        }
    }

    fn commit(self) -> io::Result<()> {
        for (path, content) in &self.files {
            let mut tmp = path.clone().into_os_string();
            tmp.push(format!(".tmp{}", std::process::id()));
            let tmp = PathBuf::from(tmp);
            fs::write(&tmp, content)?;
            fs::rename(&tmp, path)?;
        }
        let mut out = io::stdout().lock();
        out.write_all(self.stdout.as_bytes())?;
        out.flush()
    }
}

fn cmd_bound(
    out: &mut Outputs,
    kind: ManifoldKind,
    eps: f64,
    gamma: f64,
    format: Format,
) -> Outcome {
    let spec = ManifoldSpec::new(kind);
    check_eps(&spec, eps)?;
    check_gamma(gamma)?;
    let p = spec.bound_params();
    let q = BoundQuery::new(eps, gamma)?;
    let n = sample_size(&q, &p)?;
    let raw = sample_size_value(&q, &p)?;
    let b_eps = beta_fn(eps, &p)?;
    let b_half = beta_fn(eps / 2.0, &p)?;
    let th = theta(eps, spec.delta)?;
    let text = match format {
        Format::Csv => format!(
            "manifold,eps,gamma,n_star,n_star_raw,beta_eps,beta_eps_half,theta\n{kind},{eps},{gamma},{n},{raw},{b_eps},{b_half},{th}\n"
        ),
        Format::Text => format!(
            "manifold={kind}\neps={eps}\ngamma={gamma}\nn_star={n}\nn_star_raw={raw}\nbeta_eps={b_eps}\nbeta_eps_half={b_half}\ntheta={th}\n{}",
            check_preconditions(&spec, eps)
        ),
    };
    out.emit(None, text);
    Ok(())
}

fn sweep_csv(col: &str, rows: &[(f64, u64)]) -> String {
    let mut s = format!("{col},n_star\n");
    for (x, n) in rows {
        s.push_str(&format!("{x},{n}\n"));
    }
    s
}

fn sweep_svg(kind: ManifoldKind, col: &str, fixed: &str, rows: &[(f64, u64)]) -> String {
    let pts: Vec<(f64, f64)> = rows.iter().map(|&(x, n)| (x, n as f64)).collect();
    line_plot(&format!("n* vs {col} ({kind}, {fixed})"), col, "n*", &pts)
}

fn cmd_sweep(
    out: &mut Outputs,
    kind: ManifoldKind,
    over_gamma: bool,
    fixed: f64,
    csv: Option<&PathBuf>,
    svg: Option<&PathBuf>,
) -> Outcome {
    let spec = ManifoldSpec::new(kind);
    let p = spec.bound_params();
    let (col, label, rows) = if over_gamma {
        check_eps(&spec, fixed)?;
        ("gamma", format!("eps={fixed}"), sweep_gamma(fixed, &p)?)
    } else {
        check_gamma(fixed)?;
        ("eps", format!("gamma={fixed}"), sweep_eps(fixed, &p)?)
    };
    out.emit(csv, sweep_csv(col, &rows));
    if let Some(path) = svg {
        out.emit(Some(path), sweep_svg(kind, col, &label, &rows));
    }
    Ok(())
}

fn cmd_sample(
    out: &mut Outputs,
    kind: ManifoldKind,
    n: usize,
    seed: u64,
    path: Option<&PathBuf>,
) -> Outcome {
    if n == 0 {
        return usage("n >= 1 violated");
    }
    let cloud = ManifoldSpec::new(kind).sample_uniform(n, seed)?;
    out.emit(path, cloud.to_text());
    Ok(())
}

fn cmd_density(
    out: &mut Outputs,
    kind: ManifoldKind,
    cloud: &Path,
    eps: f64,
    mesh_h: f64,
    path: Option<&PathBuf>,
) -> Outcome {
    let spec = ManifoldSpec::new(kind);
    if !(eps > 0.0) || !eps.is_finite() {
        return usage(format!("eps > 0 violated: eps={eps}"));
    }
    check_mesh(&spec, eps, mesh_h)?;
    let cloud = read_cloud(cloud, Some(&spec))?;
    let cert = certify_density(&spec, &cloud, eps, mesh_h)?;
    out.emit(path, format!("{}\n", cert.to_record()));
    if cert.verdict != Verdict::Dense {
        out.stdout.push_str(&format!("verdict={}\n", cert.verdict));
        return Err(Failure::Verify(format!(
            "cloud is not certified {eps}-dense (verdict {})",
            cert.verdict
        )));
    }
    Ok(())
}

fn engine_for(arg: Option<EngineArg>, max_dim: usize) -> Result<Engine, Failure> {
    Ok(match arg {
        None => Engine::default_for(max_dim),
        Some(EngineArg::Implicit) if max_dim > 2 => {
            return usage("the implicit engine needs max_dim <= 2")
        }
        Some(EngineArg::Implicit) => Engine::Implicit,
        Some(EngineArg::Twist) => Engine::Explicit(Reduction::Twist),
        Some(EngineArg::Plain) => Engine::Explicit(Reduction::Plain),
    })
}

fn top_bars_text(b: &btda::persistence::Barcode, k: usize) -> String {
    let mut s = String::new();
    for dim in 0..b.max_dim().max(1) {
        let bars = b.top_k_intervals(dim, k);
        let essential = b
            .intervals()
            .iter()
            .filter(|i| i.dim == dim && i.is_essential())
            .count();
        s.push_str(&format!(
            "H{dim}: {essential} essential, top {} finite (diameter | ball radius):\n",
            bars.len()
        ));
        for i in bars {
            s.push_str(&format!(
                "  [{}, {}) | [{}, {})\n",
                i.birth,
                i.death,
                i.birth / 2.0,
                i.death / 2.0
            ));
        }
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_persistence(
    out: &mut Outputs,
    cloud: &Path,
    r_max: f64,
    max_dim: usize,
    engine: Option<EngineArg>,
    scale: Scale,
    top_k: usize,
    csv: Option<&PathBuf>,
    svg: Option<&PathBuf>,
) -> Outcome {
    if !(r_max > 0.0) || !r_max.is_finite() {
        return usage(format!("r_max > 0 violated: r_max={r_max}"));
    }
    if max_dim > 3 {
        return usage(format!("max_dim <= 3 violated: max_dim={max_dim}"));
    }
    if top_k == 0 {
        return usage("top_k >= 1 violated");
    }
    let engine = engine_for(engine, max_dim)?;
    let mut cfg = RipsConfig::new(r_max, max_dim);
    cfg.simplex_cap = simplex_cap()?;
    let cloud = read_cloud(cloud, None)?;
    let b = rips_barcode(&cloud, &cfg, engine)?;
    match csv {
        Some(path) => {
            out.emit(Some(path), b.to_csv(scale.factor()));
            out.stdout.push_str(&top_bars_text(&b, top_k));
        }
        None => out.stdout.push_str(&b.to_csv(scale.factor())),
    }
    if let Some(path) = svg {
        out.emit(
            Some(path),
            barcode_svg(
                &format!("Rips barcode, {} points", cloud.len()),
                &b,
                scale.factor(),
                scale.label(),
                top_k,
            ),
        );
    }
    Ok(())
}

fn cmd_criteria(
    out: &mut Outputs,
    kind: ManifoldKind,
    cloud: Option<&Path>,
    eps: f64,
    mesh_h: f64,
    profile: &str,
    format: Format,
) -> Outcome {
    let spec = ManifoldSpec::new(kind);
    if !(eps > 0.0) || !eps.is_finite() {
        return usage(format!("eps > 0 violated: eps={eps}"));
    }
    if !(mesh_h > 0.0) || mesh_h >= spec.delta {
        return usage(format!("0 < mesh_h < delta violated: mesh_h={mesh_h}"));
    }
    let profile =
        MuReachProfile::parse(profile).or_else(|e| usage(format!("bad --profile: {e}")))?;
    let cloud = match cloud {
        Some(path) => read_cloud(path, Some(&spec))?,
        None if kind == ManifoldKind::Semicircle => semicircle_example_points(),
        None => return usage("--example is only defined for the semicircle"),
    };
    let report = compare_all(&spec, &cloud, eps, &profile, mesh_h)?;
    out.emit(
        None,
        match format {
            Format::Text => report.to_string(),
            Format::Csv => format!("{CSV_HEADER}\n{}\n", report.to_csv_row()),
        },
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_pipeline(
    out: &mut Outputs,
    kind: ManifoldKind,
    eps: f64,
    gamma: f64,
    seed: u64,
    n: Option<usize>,
    r_max: Option<f64>,
    max_dim: usize,
    mesh_h: f64,
    factor: f64,
    scale: Scale,
    dir: &Path,
) -> Outcome {
    let spec = ManifoldSpec::new(kind);
    check_eps(&spec, eps)?;
    check_gamma(gamma)?;
    check_mesh(&spec, eps / 2.0, mesh_h)?;
    if n == Some(0) {
        return usage("n >= 1 violated");
    }
    if let Some(r) = r_max {
        if !(r > 0.0) || !r.is_finite() {
            return usage(format!("r_max > 0 violated: r_max={r}"));
        }
    }
    if !(1..=2).contains(&max_dim) {
        return usage(format!("1 <= max_dim <= 2 violated: max_dim={max_dim}"));
    }
    if !(factor > 1.0) {
        return usage(format!("factor > 1 violated: factor={factor}"));
    }
    let mut cfg = PipelineConfig::new(kind, eps, gamma, seed);
    cfg.n = n;
    cfg.r_max = r_max;
    cfg.max_dim = max_dim;
    cfg.mesh_h = mesh_h;
    cfg.dominance_factor = factor;
    cfg.simplex_cap = simplex_cap()?;
    let r = run_pipeline(&cfg)?;
    fs::create_dir_all(dir).map_err(|e| Failure::Compute(e.into()))?;
    let b = &r.barcode;
    out.emit(Some(&dir.join("cloud.txt")), r.cloud.to_text());
    out.emit(
        Some(&dir.join("density.txt")),
        format!("{}\n", r.certificate.to_record()),
    );
    out.emit(Some(&dir.join("barcode.csv")), b.to_csv(scale.factor()));
    out.emit(
        Some(&dir.join("barcode.svg")),
        barcode_svg(
            &format!("{kind}: Rips barcode, n={}, seed={seed}", r.n),
            b,
            scale.factor(),
            scale.label(),
            20,
        ),
    );
    let summary = format!(
        "manifold={kind}\nn={}\nn_star={}\nseed={seed}\nr_max_diameter={}\nr_max_radius={}\ndensity_eps_half={}\nh1_dominant={}\nh1_expected={}\nbetti0_at_horizon={}\nbetti1_at_horizon={}\npassed={}\n{}",
        r.n,
        r.n_star,
        r.r_max,
        r.r_max / 2.0,
        r.certificate.verdict,
        r.dominant_h1,
        r.expected_h1,
        r.betti0_at_horizon,
        r.betti1_at_horizon,
        r.passed(),
        top_bars_text(b, 5)
    );
    out.emit(Some(&dir.join("summary.txt")), summary.clone());
    out.stdout.push_str(&summary);
    if !r.passed() {
        return Err(Failure::Verify(format!(
            "homology check failed: {} dominant H1 bars, expected {}; {} components at the horizon",
            r.dominant_h1, r.expected_h1, r.betti0_at_horizon
        )));
    }
    Ok(())
}

fn run(cli: Cli, out: &mut Outputs) -> Outcome {
    match cli.command {
        Command::Bound {
            manifold,
            eps,
            gamma,
            format,
        } => cmd_bound(out, manifold, eps, gamma, format),
        Command::SweepGamma {
            manifold,
            eps,
            out: csv,
            svg,
        } => cmd_sweep(out, manifold, true, eps, csv.as_ref(), svg.as_ref()),
        Command::SweepEps {
            manifold,
            gamma,
            out: csv,
            svg,
        } => cmd_sweep(out, manifold, false, gamma, csv.as_ref(), svg.as_ref()),
        Command::Sample {
            manifold,
            n,
            seed,
            out: path,
        } => cmd_sample(out, manifold, n, seed, path.as_ref()),
        Command::Density {
            manifold,
            cloud,
            eps,
            mesh_h,
            out: path,
        } => cmd_density(out, manifold, &cloud, eps, mesh_h, path.as_ref()),
        Command::Persistence {
            cloud,
            r_max,
            max_dim,
            engine,
            scale,
            top_k,
            out: csv,
            svg,
        } => cmd_persistence(
            out,
            &cloud,
            r_max,
            max_dim,
            engine,
            scale,
            top_k,
            csv.as_ref(),
            svg.as_ref(),
        ),
        Command::Criteria {
            manifold,
            cloud,
            example: _,
            eps,
            mesh_h,
            profile,
            format,
        } => cmd_criteria(
            out,
            manifold,
            cloud.as_deref(),
            eps,
            mesh_h,
            &profile,
            format,
        ),
        Command::Pipeline {
            manifold,
            eps,
            gamma,
            seed,
            n,
            r_max,
            max_dim,
            mesh_h,
            factor,
            scale,
            out_dir,
        } => cmd_pipeline(
            out, manifold, eps, gamma, seed, n, r_max, max_dim, mesh_h, factor, scale, &out_dir,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = Outputs::default();
    let result = run(cli, &mut out);
    let (code, msg) = match result {
        Ok(()) => (0, None),
        Err(Failure::Usage(m)) => (1, Some(format!("usage error: {m}"))),
        Err(Failure::Compute(e)) => (2, Some(format!("error: {e}"))),
        Err(Failure::Verify(m)) => (3, Some(format!("verification failed: {m}"))),
    };
    // verification failures still write their artifacts
    if code == 0 || code == 3 {
        if let Err(e) = out.commit() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(m) = msg {
        eprintln!("{m}");
    }
    ExitCode::from(code)
}
