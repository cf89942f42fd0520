//! Command-line interface for the `minkval` convex-geometry library.
//!
//! One binary with a subcommand per operation. Inputs are never modified;
//! results go to stdout, or to the path given with `-o`/`--json`. Numeric
//! options can also be set in a TOML configuration file passed with
//! `--config`; command-line flags take precedence over the file, which takes
//! precedence over built-in defaults. `--threads` is the only concurrency
//! control.
//!
//! Exit codes: `0` success, `1` verification failures or unwritable output,
//! `2` command-line usage errors, `3` unreadable or malformed input
//! (including measures that violate the Minkowski solvability conditions),
//! `4` numerical non-convergence (any available report is still written).

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minkval::{
    blaschke_sum, bm_homomorphism, decompose, decomposition_report_to_json, fmt_float,
    kernel_pair_from_json, measure_from_json, operator_by_name, polytope_from_json,
    polytope_from_off, polytope_to_json, polytope_to_off, projection_body, run_suite,
    solve_minkowski, solve_report_to_json, steiner_point, steiner_point_exact, suite_operators,
    suite_report_to_json, zonotope_to_json, zonotope_to_polytope, DirectionGrid,
    DiscreteSphereMeasure, GeomError, KernelPair, OperatorHandle, Pi1Operator, Polytope,
    PreparedSupport, SolverConfig, SuiteConfig, Vector,
};
use serde::Deserialize;

#[derive(Parser)]
#[command(
    name = "minkval",
    version,
    about = "Convex-geometry toolkit: projection bodies, Steiner points, Minkowski \
             solves, kernel homomorphisms, homogeneous decompositions, and an \
             operator verification suite",
    propagate_version = true
)]
struct Cli {
    /// TOML configuration file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Number of worker threads (0 = one per core).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convex hull of a body file: canonicalize vertices, recompute facets.
    Hull(HullArgs),
    /// Evaluate the support function h(P, u) of a body in one direction.
    Support(SupportArgs),
    /// Projection body of a polytope, as a zonotope or a realized polytope.
    ProjectBody(ProjectBodyArgs),
    /// Steiner point of a polytope.
    Steiner(SteinerArgs),
    /// First-order projection body in dimension 3: support values or a table.
    Pi1(Pi1Args),
    /// Apply the Blaschke-Minkowski homomorphism defined by a kernel file.
    Bmh(BmhArgs),
    /// Reconstruct a polytope from a prescribed surface-area measure.
    MinkowskiSolve(MinkowskiSolveArgs),
    /// Blaschke sum of two polytopes of the same dimension.
    BlaschkeSum(BlaschkeSumArgs),
    /// Degree-by-degree homogeneous decomposition of an operator at a body.
    Decompose(DecomposeArgs),
    /// Run the operator verification suite and report per-axiom residuals.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct HullArgs {
    /// Body file (.json, or .off in dimension 3).
    input: PathBuf,
    /// Output path (.json, or .off in dimension 3); stdout JSON when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SupportArgs {
    /// Body file (.json, or .off in dimension 3).
    input: PathBuf,
    /// Direction as comma-separated coordinates, e.g. `-u 1,0,-2`.
    #[arg(
        short = 'u',
        long = "direction",
        value_name = "X,Y,..",
        allow_hyphen_values = true
    )]
    direction: String,
}

#[derive(Args)]
struct ProjectBodyArgs {
    /// Body file (.json, or .off in dimension 3).
    input: PathBuf,
    /// Realize the zonotope as a vertex/facet polytope instead.
    #[arg(long)]
    as_polytope: bool,
    /// Output path; stdout when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SteinerArgs {
    /// Body file (.json, or .off in dimension 3).
    input: PathBuf,
    /// Quadrature resolution; the exact facet formula is used when omitted.
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Pi1Args {
    /// Body file (.json or .off), dimension 3 only.
    input: PathBuf,
    /// Single direction; prints one support value instead of a table.
    #[arg(
        short = 'u',
        long = "direction",
        value_name = "X,Y,Z",
        allow_hyphen_values = true
    )]
    direction: Option<String>,
    /// Sampling resolution for the support table (ignored with -u).
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BmhArgs {
    /// Kernel pair JSON file.
    #[arg(long, value_name = "FILE")]
    kernel: PathBuf,
    /// Body file (.json or .off), dimension 3 only.
    input: PathBuf,
    /// Single direction; prints one support value instead of a table.
    #[arg(
        short = 'u',
        long = "direction",
        value_name = "X,Y,Z",
        allow_hyphen_values = true
    )]
    direction: Option<String>,
    /// Sampling resolution for the support table (ignored with -u).
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MinkowskiSolveArgs {
    /// Measure JSON file.
    #[arg(value_name = "MEASURE")]
    input: Option<PathBuf>,
    /// Measure JSON file (alternative to the positional argument).
    #[arg(long, value_name = "FILE")]
    measure: Option<PathBuf>,
    /// Convergence target for the largest relative facet-area residual.
    #[arg(long, value_name = "T")]
    tol: Option<f64>,
    /// Newton iteration cap per attempt.
    #[arg(long, value_name = "K")]
    max_iter: Option<usize>,
    /// Output path for the solve report; stdout when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BlaschkeSumArgs {
    /// First summand (.json or .off).
    a: PathBuf,
    /// Second summand (.json or .off).
    b: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Operator spec: pi | i | neg_i | composite(c1,c2,c3) | ...
    #[arg(long, value_name = "SPEC")]
    operator: String,
    /// Body file (.json or .off).
    #[arg(long, value_name = "FILE")]
    body: PathBuf,
    /// Direction-grid resolution for sampling the components.
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Output path for the decomposition report; stdout when omitted.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Operator suite to run.
    #[arg(long, default_value = "default", value_parser = ["default", "quick", "broken"])]
    suite: String,
    /// Master seed for the deterministic trial streams.
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    /// Write the JSON report here and print a summary; stdout JSON when omitted.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Refinement factor applied to the residual direction grids.
    #[arg(long, value_name = "F")]
    grid_factor: Option<usize>,
    /// Trials for the valuation axiom.
    #[arg(long, value_name = "N")]
    trials_valuation: Option<usize>,
    /// Trials for translation invariance.
    #[arg(long, value_name = "N")]
    trials_translation: Option<usize>,
    /// Trials for rotation equivariance.
    #[arg(long, value_name = "N")]
    trials_rotation: Option<usize>,
    /// Trials for the claimed homogeneity degree.
    #[arg(long, value_name = "N")]
    trials_homogeneity: Option<usize>,
    /// Trials for the polytope-output check.
    #[arg(long, value_name = "N")]
    trials_polytopal: Option<usize>,
    /// Residual tolerance for the valuation axiom.
    #[arg(long, value_name = "T")]
    tol_valuation: Option<f64>,
    /// Residual tolerance for translation invariance.
    #[arg(long, value_name = "T")]
    tol_translation: Option<f64>,
    /// Residual tolerance for rotation equivariance.
    #[arg(long, value_name = "T")]
    tol_rotation: Option<f64>,
    /// Residual tolerance for homogeneity.
    #[arg(long, value_name = "T")]
    tol_homogeneity: Option<f64>,
    /// Residual tolerance for the polytope-output reconstruction.
    #[arg(long, value_name = "T")]
    tol_polytopal: Option<f64>,
}

/// Values read from the `--config` TOML file. Every field is optional;
/// unknown keys are rejected so typos surface as errors instead of silently
/// falling back to defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    threads: Option<usize>,
    #[serde(default)]
    grid: GridSection,
    #[serde(default)]
    solve: SolveSection,
    #[serde(default)]
    verify: VerifySection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSection {
    resolution: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolveSection {
    tol: Option<f64>,
    max_iter: Option<usize>,
    damping: Option<f64>,
    regularization: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifySection {
    seed: Option<u64>,
    grid_factor: Option<usize>,
    trials_valuation: Option<usize>,
    trials_translation: Option<usize>,
    trials_rotation: Option<usize>,
    trials_homogeneity: Option<usize>,
    trials_polytopal: Option<usize>,
    tol_valuation: Option<f64>,
    tol_translation: Option<f64>,
    tol_rotation: Option<f64>,
    tol_homogeneity: Option<f64>,
    tol_polytopal: Option<f64>,
}

/// A failure with the exit code it maps to. Usage errors not caught by the
/// argument parser exit 2 like the parser's own; input and numeric failures
/// follow the documented 3/4 split; unwritable output exits 1.
enum CliError {
    Usage(String),
    Input(String),
    Numeric(String),
    Output(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Numeric(m) | CliError::Output(m) => {
                f.write_str(m)
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Output(_) => 1,
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::NoConvergence(_) | GeomError::NotSupportFunction { .. } => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let cfg = load_config(cli.config.as_deref())?;
    if let Some(n) = cli.threads.or(cfg.threads) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))?;
    }
    match cli.command {
        Command::Hull(a) => cmd_hull(a),
        Command::Support(a) => cmd_support(a),
        Command::ProjectBody(a) => cmd_project_body(a),
        Command::Steiner(a) => cmd_steiner(a),
        Command::Pi1(a) => cmd_pi1(a, &cfg),
        Command::Bmh(a) => cmd_bmh(a, &cfg),
        Command::MinkowskiSolve(a) => cmd_minkowski_solve(a, &cfg),
        Command::BlaschkeSum(a) => cmd_blaschke_sum(a),
        Command::Decompose(a) => cmd_decompose(a, &cfg),
        Command::Verify(a) => cmd_verify(a, &cfg),
    }
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = read_text(path)?;
    toml::from_str(&text).map_err(|e| {
        let msg = e.to_string();
        let first = msg.lines().next().unwrap_or("invalid TOML");
        CliError::Input(format!("config {}: {first}", path.display()))
    })
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case(ext))
}

fn read_body(path: &Path) -> Result<Polytope, CliError> {
    let text = read_text(path)?;
    let body = if has_extension(path, "off") {
        polytope_from_off(&text)
    } else {
        polytope_from_json(&text)
    };
    body.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_measure(path: &Path) -> Result<DiscreteSphereMeasure, CliError> {
    let text = read_text(path)?;
    measure_from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_kernel(path: &Path) -> Result<KernelPair, CliError> {
    let text = read_text(path)?;
    kernel_pair_from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes `text` (plus a single trailing newline) to `output`, or to stdout.
fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    match output {
        None => {
            println!("{body}");
            Ok(())
        }
        Some(path) => fs::write(path, format!("{body}\n"))
            .map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display()))),
    }
}

/// No subcommand may modify its inputs, so writing a result over an input
/// file is refused rather than silently clobbering it.
fn ensure_not_input(output: Option<&Path>, inputs: &[&Path]) -> Result<(), CliError> {
    let Some(out) = output else { return Ok(()) };
    let Ok(out_canon) = fs::canonicalize(out) else {
        return Ok(()); // output does not exist yet, cannot alias an input
    };
    for input in inputs {
        if fs::canonicalize(input).is_ok_and(|i| i == out_canon) {
            return Err(CliError::Input(format!(
                "output {} would overwrite an input file",
                out.display()
            )));
        }
    }
    Ok(())
}

fn parse_direction(spec: &str, ambient: usize) -> Result<Vector, CliError> {
    let coords: Vec<f64> = spec
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("direction '{spec}': {e}")))?;
    if coords.len() != ambient {
        return Err(CliError::Input(format!(
            "direction '{spec}' has {} coordinates, body is {ambient}-dimensional",
            coords.len()
        )));
    }
    Vector::new(&coords).map_err(|e| CliError::Input(format!("direction '{spec}': {e}")))
}

/// Builds the sampling grid at resolution `n`: polar/azimuth counts `n`/`2n`
/// on the 2-sphere and `n`/`n`/`2n` on the 3-sphere.
fn resolution_grid(ambient: usize, n: usize) -> Result<DirectionGrid, CliError> {
    let grid = match ambient {
        3 => DirectionGrid::s2(n, 2 * n),
        4 => DirectionGrid::s3(n, n, 2 * n),
        d => {
            return Err(CliError::Input(format!(
                "no direction grid in dimension {d}"
            )))
        }
    };
    grid.map_err(CliError::from)
}

fn pick_resolution(flag: Option<usize>, cfg: &FileConfig, ambient: usize) -> usize {
    flag.or(cfg.grid.resolution)
        .unwrap_or(if ambient == 3 { 12 } else { 8 })
}

/// Renders a polytope as OFF when the output path ends in `.off`, JSON
/// otherwise (including stdout).
fn render_polytope(p: &Polytope, output: Option<&Path>) -> Result<String, CliError> {
    if output.is_some_and(|o| has_extension(o, "off")) {
        polytope_to_off(p).map_err(CliError::from)
    } else {
        Ok(polytope_to_json(p))
    }
}

fn push_vector_json(out: &mut String, v: &Vector) {
    out.push('[');
    for (i, c) in v.coords().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&fmt_float(*c));
    }
    out.push(']');
}

/// Support values of a prepared body over a grid, as deterministic JSON.
fn support_table(prepared: &PreparedSupport, ambient: usize, grid: &DirectionGrid) -> String {
    let mut out = format!("{{\"dim\":{ambient},\"samples\":[");
    for (i, u) in grid.directions().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"u\":");
        push_vector_json(&mut out, u);
        out.push_str(",\"h\":");
        out.push_str(&fmt_float(prepared.support(u)));
        out.push('}');
    }
    out.push_str("]}");
    out
}

/// Shared tail of `pi1` and `bmh`: one support value with `-u`, a sampled
/// table otherwise.
fn emit_prepared(
    prepared: &PreparedSupport,
    body: &Polytope,
    direction: Option<&str>,
    grid_flag: Option<usize>,
    output: Option<&Path>,
    cfg: &FileConfig,
) -> Result<ExitCode, CliError> {
    match direction {
        Some(spec) => {
            let u = parse_direction(spec, body.ambient())?;
            emit(output, &fmt_float(prepared.support(&u)))?;
        }
        None => {
            let n = pick_resolution(grid_flag, cfg, body.ambient());
            let grid = resolution_grid(body.ambient(), n)?;
            emit(output, &support_table(prepared, body.ambient(), &grid))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hull(a: HullArgs) -> Result<ExitCode, CliError> {
    let body = read_body(&a.input)?;
    ensure_not_input(a.output.as_deref(), &[&a.input])?;
    let text = render_polytope(&body, a.output.as_deref())?;
    emit(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_support(a: SupportArgs) -> Result<ExitCode, CliError> {
    let body = read_body(&a.input)?;
    let u = parse_direction(&a.direction, body.ambient())?;
    println!("{}", fmt_float(body.support(&u)));
    Ok(ExitCode::SUCCESS)
}

fn cmd_project_body(a: ProjectBodyArgs) -> Result<ExitCode, CliError> {
    let body = read_body(&a.input)?;
    ensure_not_input(a.output.as_deref(), &[&a.input])?;
    let zonotope = projection_body(&body)?;
    let text = if a.as_polytope {
        render_polytope(&zonotope_to_polytope(&zonotope)?, a.output.as_deref())?
    } else {
        if a.output.as_deref().is_some_and(|o| has_extension(o, "off")) {
            return Err(CliError::Usage("OFF output requires --as-polytope".into()));
        }
        zonotope_to_json(&zonotope)
    };
    emit(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_steiner(a: SteinerArgs) -> Result<ExitCode, CliError> {
    let body = read_body(&a.input)?;
    ensure_not_input(a.output.as_deref(), &[&a.input])?;
    let point = match a.grid {
        None => steiner_point_exact(&body)?,
        Some(n) => steiner_point(&body, &resolution_grid(body.ambient(), n)?)?,
    };
    let mut text = format!("{{\"dim\":{},\"point\":", body.ambient());
    push_vector_json(&mut text, &point);
    text.push('}');
    emit(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_pi1(a: Pi1Args, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let body = read_body(&a.input)?;
    ensure_not_input(a.output.as_deref(), &[&a.input])?;
    let prepared = Pi1Operator.prepare(&body)?;
    emit_prepared(
        &prepared,
        &body,
        a.direction.as_deref(),
        a.grid,
        a.output.as_deref(),
        cfg,
    )
}

fn cmd_bmh(a: BmhArgs, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let kernel = read_kernel(&a.kernel)?;
    let body = read_body(&a.input)?;
    ensure_not_input(a.output.as_deref(), &[&a.kernel, &a.input])?;
    let prepared = bm_homomorphism(kernel).prepare(&body)?;
    emit_prepared(
        &prepared,
        &body,
        a.direction.as_deref(),
        a.grid,
        a.output.as_deref(),
        cfg,
    )
}

fn cmd_minkowski_solve(a: MinkowskiSolveArgs, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let path = match (&a.input, &a.measure) {
        (Some(p), None) => p.clone(),
        (None, Some(m)) => m.clone(),
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "pass the measure either positionally or with --measure, not both".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("no measure file given".into())),
    };
    let measure = read_measure(&path)?;
    ensure_not_input(a.output.as_deref(), &[&path])?;

    let mut solver_cfg = SolverConfig::default();
    if let Some(t) = cfg.solve.tol {
        solver_cfg.tol_area = t;
    }
    if let Some(k) = cfg.solve.max_iter {
        solver_cfg.max_iter = k;
    }
    if let Some(d) = cfg.solve.damping {
        solver_cfg.damping = d;
    }
    if let Some(r) = cfg.solve.regularization {
        solver_cfg.regularization = r;
    }
    if let Some(t) = a.tol {
        solver_cfg.tol_area = t;
    }
    if let Some(k) = a.max_iter {
        solver_cfg.max_iter = k;
    }

    let report = solve_minkowski(&measure, &solver_cfg)?;
    emit(a.output.as_deref(), &solve_report_to_json(&report))?;
    if report.converged {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "error: solver stopped after {} iterations at residual {:.3e}; report written",
            report.iterations, report.final_residual
        );
        Ok(ExitCode::from(4))
    }
}

fn cmd_blaschke_sum(a: BlaschkeSumArgs) -> Result<ExitCode, CliError> {
    let p = read_body(&a.a)?;
    let q = read_body(&a.b)?;
    ensure_not_input(a.output.as_deref(), &[&a.a, &a.b])?;
    let sum = blaschke_sum(&p, &q)?;
    let text = render_polytope(&sum, a.output.as_deref())?;
    emit(a.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(a: DecomposeArgs, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let op = operator_by_name(&a.operator)?;
    let body = read_body(&a.body)?;
    ensure_not_input(a.output.as_deref(), &[&a.body])?;
    let n = pick_resolution(a.grid, cfg, body.ambient());
    let grid = resolution_grid(body.ambient(), n)?;
    let report = decompose(op.as_ref(), &body, &grid)?;
    emit(a.output.as_deref(), &decomposition_report_to_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs, cfg: &FileConfig) -> Result<ExitCode, CliError> {
    let mut suite_cfg = SuiteConfig::default();
    let v = &cfg.verify;
    if let Some(x) = v.seed {
        suite_cfg.seed = x;
    }
    if let Some(x) = v.grid_factor {
        suite_cfg.grid_factor = x;
    }
    if let Some(x) = v.trials_valuation {
        suite_cfg.trials_valuation = x;
    }
    if let Some(x) = v.trials_translation {
        suite_cfg.trials_translation = x;
    }
    if let Some(x) = v.trials_rotation {
        suite_cfg.trials_rotation = x;
    }
    if let Some(x) = v.trials_homogeneity {
        suite_cfg.trials_homogeneity = x;
    }
    if let Some(x) = v.trials_polytopal {
        suite_cfg.trials_polytopal = x;
    }
    if let Some(x) = v.tol_valuation {
        suite_cfg.tol_valuation = x;
    }
    if let Some(x) = v.tol_translation {
        suite_cfg.tol_translation = x;
    }
    if let Some(x) = v.tol_rotation {
        suite_cfg.tol_rotation = x;
    }
    if let Some(x) = v.tol_homogeneity {
        suite_cfg.tol_homogeneity = x;
    }
    if let Some(x) = v.tol_polytopal {
        suite_cfg.tol_polytopal = x;
    }
    if let Some(x) = a.seed {
        suite_cfg.seed = x;
    }
    if let Some(x) = a.grid_factor {
        suite_cfg.grid_factor = x;
    }
    if let Some(x) = a.trials_valuation {
        suite_cfg.trials_valuation = x;
    }
    if let Some(x) = a.trials_translation {
        suite_cfg.trials_translation = x;
    }
    if let Some(x) = a.trials_rotation {
        suite_cfg.trials_rotation = x;
    }
    if let Some(x) = a.trials_homogeneity {
        suite_cfg.trials_homogeneity = x;
    }
    if let Some(x) = a.trials_polytopal {
        suite_cfg.trials_polytopal = x;
    }
    if let Some(x) = a.tol_valuation {
        suite_cfg.tol_valuation = x;
    }
    if let Some(x) = a.tol_translation {
        suite_cfg.tol_translation = x;
    }
    if let Some(x) = a.tol_rotation {
        suite_cfg.tol_rotation = x;
    }
    if let Some(x) = a.tol_homogeneity {
        suite_cfg.tol_homogeneity = x;
    }
    if let Some(x) = a.tol_polytopal {
        suite_cfg.tol_polytopal = x;
    }

    let operators = suite_operators(&a.suite)?;
    let report = run_suite(&operators, &suite_cfg)?;
    let text = suite_report_to_json(&report);
    match &a.json {
        Some(path) => {
            emit(Some(path), &text)?;
            for op in &report.reports {
                println!("{} {}", if op.passed() { "pass" } else { "FAIL" }, op.operator);
            }
            println!(
                "suite '{}' seed {}: {}/{} operators passed, {} failing trials; report written to {}",
                a.suite,
                suite_cfg.seed,
                report.reports.iter().filter(|r| r.passed()).count(),
                report.reports.len(),
                report.total_failures(),
                path.display(),
            );
        }
        None => emit(None, &text)?,
    }
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "error: verification found {} failing trials",
            report.total_failures()
        );
        Ok(ExitCode::from(1))
    }
}
