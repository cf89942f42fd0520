//! Property-fuzzing harness: drives operator handles through randomized
//! axiom checks — the valuation identity under hyperplane splits,
//! translation invariance, rotation equivariance, dilation homogeneity, and
//! polytopal-output detection — with replayable per-trial seeds.  Trials
//! run in parallel, but every trial derives its seed from the suite seed
//! and its own index, so parallel and serial runs report identically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GeomError, GeomResult};
use crate::geom::random::gaussian_vector;
use crate::geom::{
    random_polytope, random_rotation, split_by_hyperplane, DirectionGrid, Polytope, Vector,
};
use crate::operators::{
    composite_operator, OperatorHandle, PreparedSupport, ProjectionBodyOperator, TrivialOperator,
};

/// Tuning for a harness run: the master seed, per-axiom trial counts and
/// tolerances, and the resolution factor applied to the residual grids.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Master seed; every trial seed is derived from it deterministically.
    pub seed: u64,
    pub trials_valuation: usize,
    pub trials_translation: usize,
    pub trials_rotation: usize,
    pub trials_homogeneity: usize,
    pub trials_polytopal: usize,
    /// Residual grids are the default ones refined by this factor.
    pub grid_factor: usize,
    pub tol_valuation: f64,
    pub tol_translation: f64,
    pub tol_rotation: f64,
    pub tol_homogeneity: f64,
    /// Relative support-reconstruction tolerance for the polytopal check.
    pub tol_polytopal: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            trials_valuation: 100,
            trials_translation: 50,
            trials_rotation: 50,
            trials_homogeneity: 50,
            trials_polytopal: 12,
            grid_factor: 1,
            tol_valuation: 1e-8,
            tol_translation: 1e-8,
            tol_rotation: 1e-8,
            tol_homogeneity: 1e-8,
            tol_polytopal: 1e-5,
        }
    }
}

impl SuiteConfig {
    /// A cheaper profile for smoke runs: fewer trials, same tolerances.
    pub fn quick() -> Self {
        SuiteConfig {
            trials_valuation: 20,
            trials_translation: 10,
            trials_rotation: 10,
            trials_homogeneity: 10,
            trials_polytopal: 4,
            ..SuiteConfig::default()
        }
    }

    fn validate(&self) -> GeomResult<()> {
        let counts = [
            self.trials_valuation,
            self.trials_translation,
            self.trials_rotation,
            self.trials_homogeneity,
            self.trials_polytopal,
        ];
        if counts.iter().any(|&c| c == 0) {
            return Err(GeomError::InvalidParameter(
                "suite trial counts must be positive".into(),
            ));
        }
        if self.grid_factor == 0 {
            return Err(GeomError::InvalidParameter(
                "grid factor must be positive".into(),
            ));
        }
        let tols = [
            self.tol_valuation,
            self.tol_translation,
            self.tol_rotation,
            self.tol_homogeneity,
            self.tol_polytopal,
        ];
        if tols.iter().any(|t| !t.is_finite() || *t <= 0.0) {
            return Err(GeomError::InvalidParameter(
                "suite tolerances must be positive and finite".into(),
            ));
        }
        Ok(())
    }

    fn grid(&self, dim: usize) -> GeomResult<DirectionGrid> {
        let base = DirectionGrid::default_residual(dim)?;
        if self.grid_factor > 1 {
            base.refined(self.grid_factor)
        } else {
            Ok(base)
        }
    }
}

/// One trial whose residual exceeded the axiom tolerance; `seed` replays it.
#[derive(Clone, Debug)]
pub struct TrialFailure {
    pub seed: u64,
    pub residual: f64,
}

/// Outcome of one axiom check on one operator.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axiom: String,
    pub operator: String,
    pub trials: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub failures: Vec<TrialFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All axiom reports for one operator.
#[derive(Clone, Debug)]
pub struct OperatorReport {
    pub operator: String,
    pub axioms: Vec<AxiomReport>,
}

impl OperatorReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(AxiomReport::passed)
    }
}

/// The full suite outcome: one report per operator, in input order.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub seed: u64,
    pub reports: Vec<OperatorReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(OperatorReport::passed)
    }

    pub fn total_failures(&self) -> usize {
        self.reports
            .iter()
            .flat_map(|r| &r.axioms)
            .map(|a| a.failures.len())
            .sum()
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xCBF29CE484222325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001B3);
    }
    h
}

/// Deterministic per-axiom, per-operator stream base.
fn axiom_seed(master: u64, axiom: &str, operator: &str) -> u64 {
    splitmix64(master ^ fnv1a(axiom) ^ fnv1a(operator).rotate_left(17))
}

/// Runs `trials` independent trials in parallel with derived seeds and
/// folds them into a report; a trial returning `Err` aborts the check.
fn run_trials<F>(
    axiom: &str,
    operator: &str,
    trials: usize,
    tolerance: f64,
    base_seed: u64,
    trial: F,
) -> GeomResult<AxiomReport>
where
    F: Fn(u64) -> GeomResult<f64> + Sync,
{
    let results: Vec<(u64, f64)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let seed = splitmix64(base_seed ^ (k as u64).wrapping_mul(0xA24BAED4963EE407));
            trial(seed).map(|r| (seed, r))
        })
        .collect::<GeomResult<Vec<_>>>()?;
    let max_residual = results.iter().fold(0.0f64, |a, &(_, r)| a.max(r));
    let failures = results
        .iter()
        .filter(|(_, r)| *r > tolerance)
        .map(|&(seed, residual)| TrialFailure { seed, residual })
        .collect();
    Ok(AxiomReport {
        axiom: axiom.into(),
        operator: operator.into(),
        trials,
        tolerance,
        max_residual,
        failures,
    })
}

/// Dimension alternates 3, 4, 3, 4, … along the trial stream; vertex
/// counts stay small in R⁴ where hulls are pricier.
fn trial_polytope(rng: &mut ChaCha8Rng, seed: u64) -> GeomResult<(Polytope, usize)> {
    let n = if seed & 1 == 0 { 3 } else { 4 };
    let verts = if n == 3 {
        rng.gen_range(8..=14)
    } else {
        rng.gen_range(6..=9)
    };
    let p = random_polytope(rng.gen(), n, verts)?;
    Ok((p, n))
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> GeomResult<Vector> {
    for _ in 0..32 {
        let v = gaussian_vector(rng, n);
        if v.norm() > 1e-6 {
            return v.normalized();
        }
    }
    Err(GeomError::Degenerate(
        "random direction degenerated repeatedly".into(),
    ))
}

/// Checks the valuation identity
/// `h(ΦK, ·) + h(ΦM, ·) = h(ΦP, ·) + h(Φ(K∩M), ·)` for random bodies `P`
/// split by hyperplanes through the centroid (± jitter, so both parts stay
/// full-dimensional; degenerate draws are resampled).
pub fn check_valuation(
    op: &dyn OperatorHandle,
    trials: usize,
    cfg: &SuiteConfig,
) -> GeomResult<AxiomReport> {
    cfg.validate()?;
    run_trials(
        "valuation",
        &op.name(),
        trials,
        cfg.tol_valuation,
        axiom_seed(cfg.seed, "valuation", &op.name()),
        |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (p, n) = trial_polytope(&mut rng, seed)?;
            let grid = cfg.grid(n)?;
            let centroid = p.vertex_centroid();
            let hp = op.prepare(&p)?;
            for _ in 0..24 {
                let a = random_unit(&mut rng, n)?;
                let width = p.support(&a) + p.support(&-a);
                let jitter = 0.3 * (rng.gen::<f64>() - 0.5) * width;
                let c = a.dot(&centroid) + jitter;
                let Ok((k, m, slice)) = split_by_hyperplane(&p, &a, c) else {
                    continue;
                };
                if k.dim() != n || m.dim() != n {
                    continue;
                }
                let hk = op.prepare(&k)?;
                let hm = op.prepare(&m)?;
                let hs = op.prepare(&slice)?;
                let residual = grid
                    .directions()
                    .iter()
                    .map(|u| {
                        (hk.support(u) + hm.support(u) - hp.support(u) - hs.support(u)).abs()
                    })
                    .fold(0.0f64, f64::max);
                return Ok(residual);
            }
            Err(GeomError::Degenerate(
                "no nondegenerate split found for valuation trial".into(),
            ))
        },
    )
}

/// Checks `h(Φ(P + t), ·) = h(ΦP, ·)` for random translations `t`.
pub fn check_translation_invariance(
    op: &dyn OperatorHandle,
    trials: usize,
    cfg: &SuiteConfig,
) -> GeomResult<AxiomReport> {
    cfg.validate()?;
    run_trials(
        "translation-invariance",
        &op.name(),
        trials,
        cfg.tol_translation,
        axiom_seed(cfg.seed, "translation-invariance", &op.name()),
        |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (p, n) = trial_polytope(&mut rng, seed)?;
            let grid = cfg.grid(n)?;
            let t = gaussian_vector(&mut rng, n) * 2.0;
            let moved = p.translate(&t);
            let base = op.prepare(&p)?;
            let shifted = op.prepare(&moved)?;
            Ok(grid
                .directions()
                .iter()
                .map(|u| (shifted.support(u) - base.support(u)).abs())
                .fold(0.0f64, f64::max))
        },
    )
}

/// Checks `h(Φ(θP), u) = h(ΦP, θ⁻¹u)` for random rotations `θ`.
pub fn check_rotation_equivariance(
    op: &dyn OperatorHandle,
    trials: usize,
    cfg: &SuiteConfig,
) -> GeomResult<AxiomReport> {
    cfg.validate()?;
    run_trials(
        "rotation-equivariance",
        &op.name(),
        trials,
        cfg.tol_rotation,
        axiom_seed(cfg.seed, "rotation-equivariance", &op.name()),
        |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (p, n) = trial_polytope(&mut rng, seed)?;
            let grid = cfg.grid(n)?;
            let rot = random_rotation(rng.gen(), n)?;
            let inv = rot.inverse();
            let turned = p.apply_rotation(&rot);
            let base = op.prepare(&p)?;
            let image = op.prepare(&turned)?;
            Ok(grid
                .directions()
                .iter()
                .map(|u| (image.support(u) - base.support(&inv.apply(u))).abs())
                .fold(0.0f64, f64::max))
        },
    )
}

/// Checks `h(Φ(λP), ·) = λᵈ h(ΦP, ·)` for random dilations
/// `λ ∈ [0.1, 10]` in the given ambient dimension.  The residual is
/// normalized by `λᵈ` so large dilations do not inflate roundoff into
/// spurious failures.
pub fn check_homogeneity(
    op: &dyn OperatorHandle,
    degree: f64,
    ambient: usize,
    trials: usize,
    cfg: &SuiteConfig,
) -> GeomResult<AxiomReport> {
    cfg.validate()?;
    if !degree.is_finite() || degree < 0.0 || degree > ambient as f64 {
        return Err(GeomError::InvalidParameter(format!(
            "claimed homogeneity degree {degree} outside 0..={ambient}"
        )));
    }
    let axiom = format!("homogeneity(d={degree},n={ambient})");
    run_trials(
        &axiom,
        &op.name(),
        trials,
        cfg.tol_homogeneity,
        axiom_seed(cfg.seed, &axiom, &op.name()),
        |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let verts = if ambient == 3 {
                rng.gen_range(8..=14)
            } else {
                rng.gen_range(6..=9)
            };
            let p = random_polytope(rng.gen(), ambient, verts)?;
            let grid = cfg.grid(ambient)?;
            let lambda = 10f64.powf(rng.gen_range(-1.0..=1.0));
            let scaled = p.scale(lambda)?;
            let base = op.prepare(&p)?;
            let dilated = op.prepare(&scaled)?;
            let factor = lambda.powf(degree);
            Ok(grid
                .directions()
                .iter()
                .map(|u| (dilated.support(u) - factor * base.support(u)).abs() / factor)
                .fold(0.0f64, f64::max))
        },
    )
}

/// Support point of a one-homogeneous oracle at unit direction `u` by
/// central differences in the tangent directions, or `None` at detected
/// kinks (where one-sided slopes disagree and the gradient is not a single
/// point).
#[derive(Clone, Copy, PartialEq, Eq)]
enum DirClass {
    /// Second differences at roundoff level: `h` is linear near `u`.
    Flat,
    /// Second differences at curvature level `O(eps²)`: smooth but bent.
    Curved,
    /// Second differences at slope-jump level `O(eps)`: a kink crosses the
    /// finite-difference stencil, so the gradient there is unreliable.
    Kink,
}

/// Classifies the support oracle near unit direction `u` and recovers the
/// exposed point `∇h(u)` by central differences in the tangent directions.
fn probe_direction(
    f: &PreparedSupport,
    u: &Vector,
    scale: f64,
    eps: f64,
) -> (DirClass, Vector) {
    let basis = crate::geom::complement_basis(u);
    let h0 = f.support(u);
    let mut x = *u * h0;
    let mut max_d2 = 0.0f64;
    for b in &basis {
        let hp = f.support(&(*u + *b * eps));
        let hm = f.support(&(*u - *b * eps));
        max_d2 = max_d2.max((hp + hm - 2.0 * h0).abs());
        x += *b * ((hp - hm) / (2.0 * eps));
    }
    let class = if max_d2 <= 1e-12 * scale {
        DirClass::Flat
    } else if max_d2 > 1e-3 * eps * scale {
        DirClass::Kink
    } else {
        DirClass::Curved
    };
    (class, x)
}

/// Greedy first-fit clustering of support points; returns representatives.
fn cluster(points: &[Vector], tol: f64) -> Vec<Vector> {
    let mut reps: Vec<Vector> = Vec::new();
    for p in points {
        if !reps.iter().any(|r| r.dist(p) <= tol) {
            reps.push(*p);
        }
    }
    reps
}

/// Decides whether operator outputs behave like polytopes, i.e. whether the
/// output support functions are piecewise linear.  Three signals combine:
///
/// 1. **Local linearity** — at ≥ 90 % of grid directions the tangential
///    second differences must sit at roundoff level.  A smooth body bends
///    everywhere (second differences at curvature level `O(eps²·scale)`,
///    two orders above roundoff), so it fails outright.
/// 2. **Discovery saturation** — exposed points recovered from support
///    gradients must stop appearing as the grid refines: at most 0.2 new
///    points per additional direction.  A ball yields one fresh point per
///    direction at every resolution.
/// 3. **Reconstruction** — the exposed points harvested at the finer level
///    must reproduce the measured supports (relative error, kink-flagged
///    directions excluded since their gradients are unreliable).
///
/// Structural failures (1) and (2) are reported as a unit residual;
/// otherwise the residual is the reconstruction error from (3).
pub fn check_polytope_output(
    op: &dyn OperatorHandle,
    trials: usize,
    refinements: (usize, usize),
    cfg: &SuiteConfig,
) -> GeomResult<AxiomReport> {
    cfg.validate()?;
    let (r1, r2) = refinements;
    if r1 == 0 || r2 <= r1 {
        return Err(GeomError::InvalidParameter(
            "polytopal check needs increasing positive refinement levels".into(),
        ));
    }
    run_trials(
        "polytopal-output",
        &op.name(),
        trials,
        cfg.tol_polytopal,
        axiom_seed(cfg.seed, "polytopal-output", &op.name()),
        |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Small source bodies keep the piece count of honest outputs
            // well under the grid size so saturation is observable.
            let n = if seed & 1 == 0 { 3 } else { 4 };
            let verts = if n == 3 {
                rng.gen_range(5..=8)
            } else {
                rng.gen_range(5..=6)
            };
            let p = random_polytope(rng.gen(), n, verts)?;
            let oracle = op.prepare(&p)?;
            let base = DirectionGrid::default_residual(n)?;
            let scale = base
                .directions()
                .iter()
                .map(|u| oracle.support(u).abs())
                .fold(1.0f64, f64::max);
            let eps = 1e-5;
            let mut counts = [0usize; 2];
            let mut harvested = [0usize; 2];
            let mut flat_ok = [false; 2];
            let mut recon = [0.0f64; 2];
            for (slot, r) in [r1, r2].into_iter().enumerate() {
                let grid = if r > 1 { base.refined(r)? } else { base.clone() };
                let probes: Vec<(DirClass, Vector)> = grid
                    .directions()
                    .par_iter()
                    .map(|u| probe_direction(&oracle, u, scale, eps))
                    .collect();
                let flat = probes
                    .iter()
                    .filter(|(c, _)| *c == DirClass::Flat)
                    .count();
                flat_ok[slot] = 10 * flat >= 9 * probes.len();
                let pts: Vec<Vector> = probes
                    .iter()
                    .filter(|(c, _)| *c != DirClass::Kink)
                    .map(|(_, x)| *x)
                    .collect();
                harvested[slot] = pts.len();
                let reps = cluster(&pts, 1e-6 * scale);
                counts[slot] = reps.len();
                recon[slot] = grid
                    .directions()
                    .iter()
                    .zip(&probes)
                    .filter(|(_, (c, _))| *c != DirClass::Kink)
                    .map(|(u, _)| {
                        let best = reps
                            .iter()
                            .map(|v| v.dot(u))
                            .fold(f64::NEG_INFINITY, f64::max);
                        (oracle.support(u) - best).abs() / scale
                    })
                    .fold(0.0f64, f64::max);
            }
            if !flat_ok[0] || !flat_ok[1] {
                return Ok(1.0);
            }
            let new_points = counts[1].saturating_sub(counts[0]) as f64;
            let new_dirs = harvested[1].saturating_sub(harvested[0]).max(1) as f64;
            if new_points / new_dirs > 0.2 {
                return Ok(1.0);
            }
            Ok(recon[1])
        },
    )
}

/// Runs every applicable axiom check for each operator: the valuation
/// identity and polytopal-output always, the remaining axioms whenever the
/// handle claims them.  Deterministic for a fixed config.
pub fn run_suite(
    operators: &[Box<dyn OperatorHandle>],
    cfg: &SuiteConfig,
) -> GeomResult<SuiteReport> {
    cfg.validate()?;
    let reports = operators
        .iter()
        .map(|op| {
            let mut axioms = Vec::new();
            axioms.push(check_valuation(op.as_ref(), cfg.trials_valuation, cfg)?);
            if op.translation_invariant() {
                axioms.push(check_translation_invariance(
                    op.as_ref(),
                    cfg.trials_translation,
                    cfg,
                )?);
            }
            if op.rotation_equivariant() {
                axioms.push(check_rotation_equivariance(
                    op.as_ref(),
                    cfg.trials_rotation,
                    cfg,
                )?);
            }
            for ambient in [3usize, 4] {
                if let Some(d) = op.homogeneity_degree(ambient) {
                    axioms.push(check_homogeneity(
                        op.as_ref(),
                        d,
                        ambient,
                        cfg.trials_homogeneity,
                        cfg,
                    )?);
                }
            }
            axioms.push(check_polytope_output(
                op.as_ref(),
                cfg.trials_polytopal,
                (1, 2),
                cfg,
            )?);
            Ok(OperatorReport {
                operator: op.name(),
                axioms,
            })
        })
        .collect::<GeomResult<Vec<_>>>()?;
    Ok(SuiteReport {
        seed: cfg.seed,
        reports,
    })
}

/// `P ↦ V(P)·B^n` (as a support oracle): a genuine valuation, translation
/// invariant, rotation equivariant, homogeneous of degree `n` — but its
/// output is a ball, so the polytopal check must reject it.
#[derive(Debug, Clone, Copy, Default)]
pub struct BallVolumeOperator;

impl OperatorHandle for BallVolumeOperator {
    fn name(&self) -> String {
        "ball_volume".into()
    }

    fn homogeneity_degree(&self, ambient: usize) -> Option<f64> {
        Some(ambient as f64)
    }

    fn prepare(&self, p: &Polytope) -> GeomResult<PreparedSupport> {
        let v = p.volume();
        Ok(PreparedSupport::from_fn(p.ambient(), move |u| {
            v * u.norm()
        }))
    }
}

/// `P ↦ V(P)·P`: scaling the body by its own volume destroys additivity,
/// so the valuation check must flag it.  It makes no invariance claims.
#[derive(Debug, Clone, Copy, Default)]
pub struct VolumeScaledBody;

impl OperatorHandle for VolumeScaledBody {
    fn name(&self) -> String {
        "volume_scaled".into()
    }

    fn homogeneity_degree(&self, _ambient: usize) -> Option<f64> {
        None
    }

    fn translation_invariant(&self) -> bool {
        false
    }

    fn prepare(&self, p: &Polytope) -> GeomResult<PreparedSupport> {
        let v = p.volume();
        let body = p.clone();
        Ok(PreparedSupport::from_fn(p.ambient(), move |u| {
            v * body.support(u)
        }))
    }
}

/// `P ↦ P` without Steiner recentering: it claims translation invariance
/// but moves with the body, so that check must fail with residual ≈ ‖t‖.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoRecenterIdentity;

impl OperatorHandle for NoRecenterIdentity {
    fn name(&self) -> String {
        "no_recenter".into()
    }

    fn homogeneity_degree(&self, _ambient: usize) -> Option<f64> {
        Some(1.0)
    }

    fn prepare(&self, p: &Polytope) -> GeomResult<PreparedSupport> {
        Ok(PreparedSupport::from_polytope(p.clone()))
    }
}

/// Resolves an operator name as used in reports and on the command line:
/// `pi`, `i`, `neg_i`, `composite(c1,c2,c3)`, or one of the intentionally
/// broken specimens `ball_volume`, `volume_scaled`, `no_recenter`.
pub fn operator_by_name(spec: &str) -> GeomResult<Box<dyn OperatorHandle>> {
    match spec {
        "pi" => Ok(Box::new(ProjectionBodyOperator)),
        "i" => Ok(Box::new(TrivialOperator::identity())),
        "neg_i" => Ok(Box::new(TrivialOperator::negated())),
        "ball_volume" => Ok(Box::new(BallVolumeOperator)),
        "volume_scaled" => Ok(Box::new(VolumeScaledBody)),
        "no_recenter" => Ok(Box::new(NoRecenterIdentity)),
        other => {
            if let Some(inner) = other
                .strip_prefix("composite(")
                .and_then(|s| s.strip_suffix(')'))
            {
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != 3 {
                    return Err(GeomError::Parse(format!(
                        "composite takes three coefficients, got {other:?}"
                    )));
                }
                let mut c = [0.0f64; 3];
                for (slot, text) in c.iter_mut().zip(&parts) {
                    *slot = text.trim().parse::<f64>().map_err(|_| {
                        GeomError::Parse(format!("bad composite coefficient {text:?}"))
                    })?;
                }
                Ok(Box::new(composite_operator(c[0], c[1], c[2])?))
            } else {
                Err(GeomError::Parse(format!("unknown operator {other:?}")))
            }
        }
    }
}

/// The named operator line-ups the CLI exposes: `default` (the four honest
/// operators), `quick` (a two-operator smoke set), `broken` (the honest
/// set plus the three intentional counterexamples).
pub fn suite_operators(suite: &str) -> GeomResult<Vec<Box<dyn OperatorHandle>>> {
    let names: &[&str] = match suite {
        "default" => &["pi", "i", "neg_i", "composite(1,1,1)"],
        "quick" => &["pi", "i"],
        "broken" => &[
            "pi",
            "i",
            "neg_i",
            "composite(1,1,1)",
            "ball_volume",
            "volume_scaled",
            "no_recenter",
        ],
        other => {
            return Err(GeomError::InvalidParameter(format!(
                "unknown suite {other:?} (expected default, quick, or broken)"
            )))
        }
    };
    names.iter().map(|n| operator_by_name(n)).collect()
}
