//! Numerical solution of the discrete Minkowski problem and the Blaschke sum
//! built on top of it.
//!
//! Given a discrete measure on the sphere that satisfies the existence
//! conditions (centered resultant, directions not concentrated on a great
//! subsphere), [`solve_minkowski`] reconstructs the essentially unique
//! polytope whose facet areas match the prescribed weights.  The solver runs
//! a damped Newton iteration on the support numbers `h` of the slab
//! intersection `P(h) = {x : ⟨uᵢ, x⟩ ≤ hᵢ}`, exploiting the fact that the
//! facet-area vector is the gradient of `h ↦ V(P(h))`, so the Newton matrix
//! is a symmetrized finite-difference Hessian of the volume.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{GeomError, GeomResult};
use crate::geom::{complement_basis, solve_small, DirectionGrid, Polytope, Vector};
use crate::measures::{check_minkowski_conditions, merge_measures, DiscreteSphereMeasure};
use crate::operators::steiner_point;

/// Largest atom count accepted by [`solve_minkowski`]; the brute-force
/// vertex enumeration scales combinatorially past desk size.
pub const MAX_SOLVER_ATOMS: usize = 60;

/// Clustering radius for the vertices of the final output hull.  A vertex
/// lying on more than `n` planes is produced once per n-subset during
/// enumeration, with copies spread by the residual mismatch of those
/// planes; the copies must collapse to a single hull vertex or the hull
/// grows split coplanar facets.  During iteration the raw (unclustered)
/// vertex set is kept, because clustering introduces jumps larger than the
/// finite-difference step used for the Jacobian.
const TOL_CLUSTER: f64 = 1e-7;

/// Tuning knobs for the Newton iteration of [`solve_minkowski`].
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Convergence target for the largest relative facet-area residual
    /// `max_i |A_i(h) - w_i| / w_i`.
    pub tol_area: f64,
    /// Hard cap on Newton iterations per attempt.
    pub max_iter: usize,
    /// Initial step fraction of the damped line search; halved on each
    /// restart after a facet dropout.
    pub damping: f64,
    /// Relative diagonal shift stabilizing the Newton solve (the system is
    /// singular along translations, which are also projected out exactly).
    pub regularization: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol_area: 1e-8,
            max_iter: 200,
            damping: 1.0,
            regularization: 1e-10,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> GeomResult<()> {
        if !(self.tol_area.is_finite() && self.tol_area > 0.0) {
            return Err(GeomError::InvalidParameter(format!(
                "tol_area must be positive and finite, got {}",
                self.tol_area
            )));
        }
        if self.max_iter == 0 {
            return Err(GeomError::InvalidParameter(
                "max_iter must be at least 1".into(),
            ));
        }
        if !(self.damping.is_finite() && self.damping > 0.0 && self.damping <= 1.0) {
            return Err(GeomError::InvalidParameter(format!(
                "damping must lie in (0, 1], got {}",
                self.damping
            )));
        }
        if !(self.regularization.is_finite() && self.regularization >= 0.0) {
            return Err(GeomError::InvalidParameter(format!(
                "regularization must be non-negative, got {}",
                self.regularization
            )));
        }
        Ok(())
    }
}

/// Outcome of a Minkowski solve.
#[derive(Clone, Debug)]
pub struct SolveReport {
    /// Reconstructed polytope, translated so its quadrature Steiner point
    /// is at the origin.
    pub polytope: Polytope,
    /// Newton steps taken by the successful (or final) attempt.
    pub iterations: usize,
    /// Largest relative facet-area residual at exit.
    pub final_residual: f64,
    /// Whether `final_residual <= tol_area`.
    pub converged: bool,
}

/// Reconstructs a polytope from its prescribed surface area measure.
///
/// The measure must pass [`check_minkowski_conditions`] and contain between
/// `n + 1` and [`MAX_SOLVER_ATOMS`] atoms.  On success the returned polytope
/// has facet areas matching the atom weights with relative residual at most
/// `cfg.tol_area`, and its quadrature Steiner point translated to the
/// origin.  Non-convergence within `cfg.max_iter` still returns a report
/// (with `converged == false`); a facet dropout that survives three damped
/// restarts is an error.
pub fn solve_minkowski(
    measure: &DiscreteSphereMeasure,
    cfg: &SolverConfig,
) -> GeomResult<SolveReport> {
    cfg.validate()?;
    let verdict = check_minkowski_conditions(measure);
    if !verdict.ok() {
        return Err(GeomError::ConditionsViolated(format!(
            "resultant norm {:.3e}, min moment eigenvalue {:.3e}",
            verdict.resultant_norm, verdict.min_moment_eigenvalue
        )));
    }
    let n = measure.dim();
    let m = measure.len();
    if m < n + 1 || m > MAX_SOLVER_ATOMS {
        return Err(GeomError::InvalidParameter(format!(
            "need between {} and {} atoms in dimension {}, got {}",
            n + 1,
            MAX_SOLVER_ATOMS,
            n,
            m
        )));
    }
    let normals: Vec<Vector> = measure.atoms().iter().map(|a| a.direction).collect();
    let weights: Vec<f64> = measure.atoms().iter().map(|a| a.weight).collect();
    // Ball-like start: uniform support numbers keep every facet non-empty
    // (the inscribed sphere touches each plane strictly inside the others).
    let h_init = measure.total_mass().powf(1.0 / (n as f64 - 1.0));

    for attempt in 0..4 {
        let step0 = cfg.damping * 0.5f64.powi(attempt);
        match newton_run(&normals, &weights, h_init, step0, cfg) {
            RunOutcome::Finished {
                offsets,
                iterations,
                residual,
            } => {
                let h_scale = offsets.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
                let verts = cluster_points(
                    &enumerate_vertices(&normals, &offsets),
                    TOL_CLUSTER * (1.0 + h_scale),
                );
                let hull = Polytope::hull(&verts)?;
                let grid = DirectionGrid::default_steiner(n)?;
                let s = steiner_point(&hull, &grid)?;
                return Ok(SolveReport {
                    polytope: hull.translate(&-s),
                    iterations,
                    final_residual: residual,
                    converged: residual <= cfg.tol_area,
                });
            }
            RunOutcome::Dropout => continue,
        }
    }
    Err(GeomError::NoConvergence(
        "facet dropout persisted after three damped restarts".into(),
    ))
}

/// Blaschke sum: the polytope whose surface area measure is the atom-wise
/// sum of the two summands' measures, normalized to quadrature Steiner
/// point at the origin.
pub fn blaschke_sum(p: &Polytope, q: &Polytope) -> GeomResult<Polytope> {
    if p.ambient() != q.ambient() {
        return Err(GeomError::Dimension(format!(
            "Blaschke sum needs equal ambient dimensions, got {} and {}",
            p.ambient(),
            q.ambient()
        )));
    }
    let sp = crate::measures::surface_area_measure(p)?;
    let sq = crate::measures::surface_area_measure(q)?;
    let merged = merge_measures(&[&sp, &sq])?;
    let report = solve_minkowski(&merged, &SolverConfig::default())?;
    if !report.converged {
        return Err(GeomError::NoConvergence(format!(
            "Blaschke sum solve stopped at residual {:.3e}",
            report.final_residual
        )));
    }
    Ok(report.polytope)
}

enum RunOutcome {
    /// The iteration ended regularly: either converged or out of iterations.
    Finished {
        offsets: Vec<f64>,
        iterations: usize,
        residual: f64,
    },
    /// The evaluation degenerated and the line search could not recover.
    Dropout,
}

/// One damped-Newton run on the stationarity system `A(h) = (V/κ)·w`.
///
/// The merit function is Alexandrov's convex functional
/// `G(h) = ⟨w, h⟩ − κ·log V(P(h))`: by the Brunn–Minkowski inequality
/// `V(P(h))^{1/n}` is concave in `h`, so `G` is convex and `C¹` with
/// `∇G = w − (κ/V)·A(h)`, and any positive-definite Newton system yields a
/// strict descent direction — the iteration cannot stall away from the
/// minimizer.  At the minimizer the facet areas are proportional to the
/// weights; a final dilation makes them equal.
fn newton_run(
    normals: &[Vector],
    weights: &[f64],
    h_init: f64,
    step0: f64,
    cfg: &SolverConfig,
) -> RunOutcome {
    let m = weights.len();
    let n = normals[0].dim();
    let nf = n as f64;
    let w_total: f64 = weights.iter().sum();
    // Fix the barrier weight so the start point sits at the stationary
    // radius: κ = ⟨w, h₀⟩ / n.
    let kappa = h_init * w_total / nf;
    let trace = std::env::var_os("MINKVAL_SOLVER_TRACE").is_some();

    let mut offsets = vec![h_init; m];
    let mut areas = facet_areas(normals, &offsets);
    // V(P(h)) = ⟨h, A(h)⟩ / n over the facet planes.
    let mut vol = dot(&offsets, &areas) / nf;
    if !(vol > 0.0) {
        return RunOutcome::Dropout;
    }
    let mut merit = dot(weights, &offsets) - kappa * vol.ln();
    let mut res_max = rescaled_residual(&areas, weights, w_total);

    let u_mat = DMatrix::from_fn(m, n, |i, k| normals[i][k]);
    let gram = u_mat.transpose() * &u_mat;
    let gram_lu = gram.lu();

    let mut iterations = 0usize;
    for iter in 0..cfg.max_iter {
        if res_max <= cfg.tol_area {
            break;
        }

        // Jacobian of the area map — the Hessian of n·V(P(h)).
        let jac = area_jacobian(normals, &offsets);

        // Gradient and Hessian of G.  Both are orthogonal to the
        // translation subspace (the measure is centered and the facet
        // normals of a closed polytope sum to zero against areas), so the
        // gauge is fixed by projecting the step onto that complement; a
        // scaled copy of U Uᵀ makes the solve non-singular along it.
        let grad = DVector::from_fn(m, |i, _| weights[i] - kappa / vol * areas[i]);
        let a_vec = DVector::from_fn(m, |i, _| areas[i]);
        let hess =
            (&a_vec * a_vec.transpose() * (1.0 / vol) - &jac) * (kappa / vol);
        let scale = hess.norm() / m as f64 + 1e-30;
        let gauge = (&u_mat * u_mat.transpose()) * scale;

        let mut shift = cfg.regularization.max(1e-14);
        let mut delta: Option<DVector<f64>> = None;
        for _ in 0..8 {
            let lhs = &hess + &gauge + DMatrix::identity(m, m) * (shift * scale);
            if let Some(d) = lhs.lu().solve(&(-&grad)) {
                // Project the step orthogonal to translations; the gradient
                // already is, so descent is preserved.
                let mut d = d;
                if let Some(coef) = gram_lu.solve(&(u_mat.transpose() * &d)) {
                    d -= &u_mat * coef;
                }
                if d.dot(&grad) < 0.0 {
                    delta = Some(d);
                    break;
                }
            }
            shift *= 100.0;
        }
        let Some(delta) = delta else {
            if trace {
                eprintln!("iter {iter}: no descent direction, |grad| {:.3e}", grad.norm());
            }
            return RunOutcome::Dropout;
        };

        // Armijo backtracking on G; a trial with non-positive volume is
        // outside the barrier's domain and is rejected outright.  Near the
        // minimum the decrease of G falls below the floating-point
        // resolution of `merit` while Newton still contracts the residual
        // quadratically, so a trial that cuts the residual by 10% is also
        // accepted.
        let slope = delta.dot(&grad);
        let mut step = step0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = offsets
                .iter()
                .zip(delta.iter())
                .map(|(h, d)| h + step * d)
                .collect();
            let trial_areas = facet_areas(normals, &trial);
            let trial_vol = dot(&trial, &trial_areas) / nf;
            if trial_vol > 0.0 {
                let trial_merit = dot(weights, &trial) - kappa * trial_vol.ln();
                let trial_res = rescaled_residual(&trial_areas, weights, w_total);
                if trial_merit <= merit + 1e-4 * step * slope
                    || trial_res <= 0.9 * res_max
                {
                    offsets = trial;
                    areas = trial_areas;
                    vol = trial_vol;
                    merit = trial_merit;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            if trace {
                eprintln!(
                    "iter {iter}: line search failed, res {res_max:.3e} |grad| {:.3e}",
                    grad.norm()
                );
            }
            return RunOutcome::Dropout;
        }
        iterations = iter + 1;
        res_max = rescaled_residual(&areas, weights, w_total);
        if trace {
            eprintln!(
                "iter {iter}: res {res_max:.3e} merit {merit:.9} vol {vol:.6} step {step:.3e}"
            );
        }
    }

    // Dilate so the facet areas match the weights in absolute size.
    let area_total: f64 = areas.iter().sum();
    let factor = (w_total / area_total).powf(1.0 / (nf - 1.0));
    for h in &mut offsets {
        *h *= factor;
    }
    RunOutcome::Finished {
        offsets,
        iterations,
        residual: res_max,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Largest relative deviation of the areas from the weights after the
/// optimal dilation (the barrier formulation determines the body only up
/// to scale until the final dilation is applied).
fn rescaled_residual(areas: &[f64], weights: &[f64], w_total: f64) -> f64 {
    let area_total: f64 = areas.iter().sum();
    if !(area_total > 0.0) {
        return f64::INFINITY;
    }
    let factor = w_total / area_total;
    areas
        .iter()
        .zip(weights)
        .map(|(&a, &w)| (a * factor - w).abs() / w)
        .fold(0.0, f64::max)
}

/// All vertices of `{x : ⟨normals[i], x⟩ ≤ offsets[i] ∀i}` by brute-force
/// enumeration of n-subsets of the bounding planes.
fn enumerate_vertices(normals: &[Vector], offsets: &[f64]) -> Vec<Vector> {
    let m = normals.len();
    let n = normals[0].dim();
    let mut verts: Vec<Vector> = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    visit_subsets(m, n, 0, &mut chosen, &mut |subset: &[usize]| {
        let rows: Vec<Vector> = subset.iter().map(|&i| normals[i]).collect();
        let b: Vec<f64> = subset.iter().map(|&i| offsets[i]).collect();
        let Some(x) = solve_small(&rows, &b, 1e-9) else {
            return;
        };
        // Tolerances must scale with the local geometry, not with the
        // offsets: restricting a system across a nearly parallel plane
        // pair produces one huge offset, and a slack inflated by it lets
        // spurious sliver vertices flicker in and out (≈1e-8 relative
        // noise on areas), while an inflated dedup radius would swallow
        // genuinely distinct vertices.
        let geo = crate::geom::TAU_GEO * (1.0 + x.norm());
        let feasible = (0..m).all(|i| normals[i].dot(&x) <= offsets[i] + geo);
        if feasible {
            let dup = verts.iter().any(|v| v.dist(&x) <= geo);
            if !dup {
                verts.push(x);
            }
        }
    });
    verts
}

/// Greedy first-fit clustering: replaces each group of points within `tol`
/// of its first member by the group centroid.  Deterministic given order.
fn cluster_points(points: &[Vector], tol: f64) -> Vec<Vector> {
    let mut reps: Vec<Vector> = Vec::new();
    let mut sums: Vec<(Vector, usize)> = Vec::new();
    for p in points {
        if let Some(k) = reps.iter().position(|r| r.dist(p) <= tol) {
            sums[k].0 += *p;
            sums[k].1 += 1;
        } else {
            reps.push(*p);
            sums.push((*p, 1));
        }
    }
    sums.into_iter()
        .map(|(s, c)| s * (1.0 / c as f64))
        .collect()
}

fn visit_subsets(
    m: usize,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    let need = k - chosen.len();
    for i in start..=(m - need) {
        chosen.push(i);
        visit_subsets(m, k, i + 1, chosen, f);
        chosen.pop();
    }
}

/// Facet areas `A_i(h)` of the slab intersection: the (d−1)-volume of
/// facet `i`, computed by restricting every other halfspace to the plane
/// `⟨uᵢ, x⟩ = hᵢ` and measuring the resulting H-polytope recursively.  The
/// whole evaluation never builds a hull and never assigns vertices to
/// planes by a distance test: both are discontinuous under perturbations
/// of `h`, and the Newton iteration stalls on evaluator discontinuities.
fn facet_areas(normals: &[Vector], offsets: &[f64]) -> Vec<f64> {
    let d = normals[0].dim();
    let m = normals.len();
    (0..m)
        .map(|i| {
            let basis = complement_basis(&normals[i]);
            let mut rest_normals: Vec<Vector> = Vec::with_capacity(m - 1);
            let mut rest_offsets: Vec<f64> = Vec::with_capacity(m - 1);
            for j in 0..m {
                if j == i {
                    continue;
                }
                let coeffs: Vec<f64> = basis.iter().map(|b| normals[j].dot(b)).collect();
                let c = Vector::new(&coeffs).expect("restricted normal");
                let rhs = offsets[j] - offsets[i] * normals[j].dot(&normals[i]);
                let len = c.norm();
                if len <= 1e-12 {
                    // Parallel plane: cuts the whole facet plane or none of it.
                    if rhs < 0.0 {
                        return 0.0;
                    }
                    continue;
                }
                rest_normals.push(c * (1.0 / len));
                rest_offsets.push(rhs / len);
            }
            if rest_normals.len() < d {
                return 0.0;
            }
            hpoly_volume(&rest_normals, &rest_offsets)
        })
        .collect()
}

/// Analytic Jacobian `∂Aᵢ/∂hⱼ` of the facet-area map.  For `i ≠ j` the
/// derivative is the (d−2)-volume of the ridge `Fᵢ ∩ Fⱼ` divided by the
/// sine of the angle between the two normals, and the diagonal follows
/// from the same ridges: moving plane `i` outward shrinks facet `i`
/// across each ridge at rate cosθ/sinθ.  Being exact (no finite
/// differences), it keeps the Newton direction accurate down to machine
/// precision, where a differenced Jacobian floors out near 1e-8.
fn area_jacobian(normals: &[Vector], offsets: &[f64]) -> DMatrix<f64> {
    let d = normals[0].dim();
    let m = normals.len();
    let rows: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0.0; m];
            let basis = complement_basis(&normals[i]);
            let mut rest_normals: Vec<Vector> = Vec::with_capacity(m - 1);
            let mut rest_offsets: Vec<f64> = Vec::with_capacity(m - 1);
            let mut back: Vec<(usize, f64, f64)> = Vec::with_capacity(m - 1);
            let mut empty = false;
            for j in 0..m {
                if j == i {
                    continue;
                }
                let coeffs: Vec<f64> = basis.iter().map(|b| normals[j].dot(b)).collect();
                let c = Vector::new(&coeffs).expect("restricted normal");
                let cos = normals[j].dot(&normals[i]);
                let rhs = offsets[j] - offsets[i] * cos;
                let sin = c.norm();
                if sin <= 1e-12 {
                    if rhs < 0.0 {
                        empty = true;
                        break;
                    }
                    continue;
                }
                rest_normals.push(c * (1.0 / sin));
                rest_offsets.push(rhs / sin);
                back.push((j, sin, cos));
            }
            if empty || rest_normals.len() < d {
                return row;
            }
            let ridges = facet_areas(&rest_normals, &rest_offsets);
            for ((j, sin, cos), ridge) in back.iter().zip(&ridges) {
                row[*j] = ridge / sin;
                row[i] -= ridge * cos / sin;
            }
            row
        })
        .collect();
    // The area map is a gradient field, so its Jacobian is symmetric up to
    // evaluator rounding; symmetrizing removes that noise.
    DMatrix::from_fn(m, m, |i, j| 0.5 * (rows[i][j] + rows[j][i]))
}

/// Volume of the bounded H-polytope `{x : ⟨normals[i], x⟩ ≤ offsets[i]}`.
/// For d ≥ 3 it combines the recursive facet areas through the divergence
/// theorem, `V = (1/d) Σᵢ (hᵢ − ⟨uᵢ, c⟩) Aᵢ`, whose value is independent
/// of the reference point `c` — so the jumps of the vertex average at
/// combinatorial changes do not propagate into the volume.
fn hpoly_volume(normals: &[Vector], offsets: &[f64]) -> f64 {
    let d = normals[0].dim();
    if d == 1 {
        let mut upper = f64::INFINITY;
        let mut lower = f64::NEG_INFINITY;
        for (u, &h) in normals.iter().zip(offsets) {
            if u[0] > 0.0 {
                upper = upper.min(h / u[0]);
            } else if u[0] < 0.0 {
                lower = lower.max(h / u[0]);
            }
        }
        if !upper.is_finite() || !lower.is_finite() {
            return 0.0;
        }
        return (upper - lower).max(0.0);
    }
    if d == 2 {
        return polygon_area(normals, offsets);
    }
    let verts = enumerate_vertices(normals, offsets);
    if verts.len() <= d {
        return 0.0;
    }
    let mut center = Vector::zero(d);
    for v in &verts {
        center += *v;
    }
    let center = center * (1.0 / verts.len() as f64);
    let areas = facet_areas(normals, offsets);
    let total: f64 = normals
        .iter()
        .zip(offsets)
        .zip(&areas)
        .map(|((u, &h), &a)| (h - u.dot(&center)) * a)
        .sum();
    (total / d as f64).max(0.0)
}

/// Area of the convex polygon `{x ∈ R² : ⟨normals[i], x⟩ ≤ offsets[i]}`
/// by the shoelace formula over angularly sorted vertices.
fn polygon_area(normals: &[Vector], offsets: &[f64]) -> f64 {
    let verts = enumerate_vertices(normals, offsets);
    if verts.len() < 3 {
        return 0.0;
    }
    let mut center = Vector::zero(2);
    for v in &verts {
        center += *v;
    }
    let center = center * (1.0 / verts.len() as f64);
    let mut pts: Vec<(f64, Vector)> = verts
        .into_iter()
        .map(|v| ((v[1] - center[1]).atan2(v[0] - center[0]), v))
        .collect();
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
    let mut twice_area = 0.0;
    for k in 0..pts.len() {
        let p = &pts[k].1;
        let q = &pts[(k + 1) % pts.len()].1;
        twice_area += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * twice_area.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{hausdorff_distance, random_polytope, random_rotation, unit_cube};
    use crate::measures::surface_area_measure;

    fn axis_measure(n: usize) -> DiscreteSphereMeasure {
        let mut raw = Vec::new();
        for i in 0..n {
            raw.push((Vector::basis(n, i), 1.0));
            raw.push((-Vector::basis(n, i), 1.0));
        }
        DiscreteSphereMeasure::new(n, &raw).unwrap()
    }

    #[test]
    fn cube_measures_reconstruct_cubes() {
        for n in [3usize, 4] {
            let report = solve_minkowski(&axis_measure(n), &SolverConfig::default()).unwrap();
            assert!(report.converged, "dim {n}: {:.3e}", report.final_residual);
            assert!(report.final_residual <= 1e-8);
            let p = &report.polytope;
            assert_eq!(p.vertices().len(), 1 << n);
            assert!((p.volume() - 1.0).abs() < 1e-7, "volume {}", p.volume());
            for i in 0..n {
                let e = Vector::basis(n, i);
                assert!((p.support(&e) - 0.5).abs() < 1e-7);
                assert!((p.support(&-e) - 0.5).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn round_trips_recover_random_polytopes() {
        for (seed, n, k) in [(5u64, 3usize, 12usize), (11, 3, 8), (21, 4, 7)] {
            let p = random_polytope(seed, n, k).unwrap();
            let measure = surface_area_measure(&p).unwrap();
            let cfg = SolverConfig {
                tol_area: 1e-7,
                ..SolverConfig::default()
            };
            let report = solve_minkowski(&measure, &cfg).unwrap();
            assert!(
                report.converged,
                "seed {seed}: residual {:.3e} after {} iterations",
                report.final_residual, report.iterations
            );
            let solved = surface_area_measure(&report.polytope).unwrap();
            assert_eq!(solved.len(), measure.len());
            for (a, b) in solved.atoms().iter().zip(measure.atoms()) {
                assert!(a.direction.dist(&b.direction) < 1e-7);
                assert!((a.weight - b.weight).abs() / b.weight < 1e-6);
            }
            let grid = DirectionGrid::default_steiner(n).unwrap();
            let s = steiner_point(&p, &grid).unwrap();
            let centered = p.translate(&-s);
            let dist = hausdorff_distance(&centered, &report.polytope, &grid).unwrap();
            assert!(dist < 1e-5, "seed {seed}: Hausdorff {dist:.3e}");
        }
    }

    #[test]
    fn scaling_the_measure_scales_the_solution() {
        let p = random_polytope(7, 3, 9).unwrap();
        let measure = surface_area_measure(&p).unwrap();
        let scaled = measure.scaled(4.0).unwrap();
        let base = solve_minkowski(&measure, &SolverConfig::default()).unwrap();
        let big = solve_minkowski(&scaled, &SolverConfig::default()).unwrap();
        assert!(base.converged && big.converged);
        let grid = DirectionGrid::default_steiner(3).unwrap();
        let reference = base.polytope.scale(2.0).unwrap();
        let dist = hausdorff_distance(&reference, &big.polytope, &grid).unwrap();
        assert!(dist < 1e-6, "Hausdorff {dist:.3e}");
    }

    #[test]
    fn solving_rotated_measure_rotates_solution() {
        let p = random_polytope(13, 3, 10).unwrap();
        let measure = surface_area_measure(&p).unwrap();
        let rot = random_rotation(99, 3).unwrap();
        let rotated = measure.apply_rotation(&rot).unwrap();
        let base = solve_minkowski(&measure, &SolverConfig::default()).unwrap();
        let turned = solve_minkowski(&rotated, &SolverConfig::default()).unwrap();
        assert!(base.converged && turned.converged);
        // Uniqueness holds up to translation, so align by vertex centroids
        // (exactly rotation-equivariant) before comparing supports.
        let a = base.polytope.translate(&-base.polytope.vertex_centroid());
        let b = turned
            .polytope
            .translate(&-turned.polytope.vertex_centroid());
        let grid = DirectionGrid::default_steiner(3).unwrap();
        let mut worst = 0.0f64;
        for u in grid.directions() {
            let ru = rot.apply(u);
            worst = worst.max((b.support(&ru) - a.support(u)).abs());
        }
        assert!(worst < 1e-5, "equivariance residual {worst:.3e}");
    }

    #[test]
    fn facet_areas_are_volume_gradient() {
        // The Newton method leans on A(h) = ∇V(h); verify by central
        // differences at a generic iterate.
        let p = random_polytope(3, 3, 10).unwrap();
        let measure = surface_area_measure(&p).unwrap();
        let normals: Vec<Vector> = measure.atoms().iter().map(|a| a.direction).collect();
        let m = normals.len();
        let h0 = measure.total_mass().powf(0.5);
        let mut offsets = vec![h0; m];
        for (i, h) in offsets.iter_mut().enumerate() {
            *h *= 1.0 + 0.05 * ((i as f64).sin());
        }
        let areas = facet_areas(&normals, &offsets);
        let volume_of = |h: &[f64]| -> f64 {
            Polytope::hull(&enumerate_vertices(&normals, h))
                .map(|q| q.volume())
                .unwrap_or(0.0)
        };
        let fd = 1e-5;
        for j in 0..m {
            let mut plus = offsets.clone();
            plus[j] += fd;
            let mut minus = offsets.clone();
            minus[j] -= fd;
            let grad = (volume_of(&plus) - volume_of(&minus)) / (2.0 * fd);
            let denom = areas[j].max(1e-12);
            assert!(
                (grad - areas[j]).abs() / denom < 1e-6,
                "atom {j}: gradient {grad:.9}, area {:.9}",
                areas[j]
            );
        }
    }

    #[test]
    fn area_jacobian_satisfies_euler_relation() {
        // A(h) is positively homogeneous of degree n−1, so its Jacobian
        // must satisfy J·h = (n−1)·A(h); this pins sign conventions and
        // the ridge/diagonal bookkeeping in one identity.
        for (seed, n, verts) in [(17u64, 3usize, 9usize), (23, 4, 6)] {
            let p = random_polytope(seed, n, verts).unwrap();
            let measure = surface_area_measure(&p).unwrap();
            let normals: Vec<Vector> = measure.atoms().iter().map(|a| a.direction).collect();
            let m = normals.len();
            let h0 = measure.total_mass().powf(1.0 / (n as f64 - 1.0));
            let mut offsets = vec![h0; m];
            for (i, h) in offsets.iter_mut().enumerate() {
                *h *= 1.0 + 0.04 * ((i as f64).cos());
            }
            let areas = facet_areas(&normals, &offsets);
            let jac = area_jacobian(&normals, &offsets);
            let scale: f64 = areas.iter().fold(0.0f64, |a, &b| a.max(b));
            for i in 0..m {
                let jh: f64 = (0..m).map(|j| jac[(i, j)] * offsets[j]).sum();
                let expect = (n as f64 - 1.0) * areas[i];
                assert!(
                    (jh - expect).abs() <= 1e-8 * scale.max(1.0),
                    "seed {seed} row {i}: J·h = {jh:.12}, (n−1)A = {expect:.12}"
                );
            }
        }
    }

    #[test]
    fn blaschke_sum_of_two_cubes_is_sqrt2_cube() {
        let cube = unit_cube(3);
        let sum = blaschke_sum(&cube, &cube).unwrap();
        let s = 2.0f64.sqrt();
        assert_eq!(sum.vertices().len(), 8);
        for i in 0..3 {
            let e = Vector::basis(3, i);
            assert!((sum.support(&e) - s / 2.0).abs() < 1e-6);
            assert!((sum.support(&-e) - s / 2.0).abs() < 1e-6);
        }
        assert!((sum.volume() - s.powi(3)).abs() < 1e-6);
    }

    #[test]
    fn blaschke_sum_with_reflection_is_symmetric() {
        for (seed, n, k) in [(31u64, 3usize, 8usize), (41, 4, 6)] {
            let p = random_polytope(seed, n, k).unwrap();
            let r = blaschke_sum(&p, &p.reflect()).unwrap();
            let grid = DirectionGrid::default_steiner(n).unwrap();
            let mut worst = 0.0f64;
            for u in grid.directions() {
                worst = worst.max((r.support(u) - r.support(&-*u)).abs());
            }
            assert!(worst < 1e-6, "seed {seed}: asymmetry {worst:.3e}");
        }
    }

    #[test]
    fn blaschke_sum_adds_measures_and_commutes() {
        let p = random_polytope(51, 3, 8).unwrap();
        let q = random_polytope(52, 3, 7).unwrap();
        let sum = blaschke_sum(&p, &q).unwrap();
        let expected =
            merge_measures(&[&surface_area_measure(&p).unwrap(), &surface_area_measure(&q).unwrap()])
                .unwrap();
        let got = surface_area_measure(&sum).unwrap();
        assert_eq!(got.len(), expected.len());
        for (a, b) in got.atoms().iter().zip(expected.atoms()) {
            assert!(a.direction.dist(&b.direction) < 1e-7);
            assert!((a.weight - b.weight).abs() / b.weight < 1e-6);
        }
        let swapped = blaschke_sum(&q, &p).unwrap();
        let grid = DirectionGrid::default_steiner(3).unwrap();
        let dist = hausdorff_distance(&sum, &swapped, &grid).unwrap();
        assert!(dist < 1e-7, "commutativity gap {dist:.3e}");
    }

    #[test]
    fn rejects_bad_measures_and_configs() {
        // Uncentered: resultant far from zero.
        let n = 3;
        let mut raw = Vec::new();
        for i in 0..n {
            raw.push((Vector::basis(n, i), 2.0));
            raw.push((-Vector::basis(n, i), 1.0));
        }
        let lopsided = DiscreteSphereMeasure::new(n, &raw).unwrap();
        assert!(matches!(
            solve_minkowski(&lopsided, &SolverConfig::default()),
            Err(GeomError::ConditionsViolated(_))
        ));

        // Too many atoms.
        let mut big = Vec::new();
        for i in 0..31 {
            let phi = 0.1 + i as f64;
            let u = Vector::new(&[phi.cos(), phi.sin(), (0.2 * phi).sin()]).unwrap();
            let u = u * (1.0 / u.norm());
            big.push((u, 1.0));
            big.push((-u, 1.0));
        }
        let crowded = DiscreteSphereMeasure::new(3, &big).unwrap();
        assert_eq!(crowded.len(), 62);
        assert!(matches!(
            solve_minkowski(&crowded, &SolverConfig::default()),
            Err(GeomError::InvalidParameter(_))
        ));

        let bad_cfg = SolverConfig {
            tol_area: -1.0,
            ..SolverConfig::default()
        };
        assert!(matches!(
            solve_minkowski(&axis_measure(3), &bad_cfg),
            Err(GeomError::InvalidParameter(_))
        ));

        let mismatch = blaschke_sum(&unit_cube(3), &unit_cube(4));
        assert!(matches!(mismatch, Err(GeomError::Dimension(_))));
    }

    #[test]
    fn iteration_cap_reports_nonconvergence() {
        let p = random_polytope(61, 3, 10).unwrap();
        let measure = surface_area_measure(&p).unwrap();
        let cfg = SolverConfig {
            max_iter: 1,
            ..SolverConfig::default()
        };
        let report = solve_minkowski(&measure, &cfg).unwrap();
        assert!(!report.converged);
        assert!(report.final_residual > cfg.tol_area);
    }
}
