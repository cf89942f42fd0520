//! Homogeneous decomposition of operator outputs in the McMullen style:
//! sampling `h(Φ(mK), ·)` on the integer dilates `m = 1..n+1` and solving
//! the attached Vandermonde system splits the measured support values into
//! components `f_j` that scale like `λ^j` under dilation of the body.  Each
//! extracted component is screened for sublinearity and, when it passes,
//! can be realized as a convex body by intersecting the halfspaces it
//! prescribes over a direction grid.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{GeomError, GeomResult};
use crate::geom::{DirectionGrid, Polytope, Vector, TAU_GEO};
use crate::operators::{OperatorHandle, PreparedSupport};

/// Default sublinearity tolerance, applied relative to the sup-norm of the
/// component being screened (with an absolute floor tied to the overall
/// magnitude of the measured support values, so that numerically vanishing
/// components are not flagged over pure rounding noise).
pub const TAU_SUB: f64 = 1e-6;

/// Cap on the number of direction pairs screened per component; pairs are
/// subsampled deterministically by stride when a grid exceeds it.
const TRIPLE_CAP: usize = 32_768;

/// Rows `a_{jm}` (degree `j` in `0..=n`, dilate `m` in `1..=n+1`) of the
/// inverse-transpose of the Vandermonde matrix `V_{mi} = m^i`.  They turn
/// dilate samples into homogeneous components:
/// `f_j(u) = Σ_m a_{jm} · h(Φ(mK), u)`.
#[derive(Clone, Debug)]
pub struct VandermondeCoefficients {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// Coefficients for extracting degree-`j` components from samples on the
/// dilates `m = 1..n+1`, computed by LU elimination with partial pivoting.
/// The defining identity `Σ_m a_{jm} m^i = δ_{ij}` holds to 1e-10 for every
/// supported `n` (the systems are tiny and benignly conditioned).
pub fn vandermonde_coefficients(n: usize) -> GeomResult<VandermondeCoefficients> {
    if !(1..=6).contains(&n) {
        return Err(GeomError::InvalidParameter(format!(
            "Vandermonde extraction supports degrees 1..=6, got {n}"
        )));
    }
    let k = n + 1;
    // Vᵀ entry (i, m−1) = m^i; row `j` of the inverse transpose solves
    // Vᵀ a_j = e_j.
    let vt = DMatrix::from_fn(k, k, |i, mcol| ((mcol + 1) as f64).powi(i as i32));
    let lu = vt.lu();
    let mut rows = Vec::with_capacity(k);
    for j in 0..k {
        let mut e = DVector::zeros(k);
        e[j] = 1.0;
        let x = lu
            .solve(&e)
            .expect("integer-node Vandermonde matrices are invertible");
        rows.push(x.iter().copied().collect::<Vec<f64>>());
    }
    let coeffs = VandermondeCoefficients { n, rows };
    let residual = coeffs.identity_residual();
    assert!(
        residual < 1e-10,
        "Vandermonde identity residual {residual:.3e} out of tolerance"
    );
    Ok(coeffs)
}

impl VandermondeCoefficients {
    /// The decomposition degree `n`; components span degrees `0..=n`.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// The row `a_{j,·}` for component degree `j`, indexed by `m − 1`.
    pub fn row(&self, j: usize) -> &[f64] {
        &self.rows[j]
    }

    /// Single coefficient `a_{jm}` with the dilate index `m` in `1..=n+1`.
    pub fn coefficient(&self, j: usize, m: usize) -> f64 {
        self.rows[j][m - 1]
    }

    /// Applies the extraction to one direction's dilate samples
    /// (`samples[m − 1] = h(Φ(mK), u)`), returning `f_j(u)` for `j = 0..=n`.
    pub fn apply(&self, samples: &[f64]) -> Vec<f64> {
        assert_eq!(samples.len(), self.n + 1, "one sample per dilate");
        self.rows
            .iter()
            .map(|row| row.iter().zip(samples).map(|(a, s)| a * s).sum())
            .collect()
    }

    /// Max deviation of `Σ_m a_{jm} m^i` from `δ_{ij}` over all pairs.
    pub fn identity_residual(&self) -> f64 {
        let k = self.n + 1;
        let mut worst = 0.0f64;
        for j in 0..k {
            for i in 0..k {
                let s: f64 = (1..=k)
                    .map(|m| self.rows[j][m - 1] * (m as f64).powi(i as i32))
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

/// Outcome of screening one component table for sublinearity:
/// `f(u₁ + u₂) ≤ f(u₁) + f(u₂)` over sampled direction pairs, with the sum
/// direction evaluated through a caller-supplied one-homogeneous oracle.
#[derive(Clone, Debug)]
pub struct SublinearityReport {
    /// Largest observed `f(u₁+u₂) − f(u₁) − f(u₂)` (positive = violation).
    pub max_violation: f64,
    /// Tolerance the verdict was taken against.
    pub tau: f64,
    /// `max_violation ≤ tau`: the table behaves like a support function.
    pub is_support_function: bool,
    /// Grid indices of the worst pair, if any pair was checked.
    pub worst_pair: Option<(usize, usize)>,
    /// Number of pairs screened.
    pub triples_checked: usize,
}

/// Deterministic selection of direction pairs for sublinearity screening:
/// all unordered pairs when the grid is small, otherwise a strided
/// subsample capped near [`TRIPLE_CAP`].  Antipodal-ish pairs are kept on
/// purpose — for them the test degenerates to `0 ≤ f(u) + f(−u)`, the
/// width-nonnegativity a genuine support function also satisfies.
pub fn sublinearity_triples(grid: &DirectionGrid) -> Vec<(usize, usize)> {
    let nd = grid.len();
    let total = nd.saturating_mul(nd.saturating_sub(1)) / 2;
    let stride = total.div_ceil(TRIPLE_CAP).max(1);
    let mut out = Vec::with_capacity(total.min(TRIPLE_CAP) + 1);
    let mut k = 0usize;
    for i in 0..nd {
        for j in (i + 1)..nd {
            if k % stride == 0 {
                out.push((i, j));
            }
            k += 1;
        }
    }
    out
}

/// Screens a direction-indexed table for sublinearity over the given pairs.
/// `f(uᵢ)` and `f(uⱼ)` come from `values`; `f(uᵢ + uⱼ)` is evaluated by
/// `eval` at the unnormalized sum, so the caller decides how off-grid
/// directions are served (a decomposition re-queries its dilate oracles).
pub fn sublinearity_check<F>(
    grid: &DirectionGrid,
    values: &[f64],
    triples: &[(usize, usize)],
    eval: F,
    tau: f64,
) -> GeomResult<SublinearityReport>
where
    F: Fn(&Vector) -> f64 + Sync,
{
    if values.len() != grid.len() {
        return Err(GeomError::Dimension(
            "one value per grid direction required".into(),
        ));
    }
    if !tau.is_finite() || tau < 0.0 {
        return Err(GeomError::InvalidParameter(format!(
            "sublinearity tolerance must be finite and nonnegative, got {tau}"
        )));
    }
    let dirs = grid.directions();
    let worst = triples
        .par_iter()
        .map(|&(i, j)| {
            let sum = dirs[i] + dirs[j];
            let violation = eval(&sum) - values[i] - values[j];
            (violation, (i, j))
        })
        .reduce(
            || (f64::NEG_INFINITY, (0usize, 0usize)),
            |a, b| if a.0 >= b.0 { a } else { b },
        );
    let (max_violation, worst_pair) = if triples.is_empty() {
        (0.0, None)
    } else {
        (worst.0, Some(worst.1))
    };
    Ok(SublinearityReport {
        max_violation,
        tau,
        is_support_function: max_violation <= tau,
        worst_pair,
        triples_checked: triples.len(),
    })
}

/// The degree-by-degree split of `h(ΦK, ·)` measured over a direction grid,
/// together with the dilate oracles needed to re-evaluate any component at
/// arbitrary directions and the per-degree sublinearity verdicts.
pub struct HomogeneousDecomposition {
    ambient: usize,
    grid: DirectionGrid,
    coefficients: VandermondeCoefficients,
    prepared: Vec<PreparedSupport>,
    tables: Vec<Vec<f64>>,
    reports: Vec<SublinearityReport>,
    homogeneous: Vec<bool>,
    reconstruction_residual: f64,
}

/// Decomposes `Φ` at `body`: applies the operator to the dilates `mK` for
/// `m = 1..n+1`, samples every output's support function on the grid, and
/// extracts the homogeneous components with [`vandermonde_coefficients`].
/// When `h(Φ(mK), u)` is exactly polynomial of degree ≤ n in `m` — true for
/// the operators in this crate on polytopes — the split is exact up to
/// linear-algebra roundoff, and `Σ_j f_j` reproduces `h(ΦK, ·)`.
pub fn decompose(
    op: &dyn OperatorHandle,
    body: &Polytope,
    grid: &DirectionGrid,
) -> GeomResult<HomogeneousDecomposition> {
    let n = body.ambient();
    if grid.dim() != n {
        return Err(GeomError::Dimension(format!(
            "grid dimension {} differs from body dimension {n}",
            grid.dim()
        )));
    }
    if grid.is_empty() {
        return Err(GeomError::InvalidGrid("empty direction grid".into()));
    }
    let coefficients = vandermonde_coefficients(n)?;
    let prepared: Vec<PreparedSupport> = (1..=n + 1)
        .map(|m| op.prepare(&body.scale(m as f64)?))
        .collect::<GeomResult<_>>()?;

    let per_direction: Vec<Vec<f64>> = grid
        .directions()
        .par_iter()
        .map(|u| {
            let samples: Vec<f64> = prepared.iter().map(|p| p.support(u)).collect();
            coefficients.apply(&samples)
        })
        .collect();
    let tables: Vec<Vec<f64>> = (0..=n)
        .map(|j| per_direction.iter().map(|row| row[j]).collect())
        .collect();

    let reconstruction_residual = grid
        .directions()
        .iter()
        .enumerate()
        .map(|(k, u)| {
            let total: f64 = (0..=n).map(|j| tables[j][k]).sum();
            (total - prepared[0].support(u)).abs()
        })
        .fold(0.0f64, f64::max);

    let f_inf = tables
        .iter()
        .flatten()
        .fold(0.0f64, |a, &b| a.max(b.abs()));
    let triples = sublinearity_triples(grid);
    let component_eval = |j: usize, v: &Vector| -> f64 {
        coefficients
            .row(j)
            .iter()
            .zip(&prepared)
            .map(|(a, p)| a * p.support(v))
            .sum()
    };
    let mut reports = Vec::with_capacity(n + 1);
    for (j, table) in tables.iter().enumerate() {
        let table_inf = table.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let tau = (TAU_SUB * table_inf).max(1e-10 * f_inf.max(1.0));
        reports.push(sublinearity_check(
            grid,
            table,
            &triples,
            |v| component_eval(j, v),
            tau,
        )?);
    }

    // Positive homogeneity in the direction argument is structural — every
    // dilate oracle is a support function — but cheap to verify: compare
    // f_j(λu) against λ·f_j(u) on a few directions.
    let probe = grid.len().min(16);
    let homogeneous = (0..=n)
        .map(|j| {
            grid.directions().iter().take(probe).all(|u| {
                let base = component_eval(j, u);
                [2.0, 0.5].iter().all(|&lam| {
                    let scaled = component_eval(j, &(*u * lam));
                    (scaled - lam * base).abs() <= 1e-9 * f_inf.max(1.0)
                })
            })
        })
        .collect();

    Ok(HomogeneousDecomposition {
        ambient: n,
        grid: grid.clone(),
        coefficients,
        prepared,
        tables,
        reports,
        homogeneous,
        reconstruction_residual,
    })
}

impl HomogeneousDecomposition {
    /// Ambient dimension `n`; component degrees run over `0..=n`.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The grid the tables are indexed by.
    pub fn grid(&self) -> &DirectionGrid {
        &self.grid
    }

    /// The extraction coefficients used.
    pub fn coefficients(&self) -> &VandermondeCoefficients {
        &self.coefficients
    }

    /// The degree-`j` component values over the grid directions.
    pub fn table(&self, j: usize) -> &[f64] {
        &self.tables[j]
    }

    /// Re-evaluates the degree-`j` component at an arbitrary direction by
    /// querying the stored dilate oracles; positively homogeneous in `u`.
    pub fn component(&self, j: usize, u: &Vector) -> f64 {
        self.coefficients
            .row(j)
            .iter()
            .zip(&self.prepared)
            .map(|(a, p)| a * p.support(u))
            .sum()
    }

    /// Sup-norm of the degree-`j` table.
    pub fn component_norm(&self, j: usize) -> f64 {
        self.tables[j].iter().fold(0.0f64, |a, &b| a.max(b.abs()))
    }

    /// Sublinearity verdict for degree `j`.
    pub fn sublinearity(&self, j: usize) -> &SublinearityReport {
        &self.reports[j]
    }

    /// Whether the degree-`j` component verified positive homogeneity in
    /// the direction argument (structurally always true).
    pub fn positively_homogeneous(&self, j: usize) -> bool {
        self.homogeneous[j]
    }

    /// Max over grid directions of `|Σ_j f_j(u) − h(ΦK, u)|`.
    pub fn reconstruction_residual(&self) -> f64 {
        self.reconstruction_residual
    }
}

/// Realizes a component table as a convex body: the intersection
/// `∩_u {x : ⟨u, x⟩ ≤ f(u)}` over the grid directions, an outer
/// approximation that converges to the true body as the grid refines.
/// Requires a passing sublinearity verdict — a violating table is reported
/// as [`GeomError::NotSupportFunction`], never silently clamped.
///
/// The intersection is computed by polarity: after centering at the
/// quadrature point `t₀ = n Σ w f(u) u` (and padding the offsets by at most
/// `TAU_GEO`-scale when the body is degenerately thin, as for a single
/// point), the dual points `u / f'(u)` are hulled and each dual facet maps
/// back to a vertex.  Grids of a few hundred directions are practical; the
/// brute-force hull makes thousands-direction grids expensive.
pub fn component_to_body(
    values: &[f64],
    grid: &DirectionGrid,
    sublinearity: &SublinearityReport,
) -> GeomResult<Polytope> {
    if !sublinearity.is_support_function {
        return Err(GeomError::NotSupportFunction {
            violation: sublinearity.max_violation,
        });
    }
    if values.len() != grid.len() {
        return Err(GeomError::Dimension(
            "one support value per grid direction required".into(),
        ));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(GeomError::NonFinite("support value".into()));
    }
    let n = grid.dim();
    let dirs = grid.directions();

    let mut t0 = Vector::zero(n);
    for ((u, w), &f) in dirs.iter().zip(grid.weights()).zip(values) {
        t0 += *u * (w * f);
    }
    let t0 = t0 * n as f64;

    let scale = values.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
    let mut shifted: Vec<f64> = dirs
        .iter()
        .zip(values)
        .map(|(u, &f)| f - u.dot(&t0))
        .collect();
    let spread = shifted.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    if spread <= TAU_GEO * scale {
        // The table prescribes no extent beyond its center in any sampled
        // direction: the body is the single point `t₀` (a linear
        // functional's table lands here exactly).
        return Polytope::hull(&[t0]);
    }
    let min_shift = shifted.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    // Strictly positive offsets are needed for polarity; bodies with the
    // center on (or numerically past) their boundary get padded outward by
    // a hair, which moves the result by at most `pad`.
    let pad = (TAU_GEO * scale - min_shift).max(0.0);
    for s in &mut shifted {
        *s += pad;
    }

    let dual: Vec<Vector> = dirs
        .iter()
        .zip(&shifted)
        .map(|(u, &s)| *u * (1.0 / s))
        .collect();
    let dual_hull = Polytope::hull(&dual)?;
    let facets = dual_hull.facets_required()?;
    let vertices: Vec<Vector> = facets
        .iter()
        .map(|f| f.normal * (1.0 / f.offset) + t0)
        .collect();
    Polytope::hull(&vertices)
}
