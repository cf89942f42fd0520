//! Direction grids on S^2 and S^3 for quadrature and residual checks.
//!
//! The structured constructors build product rules — Gauss–Legendre in the
//! polar cosine times uniform azimuth on S^2, and Gauss–Chebyshev (second
//! kind) in the first hyperspherical cosine times an S^2 rule on S^3. Both
//! integrate quadratic polynomials in the direction exactly and are closed
//! under the antipodal map by construction: nodes are stored as explicit
//! +-u pairs so symmetry holds bitwise, which makes symmetrized quadratures
//! (Steiner points of origin-symmetric bodies) cancel exactly.

use crate::error::{GeomError, GeomResult};
use crate::geom::vector::Vector;

/// A finite set of unit directions with positive weights summing to 1.
#[derive(Clone, Debug)]
pub struct DirectionGrid {
    dim: usize,
    directions: Vec<Vector>,
    weights: Vec<f64>,
    symmetric: bool,
    spec: GridSpec,
}

#[derive(Clone, Debug)]
enum GridSpec {
    S2 { polar: usize, azimuth: usize },
    S3 { chi: usize, polar: usize, azimuth: usize },
    Custom,
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' at x via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn normalize_weights(weights: &mut [f64]) {
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
}

impl DirectionGrid {
    /// Product Gauss–Legendre x uniform-azimuth grid on S^2 with
    /// `polar * azimuth` nodes. `azimuth` must be even so the grid closes
    /// under the antipodal map.
    pub fn s2(polar: usize, azimuth: usize) -> GeomResult<DirectionGrid> {
        if polar < 2 || azimuth < 4 || azimuth % 2 != 0 {
            return Err(GeomError::InvalidGrid(format!(
                "s2 grid needs polar >= 2 and even azimuth >= 4, got {polar} x {azimuth}"
            )));
        }
        let (nodes, wts) = gauss_legendre(polar);
        let mut directions = Vec::with_capacity(polar * azimuth);
        let mut weights = Vec::with_capacity(polar * azimuth);
        // Emit only azimuths in [0, pi); the antipode of each node covers
        // the other half bitwise-exactly.
        for (t, wt) in nodes.iter().zip(&wts) {
            let s = (1.0 - t * t).max(0.0).sqrt();
            for k in 0..azimuth / 2 {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / azimuth as f64;
                let u = Vector::from_parts(3, [s * phi.cos(), s * phi.sin(), *t, 0.0]);
                let w = wt / azimuth as f64;
                directions.push(u);
                weights.push(w);
                directions.push(-u);
                weights.push(w);
            }
        }
        normalize_weights(&mut weights);
        Ok(DirectionGrid {
            dim: 3,
            directions,
            weights,
            symmetric: true,
            spec: GridSpec::S2 { polar, azimuth },
        })
    }

    /// Product grid on S^3: Gauss–Chebyshev (second kind) in cos(chi) — the
    /// natural weight sqrt(1-t^2) of the S^3 surface measure — times an S^2
    /// grid on the orthogonal 2-sphere. `chi` must be even.
    pub fn s3(chi: usize, polar: usize, azimuth: usize) -> GeomResult<DirectionGrid> {
        if chi < 2 || chi % 2 != 0 {
            return Err(GeomError::InvalidGrid(format!(
                "s3 grid needs even chi >= 2, got {chi}"
            )));
        }
        let inner = DirectionGrid::s2(polar, azimuth)?;
        let m = chi as f64 + 1.0;
        let mut directions = Vec::with_capacity(chi * inner.len());
        let mut weights = Vec::with_capacity(chi * inner.len());
        // Chebyshev-U nodes t_j = cos(j pi / (chi+1)), j = 1..=chi; with chi
        // even there is no node at t = 0, and nodes come in +- pairs. Emit
        // the positive half with explicit antipodes.
        for j in 1..=chi / 2 {
            let theta = std::f64::consts::PI * j as f64 / m;
            let t = theta.cos();
            let wt = std::f64::consts::PI / m * theta.sin().powi(2);
            let s = theta.sin();
            for (omega, ww) in inner.directions().iter().zip(inner.weights()) {
                let u = Vector::from_parts(
                    4,
                    [t, s * omega[0], s * omega[1], s * omega[2]],
                );
                directions.push(u);
                weights.push(wt * ww);
                directions.push(-u);
                weights.push(wt * ww);
            }
        }
        normalize_weights(&mut weights);
        Ok(DirectionGrid {
            dim: 4,
            directions,
            weights,
            symmetric: true,
            spec: GridSpec::S3 {
                chi,
                polar,
                azimuth,
            },
        })
    }

    /// A custom grid from explicit directions and weights. Directions are
    /// normalized; weights must be positive and are rescaled to sum to 1.
    /// Antipodal symmetry is detected (pairing within 1e-12).
    pub fn from_directions(directions: Vec<Vector>, weights: Vec<f64>) -> GeomResult<DirectionGrid> {
        if directions.is_empty() || directions.len() != weights.len() {
            return Err(GeomError::InvalidGrid(
                "grid needs matching nonempty directions and weights".into(),
            ));
        }
        let dim = directions[0].dim();
        if directions.iter().any(|d| d.dim() != dim) {
            return Err(GeomError::InvalidGrid("mixed grid dimensions".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(GeomError::InvalidGrid("grid weights must be positive".into()));
        }
        let directions: Vec<Vector> = directions
            .iter()
            .map(|d| d.normalized())
            .collect::<GeomResult<_>>()?;
        let mut weights = weights;
        normalize_weights(&mut weights);
        let symmetric = directions.iter().zip(&weights).all(|(u, w)| {
            directions
                .iter()
                .zip(&weights)
                .any(|(v, wv)| (*u + *v).norm() < 1e-12 && (w - wv).abs() < 1e-12)
        });
        Ok(DirectionGrid {
            dim,
            directions,
            weights,
            symmetric,
            spec: GridSpec::Custom,
        })
    }

    /// Default grid for Steiner-point quadrature.
    pub fn default_steiner(dim: usize) -> GeomResult<DirectionGrid> {
        match dim {
            3 => DirectionGrid::s2(64, 128),
            4 => DirectionGrid::s3(32, 32, 64),
            d => Err(GeomError::Dimension(format!(
                "direction grids exist for dimensions 3 and 4, not {d}"
            ))),
        }
    }

    /// Default coarser grid for residual checks (axiom tests, Hausdorff
    /// bounds) where exact identities are being verified.
    pub fn default_residual(dim: usize) -> GeomResult<DirectionGrid> {
        match dim {
            3 => DirectionGrid::s2(12, 24),
            4 => DirectionGrid::s3(8, 8, 16),
            d => Err(GeomError::Dimension(format!(
                "direction grids exist for dimensions 3 and 4, not {d}"
            ))),
        }
    }

    /// The same construction at `factor` times the resolution in every
    /// angular variable. Custom grids cannot be refined.
    pub fn refined(&self, factor: usize) -> GeomResult<DirectionGrid> {
        if factor == 0 {
            return Err(GeomError::InvalidParameter("refinement factor 0".into()));
        }
        match self.spec {
            GridSpec::S2 { polar, azimuth } => DirectionGrid::s2(polar * factor, azimuth * factor),
            GridSpec::S3 {
                chi,
                polar,
                azimuth,
            } => DirectionGrid::s3(chi * factor, polar * factor, azimuth * factor),
            GridSpec::Custom => Err(GeomError::InvalidGrid(
                "custom grids cannot be refined".into(),
            )),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    #[inline]
    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// True when the grid is closed under u -> -u with matching weights.
    #[inline]
    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    /// Quadrature of a function over the sphere w.r.t. the grid's
    /// probability weights.
    pub fn integrate<F: FnMut(&Vector) -> f64>(&self, mut f: F) -> f64 {
        self.directions
            .iter()
            .zip(&self.weights)
            .map(|(u, w)| w * f(u))
            .sum()
    }
}
