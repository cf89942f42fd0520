//! Zonal kernels on `[-1, 1]` and the Blaschke-Minkowski homomorphisms they
//! define: `h(ΦK, u) = Σ_i [p(<u, n_i>) + q(<u, n_i>)] area_i` over the
//! facets of `K`, with `p` even and `q` odd.

use std::fmt;
use std::sync::Arc;

use crate::error::{GeomError, GeomResult};
use crate::geom::{affine_basis, orthogonal_complement_1, Polytope, Vector, TAU_GEO};
use crate::operators::{OperatorHandle, PreparedSupport};

/// Number of Chebyshev-Lobatto nodes used when a kernel must be tabulated.
pub const KERNEL_NODES: usize = 64;

/// Relative tolerance of the parity validation in [`KernelPair::new`].
pub const TAU_PARITY: f64 = 1e-12;

#[derive(Clone)]
enum KernelForm {
    /// Closed-form callable, evaluated exactly.
    Closed {
        name: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
    /// Values at the Chebyshev-Lobatto nodes `cos(j pi / (m-1))`,
    /// evaluated by barycentric interpolation.
    Chebyshev { values: Vec<f64> },
}

/// A continuous real function on `[-1, 1]`, either in closed form or
/// tabulated at Chebyshev-Lobatto nodes with barycentric interpolation.
#[derive(Clone)]
pub struct Kernel {
    form: KernelForm,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            KernelForm::Closed { name, .. } => write!(f, "Kernel::closed({name})"),
            KernelForm::Chebyshev { values } => {
                write!(f, "Kernel::chebyshev({} nodes)", values.len())
            }
        }
    }
}

impl Kernel {
    /// The projection-body kernel `p(t) = |t| / 2`.
    pub fn projection() -> Kernel {
        Kernel::from_fn("projection", |t| t.abs() / 2.0)
    }

    /// The zero kernel.
    pub fn zero() -> Kernel {
        Kernel::from_fn("zero", |_| 0.0)
    }

    /// Wraps a closed-form kernel; `name` appears in diagnostics.
    pub fn from_fn<F>(name: &str, f: F) -> Kernel
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Kernel {
            form: KernelForm::Closed {
                name: name.to_string(),
                f: Arc::new(f),
            },
        }
    }

    /// Builds a kernel from its values at the `m` Chebyshev-Lobatto nodes
    /// `cos(j pi / (m-1))`, `j = 0..m` (node 0 is `t = 1`). Needs `m >= 2`.
    pub fn from_chebyshev_values(values: Vec<f64>) -> GeomResult<Kernel> {
        if values.len() < 2 {
            return Err(GeomError::InvalidParameter(
                "kernel tabulation needs at least two nodes".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite("kernel tabulation value".into()));
        }
        Ok(Kernel {
            form: KernelForm::Chebyshev { values },
        })
    }

    /// The Chebyshev-Lobatto nodes for `m` points.
    pub fn chebyshev_nodes(m: usize) -> Vec<f64> {
        (0..m)
            .map(|j| (j as f64 * std::f64::consts::PI / (m - 1) as f64).cos())
            .collect()
    }

    /// Samples the kernel at the `m` Chebyshev-Lobatto nodes (used for
    /// serialization of closed-form kernels).
    pub fn tabulate(&self, m: usize) -> Vec<f64> {
        Kernel::chebyshev_nodes(m)
            .into_iter()
            .map(|t| self.eval(t))
            .collect()
    }

    /// Evaluates the kernel; the argument is clamped to `[-1, 1]` (inner
    /// products of unit vectors can overshoot by roundoff).
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(-1.0, 1.0);
        match &self.form {
            KernelForm::Closed { f, .. } => f(t),
            KernelForm::Chebyshev { values } => barycentric(values, t),
        }
    }
}

/// Barycentric interpolation at Chebyshev-Lobatto nodes.
fn barycentric(values: &[f64], t: f64) -> f64 {
    let m = values.len();
    let nodes = Kernel::chebyshev_nodes(m);
    let mut num = 0.0;
    let mut den = 0.0;
    for (j, (&x, &v)) in nodes.iter().zip(values).enumerate() {
        let d = t - x;
        if d.abs() < 1e-15 {
            return v;
        }
        let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == m - 1 {
            w *= 0.5;
        }
        num += w * v / d;
        den += w / d;
    }
    num / den
}

/// An even/odd kernel pair `(p, q)` defining a Blaschke-Minkowski
/// homomorphism. Parity is validated on construction.
#[derive(Debug, Clone)]
pub struct KernelPair {
    p: Kernel,
    q: Kernel,
}

impl KernelPair {
    /// Validates `p(-t) = p(t)` and `q(-t) = -q(t)` at the Chebyshev-Lobatto
    /// test nodes within [`TAU_PARITY`] (relative to the kernel's sup norm).
    pub fn new(p: Kernel, q: Kernel) -> GeomResult<KernelPair> {
        let nodes = Kernel::chebyshev_nodes(KERNEL_NODES);
        let p_scale = nodes
            .iter()
            .fold(1.0_f64, |m, &t| m.max(p.eval(t).abs()));
        let q_scale = nodes
            .iter()
            .fold(1.0_f64, |m, &t| m.max(q.eval(t).abs()));
        for &t in &nodes {
            if (p.eval(t) - p.eval(-t)).abs() > TAU_PARITY * p_scale {
                return Err(GeomError::KernelParity(format!(
                    "p is not even at t = {t}: p(t) = {}, p(-t) = {}",
                    p.eval(t),
                    p.eval(-t)
                )));
            }
            if (q.eval(t) + q.eval(-t)).abs() > TAU_PARITY * q_scale {
                return Err(GeomError::KernelParity(format!(
                    "q is not odd at t = {t}: q(t) = {}, q(-t) = {}",
                    q.eval(t),
                    q.eval(-t)
                )));
            }
        }
        Ok(KernelPair { p, q })
    }

    /// The pair generating the projection body: `p(t) = |t|/2`, `q = 0`.
    pub fn projection() -> KernelPair {
        KernelPair {
            p: Kernel::projection(),
            q: Kernel::zero(),
        }
    }

    pub fn p(&self) -> &Kernel {
        &self.p
    }

    pub fn q(&self) -> &Kernel {
        &self.q
    }

    /// `p(t) + q(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        self.p.eval(t) + self.q.eval(t)
    }
}

/// The Blaschke-Minkowski homomorphism generated by a kernel pair:
/// on polytopes, `h(ΦK, u) = Σ_i [p + q](<u, n_i>) area_i |u|`.
///
/// Degenerate bodies follow the same conventions as the projection body
/// (whose kernel is `p = |t|/2`): a body of dimension `n-1` contributes its
/// two-sided content `2 V_{n-1} p(<u, ν>)` (the odd part cancels), and
/// bodies of dimension `<= n-2` map to the origin.
#[derive(Debug, Clone)]
pub struct BmHomomorphism {
    kernel: KernelPair,
}

/// Builds the operator handle for a kernel pair.
pub fn bm_homomorphism(kernel: KernelPair) -> BmHomomorphism {
    BmHomomorphism { kernel }
}

impl BmHomomorphism {
    pub fn kernel(&self) -> &KernelPair {
        &self.kernel
    }
}

impl OperatorHandle for BmHomomorphism {
    fn name(&self) -> String {
        "bmh".into()
    }

    fn homogeneity_degree(&self, ambient: usize) -> Option<f64> {
        Some(ambient as f64 - 1.0)
    }

    fn prepare(&self, body: &Polytope) -> GeomResult<PreparedSupport> {
        let n = body.ambient();
        let kernel = self.kernel.clone();
        if body.dim() == n {
            let atoms: Vec<(Vector, f64)> = body
                .facets_required()?
                .iter()
                .map(|f| (f.normal, f.area))
                .collect();
            Ok(PreparedSupport::from_fn(n, move |u| {
                let norm = u.norm();
                if norm == 0.0 {
                    return 0.0;
                }
                let unit = *u * (1.0 / norm);
                norm * atoms
                    .iter()
                    .map(|(nu, a)| a * kernel.eval(unit.dot(nu)))
                    .sum::<f64>()
            }))
        } else if body.dim() == n - 1 {
            let basis = affine_basis(body.vertices(), TAU_GEO);
            let nu = orthogonal_complement_1(&basis).normalized()?;
            let content = body.intrinsic_volume();
            let p = kernel.p().clone();
            Ok(PreparedSupport::from_fn(n, move |u| {
                let norm = u.norm();
                if norm == 0.0 {
                    return 0.0;
                }
                let unit = *u * (1.0 / norm);
                norm * 2.0 * content * p.eval(unit.dot(&nu))
            }))
        } else {
            Ok(PreparedSupport::from_fn(n, |_| 0.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polytope::unit_cube;
    use crate::geom::{random_polytope, DirectionGrid};
    use crate::operators::projection_body;
    use approx::assert_relative_eq;

    #[test]
    fn chebyshev_interpolation_reproduces_smooth_functions() {
        let f = |t: f64| (1.5 * t).sin() + t * t;
        let k = Kernel::from_chebyshev_values(
            Kernel::chebyshev_nodes(KERNEL_NODES)
                .into_iter()
                .map(f)
                .collect(),
        )
        .unwrap();
        for j in 0..200 {
            let t = -1.0 + 2.0 * (j as f64) / 199.0;
            assert_relative_eq!(k.eval(t), f(t), epsilon = 1e-12);
        }
        // Node hits are exact.
        for t in Kernel::chebyshev_nodes(KERNEL_NODES) {
            assert_relative_eq!(k.eval(t), f(t), epsilon = 1e-14);
        }
        assert!(Kernel::from_chebyshev_values(vec![1.0]).is_err());
        assert!(Kernel::from_chebyshev_values(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn parity_validation() {
        assert!(KernelPair::new(Kernel::projection(), Kernel::zero()).is_ok());
        assert!(KernelPair::new(
            Kernel::from_fn("even", |t| t * t),
            Kernel::from_fn("odd", |t| t * t * t)
        )
        .is_ok());
        // An odd p is rejected, as is an even q.
        assert!(KernelPair::new(Kernel::from_fn("bad", |t| t), Kernel::zero()).is_err());
        assert!(KernelPair::new(
            Kernel::from_fn("even", |t| t.abs()),
            Kernel::from_fn("bad", |t| t.abs())
        )
        .is_err());
    }

    #[test]
    fn projection_kernel_matches_projection_body() {
        let op = bm_homomorphism(KernelPair::projection());
        for seed in [1u64, 7] {
            let p = random_polytope(seed, 3, 9).unwrap();
            let prep = op.prepare(&p).unwrap();
            let z = projection_body(&p).unwrap();
            let grid = DirectionGrid::default_residual(3).unwrap();
            for u in grid.directions() {
                assert_relative_eq!(prep.support(u), z.support(u), epsilon = 1e-12);
            }
        }
        let p4 = random_polytope(2, 4, 7).unwrap();
        let prep = op.prepare(&p4).unwrap();
        let z = projection_body(&p4).unwrap();
        let grid = DirectionGrid::default_residual(4).unwrap();
        for u in grid.directions() {
            assert_relative_eq!(prep.support(u), z.support(u), epsilon = 1e-12);
        }
    }

    #[test]
    fn cube_with_projection_kernel() {
        let prep = bm_homomorphism(KernelPair::projection())
            .prepare(&unit_cube(3))
            .unwrap();
        let u = Vector::new(&[0.3, -0.4, 1.1]).unwrap();
        assert_relative_eq!(
            prep.support(&u),
            u[0].abs() + u[1].abs() + u[2].abs(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn zero_kernel_is_zero_map() {
        let prep = bm_homomorphism(KernelPair::new(Kernel::zero(), Kernel::zero()).unwrap())
            .prepare(&unit_cube(3))
            .unwrap();
        let grid = DirectionGrid::default_residual(3).unwrap();
        for u in grid.directions() {
            assert_eq!(prep.support(u), 0.0);
        }
    }

    #[test]
    fn homogeneity_of_degree_n_minus_1() {
        let kernel = KernelPair::new(
            Kernel::from_fn("even", |t| 0.3 + t * t),
            Kernel::from_fn("odd", |t| 0.1 * t),
        )
        .unwrap();
        let op = bm_homomorphism(kernel);
        for (n, seed) in [(3usize, 4u64), (4, 5)] {
            let p = random_polytope(seed, n, 8).unwrap();
            let scaled = p.scale(2.0).unwrap();
            let prep = op.prepare(&p).unwrap();
            let prep_scaled = op.prepare(&scaled).unwrap();
            let factor = 2.0_f64.powi(n as i32 - 1);
            let grid = DirectionGrid::default_residual(n).unwrap();
            for u in grid.directions() {
                assert_relative_eq!(
                    prep_scaled.support(u),
                    factor * prep.support(u),
                    epsilon = 1e-10 * factor.max(1.0)
                );
            }
        }
    }

    #[test]
    fn degenerate_bodies_follow_projection_conventions() {
        let square = Polytope::hull(&[
            Vector::new(&[0.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[1.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[0.0, 1.0, 0.0]).unwrap(),
            Vector::new(&[1.0, 1.0, 0.0]).unwrap(),
        ])
        .unwrap();
        let prep = bm_homomorphism(KernelPair::projection())
            .prepare(&square)
            .unwrap();
        let z = projection_body(&square).unwrap();
        let grid = DirectionGrid::default_residual(3).unwrap();
        for u in grid.directions() {
            assert_relative_eq!(prep.support(u), z.support(u), epsilon = 1e-12);
        }
        let seg = Polytope::hull(&[Vector::zero(3), Vector::basis(3, 0)]).unwrap();
        let prep = bm_homomorphism(KernelPair::projection())
            .prepare(&seg)
            .unwrap();
        assert_eq!(prep.support(&Vector::basis(3, 0)), 0.0);
    }
}
