//! Minkowski-valuation operators on convex polytopes: the projection body
//! `Π`, the trivial maps `I` and `-I`, nonnegative combinations
//! `c1 Π + c2 I + c3 (-I)`, kernel-defined homomorphisms, and the order-1
//! projection body in R^3 — all usable either as direct constructions or
//! through the uniform [`OperatorHandle`] oracle interface consumed by the
//! fuzzing harness and the decomposition module.

pub mod kernel;
pub mod pi1;
pub mod steiner;
pub mod zonotope;

pub use kernel::{bm_homomorphism, BmHomomorphism, Kernel, KernelPair};
pub use pi1::{projection_body_order1_3d, Pi1Operator};
pub use steiner::{steiner_point, steiner_point_exact, trivial_map_i, trivial_map_neg_i};
pub use zonotope::{projection_body, zonotope_to_polytope, Zonotope, MAX_ZONOTOPE_GENERATORS};

use crate::error::{GeomError, GeomResult};
use crate::geom::{Polytope, Vector};

/// The output of an operator applied to one particular body, exposed as a
/// support-function oracle. Evaluations are pure and safe to fan out across
/// directions concurrently.
pub struct PreparedSupport {
    dim: usize,
    eval: Box<dyn Fn(&Vector) -> f64 + Send + Sync>,
}

impl PreparedSupport {
    /// Wraps a raw support oracle. The closure must be positively
    /// homogeneous of degree 1 in the direction.
    pub fn from_fn<F>(dim: usize, eval: F) -> Self
    where
        F: Fn(&Vector) -> f64 + Send + Sync + 'static,
    {
        PreparedSupport {
            dim,
            eval: Box::new(eval),
        }
    }

    /// The support oracle of a concrete polytope.
    pub fn from_polytope(p: Polytope) -> Self {
        let dim = p.ambient();
        PreparedSupport::from_fn(dim, move |u| p.support(u))
    }

    /// The support oracle of a zonotope.
    pub fn from_zonotope(z: Zonotope) -> Self {
        let dim = z.dim();
        PreparedSupport::from_fn(dim, move |u| z.support(u))
    }

    /// Ambient dimension of directions.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates the support function at `u`.
    pub fn support(&self, u: &Vector) -> f64 {
        (self.eval)(u)
    }
}

/// A Minkowski-valuation operator viewed abstractly: metadata (claimed
/// homogeneity degree and equivariances) plus the ability to turn a body
/// into a support oracle. The harness tests the claims; the decomposition
/// module consumes the oracles.
pub trait OperatorHandle: Send + Sync {
    /// Stable identifier used in reports.
    fn name(&self) -> String;

    /// `Some(d)` iff the operator claims `Φ(λP) = λ^d Φ(P)` for `λ > 0`
    /// in ambient dimension `ambient`.
    fn homogeneity_degree(&self, ambient: usize) -> Option<f64>;

    /// Claimed invariance `Φ(P + t) = Φ(P)`.
    fn translation_invariant(&self) -> bool {
        true
    }

    /// Claimed equivariance `Φ(θP) = θΦ(P)`.
    fn rotation_equivariant(&self) -> bool {
        true
    }

    /// Applies the operator to a body, returning the support oracle of the
    /// output.
    fn prepare(&self, p: &Polytope) -> GeomResult<PreparedSupport>;
}

/// The projection-body operator `P -> ΠP` as a handle.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProjectionBodyOperator;

impl OperatorHandle for ProjectionBodyOperator {
    fn name(&self) -> String {
        "pi".into()
    }

    fn homogeneity_degree(&self, ambient: usize) -> Option<f64> {
        Some(ambient as f64 - 1.0)
    }

    fn prepare(&self, p: &Polytope) -> GeomResult<PreparedSupport> {
        Ok(PreparedSupport::from_zonotope(projection_body(p)?))
    }
}

/// The trivial maps as handles: `I` for `negate = false`, `-I` otherwise.
#[derive(Debug, Clone, Copy)]
pub struct TrivialOperator {
    negate: bool,
}

impl TrivialOperator {
    pub fn identity() -> Self {
        TrivialOperator { negate: false }
    }

    pub fn negated() -> Self {
        TrivialOperator { negate: true }
    }
}

impl OperatorHandle for TrivialOperator {
    fn name(&self) -> String {
        if self.negate { "neg_i".into() } else { "i".into() }
    }

    fn homogeneity_degree(&self, _ambient: usize) -> Option<f64> {
        Some(1.0)
    }

    fn prepare(&self, p: &Polytope) -> GeomResult<PreparedSupport> {
        let s = steiner_point_exact(p)?;
        let body = p.clone();
        let negate = self.negate;
        Ok(PreparedSupport::from_fn(p.ambient(), move |u| {
            if negate {
                body.support(&-*u) + s.dot(u)
            } else {
                body.support(u) - s.dot(u)
            }
        }))
    }
}

/// The operator `c1 Π + c2 I + c3 (-I)` (Minkowski linear combination on the
/// level of support functions).
#[derive(Debug, Clone, Copy)]
pub struct CompositeOperator {
    c1: f64,
    c2: f64,
    c3: f64,
}

impl CompositeOperator {
    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.c1, self.c2, self.c3)
    }
}

/// Builds `c1 Π + c2 I + c3 (-I)`; the coefficients must be finite and
/// nonnegative.
pub fn composite_operator(c1: f64, c2: f64, c3: f64) -> GeomResult<CompositeOperator> {
    for c in [c1, c2, c3] {
        if !c.is_finite() || c < 0.0 {
            return Err(GeomError::InvalidParameter(format!(
                "composite coefficient {c} must be finite and nonnegative"
            )));
        }
    }
    Ok(CompositeOperator { c1, c2, c3 })
}

impl OperatorHandle for CompositeOperator {
    fn name(&self) -> String {
        format!("composite({},{},{})", self.c1, self.c2, self.c3)
    }

    fn homogeneity_degree(&self, ambient: usize) -> Option<f64> {
        let top = self.c1 > 0.0;
        let linear = self.c2 > 0.0 || self.c3 > 0.0;
        match (top, linear) {
            (true, false) => Some(ambient as f64 - 1.0),
            (false, _) => Some(1.0),
            (true, true) => None,
        }
    }

    fn prepare(&self, p: &Polytope) -> GeomResult<PreparedSupport> {
        let z = projection_body(p)?;
        let s = steiner_point_exact(p)?;
        let body = p.clone();
        let (c1, c2, c3) = (self.c1, self.c2, self.c3);
        Ok(PreparedSupport::from_fn(p.ambient(), move |u| {
            c1 * z.support(u) + c2 * (body.support(u) - s.dot(u))
                + c3 * (body.support(&-*u) + s.dot(u))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polytope::unit_cube;
    use crate::geom::{random_polytope, DirectionGrid};
    use approx::assert_relative_eq;

    #[test]
    fn composite_reduces_to_parts() {
        let p = random_polytope(3, 3, 9).unwrap();
        let grid = DirectionGrid::default_residual(3).unwrap();
        let pi_only = composite_operator(1.0, 0.0, 0.0)
            .unwrap()
            .prepare(&p)
            .unwrap();
        let z = projection_body(&p).unwrap();
        let i_only = composite_operator(0.0, 1.0, 0.0)
            .unwrap()
            .prepare(&p)
            .unwrap();
        let i_body = trivial_map_i(&p).unwrap();
        for u in grid.directions() {
            assert_relative_eq!(pi_only.support(u), z.support(u), epsilon = 1e-12);
            assert_relative_eq!(i_only.support(u), i_body.support(u), epsilon = 1e-10);
        }
    }

    #[test]
    fn composite_on_cube_matches_closed_form() {
        // (1,1,1) on the cube: h = h(Π cube, u) + 2 h([-1/2,1/2]^3, u).
        let cube = unit_cube(3);
        let op = composite_operator(1.0, 1.0, 1.0).unwrap();
        let prep = op.prepare(&cube).unwrap();
        let grid = DirectionGrid::default_residual(3).unwrap();
        let z = projection_body(&cube).unwrap();
        for u in grid.directions() {
            let centered = 0.5 * (u[0].abs() + u[1].abs() + u[2].abs());
            assert_relative_eq!(
                prep.support(u),
                z.support(u) + 2.0 * centered,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn composite_rejects_bad_coefficients() {
        assert!(composite_operator(-0.1, 0.0, 0.0).is_err());
        assert!(composite_operator(f64::NAN, 0.0, 0.0).is_err());
        assert_eq!(
            composite_operator(1.0, 0.0, 0.0)
                .unwrap()
                .homogeneity_degree(3),
            Some(2.0)
        );
        assert_eq!(
            composite_operator(0.0, 1.0, 1.0)
                .unwrap()
                .homogeneity_degree(3),
            Some(1.0)
        );
        assert_eq!(
            composite_operator(1.0, 1.0, 0.0)
                .unwrap()
                .homogeneity_degree(3),
            None
        );
    }

    #[test]
    fn handles_report_metadata() {
        assert_eq!(ProjectionBodyOperator.name(), "pi");
        assert_eq!(ProjectionBodyOperator.homogeneity_degree(4), Some(3.0));
        assert!(ProjectionBodyOperator.translation_invariant());
        assert!(ProjectionBodyOperator.rotation_equivariant());
        assert_eq!(TrivialOperator::identity().name(), "i");
        assert_eq!(TrivialOperator::negated().name(), "neg_i");
        assert_eq!(TrivialOperator::identity().homogeneity_degree(4), Some(1.0));
    }

    #[test]
    fn trivial_handles_match_direct_maps() {
        let p = random_polytope(9, 4, 7).unwrap();
        let grid = DirectionGrid::default_residual(4).unwrap();
        let i_prep = TrivialOperator::identity().prepare(&p).unwrap();
        let ni_prep = TrivialOperator::negated().prepare(&p).unwrap();
        let i_body = trivial_map_i(&p).unwrap();
        let ni_body = trivial_map_neg_i(&p).unwrap();
        for u in grid.directions() {
            assert_relative_eq!(i_prep.support(u), i_body.support(u), epsilon = 1e-10);
            assert_relative_eq!(ni_prep.support(u), ni_body.support(u), epsilon = 1e-10);
        }
    }
}
