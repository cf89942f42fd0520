//! The order-1 projection body in R^3:
//! `h(Π₁K, u) = ½ ∫ |<u, v>| dS₁(K, v)` with `S₁` the first-order area
//! measure, a great-circle arc measure for polytopes. Arc integrals are
//! evaluated in closed form (see [`crate::measures::Arc3::cosine_integral`]).

use crate::error::{GeomError, GeomResult};
use crate::geom::{Polytope, Vector};
use crate::measures::area_measure_order1_3d;
use crate::operators::{OperatorHandle, PreparedSupport};

/// Support function of `Π₁P` at the unit direction `u`.
pub fn projection_body_order1_3d(p: &Polytope, u: &Vector) -> GeomResult<f64> {
    if u.dim() != 3 {
        return Err(GeomError::Dimension("direction must lie in R^3".into()));
    }
    if (u.norm() - 1.0).abs() > 1e-9 {
        return Err(GeomError::InvalidParameter(format!(
            "direction must be a unit vector (|u| = {})",
            u.norm()
        )));
    }
    let s1 = area_measure_order1_3d(p)?;
    Ok(0.5 * s1.cosine_transform(u))
}

/// `Π₁` as an operator handle (degree-1 homogeneous, 3-dimensional bodies).
#[derive(Debug, Clone, Copy, Default)]
pub struct Pi1Operator;

impl OperatorHandle for Pi1Operator {
    fn name(&self) -> String {
        "pi1".into()
    }

    fn homogeneity_degree(&self, _ambient: usize) -> Option<f64> {
        Some(1.0)
    }

    fn prepare(&self, p: &Polytope) -> GeomResult<PreparedSupport> {
        if p.ambient() != 3 {
            return Err(GeomError::Dimension(
                "pi1 is implemented for bodies in R^3".into(),
            ));
        }
        let s1 = area_measure_order1_3d(p)?;
        // The cosine transform is already 1-homogeneous in u.
        Ok(PreparedSupport::from_fn(3, move |u| {
            0.5 * s1.cosine_transform(u)
        }))
    }
}
