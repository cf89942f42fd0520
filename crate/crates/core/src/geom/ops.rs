//! Polytope operations built on the hull machinery: shadow volumes,
//! hyperplane splits, Minkowski sums, and grid Hausdorff bounds.

use crate::error::{GeomError, GeomResult};
use crate::geom::grid::DirectionGrid;
use crate::geom::polytope::{Polytope, TAU_GEO};
use crate::geom::vector::{complement_basis, project_to_basis, Vector};

/// Convex hull of a point set (free-function form of [`Polytope::hull`]).
pub fn convex_hull(points: &[Vector]) -> GeomResult<Polytope> {
    Polytope::hull(points)
}

/// (n-1)-volume of the orthogonal projection (shadow) of `p` onto the
/// hyperplane orthogonal to `u`: vertices are projected into an orthonormal
/// basis of u-perp and hulled there. This is the independent oracle for the
/// projection-body support function.
pub fn projection_volume(p: &Polytope, u: &Vector) -> GeomResult<f64> {
    if u.dim() != p.ambient() {
        return Err(GeomError::Dimension(
            "direction dimension differs from body dimension".into(),
        ));
    }
    let unit = u.normalized()?;
    let basis = complement_basis(&unit);
    let origin = Vector::zero(p.ambient());
    let shadow: Vec<Vector> = p
        .vertices()
        .iter()
        .map(|v| project_to_basis(v, &origin, &basis))
        .collect();
    let hull = Polytope::hull(&shadow)?;
    Ok(if hull.dim() == p.ambient() - 1 {
        hull.volume()
    } else {
        0.0
    })
}

/// Splits a full-dimensional polytope by the hyperplane `<a, x> = c` into
/// `(K, M, K ∩ M)` with `K` on the `<a, x> <= c` side. The hyperplane must
/// meet the interior (vertices strictly on both sides).
pub fn split_by_hyperplane(
    p: &Polytope,
    a: &Vector,
    c: f64,
) -> GeomResult<(Polytope, Polytope, Polytope)> {
    if p.dim() != p.ambient() {
        return Err(GeomError::LowerDimensional(
            "split_by_hyperplane needs a full-dimensional body".into(),
        ));
    }
    let unit = a.normalized()?;
    let level = c / a.norm();
    let scale = p.vertices().iter().fold(1.0_f64, |m, v| m.max(v.max_abs()));
    let tol = TAU_GEO * scale.max(1.0);
    let side: Vec<f64> = p.vertices().iter().map(|v| unit.dot(v) - level).collect();
    let strictly_below = side.iter().any(|s| *s < -tol);
    let strictly_above = side.iter().any(|s| *s > tol);
    if !strictly_below || !strictly_above {
        return Err(GeomError::InvalidParameter(
            "hyperplane does not meet the interior of the body".into(),
        ));
    }
    let mut cut_points: Vec<Vector> = Vec::new();
    for (i, j) in p.edges()? {
        let (si, sj) = (side[i], side[j]);
        if (si > tol && sj < -tol) || (si < -tol && sj > tol) {
            let t = si / (si - sj);
            let x = p.vertices()[i] + (p.vertices()[j] - p.vertices()[i]) * t;
            cut_points.push(x);
        }
    }
    let mut on_plane: Vec<Vector> = p
        .vertices()
        .iter()
        .zip(&side)
        .filter(|(_, s)| s.abs() <= tol)
        .map(|(v, _)| *v)
        .collect();
    let mut lower: Vec<Vector> = p
        .vertices()
        .iter()
        .zip(&side)
        .filter(|(_, s)| **s <= tol)
        .map(|(v, _)| *v)
        .collect();
    let mut upper: Vec<Vector> = p
        .vertices()
        .iter()
        .zip(&side)
        .filter(|(_, s)| **s >= -tol)
        .map(|(v, _)| *v)
        .collect();
    lower.extend_from_slice(&cut_points);
    upper.extend_from_slice(&cut_points);
    on_plane.extend_from_slice(&cut_points);
    let k = Polytope::hull(&lower)?;
    let m = Polytope::hull(&upper)?;
    let mid = Polytope::hull(&on_plane)?;
    Ok((k, m, mid))
}

/// Minkowski sum: hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> GeomResult<Polytope> {
    if p.ambient() != q.ambient() {
        return Err(GeomError::Dimension(
            "Minkowski sum of bodies in different ambient dimensions".into(),
        ));
    }
    let mut sums = Vec::with_capacity(p.vertices().len() * q.vertices().len());
    for v in p.vertices() {
        for w in q.vertices() {
            sums.push(*v + *w);
        }
    }
    Polytope::hull(&sums)
}

/// Grid lower bound for the Hausdorff distance:
/// max over grid directions of |h(P, u) - h(Q, u)|. Converges to the true
/// Hausdorff distance from below as the grid refines.
pub fn hausdorff_distance(p: &Polytope, q: &Polytope, grid: &DirectionGrid) -> GeomResult<f64> {
    if p.ambient() != q.ambient() || grid.dim() != p.ambient() {
        return Err(GeomError::Dimension(
            "hausdorff_distance needs matching body and grid dimensions".into(),
        ));
    }
    if grid.is_empty() {
        return Err(GeomError::InvalidGrid("empty grid".into()));
    }
    Ok(grid
        .directions()
        .iter()
        .map(|u| (p.support(u) - q.support(u)).abs())
        .fold(0.0, f64::max))
}
