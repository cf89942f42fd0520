//! External angles of polytope vertices.
//!
//! The external angle of a vertex is the fraction of the unit sphere covered
//! by the vertex's normal cone (the cone spanned by the outward normals of
//! the incident facets). These angles are a partition of unity over the
//! vertices and give the classical exact Steiner-point formula
//! `s(P) = sum_v gamma(v) v`.
//!
//! Dimension-specific kernels:
//! * d = 1: each endpoint gets 1/2.
//! * d = 2: angle between the two incident edge normals, divided by 2*pi.
//! * d = 3: fan triangulation of the normal cone plus the Van Oosterom -
//!   Strackee closed form for the solid angle of a simplicial cone.
//! * d = 4: triangulation into simplicial cones, each reduced to a Gaussian
//!   orthant probability evaluated with Plackett's path integral.

use crate::error::{GeomError, GeomResult};
use crate::geom::grid::gauss_legendre;
use crate::geom::polytope::Polytope;
use crate::geom::vector::{complement_basis, det_n, project_to_basis, solve_small, Vector};

const PAIR_COMPLEMENTS: [(usize, usize, usize, usize); 6] = [
    (0, 1, 2, 3),
    (0, 2, 1, 3),
    (0, 3, 1, 2),
    (1, 2, 0, 3),
    (1, 3, 0, 2),
    (2, 3, 0, 1),
];

/// External angle of every vertex of a full-dimensional polytope, indexed
/// like `p.vertices()`. The angles are nonnegative and sum to 1.
pub fn external_angles(p: &Polytope) -> GeomResult<Vec<f64>> {
    if p.dim() != p.ambient() {
        return Err(GeomError::LowerDimensional(
            "external angles need a full-dimensional polytope".into(),
        ));
    }
    let n = p.ambient();
    if n == 1 {
        return Ok(vec![0.5; p.vertices().len()]);
    }
    let facets = p.facets_required()?;
    let centroid = p.vertex_centroid();
    let mut gammas = Vec::with_capacity(p.vertices().len());
    for (vi, v) in p.vertices().iter().enumerate() {
        let gens: Vec<Vector> = facets
            .iter()
            .filter(|f| f.vertex_indices.contains(&vi))
            .map(|f| f.normal)
            .collect();
        if gens.len() < n {
            return Err(GeomError::Degenerate(
                "vertex with fewer incident facets than the dimension".into(),
            ));
        }
        let axis = *v - centroid;
        let gamma = match n {
            2 => cone_fraction_2d(&gens)?,
            3 => cone_fraction_3d(&gens, &axis)?,
            4 => cone_fraction_4d(&gens, &axis)?,
            _ => unreachable!("ambient dimension is validated by Vector"),
        };
        gammas.push(gamma);
    }
    Ok(gammas)
}

/// Fraction of the circle covered by a pointed 2D cone given by edge normals.
fn cone_fraction_2d(gens: &[Vector]) -> GeomResult<f64> {
    let units: Vec<Vector> = gens
        .iter()
        .map(Vector::normalized)
        .collect::<GeomResult<_>>()?;
    // For a pointed cone all generators lie in an open half-plane, so the
    // aperture is the largest pairwise angle.
    let mut widest = 0.0_f64;
    for i in 0..units.len() {
        for j in (i + 1)..units.len() {
            widest = widest.max(units[i].dot(&units[j]).clamp(-1.0, 1.0).acos());
        }
    }
    Ok(widest / std::f64::consts::TAU)
}

/// Solid angle (steradians) of the simplicial cone spanned by unit vectors
/// `a`, `b`, `c` via the Van Oosterom - Strackee formula.
fn simplicial_solid_angle_3d(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let numer = det_n(&[*a, *b, *c]).abs();
    let denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * numer.atan2(denom)
}

/// Fraction of the 2-sphere covered by the pointed cone spanned by `gens`.
/// `axis` must have positive inner product with every generator.
fn cone_fraction_3d(gens: &[Vector], axis: &Vector) -> GeomResult<f64> {
    let (units, section) = cone_cross_section(gens, axis)?;
    // Locate the extreme points of the (planar) cross-section and order them
    // around its centroid; redundant generators fall away here.
    let hull = Polytope::hull(&section)?;
    if hull.dim() != 2 {
        return Err(GeomError::Degenerate(
            "normal cone cross-section is not two-dimensional".into(),
        ));
    }
    let ring = order_cyclically(hull.vertices());
    let idx = match_points(&section, &ring)?;
    let mut total = 0.0;
    for w in 1..idx.len() - 1 {
        total += simplicial_solid_angle_3d(&units[idx[0]], &units[idx[w]], &units[idx[w + 1]]);
    }
    Ok(total / (4.0 * std::f64::consts::PI))
}

/// Fraction of the 3-sphere covered by the pointed cone spanned by `gens`.
fn cone_fraction_4d(gens: &[Vector], axis: &Vector) -> GeomResult<f64> {
    let (units, section) = cone_cross_section(gens, axis)?;
    let hull = Polytope::hull(&section)?;
    if hull.dim() != 3 {
        return Err(GeomError::Degenerate(
            "normal cone cross-section is not three-dimensional".into(),
        ));
    }
    let hull_to_gen = match_points(&section, hull.vertices())?;
    let apex_hull = 0usize;
    let apex = hull_to_gen[apex_hull];
    let mut fraction = 0.0;
    for facet in hull.facets_required()? {
        if facet.vertex_indices.contains(&apex_hull) {
            continue;
        }
        // Orient the facet polygon and fan it into triangles; each triangle
        // together with the apex spans one simplicial subcone.
        let pts: Vec<Vector> = facet
            .vertex_indices
            .iter()
            .map(|&i| hull.vertices()[i])
            .collect();
        let ring = order_polygon_in_plane(&pts, &facet.normal)?;
        for w in 1..ring.len() - 1 {
            let quad = [
                units[apex],
                units[hull_to_gen[facet.vertex_indices[ring[0]]]],
                units[hull_to_gen[facet.vertex_indices[ring[w]]]],
                units[hull_to_gen[facet.vertex_indices[ring[w + 1]]]],
            ];
            fraction += simplicial_cone_fraction_4d(&quad)?;
        }
    }
    Ok(fraction)
}

/// Normalizes the generators and intersects the cone with the hyperplane
/// `<axis, x> = 1`, returning the unit generators and the section points
/// expressed in an orthonormal coordinate system of that hyperplane.
fn cone_cross_section(gens: &[Vector], axis: &Vector) -> GeomResult<(Vec<Vector>, Vec<Vector>)> {
    let unit_axis = axis.normalized()?;
    let mut units = Vec::with_capacity(gens.len());
    for g in gens {
        units.push(g.normalized()?);
    }
    let basis = complement_basis(&unit_axis);
    let mut section = Vec::with_capacity(units.len());
    for u in &units {
        let t = unit_axis.dot(u);
        if t <= 1e-12 {
            return Err(GeomError::Degenerate(
                "cone generator is not on the positive side of the section plane".into(),
            ));
        }
        let point = *u * (1.0 / t);
        section.push(project_to_basis(&point, &unit_axis, &basis));
    }
    Ok((units, section))
}

/// Orders the vertices of a convex polygon (given in its own 2D coordinates)
/// counterclockwise around the centroid.
fn order_cyclically(points: &[Vector]) -> Vec<Vector> {
    let mut centroid = Vector::zero(2);
    for p in points {
        centroid = centroid + *p;
    }
    centroid = centroid * (1.0 / points.len() as f64);
    let mut ordered: Vec<Vector> = points.to_vec();
    ordered.sort_by(|a, b| {
        let ta = (a[1] - centroid[1]).atan2(a[0] - centroid[0]);
        let tb = (b[1] - centroid[1]).atan2(b[0] - centroid[0]);
        ta.partial_cmp(&tb).expect("finite angles")
    });
    ordered
}

/// Returns the positions (as indices into `pts`) of a convex polygon's
/// vertices in cyclic order, for a polygon embedded in 3D with the given
/// plane normal. `pts` must all be extreme (they come from hull facets).
fn order_polygon_in_plane(pts: &[Vector], normal: &Vector) -> GeomResult<Vec<usize>> {
    let basis = complement_basis(&normal.normalized()?);
    let origin = pts[0];
    let mut centroid = Vector::zero(2);
    let planar: Vec<Vector> = pts
        .iter()
        .map(|p| project_to_basis(p, &origin, &basis))
        .collect();
    for p in &planar {
        centroid = centroid + *p;
    }
    centroid = centroid * (1.0 / planar.len() as f64);
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| {
        let ta = (planar[i][1] - centroid[1]).atan2(planar[i][0] - centroid[0]);
        let tb = (planar[j][1] - centroid[1]).atan2(planar[j][0] - centroid[0]);
        ta.partial_cmp(&tb).expect("finite angles")
    });
    Ok(order)
}

/// For each point of `targets`, finds the index of the matching point in
/// `source` (exact up to roundoff). Used to map hull vertices back to the
/// generators that produced them.
fn match_points(source: &[Vector], targets: &[Vector]) -> GeomResult<Vec<usize>> {
    let scale = source
        .iter()
        .fold(1.0_f64, |m, p| m.max(p.max_abs()));
    let tol2 = (1e-9 * scale).powi(2);
    let mut out = Vec::with_capacity(targets.len());
    for t in targets {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (i, s) in source.iter().enumerate() {
            let d = s.dist2(t);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        if best_d > tol2 {
            return Err(GeomError::Degenerate(
                "cross-section vertex does not match any cone generator".into(),
            ));
        }
        out.push(best);
    }
    Ok(out)
}

/// Fraction of the 3-sphere covered by the simplicial cone spanned by four
/// linearly independent unit vectors: the Gaussian measure of the cone,
/// i.e. the orthant probability of the correlation matrix derived from the
/// inverse Gram matrix of the generators.
fn simplicial_cone_fraction_4d(gens: &[Vector; 4]) -> GeomResult<f64> {
    let mut gram = [[0.0_f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            gram[i][j] = gens[i].dot(&gens[j]);
        }
    }
    let sigma = invert_4x4(&gram).ok_or_else(|| {
        GeomError::Degenerate("simplicial cone generators are linearly dependent".into())
    })?;
    let mut corr = [[0.0_f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            corr[i][j] = sigma[i][j] / (sigma[i][i] * sigma[j][j]).sqrt();
        }
    }
    Ok(orthant_probability_4(&corr))
}

fn invert_4x4(m: &[[f64; 4]; 4]) -> Option<[[f64; 4]; 4]> {
    let rows: Vec<Vector> = m
        .iter()
        .map(|r| Vector::new(r).expect("finite Gram entries"))
        .collect();
    let mut inv = [[0.0_f64; 4]; 4];
    for col in 0..4 {
        let mut rhs = [0.0_f64; 4];
        rhs[col] = 1.0;
        let x = solve_small(&rows, &rhs, 1e-14)?;
        for row in 0..4 {
            inv[row][col] = x[row];
        }
    }
    Some(inv)
}

/// Orthant probability P(X_1 >= 0, ..., X_4 >= 0) for a zero-mean Gaussian
/// vector with the given correlation matrix, via Plackett's identity: the
/// derivative of the probability along the path R(t) = (1-t) I + t R is a
/// sum over correlation pairs of a bivariate normal density at the origin
/// times a conditional quadrant probability, which has a closed form.
pub(crate) fn orthant_probability_4(corr: &[[f64; 4]; 4]) -> f64 {
    let integrand = |t: f64| -> f64 {
        let mut sum = 0.0;
        for &(i, j, k, l) in &PAIR_COMPLEMENTS {
            let r = corr[i][j];
            if r == 0.0 {
                continue;
            }
            let a = t * r;
            let density = 1.0 / (std::f64::consts::TAU * (1.0 - a * a).max(1e-300).sqrt());
            let rho = partial_correlation(corr, t, i, j, k, l);
            let quadrant = 0.25 + rho.asin() / std::f64::consts::TAU;
            sum += r * density * quadrant;
        }
        sum
    };
    0.0625 + adaptive_integral(&integrand, 0.0, 1.0, 1e-13, 24)
}

/// Partial correlation of X_k and X_l given X_i = X_j = 0 under the
/// correlation matrix (1-t) I + t R.
fn partial_correlation(corr: &[[f64; 4]; 4], t: f64, i: usize, j: usize, k: usize, l: usize) -> f64 {
    let a = t * corr[i][j];
    let det = (1.0 - a * a).max(1e-300);
    let (vki, vkj) = (t * corr[k][i], t * corr[k][j]);
    let (vli, vlj) = (t * corr[l][i], t * corr[l][j]);
    // Quadratic forms with the inverse of [[1, a], [a, 1]].
    let qkk = (vki * vki - 2.0 * a * vki * vkj + vkj * vkj) / det;
    let qll = (vli * vli - 2.0 * a * vli * vlj + vlj * vlj) / det;
    let qkl = (vki * vli - a * (vki * vlj + vkj * vli) + vkj * vlj) / det;
    let ckk = (1.0 - qkk).max(1e-300);
    let cll = (1.0 - qll).max(1e-300);
    let ckl = t * corr[k][l] - qkl;
    (ckl / (ckk * cll).sqrt()).clamp(-1.0, 1.0)
}

/// Adaptive Gauss-Legendre quadrature: bisects until the two-panel refinement
/// agrees with the single panel to `tol`.
fn adaptive_integral<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (nodes, weights) = gauss_legendre(16);
    let panel = |lo: f64, hi: f64| -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    };
    fn recurse<G: Fn(f64, f64) -> f64>(
        panel: &G,
        lo: f64,
        hi: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let mid = 0.5 * (lo + hi);
        let left = panel(lo, mid);
        let right = panel(mid, hi);
        if (left + right - whole).abs() <= tol || depth == 0 {
            left + right
        } else {
            recurse(panel, lo, mid, left, 0.5 * tol, depth - 1)
                + recurse(panel, mid, hi, right, 0.5 * tol, depth - 1)
        }
    }
    let whole = panel(a, b);
    recurse(&panel, a, b, whole, tol, depth)
}
