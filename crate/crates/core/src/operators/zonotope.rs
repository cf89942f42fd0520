//! Zonotopes (finite Minkowski sums of centered segments), the projection
//! body operator, and exact zonotope-to-polytope reconstruction.

use crate::error::{GeomError, GeomResult};
use crate::geom::{
    affine_basis, complement_basis, det_n, lift_from_basis, orthogonal_complement_1,
    project_to_basis, FacetRecord, Polytope, Vector, TAU_GEO,
};

/// Largest number of generators accepted by [`zonotope_to_polytope`].
pub const MAX_ZONOTOPE_GENERATORS: usize = 20;

/// A zonotope `center + sum_i [-g_i, +g_i]` with support function
/// `h(Z, u) = <center, u> + sum_i |<g_i, u>|`.
///
/// Stored canonically: zero generators dropped, parallel generators merged
/// (their half-lengths add), each generator's sign fixed so its first
/// nonzero coordinate is positive, generators sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct Zonotope {
    dim: usize,
    center: Vector,
    generators: Vec<Vector>,
}

impl Zonotope {
    /// Builds a zonotope in canonical form.
    pub fn new(center: Vector, generators: &[Vector]) -> GeomResult<Self> {
        let dim = center.dim();
        let scale = generators
            .iter()
            .fold(1.0_f64, |m, g| m.max(g.max_abs()));
        let mut canon: Vec<Vector> = Vec::new();
        for g in generators {
            if g.dim() != dim {
                return Err(GeomError::Dimension(
                    "generator dimension differs from center dimension".into(),
                ));
            }
            if !g.is_finite() {
                return Err(GeomError::NonFinite("zonotope generator".into()));
            }
            let len = g.norm();
            if len <= 1e-14 * scale {
                continue;
            }
            let unit = canonical_sign(&(*g * (1.0 / len)));
            if let Some(existing) = canon
                .iter_mut()
                .find(|e| {
                    let el = e.norm();
                    e.dot(&unit) / el >= 1.0 - 1e-12
                })
            {
                let total = existing.norm() + len;
                *existing = unit * total;
            } else {
                canon.push(unit * len);
            }
        }
        canon.sort_by(|a, b| a.coords().partial_cmp(b.coords()).expect("finite"));
        Ok(Zonotope {
            dim,
            center,
            generators: canon,
        })
    }

    /// Accepts parts verbatim when the generators are already canonical —
    /// finite, nonzero, sign-fixed, nonparallel, sorted — preserving every
    /// bit.  Errors send callers to the canonicalizing [`Zonotope::new`].
    pub(crate) fn from_canonical_parts(
        center: Vector,
        generators: Vec<Vector>,
    ) -> GeomResult<Self> {
        let dim = center.dim();
        if !center.is_finite() {
            return Err(GeomError::NonFinite("zonotope center".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(GeomError::Dimension(
                    "generator dimension differs from center dimension".into(),
                ));
            }
            if !g.is_finite() {
                return Err(GeomError::NonFinite("zonotope generator".into()));
            }
            if g.norm() == 0.0 {
                return Err(GeomError::InvalidParameter("zero generator".into()));
            }
            if *g != canonical_sign(g) {
                return Err(GeomError::InvalidParameter(
                    "generator sign is not canonical".into(),
                ));
            }
            if i > 0 && generators[i - 1].coords() >= g.coords() {
                return Err(GeomError::InvalidParameter(
                    "generators are not sorted".into(),
                ));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.dot(b) / (a.norm() * b.norm()) >= 1.0 - 1e-12 {
                    return Err(GeomError::InvalidParameter(
                        "parallel generators are not merged".into(),
                    ));
                }
            }
        }
        Ok(Zonotope {
            dim,
            center,
            generators,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Support function `h(Z, u) = <center, u> + sum_i |<g_i, u>|`.
    pub fn support(&self, u: &Vector) -> f64 {
        let mut h = self.center.dot(u);
        for g in &self.generators {
            h += g.dot(u).abs();
        }
        h
    }

    /// True when the center is the origin (then `h(Z, u) = h(Z, -u)`).
    pub fn is_origin_symmetric(&self) -> bool {
        self.center.norm() == 0.0
    }

    /// The zonotope scaled by `lambda >= 0` about the origin.
    pub fn scaled(&self, lambda: f64) -> GeomResult<Zonotope> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(GeomError::InvalidParameter(
                "zonotope scale factor must be finite and nonnegative".into(),
            ));
        }
        let gens: Vec<Vector> = self.generators.iter().map(|g| *g * lambda).collect();
        Zonotope::new(self.center * lambda, &gens)
    }

    /// The zonotope translated by `t`.
    pub fn translated(&self, t: &Vector) -> GeomResult<Zonotope> {
        Zonotope::new(self.center + *t, &self.generators)
    }
}

/// Flips the sign so the first coordinate exceeding a relative threshold is
/// positive; deterministic for any nonzero vector.
fn canonical_sign(g: &Vector) -> Vector {
    let scale = g.max_abs();
    for i in 0..g.dim() {
        if g[i].abs() > 1e-13 * scale {
            return if g[i] < 0.0 { -*g } else { *g };
        }
    }
    *g
}

/// Projection body of a polytope.
///
/// * Full-dimensional `P`: the zonotope with one generator `(area_i / 2) n_i`
///   per facet and center 0, so that `h(ΠP, u) = ½ Σ area_i |<u, n_i>|` — the
///   (n-1)-volume of the shadow of `P` orthogonal to `u`.
/// * `dim P = n - 1`: the segment with support `V_{n-1}(P) |<u, ν>|`, `ν` the
///   unit normal of the affine hull (the limit of the facet formula).
/// * `dim P <= n - 2`: the origin.
pub fn projection_body(p: &Polytope) -> GeomResult<Zonotope> {
    let n = p.ambient();
    let zero = Vector::zero(n);
    if p.dim() == n {
        let gens: Vec<Vector> = p
            .facets_required()?
            .iter()
            .map(|f| f.normal * (f.area / 2.0))
            .collect();
        Zonotope::new(zero, &gens)
    } else if p.dim() == n - 1 {
        let basis = affine_basis(p.vertices(), TAU_GEO);
        let nu = orthogonal_complement_1(&basis).normalized()?;
        Zonotope::new(zero, &[nu * p.intrinsic_volume()])
    } else {
        Zonotope::new(zero, &[])
    }
}

/// Reconstructs the polytope realized by a zonotope, with exact facet data.
///
/// Facet normals are orthogonal complements of rank-(n-1) generator subsets;
/// each facet is itself a (translated) zonotope spanned by the generators
/// orthogonal to its normal, whose vertices are found recursively and whose
/// area is the classical zonotope volume `2^{n-1} Σ |det|` over generator
/// subsets expressed in facet-plane coordinates.
pub fn zonotope_to_polytope(z: &Zonotope) -> GeomResult<Polytope> {
    if z.generators().len() > MAX_ZONOTOPE_GENERATORS {
        return Err(GeomError::InvalidParameter(format!(
            "zonotope has {} generators (limit {MAX_ZONOTOPE_GENERATORS})",
            z.generators().len()
        )));
    }
    let n = z.dim();
    let gens = z.generators();
    let rank = generator_rank(gens);
    if rank < n {
        // Lower-dimensional: enumerate vertices recursively and let the hull
        // classify the body (facets stay unset, as for all degenerate hulls).
        let verts = zono_vertices(n, z.center(), gens);
        return Polytope::hull(&verts);
    }
    let scale = gens.iter().fold(1.0_f64, |m, g| m.max(g.max_abs()));
    let tol = TAU_GEO * scale.max(1.0);

    // Unique facet normals from (n-1)-subsets of generators.
    let mut normals: Vec<Vector> = Vec::new();
    let mut subset = vec![0usize; n - 1];
    enumerate_subsets(gens.len(), n - 1, &mut subset, &mut |s| {
        let chosen: Vec<Vector> = s.iter().map(|&i| gens[i]).collect();
        let w = orthogonal_complement_1(&chosen);
        if let Ok(unit) = w.normalized() {
            let unit = canonical_sign(&unit);
            if !normals.iter().any(|m| m.dot(&unit) >= 1.0 - 1e-12) {
                normals.push(unit);
            }
        }
    });

    let mut vertices: Vec<Vector> = Vec::new();
    let mut facets: Vec<FacetRecord> = Vec::new();
    for base in &normals {
        for sign in [1.0, -1.0] {
            let w = *base * sign;
            // Facet zonotope: shifted center plus the tangent generators.
            let mut cf = *z.center();
            let mut tangent: Vec<Vector> = Vec::new();
            for g in gens {
                let d = g.dot(&w);
                if d > tol {
                    cf += *g;
                } else if d < -tol {
                    cf -= *g;
                } else {
                    tangent.push(*g);
                }
            }
            if generator_rank(&tangent) < n - 1 {
                // The subset normal came from a degenerate combination; this
                // direction exposes a lower-dimensional face, not a facet.
                continue;
            }
            let basis = complement_basis(&w);
            let tangent_coords: Vec<Vector> = tangent
                .iter()
                .map(|g| project_to_basis(g, &Vector::zero(n), &basis))
                .collect();
            let sub_vertices = zono_vertices(
                n - 1,
                &Vector::zero(n - 1),
                &tangent_coords,
            );
            let fverts: Vec<Vector> = sub_vertices
                .iter()
                .map(|sv| lift_from_basis(sv, &cf, &basis))
                .collect();
            let area = zonotope_measure(n - 1, &tangent_coords);
            let mut vertex_indices = Vec::with_capacity(fverts.len());
            for fv in &fverts {
                vertex_indices.push(intern_point(&mut vertices, fv, tol));
            }
            vertex_indices.sort_unstable();
            vertex_indices.dedup();
            facets.push(FacetRecord {
                normal: w,
                offset: w.dot(&cf),
                area,
                vertex_indices,
            });
        }
    }
    Polytope::from_vertices_and_facets(vertices, facets)
}

/// Rank of the span of the generators.
fn generator_rank(gens: &[Vector]) -> usize {
    if gens.is_empty() {
        return 0;
    }
    let n = gens[0].dim();
    let mut points = Vec::with_capacity(gens.len() + 1);
    points.push(Vector::zero(n));
    points.extend_from_slice(gens);
    affine_basis(&points, TAU_GEO).len()
}

/// Vertices of the zonotope `center + sum [-g, g]` in R^dim, assuming the
/// generators span R^dim; recursion over facet subzonotopes.
fn zono_vertices(dim: usize, center: &Vector, gens: &[Vector]) -> Vec<Vector> {
    let scale = gens.iter().fold(1.0_f64, |m, g| m.max(g.max_abs()));
    let tol = TAU_GEO * scale.max(1.0);
    if gens.is_empty() {
        return vec![*center];
    }
    let rank = generator_rank(gens);
    if rank < dim {
        // Work inside the span.
        let mut pts = vec![Vector::zero(dim)];
        pts.extend_from_slice(gens);
        let basis = affine_basis(&pts, TAU_GEO);
        let origin = Vector::zero(dim);
        let coords: Vec<Vector> = gens
            .iter()
            .map(|g| project_to_basis(g, &origin, &basis))
            .collect();
        let sub = zono_vertices(rank, &Vector::zero(rank), &coords);
        return sub
            .iter()
            .map(|sv| lift_from_basis(sv, center, &basis))
            .collect();
    }
    if dim == 1 {
        let total: f64 = gens.iter().map(|g| g[0].abs()).sum();
        let mut lo = *center;
        lo[0] -= total;
        let mut hi = *center;
        hi[0] += total;
        return vec![lo, hi];
    }
    let mut normals: Vec<Vector> = Vec::new();
    let mut subset = vec![0usize; dim - 1];
    enumerate_subsets(gens.len(), dim - 1, &mut subset, &mut |s| {
        let chosen: Vec<Vector> = s.iter().map(|&i| gens[i]).collect();
        let w = orthogonal_complement_1(&chosen);
        if let Ok(unit) = w.normalized() {
            let unit = canonical_sign(&unit);
            if !normals.iter().any(|m| m.dot(&unit) >= 1.0 - 1e-12) {
                normals.push(unit);
            }
        }
    });
    let mut out: Vec<Vector> = Vec::new();
    for base in &normals {
        for sign in [1.0, -1.0] {
            let w = *base * sign;
            let mut cf = *center;
            let mut tangent: Vec<Vector> = Vec::new();
            for g in gens {
                let d = g.dot(&w);
                if d > tol {
                    cf += *g;
                } else if d < -tol {
                    cf -= *g;
                } else {
                    tangent.push(*g);
                }
            }
            let basis = complement_basis(&w);
            let origin = Vector::zero(dim);
            let tangent_coords: Vec<Vector> = tangent
                .iter()
                .map(|g| project_to_basis(g, &origin, &basis))
                .collect();
            for sv in zono_vertices(dim - 1, &Vector::zero(dim - 1), &tangent_coords) {
                let v = lift_from_basis(&sv, &cf, &basis);
                intern_point(&mut out, &v, tol);
            }
        }
    }
    out
}

/// k-volume of the zonotope `sum [-g, g]` for generators in R^k:
/// `2^k Σ |det|` over all k-subsets.
fn zonotope_measure(k: usize, gens: &[Vector]) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut total = 0.0;
    let mut subset = vec![0usize; k];
    enumerate_subsets(gens.len(), k, &mut subset, &mut |s| {
        let chosen: Vec<Vector> = s.iter().map(|&i| gens[i]).collect();
        total += det_n(&chosen).abs();
    });
    total * (2.0_f64).powi(k as i32)
}

/// Calls `f` with every strictly increasing k-subset of `0..m`.
fn enumerate_subsets<F: FnMut(&[usize])>(m: usize, k: usize, subset: &mut [usize], f: &mut F) {
    fn rec<F: FnMut(&[usize])>(m: usize, k: usize, pos: usize, start: usize, subset: &mut [usize], f: &mut F) {
        if pos == k {
            f(subset);
            return;
        }
        for i in start..=(m - (k - pos)) {
            subset[pos] = i;
            rec(m, k, pos + 1, i + 1, subset, f);
        }
    }
    if k > m {
        return;
    }
    rec(m, k, 0, 0, subset, f);
}

/// Adds `p` to `points` unless an equal point (within `tol`) is present;
/// returns the index of the stored representative.
fn intern_point(points: &mut Vec<Vector>, p: &Vector, tol: f64) -> usize {
    for (i, q) in points.iter().enumerate() {
        if q.dist(p) <= tol {
            return i;
        }
    }
    points.push(*p);
    points.len() - 1
}
