//! Convex polytopes with explicit vertex lists and cached facet data.
//!
//! Hulls are computed by brute-force hyperplane enumeration over all
//! d-subsets of the input points. At desk scale (<= ~40 vertices in
//! dimension <= 4) this is exact, simple to reason about, and fast enough;
//! every tolerance is a single global constant scaled by the input size.

use crate::error::{GeomError, GeomResult};
use crate::geom::vector::{
    affine_basis, complement_basis, lift_from_basis, orthogonal_complement_1, project_to_basis,
    Vector,
};

/// Global geometric tolerance. All coincidence decisions (vertex merging,
/// coplanarity, facet incidence) use this value scaled by the magnitude of
/// the coordinates involved.
pub const TAU_GEO: f64 = 1e-9;

/// One facet of a full-dimensional polytope: outward unit `normal`,
/// support `offset` (so the facet hyperplane is `<normal, x> = offset`),
/// the facet's (d-1)-dimensional `area`, and the sorted indices of the
/// vertices lying on it.
#[derive(Clone, Debug)]
pub struct FacetRecord {
    pub normal: Vector,
    pub offset: f64,
    pub area: f64,
    pub vertex_indices: Vec<usize>,
}

/// A convex polytope in R^n (n <= 4), stored as its extreme points.
///
/// `dim` is the affine dimension of the body, which may be less than the
/// ambient dimension; facet data is cached only for full-dimensional bodies.
#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    dim: usize,
    vertices: Vec<Vector>,
    facets: Option<Vec<FacetRecord>>,
}

/// Iterator over all `k`-subsets of `0..m`, visiting indices in place.
pub(crate) struct Combinations {
    idx: Vec<usize>,
    m: usize,
    started: bool,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(m: usize, k: usize) -> Self {
        Combinations {
            idx: (0..k).collect(),
            m,
            started: false,
            done: k > m,
        }
    }

    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.idx[i] != i + self.m - k {
                break;
            }
        }
        self.idx[i] += 1;
        for j in i + 1..k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(&self.idx)
    }
}

/// Linear rank of a set of vectors under Gram–Schmidt with tolerance.
pub(crate) fn rank_span(vs: &[Vector], tol: f64) -> usize {
    let mut basis: Vec<Vector> = Vec::new();
    let scale = vs.iter().fold(1.0_f64, |m, v| m.max(v.max_abs()));
    for v in vs {
        let mut w = *v;
        for _ in 0..2 {
            for b in &basis {
                w = w - *b * w.dot(b);
            }
        }
        let r = w.norm();
        if r > tol * scale {
            basis.push(w * (1.0 / r));
        }
        if basis.len() == vs[0].dim() {
            break;
        }
    }
    basis.len()
}

fn dedupe_points(points: &[Vector], tol_abs: f64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| q.dist(p) <= tol_abs) {
            out.push(*p);
        }
    }
    out
}

fn lex_less(a: &Vector, b: &Vector) -> bool {
    for i in 0..a.dim() {
        if a[i] != b[i] {
            return a[i] < b[i];
        }
    }
    false
}

struct RawFacet {
    normal: Vector,
    offset: f64,
    incident: Vec<usize>,
}

/// Facet enumeration for a full-dimensional point set in R^d: every d-subset
/// spanning a hyperplane with all points weakly on one side is a facet
/// candidate; candidates sharing a hyperplane (normals within `TAU_GEO`) are
/// merged.
fn enumerate_facets(points: &[Vector], d: usize) -> Vec<RawFacet> {
    let scale = points.iter().fold(1.0_f64, |m, p| m.max(p.max_abs()));
    let tol_abs = TAU_GEO * scale.max(1.0);
    let mut facets: Vec<RawFacet> = Vec::new();
    let mut combos = Combinations::new(points.len(), d);
    let mut diffs: Vec<Vector> = Vec::with_capacity(d - 1);
    while let Some(ix) = combos.next() {
        diffs.clear();
        let p0 = points[ix[0]];
        for &i in &ix[1..] {
            diffs.push(points[i] - p0);
        }
        let normal = if d == 1 {
            Vector::basis(1, 0)
        } else {
            orthogonal_complement_1(&diffs)
        };
        let nr = normal.norm();
        // Degenerate subsets (affinely dependent points) span no hyperplane.
        // The cross-product magnitude scales like scale^(d-1).
        if nr <= TAU_GEO * scale.max(1.0).powi(d as i32 - 1) {
            continue;
        }
        let unit = normal * (1.0 / nr);
        let base = unit.dot(&p0);
        let mut above = 0.0_f64;
        let mut below = 0.0_f64;
        for p in points {
            let s = unit.dot(p) - base;
            above = above.max(s);
            below = below.min(s);
        }
        let outward = if above <= tol_abs {
            unit
        } else if -below <= tol_abs {
            -unit
        } else {
            continue;
        };
        let mut offset = f64::NEG_INFINITY;
        for p in points {
            offset = offset.max(outward.dot(p));
        }
        if let Some(existing) = facets.iter_mut().find(|f| {
            f.normal.dot(&outward) >= 1.0 - TAU_GEO && (f.offset - offset).abs() <= tol_abs
        }) {
            // Same supporting hyperplane reached through another subset.
            let _ = existing;
            continue;
        }
        facets.push(RawFacet {
            normal: outward,
            offset,
            incident: Vec::new(),
        });
    }
    for f in &mut facets {
        for (i, p) in points.iter().enumerate() {
            if f.normal.dot(p) >= f.offset - tol_abs {
                f.incident.push(i);
            }
        }
    }
    facets
}

/// (d-1)-volume of a point set inside the hyperplane with the given unit
/// normal, by mapping to hyperplane coordinates and recursing.
fn flat_volume(points: &[Vector], normal: &Vector) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let d = points[0].dim();
    if d == 1 {
        // A facet of a segment is a point; its 0-volume is 1 by convention
        // so that the cone-volume formula reproduces lengths.
        return 1.0;
    }
    let basis = complement_basis(normal);
    let origin = points[0];
    let mapped: Vec<Vector> = points
        .iter()
        .map(|p| project_to_basis(p, &origin, &basis))
        .collect();
    volume_full(&mapped, d - 1)
}

/// d-volume of the hull of a full-dimensional point set in R^d, via the
/// cone (fan) decomposition over facets from an interior point: each facet
/// contributes area * height / d with apex at the vertex centroid.
fn volume_full(points: &[Vector], d: usize) -> f64 {
    if d == 1 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in points {
            lo = lo.min(p[0]);
            hi = hi.max(p[0]);
        }
        return (hi - lo).max(0.0);
    }
    let facets = enumerate_facets(points, d);
    if facets.is_empty() {
        return 0.0;
    }
    let mut c = Vector::zero(d);
    for p in points {
        c += *p;
    }
    c = c * (1.0 / points.len() as f64);
    let mut vol = 0.0;
    for f in &facets {
        let pts: Vec<Vector> = f.incident.iter().map(|&i| points[i]).collect();
        let area = flat_volume(&pts, &f.normal);
        vol += area * (f.offset - f.normal.dot(&c));
    }
    vol / d as f64
}

impl Polytope {
    /// Convex hull of a nonempty point set. Duplicate points are merged at
    /// tolerance `TAU_GEO` (scaled), interior and non-extreme points are
    /// dropped, and for full-dimensional bodies the facet cache (outward
    /// unit normals, offsets, areas, incident vertices) is built.
    pub fn hull(points: &[Vector]) -> GeomResult<Polytope> {
        if points.is_empty() {
            return Err(GeomError::Degenerate("hull of empty point set".into()));
        }
        let ambient = points[0].dim();
        if points.iter().any(|p| p.dim() != ambient) {
            return Err(GeomError::Dimension("mixed point dimensions in hull".into()));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite("hull input point".into()));
        }
        let scale = points.iter().fold(1.0_f64, |m, p| m.max(p.max_abs()));
        let tol_abs = TAU_GEO * scale.max(1.0);
        let points = dedupe_points(points, tol_abs);
        let basis = affine_basis(&points, TAU_GEO);
        let dim = basis.len();
        if dim == 0 {
            return Ok(Polytope {
                ambient,
                dim: 0,
                vertices: vec![points[0]],
                facets: None,
            });
        }
        if dim < ambient {
            // Lower-dimensional: hull in affine-hull coordinates, lift back.
            let origin = points[0];
            let mapped: Vec<Vector> = points
                .iter()
                .map(|p| project_to_basis(p, &origin, &basis))
                .collect();
            let inner = Polytope::hull_full(&mapped, dim)?;
            let mut vertices: Vec<Vector> = inner
                .vertices
                .iter()
                .map(|q| lift_from_basis(q, &origin, &basis))
                .collect();
            vertices.sort_by(|a, b| {
                if lex_less(a, b) {
                    std::cmp::Ordering::Less
                } else if lex_less(b, a) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            });
            return Ok(Polytope {
                ambient,
                dim,
                vertices,
                facets: None,
            });
        }
        Polytope::hull_full(&points, ambient)
    }

    /// Hull of a point set known to span R^d (d = ambient).
    fn hull_full(points: &[Vector], d: usize) -> GeomResult<Polytope> {
        let scale = points.iter().fold(1.0_f64, |m, p| m.max(p.max_abs()));
        let tol_abs = TAU_GEO * scale.max(1.0);
        if d == 1 {
            let mut lo = points[0];
            let mut hi = points[0];
            for p in points {
                if p[0] < lo[0] {
                    lo = *p;
                }
                if p[0] > hi[0] {
                    hi = *p;
                }
            }
            let vertices = vec![lo, hi];
            let facets = vec![
                FacetRecord {
                    normal: Vector::basis(1, 0) * -1.0,
                    offset: -lo[0],
                    area: 1.0,
                    vertex_indices: vec![0],
                },
                FacetRecord {
                    normal: Vector::basis(1, 0),
                    offset: hi[0],
                    area: 1.0,
                    vertex_indices: vec![1],
                },
            ];
            return Ok(Polytope {
                ambient: 1,
                dim: 1,
                vertices,
                facets: Some(facets),
            });
        }
        let raw = enumerate_facets(points, d);
        if raw.is_empty() {
            return Err(GeomError::Degenerate(
                "no facets found for full-dimensional hull".into(),
            ));
        }
        // A point is a vertex exactly when its active facet normals span R^d
        // (its normal cone is full-dimensional).
        let mut active: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
        for (fi, f) in raw.iter().enumerate() {
            for &pi in &f.incident {
                active[pi].push(fi);
            }
        }
        let mut vertex_of_point: Vec<Option<usize>> = vec![None; points.len()];
        let mut vertices: Vec<Vector> = Vec::new();
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            if lex_less(&points[a], &points[b]) {
                std::cmp::Ordering::Less
            } else if lex_less(&points[b], &points[a]) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        for &pi in &order {
            if active[pi].len() < d {
                continue;
            }
            let normals: Vec<Vector> = active[pi].iter().map(|&fi| raw[fi].normal).collect();
            if rank_span(&normals, TAU_GEO) == d {
                vertex_of_point[pi] = Some(vertices.len());
                vertices.push(points[pi]);
            }
        }
        if vertices.len() < d + 1 {
            return Err(GeomError::Degenerate(format!(
                "full-dimensional hull produced only {} vertices",
                vertices.len()
            )));
        }
        let mut facets: Vec<FacetRecord> = Vec::with_capacity(raw.len());
        for f in &raw {
            let mut vertex_indices: Vec<usize> = f
                .incident
                .iter()
                .filter_map(|&pi| vertex_of_point[pi])
                .collect();
            vertex_indices.sort_unstable();
            if vertex_indices.len() < d {
                return Err(GeomError::Degenerate(
                    "facet with fewer vertices than its dimension".into(),
                ));
            }
            let pts: Vec<Vector> = vertex_indices.iter().map(|&vi| vertices[vi]).collect();
            let area = flat_volume(&pts, &f.normal);
            if area <= tol_abs {
                // Sliver facet from near-coplanar points; drop it (its
                // hyperplane nearly coincides with a neighbour that was kept).
                continue;
            }
            facets.push(FacetRecord {
                normal: f.normal,
                offset: f.offset,
                area,
                vertex_indices,
            });
        }
        facets.sort_by(|a, b| {
            if lex_less(&a.normal, &b.normal) {
                std::cmp::Ordering::Less
            } else if lex_less(&b.normal, &a.normal) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        Ok(Polytope {
            ambient: d,
            dim: d,
            vertices,
            facets: Some(facets),
        })
    }

    /// Builds a polytope from known vertices and facet records, validating
    /// the structural invariants instead of re-running hull enumeration.
    /// Used by constructions (zonotopes) whose facet structure is known
    /// exactly and too large for brute-force enumeration.
    pub(crate) fn from_vertices_and_facets(
        vertices: Vec<Vector>,
        facets: Vec<FacetRecord>,
    ) -> GeomResult<Polytope> {
        if vertices.is_empty() || facets.is_empty() {
            return Err(GeomError::Degenerate(
                "from_vertices_and_facets needs vertices and facets".into(),
            ));
        }
        let ambient = vertices[0].dim();
        let scale = vertices.iter().fold(1.0_f64, |m, p| m.max(p.max_abs()));
        let tol = TAU_GEO * scale.max(1.0);
        // Closure: facet normals weighted by area must cancel.
        let mut closure = Vector::zero(ambient);
        for f in &facets {
            if f.area <= 0.0 {
                return Err(GeomError::Degenerate("facet with nonpositive area".into()));
            }
            closure += f.normal * f.area;
            for &vi in &f.vertex_indices {
                if vi >= vertices.len() {
                    return Err(GeomError::InvalidParameter("facet vertex index".into()));
                }
                if (f.normal.dot(&vertices[vi]) - f.offset).abs() > 1e3 * tol {
                    return Err(GeomError::Degenerate(
                        "facet vertex off its hyperplane".into(),
                    ));
                }
            }
        }
        let area_total: f64 = facets.iter().map(|f| f.area).sum();
        if closure.norm() > 1e3 * TAU_GEO * area_total.max(1.0) {
            return Err(GeomError::Degenerate(format!(
                "facet closure residual {:.3e}",
                closure.norm()
            )));
        }
        Ok(Polytope::canonicalized(ambient, ambient, vertices, Some(facets)))
    }

    /// Ambient dimension n.
    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Affine dimension of the body (0..=ambient).
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points, sorted lexicographically.
    #[inline]
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Facet records; `None` for lower-dimensional bodies.
    #[inline]
    pub fn facets(&self) -> Option<&[FacetRecord]> {
        self.facets.as_deref()
    }

    /// Facet records or an error for lower-dimensional bodies.
    pub fn facets_required(&self) -> GeomResult<&[FacetRecord]> {
        self.facets.as_deref().ok_or_else(|| {
            GeomError::LowerDimensional(format!(
                "body has dimension {} in R^{}",
                self.dim, self.ambient
            ))
        })
    }

    /// Support function h(P, u) = max over vertices of <u, v>. The direction
    /// need not be normalized; h(P, 0) = 0.
    #[inline]
    pub fn support(&self, u: &Vector) -> f64 {
        let mut h = f64::NEG_INFINITY;
        for v in &self.vertices {
            h = h.max(u.dot(v));
        }
        h
    }

    /// A vertex attaining the support value in direction `u`.
    pub fn support_point(&self, u: &Vector) -> Vector {
        let mut best = self.vertices[0];
        let mut h = u.dot(&best);
        for v in &self.vertices[1..] {
            let s = u.dot(v);
            if s > h {
                h = s;
                best = *v;
            }
        }
        best
    }

    /// Mean of the vertex set (an interior point for full-dimensional bodies).
    pub fn vertex_centroid(&self) -> Vector {
        let mut c = Vector::zero(self.ambient);
        for v in &self.vertices {
            c += *v;
        }
        c * (1.0 / self.vertices.len() as f64)
    }

    /// Translate by `t`, updating the facet cache in place.
    pub fn translate(&self, t: &Vector) -> Polytope {
        let vertices = self.vertices.iter().map(|v| *v + *t).collect();
        let facets = self.facets.as_ref().map(|fs| {
            fs.iter()
                .map(|f| FacetRecord {
                    normal: f.normal,
                    offset: f.offset + f.normal.dot(t),
                    area: f.area,
                    vertex_indices: f.vertex_indices.clone(),
                })
                .collect()
        });
        Polytope {
            ambient: self.ambient,
            dim: self.dim,
            vertices,
            facets,
        }
    }

    /// Scale about the origin by `lambda >= 0`. `lambda = 0` collapses to
    /// the origin point; negative factors are rejected (use `reflect`).
    pub fn scale(&self, lambda: f64) -> GeomResult<Polytope> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(GeomError::InvalidParameter(format!(
                "scale factor {lambda} must be finite and nonnegative"
            )));
        }
        if lambda == 0.0 {
            return Ok(Polytope {
                ambient: self.ambient,
                dim: 0,
                vertices: vec![Vector::zero(self.ambient)],
                facets: None,
            });
        }
        let vertices = self.vertices.iter().map(|v| *v * lambda).collect();
        let k = self.ambient as i32 - 1;
        let facets = self.facets.as_ref().map(|fs| {
            fs.iter()
                .map(|f| FacetRecord {
                    normal: f.normal,
                    offset: f.offset * lambda,
                    area: f.area * lambda.powi(k),
                    vertex_indices: f.vertex_indices.clone(),
                })
                .collect()
        });
        Ok(Polytope {
            ambient: self.ambient,
            dim: self.dim,
            vertices,
            facets,
        })
    }

    /// Rebuilds a polytope from already-transformed vertices/facets,
    /// restoring the canonical lexicographic vertex order and remapping
    /// facet indices accordingly.
    pub(crate) fn canonicalized(
        ambient: usize,
        dim: usize,
        vertices: Vec<Vector>,
        facets: Option<Vec<FacetRecord>>,
    ) -> Polytope {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| {
            if lex_less(&vertices[a], &vertices[b]) {
                std::cmp::Ordering::Less
            } else if lex_less(&vertices[b], &vertices[a]) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        let mut rank = vec![0usize; vertices.len()];
        for (new_i, &old_i) in order.iter().enumerate() {
            rank[old_i] = new_i;
        }
        let sorted: Vec<Vector> = order.iter().map(|&i| vertices[i]).collect();
        let facets = facets.map(|fs| {
            let mut fs: Vec<FacetRecord> = fs
                .into_iter()
                .map(|f| {
                    let mut vertex_indices: Vec<usize> =
                        f.vertex_indices.iter().map(|&vi| rank[vi]).collect();
                    vertex_indices.sort_unstable();
                    FacetRecord {
                        vertex_indices,
                        ..f
                    }
                })
                .collect();
            fs.sort_by(|a, b| {
                if lex_less(&a.normal, &b.normal) {
                    std::cmp::Ordering::Less
                } else if lex_less(&b.normal, &a.normal) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            });
            fs
        });
        Polytope {
            ambient,
            dim,
            vertices: sorted,
            facets,
        }
    }

    /// Point reflection through the origin (-P).
    pub fn reflect(&self) -> Polytope {
        let vertices: Vec<Vector> = self.vertices.iter().map(|v| -*v).collect();
        let facets = self.facets.as_ref().map(|fs| {
            fs.iter()
                .map(|f| FacetRecord {
                    normal: -f.normal,
                    offset: f.offset,
                    area: f.area,
                    vertex_indices: f.vertex_indices.clone(),
                })
                .collect()
        });
        Polytope::canonicalized(self.ambient, self.dim, vertices, facets)
    }

    /// n-volume: cone decomposition over facets from the vertex centroid.
    /// Lower-dimensional bodies have volume 0.
    pub fn volume(&self) -> f64 {
        if self.dim < self.ambient {
            return 0.0;
        }
        let Some(facets) = &self.facets else {
            return 0.0;
        };
        let c = self.vertex_centroid();
        let mut vol = 0.0;
        for f in facets {
            vol += f.area * (f.offset - f.normal.dot(&c));
        }
        vol / self.ambient as f64
    }

    /// Intrinsic volume of the body inside its own affine hull (length for
    /// segments, area for planar bodies, and so on). Full-dimensional bodies
    /// return `volume()`; points return 0.
    pub fn intrinsic_volume(&self) -> f64 {
        if self.dim == self.ambient {
            return self.volume();
        }
        if self.dim == 0 {
            return 0.0;
        }
        let basis = affine_basis(&self.vertices, TAU_GEO);
        let origin = self.vertices[0];
        let mapped: Vec<Vector> = self
            .vertices
            .iter()
            .map(|p| project_to_basis(p, &origin, &basis))
            .collect();
        volume_full(&mapped, basis.len())
    }

    /// True when `p` lies in the polytope within `tol` (absolute).
    pub fn contains(&self, p: &Vector, tol: f64) -> bool {
        if let Some(facets) = &self.facets {
            return facets.iter().all(|f| f.normal.dot(p) <= f.offset + tol);
        }
        // Lower-dimensional: must lie in the affine hull and inside the
        // body's hull in affine coordinates.
        if self.dim == 0 {
            return self.vertices[0].dist(p) <= tol;
        }
        let basis = affine_basis(&self.vertices, TAU_GEO);
        let origin = self.vertices[0];
        let q = project_to_basis(p, &origin, &basis);
        if lift_from_basis(&q, &origin, &basis).dist(p) > tol {
            return false;
        }
        let mapped: Vec<Vector> = self
            .vertices
            .iter()
            .map(|v| project_to_basis(v, &origin, &basis))
            .collect();
        match Polytope::hull_full(&mapped, basis.len()) {
            Ok(inner) => inner.contains(&q, tol),
            Err(_) => false,
        }
    }

    /// Edges as sorted vertex-index pairs: two vertices are joined exactly
    /// when their common active facets span a hyperplane (rank n-1).
    pub fn edges(&self) -> GeomResult<Vec<(usize, usize)>> {
        let facets = self.facets_required()?;
        let d = self.ambient;
        let mut membership: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for (fi, f) in facets.iter().enumerate() {
            for &vi in &f.vertex_indices {
                membership[vi].push(fi);
            }
        }
        let mut edges = Vec::new();
        for a in 0..self.vertices.len() {
            for b in a + 1..self.vertices.len() {
                let shared: Vec<usize> = membership[a]
                    .iter()
                    .copied()
                    .filter(|fi| membership[b].contains(fi))
                    .collect();
                if shared.len() < d - 1 {
                    continue;
                }
                let normals: Vec<Vector> = shared.iter().map(|&fi| facets[fi].normal).collect();
                if rank_span(&normals, TAU_GEO) == d - 1 {
                    edges.push((a, b));
                }
            }
        }
        Ok(edges)
    }

    /// The 2-faces as cyclically ordered vertex-index lists. For n = 3 these
    /// are the facets; for n = 4, intersections of facet pairs that span a
    /// 2-dimensional affine set.
    pub fn two_faces(&self) -> GeomResult<Vec<Vec<usize>>> {
        let facets = self.facets_required()?;
        let order_polygon = |idxs: &[usize]| -> Vec<usize> {
            let pts: Vec<Vector> = idxs.iter().map(|&vi| self.vertices[vi]).collect();
            let basis = affine_basis(&pts, TAU_GEO);
            if basis.len() < 2 {
                return idxs.to_vec();
            }
            let origin = pts[0];
            let mut c = Vector::zero(2);
            let mapped: Vec<Vector> = pts
                .iter()
                .map(|p| project_to_basis(p, &origin, &basis[..2]))
                .collect();
            for q in &mapped {
                c += *q;
            }
            c = c * (1.0 / mapped.len() as f64);
            let mut keyed: Vec<(f64, usize)> = mapped
                .iter()
                .zip(idxs)
                .map(|(q, &vi)| ((q[1] - c[1]).atan2(q[0] - c[0]), vi))
                .collect();
            keyed.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            keyed.into_iter().map(|(_, vi)| vi).collect()
        };
        if self.ambient == 3 {
            return Ok(facets
                .iter()
                .map(|f| order_polygon(&f.vertex_indices))
                .collect());
        }
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for a in 0..facets.len() {
            for b in a + 1..facets.len() {
                let shared: Vec<usize> = facets[a]
                    .vertex_indices
                    .iter()
                    .copied()
                    .filter(|vi| facets[b].vertex_indices.binary_search(vi).is_ok())
                    .collect();
                if shared.len() < 3 {
                    continue;
                }
                let pts: Vec<Vector> = shared.iter().map(|&vi| self.vertices[vi]).collect();
                if affine_basis(&pts, TAU_GEO).len() != 2 {
                    continue;
                }
                let ordered = order_polygon(&shared);
                let mut key = ordered.clone();
                key.sort_unstable();
                if !faces.iter().any(|f| {
                    let mut fk = f.clone();
                    fk.sort_unstable();
                    fk == key
                }) {
                    faces.push(ordered);
                }
            }
        }
        Ok(faces)
    }
}

/// The unit cube `[0, 1]^n`.
///
/// # Panics
///
/// Panics if `n` is not in `1..=4`.
pub fn unit_cube(n: usize) -> Polytope {
    assert!((1..=crate::geom::vector::MAX_DIM).contains(&n), "dimension out of range");
    let mut pts = Vec::new();
    for mask in 0..(1u32 << n) {
        let mut a = [0.0; crate::geom::vector::MAX_DIM];
        for (i, c) in a.iter_mut().enumerate().take(n) {
            *c = ((mask >> i) & 1) as f64;
        }
        pts.push(Vector::from_parts(n, a));
    }
    Polytope::hull(&pts).expect("cube vertices always span")
}

/// The standard simplex `conv{0, e_1, ..., e_n}`.
///
/// # Panics
///
/// Panics if `n` is not in `1..=4`.
pub fn standard_simplex(n: usize) -> Polytope {
    assert!((1..=crate::geom::vector::MAX_DIM).contains(&n), "dimension out of range");
    let mut pts = vec![Vector::zero(n)];
    for i in 0..n {
        pts.push(Vector::basis(n, i));
    }
    Polytope::hull(&pts).expect("simplex vertices always span")
}

/// The cross-polytope `conv{±e_1, ..., ±e_n}`.
///
/// # Panics
///
/// Panics if `n` is not in `1..=4`.
pub fn cross_polytope(n: usize) -> Polytope {
    assert!((1..=crate::geom::vector::MAX_DIM).contains(&n), "dimension out of range");
    let mut pts = Vec::new();
    for i in 0..n {
        pts.push(Vector::basis(n, i));
        pts.push(-Vector::basis(n, i));
    }
    Polytope::hull(&pts).expect("cross-polytope vertices always span")
}
