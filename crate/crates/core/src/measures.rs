//! Measures on the unit sphere attached to convex polytopes.
//!
//! Two kinds appear in this crate:
//!
//! * [`DiscreteSphereMeasure`] — finitely many weighted unit directions.
//!   The surface-area measure of a full-dimensional polytope is of this form
//!   (facet normals weighted by facet areas); it is the data of the discrete
//!   Minkowski problem and of Blaschke sums.
//! * [`ArcMeasure3D`] — a measure on the 2-sphere concentrated on great-circle
//!   arcs with constant density per radian. The first-order area measure of a
//!   3-polytope is of this form: one arc per edge, joining the two incident
//!   facet normals, with density `edge_length / 2`.

use crate::error::{GeomError, GeomResult};
use crate::geom::{Polytope, Rotation, Vector};

/// Atoms closer than this (in `1 - <u, v>`) are merged into one.
pub const TAU_MERGE: f64 = 1e-9;

/// Relative tolerance used by [`check_minkowski_conditions`].
pub const TAU_COND: f64 = 1e-8;

/// One weighted direction of a [`DiscreteSphereMeasure`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereAtom {
    /// Unit vector.
    pub direction: Vector,
    /// Strictly positive mass.
    pub weight: f64,
}

/// A finite positive measure on the unit sphere, stored in canonical form:
/// unit directions, strictly positive weights, near-parallel atoms merged,
/// atoms sorted lexicographically by direction.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSphereMeasure {
    dim: usize,
    atoms: Vec<SphereAtom>,
}

impl DiscreteSphereMeasure {
    /// Builds a measure from raw `(direction, weight)` pairs. Directions are
    /// normalized; zero weights are dropped; negative weights are rejected;
    /// atoms within [`TAU_MERGE`] of each other are merged (weighted mean
    /// direction, summed weight).
    pub fn new(dim: usize, raw: &[(Vector, f64)]) -> GeomResult<Self> {
        if !(1..=crate::geom::MAX_DIM).contains(&dim) {
            return Err(GeomError::Dimension(format!(
                "measure dimension {dim} out of range"
            )));
        }
        let mut atoms: Vec<SphereAtom> = Vec::new();
        for (u, w) in raw {
            if u.dim() != dim {
                return Err(GeomError::Dimension(
                    "atom direction has wrong dimension".into(),
                ));
            }
            if !w.is_finite() || *w < 0.0 {
                return Err(GeomError::InvalidParameter(format!(
                    "atom weight {w} is not a finite nonnegative number"
                )));
            }
            if *w == 0.0 {
                continue;
            }
            let unit = u.normalized()?;
            // Merge with an existing near-parallel atom if present.
            if let Some(existing) = atoms
                .iter_mut()
                .find(|a| 1.0 - a.direction.dot(&unit) <= TAU_MERGE)
            {
                let combined = existing.direction * existing.weight + unit * *w;
                existing.direction = combined.normalized()?;
                existing.weight += *w;
            } else {
                atoms.push(SphereAtom {
                    direction: unit,
                    weight: *w,
                });
            }
        }
        atoms.sort_by(|a, b| {
            a.direction
                .coords()
                .partial_cmp(b.direction.coords())
                .expect("finite directions")
        });
        Ok(DiscreteSphereMeasure { dim, atoms })
    }

    /// Accepts atoms verbatim when they are already canonical — unit
    /// directions (within 1e-9), finite positive weights — preserving every
    /// bit, so serialized canonical measures reload bit-compatibly.  Returns
    /// an error when the atoms need canonicalizing; callers then fall back
    /// to [`DiscreteSphereMeasure::new`].
    pub(crate) fn from_canonical_atoms(
        dim: usize,
        atoms: Vec<SphereAtom>,
    ) -> GeomResult<Self> {
        if !(1..=crate::geom::MAX_DIM).contains(&dim) {
            return Err(GeomError::Dimension(format!(
                "measure dimension {dim} out of range"
            )));
        }
        for a in &atoms {
            if a.direction.dim() != dim {
                return Err(GeomError::Dimension(
                    "atom direction has wrong dimension".into(),
                ));
            }
            if !a.direction.is_finite() || (a.direction.norm() - 1.0).abs() > 1e-9 {
                return Err(GeomError::InvalidParameter(
                    "atom direction is not a unit vector".into(),
                ));
            }
            if !a.weight.is_finite() || a.weight <= 0.0 {
                return Err(GeomError::InvalidParameter(
                    "atom weight is not finite and positive".into(),
                ));
            }
        }
        Ok(DiscreteSphereMeasure { dim, atoms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[SphereAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Total mass `sum_i w_i`.
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Resultant vector `sum_i w_i u_i` (zero for surface-area measures).
    pub fn resultant(&self) -> Vector {
        let mut r = Vector::zero(self.dim);
        for a in &self.atoms {
            r = r + a.direction * a.weight;
        }
        r
    }

    /// The measure with every weight multiplied by `factor >= 0`.
    pub fn scaled(&self, factor: f64) -> GeomResult<Self> {
        if !factor.is_finite() || factor < 0.0 {
            return Err(GeomError::InvalidParameter(
                "scale factor must be finite and nonnegative".into(),
            ));
        }
        let raw: Vec<(Vector, f64)> = self
            .atoms
            .iter()
            .map(|a| (a.direction, a.weight * factor))
            .collect();
        DiscreteSphereMeasure::new(self.dim, &raw)
    }

    /// Pushforward under a rotation.
    pub fn apply_rotation(&self, rot: &Rotation) -> GeomResult<Self> {
        if rot.dim() != self.dim {
            return Err(GeomError::Dimension(
                "rotation dimension differs from measure dimension".into(),
            ));
        }
        let raw: Vec<(Vector, f64)> = self
            .atoms
            .iter()
            .map(|a| (rot.apply(&a.direction), a.weight))
            .collect();
        DiscreteSphereMeasure::new(self.dim, &raw)
    }
}

/// Surface-area measure of a full-dimensional polytope: one atom per facet,
/// direction = outward unit normal, weight = facet area.
pub fn surface_area_measure(p: &Polytope) -> GeomResult<DiscreteSphereMeasure> {
    if p.dim() != p.ambient() {
        return Err(GeomError::LowerDimensional(
            "surface-area measure needs a full-dimensional polytope".into(),
        ));
    }
    let raw: Vec<(Vector, f64)> = p
        .facets_required()?
        .iter()
        .map(|f| (f.normal, f.area))
        .collect();
    DiscreteSphereMeasure::new(p.ambient(), &raw)
}

/// Union of finitely many measures on the same sphere (atoms concatenated
/// and re-canonicalized). The Blaschke sum of bodies is the body whose
/// surface-area measure is the merge of theirs.
pub fn merge_measures(parts: &[&DiscreteSphereMeasure]) -> GeomResult<DiscreteSphereMeasure> {
    let dim = match parts.first() {
        Some(m) => m.dim(),
        None => {
            return Err(GeomError::InvalidParameter(
                "merge_measures needs at least one measure".into(),
            ))
        }
    };
    let mut raw = Vec::new();
    for m in parts {
        if m.dim() != dim {
            return Err(GeomError::Dimension(
                "measures live on spheres of different dimensions".into(),
            ));
        }
        raw.extend(m.atoms().iter().map(|a| (a.direction, a.weight)));
    }
    DiscreteSphereMeasure::new(dim, &raw)
}

/// Outcome of the Minkowski solvability test for a discrete measure:
/// the resultant must vanish and the directions must span the whole space
/// (equivalently, the measure is not concentrated on any great subsphere).
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionsVerdict {
    /// `|sum_i w_i u_i|`, should be ~0.
    pub resultant_norm: f64,
    /// Smallest eigenvalue of `sum_i w_i u_i u_i^T`; positive iff the
    /// directions span.
    pub min_moment_eigenvalue: f64,
    /// Total mass, for scale reference.
    pub total_mass: f64,
    /// `resultant_norm <= TAU_COND * max(total_mass, 1)`.
    pub centered: bool,
    /// `min_moment_eigenvalue > TAU_COND * total_mass / dim`.
    pub spanning: bool,
}

impl ConditionsVerdict {
    /// Both conditions hold and the measure has at least `dim + 1` atoms
    /// (the minimum for a polytope with nonempty interior).
    pub fn ok(&self) -> bool {
        self.centered && self.spanning
    }
}

/// Checks the existence conditions for the discrete Minkowski problem.
pub fn check_minkowski_conditions(m: &DiscreteSphereMeasure) -> ConditionsVerdict {
    let total = m.total_mass();
    let resultant_norm = m.resultant().norm();
    let n = m.dim();
    let moment = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        m.atoms()
            .iter()
            .map(|a| a.weight * a.direction[i] * a.direction[j])
            .sum::<f64>()
    });
    let min_moment_eigenvalue = moment
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &x| acc.min(x));
    let centered = resultant_norm <= TAU_COND * total.max(1.0);
    let spanning = m.len() > n && min_moment_eigenvalue > TAU_COND * total / n as f64;
    ConditionsVerdict {
        resultant_norm,
        min_moment_eigenvalue,
        total_mass: total,
        centered,
        spanning,
    }
}

/// A great-circle arc on the 2-sphere carrying constant density per radian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc3 {
    /// Unit vector at the start of the arc.
    pub start: Vector,
    /// Unit vector at the end of the arc; the arc is the shorter geodesic.
    pub end: Vector,
    /// Mass per radian along the arc (strictly positive).
    pub density: f64,
}

impl Arc3 {
    /// Angular length in radians (in `(0, pi)`).
    pub fn angle(&self) -> f64 {
        self.start.dot(&self.end).clamp(-1.0, 1.0).acos()
    }

    /// Mass carried by the arc.
    pub fn mass(&self) -> f64 {
        self.density * self.angle()
    }

    /// Exact integral of `v -> |<u, v>|` against this arc's measure.
    ///
    /// With `v(phi) = cos(phi) a + sin(phi) p` (where `p` spans the arc plane
    /// orthogonally to `a`), the integrand is `|A cos(phi) + B sin(phi)|`
    /// whose antiderivative between sign changes is `A sin(phi) - B cos(phi)`;
    /// an arc shorter than `pi` contains at most one sign change.
    pub fn cosine_integral(&self, u: &Vector) -> f64 {
        let theta = self.angle();
        if theta <= 0.0 {
            return 0.0;
        }
        let a = self.start;
        let ortho = self.end - a * a.dot(&self.end);
        let p = match ortho.normalized() {
            Ok(p) => p,
            Err(_) => return 0.0, // antipodal or identical endpoints
        };
        let (ca, cb) = (u.dot(&a), u.dot(&p));
        let amp = (ca * ca + cb * cb).sqrt();
        if amp == 0.0 {
            return 0.0;
        }
        // Zeros of A cos(phi) + B sin(phi) = amp * cos(phi - psi).
        let psi = cb.atan2(ca);
        let mut cuts = vec![0.0, theta];
        let mut k = (-(psi + std::f64::consts::FRAC_PI_2) / std::f64::consts::PI).floor();
        loop {
            let zero = psi + std::f64::consts::FRAC_PI_2 + k * std::f64::consts::PI;
            if zero >= theta {
                break;
            }
            if zero > 0.0 {
                cuts.push(zero);
            }
            k += 1.0;
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite cuts"));
        let anti = |phi: f64| ca * phi.sin() - cb * phi.cos();
        let mut total = 0.0;
        for w in cuts.windows(2) {
            total += (anti(w[1]) - anti(w[0])).abs();
        }
        self.density * total
    }
}

/// A positive measure on the 2-sphere concentrated on great-circle arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcMeasure3D {
    arcs: Vec<Arc3>,
}

impl ArcMeasure3D {
    /// Builds the measure, validating that endpoints are (normalized to)
    /// unit vectors in R^3, arcs are nondegenerate (distinct, non-antipodal
    /// endpoints) and densities are strictly positive.
    pub fn new(arcs: Vec<Arc3>) -> GeomResult<Self> {
        let mut cleaned = Vec::with_capacity(arcs.len());
        for arc in arcs {
            if arc.start.dim() != 3 || arc.end.dim() != 3 {
                return Err(GeomError::Dimension("arcs must live on S^2".into()));
            }
            if !arc.density.is_finite() || arc.density <= 0.0 {
                return Err(GeomError::InvalidParameter(
                    "arc density must be finite and positive".into(),
                ));
            }
            let start = arc.start.normalized()?;
            let end = arc.end.normalized()?;
            let cos = start.dot(&end);
            if cos >= 1.0 - 1e-14 {
                return Err(GeomError::Degenerate("arc endpoints coincide".into()));
            }
            if cos <= -1.0 + 1e-14 {
                return Err(GeomError::Degenerate(
                    "arc endpoints are antipodal; the geodesic is not unique".into(),
                ));
            }
            cleaned.push(Arc3 {
                start,
                end,
                density: arc.density,
            });
        }
        Ok(ArcMeasure3D { arcs: cleaned })
    }

    /// Accepts arcs verbatim when they are already canonical — unit
    /// endpoints within 1e-9, distinct and non-antipodal, positive finite
    /// densities — preserving every bit.  Errors send callers to the
    /// canonicalizing [`ArcMeasure3D::new`].
    pub(crate) fn from_canonical_arcs(arcs: Vec<Arc3>) -> GeomResult<Self> {
        for arc in &arcs {
            if arc.start.dim() != 3 || arc.end.dim() != 3 {
                return Err(GeomError::Dimension("arcs must live on S^2".into()));
            }
            if !arc.density.is_finite() || arc.density <= 0.0 {
                return Err(GeomError::InvalidParameter(
                    "arc density must be finite and positive".into(),
                ));
            }
            if !arc.start.is_finite()
                || !arc.end.is_finite()
                || (arc.start.norm() - 1.0).abs() > 1e-9
                || (arc.end.norm() - 1.0).abs() > 1e-9
            {
                return Err(GeomError::InvalidParameter(
                    "arc endpoint is not a unit vector".into(),
                ));
            }
            let cos = arc.start.dot(&arc.end);
            if cos >= 1.0 - 1e-14 {
                return Err(GeomError::Degenerate("arc endpoints coincide".into()));
            }
            if cos <= -1.0 + 1e-14 {
                return Err(GeomError::Degenerate(
                    "arc endpoints are antipodal; the geodesic is not unique".into(),
                ));
            }
        }
        Ok(ArcMeasure3D { arcs })
    }

    pub fn arcs(&self) -> &[Arc3] {
        &self.arcs
    }

    /// Total mass `sum_arcs density * angle`.
    pub fn total_mass(&self) -> f64 {
        self.arcs.iter().map(Arc3::mass).sum()
    }

    /// Exact integral of `v -> |<u, v>|` against the measure.
    pub fn cosine_transform(&self, u: &Vector) -> f64 {
        self.arcs.iter().map(|a| a.cosine_integral(u)).sum()
    }

    /// First moment `int v d mu(v)`; vanishes for first-order area measures
    /// of convex bodies.
    pub fn resultant(&self) -> Vector {
        // int_0^theta (cos phi a + sin phi p) density dphi
        //   = density (sin theta a + (1 - cos theta) p).
        let mut r = Vector::zero(3);
        for arc in &self.arcs {
            let theta = arc.angle();
            let ortho = arc.end - arc.start * arc.start.dot(&arc.end);
            if let Ok(p) = ortho.normalized() {
                r = r + (arc.start * theta.sin() + p * (1.0 - theta.cos())) * arc.density;
            }
        }
        r
    }

    /// Pushforward under a rotation.
    pub fn apply_rotation(&self, rot: &Rotation) -> GeomResult<Self> {
        if rot.dim() != 3 {
            return Err(GeomError::Dimension("arc measures live on S^2".into()));
        }
        ArcMeasure3D::new(
            self.arcs
                .iter()
                .map(|a| Arc3 {
                    start: rot.apply(&a.start),
                    end: rot.apply(&a.end),
                    density: a.density,
                })
                .collect(),
        )
    }
}

/// First-order area measure of a full-dimensional 3-polytope: for each edge,
/// a great-circle arc between the two incident facet normals with density
/// `edge_length / 2`.
///
/// Normalization check: the total mass is the integral mean curvature
/// `sum_e (length_e / 2) * dihedral_e`, which equals `2 pi * mean_width`.
pub fn area_measure_order1_3d(p: &Polytope) -> GeomResult<ArcMeasure3D> {
    if p.ambient() != 3 {
        return Err(GeomError::Dimension(
            "first-order area measure is implemented on S^2".into(),
        ));
    }
    if p.dim() != 3 {
        return Err(GeomError::LowerDimensional(
            "first-order area measure needs a full-dimensional polytope".into(),
        ));
    }
    let facets = p.facets_required()?;
    let mut arcs = Vec::new();
    for (i, j) in p.edges()? {
        let incident: Vec<&crate::geom::FacetRecord> = facets
            .iter()
            .filter(|f| f.vertex_indices.contains(&i) && f.vertex_indices.contains(&j))
            .collect();
        if incident.len() != 2 {
            return Err(GeomError::Degenerate(format!(
                "edge shared by {} facets (expected 2)",
                incident.len()
            )));
        }
        let length = p.vertices()[i].dist(&p.vertices()[j]);
        arcs.push(Arc3 {
            start: incident[0].normal,
            end: incident[1].normal,
            density: length / 2.0,
        });
    }
    ArcMeasure3D::new(arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polytope::{standard_simplex, unit_cube};
    use crate::geom::{random_polytope, random_rotation, DirectionGrid};
    use approx::assert_relative_eq;

    #[test]
    fn measure_canonicalization() {
        let e1 = Vector::basis(3, 0);
        let e2 = Vector::basis(3, 1);
        let m = DiscreteSphereMeasure::new(
            3,
            &[
                (e2, 2.0),
                (e1 * 5.0, 1.0),   // normalized
                (e1, 1.5),         // merged with the previous atom
                (-e1, 0.0),        // dropped
            ],
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert_relative_eq!(m.total_mass(), 4.5);
        // Lex order puts e2 = (0,1,0) before e1 = (1,0,0).
        assert_eq!(m.atoms()[0].direction, e2);
        assert_relative_eq!(m.atoms()[1].weight, 2.5);
        assert!(DiscreteSphereMeasure::new(3, &[(e1, -1.0)]).is_err());
        assert!(DiscreteSphereMeasure::new(3, &[(Vector::zero(3), 1.0)]).is_err());
    }

    #[test]
    fn surface_area_measure_of_cube_and_simplex() {
        let cube = unit_cube(3);
        let m = surface_area_measure(&cube).unwrap();
        assert_eq!(m.len(), 6);
        assert_relative_eq!(m.total_mass(), 6.0, epsilon = 1e-12);
        assert!(m.resultant().norm() < 1e-12);
        let verdict = check_minkowski_conditions(&m);
        assert!(verdict.ok());

        let s = standard_simplex(3);
        let ms = surface_area_measure(&s).unwrap();
        assert_eq!(ms.len(), 4);
        assert_relative_eq!(ms.total_mass(), 1.5 + 0.75_f64.sqrt(), epsilon = 1e-12);
        assert!(check_minkowski_conditions(&ms).ok());

        let square = Polytope::hull(&[
            Vector::new(&[0.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[1.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[0.0, 1.0, 0.0]).unwrap(),
            Vector::new(&[1.0, 1.0, 0.0]).unwrap(),
        ])
        .unwrap();
        assert!(surface_area_measure(&square).is_err());
    }

    #[test]
    fn conditions_flag_bad_measures() {
        let e = |i| Vector::basis(3, i);
        // Not centered.
        let lopsided =
            DiscreteSphereMeasure::new(3, &[(e(0), 1.0), (e(1), 1.0), (e(2), 1.0)]).unwrap();
        let v = check_minkowski_conditions(&lopsided);
        assert!(!v.centered && !v.ok());
        // Centered but concentrated on a great circle.
        let flat = DiscreteSphereMeasure::new(
            3,
            &[(e(0), 1.0), (-e(0), 1.0), (e(1), 1.0), (-e(1), 1.0)],
        )
        .unwrap();
        let v = check_minkowski_conditions(&flat);
        assert!(v.centered && !v.spanning && !v.ok());
    }

    #[test]
    fn merge_measures_adds_mass() {
        let cube = surface_area_measure(&unit_cube(3)).unwrap();
        let simplex = surface_area_measure(&standard_simplex(3)).unwrap();
        let merged = merge_measures(&[&cube, &simplex]).unwrap();
        assert_relative_eq!(
            merged.total_mass(),
            cube.total_mass() + simplex.total_mass(),
            epsilon = 1e-12
        );
        // Shared normals (the three coordinate planes and their opposites)
        // merge: cube has 6 atoms, simplex 4, with 3 coincident pairs.
        assert_eq!(merged.len(), 7);
        assert!(check_minkowski_conditions(&merged).ok());
    }

    #[test]
    fn cube_first_order_measure_mass_and_transform() {
        let cube = unit_cube(3);
        let s1 = area_measure_order1_3d(&cube).unwrap();
        assert_eq!(s1.arcs().len(), 12);
        // Integral mean curvature of the unit cube: 12 edges, length 1,
        // exterior dihedral pi/2, density 1/2 -> total 3 pi.
        assert_relative_eq!(s1.total_mass(), 3.0 * std::f64::consts::PI, epsilon = 1e-12);
        assert!(s1.resultant().norm() < 1e-12);
        // Cosine transform along a coordinate axis: the 8 arcs with a
        // component along e1 each integrate to 1/2, the 4 others vanish.
        assert_relative_eq!(
            s1.cosine_transform(&Vector::basis(3, 0)),
            4.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn total_mass_matches_mean_width() {
        // total mass of S_1 = 2 pi * mean width; the mean width comes from
        // the support function averaged over an antipodally symmetric grid.
        let grid = DirectionGrid::s2(48, 96).unwrap();
        for seed in [1u64, 5, 9] {
            let p = random_polytope(seed, 3, 10).unwrap();
            let s1 = area_measure_order1_3d(&p).unwrap();
            let mean_width = 2.0 * grid.integrate(|u| p.support(u));
            assert_relative_eq!(
                s1.total_mass(),
                std::f64::consts::TAU * mean_width,
                epsilon = 1e-4 * s1.total_mass()
            );
        }
    }

    #[test]
    fn cosine_integral_matches_brute_quadrature() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let a = crate::geom::random::gaussian_vector(&mut rng, 3)
                .normalized()
                .unwrap();
            let mut b = crate::geom::random::gaussian_vector(&mut rng, 3)
                .normalized()
                .unwrap();
            if a.dot(&b) < -0.99 {
                b = -b;
            }
            let arc = Arc3 {
                start: a,
                end: b,
                density: rng.gen_range(0.1..2.0),
            };
            let u = crate::geom::random::gaussian_vector(&mut rng, 3);
            let exact = arc.cosine_integral(&u);
            // Brute midpoint rule along the arc.
            let theta = arc.angle();
            let p = (b - a * a.dot(&b)).normalized().unwrap();
            let steps = 20000;
            let mut brute = 0.0;
            for s in 0..steps {
                let phi = (s as f64 + 0.5) / steps as f64 * theta;
                let v = a * phi.cos() + p * phi.sin();
                brute += u.dot(&v).abs();
            }
            brute *= arc.density * theta / steps as f64;
            assert_relative_eq!(exact, brute, epsilon = 1e-6, max_relative = 1e-6);
        }
    }

    #[test]
    fn first_order_measure_rotates_with_body() {
        let p = random_polytope(3, 3, 9).unwrap();
        let rot = random_rotation(17, 3).unwrap();
        let s1 = area_measure_order1_3d(&p).unwrap();
        let s1_rot = area_measure_order1_3d(&p.apply_rotation(&rot)).unwrap();
        let pushed = s1.apply_rotation(&rot).unwrap();
        // Compare through the cosine transform on a grid (arcs may be listed
        // in any order, so compare as measures not atom lists).
        let grid = DirectionGrid::s2(8, 16).unwrap();
        for u in grid.directions() {
            assert_relative_eq!(
                s1_rot.cosine_transform(u),
                pushed.cosine_transform(u),
                epsilon = 1e-10
            );
        }
        assert_relative_eq!(s1.total_mass(), s1_rot.total_mass(), epsilon = 1e-10);
    }

    #[test]
    fn arc_validation() {
        let e1 = Vector::basis(3, 0);
        let e2 = Vector::basis(3, 1);
        assert!(ArcMeasure3D::new(vec![Arc3 {
            start: e1,
            end: e1,
            density: 1.0
        }])
        .is_err());
        assert!(ArcMeasure3D::new(vec![Arc3 {
            start: e1,
            end: -e1,
            density: 1.0
        }])
        .is_err());
        assert!(ArcMeasure3D::new(vec![Arc3 {
            start: e1,
            end: e2,
            density: 0.0
        }])
        .is_err());
        let ok = ArcMeasure3D::new(vec![Arc3 {
            start: e1,
            end: e2,
            density: 2.0
        }])
        .unwrap();
        assert_relative_eq!(ok.total_mass(), std::f64::consts::PI, epsilon = 1e-12);
    }
}
