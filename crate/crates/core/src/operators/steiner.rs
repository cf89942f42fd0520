//! Steiner points (grid quadrature and exact external-angle forms) and the
//! trivial maps `I(P) = P - s(P)` and `(-I)(P) = -P + s(P)`.

use crate::error::{GeomError, GeomResult};
use crate::geom::{
    affine_basis, external_angles, lift_from_basis, project_to_basis, DirectionGrid, Polytope,
    Vector, TAU_GEO,
};

/// Steiner point by spherical quadrature:
/// `s(P) = n * sum_i w_i h(P, u_i) u_i` over a grid whose weights sum to 1.
///
/// The grid must contain `-u` alongside every `u` (with equal weight): on
/// such grids the formula is exactly translation-equivariant and vanishes
/// exactly on origin-symmetric bodies, and the remaining quadrature error is
/// `O(mesh^2)` for polytopes.
pub fn steiner_point(p: &Polytope, grid: &DirectionGrid) -> GeomResult<Vector> {
    let n = p.ambient();
    if grid.dim() != n {
        return Err(GeomError::Dimension(
            "grid dimension differs from body dimension".into(),
        ));
    }
    if grid.is_empty() {
        return Err(GeomError::InvalidGrid("empty direction grid".into()));
    }
    if !grid.symmetric() {
        return Err(GeomError::InvalidGrid(
            "Steiner quadrature needs an antipodally symmetric grid".into(),
        ));
    }
    let mut s = Vector::zero(n);
    for (u, w) in grid.directions().iter().zip(grid.weights()) {
        s += *u * (w * p.support(u));
    }
    Ok(s * n as f64)
}

/// Exact Steiner point of a polytope: `s(P) = sum_v gamma(v) v` with
/// `gamma(v)` the external angle of the vertex. Lower-dimensional bodies are
/// handled intrinsically (the Steiner point does not depend on the ambient
/// space), so points, segments and planar faces all work.
pub fn steiner_point_exact(p: &Polytope) -> GeomResult<Vector> {
    if p.dim() == 0 {
        return Ok(p.vertices()[0]);
    }
    if p.dim() == p.ambient() {
        let gammas = external_angles(p)?;
        let mut s = Vector::zero(p.ambient());
        for (g, v) in gammas.iter().zip(p.vertices()) {
            s += *v * *g;
        }
        return Ok(s);
    }
    // Intrinsic computation in the affine hull.
    let origin = p.vertex_centroid();
    let basis = affine_basis(p.vertices(), TAU_GEO);
    let coords: Vec<Vector> = p
        .vertices()
        .iter()
        .map(|v| project_to_basis(v, &origin, &basis))
        .collect();
    let flat = Polytope::hull(&coords)?;
    let gammas = external_angles(&flat)?;
    let mut s = Vector::zero(flat.ambient());
    for (g, v) in gammas.iter().zip(flat.vertices()) {
        s += *v * *g;
    }
    Ok(lift_from_basis(&s, &origin, &basis))
}

/// The trivial map `I(P) = P - s(P)`: the body translated so its Steiner
/// point is the origin.
pub fn trivial_map_i(p: &Polytope) -> GeomResult<Polytope> {
    let s = steiner_point_exact(p)?;
    Ok(p.translate(&-s))
}

/// The trivial map `(-I)(P) = -P + s(P)`: the reflection of `I(P)`.
pub fn trivial_map_neg_i(p: &Polytope) -> GeomResult<Polytope> {
    let s = steiner_point_exact(p)?;
    Ok(p.reflect().translate(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polytope::{standard_simplex, unit_cube};
    use crate::geom::{minkowski_sum, random_polytope, random_rotation};
    use approx::assert_relative_eq;

    #[test]
    fn grid_steiner_of_cube_is_center() {
        let cube = unit_cube(3);
        let grid = DirectionGrid::default_steiner(3).unwrap();
        let s = steiner_point(&cube, &grid).unwrap();
        for k in 0..3 {
            // Exact gridwise: the linear part of h reproduces translations
            // and the symmetric part cancels over antipodal pairs.
            assert_relative_eq!(s[k], 0.5, epsilon = 1e-12);
        }
        let t = unit_cube(4);
        let grid4 = DirectionGrid::default_steiner(4).unwrap();
        let s4 = steiner_point(&t, &grid4).unwrap();
        for k in 0..4 {
            assert_relative_eq!(s4[k], 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn grid_steiner_translation_identity() {
        let p = random_polytope(8, 3, 9).unwrap();
        let grid = DirectionGrid::default_residual(3).unwrap();
        let t = Vector::new(&[0.7, -2.0, 0.3]).unwrap();
        let s0 = steiner_point(&p, &grid).unwrap();
        let s1 = steiner_point(&p.translate(&t), &grid).unwrap();
        for k in 0..3 {
            assert_relative_eq!(s1[k] - s0[k], t[k], epsilon = 1e-10);
        }
    }

    #[test]
    fn asymmetric_grid_rejected() {
        let dirs = vec![
            Vector::basis(3, 0),
            Vector::basis(3, 1),
            Vector::basis(3, 2),
        ];
        let grid = DirectionGrid::from_directions(dirs, vec![1.0 / 3.0; 3]).unwrap();
        assert!(steiner_point(&unit_cube(3), &grid).is_err());
    }

    #[test]
    fn exact_steiner_matches_closed_forms() {
        let s3 = steiner_point_exact(&standard_simplex(3)).unwrap();
        for k in 0..3 {
            assert_relative_eq!(s3[k], 7.0 / 24.0, epsilon = 1e-10);
        }
        let s4 = steiner_point_exact(&standard_simplex(4)).unwrap();
        for k in 0..4 {
            assert_relative_eq!(s4[k], 15.0 / 64.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn exact_steiner_of_degenerate_bodies() {
        // Point.
        let pt = Polytope::hull(&[Vector::new(&[1.0, 2.0, 3.0]).unwrap()]).unwrap();
        assert_eq!(
            steiner_point_exact(&pt).unwrap(),
            Vector::new(&[1.0, 2.0, 3.0]).unwrap()
        );
        // Segment: midpoint.
        let seg = Polytope::hull(&[
            Vector::new(&[0.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[2.0, 4.0, 0.0]).unwrap(),
        ])
        .unwrap();
        let s = steiner_point_exact(&seg).unwrap();
        assert_relative_eq!(s[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(s[1], 2.0, epsilon = 1e-12);
        // Planar square in R^3 (and in R^4): center of symmetry.
        let square = Polytope::hull(&[
            Vector::new(&[0.0, 0.0, 1.0]).unwrap(),
            Vector::new(&[1.0, 0.0, 1.0]).unwrap(),
            Vector::new(&[0.0, 1.0, 1.0]).unwrap(),
            Vector::new(&[1.0, 1.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let s = steiner_point_exact(&square).unwrap();
        assert_relative_eq!(s[0], 0.5, epsilon = 1e-12);
        assert_relative_eq!(s[1], 0.5, epsilon = 1e-12);
        assert_relative_eq!(s[2], 1.0, epsilon = 1e-12);
        // Tetrahedron embedded in a hyperplane of R^4: intrinsic value again
        // (7/24, 7/24, 7/24) in plane coordinates => lifted accordingly.
        let tetra4 = Polytope::hull(&[
            Vector::new(&[0.0, 0.0, 0.0, 2.0]).unwrap(),
            Vector::new(&[1.0, 0.0, 0.0, 2.0]).unwrap(),
            Vector::new(&[0.0, 1.0, 0.0, 2.0]).unwrap(),
            Vector::new(&[0.0, 0.0, 1.0, 2.0]).unwrap(),
        ])
        .unwrap();
        let s = steiner_point_exact(&tetra4).unwrap();
        for k in 0..3 {
            assert_relative_eq!(s[k], 7.0 / 24.0, epsilon = 1e-10);
        }
        assert_relative_eq!(s[3], 2.0, epsilon = 1e-10);
    }

    #[test]
    fn exact_and_grid_steiner_agree() {
        for seed in 0..4u64 {
            let p = random_polytope(seed, 3, 10).unwrap();
            let grid = DirectionGrid::default_steiner(3).unwrap();
            let se = steiner_point_exact(&p).unwrap();
            let sg = steiner_point(&p, &grid).unwrap();
            assert!(
                se.dist(&sg) < 1e-4,
                "seed {seed}: exact {:?} vs grid {:?}",
                se.coords(),
                sg.coords()
            );
        }
        let p = random_polytope(1, 4, 8).unwrap();
        let grid = DirectionGrid::default_steiner(4).unwrap();
        let se = steiner_point_exact(&p).unwrap();
        let sg = steiner_point(&p, &grid).unwrap();
        assert!(se.dist(&sg) < 1e-3, "4d: {:?} vs {:?}", se.coords(), sg.coords());
    }

    #[test]
    fn grid_steiner_matches_monte_carlo_oracle() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        // Independent quadrature oracle: s(K) = n E[h(K, U) U] for uniform U
        // on the sphere, estimated with 10^7 pseudorandom samples.
        let simplex = standard_simplex(3);
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        let samples = 10_000_000usize;
        let mut acc = Vector::zero(3);
        for _ in 0..samples {
            let u = crate::geom::random::gaussian_vector(&mut rng, 3)
                .normalized()
                .unwrap();
            acc += u * simplex.support(&u);
        }
        let mc = acc * (3.0 / samples as f64);
        let grid = steiner_point(&simplex, &DirectionGrid::default_steiner(3).unwrap()).unwrap();
        for k in 0..3 {
            assert_relative_eq!(mc[k], grid[k], epsilon = 3e-3);
            assert_relative_eq!(grid[k], 7.0 / 24.0, epsilon = 1e-4);
        }
    }

    #[test]
    fn exact_steiner_is_minkowski_additive() {
        let p = random_polytope(31, 3, 8).unwrap();
        let q = random_polytope(32, 3, 8).unwrap();
        let sum = minkowski_sum(&p, &q).unwrap();
        let lhs = steiner_point_exact(&sum).unwrap();
        let rhs = steiner_point_exact(&p).unwrap() + steiner_point_exact(&q).unwrap();
        assert!(lhs.dist(&rhs) < 1e-9, "additivity residual {}", lhs.dist(&rhs));

        let p4 = random_polytope(33, 4, 6).unwrap();
        let q4 = random_polytope(34, 4, 6).unwrap();
        let sum4 = minkowski_sum(&p4, &q4).unwrap();
        let lhs4 = steiner_point_exact(&sum4).unwrap();
        let rhs4 = steiner_point_exact(&p4).unwrap() + steiner_point_exact(&q4).unwrap();
        assert!(lhs4.dist(&rhs4) < 1e-8, "4d additivity residual {}", lhs4.dist(&rhs4));
    }

    #[test]
    fn exact_steiner_rotation_equivariance() {
        for seed in 0..6u64 {
            let p = random_polytope(seed, 3, 9).unwrap();
            let rot = random_rotation(seed + 100, 3).unwrap();
            let lhs = steiner_point_exact(&p.apply_rotation(&rot)).unwrap();
            let rhs = rot.apply(&steiner_point_exact(&p).unwrap());
            assert!(lhs.dist(&rhs) < 1e-10, "residual {}", lhs.dist(&rhs));
        }
        for seed in 0..3u64 {
            let p = random_polytope(seed, 4, 7).unwrap();
            let rot = random_rotation(seed + 200, 4).unwrap();
            let lhs = steiner_point_exact(&p.apply_rotation(&rot)).unwrap();
            let rhs = rot.apply(&steiner_point_exact(&p).unwrap());
            assert!(lhs.dist(&rhs) < 1e-9, "residual {}", lhs.dist(&rhs));
        }
    }

    #[test]
    fn trivial_maps_center_and_translate() {
        let cube = unit_cube(3);
        let i = trivial_map_i(&cube).unwrap();
        let ni = trivial_map_neg_i(&cube).unwrap();
        // I(cube) = [-1/2, 1/2]^3 and, by central symmetry, (-I) agrees.
        for k in 0..3 {
            assert_relative_eq!(i.support(&Vector::basis(3, k)), 0.5, epsilon = 1e-12);
            assert_relative_eq!(i.support(&-Vector::basis(3, k)), 0.5, epsilon = 1e-12);
            assert_relative_eq!(ni.support(&Vector::basis(3, k)), 0.5, epsilon = 1e-12);
        }
        // Translation invariance: I(P + t) = I(P).
        let p = random_polytope(77, 3, 9).unwrap();
        let t = Vector::new(&[5.0, -3.0, 0.25]).unwrap();
        let a = trivial_map_i(&p).unwrap();
        let b = trivial_map_i(&p.translate(&t)).unwrap();
        for (va, vb) in a.vertices().iter().zip(b.vertices()) {
            assert!(va.dist(vb) < 1e-9);
        }
        // Steiner point of the output is 0.
        let s = steiner_point_exact(&a).unwrap();
        assert!(s.norm() < 1e-10);
        let sn = steiner_point_exact(&trivial_map_neg_i(&p).unwrap()).unwrap();
        assert!(sn.norm() < 1e-10);
    }
}
