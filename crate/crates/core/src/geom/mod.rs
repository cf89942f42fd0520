//! Geometric foundation: fixed-size vectors, convex hulls and polytopes,
//! rotations, direction grids on spheres, seeded random bodies, and basic
//! polytope operations (shadows, splits, Minkowski sums, external angles).

pub mod angles;
pub mod grid;
pub mod ops;
pub mod polytope;
pub mod random;
pub mod rotation;
pub mod vector;

pub use angles::external_angles;
pub use grid::DirectionGrid;
pub use ops::{convex_hull, hausdorff_distance, minkowski_sum, projection_volume, split_by_hyperplane};
pub use polytope::{cross_polytope, standard_simplex, unit_cube, FacetRecord, Polytope, TAU_GEO};
pub use random::{random_polytope, random_rotation};
pub use rotation::{Rotation, TAU_ORTHO};
pub use vector::{
    affine_basis, complement_basis, det_n, lift_from_basis, orthogonal_complement_1,
    project_to_basis, solve_small, Vector, MAX_DIM,
};
