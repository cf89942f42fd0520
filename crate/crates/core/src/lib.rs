//! Convex-polytope geometry and Minkowski-valuation operators in R^3 and R^4.
//!
//! The crate is organized bottom-up:
//!
//! * [`geom`] — vectors, rotations, polytopes (brute-force exact hulls at desk
//!   scale), direction grids, seeded random bodies, and the shadow-volume
//!   oracle used to validate projection bodies.
//! * [`measures`] — discrete surface-area measures, solvability conditions
//!   for the Minkowski problem, and the first-order area measure of a
//!   3-polytope as a great-circle arc measure.
//! * [`operators`] — projection bodies, Steiner points, the trivial maps
//!   `I` and `-I`, kernel-defined homomorphisms, and the order-1 projection
//!   body in R^3, all exposed through a common support-oracle handle.
//! * [`solver`] — a damped-Newton solver for the discrete Minkowski problem
//!   and Blaschke sums built on top of it.
//! * [`decomposition`] — extraction of homogeneous components of an operator
//!   from its behaviour on dilates, plus sublinearity verification and body
//!   reconstruction.
//! * [`harness`] — randomized valuation/equivariance/homogeneity axiom checks
//!   with replayable failure seeds and deterministic reports.
//! * [`io`] — JSON and OFF serialization with deterministic float formatting.

pub mod decomposition;
pub mod error;
pub mod geom;
pub mod harness;
pub mod io;
pub mod measures;
pub mod operators;
pub mod solver;

pub use error::{GeomError, GeomResult};
pub use geom::{
    convex_hull, random_polytope, random_rotation, DirectionGrid, FacetRecord, Polytope, Rotation,
    Vector, TAU_GEO,
};
pub use measures::{
    area_measure_order1_3d, check_minkowski_conditions, merge_measures, surface_area_measure,
    Arc3, ArcMeasure3D, ConditionsVerdict, DiscreteSphereMeasure, SphereAtom,
};
pub use operators::{
    bm_homomorphism, composite_operator, projection_body, projection_body_order1_3d,
    steiner_point, steiner_point_exact, trivial_map_i, trivial_map_neg_i, zonotope_to_polytope,
    BmHomomorphism, CompositeOperator, Kernel, KernelPair, OperatorHandle, Pi1Operator,
    PreparedSupport, ProjectionBodyOperator, TrivialOperator, Zonotope,
};
pub use decomposition::{
    component_to_body, decompose, sublinearity_check, sublinearity_triples,
    vandermonde_coefficients, HomogeneousDecomposition, SublinearityReport,
    VandermondeCoefficients, TAU_SUB,
};
pub use harness::{
    check_homogeneity, check_polytope_output, check_rotation_equivariance,
    check_translation_invariance, check_valuation, operator_by_name, run_suite, suite_operators,
    AxiomReport, BallVolumeOperator, NoRecenterIdentity, OperatorReport, SuiteConfig, SuiteReport,
    TrialFailure, VolumeScaledBody,
};
pub use io::{
    arc_measure_from_json, arc_measure_to_json, decomposition_report_to_json, fmt_float,
    kernel_pair_from_json, measure_from_json, measure_to_json, polytope_from_json,
    polytope_from_off, polytope_to_json, polytope_to_off, solve_report_to_json,
    suite_report_to_json, zonotope_from_json, zonotope_to_json,
};
pub use solver::{blaschke_sum, solve_minkowski, SolveReport, SolverConfig, MAX_SOLVER_ATOMS};
