//! Seeded random rotations and polytopes.
//!
//! All randomness flows through `ChaCha8Rng`, whose stream is stable across
//! platforms and releases, so every construction here is bit-reproducible
//! from its seed.

use crate::error::{GeomError, GeomResult};
use crate::geom::polytope::Polytope;
use crate::geom::rotation::Rotation;
use crate::geom::vector::{det_n, Vector, MAX_DIM};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub(crate) fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    let mut a = [0.0; MAX_DIM];
    for c in a.iter_mut().take(n) {
        *c = rng.sample(StandardNormal);
    }
    Vector::from_parts(n, a)
}

/// A Haar-ish random rotation: Gram–Schmidt of a seeded Gaussian matrix with
/// the determinant sign fixed to +1. Deterministic per seed.
pub fn random_rotation(seed: u64, n: usize) -> GeomResult<Rotation> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(GeomError::Dimension(format!(
            "random_rotation supports n in 2..=4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..64 {
        let mut rows: Vec<Vector> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut w = gaussian_vector(&mut rng, n);
            for _ in 0..2 {
                for b in &rows {
                    w = w - *b * w.dot(b);
                }
            }
            let r = w.norm();
            if r < 1e-6 {
                continue 'attempt;
            }
            rows.push(w * (1.0 / r));
        }
        if det_n(&rows) < 0.0 {
            let last = rows.len() - 1;
            rows[last] = -rows[last];
        }
        return Rotation::new(&rows);
    }
    Err(GeomError::Degenerate(
        "random_rotation failed to draw an independent frame".into(),
    ))
}

/// Hull of `m` seeded Gaussian points in R^n; redraws until the hull is
/// full-dimensional. Deterministic per seed.
pub fn random_polytope(seed: u64, n: usize, m: usize) -> GeomResult<Polytope> {
    if !(3..=MAX_DIM).contains(&n) {
        return Err(GeomError::Dimension(format!(
            "random_polytope supports n in 3..=4, got {n}"
        )));
    }
    if m < n + 1 {
        return Err(GeomError::InvalidParameter(format!(
            "random_polytope needs at least n+1 = {} points, got {m}",
            n + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let pts: Vec<Vector> = (0..m).map(|_| gaussian_vector(&mut rng, n)).collect();
        if let Ok(p) = Polytope::hull(&pts) {
            if p.dim() == n {
                return Ok(p);
            }
        }
    }
    Err(GeomError::Degenerate(
        "random_polytope kept drawing degenerate point sets".into(),
    ))
}
