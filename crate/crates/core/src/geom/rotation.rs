//! Validated rotation matrices and their action on polytopes.

use crate::error::{GeomError, GeomResult};
use crate::geom::polytope::{FacetRecord, Polytope};
use crate::geom::vector::{Vector, MAX_DIM};

/// Orthogonality tolerance for rotation validation: max-norm of M^T M - I.
pub const TAU_ORTHO: f64 = 1e-12;

/// A proper rotation of R^n (orthogonal, determinant +1), stored row-wise.
#[derive(Clone, Copy, Debug)]
pub struct Rotation {
    n: usize,
    rows: [Vector; MAX_DIM],
}

impl Rotation {
    /// Validates and wraps a matrix given by rows. Orthogonality must hold
    /// to within `TAU_ORTHO` in the max norm and the determinant must be
    /// positive.
    pub fn new(rows: &[Vector]) -> GeomResult<Rotation> {
        let n = rows.len();
        if !(1..=MAX_DIM).contains(&n) || rows.iter().any(|r| r.dim() != n) {
            return Err(GeomError::Dimension(format!(
                "rotation needs n x n rows with n in 1..=4, got {n}"
            )));
        }
        let mut max_dev = 0.0_f64;
        // Rows of an orthogonal matrix are orthonormal, so checking the
        // Gram matrix of the rows checks M M^T = I (equivalent to M^T M = I).
        for i in 0..n {
            for j in 0..n {
                let g = rows[i].dot(&rows[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((g - want).abs());
            }
        }
        if max_dev > TAU_ORTHO {
            return Err(GeomError::NotARotation(format!(
                "orthogonality deviation {max_dev:.3e} exceeds {TAU_ORTHO:.0e}"
            )));
        }
        let det = crate::geom::vector::det_n(rows);
        if det <= 0.0 {
            return Err(GeomError::NotARotation(format!(
                "determinant {det:.6} is not positive"
            )));
        }
        let mut stored = [Vector::zero(n); MAX_DIM];
        stored[..n].copy_from_slice(rows);
        Ok(Rotation { n, rows: stored })
    }

    /// The identity rotation.
    pub fn identity(n: usize) -> Rotation {
        let mut rows = [Vector::zero(n); MAX_DIM];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = Vector::basis(n, i);
        }
        Rotation { n, rows }
    }

    /// Dimension n.
    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Rows of the matrix.
    #[inline]
    pub fn rows(&self) -> &[Vector] {
        &self.rows[..self.n]
    }

    /// Applies the rotation to a vector.
    #[inline]
    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(v.dim(), self.n);
        let mut a = [0.0; MAX_DIM];
        for i in 0..self.n {
            a[i] = self.rows[i].dot(v);
        }
        Vector::from_parts(self.n, a)
    }

    /// The inverse rotation (transpose).
    pub fn inverse(&self) -> Rotation {
        let mut rows = [Vector::zero(self.n); MAX_DIM];
        for i in 0..self.n {
            let mut a = [0.0; MAX_DIM];
            for j in 0..self.n {
                a[j] = self.rows[j][i];
            }
            rows[i] = Vector::from_parts(self.n, a);
        }
        Rotation { n: self.n, rows }
    }

    /// Composition: `self` after `other`.
    pub fn compose(&self, other: &Rotation) -> Rotation {
        debug_assert_eq!(self.n, other.n);
        let ot = other.inverse();
        let mut rows = [Vector::zero(self.n); MAX_DIM];
        for i in 0..self.n {
            let mut a = [0.0; MAX_DIM];
            for j in 0..self.n {
                // (self * other)[i][j] = self.row(i) . other.col(j)
                a[j] = self.rows[i].dot(&ot.rows[j]);
            }
            rows[i] = Vector::from_parts(self.n, a);
        }
        Rotation { n: self.n, rows }
    }
}

impl Polytope {
    /// Applies a rotation, rotating the facet cache (normals rotate; offsets,
    /// areas and incidences are invariant) instead of rebuilding it.
    pub fn apply_rotation(&self, rot: &Rotation) -> Polytope {
        let vertices: Vec<Vector> = self.vertices().iter().map(|v| rot.apply(v)).collect();
        let facets = self.facets().map(|fs| {
            fs.iter()
                .map(|f| FacetRecord {
                    normal: rot.apply(&f.normal),
                    offset: f.offset,
                    area: f.area,
                    vertex_indices: f.vertex_indices.clone(),
                })
                .collect()
        });
        Polytope::canonicalized(self.ambient(), self.dim(), vertices, facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polytope::unit_cube;
    use approx::assert_relative_eq;

    #[test]
    fn validates_orthogonality_and_orientation() {
        let ok = Rotation::new(&[
            Vector::new(&[0.0, -1.0, 0.0]).unwrap(),
            Vector::new(&[1.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[0.0, 0.0, 1.0]).unwrap(),
        ]);
        assert!(ok.is_ok());

        // Reflection: orthogonal but determinant -1.
        let refl = Rotation::new(&[
            Vector::new(&[-1.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[0.0, 1.0, 0.0]).unwrap(),
            Vector::new(&[0.0, 0.0, 1.0]).unwrap(),
        ]);
        assert!(matches!(refl, Err(GeomError::NotARotation(_))));

        let skew = Rotation::new(&[
            Vector::new(&[1.0, 1e-6, 0.0]).unwrap(),
            Vector::new(&[0.0, 1.0, 0.0]).unwrap(),
            Vector::new(&[0.0, 0.0, 1.0]).unwrap(),
        ]);
        assert!(matches!(skew, Err(GeomError::NotARotation(_))));
    }

    #[test]
    fn support_transforms_correctly() {
        let cube = unit_cube(3);
        let rot = Rotation::new(&[
            Vector::new(&[0.0, -1.0, 0.0]).unwrap(),
            Vector::new(&[1.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[0.0, 0.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let rotated = cube.apply_rotation(&rot);
        let u = Vector::new(&[0.3, -0.2, 0.9]).unwrap();
        // h(theta P, u) = h(P, theta^{-1} u)
        assert_relative_eq!(
            rotated.support(&u),
            cube.support(&rot.inverse().apply(&u)),
            epsilon = 1e-12
        );
        assert_relative_eq!(rotated.volume(), 1.0, epsilon = 1e-12);
        // Facet cache must stay consistent after rotation.
        for f in rotated.facets().unwrap() {
            assert_relative_eq!(f.area, 1.0, epsilon = 1e-12);
            for &vi in &f.vertex_indices {
                assert_relative_eq!(
                    f.normal.dot(&rotated.vertices()[vi]),
                    f.offset,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn inverse_and_compose() {
        let r = Rotation::new(&[
            Vector::new(&[0.6, -0.8, 0.0]).unwrap(),
            Vector::new(&[0.8, 0.6, 0.0]).unwrap(),
            Vector::new(&[0.0, 0.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let id = r.compose(&r.inverse());
        for i in 0..3 {
            let e = Vector::basis(3, i);
            assert!(id.apply(&e).dist(&e) < 1e-12);
        }
    }
}
