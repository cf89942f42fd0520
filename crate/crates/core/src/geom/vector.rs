//! Fixed-capacity vectors for R^3 and R^4 plus the small exact-dimension
//! linear-algebra helpers (generalized cross products, complement bases)
//! used by the hull and quadrature code.
//!
//! Vectors are `Copy` with inline storage so the brute-force enumeration
//! loops never allocate.

use crate::error::{GeomError, GeomResult};
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Maximum supported ambient dimension.
pub const MAX_DIM: usize = 4;

/// Minimum supported ambient dimension for full operator pipelines.
pub const MIN_DIM: usize = 1;

/// A point or direction in R^n for n <= 4.
///
/// The active dimension is carried by the value; mixing dimensions in
/// arithmetic panics in debug builds and is prevented by constructors in
/// the public API.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector {
    n: usize,
    a: [f64; MAX_DIM],
}

impl Vector {
    /// Creates a vector from a slice of length 1..=4.
    pub fn new(coords: &[f64]) -> GeomResult<Self> {
        let n = coords.len();
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(GeomError::Dimension(format!(
                "vector length {n} outside supported range {MIN_DIM}..={MAX_DIM}"
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite(format!("vector entries {coords:?}")));
        }
        let mut a = [0.0; MAX_DIM];
        a[..n].copy_from_slice(coords);
        Ok(Self { n, a })
    }

    /// Creates a vector without finiteness checks; used internally where the
    /// inputs are already validated.
    #[inline]
    pub(crate) fn from_parts(n: usize, a: [f64; MAX_DIM]) -> Self {
        debug_assert!((MIN_DIM..=MAX_DIM).contains(&n));
        Self { n, a }
    }

    /// The zero vector of dimension `n`.
    #[inline]
    pub fn zero(n: usize) -> Self {
        debug_assert!((MIN_DIM..=MAX_DIM).contains(&n));
        Self { n, a: [0.0; MAX_DIM] }
    }

    /// The `i`-th standard basis vector of dimension `n`.
    #[inline]
    pub fn basis(n: usize, i: usize) -> Self {
        debug_assert!(i < n);
        let mut v = Self::zero(n);
        v.a[i] = 1.0;
        v
    }

    /// Active dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coordinates as a slice of length `dim()`.
    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.a[..self.n]
    }

    /// Euclidean inner product.
    #[inline]
    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.n, other.n);
        let mut s = 0.0;
        for i in 0..self.n {
            s += self.a[i] * other.a[i];
        }
        s
    }

    /// Euclidean norm.
    #[inline]
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Squared distance to another point.
    #[inline]
    pub fn dist2(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.n, other.n);
        let mut s = 0.0;
        for i in 0..self.n {
            let d = self.a[i] - other.a[i];
            s += d * d;
        }
        s
    }

    /// Distance to another point.
    #[inline]
    pub fn dist(&self, other: &Self) -> f64 {
        self.dist2(other).sqrt()
    }

    /// Unit vector in the same direction, or an error for (near-)zero input.
    pub fn normalized(&self) -> GeomResult<Self> {
        let r = self.norm();
        if r <= 0.0 || !r.is_finite() {
            return Err(GeomError::Degenerate(format!(
                "cannot normalize vector with norm {r}"
            )));
        }
        Ok(*self * (1.0 / r))
    }

    /// True when every entry is finite.
    #[inline]
    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }

    /// Maximum absolute coordinate.
    #[inline]
    pub fn max_abs(&self) -> f64 {
        self.coords().iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        debug_assert!(i < self.n);
        &self.a[i]
    }
}

impl IndexMut<usize> for Vector {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        debug_assert!(i < self.n);
        &mut self.a[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.n, rhs.n);
        let mut a = self.a;
        for i in 0..self.n {
            a[i] += rhs.a[i];
        }
        Vector { n: self.n, a }
    }
}

impl AddAssign for Vector {
    #[inline]
    fn add_assign(&mut self, rhs: Vector) {
        debug_assert_eq!(self.n, rhs.n);
        for i in 0..self.n {
            self.a[i] += rhs.a[i];
        }
    }
}

impl SubAssign for Vector {
    #[inline]
    fn sub_assign(&mut self, rhs: Vector) {
        debug_assert_eq!(self.n, rhs.n);
        for i in 0..self.n {
            self.a[i] -= rhs.a[i];
        }
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.n, rhs.n);
        let mut a = self.a;
        for i in 0..self.n {
            a[i] -= rhs.a[i];
        }
        Vector { n: self.n, a }
    }
}

impl Neg for Vector {
    type Output = Vector;
    #[inline]
    fn neg(self) -> Vector {
        let mut a = self.a;
        for c in a.iter_mut().take(self.n) {
            *c = -*c;
        }
        Vector { n: self.n, a }
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(self, s: f64) -> Vector {
        let mut a = self.a;
        for c in a.iter_mut().take(self.n) {
            *c *= s;
        }
        Vector { n: self.n, a }
    }
}

/// Cross product in R^3.
#[inline]
pub fn cross3(a: &Vector, b: &Vector) -> Vector {
    debug_assert_eq!(a.dim(), 3);
    debug_assert_eq!(b.dim(), 3);
    Vector::from_parts(
        3,
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
            0.0,
        ],
    )
}

/// Generalized cross product in R^4: the vector orthogonal to `a`, `b`, `c`
/// whose coordinates are the signed 3x3 minors of the stacked matrix.
pub fn cross4(a: &Vector, b: &Vector, c: &Vector) -> Vector {
    debug_assert_eq!(a.dim(), 4);
    let det3 = |c0: usize, c1: usize, c2: usize| -> f64 {
        a[c0] * (b[c1] * c[c2] - b[c2] * c[c1]) - a[c1] * (b[c0] * c[c2] - b[c2] * c[c0])
            + a[c2] * (b[c0] * c[c1] - b[c1] * c[c0])
    };
    Vector::from_parts(
        4,
        [
            det3(1, 2, 3),
            -det3(0, 2, 3),
            det3(0, 1, 3),
            -det3(0, 1, 2),
        ],
    )
}

/// Vector orthogonal to the span of `n-1` vectors in R^n (n = dim of the
/// inputs). For n = 2 this is the 90-degree rotation, for n = 3 the cross
/// product, for n = 4 the generalized cross product. Zero output means the
/// inputs were linearly dependent.
pub fn orthogonal_complement_1(vs: &[Vector]) -> Vector {
    match vs.len() {
        1 => {
            debug_assert_eq!(vs[0].dim(), 2);
            Vector::from_parts(2, [-vs[0][1], vs[0][0], 0.0, 0.0])
        }
        2 => cross3(&vs[0], &vs[1]),
        3 => cross4(&vs[0], &vs[1], &vs[2]),
        k => panic!("orthogonal_complement_1 expects 1..=3 vectors, got {k}"),
    }
}

/// Determinant of `n` vectors in R^n, n <= 4.
pub fn det_n(vs: &[Vector]) -> f64 {
    match vs.len() {
        1 => vs[0][0],
        2 => vs[0][0] * vs[1][1] - vs[0][1] * vs[1][0],
        3 => vs[0].dot(&cross3(&vs[1], &vs[2])),
        4 => vs[0].dot(&cross4(&vs[1], &vs[2], &vs[3])),
        k => panic!("det_n expects 1..=4 vectors, got {k}"),
    }
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `u`,
/// built from a Householder reflection carrying `e_1` to `u`; deterministic
/// and numerically stable for any direction.
pub fn complement_basis(u: &Vector) -> Vec<Vector> {
    let n = u.dim();
    debug_assert!((u.norm() - 1.0).abs() < 1e-9, "complement_basis wants unit input");
    // Householder vector v = u + sign(u_0) e_0, so |v|^2 = 2(1 + |u_0|) is
    // bounded away from zero for every direction. H = I - 2 v v^T / |v|^2
    // maps e_0 to -sign(u_0) u, so H e_1.. form an orthonormal basis of u-perp.
    let sign = if u[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = *u;
    v[0] += sign;
    let vv = v.dot(&v);
    let mut basis = Vec::with_capacity(n - 1);
    for k in 1..n {
        let ek = Vector::basis(n, k);
        basis.push(ek - v * (2.0 * v.dot(&ek) / vv));
    }
    basis
}

/// Expresses `p` in the coordinates of an orthonormal `basis` (list of d
/// ambient vectors), relative to `origin`.
pub fn project_to_basis(p: &Vector, origin: &Vector, basis: &[Vector]) -> Vector {
    let d = basis.len();
    let rel = *p - *origin;
    let mut a = [0.0; MAX_DIM];
    for (k, b) in basis.iter().enumerate() {
        a[k] = rel.dot(b);
    }
    Vector::from_parts(d.max(1), a)
}

/// Lifts `q` (coordinates w.r.t. `basis`) back into ambient space.
pub fn lift_from_basis(q: &Vector, origin: &Vector, basis: &[Vector]) -> Vector {
    let mut p = *origin;
    for (k, b) in basis.iter().enumerate() {
        p += *b * q[k];
    }
    p
}

/// Orthonormal basis of the affine hull of `points` (relative to the first
/// point), via Gram–Schmidt with tolerance `tol * scale`. Returns the basis;
/// its length is the affine dimension.
pub fn affine_basis(points: &[Vector], tol: f64) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    if points.is_empty() {
        return basis;
    }
    let n = points[0].dim();
    let scale = points.iter().fold(1.0_f64, |m, p| m.max(p.max_abs()));
    let origin = points[0];
    for p in &points[1..] {
        if basis.len() == n {
            break;
        }
        let mut w = *p - origin;
        // Two rounds of Gram-Schmidt for numerical orthogonality.
        for _ in 0..2 {
            for b in &basis {
                w = w - *b * w.dot(b);
            }
        }
        let r = w.norm();
        if r > tol * scale {
            basis.push(w * (1.0 / r));
        }
    }
    basis
}

/// Solves the n x n system `M x = b` for n <= 4 with partial pivoting.
/// `rows` are the rows of M. Returns `None` when the pivot falls below
/// `tol` times the largest entry (singular system).
pub fn solve_small(rows: &[Vector], b: &[f64], tol: f64) -> Option<Vector> {
    let n = rows.len();
    debug_assert!(n >= 1 && n <= MAX_DIM && rows[0].dim() == n && b.len() == n);
    let mut m = [[0.0_f64; MAX_DIM + 1]; MAX_DIM];
    let mut scale = 0.0_f64;
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            m[i][j] = row[j];
            scale = scale.max(row[j].abs());
        }
        m[i][n] = b[i];
    }
    let floor = tol * scale.max(1e-300);
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if m[r][col].abs() > m[piv][col].abs() {
                piv = r;
            }
        }
        if m[piv][col].abs() <= floor {
            return None;
        }
        m.swap(col, piv);
        let inv = 1.0 / m[col][col];
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col] * inv;
            if f != 0.0 {
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    let mut a = [0.0; MAX_DIM];
    for i in 0..n {
        a[i] = m[i][n] / m[i][i];
    }
    let x = Vector::from_parts(n, a);
    x.is_finite().then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_bad_dimensions_and_nan() {
        assert!(Vector::new(&[]).is_err());
        assert!(Vector::new(&[0.0; 5]).is_err());
        assert!(Vector::new(&[1.0, f64::NAN]).is_err());
        assert!(Vector::new(&[1.0, 2.0, 3.0, 4.0]).is_ok());
    }

    #[test]
    fn cross_products_are_orthogonal() {
        let a = Vector::new(&[1.0, 2.0, 3.0]).unwrap();
        let b = Vector::new(&[-0.5, 0.25, 4.0]).unwrap();
        let c = cross3(&a, &b);
        assert_relative_eq!(c.dot(&a), 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.dot(&b), 0.0, epsilon = 1e-12);

        let p = Vector::new(&[1.0, 0.0, 2.0, -1.0]).unwrap();
        let q = Vector::new(&[0.0, 1.0, 1.0, 1.0]).unwrap();
        let r = Vector::new(&[3.0, -2.0, 0.5, 0.0]).unwrap();
        let s = cross4(&p, &q, &r);
        for v in [&p, &q, &r] {
            assert_relative_eq!(s.dot(v), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn det4_matches_expansion() {
        // det of identity columns permuted once = -1
        let e = |i| Vector::basis(4, i);
        assert_relative_eq!(det_n(&[e(1), e(0), e(2), e(3)]), -1.0);
        assert_relative_eq!(det_n(&[e(0), e(1), e(2), e(3)]), 1.0);
    }

    #[test]
    fn complement_basis_is_orthonormal() {
        for dir in [
            Vector::new(&[1.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[-1.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[0.6, -0.8, 0.0]).unwrap(),
            Vector::new(&[0.5, 0.5, 0.5, 0.5]).unwrap(),
        ] {
            let u = dir.normalized().unwrap();
            let basis = complement_basis(&u);
            assert_eq!(basis.len(), u.dim() - 1);
            for (i, b) in basis.iter().enumerate() {
                assert_relative_eq!(b.norm(), 1.0, epsilon = 1e-12);
                assert_relative_eq!(b.dot(&u), 0.0, epsilon = 1e-12);
                for c in &basis[i + 1..] {
                    assert_relative_eq!(b.dot(c), 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn affine_basis_detects_planes() {
        let pts = [
            Vector::new(&[0.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[1.0, 0.0, 0.0]).unwrap(),
            Vector::new(&[0.0, 1.0, 0.0]).unwrap(),
            Vector::new(&[3.0, -2.0, 0.0]).unwrap(),
        ];
        assert_eq!(affine_basis(&pts, 1e-9).len(), 2);
    }

    #[test]
    fn solve_small_solves_and_flags_singular() {
        let rows = [
            Vector::new(&[2.0, 1.0, 0.0]).unwrap(),
            Vector::new(&[1.0, 3.0, 1.0]).unwrap(),
            Vector::new(&[0.0, 1.0, 4.0]).unwrap(),
        ];
        let x = solve_small(&rows, &[3.0, 5.0, 5.0], 1e-12).unwrap();
        for (row, want) in rows.iter().zip([3.0, 5.0, 5.0]) {
            assert_relative_eq!(row.dot(&x), want, epsilon = 1e-12);
        }
        let sing = [
            Vector::new(&[1.0, 1.0]).unwrap(),
            Vector::new(&[2.0, 2.0]).unwrap(),
        ];
        assert!(solve_small(&sing, &[1.0, 2.0], 1e-12).is_none());
    }

    #[test]
    fn project_lift_roundtrip() {
        let u = Vector::new(&[1.0, 2.0, -1.0, 0.5]).unwrap().normalized().unwrap();
        let basis = complement_basis(&u);
        let origin = Vector::new(&[0.5, 0.0, 1.0, 2.0]).unwrap();
        let p = origin + basis[0] * 1.5 - basis[2] * 0.25;
        let q = project_to_basis(&p, &origin, &basis);
        let back = lift_from_basis(&q, &origin, &basis);
        assert!(back.dist(&p) < 1e-12);
    }
}
