//! Quadratic forms, labeled point sets, and the position predicates
//! gating every other module.
//!
//! A form is stored by its exact symmetric matrix; the signature
//! `(p, q, r)` is derived once at construction by congruence
//! diagonalization, never by numeric eigen-solves. All predicates are
//! exact sign computations on rationals.

use num_traits::Zero;
use std::fmt;

use crate::error::Error;
use crate::linalg::{self, combinations, det, dot, mat_vec, sub};
use crate::rat::{rat, sign_of, ExactSign, Rat};

/// Symmetric bilinear form `Q(x) = x^T A x` with derived signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    dim: usize,
    matrix: Vec<Vec<Rat>>,
    signature: (usize, usize, usize),
}

/// Classification of a displacement vector by the sign of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Displacement {
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for Displacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Displacement::Spacelike => "spacelike",
            Displacement::Timelike => "timelike",
            Displacement::Lightlike => "lightlike",
        };
        f.write_str(s)
    }
}

impl QuadraticForm {
    /// Builds a form from a symmetric matrix of exact rationals.
    pub fn new(matrix: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let dim = matrix.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("form dimension must be >= 1".into()));
        }
        for row in &matrix {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
        }
        for i in 0..dim {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let signature = congruence_signature(&matrix);
        Ok(QuadraticForm { dim, matrix, signature })
    }

    /// Diagonal form `diag(entries)`.
    pub fn diagonal(entries: Vec<Rat>) -> Result<Self, Error> {
        let dim = entries.len();
        let mut matrix = vec![vec![Rat::zero(); dim]; dim];
        for (i, e) in entries.into_iter().enumerate() {
            matrix[i][i] = e;
        }
        QuadraticForm::new(matrix)
    }

    /// Convenience diagonal form from integers.
    pub fn diag_i64(entries: &[i64]) -> Self {
        QuadraticForm::diagonal(entries.iter().map(|&e| rat(e)).collect()).unwrap()
    }

    /// The Euclidean plane form `diag(1, 1)`.
    pub fn euclidean2() -> Self {
        Self::diag_i64(&[1, 1])
    }

    /// The Minkowski plane form `diag(1, -1)`.
    pub fn minkowski2() -> Self {
        Self::diag_i64(&[1, -1])
    }

    /// The degenerate plane form `diag(1, 0)`.
    pub fn degenerate2() -> Self {
        Self::diag_i64(&[1, 0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    /// `(p, q, r)`: counts of positive, negative, zero eigenvalues.
    pub fn signature(&self) -> (usize, usize, usize) {
        self.signature
    }

    pub fn is_degenerate(&self) -> bool {
        self.signature.2 > 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.0 == self.dim
    }

    fn check_dim(&self, x: &[Rat]) -> Result<(), Error> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    /// `Q(x) = x^T A x`, exactly.
    pub fn evaluate(&self, x: &[Rat]) -> Result<Rat, Error> {
        self.check_dim(x)?;
        Ok(dot(x, &mat_vec(&self.matrix, x)))
    }

    /// The associated inner product `<x, y>_Q = x^T A y`.
    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Result<Rat, Error> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(dot(x, &mat_vec(&self.matrix, y)))
    }

    /// Gradient of `Q` at `x`, i.e. `2 A x`.
    pub fn gradient(&self, x: &[Rat]) -> Vec<Rat> {
        linalg::scale(&mat_vec(&self.matrix, x), &rat(2))
    }

    /// Classifies the displacement `x - y` by the exact sign of `Q(x-y)`.
    pub fn classify_displacement(&self, x: &[Rat], y: &[Rat]) -> Result<Displacement, Error> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        if x == y {
            return Err(Error::IdenticalPoints);
        }
        let q = self.evaluate(&sub(x, y))?;
        Ok(match sign_of(&q) {
            ExactSign::Pos => Displacement::Spacelike,
            ExactSign::Neg => Displacement::Timelike,
            ExactSign::Zero => Displacement::Lightlike,
        })
    }
}

/// Signature by symmetric Gaussian elimination (congruence transforms).
fn congruence_signature(matrix: &[Vec<Rat>]) -> (usize, usize, usize) {
    let n = matrix.len();
    let mut a: Vec<Vec<Rat>> = matrix.to_vec();
    let (mut p, mut q, mut r) = (0usize, 0usize, 0usize);
    let mut row = 0;
    while row < n {
        if a[row][row].is_zero() {
            // Try to bring a nonzero entry onto the diagonal. First look
            // for a later row with nonzero diagonal and swap symmetrically.
            if let Some(k) = (row + 1..n).find(|&k| !a[k][k].is_zero()) {
                symmetric_swap(&mut a, row, k);
            } else if let Some(k) = (row + 1..n).find(|&k| !a[row][k].is_zero()) {
                // a[row][row] = a[k][k] = 0 but a[row][k] != 0: adding row/col
                // k to row/col row puts 2*a[row][k] on the diagonal.
                symmetric_add(&mut a, row, k);
            } else {
                // Entire row (and column) is zero.
                r += 1;
                row += 1;
                continue;
            }
        }
        let pivot = a[row][row].clone();
        match sign_of(&pivot) {
            ExactSign::Pos => p += 1,
            ExactSign::Neg => q += 1,
            ExactSign::Zero => unreachable!(),
        }
        for k in row + 1..n {
            if a[k][row].is_zero() {
                continue;
            }
            let factor = &a[k][row] / &pivot;
            // Row operation followed by the matching column operation.
            for c in 0..n {
                let t = &factor * &a[row][c];
                a[k][c] = &a[k][c] - &t;
            }
            for rr in 0..n {
                let t = &factor * &a[rr][row];
                a[rr][k] = &a[rr][k] - &t;
            }
        }
        row += 1;
    }
    (p, q, r)
}

fn symmetric_swap(a: &mut [Vec<Rat>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn symmetric_add(a: &mut Vec<Vec<Rat>>, i: usize, j: usize) {
    let row_j = a[j].clone();
    for (c, v) in row_j.iter().enumerate() {
        a[i][c] = &a[i][c] + v;
    }
    for r in 0..a.len() {
        let t = a[r][j].clone();
        a[r][i] = &a[r][i] + &t;
    }
}

/// A labeled point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoint {
    pub label: String,
    pub coords: Vec<Rat>,
}

/// Ordered list of labeled points; order is canonical for output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<LabeledPoint>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<LabeledPoint>) -> Result<Self, Error> {
        let mut seen = std::collections::BTreeSet::new();
        for p in &points {
            if p.coords.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.coords.len() });
            }
            if !seen.insert(p.label.clone()) {
                return Err(Error::DuplicateLabel { label: p.label.clone() });
            }
        }
        Ok(PointSet { dim, points })
    }

    /// Builds a point set with labels `p0, p1, ...`.
    pub fn from_coords(dim: usize, coords: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(i, coords)| LabeledPoint { label: format!("p{i}"), coords })
            .collect();
        PointSet::new(dim, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn coords(&self, i: usize) -> &[Rat] {
        &self.points[i].coords
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i].label
    }

    pub fn iter_coords(&self) -> impl Iterator<Item = &[Rat]> {
        self.points.iter().map(|p| p.coords.as_slice())
    }

    /// Replaces every coordinate vector through `f`, keeping labels.
    pub fn map_coords<F>(&self, mut f: F) -> Result<PointSet, Error>
    where
        F: FnMut(&[Rat]) -> Vec<Rat>,
    {
        let points = self
            .points
            .iter()
            .map(|p| LabeledPoint { label: p.label.clone(), coords: f(&p.coords) })
            .collect();
        PointSet::new(self.dim, points)
    }
}

/// Whether every distinct pair of points has spacelike displacement.
/// On failure, returns the first violating pair (canonical index order).
/// Duplicate coordinates are rejected with the duplicated label.
pub fn is_spacelike_position(
    q: &QuadraticForm,
    xs: &PointSet,
) -> Result<Option<(usize, usize)>, Error> {
    if xs.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs.coords(i) == xs.coords(j) {
                return Err(Error::DuplicatePoint { label: xs.label(j).to_string() });
            }
            let d = q.evaluate(&sub(xs.coords(i), xs.coords(j)))?;
            if sign_of(&d) != ExactSign::Pos {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Convenience wrapper turning a witness into an error.
pub fn require_spacelike(q: &QuadraticForm, xs: &PointSet) -> Result<(), Error> {
    match is_spacelike_position(q, xs)? {
        None => Ok(()),
        Some((i, j)) => Err(Error::NotSpacelike {
            a: xs.label(i).to_string(),
            b: xs.label(j).to_string(),
        }),
    }
}

/// Reason a subset violates generic position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericityViolation {
    /// `d+1` points on an affine hyperplane.
    AffinelyDependent(Vec<usize>),
    /// `d+2` points on a common Q-sphere.
    OnCommonSphere(Vec<usize>),
}

/// Generic position: no `d+1` points affinely dependent and no `d+2`
/// points on one Q-sphere. Returns the first violating subset in
/// canonical (lexicographic) order, or `None` when generic.
pub fn is_generic_position(
    q: &QuadraticForm,
    xs: &PointSet,
) -> Result<Option<GenericityViolation>, Error> {
    let d = q.dim();
    if xs.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: xs.dim() });
    }
    // Affine dependence: the orientation determinant of each (d+1)-subset.
    for subset in combinations(xs.len(), d + 1) {
        let rows: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| {
                let mut row = xs.coords(i).to_vec();
                row.push(rat(1));
                row
            })
            .collect();
        if det(&rows).is_zero() {
            return Ok(Some(GenericityViolation::AffinelyDependent(subset)));
        }
    }
    // Common sphere: the lifted determinant of each (d+2)-subset.
    for subset in combinations(xs.len(), d + 2) {
        let rows: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| {
                let mut row = xs.coords(i).to_vec();
                row.push(q.evaluate(xs.coords(i)).expect("dim checked"));
                row.push(rat(1));
                row
            })
            .collect();
        if det(&rows).is_zero() {
            return Ok(Some(GenericityViolation::OnCommonSphere(subset)));
        }
    }
    Ok(None)
}

/// Wrapper turning a genericity witness into an error.
pub fn require_generic(q: &QuadraticForm, xs: &PointSet) -> Result<(), Error> {
    match is_generic_position(q, xs)? {
        None => Ok(()),
        Some(violation) => {
            let (idx, reason) = match violation {
                GenericityViolation::AffinelyDependent(s) => (s, "affinely dependent"),
                GenericityViolation::OnCommonSphere(s) => (s, "on a common Q-sphere"),
            };
            Err(Error::NotGeneric {
                witness: idx.iter().map(|&i| xs.label(i).to_string()).collect(),
                reason: reason.into(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn pts(dim: usize, coords: &[&[Rat]]) -> PointSet {
        PointSet::from_coords(dim, coords.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let q11 = QuadraticForm::minkowski2();
        assert_eq!(q11.evaluate(&[rat(2), rat(1)]).unwrap(), rat(3));
        assert_eq!(q11.evaluate(&[rat(1), rat(1)]).unwrap(), rat(0));
        let q10 = QuadraticForm::degenerate2();
        assert_eq!(q10.evaluate(&[rat(3), rat(7)]).unwrap(), rat(9));
        assert!(q11.evaluate(&[rat(1)]).is_err());
    }

    #[test]
    fn inner_examples() {
        let q = QuadraticForm::minkowski2();
        assert_eq!(q.inner(&[rat(1), rat(0)], &[rat(0), rat(1)]).unwrap(), rat(0));
        assert_eq!(q.inner(&[rat(1), rat(1)], &[rat(1), rat(-1)]).unwrap(), rat(2));
        // inner(Q, x, x) = evaluate(Q, x)
        let x = [ratio(3, 7), ratio(-2, 5)];
        assert_eq!(q.inner(&x, &x).unwrap(), q.evaluate(&x).unwrap());
    }

    #[test]
    fn signatures_by_congruence() {
        assert_eq!(QuadraticForm::euclidean2().signature(), (2, 0, 0));
        assert_eq!(QuadraticForm::minkowski2().signature(), (1, 1, 0));
        assert_eq!(QuadraticForm::degenerate2().signature(), (1, 0, 1));
        assert_eq!(QuadraticForm::diag_i64(&[1, 1, -1]).signature(), (2, 1, 0));
        // Zero diagonal, nonzero off-diagonal: x1*x2 has signature (1,1).
        let hyperbolic = QuadraticForm::new(vec![
            vec![rat(0), ratio(1, 2)],
            vec![ratio(1, 2), rat(0)],
        ])
        .unwrap();
        assert_eq!(hyperbolic.signature(), (1, 1, 0));
        // Degenerate iff singular.
        assert!(QuadraticForm::degenerate2().is_degenerate());
        assert!(!hyperbolic.is_degenerate());
        // A full rank-3 example with mixed blocks.
        let m = QuadraticForm::new(vec![
            vec![rat(2), rat(1), rat(0)],
            vec![rat(1), rat(2), rat(0)],
            vec![rat(0), rat(0), rat(-3)],
        ])
        .unwrap();
        assert_eq!(m.signature(), (2, 1, 0));
    }

    #[test]
    fn classify_examples() {
        let q = QuadraticForm::minkowski2();
        let o = [rat(0), rat(0)];
        assert_eq!(
            q.classify_displacement(&o, &[rat(2), rat(1)]).unwrap(),
            Displacement::Spacelike
        );
        assert_eq!(
            q.classify_displacement(&o, &[rat(1), rat(1)]).unwrap(),
            Displacement::Lightlike
        );
        assert_eq!(
            q.classify_displacement(&o, &[rat(1), rat(2)]).unwrap(),
            Displacement::Timelike
        );
        assert_eq!(q.classify_displacement(&o, &o), Err(Error::IdenticalPoints));
        // Symmetry in the two arguments.
        let x = [ratio(5, 3), rat(1)];
        assert_eq!(
            q.classify_displacement(&o, &x).unwrap(),
            q.classify_displacement(&x, &o).unwrap()
        );
    }

    #[test]
    fn spacelike_position_examples() {
        let q = QuadraticForm::minkowski2();
        let good = pts(2, &[&[rat(0), rat(0)], &[rat(2), rat(0)], &[rat(1), ratio(1, 2)]]);
        assert_eq!(is_spacelike_position(&q, &good).unwrap(), None);

        let bad = pts(2, &[&[rat(0), rat(0)], &[rat(1), rat(1)]]);
        assert_eq!(is_spacelike_position(&q, &bad).unwrap(), Some((0, 1)));

        let q10 = QuadraticForm::degenerate2();
        let vertical = pts(2, &[&[rat(0), rat(0)], &[rat(0), rat(5)]]);
        assert_eq!(is_spacelike_position(&q10, &vertical).unwrap(), Some((0, 1)));

        let dup = pts(2, &[&[rat(0), rat(0)], &[rat(0), rat(0)]]);
        assert_eq!(
            is_spacelike_position(&q, &dup),
            Err(Error::DuplicatePoint { label: "p1".into() })
        );
    }

    #[test]
    fn generic_position_examples() {
        let qe = QuadraticForm::euclidean2();
        let collinear = pts(2, &[&[rat(0), rat(0)], &[rat(1), rat(0)], &[rat(2), rat(0)]]);
        assert_eq!(
            is_generic_position(&qe, &collinear).unwrap(),
            Some(GenericityViolation::AffinelyDependent(vec![0, 1, 2]))
        );

        let square = pts(
            2,
            &[&[rat(0), rat(0)], &[rat(1), rat(0)], &[rat(0), rat(1)], &[rat(1), rat(1)]],
        );
        assert_eq!(
            is_generic_position(&qe, &square).unwrap(),
            Some(GenericityViolation::OnCommonSphere(vec![0, 1, 2, 3]))
        );

        let q11 = QuadraticForm::minkowski2();
        let generic = pts(
            2,
            &[&[rat(0), rat(0)], &[rat(2), rat(0)], &[rat(1), ratio(1, 2)], &[rat(3), rat(2)]],
        );
        assert_eq!(is_generic_position(&q11, &generic).unwrap(), None);
    }

    #[test]
    fn genericity_invariant_under_linear_change() {
        // is_generic(M^T A M form, M^-1 X) == is_generic(A form, X)
        let q = QuadraticForm::minkowski2();
        let xs = pts(
            2,
            &[&[rat(0), rat(0)], &[rat(2), rat(0)], &[rat(1), ratio(1, 2)], &[rat(3), rat(2)]],
        );
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let m_inv = linalg::invert(&m).unwrap();
        let a2 = linalg::mat_mul(&linalg::transpose(&m), &linalg::mat_mul(q.matrix(), &m));
        let q2 = QuadraticForm::new(a2).unwrap();
        let xs2 = xs.map_coords(|c| mat_vec(&m_inv, c)).unwrap();
        assert_eq!(
            is_generic_position(&q, &xs).unwrap().is_none(),
            is_generic_position(&q2, &xs2).unwrap().is_none()
        );
    }

    #[test]
    fn generic_position_permutation_invariant() {
        let q = QuadraticForm::minkowski2();
        let a = pts(
            2,
            &[&[rat(0), rat(0)], &[rat(2), rat(0)], &[rat(1), ratio(1, 2)], &[rat(3), rat(2)]],
        );
        let b = pts(
            2,
            &[&[rat(3), rat(2)], &[rat(1), ratio(1, 2)], &[rat(0), rat(0)], &[rat(2), rat(0)]],
        );
        assert_eq!(
            is_generic_position(&q, &a).unwrap().is_none(),
            is_generic_position(&q, &b).unwrap().is_none()
        );
    }

    #[test]
    fn polarization_identity() {
        let q = QuadraticForm::diag_i64(&[1, 1, -1]);
        let x = [ratio(1, 3), ratio(-2, 7), rat(2)];
        let y = [rat(1), ratio(5, 2), ratio(-1, 4)];
        let lhs = rat(2) * q.inner(&x, &y).unwrap();
        let rhs = q.evaluate(&linalg::add(&x, &y)).unwrap()
            - q.evaluate(&x).unwrap()
            - q.evaluate(&y).unwrap();
        assert_eq!(lhs, rhs);
    }
}
