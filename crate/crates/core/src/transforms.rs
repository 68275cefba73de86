//! Symmetries: exact isometries of (R^d, Q), the degenerate symmetry
//! group G, the projective Moebius action preserving
//! `Q^ = Q - x_{d+1} x_{d+2}` on R^{d+2}, light cones, and the
//! rescaled-limit harness for degenerate forms.

use num_traits::Zero;

use crate::delaunay::{delaunay, full_decomposition, CellComplex};
use crate::error::Error;
use crate::linalg::{self, mat_mul, mat_vec, transpose};
use crate::qball::{Containment, QBall};
use crate::qform::{PointSet, QuadraticForm};
use crate::rat::{rat, sign_of, ExactSign, Rat};

/// Which validated class a group element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// Affine map with linear part in O(Q).
    Isometry,
    /// Affine map with block-lower-triangular linear part for a split.
    GroupG,
    /// Projective (d+2)x(d+2) matrix preserving Q^.
    Moebius,
}

/// A validated transformation. Affine kinds store a d x d linear part
/// and a translation; the Moebius kind stores a (d+2)x(d+2) matrix and
/// no translation.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub kind: GroupKind,
    pub linear: Vec<Vec<Rat>>,
    pub translation: Vec<Rat>,
}

/// Q-orthogonal splitting `R^d = R^m + R^{d-m}` of a block-diagonal
/// non-degenerate form; the degenerate form Q(y,z) = Q_V(y) lives on
/// the whole space.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationSplit {
    pub m: usize,
    pub qv: QuadraticForm,
    pub qu: QuadraticForm,
    dim: usize,
}

impl DegenerationSplit {
    /// Validates that `q` is block-diagonal with respect to the first
    /// `m` coordinates and returns the split data.
    pub fn new(q: &QuadraticForm, m: usize) -> Result<Self, Error> {
        let d = q.dim();
        if m == 0 || m >= d {
            return Err(Error::InvalidParameter(format!(
                "split dimension m must satisfy 0 < m < d, got m={m}, d={d}"
            )));
        }
        if q.is_degenerate() {
            return Err(Error::DegenerateForm { op: "degeneration split" });
        }
        let a = q.matrix();
        for i in 0..m {
            for j in m..d {
                if !a[i][j].is_zero() {
                    return Err(Error::InvalidParameter(
                        "form is not block-diagonal with respect to the split".into(),
                    ));
                }
            }
        }
        let qv = QuadraticForm::new(
            (0..m).map(|i| a[i][..m].to_vec()).collect(),
        )?;
        let qu = QuadraticForm::new(
            (m..d).map(|i| a[i][m..].to_vec()).collect(),
        )?;
        Ok(DegenerationSplit { m, qv, qu, dim: d })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The degenerate form `Q(y, z) = Q_V(y)` on R^d.
    pub fn degenerate_form(&self) -> QuadraticForm {
        let d = self.dim;
        let mut matrix = vec![vec![Rat::zero(); d]; d];
        for i in 0..self.m {
            for j in 0..self.m {
                matrix[i][j] = self.qv.matrix()[i][j].clone();
            }
        }
        QuadraticForm::new(matrix).expect("padded matrix is symmetric")
    }
}

/// Checks `M^T A M = A` exactly.
fn preserves_form(q: &QuadraticForm, m: &[Vec<Rat>]) -> bool {
    mat_mul(&transpose(m), &mat_mul(q.matrix(), m)) == q.matrix()
}

/// The matrix of `Q^ = Q - x_{d+1} x_{d+2}` on R^{d+2}.
pub fn hat_matrix(q: &QuadraticForm) -> Vec<Vec<Rat>> {
    let d = q.dim();
    let mut m = vec![vec![Rat::zero(); d + 2]; d + 2];
    for i in 0..d {
        for j in 0..d {
            m[i][j] = q.matrix()[i][j].clone();
        }
    }
    let minus_half = Rat::new((-1).into(), 2.into());
    m[d][d + 1] = minus_half.clone();
    m[d + 1][d] = minus_half;
    m
}

impl GroupElement {
    /// Affine isometry: validates `M^T A M = A` exactly.
    pub fn isometry(q: &QuadraticForm, linear: Vec<Vec<Rat>>, translation: Vec<Rat>) -> Result<Self, Error> {
        if linear.len() != q.dim() || translation.len() != q.dim() {
            return Err(Error::DimensionMismatch { expected: q.dim(), got: linear.len() });
        }
        if !preserves_form(q, &linear) {
            return Err(Error::InvalidParameter(
                "linear part does not preserve the form".into(),
            ));
        }
        Ok(GroupElement { kind: GroupKind::Isometry, linear, translation })
    }

    /// Group-G element for a split: the linear part must be block lower
    /// triangular `[[A, 0], [B, C]]` with `A in O(Q_V)`, `C in O(Q_U)`.
    pub fn group_g(
        split: &DegenerationSplit,
        linear: Vec<Vec<Rat>>,
        translation: Vec<Rat>,
    ) -> Result<Self, Error> {
        let d = split.dim();
        let m = split.m;
        if linear.len() != d || translation.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: linear.len() });
        }
        for i in 0..m {
            for j in m..d {
                if !linear[i][j].is_zero() {
                    return Err(Error::InvalidParameter(
                        "group G linear part must be block lower triangular".into(),
                    ));
                }
            }
        }
        let a_blk: Vec<Vec<Rat>> = (0..m).map(|i| linear[i][..m].to_vec()).collect();
        let c_blk: Vec<Vec<Rat>> = (m..d).map(|i| linear[i][m..].to_vec()).collect();
        if !preserves_form(&split.qv, &a_blk) {
            return Err(Error::InvalidParameter("A block is not in O(Q_V)".into()));
        }
        if !preserves_form(&split.qu, &c_blk) {
            return Err(Error::InvalidParameter("C block is not in O(Q_U)".into()));
        }
        Ok(GroupElement { kind: GroupKind::GroupG, linear, translation })
    }

    /// Moebius element: validates `g^T A^ g = A^` exactly.
    pub fn moebius(q: &QuadraticForm, matrix: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let n = q.dim() + 2;
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: matrix.len() });
        }
        let ahat = hat_matrix(q);
        if mat_mul(&transpose(&matrix), &mat_mul(&ahat, &matrix)) != ahat {
            return Err(Error::InvalidParameter(
                "matrix does not preserve the hat form".into(),
            ));
        }
        Ok(GroupElement { kind: GroupKind::Moebius, linear: matrix, translation: vec![] })
    }

    /// Embeds an affine isometry `x -> M x + b` as a Q^-preserving
    /// projective matrix acting on `(x, Q(x), 1)`.
    pub fn embed_affine(q: &QuadraticForm, m: &[Vec<Rat>], b: &[Rat]) -> Result<Self, Error> {
        if !preserves_form(q, m) {
            return Err(Error::InvalidParameter(
                "linear part does not preserve the form".into(),
            ));
        }
        let d = q.dim();
        let mut g = vec![vec![Rat::zero(); d + 2]; d + 2];
        for i in 0..d {
            for j in 0..d {
                g[i][j] = m[i][j].clone();
            }
            g[i][d + 1] = b[i].clone();
        }
        // Row for the Q(x) coordinate: Q(Mx + b) = Q(x) + 2 b^T A M x + Q(b).
        let two_bt_am = linalg::scale(&mat_vec(&transpose(&mat_mul(q.matrix(), m)), b), &rat(2));
        for j in 0..d {
            g[d][j] = two_bt_am[j].clone();
        }
        g[d][d] = rat(1);
        g[d][d + 1] = q.evaluate(b)?;
        g[d + 1][d + 1] = rat(1);
        GroupElement::moebius(q, g)
    }

    /// The projective swap of the two lightlike coordinates of Q^. It
    /// exchanges the origin and the point at infinity (the inversion
    /// `x -> x / Q(x)` on points with `Q(x) != 0`).
    pub fn inversion(q: &QuadraticForm) -> Self {
        let d = q.dim();
        let mut g = linalg::identity(d + 2);
        g[d][d] = rat(0);
        g[d + 1][d + 1] = rat(0);
        g[d][d + 1] = rat(1);
        g[d + 1][d] = rat(1);
        GroupElement::moebius(q, g).expect("swap preserves the hat form")
    }

    /// Exact composition (matching kinds only for affine; Moebius
    /// composes with Moebius).
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, Error> {
        match (self.kind, other.kind) {
            (GroupKind::Moebius, GroupKind::Moebius) => Ok(GroupElement {
                kind: GroupKind::Moebius,
                linear: mat_mul(&self.linear, &other.linear),
                translation: vec![],
            }),
            (a, b) if a == b => Ok(GroupElement {
                kind: a,
                linear: mat_mul(&self.linear, &other.linear),
                translation: linalg::add(&mat_vec(&self.linear, &other.translation), &self.translation),
            }),
            _ => Err(Error::InvalidParameter("cannot compose elements of different kinds".into())),
        }
    }
}

/// Applies an affine (isometry or group-G) element pointwise.
pub fn apply_affine(g: &GroupElement, xs: &PointSet) -> Result<PointSet, Error> {
    match g.kind {
        GroupKind::Isometry | GroupKind::GroupG => {}
        GroupKind::Moebius => {
            return Err(Error::InvalidParameter(
                "apply_affine expects an affine element; use moebius_apply".into(),
            ))
        }
    }
    xs.map_coords(|c| linalg::add(&mat_vec(&g.linear, c), &g.translation))
}

/// The rescaling map `L_t(y, z) = (y, z / t)` for `t > 0`.
pub fn rescale(t: &Rat, xs: &PointSet, split: &DegenerationSplit) -> Result<PointSet, Error> {
    if sign_of(t) != ExactSign::Pos {
        return Err(Error::InvalidParameter("rescaling parameter must be positive".into()));
    }
    if xs.dim() != split.dim() {
        return Err(Error::DimensionMismatch { expected: split.dim(), got: xs.dim() });
    }
    xs.map_coords(|c| {
        let mut out = c.to_vec();
        for z in out.iter_mut().skip(split.m) {
            *z = &*z / t;
        }
        out
    })
}

/// Status of one sampled time in the limit harness.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepStatus {
    /// Del_Q(X_t) matches Del_Q'(X) cell-for-cell.
    Match,
    /// Decomposition computed but combinatorics differ.
    Mismatch { cells: Vec<Vec<usize>> },
    /// X_t violates spacelike or generic position at this t.
    Invalid { reason: String },
}

/// Report of the rescaled-limit sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    /// Cells of the degenerate-form Delaunay decomposition of the
    /// first-order data.
    pub reference_cells: Vec<Vec<usize>>,
    /// Per sampled t (descending), the comparison outcome.
    pub sweep: Vec<(Rat, SweepStatus)>,
    /// Largest sampled t such that every sampled t' <= t matches.
    pub threshold: Option<Rat>,
}

/// Builds linear paths `p_k(t) = (y_k, t v_k)` from first-order data,
/// computes `Del_Q(X_t)` for each sampled t and compares against the
/// degenerate-form Delaunay decomposition of `X = {(y_k, v_k)}`.
/// Errors if the smallest sampled t does not match.
pub fn limit_harness(
    q: &QuadraticForm,
    m: usize,
    base: &[Vec<Rat>],
    velocities: &[Vec<Rat>],
    t_values: &[Rat],
) -> Result<LimitReport, Error> {
    let split = DegenerationSplit::new(q, m)?;
    let d = split.dim();
    if base.len() != velocities.len() {
        return Err(Error::InvalidParameter("base/velocity length mismatch".into()));
    }
    if base.iter().any(|y| y.len() != m) || velocities.iter().any(|v| v.len() != d - m) {
        return Err(Error::InvalidParameter("wrong block dimensions in first-order data".into()));
    }
    if t_values.is_empty() {
        return Err(Error::InvalidParameter("empty t sweep".into()));
    }
    for w in t_values.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::InvalidParameter("t values must be strictly decreasing".into()));
        }
    }
    if sign_of(t_values.last().unwrap()) != ExactSign::Pos {
        return Err(Error::InvalidParameter("t values must be positive".into()));
    }

    let first_order: Vec<Vec<Rat>> = base
        .iter()
        .zip(velocities)
        .map(|(y, v)| {
            let mut c = y.clone();
            c.extend(v.iter().cloned());
            c
        })
        .collect();
    let xs = PointSet::from_coords(d, first_order)?;
    let degenerate = split.degenerate_form();
    let reference = delaunay(&degenerate, &xs)?;

    let mut sweep = Vec::with_capacity(t_values.len());
    for t in t_values {
        let xt = xs
            .map_coords(|c| {
                let mut out = c.to_vec();
                for z in out.iter_mut().skip(m) {
                    *z = &*z * t;
                }
                out
            })
            .expect("same dims");
        let status = match delaunay(q, &xt) {
            Ok(complex) => {
                if complex.cells == reference.cells {
                    SweepStatus::Match
                } else {
                    SweepStatus::Mismatch { cells: complex.cells }
                }
            }
            Err(e) if e.is_input_error() => SweepStatus::Invalid { reason: e.to_string() },
            Err(e) => return Err(e),
        };
        sweep.push((t.clone(), status));
    }
    if !matches!(sweep.last().unwrap().1, SweepStatus::Match) {
        return Err(Error::Assertion(format!(
            "no combinatorial match at the smallest sampled t = {}",
            crate::rat::format_rat(t_values.last().unwrap())
        )));
    }
    // Largest sampled t below which (inclusive) everything matches.
    let mut threshold = None;
    for (t, status) in sweep.iter().rev() {
        if matches!(status, SweepStatus::Match) {
            threshold = Some(t.clone());
        } else {
            break;
        }
    }
    Ok(LimitReport { reference_cells: reference.cells.clone(), sweep, threshold })
}

/// A point of the conformal compactification in homogeneous
/// coordinates of R^{d+2}.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPoint(pub Vec<Rat>);

impl HomogeneousPoint {
    /// Lift of an affine point: `(x, Q(x), 1)`.
    pub fn from_affine(q: &QuadraticForm, x: &[Rat]) -> Result<Self, Error> {
        let mut v = x.to_vec();
        v.push(q.evaluate(x)?);
        v.push(rat(1));
        Ok(HomogeneousPoint(v))
    }

    /// The distinguished point at infinity `(0_d, 1, 0)`.
    pub fn infinity(d: usize) -> Self {
        let mut v = vec![Rat::zero(); d + 2];
        v[d] = rat(1);
        HomogeneousPoint(v)
    }

    /// De-homogenizes to an affine point when the last coordinate is
    /// nonzero.
    pub fn to_affine(&self) -> Option<Vec<Rat>> {
        let last = self.0.last().unwrap();
        if last.is_zero() {
            return None;
        }
        let d = self.0.len() - 2;
        Some(self.0[..d].iter().map(|c| c / last).collect())
    }

    pub fn is_infinity(&self) -> bool {
        let d = self.0.len() - 2;
        self.0[..d].iter().all(|c| c.is_zero())
            && !self.0[d].is_zero()
            && self.0[d + 1].is_zero()
    }
}

/// Bilinear form of Q^ on homogeneous representatives.
pub fn hat_inner(q: &QuadraticForm, a: &HomogeneousPoint, b: &HomogeneousPoint) -> Rat {
    let d = q.dim();
    let head = q.inner(&a.0[..d], &b.0[..d]).expect("dims match");
    let half = Rat::new(1.into(), 2.into());
    head - (&a.0[d] * &b.0[d + 1] + &a.0[d + 1] * &b.0[d]) * half
}

/// True iff `b` lies on the light cone of `a`: `<a^, b^>_Q^ = 0`.
pub fn lightcone_test(q: &QuadraticForm, a: &HomogeneousPoint, b: &HomogeneousPoint) -> bool {
    hat_inner(q, a, b).is_zero()
}

/// Applies a Moebius element to a point set. Errors when some image
/// lands on the light cone at infinity (vanishing last coordinate).
pub fn moebius_apply(g: &GroupElement, xs: &PointSet, q: &QuadraticForm) -> Result<PointSet, Error> {
    if g.kind != GroupKind::Moebius {
        return Err(Error::InvalidParameter("moebius_apply expects a Moebius element".into()));
    }
    let d = q.dim();
    let mut coords = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter_coords().enumerate() {
        let lifted = HomogeneousPoint::from_affine(q, x)?;
        let image = HomogeneousPoint(mat_vec(&g.linear, &lifted.0));
        match image.to_affine() {
            Some(affine) => {
                // The image stays on the graph of Q because Q^ vanishes
                // on lifted points and g preserves Q^.
                debug_assert_eq!(
                    q.evaluate(&affine).unwrap(),
                    &image.0[d] / image.0.last().unwrap()
                );
                coords.push(affine);
            }
            None => {
                return Err(Error::BoundaryEscape { label: xs.label(i).to_string() });
            }
        }
    }
    let points = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| crate::qform::LabeledPoint { label: xs.label(i).to_string(), coords: c })
        .collect();
    PointSet::new(d, points)
}

/// Side of a (projectivized) point relative to a Q-sphere, evaluated by
/// intersecting the line through the point and infinity with the
/// sphere's hyperplane and taking the sign of Q^ there. For an affine
/// point this equals `t^2 (Q(x) - phi(x) - D')`, the containment sign.
pub fn projective_side(ball: &QBall, p: &HomogeneousPoint) -> Containment {
    if p.is_infinity() {
        return Containment::Outside;
    }
    let d = ball.form().dim();
    let head = &p.0[..d];
    let b = &p.0[d + 1];
    // Intersection point with the hyperplane P of the sphere:
    // (y, phi(y) + D' b, b) for p = (y, a, b).
    let phi_y = linalg::dot(ball.phi(), head);
    let qhat = ball.form().evaluate(head).expect("dims match")
        - (&phi_y + &(ball.dprime() * b)) * b;
    match sign_of(&qhat) {
        ExactSign::Neg => Containment::Inside,
        ExactSign::Zero => Containment::Boundary,
        ExactSign::Pos => Containment::Outside,
    }
}

/// Spec entry point: agrees exactly with `QBall::contains` on affine
/// points, computed through the projective route.
pub fn inside_via_projective_line(
    q: &QuadraticForm,
    ball: &QBall,
    x: &[Rat],
) -> Result<Containment, Error> {
    let p = HomogeneousPoint::from_affine(q, x)?;
    Ok(projective_side(ball, &p))
}

/// Per-sample condition data for a discretized Moebius path.
#[derive(Debug, Clone, PartialEq)]
pub struct MoebiusSample {
    /// Preimage of infinity under this sample, dehomogenized when affine.
    pub pullback_infinity_affine: Option<Vec<Rat>>,
    /// Strictly outside every empty and full sphere.
    pub clear_of_spheres: bool,
    /// Off the light cone of every point of X.
    pub clear_of_lightcones: bool,
}

impl MoebiusSample {
    pub fn condition_holds(&self) -> bool {
        self.clear_of_spheres && self.clear_of_lightcones
    }
}

/// Report of the Moebius invariance check.
#[derive(Debug, Clone, PartialEq)]
pub struct MoebiusReport {
    pub samples: Vec<MoebiusSample>,
    pub condition_held: bool,
    pub combinatorics_equal: bool,
    pub original_cells: Vec<Vec<usize>>,
    pub image_cells: Vec<Vec<usize>>,
}

/// Compares Del_Q(g(X)) against Del_Q(X) through the point bijection
/// and evaluates the sufficient avoidance condition along a
/// user-supplied discretized path of exact group samples: each sample's
/// pullback of infinity is tested against every empty and full sphere
/// of X (via the projective line test) and against every light cone of
/// a point of X.
pub fn moebius_delaunay_check(
    q: &QuadraticForm,
    xs: &PointSet,
    g: &GroupElement,
    path: &[GroupElement],
) -> Result<MoebiusReport, Error> {
    if g.kind != GroupKind::Moebius || path.iter().any(|s| s.kind != GroupKind::Moebius) {
        return Err(Error::InvalidParameter("moebius_delaunay_check expects Moebius elements".into()));
    }
    let del = delaunay(q, xs)?;
    let full = full_decomposition(q, xs)?;
    let spheres: Vec<&QBall> = del.balls.iter().chain(full.balls.iter()).collect();
    let lifted: Vec<HomogeneousPoint> = xs
        .iter_coords()
        .map(|x| HomogeneousPoint::from_affine(q, x))
        .collect::<Result<_, _>>()?;

    let mut samples = Vec::with_capacity(path.len());
    for sample in path {
        let inverse = linalg::invert(&sample.linear)?;
        let pullback = HomogeneousPoint(
            inverse.iter().map(|row| row[q.dim()].clone()).collect(),
        );
        let clear_of_spheres = spheres
            .iter()
            .all(|b| projective_side(b, &pullback) == Containment::Outside);
        let clear_of_lightcones = lifted.iter().all(|x| !lightcone_test(q, &pullback, x));
        samples.push(MoebiusSample {
            pullback_infinity_affine: pullback.to_affine(),
            clear_of_spheres,
            clear_of_lightcones,
        });
    }
    let condition_held = samples.iter().all(|s| s.condition_holds());

    let image = moebius_apply(g, xs, q)?;
    let image_del = delaunay(q, &image)?;
    let combinatorics_equal = image_del.cells == del.cells;
    Ok(MoebiusReport {
        samples,
        condition_held,
        combinatorics_equal,
        original_cells: del.cells.clone(),
        image_cells: image_del.cells,
    })
}

/// Convenience: compares Delaunay combinatorics of two point sets in
/// the same label order.
pub fn same_delaunay_combinatorics(
    q: &QuadraticForm,
    a: &PointSet,
    b: &PointSet,
) -> Result<bool, Error> {
    Ok(delaunay(q, a)?.cells == delaunay(q, b)?.cells)
}

/// Rational O(1,1) boost from the parameter s != +-1:
/// [[(1+s^2)/(1-s^2), 2s/(1-s^2)], [2s/(1-s^2), (1+s^2)/(1-s^2)]].
pub fn rational_boost(s: &Rat) -> Result<Vec<Vec<Rat>>, Error> {
    let one = rat(1);
    let s2 = s * s;
    let denom = &one - &s2;
    if denom.is_zero() {
        return Err(Error::InvalidParameter("boost parameter must differ from +-1".into()));
    }
    let diag = (&one + &s2) / &denom;
    let off = (rat(2) * s) / &denom;
    Ok(vec![vec![diag.clone(), off.clone()], vec![off, diag]])
}

/// Rational rotation in O(2) from the half-tangent parameter t:
/// [[ (1-t^2)/(1+t^2), -2t/(1+t^2)], [2t/(1+t^2), (1-t^2)/(1+t^2)]].
pub fn rational_rotation(t: &Rat) -> Vec<Vec<Rat>> {
    let one = rat(1);
    let t2 = t * t;
    let denom = &one + &t2;
    let c = (&one - &t2) / &denom;
    let s = (rat(2) * t) / &denom;
    vec![vec![c.clone(), -s.clone()], vec![s, c]]
}

/// Verification helpers shared with the CLI: the combinatorics of a
/// complex as plain cells.
pub fn cells_of(complex: &CellComplex) -> Vec<Vec<usize>> {
    complex.cells.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn pset(coords: Vec<Vec<Rat>>) -> PointSet {
        let d = coords[0].len();
        PointSet::from_coords(d, coords).unwrap()
    }

    fn mink_quad() -> PointSet {
        pset(vec![
            vec![rat(0), rat(0)],
            vec![rat(2), rat(0)],
            vec![rat(1), ratio(1, 2)],
            vec![rat(3), ratio(1, 4)],
        ])
    }

    #[test]
    fn rational_boost_preserves_form() {
        let q = QuadraticForm::minkowski2();
        for s in [ratio(1, 2), ratio(-2, 5), ratio(7, 3)] {
            let m = rational_boost(&s).unwrap();
            let g = GroupElement::isometry(&q, m, vec![rat(0), rat(0)]).unwrap();
            assert_eq!(g.kind, GroupKind::Isometry);
        }
        assert!(rational_boost(&rat(1)).is_err());
        // A non-isometry is rejected at construction.
        let bad = vec![vec![rat(2), rat(0)], vec![rat(0), rat(1)]];
        assert!(GroupElement::isometry(&q, bad, vec![rat(0), rat(0)]).is_err());
    }

    #[test]
    fn boost_preserves_displacement_and_delaunay() {
        let q = QuadraticForm::minkowski2();
        let m = vec![vec![ratio(5, 3), ratio(4, 3)], vec![ratio(4, 3), ratio(5, 3)]];
        let g = GroupElement::isometry(&q, m, vec![ratio(1, 7), rat(-2)]).unwrap();
        let xs = mink_quad();
        let ys = apply_affine(&g, &xs).unwrap();
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let before = q
                    .evaluate(&linalg::sub(xs.coords(i), xs.coords(j)))
                    .unwrap();
                let after = q
                    .evaluate(&linalg::sub(ys.coords(i), ys.coords(j)))
                    .unwrap();
                assert_eq!(before, after);
            }
        }
        assert!(same_delaunay_combinatorics(&q, &xs, &ys).unwrap());
    }

    #[test]
    fn identity_fixes_points() {
        let q = QuadraticForm::minkowski2();
        let g = GroupElement::isometry(&q, linalg::identity(2), vec![rat(0), rat(0)]).unwrap();
        let xs = mink_quad();
        assert_eq!(apply_affine(&g, &xs).unwrap(), xs);
    }

    #[test]
    fn group_g_shear_preserves_degenerate_delaunay() {
        let qe = QuadraticForm::euclidean2();
        let split = DegenerationSplit::new(&qe, 1).unwrap();
        let degenerate = split.degenerate_form();
        assert_eq!(degenerate.matrix(), QuadraticForm::degenerate2().matrix());
        let xs = pset(vec![
            vec![rat(0), rat(0)],
            vec![rat(1), rat(1)],
            vec![rat(2), rat(0)],
            vec![rat(3), rat(2)],
        ]);
        for b in [ratio(1, 2), rat(-3), rat(5)] {
            let linear = vec![vec![rat(1), rat(0)], vec![b.clone(), rat(1)]];
            let g = GroupElement::group_g(&split, linear, vec![rat(0), ratio(2, 3)]).unwrap();
            let ys = apply_affine(&g, &xs).unwrap();
            assert!(same_delaunay_combinatorics(&degenerate, &xs, &ys).unwrap());
        }
        // Upper-triangular shears are not in G.
        let bad = vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]];
        assert!(GroupElement::group_g(&split, bad, vec![rat(0), rat(0)]).is_err());
    }

    #[test]
    fn rescale_examples() {
        let qe = QuadraticForm::euclidean2();
        let split = DegenerationSplit::new(&qe, 1).unwrap();
        let xs = pset(vec![vec![rat(1), rat(4)], vec![rat(2), rat(-6)]]);
        // t = 1 is the identity.
        assert_eq!(rescale(&rat(1), &xs, &split).unwrap(), xs);
        // t = 1/2 doubles the z block.
        let doubled = rescale(&ratio(1, 2), &xs, &split).unwrap();
        assert_eq!(doubled.coords(0), &[rat(1), rat(8)]);
        assert_eq!(doubled.coords(1), &[rat(2), rat(-12)]);
        // Composition law L_t L_s = L_{ts}.
        let a = rescale(&ratio(1, 3), &rescale(&ratio(1, 2), &xs, &split).unwrap(), &split).unwrap();
        let b = rescale(&ratio(1, 6), &xs, &split).unwrap();
        assert_eq!(a, b);
        assert!(rescale(&rat(0), &xs, &split).is_err());
    }

    #[test]
    fn limit_harness_example() {
        // Base points 0,1,2,3 with velocities 0,1,0,2: the degenerate
        // Delaunay has the shared edge {(1,1),(2,0)}, and small t
        // reproduces it for both the Euclidean and Minkowski forms.
        let base: Vec<Vec<Rat>> = vec![vec![rat(0)], vec![rat(1)], vec![rat(2)], vec![rat(3)]];
        let velocities: Vec<Vec<Rat>> =
            vec![vec![rat(0)], vec![rat(1)], vec![rat(0)], vec![rat(2)]];
        let ts: Vec<Rat> = vec![ratio(1, 10), ratio(1, 100), ratio(1, 1000)];
        for q in [QuadraticForm::euclidean2(), QuadraticForm::minkowski2()] {
            let report = limit_harness(&q, 1, &base, &velocities, &ts).unwrap();
            assert_eq!(report.reference_cells, vec![vec![0, 1, 2], vec![1, 2, 3]]);
            assert!(report.threshold.is_some());
            let t100 = &report.sweep[1];
            assert_eq!(t100.0, ratio(1, 100));
            assert_eq!(t100.1, SweepStatus::Match);
        }
    }

    #[test]
    fn limit_harness_single_cell_is_constant() {
        let base: Vec<Vec<Rat>> = vec![vec![rat(0)], vec![rat(1)], vec![rat(2)]];
        let velocities: Vec<Vec<Rat>> = vec![vec![rat(0)], vec![rat(1)], vec![rat(0)]];
        let ts: Vec<Rat> = vec![ratio(1, 10), ratio(1, 100)];
        let report =
            limit_harness(&QuadraticForm::euclidean2(), 1, &base, &velocities, &ts).unwrap();
        assert_eq!(report.threshold, Some(ratio(1, 10)));
        assert!(report.sweep.iter().all(|(_, s)| *s == SweepStatus::Match));
    }

    #[test]
    fn limit_harness_validates_input() {
        let base: Vec<Vec<Rat>> = vec![vec![rat(0)], vec![rat(1)], vec![rat(2)]];
        let velocities: Vec<Vec<Rat>> = vec![vec![rat(0)], vec![rat(1)], vec![rat(0)]];
        // Non-decreasing sweep rejected.
        assert!(limit_harness(
            &QuadraticForm::euclidean2(),
            1,
            &base,
            &velocities,
            &[ratio(1, 100), ratio(1, 10)]
        )
        .is_err());
        // Non-spacelike first-order data rejected: duplicate base points.
        let bad_base: Vec<Vec<Rat>> = vec![vec![rat(0)], vec![rat(0)], vec![rat(2)]];
        assert!(limit_harness(
            &QuadraticForm::euclidean2(),
            1,
            &bad_base,
            &velocities,
            &[ratio(1, 10)]
        )
        .is_err());
    }

    #[test]
    fn lightcone_examples() {
        let q = QuadraticForm::minkowski2();
        let origin = HomogeneousPoint::from_affine(&q, &[rat(0), rat(0)]).unwrap();
        let lightlike = HomogeneousPoint::from_affine(&q, &[rat(1), rat(1)]).unwrap();
        let spacelike = HomogeneousPoint::from_affine(&q, &[rat(2), rat(0)]).unwrap();
        let inf = HomogeneousPoint::infinity(2);
        assert!(lightcone_test(&q, &origin, &lightlike));
        assert!(!lightcone_test(&q, &origin, &inf));
        assert!(!lightcone_test(&q, &origin, &spacelike));
        // <x^, y^> = -Q(x - y)/2 in general.
        assert_eq!(
            hat_inner(&q, &origin, &spacelike),
            -q.evaluate(&[rat(2), rat(0)]).unwrap() / rat(2)
        );
    }

    #[test]
    fn projective_side_agrees_with_contains() {
        let q = QuadraticForm::minkowski2();
        let ball = QBall::new(q.clone(), vec![rat(2), ratio(-5, 2)], rat(0)).unwrap();
        let queries = [
            vec![rat(1), rat(0)],
            vec![rat(2), rat(0)],
            vec![rat(5), rat(-1)],
            vec![ratio(-1, 3), ratio(2, 7)],
        ];
        for x in &queries {
            let via_line = inside_via_projective_line(&q, &ball, x).unwrap();
            assert_eq!(via_line, ball.contains(x).unwrap());
        }
    }

    #[test]
    fn embedded_affine_reproduces_apply_affine() {
        let q = QuadraticForm::minkowski2();
        let m = rational_boost(&ratio(1, 3)).unwrap();
        let b = vec![ratio(2, 5), rat(1)];
        let affine = GroupElement::isometry(&q, m.clone(), b.clone()).unwrap();
        let embedded = GroupElement::embed_affine(&q, &m, &b).unwrap();
        let xs = mink_quad();
        let via_affine = apply_affine(&affine, &xs).unwrap();
        let via_moebius = moebius_apply(&embedded, &xs, &q).unwrap();
        assert_eq!(via_affine, via_moebius);
    }

    #[test]
    fn inversion_swaps_origin_and_infinity() {
        let q = QuadraticForm::minkowski2();
        let j = GroupElement::inversion(&q);
        let origin = HomogeneousPoint::from_affine(&q, &[rat(0), rat(0)]).unwrap();
        let image = HomogeneousPoint(mat_vec(&j.linear, &origin.0));
        assert!(image.is_infinity());
        // x -> x / Q(x) on a point with Q(x) = 3.
        let x = HomogeneousPoint::from_affine(&q, &[rat(2), rat(1)]).unwrap();
        let jx = HomogeneousPoint(mat_vec(&j.linear, &x.0));
        assert_eq!(jx.to_affine().unwrap(), vec![ratio(2, 3), ratio(1, 3)]);
    }

    #[test]
    fn moebius_identity_path_preserves_combinatorics() {
        let q = QuadraticForm::minkowski2();
        let xs = mink_quad();
        let id = GroupElement::moebius(&q, linalg::identity(4)).unwrap();
        let report = moebius_delaunay_check(&q, &xs, &id, &[id.clone()]).unwrap();
        assert!(report.condition_held);
        assert!(report.combinatorics_equal);
    }

    #[test]
    fn moebius_affine_path_preserves_combinatorics() {
        let q = QuadraticForm::minkowski2();
        let xs = mink_quad();
        // Path of boosts from the identity to s = 1/3.
        let path: Vec<GroupElement> = [rat(0), ratio(1, 6), ratio(1, 3)]
            .iter()
            .map(|s| {
                GroupElement::embed_affine(&q, &rational_boost(s).unwrap(), &[rat(0), rat(0)])
                    .unwrap()
            })
            .collect();
        let report = moebius_delaunay_check(&q, &xs, path.last().unwrap(), &path).unwrap();
        assert!(report.condition_held);
        assert!(report.combinatorics_equal);
    }

    #[test]
    fn boundary_escape_is_flagged() {
        // The inversion sends any point with Q(x) = 0 to infinity; the
        // origin itself lands at infinity too (last coordinate 0).
        let q = QuadraticForm::minkowski2();
        let j = GroupElement::inversion(&q);
        let xs = pset(vec![vec![rat(0), rat(0)], vec![rat(2), rat(0)]]);
        match moebius_apply(&j, &xs, &q) {
            Err(Error::BoundaryEscape { label }) => assert_eq!(label, "p0"),
            other => panic!("expected boundary escape, got {other:?}"),
        }
    }

    #[test]
    fn lightcone_pullback_is_detected() {
        // Conjugated translation J T_c J has pullback of infinity at the
        // affine point -c / Q(c); choose c so that the pullback lies on
        // a light cone of X.
        let q = QuadraticForm::minkowski2();
        let xs = mink_quad();
        // Want pullback p with <p^, x0^> = 0, i.e. Q(p - x0) = 0; take
        // p = (1, 1) (lightlike from the origin = x0). Then c with
        // -c/Q(c) = (1,1) fails since Q(1,1) = 0; instead aim at x2 =
        // (1, 1/2): p = x2 + (1, 1) = (2, 3/2): Q(p - x2) = 0. Need
        // -c = p Q(c): c = -p t with t = Q(c) = t^2 Q(p) so t = 1/Q(p).
        let p = vec![rat(2), ratio(3, 2)];
        let qp = q.evaluate(&p).unwrap(); // 4 - 9/4 = 7/4
        let c: Vec<Rat> = p.iter().map(|x| -(x / &qp)).collect();
        let j = GroupElement::inversion(&q);
        let t = GroupElement::embed_affine(&q, &linalg::identity(2), &c).unwrap();
        let g = j.compose(&t).unwrap().compose(&j).unwrap();
        let inverse = linalg::invert(&g.linear).unwrap();
        let pullback = HomogeneousPoint(inverse.iter().map(|row| row[2].clone()).collect());
        assert_eq!(pullback.to_affine().unwrap(), p);
        let x2 = HomogeneousPoint::from_affine(&q, xs.coords(2)).unwrap();
        assert!(lightcone_test(&q, &pullback, &x2));
    }
}
