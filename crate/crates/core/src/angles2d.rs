//! Interior and edge angles in the plane for the three 2D geometries
//! (Euclidean, Minkowski, degenerate), angle sequences and fatness
//! comparison, and exhaustive triangulation enumeration.
//!
//! Angles are reported in double precision; every combinatorial decision
//! (spacelike checks, triangle emptiness, coverage) stays exact.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;

use crate::delaunay::CellComplex;
use crate::error::Error;
use crate::linalg::{det, dot, sub};
use crate::qform::{PointSet, QuadraticForm};
use crate::rat::{rat, sign_of, to_f64, ExactSign, Rat};

/// Counterclockwise quarter turn.
pub fn rot90(v: &[Rat]) -> Vec<Rat> {
    vec![-v[1].clone(), v[0].clone()]
}

fn require_spacelike_vector(q: &QuadraticForm, v: &[Rat]) -> Result<Rat, Error> {
    let qv = q.evaluate(v)?;
    if sign_of(&qv) != ExactSign::Pos {
        return Err(Error::NotSpacelike { a: format!("{v:?}"), b: "0".into() });
    }
    Ok(qv)
}

/// Euclidean-style angle for a positive definite form:
/// `arccos(<v,w>_Q / sqrt(Q(v) Q(w)))`, in `[0, pi]`.
pub fn euclidean_angle(q: &QuadraticForm, v: &[Rat], w: &[Rat]) -> Result<f64, Error> {
    let qv = require_spacelike_vector(q, v)?;
    let qw = require_spacelike_vector(q, w)?;
    let c = to_f64(&q.inner(v, w)?) / (to_f64(&qv) * to_f64(&qw)).sqrt();
    Ok(c.clamp(-1.0, 1.0).acos())
}

/// Signed Minkowski angle between spacelike vectors: positive
/// `arccosh(<v^,w^>)` in the same component of spacelike directions
/// (detected by the sign of the inner product), negative
/// `-arccosh(-<v^,w^>)` across components.
pub fn minkowski_angle(q: &QuadraticForm, v: &[Rat], w: &[Rat]) -> Result<f64, Error> {
    if q.signature() != (1, 1, 0) {
        return Err(Error::InvalidParameter(
            "minkowski_angle needs a signature (1,1) form".into(),
        ));
    }
    let qv = require_spacelike_vector(q, v)?;
    let qw = require_spacelike_vector(q, w)?;
    let c = to_f64(&q.inner(v, w)?) / (to_f64(&qv) * to_f64(&qw)).sqrt();
    if c >= 0.0 {
        Ok(c.max(1.0).acosh())
    } else {
        Ok(-(-c).max(1.0).acosh())
    }
}

/// Signed angle in the degenerate plane `Q(x) = x1^2`: normalize each
/// vector by its (signed) first coordinate and return
/// `+|v2 - w2|` for directions in the same component (`v1 w1 > 0`),
/// `-|v2 - w2|` across components. This is the convention consistent
/// with the derivative-of-rescaled-angles definition.
pub fn degenerate_angle(v: &[Rat], w: &[Rat]) -> Result<f64, Error> {
    if v.len() != 2 || w.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: v.len().max(w.len()) });
    }
    if v[0].is_zero() || w[0].is_zero() {
        return Err(Error::NotSpacelike { a: format!("{v:?}"), b: format!("{w:?}") });
    }
    let vt = &v[1] / &v[0];
    let wt = &w[1] / &w[0];
    let mag = to_f64(&(&vt - &wt)).abs();
    let same_component = sign_of(&(&v[0] * &w[0])) == ExactSign::Pos;
    Ok(if same_component { mag } else { -mag })
}

/// Dispatches on the signature of the three supported plane geometries.
pub fn angle_between(q: &QuadraticForm, v: &[Rat], w: &[Rat]) -> Result<f64, Error> {
    match q.signature() {
        (2, 0, 0) => euclidean_angle(q, v, w),
        (1, 1, 0) => minkowski_angle(q, v, w),
        (1, 0, 1) => {
            if q.matrix() != QuadraticForm::degenerate2().matrix() {
                return Err(Error::InvalidParameter(
                    "degenerate angles are defined for the standard form diag(1, 0)".into(),
                ));
            }
            degenerate_angle(v, w)
        }
        sig => Err(Error::InvalidParameter(format!(
            "no planar angle theory for signature {sig:?}"
        ))),
    }
}

/// Interior angles of a spacelike triangle, one per vertex in input
/// order, via the angle function matching the form.
pub fn interior_angles(
    q: &QuadraticForm,
    triangle: &[Vec<Rat>; 3],
) -> Result<[f64; 3], Error> {
    let mut out = [0.0; 3];
    for i in 0..3 {
        let u = sub(&triangle[(i + 1) % 3], &triangle[i]);
        let w = sub(&triangle[(i + 2) % 3], &triangle[i]);
        out[i] = angle_between(q, &u, &w)?;
    }
    Ok(out)
}

/// Sorted list of all interior angles of a triangulation.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSequence {
    values: Vec<f64>,
}

impl AngleSequence {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Concatenates interior angles over all triangles, sorted ascending.
pub fn angle_sequence(
    q: &QuadraticForm,
    xs: &PointSet,
    cells: &[Vec<usize>],
) -> Result<AngleSequence, Error> {
    let mut values = Vec::with_capacity(cells.len() * 3);
    for cell in cells {
        let tri = [
            xs.coords(cell[0]).to_vec(),
            xs.coords(cell[1]).to_vec(),
            xs.coords(cell[2]).to_vec(),
        ];
        values.extend(interior_angles(q, &tri)?);
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("angles are finite"));
    Ok(AngleSequence { values })
}

/// Default elementwise tie tolerance for fatness comparison.
pub const FATNESS_TIE_TOLERANCE: f64 = 1e-12;

fn lex_compare(a: &[f64], b: &[f64], tol: f64) -> Result<Ordering, Error> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "angle sequences of different lengths: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() <= tol {
            continue;
        }
        return Ok(if x > y { Ordering::Greater } else { Ordering::Less });
    }
    Ok(Ordering::Equal)
}

/// Plain lexicographic comparison of the signed ascending sequences:
/// `Greater` means `a` is fatter. Elements closer than `tol` are tied.
pub fn compare_fatness(a: &AngleSequence, b: &AngleSequence, tol: f64) -> Result<Ordering, Error> {
    lex_compare(&a.values, &b.values, tol)
}

/// Fatness comparison in magnitude order: lexicographic on the
/// ascending sequences of |angle|.
///
/// In the indefinite and degenerate plane geometries a triangle
/// degenerates exactly when its angles approach zero, so "fat" means
/// angles of large magnitude; ordering by magnitude is also the reading
/// under which the Delaunay triangulation is the unique fattest one for
/// all three geometries (for a positive definite form it coincides with
/// `compare_fatness`). The signed comparison admits exact
/// counterexamples to Delaunay maximality, e.g. Q = diag(1,-1) on
/// {(0,0),(2,0),(3,1/4),(1,1/2)}.
pub fn compare_fatness_magnitude(
    a: &AngleSequence,
    b: &AngleSequence,
    tol: f64,
) -> Result<Ordering, Error> {
    let key = |s: &AngleSequence| -> Vec<f64> {
        let mut m: Vec<f64> = s.values.iter().map(|x| x.abs()).collect();
        m.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        m
    };
    lex_compare(&key(a), &key(b), tol)
}

/// Maximum input size for exhaustive triangulation enumeration.
pub const ENUMERATION_CAP: usize = 8;

/// All triangulations of `CH(X)` with vertex set exactly `X`, found by
/// exhaustive search over empty triangles with exact coverage and
/// interior-disjointness checks. Deterministic order: each triangulation
/// is a sorted cell list and the result list is sorted.
pub fn enumerate_triangulations(xs: &PointSet) -> Result<Vec<Vec<Vec<usize>>>, Error> {
    if xs.dim() != 2 {
        return Err(Error::InvalidParameter("triangulation enumeration needs d = 2".into()));
    }
    let n = xs.len();
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { cap: ENUMERATION_CAP, got: n });
    }
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let pts: Vec<Vec<Rat>> = xs.iter_coords().map(|c| c.to_vec()).collect();
    let boundary = hull_cycle_ccw(&pts);
    if boundary.len() < 3 {
        return Err(Error::DegenerateHull { hyperplane: "all points collinear".into() });
    }

    // Candidate cells: triples whose closed triangle contains no other point.
    let mut empty = BTreeSet::new();
    for t in crate::linalg::combinations(n, 3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        if orient(&pts[a], &pts[b], &pts[c]) == ExactSign::Zero {
            continue;
        }
        let blocked = (0..n)
            .filter(|&z| z != a && z != b && z != c)
            .any(|z| in_closed_triangle(&pts[a], &pts[b], &pts[c], &pts[z]));
        if !blocked {
            empty.insert(t);
        }
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..boundary.len() {
        pending.insert((boundary[i], boundary[(i + 1) % boundary.len()]));
    }
    let mut chosen: Vec<[usize; 3]> = Vec::new();
    let mut results: Vec<Vec<Vec<usize>>> = Vec::new();
    search(&pts, &empty, &mut pending, &mut chosen, &mut results);
    results.sort();
    Ok(results)
}

/// Depth-first expansion of the lexicographically smallest pending
/// directed edge; every triangulation is generated exactly once.
fn search(
    pts: &[Vec<Rat>],
    empty: &BTreeSet<Vec<usize>>,
    pending: &mut BTreeSet<(usize, usize)>,
    chosen: &mut Vec<[usize; 3]>,
    results: &mut Vec<Vec<Vec<usize>>>,
) {
    let (u, v) = match pending.iter().next() {
        None => {
            let mut cells: Vec<Vec<usize>> = chosen
                .iter()
                .map(|t| {
                    let mut c = t.to_vec();
                    c.sort_unstable();
                    c
                })
                .collect();
            cells.sort();
            results.push(cells);
            return;
        }
        Some(&e) => e,
    };
    for w in 0..pts.len() {
        if w == u || w == v {
            continue;
        }
        if orient(&pts[u], &pts[v], &pts[w]) != ExactSign::Pos {
            continue; // w must lie strictly left of u -> v
        }
        let mut key = vec![u, v, w];
        key.sort_unstable();
        if !empty.contains(&key) {
            continue;
        }
        if chosen
            .iter()
            .any(|t| triangles_overlap(pts, t, &[u, v, w]))
        {
            continue;
        }
        // Apply: the CCW edges of the new triangle.
        let tri_edges = [(u, v), (v, w), (w, u)];
        let mut added: Vec<(usize, usize)> = Vec::new();
        let mut removed: Vec<(usize, usize)> = Vec::new();
        for &e in &tri_edges {
            if pending.remove(&e) {
                removed.push(e);
            } else {
                let twin = (e.1, e.0);
                pending.insert(twin);
                added.push(twin);
            }
        }
        chosen.push([u, v, w]);
        search(pts, empty, pending, chosen, results);
        chosen.pop();
        for e in added {
            pending.remove(&e);
        }
        for e in removed {
            pending.insert(e);
        }
    }
}

fn orient(a: &[Rat], b: &[Rat], c: &[Rat]) -> ExactSign {
    let rows = vec![sub(b, a), sub(c, a)];
    sign_of(&det(&rows))
}

fn in_closed_triangle(a: &[Rat], b: &[Rat], c: &[Rat], z: &[Rat]) -> bool {
    let s1 = orient(a, b, z);
    let s2 = orient(b, c, z);
    let s3 = orient(c, a, z);
    let has_pos = [s1, s2, s3].contains(&ExactSign::Pos);
    let has_neg = [s1, s2, s3].contains(&ExactSign::Neg);
    !(has_pos && has_neg)
}

/// Exact interior-overlap test via clipped intersection area.
fn triangles_overlap(pts: &[Vec<Rat>], t1: &[usize; 3], t2: &[usize; 3]) -> bool {
    let tri = |t: &[usize; 3]| -> Vec<Vec<Rat>> {
        let mut poly: Vec<Vec<Rat>> = t.iter().map(|&i| pts[i].clone()).collect();
        if orient(&poly[0], &poly[1], &poly[2]) == ExactSign::Neg {
            poly.reverse();
        }
        poly
    };
    let p1 = tri(t1);
    let p2 = tri(t2);
    let clipped = clip_polygon(&p1, &p2);
    polygon_area_twice(&clipped) != rat(0)
}

/// Sutherland-Hodgman clip of a convex polygon by a CCW convex clipper.
fn clip_polygon(subject: &[Vec<Rat>], clipper: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut output: Vec<Vec<Rat>> = subject.to_vec();
    for i in 0..clipper.len() {
        if output.is_empty() {
            break;
        }
        let a = &clipper[i];
        let b = &clipper[(i + 1) % clipper.len()];
        let input = std::mem::take(&mut output);
        let side = |p: &[Rat]| orient(a, b, p); // Pos = inside (left)
        for j in 0..input.len() {
            let cur = &input[j];
            let nxt = &input[(j + 1) % input.len()];
            let cur_in = side(cur) != ExactSign::Neg;
            let nxt_in = side(nxt) != ExactSign::Neg;
            if cur_in {
                output.push(cur.clone());
            }
            if cur_in != nxt_in {
                if let Some(x) = segment_line_intersection(cur, nxt, a, b) {
                    output.push(x);
                }
            }
        }
    }
    output
}

fn segment_line_intersection(
    p: &[Rat],
    q: &[Rat],
    a: &[Rat],
    b: &[Rat],
) -> Option<Vec<Rat>> {
    // Line through a,b: normal n = rot90(b - a), n.(x - a) = 0.
    let n = rot90(&sub(b, a));
    let dp = dot(&n, &sub(p, a));
    let dq = dot(&n, &sub(q, a));
    let denom = &dp - &dq;
    if denom.is_zero() {
        return None;
    }
    let t = &dp / &denom; // p + t (q - p)
    Some(
        p.iter()
            .zip(q)
            .map(|(pi, qi)| pi + &t * &(qi - pi))
            .collect(),
    )
}

fn polygon_area_twice(poly: &[Vec<Rat>]) -> Rat {
    if poly.len() < 3 {
        return rat(0);
    }
    let mut acc = rat(0);
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        acc += &a[0] * &b[1] - &a[1] * &b[0];
    }
    acc
}

/// Counterclockwise hull boundary cycle, keeping collinear boundary
/// points (monotone chain popping only on strict clockwise turns).
fn hull_cycle_ccw(pts: &[Vec<Rat>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    let chain = |indices: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &i in indices {
            while out.len() >= 2 {
                let a = out[out.len() - 2];
                let b = out[out.len() - 1];
                if orient(&pts[a], &pts[b], &pts[i]) == ExactSign::Neg {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(i);
        }
        out
    };
    let lower = chain(&idx);
    let rev: Vec<usize> = idx.iter().rev().copied().collect();
    let upper = chain(&rev);
    let mut cycle = lower;
    cycle.extend(upper.iter().skip(1).take(upper.len().saturating_sub(2)));
    cycle
}

/// Edge angle of a triangulated complex. Interior edges: the angle
/// between the tangents of the two circumscribing Q-circles at a shared
/// vertex, traversed so the first ball sits on the left and the second
/// on the right of the walking direction. Exterior edges: the angle
/// between the circle and the outer supporting half-plane, same
/// convention. With this traversal the edge angle equals the sum of the
/// opposite interior angles.
pub fn edge_angle(
    q: &QuadraticForm,
    complex: &CellComplex,
    edge: (usize, usize),
) -> Result<f64, Error> {
    let (a, b) = (edge.0.min(edge.1), edge.0.max(edge.1));
    let incident = complex.cells_at_edge((a, b));
    let p = complex.points.coords(a);
    match incident.len() {
        2 => {
            let t1 = rot90(&complex.balls[incident[0]].gradient(p));
            let t2 = crate::linalg::neg(&rot90(&complex.balls[incident[1]].gradient(p)));
            angle_between(q, &t1, &t2)
        }
        1 => {
            let cell = &complex.cells[incident[0]];
            let opposite = *cell.iter().find(|&&v| v != a && v != b).expect("triangle");
            let dir = sub(complex.points.coords(b), p);
            let mut outward = rot90(&dir);
            let to_opposite = sub(complex.points.coords(opposite), p);
            match sign_of(&dot(&outward, &to_opposite)) {
                ExactSign::Pos => outward = crate::linalg::neg(&outward),
                ExactSign::Neg => {}
                ExactSign::Zero => {
                    return Err(Error::NonGenericInput(
                        "degenerate cell while computing an exterior edge angle".into(),
                    ))
                }
            }
            let t1 = rot90(&complex.balls[incident[0]].gradient(p));
            let t2 = rot90(&outward);
            angle_between(q, &t1, &t2)
        }
        k => Err(Error::InvalidGraph(format!(
            "edge ({a}, {b}) is incident to {k} cells"
        ))),
    }
}

/// Per-cell and per-edge angle data of a complex, plus the sorted
/// sequence; this is what the angle report serializes.
#[derive(Debug, Clone)]
pub struct AngleData {
    pub per_cell: Vec<(Vec<usize>, [f64; 3])>,
    pub per_edge: Vec<((usize, usize), f64)>,
    pub sequence: AngleSequence,
}

pub fn angle_data(q: &QuadraticForm, complex: &CellComplex) -> Result<AngleData, Error> {
    let mut per_cell = Vec::with_capacity(complex.cells.len());
    for cell in &complex.cells {
        let tri = [
            complex.points.coords(cell[0]).to_vec(),
            complex.points.coords(cell[1]).to_vec(),
            complex.points.coords(cell[2]).to_vec(),
        ];
        per_cell.push((cell.clone(), interior_angles(q, &tri)?));
    }
    let mut per_edge = Vec::new();
    for e in complex.edges() {
        per_edge.push((e, edge_angle(q, complex, e)?));
    }
    let sequence = angle_sequence(q, &complex.points, &complex.cells)?;
    Ok(AngleData { per_cell, per_edge, sequence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::delaunay;
    use crate::rat::ratio;

    const LN2: f64 = std::f64::consts::LN_2;

    fn v2(a: Rat, b: Rat) -> Vec<Rat> {
        vec![a, b]
    }

    #[test]
    fn minkowski_angle_examples() {
        let q = QuadraticForm::minkowski2();
        // cosh(ln 2) = 5/4
        for k in [rat(1), rat(3), ratio(1, 7)] {
            let w = v2(ratio(5, 4) * &k, ratio(3, 4) * &k);
            let a = minkowski_angle(&q, &[rat(1), rat(0)], &w).unwrap();
            assert!((a - LN2).abs() < 1e-12, "{a}");
        }
        let a = minkowski_angle(&q, &[rat(1), rat(0)], &[ratio(-5, 4), ratio(3, 4)]).unwrap();
        assert!((a + LN2).abs() < 1e-12);
        let zero = minkowski_angle(&q, &[rat(2), rat(1)], &[rat(2), rat(1)]).unwrap();
        assert_eq!(zero, 0.0);
        assert!(minkowski_angle(&q, &[rat(1), rat(2)], &[rat(1), rat(0)]).is_err());
    }

    #[test]
    fn degenerate_angle_examples() {
        let a = degenerate_angle(&v2(rat(1), ratio(1, 2)), &v2(rat(1), rat(2))).unwrap();
        assert!((a - 1.5).abs() < 1e-15);
        // Opposite components, normalized by the signed first
        // coordinate: -(|1/2 - (-2)|) = -5/2.
        let b = degenerate_angle(&v2(rat(1), ratio(1, 2)), &v2(rat(-1), rat(2))).unwrap();
        assert!((b + 2.5).abs() < 1e-15);
        let z = degenerate_angle(&v2(rat(1), ratio(1, 2)), &v2(rat(1), ratio(1, 2))).unwrap();
        assert_eq!(z, 0.0);
        assert!(degenerate_angle(&v2(rat(0), rat(1)), &v2(rat(1), rat(0))).is_err());
    }

    #[test]
    fn degenerate_angle_matches_rescaled_limit() {
        // The degenerate angle must agree with the derivative of the
        // Euclidean angle between (v1, t v2) and (w1, t w2) at t = 0.
        let qe = QuadraticForm::euclidean2();
        let t = ratio(1, 10_000);
        let cases = [
            (v2(rat(1), ratio(1, 2)), v2(rat(1), rat(2))),
            (v2(rat(1), ratio(1, 2)), v2(rat(-1), rat(2))),
            (v2(rat(-1), ratio(-3, 4)), v2(rat(1), ratio(2, 3))),
            (v2(rat(-1), rat(2)), v2(rat(-1), ratio(-1, 3))),
        ];
        for (v, w) in cases {
            let vt = v2(v[0].clone(), &v[1] * &t);
            let wt = v2(w[0].clone(), &w[1] * &t);
            let theta = euclidean_angle(&qe, &vt, &wt).unwrap();
            let same = sign_of(&(&v[0] * &w[0])) == ExactSign::Pos;
            let numeric = if same {
                theta / to_f64(&t)
            } else {
                -(std::f64::consts::PI - theta) / to_f64(&t)
            };
            let exact = degenerate_angle(&v, &w).unwrap();
            assert!((numeric - exact).abs() < 1e-3, "{numeric} vs {exact}");
        }
    }

    #[test]
    fn interior_angle_sums() {
        let qe = QuadraticForm::euclidean2();
        // Euclidean right triangle sums to pi.
        let tri = [v2(rat(0), rat(0)), v2(rat(1), rat(0)), v2(rat(0), rat(1))];
        let a = interior_angles(&qe, &tri).unwrap();
        assert!((a.iter().sum::<f64>() - std::f64::consts::PI).abs() < 1e-12);

        let q11 = QuadraticForm::minkowski2();
        let tri = [v2(rat(0), rat(0)), v2(rat(2), rat(0)), v2(rat(1), ratio(1, 2))];
        let a = interior_angles(&q11, &tri).unwrap();
        assert!(a.iter().sum::<f64>().abs() < 1e-12);
        // Two positive angles, one negative; apex angle is -ln 3.
        assert!((a[2] + 3.0f64.ln()).abs() < 1e-12);
        assert_eq!(a.iter().filter(|x| **x < 0.0).count(), 1);

        let q10 = QuadraticForm::degenerate2();
        let tri = [v2(rat(0), rat(0)), v2(rat(2), rat(0)), v2(rat(1), rat(1))];
        let a = interior_angles(&q10, &tri).unwrap();
        assert!(a.iter().sum::<f64>().abs() < 1e-15);
        assert_eq!(a, [1.0, 1.0, -2.0]);
    }

    #[test]
    fn equilateral_euclidean_angles() {
        // An approximately equilateral rational triangle is not exactly
        // pi/3 per corner, but the symmetric sum is still pi; use the
        // exact 3-4-5 triangle instead for sharp values.
        let qe = QuadraticForm::euclidean2();
        let tri = [v2(rat(0), rat(0)), v2(rat(4), rat(0)), v2(rat(0), rat(3))];
        let a = interior_angles(&qe, &tri).unwrap();
        assert!((a[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((a[1] - (3.0f64 / 4.0).atan()).abs() < 1e-12);
        assert!((a[2] - (4.0f64 / 3.0).atan()).abs() < 1e-12);
    }

    #[test]
    fn edge_angle_single_triangle_equals_opposite_angle() {
        for (q, apex) in [
            (QuadraticForm::minkowski2(), v2(rat(1), ratio(1, 2))),
            (QuadraticForm::euclidean2(), v2(rat(1), rat(2))),
            (QuadraticForm::degenerate2(), v2(rat(1), rat(1))),
        ] {
            let xs = PointSet::from_coords(
                2,
                vec![v2(rat(0), rat(0)), v2(rat(2), rat(0)), apex],
            )
            .unwrap();
            let complex = delaunay(&q, &xs).unwrap();
            let tri = [
                xs.coords(0).to_vec(),
                xs.coords(1).to_vec(),
                xs.coords(2).to_vec(),
            ];
            let interior = interior_angles(&q, &tri).unwrap();
            // Edge (0,1) is opposite vertex 2, and so on.
            for (edge, opp) in [((0, 1), 2), ((0, 2), 1), ((1, 2), 0)] {
                let ea = edge_angle(&q, &complex, edge).unwrap();
                assert!(
                    (ea - interior[opp]).abs() < 1e-9,
                    "{q:?} edge {edge:?}: {ea} vs {}",
                    interior[opp]
                );
            }
        }
    }

    #[test]
    fn edge_angle_interior_equals_sum_of_opposite_angles() {
        let cases: Vec<(QuadraticForm, Vec<Vec<Rat>>)> = vec![
            (
                QuadraticForm::euclidean2(),
                vec![
                    v2(rat(0), rat(0)),
                    v2(rat(3), rat(0)),
                    v2(rat(1), rat(2)),
                    v2(rat(2), rat(-2)),
                ],
            ),
            (
                QuadraticForm::minkowski2(),
                vec![
                    v2(rat(0), rat(0)),
                    v2(rat(2), rat(0)),
                    v2(rat(1), ratio(1, 2)),
                    v2(rat(3), ratio(1, 4)),
                ],
            ),
            (
                QuadraticForm::degenerate2(),
                vec![
                    v2(rat(0), rat(0)),
                    v2(rat(1), rat(1)),
                    v2(rat(2), rat(0)),
                    v2(rat(3), rat(2)),
                ],
            ),
        ];
        for (q, coords) in cases {
            let xs = PointSet::from_coords(2, coords).unwrap();
            let complex = delaunay(&q, &xs).unwrap();
            for edge in complex.edges() {
                let incident = complex.cells_at_edge(edge);
                let mut opposite_sum = 0.0;
                for &ci in &incident {
                    let cell = &complex.cells[ci];
                    let opp = *cell.iter().find(|v| **v != edge.0 && **v != edge.1).unwrap();
                    let tri = [
                        complex.points.coords(cell[0]).to_vec(),
                        complex.points.coords(cell[1]).to_vec(),
                        complex.points.coords(cell[2]).to_vec(),
                    ];
                    let angles = interior_angles(&q, &tri).unwrap();
                    let pos = cell.iter().position(|&v| v == opp).unwrap();
                    opposite_sum += angles[pos];
                }
                let ea = edge_angle(&q, &complex, edge).unwrap();
                assert!(
                    (ea - opposite_sum).abs() < 1e-9,
                    "{q:?} {edge:?}: edge angle {ea} vs opposite sum {opposite_sum}"
                );
            }
        }
    }

    #[test]
    fn edge_angle_same_at_both_endpoints() {
        // The intersection angle of two Q-circles is the same at both
        // shared points; our implementation reads it at the smaller
        // endpoint, so cross-check against the larger one by hand.
        let q = QuadraticForm::minkowski2();
        let xs = PointSet::from_coords(
            2,
            vec![
                v2(rat(0), rat(0)),
                v2(rat(2), rat(0)),
                v2(rat(1), ratio(1, 2)),
                v2(rat(3), ratio(1, 4)),
            ],
        )
        .unwrap();
        let complex = delaunay(&q, &xs).unwrap();
        let edge = *complex
            .edges()
            .iter()
            .find(|e| complex.cells_at_edge(**e).len() == 2)
            .expect("quadrilateral has an interior edge");
        let incident = complex.cells_at_edge(edge);
        assert_eq!(incident.len(), 2);
        for endpoint in [edge.0, edge.1] {
            let p = complex.points.coords(endpoint);
            let t1 = rot90(&complex.balls[incident[0]].gradient(p));
            let t2 = crate::linalg::neg(&rot90(&complex.balls[incident[1]].gradient(p)));
            let a = angle_between(&q, &t1, &t2).unwrap();
            let reference = edge_angle(&q, &complex, edge).unwrap();
            assert!((a - reference).abs() < 1e-12);
        }
    }

    #[test]
    fn cocircular_edge_angle_limit() {
        // Four points on one Q-circle: the two circumballs coincide.
        // Euclidean convention gives pi, the signed Minkowski convention
        // gives 0. Non-generic, so assemble the complex by hand.
        use crate::delaunay::{CellComplex, ComplexKind};
        let qe = QuadraticForm::euclidean2();
        let xs = PointSet::from_coords(
            2,
            vec![
                v2(rat(1), rat(0)),
                v2(rat(0), rat(1)),
                v2(rat(-1), rat(0)),
                v2(rat(0), rat(-1)),
            ],
        )
        .unwrap();
        let complex = CellComplex::assemble(
            &qe,
            xs,
            vec![vec![0, 1, 2], vec![0, 2, 3]],
            ComplexKind::Delaunay,
        )
        .unwrap();
        let a = edge_angle(&qe, &complex, (0, 2)).unwrap();
        assert!((a - std::f64::consts::PI).abs() < 1e-12);

        let q11 = QuadraticForm::minkowski2();
        // Four spacelike points on the Q-circle Q(x) = -1 + 0:
        // (s, sqrt(1+s^2)) rational points: use (0,1),(3/4,5/4),(-3/4,5/4),(15/8,17/8)... take branch points
        let xs = PointSet::from_coords(
            2,
            vec![
                v2(rat(0), rat(1)),
                v2(ratio(3, 4), ratio(5, 4)),
                v2(ratio(-3, 4), ratio(5, 4)),
                v2(ratio(15, 8), ratio(17, 8)),
            ],
        )
        .unwrap();
        let complex = CellComplex::assemble(
            &q11,
            xs,
            vec![vec![0, 1, 2], vec![0, 1, 3]],
            ComplexKind::Delaunay,
        )
        .unwrap();
        let a = edge_angle(&q11, &complex, (0, 1)).unwrap();
        assert!(a.abs() < 1e-12);
    }

    #[test]
    fn sequence_and_fatness() {
        let q = QuadraticForm::minkowski2();
        let xs = PointSet::from_coords(
            2,
            vec![v2(rat(0), rat(0)), v2(rat(2), rat(0)), v2(rat(1), ratio(1, 2))],
        )
        .unwrap();
        let seq = angle_sequence(&q, &xs, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(seq.len(), 3);
        assert!(seq.values().windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(
            compare_fatness(&seq, &seq, FATNESS_TIE_TOLERANCE).unwrap(),
            Ordering::Equal
        );
        let thinner = AngleSequence { values: vec![seq.values()[0] - 0.1, seq.values()[1], seq.values()[2]] };
        assert_eq!(
            compare_fatness(&seq, &thinner, FATNESS_TIE_TOLERANCE).unwrap(),
            Ordering::Greater
        );
        let short = AngleSequence { values: vec![0.0] };
        assert!(compare_fatness(&seq, &short, FATNESS_TIE_TOLERANCE).is_err());
    }

    #[test]
    fn quadrilateral_delaunay_is_fatter() {
        let q = QuadraticForm::minkowski2();
        let xs = PointSet::from_coords(
            2,
            vec![
                v2(rat(0), rat(0)),
                v2(rat(2), rat(0)),
                v2(rat(1), ratio(1, 2)),
                v2(rat(3), ratio(1, 4)),
            ],
        )
        .unwrap();
        let del = delaunay(&q, &xs).unwrap();
        let all = enumerate_triangulations(&xs).unwrap();
        assert_eq!(all.len(), 2);
        let del_seq = angle_sequence(&q, &xs, &del.cells).unwrap();
        for t in &all {
            if *t == del.cells {
                continue;
            }
            let other = angle_sequence(&q, &xs, t).unwrap();
            assert_eq!(
                compare_fatness_magnitude(&del_seq, &other, FATNESS_TIE_TOLERANCE).unwrap(),
                Ordering::Greater
            );
        }
    }

    #[test]
    fn signed_fatness_counterexample_is_recorded() {
        // For Q = diag(1,-1) on this spacelike generic quadrilateral the
        // Delaunay triangulation is NOT maximal under the plain signed
        // lexicographic comparison, but it is under magnitude order.
        let q = QuadraticForm::minkowski2();
        let xs = PointSet::from_coords(
            2,
            vec![
                v2(rat(0), rat(0)),
                v2(rat(2), rat(0)),
                v2(rat(3), ratio(1, 4)),
                v2(rat(1), ratio(1, 2)),
            ],
        )
        .unwrap();
        let del = delaunay(&q, &xs).unwrap();
        let all = enumerate_triangulations(&xs).unwrap();
        let del_seq = angle_sequence(&q, &xs, &del.cells).unwrap();
        let other = all.iter().find(|t| **t != del.cells).unwrap();
        let other_seq = angle_sequence(&q, &xs, other).unwrap();
        assert_eq!(
            compare_fatness(&del_seq, &other_seq, FATNESS_TIE_TOLERANCE).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_fatness_magnitude(&del_seq, &other_seq, FATNESS_TIE_TOLERANCE).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn enumeration_counts() {
        // Convex quadrilateral: 2 triangulations.
        let quad = PointSet::from_coords(
            2,
            vec![v2(rat(0), rat(0)), v2(rat(3), rat(0)), v2(rat(4), rat(3)), v2(rat(1), rat(2))],
        )
        .unwrap();
        assert_eq!(enumerate_triangulations(&quad).unwrap().len(), 2);

        // Triangle with one interior point: only the star.
        let star = PointSet::from_coords(
            2,
            vec![v2(rat(0), rat(0)), v2(rat(4), rat(0)), v2(rat(0), rat(4)), v2(rat(1), rat(1))],
        )
        .unwrap();
        let ts = enumerate_triangulations(&star).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0], vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);

        // Convex pentagon: Catalan C_3 = 5.
        let pent = PointSet::from_coords(
            2,
            vec![
                v2(rat(0), rat(0)),
                v2(rat(4), rat(0)),
                v2(rat(6), rat(3)),
                v2(rat(2), rat(6)),
                v2(rat(-2), rat(3)),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_triangulations(&pent).unwrap().len(), 5);

        // Convex hexagon: Catalan C_4 = 14.
        let hex = PointSet::from_coords(
            2,
            vec![
                v2(rat(0), rat(0)),
                v2(rat(4), rat(0)),
                v2(rat(6), rat(3)),
                v2(rat(4), rat(6)),
                v2(rat(0), rat(6)),
                v2(rat(-2), rat(3)),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_triangulations(&hex).unwrap().len(), 14);

        // Cap.
        let many = PointSet::from_coords(
            2,
            (0..9).map(|i| v2(rat(i), rat(i * i))).collect(),
        )
        .unwrap();
        assert!(matches!(
            enumerate_triangulations(&many),
            Err(Error::CapExceeded { cap: 8, got: 9 })
        ));
    }

    #[test]
    fn minkowski_half_angle_identity() {
        // For a, b, c at equal time-distance r from 0 (on the upper
        // branch of Q(x) = -r^2), the vertex angle is half the central
        // angle.
        let q = QuadraticForm::minkowski2();
        // Rational points on the unit branch x2 = sqrt(x1^2 + 1), with
        // the vertex a outside the arc spanned by b and c.
        let a = v2(rat(0), rat(1));
        let b = v2(ratio(3, 4), ratio(5, 4));
        let c = v2(ratio(15, 8), ratio(17, 8));
        let at_a = minkowski_angle(&q, &sub(&b, &a), &sub(&c, &a)).unwrap();
        // Central angle between the timelike radii = rapidity difference.
        let inner = to_f64(&q.inner(&b, &c).unwrap());
        let norm = (to_f64(&q.evaluate(&b).unwrap()) * to_f64(&q.evaluate(&c).unwrap())).sqrt();
        let central = (-inner / norm).max(1.0).acosh();
        assert!((central - std::f64::consts::LN_2).abs() < 1e-12);
        assert!((at_a - central / 2.0).abs() < 1e-10, "{at_a} vs {central}");
    }
}
