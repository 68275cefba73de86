//! Piecewise-linear interpolation error of degree <= 2 polynomials over
//! a triangulation, the optimality check for f = Q, and the
//! Lipschitz-graph point set construction.
//!
//! The L^2 integrand has degree <= 4, so all integrals are evaluated by
//! exact rational barycentric moments; floating point enters only in
//! square roots, in the L^infinity maximum conversion, and in the
//! mixed-sign L^1 branch, which never occurs for f = Q (the residual of
//! the form itself is single-signed on every spacelike cell by the
//! inscription inequality).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::angles2d::enumerate_triangulations;
use crate::delaunay::{convex_hull_volume, delaunay};
use crate::error::Error;
use crate::linalg::{dot, mat_vec, solve, sub};
use crate::qform::{LabeledPoint, PointSet, QuadraticForm};
use crate::rat::{rat, sign_of, to_f64, ExactSign, Rat};

/// Polynomial of total degree <= 2 on R^d with exact coefficients:
/// `f(x) = constant + linear . x + x^T quadratic x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFunction {
    pub constant: Rat,
    pub linear: Vec<Rat>,
    pub quadratic: Vec<Vec<Rat>>,
}

impl PolyFunction {
    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn affine(constant: Rat, linear: Vec<Rat>) -> Self {
        let d = linear.len();
        PolyFunction { constant, linear, quadratic: vec![vec![Rat::zero(); d]; d] }
    }

    /// The quadratic form itself, `f = Q`.
    pub fn from_form(q: &QuadraticForm) -> Self {
        PolyFunction {
            constant: Rat::zero(),
            linear: vec![Rat::zero(); q.dim()],
            quadratic: q.matrix().to_vec(),
        }
    }

    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        &self.constant + dot(&self.linear, x) + dot(x, &mat_vec(&self.quadratic, x))
    }
}

/// Norm selector for the interpolation error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpNorm {
    L1,
    L2,
    LInf,
}

/// Sparse bivariate polynomial over the rationals.
#[derive(Debug, Clone, PartialEq)]
struct Poly2 {
    coeffs: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    fn zero() -> Self {
        Poly2 { coeffs: BTreeMap::new() }
    }

    fn constant(c: Rat) -> Self {
        let mut p = Poly2::zero();
        p.set(0, 0, c);
        p
    }

    fn set(&mut self, i: u32, j: u32, c: Rat) {
        if !c.is_zero() {
            self.coeffs.insert((i, j), c);
        }
    }

    fn add_term(&mut self, i: u32, j: u32, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((i, j)).or_insert_with(Rat::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for ((i, j), c) in &other.coeffs {
            out.add_term(*i, *j, c);
        }
        out
    }

    fn scale(&self, s: &Rat) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i, j), c) in &self.coeffs {
            out.set(*i, *j, c * s);
        }
        out
    }

    fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                out.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        out
    }

    fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for ((i, j), c) in &self.coeffs {
            let mut term = c.clone();
            for _ in 0..*i {
                term *= x;
            }
            for _ in 0..*j {
                term *= y;
            }
            acc += term;
        }
        acc
    }

    fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|((i, j), c)| to_f64(c) * x.powi(*i as i32) * y.powi(*j as i32))
            .sum()
    }
}

/// The residual `f - f_hat` on a cell, as a polynomial in the plane
/// coordinates; `f_hat` interpolates `f` at the three vertices.
fn cell_residual(f: &PolyFunction, tri: &[Vec<Rat>; 3]) -> Result<Poly2, Error> {
    let mut rows = Vec::with_capacity(3);
    let mut rhs = Vec::with_capacity(3);
    for v in tri {
        rows.push(vec![v[0].clone(), v[1].clone(), rat(1)]);
        rhs.push(f.evaluate(v));
    }
    let plane = solve(&rows, &rhs).map_err(|_| Error::AffinelyDependent)?;
    let mut r = Poly2::zero();
    r.set(0, 0, &f.constant - &plane[2]);
    r.add_term(1, 0, &(&f.linear[0] - &plane[0]));
    r.add_term(0, 1, &(&f.linear[1] - &plane[1]));
    r.add_term(2, 0, &f.quadratic[0][0]);
    r.add_term(0, 2, &f.quadratic[1][1]);
    r.add_term(1, 1, &(&f.quadratic[0][1] + &f.quadratic[1][0]));
    Ok(r)
}

/// Exact integral of a polynomial over a triangle via the barycentric
/// moment formula: pull back to the reference triangle and use
/// `int s^a t^b = a! b! / (a + b + 2)!`.
fn integrate_over_triangle(p: &Poly2, tri: &[Vec<Rat>; 3]) -> Rat {
    let e1 = sub(&tri[1], &tri[0]);
    let e2 = sub(&tri[2], &tri[0]);
    let jac = {
        let mut v = &e1[0] * &e2[1] - &e1[1] * &e2[0];
        if sign_of(&v) == ExactSign::Neg {
            v = -v;
        }
        v
    };
    // x(s,t) and y(s,t) as degree-1 polynomials in (s,t).
    let mut xs = Poly2::constant(tri[0][0].clone());
    xs.add_term(1, 0, &e1[0]);
    xs.add_term(0, 1, &e2[0]);
    let mut ys = Poly2::constant(tri[0][1].clone());
    ys.add_term(1, 0, &e1[1]);
    ys.add_term(0, 1, &e2[1]);

    // Compose p(x(s,t), y(s,t)) by powers.
    let mut composed = Poly2::zero();
    for ((i, j), c) in &p.coeffs {
        let mut term = Poly2::constant(c.clone());
        for _ in 0..*i {
            term = term.mul(&xs);
        }
        for _ in 0..*j {
            term = term.mul(&ys);
        }
        composed = composed.add(&term);
    }

    let mut total = Rat::zero();
    for ((a, b), c) in &composed.coeffs {
        total += c * &moment(*a, *b);
    }
    total * jac
}

/// `int over reference triangle of s^a t^b = a! b! / (a + b + 2)!`.
fn moment(a: u32, b: u32) -> Rat {
    let fact = |n: u32| -> Rat {
        let mut f = rat(1);
        for k in 2..=n as i64 {
            f *= rat(k);
        }
        f
    };
    fact(a) * fact(b) / fact(a + b + 2)
}

/// Exact minimum and maximum of a degree <= 2 polynomial over a
/// triangle: vertices, per-edge 1D critical points, and the interior
/// critical point when the Hessian is invertible.
fn quadratic_extrema(p: &Poly2, tri: &[Vec<Rat>; 3]) -> (Rat, Rat) {
    let mut candidates: Vec<Rat> = Vec::new();
    for v in tri {
        candidates.push(p.eval(&v[0], &v[1]));
    }
    let half = Rat::new(1.into(), 2.into());
    // Edges: p(a + t(b-a)) is quadratic in t.
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let pa = &tri[a];
        let pb = &tri[b];
        let d = sub(pb, pa);
        // alpha t^2 + beta t + gamma by finite differencing at 0, 1, 1/2.
        let f0 = p.eval(&pa[0], &pa[1]);
        let f1 = p.eval(&pb[0], &pb[1]);
        let mid = vec![&pa[0] + &(&d[0] * &half), &pa[1] + &(&d[1] * &half)];
        let fh = p.eval(&mid[0], &mid[1]);
        let alpha = rat(2) * (&f0 + &f1) - rat(4) * &fh;
        let beta = rat(4) * &fh - rat(3) * &f0 - &f1;
        if !alpha.is_zero() {
            let tstar = -&beta / (rat(2) * &alpha);
            if sign_of(&tstar) == ExactSign::Pos && tstar < rat(1) {
                let x = &pa[0] + &(&d[0] * &tstar);
                let y = &pa[1] + &(&d[1] * &tstar);
                candidates.push(p.eval(&x, &y));
            }
        }
    }
    // Interior critical point: grad p = 0.
    let c20 = p.coeffs.get(&(2, 0)).cloned().unwrap_or_else(Rat::zero);
    let c02 = p.coeffs.get(&(0, 2)).cloned().unwrap_or_else(Rat::zero);
    let c11 = p.coeffs.get(&(1, 1)).cloned().unwrap_or_else(Rat::zero);
    let c10 = p.coeffs.get(&(1, 0)).cloned().unwrap_or_else(Rat::zero);
    let c01 = p.coeffs.get(&(0, 1)).cloned().unwrap_or_else(Rat::zero);
    let hessian = vec![
        vec![rat(2) * &c20, c11.clone()],
        vec![c11.clone(), rat(2) * &c02],
    ];
    if let Ok(crit) = solve(&hessian, &[-c10, -c01]) {
        if point_in_closed_triangle(tri, &crit) {
            candidates.push(p.eval(&crit[0], &crit[1]));
        }
    }
    let min = candidates.iter().min().unwrap().clone();
    let max = candidates.iter().max().unwrap().clone();
    (min, max)
}

fn orient_sign(a: &[Rat], b: &[Rat], c: &[Rat]) -> ExactSign {
    let v = sub(b, a);
    let w = sub(c, a);
    sign_of(&(&v[0] * &w[1] - &v[1] * &w[0]))
}

fn point_in_closed_triangle(tri: &[Vec<Rat>; 3], x: &[Rat]) -> bool {
    let s1 = orient_sign(&tri[0], &tri[1], x);
    let s2 = orient_sign(&tri[1], &tri[2], x);
    let s3 = orient_sign(&tri[2], &tri[0], x);
    let has_pos = [s1, s2, s3].contains(&ExactSign::Pos);
    let has_neg = [s1, s2, s3].contains(&ExactSign::Neg);
    !(has_pos && has_neg)
}

/// Adaptive |integral| for a mixed-sign residual, in f64: split along
/// the chord between the zero crossings on the edges and recurse.
fn integrate_abs_f64(p: &Poly2, tri: &[[f64; 2]; 3], depth: u32) -> f64 {
    let area = 0.5
        * ((tri[1][0] - tri[0][0]) * (tri[2][1] - tri[0][1])
            - (tri[1][1] - tri[0][1]) * (tri[2][0] - tri[0][0]))
            .abs();
    let plain = integrate_f64(p, tri);
    if depth == 0 || area < 1e-24 {
        return plain.abs();
    }
    // Zero crossings on the edges.
    let mut crossings: Vec<[f64; 2]> = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        crossings.extend(edge_roots(p, tri[a], tri[b]));
    }
    let corner_signs: Vec<f64> = tri.iter().map(|v| p.eval_f64(v[0], v[1])).collect();
    let mixed = corner_signs.iter().any(|s| *s > 0.0) && corner_signs.iter().any(|s| *s < 0.0);
    if !mixed && crossings.len() < 2 {
        return plain.abs();
    }
    // Split at the midpoint of the longest edge (robust regardless of
    // how many crossings were found; the chord structure emerges after
    // a few levels).
    let (mut ai, mut bi) = (0usize, 1usize);
    let mut best = -1.0;
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        let l = (tri[a][0] - tri[b][0]).powi(2) + (tri[a][1] - tri[b][1]).powi(2);
        if l > best {
            best = l;
            ai = a;
            bi = b;
        }
    }
    let ci = 3 - ai - bi;
    let mid = [(tri[ai][0] + tri[bi][0]) / 2.0, (tri[ai][1] + tri[bi][1]) / 2.0];
    let t1 = [tri[ai], mid, tri[ci]];
    let t2 = [mid, tri[bi], tri[ci]];
    integrate_abs_f64(p, &t1, depth - 1) + integrate_abs_f64(p, &t2, depth - 1)
}

fn integrate_f64(p: &Poly2, tri: &[[f64; 2]; 3]) -> f64 {
    // Degree-4-exact symmetric quadrature (6 points) on the triangle.
    const W1: f64 = 0.223381589678011;
    const A1: f64 = 0.445948490915965;
    const W2: f64 = 0.109951743655322;
    const A2: f64 = 0.091576213509771;
    let nodes = [
        (A1, A1, W1),
        (A1, 1.0 - 2.0 * A1, W1),
        (1.0 - 2.0 * A1, A1, W1),
        (A2, A2, W2),
        (A2, 1.0 - 2.0 * A2, W2),
        (1.0 - 2.0 * A2, A2, W2),
    ];
    let area = 0.5
        * ((tri[1][0] - tri[0][0]) * (tri[2][1] - tri[0][1])
            - (tri[1][1] - tri[0][1]) * (tri[2][0] - tri[0][0]))
            .abs();
    let mut acc = 0.0;
    for (s, t, w) in nodes {
        let x = tri[0][0] + s * (tri[1][0] - tri[0][0]) + t * (tri[2][0] - tri[0][0]);
        let y = tri[0][1] + s * (tri[1][1] - tri[0][1]) + t * (tri[2][1] - tri[0][1]);
        acc += w * p.eval_f64(x, y);
    }
    acc * area
}

fn edge_roots(p: &Poly2, a: [f64; 2], b: [f64; 2]) -> Vec<[f64; 2]> {
    // p restricted to the segment is quadratic in t.
    let f = |t: f64| {
        p.eval_f64(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    };
    let f0 = f(0.0);
    let f1 = f(1.0);
    let fh = f(0.5);
    let alpha = 2.0 * (f0 + f1) - 4.0 * fh;
    let beta = 4.0 * fh - 3.0 * f0 - f1;
    let gamma = f0;
    let mut roots = Vec::new();
    if alpha.abs() < 1e-14 {
        if beta.abs() > 1e-14 {
            let t = -gamma / beta;
            if (0.0..=1.0).contains(&t) {
                roots.push(t);
            }
        }
    } else {
        let disc = beta * beta - 4.0 * alpha * gamma;
        if disc >= 0.0 {
            let s = disc.sqrt();
            for t in [(-beta + s) / (2.0 * alpha), (-beta - s) / (2.0 * alpha)] {
                if (0.0..=1.0).contains(&t) {
                    roots.push(t);
                }
            }
        }
    }
    roots
        .into_iter()
        .map(|t| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])])
        .collect()
}

fn check_covering(xs: &PointSet, cells: &[Vec<usize>]) -> Result<(), Error> {
    let points: Vec<Vec<Rat>> = xs.iter_coords().map(|c| c.to_vec()).collect();
    let hull_area = convex_hull_volume(&points)?;
    let mut total = Rat::zero();
    for cell in cells {
        if cell.len() != 3 {
            return Err(Error::InvalidParameter(format!("cell {cell:?} is not a triangle")));
        }
        let tri = [
            points[cell[0]].clone(),
            points[cell[1]].clone(),
            points[cell[2]].clone(),
        ];
        let e1 = sub(&tri[1], &tri[0]);
        let e2 = sub(&tri[2], &tri[0]);
        let mut a = &e1[0] * &e2[1] - &e1[1] * &e2[0];
        if sign_of(&a) == ExactSign::Neg {
            a = -a;
        }
        total += a / rat(2);
    }
    if total != hull_area {
        return Err(Error::InvalidParameter(
            "triangulation does not cover the convex hull".into(),
        ));
    }
    Ok(())
}

/// L^p norm of `f - f_hat_T` over the union of the triangulation `T` of
/// `CH(X)`: p = 2 and single-signed p = 1 are exact up to the final
/// square root; p = infinity maximizes the per-cell quadratic residual
/// in closed form.
pub fn interp_error(
    xs: &PointSet,
    cells: &[Vec<usize>],
    f: &PolyFunction,
    p: LpNorm,
) -> Result<f64, Error> {
    if xs.dim() != 2 || f.dim() != 2 {
        return Err(Error::InvalidParameter("interp_error supports d = 2".into()));
    }
    check_covering(xs, cells)?;
    let mut l2_sq = Rat::zero();
    let mut l1 = Rat::zero();
    let mut l1_float = 0.0f64;
    let mut linf: f64 = 0.0;
    for cell in cells {
        let tri = [
            xs.coords(cell[0]).to_vec(),
            xs.coords(cell[1]).to_vec(),
            xs.coords(cell[2]).to_vec(),
        ];
        let r = cell_residual(f, &tri)?;
        match p {
            LpNorm::L2 => {
                l2_sq += integrate_over_triangle(&r.mul(&r), &tri);
            }
            LpNorm::L1 => {
                let (min, max) = quadratic_extrema(&r, &tri);
                if sign_of(&min) != ExactSign::Neg || sign_of(&max) != ExactSign::Pos {
                    // Single-signed: |int r| is exact.
                    let mut v = integrate_over_triangle(&r, &tri);
                    if sign_of(&v) == ExactSign::Neg {
                        v = -v;
                    }
                    l1 += v;
                } else {
                    let tf = [
                        [to_f64(&tri[0][0]), to_f64(&tri[0][1])],
                        [to_f64(&tri[1][0]), to_f64(&tri[1][1])],
                        [to_f64(&tri[2][0]), to_f64(&tri[2][1])],
                    ];
                    l1_float += integrate_abs_f64(&r, &tf, 28);
                }
            }
            LpNorm::LInf => {
                let (min, max) = quadratic_extrema(&r, &tri);
                linf = linf.max(to_f64(&min).abs()).max(to_f64(&max).abs());
            }
        }
    }
    Ok(match p {
        LpNorm::L2 => to_f64(&l2_sq).sqrt(),
        LpNorm::L1 => to_f64(&l1) + l1_float,
        LpNorm::LInf => linf,
    })
}

/// One row of the optimality table.
#[derive(Debug, Clone)]
pub struct InterpTableRow {
    pub cells: Vec<Vec<usize>>,
    pub error: f64,
    pub is_delaunay: bool,
}

/// Report of the interpolation optimality check for `f = Q`.
#[derive(Debug, Clone)]
pub struct OptimalityReport {
    pub p: LpNorm,
    pub table: Vec<InterpTableRow>,
    pub minimum: f64,
    pub delaunay_error: f64,
    /// Delaunay error <= minimum within relative tolerance 1e-9.
    pub delaunay_is_minimal: bool,
}

/// Tabulates `interp_error(T, Q, p)` over every triangulation of `X`
/// and checks that the Delaunay triangulation attains the minimum.
pub fn optimality_check(
    q: &QuadraticForm,
    xs: &PointSet,
    p: LpNorm,
) -> Result<OptimalityReport, Error> {
    const CAP: usize = 7;
    if xs.len() > CAP {
        return Err(Error::CapExceeded { cap: CAP, got: xs.len() });
    }
    let del = delaunay(q, xs)?;
    let f = PolyFunction::from_form(q);
    let triangulations = enumerate_triangulations(xs)?;
    let mut table = Vec::with_capacity(triangulations.len());
    let mut minimum = f64::INFINITY;
    let mut delaunay_error = f64::INFINITY;
    for t in triangulations {
        let error = interp_error(xs, &t, &f, p)?;
        let is_delaunay = t == del.cells;
        if is_delaunay {
            delaunay_error = error;
        }
        minimum = minimum.min(error);
        table.push(InterpTableRow { cells: t, error, is_delaunay });
    }
    if delaunay_error.is_infinite() {
        return Err(Error::Assertion(
            "Delaunay triangulation missing from the enumeration".into(),
        ));
    }
    let delaunay_is_minimal = delaunay_error <= minimum * (1.0 + 1e-9) + 1e-300;
    Ok(OptimalityReport { p, table, minimum, delaunay_error, delaunay_is_minimal })
}

/// Builds the graph points `(x, u(x))` of a k-Lipschitz sample set with
/// k < 1, checked exactly: `(u(x) - u(y))^2 < k^2 ||x - y||^2` for all
/// pairs. The result is in spacelike position for
/// `Q = diag(1, ..., 1, -1)`.
pub fn lipschitz_graph(x0: &PointSet, u: &[Rat], k: &Rat) -> Result<PointSet, Error> {
    if u.len() != x0.len() {
        return Err(Error::InvalidParameter("one sample value per point required".into()));
    }
    if sign_of(k) != ExactSign::Pos || *k >= rat(1) {
        return Err(Error::InvalidParameter("Lipschitz bound must satisfy 0 < k < 1".into()));
    }
    let ksq = k * k;
    for i in 0..x0.len() {
        for j in i + 1..x0.len() {
            let dx = sub(x0.coords(i), x0.coords(j));
            let dist_sq = dot(&dx, &dx);
            let du = &u[i] - &u[j];
            if &du * &du >= &ksq * &dist_sq {
                return Err(Error::LipschitzViolation {
                    a: x0.label(i).to_string(),
                    b: x0.label(j).to_string(),
                });
            }
        }
    }
    let points = (0..x0.len())
        .map(|i| {
            let mut coords = x0.coords(i).to_vec();
            coords.push(u[i].clone());
            LabeledPoint { label: x0.label(i).to_string(), coords }
        })
        .collect();
    PointSet::new(x0.dim() + 1, points)
}
