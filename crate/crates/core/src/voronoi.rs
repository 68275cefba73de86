//! Q-Voronoi and inverse Voronoi decompositions for non-degenerate
//! forms in the plane, dual to the Delaunay complex.
//!
//! Cells are stored as exact half-plane lists; the corner vertices are
//! extracted by pairwise line intersection. Unbounded cells are flagged
//! via the recession cone, and clipping to a box happens only when
//! rendering.

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::{dot, solve, sub};
use crate::qform::{require_generic, require_spacelike, PointSet, QuadraticForm};
use crate::rat::{sign_of, ExactSign, Rat};

/// Constraint `normal . z <= offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl HalfPlane {
    pub fn satisfied_by(&self, z: &[Rat]) -> bool {
        sign_of(&(dot(&self.normal, z) - &self.offset)) != ExactSign::Pos
    }

    pub fn strictly_satisfied_by(&self, z: &[Rat]) -> bool {
        sign_of(&(dot(&self.normal, z) - &self.offset)) == ExactSign::Neg
    }
}

/// One Voronoi region: its defining half-planes and corner vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiCell {
    pub site: usize,
    pub site_label: String,
    pub halfplanes: Vec<HalfPlane>,
    /// Corner vertices (points where two boundary lines meet within the
    /// cell), deduplicated and lexicographically sorted.
    pub vertices: Vec<Vec<Rat>>,
    pub unbounded: bool,
}

/// Half-plane `{z : Q(x - z) <= Q(y - z)}` for a spacelike pair, i.e.
/// `2 <z, y - x>_Q <= Q(y) - Q(x)`. Its boundary is a timelike
/// hyperplane when `Q` is indefinite.
pub fn bisector(q: &QuadraticForm, x: &[Rat], y: &[Rat]) -> Result<HalfPlane, Error> {
    if q.is_degenerate() {
        return Err(Error::DegenerateForm { op: "bisector" });
    }
    let diff = sub(y, x);
    if sign_of(&q.evaluate(&diff)?) != ExactSign::Pos {
        return Err(Error::NotSpacelike { a: format!("{x:?}"), b: format!("{y:?}") });
    }
    let normal = q.gradient(&diff); // 2 A (y - x)
    let offset = q.evaluate(y)? - q.evaluate(x)?;
    Ok(HalfPlane { normal, offset })
}

/// The Q-Voronoi decomposition: one cell per site, built by exact
/// half-plane intersection. Requires d = 2 and a non-degenerate form.
pub fn voronoi(q: &QuadraticForm, xs: &PointSet) -> Result<Vec<VoronoiCell>, Error> {
    voronoi_impl(q, xs, false)
}

/// The inverse Voronoi decomposition (farthest-site analogue): the same
/// constraints with the inequality reversed. Its vertices are the
/// centers of the full Q-balls.
pub fn inverse_voronoi(q: &QuadraticForm, xs: &PointSet) -> Result<Vec<VoronoiCell>, Error> {
    voronoi_impl(q, xs, true)
}

fn voronoi_impl(q: &QuadraticForm, xs: &PointSet, inverse: bool) -> Result<Vec<VoronoiCell>, Error> {
    if q.dim() != 2 {
        return Err(Error::InvalidParameter(format!(
            "Voronoi decomposition supported for d = 2, got {}",
            q.dim()
        )));
    }
    if q.is_degenerate() {
        return Err(Error::DegenerateForm { op: "voronoi" });
    }
    require_spacelike(q, xs)?;
    if xs.len() >= 3 {
        require_generic(q, xs)?;
    }
    let mut cells = Vec::with_capacity(xs.len());
    for site in 0..xs.len() {
        let mut halfplanes = Vec::new();
        for other in 0..xs.len() {
            if other == site {
                continue;
            }
            let hp = bisector(q, xs.coords(site), xs.coords(other))?;
            if inverse {
                halfplanes.push(HalfPlane {
                    normal: crate::linalg::neg(&hp.normal),
                    offset: -hp.offset,
                });
            } else {
                halfplanes.push(hp);
            }
        }
        let vertices = corner_vertices(&halfplanes);
        let unbounded = is_unbounded(&halfplanes);
        cells.push(VoronoiCell {
            site,
            site_label: xs.label(site).to_string(),
            halfplanes,
            vertices,
            unbounded,
        });
    }
    Ok(cells)
}

/// Intersections of boundary-line pairs that satisfy every constraint.
fn corner_vertices(halfplanes: &[HalfPlane]) -> Vec<Vec<Rat>> {
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    for i in 0..halfplanes.len() {
        for j in i + 1..halfplanes.len() {
            let m = vec![halfplanes[i].normal.clone(), halfplanes[j].normal.clone()];
            let rhs = vec![halfplanes[i].offset.clone(), halfplanes[j].offset.clone()];
            let z = match solve(&m, &rhs) {
                Ok(z) => z,
                Err(_) => continue, // parallel boundary lines
            };
            if halfplanes.iter().all(|hp| hp.satisfied_by(&z)) && !vertices.contains(&z) {
                vertices.push(z);
            }
        }
    }
    vertices.sort();
    vertices
}

/// A nonempty cell is unbounded iff its recession cone
/// `{u : n_i . u <= 0}` is nontrivial; in the plane every nontrivial
/// cone contains a rotation of some constraint normal (or its negation),
/// so checking those candidate directions is exact.
fn is_unbounded(halfplanes: &[HalfPlane]) -> bool {
    if halfplanes.is_empty() {
        return true;
    }
    let mut candidates = Vec::new();
    for hp in halfplanes {
        let n = &hp.normal;
        candidates.push(vec![-n[1].clone(), n[0].clone()]);
        candidates.push(vec![n[1].clone(), -n[0].clone()]);
        candidates.push(vec![-n[0].clone(), -n[1].clone()]);
    }
    candidates.retain(|u| !u.iter().all(|c| c.is_zero()));
    candidates.into_iter().any(|u| {
        halfplanes
            .iter()
            .all(|hp| sign_of(&dot(&hp.normal, &u)) != ExactSign::Pos)
    })
}

/// Clips a cell to a rational box `[x0, x1] x [y0, y1]` for rendering,
/// returning the polygon vertices in counterclockwise order.
pub fn clip_to_box(cell: &VoronoiCell, x0: &Rat, y0: &Rat, x1: &Rat, y1: &Rat) -> Vec<Vec<Rat>> {
    use crate::rat::rat;
    let mut constraints = cell.halfplanes.clone();
    constraints.push(HalfPlane { normal: vec![rat(-1), rat(0)], offset: -x0.clone() });
    constraints.push(HalfPlane { normal: vec![rat(1), rat(0)], offset: x1.clone() });
    constraints.push(HalfPlane { normal: vec![rat(0), rat(-1)], offset: -y0.clone() });
    constraints.push(HalfPlane { normal: vec![rat(0), rat(1)], offset: y1.clone() });
    let mut verts = corner_vertices(&constraints);
    if verts.len() < 3 {
        return verts;
    }
    // Order counterclockwise around the centroid.
    let n = verts.len() as i64;
    let mut cx = Rat::zero();
    let mut cy = Rat::zero();
    for v in &verts {
        cx += &v[0];
        cy += &v[1];
    }
    cx /= Rat::from_integer(n.into());
    cy /= Rat::from_integer(n.into());
    verts.sort_by(|a, b| {
        let angle = |p: &Vec<Rat>| {
            let dx = crate::rat::to_f64(&(&p[0] - &cx));
            let dy = crate::rat::to_f64(&(&p[1] - &cy));
            dy.atan2(dx)
        };
        angle(a).partial_cmp(&angle(b)).unwrap()
    });
    verts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{delaunay, full_decomposition};
    use crate::rat::{rat, ratio};

    fn pset(coords: Vec<Vec<Rat>>) -> PointSet {
        PointSet::from_coords(2, coords).unwrap()
    }

    #[test]
    fn bisector_examples() {
        let q11 = QuadraticForm::minkowski2();
        let hp = bisector(&q11, &[rat(0), rat(0)], &[rat(2), rat(0)]).unwrap();
        // 2<z,(2,0)>_Q <= 4, i.e. 4 z1 <= 4: the line x1 = 1.
        assert_eq!(hp.normal, vec![rat(4), rat(0)]);
        assert_eq!(hp.offset, rat(4));
        assert!(hp.strictly_satisfied_by(&[rat(0), rat(5)]));
        assert!(!hp.satisfied_by(&[rat(2), rat(0)]));

        let qe = QuadraticForm::euclidean2();
        let hp = bisector(&qe, &[rat(0), rat(0)], &[rat(0), rat(2)]).unwrap();
        assert_eq!(hp.normal, vec![rat(0), rat(4)]);
        assert_eq!(hp.offset, rat(4)); // x2 = 1

        // Degenerate form and non-spacelike pairs are rejected.
        let q10 = QuadraticForm::degenerate2();
        assert!(bisector(&q10, &[rat(0), rat(0)], &[rat(1), rat(0)]).is_err());
        assert!(bisector(&q11, &[rat(0), rat(0)], &[rat(1), rat(2)]).is_err());
    }

    #[test]
    fn bisector_contains_midpoint() {
        let q = QuadraticForm::minkowski2();
        for (x, y) in [
            ([rat(0), rat(0)], [rat(3), rat(1)]),
            ([rat(1), ratio(1, 2)], [rat(4), rat(-1)]),
        ] {
            let hp = bisector(&q, &x, &y).unwrap();
            let mid = vec![
                (&x[0] + &y[0]) / rat(2),
                (&x[1] + &y[1]) / rat(2),
            ];
            assert_eq!(sign_of(&(dot(&hp.normal, &mid) - &hp.offset)), ExactSign::Zero);
        }
    }

    #[test]
    fn bisector_boundary_is_timelike_for_minkowski() {
        let q = QuadraticForm::minkowski2();
        let hp = bisector(&q, &[rat(0), rat(0)], &[rat(3), rat(1)]).unwrap();
        let direction = vec![-hp.normal[1].clone(), hp.normal[0].clone()];
        assert_eq!(sign_of(&q.evaluate(&direction).unwrap()), ExactSign::Neg);
    }

    #[test]
    fn two_sites_split_by_bisector() {
        let q = QuadraticForm::minkowski2();
        let xs = pset(vec![vec![rat(0), rat(0)], vec![rat(2), rat(0)]]);
        let cells = voronoi(&q, &xs).unwrap();
        assert_eq!(cells.len(), 2);
        assert!(cells.iter().all(|c| c.unbounded && c.vertices.is_empty()));
        // Sites strictly inside their own cells.
        for c in &cells {
            for hp in &c.halfplanes {
                assert!(hp.strictly_satisfied_by(xs.coords(c.site)));
            }
        }
        // Inverse Voronoi gives the complementary half-planes.
        let inv = inverse_voronoi(&q, &xs).unwrap();
        assert_eq!(inv[0].halfplanes[0].normal, crate::linalg::neg(&cells[0].halfplanes[0].normal));
    }

    #[test]
    fn triangle_voronoi_vertex_is_circumcenter() {
        let q = QuadraticForm::minkowski2();
        let xs = pset(vec![
            vec![rat(0), rat(0)],
            vec![rat(2), rat(0)],
            vec![rat(1), ratio(1, 2)],
        ]);
        let cells = voronoi(&q, &xs).unwrap();
        let expected = vec![rat(1), ratio(5, 4)];
        for c in &cells {
            assert_eq!(c.vertices, vec![expected.clone()]);
            assert!(c.unbounded);
        }
        // Inverse Voronoi cells meet at the full-ball center.
        let inv = inverse_voronoi(&q, &xs).unwrap();
        let full = full_decomposition(&q, &xs).unwrap();
        let center = full.balls[0].center_form().unwrap().center;
        for c in &inv {
            assert_eq!(c.vertices, vec![center.clone()]);
        }
    }

    #[test]
    fn euclidean_vertices_equal_circumcenters() {
        let q = QuadraticForm::euclidean2();
        let xs = pset(vec![
            vec![rat(0), rat(0)],
            vec![rat(4), rat(0)],
            vec![rat(0), rat(4)],
            vec![rat(5), rat(5)],
        ]);
        let cells = voronoi(&q, &xs).unwrap();
        let del = delaunay(&q, &xs).unwrap();
        let mut voronoi_vertices: Vec<Vec<Rat>> = Vec::new();
        for c in &cells {
            for v in &c.vertices {
                if !voronoi_vertices.contains(v) {
                    voronoi_vertices.push(v.clone());
                }
            }
        }
        voronoi_vertices.sort();
        let mut centers: Vec<Vec<Rat>> = del
            .balls
            .iter()
            .map(|b| b.center_form().unwrap().center)
            .collect();
        centers.sort();
        centers.dedup();
        assert_eq!(voronoi_vertices, centers);
    }

    #[test]
    fn clip_produces_polygon() {
        let q = QuadraticForm::euclidean2();
        let xs = pset(vec![
            vec![rat(0), rat(0)],
            vec![rat(4), rat(0)],
            vec![rat(0), rat(4)],
            vec![rat(5), rat(5)],
        ]);
        let cells = voronoi(&q, &xs).unwrap();
        for c in &cells {
            let poly = clip_to_box(c, &rat(-10), &rat(-10), &rat(10), &rat(10));
            assert!(poly.len() >= 3);
        }
    }
}
