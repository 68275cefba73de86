//! Q-Delaunay and full decompositions via lift-hull-project, the
//! brute-force oracle, and the complex verifier.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::Error;
use crate::hull::{classify_and_project, convex_hull, lift};
use crate::linalg::{combinations, det, sub};
use crate::qball::{circumball, Containment, QBall};
use crate::qform::{require_generic, require_spacelike, PointSet, QuadraticForm};
use crate::rat::{rat, sign_of, ExactSign, Rat};

/// Which ball condition the cells of a complex satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    /// Empty Q-ball condition: no point strictly inside any cell ball.
    Delaunay,
    /// Full Q-ball condition: every point weakly inside every cell ball.
    Full,
}

/// A simplicial cell decomposition of `CH(X)` with per-cell balls.
#[derive(Debug, Clone, PartialEq)]
pub struct CellComplex {
    pub points: PointSet,
    /// Sorted vertex index tuples, in lexicographic order.
    pub cells: Vec<Vec<usize>>,
    /// Circumscribing ball of each cell, parallel to `cells`.
    pub balls: Vec<QBall>,
    /// Facet (sorted d-subset) to indices of incident cells.
    pub adjacency: BTreeMap<Vec<usize>, Vec<usize>>,
    pub kind: ComplexKind,
}

impl CellComplex {
    /// Assembles a complex from cells, solving each circumball.
    pub fn assemble(
        q: &QuadraticForm,
        points: PointSet,
        mut cells: Vec<Vec<usize>>,
        kind: ComplexKind,
    ) -> Result<Self, Error> {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort();
        let mut balls = Vec::with_capacity(cells.len());
        for cell in &cells {
            let simplex: Vec<Vec<Rat>> = cell.iter().map(|&i| points.coords(i).to_vec()).collect();
            balls.push(circumball(q, &simplex)?);
        }
        let adjacency = facet_adjacency(&cells);
        Ok(CellComplex { points, cells, balls, adjacency, kind })
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    /// Undirected edge set of the 1-skeleton, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        for cell in &self.cells {
            for i in 0..cell.len() {
                for j in i + 1..cell.len() {
                    set.insert((cell[i], cell[j]));
                }
            }
        }
        set.into_iter().collect()
    }

    /// Cells incident to a given edge (d = 2: the facet map directly).
    pub fn cells_at_edge(&self, edge: (usize, usize)) -> Vec<usize> {
        let key = vec![edge.0.min(edge.1), edge.0.max(edge.1)];
        if self.dim() == 2 {
            self.adjacency.get(&key).cloned().unwrap_or_default()
        } else {
            self.cells
                .iter()
                .enumerate()
                .filter(|(_, c)| c.contains(&key[0]) && c.contains(&key[1]))
                .map(|(i, _)| i)
                .collect()
        }
    }
}

fn facet_adjacency(cells: &[Vec<usize>]) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for skip in 0..cell.len() {
            let facet: Vec<usize> = cell
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &v)| v)
                .collect();
            map.entry(facet).or_default().push(ci);
        }
    }
    map
}

fn position_checks(q: &QuadraticForm, xs: &PointSet) -> Result<(), Error> {
    let d = q.dim();
    if xs.len() < d + 1 {
        return Err(Error::TooFewPoints { needed: d + 1, got: xs.len() });
    }
    require_spacelike(q, xs)?;
    require_generic(q, xs)?;
    Ok(())
}

/// The unique Q-Delaunay decomposition of a spacelike generic set,
/// computed by projecting the bottom facets of the lifted hull.
pub fn delaunay(q: &QuadraticForm, xs: &PointSet) -> Result<CellComplex, Error> {
    position_checks(q, xs)?;
    if xs.len() == q.dim() + 1 {
        // A single simplex; its lift spans no volume in R^{d+1}.
        let cell: Vec<usize> = (0..xs.len()).collect();
        return CellComplex::assemble(q, xs.clone(), vec![cell], ComplexKind::Delaunay);
    }
    let lifted = lift(q, xs)?;
    let facets = convex_hull(&lifted.lifted)?;
    let (bottom, _) = classify_and_project(&facets)?;
    CellComplex::assemble(q, xs.clone(), bottom, ComplexKind::Delaunay)
}

/// The full-ball decomposition: projection of the top facets.
pub fn full_decomposition(q: &QuadraticForm, xs: &PointSet) -> Result<CellComplex, Error> {
    position_checks(q, xs)?;
    if xs.len() == q.dim() + 1 {
        let cell: Vec<usize> = (0..xs.len()).collect();
        return CellComplex::assemble(q, xs.clone(), vec![cell], ComplexKind::Full);
    }
    let lifted = lift(q, xs)?;
    let facets = convex_hull(&lifted.lifted)?;
    let (_, top) = classify_and_project(&facets)?;
    CellComplex::assemble(q, xs.clone(), top, ComplexKind::Full)
}

/// Default cap for the brute-force oracle.
pub const BRUTE_FORCE_CAP: usize = 12;

/// Independent oracle: keeps every (d+1)-subset whose circumball
/// satisfies the empty-ball condition and asserts the kept cells tile
/// `CH(X)`. Must agree with `delaunay` on all inputs.
pub fn brute_force_delaunay(q: &QuadraticForm, xs: &PointSet) -> Result<CellComplex, Error> {
    brute_force(q, xs, ComplexKind::Delaunay, BRUTE_FORCE_CAP)
}

/// Brute-force oracle for the full-ball decomposition.
pub fn brute_force_full(q: &QuadraticForm, xs: &PointSet) -> Result<CellComplex, Error> {
    brute_force(q, xs, ComplexKind::Full, BRUTE_FORCE_CAP)
}

/// Brute-force decomposition with an explicit size cap.
pub fn brute_force(
    q: &QuadraticForm,
    xs: &PointSet,
    kind: ComplexKind,
    cap: usize,
) -> Result<CellComplex, Error> {
    let d = q.dim();
    if !(2..=3).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "brute-force oracle supports d = 2 or 3, got {d}"
        )));
    }
    if xs.len() > cap {
        return Err(Error::CapExceeded { cap, got: xs.len() });
    }
    position_checks(q, xs)?;
    let mut kept = Vec::new();
    for subset in combinations(xs.len(), d + 1) {
        let simplex: Vec<Vec<Rat>> = subset.iter().map(|&i| xs.coords(i).to_vec()).collect();
        let ball = match circumball(q, &simplex) {
            Ok(b) => b,
            Err(Error::AffinelyDependent) => continue,
            Err(e) => return Err(e),
        };
        let ok = (0..xs.len()).filter(|i| !subset.contains(i)).all(|i| {
            let c = ball.contains(xs.coords(i)).expect("dims match");
            match kind {
                ComplexKind::Delaunay => c != Containment::Inside,
                ComplexKind::Full => c != Containment::Outside,
            }
        });
        if ok {
            kept.push(subset);
        }
    }
    let complex = CellComplex::assemble(q, xs.clone(), kept, kind)?;
    if let Err(e) = check_coverage(&complex) {
        return Err(Error::Assertion(format!(
            "brute-force cells do not tile CH(X): {e}"
        )));
    }
    Ok(complex)
}

/// `1/d! |det|` volume of a d-simplex.
fn simplex_volume(simplex: &[Vec<Rat>]) -> Rat {
    let d = simplex.len() - 1;
    let rows: Vec<Vec<Rat>> = simplex[1..].iter().map(|v| sub(v, &simplex[0])).collect();
    let mut v = det(&rows);
    if sign_of(&v) == ExactSign::Neg {
        v = -v;
    }
    let mut fact = rat(1);
    for k in 2..=d as i64 {
        fact *= rat(k);
    }
    v / fact
}

/// Exact volume of `CH(points)` via hull facets coned over the centroid.
pub fn convex_hull_volume(points: &[Vec<Rat>]) -> Result<Rat, Error> {
    let dim = points[0].len();
    let facets = convex_hull(points)?;
    let centroid = {
        let mut c = vec![Rat::zero(); dim];
        for p in points {
            c = crate::linalg::add(&c, p);
        }
        crate::linalg::scale(&c, &Rat::new(1.into(), (points.len() as i64).into()))
    };
    let mut total = Rat::zero();
    for f in &facets {
        let mut cone: Vec<Vec<Rat>> = vec![centroid.clone()];
        cone.extend(f.vertices.iter().map(|&i| points[i].clone()));
        total += simplex_volume(&cone);
    }
    Ok(total)
}

/// Strict interior test for a point against a d-simplex: all replacement
/// orientation determinants share the simplex orientation sign.
pub fn strictly_inside_simplex(simplex: &[Vec<Rat>], x: &[Rat]) -> bool {
    let orient = |verts: &[&Vec<Rat>]| -> ExactSign {
        let rows: Vec<Vec<Rat>> = verts[1..].iter().map(|v| sub(v, verts[0])).collect();
        sign_of(&det(&rows))
    };
    let base: Vec<&Vec<Rat>> = simplex.iter().collect();
    let reference = orient(&base);
    if reference == ExactSign::Zero {
        return false;
    }
    let owned = x.to_vec();
    for replace in 0..simplex.len() {
        let verts: Vec<&Vec<Rat>> = simplex
            .iter()
            .enumerate()
            .map(|(k, v)| if k == replace { &owned } else { v })
            .collect();
        if orient(&verts) != reference {
            return false;
        }
    }
    true
}

fn barycenter(simplex: &[Vec<Rat>]) -> Vec<Rat> {
    let dim = simplex[0].len();
    let mut c = vec![Rat::zero(); dim];
    for v in simplex {
        c = crate::linalg::add(&c, v);
    }
    crate::linalg::scale(&c, &Rat::new(1.into(), (simplex.len() as i64).into()))
}

fn cell_coords(complex: &CellComplex, cell: &[usize]) -> Vec<Vec<Rat>> {
    cell.iter().map(|&i| complex.points.coords(i).to_vec()).collect()
}

/// Coverage of `CH(X)`: exact volume sum comparison plus pairwise
/// interior-disjointness probes on rational barycenters.
fn check_coverage(complex: &CellComplex) -> Result<(), String> {
    let points: Vec<Vec<Rat>> = complex.points.iter_coords().map(|c| c.to_vec()).collect();
    let hull_volume = convex_hull_volume(&points).map_err(|e| e.to_string())?;
    let mut total = Rat::zero();
    for cell in &complex.cells {
        total += simplex_volume(&cell_coords(complex, cell));
    }
    if total != hull_volume {
        return Err(format!(
            "cell volume sum {} != hull volume {}",
            crate::rat::format_rat(&total),
            crate::rat::format_rat(&hull_volume)
        ));
    }
    for i in 0..complex.cells.len() {
        for j in 0..complex.cells.len() {
            if i == j {
                continue;
            }
            let a = cell_coords(complex, &complex.cells[i]);
            let b = cell_coords(complex, &complex.cells[j]);
            if strictly_inside_simplex(&b, &barycenter(&a)) {
                return Err(format!(
                    "barycenter of cell {:?} lies inside cell {:?}",
                    complex.cells[i], complex.cells[j]
                ));
            }
        }
    }
    Ok(())
}

/// A single verification failure with its witnesses.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Cell vertex not on its ball's boundary.
    VertexOffSphere { cell: Vec<usize>, point: usize },
    /// Empty condition broken: a point strictly inside a cell ball.
    PointInsideBall { cell: Vec<usize>, point: usize },
    /// Full condition broken: a point strictly outside a cell ball.
    PointOutsideBall { cell: Vec<usize>, point: usize },
    /// Union of cells does not cover CH(X) with disjoint interiors.
    Coverage { detail: String },
    /// A point of X is not a vertex of any cell (Delaunay kind only).
    UnusedPoint { point: usize },
    /// Structural defect (wrong cell arity, bad index, ...).
    Malformed { detail: String },
}

/// Result of re-checking all complex invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

/// Re-checks every invariant of the complex exactly: per-cell ball
/// interpolation, the empty/full condition, coverage of `CH(X)`, and
/// (for Delaunay complexes) that every point is used.
pub fn verify(complex: &CellComplex) -> VerifyReport {
    let mut violations = Vec::new();
    let d = complex.dim();
    let n = complex.points.len();
    if complex.cells.is_empty() {
        violations.push(Violation::Malformed { detail: "no cells".into() });
    }
    if complex.balls.len() != complex.cells.len() {
        violations.push(Violation::Malformed { detail: "ball list length mismatch".into() });
    }
    for cell in &complex.cells {
        let distinct: BTreeSet<usize> = cell.iter().copied().collect();
        if cell.len() != d + 1 || distinct.len() != d + 1 || cell.iter().any(|&i| i >= n) {
            violations.push(Violation::Malformed { detail: format!("bad cell {cell:?}") });
        }
    }
    if !violations.is_empty() {
        return VerifyReport { pass: false, violations };
    }
    for (cell, ball) in complex.cells.iter().zip(&complex.balls) {
        for &v in cell {
            if ball.contains(complex.points.coords(v)).expect("dims match")
                != Containment::Boundary
            {
                violations.push(Violation::VertexOffSphere { cell: cell.clone(), point: v });
            }
        }
        for p in 0..n {
            if cell.contains(&p) {
                continue;
            }
            let c = ball.contains(complex.points.coords(p)).expect("dims match");
            match complex.kind {
                ComplexKind::Delaunay => {
                    if c == Containment::Inside {
                        violations.push(Violation::PointInsideBall { cell: cell.clone(), point: p });
                    }
                }
                ComplexKind::Full => {
                    if c == Containment::Outside {
                        violations.push(Violation::PointOutsideBall { cell: cell.clone(), point: p });
                    }
                }
            }
        }
    }
    if let Err(detail) = check_coverage(complex) {
        violations.push(Violation::Coverage { detail });
    }
    if complex.kind == ComplexKind::Delaunay {
        let used: BTreeSet<usize> = complex.cells.iter().flatten().copied().collect();
        for p in 0..n {
            if !used.contains(&p) {
                violations.push(Violation::UnusedPoint { point: p });
            }
        }
    }
    VerifyReport { pass: violations.is_empty(), violations }
}
