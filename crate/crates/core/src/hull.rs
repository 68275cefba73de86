//! Exact convex hull in low dimension and the lift/project machinery.
//!
//! Points are lifted to the graph of `Q` in R^{d+1}; the hull facets are
//! classified as bottom or top by the sign of the last coordinate of the
//! inward normal, and project down to the Delaunay and full-ball cell
//! decompositions respectively.
//!
//! The hull is built by incremental insertion with exact orientation
//! tests. The initial simplex is the lexicographically first affinely
//! independent subset and the remaining points are inserted in index
//! order, which makes the facet list deterministic.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::{self, dot, generalized_cross, sub};
use crate::qform::{PointSet, QuadraticForm};
use crate::rat::{format_rat, sign_of, ExactSign, Rat};

/// A point set together with its lift onto the graph of `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedPointSet {
    pub base: PointSet,
    pub lifted: Vec<Vec<Rat>>,
}

/// Maps every point `x` to `(x, Q(x))`.
pub fn lift(q: &QuadraticForm, xs: &PointSet) -> Result<LiftedPointSet, Error> {
    let mut lifted = Vec::with_capacity(xs.len());
    for p in xs.iter_coords() {
        let mut l = p.to_vec();
        l.push(q.evaluate(p)?);
        lifted.push(l);
    }
    Ok(LiftedPointSet { base: xs.clone(), lifted })
}

/// A hull facet: vertex indices (sorted), an inward normal, and the
/// offset `c` with `normal . x >= c` for every hull point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullFacet {
    pub vertices: Vec<usize>,
    pub inward_normal: Vec<Rat>,
    pub offset: Rat,
}

/// Bottom/top classification of a lifted hull facet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetClass {
    Bottom,
    Top,
}

impl HullFacet {
    /// Signed side of `x`: positive strictly inside the supporting
    /// half-space, zero on the hyperplane, negative strictly outside.
    fn side(&self, x: &[Rat]) -> ExactSign {
        sign_of(&(dot(&self.inward_normal, x) - &self.offset))
    }

    /// Bottom iff the inward normal has positive last coordinate.
    pub fn class(&self) -> Result<FacetClass, Error> {
        match sign_of(self.inward_normal.last().expect("nonempty normal")) {
            ExactSign::Pos => Ok(FacetClass::Bottom),
            ExactSign::Neg => Ok(FacetClass::Top),
            ExactSign::Zero => Err(Error::NonGenericInput(
                "hull facet with vertical supporting hyperplane".into(),
            )),
        }
    }
}

/// Facet list of the convex hull of `points` in R^D (2 <= D <= 4),
/// computed incrementally with exact orientation determinants. Facets
/// are ordered by their sorted vertex index tuples.
pub fn convex_hull(points: &[Vec<Rat>]) -> Result<Vec<HullFacet>, Error> {
    let dim = points
        .first()
        .map(|p| p.len())
        .ok_or(Error::TooFewPoints { needed: 1, got: 0 })?;
    if !(2..=4).contains(&dim) {
        return Err(Error::InvalidParameter(format!(
            "convex hull supported for ambient dimension 2..=4, got {dim}"
        )));
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: 0 });
    }

    let initial = initial_simplex(points, dim)?;
    let centroid = {
        let mut c = vec![Rat::zero(); dim];
        for &i in &initial {
            c = linalg::add(&c, &points[i]);
        }
        linalg::scale(&c, &Rat::new(1.into(), (dim as i64 + 1).into()))
    };

    // Facets of the initial simplex: every d-subset of the d+1 vertices.
    let mut facets: Vec<HullFacet> = Vec::new();
    for skip in 0..initial.len() {
        let verts: Vec<usize> = initial
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &v)| v)
            .collect();
        facets.push(make_facet(points, &verts, &centroid)?);
    }

    let in_initial = |i: usize| initial.contains(&i);
    for p in 0..points.len() {
        if in_initial(p) {
            continue;
        }
        insert_point(points, &mut facets, p, &centroid)?;
    }

    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(facets)
}

/// Lexicographically first affinely independent (dim+1)-subset, chosen
/// greedily; errors with the spanned hyperplane when the input is flat.
fn initial_simplex(points: &[Vec<Rat>], dim: usize) -> Result<Vec<usize>, Error> {
    let mut chosen: Vec<usize> = vec![0];
    for i in 1..points.len() {
        let mut trial: Vec<Vec<Rat>> = chosen.iter().map(|&k| points[k].clone()).collect();
        trial.push(points[i].clone());
        if linalg::affine_rank(&trial) == chosen.len() {
            chosen.push(i);
            if chosen.len() == dim + 1 {
                return Ok(chosen);
            }
        }
    }
    // Flat input: all points lie in the affine span of `chosen`.
    // Describe the hyperplane (or lower-dimensional flat) by a normal.
    let spanning: Vec<Vec<Rat>> = chosen[1..]
        .iter()
        .map(|&k| sub(&points[k], &points[0]))
        .collect();
    let description = if spanning.len() == dim - 1 {
        let normal = generalized_cross(&spanning);
        let offset = dot(&normal, &points[0]);
        format!(
            "{{x : ({}) . x = {}}}",
            normal.iter().map(format_rat).collect::<Vec<_>>().join(", "),
            format_rat(&offset)
        )
    } else {
        format!(
            "affine flat of dimension {} through the first point",
            spanning.len()
        )
    };
    Err(Error::DegenerateHull { hyperplane: description })
}

/// Builds the facet through `verts`, oriented so the interior reference
/// point lies strictly on the inward side.
fn make_facet(points: &[Vec<Rat>], verts: &[usize], interior: &[Rat]) -> Result<HullFacet, Error> {
    let base = &points[verts[0]];
    let edges: Vec<Vec<Rat>> = verts[1..].iter().map(|&v| sub(&points[v], base)).collect();
    let mut normal = generalized_cross(&edges);
    if normal.iter().all(|x| x.is_zero()) {
        return Err(Error::NonGenericInput(
            "degenerate facet during hull construction".into(),
        ));
    }
    let mut offset = dot(&normal, base);
    match sign_of(&(dot(&normal, interior) - &offset)) {
        ExactSign::Pos => {}
        ExactSign::Neg => {
            normal = linalg::neg(&normal);
            offset = -offset;
        }
        ExactSign::Zero => {
            return Err(Error::Assertion(
                "hull interior reference point lies on a facet hyperplane".into(),
            ))
        }
    }
    let mut vertices = verts.to_vec();
    vertices.sort_unstable();
    Ok(HullFacet { vertices, inward_normal: normal, offset })
}

/// Beneath-beyond insertion of point `p` into the current facet set.
fn insert_point(
    points: &[Vec<Rat>],
    facets: &mut Vec<HullFacet>,
    p: usize,
    interior: &[Rat],
) -> Result<(), Error> {
    let x = &points[p];
    // A point strictly outside some facet's hyperplane is visible from it;
    // points exactly on a hyperplane are treated as not visible, which
    // keeps coplanar configurations triangulated instead of merged.
    let visible: Vec<bool> = facets.iter().map(|f| f.side(x) == ExactSign::Neg).collect();
    if visible.iter().all(|&v| !v) {
        return Ok(()); // already inside (or on the boundary of) the hull
    }
    // Horizon ridges: ridges incident to exactly one visible facet.
    let mut ridge_count: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for skip in 0..f.vertices.len() {
            let ridge: Vec<usize> = f
                .vertices
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &v)| v)
                .collect();
            let entry = ridge_count.entry(ridge).or_insert((0, 0));
            if visible[fi] {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
    }
    let mut new_facets = Vec::new();
    for (ridge, (vis, invis)) in &ridge_count {
        if *vis == 1 && *invis == 1 {
            let mut verts = ridge.clone();
            verts.push(p);
            new_facets.push(make_facet(points, &verts, interior)?);
        }
    }
    let mut kept: Vec<HullFacet> = facets
        .drain(..)
        .zip(visible)
        .filter(|(_, vis)| !vis)
        .map(|(f, _)| f)
        .collect();
    kept.append(&mut new_facets);
    *facets = kept;
    Ok(())
}

/// Projects hull facets of the lifted set down to R^d, split into the
/// bottom cells (Delaunay) and top cells (full decomposition). Cells are
/// sorted vertex index tuples in lexicographic order.
pub fn classify_and_project(
    facets: &[HullFacet],
) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>), Error> {
    let mut bottom = Vec::new();
    let mut top = Vec::new();
    for f in facets {
        match f.class()? {
            FacetClass::Bottom => bottom.push(f.vertices.clone()),
            FacetClass::Top => top.push(f.vertices.clone()),
        }
    }
    bottom.sort();
    top.sort();
    Ok((bottom, top))
}
