//! JSON schemas for every external interface, versioned as
//! `"qdelaunay/1"`.
//!
//! Exact coordinates are serialized as decimal strings when the reduced
//! denominator divides a power of ten and as `"num/den"` otherwise;
//! parsing accepts both forms plus plain JSON numbers (read losslessly).
//! Angles, weights, and error norms are JSON floats.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::angles2d::AngleData;
use crate::delaunay::{CellComplex, ComplexKind};
use crate::edgeweights::{DiskReport, SphereGraph, SphereReport, WeightedPlanarGraph};
use crate::error::Error;
use crate::hull::{FacetClass, HullFacet};
use crate::interp::{LpNorm, OptimalityReport};
use crate::proximity::Graph;
use crate::qform::{LabeledPoint, PointSet, QuadraticForm};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::transforms::{LimitReport, MoebiusReport, SweepStatus};
use crate::voronoi::VoronoiCell;

/// Schema tag stamped on every document.
pub const SCHEMA: &str = "qdelaunay/1";

/// Exact rational in transit: string on output, string-or-number on
/// input.
#[derive(Debug, Clone, PartialEq)]
pub struct RatJson(pub Rat);

impl Serialize for RatJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        let text = match &value {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(D::Error::custom(format!("expected number token, got {other}"))),
        };
        parse_rat(&text).map(RatJson).map_err(|e| D::Error::custom(e.to_string()))
    }
}

fn rats(xs: &[Rat]) -> Vec<RatJson> {
    xs.iter().map(|x| RatJson(x.clone())).collect()
}

fn unrats(xs: &[RatJson]) -> Vec<Rat> {
    xs.iter().map(|x| x.0.clone()).collect()
}

// ---------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<RatJson>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diag: Option<Vec<RatJson>>,
}

fn schema_tag() -> String {
    SCHEMA.to_string()
}

pub fn form_to_json(q: &QuadraticForm) -> FormJson {
    FormJson {
        schema: schema_tag(),
        dim: Some(q.dim()),
        matrix: Some(q.matrix().iter().map(|r| rats(r)).collect()),
        diag: None,
    }
}

pub fn form_from_json(j: &FormJson) -> Result<QuadraticForm, Error> {
    match (&j.matrix, &j.diag) {
        (Some(m), None) => {
            let matrix: Vec<Vec<Rat>> = m.iter().map(|r| unrats(r)).collect();
            let q = QuadraticForm::new(matrix)?;
            if let Some(d) = j.dim {
                if d != q.dim() {
                    return Err(Error::DimensionMismatch { expected: d, got: q.dim() });
                }
            }
            Ok(q)
        }
        (None, Some(d)) => QuadraticForm::diagonal(unrats(d)),
        _ => Err(Error::Parse("form needs exactly one of \"matrix\" or \"diag\"".into())),
    }
}

// ---------------------------------------------------------------------
// Point sets
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointJson {
    pub label: String,
    pub coords: Vec<RatJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub dim: usize,
    pub points: Vec<PointJson>,
}

pub fn points_to_json(xs: &PointSet) -> PointSetJson {
    PointSetJson {
        schema: schema_tag(),
        dim: xs.dim(),
        points: xs
            .points()
            .iter()
            .map(|p| PointJson { label: p.label.clone(), coords: rats(&p.coords) })
            .collect(),
    }
}

pub fn points_from_json(j: &PointSetJson) -> Result<PointSet, Error> {
    let points = j
        .points
        .iter()
        .map(|p| LabeledPoint { label: p.label.clone(), coords: unrats(&p.coords) })
        .collect();
    PointSet::new(j.dim, points)
}

// ---------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BallJson {
    pub phi: Vec<RatJson>,
    pub dprime: RatJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub kind: String,
    pub form: FormJson,
    pub points: PointSetJson,
    pub cells: Vec<Vec<usize>>,
    pub balls: Vec<BallJson>,
}

pub fn decomposition_to_json(q: &QuadraticForm, complex: &CellComplex) -> DecompositionJson {
    DecompositionJson {
        schema: schema_tag(),
        kind: match complex.kind {
            ComplexKind::Delaunay => "delaunay".into(),
            ComplexKind::Full => "full".into(),
        },
        form: form_to_json(q),
        points: points_to_json(&complex.points),
        cells: complex.cells.clone(),
        balls: complex
            .balls
            .iter()
            .map(|b| BallJson { phi: rats(b.phi()), dprime: RatJson(b.dprime().clone()) })
            .collect(),
    }
}

pub fn decomposition_from_json(j: &DecompositionJson) -> Result<(QuadraticForm, CellComplex), Error> {
    let q = form_from_json(&j.form)?;
    let points = points_from_json(&j.points)?;
    let kind = match j.kind.as_str() {
        "delaunay" => ComplexKind::Delaunay,
        "full" => ComplexKind::Full,
        other => return Err(Error::Parse(format!("unknown decomposition kind {other:?}"))),
    };
    let complex = CellComplex::assemble(&q, points, j.cells.clone(), kind)?;
    // The serialized balls are derived data; check they match.
    for (ball, bj) in complex.balls.iter().zip(&j.balls) {
        if ball.phi() != unrats(&bj.phi).as_slice() || *ball.dprime() != bj.dprime.0 {
            return Err(Error::Parse("serialized ball does not match its cell".into()));
        }
    }
    Ok((q, complex))
}

// ---------------------------------------------------------------------
// Voronoi
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfPlaneJson {
    pub normal: Vec<RatJson>,
    pub offset: RatJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VoronoiCellJson {
    pub site: String,
    pub halfplanes: Vec<HalfPlaneJson>,
    pub vertices: Vec<Vec<RatJson>>,
    pub unbounded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygon: Option<Vec<Vec<RatJson>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VoronoiJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub kind: String,
    pub cells: Vec<VoronoiCellJson>,
}

pub fn voronoi_to_json(cells: &[VoronoiCell], inverse: bool, clip: Option<&[Rat; 4]>) -> VoronoiJson {
    VoronoiJson {
        schema: schema_tag(),
        kind: if inverse { "inverse".into() } else { "voronoi".into() },
        cells: cells
            .iter()
            .map(|c| VoronoiCellJson {
                site: c.site_label.clone(),
                halfplanes: c
                    .halfplanes
                    .iter()
                    .map(|h| HalfPlaneJson { normal: rats(&h.normal), offset: RatJson(h.offset.clone()) })
                    .collect(),
                vertices: c.vertices.iter().map(|v| rats(v)).collect(),
                unbounded: c.unbounded,
                polygon: clip.map(|b| {
                    crate::voronoi::clip_to_box(c, &b[0], &b[1], &b[2], &b[3])
                        .iter()
                        .map(|v| rats(v))
                        .collect()
                }),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------
// Proximity graphs
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub kind: String,
    pub edges: Vec<[String; 2]>,
    pub sq_lengths: Vec<RatJson>,
}

pub fn graph_to_json(kind: &str, g: &Graph) -> GraphJson {
    GraphJson {
        schema: schema_tag(),
        kind: kind.into(),
        edges: g
            .edges
            .iter()
            .map(|&(a, b)| [g.points.label(a).to_string(), g.points.label(b).to_string()])
            .collect(),
        sq_lengths: rats(&g.sq_lengths),
    }
}

// ---------------------------------------------------------------------
// Weighted planar graphs and validator reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedVertexJson {
    pub label: String,
    pub exterior: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedEdgeJson {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedGraphJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub vertices: Vec<WeightedVertexJson>,
    pub edges: Vec<WeightedEdgeJson>,
    pub faces: Vec<[usize; 3]>,
    pub boundary: Vec<usize>,
}

pub fn weighted_graph_to_json(g: &WeightedPlanarGraph) -> WeightedGraphJson {
    WeightedGraphJson {
        schema: schema_tag(),
        vertices: g
            .labels
            .iter()
            .zip(&g.exterior)
            .map(|(l, e)| WeightedVertexJson { label: l.clone(), exterior: *e })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|((u, v), w)| WeightedEdgeJson { u: *u, v: *v, weight: *w })
            .collect(),
        faces: g.faces.clone(),
        boundary: g.boundary.clone(),
    }
}

pub fn weighted_graph_from_json(j: &WeightedGraphJson) -> Result<WeightedPlanarGraph, Error> {
    let mut edges: Vec<((usize, usize), f64)> = j
        .edges
        .iter()
        .map(|e| ((e.u.min(e.v), e.u.max(e.v)), e.weight))
        .collect();
    edges.sort_by(|(a, _), (b, _)| a.cmp(b));
    let mut faces: Vec<[usize; 3]> = j
        .faces
        .iter()
        .map(|f| {
            let mut s = *f;
            s.sort_unstable();
            s
        })
        .collect();
    faces.sort();
    let g = WeightedPlanarGraph {
        labels: j.vertices.iter().map(|v| v.label.clone()).collect(),
        exterior: j.vertices.iter().map(|v| v.exterior).collect(),
        edges,
        faces,
        boundary: j.boundary.clone(),
    };
    g.validate_embedding()?;
    Ok(g)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionJson {
    pub name: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
    pub equality_cases: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightReportJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub disk_conditions: Vec<ConditionJson>,
    pub disk_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path_endpoints: Option<(usize, usize)>,
    pub sphere_conditions: Vec<ConditionJson>,
    pub sphere_pass: bool,
}

pub fn weight_report_to_json(disk: &DiskReport, sphere: &SphereReport) -> WeightReportJson {
    let cond = |c: &crate::edgeweights::ConditionReport| ConditionJson {
        name: c.name.clone(),
        pass: c.pass,
        witnesses: c.witnesses.clone(),
        equality_cases: c.equality_cases.clone(),
    };
    WeightReportJson {
        schema: schema_tag(),
        disk_conditions: disk.conditions.iter().map(cond).collect(),
        disk_pass: disk.pass,
        path_endpoints: disk.path_endpoints,
        sphere_conditions: sphere.conditions.iter().map(cond).collect(),
        sphere_pass: sphere.pass,
    }
}

pub fn sphere_graph_summary(g: &SphereGraph) -> serde_json::Value {
    serde_json::json!({
        "labels": g.labels,
        "edges": g.edges.iter().map(|((u, v), w)| serde_json::json!([u, v, w])).collect::<Vec<_>>(),
        "faces": g.faces,
    })
}

// ---------------------------------------------------------------------
// Angle reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleAnglesJson {
    pub cell: Vec<usize>,
    pub angles: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeAngleJson {
    pub edge: [usize; 2],
    pub angle: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AngleReportJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub triangles: Vec<TriangleAnglesJson>,
    pub edges: Vec<EdgeAngleJson>,
    pub sequence: Vec<f64>,
}

pub fn angle_report_to_json(data: &AngleData) -> AngleReportJson {
    AngleReportJson {
        schema: schema_tag(),
        triangles: data
            .per_cell
            .iter()
            .map(|(cell, a)| TriangleAnglesJson { cell: cell.clone(), angles: a.to_vec() })
            .collect(),
        edges: data
            .per_edge
            .iter()
            .map(|((a, b), angle)| EdgeAngleJson { edge: [*a, *b], angle: *angle })
            .collect(),
        sequence: data.sequence.values().to_vec(),
    }
}

// ---------------------------------------------------------------------
// Harness reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepEntryJson {
    pub t: RatJson,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitReportJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub reference_cells: Vec<Vec<usize>>,
    pub sweep: Vec<SweepEntryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<RatJson>,
}

pub fn limit_report_to_json(r: &LimitReport) -> LimitReportJson {
    LimitReportJson {
        schema: schema_tag(),
        reference_cells: r.reference_cells.clone(),
        sweep: r
            .sweep
            .iter()
            .map(|(t, status)| match status {
                SweepStatus::Match => SweepEntryJson {
                    t: RatJson(t.clone()),
                    status: "match".into(),
                    cells: None,
                    reason: None,
                },
                SweepStatus::Mismatch { cells } => SweepEntryJson {
                    t: RatJson(t.clone()),
                    status: "mismatch".into(),
                    cells: Some(cells.clone()),
                    reason: None,
                },
                SweepStatus::Invalid { reason } => SweepEntryJson {
                    t: RatJson(t.clone()),
                    status: "invalid".into(),
                    cells: None,
                    reason: Some(reason.clone()),
                },
            })
            .collect(),
        threshold: r.threshold.as_ref().map(|t| RatJson(t.clone())),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoebiusSampleJson {
    pub pullback_infinity: Option<Vec<RatJson>>,
    pub clear_of_spheres: bool,
    pub clear_of_lightcones: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoebiusReportJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub samples: Vec<MoebiusSampleJson>,
    pub condition_held: bool,
    pub combinatorics_equal: bool,
    pub original_cells: Vec<Vec<usize>>,
    pub image_cells: Vec<Vec<usize>>,
}

pub fn moebius_report_to_json(r: &MoebiusReport) -> MoebiusReportJson {
    MoebiusReportJson {
        schema: schema_tag(),
        samples: r
            .samples
            .iter()
            .map(|s| MoebiusSampleJson {
                pullback_infinity: s.pullback_infinity_affine.as_ref().map(|v| rats(v)),
                clear_of_spheres: s.clear_of_spheres,
                clear_of_lightcones: s.clear_of_lightcones,
            })
            .collect(),
        condition_held: r.condition_held,
        combinatorics_equal: r.combinatorics_equal,
        original_cells: r.original_cells.clone(),
        image_cells: r.image_cells.clone(),
    }
}

// ---------------------------------------------------------------------
// Interpolation reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterpRowJson {
    pub cells: Vec<Vec<usize>>,
    pub error: f64,
    pub is_delaunay: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterpReportJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub p: String,
    pub table: Vec<InterpRowJson>,
    pub minimum: f64,
    pub delaunay_error: f64,
    pub delaunay_is_minimal: bool,
}

pub fn interp_report_to_json(r: &OptimalityReport) -> InterpReportJson {
    InterpReportJson {
        schema: schema_tag(),
        p: match r.p {
            LpNorm::L1 => "1".into(),
            LpNorm::L2 => "2".into(),
            LpNorm::LInf => "inf".into(),
        },
        table: r
            .table
            .iter()
            .map(|row| InterpRowJson {
                cells: row.cells.clone(),
                error: row.error,
                is_delaunay: row.is_delaunay,
            })
            .collect(),
        minimum: r.minimum,
        delaunay_error: r.delaunay_error,
        delaunay_is_minimal: r.delaunay_is_minimal,
    }
}

// ---------------------------------------------------------------------
// Lifted hull
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacetJson {
    pub vertices: Vec<usize>,
    pub inward_normal: Vec<RatJson>,
    pub offset: RatJson,
    pub class: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LiftJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub lifted: Vec<Vec<RatJson>>,
    pub facets: Vec<FacetJson>,
}

pub fn lift_to_json(lifted: &[Vec<Rat>], facets: &[HullFacet]) -> Result<LiftJson, Error> {
    let facets = facets
        .iter()
        .map(|f| {
            Ok(FacetJson {
                vertices: f.vertices.clone(),
                inward_normal: rats(&f.inward_normal),
                offset: RatJson(f.offset.clone()),
                class: match f.class()? {
                    FacetClass::Bottom => "bottom".into(),
                    FacetClass::Top => "top".into(),
                },
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(LiftJson {
        schema: schema_tag(),
        lifted: lifted.iter().map(|v| rats(v)).collect(),
        facets,
    })
}

// ---------------------------------------------------------------------
// Moebius path input
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoebiusPathJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    /// Exact (d+2)x(d+2) matrices sampled along the path; the last
    /// entry is the element whose invariance is being checked.
    pub samples: Vec<Vec<Vec<RatJson>>>,
}

pub fn moebius_path_from_json(
    q: &QuadraticForm,
    j: &MoebiusPathJson,
) -> Result<Vec<crate::transforms::GroupElement>, Error> {
    j.samples
        .iter()
        .map(|m| {
            let matrix: Vec<Vec<Rat>> = m.iter().map(|r| unrats(r)).collect();
            crate::transforms::GroupElement::moebius(q, matrix)
        })
        .collect()
}

/// First-order configuration for the rescaled-limit harness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FirstOrderJson {
    #[serde(default = "schema_tag")]
    pub schema: String,
    /// Dimension of the non-degenerate block V.
    pub m: usize,
    pub points: Vec<FirstOrderPointJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FirstOrderPointJson {
    pub label: String,
    pub base: Vec<RatJson>,
    pub velocity: Vec<RatJson>,
}

pub fn first_order_from_json(j: &FirstOrderJson) -> (usize, Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let base = j.points.iter().map(|p| unrats(&p.base)).collect();
    let velocity = j.points.iter().map(|p| unrats(&p.velocity)).collect();
    (j.m, base, velocity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::delaunay;
    use crate::rat::{rat, ratio};

    #[test]
    fn rational_token_round_trip() {
        for x in [rat(3), ratio(-9, 16), ratio(1, 3), ratio(22, 7)] {
            let json = serde_json::to_string(&RatJson(x.clone())).unwrap();
            let back: RatJson = serde_json::from_str(&json).unwrap();
            assert_eq!(back.0, x);
        }
        // Plain JSON numbers parse losslessly.
        let v: RatJson = serde_json::from_str("0.1").unwrap();
        assert_eq!(v.0, ratio(1, 10));
        let v: RatJson = serde_json::from_str("-3").unwrap();
        assert_eq!(v.0, rat(-3));
    }

    #[test]
    fn form_round_trip_and_diag_shorthand() {
        let q = QuadraticForm::minkowski2();
        let json = serde_json::to_string(&form_to_json(&q)).unwrap();
        let parsed: FormJson = serde_json::from_str(&json).unwrap();
        assert_eq!(form_from_json(&parsed).unwrap(), q);

        let diag: FormJson =
            serde_json::from_str(r#"{"diag": ["1", "-1"]}"#).unwrap();
        assert_eq!(form_from_json(&diag).unwrap(), q);
        let bad: FormJson = serde_json::from_str(r#"{"dim": 2}"#).unwrap();
        assert!(form_from_json(&bad).is_err());
    }

    #[test]
    fn point_set_round_trip() {
        let xs = PointSet::from_coords(
            2,
            vec![vec![rat(0), ratio(1, 3)], vec![ratio(-5, 2), rat(4)]],
        )
        .unwrap();
        let json = serde_json::to_string(&points_to_json(&xs)).unwrap();
        let parsed: PointSetJson = serde_json::from_str(&json).unwrap();
        assert_eq!(points_from_json(&parsed).unwrap(), xs);
    }

    #[test]
    fn decomposition_round_trip() {
        let q = QuadraticForm::degenerate2();
        let xs = PointSet::from_coords(
            2,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(1), rat(1)],
                vec![rat(2), rat(0)],
                vec![rat(3), rat(2)],
            ],
        )
        .unwrap();
        let complex = delaunay(&q, &xs).unwrap();
        let json = serde_json::to_string(&decomposition_to_json(&q, &complex)).unwrap();
        let parsed: DecompositionJson = serde_json::from_str(&json).unwrap();
        let (q2, back) = decomposition_from_json(&parsed).unwrap();
        assert_eq!(q2, q);
        assert_eq!(back, complex);
    }

    #[test]
    fn weighted_graph_round_trip() {
        let q = QuadraticForm::minkowski2();
        let xs = PointSet::from_coords(
            2,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(2), rat(0)],
                vec![rat(1), ratio(1, 2)],
            ],
        )
        .unwrap();
        let del = delaunay(&q, &xs).unwrap();
        let g = crate::edgeweights::weights_from_delaunay(&q, &del).unwrap();
        let json = serde_json::to_string(&weighted_graph_to_json(&g)).unwrap();
        let parsed: WeightedGraphJson = serde_json::from_str(&json).unwrap();
        let back = weighted_graph_from_json(&parsed).unwrap();
        assert_eq!(back, g);
    }
}
