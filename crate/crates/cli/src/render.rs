//! Static SVG rendering of planar decompositions: points, cell edges,
//! per-cell Q-spheres as sampled conics (circle / ellipse, hyperbola
//! branches, or parabola by signature), Voronoi cells clipped to the
//! viewport, and proximity graphs.
//!
//! Every conic polyline includes the exact parameters of the cell
//! vertices among its samples, so the curve passes through them up to
//! f64 rounding.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use qdelaunay_core::delaunay::CellComplex;
use qdelaunay_core::error::Error;
use qdelaunay_core::proximity::Graph;
use qdelaunay_core::qball::QBall;
use qdelaunay_core::rat::{to_f64, Rat};
use qdelaunay_core::voronoi::{clip_to_box, VoronoiCell};

/// Which layers to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    Points,
    Cells,
    Conics,
    Voronoi,
    Mst,
    Rng,
    Gabriel,
}

impl Layer {
    pub fn parse(s: &str) -> Result<Layer, Error> {
        Ok(match s {
            "points" => Layer::Points,
            "cells" => Layer::Cells,
            "conics" => Layer::Conics,
            "voronoi" => Layer::Voronoi,
            "mst" => Layer::Mst,
            "rng" => Layer::Rng,
            "gabriel" => Layer::Gabriel,
            other => return Err(Error::InvalidParameter(format!("unknown layer {other:?}"))),
        })
    }
}

/// Rendering parameters.
#[derive(Debug, Clone)]
pub struct RenderSpec {
    /// Viewport `[x0, y0, x1, y1]`; data bounding box plus margin when
    /// absent.
    pub viewport: Option<[f64; 4]>,
    /// Samples per curve branch, at least 16.
    pub samples: usize,
    pub layers: BTreeSet<Layer>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        let mut layers = BTreeSet::new();
        layers.insert(Layer::Points);
        layers.insert(Layer::Cells);
        layers.insert(Layer::Conics);
        RenderSpec { viewport: None, samples: 64, layers }
    }
}

/// Everything the renderer may draw.
#[derive(Default)]
pub struct RenderInput<'a> {
    pub complex: Option<&'a CellComplex>,
    pub voronoi: Option<&'a [VoronoiCell]>,
    pub graphs: Vec<(&'a str, &'a Graph)>,
}

fn f(x: f64) -> String {
    format!("{x}")
}

/// Renders the input to an SVG 1.1 document (d = 2 only).
pub fn render_svg(input: &RenderInput, spec: &RenderSpec) -> Result<String, Error> {
    if spec.samples < 16 {
        return Err(Error::InvalidParameter(
            "curve sampling density must be at least 16".into(),
        ));
    }
    if let Some(c) = input.complex {
        if c.dim() != 2 {
            return Err(Error::InvalidParameter("rendering supports d = 2".into()));
        }
    }

    // Data bounding box from points, then viewport.
    let mut pts: Vec<[f64; 2]> = Vec::new();
    if let Some(c) = input.complex {
        for p in c.points.iter_coords() {
            pts.push([to_f64(&p[0]), to_f64(&p[1])]);
        }
    }
    for (_, g) in &input.graphs {
        for p in g.points.iter_coords() {
            pts.push([to_f64(&p[0]), to_f64(&p[1])]);
        }
    }
    if pts.is_empty() {
        return Err(Error::InvalidParameter("nothing to render".into()));
    }
    let vp = spec.viewport.unwrap_or_else(|| {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in &pts {
            x0 = x0.min(p[0]);
            y0 = y0.min(p[1]);
            x1 = x1.max(p[0]);
            y1 = y1.max(p[1]);
        }
        let mx = 0.25 * (x1 - x0).max(1.0);
        let my = 0.25 * (y1 - y0).max(1.0);
        [x0 - mx, y0 - my, x1 + mx, y1 + my]
    });
    if !(vp[2] > vp[0] && vp[3] > vp[1]) {
        return Err(Error::InvalidParameter("degenerate viewport".into()));
    }
    let width = vp[2] - vp[0];
    let height = vp[3] - vp[1];
    let stroke = 0.004 * width.max(height);
    let radius = 0.008 * width.max(height);

    let mut body = String::new();
    // y axis points up: flip by emitting (x, -y) with a shifted viewBox.
    let flip = |p: [f64; 2]| [p[0], -p[1]];

    if let (Some(cells), true) = (input.voronoi, spec.layers.contains(&Layer::Voronoi)) {
        let bx = [
            rat_from_f64(vp[0]),
            rat_from_f64(vp[1]),
            rat_from_f64(vp[2]),
            rat_from_f64(vp[3]),
        ];
        for cell in cells {
            let poly = clip_to_box(cell, &bx[0], &bx[1], &bx[2], &bx[3]);
            if poly.len() < 3 {
                continue;
            }
            let points: Vec<String> = poly
                .iter()
                .map(|v| {
                    let p = flip([to_f64(&v[0]), to_f64(&v[1])]);
                    format!("{},{}", f(p[0]), f(p[1]))
                })
                .collect();
            writeln!(
                body,
                "  <polygon class=\"voronoi\" points=\"{}\" fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"{}\"/>",
                points.join(" "),
                f(stroke)
            )
            .unwrap();
        }
    }

    if let Some(complex) = input.complex {
        if spec.layers.contains(&Layer::Conics) {
            for (cell, ball) in complex.cells.iter().zip(&complex.balls) {
                let vertices: Vec<[f64; 2]> = cell
                    .iter()
                    .map(|&i| {
                        let c = complex.points.coords(i);
                        [to_f64(&c[0]), to_f64(&c[1])]
                    })
                    .collect();
                for branch in sample_conic(ball, &vertices, &vp, spec.samples)? {
                    let points: Vec<String> = branch
                        .iter()
                        .map(|&p| {
                            let q = flip(p);
                            format!("{},{}", f(q[0]), f(q[1]))
                        })
                        .collect();
                    if points.len() >= 2 {
                        writeln!(
                            body,
                            "  <polyline class=\"qsphere\" points=\"{}\" fill=\"none\" stroke=\"#e76f51\" stroke-width=\"{}\"/>",
                            points.join(" "),
                            f(stroke)
                        )
                        .unwrap();
                    }
                }
            }
        }
        if spec.layers.contains(&Layer::Cells) {
            for e in complex.edges() {
                let a = complex.points.coords(e.0);
                let b = complex.points.coords(e.1);
                let pa = flip([to_f64(&a[0]), to_f64(&a[1])]);
                let pb = flip([to_f64(&b[0]), to_f64(&b[1])]);
                writeln!(
                    body,
                    "  <line class=\"cell-edge\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#264653\" stroke-width=\"{}\"/>",
                    f(pa[0]), f(pa[1]), f(pb[0]), f(pb[1]), f(stroke)
                )
                .unwrap();
            }
        }
    }

    for (name, graph) in &input.graphs {
        let layer = Layer::parse(name)?;
        if !spec.layers.contains(&layer) {
            continue;
        }
        let color = match layer {
            Layer::Mst => "#e9c46a",
            Layer::Rng => "#f4a261",
            _ => "#8ab17d",
        };
        for &(a, b) in &graph.edges {
            let pa = graph.points.coords(a);
            let pb = graph.points.coords(b);
            let qa = flip([to_f64(&pa[0]), to_f64(&pa[1])]);
            let qb = flip([to_f64(&pb[0]), to_f64(&pb[1])]);
            writeln!(
                body,
                "  <line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                name, f(qa[0]), f(qa[1]), f(qb[0]), f(qb[1]), color, f(stroke * 1.5)
            )
            .unwrap();
        }
    }

    if spec.layers.contains(&Layer::Points) {
        if let Some(complex) = input.complex {
            for (i, p) in complex.points.iter_coords().enumerate() {
                let q = flip([to_f64(&p[0]), to_f64(&p[1])]);
                writeln!(
                    body,
                    "  <circle class=\"point\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#000\"><title>{}</title></circle>",
                    f(q[0]),
                    f(q[1]),
                    f(radius),
                    complex.points.label(i)
                )
                .unwrap();
            }
        } else if let Some((_, g)) = input.graphs.first() {
            for (i, p) in g.points.iter_coords().enumerate() {
                let q = flip([to_f64(&p[0]), to_f64(&p[1])]);
                writeln!(
                    body,
                    "  <circle class=\"point\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#000\"><title>{}</title></circle>",
                    f(q[0]),
                    f(q[1]),
                    f(radius),
                    g.points.label(i)
                )
                .unwrap();
            }
        }
    }

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        f(vp[0]),
        f(-vp[3]),
        f(width),
        f(height)
    )
    .unwrap();
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn rat_from_f64(x: f64) -> Rat {
    // Snap to a fine rational grid; only used for viewport clipping.
    let scaled = (x * 4096.0).round() as i64;
    Rat::new(scaled.into(), 4096.into())
}

/// Samples the boundary conic of a ball: one closed polyline for an
/// ellipse, two branches for a hyperbola, one branch for a parabola.
/// The cell vertices' exact parameters are merged into the sample grid.
fn sample_conic(
    ball: &QBall,
    vertices: &[[f64; 2]],
    vp: &[f64; 4],
    samples: usize,
) -> Result<Vec<Vec<[f64; 2]>>, Error> {
    let q = ball.form();
    let (p, qq, r) = q.signature();
    if q.dim() != 2 {
        return Err(Error::InvalidParameter("conic sampling supports d = 2".into()));
    }
    if r > 0 {
        // Parabola branch for the standard degenerate form diag(a, 0):
        // a x1^2 = phi1 x1 + phi2 x2 + D'.
        let a = to_f64(&q.matrix()[0][0]);
        if (p, qq, r) != (1, 0, 1) || to_f64(&q.matrix()[1][1]) != 0.0 {
            return Err(Error::InvalidParameter(
                "parabola rendering needs the standard degenerate form".into(),
            ));
        }
        let phi1 = to_f64(&ball.phi()[0]);
        let phi2 = to_f64(&ball.phi()[1]);
        if phi2 == 0.0 {
            return Err(Error::NonGenericInput("vertical parabola axis".into()));
        }
        let dp = to_f64(ball.dprime());
        let mut xs: Vec<f64> = (0..=samples)
            .map(|i| vp[0] + (vp[2] - vp[0]) * i as f64 / samples as f64)
            .collect();
        xs.extend(vertices.iter().map(|v| v[0]));
        xs.sort_by(|u, v| u.partial_cmp(v).unwrap());
        let branch: Vec<[f64; 2]> = xs
            .into_iter()
            .map(|x| [x, (a * x * x - phi1 * x - dp) / phi2])
            .collect();
        return Ok(vec![branch]);
    }

    // Non-degenerate: diagonalize A = R diag(l1, l2) R^T numerically.
    let cf = ball.center_form()?;
    let center = [to_f64(&cf.center[0]), to_f64(&cf.center[1])];
    let d = to_f64(&cf.radius_sq);
    let a11 = to_f64(&q.matrix()[0][0]);
    let a12 = to_f64(&q.matrix()[0][1]);
    let a22 = to_f64(&q.matrix()[1][1]);
    let trace = a11 + a22;
    let det = a11 * a22 - a12 * a12;
    let disc = (trace * trace / 4.0 - det).max(0.0).sqrt();
    let l1 = trace / 2.0 + disc;
    let l2 = trace / 2.0 - disc;
    // Eigenvector of l1.
    let (ex, ey) = if a12.abs() > 1e-15 {
        let v = (l1 - a22, a12);
        let n = (v.0 * v.0 + v.1 * v.1).sqrt();
        (v.0 / n, v.1 / n)
    } else if a11 >= a22 {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    };
    // Rotate world -> eigen coordinates: y = R^T (x - center).
    let to_eigen = |pt: [f64; 2]| {
        let dx = pt[0] - center[0];
        let dy = pt[1] - center[1];
        [ex * dx + ey * dy, -ey * dx + ex * dy]
    };
    let to_world = |y: [f64; 2]| {
        [center[0] + ex * y[0] - ey * y[1], center[1] + ey * y[0] + ex * y[1]]
    };
    let extent = (vp[2] - vp[0]).hypot(vp[3] - vp[1])
        + center[0].abs()
        + center[1].abs()
        + vp[0].abs()
        + vp[1].abs();

    if l2 > 0.0 {
        // Ellipse l1 y1^2 + l2 y2^2 = d (requires d > 0).
        if d <= 0.0 {
            return Ok(vec![]);
        }
        let ax1 = (d / l1).sqrt();
        let ax2 = (d / l2).sqrt();
        let mut params: Vec<f64> = (0..=samples)
            .map(|i| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / samples as f64)
            .collect();
        for v in vertices {
            let y = to_eigen(*v);
            params.push((y[1] / ax2).atan2(y[0] / ax1));
        }
        params.sort_by(|u, v| u.partial_cmp(v).unwrap());
        let mut branch: Vec<[f64; 2]> = params
            .into_iter()
            .map(|t| to_world([ax1 * t.cos(), ax2 * t.sin()]))
            .collect();
        branch.push(branch[0]);
        return Ok(vec![branch]);
    }

    // Hyperbola: l1 > 0 > l2.
    let branches = if d < 0.0 {
        // Open along the second eigen axis: y = (m sinh s, sigma n cosh s).
        let n = (d / l2).sqrt();
        let m = (-d / l1).sqrt();
        let smax = ((extent / m.max(1e-9)).asinh()).max(1.5);
        let mut out = Vec::new();
        for sigma in [1.0f64, -1.0] {
            let mut params: Vec<f64> = (0..=samples)
                .map(|i| -smax + 2.0 * smax * i as f64 / samples as f64)
                .collect();
            for v in vertices {
                let y = to_eigen(*v);
                if (y[1] > 0.0) == (sigma > 0.0) {
                    params.push((y[0] / m).asinh());
                }
            }
            params.sort_by(|u, v| u.partial_cmp(v).unwrap());
            out.push(
                params
                    .into_iter()
                    .map(|s| to_world([m * s.sinh(), sigma * n * s.cosh()]))
                    .collect(),
            );
        }
        out
    } else {
        // d > 0: open along the first eigen axis.
        let m = (d / l1).sqrt();
        let n = (-d / l2).sqrt();
        let smax = ((extent / n.max(1e-9)).asinh()).max(1.5);
        let mut out = Vec::new();
        for sigma in [1.0f64, -1.0] {
            let mut params: Vec<f64> = (0..=samples)
                .map(|i| -smax + 2.0 * smax * i as f64 / samples as f64)
                .collect();
            for v in vertices {
                let y = to_eigen(*v);
                if (y[0] > 0.0) == (sigma > 0.0) {
                    params.push((y[1] / n).asinh());
                }
            }
            params.sort_by(|u, v| u.partial_cmp(v).unwrap());
            out.push(
                params
                    .into_iter()
                    .map(|s| to_world([sigma * m * s.cosh(), n * s.sinh()]))
                    .collect(),
            );
        }
        out
    };
    Ok(branches)
}
