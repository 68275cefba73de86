//! Geometry kernel for Delaunay decompositions, Voronoi duals, angle
//! data, and proximity graphs of finite point sets with respect to an
//! arbitrary quadratic form: positive definite, indefinite, or
//! degenerate.
//!
//! All combinatorial decisions are made in exact rational arithmetic;
//! floating point is used only for reported angles, norms, and errors.
//!
//! The central construction lifts a point set onto the graph of the
//! form in one dimension higher, takes the exact convex hull, and
//! projects the bottom facets back down; those are the cells whose
//! circumscribing balls are empty of all other points. Top facets
//! project to the dual "full ball" decomposition.

pub mod angles2d;
pub mod delaunay;
pub mod edgeweights;
pub mod error;
pub mod hull;
pub mod interp;
pub mod linalg;
pub mod proximity;
pub mod qball;
pub mod qform;
pub mod rat;
pub mod sample;
pub mod schema;
pub mod transforms;
pub mod voronoi;

pub use error::Error;
pub use qform::{PointSet, QuadraticForm};
pub use rat::Rat;
