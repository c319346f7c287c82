//! Exact computation of Puiseux-series solutions of ordinary polynomial
//! differential equations F(y, y', ..., y^(n)) = 0.
//!
//! The crate is organised around a differential Newton polygon process:
//!
//! - [`rat`] / [`qpoly`] / [`zassenhaus`] / [`numfield`]: exact rational and
//!   algebraic-number arithmetic, univariate polynomials, factorization over
//!   number fields, and primitive-element construction for field towers.
//! - [`diffpoly`]: differential polynomials in x, y0, ..., yn with exact
//!   rational x-exponents, plus truncated Puiseux series and the residual
//!   evaluation oracle.
//! - [`polygon`]: exact Newton polygon geometry, characteristic and indicial
//!   polynomials, and the polygon calculus for derivatives, sums and shifts.
//! - [`solver`]: the expansion tree producing exact, truncated, parametric
//!   and continuum solution branches.
//! - [`parse`] / [`render`] / [`report`]: the text frontend.

pub mod diffpoly;
pub mod error;
pub mod numfield;
pub mod parse;
pub mod polygon;
pub mod qpoly;
pub mod rat;
pub mod render;
pub mod report;
pub mod series;
pub mod solver;
pub mod zassenhaus;

pub use diffpoly::{DiffMonomial, DiffPoly};
pub use error::{Error, Result};
pub use numfield::{AlgNum, KPoly, NumberField};
pub use polygon::{Edge, Inclination, MarkedPoint, NewtonPoint, PolygonView, VertexInfo};
pub use qpoly::QPoly;
pub use rat::Rat;
pub use report::{OutputFormat, PolygonFormat, ProblemSpec, SolutionReport};
pub use series::{PuiseuxSeries, PuiseuxTerm};
pub use solver::{
    expand, theorem_bounds_check, Budget, BoundsReport, FreeParams, NodeStatus,
    ParamAssignments, ParamValue, PuiseuxSolution, ResidualCertificate, SolutionKind, Tree,
    TreeNode,
};
