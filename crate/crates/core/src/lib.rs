//! Exact spectral computations for mapping classes built by Penner's
//! construction, mixed-sign Coxeter graphs, and the combinatorial search for
//! the smallest dilatation on closed surfaces.

pub mod coxeter;
pub mod document;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod penner;
pub mod poly;
pub mod roots;
pub mod search;
pub mod spectral;
pub mod topology;

pub use coxeter::{DynkinType, MixedSignCoxeterGraph, ReflectionOrder, Sign, SignPattern};
pub use document::PatternDocument;
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use matrix::ExactMatrix;
pub use penner::{Curve, IntersectionPattern, Letter, Side, TwistWord};
pub use poly::IntPolynomial;
pub use roots::RootApproximation;
pub use search::{AdmissibilityReport, SearchMode};
pub use spectral::DEFAULT_TOL;
pub use topology::{CellCounts, FramedPattern};
