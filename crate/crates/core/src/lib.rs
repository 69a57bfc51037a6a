//! Numerical toolkit for Gaussian correlation inequalities on symmetric
//! convex bodies: exact and sampled Gaussian measures, Minkowski-sum
//! membership, matrix quintuples built from angle pairs, Chernoff bounds and
//! statistical inequality checkers.

pub mod body;
pub mod chernoff;
pub mod error;
pub mod format;
pub mod gaussian;
pub mod inequality;
pub mod linalg;
pub mod matrix_lab;
pub mod minkowski;
pub mod region;
pub mod suite;

pub use body::{Halfspace, Shape, ShapeKind, SymmetricConvexBody, TranslatedBody};
pub use error::{Error, Result};
pub use gaussian::{Budget, MeasureEstimate, Source};
pub use inequality::{InequalityReport, Verdict};
pub use linalg::Matrix;
pub use matrix_lab::{AnglePair, HypothesisReport, MatrixQuintuple};
pub use minkowski::{MinkowskiImage, MinkowskiVerdict};
pub use region::{Membership, Region};
pub use suite::Suite;
