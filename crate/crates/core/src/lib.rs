//! Shortest area-halving chords and circular arcs of planar convex bodies,
//! constant-halving-length bodies, the Auerbach triangle and the related
//! isoperimetric constants.

pub mod arc;
pub mod auerbach;
pub mod centrosym;
pub mod chl;
pub mod constants;
pub mod chord;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod numeric;
pub mod quotient;
pub mod reference;
pub mod report;
pub mod sweep;

pub use error::{FenceError, Result};
pub use geometry::{Chord, CircularArc, ConvexBody, Point2, SplitResult};
pub use quotient::{QuotientReport, Residual, Witness};
