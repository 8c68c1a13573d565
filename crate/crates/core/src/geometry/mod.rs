//! Points, cuts and convex bodies.

mod arc;
mod body;
mod point;

pub use arc::{arc_length, segment_area, Chord, CircularArc};
pub(crate) use body::DirectionSlicer;
pub use body::{ConvexBody, SplitResult, ANGULAR_RESOLUTION, CONVEX_REL_EPS, GEOM_REL_EPS};
pub use point::{line_angle, Point2};
