//! Cutting along normal surfaces and crushing them.

mod crush;
mod cut;

pub use crush::{crush, crush_tagged, CrushReport};
pub use cut::{
    cut_along, subdivide, BoundaryLabel, CutPiece, CutResult, LabeledBoundary, Side, Subdivision,
};
