//! Normal surfaces: reconstruction from quad coordinates, the disc cell complex, classification
//! and boundary slopes of spun solutions.

mod complex;
mod reconstruct;
mod slope;

pub use complex::{double, DiscType, NormalSurface, SurfaceClass};
pub use reconstruct::{reconstruct_from_q, Reconstruction, SpunReport};
pub use slope::{boundary_slope, Slope};
