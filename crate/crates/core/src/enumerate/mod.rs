//! Extremal ray enumeration for normal surface cones, and the search for
//! positive Euler characteristic surfaces.

mod brute;
mod cone;
mod dd;
mod lp;
mod search;

pub use brute::{brute_force_rays, BRUTE_FORCE_LIMIT};
pub use cone::{ConeSpec, Ray};
pub use dd::enumerate_admissible_rays;
pub use search::{
    find_positive_chi_surface, find_positive_chi_surface_with, SearchOptions, SearchStats,
};
