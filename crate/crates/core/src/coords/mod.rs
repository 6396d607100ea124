//! Normal coordinates, matching equations, boundary functionals and the Euler functional.

mod boundary;
mod euler;
mod matching;
mod vector;

pub use boundary::{
    boundary_basis, boundary_functional, load_peripheral, reduce_modulo, BoundaryFunctional,
    CuspCurve, Peripheral,
};
pub use euler::{euler_functional, evaluate_euler};
pub use matching::{build_q_matching, build_std_matching, MatchingSystem};
pub use vector::{is_admissible, project_std_to_q, Admissible, QVector, StdVector};
