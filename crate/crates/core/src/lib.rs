//! Normal surface theory for knot complements: matching equations, extremal
//! ray enumeration, crushing, and a decision procedure for largeness.

pub mod coords;
pub mod enumerate;
pub mod error;
pub mod modify;
pub mod perm;
pub mod pipeline;
pub mod surface;
pub mod triangulation;

pub use error::{Error, Result};
pub use perm::Perm4;
pub use triangulation::Triangulation;
