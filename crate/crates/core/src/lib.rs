//! Exact Jacobians (critical groups) of connected loopless multigraphs, with a
//! focus on when the two-vertex divisor `δ_xy` generates the group.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod families;
pub mod jacobian;
pub mod linalg;
pub mod multigraph;
pub mod theorems;
mod serde_big;

pub use error::{Error, Result};
pub use jacobian::{Divisor, FiringScript, JacobianStructure, MonodromyWeight, ReducedJacobian};
pub use linalg::{BigMatrix, SmithForm};
pub use multigraph::{Multigraph, Probability};
