//! Randomized branching algorithms for approximate Vertex Cover and
//! 3-Hitting Set, together with the machinery that analyses them:
//! exact evaluation of two-variable composite recurrences, their
//! asymptotic decay rates, and optimization of branching distributions.

pub mod asymptotics;
pub mod error;
pub mod exec;
pub mod hs;
pub mod recurrence;
mod repeat;
pub mod rng;
pub mod vc;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use repeat::{budget, ApproxOptions};
pub use recurrence::{CompositeRecurrence, Distribution, DpTable, Term};
