//! Computation with finite skew left braces and the set-theoretic
//! Yang-Baxter solutions they determine.

pub mod bounds;
pub mod brace;
pub mod construct;
pub mod error;
pub mod group;
pub mod io;
pub mod report;
pub mod set;
pub mod structure;
mod util;
pub mod ybe;

pub use bounds::Bounds;
pub use brace::SkewBrace;
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use set::ElementSet;
