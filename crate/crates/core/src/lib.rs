pub mod cli;
pub mod colourful;
pub mod error;
pub mod gf2k;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod reductions;
pub mod ring;

pub use error::{Error, Result};
pub use gf2k::{FieldCtx, FieldElement};
