pub mod bunch;
pub mod cones;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod linalg;
pub mod modify;
pub mod poly;

pub use error::{Error, Result};
