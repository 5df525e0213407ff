pub mod error;
pub mod expr;
pub mod groebner;
pub mod normalize;
pub mod pipeline;
pub mod poly;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
