mod field;
mod gaussian;
pub mod sqrt;
pub mod tower;

pub use field::{abs_rational, denominator_lcm, fmt_rational, rat, rat_int, Field, Rational};
pub use gaussian::GaussianRational;
pub use tower::{AlgebraicScalar, Sign, Tower};
