pub mod charpoly;
pub mod gcd;
pub mod matrix;
pub mod multipoly;
pub mod ratfun;
pub mod upoly;
pub mod varset;

pub use matrix::{jacobian, Matrix, RingElem};
pub use multipoly::{Monomial, MultiPoly};
pub use ratfun::RationalFunction;
pub use varset::{Block, VarSet};
