//! Gröbner bases, ideal operations, factorization and prime decomposition.

pub mod buchberger;
pub mod factor;
pub mod ideal;
pub mod order;
pub mod primes;

pub use order::MonomialOrder;
pub use ideal::Ideal;
