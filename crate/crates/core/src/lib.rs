//! Exact and numeric tools for constructing and checking q-polynomials.

pub mod analysis;
pub mod engine;
pub mod intpoly;
pub mod modpoly;
pub mod numtheory;
pub mod surd;
