//! Exact power series, integer compositions, and free submonoids of
//! composition words, with machinery to check Fibonacci composition
//! identities several independent ways.

pub mod bijections;
pub mod compositions;
pub mod error;
pub mod monoid;
pub mod series;
pub mod verify;

pub use compositions::{
    enumerate_compositions, make_weight, weighted_sum, Composition, PartPredicate,
    PartWeightFunction,
};
pub use error::{Error, Result};
pub use monoid::SubmonoidSpec;
pub use series::{fibonacci, lucas, Polynomial, RationalGF, TruncatedSeries};
