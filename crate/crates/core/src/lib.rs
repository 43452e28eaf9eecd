//! Exact arithmetic for verbal products of finite groups and the metric
//! approximation constructions built on verbal wreath products.

pub mod amplify;
pub mod descriptor;
pub mod error;
pub mod group;
pub mod harness;
pub mod metric;
pub mod product;
pub mod suite;
pub mod words;
pub mod wreath;

pub use error::{Error, Result};
