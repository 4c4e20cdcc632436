//! Cauchy–Stieltjes transforms, Smirnov classes and multiplier criteria on
//! domains bounded by polynomial images of the unit circle.

pub mod cauchy;
pub mod cli;
pub mod config;
pub mod error;
pub mod geometry;
pub mod multiplier;
pub mod numerics;
pub mod poly;
pub mod report;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
