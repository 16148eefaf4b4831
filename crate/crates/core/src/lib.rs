//! Exact computations on the positive tropical Grassmannian.

mod cache;
pub mod combinat;
pub mod error;
pub mod ladder;
pub mod linalg;
pub mod ncfan;
pub mod planar;
pub mod pluecker;
pub mod rational;
pub mod sample;
pub mod troplin;
pub mod verify;
pub mod weight;

pub use combinat::{DecoratedOsp, KSubset};
pub use error::{Error, Result};
pub use pluecker::PlueckerVector;
pub use rational::Rational;
