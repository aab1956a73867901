//! Computational core for modular matings: words in the modular group,
//! continued fractions and the Minkowski question-mark map, Sturmian
//! coding, the correspondence dynamics, Yoccoz-type necessary conditions,
//! an exact resultant certificate and escape-time rendering.

pub mod cf;
pub mod correspondence;
pub mod error;
pub mod exact;
pub mod render;
pub mod ring;
pub mod sturmian;
pub mod surd;
pub mod word;
pub mod yoccoz;

pub use error::{Error, Result};
