pub mod analysis;
pub mod bounds;
pub mod divisor;
pub mod elliptic;
pub mod error;
pub mod galois;
pub mod ratfield;
pub mod seqgen;
pub mod series;

pub use error::{Error, Result};
