//! Exact arithmetic in `F_{p^e}` and its extensions.

mod count;
mod ext;
mod field;
pub mod linalg;
mod poly;

pub use count::{count_irreducibles, divisors, mobius, mobius_invert};
pub use ext::ExtEmbedding;
pub use field::{Field, Gf, DEFAULT_SIZE_CAP, MAX_DEGREE};
pub use poly::Poly;

pub(crate) use field::{checked_size, prime_factors};

use crate::error::Result;

/// Builds `F_{p^e}` with the least irreducible modulus and least primitive element.
pub fn build_field(p: u64, e: usize) -> Result<Field> {
    Field::new(p, e)
}

/// Absolute trace to the prime field.
pub fn trace(f: &Field, x: &Gf) -> u32 {
    f.trace(x)
}

pub fn extend_field(base: &Field, d: usize) -> Result<ExtEmbedding> {
    ExtEmbedding::new(base, d)
}
